//! Finite unital rings with canonical element indexing.
//!
//! Indexing is part of the public contract, since the CLI addresses elements
//! by index:
//!
//! * `Zn`: the residue is the index.
//! * `Product(L, R)`: `i_left * |R| + i_right`.
//! * `Matrix(k, B)`: row-major, big-endian mixed radix over base indices,
//!   entry (0,0) most significant.
//! * quotients (including `NilQuotient`): cosets numbered by ascending minimal
//!   member index.
//! * corner rings `eR`: position of the ambient index in the ascending list of
//!   members.
//!
//! Rings of order at most [`TABLE_ORDER_LIMIT`] get full addition,
//! multiplication and negation tables at construction time; larger rings are
//! evaluated structurally on every operation.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr;
use crate::radical;
use crate::spec::RingSpec;

pub const DEFAULT_ORDER_CAP: u64 = 65_536;
pub const TABLE_ORDER_LIMIT: usize = 256;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a specific [`Ring`], identified by its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    ring: u64,
    index: usize,
}

impl Elem {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn ring_id(self) -> u64 {
        self.ring
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.index as u64)
    }
}

/// A constructed finite ring. Cloning is cheap and clones share identity.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<Inner>,
}

struct Inner {
    id: u64,
    spec: Option<RingSpec>,
    label: String,
    order: usize,
    zero: usize,
    one: usize,
    kind: Kind,
    tables: Option<Tables>,
    nilpotency: OnceLock<Vec<Option<u32>>>,
    inverses: OnceLock<Vec<Option<usize>>>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

enum Kind {
    Zn {
        n: usize,
    },
    Product {
        left: Ring,
        right: Ring,
    },
    Matrix {
        k: usize,
        base: Ring,
    },
    Corner {
        ambient: Ring,
        members: Vec<usize>,
        position: Vec<usize>,
    },
    Quotient {
        base: Ring,
        reps: Vec<usize>,
        coset_of: Vec<usize>,
    },
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("label", &self.inner.label)
            .field("order", &self.inner.order)
            .finish()
    }
}

pub fn construct_ring(spec: &RingSpec) -> Result<Ring> {
    construct_ring_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn construct_ring_with_cap(spec: &RingSpec, cap: u64) -> Result<Ring> {
    let check_cap = |order: u128| {
        if order > cap as u128 {
            Err(Error::OrderCapExceeded { order, cap })
        } else {
            Ok(order as usize)
        }
    };
    let label = expr::format(spec);
    match spec {
        RingSpec::Zn(0) => Err(Error::InvalidSpec("modulus must be positive".into())),
        RingSpec::Matrix(0, _) => Err(Error::InvalidSpec("matrix size must be positive".into())),
        RingSpec::Zn(n) => {
            let n = check_cap(*n as u128)?;
            Ok(Ring::build(Kind::Zn { n }, Some(spec.clone()), label))
        }
        RingSpec::Product(l, r) => {
            let left = construct_ring_with_cap(l, cap)?;
            let right = construct_ring_with_cap(r, cap)?;
            check_cap(left.order() as u128 * right.order() as u128)?;
            Ok(Ring::build(
                Kind::Product { left, right },
                Some(spec.clone()),
                label,
            ))
        }
        RingSpec::Matrix(k, b) => {
            let base = construct_ring_with_cap(b, cap)?;
            let entries = (*k as u64) * (*k as u64);
            let order = u32::try_from(entries)
                .ok()
                .and_then(|e| (base.order() as u128).checked_pow(e))
                .unwrap_or(u128::MAX);
            check_cap(order)?;
            Ok(Ring::build(
                Kind::Matrix {
                    k: *k as usize,
                    base,
                },
                Some(spec.clone()),
                label,
            ))
        }
        RingSpec::NilQuotient(b) => {
            let base = construct_ring_with_cap(b, cap)?;
            let nil = radical::upper_nilradical(&base);
            Ok(Ring::quotient_unchecked(
                &base,
                nil.members(),
                Some(spec.clone()),
                label,
            ))
        }
    }
}

fn matrix_decode(mut index: usize, k: usize, radix: usize) -> Vec<usize> {
    let mut digits = vec![0; k * k];
    for d in digits.iter_mut().rev() {
        *d = index % radix;
        index /= radix;
    }
    digits
}

fn matrix_encode(digits: &[usize], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

impl Ring {
    fn build(kind: Kind, spec: Option<RingSpec>, label: String) -> Ring {
        let (order, zero, one) = match &kind {
            Kind::Zn { n } => (*n, 0, 1 % *n),
            Kind::Product { left, right } => {
                let w = right.order();
                (
                    left.order() * w,
                    left.zero_idx() * w + right.zero_idx(),
                    left.one_idx() * w + right.one_idx(),
                )
            }
            Kind::Matrix { k, base } => {
                let radix = base.order();
                let order = radix.pow((*k * *k) as u32);
                let zeros = vec![base.zero_idx(); k * k];
                let mut ident = zeros.clone();
                for i in 0..*k {
                    ident[i * k + i] = base.one_idx();
                }
                (
                    order,
                    matrix_encode(&zeros, radix),
                    matrix_encode(&ident, radix),
                )
            }
            Kind::Corner {
                ambient,
                members,
                position,
            } => {
                // `one` is patched by `corner`, which knows the idempotent.
                (members.len(), position[ambient.zero_idx()], 0)
            }
            Kind::Quotient { base, reps, coset_of } => (
                reps.len(),
                coset_of[base.zero_idx()],
                coset_of[base.one_idx()],
            ),
        };
        let mut inner = Inner {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            spec,
            label,
            order,
            zero,
            one,
            kind,
            tables: None,
            nilpotency: OnceLock::new(),
            inverses: OnceLock::new(),
        };
        if order <= TABLE_ORDER_LIMIT {
            inner.tables = Some(inner.build_tables());
        }
        Ring {
            inner: Arc::new(inner),
        }
    }

    /// The quotient by a set already known to be a two-sided ideal.
    pub(crate) fn quotient_unchecked(
        base: &Ring,
        ideal: &[usize],
        spec: Option<RingSpec>,
        label: String,
    ) -> Ring {
        let n = base.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(n / ideal.len().max(1));
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &i in ideal {
                coset_of[base.add_idx(x, i)] = c;
            }
        }
        Ring::build(
            Kind::Quotient {
                base: base.clone(),
                reps,
                coset_of,
            },
            spec,
            label,
        )
    }

    /// The corner ring `eR` for a central idempotent `e`, with identity `e`.
    pub fn corner(&self, e: Elem) -> Result<Ring> {
        let e = self.check(e)?;
        if self.mul_idx(e, e) != e {
            return Err(Error::PreconditionViolated(format!(
                "corner ring needs an idempotent, {e} is not"
            )));
        }
        if !self.is_central_idx(e) {
            return Err(Error::PreconditionViolated(format!(
                "corner ring needs a central idempotent, {e} is not central"
            )));
        }
        let n = self.order();
        let mut flags = vec![false; n];
        for x in 0..n {
            flags[self.mul_idx(e, x)] = true;
        }
        let members: Vec<usize> = (0..n).filter(|&x| flags[x]).collect();
        let mut position = vec![usize::MAX; n];
        for (p, &m) in members.iter().enumerate() {
            position[m] = p;
        }
        let one = position[e];
        let label = format!("corner({}, {e})", self.label());
        let kind = Kind::Corner {
            ambient: self.clone(),
            members,
            position,
        };
        let mut ring = Ring::build(kind, None, label);
        // The identity is only known here; tables do not depend on it.
        Arc::get_mut(&mut ring.inner)
            .expect("freshly built ring is uniquely owned")
            .one = one;
        Ok(ring)
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    /// The spec this ring was built from; `None` for corner rings and
    /// quotients by arbitrary ideals.
    pub fn spec(&self) -> Option<&RingSpec> {
        self.inner.spec.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn has_tables(&self) -> bool {
        self.inner.tables.is_some()
    }

    pub fn zero(&self) -> Elem {
        self.wrap(self.inner.zero)
    }

    pub fn one(&self) -> Elem {
        self.wrap(self.inner.one)
    }

    pub fn zero_idx(&self) -> usize {
        self.inner.zero
    }

    pub fn one_idx(&self) -> usize {
        self.inner.one
    }

    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.order() {
            Ok(self.wrap(index))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order(),
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(|i| self.wrap(i))
    }

    pub(crate) fn wrap(&self, index: usize) -> Elem {
        debug_assert!(index < self.order());
        Elem {
            ring: self.inner.id,
            index,
        }
    }

    pub(crate) fn check(&self, x: Elem) -> Result<usize> {
        if x.ring == self.inner.id {
            Ok(x.index)
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub(crate) fn nilpotency_cell(&self) -> &OnceLock<Vec<Option<u32>>> {
        &self.inner.nilpotency
    }

    pub(crate) fn inverse_cell(&self) -> &OnceLock<Vec<Option<usize>>> {
        &self.inner.inverses
    }

    pub fn add(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.wrap(self.add_idx(self.check(x)?, self.check(y)?)))
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.wrap(self.sub_idx(self.check(x)?, self.check(y)?)))
    }

    pub fn neg(&self, x: Elem) -> Result<Elem> {
        Ok(self.wrap(self.neg_idx(self.check(x)?)))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.wrap(self.mul_idx(self.check(x)?, self.check(y)?)))
    }

    #[inline]
    pub fn add_idx(&self, x: usize, y: usize) -> usize {
        match &self.inner.tables {
            Some(t) => t.add[x * self.inner.order + y] as usize,
            None => self.inner.raw_add(x, y),
        }
    }

    #[inline]
    pub fn neg_idx(&self, x: usize) -> usize {
        match &self.inner.tables {
            Some(t) => t.neg[x] as usize,
            None => self.inner.raw_neg(x),
        }
    }

    #[inline]
    pub fn sub_idx(&self, x: usize, y: usize) -> usize {
        self.add_idx(x, self.neg_idx(y))
    }

    #[inline]
    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        match &self.inner.tables {
            Some(t) => t.mul[x * self.inner.order + y] as usize,
            None => self.inner.raw_mul(x, y),
        }
    }
}

impl Inner {
    fn build_tables(&self) -> Tables {
        let n = self.order;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                add.push(self.raw_add(x, y) as u32);
                mul.push(self.raw_mul(x, y) as u32);
            }
        }
        let neg = (0..n).map(|x| self.raw_neg(x) as u32).collect();
        Tables { add, mul, neg }
    }

    fn raw_add(&self, x: usize, y: usize) -> usize {
        match &self.kind {
            Kind::Zn { n } => {
                let s = x + y;
                if s >= *n {
                    s - n
                } else {
                    s
                }
            }
            Kind::Product { left, right } => {
                let w = right.order();
                left.add_idx(x / w, y / w) * w + right.add_idx(x % w, y % w)
            }
            Kind::Matrix { k, base } => {
                let radix = base.order();
                let a = matrix_decode(x, *k, radix);
                let b = matrix_decode(y, *k, radix);
                let sum: Vec<usize> = a.iter().zip(&b).map(|(&p, &q)| base.add_idx(p, q)).collect();
                matrix_encode(&sum, radix)
            }
            Kind::Corner {
                ambient,
                members,
                position,
            } => position[ambient.add_idx(members[x], members[y])],
            Kind::Quotient {
                base,
                reps,
                coset_of,
            } => coset_of[base.add_idx(reps[x], reps[y])],
        }
    }

    fn raw_neg(&self, x: usize) -> usize {
        match &self.kind {
            Kind::Zn { n } => {
                if x == 0 {
                    0
                } else {
                    n - x
                }
            }
            Kind::Product { left, right } => {
                let w = right.order();
                left.neg_idx(x / w) * w + right.neg_idx(x % w)
            }
            Kind::Matrix { k, base } => {
                let radix = base.order();
                let a = matrix_decode(x, *k, radix);
                let neg: Vec<usize> = a.iter().map(|&p| base.neg_idx(p)).collect();
                matrix_encode(&neg, radix)
            }
            Kind::Corner {
                ambient,
                members,
                position,
            } => position[ambient.neg_idx(members[x])],
            Kind::Quotient {
                base,
                reps,
                coset_of,
            } => coset_of[base.neg_idx(reps[x])],
        }
    }

    fn raw_mul(&self, x: usize, y: usize) -> usize {
        match &self.kind {
            Kind::Zn { n } => ((x as u64 * y as u64) % *n as u64) as usize,
            Kind::Product { left, right } => {
                let w = right.order();
                left.mul_idx(x / w, y / w) * w + right.mul_idx(x % w, y % w)
            }
            Kind::Matrix { k, base } => {
                let k = *k;
                let radix = base.order();
                let a = matrix_decode(x, k, radix);
                let b = matrix_decode(y, k, radix);
                let mut c = vec![base.zero_idx(); k * k];
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = base.zero_idx();
                        for l in 0..k {
                            acc = base.add_idx(acc, base.mul_idx(a[i * k + l], b[l * k + j]));
                        }
                        c[i * k + j] = acc;
                    }
                }
                matrix_encode(&c, radix)
            }
            Kind::Corner {
                ambient,
                members,
                position,
            } => position[ambient.mul_idx(members[x], members[y])],
            Kind::Quotient {
                base,
                reps,
                coset_of,
            } => coset_of[base.mul_idx(reps[x], reps[y])],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(text: &str) -> Ring {
        construct_ring(&expr::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn orders_of_basic_families() {
        let z1 = ring("Z1");
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.one(), z1.zero());
        assert_eq!(ring("Z4 x Z3").order(), 12);
        assert_eq!(ring("M2(Z2)").order(), 16);
        assert_eq!(ring("M3(Z2)").order(), 512);
        assert_eq!(ring("nilquo(Z12)").order(), 6);
    }

    #[test]
    fn one_equals_zero_only_in_zero_ring() {
        for text in ["Z1", "M2(Z1)", "Z1 x Z1", "nilquo(Z1)"] {
            let r = ring(text);
            assert_eq!(r.order(), 1, "{text}");
            assert_eq!(r.one(), r.zero(), "{text}");
        }
        for text in ["Z2", "Z1 x Z2", "M2(Z2)", "nilquo(Z4)"] {
            let r = ring(text);
            assert_ne!(r.one(), r.zero(), "{text}");
        }
    }

    #[test]
    fn zn_arithmetic() {
        let r = ring("Z12");
        let e = |i| r.elem(i).unwrap();
        assert_eq!(r.add(e(7), e(8)).unwrap().index(), 3);
        assert_eq!(r.mul(e(4), e(3)).unwrap().index(), 0);
        assert_eq!(r.neg(e(5)).unwrap().index(), 7);
        assert_eq!(r.add(e(9), r.neg(e(9)).unwrap()).unwrap(), r.zero());
    }

    #[test]
    fn product_indexing_is_left_major() {
        let r = ring("Z4 x Z3");
        assert_eq!(r.one_idx(), 4);
        // (1,1) + (3,2) = (0,0)
        assert_eq!(r.add_idx(4, 3 * 3 + 2), 0);
        // (2,2) * (2,2) = (0,1)
        assert_eq!(r.mul_idx(2 * 3 + 2, 2 * 3 + 2), 1);
    }

    #[test]
    fn matrix_indexing_is_row_major_big_endian() {
        let r = ring("M2(Z2)");
        // [[1,0],[0,1]] -> bits 1001
        assert_eq!(r.one_idx(), 0b1001);
        let e11 = 0b1000;
        let e12 = 0b0100;
        let e21 = 0b0010;
        assert_eq!(r.mul_idx(e12, e21), e11);
        assert_eq!(r.mul_idx(e21, e12), 0b0001);
        assert_eq!(r.mul_idx(e12, e12), 0);
    }

    #[test]
    fn structural_and_tabled_arithmetic_agree() {
        // M3(Z2) has no tables; compare against an explicit matrix product.
        let r = ring("M3(Z2)");
        assert!(!r.has_tables());
        let decode = |i: usize| -> [[u8; 3]; 3] {
            let mut m = [[0u8; 3]; 3];
            for p in 0..9 {
                m[p / 3][p % 3] = ((i >> (8 - p)) & 1) as u8;
            }
            m
        };
        for (x, y) in [(0x1ff, 0x0a5), (0x111, 0x123), (0x0f0, 0x10f), (7, 448)] {
            let (a, b) = (decode(x), decode(y));
            let c = decode(r.mul_idx(x, y));
            for i in 0..3 {
                for j in 0..3 {
                    let s: u8 = (0..3).map(|l| a[i][l] * b[l][j]).sum::<u8>() % 2;
                    assert_eq!(c[i][j], s);
                }
            }
            assert_eq!(r.add_idx(x, y), x ^ y);
        }
    }

    #[test]
    fn cap_and_invalid_specs() {
        let too_big = expr::parse("M3(Z4)").unwrap();
        assert!(matches!(
            construct_ring(&too_big),
            Err(Error::OrderCapExceeded { order: 262_144, .. })
        ));
        assert!(construct_ring_with_cap(&too_big, 300_000).is_ok());
        assert!(matches!(
            construct_ring_with_cap(&RingSpec::zn(5), 4),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            construct_ring(&RingSpec::Zn(0)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            construct_ring(&RingSpec::matrix(0, RingSpec::zn(2))),
            Err(Error::InvalidSpec(_))
        ));
        let huge = RingSpec::matrix(70_000, RingSpec::zn(2));
        assert!(matches!(
            construct_ring(&huge),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn same_spec_same_indexing() {
        let a = ring("M2(Z3) x Z2");
        let b = ring("M2(Z3) x Z2");
        assert_ne!(a.id(), b.id());
        for x in (0..a.order()).step_by(7) {
            for y in (0..a.order()).step_by(11) {
                assert_eq!(a.mul_idx(x, y), b.mul_idx(x, y));
                assert_eq!(a.add_idx(x, y), b.add_idx(x, y));
            }
        }
    }

    #[test]
    fn mixing_rings_is_rejected() {
        let a = ring("Z6");
        let b = ring("Z6");
        let x = a.one();
        let y = b.one();
        assert_eq!(a.add(x, y), Err(Error::RingMismatch));
        assert_eq!(b.mul(x, y), Err(Error::RingMismatch));
        assert!(matches!(a.elem(6), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn corner_ring_uses_idempotent_as_identity() {
        let r = ring("Z12");
        let c = r.corner(r.elem(9).unwrap()).unwrap();
        // 9·Z12 = {0, 3, 6, 9}
        assert_eq!(c.order(), 4);
        assert_eq!(c.one_idx(), 3);
        assert_eq!(c.mul_idx(1, 1), 3); // 3·3 = 9
        assert!(r.corner(r.elem(2).unwrap()).is_err());
        let m = ring("M2(Z2)");
        // E11 is idempotent but not central
        assert!(m.corner(m.elem(0b1000).unwrap()).is_err());
        let zero_corner = r.corner(r.zero()).unwrap();
        assert_eq!(zero_corner.order(), 1);
    }
}
