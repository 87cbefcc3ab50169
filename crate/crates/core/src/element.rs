//! Element-level predicates and derived operations on [`Ring`].

use std::collections::HashSet;

use crate::error::Result;
use crate::par;
use crate::ring::{Elem, Ring};

/// Distinguished subsets of a ring, each listed in ascending index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetKind {
    Idempotents,
    Nilpotents,
    Units,
    /// Elements squaring to one.
    Involutions,
    CentralIdempotents,
}

impl Ring {
    /// Image of `m` under the unique unital map from the integers.
    pub fn of_int(&self, m: i64) -> Elem {
        self.wrap(self.of_int_idx(m))
    }

    pub(crate) fn of_int_idx(&self, m: i64) -> usize {
        let mut acc = self.zero_idx();
        let mut step = self.one_idx();
        let mut k = m.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_idx(acc, step);
            }
            step = self.add_idx(step, step);
            k >>= 1;
        }
        if m < 0 {
            self.neg_idx(acc)
        } else {
            acc
        }
    }

    pub fn pow(&self, x: Elem, k: u64) -> Result<Elem> {
        Ok(self.wrap(self.pow_idx(self.check(x)?, k)))
    }

    pub(crate) fn pow_idx(&self, x: usize, mut k: u64) -> usize {
        let mut acc = self.one_idx();
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, x: Elem) -> Result<bool> {
        let x = self.check(x)?;
        Ok(self.is_idempotent_idx(x))
    }

    pub(crate) fn is_idempotent_idx(&self, x: usize) -> bool {
        self.mul_idx(x, x) == x
    }

    /// Smallest `n ≥ 1` with `x^n = 0`, or `None` if `x` is not nilpotent.
    pub fn nilpotency_index(&self, x: Elem) -> Result<Option<u32>> {
        let x = self.check(x)?;
        Ok(self.nilpotency_index_idx(x))
    }

    pub(crate) fn nilpotency_index_idx(&self, x: usize) -> Option<u32> {
        match self.nilpotency_cell().get() {
            Some(table) => table[x],
            None => self.power_walk(x),
        }
    }

    // Powers x, x², … until zero or until a power repeats.
    fn power_walk(&self, x: usize) -> Option<u32> {
        let zero = self.zero_idx();
        let mut seen = HashSet::new();
        let mut p = x;
        let mut n = 1u32;
        loop {
            if p == zero {
                return Some(n);
            }
            if !seen.insert(p) {
                return None;
            }
            p = self.mul_idx(p, x);
            n += 1;
        }
    }

    /// Nilpotency index of every element, computed once per ring.
    pub fn nilpotency_table(&self) -> &[Option<u32>] {
        self.nilpotency_cell()
            .get_or_init(|| par::map_range(self.order(), |x| self.power_walk(x)))
    }

    pub(crate) fn is_nilpotent_idx(&self, x: usize) -> bool {
        self.nilpotency_index_idx(x).is_some()
    }

    /// Two-sided inverse by exhaustive search.
    pub fn try_inverse(&self, x: Elem) -> Result<Option<Elem>> {
        let x = self.check(x)?;
        Ok(self.inverse_idx(x).map(|y| self.wrap(y)))
    }

    pub(crate) fn inverse_idx(&self, x: usize) -> Option<usize> {
        match self.inverse_cell().get() {
            Some(table) => table[x],
            None => self.search_inverse(x),
        }
    }

    fn search_inverse(&self, x: usize) -> Option<usize> {
        let one = self.one_idx();
        (0..self.order()).find(|&y| self.mul_idx(x, y) == one && self.mul_idx(y, x) == one)
    }

    /// Inverse of every element (`None` for non-units), computed once per ring.
    pub fn inverse_table(&self) -> &[Option<usize>] {
        self.inverse_cell()
            .get_or_init(|| par::map_range(self.order(), |x| self.search_inverse(x)))
    }

    /// `(1 + q)⁻¹ = Σ_{i<n} (−q)^i` for nilpotent `q` of index `n`; `None`
    /// when `q` is not nilpotent.
    pub fn unipotent_inverse(&self, q: Elem) -> Result<Option<Elem>> {
        let q = self.check(q)?;
        Ok(self.unipotent_inverse_idx(q).map(|y| self.wrap(y)))
    }

    pub(crate) fn unipotent_inverse_idx(&self, q: usize) -> Option<usize> {
        let n = self.nilpotency_index_idx(q)?;
        let minus_q = self.neg_idx(q);
        let mut term = self.one_idx();
        let mut sum = self.zero_idx();
        for _ in 0..n {
            sum = self.add_idx(sum, term);
            term = self.mul_idx(term, minus_q);
        }
        Some(sum)
    }

    pub fn is_central(&self, x: Elem) -> Result<bool> {
        let x = self.check(x)?;
        Ok(self.is_central_idx(x))
    }

    pub(crate) fn is_central_idx(&self, x: usize) -> bool {
        (0..self.order()).all(|y| self.mul_idx(x, y) == self.mul_idx(y, x))
    }

    pub fn special_subset(&self, kind: SubsetKind) -> Vec<Elem> {
        self.special_subset_idx(kind)
            .into_iter()
            .map(|i| self.wrap(i))
            .collect()
    }

    pub(crate) fn special_subset_idx(&self, kind: SubsetKind) -> Vec<usize> {
        let n = self.order();
        match kind {
            SubsetKind::Idempotents => par::filter_range(n, |x| self.is_idempotent_idx(x)),
            SubsetKind::Nilpotents => {
                let nil = self.nilpotency_table();
                (0..n).filter(|&x| nil[x].is_some()).collect()
            }
            SubsetKind::Units => {
                let inv = self.inverse_table();
                (0..n).filter(|&x| inv[x].is_some()).collect()
            }
            SubsetKind::Involutions => {
                let one = self.one_idx();
                par::filter_range(n, |x| self.mul_idx(x, x) == one)
            }
            SubsetKind::CentralIdempotents => par::filter_range(n, |x| {
                self.is_idempotent_idx(x) && self.is_central_idx(x)
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;
    use crate::ring::construct_ring;

    use super::*;

    fn ring(text: &str) -> Ring {
        construct_ring(&parse(text).unwrap()).unwrap()
    }

    fn indices(v: Vec<Elem>) -> Vec<usize> {
        v.into_iter().map(Elem::index).collect()
    }

    #[test]
    fn of_int_examples() {
        assert_eq!(ring("Z12").of_int(-1).index(), 11);
        assert_eq!(ring("Z8").of_int(10).index(), 2);
        let z1 = ring("Z1");
        assert_eq!(z1.of_int(5), z1.zero());
        let r = ring("Z7 x Z5");
        assert_eq!(r.of_int(1), r.one());
        assert_eq!(r.of_int(0), r.zero());
        // 36 -> (1, 1) in Z7 x Z5, index 1*5+1
        assert_eq!(r.of_int(36).index(), 6);
        let below = r.sub(r.of_int(-i64::MAX), r.one()).unwrap();
        assert_eq!(r.of_int(i64::MIN), below);
    }

    #[test]
    fn pow_examples() {
        let r = ring("Z12");
        let x = r.elem(5).unwrap();
        assert_eq!(r.pow(x, 0).unwrap(), r.one());
        assert_eq!(r.pow(r.elem(6).unwrap(), 2).unwrap(), r.zero());
        let z8 = ring("Z8");
        assert_eq!(z8.pow(z8.elem(2).unwrap(), 3).unwrap(), z8.zero());
        assert_eq!(z8.pow(z8.elem(3).unwrap(), 1_000_001).unwrap().index(), 3);
    }

    #[test]
    fn idempotent_examples() {
        let r = ring("Z12");
        assert!(r.is_idempotent(r.zero()).unwrap());
        assert!(r.is_idempotent(r.one()).unwrap());
        assert!(r.is_idempotent(r.elem(4).unwrap()).unwrap());
        assert!(!r.is_idempotent(r.elem(7).unwrap()).unwrap());
    }

    #[test]
    fn nilpotency_examples() {
        let r = ring("Z12");
        assert_eq!(r.nilpotency_index(r.zero()).unwrap(), Some(1));
        assert_eq!(r.nilpotency_index(r.one()).unwrap(), None);
        let z8 = ring("Z8");
        assert_eq!(z8.nilpotency_index(z8.elem(2).unwrap()).unwrap(), Some(3));
        let z1 = ring("Z1");
        assert_eq!(z1.nilpotency_index(z1.zero()).unwrap(), Some(1));
        // table and direct walk agree
        let table = z8.nilpotency_table().to_vec();
        for x in z8.elements() {
            assert_eq!(table[x.index()], z8.power_walk(x.index()));
        }
    }

    #[test]
    fn inverse_examples() {
        let r = ring("Z12");
        assert_eq!(r.try_inverse(r.one()).unwrap(), Some(r.one()));
        assert_eq!(r.try_inverse(r.elem(5).unwrap()).unwrap().unwrap().index(), 5);
        assert_eq!(r.try_inverse(r.elem(6).unwrap()).unwrap(), None);
        let z1 = ring("Z1");
        assert_eq!(z1.try_inverse(z1.zero()).unwrap(), Some(z1.zero()));
    }

    #[test]
    fn unipotent_fast_path_agrees() {
        for text in ["Z8", "Z27", "M2(Z2)", "M2(Z4)", "Z4 x Z9"] {
            let r = ring(text);
            for q in r.special_subset(SubsetKind::Nilpotents) {
                let fast = r.unipotent_inverse(q).unwrap();
                let unit = r.add(r.one(), q).unwrap();
                assert_eq!(fast, r.try_inverse(unit).unwrap(), "{text} q={q}");
            }
        }
        let r = ring("Z12");
        assert_eq!(r.unipotent_inverse(r.elem(5).unwrap()).unwrap(), None);
    }

    #[test]
    fn central_examples() {
        let m = ring("M2(Z2)");
        assert!(m.is_central(m.one()).unwrap());
        assert!(!m.is_central(m.elem(0b0100).unwrap()).unwrap());
        let z = ring("Z10");
        assert!(z.elements().all(|x| z.is_central(x).unwrap()));
    }

    #[test]
    fn special_subsets_of_z12() {
        let r = ring("Z12");
        assert_eq!(indices(r.special_subset(SubsetKind::Idempotents)), [0, 1, 4, 9]);
        assert_eq!(indices(r.special_subset(SubsetKind::Nilpotents)), [0, 6]);
        assert_eq!(indices(r.special_subset(SubsetKind::Involutions)), [1, 5, 7, 11]);
        assert_eq!(indices(r.special_subset(SubsetKind::Units)), [1, 5, 7, 11]);
        assert_eq!(
            indices(r.special_subset(SubsetKind::CentralIdempotents)),
            [0, 1, 4, 9]
        );
    }

    #[test]
    fn m2z2_subsets() {
        let m = ring("M2(Z2)");
        assert_eq!(m.special_subset(SubsetKind::Idempotents).len(), 8);
        assert_eq!(m.special_subset(SubsetKind::Nilpotents).len(), 4);
        assert_eq!(m.special_subset(SubsetKind::Units).len(), 6);
        assert_eq!(
            indices(m.special_subset(SubsetKind::CentralIdempotents)),
            [0, 0b1001]
        );
    }
}
