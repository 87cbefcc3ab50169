//! Two-sided ideals, the upper nilradical, the Jacobson radical and quotients.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::ring::{Elem, Ring};

/// A verified two-sided ideal, stored as ascending element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ideal {
    #[serde(skip)]
    ring: u64,
    members: Vec<usize>,
}

impl Ideal {
    /// Checks the ideal invariants and wraps `members`.
    pub fn new(ring: &Ring, members: impl IntoIterator<Item = usize>) -> Result<Ideal> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= ring.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: ring.order(),
            });
        }
        if let Some(why) = ideal_violation(ring, &members) {
            return Err(Error::NotAnIdeal(why));
        }
        Ok(Ideal {
            ring: ring.id(),
            members,
        })
    }

    fn trusted(ring: &Ring, members: Vec<usize>) -> Ideal {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Ideal {
            ring: ring.id(),
            members,
        }
    }

    pub fn ring_id(&self) -> u64 {
        self.ring
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }
}

/// First violated ideal invariant for an ascending, deduplicated index set.
pub fn ideal_violation(ring: &Ring, members: &[usize]) -> Option<String> {
    let mut inside = vec![false; ring.order()];
    for &m in members {
        inside[m] = true;
    }
    if !inside[ring.zero_idx()] {
        return Some("does not contain zero".into());
    }
    for &x in members {
        if !inside[ring.neg_idx(x)] {
            return Some(format!("not closed under negation at {x}"));
        }
        for &y in members {
            let s = ring.add_idx(x, y);
            if !inside[s] {
                return Some(format!("{x} + {y} = {s} is outside"));
            }
        }
    }
    let n = ring.order();
    let bad = par::find_first(members.len(), |i| {
        let x = members[i];
        (0..n).any(|r| !inside[ring.mul_idx(r, x)] || !inside[ring.mul_idx(x, r)])
    });
    bad.map(|i| format!("not closed under ring multiplication at {}", members[i]))
}

/// Worklist closure of `gens` under addition and two-sided multiplication.
/// Stops early with `None` as soon as an element failing `admit` turns up.
fn close(ring: &Ring, gens: &[usize], admit: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let n = ring.order();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    let mut queue = VecDeque::new();

    let push = |z: usize,
                    inside: &mut Vec<bool>,
                    members: &mut Vec<usize>,
                    queue: &mut VecDeque<usize>|
     -> bool {
        if inside[z] {
            return true;
        }
        if !admit(z) {
            return false;
        }
        inside[z] = true;
        members.push(z);
        queue.push_back(z);
        true
    };

    for &g in std::iter::once(&ring.zero_idx()).chain(gens) {
        if !push(g, &mut inside, &mut members, &mut queue) {
            return None;
        }
    }
    while let Some(m) = queue.pop_front() {
        for r in 0..n {
            if !push(ring.mul_idx(r, m), &mut inside, &mut members, &mut queue)
                || !push(ring.mul_idx(m, r), &mut inside, &mut members, &mut queue)
            {
                return None;
            }
        }
        // Pairs are covered when the later-inserted member is processed.
        let seen = members.len();
        for i in 0..seen {
            let s = ring.add_idx(m, members[i]);
            if !push(s, &mut inside, &mut members, &mut queue) {
                return None;
            }
        }
    }
    members.sort_unstable();
    Some(members)
}

/// Smallest two-sided ideal containing `generators`.
pub fn ideal_closure(ring: &Ring, generators: &[Elem]) -> Result<Ideal> {
    let gens = generators
        .iter()
        .map(|&g| ring.check(g))
        .collect::<Result<Vec<_>>>()?;
    let members = close(ring, &gens, |_| true).expect("unguarded closure never aborts");
    Ok(Ideal::trusted(ring, members))
}

pub fn is_nil_ideal(ring: &Ring, ideal: &Ideal) -> Result<bool> {
    if ideal.ring != ring.id() {
        return Err(Error::RingMismatch);
    }
    Ok(ideal.members.iter().all(|&x| ring.is_nilpotent_idx(x)))
}

/// `Nil*(R)`: the elements whose principal two-sided ideal is nil.
pub fn upper_nilradical(ring: &Ring) -> Ideal {
    let nil = ring.nilpotency_table();
    let members = par::filter_range(ring.order(), |x| {
        nil[x].is_some() && close(ring, &[x], |z| nil[z].is_some()).is_some()
    });
    Ideal::trusted(ring, members)
}

/// `J(R) = {x : 1 − r·x is a unit for every r}`.
pub fn jacobson_radical(ring: &Ring) -> Ideal {
    let inv = ring.inverse_table();
    let one = ring.one_idx();
    let n = ring.order();
    let members = par::filter_range(n, |x| {
        (0..n).all(|r| inv[ring.sub_idx(one, ring.mul_idx(r, x))].is_some())
    });
    Ideal::trusted(ring, members)
}

/// Ring of cosets `R/I`, cosets numbered by ascending minimal member.
pub fn quotient_by_ideal(ring: &Ring, ideal: &Ideal) -> Result<Ring> {
    if ideal.ring != ring.id() {
        return Err(Error::RingMismatch);
    }
    if let Some(why) = ideal_violation(ring, &ideal.members) {
        return Err(Error::NotAnIdeal(why));
    }
    let label = format!("{} / ideal of order {}", ring.label(), ideal.len());
    Ok(Ring::quotient_unchecked(ring, &ideal.members, None, label))
}

/// A unital ring of order 3 is necessarily `Z3`: its additive group is
/// cyclic of prime order and generated by one, which fixes both tables.
pub fn is_z3(ring: &Ring) -> bool {
    ring.order() == 3 && ring.one_idx() != ring.zero_idx()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::ring::construct_ring;

    fn ring(text: &str) -> Ring {
        construct_ring(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let r = ring("Z12");
        assert_eq!(ideal_closure(&r, &[r.zero()]).unwrap().members(), [0]);
        assert_eq!(
            ideal_closure(&r, &[r.elem(6).unwrap()]).unwrap().members(),
            [0, 6]
        );
        assert_eq!(ideal_closure(&r, &[r.one()]).unwrap().len(), 12);
        assert_eq!(
            ideal_closure(&r, &[r.elem(4).unwrap(), r.elem(6).unwrap()])
                .unwrap()
                .members(),
            [0, 2, 4, 6, 8, 10]
        );
        let m = ring("M2(Z2)");
        // M2(Z2) is simple: any nonzero element generates everything
        assert_eq!(ideal_closure(&m, &[m.elem(0b0100).unwrap()]).unwrap().len(), 16);
        let other = ring("Z12");
        assert_eq!(
            ideal_closure(&r, &[other.one()]),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn nil_ideal_examples() {
        let r = ring("Z12");
        let zero = Ideal::new(&r, [0]).unwrap();
        let six = Ideal::new(&r, [0, 6]).unwrap();
        let all = Ideal::new(&r, 0..12).unwrap();
        assert!(is_nil_ideal(&r, &zero).unwrap());
        assert!(is_nil_ideal(&r, &six).unwrap());
        assert!(!is_nil_ideal(&r, &all).unwrap());
    }

    #[test]
    fn ideal_validation() {
        let r = ring("Z12");
        assert!(matches!(Ideal::new(&r, [6]), Err(Error::NotAnIdeal(_))));
        assert!(matches!(Ideal::new(&r, [0, 4]), Err(Error::NotAnIdeal(_))));
        assert!(matches!(Ideal::new(&r, [0, 3, 6]), Err(Error::NotAnIdeal(_))));
        assert!(matches!(
            Ideal::new(&r, [0, 12]),
            Err(Error::IndexOutOfRange { .. })
        ));
        // left ideal that is not two-sided: matrices with zero second column
        let m = ring("M2(Z2)");
        let left: Vec<usize> = (0..16).filter(|x| x & 0b0101 == 0).collect();
        assert!(matches!(Ideal::new(&m, left), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn radical_examples() {
        assert_eq!(upper_nilradical(&ring("Z12")).members(), [0, 6]);
        assert_eq!(upper_nilradical(&ring("M2(Z2)")).members(), [0]);
        assert_eq!(upper_nilradical(&ring("Z9")).members(), [0, 3, 6]);
        assert_eq!(jacobson_radical(&ring("Z12")).members(), [0, 6]);
        assert_eq!(jacobson_radical(&ring("Z9")).members(), [0, 3, 6]);
        assert_eq!(jacobson_radical(&ring("M2(Z2)")).members(), [0]);
        assert_eq!(upper_nilradical(&ring("Z1")).members(), [0]);
    }

    #[test]
    fn nilradical_of_upper_triangular_like_product() {
        // In M2(Z4) the radical is 2·M2(Z4), 16 elements
        let r = ring("M2(Z4)");
        let nil = upper_nilradical(&r);
        assert_eq!(nil.len(), 16);
        assert_eq!(nil, jacobson_radical(&r));
    }

    #[test]
    fn quotient_examples() {
        let r = ring("Z12");
        let q0 = quotient_by_ideal(&r, &Ideal::new(&r, [0]).unwrap()).unwrap();
        assert_eq!(q0.order(), 12);
        for x in 0..12 {
            for y in 0..12 {
                assert_eq!(q0.mul_idx(x, y), r.mul_idx(x, y));
                assert_eq!(q0.add_idx(x, y), r.add_idx(x, y));
            }
        }
        let q = quotient_by_ideal(&r, &upper_nilradical(&r)).unwrap();
        assert_eq!(q.order(), 6);
        let z9 = ring("Z9");
        let q9 = quotient_by_ideal(&z9, &upper_nilradical(&z9)).unwrap();
        assert_eq!(q9.order(), 3);
        assert!(is_z3(&q9));
        let other = ring("Z12");
        assert_eq!(
            quotient_by_ideal(&other, &upper_nilradical(&r)).unwrap_err(),
            Error::RingMismatch
        );
    }

    #[test]
    fn quotient_cosets_ordered_by_minimal_member() {
        let r = ring("Z12");
        let i = Ideal::new(&r, [0, 4, 8]).unwrap();
        let q = quotient_by_ideal(&r, &i).unwrap();
        assert_eq!(q.order(), 4);
        // coset of 3 is index 3, 5 ≡ 1, so 3 + 2 -> coset 1
        assert_eq!(q.add_idx(3, 2), 1);
        assert_eq!(q.one_idx(), 1);
    }

    #[test]
    fn z3_recognition() {
        assert!(is_z3(&ring("Z3")));
        assert!(!is_z3(&ring("Z2")));
        assert!(is_z3(&ring("nilquo(Z9)")));
        assert!(!is_z3(&ring("Z1")));
    }
}
