//! Idempotent-plus-nilpotent decompositions, the nil-clean and weakly
//! nil-clean oracles, and the structural classifier.
//!
//! The oracles are plain exhaustive searches. The structural classifier never
//! asks the weakly nil-clean oracle for its verdict: it either finds nil
//! cleanness directly or looks for a central idempotent splitting the ring as
//! `eR × (1−e)R` with `eR` nil clean and `(1−e)R / Nil*` of order three.

use serde::Serialize;

use crate::element::SubsetKind;
use crate::error::Result;
use crate::par;
use crate::radical::{is_z3, quotient_by_ideal, upper_nilradical};
use crate::ring::{Elem, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signs {
    PlusOnly,
    Both,
}

/// `a = q + sign·e` with `e` idempotent and `q` nilpotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NilCleanDecomp {
    pub a: Elem,
    pub e: Elem,
    pub q: Elem,
    pub sign: Sign,
}

/// Outcome of a ring-wide oracle. `witness` is the least-index element
/// without a decomposition when `holds` is false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Elem>,
}

impl Verdict {
    fn from_witness(witness: Option<Elem>) -> Verdict {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    NilClean,
    /// `R ≅ e_nil·R × e_z3·R`; `e_nil` may be zero.
    WeaklyNilCleanOnly { e_nil: Elem, e_z3: Elem },
    /// `witness` is absent only when the oracle disagrees with the
    /// structural search, i.e. on a mismatch.
    NotWeaklyNilClean { witness: Option<Elem> },
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::NilClean => "nil_clean",
            Classification::WeaklyNilCleanOnly { .. } => "weakly_nil_clean_only",
            Classification::NotWeaklyNilClean { .. } => "not_weakly_nil_clean",
        }
    }

    pub fn is_weakly_nil_clean(&self) -> bool {
        !matches!(self, Classification::NotWeaklyNilClean { .. })
    }
}

/// All decompositions of `a`, sign `+` first, then ascending idempotent index.
pub fn decompositions(ring: &Ring, a: Elem, signs: Signs) -> Result<Vec<NilCleanDecomp>> {
    let ai = ring.check(a)?;
    let idempotents = ring.special_subset_idx(SubsetKind::Idempotents);
    let nil = ring.nilpotency_table();
    let sign_list: &[Sign] = match signs {
        Signs::PlusOnly => &[Sign::Plus],
        Signs::Both => &[Sign::Plus, Sign::Minus],
    };
    let mut out = Vec::new();
    for &sign in sign_list {
        for &e in &idempotents {
            // a = q + e  =>  q = a − e ;  a = q − e  =>  q = a + e
            let q = match sign {
                Sign::Plus => ring.sub_idx(ai, e),
                Sign::Minus => ring.add_idx(ai, e),
            };
            if nil[q].is_some() {
                out.push(NilCleanDecomp {
                    a,
                    e: ring.wrap(e),
                    q: ring.wrap(q),
                    sign,
                });
            }
        }
    }
    Ok(out)
}

fn first_without_decomposition(ring: &Ring, signs: Signs) -> Option<Elem> {
    let idempotents = ring.special_subset_idx(SubsetKind::Idempotents);
    let nil = ring.nilpotency_table();
    let witness = par::find_first(ring.order(), |a| {
        !idempotents.iter().any(|&e| {
            nil[ring.sub_idx(a, e)].is_some()
                || (signs == Signs::Both && nil[ring.add_idx(a, e)].is_some())
        })
    });
    witness.map(|w| ring.wrap(w))
}

pub fn is_nil_clean_ring(ring: &Ring) -> Verdict {
    Verdict::from_witness(first_without_decomposition(ring, Signs::PlusOnly))
}

/// Brute-force oracle: every element is `q + e` or `q − e`.
pub fn is_weakly_nil_clean_ring(ring: &Ring) -> Verdict {
    Verdict::from_witness(first_without_decomposition(ring, Signs::Both))
}

/// `e_z3·R` modulo its upper nilradical is `Z3`.
fn corner_reduces_to_z3(ring: &Ring, e: usize) -> bool {
    let corner = ring
        .corner(ring.wrap(e))
        .expect("central idempotents give corner rings");
    if !corner.order().is_multiple_of(3) {
        return false;
    }
    let nil = upper_nilradical(&corner);
    let quotient = quotient_by_ideal(&corner, &nil).expect("Nil* is an ideal of its own ring");
    is_z3(&quotient)
}

fn corner_is_nil_clean(ring: &Ring, e: usize) -> bool {
    let corner = ring
        .corner(ring.wrap(e))
        .expect("central idempotents give corner rings");
    is_nil_clean_ring(&corner).holds
}

/// Either nil clean, or the first central idempotent pair `(e_nil, e_z3)` in
/// ascending `e_nil` order with `e_nil·R` nil clean and
/// `e_z3·R / Nil*(e_z3·R) ≅ Z3`.
pub fn classify_structural(ring: &Ring) -> Classification {
    if is_nil_clean_ring(ring).holds {
        return Classification::NilClean;
    }
    let central = ring.special_subset_idx(SubsetKind::CentralIdempotents);
    let one = ring.one_idx();
    for &e_nil in &central {
        let e_z3 = ring.sub_idx(one, e_nil);
        if corner_reduces_to_z3(ring, e_z3) && corner_is_nil_clean(ring, e_nil) {
            return Classification::WeaklyNilCleanOnly {
                e_nil: ring.wrap(e_nil),
                e_z3: ring.wrap(e_z3),
            };
        }
    }
    Classification::NotWeaklyNilClean {
        witness: is_weakly_nil_clean_ring(ring).witness,
    }
}

/// Oracle verdicts next to the structural classification.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub ring: String,
    pub order: usize,
    pub nil_clean: bool,
    pub weakly_nil_clean: bool,
    pub oracle_witness: Option<Elem>,
    pub classification: Classification,
    pub agree: bool,
}

pub fn verify_theorem(ring: &Ring) -> TheoremReport {
    let oracle = is_weakly_nil_clean_ring(ring);
    let nil_clean = is_nil_clean_ring(ring).holds;
    let classification = classify_structural(ring);
    let nil_clean_consistent =
        nil_clean == matches!(classification, Classification::NilClean);
    TheoremReport {
        ring: ring.label().to_string(),
        order: ring.order(),
        nil_clean,
        weakly_nil_clean: oracle.holds,
        oracle_witness: oracle.witness,
        classification,
        agree: oracle.holds == classification.is_weakly_nil_clean() && nil_clean_consistent,
    }
}
