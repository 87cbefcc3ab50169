//! Finite unital rings, their idempotent/nilpotent structure, and exhaustive
//! checkers for statements about nil-clean and weakly nil-clean rings.
//!
//! Rings are built from a small structural description ([`RingSpec`]) and
//! every element is addressed by a canonical index in `0..order`. All
//! algorithms are brute force over the element set, which keeps them easy to
//! audit and bounds them to desk-scale orders (see [`DEFAULT_ORDER_CAP`]).
//!
//! With the default `parallel` feature the element sweeps run on rayon;
//! without it every sweep falls back to plain iterators.

pub mod axioms;
pub mod catalog;
pub mod census;
pub mod classify;
mod element;
pub mod error;
pub mod expr;
pub mod par;
pub mod radical;
pub mod ring;
pub mod spec;
pub mod verify;

pub use classify::{
    classify_structural, decompositions, is_nil_clean_ring, is_weakly_nil_clean_ring,
    verify_theorem, Classification, NilCleanDecomp, Sign, Signs, TheoremReport, Verdict,
};
pub use element::SubsetKind;
pub use error::{Error, Result};
pub use radical::{
    ideal_closure, is_nil_ideal, is_z3, jacobson_radical, quotient_by_ideal, upper_nilradical,
    Ideal,
};
pub use ring::{construct_ring, construct_ring_with_cap, Elem, Ring, DEFAULT_ORDER_CAP};
pub use spec::RingSpec;
