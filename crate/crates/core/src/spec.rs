use std::fmt;
use std::str::FromStr;

use crate::expr::{self, ParseError};

/// Structural description of a finite unital ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Integers modulo `n`.
    Zn(u64),
    /// Direct product, componentwise operations.
    Product(Box<RingSpec>, Box<RingSpec>),
    /// `k × k` matrices over the base ring.
    Matrix(u32, Box<RingSpec>),
    /// The base ring modulo its upper nilradical.
    NilQuotient(Box<RingSpec>),
}

impl RingSpec {
    pub fn zn(n: u64) -> Self {
        RingSpec::Zn(n)
    }

    pub fn product(left: RingSpec, right: RingSpec) -> Self {
        RingSpec::Product(Box::new(left), Box::new(right))
    }

    pub fn matrix(k: u32, base: RingSpec) -> Self {
        RingSpec::Matrix(k, Box::new(base))
    }

    pub fn nil_quotient(base: RingSpec) -> Self {
        RingSpec::NilQuotient(Box::new(base))
    }

    /// Depth of the spec tree; a bare `Zn` has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            RingSpec::Zn(_) => 1,
            RingSpec::Product(l, r) => 1 + l.depth().max(r.depth()),
            RingSpec::Matrix(_, b) | RingSpec::NilQuotient(b) => 1 + b.depth(),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr::format(self))
    }
}

impl FromStr for RingSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        expr::parse(s)
    }
}
