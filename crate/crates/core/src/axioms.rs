//! Sampled ring-axiom checks.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ring::Ring;

pub const DEFAULT_SEED: u64 = 0x6e69_6c63;

#[derive(Debug, Clone, Serialize)]
pub struct AxiomFailure {
    pub law: &'static str,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks associativity, commutativity of addition, both distributive laws
/// and the identity laws on `samples` seeded random triples.
pub fn check_sampled(ring: &Ring, samples: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.order();
    let (add, mul) = (|x, y| ring.add_idx(x, y), |x, y| ring.mul_idx(x, y));
    let one = ring.one_idx();
    let mut failures = Vec::new();
    for _ in 0..samples {
        let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let laws: [(&'static str, bool); 6] = [
            ("additive associativity", add(add(x, y), z) == add(x, add(y, z))),
            ("additive commutativity", add(x, y) == add(y, x)),
            ("multiplicative associativity", mul(x, mul(y, z)) == mul(mul(x, y), z)),
            ("left distributivity", mul(x, add(y, z)) == add(mul(x, y), mul(x, z))),
            ("right distributivity", mul(add(y, z), x) == add(mul(y, x), mul(z, x))),
            ("identity", mul(one, x) == x && mul(x, one) == x),
        ];
        for (law, holds) in laws {
            if !holds {
                failures.push(AxiomFailure { law, x, y, z });
            }
        }
        let additive_identity = add(x, ring.zero_idx()) == x && add(x, ring.neg_idx(x)) == ring.zero_idx();
        if !additive_identity {
            failures.push(AxiomFailure { law: "additive inverse", x, y, z });
        }
    }
    AxiomReport { samples, failures }
}
