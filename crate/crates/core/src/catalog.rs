//! The fixed catalog of rings used by the acceptance sweeps.

use crate::spec::RingSpec;

fn zn(n: u64) -> RingSpec {
    RingSpec::zn(n)
}

/// `Z_n` for `2 ≤ n ≤ 36`, `Z_48`, `Z_54`, `Z_64`, four matrix rings and six
/// products.
pub fn acceptance_catalog() -> Vec<RingSpec> {
    let mut specs: Vec<RingSpec> = (2..=36).map(zn).collect();
    specs.extend([48, 54, 64].map(zn));
    specs.extend([
        RingSpec::matrix(2, zn(2)),
        RingSpec::matrix(2, zn(3)),
        RingSpec::matrix(2, zn(4)),
        RingSpec::matrix(3, zn(2)),
    ]);
    specs.extend([
        RingSpec::product(zn(4), zn(3)),
        RingSpec::product(zn(3), zn(3)),
        RingSpec::product(zn(2), zn(3)),
        RingSpec::product(zn(8), zn(9)),
        RingSpec::product(RingSpec::matrix(2, zn(2)), zn(3)),
        RingSpec::product(RingSpec::matrix(2, zn(2)), zn(9)),
    ]);
    specs
}
