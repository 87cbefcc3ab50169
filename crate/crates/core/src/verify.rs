//! Instance checkers for the involution, weakly-nil-clean and quadratic
//! element statements. Every checker reports what it examined and lists
//! violations instead of failing, so a sweep can keep going and tally them.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{decompositions, is_weakly_nil_clean_ring, NilCleanDecomp, Signs};
use crate::element::SubsetKind;
use crate::error::{Error, Result};
use crate::par;
use crate::radical::{ideal_violation, is_z3, quotient_by_ideal, upper_nilradical};
use crate::ring::{Elem, Ring};

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionRecord {
    pub a: Elem,
    pub decompositions: usize,
    /// Idempotent parts of the sign-`+` decompositions.
    pub idempotents: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop1Report {
    pub ring: String,
    pub involutions: Vec<InvolutionRecord>,
    /// Decompositions of involutions whose idempotent is not one.
    pub violations: Vec<NilCleanDecomp>,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every `e + q` decomposition of every involution must have `e = 1`.
pub fn verify_prop1(ring: &Ring) -> Prop1Report {
    let involutions = ring.special_subset(SubsetKind::Involutions);
    let found = par::map_slice(&involutions, |&a| {
        decompositions(ring, a, Signs::PlusOnly).expect("element of this ring")
    });
    let one = ring.one();
    let mut records = Vec::with_capacity(involutions.len());
    let mut violations = Vec::new();
    for (a, decomps) in involutions.into_iter().zip(found) {
        violations.extend(decomps.iter().filter(|d| d.e != one).copied());
        records.push(InvolutionRecord {
            a,
            decompositions: decomps.len(),
            idempotents: decomps.iter().map(|d| d.e).collect(),
        });
    }
    Prop1Report {
        ring: ring.label().to_string(),
        involutions: records,
        violations,
    }
}

/// The chain of identities behind the involution argument, evaluated on one
/// triple `a = e + q`. With `f = 1 − e` and `r = q(1 + q)`.
#[derive(Debug, Clone, Serialize)]
pub struct ProofTrace {
    pub a: Elem,
    pub e: Elem,
    pub q: Elem,
    pub f: Elem,
    pub r: Elem,
    /// `fq = fa`
    pub fq_eq_fa: bool,
    /// `fr = faf + f·a²`
    pub fr_formula: bool,
    /// `rf = faf + a²·f`
    pub rf_formula: bool,
    pub involution: bool,
    // The fields below are only evaluated when a² = 1.
    pub fr_eq_rf: Option<bool>,
    pub r_commutes_with_e: Option<bool>,
    pub r_commutes_with_f: Option<bool>,
    pub r_commutes_with_q: Option<bool>,
    pub r_commutes_with_a: Option<bool>,
    /// `f = f·(1 + q)⁻¹·a·r`
    pub f_final_identity: Option<bool>,
    pub f_nilpotency_index: Option<u32>,
    pub f_is_zero: Option<bool>,
}

impl ProofTrace {
    pub fn general_ok(&self) -> bool {
        self.fq_eq_fa && self.fr_formula && self.rf_formula
    }

    /// True when not an involution, otherwise every involution-case check.
    pub fn involution_ok(&self) -> bool {
        [
            self.fr_eq_rf,
            self.r_commutes_with_e,
            self.r_commutes_with_f,
            self.r_commutes_with_q,
            self.r_commutes_with_a,
            self.f_final_identity,
            self.f_is_zero,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
            && (!self.involution || self.f_nilpotency_index.is_some())
    }

    pub fn ok(&self) -> bool {
        self.general_ok() && self.involution_ok()
    }
}

pub fn proof_trace(ring: &Ring, a: Elem, e: Elem, q: Elem) -> Result<ProofTrace> {
    let (ai, ei, qi) = (ring.check(a)?, ring.check(e)?, ring.check(q)?);
    if !ring.is_idempotent_idx(ei) {
        return Err(Error::PreconditionViolated(format!("{e} is not idempotent")));
    }
    if !ring.is_nilpotent_idx(qi) {
        return Err(Error::PreconditionViolated(format!("{q} is not nilpotent")));
    }
    if ring.add_idx(ei, qi) != ai {
        return Err(Error::PreconditionViolated(format!("{a} != {e} + {q}")));
    }
    Ok(trace_unchecked(ring, ai, ei, qi))
}

fn trace_unchecked(ring: &Ring, a: usize, e: usize, q: usize) -> ProofTrace {
    let mul = |x, y| ring.mul_idx(x, y);
    let add = |x, y| ring.add_idx(x, y);
    let one = ring.one_idx();
    let f = ring.sub_idx(one, e);
    let one_plus_q = add(one, q);
    let r = mul(q, one_plus_q);
    let a2 = mul(a, a);
    let faf = mul(mul(f, a), f);
    let fr = mul(f, r);
    let rf = mul(r, f);

    let involution = a2 == one;
    let commutes = |x| mul(r, x) == mul(x, r);
    let (fr_eq_rf, with_e, with_f, with_q, with_a, final_identity, f_index, f_zero) =
        if involution {
            let inv = ring
                .unipotent_inverse_idx(q)
                .expect("q is nilpotent so 1 + q is a unit");
            let rhs = mul(mul(mul(f, inv), a), r);
            let f_index = ring.nilpotency_index_idx(f);
            (
                Some(fr == rf),
                Some(commutes(e)),
                Some(commutes(f)),
                Some(commutes(q)),
                Some(commutes(a)),
                Some(f == rhs),
                f_index,
                Some(f == ring.zero_idx()),
            )
        } else {
            (None, None, None, None, None, None, None, None)
        };

    ProofTrace {
        a: ring.wrap(a),
        e: ring.wrap(e),
        q: ring.wrap(q),
        f: ring.wrap(f),
        r: ring.wrap(r),
        fq_eq_fa: mul(f, q) == mul(f, a),
        fr_formula: fr == add(faf, mul(f, a2)),
        rf_formula: rf == add(faf, mul(a2, f)),
        involution,
        fr_eq_rf,
        r_commutes_with_e: with_e,
        r_commutes_with_f: with_f,
        r_commutes_with_q: with_q,
        r_commutes_with_a: with_a,
        f_final_identity: final_identity,
        f_nilpotency_index: f_index,
        f_is_zero: f_zero,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofChainReport {
    pub ring: String,
    pub exhaustive: bool,
    /// `(e, q)` pairs checked, involution decompositions included.
    pub triples: usize,
    pub involution_triples: usize,
    pub failures: Vec<ProofTrace>,
}

impl ProofChainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates [`proof_trace`] over `(e, q)` pairs: all of them when the ring
/// has order at most `exhaustive_limit`, otherwise `samples` seeded random
/// pairs plus every decomposition of every involution.
pub fn proof_chain_sweep(
    ring: &Ring,
    exhaustive_limit: usize,
    samples: usize,
    seed: u64,
) -> ProofChainReport {
    let idempotents = ring.special_subset_idx(SubsetKind::Idempotents);
    let nilpotents = ring.special_subset_idx(SubsetKind::Nilpotents);
    let exhaustive = ring.order() <= exhaustive_limit;
    let mut pairs: Vec<(usize, usize)> = if exhaustive {
        idempotents
            .iter()
            .flat_map(|&e| nilpotents.iter().map(move |&q| (e, q)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let e = idempotents[rng.gen_range(0..idempotents.len())];
                let q = nilpotents[rng.gen_range(0..nilpotents.len())];
                (e, q)
            })
            .collect()
    };
    if !exhaustive {
        for a in ring.special_subset(SubsetKind::Involutions) {
            let found = decompositions(ring, a, Signs::PlusOnly).expect("element of this ring");
            pairs.extend(found.iter().map(|d| (d.e.index(), d.q.index())));
        }
    }
    let traces = par::map_slice(&pairs, |&(e, q)| trace_unchecked(ring, ring.add_idx(e, q), e, q));
    let involution_triples = traces.iter().filter(|t| t.involution).count();
    ProofChainReport {
        ring: ring.label().to_string(),
        exhaustive,
        triples: traces.len(),
        involution_triples,
        failures: traces.into_iter().filter(|t| !t.ok()).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma2Report {
    pub ring: String,
    pub order: usize,
    pub idempotent_count: usize,
    /// Only zero and one are idempotent.
    pub trivial_idempotents: bool,
    /// Elements outside `Nil ∪ (1 + Nil) ∪ (−1 + Nil)`.
    pub uncovered: Vec<Elem>,
    pub nilpotents_form_ideal: bool,
    pub quotient_order: usize,
    pub quotient_is_z3: bool,
}

impl Lemma2Report {
    pub fn passed(&self) -> bool {
        self.trivial_idempotents
            && self.uncovered.is_empty()
            && self.nilpotents_form_ideal
            && self.quotient_is_z3
    }
}

/// Preconditions: 2 is a unit and the ring is weakly nil clean.
pub fn verify_lemma2(ring: &Ring) -> Result<Lemma2Report> {
    if ring.inverse_idx(ring.of_int_idx(2)).is_none() {
        return Err(Error::PreconditionViolated("2 is not a unit".into()));
    }
    if !is_weakly_nil_clean_ring(ring).holds {
        return Err(Error::PreconditionViolated(
            "ring is not weakly nil clean".into(),
        ));
    }
    let idempotents = ring.special_subset_idx(SubsetKind::Idempotents);
    let (zero, one) = (ring.zero_idx(), ring.one_idx());
    let trivial_idempotents = idempotents.iter().all(|&e| e == zero || e == one);

    let nil = ring.nilpotency_table();
    let minus_one = ring.neg_idx(one);
    let uncovered = par::filter_range(ring.order(), |x| {
        nil[x].is_none()
            && nil[ring.sub_idx(x, one)].is_none()
            && nil[ring.sub_idx(x, minus_one)].is_none()
    });

    let nilpotents = ring.special_subset_idx(SubsetKind::Nilpotents);
    let nilpotents_form_ideal = ideal_violation(ring, &nilpotents).is_none();

    let radical = upper_nilradical(ring);
    let quotient = quotient_by_ideal(ring, &radical)?;
    Ok(Lemma2Report {
        ring: ring.label().to_string(),
        order: ring.order(),
        idempotent_count: idempotents.len(),
        trivial_idempotents,
        uncovered: uncovered.into_iter().map(|x| ring.wrap(x)).collect(),
        nilpotents_form_ideal,
        quotient_order: quotient.order(),
        quotient_is_z3: is_z3(&quotient),
    })
}

/// One quadratic instance `α·a² + β·a + γ = 0`, `a = e + q`, with
/// `r = q(α·q + α + β)` and `conclusion = (α+β)ⁿ·e + (α+β)ⁿ⁻¹·γ` where `n` is
/// the nilpotency index of `q`.
#[derive(Debug, Clone, Serialize)]
pub struct RemarkInstance {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub a: Elem,
    pub e: Elem,
    pub q: Elem,
    pub r: Elem,
    pub n: u32,
    pub conclusion: Elem,
    pub r_nilpotent: bool,
    pub r_commutes_with_e: bool,
    pub conclusion_nilpotent: bool,
}

impl RemarkInstance {
    pub fn passed(&self) -> bool {
        self.r_nilpotent && self.r_commutes_with_e && self.conclusion_nilpotent
    }
}

pub fn verify_remark(
    ring: &Ring,
    a: Elem,
    e: Elem,
    q: Elem,
    alpha: i64,
    beta: i64,
    gamma: i64,
) -> Result<RemarkInstance> {
    let (ai, ei, qi) = (ring.check(a)?, ring.check(e)?, ring.check(q)?);
    if !ring.is_idempotent_idx(ei) {
        return Err(Error::PreconditionViolated(format!("{e} is not idempotent")));
    }
    if ring.add_idx(ei, qi) != ai {
        return Err(Error::PreconditionViolated(format!("{a} != {e} + {q}")));
    }
    let Some(n) = ring.nilpotency_index_idx(qi) else {
        return Err(Error::PreconditionViolated(format!("{q} is not nilpotent")));
    };
    if !satisfies_quadratic(ring, ai, alpha, beta, gamma) {
        return Err(Error::PreconditionViolated(format!(
            "{alpha}·a² + {beta}·a + {gamma} != 0 for a = {a}"
        )));
    }
    Ok(remark_unchecked(ring, ai, ei, qi, n, alpha, beta, gamma))
}

fn satisfies_quadratic(ring: &Ring, a: usize, alpha: i64, beta: i64, gamma: i64) -> bool {
    let a2 = ring.mul_idx(a, a);
    let lhs = ring.add_idx(
        ring.add_idx(
            ring.mul_idx(ring.of_int_idx(alpha), a2),
            ring.mul_idx(ring.of_int_idx(beta), a),
        ),
        ring.of_int_idx(gamma),
    );
    lhs == ring.zero_idx()
}

#[allow(clippy::too_many_arguments)]
fn remark_unchecked(
    ring: &Ring,
    a: usize,
    e: usize,
    q: usize,
    n: u32,
    alpha: i64,
    beta: i64,
    gamma: i64,
) -> RemarkInstance {
    let mul = |x, y| ring.mul_idx(x, y);
    let s = ring.of_int_idx(alpha + beta);
    let inner = ring.add_idx(mul(ring.of_int_idx(alpha), q), s);
    let r = mul(q, inner);
    let conclusion = ring.add_idx(
        mul(ring.pow_idx(s, n as u64), e),
        mul(ring.pow_idx(s, n as u64 - 1), ring.of_int_idx(gamma)),
    );
    RemarkInstance {
        alpha,
        beta,
        gamma,
        a: ring.wrap(a),
        e: ring.wrap(e),
        q: ring.wrap(q),
        r: ring.wrap(r),
        n,
        conclusion: ring.wrap(conclusion),
        r_nilpotent: ring.is_nilpotent_idx(r),
        r_commutes_with_e: mul(r, e) == mul(e, r),
        conclusion_nilpotent: ring.is_nilpotent_idx(conclusion),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RemarkScanReport {
    pub ring: String,
    pub scalar_bound: i64,
    pub instances: usize,
    pub violations: Vec<RemarkInstance>,
    /// Instances with `(α, β, γ) = (1, 0, −1)`, i.e. involutions.
    pub reduction_instances: usize,
    /// Reduction instances where the idempotent part is not one.
    pub reduction_violations: Vec<RemarkInstance>,
}

impl RemarkScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.reduction_violations.is_empty()
    }
}

/// Runs [`verify_remark`] on every element, every `e + q` decomposition and
/// every scalar triple with entries in `[-bound, bound]` that `a` satisfies.
pub fn remark_scan(ring: &Ring, scalar_bound: i64) -> RemarkScanReport {
    let bound = scalar_bound.abs();
    let scalars: Vec<i64> = (-bound..=bound).collect();
    let one = ring.one_idx();
    let per_element = par::map_range(ring.order(), |a| {
        let decomps =
            decompositions(ring, ring.wrap(a), Signs::PlusOnly).expect("element of this ring");
        let mut out = Vec::new();
        if decomps.is_empty() {
            return out;
        }
        for &alpha in &scalars {
            for &beta in &scalars {
                for &gamma in &scalars {
                    if !satisfies_quadratic(ring, a, alpha, beta, gamma) {
                        continue;
                    }
                    for d in &decomps {
                        let (e, q) = (d.e.index(), d.q.index());
                        let n = ring
                            .nilpotency_index_idx(q)
                            .expect("decomposition parts are nilpotent");
                        out.push(remark_unchecked(ring, a, e, q, n, alpha, beta, gamma));
                    }
                }
            }
        }
        out
    });
    let mut report = RemarkScanReport {
        ring: ring.label().to_string(),
        scalar_bound: bound,
        instances: 0,
        violations: Vec::new(),
        reduction_instances: 0,
        reduction_violations: Vec::new(),
    };
    for inst in per_element.into_iter().flatten() {
        report.instances += 1;
        if (inst.alpha, inst.beta, inst.gamma) == (1, 0, -1) {
            report.reduction_instances += 1;
            if inst.e.index() != one {
                report.reduction_violations.push(inst.clone());
            }
        }
        if !inst.passed() {
            report.violations.push(inst);
        }
    }
    report
}
