use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use nilclean_core::axioms::{self, AxiomReport};
use nilclean_core::census::{self, CensusRecord};
use nilclean_core::verify::{
    proof_chain_sweep, remark_scan, verify_lemma2, verify_prop1, ProofChainReport,
};
use nilclean_core::{
    construct_ring_with_cap, decompositions, expr, quotient_by_ideal, upper_nilradical,
    verify_theorem, Classification, Error, Ring, Signs,
};

use crate::{Family, Format, Outcome, SignsArg, Settings, VerifyKind};

const AXIOM_SAMPLES: usize = 1000;
const PROOF_CHAIN_EXHAUSTIVE_LIMIT: usize = 16;
const PROOF_CHAIN_SAMPLES: usize = 1000;

fn build(spec_text: &str, settings: &Settings) -> Result<Ring, String> {
    let spec = expr::parse(spec_text).map_err(|e| format!("{spec_text:?}: {e}"))?;
    construct_ring_with_cap(&spec, settings.max_order).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn classify(spec_text: &str, settings: &Settings) -> Result<Outcome, String> {
    let ring = build(spec_text, settings)?;
    let report = verify_theorem(&ring);
    let code = if report.agree { 0 } else { 1 };
    let text = match settings.format {
        Format::Json => to_json(&report),
        Format::Tsv => {
            let (e_nil, e_z3, witness) = match report.classification {
                Classification::WeaklyNilCleanOnly { e_nil, e_z3 } => {
                    (Some(e_nil), Some(e_z3), None)
                }
                Classification::NotWeaklyNilClean { witness } => (None, None, witness),
                Classification::NilClean => (None, None, None),
            };
            format!(
                "spec\torder\tnil_clean\tweakly_nil_clean\tclassification\twitness\te_nil\te_z3\tagree\n\
                 {}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                report.ring,
                report.order,
                report.nil_clean,
                report.weakly_nil_clean,
                report.classification.tag(),
                opt(witness.or(report.oracle_witness)),
                opt(e_nil),
                opt(e_z3),
                report.agree
            )
        }
    };
    Ok(Outcome { text, code })
}

pub fn census(family: Family, max_n: u64, settings: &Settings) -> Result<Outcome, String> {
    match family {
        Family::Zn => {}
    }
    if max_n < 2 {
        return Err("--max must be at least 2".into());
    }
    if max_n > settings.max_order {
        return Err(format!(
            "--max {max_n} exceeds --max-order {}",
            settings.max_order
        ));
    }
    let records = census::census_zn(max_n, settings.max_order).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    match settings.format {
        Format::Tsv => census::write_tsv(&mut buf, &records, settings.timing),
        Format::Json => census::write_jsonl(&mut buf, &records, settings.timing),
    }
    .expect("writing to memory cannot fail");
    let code = if records.iter().all(|r: &CensusRecord| r.agree) { 0 } else { 1 };
    Ok(Outcome {
        text: String::from_utf8(buf).expect("records are UTF-8"),
        code,
    })
}

#[derive(Serialize)]
struct CheckRow {
    check: &'static str,
    instances: usize,
    violations: usize,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    kind: &'a str,
    spec: &'a str,
    status: &'a str,
    checks: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    details: Value,
}

fn axiom_row(rep: &AxiomReport) -> CheckRow {
    CheckRow {
        check: "axioms",
        instances: rep.samples,
        violations: rep.failures.len(),
    }
}

fn chain_row(rep: &ProofChainReport) -> CheckRow {
    CheckRow {
        check: "proof_chain",
        instances: rep.triples,
        violations: rep.failures.len(),
    }
}

pub fn verify(
    kind: VerifyKind,
    spec_text: &str,
    scalar_bound: i64,
    settings: &Settings,
) -> Result<Outcome, String> {
    let ring = build(spec_text, settings)?;
    let kind_name = match kind {
        VerifyKind::Prop1 => "prop1",
        VerifyKind::Lemma2 => "lemma2",
        VerifyKind::Theorem => "theorem",
        VerifyKind::Remark => "remark",
    };
    let axioms = axioms::check_sampled(&ring, AXIOM_SAMPLES, settings.seed);
    let mut checks = vec![axiom_row(&axioms)];
    let mut note = None;
    let mut skipped = false;
    let details = match kind {
        VerifyKind::Prop1 => {
            let rep = verify_prop1(&ring);
            let chain = proof_chain_sweep(
                &ring,
                PROOF_CHAIN_EXHAUSTIVE_LIMIT,
                PROOF_CHAIN_SAMPLES,
                settings.seed,
            );
            checks.push(CheckRow {
                check: "involution_decompositions",
                instances: rep.involutions.iter().map(|i| i.decompositions).sum(),
                violations: rep.violations.len(),
            });
            checks.push(chain_row(&chain));
            json!({ "axioms": axioms, "prop1": rep, "proof_chain": chain })
        }
        VerifyKind::Lemma2 => match verify_lemma2(&ring) {
            Ok(rep) => {
                let flag = |ok: bool| usize::from(!ok);
                checks.push(CheckRow {
                    check: "trivial_idempotents",
                    instances: rep.idempotent_count,
                    violations: flag(rep.trivial_idempotents),
                });
                checks.push(CheckRow {
                    check: "nil_cosets_cover",
                    instances: rep.order,
                    violations: rep.uncovered.len(),
                });
                checks.push(CheckRow {
                    check: "nilpotents_form_ideal",
                    instances: 1,
                    violations: flag(rep.nilpotents_form_ideal),
                });
                checks.push(CheckRow {
                    check: "quotient_is_z3",
                    instances: 1,
                    violations: flag(rep.quotient_is_z3),
                });
                json!({ "axioms": axioms, "lemma2": rep })
            }
            Err(Error::PreconditionViolated(why)) => {
                eprintln!("note: lemma2 skipped: {why}");
                skipped = true;
                note = Some(why);
                json!({ "axioms": axioms })
            }
            Err(e) => return Err(e.to_string()),
        },
        VerifyKind::Theorem => {
            let rep = verify_theorem(&ring);
            checks.push(CheckRow {
                check: "oracle_vs_structural",
                instances: 1,
                violations: usize::from(!rep.agree),
            });
            json!({ "axioms": axioms, "theorem": rep })
        }
        VerifyKind::Remark => {
            let rep = remark_scan(&ring, scalar_bound);
            checks.push(CheckRow {
                check: "quadratic_instances",
                instances: rep.instances,
                violations: rep.violations.len(),
            });
            checks.push(CheckRow {
                check: "involution_reduction",
                instances: rep.reduction_instances,
                violations: rep.reduction_violations.len(),
            });
            json!({ "axioms": axioms, "remark": rep })
        }
    };
    let violated = checks.iter().any(|c| c.violations > 0);
    let status = if violated {
        "fail"
    } else if skipped {
        "skipped"
    } else {
        "pass"
    };
    let out = VerifyOutput {
        kind: kind_name,
        spec: ring.label(),
        status,
        checks,
        note,
        details,
    };
    let text = match settings.format {
        Format::Json => to_json(&out),
        Format::Tsv => {
            let mut s = String::from("kind\tspec\tcheck\tinstances\tviolations\tstatus\n");
            for c in &out.checks {
                let row_status = if c.violations > 0 { "fail" } else { "pass" };
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    out.kind, out.spec, c.check, c.instances, c.violations, row_status
                );
            }
            if skipped {
                let _ = writeln!(
                    s,
                    "{}\t{}\tpreconditions\t0\t0\tskipped",
                    out.kind, out.spec
                );
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: if violated { 1 } else { 0 },
    })
}

pub fn radical(spec_text: &str, settings: &Settings) -> Result<Outcome, String> {
    let ring = build(spec_text, settings)?;
    let nil = upper_nilradical(&ring);
    let quotient = quotient_by_ideal(&ring, &nil).map_err(|e| e.to_string())?;
    let text = match settings.format {
        Format::Json => to_json(&json!({
            "spec": ring.label(),
            "order": ring.order(),
            "members": nil.members(),
            "quotient_order": quotient.order(),
        })),
        Format::Tsv => {
            let members: Vec<String> = nil.members().iter().map(|m| m.to_string()).collect();
            format!(
                "spec\torder\tradical_order\tquotient_order\tmembers\n{}\t{}\t{}\t{}\t{}\n",
                ring.label(),
                ring.order(),
                nil.len(),
                quotient.order(),
                members.join(",")
            )
        }
    };
    Ok(Outcome { text, code: 0 })
}

pub fn decompose(
    spec_text: &str,
    index: usize,
    signs: SignsArg,
    settings: &Settings,
) -> Result<Outcome, String> {
    let ring = build(spec_text, settings)?;
    let a = ring.elem(index).map_err(|e| e.to_string())?;
    let signs = match signs {
        SignsArg::Plus => Signs::PlusOnly,
        SignsArg::Both => Signs::Both,
    };
    let found = decompositions(&ring, a, signs).map_err(|e| e.to_string())?;
    let text = match settings.format {
        Format::Json => to_json(&found),
        Format::Tsv => {
            let mut s = String::from("a\te\tq\tsign\n");
            for d in &found {
                let _ = writeln!(s, "{}\t{}\t{}\t{}", d.a, d.e, d.q, d.sign.symbol());
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}
