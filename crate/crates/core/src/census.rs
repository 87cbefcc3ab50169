//! Family sweeps and their TSV / JSON-lines serializations.

use std::io::{self, Write};
use std::time::Instant;

use serde::Serialize;

use crate::classify::{verify_theorem, Classification};
use crate::error::Result;
use crate::expr;
use crate::par;
use crate::ring::construct_ring_with_cap;
use crate::spec::RingSpec;

pub const TSV_HEADER: &str =
    "spec\torder\tnil_clean\tweakly_nil_clean\tclassification\twitness\tmillis";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub e_nil: usize,
    pub e_z3: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub spec: String,
    pub order: usize,
    pub nil_clean: bool,
    pub weakly_nil_clean: bool,
    pub class: &'static str,
    /// Least element with no decomposition of either sign.
    pub witness: Option<usize>,
    pub factorization: Option<Factorization>,
    /// Oracle and structural verdicts agree.
    pub agree: bool,
    pub millis: u64,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    spec: &'a str,
    order: usize,
    class: &'a str,
    nil_clean: bool,
    weakly_nil_clean: bool,
    witness: Option<usize>,
    factorization: Option<Factorization>,
    millis: u64,
}

impl CensusRecord {
    pub fn to_tsv_row(&self, timing: bool) -> String {
        let witness = self.witness.map(|w| w.to_string()).unwrap_or_default();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.spec,
            self.order,
            self.nil_clean,
            self.weakly_nil_clean,
            self.class,
            witness,
            if timing { self.millis } else { 0 }
        )
    }

    pub fn to_json(&self, timing: bool) -> String {
        let rec = JsonRecord {
            spec: &self.spec,
            order: self.order,
            class: self.class,
            nil_clean: self.nil_clean,
            weakly_nil_clean: self.weakly_nil_clean,
            witness: self.witness,
            factorization: self.factorization,
            millis: if timing { self.millis } else { 0 },
        };
        serde_json::to_string(&rec).expect("census records always serialize")
    }
}

/// Constructs the ring and runs both the oracle and the structural classifier.
pub fn census_record(spec: &RingSpec, order_cap: u64) -> Result<CensusRecord> {
    let start = Instant::now();
    let ring = construct_ring_with_cap(spec, order_cap)?;
    let report = verify_theorem(&ring);
    let factorization = match report.classification {
        Classification::WeaklyNilCleanOnly { e_nil, e_z3 } => Some(Factorization {
            e_nil: e_nil.index(),
            e_z3: e_z3.index(),
        }),
        _ => None,
    };
    Ok(CensusRecord {
        spec: expr::format(spec),
        order: ring.order(),
        nil_clean: report.nil_clean,
        weakly_nil_clean: report.weakly_nil_clean,
        class: report.classification.tag(),
        witness: report.oracle_witness.map(|w| w.index()),
        factorization,
        agree: report.agree,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// One record per `Z_n`, `2 ≤ n ≤ max_n`, in ascending `n`.
pub fn census_zn(max_n: u64, order_cap: u64) -> Result<Vec<CensusRecord>> {
    let specs: Vec<RingSpec> = (2..=max_n).map(RingSpec::zn).collect();
    census_specs(&specs, order_cap)
}

pub fn census_specs(specs: &[RingSpec], order_cap: u64) -> Result<Vec<CensusRecord>> {
    par::map_slice(specs, |s| census_record(s, order_cap))
        .into_iter()
        .collect()
}

pub fn write_tsv<W: Write>(out: &mut W, records: &[CensusRecord], timing: bool) -> io::Result<()> {
    writeln!(out, "{TSV_HEADER}")?;
    for rec in records {
        writeln!(out, "{}", rec.to_tsv_row(timing))?;
    }
    Ok(())
}

pub fn write_jsonl<W: Write>(
    out: &mut W,
    records: &[CensusRecord],
    timing: bool,
) -> io::Result<()> {
    for rec in records {
        writeln!(out, "{}", rec.to_json(timing))?;
    }
    Ok(())
}
