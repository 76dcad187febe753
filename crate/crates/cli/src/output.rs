//! Row records and their text / jsonl encodings.
//!
//! Rationals and primes are emitted as canonical strings, never floats:
//! the table values outgrow every native numeric width long before l = 20.

use epseq::exact::Rational;
use epseq::primes::FactorizationReport;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Serialize)]
pub struct FactorRecord {
    pub p: String,
    pub e: i64,
}

#[derive(Serialize)]
pub struct ResidueRecord {
    pub value: String,
    pub exponent: i64,
    pub probable_prime: bool,
}

/// One table row: the order, the exact value, and its factorization.
#[derive(Serialize)]
pub struct Row {
    pub l: usize,
    pub epsilon: String,
    pub sign: i32,
    pub factors: Vec<FactorRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<ResidueRecord>,
}

impl Row {
    pub fn new(l: usize, value: &Rational, report: &FactorizationReport) -> Row {
        Row {
            l,
            epsilon: value.to_string(),
            sign: report.sign,
            factors: report
                .factors
                .iter()
                .map(|(p, e)| FactorRecord {
                    p: p.to_string(),
                    e: *e,
                })
                .collect(),
            residue: report.residue.as_ref().map(|r| ResidueRecord {
                value: r.value.to_string(),
                exponent: r.exponent,
                probable_prime: r.probable_prime,
            }),
        }
    }

    /// `l  epsilon  factorization`, with the factorization column omitted
    /// for a bare unit (the l = 0 row).
    pub fn text(&self, report: &FactorizationReport) -> String {
        if report.factors.is_empty() && report.sign > 0 && report.residue.is_none() {
            format!("{}  {}", self.l, self.epsilon)
        } else {
            format!("{}  {}  {}", self.l, self.epsilon, report)
        }
    }
}

pub fn emit_json(record: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string(record).expect("serializable record")
    );
}
