//! JSON reports. Every report carries a `schema` tag naming a file under
//! `schemas/`; integers that can grow without bound are written as strings.

use serde::Serialize;

use hodgehh_core::chainalg::{HomologyRecord, Integer, SparseMatrix};

pub const SCHEMA_VERSION: &str = "v1";

/// The tag written into a report's `schema` field.
pub fn schema_tag(kind: &str) -> String {
    format!("hodgehh/{kind}/{SCHEMA_VERSION}")
}

pub trait Report: Serialize {
    /// Whether every property the report checks holds.
    fn passed(&self) -> bool {
        true
    }

    /// Rows for CSV output: a header line, then one line per record.
    fn csv(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
    pub betti: usize,
    pub torsion: Vec<String>,
}

impl From<&HomologyRecord> for Record {
    fn from(r: &HomologyRecord) -> Self {
        Record { degree: r.degree, weight: r.weight, betti: r.betti, torsion: r.torsion.iter().map(Integer::to_string).collect() }
    }
}

impl Record {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

const RECORD_HEADER: &str = "section,degree,weight,betti,torsion";

fn record_row(section: &str, r: &Record) -> String {
    let weight = r.weight.map_or(String::new(), |w| w.to_string());
    format!("{section},{},{weight},{},{}", r.degree, r.betti, r.torsion.join(" "))
}

fn record_table<'a>(rows: impl IntoIterator<Item = (String, &'a Record)>) -> String {
    let mut out = String::from(RECORD_HEADER);
    out.push('\n');
    for (section, r) in rows {
        out.push_str(&record_row(&section, r));
        out.push('\n');
    }
    out
}

/// A dense matrix with entries as decimal strings.
pub fn dense(m: &SparseMatrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|row| row.iter().map(Integer::to_string).collect()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixBlock {
    pub degree: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Eigenvalue {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LodayReport {
    pub schema: String,
    pub algebra: String,
    pub ring: String,
    pub space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    pub max_degree: usize,
    pub max_weight: u32,
    /// Rank over the ring per degree, summed over weights.
    pub betti: Vec<usize>,
    pub records: Vec<Record>,
}

impl Report for LodayReport {
    fn csv(&self) -> String {
        record_table(self.records.iter().map(|r| ("homology".to_string(), r)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationLevel {
    pub level: u32,
    pub sub: Vec<Record>,
    pub layer: Vec<Record>,
    pub quotient: Vec<Record>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Convergence {
    pub degree: usize,
    pub level: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenRecord {
    pub degree: usize,
    pub weight: u32,
    pub r: u64,
    pub eigenvalues: Vec<Eigenvalue>,
    pub diagonalizable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub schema: String,
    pub algebra: String,
    pub ring: String,
    pub space: String,
    pub max_degree: usize,
    pub max_weight: u32,
    pub total: Vec<Record>,
    pub levels: Vec<FiltrationLevel>,
    pub convergence: Vec<Convergence>,
    pub eigenvalues: Vec<EigenRecord>,
}

impl Report for FiltrationReport {
    fn csv(&self) -> String {
        let mut rows: Vec<(String, &Record)> = self.total.iter().map(|r| ("total".to_string(), r)).collect();
        for l in &self.levels {
            rows.extend(l.sub.iter().map(|r| (format!("F{}", l.level), r)));
            rows.extend(l.layer.iter().map(|r| (format!("gr{}", l.level), r)));
            rows.extend(l.quotient.iter().map(|r| (format!("L/F{}", l.level), r)));
        }
        record_table(rows)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PermutationAction {
    pub permutation: Vec<usize>,
    pub blocks: Vec<MatrixBlock>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignCheck {
    /// The sign character is only predicted when arity equals level.
    pub applicable: bool,
    pub passed: bool,
    /// The recorded transpositions satisfy the Coxeter relations of `Σ_m`.
    pub representation: bool,
    pub transpositions: Vec<PermutationAction>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdamsOnLayer {
    pub r: i64,
    pub matrix: Vec<MatrixBlock>,
    /// `r^level`, when arity equals level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_scalar: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerReport {
    pub schema: String,
    pub space: String,
    pub arity: usize,
    pub level: usize,
    pub homology: Vec<Record>,
    pub sign_check: SignCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adams: Option<AdamsOnLayer>,
}

impl Report for LayerReport {
    fn passed(&self) -> bool {
        self.sign_check.passed && self.sign_check.representation && self.adams.as_ref().is_none_or(|a| a.passed)
    }

    fn csv(&self) -> String {
        record_table(self.homology.iter().map(|r| ("layer".to_string(), r)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Component {
    pub i: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdamsEigenvalues {
    pub r: u64,
    pub eigenvalues: Vec<Eigenvalue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeEntry {
    pub degree: usize,
    pub weight: u32,
    pub components: Vec<Component>,
    pub adams: AdamsEigenvalues,
    /// Eigenvalue multiplicities equal the component dimensions.
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeReport {
    pub schema: String,
    pub algebra: String,
    pub max_degree: usize,
    pub max_weight: u32,
    pub entries: Vec<HodgeEntry>,
}

impl Report for HodgeReport {
    fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.consistent)
    }

    fn csv(&self) -> String {
        let mut out = String::from("degree,weight,component,dim\n");
        for e in &self.entries {
            for c in &e.components {
                out.push_str(&format!("{},{},{},{}\n", e.degree, e.weight, c.i, c.dim));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdamsEntry {
    pub degree: usize,
    pub weight: u32,
    pub matrix: Vec<Vec<String>>,
    pub eigenvalues: Vec<Eigenvalue>,
    pub diagonalizable: bool,
    /// `ψ^r ψ^s = ψ^{rs}` on this block, when a second operation was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composes: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdamsReport {
    pub schema: String,
    pub algebra: String,
    pub max_degree: usize,
    pub max_weight: u32,
    pub r: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    pub blocks: Vec<AdamsEntry>,
}

impl Report for AdamsReport {
    fn passed(&self) -> bool {
        self.blocks.iter().all(|b| b.diagonalizable && b.composes != Some(false))
    }

    fn csv(&self) -> String {
        let mut out = String::from("degree,weight,eigenvalue,multiplicity\n");
        for b in &self.blocks {
            for e in &b.eigenvalues {
                out.push_str(&format!("{},{},{},{}\n", b.degree, b.weight, e.value, e.multiplicity));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwReport {
    pub schema: String,
    pub source: String,
    pub top: usize,
    /// Nondegenerate simplices per dimension, for a single space.
    pub generators: Vec<usize>,
    /// All simplices per dimension, for a single space.
    pub simplices: Vec<usize>,
    pub identity_violations: usize,
    /// Categories whose twisted nerve failed to match the nerve of the twisted arrow category.
    pub nerve_mismatches: usize,
    pub categories: usize,
}

impl Report for TwReport {
    fn passed(&self) -> bool {
        self.identity_violations == 0 && self.nerve_mismatches == 0
    }

    fn csv(&self) -> String {
        let mut out = String::from("dimension,generators,simplices\n");
        for (n, (g, s)) in self.generators.iter().zip(&self.simplices).enumerate() {
            out.push_str(&format!("{n},{g},{s}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TallyJson {
    pub checked: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySuiteReport {
    pub schema: String,
    pub corpus: String,
    pub categories: usize,
    pub end_nat: TallyJson,
    pub kan: TallyJson,
    pub unit_coend: TallyJson,
}

impl Report for IdentitySuiteReport {
    fn passed(&self) -> bool {
        [self.end_nat, self.kan, self.unit_coend].iter().all(|t| t.mismatches == 0)
    }

    fn csv(&self) -> String {
        let mut out = String::from("identity,checked,mismatches\n");
        for (name, t) in [("end_nat", self.end_nat), ("kan", self.kan), ("unit_coend", self.unit_coend)] {
            out.push_str(&format!("{name},{},{}\n", t.checked, t.mismatches));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelInstance {
    pub arity: usize,
    pub bound: usize,
    pub holim: Vec<Record>,
    pub bounded: Vec<Record>,
    pub comparison_is_iso: bool,
    pub split_injection: bool,
    /// Nonzero homology of the fiber of `C_*(X^m) → C^{≤n}` through degree `bound`.
    pub fiber: Vec<Record>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelCheckReport {
    pub schema: String,
    pub space: String,
    pub max_arity: usize,
    pub instances: Vec<ModelInstance>,
}

impl Report for ModelCheckReport {
    fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    fn csv(&self) -> String {
        let mut out = String::from("arity,bound,records_agree,comparison_is_iso,split_injection,fiber_vanishes\n");
        for i in &self.instances {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                i.arity,
                i.bound,
                i.holim == i.bounded,
                i.comparison_is_iso,
                i.split_injection,
                i.fiber.is_empty()
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderJson {
    pub degree: i64,
    pub binomial: usize,
    pub upper_rank: usize,
    pub lower_rank: usize,
    pub unimodular: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdamsScalar {
    pub r: i64,
    pub expected: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelCheck {
    pub level: usize,
    pub homology: Vec<Record>,
    /// Rank one in degree `level` and nothing below.
    pub concentrated: bool,
    pub transpositions_negate: bool,
    pub three_cycles_fix: bool,
    pub ladder: Vec<LadderJson>,
    pub adams: Vec<AdamsScalar>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerCheckReport {
    pub schema: String,
    pub max_level: usize,
    pub levels: Vec<LevelCheck>,
}

impl Report for LayerCheckReport {
    fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.passed)
    }

    fn csv(&self) -> String {
        let mut out = String::from("level,concentrated,transpositions_negate,three_cycles_fix,ladder,adams\n");
        for l in &self.levels {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                l.level,
                l.concentrated,
                l.transpositions_negate,
                l.three_cycles_fix,
                l.ladder.iter().all(|s| s.upper_rank == s.binomial && s.lower_rank == s.binomial && s.unimodular),
                l.adams.iter().all(|a| a.passed)
            ));
        }
        out
    }
}
