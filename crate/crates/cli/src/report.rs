//! Versioned JSON documents and the CSV survey summary.

use std::io::Write;

use dicirc_core::classifier::Classification;
use dicirc_core::fourier::{FourierLemmaResiduals, OrbitPartition};
use dicirc_core::metrics::IntersectionArray;
use dicirc_core::search::{FamilyIiiVerification, SpecRecordKey, SurveyReport};
use dicirc_core::structure::FamilyRecognition;
use dicirc_core::ClassTag;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: ReportBody,
}

impl ReportDocument {
    pub fn new(body: ReportBody) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum ReportBody {
    Check(CheckReport),
    Classify(ClassifyReport),
    Survey(SurveyDocument),
    SearchDs(SearchReport),
    Fourier(FourierReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub spec: SpecRecordKey,
    pub vertex_count: usize,
    pub valency: usize,
    pub drg: bool,
    pub array: Option<IntersectionArray>,
    /// First pair violating distance-regularity, when not a DRG.
    pub witness: Option<String>,
    pub class: ClassTag,
    /// BFS and the classifier agree.
    pub agrees: bool,
    pub bipartite: bool,
    pub antipodal: Option<bool>,
    /// Antipodal only by the diameter-1 single-fibre convention.
    pub antipodal_single_fibre: bool,
    pub primitive: Option<bool>,
    pub family: FamilyRecognition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub spec: SpecRecordKey,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyDocument {
    pub surveys: Vec<SurveyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub group: String,
    pub v: usize,
    pub limit: Option<usize>,
    /// One entry per `(k, λ)` searched.
    pub runs: Vec<SearchRun>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRun {
    pub k: usize,
    pub lambda: usize,
    /// One representative per right-translate class, as element indices.
    pub solutions: Vec<Vec<usize>>,
    /// The same sets written as group elements.
    pub elements: Vec<Vec<String>>,
    /// Every solution has constant difference count `λ`.
    pub verified: bool,
    /// Dicirculants `Dic(2h, R, T)` rebuilt from the solutions (dicyclic groups only).
    pub family_iii: Option<Vec<FamilyIiiVerification>>,
    pub family_iii_outcome: Option<String>,
}

/// A complex value as `[re, im]`, rounded to 12 decimal places.
pub type ComplexPair = [f64; 2];

pub fn complex_pair(z: Complex64) -> ComplexPair {
    [round12(z.re), round12(z.im)]
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellTransform {
    pub distance: usize,
    #[serde(rename = "R")]
    pub r: Vec<u32>,
    #[serde(rename = "T")]
    pub t: Vec<u32>,
    pub r_hat: Vec<ComplexPair>,
    pub t_hat: Vec<ComplexPair>,
    pub r_orbit_union: bool,
    pub t_orbit_union: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalRow {
    pub divisor: usize,
    pub r_transversal: bool,
    pub t_transversal: bool,
    pub r_profile: Vec<usize>,
    pub t_profile: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub array: IntersectionArray,
    pub residuals: FourierLemmaResiduals,
    pub tolerance: f64,
    pub holds: bool,
    pub counting_form_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierReport {
    pub spec: SpecRecordKey,
    pub modulus: usize,
    pub orbits: OrbitPartition,
    pub shells: Vec<ShellTransform>,
    pub transversals: Vec<TransversalRow>,
    /// Present when the dicirculant is distance-regular.
    pub lemma: Option<LemmaRow>,
}

pub const CSV_HEADER: [&str; 11] = [
    "n", "R", "T", "connected", "drg", "array", "class", "bipartite", "antipodal", "primitive", "fourier_ok",
];

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn opt_bool(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

/// One row per evaluated spec, sets space-separated, unknown fields empty.
pub fn write_summary_csv<W: Write>(out: W, surveys: &[SurveyReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for report in surveys {
        for rec in &report.records {
            let class = rec.class.as_ref().map(|c| match c {
                ClassTag::NotDistanceRegular { .. } => c.label().to_string(),
                _ => c.to_string(),
            });
            w.write_record([
                rec.spec.n.to_string(),
                join(&rec.spec.r),
                join(&rec.spec.t),
                rec.connected.to_string(),
                rec.drg.to_string(),
                rec.array.as_ref().map(|a| a.to_string()).unwrap_or_default(),
                class.unwrap_or_default(),
                opt_bool(rec.bipartite),
                opt_bool(rec.antipodal),
                opt_bool(rec.primitive),
                opt_bool(rec.fourier_ok),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
