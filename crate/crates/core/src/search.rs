//! Exhaustive enumeration of connection sets, the survey cross-check, and
//! backtracking search for difference sets.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{build_graph, canonicalize, ConnectionSpec};
use crate::classifier::{classify, condition_iii, ClassTag, Classification, ClassifierError, DifferenceSetCriterion};
use crate::fourier::{fourier_lemma_counting_form, fourier_lemma_residuals, DEFAULT_TOLERANCE};
use crate::group::{AutomorphismParams, Dicyclic, Element, GroupTable};
use crate::metrics::{is_distance_regular, DistancePartition, DrgOutcome, IntersectionArray};
use crate::residue::ResidueSet;
use crate::structure::{
    antipodal_bipartite_d4_shape_holds, antipodal_classes, antipodal_d3_shape_holds, bipartition,
    halved_graphs, is_equitable, is_primitive, recognize_family, FamilyRecognition, FamilyTag,
};

/// Largest `n` accepted by [`enumerate_specs`] (`4^n` candidates).
pub const MAX_SURVEY_N: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("n = {0} is outside the supported survey range 1..={MAX_SURVEY_N}")]
    UnsupportedN(u32),
    #[error("k(k-1) = {lhs} but λ(v-1) = {rhs}")]
    ParameterContradiction { lhs: usize, rhs: usize },
    #[error("group has order {order}, parameters ask for v = {v}")]
    OrderMismatch { order: usize, v: usize },
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

/// `R`-generators `{i, 2n-i}` for `1 <= i <= n` (`{n}` is a singleton).
fn r_generators(n: u32) -> Vec<Vec<i64>> {
    (1..=n as i64)
        .map(|i| {
            if i == n as i64 {
                vec![i]
            } else {
                vec![i, 2 * n as i64 - i]
            }
        })
        .collect()
}

/// `T`-generators `{i, n+i}` for `0 <= i < n`.
fn t_generators(n: u32) -> Vec<Vec<i64>> {
    (0..n as i64).map(|i| vec![i, i + n as i64]).collect()
}

fn union_of(modulus: u32, gens: &[Vec<i64>], mask: u64) -> ResidueSet {
    ResidueSet::from_residues(
        modulus,
        gens.iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .flat_map(|(_, g)| g.iter().copied()),
    )
}

/// Every valid `(R, T)` for `Dic_n`, built from symmetric generator pairs so
/// `R = -R` and `T = n + T` hold by construction. Disconnected specs are
/// included and flagged by [`ConnectionSpec::is_connected`]. With `dedup`,
/// only specs equal to their own canonical form are produced.
pub fn enumerate_specs(n: u32, dedup: bool) -> Result<impl Iterator<Item = ConnectionSpec>, SearchError> {
    if n == 0 || n > MAX_SURVEY_N {
        return Err(SearchError::UnsupportedN(n));
    }
    let (rg, tg) = (r_generators(n), t_generators(n));
    let m = 2 * n;
    let count = 1u64 << n;
    Ok((0..count)
        .flat_map(move |rm| (0..count).map(move |tm| (rm, tm)))
        .map(move |(rm, tm)| {
            ConnectionSpec::from_sets(n, union_of(m, &rg, rm), union_of(m, &tg, tm))
                .expect("generator unions satisfy the constraints")
        })
        .filter(move |s| !dedup || canonicalize(s) == *s))
}

/// `n`, `R`, `T` as plain sorted arrays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpecRecordKey {
    pub n: u32,
    #[serde(rename = "R")]
    pub r: Vec<u32>,
    #[serde(rename = "T")]
    pub t: Vec<u32>,
}

impl From<&ConnectionSpec> for SpecRecordKey {
    fn from(s: &ConnectionSpec) -> Self {
        Self {
            n: s.n(),
            r: s.r().to_vec(),
            t: s.t().to_vec(),
        }
    }
}

impl SpecRecordKey {
    pub fn to_spec(&self) -> Result<ConnectionSpec, crate::cayley::SpecError> {
        ConnectionSpec::new(
            self.n,
            self.r.iter().map(|&x| x as i64),
            self.t.iter().map(|&x| x as i64),
        )
    }
}

/// One row of the survey: every evaluated spec, DRG or not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub spec: SpecRecordKey,
    pub connected: bool,
    pub drg: bool,
    pub array: Option<IntersectionArray>,
    pub class: Option<ClassTag>,
    pub bipartite: Option<bool>,
    pub antipodal: Option<bool>,
    pub primitive: Option<bool>,
    pub fourier_ok: Option<bool>,
}

/// Everything measured on a distance-regular instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrgInstance {
    pub spec: SpecRecordKey,
    pub array: IntersectionArray,
    pub class: ClassTag,
    pub family: FamilyRecognition,
    pub bipartite: bool,
    pub antipodal: bool,
    /// Common fibre size when antipodal (the whole vertex set for `K_{4n}`).
    pub antipodal_fibre_size: Option<usize>,
    /// Antipodal only by the diameter-1 single-fibre convention.
    pub antipodal_single_fibre: bool,
    pub primitive: bool,
    pub crown: bool,
    /// Transform identities within the survey tolerance.
    pub fourier_ok: bool,
    /// Largest residual of the two transform identities, rounded to 12 digits.
    pub fourier_residual: f64,
    /// Exact convolution form of the same identities.
    pub fourier_counting_ok: bool,
    pub lambda_even: bool,
    pub t2_nonempty: bool,
    pub mu_even_when_t2: bool,
    /// `|N(1) ∩ N(αⁿ)| >= |T|`.
    pub antipode_inequality: bool,
    /// Both halved graphs complete (bipartite instances only).
    pub halved_complete: Option<bool>,
    /// Antipodal fibres form an equitable partition.
    pub fibres_equitable: Option<bool>,
    /// Array shape for antipodal non-bipartite `d = 3` or antipodal bipartite `d = 4`.
    pub antipodal_shape_ok: Option<bool>,
    /// Quotient is bipartite (bipartite antipodal instances of even diameter).
    pub quotient_bipartite: Option<bool>,
}

/// A disagreement between BFS and the counting classifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckFailure {
    pub spec: SpecRecordKey,
    pub bfs: String,
    pub classified: ClassTag,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub complete: usize,
    pub complete_multipartite: usize,
    pub bipartite_d3: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub n: u32,
    pub dedup: bool,
    /// `4^n` candidates before any filtering.
    pub total_specs: usize,
    /// Candidates whose connection set generates `Dic_n`.
    pub connected_specs: usize,
    /// Canonical representatives among the connected candidates.
    pub canonical_classes: usize,
    /// Specs actually evaluated (canonical or all, by `dedup`).
    pub evaluated_specs: usize,
    pub class_counts: ClassCounts,
    pub drgs: Vec<DrgInstance>,
    pub cross_check_failures: Vec<CrossCheckFailure>,
    pub records: Vec<SpecRecord>,
}

impl SurveyReport {
    /// True when BFS and the classifier agreed everywhere.
    pub fn reproduces_classification(&self) -> bool {
        self.cross_check_failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurveyOptions {
    pub dedup: bool,
    /// `None` uses rayon's default pool.
    pub workers: Option<usize>,
    pub tolerance: f64,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        Self {
            dedup: true,
            workers: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// Runs the full pipeline for `Dic_n` with the standard classifier.
pub fn survey(n: u32, options: &SurveyOptions) -> Result<SurveyReport, SearchError> {
    survey_with_classifier(n, options, classify)
}

/// [`survey`] with a replaceable classifier, so the cross-check alarm can be exercised.
pub fn survey_with_classifier<F>(n: u32, options: &SurveyOptions, classifier: F) -> Result<SurveyReport, SearchError>
where
    F: Fn(&ConnectionSpec) -> Result<Classification, ClassifierError> + Sync,
{
    let all: Vec<ConnectionSpec> = enumerate_specs(n, false)?.collect();
    let total_specs = all.len();
    let connected_specs = all.iter().filter(|s| s.is_connected()).count();
    let canonical: Vec<ConnectionSpec> = all
        .iter()
        .filter(|s| canonicalize(s) == **s)
        .cloned()
        .collect();
    let canonical_classes = canonical.iter().filter(|s| s.is_connected()).count();
    let mut specs = if options.dedup { canonical } else { all };
    specs.sort();

    let run = || -> Vec<(SpecRecord, Option<DrgInstance>, Option<CrossCheckFailure>)> {
        specs
            .par_iter()
            .map(|s| evaluate(s, options.tolerance, &classifier))
            .collect()
    };
    let rows = match options.workers {
        None => run(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?
            .install(run),
    };

    let mut report = SurveyReport {
        n,
        dedup: options.dedup,
        total_specs,
        connected_specs,
        canonical_classes,
        evaluated_specs: rows.len(),
        class_counts: ClassCounts::default(),
        drgs: Vec::new(),
        cross_check_failures: Vec::new(),
        records: Vec::with_capacity(rows.len()),
    };
    for (record, drg, failure) in rows {
        report.records.push(record);
        if let Some(d) = drg {
            match d.class {
                ClassTag::CompleteGraph => report.class_counts.complete += 1,
                ClassTag::CompleteMultipartite { .. } => report.class_counts.complete_multipartite += 1,
                ClassTag::BipartiteD3Family { .. } => report.class_counts.bipartite_d3 += 1,
                ClassTag::NotDistanceRegular { .. } => {}
            }
            report.drgs.push(d);
        }
        report.cross_check_failures.extend(failure);
    }
    Ok(report)
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn evaluate<F>(
    spec: &ConnectionSpec,
    tolerance: f64,
    classifier: &F,
) -> (SpecRecord, Option<DrgInstance>, Option<CrossCheckFailure>)
where
    F: Fn(&ConnectionSpec) -> Result<Classification, ClassifierError>,
{
    let key = SpecRecordKey::from(spec);
    let mut record = SpecRecord {
        spec: key.clone(),
        connected: spec.is_connected(),
        drg: false,
        array: None,
        class: None,
        bipartite: None,
        antipodal: None,
        primitive: None,
        fourier_ok: None,
    };
    if !spec.is_connected() {
        return (record, None, None);
    }
    let graph = build_graph(spec);
    let outcome = is_distance_regular(&graph, true).expect("connected spec builds a connected graph");
    let class = match classifier(spec) {
        Ok(c) => c.tag,
        Err(e) => ClassTag::NotDistanceRegular { reason: e.to_string() },
    };
    let parts = bipartition(&graph);
    record.bipartite = Some(parts.is_some());
    record.class = Some(class.clone());

    let failure = match (&outcome, class.is_distance_regular()) {
        (DrgOutcome::Regular(a), true) => {
            let predicted = class.predicted_array(graph.vertex_count());
            (predicted.as_ref() != Some(a)).then(|| CrossCheckFailure {
                spec: key.clone(),
                bfs: format!("DRG {a}"),
                classified: class.clone(),
            })
        }
        (DrgOutcome::NotRegular(_), false) => None,
        (DrgOutcome::Regular(a), false) => Some(CrossCheckFailure {
            spec: key.clone(),
            bfs: format!("DRG {a}"),
            classified: class.clone(),
        }),
        (DrgOutcome::NotRegular(w), true) => Some(CrossCheckFailure {
            spec: key.clone(),
            bfs: format!("not DRG: {w}"),
            classified: class.clone(),
        }),
    };

    let DrgOutcome::Regular(array) = &outcome else {
        return (record, None, failure);
    };
    let d = array.diameter();
    let dp = DistancePartition::new(&graph, 0).expect("connected");
    let antipodal = antipodal_classes(&graph, d);
    let bipartite = parts.is_some();
    let primitive = is_primitive(&graph, d);
    let residuals = fourier_lemma_residuals(spec, &dp, &outcome).expect("DRG based at identity");
    let residual = residuals.first.max(residuals.second);
    let fourier_ok = residuals.within(tolerance);
    let counting_ok = fourier_lemma_counting_form(spec, &dp, &outcome).expect("DRG based at identity");
    let shells = dp.exponent_shells(spec.n());
    let t2_nonempty = shells.get(2).is_some_and(|(_, t2)| !t2.is_empty());
    let lambda = array.lambda().unwrap_or(0);
    let mu = array.mu();
    let family = recognize_family(&graph);
    let n = spec.n();
    let antipode = graph.neighbors(0).intersection_count(graph.neighbors(n as usize));

    let antipodal_shape_ok = antipodal.as_ref().and_then(|a| {
        if !bipartite && d == 3 {
            Some(antipodal_d3_shape_holds(array, a.fibre_size))
        } else if bipartite && d == 4 {
            Some(antipodal_bipartite_d4_shape_holds(array, a.fibre_size))
        } else {
            None
        }
    });
    let quotient_bipartite = match (&antipodal, bipartite) {
        (Some(a), true) if d >= 2 && d % 2 == 0 => Some(bipartition(&a.quotient).is_some()),
        _ => None,
    };

    record.drg = true;
    record.array = Some(array.clone());
    record.antipodal = Some(antipodal.is_some());
    record.primitive = Some(primitive);
    record.fourier_ok = Some(fourier_ok && counting_ok);

    let instance = DrgInstance {
        spec: key,
        array: array.clone(),
        class,
        crown: family.matches(|t| matches!(t, FamilyTag::CrownGraph(_))),
        family,
        bipartite,
        antipodal: antipodal.is_some(),
        antipodal_fibre_size: antipodal.as_ref().map(|a| a.fibre_size),
        antipodal_single_fibre: d == 1,
        primitive,
        fourier_ok,
        fourier_residual: round12(residual),
        fourier_counting_ok: counting_ok,
        lambda_even: lambda % 2 == 0,
        t2_nonempty,
        mu_even_when_t2: !t2_nonempty || mu.is_some_and(|m| m % 2 == 0),
        antipode_inequality: antipode >= spec.t().len(),
        halved_complete: bipartite.then(|| {
            halved_graphs(&graph).is_ok_and(|(a, b)| a.is_complete() && b.is_complete())
        }),
        fibres_equitable: antipodal.as_ref().map(|a| is_equitable(&graph, &a.fibres).is_some()),
        antipodal_shape_ok,
        quotient_bipartite,
    };
    (record, Some(instance), failure)
}

/// Backtracking search for `(v, k, λ)` difference sets in the group of `table`.
///
/// Returns one representative per right-translate class: the set whose
/// sorted index sequence is least among all `Dg`. Stops after `limit`
/// solutions when given.
pub fn search_difference_sets(
    table: &GroupTable,
    v: usize,
    k: usize,
    lambda: usize,
    limit: Option<usize>,
) -> Result<Vec<Vec<usize>>, SearchError> {
    let lhs = k * k.saturating_sub(1);
    let rhs = lambda * v.saturating_sub(1);
    if lhs != rhs {
        return Err(SearchError::ParameterContradiction { lhs, rhs });
    }
    if table.order() != v {
        return Err(SearchError::OrderMismatch { order: table.order(), v });
    }
    if k > v {
        return Ok(Vec::new());
    }
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut state = DsSearch {
        table,
        k,
        lambda,
        limit: limit.unwrap_or(usize::MAX),
        counts: vec![0; v],
        chosen: vec![0],
        solutions: Vec::new(),
    };
    // Some right translate of every solution contains index 0, and the least
    // translate must start with it.
    state.extend(1);
    Ok(state.solutions)
}

struct DsSearch<'a> {
    table: &'a GroupTable,
    k: usize,
    lambda: usize,
    limit: usize,
    counts: Vec<usize>,
    chosen: Vec<usize>,
    solutions: Vec<Vec<usize>>,
}

impl DsSearch<'_> {
    fn extend(&mut self, next: usize) {
        if self.solutions.len() >= self.limit {
            return;
        }
        if self.chosen.len() == self.k {
            if self.is_least_translate() {
                self.solutions.push(self.chosen.clone());
            }
            return;
        }
        let v = self.table.order();
        let remaining = self.k - self.chosen.len();
        for x in next..=v - remaining {
            if self.try_add(x) {
                self.chosen.push(x);
                self.extend(x + 1);
                self.chosen.pop();
                self.remove(x);
            }
            if self.solutions.len() >= self.limit {
                return;
            }
        }
    }

    /// Adds the differences `x y⁻¹` and `y x⁻¹`; rolls back and returns false
    /// when any count would exceed `λ`.
    fn try_add(&mut self, x: usize) -> bool {
        let t = self.table;
        let mut ok = true;
        for &y in &self.chosen {
            for g in [t.mul(x, t.inv(y)), t.mul(y, t.inv(x))] {
                self.counts[g] += 1;
                if self.counts[g] > self.lambda {
                    ok = false;
                }
            }
        }
        if !ok {
            self.remove(x);
        }
        ok
    }

    fn remove(&mut self, x: usize) {
        let t = self.table;
        for &y in &self.chosen {
            for g in [t.mul(x, t.inv(y)), t.mul(y, t.inv(x))] {
                self.counts[g] -= 1;
            }
        }
    }

    fn is_least_translate(&self) -> bool {
        let t = self.table;
        (0..t.order()).all(|g| {
            let mut translate: Vec<usize> = self.chosen.iter().map(|&d| t.mul(d, g)).collect();
            translate.sort_unstable();
            translate >= self.chosen
        })
    }
}

/// Sorted right translates `Dg` of a set, deduplicated.
pub fn right_translates(table: &GroupTable, set: &[usize]) -> BTreeSet<Vec<usize>> {
    (0..table.order())
        .map(|g| {
            let mut t: Vec<usize> = set.iter().map(|&d| table.mul(d, g)).collect();
            t.sort_unstable();
            t
        })
        .collect()
}

/// Connection sets of `Dic(2h, R, T)` obtained from a difference set of `Dic_h`.
///
/// `Dic_h` embeds as `<α², β>` in `Dic_{2h}` via `α ↦ α²`, `β ↦ β`. Every
/// two-sided translate `aDb` and every automorphism image of `D` is again a
/// difference set; each is tried as `α^{-1+R} ∪ α^{-1+T}β`, keeping the
/// images that give `R = -R`, `T = n + T`. Results are canonical and sorted.
pub fn specs_from_difference_set(h: u32, set: &[usize]) -> Vec<ConnectionSpec> {
    let small = Dicyclic::new(h).expect("h >= 1");
    let n = 2 * h;
    let members: Vec<Element> = set.iter().map(|&i| small.element_at(i)).collect();
    let mut found: BTreeSet<ConnectionSpec> = BTreeSet::new();
    let mut images: BTreeSet<Vec<Element>> = BTreeSet::new();
    for p in AutomorphismParams::all(h) {
        let img: Vec<Element> = members.iter().map(|&x| p.apply(x)).collect();
        for a in small.elements() {
            for b in small.elements() {
                let mut t: Vec<Element> = img
                    .iter()
                    .map(|&x| small.multiply(small.multiply(a, x), b))
                    .collect();
                t.sort();
                images.insert(t);
            }
        }
    }
    for img in images {
        let r: Vec<i64> = img.iter().filter(|x| !x.flip).map(|x| 2 * x.exp as i64 + 1).collect();
        let t: Vec<i64> = img.iter().filter(|x| x.flip).map(|x| 2 * x.exp as i64 + 1).collect();
        if let Ok(spec) = ConnectionSpec::new(n, r, t) {
            found.insert(canonicalize(&spec));
        }
    }
    found.into_iter().collect()
}

/// Checks on a candidate bipartite diameter-3 dicirculant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyIiiVerification {
    pub spec: SpecRecordKey,
    pub array: Option<IntersectionArray>,
    pub bipartite: bool,
    pub antipodal: bool,
    pub halved_complete: bool,
    pub condition_iii: bool,
    pub condition_iii_prime: bool,
}

impl FamilyIiiVerification {
    /// Everything expected of a family member with valency `k` and `μ = mu`.
    pub fn consistent_with(&self, k: usize, mu: usize) -> bool {
        self.array == Some(IntersectionArray::new(vec![k, k - 1, k - mu], vec![1, mu, k]))
            && self.bipartite
            && !self.antipodal
            && self.halved_complete
            && self.condition_iii
            && self.condition_iii_prime
    }
}

pub fn verify_family_iii(spec: &ConnectionSpec) -> FamilyIiiVerification {
    let graph = build_graph(spec);
    let outcome = is_distance_regular(&graph, true).ok();
    let array = outcome.as_ref().and_then(|o| o.array().cloned());
    let antipodal = array
        .as_ref()
        .is_some_and(|a| antipodal_classes(&graph, a.diameter()).is_some());
    let bipartite = bipartition(&graph).is_some();
    let halved_complete = bipartite
        && halved_graphs(&graph).is_ok_and(|(a, b)| a.is_complete() && b.is_complete());
    let iii_prime = if spec.n().is_multiple_of(2) {
        DifferenceSetCriterion::new(spec.n()).check(spec).unwrap_or(false)
    } else {
        false
    };
    FamilyIiiVerification {
        spec: spec.into(),
        array,
        bipartite,
        antipodal,
        halved_complete,
        condition_iii: condition_iii(spec).holds,
        condition_iii_prime: iii_prime,
    }
}
