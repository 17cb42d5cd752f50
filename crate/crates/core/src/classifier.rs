//! Counting criteria that decide distance-regularity of `Dic(n, R, T)` without BFS.
//!
//! A connected dicirculant is distance-regular exactly when it is
//! - the complete graph `K_{4n}`,
//! - a complete multipartite graph `K_{t×m}` with `tm = 4n`, or
//! - a bipartite diameter-3 graph whose connection set satisfies the
//!   translate-count condition checked by [`condition_iii`] (equivalently,
//!   [`condition_iii_prime`]: `α^{-1+R} ∪ α^{-1+T}β` is a non-trivial
//!   difference set in `<α², β>`).
//!
//! [`classify`] implements this with set counting and the complement's
//! clique structure only, so comparing it against
//! [`crate::metrics::is_distance_regular`] is a genuine two-route check.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{build_graph, ConnectionSpec};
use crate::group::{Dicyclic, Element, GroupTable};
use crate::metrics::IntersectionArray;
use crate::residue::ResidueSet;
use crate::structure::complete_multipartite_shape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("connection set does not generate Dic_n; the graph is disconnected")]
    DisconnectedSpec,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("element index {0} is outside the group")]
    ElementOutOfRange(usize),
}

/// One checked sub-condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub check: String,
    pub holds: bool,
    pub detail: String,
}

impl Evidence {
    fn new(check: &str, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            check: check.to_string(),
            holds,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "ok" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "[{mark}] {}", self.check)
        } else {
            write!(f, "[{mark}] {}: {}", self.check, self.detail)
        }
    }
}

/// Outcome of [`condition_iii`]. `evidence` stops at the first failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub evidence: Vec<Evidence>,
}

/// Tests the bipartite diameter-3 criterion on `(n, R, T)`:
/// `n` even, `R, T` non-empty subsets of `1 + 2Z_2n`, `|R ∩ T| < n`, and
/// `|R ∩ (i+R)| + |T ∩ (i+T)| = 2|(j+R) ∩ T| = 2|R ∩ T|` for all non-zero even `i, j`.
pub fn condition_iii(spec: &ConnectionSpec) -> ConditionReport {
    condition_iii_sets(spec.n(), spec.r(), spec.t())
}

/// [`condition_iii`] on raw residue sets mod `2n`, without the symmetry
/// constraints of a connection spec.
pub fn condition_iii_sets(n: u32, r: &ResidueSet, t: &ResidueSet) -> ConditionReport {
    let mut evidence = Vec::new();
    let mut push = |check: &str, holds: bool, detail: String| {
        evidence.push(Evidence::new(check, holds, detail));
        holds
    };
    let ok = push("n even", n.is_multiple_of(2), format!("n = {n}"))
        && push("R non-empty", !r.is_empty(), String::new())
        && push("T non-empty", !t.is_empty(), String::new())
        && push("R odd residues", r.all_congruent(1, 2), format!("R = {{{r}}}"))
        && push("T odd residues", t.all_congruent(1, 2), format!("T = {{{t}}}"));
    if !ok {
        return ConditionReport { holds: false, evidence };
    }
    let rt = r.intersection_count(t);
    if !push("|R∩T| < n", rt < n as usize, format!("|R∩T| = {rt}, n = {n}")) {
        return ConditionReport { holds: false, evidence };
    }
    let target = 2 * rt;
    for i in (2..2 * n as i64).step_by(2) {
        let count = r.shifted_intersection_count(i, r) + t.shifted_intersection_count(i, t);
        if count != target {
            push(
                "translate counts",
                false,
                format!("i = {i}: |R∩(i+R)| + |T∩(i+T)| = {count} ≠ 2|R∩T| = {target}"),
            );
            return ConditionReport { holds: false, evidence };
        }
    }
    push("translate counts", true, format!("all equal {target}"));
    for j in (2..2 * n as i64).step_by(2) {
        let count = 2 * t.shifted_intersection_count(j, r);
        if count != target {
            push(
                "cross counts",
                false,
                format!("j = {j}: 2|(j+R)∩T| = {count} ≠ 2|R∩T| = {target}"),
            );
            return ConditionReport { holds: false, evidence };
        }
    }
    push("cross counts", true, format!("all equal {target}"));
    ConditionReport { holds: true, evidence }
}

/// Result of [`difference_set_lambda`] when the difference counts are constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSetInfo {
    pub lambda: usize,
    /// `|D| ∉ {|G|, |G| - 1, 1, 0}`.
    pub nontrivial: bool,
}

/// Counts, for each `g ≠ 1`, the pairs `(g1, g2) ∈ D × D` with `g2 g1⁻¹ = g`.
/// Returns the common count when it is constant.
pub fn difference_set_lambda(table: &GroupTable, set: &[usize]) -> Result<Option<DifferenceSetInfo>, ClassifierError> {
    let order = table.order();
    let mut members = set.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&x| x >= order) {
        return Err(ClassifierError::ElementOutOfRange(bad));
    }
    let mut counts = vec![0usize; order];
    for &g1 in &members {
        let g1_inv = table.inv(g1);
        for &g2 in &members {
            counts[table.mul(g2, g1_inv)] += 1;
        }
    }
    let id = table.identity();
    let mut others = (0..order).filter(|&g| g != id).map(|g| counts[g]);
    let lambda = match others.next() {
        None => 0,
        Some(first) => {
            if others.any(|c| c != first) {
                return Ok(None);
            }
            first
        }
    };
    let size = members.len();
    let nontrivial = !(size == order || size + 1 == order || size <= 1);
    Ok(Some(DifferenceSetInfo { lambda, nontrivial }))
}

/// `<α², β>` as a subgroup of `Dic_n`, with its table and member list.
pub fn even_dicyclic_subgroup(n: u32) -> (Vec<Element>, GroupTable) {
    let g = Dicyclic::new(n).expect("n >= 1");
    let h = g.generate(&[g.alpha_pow(2), g.alpha_pow_beta(0)]);
    let table = g.subgroup_table(&h);
    (h.members, table)
}

/// Tests whether `α^{-1+R} ∪ α^{-1+T}β` is a non-trivial difference set in
/// the order-`2n` subgroup `<α², β>`.
pub fn condition_iii_prime(spec: &ConnectionSpec) -> Result<bool, ClassifierError> {
    DifferenceSetCriterion::new(spec.n()).check(spec)
}

/// [`condition_iii_prime`] with the subgroup table built once per `n`.
#[derive(Debug, Clone)]
pub struct DifferenceSetCriterion {
    group: Dicyclic,
    /// Position in the subgroup member list, indexed by `Dic_n` vertex index.
    position: Vec<Option<usize>>,
    table: GroupTable,
}

impl DifferenceSetCriterion {
    pub fn new(n: u32) -> Self {
        let group = Dicyclic::new(n).expect("n >= 1");
        let (members, table) = even_dicyclic_subgroup(n);
        let mut position = vec![None; group.order()];
        for (i, &e) in members.iter().enumerate() {
            position[group.index_of(e)] = Some(i);
        }
        Self { group, position, table }
    }

    pub fn check(&self, spec: &ConnectionSpec) -> Result<bool, ClassifierError> {
        self.check_sets(spec.n(), spec.r(), spec.t())
    }

    /// [`Self::check`] on raw residue sets mod `2n`.
    pub fn check_sets(&self, n: u32, r: &ResidueSet, t: &ResidueSet) -> Result<bool, ClassifierError> {
        if n != self.group.n() {
            return Err(ClassifierError::PreconditionViolated(format!(
                "criterion built for n = {}, spec has n = {n}",
                self.group.n()
            )));
        }
        if !n.is_multiple_of(2) {
            return Err(ClassifierError::PreconditionViolated(format!("n = {n} is odd")));
        }
        if r.modulus() != 2 * n || t.modulus() != 2 * n {
            return Err(ClassifierError::PreconditionViolated("sets must be residues mod 2n".into()));
        }
        if r.is_empty() || t.is_empty() || !r.all_congruent(1, 2) || !t.all_congruent(1, 2) {
            return Err(ClassifierError::PreconditionViolated(
                "R and T must be non-empty sets of odd residues".into(),
            ));
        }
        let g = &self.group;
        let position = |e: Element| self.position[g.index_of(e)].expect("shifted odd residues land in <α², β>");
        let set: Vec<usize> = r
            .iter()
            .map(|i| position(g.alpha_pow(i as i64 - 1)))
            .chain(t.iter().map(|i| position(g.alpha_pow_beta(i as i64 - 1))))
            .collect();
        Ok(difference_set_lambda(&self.table, &set)?.is_some_and(|info| info.nontrivial))
    }
}

/// The three distance-regular classes, or a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    CompleteGraph,
    CompleteMultipartite { t: usize, m: usize },
    BipartiteD3Family { k: usize, mu: usize },
    NotDistanceRegular { reason: String },
}

impl ClassTag {
    pub fn is_distance_regular(&self) -> bool {
        !matches!(self, ClassTag::NotDistanceRegular { .. })
    }

    /// The intersection array this class forces on a graph with `4n` vertices.
    pub fn predicted_array(&self, vertex_count: usize) -> Option<IntersectionArray> {
        match *self {
            ClassTag::CompleteGraph => Some(IntersectionArray::new(vec![vertex_count - 1], vec![1])),
            ClassTag::CompleteMultipartite { t, m } => {
                let k = (t - 1) * m;
                Some(IntersectionArray::new(vec![k, m - 1], vec![1, k]))
            }
            ClassTag::BipartiteD3Family { k, mu } => {
                Some(IntersectionArray::new(vec![k, k - 1, k - mu], vec![1, mu, k]))
            }
            ClassTag::NotDistanceRegular { .. } => None,
        }
    }

    /// Short label without parameters, used for CSV and summaries.
    pub fn label(&self) -> &'static str {
        match self {
            ClassTag::CompleteGraph => "CompleteGraph",
            ClassTag::CompleteMultipartite { .. } => "CompleteMultipartite",
            ClassTag::BipartiteD3Family { .. } => "BipartiteD3Family",
            ClassTag::NotDistanceRegular { .. } => "NotDistanceRegular",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::CompleteGraph => write!(f, "CompleteGraph"),
            ClassTag::CompleteMultipartite { t, m } => write!(f, "CompleteMultipartite({t},{m})"),
            ClassTag::BipartiteD3Family { k, mu } => write!(f, "BipartiteD3Family({k},{mu})"),
            ClassTag::NotDistanceRegular { reason } => write!(f, "NotDistanceRegular({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub tag: ClassTag,
    pub evidence: Vec<Evidence>,
}

/// Classifies a connected dicirculant by counting and structure only.
///
/// When `n` is even, `R` consists of odd residues and `T` of even residues,
/// the graph is isomorphic to `Dic(n, R, 1 + T)` via `α^iβ ↦ α^{i+1}β`, and
/// the criterion is applied to that image.
pub fn classify(spec: &ConnectionSpec) -> Result<Classification, ClassifierError> {
    if !spec.is_connected() {
        return Err(ClassifierError::DisconnectedSpec);
    }
    let n = spec.n() as usize;
    let k = spec.valency();
    let mut evidence = Vec::new();

    let complete = k == 4 * n - 1;
    evidence.push(Evidence::new("|R|+|T| = 4n-1", complete, format!("k = {k}")));
    if complete {
        return Ok(Classification {
            tag: ClassTag::CompleteGraph,
            evidence,
        });
    }

    let shape = complete_multipartite_shape(&build_graph(spec));
    evidence.push(Evidence::new(
        "complement is equal disjoint cliques",
        shape.is_some(),
        shape.map_or(String::new(), |(t, m)| format!("{t} cliques of size {m}")),
    ));
    if let Some((t, m)) = shape {
        return Ok(Classification {
            tag: ClassTag::CompleteMultipartite { t, m },
            evidence,
        });
    }

    let direct = condition_iii(spec);
    let direct_holds = direct.holds;
    evidence.extend(direct.evidence);
    if direct_holds {
        let mu = 2 * spec.r().intersection_count(spec.t());
        return Ok(Classification {
            tag: ClassTag::BipartiteD3Family { k, mu },
            evidence,
        });
    }

    let (r, t) = (spec.r(), spec.t());
    if n.is_multiple_of(2) && !r.is_empty() && !t.is_empty() && r.all_congruent(1, 2) && t.all_congruent(0, 2) {
        let shifted = ConnectionSpec::from_sets(spec.n(), r.clone(), t.translate(1))
            .expect("shifting T by one keeps T = n + T");
        let report = condition_iii(&shifted);
        evidence.push(Evidence::new(
            "shifted T -> 1+T",
            report.holds,
            format!("T' = {{{}}}", shifted.t()),
        ));
        evidence.extend(report.evidence);
        if report.holds {
            let mu = 2 * shifted.r().intersection_count(shifted.t());
            return Ok(Classification {
                tag: ClassTag::BipartiteD3Family { k, mu },
                evidence,
            });
        }
    }

    let reason = evidence
        .iter()
        .rev()
        .find(|e| !e.holds)
        .map_or_else(|| "no criterion holds".to_string(), |e| e.to_string());
    Ok(Classification {
        tag: ClassTag::NotDistanceRegular { reason },
        evidence,
    })
}

/// `Cay(Dic_n, Dic_n ∖ H)` for the canonical subgroup `H` of order `m`, i.e. `K_{(4n/m)×m}`.
pub fn multipartite_spec(n: u32, m: u32) -> Result<ConnectionSpec, ClassifierError> {
    let g = Dicyclic::new(n).map_err(|e| ClassifierError::PreconditionViolated(e.to_string()))?;
    let h = g
        .subgroup_of_order(m)
        .map_err(|e| ClassifierError::PreconditionViolated(e.to_string()))?;
    let outside = g.elements().filter(|x| !h.contains(x));
    let (r, t): (Vec<Element>, Vec<Element>) = outside.partition(|x| !x.flip);
    ConnectionSpec::new(
        n,
        r.iter().map(|x| x.exp as i64),
        t.iter().map(|x| x.exp as i64),
    )
    .map_err(|e| ClassifierError::PreconditionViolated(e.to_string()))
}
