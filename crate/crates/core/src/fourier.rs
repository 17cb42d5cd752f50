//! Characteristic functions, convolution and the discrete Fourier transform on `Z_m`.
//!
//! The transform is `(Ff)(z) = Σ_i f(i) ω^{iz}` with `ω = exp(2πi/m)`, so for
//! `m = 2n` the root is `exp(πi/n)`. Evaluation is floating point; every
//! identity used for a pass/fail verdict also has an exact integer form on
//! the convolution side (see [`fourier_lemma_counting_form`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::ConnectionSpec;
use crate::metrics::{DistancePartition, DrgOutcome, IntersectionArray};
use crate::residue::ResidueSet;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FourierError {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("{divisor} is not a valid divisor of {modulus}")]
    InvalidDivisor { divisor: usize, modulus: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graph is not distance-regular")]
    NotDistanceRegular,
}

/// An integer-valued function on `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerFunction {
    values: Vec<i64>,
}

impl IntegerFunction {
    pub fn new(values: Vec<i64>) -> Self {
        assert!(!values.is_empty(), "functions on Z_0 are not supported");
        Self { values }
    }

    /// `Δ_A`.
    pub fn characteristic(set: &ResidueSet) -> Self {
        let m = set.modulus() as usize;
        let mut values = vec![0; m];
        for i in set.iter() {
            values[i as usize] = 1;
        }
        Self { values }
    }

    /// `Δ_{a}`.
    pub fn delta(modulus: usize, a: usize) -> Self {
        let mut values = vec![0; modulus];
        values[a % modulus] = 1;
        Self { values }
    }

    pub fn modulus(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, i: i64) -> i64 {
        self.values[i.rem_euclid(self.modulus() as i64) as usize]
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

/// `(f ∗ g)(z) = Σ_i f(i) g(z - i)`, computed exactly.
pub fn convolve(f: &IntegerFunction, g: &IntegerFunction) -> Result<IntegerFunction, FourierError> {
    let m = f.modulus();
    if m != g.modulus() {
        return Err(FourierError::ModulusMismatch(m, g.modulus()));
    }
    let mut out = vec![0i64; m];
    for (i, &fi) in f.values.iter().enumerate() {
        if fi == 0 {
            continue;
        }
        for (j, &gj) in g.values.iter().enumerate() {
            out[(i + j) % m] += fi * gj;
        }
    }
    Ok(IntegerFunction { values: out })
}

/// Complex values on `Z_m` with a comparison tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierVector {
    pub values: Vec<Complex64>,
    pub tolerance: f64,
}

impl FourierVector {
    pub fn modulus(&self) -> usize {
        self.values.len()
    }

    pub fn at(&self, z: usize) -> Complex64 {
        self.values[z % self.values.len()]
    }

    /// Largest pointwise distance to `other`.
    pub fn max_distance(&self, other: &FourierVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &FourierVector) -> bool {
        self.modulus() == other.modulus() && self.max_distance(other) <= self.tolerance
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() <= self.tolerance)
    }

    pub fn pointwise_mul(&self, other: &FourierVector) -> FourierVector {
        FourierVector {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
            tolerance: self.tolerance,
        }
    }
}

/// `exp(2πi k / m)` for `k = 0..m`.
fn roots_of_unity(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

/// `(Ff)(z) = Σ_i f(i) ω^{iz}` with the default tolerance.
pub fn dft(f: &IntegerFunction) -> FourierVector {
    dft_with_tolerance(f, DEFAULT_TOLERANCE)
}

pub fn dft_with_tolerance(f: &IntegerFunction, tolerance: f64) -> FourierVector {
    let m = f.modulus();
    let roots = roots_of_unity(m);
    let values = (0..m)
        .map(|z| {
            f.values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| roots[(i * z) % m] * v as f64)
                .sum()
        })
        .collect();
    FourierVector { values, tolerance }
}

/// One orbit `O_r` of the unit group acting on `Z_m`: the elements of additive order `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitOrbit {
    pub order: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub modulus: usize,
    /// Sorted by `order`.
    pub orbits: Vec<UnitOrbit>,
}

impl OrbitPartition {
    /// True when `set` is a union of orbits.
    pub fn is_union_of_orbits(&self, set: &ResidueSet) -> bool {
        self.orbits.iter().all(|o| {
            let inside = o.members.iter().filter(|&&x| set.contains(x as i64)).count();
            inside == 0 || inside == o.members.len()
        })
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Orbits of `Z_m^*` acting on `Z_m` by multiplication, computed directly from the action.
pub fn unit_orbits(m: usize) -> OrbitPartition {
    assert!(m >= 1);
    let units: Vec<usize> = (0..m).filter(|&u| gcd(u, m) == 1).collect();
    let mut seen = vec![false; m];
    let mut orbits = Vec::new();
    for x in 0..m {
        if seen[x] {
            continue;
        }
        let mut members: Vec<usize> = units.iter().map(|&u| u * x % m).collect();
        if m == 1 {
            members = vec![0];
        }
        members.sort_unstable();
        members.dedup();
        for &y in &members {
            seen[y] = true;
        }
        orbits.push(UnitOrbit {
            order: m / gcd(x, m),
            members,
        });
    }
    orbits.sort_by_key(|o| o.order);
    OrbitPartition { modulus: m, orbits }
}

fn check_divisor(r: usize, m: usize) -> Result<(), FourierError> {
    if r == 0 || !m.is_multiple_of(r) {
        return Err(FourierError::InvalidDivisor { divisor: r, modulus: m });
    }
    Ok(())
}

/// True iff `A` meets every coset `i + rZ_m` exactly once.
pub fn is_transversal(set: &ResidueSet, r: usize) -> Result<bool, FourierError> {
    let m = set.modulus() as usize;
    check_divisor(r, m)?;
    Ok(coset_counts(set, r).iter().all(|&c| c == 1))
}

fn coset_counts(set: &ResidueSet, r: usize) -> Vec<usize> {
    let mut counts = vec![0; r];
    for i in set.iter() {
        counts[i as usize % r] += 1;
    }
    counts
}

/// `e_i = |A ∩ (i + rZ_m)|` for `0 <= i < r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetCountProfile {
    pub divisor: usize,
    pub counts: Vec<usize>,
}

impl CosetCountProfile {
    /// `e_0 + e_1 ξ + ... + e_{r-1} ξ^{r-1}` with `ξ = exp(2πi/r)`.
    pub fn evaluate(&self) -> Complex64 {
        let roots = roots_of_unity(self.divisor);
        self.counts
            .iter()
            .zip(&roots)
            .map(|(&e, &xi)| xi * e as f64)
            .sum()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

pub fn coset_profile(set: &ResidueSet, r: usize) -> Result<CosetCountProfile, FourierError> {
    check_divisor(r, set.modulus() as usize)?;
    Ok(CosetCountProfile {
        divisor: r,
        counts: coset_counts(set, r),
    })
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// For `A` a transversal of `(m/p)Z_m` that is also a union of unit orbits,
/// confirms `p = 2` or `A = pZ_m`. `Ok(false)` would be a counterexample.
pub fn check_orbit_transversal_lemma(set: &ResidueSet, p: usize) -> Result<bool, FourierError> {
    let m = set.modulus() as usize;
    if !is_prime(p) || !m.is_multiple_of(p) {
        return Err(FourierError::InvalidDivisor { divisor: p, modulus: m });
    }
    if !is_transversal(set, m / p)? {
        return Err(FourierError::PreconditionViolated(format!(
            "A is not a transversal of {}Z_{m}",
            m / p
        )));
    }
    if !unit_orbits(m).is_union_of_orbits(set) {
        return Err(FourierError::PreconditionViolated(
            "A is not a union of unit orbits".into(),
        ));
    }
    let p_multiples = ResidueSet::from_predicate(m as u32, |i| (i as usize).is_multiple_of(p));
    Ok(p == 2 || *set == p_multiples)
}

/// The transforms and parameters entering the two-distance identities.
struct LemmaInputs {
    k: f64,
    lambda: f64,
    mu: f64,
    r: ResidueSet,
    t: ResidueSet,
    r2: ResidueSet,
    t2: ResidueSet,
}

fn lemma_inputs(
    spec: &ConnectionSpec,
    dp: &DistancePartition,
    outcome: &DrgOutcome,
) -> Result<(LemmaInputs, IntersectionArray), FourierError> {
    let array = outcome.array().ok_or(FourierError::NotDistanceRegular)?.clone();
    if dp.base != 0 {
        return Err(FourierError::PreconditionViolated(
            "distance partition must be based at the identity".into(),
        ));
    }
    if dp.eccentricity() != array.diameter() {
        return Err(FourierError::PreconditionViolated(
            "distance partition and intersection array disagree on the diameter".into(),
        ));
    }
    let shells = dp.exponent_shells(spec.n());
    let m = 2 * spec.n();
    let (r2, t2) = shells
        .get(2)
        .cloned()
        .unwrap_or_else(|| (ResidueSet::empty(m), ResidueSet::empty(m)));
    Ok((
        LemmaInputs {
            k: array.k() as f64,
            lambda: array.lambda().unwrap_or(0) as f64,
            // Diameter 1 has no distance-2 pairs, so the μ term vanishes.
            mu: array.mu().unwrap_or(0) as f64,
            r: spec.r().clone(),
            t: spec.t().clone(),
            r2,
            t2,
        },
        array,
    ))
}

/// Residuals of `r² + |t|² = k + λr + μr₂` and `2rt = λt + μt₂` over `Z_2n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierLemmaResiduals {
    pub first: f64,
    pub second: f64,
}

impl FourierLemmaResiduals {
    pub fn within(&self, tolerance: f64) -> bool {
        self.first <= tolerance && self.second <= tolerance
    }
}

pub fn fourier_lemma_residuals(
    spec: &ConnectionSpec,
    dp: &DistancePartition,
    outcome: &DrgOutcome,
) -> Result<FourierLemmaResiduals, FourierError> {
    let (inp, _) = lemma_inputs(spec, dp, outcome)?;
    let f = |s: &ResidueSet| dft(&IntegerFunction::characteristic(s));
    let (r, t, r2, t2) = (f(&inp.r), f(&inp.t), f(&inp.r2), f(&inp.t2));
    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    for z in 0..r.modulus() {
        let (rz, tz) = (r.at(z), t.at(z));
        let lhs1 = rz * rz + tz.norm_sqr();
        let rhs1 = inp.k + rz * inp.lambda + r2.at(z) * inp.mu;
        first = first.max((lhs1 - rhs1).norm());
        let lhs2 = rz * tz * 2.0;
        let rhs2 = tz * inp.lambda + t2.at(z) * inp.mu;
        second = second.max((lhs2 - rhs2).norm());
    }
    Ok(FourierLemmaResiduals { first, second })
}

/// Both transform identities hold at every point of `Z_2n` within `tolerance`.
///
/// For diameter 1 the `μ` terms are taken to be zero.
pub fn check_fourier_lemma(
    spec: &ConnectionSpec,
    dp: &DistancePartition,
    outcome: &DrgOutcome,
    tolerance: f64,
) -> Result<bool, FourierError> {
    Ok(fourier_lemma_residuals(spec, dp, outcome)?.within(tolerance))
}

/// The exact counting form behind the transform identities:
/// `Δ_R∗Δ_R + Δ_T∗Δ_{-T} = kΔ_0 + λΔ_R + μΔ_{R_2}` and
/// `2 Δ_R∗Δ_T = λΔ_T + μΔ_{T_2}`.
pub fn fourier_lemma_counting_form(
    spec: &ConnectionSpec,
    dp: &DistancePartition,
    outcome: &DrgOutcome,
) -> Result<bool, FourierError> {
    let (inp, array) = lemma_inputs(spec, dp, outcome)?;
    let ch = IntegerFunction::characteristic;
    let m = inp.r.modulus() as usize;
    let rr = convolve(&ch(&inp.r), &ch(&inp.r))?;
    let tt = convolve(&ch(&inp.t), &ch(&inp.t.negate()))?;
    let rt = convolve(&ch(&inp.r), &ch(&inp.t))?;
    let (k, lambda, mu) = (array.k() as i64, array.lambda().unwrap_or(0) as i64, array.mu().unwrap_or(0) as i64);
    let d0 = IntegerFunction::delta(m, 0);
    let (dr, dt, dr2, dt2) = (ch(&inp.r), ch(&inp.t), ch(&inp.r2), ch(&inp.t2));
    Ok((0..m).all(|i| {
        let lhs1 = rr.values[i] + tt.values[i];
        let rhs1 = k * d0.values[i] + lambda * dr.values[i] + mu * dr2.values[i];
        let lhs2 = 2 * rt.values[i];
        let rhs2 = lambda * dt.values[i] + mu * dt2.values[i];
        lhs1 == rhs1 && lhs2 == rhs2
    }))
}
