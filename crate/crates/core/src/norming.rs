//! Approximate Fekete points and tensored norming sets.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::hilbert::hf;
use crate::lowrank::{coordinate_basis, design_from_candidates};
use crate::polybasis::{evaluate_basis, BasisFamily, MonomialBasis, Point};
use crate::rng::{derive_seed, seeded};
use crate::varieties::VarietySpec;

/// Polynomials whose maximum on the set falls below this are redrawn.
pub const DEGENERATE_MAX: f64 = 1e-14;

const SUP_CHUNK: usize = 4096;

/// Greedy approximate Fekete set of degree `degree`.
#[derive(Debug, Clone)]
pub struct FeketeSet {
    pub points: Vec<Point>,
    pub degree: u32,
    pub basis: MonomialBasis,
    pub family: BasisFamily,
    pub greedy_log_volume: f64,
}

/// `approx_fekete(spec, a·n)` viewed as a norming set for degree `n`.
#[derive(Debug, Clone)]
pub struct NormingSet {
    pub points: Vec<Point>,
    pub target_degree: u32,
    pub tensoring_power: u32,
    /// `HF(a·n)^{1/a}`.
    pub certified_slack: f64,
    pub size: usize,
}

fn hf_f64(spec: &VarietySpec, n: u32) -> f64 {
    hf(spec, n).value.to_f64().unwrap_or(f64::INFINITY)
}

pub fn approx_fekete(spec: &VarietySpec, degree: u32, candidates: usize, seed: u64) -> Result<FeketeSet> {
    let m = hf(spec, degree)
        .value
        .to_usize()
        .ok_or_else(|| Error::Size(format!("HF({degree}) exceeds usize")))?;
    let needed = m.checked_mul(10).ok_or_else(|| Error::Size("candidate count overflows".into()))?;
    if candidates < needed {
        return Err(Error::invalid(format!("need at least 10·HF = {needed} candidates, got {candidates}")));
    }
    let pts = spec.sample(candidates, seed)?;
    let design = design_from_candidates(spec, degree, &pts)?;
    Ok(FeketeSet {
        points: design.points,
        degree,
        basis: design.basis,
        family: design.family,
        greedy_log_volume: design.log_volume,
    })
}

pub fn norming_set(spec: &VarietySpec, n: u32, a: u32, candidates: usize, seed: u64) -> Result<NormingSet> {
    if a == 0 {
        return Err(Error::invalid("tensoring power must be >= 1"));
    }
    let degree = n.checked_mul(a).ok_or_else(|| Error::Size("a·n overflows".into()))?;
    let f = approx_fekete(spec, degree, candidates, seed)?;
    let size = f.points.len();
    Ok(NormingSet {
        points: f.points,
        target_degree: n,
        tensoring_power: a,
        certified_slack: hf_f64(spec, degree).powf(1.0 / a as f64),
        size,
    })
}

/// Smallest `a` with `(15 a n)^{d*/a} ≤ target`.
pub fn tensoring_power_for_slack(dstar: usize, n: u32, target: f64) -> Result<u32> {
    if !(target > 1.0) {
        return Err(Error::invalid(format!("target slack must exceed 1, got {target}")));
    }
    if n == 0 {
        return Ok(1);
    }
    (1..=1_000_000u32)
        .find(|&a| dstar as f64 / a as f64 * (15.0 * a as f64 * n as f64).ln() <= target.ln())
        .ok_or_else(|| Error::Capability("no tensoring power below 10^6 reaches the target".into()))
}

/// `max_{sup_points} |p| / max_{set} |p|` for `p = Σ c_i f_i`.
pub fn slack_ratio(set: &[Point], basis: &MonomialBasis, family: BasisFamily, coeffs: &[f64], sup_points: &[Point]) -> Result<f64> {
    let c = DMatrix::from_column_slice(coeffs.len(), 1, coeffs);
    let on_set = (evaluate_basis(set, basis, family)? * &c).amax();
    let on_sup = (evaluate_basis(sup_points, basis, family)? * &c).amax();
    Ok(on_sup / on_set)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlackAudit {
    pub empirical_slack: f64,
    pub certified_slack: f64,
    pub trials: usize,
    pub sup_sample: usize,
}

/// Empirical slack over random degree-`n` polynomials with standard normal
/// coefficients. The sup over `X` is itself a Monte-Carlo maximum and so
/// underestimates the true slack.
pub fn audit_slack(ns: &NormingSet, spec: &VarietySpec, n: u32, trials: usize, sup_sample: usize, seed: u64) -> Result<SlackAudit> {
    if trials < 100 {
        return Err(Error::invalid(format!("need at least 100 trials, got {trials}")));
    }
    if sup_sample == 0 {
        return Err(Error::invalid("sup sample must be non-empty"));
    }
    if n > ns.target_degree {
        return Err(Error::invalid(format!("degree {n} exceeds the set's target degree {}", ns.target_degree)));
    }
    let m = hf(spec, n).value.to_usize().ok_or_else(|| Error::Size("HF exceeds usize".into()))?;
    let family = BasisFamily::ChebyshevProduct;
    let basis = coordinate_basis(spec, n, &ns.points, m)?;
    let on_set = evaluate_basis(&ns.points, &basis, family)?;

    let mut rng = seeded(derive_seed(seed, 1));
    let mut coeffs = DMatrix::zeros(m, trials);
    let mut set_max = vec![0.0; trials];
    for t in 0..trials {
        loop {
            let c: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
            let cv = DMatrix::from_column_slice(m, 1, &c);
            let mx = (&on_set * &cv).amax();
            if mx >= DEGENERATE_MAX {
                coeffs.set_column(t, &cv.column(0));
                set_max[t] = mx;
                break;
            }
        }
    }

    let sup_pts = spec.sample(sup_sample, derive_seed(seed, 2))?;
    let mut sup_max = vec![0.0f64; trials];
    for chunk in sup_pts.chunks(SUP_CHUNK) {
        let vals = evaluate_basis(chunk, &basis, family)? * &coeffs;
        for (t, col) in vals.column_iter().enumerate() {
            sup_max[t] = sup_max[t].max(col.amax());
        }
    }
    let empirical = sup_max.iter().zip(&set_max).map(|(s, d)| s / d).fold(0.0, f64::max);
    Ok(SlackAudit { empirical_slack: empirical, certified_slack: ns.certified_slack, trials, sup_sample })
}
