//! Random Fourier features from a truncated spectral measure, with the
//! error diagnostics used to study them over varieties.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::audit;
use crate::error::{Error, Result};
use crate::kernels::IsotropicKernel;
use crate::polybasis::Point;
use crate::rng::{derive_seed, seeded, StreamRng};
use crate::varieties::VarietySpec;

/// Consecutive rejections tolerated before giving up on the sampler.
pub const REJECTION_CAP: usize = 10_000;

/// Rejection sampler for the spectral measure restricted to `‖ω‖² ≤ t`,
/// `t = 2σ_K²/ε`.
#[derive(Debug, Clone)]
pub struct TruncatedSampler {
    kernel: IsotropicKernel,
    pub threshold: f64,
    accepted: usize,
    rejected: usize,
}

pub fn truncated_sampler(kernel: &IsotropicKernel, eps: f64) -> Result<TruncatedSampler> {
    if !kernel.has_spectral_sampler() {
        return Err(Error::Capability(format!("{} has no spectral sampler", kernel.name())));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::invalid(format!("eps must lie in (0, 1], got {eps}")));
    }
    Ok(TruncatedSampler { kernel: *kernel, threshold: 2.0 * kernel.curvature() / eps, accepted: 0, rejected: 0 })
}

impl TruncatedSampler {
    pub fn next(&mut self, rng: &mut StreamRng) -> Result<Vec<f64>> {
        for _ in 0..REJECTION_CAP {
            let w = self.kernel.sample_frequency(rng)?;
            if w.iter().map(|v| v * v).sum::<f64>() <= self.threshold {
                self.accepted += 1;
                return Ok(w);
            }
            self.rejected += 1;
        }
        Err(Error::DistributionMismatch(format!(
            "{REJECTION_CAP} consecutive frequencies exceeded the truncation radius {}",
            self.threshold
        )))
    }

    /// Fraction of draws rejected so far, an estimate of the truncated mass `p`.
    pub fn rejection_fraction(&self) -> f64 {
        let total = self.accepted + self.rejected;
        if total == 0 {
            0.0
        } else {
            self.rejected as f64 / total as f64
        }
    }

    pub fn draws(&self) -> usize {
        self.accepted + self.rejected
    }
}

/// Truncated mass estimate `p̂` from `draws` spectral draws, with its
/// binomial standard error.
pub fn estimate_truncation_mass(kernel: &IsotropicKernel, eps: f64, draws: usize, seed: u64) -> Result<(f64, f64)> {
    let s = truncated_sampler(kernel, eps)?;
    if draws == 0 {
        return Err(Error::invalid("need at least one draw"));
    }
    let mut rng = seeded(seed);
    let mut out = 0usize;
    for _ in 0..draws {
        let w = kernel.sample_frequency(&mut rng)?;
        if w.iter().map(|v| v * v).sum::<f64>() > s.threshold {
            out += 1;
        }
    }
    let p = out as f64 / draws as f64;
    Ok((p, (p * (1.0 - p) / draws as f64).sqrt()))
}

/// Exact truncated mass `P[‖ω‖² > t]` for the Gaussian kernel.
pub fn truncation_mass(kernel: &IsotropicKernel, eps: f64) -> Result<f64> {
    let s = truncated_sampler(kernel, eps)?;
    let chi = ChiSquared::new(kernel.dim as f64).expect("positive dof");
    Ok(chi.sf(s.threshold * kernel.sigma * kernel.sigma))
}

/// `K̃_r(x, y) = ⟨z(x), z(y)⟩` with `z(x) = √(2/r) cos(Ωx + θ)`.
#[derive(Debug, Clone)]
pub struct RffModel {
    rank: usize,
    dim: usize,
    /// Frequencies stored coordinate-major: entry `j·r + i` is `ω_i[j]`.
    omega_t: Vec<f64>,
    pub phases: Vec<f64>,
    pub truncation_threshold: f64,
    pub truncation_mass_estimate: f64,
    pub scale: f64,
    pub seed: u64,
}

/// Draws `r` truncated frequencies and uniform phases.
pub fn build(kernel: &IsotropicKernel, r: usize, eps: f64, seed: u64) -> Result<RffModel> {
    if r == 0 {
        return Err(Error::invalid("rank must be >= 1"));
    }
    let mut sampler = truncated_sampler(kernel, eps)?;
    let mut rng = seeded(seed);
    let mut freqs = Vec::with_capacity(r);
    for _ in 0..r {
        freqs.push(sampler.next(&mut rng)?);
    }
    let phases: Vec<f64> = (0..r).map(|_| rng.random::<f64>() * TAU).collect();
    let mut m = RffModel::from_parts(&freqs, phases, sampler.threshold)?;
    m.truncation_mass_estimate = sampler.rejection_fraction();
    m.seed = seed;
    Ok(m)
}

impl RffModel {
    /// Model with given frequencies (rows) and phases.
    pub fn from_parts(frequencies: &[Vec<f64>], phases: Vec<f64>, threshold: f64) -> Result<Self> {
        let r = frequencies.len();
        if r == 0 || phases.len() != r {
            return Err(Error::invalid("need matching, non-empty frequencies and phases"));
        }
        let dim = frequencies[0].len();
        if let Some(w) = frequencies.iter().find(|w| w.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: w.len() });
        }
        if frequencies.iter().any(|w| w.iter().map(|v| v * v).sum::<f64>() > threshold) {
            return Err(Error::invalid("a frequency exceeds the truncation threshold"));
        }
        let mut omega_t = vec![0.0; dim * r];
        for (i, w) in frequencies.iter().enumerate() {
            for (j, &v) in w.iter().enumerate() {
                omega_t[j * r + i] = v;
            }
        }
        Ok(Self {
            rank: r,
            dim,
            omega_t,
            phases,
            truncation_threshold: threshold,
            truncation_mass_estimate: 0.0,
            scale: (2.0 / r as f64).sqrt(),
            seed: 0,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn frequency(&self, i: usize) -> Vec<f64> {
        (0..self.dim).map(|j| self.omega_t[j * self.rank + i]).collect()
    }

    /// Writes `cos(Ωx + θ)` (without the scale) into `out`. Zero coordinates
    /// of `x` are skipped, which makes sparse inputs cheap.
    fn raw_features(&self, x: &[f64], out: &mut [f64]) {
        let r = self.rank;
        out.copy_from_slice(&self.phases);
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                let col = &self.omega_t[j * r..(j + 1) * r];
                for (o, w) in out.iter_mut().zip(col) {
                    *o += xj * w;
                }
            }
        }
        for o in out.iter_mut() {
            *o = o.cos();
        }
    }

    pub fn features(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let mut out = vec![0.0; self.rank];
        self.raw_features(x, &mut out);
        for o in out.iter_mut() {
            *o *= self.scale;
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(self.eval_pairs(&[x.to_vec()], &[y.to_vec()])?[0])
    }

    pub fn eval_pairs(&self, xs: &[Point], ys: &[Point]) -> Result<Vec<f64>> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch { expected: xs.len(), got: ys.len() });
        }
        if let Some(p) = xs.iter().chain(ys).find(|p| p.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        let mut a = vec![0.0; self.rank];
        let mut b = vec![0.0; self.rank];
        let s2 = self.scale * self.scale;
        Ok(xs
            .iter()
            .zip(ys)
            .map(|(x, y)| {
                self.raw_features(x, &mut a);
                self.raw_features(y, &mut b);
                s2 * a.iter().zip(&b).map(|(u, v)| u * v).sum::<f64>()
            })
            .collect())
    }
}

/// `K̃(x, y)`: the kernel of the truncated spectral measure, as a function of
/// `‖x − y‖`. Splitting `ω` along `x − y` leaves a one-dimensional integral
/// against the chi-square law of the orthogonal part.
pub fn truncated_kernel_value(kernel: &IsotropicKernel, eps: f64, dist: f64) -> Result<f64> {
    let s = truncated_sampler(kernel, eps)?;
    let t = s.threshold;
    let sigma = kernel.sigma;
    let d = kernel.dim as f64;
    let kept = ChiSquared::new(d).expect("positive dof").cdf(sigma * sigma * t);
    let perp = if kernel.dim > 1 { Some(ChiSquared::new(d - 1.0).expect("positive dof")) } else { None };
    let w_max = t.sqrt();
    let f = |w: f64| {
        let density = (-(w * w * sigma * sigma) / 2.0).exp() * sigma / (TAU).sqrt();
        let room = sigma * sigma * (t - w * w);
        let mass = match &perp {
            Some(c) => c.cdf(room.max(0.0)),
            None => 1.0,
        };
        density * (w * dist).cos() * mass
    };
    // composite Simpson on [−√t, √t], split in 4000 panels
    let panels = 4000;
    let h = 2.0 * w_max / panels as f64;
    let mut acc = f(-w_max) + f(w_max);
    for i in 1..panels {
        let w = -w_max + i as f64 * h;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(w);
    }
    Ok(acc * h / 3.0 / kept)
}

/// Empirical frequency of `|K̃ − K̃_r| > ε` at fixed pairs across trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailReport {
    pub rank: usize,
    pub eps: f64,
    pub events: usize,
    pub exceedance: f64,
    /// Binomial standard error of `exceedance`.
    pub standard_error: f64,
    /// `exp(−rε²/8)`: Hoeffding for per-term range `[−2, 2]`.
    pub certified_bound: f64,
    /// `exp(−rε²/2)`: the range-`[−1, 1]` form.
    pub unit_range_bound: f64,
}

pub fn pointwise_error_tail(
    kernel: &IsotropicKernel,
    spec: &VarietySpec,
    r: usize,
    eps: f64,
    pairs: usize,
    trials: usize,
    seed: u64,
) -> Result<TailReport> {
    if trials < 30 {
        return Err(Error::invalid(format!("need at least 30 trials, got {trials}")));
    }
    if pairs == 0 {
        return Err(Error::invalid("need at least one pair"));
    }
    if kernel.dim != spec.ambient_dim {
        return Err(Error::DimensionMismatch { expected: spec.ambient_dim, got: kernel.dim });
    }
    // ε sets both the truncation radius and the deviation level; levels
    // above 1 keep the radius at its ε = 1 value
    let trunc_eps = eps.min(1.0);
    let (xs, ys) = audit::sample_batch(spec, pairs, seed, u64::MAX);
    let targets: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let dist = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            truncated_kernel_value(kernel, trunc_eps, dist)
        })
        .collect::<Result<_>>()?;
    let counts: Vec<Result<usize>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let model = build(kernel, r, trunc_eps, derive_seed(seed, trial as u64))?;
            let vals = model.eval_pairs(&xs, &ys)?;
            Ok(vals.iter().zip(&targets).filter(|(v, t)| (*v - *t).abs() > eps).count())
        })
        .collect();
    let mut hits = 0;
    for c in counts {
        hits += c?;
    }
    let events = trials * pairs;
    let p = hits as f64 / events as f64;
    let rf = r as f64;
    Ok(TailReport {
        rank: r,
        eps,
        events,
        exceedance: p,
        standard_error: (p * (1.0 - p) / events as f64).sqrt(),
        certified_bound: (-rf * eps * eps / 8.0).exp(),
        unit_range_bound: (-rf * eps * eps / 2.0).exp(),
    })
}

/// Error summary of one RFF model over sampled pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub rank: usize,
    pub max_err: f64,
    pub q25: f64,
    pub q50: f64,
    pub q75: f64,
}

/// `|K − K̃_r|` statistics for each rank, over the same sampled pairs.
pub fn sup_error_profile(
    kernel: &IsotropicKernel,
    spec: &VarietySpec,
    ranks: &[usize],
    pairs: usize,
    eps: f64,
    seed: u64,
) -> Result<Vec<ProfileRow>> {
    if pairs == 0 || pairs > 1_000_000 {
        return Err(Error::invalid(format!("pairs must lie in 1..=1000000, got {pairs}")));
    }
    if kernel.dim != spec.ambient_dim {
        return Err(Error::DimensionMismatch { expected: spec.ambient_dim, got: kernel.dim });
    }
    let pair_seed = derive_seed(seed, u64::MAX);
    ranks
        .iter()
        .map(|&r| {
            let model = build(kernel, r, eps, derive_seed(seed, r as u64))?;
            let mut errs = audit::pair_errors(spec, pairs, pair_seed, |x, y| kernel.eval(x, y), |xs, ys| model.eval_pairs(xs, ys))?;
            errs.sort_by(f64::total_cmp);
            Ok(ProfileRow {
                rank: r,
                max_err: *errs.last().expect("nonempty"),
                q25: audit::quantile(&errs, 0.25),
                q50: audit::quantile(&errs, 0.5),
                q75: audit::quantile(&errs, 0.75),
            })
        })
        .collect()
}

/// Median `|K − K̃_r|` over the same pairs for `models` independently seeded
/// models. A single model's median is dominated by a few global random
/// terms, so comparisons across settings should use several.
pub fn median_error_by_model(
    kernel: &IsotropicKernel,
    spec: &VarietySpec,
    r: usize,
    pairs: usize,
    eps: f64,
    models: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if models == 0 {
        return Err(Error::invalid("need at least one model"));
    }
    (0..models as u64)
        .map(|m| Ok(sup_error_profile(kernel, spec, &[r], pairs, eps, derive_seed(seed, m))?[0].q50))
        .collect()
}

/// Taylor truncation of `u ↦ cos(u + θ)` valid for every phase `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosinePolynomial {
    pub degree: usize,
    /// `1/k!`; the phase-dependent factor is `cos(θ + kπ/2)`.
    pub coefficients: Vec<f64>,
    pub radius: f64,
    /// Measured sup over the `(u, θ)` grid.
    pub grid_error: f64,
    /// Lagrange remainder `R^{n+1}/(n+1)!`.
    pub remainder_bound: f64,
    /// `n / (radius² + ln(1/ε))`.
    pub growth_constant: f64,
}

impl CosinePolynomial {
    pub fn eval(&self, u: f64, theta: f64) -> f64 {
        let mut acc = 0.0;
        let mut pow = 1.0;
        for (k, c) in self.coefficients.iter().enumerate() {
            acc += c * (theta + k as f64 * FRAC_PI_2).cos() * pow;
            pow *= u;
        }
        acc
    }
}

const COS_U_GRID: usize = 2001;
const COS_THETA_GRID: usize = 64;
const COS_MAX_DEGREE: usize = 400;

fn cosine_grid_error(coeffs: &[f64], radius: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for ti in 0..COS_THETA_GRID {
        let theta = TAU * ti as f64 / COS_THETA_GRID as f64;
        let phases: Vec<f64> = (0..coeffs.len()).map(|k| (theta + k as f64 * FRAC_PI_2).cos()).collect();
        for ui in 0..COS_U_GRID {
            let u = -radius + 2.0 * radius * ui as f64 / (COS_U_GRID - 1) as f64;
            let mut acc = 0.0;
            let mut pow = 1.0;
            for (c, ph) in coeffs.iter().zip(&phases) {
                acc += c * ph * pow;
                pow *= u;
            }
            worst = worst.max((acc - (u + theta).cos()).abs());
        }
    }
    worst
}

/// Smallest truncation degree with uniform error `≤ ε/3` for
/// `|u| ≤ √radius2`.
pub fn cosine_polynomialize(radius2: f64, eps: f64) -> Result<CosinePolynomial> {
    if !(radius2 >= 0.0 && radius2.is_finite()) {
        return Err(Error::invalid(format!("radius² must be finite and non-negative, got {radius2}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid(format!("eps must lie in (0, 1), got {eps}")));
    }
    let radius = radius2.sqrt();
    let mut coeffs = vec![1.0];
    for n in 0..=COS_MAX_DEGREE {
        if n > 0 {
            let prev = coeffs[n - 1];
            coeffs.push(prev / n as f64);
        }
        let err = cosine_grid_error(&coeffs, radius);
        if err <= eps / 3.0 {
            let mut rem = 1.0;
            for k in 1..=n + 1 {
                rem *= radius / k as f64;
            }
            return Ok(CosinePolynomial {
                degree: n,
                coefficients: coeffs,
                radius,
                grid_error: err,
                remainder_bound: rem,
                growth_constant: n as f64 / (radius2 + (1.0 / eps).ln()),
            });
        }
    }
    Err(Error::Capability(format!("no truncation below degree {COS_MAX_DEGREE} reaches eps/3")))
}

/// Checks `|p(u)p(v) − cos(u+θ)cos(v+θ')| ≤ (1+ε/3)² − 1 ≤ ε` at random
/// arguments. Returns the largest observed error and the bound.
pub fn certify_product_bound(poly: &CosinePolynomial, eps: f64, pairs: usize, seed: u64) -> (f64, f64) {
    let mut rng = seeded(seed);
    let r = poly.radius;
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let u = r * (2.0 * rng.random::<f64>() - 1.0);
        let v = r * (2.0 * rng.random::<f64>() - 1.0);
        let a = rng.random::<f64>() * TAU;
        let b = rng.random::<f64>() * TAU;
        let approx = poly.eval(u, a) * poly.eval(v, b);
        worst = worst.max((approx - (u + a).cos() * (v + b).cos()).abs());
    }
    let bound = (1.0 + eps / 3.0).powi(2) - 1.0;
    (worst, bound)
}
