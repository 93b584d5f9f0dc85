//! Isotropic kernel profiles, Chebyshev fits of the profile on `[0, 4]`, and
//! polynomial kernels (including Taylor features of the Gaussian).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::rng::StreamRng;

/// `‖x − y‖²` never exceeds this on the unit ball.
pub const PROFILE_DOMAIN: f64 = 4.0;

/// Uniform grid used to measure fit errors.
pub const FIT_GRID: usize = 10_001;

/// Highest degree tried by [`degree_for_eps`].
pub const MAX_FIT_DEGREE: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// `f(t) = exp(−t / (2σ²))`
    Gaussian,
    /// `f(t) = 1 / (1 + t / (2σ²))`
    Cauchy,
}

/// `K(x, y) = f(‖x − y‖²)` in dimension `dim` with bandwidth `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicKernel {
    pub kind: ProfileKind,
    pub sigma: f64,
    pub dim: usize,
}

impl IsotropicKernel {
    pub fn gaussian(sigma: f64, dim: usize) -> Result<Self> {
        Self::new(ProfileKind::Gaussian, sigma, dim)
    }

    pub fn cauchy(sigma: f64, dim: usize) -> Result<Self> {
        Self::new(ProfileKind::Cauchy, sigma, dim)
    }

    fn new(kind: ProfileKind, sigma: f64, dim: usize) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!("bandwidth must be positive, got {sigma}")));
        }
        if dim == 0 {
            return Err(Error::invalid("kernel dimension must be >= 1"));
        }
        Ok(Self { kind, sigma, dim })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ProfileKind::Gaussian => "gaussian",
            ProfileKind::Cauchy => "cauchy",
        }
    }

    pub fn profile(&self, t: f64) -> f64 {
        let s = t / (2.0 * self.sigma * self.sigma);
        match self.kind {
            ProfileKind::Gaussian => (-s).exp(),
            ProfileKind::Cauchy => 1.0 / (1.0 + s),
        }
    }

    /// Trace of the Hessian of `−k` at the origin, `−2 f'(0) d`. Both
    /// profiles have `f'(0) = −1/(2σ²)`.
    pub fn curvature(&self) -> f64 {
        self.dim as f64 / (self.sigma * self.sigma)
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        self.profile(sq_dist(x, y))
    }

    pub fn has_spectral_sampler(&self) -> bool {
        self.kind == ProfileKind::Gaussian
    }

    /// One frequency from the spectral (Bochner) measure.
    pub fn sample_frequency(&self, rng: &mut StreamRng) -> Result<Vec<f64>> {
        match self.kind {
            ProfileKind::Gaussian => {
                let normal = Normal::new(0.0, 1.0 / self.sigma).expect("positive bandwidth");
                Ok((0..self.dim).map(|_| normal.sample(rng)).collect())
            }
            ProfileKind::Cauchy => Err(Error::Capability("the cauchy kernel has no spectral sampler".into())),
        }
    }

    /// Radius `ρ` of the Bernstein ellipse used for the fit certificate, in
    /// the variable `s = t/2 − 1` that maps `[0, 4]` onto `[−1, 1]`.
    pub fn certificate_rho(&self) -> f64 {
        match self.kind {
            ProfileKind::Gaussian => 8.0,
            ProfileKind::Cauchy => 3.0f64.min(1.0 + 0.9 * (self.rho_max() - 1.0)),
        }
    }

    /// Largest ellipse parameter on which the profile is analytic.
    pub fn rho_max(&self) -> f64 {
        match self.kind {
            ProfileKind::Gaussian => f64::INFINITY,
            ProfileKind::Cauchy => {
                // pole at t = −2σ², i.e. s = −1 − σ²
                let a = 1.0 + self.sigma * self.sigma;
                a + (a * a - 1.0).sqrt()
            }
        }
    }
}

impl fmt::Display for IsotropicKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:sigma={}", self.name(), self.sigma)
    }
}

pub(crate) fn sq_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Parsed `gaussian:sigma=1` style kernel, dimension supplied later.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: ProfileKind,
    pub sigma: f64,
}

impl KernelSpec {
    pub fn instantiate(&self, dim: usize) -> Result<IsotropicKernel> {
        IsotropicKernel::new(self.kind, self.sigma, dim)
    }
}

impl FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (s, None),
        };
        let kind = match name {
            "gaussian" => ProfileKind::Gaussian,
            "cauchy" => ProfileKind::Cauchy,
            _ => return Err(Error::invalid(format!("unknown kernel `{name}`"))),
        };
        let mut sigma = 1.0;
        if let Some(rest) = rest {
            for part in rest.split(',') {
                match part.split_once('=') {
                    Some(("sigma", v)) => {
                        sigma = v.trim().parse().map_err(|_| Error::invalid(format!("bad sigma `{v}`")))?;
                    }
                    _ => return Err(Error::invalid(format!("unexpected kernel parameter `{part}`"))),
                }
            }
        }
        if !(sigma > 0.0 && f64::is_finite(sigma)) {
            return Err(Error::invalid(format!("bandwidth must be positive, got {sigma}")));
        }
        Ok(Self { kind, sigma })
    }
}

/// Degree-`n` Chebyshev interpolant of a kernel profile on `[0, 4]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebFit {
    pub coefficients: Vec<f64>,
    pub degree: usize,
    pub sup_error: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Ellipse parameter and estimated `max |f|` on it behind `alpha`.
    pub rho: f64,
    pub ellipse_max: f64,
}

impl ChebFit {
    /// Evaluates the interpolant at `t` (Clenshaw).
    pub fn eval(&self, t: f64) -> f64 {
        clenshaw(&self.coefficients, t / 2.0 - 1.0)
    }

    /// `alpha · beta^degree`.
    pub fn certified_error(&self) -> f64 {
        self.alpha * self.beta.powi(self.degree as i32)
    }
}

pub(crate) fn clenshaw(c: &[f64], s: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * s * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or(0.0) + s * b1 - b2
}

/// Chebyshev coefficients of the interpolant of `f` at the `n + 1`
/// extrema `cos(πj/n)` of `T_n` on `[−1, 1]`.
pub(crate) fn cheb_interp(f: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![f(0.0)];
    }
    let vals: Vec<f64> = (0..=n).map(|j| f((PI * j as f64 / n as f64).cos())).collect();
    (0..=n)
        .map(|k| {
            let mut s = 0.0;
            for (j, v) in vals.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                s += w * v * (PI * (j * k) as f64 / n as f64).cos();
            }
            let c = 2.0 * s / n as f64;
            if k == 0 || k == n {
                c / 2.0
            } else {
                c
            }
        })
        .collect()
}

/// Largest `|f|` over the Bernstein ellipse `E_ρ` (4096 boundary samples).
fn ellipse_max(kernel: &IsotropicKernel, rho: f64) -> f64 {
    let s2 = 2.0 * kernel.sigma * kernel.sigma;
    (0..4096)
        .map(|i| {
            let phi = 2.0 * PI * i as f64 / 4096.0;
            // z = (ρ e^{iφ} + ρ^{-1} e^{-iφ}) / 2, t = 2 + 2z
            let zr = 0.5 * (rho + 1.0 / rho) * phi.cos();
            let zi = 0.5 * (rho - 1.0 / rho) * phi.sin();
            let (tr, ti) = (2.0 + 2.0 * zr, 2.0 * zi);
            match kernel.kind {
                ProfileKind::Gaussian => (-tr / s2).exp(),
                ProfileKind::Cauchy => {
                    let (ar, ai) = (1.0 + tr / s2, ti / s2);
                    1.0 / (ar * ar + ai * ai).sqrt()
                }
            }
        })
        .fold(0.0, f64::max)
}

pub fn cheb_fit(kernel: &IsotropicKernel, n: usize) -> ChebFit {
    let coefficients = cheb_interp(|s| kernel.profile(2.0 + 2.0 * s), n);
    let sup_error = (0..FIT_GRID)
        .map(|i| {
            let t = PROFILE_DOMAIN * i as f64 / (FIT_GRID - 1) as f64;
            (kernel.profile(t) - clenshaw(&coefficients, t / 2.0 - 1.0)).abs()
        })
        .fold(0.0, f64::max);
    let rho = kernel.certificate_rho();
    let m = ellipse_max(kernel, rho);
    ChebFit {
        coefficients,
        degree: n,
        sup_error,
        alpha: 2.0 * m / (rho - 1.0),
        beta: 1.0 / rho,
        rho,
        ellipse_max: m,
    }
}

/// Smallest degree whose measured sup error is at most `eps`.
pub fn degree_for_eps(kernel: &IsotropicKernel, eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("eps must be positive, got {eps}")));
    }
    (0..=MAX_FIT_DEGREE)
        .find(|&n| cheb_fit(kernel, n).sup_error <= eps)
        .ok_or_else(|| Error::Capability(format!("eps = {eps:e} unreachable below degree {MAX_FIT_DEGREE}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKernelKind {
    /// `p(‖x − y‖²)`
    Isotropic,
    /// `p(⟨x, y⟩)`
    RotationInvariant,
}

/// Univariate polynomial in the kernel argument.
#[derive(Debug, Clone, PartialEq)]
pub enum UnivariatePolynomial {
    /// `Σ c_k u^k`
    Power(Vec<f64>),
    /// `Σ c_k T_k(u/2 − 1)`, i.e. Chebyshev on `[0, 4]`.
    Chebyshev(Vec<f64>),
}

impl UnivariatePolynomial {
    pub fn degree(&self) -> usize {
        match self {
            Self::Power(c) | Self::Chebyshev(c) => c.len().saturating_sub(1),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Self::Power(c) => c.iter().rev().fold(0.0, |acc, &ck| acc * u + ck),
            Self::Chebyshev(c) => clenshaw(c, u / 2.0 - 1.0),
        }
    }
}

/// Per-point weights multiplying a polynomial kernel, `w(x) w(y) p(·)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalScaling {
    /// `w(x) = exp(−‖x‖² / (2σ²))`
    Gaussian { sigma: f64 },
}

impl DiagonalScaling {
    pub fn weight(&self, x: &[f64]) -> f64 {
        match *self {
            DiagonalScaling::Gaussian { sigma } => (-dot(x, x) / (2.0 * sigma * sigma)).exp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialKernel {
    pub kind: PolyKernelKind,
    pub profile: UnivariatePolynomial,
    pub scaling: Option<DiagonalScaling>,
}

impl PolynomialKernel {
    pub fn degree(&self) -> usize {
        self.profile.degree()
    }

    /// Degree as a polynomial in `x` alone.
    pub fn x_degree(&self) -> usize {
        match self.kind {
            PolyKernelKind::Isotropic => 2 * self.degree(),
            PolyKernelKind::RotationInvariant => self.degree(),
        }
    }

    /// The polynomial part only, without diagonal weights.
    pub fn eval_unscaled(&self, x: &[f64], y: &[f64]) -> f64 {
        let u = match self.kind {
            PolyKernelKind::Isotropic => sq_dist(x, y),
            PolyKernelKind::RotationInvariant => dot(x, y),
        };
        self.profile.eval(u)
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        let p = self.eval_unscaled(x, y);
        match &self.scaling {
            Some(s) => s.weight(x) * s.weight(y) * p,
            None => p,
        }
    }

    /// `Σ_{k ≤ n} ⟨x,y⟩^k / k!`, the kernel of Example-style Taylor features.
    pub fn exponential_taylor(n: usize) -> Self {
        taylor_features_profile(n, 1.0).without_scaling()
    }

    pub fn without_scaling(mut self) -> Self {
        self.scaling = None;
        self
    }

    /// `p_n(‖x − y‖²)` from a Chebyshev fit of an isotropic profile.
    pub fn from_fit(fit: &ChebFit) -> Self {
        Self {
            kind: PolyKernelKind::Isotropic,
            profile: UnivariatePolynomial::Chebyshev(fit.coefficients.clone()),
            scaling: None,
        }
    }
}

/// Taylor features of the Gaussian: `Σ_{k ≤ n} ⟨x,y⟩^k / (σ^{2k} k!)` with
/// the weights `exp(−‖x‖²/(2σ²))` kept as a diagonal scaling.
pub fn taylor_features_profile(n: usize, sigma: f64) -> PolynomialKernel {
    let inv = 1.0 / (sigma * sigma);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    for k in 0..=n {
        if k > 0 {
            c *= inv / k as f64;
        }
        coeffs.push(c);
    }
    PolynomialKernel {
        kind: PolyKernelKind::RotationInvariant,
        profile: UnivariatePolynomial::Power(coeffs),
        scaling: Some(DiagonalScaling::Gaussian { sigma }),
    }
}

/// Exact sup of `|G − T_n|` over the unit ball: `1 − e^{−u} Σ_{k≤n} u^k/k!`
/// with `u = 1/σ²`, attained at `x = y` on the sphere.
pub fn taylor_sup_bound(n: usize, sigma: f64) -> f64 {
    let u = 1.0 / (sigma * sigma);
    // sum the tail directly to avoid cancellation for large n
    let mut term = 1.0;
    for k in 1..=n {
        term *= u / k as f64;
    }
    let mut tail = 0.0;
    let mut k = n + 1;
    let mut t = term * u / k as f64;
    while t > 1e-300 && k < n + 400 {
        tail += t;
        k += 1;
        t *= u / k as f64;
    }
    (-u).exp() * tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn gaussian_examples() {
        let g = IsotropicKernel::gaussian(1.0, 10).unwrap();
        assert_eq!(g.profile(0.0), 1.0);
        assert!((g.profile(4.0) - (-2f64).exp()).abs() < 1e-16);
        assert_eq!(g.curvature(), 10.0);
        assert_eq!(IsotropicKernel::gaussian(2.0, 4).unwrap().curvature(), 1.0);
        let mut rng = seeded(5);
        let draws = 100_000;
        let mean: f64 = (0..draws)
            .map(|_| g.sample_frequency(&mut rng).unwrap().iter().map(|w| w * w).sum::<f64>())
            .sum::<f64>()
            / draws as f64;
        // Var ‖ω‖² = 2d, so the standard error is sqrt(20/1e5) ≈ 0.014
        assert!((mean - 10.0).abs() < 0.07, "{mean}");
    }

    #[test]
    fn cauchy_examples() {
        let c = IsotropicKernel::cauchy(1.0, 6).unwrap();
        assert_eq!(c.profile(0.0), 1.0);
        assert!((c.profile(1.0) - 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(c.curvature(), 6.0);
        assert!((c.rho_max() - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        assert_eq!(c.certificate_rho(), 3.0);
        assert!(c.sample_frequency(&mut seeded(0)).is_err());
    }

    #[test]
    fn invalid_bandwidth() {
        assert!(IsotropicKernel::gaussian(0.0, 3).is_err());
        assert!(IsotropicKernel::cauchy(-1.0, 3).is_err());
        assert!("gaussian:sigma=0".parse::<KernelSpec>().is_err());
        assert!("laplace:sigma=1".parse::<KernelSpec>().is_err());
        assert_eq!("cauchy:sigma=2".parse::<KernelSpec>().unwrap().sigma, 2.0);
    }

    #[test]
    fn fit_reproduces_polynomials() {
        let c = cheb_interp(|s| 3.0 * s * s - s + 0.5, 4);
        for i in 0..=20 {
            let s = -1.0 + i as f64 / 10.0;
            assert!((clenshaw(&c, s) - (3.0 * s * s - s + 0.5)).abs() < 1e-14);
        }
    }

    #[test]
    fn gaussian_fit_converges() {
        let g = IsotropicKernel::gaussian(1.0, 3).unwrap();
        assert!(cheb_fit(&g, 20).sup_error < 1e-12);
        assert_eq!(degree_for_eps(&g, 1.0).unwrap(), 0);
        let n = degree_for_eps(&g, 1e-6).unwrap();
        assert!(n <= 20);
        assert_eq!(n, 7);
    }

    #[test]
    fn constant_fit_error_below_one() {
        for k in [IsotropicKernel::gaussian(1.0, 2).unwrap(), IsotropicKernel::cauchy(1.0, 2).unwrap()] {
            let fit = cheb_fit(&k, 0);
            assert_eq!(fit.coefficients, vec![k.profile(2.0)]);
            assert!(fit.sup_error <= 1.0);
        }
    }

    #[test]
    fn cauchy_degree_matches_certificate() {
        let c = IsotropicKernel::cauchy(1.0, 2).unwrap();
        let n = degree_for_eps(&c, 1e-10).unwrap() as f64;
        let fit = cheb_fit(&c, 0);
        let predicted = ((fit.alpha * 1e10).ln() / fit.rho.ln()).ceil();
        // the certificate uses ρ = 3 while the true decay rate is ρ_max ≈ 3.73
        assert!(n <= predicted + 2.0, "{n} vs {predicted}");
    }

    #[test]
    fn taylor_profile_values() {
        let t0 = taylor_features_profile(0, 1.0);
        assert_eq!(t0.eval_unscaled(&[0.3, 0.1], &[-0.5, 0.2]), 1.0);
        let t2 = taylor_features_profile(2, 1.0);
        assert_eq!(t2.eval_unscaled(&[1.0, 0.0], &[1.0, 0.0]), 2.5);
        assert_eq!(t2.x_degree(), 2);
        let iso = PolynomialKernel::from_fit(&cheb_fit(&IsotropicKernel::gaussian(1.0, 2).unwrap(), 3));
        assert_eq!(iso.x_degree(), 6);
    }

    #[test]
    fn taylor_bound_values() {
        assert!((taylor_sup_bound(1, 1.0) - (1.0 - 2.0 / 1f64.exp())).abs() < 1e-15);
        assert!((taylor_sup_bound(2, 1.0) - (1.0 - 2.5 / 1f64.exp())).abs() < 1e-15);
        assert!(taylor_sup_bound(8, 1.0) < 1e-5);
    }
}
