//! Low-rank factorizations of kernels restricted to a variety.
//!
//! A polynomial kernel `P` of `x`-degree `≤ n` is reproduced exactly on `V`
//! by interpolating at a unisolvent design for `R_{≤n}[V]`: with Lagrange
//! frame `ℓ(x) = S⁻¹ f(x)` and design kernel matrix `H`,
//! `P(x, y) = ℓ(x)ᵀ H ℓ(y)`. The rank is `dim R_{≤n}[V] = HF_V(n)`.

use std::time::Instant;

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::audit::{self, DEFAULT_AUDIT_PAIRS};
use crate::error::{Error, Result};
use crate::hilbert::{hf, standard_monomials};
use crate::kernels::{cheb_fit, degree_for_eps, taylor_sup_bound, DiagonalScaling, IsotropicKernel, PolynomialKernel};
use crate::linalg;
use crate::polybasis::{enumerate_monomials, evaluate_basis, BasisFamily, MonomialBasis, Point, DEFAULT_RANK_TOL};
use crate::rng::derive_seed;
use crate::varieties::VarietySpec;

/// Smallest admissible `σ_min / σ_max` of a design's Vandermonde.
pub const DESIGN_CONDITION_FLOOR: f64 = 1e-10;

/// Default Nyström jitter.
pub const DEFAULT_JITTER: f64 = 1e-10;

/// Stream index separating audit seeds from design seeds.
const AUDIT_STREAM: u64 = 0xA0D1;

/// Points on `V` at which a basis of `R_{≤n}[V]` has an invertible
/// Vandermonde `S_ij = f_i(x_j)`.
#[derive(Debug, Clone)]
pub struct UnisolventDesign {
    pub degree: u32,
    pub points: Vec<Point>,
    pub basis: MonomialBasis,
    pub family: BasisFamily,
    pub vdm: DMatrix<f64>,
    pub condition_estimate: f64,
    /// `log |det|` of the plain monomial Vandermonde at `points`.
    pub log_volume: f64,
}

impl UnisolventDesign {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn hf_usize(spec: &VarietySpec, n: u32) -> Result<usize> {
    hf(spec, n)
        .value
        .to_usize()
        .ok_or_else(|| Error::Size(format!("HF({n}) of {} exceeds usize", spec.name)))
}

/// Standard monomials of degree `≤ n`, a basis of `R_{≤n}[V]`.
pub fn standard_monomial_features(spec: &VarietySpec, n: u32) -> Result<MonomialBasis> {
    let ideal = spec.lt_generators.as_ref().ok_or_else(|| {
        Error::Capability(format!("{} has no built-in leading-term ideal; select a design instead", spec.name))
    })?;
    MonomialBasis::new(spec.ambient_dim, standard_monomials(ideal, n), spec.monomial_order())
}

/// Basis of `R_{≤n}[V]` indexed by monomials: the standard monomials when
/// known, otherwise monomials picked by column pivoting on the candidates.
pub(crate) fn coordinate_basis(spec: &VarietySpec, n: u32, candidates: &[Point], m: usize) -> Result<MonomialBasis> {
    if spec.lt_generators.is_some() {
        let basis = standard_monomial_features(spec, n)?;
        if basis.len() != m {
            return Err(Error::Numerical(format!(
                "{} standard monomials but HF = {m}",
                basis.len()
            )));
        }
        return Ok(basis);
    }
    let ambient = enumerate_monomials(spec.ambient_dim, n, &spec.monomial_order())?;
    let mut v = evaluate_basis(candidates, &ambient, BasisFamily::ChebyshevProduct)?;
    for mut col in v.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    let qr = linalg::pivoted_qr(&v, m);
    let rank = qr.rank(DESIGN_CONDITION_FLOOR);
    if rank < m {
        return Err(Error::DegenerateSampling { rank, needed: m });
    }
    let picked = qr.pivots.iter().map(|&j| ambient.monomials()[j].clone()).collect();
    MonomialBasis::new(spec.ambient_dim, picked, spec.monomial_order())
}

/// Approximate Fekete selection of `HF(n)` design points among candidates.
pub(crate) fn design_from_candidates(spec: &VarietySpec, n: u32, candidates: &[Point]) -> Result<UnisolventDesign> {
    let m = hf_usize(spec, n)?;
    if candidates.len() < m {
        return Err(Error::DegenerateSampling { rank: candidates.len(), needed: m });
    }
    let basis = coordinate_basis(spec, n, candidates, m)?;
    let family = BasisFamily::ChebyshevProduct;
    let v = evaluate_basis(candidates, &basis, family)?;
    // greedy volume maximization is done on an orthonormal basis of the
    // column span, which makes the choice independent of the basis scaling
    let q = linalg::orthonormalize_columns(&v);
    let qr = linalg::pivoted_qr(&q.transpose(), m);
    let rank = qr.rank(DESIGN_CONDITION_FLOOR);
    if rank < m {
        return Err(Error::DegenerateSampling { rank, needed: m });
    }
    let points: Vec<Point> = qr.pivots.iter().map(|&i| candidates[i].clone()).collect();
    let vdm = evaluate_basis(&points, &basis, family)?.transpose();
    let sv = linalg::singular_values(&vdm);
    let (hi, lo) = (sv[0], *sv.last().expect("nonempty design"));
    if !(lo >= DESIGN_CONDITION_FLOOR * hi) {
        return Err(Error::DegenerateSampling { rank: sv.iter().filter(|&&s| s >= DESIGN_CONDITION_FLOOR * hi).count(), needed: m });
    }
    let log_volume = linalg::log_abs_det(&evaluate_basis(&points, &basis, BasisFamily::Monomial)?);
    Ok(UnisolventDesign { degree: n, points, basis, family, vdm, condition_estimate: hi / lo, log_volume })
}

/// Samples `candidates` points and selects a unisolvent design of degree `n`.
pub fn select_unisolvent(spec: &VarietySpec, n: u32, candidates: usize, seed: u64) -> Result<UnisolventDesign> {
    let m = hf_usize(spec, n)?;
    if candidates < 4 * m {
        return Err(Error::invalid(format!("need at least 4·HF = {} candidates, got {candidates}", 4 * m)));
    }
    let pts = spec.sample(candidates, seed)?;
    design_from_candidates(spec, n, &pts)
}

/// Selection that doubles the candidate pool on degenerate samples, up to
/// four times, with a fresh derived seed per attempt.
pub fn select_with_retry(spec: &VarietySpec, n: u32, candidate_factor: usize, seed: u64) -> Result<UnisolventDesign> {
    let m = hf_usize(spec, n)?;
    let mut candidates = candidate_factor.max(4) * m;
    let mut last = None;
    for attempt in 0..5 {
        let s = if attempt == 0 { seed } else { derive_seed(seed, attempt) };
        match select_unisolvent(spec, n, candidates, s) {
            Err(e @ Error::DegenerateSampling { .. }) => last = Some(e),
            other => return other,
        }
        candidates *= 2;
    }
    Err(last.expect("at least one attempt"))
}

/// Measured sup error of a factorization against its target.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCertificate {
    pub measured_sup_error: f64,
    pub pairs: usize,
    pub seed: u64,
    /// A priori bound on the approximation error, when one is known.
    pub certified_bound: Option<f64>,
}

#[derive(Debug, Clone)]
pub enum FeatureMap {
    /// `φ(x) = left · f(x)` and `ψ(y) = right · f(y)` over a polynomial basis;
    /// `right = None` means `ψ = φ`.
    Polynomial { basis: MonomialBasis, family: BasisFamily, left: DMatrix<f64>, right: Option<DMatrix<f64>> },
    /// `φ(x) = L⁻¹ k_L(x)` with `L Lᵀ = K_LL + jitter·I`.
    Nystrom { kernel: IsotropicKernel, landmarks: Vec<Point>, chol: DMatrix<f64> },
}

/// `K(x, y) ≈ w(x) w(y) ⟨φ(x), ψ(y)⟩`.
#[derive(Debug, Clone)]
pub struct LowRankFactorization {
    pub rank: usize,
    pub features: FeatureMap,
    pub diagonal_scaling: Option<DiagonalScaling>,
    pub error_certificate: Option<ErrorCertificate>,
}

impl LowRankFactorization {
    pub fn is_symmetric(&self) -> bool {
        match &self.features {
            FeatureMap::Polynomial { right, .. } => right.is_none(),
            FeatureMap::Nystrom { .. } => true,
        }
    }

    /// Feature matrices with one row per point: `(Φ, Ψ)`, `Ψ = None` when
    /// the factorization is symmetric. Diagonal weights are folded in.
    pub fn feature_matrices(&self, points: &[Point]) -> Result<(DMatrix<f64>, Option<DMatrix<f64>>)> {
        let (mut phi, mut psi) = match &self.features {
            FeatureMap::Polynomial { basis, family, left, right } => {
                let f = evaluate_basis(points, basis, *family)?;
                let phi = &f * left.transpose();
                let psi = right.as_ref().map(|r| &f * r.transpose());
                (phi, psi)
            }
            FeatureMap::Nystrom { kernel, landmarks, chol } => {
                let kx = DMatrix::from_fn(landmarks.len(), points.len(), |i, j| kernel.eval(&landmarks[i], &points[j]));
                let z = chol
                    .solve_lower_triangular(&kx)
                    .ok_or_else(|| Error::Numerical("singular Nyström factor".into()))?;
                (z.transpose(), None)
            }
        };
        if let Some(s) = &self.diagonal_scaling {
            for (i, p) in points.iter().enumerate() {
                let w = s.weight(p);
                phi.row_mut(i).scale_mut(w);
                if let Some(psi) = psi.as_mut() {
                    psi.row_mut(i).scale_mut(w);
                }
            }
        }
        Ok((phi, psi))
    }

    /// Approximate kernel values at the pairs `(xs[i], ys[i])`.
    pub fn eval_pairs(&self, xs: &[Point], ys: &[Point]) -> Result<Vec<f64>> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch { expected: xs.len(), got: ys.len() });
        }
        let (px, _) = self.feature_matrices(xs)?;
        let (py, qy) = self.feature_matrices(ys)?;
        let right = qy.as_ref().unwrap_or(&py);
        Ok((0..xs.len()).map(|i| px.row(i).dot(&right.row(i))).collect())
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(self.eval_pairs(&[x.to_vec()], &[y.to_vec()])?[0])
    }

    /// Audits against `target` on fresh pairs and stores the certificate.
    pub fn audit<T>(&mut self, spec: &VarietySpec, target: T, pairs: usize, seed: u64, certified_bound: Option<f64>) -> Result<f64>
    where
        T: Fn(&[f64], &[f64]) -> f64 + Sync,
    {
        let this = &*self;
        let sup = audit::sup_error(spec, pairs, seed, target, |xs, ys| this.eval_pairs(xs, ys))?;
        self.error_certificate = Some(ErrorCertificate { measured_sup_error: sup, pairs, seed, certified_bound });
        Ok(sup)
    }
}

/// Design kernel matrix `H_ij = P(x_i, x_j)` without diagonal weights.
fn design_kernel_matrix(design: &UnisolventDesign, kernel: &PolynomialKernel) -> DMatrix<f64> {
    let m = design.len();
    let mut h = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = kernel.eval_unscaled(&design.points[i], &design.points[j]);
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorForm {
    /// `φ = S⁻¹ f`, `ψ = H S⁻¹ f`, always available.
    Interpolative,
    /// `φ = ψ = Lᵀ S⁻¹ f` from pivoted Cholesky of `H`; only if `H` is PSD.
    Symmetric,
}

/// Factorizes a polynomial kernel over `V` on a design whose degree is at
/// least the kernel's `x`-degree.
pub fn factor_on_design(design: &UnisolventDesign, kernel: &PolynomialKernel, form: FactorForm) -> Result<LowRankFactorization> {
    if (design.degree as usize) < kernel.x_degree() {
        return Err(Error::invalid(format!(
            "design degree {} is below the kernel's x-degree {}",
            design.degree,
            kernel.x_degree()
        )));
    }
    let m = design.len();
    let s_inv = design
        .vdm
        .clone()
        .lu()
        .solve(&DMatrix::identity(m, m))
        .ok_or_else(|| Error::Numerical("design Vandermonde is singular".into()))?;
    let h = design_kernel_matrix(design, kernel);
    let (rank, left, right) = match form {
        FactorForm::Interpolative => (m, s_inv.clone(), Some(&h * &s_inv)),
        FactorForm::Symmetric => {
            let l = linalg::pivoted_cholesky(&h, 1e-14)
                .ok_or_else(|| Error::Numerical("design kernel matrix is not positive semidefinite".into()))?;
            (l.ncols(), l.transpose() * &s_inv, None)
        }
    };
    Ok(LowRankFactorization {
        rank,
        features: FeatureMap::Polynomial { basis: design.basis.clone(), family: design.family, left, right },
        diagonal_scaling: kernel.scaling,
        error_certificate: None,
    })
}

/// Rank of a polynomial kernel on `V × V`, read off the design matrix.
pub fn exact_rank(spec: &VarietySpec, kernel: &PolynomialKernel, n_eff: u32, seed: u64) -> Result<usize> {
    if (n_eff as usize) < kernel.x_degree() {
        return Err(Error::invalid(format!(
            "n_eff = {n_eff} is below the kernel's x-degree {}",
            kernel.x_degree()
        )));
    }
    let design = select_with_retry(spec, n_eff, 4, seed)?;
    linalg::numerical_rank(&design_kernel_matrix(&design, kernel), DEFAULT_RANK_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxOptions {
    pub audit_pairs: usize,
    /// Candidates sampled per design point.
    pub candidate_factor: usize,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        Self { audit_pairs: DEFAULT_AUDIT_PAIRS, candidate_factor: 4 }
    }
}

fn audit_seed(seed: u64) -> u64 {
    derive_seed(seed, AUDIT_STREAM)
}

/// Chebyshev route: fit the profile to `eps`, then factor `p_n(‖x−y‖²)`
/// exactly over `V` on a degree-`2n` design and audit against the kernel.
pub fn approximate_on_variety(kernel: &IsotropicKernel, spec: &VarietySpec, eps: f64, seed: u64) -> Result<LowRankFactorization> {
    approximate_on_variety_with(kernel, spec, eps, seed, ApproxOptions::default())
}

pub fn approximate_on_variety_with(
    kernel: &IsotropicKernel,
    spec: &VarietySpec,
    eps: f64,
    seed: u64,
    opts: ApproxOptions,
) -> Result<LowRankFactorization> {
    if kernel.dim != spec.ambient_dim {
        return Err(Error::DimensionMismatch { expected: spec.ambient_dim, got: kernel.dim });
    }
    let n = degree_for_eps(kernel, eps)?;
    approximate_at_degree_with(kernel, spec, n, seed, opts)
}

/// The Chebyshev route at a fixed profile degree `n`.
pub fn approximate_at_degree_with(
    kernel: &IsotropicKernel,
    spec: &VarietySpec,
    n: usize,
    seed: u64,
    opts: ApproxOptions,
) -> Result<LowRankFactorization> {
    if kernel.dim != spec.ambient_dim {
        return Err(Error::DimensionMismatch { expected: spec.ambient_dim, got: kernel.dim });
    }
    let fit = cheb_fit(kernel, n);
    let poly = PolynomialKernel::from_fit(&fit);
    let degree = poly.x_degree() as u32;
    let design = select_with_retry(spec, degree, opts.candidate_factor, seed)?;
    let mut fact = factor_on_design(&design, &poly, FactorForm::Interpolative)?;
    if opts.audit_pairs > 0 {
        fact.audit(spec, |x, y| kernel.eval(x, y), opts.audit_pairs, audit_seed(seed), Some(fit.sup_error))?;
    }
    Ok(fact)
}

/// Taylor features of the Gaussian factored over `V`, rank `HF_V(n)`.
pub fn taylor_on_variety(spec: &VarietySpec, n: u32, sigma: f64, seed: u64) -> Result<LowRankFactorization> {
    taylor_on_variety_with(spec, n, sigma, seed, ApproxOptions::default())
}

pub fn taylor_on_variety_with(spec: &VarietySpec, n: u32, sigma: f64, seed: u64, opts: ApproxOptions) -> Result<LowRankFactorization> {
    let kernel = IsotropicKernel::gaussian(sigma, spec.ambient_dim)?;
    let poly = crate::kernels::taylor_features_profile(n as usize, sigma);
    let m = hf_usize(spec, n)?;
    let design = select_with_retry(spec, n, opts.candidate_factor, seed)?;
    // the symmetric form is used only when Cholesky keeps the full rank
    let mut fact = match factor_on_design(&design, &poly, FactorForm::Symmetric) {
        Ok(f) if f.rank == m => f,
        _ => factor_on_design(&design, &poly, FactorForm::Interpolative)?,
    };
    fact.rank = m;
    if opts.audit_pairs > 0 {
        let bound = taylor_sup_bound(n as usize, sigma);
        fact.audit(spec, |x, y| kernel.eval(x, y), opts.audit_pairs, audit_seed(seed), Some(bound))?;
    }
    Ok(fact)
}

/// Nyström approximation `k_xᵀ (K_LL + jitter·I)⁻¹ k_y`.
pub fn nystrom(kernel: &IsotropicKernel, landmarks: &[Point], jitter: f64) -> Result<LowRankFactorization> {
    if landmarks.is_empty() {
        return Err(Error::invalid("Nyström needs at least one landmark"));
    }
    if !(jitter >= 0.0) {
        return Err(Error::invalid(format!("jitter must be non-negative, got {jitter}")));
    }
    if let Some(p) = landmarks.iter().find(|p| p.len() != kernel.dim) {
        return Err(Error::DimensionMismatch { expected: kernel.dim, got: p.len() });
    }
    for i in 0..landmarks.len() {
        for j in 0..i {
            if landmarks[i] == landmarks[j] {
                return Err(Error::invalid(format!("landmarks {j} and {i} coincide")));
            }
        }
    }
    let m = landmarks.len();
    let mut k = DMatrix::from_fn(m, m, |i, j| kernel.eval(&landmarks[i], &landmarks[j]));
    for i in 0..m {
        k[(i, i)] += jitter;
    }
    let chol = k
        .cholesky()
        .ok_or_else(|| Error::Numerical("regularized landmark matrix is not positive definite".into()))?
        .unpack();
    Ok(LowRankFactorization {
        rank: m,
        features: FeatureMap::Nystrom { kernel: *kernel, landmarks: landmarks.to_vec(), chol },
        diagonal_scaling: None,
        error_certificate: None,
    })
}

/// Time spent building a factorization, for reporting.
pub fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_secs_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polybasis::Monomial;

    fn spec(s: &str) -> VarietySpec {
        s.parse().unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn standard_monomial_examples() {
        let b = standard_monomial_features(&spec("sparse:d=2,k=1"), 2).unwrap();
        assert_eq!(b.len(), 5);
        for e in [[0, 0], [1, 0], [0, 1], [2, 0], [0, 2]] {
            assert!(b.contains(&m(&e)));
        }
        let b = standard_monomial_features(&spec("sphere:d=2"), 2).unwrap();
        assert_eq!(b.len(), 5);
        assert!(!b.contains(&m(&[2, 0])));
        assert!(b.contains(&m(&[1, 1])) && b.contains(&m(&[0, 2])));
        assert_eq!(standard_monomial_features(&spec("full:d=3"), 3).unwrap().len(), 20);
        assert!(matches!(standard_monomial_features(&spec("so3"), 1), Err(Error::Capability(_))));
    }

    #[test]
    fn design_sizes() {
        let d = select_unisolvent(&spec("sphere:d=2"), 1, 12, 1).unwrap();
        assert_eq!(d.len(), 3);
        let d = select_unisolvent(&spec("so3"), 1, 40, 1).unwrap();
        assert_eq!(d.len(), 10);
        assert!(d.condition_estimate.is_finite());
        assert_eq!(select_unisolvent(&spec("trig:d=4"), 2, 36, 1).unwrap().len(), 9);
        assert!(select_unisolvent(&spec("trig:d=4"), 2, 35, 1).unwrap_err().is_validation());
    }

    #[test]
    fn example_ranks() {
        let r2 = PolynomialKernel::exponential_taylor(2);
        assert_eq!(exact_rank(&spec("full:d=2"), &r2, 2, 3).unwrap(), 6);
        assert_eq!(exact_rank(&spec("sparse:d=2,k=1"), &r2, 2, 3).unwrap(), 5);
        assert_eq!(exact_rank(&spec("sphere:d=2"), &r2, 2, 3).unwrap(), 5);
        let r3 = PolynomialKernel::exponential_taylor(3);
        assert_eq!(exact_rank(&spec("trig:d=6"), &r3, 3, 3).unwrap(), 19);
        assert!(exact_rank(&spec("trig:d=6"), &r3, 2, 3).is_err());
    }

    #[test]
    fn taylor_ranks() {
        let opts = ApproxOptions { audit_pairs: 2000, ..Default::default() };
        assert_eq!(taylor_on_variety_with(&spec("sparse:d=20,k=1"), 2, 1.0, 1, opts).unwrap().rank, 41);
        assert_eq!(taylor_on_variety_with(&spec("sphere:d=3"), 2, 1.0, 1, opts).unwrap().rank, 9);
        assert_eq!(taylor_on_variety_with(&spec("so3"), 0, 1.0, 1, opts).unwrap().rank, 1);
    }

    #[test]
    fn factorization_reproduces_polynomial_kernel() {
        for s in ["sphere:d=3", "sparse:d=5,k=2", "so3", "trig:d=4"] {
            let v = spec(s);
            let k = PolynomialKernel::exponential_taylor(2);
            let design = select_unisolvent(&v, 2, 4 * hf_usize(&v, 2).unwrap(), 5).unwrap();
            for form in [FactorForm::Interpolative, FactorForm::Symmetric] {
                let f = factor_on_design(&design, &k, form).unwrap();
                let xs = v.sample(200, 8).unwrap();
                let ys = v.sample(200, 9).unwrap();
                let approx = f.eval_pairs(&xs, &ys).unwrap();
                for ((x, y), a) in xs.iter().zip(&ys).zip(approx) {
                    assert!((k.eval(x, y) - a).abs() < 1e-10, "{s} {form:?}");
                }
            }
        }
    }

    #[test]
    fn loose_eps_gives_rank_one() {
        let v = spec("sparse:d=4,k=1");
        let k = IsotropicKernel::gaussian(1.0, 4).unwrap();
        let opts = ApproxOptions { audit_pairs: 2000, ..Default::default() };
        let f = approximate_on_variety_with(&k, &v, 1.0, 2, opts).unwrap();
        assert_eq!(f.rank, 1);
        assert!(f.error_certificate.unwrap().measured_sup_error <= 1.0);
    }

    #[test]
    fn nystrom_examples() {
        let k = IsotropicKernel::gaussian(1.0, 3).unwrap();
        let one = nystrom(&k, &[vec![0.0; 3]], DEFAULT_JITTER).unwrap();
        let (x, y) = (vec![0.3, -0.2, 0.5], vec![0.1, 0.4, 0.0]);
        let expect = (-(0.38 + 0.17) / 2.0f64).exp() / (1.0 + DEFAULT_JITTER);
        assert!((one.eval(&x, &y).unwrap() - expect).abs() < 1e-14);

        let pts = spec("sphere:d=3").sample(20, 4).unwrap();
        let all = nystrom(&k, &pts, DEFAULT_JITTER).unwrap();
        for p in &pts {
            for q in &pts {
                assert!((all.eval(p, q).unwrap() - k.eval(p, q)).abs() < 1e-8);
            }
        }
        assert!(nystrom(&k, &[x.clone(), x.clone()], 0.0).unwrap_err().is_validation());
    }
}
