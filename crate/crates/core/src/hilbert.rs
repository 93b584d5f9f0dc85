//! Hilbert functions: closed forms, standard-monomial counts and a
//! Vandermonde-rank oracle.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polybasis::{enumerate_monomials, evaluate_basis, BasisFamily, Monomial, MonomialOrder};
use crate::varieties::{MonomialIdeal, VarietySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfMethod {
    ClosedForm,
    StandardMonomials,
    VandermondeRank,
}

impl fmt::Display for HfMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HfMethod::ClosedForm => "closed_form",
            HfMethod::StandardMonomials => "standard_monomials",
            HfMethod::VandermondeRank => "vandermonde_rank",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunctionValue {
    pub n: u32,
    pub value: BigUint,
    pub method: HfMethod,
}

/// Exact `binom(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Walks the order ideal of standard monomials depth first. A partial
/// exponent vector already in the ideal cuts its whole subtree, since every
/// completion is a multiple of it.
fn walk_standard(ideal: &MonomialIdeal, n: u32, mut visit: impl FnMut(&[u32])) {
    let d = ideal.nvars();
    let mut exps = vec![0u32; d];
    fn rec(ideal: &MonomialIdeal, exps: &mut Vec<u32>, var: usize, budget: u32, visit: &mut dyn FnMut(&[u32])) {
        if var == exps.len() {
            visit(exps);
            return;
        }
        for e in 0..=budget {
            exps[var] = e;
            if e > 0 && ideal.contains(&Monomial::new(exps.clone())) {
                break;
            }
            rec(ideal, exps, var + 1, budget - e, visit);
        }
        exps[var] = 0;
    }
    rec(ideal, &mut exps, 0, n, &mut visit);
}

/// Number of monomials of degree `≤ n` outside `ideal`.
pub fn count_standard_monomials(ideal: &MonomialIdeal, d: usize, n: u32) -> Result<BigUint> {
    if ideal.nvars() != d {
        return Err(Error::DimensionMismatch { expected: d, got: ideal.nvars() });
    }
    let mut count: u64 = 0;
    walk_standard(ideal, n, |_| count += 1);
    Ok(BigUint::from(count))
}

/// The standard monomials of degree `≤ n`, unsorted.
pub fn standard_monomials(ideal: &MonomialIdeal, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    walk_standard(ideal, n, |e| out.push(Monomial::new(e.to_vec())));
    out
}

pub fn hf(spec: &VarietySpec, n: u32) -> HilbertFunctionValue {
    HilbertFunctionValue { n, value: spec.hf_closed_form(n as u64), method: HfMethod::ClosedForm }
}

/// Standard-monomial count through the variety's leading-term ideal.
pub fn hf_via_monomials(spec: &VarietySpec, n: u32) -> Result<HilbertFunctionValue> {
    let ideal = spec
        .lt_generators
        .as_ref()
        .ok_or_else(|| Error::Capability(format!("{} has no built-in leading-term ideal", spec.name)))?;
    Ok(HilbertFunctionValue {
        n,
        value: count_standard_monomials(ideal, spec.ambient_dim, n)?,
        method: HfMethod::StandardMonomials,
    })
}

/// Numerical rank of the ambient degree-`n` monomial Vandermonde at
/// `oversample × hf(n)` sampled points. Rows are normalized first so the
/// rank test sees every monomial at unit scale.
pub fn hf_via_rank(spec: &VarietySpec, n: u32, oversample: usize, seed: u64, rel_tol: f64) -> Result<HilbertFunctionValue> {
    if oversample < 2 {
        return Err(Error::invalid("oversample must be >= 2"));
    }
    let predicted = hf(spec, n)
        .value
        .to_usize()
        .ok_or_else(|| Error::Size("Hilbert function exceeds usize".into()))?;
    let npts = predicted
        .checked_mul(oversample)
        .ok_or_else(|| Error::Size("sample count overflows".into()))?;
    let basis = enumerate_monomials(spec.ambient_dim, n, &MonomialOrder::grevlex(spec.ambient_dim))?;
    let points = spec.sample(npts, seed)?;
    // points × monomials; normalize columns (monomial rows of the Vandermonde)
    let mut v = evaluate_basis(&points, &basis, BasisFamily::Monomial)?;
    for mut col in v.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    let rank = linalg::numerical_rank(&v, rel_tol)?;
    if rank >= npts {
        return Err(Error::Indeterminate(format!(
            "rank {rank} saturates the {npts} sampled points; sample more"
        )));
    }
    Ok(HilbertFunctionValue { n, value: BigUint::from(rank), method: HfMethod::VandermondeRank })
}

/// `(deg V · binom(n + d*, d*), binom(n + d, d))`: the variety-aware bound
/// and the ambient polynomial-space dimension.
pub fn ambient_bound(d: u64, dstar: u64, degv: &BigUint, n: u64) -> Result<(BigUint, BigUint)> {
    if dstar == 0 || dstar > d {
        return Err(Error::invalid(format!("intrinsic dimension must lie in 1..={d}, got {dstar}")));
    }
    Ok((degv * binomial(n + dstar, dstar), binomial(n + d, d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(d, gens.iter().map(|g| Monomial::new(g.to_vec())).collect()).unwrap()
    }

    #[test]
    fn standard_monomial_examples() {
        let big = |v: u32| BigUint::from(v);
        assert_eq!(count_standard_monomials(&ideal(2, &[&[1, 1]]), 2, 2).unwrap(), big(5));
        assert_eq!(count_standard_monomials(&ideal(2, &[]), 2, 2).unwrap(), big(6));
        assert_eq!(count_standard_monomials(&ideal(2, &[&[2, 0]]), 2, 3).unwrap(), big(7));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(102, 2), BigUint::from(5151u32));
        assert_eq!(binomial(100, 5), BigUint::from(75_287_520u64));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
    }

    #[test]
    fn closed_form_examples() {
        let v = |s: &str, n| hf(&s.parse().unwrap(), n).value;
        assert_eq!(v("sparse:d=100,k=5", 2), BigUint::from(5151u32));
        assert_eq!(v("so3", 1), BigUint::from(10u32));
        assert_eq!(v("trig:d=100", 2), BigUint::from(201u32));
    }

    #[test]
    fn rank_oracle_examples() {
        let r = |s: &str, n| hf_via_rank(&s.parse().unwrap(), n, 4, 1, 1e-9).unwrap().value;
        assert_eq!(r("sphere:d=2", 2), BigUint::from(5u32));
        assert_eq!(r("symrank1:m=3", 1), BigUint::from(7u32));
        assert_eq!(r("rank1:m1=2,m2=2", 2), BigUint::from(14u32));
    }

    #[test]
    fn oversample_below_two_is_rejected() {
        let spec: VarietySpec = "full:d=1".parse().unwrap();
        assert!(hf_via_rank(&spec, 1, 1, 0, 1e-9).unwrap_err().is_validation());
        assert_eq!(hf_via_rank(&spec, 3, 2, 0, 1e-9).unwrap().value, BigUint::from(4u32));
    }

    #[test]
    fn ambient_bound_examples() {
        let (var, amb) = ambient_bound(9, 3, &BigUint::from(8u32), 2).unwrap();
        assert_eq!((var, amb), (BigUint::from(80u32), BigUint::from(55u32)));
        let (var, _) = ambient_bound(100, 5, &binomial(100, 5), 2).unwrap();
        assert_eq!(var, BigUint::from(1_581_037_920u64));
        assert!(ambient_bound(10, 0, &BigUint::from(1u32), 2).is_err());
        assert!(ambient_bound(3, 4, &BigUint::from(1u32), 2).is_err());
    }
}
