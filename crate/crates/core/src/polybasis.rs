//! Multivariate monomials, graded orders, basis enumeration and generalized
//! Vandermonde assembly.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

/// A point in the ambient space.
pub type Point = Vec<f64>;

/// Hard cap on materialized bases; larger requests are size errors.
pub const MAX_BASIS_LEN: usize = 1 << 24;

/// Default relative tolerance for numerical ranks.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Exponent vector `x^α = ∏ x_i^{α_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Self { exponents: vec![0; nvars] }
    }

    /// `x_var^power` in `nvars` variables.
    pub fn var_power(nvars: usize, var: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = power;
        Self { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Number of variables with a nonzero exponent.
    pub fn support_size(&self) -> usize {
        self.exponents.iter().filter(|&&e| e > 0).count()
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.len() == other.exponents.len()
            && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.exponents
            .iter()
            .zip(x)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, &xi)| xi.powi(e as i32))
            .product()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Graded reverse lexicographic.
    Grevlex,
    /// Graded lexicographic.
    Grlex,
}

/// A graded monomial order with an explicit variable priority.
///
/// `priority[0]` is the most significant variable (`x_{priority[0]}` is the
/// largest degree-one monomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        Self { kind: OrderKind::Grevlex, priority: (0..nvars).collect() }
    }

    pub fn grlex(nvars: usize) -> Self {
        Self { kind: OrderKind::Grlex, priority: (0..nvars).collect() }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= seen.len() || seen[p] {
                return Err(Error::invalid("variable priority must be a permutation"));
            }
            seen[p] = true;
        }
        Ok(Self { kind, priority })
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        if da != db {
            return da.cmp(&db);
        }
        let ea = a.exponents();
        let eb = b.exponents();
        match self.kind {
            OrderKind::Grlex => {
                for &v in &self.priority {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                // the last differing (least significant) variable decides,
                // and a smaller exponent there means a larger monomial
                for &v in self.priority.iter().rev() {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Ordered, duplicate-free list of monomials of degree at most `max_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBasis {
    monomials: Vec<Monomial>,
    max_degree: u32,
    nvars: usize,
    order: MonomialOrder,
}

impl MonomialBasis {
    /// Sorts ascending and removes duplicates.
    pub fn new(nvars: usize, mut monomials: Vec<Monomial>, order: MonomialOrder) -> Result<Self> {
        if monomials.iter().any(|m| m.nvars() != nvars) {
            return Err(Error::invalid("monomial arity differs from basis arity"));
        }
        if order.priority.len() != nvars {
            return Err(Error::invalid("order arity differs from basis arity"));
        }
        monomials.sort_by(|a, b| order.compare(a, b));
        monomials.dedup();
        let max_degree = monomials.iter().map(Monomial::degree).max().unwrap_or(0);
        Ok(Self { monomials, max_degree, nvars, order })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.iter().any(|x| x == m)
    }
}

/// `binom(n + d, d)` with overflow reported as a size error.
pub fn basis_len(d: usize, n: usize) -> Result<usize> {
    let mut acc: u128 = 1;
    for i in 1..=d as u128 {
        acc = acc
            .checked_mul(n as u128 + i)
            .ok_or_else(|| Error::Size(format!("binom({}, {}) overflows", n + d, d)))?
            / i;
    }
    usize::try_from(acc).map_err(|_| Error::Size(format!("binom({}, {}) exceeds usize", n + d, d)))
}

/// All monomials of total degree at most `n` in `d` variables.
pub fn enumerate_monomials(d: usize, n: u32, order: &MonomialOrder) -> Result<MonomialBasis> {
    if d == 0 {
        return Err(Error::invalid("need at least one variable"));
    }
    let count = basis_len(d, n as usize)?;
    if count > MAX_BASIS_LEN {
        return Err(Error::Size(format!("{count} monomials exceed the cap of {MAX_BASIS_LEN}")));
    }
    let mut out = Vec::with_capacity(count);
    let mut exps = vec![0u32; d];
    fill(&mut exps, 0, n, &mut out);
    debug_assert_eq!(out.len(), count);
    MonomialBasis::new(d, out, order.clone())
}

fn fill(exps: &mut [u32], var: usize, budget: u32, out: &mut Vec<Monomial>) {
    if var == exps.len() {
        out.push(Monomial::new(exps.to_vec()));
        return;
    }
    for e in 0..=budget {
        exps[var] = e;
        fill(exps, var + 1, budget - e, out);
    }
    exps[var] = 0;
}

/// How basis elements indexed by exponent vectors are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    /// `∏ x_i^{α_i}`.
    Monomial,
    /// `∏ T_{α_i}(x_i)` with Chebyshev polynomials of the first kind. Over an
    /// exponent set closed under division this spans the same space as the
    /// monomials and is far better conditioned on the unit ball.
    ChebyshevProduct,
}

/// Evaluates every basis element at every point: result is
/// `points.len() × basis.len()` (rows are points).
pub fn evaluate_basis(points: &[Point], basis: &MonomialBasis, family: BasisFamily) -> Result<DMatrix<f64>> {
    let d = basis.nvars();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: p.len() });
    }
    let top = basis.max_degree() as usize;
    let sparse: Vec<Vec<(usize, usize)>> = basis
        .monomials()
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e as usize))
                .collect()
        })
        .collect();

    let mut out = DMatrix::zeros(points.len(), basis.len());
    let mut table = vec![0.0; d * (top + 1)];
    for (row, x) in points.iter().enumerate() {
        power_table(x, top, family, &mut table);
        for (col, factors) in sparse.iter().enumerate() {
            let mut v = 1.0;
            for &(i, e) in factors {
                v *= table[i * (top + 1) + e];
            }
            out[(row, col)] = v;
        }
    }
    Ok(out)
}

/// `table[i * (top + 1) + k]` = x_i^k or T_k(x_i).
pub(crate) fn power_table(x: &[f64], top: usize, family: BasisFamily, table: &mut [f64]) {
    let stride = top + 1;
    for (i, &xi) in x.iter().enumerate() {
        let row = &mut table[i * stride..(i + 1) * stride];
        match family {
            BasisFamily::Monomial => {
                for (k, slot) in row.iter_mut().enumerate() {
                    *slot = xi.powi(k as i32);
                }
            }
            BasisFamily::ChebyshevProduct => {
                row[0] = 1.0;
                if top >= 1 {
                    row[1] = xi;
                }
                for k in 2..=top {
                    row[k] = 2.0 * xi * row[k - 1] - row[k - 2];
                }
            }
        }
    }
}

/// Generalized Vandermonde `V[i][j] = m_i(x_j)`, shape `|basis| × |points|`.
pub fn vandermonde(points: &[Point], basis: &MonomialBasis) -> Result<DMatrix<f64>> {
    Ok(evaluate_basis(points, basis, BasisFamily::Monomial)?.transpose())
}

/// Count of singular values `≥ rel_tol × σ_max`; 0 for the zero matrix.
pub fn numerical_rank(a: &DMatrix<f64>, rel_tol: f64) -> Result<usize> {
    linalg::numerical_rank(a, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn d2_n2_has_six_monomials() {
        let b = enumerate_monomials(2, 2, &MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(b.len(), 6);
        for e in [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]] {
            assert!(b.contains(&mono(&e)), "missing {e:?}");
        }
        // ascending: constant first, degree-2 block last
        assert_eq!(b.monomials()[0], mono(&[0, 0]));
        assert_eq!(b.monomials()[5].degree(), 2);
    }

    #[test]
    fn degree_zero_is_constant_only() {
        let b = enumerate_monomials(5, 0, &MonomialOrder::grevlex(5)).unwrap();
        assert_eq!(b.monomials(), &[Monomial::one(5)]);
    }

    #[test]
    fn d3_n4_has_35() {
        // binom(7, 3) = 35, expanded by hand: 1 + 3 + 6 + 10 + 15
        let b = enumerate_monomials(3, 4, &MonomialOrder::grlex(3)).unwrap();
        assert_eq!(b.len(), 1 + 3 + 6 + 10 + 15);
    }

    #[test]
    fn oversized_request_is_size_error() {
        let err = enumerate_monomials(60, 40, &MonomialOrder::grevlex(60)).unwrap_err();
        assert!(matches!(err, Error::Size(_)));
        assert!(matches!(basis_len(200, 200), Err(Error::Size(_))));
    }

    #[test]
    fn grevlex_and_grlex_disagree_where_expected() {
        // classic example: x1*x3^2 vs x2^3 ... use degree-3 pair x1 x3^2 and x2^2 x3... simpler:
        // grlex: x1 x3 < x2^2? lex compares x1 first: x1x3 has x1=1 > 0, so x1x3 > x2^2.
        // grevlex: last variable x3: x1x3 has 1 > 0, so x1x3 < x2^2.
        let a = mono(&[1, 0, 1]);
        let b = mono(&[0, 2, 0]);
        assert_eq!(MonomialOrder::grlex(3).compare(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::grevlex(3).compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn grevlex_puts_x1_squared_first_among_squares() {
        let o = MonomialOrder::grevlex(3);
        let x1 = mono(&[2, 0, 0]);
        for other in [mono(&[0, 2, 0]), mono(&[0, 0, 2]), mono(&[1, 1, 0]), mono(&[0, 1, 1])] {
            assert_eq!(o.compare(&x1, &other), Ordering::Greater);
        }
    }

    #[test]
    fn priority_must_be_permutation() {
        assert!(MonomialOrder::with_priority(OrderKind::Grlex, vec![0, 0, 1]).is_err());
        assert!(MonomialOrder::with_priority(OrderKind::Grlex, vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn constant_row() {
        let b = MonomialBasis::new(2, vec![Monomial::one(2)], MonomialOrder::grevlex(2)).unwrap();
        let pts = vec![vec![0.3, -1.0], vec![2.0, 0.5], vec![0.0, 0.0]];
        let v = vandermonde(&pts, &b).unwrap();
        assert_eq!(v.shape(), (1, 3));
        assert!(v.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn unit_point_evaluations() {
        let b = enumerate_monomials(2, 1, &MonomialOrder::grevlex(2)).unwrap();
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        let v = vandermonde(&pts, &b).unwrap();
        // grevlex order on degree 1: x2 < x1, so rows are [1, x2, x1]
        assert_eq!(b.monomials()[1], mono(&[0, 1]));
        let expected = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(v, expected);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let b = enumerate_monomials(2, 1, &MonomialOrder::grevlex(2)).unwrap();
        let err = vandermonde(&[vec![1.0, 2.0, 3.0]], &b).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&DMatrix::identity(4, 4), 1e-8).unwrap(), 4);
        let u = DMatrix::from_column_slice(3, 1, &[1.0, -2.0, 0.5]);
        let v = DMatrix::from_row_slice(1, 4, &[0.3, 1.0, -1.0, 2.0]);
        assert_eq!(numerical_rank(&(u * v), 1e-8).unwrap(), 1);
        assert_eq!(numerical_rank(&DMatrix::zeros(3, 3), 1e-8).unwrap(), 0);
    }

    #[test]
    fn chebyshev_products_match_monomial_span() {
        let order = MonomialOrder::grevlex(2);
        let b = enumerate_monomials(2, 3, &order).unwrap();
        let pts: Vec<Point> = (0..20).map(|i| vec![(i as f64 * 0.37).sin(), (i as f64 * 0.91).cos()]).collect();
        let m = evaluate_basis(&pts, &b, BasisFamily::Monomial).unwrap();
        let c = evaluate_basis(&pts, &b, BasisFamily::ChebyshevProduct).unwrap();
        let mut both = DMatrix::zeros(20, 20);
        both.view_mut((0, 0), (20, 10)).copy_from(&m);
        both.view_mut((0, 10), (20, 10)).copy_from(&c);
        assert_eq!(numerical_rank(&both, 1e-10).unwrap(), 10);
        // T_3(x) = 4x^3 - 3x
        let x = 0.3;
        let t3 = Monomial::var_power(2, 0, 3);
        let one = MonomialBasis::new(2, vec![t3], order).unwrap();
        let e = evaluate_basis(&[vec![x, 0.7]], &one, BasisFamily::ChebyshevProduct).unwrap();
        assert!((e[(0, 0)] - (4.0 * x * x * x - 3.0 * x)).abs() < 1e-15);
    }
}
