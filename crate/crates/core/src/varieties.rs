//! Built-in real algebraic varieties: invariants, leading-term ideals,
//! seeded samplers on `V ∩ B^d` and membership tests.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix3;
use num_bigint::BigUint;
use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::hilbert::binomial;
use crate::polybasis::{Monomial, MonomialOrder, OrderKind, Point, MAX_BASIS_LEN};
use crate::rng::{seeded, StreamRng};

pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
enum IdealRepr {
    Explicit(Vec<Monomial>),
    /// All squarefree monomials of the given degree. Kept implicit because
    /// there are `binom(d, degree)` of them.
    SquarefreeProducts { degree: usize },
}

/// Ideal generated by monomials. Membership is divisibility by a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    repr: IdealRepr,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::DimensionMismatch { expected: nvars, got: g.nvars() });
        }
        Ok(Self { nvars, repr: IdealRepr::Explicit(generators) })
    }

    pub fn zero(nvars: usize) -> Self {
        Self { nvars, repr: IdealRepr::Explicit(Vec::new()) }
    }

    /// Generated by every product of `degree` distinct variables.
    pub fn squarefree(nvars: usize, degree: usize) -> Self {
        Self { nvars, repr: IdealRepr::SquarefreeProducts { degree } }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        match &self.repr {
            IdealRepr::Explicit(gens) => gens.iter().any(|g| g.divides(m)),
            IdealRepr::SquarefreeProducts { degree } => m.support_size() >= *degree,
        }
    }

    pub fn generator_count(&self) -> BigUint {
        match &self.repr {
            IdealRepr::Explicit(gens) => BigUint::from(gens.len()),
            IdealRepr::SquarefreeProducts { degree } => binomial(self.nvars as u64, *degree as u64),
        }
    }

    /// Materialized generator list; a size error when it would be huge.
    pub fn generators(&self) -> Result<Vec<Monomial>> {
        match &self.repr {
            IdealRepr::Explicit(gens) => Ok(gens.clone()),
            IdealRepr::SquarefreeProducts { degree } => {
                let count = self.generator_count();
                if count > BigUint::from(MAX_BASIS_LEN) {
                    return Err(Error::Size(format!("{count} generators")));
                }
                let mut out = Vec::new();
                let mut chosen = Vec::with_capacity(*degree);
                squarefree_rec(self.nvars, *degree, 0, &mut chosen, &mut out);
                Ok(out)
            }
        }
    }
}

fn squarefree_rec(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Monomial>) {
    if chosen.len() == k {
        let mut e = vec![0; n];
        for &i in chosen.iter() {
            e[i] = 1;
        }
        out.push(Monomial::new(e));
        return;
    }
    for i in start..n {
        chosen.push(i);
        squarefree_rec(n, k, i + 1, chosen, out);
        chosen.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarietyKind {
    FullSpace { d: usize },
    Sphere { d: usize },
    Sparse { d: usize, k: usize },
    Rank1 { m1: usize, m2: usize },
    SymRank1 { m: usize },
    /// `(cos θ, …, cos kθ, sin θ, …, sin kθ)` with `d = 2k`.
    TrigMoment { d: usize },
    So3,
}

/// A named variety with its algebraic invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct VarietySpec {
    pub name: String,
    pub kind: VarietyKind,
    pub ambient_dim: usize,
    pub intrinsic_dim: usize,
    pub degree: BigUint,
    /// Leading-term ideal of the vanishing ideal, when known in closed form.
    pub lt_generators: Option<MonomialIdeal>,
    pub membership_tol: f64,
}

/// Builds a variety from its registry name and integer parameters.
pub fn builtin(name: &str, params: &BTreeMap<String, usize>) -> Result<VarietySpec> {
    let get = |key: &str| -> Result<usize> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::invalid(format!("variety `{name}` needs parameter `{key}`")))
    };
    let allowed: &[&str] = match name {
        "full" | "full_space" | "sphere" | "trig" | "trig_moment" => &["d"],
        "sparse" => &["d", "k"],
        "rank1" => &["m1", "m2"],
        "symrank1" | "sym_rank1" => &["m"],
        "so3" => &[],
        _ => return Err(Error::invalid(format!("unknown variety `{name}`"))),
    };
    if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::invalid(format!("variety `{name}` takes no parameter `{extra}`")));
    }
    let kind = match name {
        "full" | "full_space" => VarietyKind::FullSpace { d: get("d")? },
        "sphere" => VarietyKind::Sphere { d: get("d")? },
        "sparse" => VarietyKind::Sparse { d: get("d")?, k: get("k")? },
        "rank1" => VarietyKind::Rank1 { m1: get("m1")?, m2: get("m2")? },
        "symrank1" | "sym_rank1" => VarietyKind::SymRank1 { m: get("m")? },
        "trig" | "trig_moment" => VarietyKind::TrigMoment { d: get("d")? },
        _ => VarietyKind::So3,
    };
    VarietySpec::from_kind(kind)
}

impl VarietySpec {
    pub fn from_kind(kind: VarietyKind) -> Result<Self> {
        let (name, ambient, dim, degree, lt) = match kind {
            VarietyKind::FullSpace { d } => {
                need(d >= 1, "full space needs d >= 1")?;
                (format!("full:d={d}"), d, d, BigUint::from(1u32), Some(MonomialIdeal::zero(d)))
            }
            VarietyKind::Sphere { d } => {
                need(d >= 2, "sphere needs d >= 2")?;
                let lt = MonomialIdeal::new(d, vec![Monomial::var_power(d, 0, 2)])?;
                (format!("sphere:d={d}"), d, d - 1, BigUint::from(2u32), Some(lt))
            }
            VarietyKind::Sparse { d, k } => {
                need(d >= 1, "sparse needs d >= 1")?;
                need(k < d, "sparse needs k < d")?;
                let lt = MonomialIdeal::squarefree(d, k + 1);
                (format!("sparse:d={d},k={k}"), d, k, binomial(d as u64, k as u64), Some(lt))
            }
            VarietyKind::Rank1 { m1, m2 } => {
                need(m1 >= 1 && m2 >= 1, "rank1 needs m1, m2 >= 1")?;
                let deg = binomial((m1 + m2 - 2) as u64, (m1 - 1) as u64);
                (format!("rank1:m1={m1},m2={m2}"), m1 * m2, m1 + m2 - 1, deg, None)
            }
            VarietyKind::SymRank1 { m } => {
                need(m >= 1, "symrank1 needs m >= 1")?;
                need(m < 64, "symrank1 needs m < 64")?;
                (format!("symrank1:m={m}"), m * (m + 1) / 2, m, BigUint::from(1u64 << (m - 1)), None)
            }
            VarietyKind::TrigMoment { d } => {
                need(d >= 2 && d % 2 == 0, "trig moment curve needs an even d >= 2")?;
                // all quadratics in x_1..x_k, y_1..y_{k-1}; y_k is variable d-1
                let mut gens = Vec::new();
                for i in 0..d - 1 {
                    for j in i..d - 1 {
                        let mut e = vec![0u32; d];
                        e[i] += 1;
                        e[j] += 1;
                        gens.push(Monomial::new(e));
                    }
                }
                (format!("trig:d={d}"), d, 1, BigUint::from(d), Some(MonomialIdeal::new(d, gens)?))
            }
            VarietyKind::So3 => ("so3".to_string(), 9, 3, BigUint::from(8u32), None),
        };
        Ok(Self {
            name,
            kind,
            ambient_dim: ambient,
            intrinsic_dim: dim,
            degree,
            lt_generators: lt,
            membership_tol: DEFAULT_MEMBERSHIP_TOL,
        })
    }

    /// The graded order under which `lt_generators` is the leading-term ideal.
    pub fn monomial_order(&self) -> MonomialOrder {
        match self.kind {
            VarietyKind::TrigMoment { d } => {
                MonomialOrder::with_priority(OrderKind::Grlex, (0..d).collect()).expect("identity permutation")
            }
            _ => MonomialOrder::grevlex(self.ambient_dim),
        }
    }

    /// Closed-form Hilbert function.
    pub fn hf_closed_form(&self, n: u64) -> BigUint {
        let b = binomial;
        match self.kind {
            VarietyKind::FullSpace { d } => b(n + d as u64, d as u64),
            VarietyKind::Sphere { d } => {
                let d = d as u64;
                let lower = if n == 0 { BigUint::from(0u32) } else { b(n + d - 2, d - 1) };
                b(n + d - 1, d - 1) + lower
            }
            VarietyKind::Sparse { d, k } => {
                (0..=k as u64).map(|j| b(d as u64, j) * b(n, j)).sum()
            }
            VarietyKind::Rank1 { m1, m2 } => (0..=n)
                .map(|j| b(j + m1 as u64 - 1, m1 as u64 - 1) * b(j + m2 as u64 - 1, m2 as u64 - 1))
                .sum(),
            VarietyKind::SymRank1 { m } => (0..=n).map(|j| b(2 * j + m as u64 - 1, m as u64 - 1)).sum(),
            VarietyKind::TrigMoment { d } => BigUint::from(d as u64) * n + 1u32,
            VarietyKind::So3 => (BigUint::from(2 * n + 3) * (2 * n + 1) * (n + 1)) / 3u32,
        }
    }

    /// `count` points of `V ∩ B^d`, deterministic in `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<Point>> {
        if count == 0 {
            return Err(Error::invalid("sample count must be >= 1"));
        }
        let mut rng = seeded(seed);
        Ok((0..count).map(|_| self.sample_one(&mut rng)).collect())
    }

    pub(crate) fn sample_one(&self, rng: &mut StreamRng) -> Point {
        match self.kind {
            VarietyKind::FullSpace { d } => {
                let mut g = gaussian_vec(rng, d);
                let r: f64 = rng.random::<f64>().powf(1.0 / d as f64);
                scale_to(&mut g, r);
                g
            }
            VarietyKind::Sphere { d } => {
                let mut g = gaussian_vec(rng, d);
                scale_to(&mut g, 1.0);
                g
            }
            VarietyKind::Sparse { d, k } => {
                let mut x = vec![0.0; d];
                if k == 0 {
                    return x;
                }
                let mut g = gaussian_vec(rng, k);
                let r: f64 = rng.random::<f64>().powf(1.0 / k as f64);
                scale_to(&mut g, r);
                let mut support = index::sample(rng, d, k).into_vec();
                support.sort_unstable();
                for (slot, v) in support.into_iter().zip(g) {
                    x[slot] = v;
                }
                x
            }
            VarietyKind::Rank1 { m1, m2 } => {
                let mut u = gaussian_vec(rng, m1);
                let mut v = gaussian_vec(rng, m2);
                scale_to(&mut u, 1.0);
                scale_to(&mut v, 1.0);
                let s = unit_interval_open_left(rng);
                let mut x = Vec::with_capacity(m1 * m2);
                for ui in &u {
                    for vj in &v {
                        x.push(s * ui * vj);
                    }
                }
                x
            }
            VarietyKind::SymRank1 { m } => {
                let mut u = gaussian_vec(rng, m);
                scale_to(&mut u, 1.0);
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                let s = sign * unit_interval_open_left(rng);
                let mut x = Vec::with_capacity(m * (m + 1) / 2);
                for i in 0..m {
                    for j in i..m {
                        x.push(s * u[i] * u[j]);
                    }
                }
                x
            }
            VarietyKind::TrigMoment { d } => {
                let theta = rng.random::<f64>() * std::f64::consts::TAU;
                trig_point(d, theta)
            }
            VarietyKind::So3 => {
                let r = random_rotation(rng);
                let s = 1.0 / 3f64.sqrt();
                let mut x = Vec::with_capacity(9);
                for i in 0..3 {
                    for j in 0..3 {
                        x.push(s * r[(i, j)]);
                    }
                }
                x
            }
        }
    }

    /// Defining equations hold within `membership_tol` and `‖x‖ ≤ 1 + tol`.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: x.len() });
        }
        let tol = self.membership_tol;
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        if norm2.sqrt() > 1.0 + tol {
            return Ok(false);
        }
        let ok = match self.kind {
            VarietyKind::FullSpace { .. } => true,
            VarietyKind::Sphere { .. } => (norm2 - 1.0).abs() <= tol,
            VarietyKind::Sparse { k, .. } => x.iter().filter(|v| v.abs() > tol).count() <= k,
            VarietyKind::Rank1 { m1, m2 } => {
                minors_vanish(|i, j| x[i * m2 + j], m1, m2, tol)
            }
            VarietyKind::SymRank1 { m } => {
                let at = |i: usize, j: usize| {
                    let (a, b) = if i <= j { (i, j) } else { (j, i) };
                    x[sym_index(m, a, b)]
                };
                minors_vanish(at, m, m, tol)
            }
            VarietyKind::TrigMoment { d } => {
                let s = ((d / 2) as f64).sqrt();
                let raw: Vec<f64> = x.iter().map(|v| v * s).collect();
                trig_generator_residuals(&raw).iter().all(|g| g.residual.abs() <= tol)
            }
            VarietyKind::So3 => {
                let s = 3f64.sqrt();
                let r = Matrix3::from_fn(|i, j| x[3 * i + j] * s);
                let ortho = (r.transpose() * r - Matrix3::identity()).amax();
                ortho <= tol && (r.determinant() - 1.0).abs() <= tol
            }
        };
        Ok(ok)
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(msg))
    }
}

fn gaussian_vec(rng: &mut StreamRng, n: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        if g.iter().any(|v: &f64| *v != 0.0) {
            return g;
        }
    }
}

fn scale_to(v: &mut [f64], target: f64) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x *= target / n;
    }
}

/// Uniform on `(0, 1]`.
fn unit_interval_open_left(rng: &mut StreamRng) -> f64 {
    1.0 - rng.random::<f64>()
}

fn sym_index(m: usize, i: usize, j: usize) -> usize {
    // row-major upper triangle, i <= j
    i * m - i * (i + 1) / 2 + j
}

fn minors_vanish(at: impl Fn(usize, usize) -> f64, rows: usize, cols: usize, tol: f64) -> bool {
    for i in 0..rows {
        for k in i + 1..rows {
            for j in 0..cols {
                for l in j + 1..cols {
                    if (at(i, j) * at(k, l) - at(i, l) * at(k, j)).abs() > tol {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Point on the trigonometric moment curve, scaled into the unit ball.
pub fn trig_point(d: usize, theta: f64) -> Point {
    let k = d / 2;
    let s = 1.0 / (k as f64).sqrt();
    let mut x = Vec::with_capacity(d);
    for j in 1..=k {
        x.push(s * (j as f64 * theta).cos());
    }
    for j in 1..=k {
        x.push(s * (j as f64 * theta).sin());
    }
    x
}

/// Haar-distributed rotation from the QR factor of a Gaussian matrix.
pub(crate) fn random_rotation(rng: &mut StreamRng) -> Matrix3<f64> {
    loop {
        let g: Matrix3<f64> = Matrix3::from_fn(|_, _| StandardNormal.sample(rng));
        let qr = g.qr();
        let r = qr.r();
        if (0..3).any(|i| r[(i, i)].abs() < 1e-12) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..3 {
            if r[(j, j)] < 0.0 {
                for i in 0..3 {
                    q[(i, j)] = -q[(i, j)];
                }
            }
        }
        if q.determinant() < 0.0 {
            for i in 0..3 {
                q[(i, 0)] = -q[(i, 0)];
            }
        }
        return q;
    }
}

/// Which of the four quadratic families a trig-curve generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFamily {
    Squares,
    CosCos,
    CosSin,
    SinSin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigResidual {
    pub family: TrigFamily,
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

/// Residuals of the quadratic generators of the trig-curve ideal at an
/// unscaled point `(x_1..x_k, y_1..y_k)`. Harmonics above `k` are rewritten
/// through `cos jθ = cos(2k−j)θ − 2 sin kθ sin(j−k)θ` and
/// `sin jθ = 2 sin kθ cos(j−k)θ − sin(2k−j)θ` so every generator has degree 2.
pub fn trig_generator_residuals(p: &[f64]) -> Vec<TrigResidual> {
    let k = p.len() / 2;
    let x = |j: usize| if j == 0 { 1.0 } else { p[j - 1] };
    let y = |j: usize| if j == 0 { 0.0 } else { p[k + j - 1] };
    let c = |j: usize| if j <= k { x(j) } else { x(2 * k - j) - 2.0 * y(k) * y(j - k) };
    let s_pos = |j: usize| if j <= k { y(j) } else { 2.0 * y(k) * x(j - k) - y(2 * k - j) };
    let s = |j: isize| if j >= 0 { s_pos(j as usize) } else { -s_pos((-j) as usize) };

    let mut out = Vec::new();
    let mut push = |family, i, j, residual| out.push(TrigResidual { family, i, j, residual });
    for i in 1..k {
        push(TrigFamily::Squares, i, i, 2.0 * x(i) * x(i) - 1.0 - c(2 * i));
        push(TrigFamily::Squares, k + i, k + i, 2.0 * y(i) * y(i) - 1.0 + c(2 * i));
    }
    push(TrigFamily::Squares, k, k, x(k) * x(k) + y(k) * y(k) - 1.0);
    for i in 1..=k {
        for j in i + 1..=k {
            push(TrigFamily::CosCos, i, j, 2.0 * x(i) * x(j) - c(i + j) - c(j - i));
            push(TrigFamily::SinSin, i, j, 2.0 * y(i) * y(j) - c(j - i) + c(i + j));
        }
        for j in 1..=k {
            let r = 2.0 * x(i) * y(j) - s((i + j) as isize) + s(i as isize - j as isize);
            push(TrigFamily::CosSin, i, j, r);
        }
    }
    out
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for VarietySpec {
    type Err = Error;

    /// Parses `name` or `name:key=value,...`, e.g. `sparse:d=20,k=1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (s, None),
        };
        let mut params = BTreeMap::new();
        if let Some(rest) = rest {
            for part in rest.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::invalid(format!("expected key=value in `{part}`")))?;
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("`{v}` is not a non-negative integer")))?;
                if params.insert(k.trim().to_string(), v).is_some() {
                    return Err(Error::invalid(format!("parameter `{k}` given twice")));
                }
            }
        }
        builtin(name, &params)
    }
}
