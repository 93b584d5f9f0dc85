//! Dense factorizations shared by the rank oracles, design selection and
//! the low-rank factorizations.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Outcome of a Householder QR with column pivoting.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    /// Column indices in the order they were pivoted in.
    pub pivots: Vec<usize>,
    /// Magnitudes |R_kk| of the triangular factor, non-increasing up to roundoff.
    pub r_diag: Vec<f64>,
}

impl PivotedQr {
    /// Number of pivots whose magnitude is at least `rel_tol` times the first.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let Some(&first) = self.r_diag.first() else {
            return 0;
        };
        if first == 0.0 {
            return 0;
        }
        self.r_diag.iter().take_while(|&&r| r >= rel_tol * first).count()
    }

    /// Sum of log |R_kk| over the pivots taken.
    pub fn log_volume(&self) -> f64 {
        self.r_diag.iter().map(|r| r.ln()).sum()
    }
}

/// Businger-Golub column-pivoted Householder QR, stopped after `max_steps`
/// pivots. Remaining column norms are recomputed every step rather than
/// downdated, which costs the same order as the reflector update.
pub fn pivoted_qr(a: &DMatrix<f64>, max_steps: usize) -> PivotedQr {
    let (m, n) = a.shape();
    let steps = max_steps.min(m).min(n);
    let mut w = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut r_diag = Vec::with_capacity(steps);
    let mut v = vec![0.0; m];

    for k in 0..steps {
        // pick the column with the largest trailing norm
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..n {
            let col = w.column(j);
            let s: f64 = col.rows_range(k..m).iter().map(|x| x * x).sum();
            if s > best_norm {
                best_norm = s;
                best = j;
            }
        }
        if best != k {
            w.swap_columns(k, best);
            perm.swap(k, best);
        }
        let norm = best_norm.max(0.0).sqrt();
        r_diag.push(norm);
        if norm == 0.0 {
            continue;
        }

        let x0 = w[(k, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for i in k..m {
            v[i] = w[(i, k)];
        }
        v[k] -= alpha;
        let vnorm2: f64 = v[k..m].iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..n {
            let mut dot = 0.0;
            for i in k..m {
                dot += v[i] * w[(i, j)];
            }
            let f = 2.0 * dot / vnorm2;
            if f != 0.0 {
                for i in k..m {
                    w[(i, j)] -= f * v[i];
                }
            }
        }
    }

    PivotedQr { pivots: perm[..steps].to_vec(), r_diag }
}

/// Orthonormal basis for the column span of `a` (thin Householder Q), taken
/// twice to restore orthogonality lost to ill-conditioning.
pub fn orthonormalize_columns(a: &DMatrix<f64>) -> DMatrix<f64> {
    let q = a.clone().qr().q();
    q.qr().q()
}

pub fn singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Vec::new();
    }
    // Reduce strongly rectangular inputs to their square triangular factor first.
    let core = if m > 2 * n {
        a.clone().qr().r()
    } else if n > 2 * m {
        a.transpose().qr().r()
    } else {
        a.clone()
    };
    let mut s: Vec<f64> = core.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Count of singular values at or above `rel_tol` times the largest.
pub fn numerical_rank(a: &DMatrix<f64>, rel_tol: f64) -> Result<usize> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::invalid(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let s = singular_values(a);
    let Some(&top) = s.first() else {
        return Ok(0);
    };
    if top == 0.0 {
        return Ok(0);
    }
    Ok(s.iter().filter(|&&x| x >= rel_tol * top).count())
}

/// Ratio of extreme singular values; infinite when singular.
pub fn condition_number(a: &DMatrix<f64>) -> f64 {
    let s = singular_values(a);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Diagonally pivoted Cholesky of a symmetric matrix, `h ≈ L Lᵀ` with `L`
/// of shape `n × rank`. Stops once the largest remaining diagonal falls
/// below `rel_tol` times the largest initial diagonal. Returns `None` when
/// the matrix shows a negative pivot beyond that tolerance (not PSD).
pub fn pivoted_cholesky(h: &DMatrix<f64>, rel_tol: f64) -> Option<DMatrix<f64>> {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "pivoted_cholesky needs a square matrix");
    let mut diag: Vec<f64> = (0..n).map(|i| h[(i, i)]).collect();
    let scale = diag.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
    if scale == 0.0 {
        return Some(DMatrix::zeros(n, 0));
    }
    let tol = rel_tol * scale;
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut used = vec![false; n];

    for _ in 0..n {
        let (p, &dp) = diag
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .max_by(|a, b| a.1.total_cmp(b.1))?;
        if dp <= tol {
            // what is left must be numerically zero, not negative
            if diag.iter().enumerate().any(|(i, &d)| !used[i] && d < -tol) {
                return None;
            }
            break;
        }
        used[p] = true;
        let root = dp.sqrt();
        let mut col = vec![0.0; n];
        for i in 0..n {
            if used[i] && i != p {
                continue;
            }
            let mut s = h[(i, p)];
            for c in &cols {
                s -= c[i] * c[p];
            }
            col[i] = s / root;
        }
        col[p] = root;
        for i in 0..n {
            if !used[i] {
                diag[i] -= col[i] * col[i];
            }
        }
        cols.push(col);
    }

    let r = cols.len();
    Some(DMatrix::from_fn(n, r, |i, j| cols[j][i]))
}

/// log |det a| via LU; `-inf` for singular input.
pub fn log_abs_det(a: &DMatrix<f64>) -> f64 {
    let lu = a.clone().lu();
    let u = lu.u();
    (0..u.nrows()).map(|i| u[(i, i)].abs().ln()).sum()
}
