//! Monte-Carlo error audits over sampled pairs of variety points.
//!
//! Pairs are drawn in fixed-size batches, each from its own derived seed, so
//! the parallel result equals the serial one bit for bit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polybasis::Point;
use crate::rng::{derive_seed, seeded};
use crate::varieties::VarietySpec;

pub const AUDIT_BATCH: usize = 4096;

/// Default number of audited pairs.
pub const DEFAULT_AUDIT_PAIRS: usize = 100_000;

/// Pairs `(x, y)` for batch `b` of an audit seeded with `seed`.
pub fn sample_batch(spec: &VarietySpec, size: usize, seed: u64, batch: u64) -> (Vec<Point>, Vec<Point>) {
    let mut rng = seeded(derive_seed(seed, batch));
    let xs = (0..size).map(|_| spec.sample_one(&mut rng)).collect();
    let ys = (0..size).map(|_| spec.sample_one(&mut rng)).collect();
    (xs, ys)
}

fn batch_sizes(pairs: usize) -> Vec<usize> {
    let full = pairs / AUDIT_BATCH;
    let mut sizes = vec![AUDIT_BATCH; full];
    if pairs % AUDIT_BATCH != 0 {
        sizes.push(pairs % AUDIT_BATCH);
    }
    sizes
}

/// Absolute errors `|target − approx|` at `pairs` sampled pairs, in batch
/// order. `approx` maps a whole batch at once.
pub fn pair_errors<T, A>(spec: &VarietySpec, pairs: usize, seed: u64, target: T, approx: A) -> Result<Vec<f64>>
where
    T: Fn(&[f64], &[f64]) -> f64 + Sync,
    A: Fn(&[Point], &[Point]) -> Result<Vec<f64>> + Sync,
{
    if pairs == 0 {
        return Err(Error::invalid("audit needs at least one pair"));
    }
    let per_batch: Vec<Result<Vec<f64>>> = batch_sizes(pairs)
        .into_par_iter()
        .enumerate()
        .map(|(b, size)| {
            let (xs, ys) = sample_batch(spec, size, seed, b as u64);
            let approx = approx(&xs, &ys)?;
            Ok(xs.iter().zip(&ys).zip(approx).map(|((x, y), a)| (target(x, y) - a).abs()).collect())
        })
        .collect();
    let mut out = Vec::with_capacity(pairs);
    for b in per_batch {
        out.extend(b?);
    }
    Ok(out)
}

/// Largest absolute error over the audited pairs.
pub fn sup_error<T, A>(spec: &VarietySpec, pairs: usize, seed: u64, target: T, approx: A) -> Result<f64>
where
    T: Fn(&[f64], &[f64]) -> f64 + Sync,
    A: Fn(&[Point], &[Point]) -> Result<Vec<f64>> + Sync,
{
    let errs = pair_errors(spec, pairs, seed, target, approx)?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

/// Linear-interpolation quantile of sorted data (the usual "type 7").
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}
