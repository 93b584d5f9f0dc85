//! Shared inputs for the benchmarks.

use varkernel::{Point, VarietySpec};

/// A variety from its registry string, panicking on bad input.
pub fn variety(s: &str) -> VarietySpec {
    s.parse().unwrap_or_else(|e| panic!("bad variety `{s}`: {e}"))
}

/// `count` pairs of points sampled from `v`.
pub fn pairs(v: &VarietySpec, count: usize, seed: u64) -> (Vec<Point>, Vec<Point>) {
    let pts = v.sample(2 * count, seed).expect("sampling");
    let (a, b) = pts.split_at(count);
    (a.to_vec(), b.to_vec())
}
