use clap::ValueEnum;
use num_bigint::BigUint;
use varkernel::hilbert::{binomial, hf_via_monomials};
use varkernel::kernels::{taylor_sup_bound, ProfileKind};
use varkernel::lowrank::{approximate_on_variety_with, taylor_on_variety_with, timed, ApproxOptions};
use varkernel::norming::{audit_slack, norming_set};
use varkernel::rff::sup_error_profile;
use varkernel::rng::derive_seed;
use varkernel::{hf, hf_via_rank, nystrom, IsotropicKernel, VarietySpec};

use crate::report::{num, CliError, Table};
use crate::Command;

/// Largest Taylor degree searched when matching a requested rank.
const MAX_TAYLOR_DEGREE: u32 = 64;
const RANK_ORACLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    None,
    Rank,
    Monomials,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Taylor,
    Cheb,
    Nystrom,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(usage(msg))
    }
}

fn check_ranks(ranks: &[usize]) -> Result<(), CliError> {
    check(!ranks.is_empty(), "--ranks must list at least one rank")?;
    check(ranks.iter().all(|&r| r >= 1), "--ranks entries must be >= 1")
}

fn check_pairs(pairs: usize) -> Result<(), CliError> {
    check((1..=1_000_000).contains(&pairs), "pair counts must lie in 1..=1000000")
}

fn check_eps(eps: f64) -> Result<(), CliError> {
    check(eps > 0.0 && eps <= 1.0, "--eps must lie in (0, 1]")
}

/// Flag checks that need no computation. Runs before anything else so bad
/// input never costs a partial run.
fn validate(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Hilbert { .. } | Command::Fig3 { .. } => Ok(()),
        Command::Approx { kernel, method, eps, rank, audit_pairs, .. } => {
            check_pairs(*audit_pairs)?;
            match method {
                Method::Cheb => check(eps.is_some_and(|e| e > 0.0), "--method cheb needs a positive --eps"),
                Method::Taylor => {
                    check(kernel.kind == ProfileKind::Gaussian, "--method taylor needs a gaussian kernel")?;
                    check(rank.is_some_and(|r| r >= 1), "--method taylor needs --rank >= 1")
                }
                Method::Nystrom => check(rank.is_some_and(|r| r >= 1), "--method nystrom needs --rank >= 1"),
            }
        }
        Command::RffBench { kernel, ranks, pairs, eps, .. } => {
            check(kernel.kind == ProfileKind::Gaussian, "rff-bench needs a gaussian kernel")?;
            check_ranks(ranks)?;
            check_pairs(*pairs)?;
            check_eps(*eps)
        }
        Command::Fekete { a, trials, sup_sample, .. } => {
            check(*a >= 1, "--a must be >= 1")?;
            check(*trials >= 100, "--trials must be >= 100")?;
            check(*sup_sample >= 1, "--sup-sample must be >= 1")
        }
        Command::Fig1 { d, k, sigma, n_max, runs, jitter, pairs } => {
            check(*k < *d, "--k must be below --d")?;
            check(*sigma > 0.0, "--sigma must be positive")?;
            check(*n_max >= 1, "--n-max must be >= 1")?;
            check(*runs >= 1, "--runs must be >= 1")?;
            check(*jitter >= 0.0, "--jitter must be non-negative")?;
            check_pairs(*pairs)
        }
        Command::Fig2 { ks, ds, ranks, pairs, eps, sigma } => {
            check(!ks.is_empty() && !ds.is_empty(), "--ks and --ds must be non-empty")?;
            check(ks.iter().all(|k| ds.iter().all(|d| k < d)), "every k must be below every d")?;
            check(*sigma > 0.0, "--sigma must be positive")?;
            check_ranks(ranks)?;
            check_pairs(*pairs)?;
            check_eps(*eps)
        }
    }
}

pub fn execute(cmd: &Command, seed: u64) -> Result<Table, CliError> {
    validate(cmd)?;
    match cmd {
        Command::Hilbert { variety, n_max, verify } => hilbert(variety, *n_max, *verify, seed),
        Command::Approx { variety, kernel, method, eps, rank, audit_pairs } => {
            let kernel = kernel.instantiate(variety.ambient_dim)?;
            approx(variety, &kernel, *method, *eps, *rank, *audit_pairs, seed)
        }
        Command::RffBench { variety, kernel, ranks, pairs, eps } => {
            let kernel = kernel.instantiate(variety.ambient_dim)?;
            let mut t = Table::new(&["variety", "d", "k", "rank", "max_err", "q25", "q50", "q75"]);
            for row in sup_error_profile(&kernel, variety, ranks, *pairs, *eps, seed)? {
                t.push(vec![
                    variety.name.clone(),
                    variety.ambient_dim.to_string(),
                    variety.intrinsic_dim.to_string(),
                    row.rank.to_string(),
                    num(row.max_err),
                    num(row.q25),
                    num(row.q50),
                    num(row.q75),
                ]);
            }
            Ok(t)
        }
        Command::Fekete { variety, n, a, trials, sup_sample } => {
            let degree = n.checked_mul(*a).ok_or_else(|| usage("--n times --a overflows"))?;
            let m = usize::try_from(hf(variety, degree).value).map_err(|_| usage("HF(a·n) is too large"))?;
            let candidates = m.checked_mul(10).ok_or_else(|| usage("candidate count overflows"))?;
            let ns = norming_set(variety, *n, *a, candidates, seed)?;
            let audit = audit_slack(&ns, variety, *n, *trials, *sup_sample, derive_seed(seed, 1))?;
            let mut t = Table::new(&["variety", "n", "a", "set_size", "certified_slack", "empirical_slack"]);
            t.push(vec![
                variety.name.clone(),
                n.to_string(),
                a.to_string(),
                ns.size.to_string(),
                num(ns.certified_slack),
                num(audit.empirical_slack),
            ]);
            Ok(t)
        }
        Command::Fig1 { d, k, sigma, n_max, runs, jitter, pairs } => fig1(*d, *k, *sigma, *n_max, *runs, *jitter, *pairs, seed),
        Command::Fig2 { ks, ds, ranks, pairs, eps, sigma } => {
            let mut t = Table::new(&["k", "d", "rank", "max_err", "q25", "q50", "q75"]);
            for &k in ks {
                for &d in ds {
                    let v: VarietySpec = format!("sparse:d={d},k={k}").parse()?;
                    let kernel = IsotropicKernel::gaussian(*sigma, d)?;
                    let cell_seed = derive_seed(seed, ((k as u64) << 32) | d as u64);
                    for row in sup_error_profile(&kernel, &v, ranks, *pairs, *eps, cell_seed)? {
                        t.push(vec![
                            k.to_string(),
                            d.to_string(),
                            row.rank.to_string(),
                            num(row.max_err),
                            num(row.q25),
                            num(row.q50),
                            num(row.q75),
                        ]);
                    }
                }
            }
            Ok(t)
        }
        Command::Fig3 { n_max, trig_d } => {
            let trig: VarietySpec = format!("trig:d={trig_d}").parse()?;
            let so3: VarietySpec = "so3".parse()?;
            let mut t = Table::new(&["variety", "n", "hf", "ambient"]);
            for v in [&trig, &so3] {
                for n in 0..=*n_max {
                    let amb = binomial(n as u64 + v.ambient_dim as u64, v.ambient_dim as u64);
                    t.push(vec![v.name.clone(), n.to_string(), hf(v, n).value.to_string(), amb.to_string()]);
                }
            }
            Ok(t)
        }
    }
}

fn hilbert(v: &VarietySpec, n_max: u32, verify: Verify, seed: u64) -> Result<Table, CliError> {
    let mut t = Table::new(&["variety", "n", "hf_closed", "hf_monomials", "hf_rank", "ambient_bound"]);
    let want_monomials = matches!(verify, Verify::Monomials | Verify::Both) && v.lt_generators.is_some();
    let want_rank = matches!(verify, Verify::Rank | Verify::Both);
    for n in 0..=n_max {
        let closed = hf(v, n).value;
        let monomials = if want_monomials { hf_via_monomials(v, n)?.value.to_string() } else { String::new() };
        let rank = if want_rank {
            hf_via_rank(v, n, 4, derive_seed(seed, n as u64), RANK_ORACLE_TOL)?.value.to_string()
        } else {
            String::new()
        };
        let ambient = binomial(n as u64 + v.ambient_dim as u64, v.ambient_dim as u64);
        t.push(vec![v.name.clone(), n.to_string(), closed.to_string(), monomials, rank, ambient.to_string()]);
    }
    Ok(t)
}

/// Largest `n` with `HF(n) ≤ rank`.
fn taylor_degree_for_rank(v: &VarietySpec, rank: usize) -> u32 {
    let cap = BigUint::from(rank);
    (1..=MAX_TAYLOR_DEGREE).take_while(|&n| hf(v, n).value <= cap).last().unwrap_or(0)
}

fn approx(
    v: &VarietySpec,
    kernel: &IsotropicKernel,
    method: Method,
    eps: Option<f64>,
    rank: Option<usize>,
    audit_pairs: usize,
    seed: u64,
) -> Result<Table, CliError> {
    let opts = ApproxOptions { audit_pairs, ..Default::default() };
    let (fact, secs) = match method {
        Method::Cheb => timed(|| approximate_on_variety_with(kernel, v, eps.unwrap_or(1.0), seed, opts))?,
        Method::Taylor => {
            let n = taylor_degree_for_rank(v, rank.unwrap_or(1));
            timed(|| taylor_on_variety_with(v, n, kernel.sigma, seed, opts))?
        }
        Method::Nystrom => {
            let landmarks = v.sample(rank.unwrap_or(1), derive_seed(seed, 1))?;
            let (mut f, secs) = timed(|| nystrom(kernel, &landmarks, varkernel::lowrank::DEFAULT_JITTER))?;
            let k = *kernel;
            f.audit(v, move |x, y| k.eval(x, y), audit_pairs, derive_seed(seed, 0xA0D1), None)?;
            (f, secs)
        }
    };
    let cert = fact.error_certificate.as_ref().ok_or_else(|| usage("no audit was run"))?;
    let certified = match (method, cert.certified_bound) {
        (Method::Taylor, _) => num(taylor_sup_bound(taylor_degree_for_rank(v, rank.unwrap_or(1)) as usize, kernel.sigma)),
        (_, Some(b)) => num(b),
        (_, None) => String::new(),
    };
    let name = match method {
        Method::Taylor => "taylor",
        Method::Cheb => "cheb",
        Method::Nystrom => "nystrom",
    };
    let mut t = Table::new(&["method", "rank", "measured_sup_error", "certified_eps", "build_time"]);
    t.push(vec![name.into(), fact.rank.to_string(), num(cert.measured_sup_error), certified, num(secs)]);
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
fn fig1(d: usize, k: usize, sigma: f64, n_max: u32, runs: usize, jitter: f64, pairs: usize, seed: u64) -> Result<Table, CliError> {
    let v: VarietySpec = format!("sparse:d={d},k={k}").parse()?;
    let kernel = IsotropicKernel::gaussian(sigma, d)?;
    let audit_seed = derive_seed(seed, 0xA0D1);
    let target = |x: &[f64], y: &[f64]| kernel.eval(x, y);
    let mut t = Table::new(&["n", "rank", "taylor_sup_err", "taylor_certificate", "nystrom_mean_sup_err", "ratio"]);
    for n in 1..=n_max {
        let opts = ApproxOptions { audit_pairs: 0, ..Default::default() };
        let taylor = taylor_on_variety_with(&v, n, sigma, seed, opts)?;
        let t_err = varkernel::audit::sup_error(&v, pairs, audit_seed, target, |xs, ys| taylor.eval_pairs(xs, ys))?;
        let mut total = 0.0;
        for run in 0..runs as u64 {
            let landmarks = v.sample(taylor.rank, derive_seed(seed, (n as u64) << 32 | run))?;
            let f = nystrom(&kernel, &landmarks, jitter)?;
            total += varkernel::audit::sup_error(&v, pairs, audit_seed, target, |xs, ys| f.eval_pairs(xs, ys))?;
        }
        let mean = total / runs as f64;
        t.push(vec![
            n.to_string(),
            taylor.rank.to_string(),
            num(t_err),
            num(taylor_sup_bound(n as usize, sigma)),
            num(mean),
            num(mean / t_err),
        ]);
    }
    Ok(t)
}
