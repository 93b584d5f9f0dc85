use varkernel::lowrank::{approximate_on_variety_with, taylor_on_variety_with, ApproxOptions};
use varkernel::norming::{approx_fekete, audit_slack, norming_set};
use varkernel::rff::{build, sup_error_profile};
use varkernel::*;

fn opts(pairs: usize) -> ApproxOptions {
    ApproxOptions { audit_pairs: pairs, ..Default::default() }
}

#[test]
fn chebyshev_pipeline_meets_target_on_sphere() {
    let v: VarietySpec = "sphere:d=3".parse().unwrap();
    let k = IsotropicKernel::gaussian(1.0, 3).unwrap();
    let f = approximate_on_variety_with(&k, &v, 1e-5, 9, opts(5000)).unwrap();
    let cert = f.error_certificate.clone().unwrap();
    assert!(cert.measured_sup_error <= 1e-5, "{cert:?}");
    assert_eq!(cert.pairs, 5000);
    assert!(!f.is_symmetric());
}

#[test]
fn cauchy_pipeline_runs() {
    let v: VarietySpec = "trig:d=4".parse().unwrap();
    let k = IsotropicKernel::cauchy(1.0, 4).unwrap();
    let f = approximate_on_variety_with(&k, &v, 1e-3, 2, opts(2000)).unwrap();
    assert!(f.error_certificate.unwrap().measured_sup_error <= 1e-3);
}

#[test]
fn same_seed_same_factorization() {
    let v: VarietySpec = "so3".parse().unwrap();
    let a = taylor_on_variety_with(&v, 2, 1.0, 4, opts(1000)).unwrap();
    let b = taylor_on_variety_with(&v, 2, 1.0, 4, opts(1000)).unwrap();
    let pts = v.sample(5, 1).unwrap();
    let (fa, _) = a.feature_matrices(&pts).unwrap();
    let (fb, _) = b.feature_matrices(&pts).unwrap();
    assert_eq!(fa, fb);
    assert_eq!(a.error_certificate, b.error_certificate);
}

#[test]
fn validation_errors_are_flagged() {
    let v: VarietySpec = "sphere:d=3".parse().unwrap();
    let k = IsotropicKernel::gaussian(1.0, 4).unwrap();
    assert!(approximate_on_variety_with(&k, &v, 1e-3, 0, opts(10)).unwrap_err().is_validation());
    assert!("sphere:q=3".parse::<VarietySpec>().unwrap_err().is_validation());
    assert!(approx_fekete(&v, 2, 10, 0).unwrap_err().is_validation());
    let c = IsotropicKernel::cauchy(1.0, 3).unwrap();
    assert!(build(&c, 10, 0.1, 0).is_err());
}

#[test]
fn rff_profile_rows_are_ordered() {
    let v: VarietySpec = "sparse:d=16,k=2".parse().unwrap();
    let k = IsotropicKernel::gaussian(1.0, 16).unwrap();
    let rows = sup_error_profile(&k, &v, &[16, 256], 4000, 0.1, 3).unwrap();
    for r in &rows {
        assert!(r.q25 <= r.q50 && r.q50 <= r.q75 && r.q75 <= r.max_err);
    }
    assert!(rows[1].max_err < rows[0].max_err);
}

#[test]
fn tensored_norming_set_is_larger() {
    let v: VarietySpec = "trig:d=4".parse().unwrap();
    let plain = norming_set(&v, 2, 1, 90, 1).unwrap();
    let tensored = norming_set(&v, 2, 3, 250, 1).unwrap();
    assert!(tensored.size > plain.size);
    assert!(tensored.certified_slack < plain.certified_slack);
    let a = audit_slack(&tensored, &v, 2, 100, 2000, 3).unwrap();
    assert!(a.empirical_slack <= a.certified_slack);
}
