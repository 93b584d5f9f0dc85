use std::cmp::Ordering;

use nalgebra::DMatrix;
use proptest::prelude::*;
use varkernel::hilbert::{binomial, hf_via_monomials};
use varkernel::polybasis::OrderKind;
use varkernel::rff::build;
use varkernel::*;

fn monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..5, nvars).prop_map(Monomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_size_is_binomial(d in 1usize..=8, n in 0u32..=8) {
        let b = enumerate_monomials(d, n, &MonomialOrder::grevlex(d)).unwrap();
        prop_assert_eq!(num_bigint::BigUint::from(b.len()), binomial(n as u64 + d as u64, d as u64));
    }

    #[test]
    fn orders_are_total_and_graded(
        (a, b, c) in (1usize..=4).prop_flat_map(|d| (monomial(d), monomial(d), monomial(d))),
        lex in any::<bool>(),
    ) {
        let d = a.nvars();
        let ord = if lex { MonomialOrder::grlex(d) } else { MonomialOrder::grevlex(d) };
        prop_assert_eq!(ord.compare(&a, &b), ord.compare(&b, &a).reverse());
        prop_assert_eq!(ord.compare(&a, &b) == Ordering::Equal, a == b);
        if ord.compare(&a, &b) == Ordering::Less && ord.compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(ord.compare(&a, &c), Ordering::Less);
        }
        if a.degree() < b.degree() {
            prop_assert_eq!(ord.compare(&a, &b), Ordering::Less);
        }
        // multiplying by a common monomial keeps the comparison
        let ac = Monomial::new(a.exponents().iter().zip(c.exponents()).map(|(x, y)| x + y).collect());
        let bc = Monomial::new(b.exponents().iter().zip(c.exponents()).map(|(x, y)| x + y).collect());
        prop_assert_eq!(ord.compare(&ac, &bc), ord.compare(&a, &b));
    }

    #[test]
    fn rank_ignores_permutations(seed in any::<u64>(), rank in 1usize..6) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        use rand::{Rng, SeedableRng, seq::SliceRandom};
        let u = DMatrix::from_fn(12, rank, |_, _| rng.random::<f64>() - 0.5);
        let v = DMatrix::from_fn(rank, 9, |_, _| rng.random::<f64>() - 0.5);
        let a = &u * &v;
        let mut rows: Vec<usize> = (0..12).collect();
        let mut cols: Vec<usize> = (0..9).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let p = DMatrix::from_fn(12, 9, |i, j| a[(rows[i], cols[j])]);
        prop_assert_eq!(numerical_rank(&a, 1e-9).unwrap(), rank);
        prop_assert_eq!(numerical_rank(&p, 1e-9).unwrap(), rank);
    }

    #[test]
    fn sparse_closed_form_matches_count(d in 1usize..=6, k in 0usize..=3, n in 0u32..=5) {
        prop_assume!(k < d);
        let v: VarietySpec = format!("sparse:d={d},k={k}").parse().unwrap();
        prop_assert_eq!(hf(&v, n).value, hf_via_monomials(&v, n).unwrap().value);
    }

    #[test]
    fn hf_never_exceeds_ambient(n in 0u32..=6, which in 0usize..7) {
        let name = ["full:d=3", "sphere:d=3", "sparse:d=6,k=2", "rank1:m1=2,m2=3", "symrank1:m=3", "trig:d=6", "so3"][which];
        let v: VarietySpec = name.parse().unwrap();
        let ambient = binomial(n as u64 + v.ambient_dim as u64, v.ambient_dim as u64);
        prop_assert!(hf(&v, n).value <= ambient);
        prop_assert!(hf(&v, n).value <= hf(&v, n + 1).value);
    }

    #[test]
    fn samples_lie_on_variety(seed in any::<u64>(), which in 0usize..7) {
        let name = ["full:d=3", "sphere:d=3", "sparse:d=6,k=2", "rank1:m1=2,m2=3", "symrank1:m=3", "trig:d=6", "so3"][which];
        let v: VarietySpec = name.parse().unwrap();
        for p in v.sample(20, seed).unwrap() {
            prop_assert!(v.contains(&p).unwrap());
        }
    }

    #[test]
    fn rff_is_symmetric_and_bounded(seed in any::<u64>(), r in 1usize..64) {
        let k = IsotropicKernel::gaussian(1.0, 5).unwrap();
        let m = build(&k, r, 0.5, seed).unwrap();
        let v: VarietySpec = "full:d=5".parse().unwrap();
        let pts = v.sample(6, seed ^ 1).unwrap();
        for x in &pts {
            for y in &pts {
                let a = m.eval(x, y).unwrap();
                prop_assert!((a - m.eval(y, x).unwrap()).abs() < 1e-12);
                prop_assert!(a.abs() <= 2.0 + 1e-12);
            }
        }
    }
}

#[test]
fn order_kinds_differ_only_within_a_degree() {
    let lex = MonomialOrder::with_priority(OrderKind::Grlex, vec![0, 1, 2]).unwrap();
    let rev = MonomialOrder::grevlex(3);
    let a = Monomial::new(vec![1, 0, 1]);
    let b = Monomial::new(vec![0, 2, 0]);
    assert_eq!(lex.compare(&a, &b), Ordering::Greater);
    assert_eq!(rev.compare(&a, &b), Ordering::Less);
}
