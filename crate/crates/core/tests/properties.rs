mod common;

use common::{int, p_words, q_words};
use isotuple::checkers::{check_minf, check_mp_defect, SampleConfig, Verdict};
use isotuple::defect::{forward_difference, p_ell, q_value, DefectSequence};
use isotuple::generators::{gen_isometry, gen_nilpotent, gen_paper_structure, random_tuple};
use isotuple::multiindex::{binomial, enumerate, enumerate_up_to, factorial, pochhammer};
use isotuple::optuple::tuple_to_file;
use isotuple::space::{format_rational, norm, parse_rational, sample_unit_sphere, small_rational};
use isotuple::{AnyTuple, Matrix, NormSpec, OperatorTuple, Rational};
use num::{BigUint, ToPrimitive};
use proptest::prelude::*;

fn rational_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(int).collect())
}

/// Even seeds give commuting tuples, which the word oracle needs.
fn commuting(n: usize, d: usize, seed: u64) -> OperatorTuple<Rational> {
    random_tuple(n, d, seed & !1).unwrap()
}

fn tuple_and_vector() -> impl Strategy<Value = (OperatorTuple<Rational>, Vec<Rational>)> {
    (1usize..=3, 1usize..=3, any::<u64>()).prop_flat_map(|(n, d, seed)| {
        (Just(commuting(n, d, seed)), rational_vec(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multinomials_sum_to_powers(d in 1usize..=4, k in 0usize..=6) {
        let level = enumerate(d, k).unwrap();
        prop_assert_eq!(level.len() as u64, binomial((k + d - 1) as u64, (d - 1) as u64).to_u64().unwrap());
        let total: BigUint = level.iter().map(|a| a.multinomial()).sum();
        prop_assert_eq!(total, BigUint::from(d).pow(k as u32));
        prop_assert!(level.iter().all(|a| a.order() == k && a.len() == d));
        prop_assert_eq!(enumerate_up_to(d, k).unwrap().len(), (0..=k).map(|j| enumerate(d, j).unwrap().len()).sum::<usize>());
    }

    #[test]
    fn pochhammer_is_falling_factorial(n in 0u64..=15, k in 0u64..=15) {
        let expected = if k > n { BigUint::from(0u32) } else { factorial(n) / factorial(n - k) };
        prop_assert_eq!(pochhammer(n, k), expected);
    }

    #[test]
    fn q_value_matches_word_sum((t, x) in tuple_and_vector(), n in 0usize..=4) {
        prop_assert_eq!(q_value(&t, 2.0, &x, n).unwrap(), q_words(&t, &x, n));
    }

    #[test]
    fn p_ell_is_forward_difference_at_zero((t, x) in tuple_and_vector(), ell in 0usize..=6) {
        let seq = DefectSequence::compute(&t, 2.0, &x, ell).unwrap();
        let diff = forward_difference(&seq.values, ell).unwrap();
        let p = p_ell(&t, 2.0, &x, ell).unwrap();
        prop_assert_eq!(&diff[0], &p);
        if ell <= 4 {
            prop_assert_eq!(p, p_words(&t, &x, ell));
        }
    }

    #[test]
    fn mp_isometry_is_monotone_in_m(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=3, m in 1usize..=3) {
        let cfg = SampleConfig::new(32, seed);
        let t = commuting(n, d, seed);
        if check_mp_defect(&t, m, 2.0, &cfg).unwrap().passed() {
            prop_assert!(check_mp_defect(&t, m + 1, 2.0, &cfg).unwrap().passed());
        }
        let s = gen_paper_structure(n.max(m) + 1, 2, m, seed).unwrap();
        for k in s.m..=s.m + 2 {
            prop_assert!(check_mp_defect(&s.tuple, k, 2.0, &cfg).unwrap().passed());
        }
    }

    #[test]
    fn exact_checks_are_never_inconclusive(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=3, m in 1usize..=3) {
        let cfg = SampleConfig::new(16, seed);
        let t = random_tuple(n, d, seed).unwrap();
        prop_assert_ne!(check_mp_defect(&t, m, 2.0, &cfg).unwrap().verdict, Verdict::Inconclusive);
        prop_assert_ne!(check_minf(&t, m, &cfg).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn sphere_samples_have_unit_norm(seed in any::<u64>(), dim in 1usize..=6, q in 0.5f64..6.0) {
        let spec = NormSpec::new(q, dim).unwrap();
        let xs = sample_unit_sphere(seed, 20, &spec);
        prop_assert_eq!(xs.len(), 20);
        for x in &xs {
            prop_assert!((norm(x, &spec) - 1.0).abs() <= 1e-12);
        }
        prop_assert_eq!(xs, sample_unit_sphere(seed, 20, &spec));
    }

    #[test]
    fn rationals_print_and_parse(num in -10_000i64..10_000, den in 1i64..1000) {
        let r = small_rational(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn rational_files_round_trip(seed in any::<u64>(), n in 1usize..=4, d in 1usize..=3) {
        let t = random_tuple(n, d, seed).unwrap();
        let text = tuple_to_file(&t).to_json();
        prop_assert_eq!(AnyTuple::from_json(&text).unwrap(), AnyTuple::from(t));
    }

    #[test]
    fn float_files_round_trip(entries in prop::collection::vec(-1e6f64..1e6, 4)) {
        let m = Matrix::from_rows(vec![entries[..2].to_vec(), entries[2..].to_vec()]).unwrap();
        let t = OperatorTuple::new(vec![m]).unwrap();
        let text = tuple_to_file(&t).to_json();
        prop_assert_eq!(AnyTuple::from_json(&text).unwrap(), AnyTuple::from(t));
    }

    #[test]
    fn isometry_generator_preserves_norms(n in 1usize..=6, seed in any::<u64>(), x in rational_vec(6)) {
        let u = gen_isometry(n, seed).unwrap();
        let x = &x[..n];
        let ux = u.mul_vec(x).unwrap();
        for q in [1.0, 2.0, 3.0] {
            let spec = NormSpec::new(q, n).unwrap();
            prop_assert!((norm(&ux, &spec) - norm(x, &spec)).abs() <= 1e-12 * norm(x, &spec).max(1.0));
        }
    }

    #[test]
    fn nilpotent_generator_has_exact_order(n in 1usize..=6, m in 1usize..=6, seed in any::<u64>()) {
        prop_assume!(m <= n);
        let a = gen_nilpotent(n, m, seed).unwrap();
        prop_assert!(a.pow(m).unwrap().is_zero());
        prop_assert!(!a.pow(m - 1).unwrap().is_zero());
    }

    #[test]
    fn structured_tuples_meet_their_contract(n in 1usize..=6, d in 2usize..=3, m in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(m == 1 || n >= m);
        let s = gen_paper_structure(n, d, m, seed).unwrap();
        prop_assert!(s.m <= m && s.mu == 1 && s.j0 < d);
        prop_assert!(s.tuple.validate().passed());
        let cfg = SampleConfig::new(24, seed);
        prop_assert!(check_mp_defect(&s.tuple, s.m, 2.0, &cfg).unwrap().passed());
        prop_assert!(check_minf(&s.tuple, s.mu, &cfg).unwrap().passed());
        prop_assert!(check_minf(&s.tuple.to_float(), s.mu, &cfg).unwrap().passed());
    }
}

#[test]
fn infeasible_structures_are_rejected() {
    assert!(gen_paper_structure(3, 1, 2, 0).is_err());
    assert!(gen_paper_structure(2, 2, 3, 0).is_err());
    assert!(gen_nilpotent(2, 3, 0).is_err());
}

#[test]
fn float_sample_prefix_is_basis_then_signs() {
    let t: OperatorTuple<f64> = common::shift_pair();
    let xs = SampleConfig::new(6, 0).vectors(&t);
    assert_eq!(xs[0], vec![1.0, 0.0]);
    assert_eq!(xs[1], vec![0.0, 1.0]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((xs[2][0] - h).abs() < 1e-15 && (xs[2][1] - h).abs() < 1e-15);
}
