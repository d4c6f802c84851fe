use intertwine::jack::golden::parse_golden;
use intertwine::jack::{apply_operator, JackEngine, Operator, Partition, SymmetricPoly};
use intertwine::scalar::{Rational, Scalar};
use proptest::prelude::*;

/// Expansions written by `data/jack_oracle.py` (Gram-Schmidt in power sums).
#[test]
fn golden_expansions_match_the_power_sum_oracle() {
    let records = parse_golden(include_str!("data/jack_golden.txt")).unwrap();
    assert_eq!(records.len(), 155);
    for r in &records {
        let engine = JackEngine::new(r.theta.clone()).unwrap();
        let j = engine.expand(&r.lambda, r.nvars).unwrap();
        let ours: Vec<(Partition, Rational)> =
            j.terms().filter(|(_, c)| **c != Rational::from_i64(0)).map(|(m, c)| (m.clone(), c.clone())).collect();
        let theirs: Vec<(Partition, Rational)> = r.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        assert_eq!(ours.len(), theirs.len(), "{} n={} θ={}", r.lambda, r.nvars, r.theta);
        for (m, c) in &theirs {
            assert_eq!(&j.coeff(m), c, "{} n={} θ={} at {m}", r.lambda, r.nvars, r.theta);
        }
    }
}

fn arb_partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn arb_theta() -> impl Strategy<Value = Rational> {
    (1i64..=8, 1i64..=4).prop_map(|(p, q)| Rational::from_ratio(p, q))
}

fn case() -> impl Strategy<Value = (Partition, usize, Rational)> {
    (arb_partition(3, 3), 0usize..=1, arb_theta())
        .prop_filter("weight", |(l, _, _)| l.weight() <= 6)
        .prop_map(|(l, extra, t)| {
            let n = l.len().max(1) + extra;
            (l, n, t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jack_is_an_eigenfunction_of_d((lambda, n, theta) in case()) {
        let engine = JackEngine::new(theta.clone()).unwrap();
        let j = engine.expand(&lambda, n).unwrap();
        let dj = apply_operator(Operator::D, &j, &theta);
        let ev = engine.eval_eigenvalue(&lambda, n).unwrap();
        prop_assert_eq!(dj, j.scaled(&ev));
        // B3 is the degree operator
        let b3 = apply_operator(Operator::B3, &j, &theta);
        prop_assert_eq!(b3, j.scaled(&Rational::from_i64(lambda.weight() as i64)));
    }

    #[test]
    fn support_is_dominated_and_norm_matches((lambda, n, theta) in case()) {
        let engine = JackEngine::new(theta.clone()).unwrap();
        let j = engine.expand(&lambda, n).unwrap();
        for (mu, c) in j.terms() {
            prop_assert!(*c == Rational::from_i64(0) || lambda.dominates(mu), "{} has {}", lambda, mu);
        }
        let ones = vec![Rational::from_i64(1); n];
        prop_assert_eq!(j.eval(&ones).unwrap(), engine.norm_at_ones(&lambda, n));
    }

    #[test]
    fn setting_a_variable_to_zero_drops_it((lambda, n, theta) in case()) {
        let engine = JackEngine::new(theta).unwrap();
        let big = engine.expand(&lambda, n + 1).unwrap();
        let small = engine.expand(&lambda, n).unwrap();
        let mut cut = SymmetricPoly::zero(n);
        for (mu, c) in big.terms() {
            if mu.len() <= n {
                cut.add_term(mu.clone(), c.clone());
            }
        }
        prop_assert_eq!(cut, (*small).clone());
    }

    #[test]
    fn eval_shifts_by_two_theta_weight((lambda, n, theta) in case()) {
        let engine = JackEngine::new(theta.clone()).unwrap();
        let d = engine.eval_eigenvalue(&lambda, n + 1).unwrap() - engine.eval_eigenvalue(&lambda, n).unwrap();
        prop_assert_eq!(d, Rational::from_i64(2 * lambda.weight() as i64) * theta);
    }

    #[test]
    fn conjugation_reverses_dominance(a in arb_partition(4, 4), b in arb_partition(4, 4)) {
        prop_assume!(a.weight() == b.weight());
        prop_assert_eq!(a.dominates(&b), b.conjugate().dominates(&a.conjugate()));
    }
}

#[test]
fn float_and_exact_engines_agree() {
    let exact = JackEngine::new(Rational::from_ratio(3, 4)).unwrap();
    let float = JackEngine::new(0.75f64).unwrap();
    for lambda in Partition::up_to_weight(5, 3) {
        let x = [0.3, 1.1, 2.0];
        let e = exact.eval(&lambda, &x.map(Rational::from_f64)).unwrap().to_f64();
        let f = float.eval(&lambda, &x).unwrap();
        assert!((e - f).abs() <= 1e-12 * e.abs().max(1.0), "{lambda}: {e} vs {f}");
    }
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(JackEngine::new(Rational::from_i64(0)).is_err());
    let engine = JackEngine::new(1.0).unwrap();
    assert!(engine.expand(&intertwine::part![1, 1, 1], 2).is_err());
    assert!(engine.eval(&intertwine::part![1], &[1.0, 2.0, 3.0]).is_ok());
    assert!("(1,2)".parse::<Partition>().is_err());
}
