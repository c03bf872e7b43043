use mutdim::billingsley::{
    billingsley_mdim, check_conditions, equivalent_measure, f_map, is_equivalent, normalizability_ratio_trace,
    ConditionId, EquivalenceProblem,
};
use mutdim::estimate::geometric_schedule;
use mutdim::genseq::freq_sequence;
use mutdim::info::cross_entropy;
use mutdim::measures::{JointPmf, Pmf};
use proptest::prelude::*;

fn bin(p0: f64) -> Pmf<f64> {
    Pmf::binary(p0).unwrap()
}

/// `(β₁(0), β₂(0))` pairs drawn inside one of the five orderings.
fn betas() -> impl Strategy<Value = (ConditionId, f64, f64)> {
    let eps = 1e-6;
    prop_oneof![
        (0.5 + eps..1.0 - eps).prop_flat_map(move |p| (Just(ConditionId::One), Just(p), eps..(1.0 - p - eps))),
        (eps..0.5 - eps).prop_flat_map(move |p| (Just(ConditionId::Two), Just(p), (1.0 - p + eps)..1.0 - eps)),
        (eps..0.5 - eps).prop_flat_map(move |p| (Just(ConditionId::Three), Just(p), eps..p - eps)),
        (0.5 + eps..1.0 - eps).prop_flat_map(move |p| (Just(ConditionId::Four), Just(p), p + eps..1.0 - eps)),
        (eps..1.0 - eps)
            .prop_filter("non-uniform", move |q: &f64| (q - 0.5).abs() > eps)
            .prop_map(|q| (ConditionId::Five, 0.5, q)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn f_maps_unit_interval_inside((cond, b1, b2) in betas(), x in 0.0f64..=1.0) {
        let (b1, b2) = (bin(b1), bin(b2));
        prop_assert_eq!(check_conditions(&b1, &b2).unwrap(), cond);
        for x in [0.0, x, 1.0] {
            let f = f_map(x, &b1, &b2).unwrap();
            prop_assert!(f > 0.0 && f < 1.0, "f({}) = {}", x, f);
        }
    }

    #[test]
    fn solver_round_trip((_c, b1, b2) in betas(), a in 0.0f64..=1.0) {
        let p = EquivalenceProblem { alpha1: bin(a), beta1: bin(b1), beta2: bin(b2) };
        let a2 = equivalent_measure(&p).unwrap();
        prop_assert!(is_equivalent(&p.alpha1, &a2, &p.beta1, &p.beta2).unwrap());
    }

    #[test]
    fn mdim_denominators_agree_and_value_in_unit_interval(
        (_c, b1, b2) in betas(),
        a in 0.01f64..0.99,
        t in 0.0f64..=1.0,
    ) {
        let (beta1, beta2) = (bin(b1), bin(b2));
        let p = EquivalenceProblem { alpha1: bin(a), beta1: beta1.clone(), beta2: beta2.clone() };
        let b = equivalent_measure(&p).unwrap().prob(0);
        let (lo, hi) = ((a + b - 1.0).max(0.0), a.min(b));
        let p00 = lo + t * (hi - lo);
        let flat = vec![p00, a - p00, b - p00, 1.0 - a - b + p00].into_iter().map(|x| x.max(0.0)).collect();
        let j = JointPmf::new(2, flat).unwrap();
        let v = billingsley_mdim(&j, &beta1, &beta2).unwrap();
        let d1 = cross_entropy(j.first(), &beta1).unwrap().value();
        let d2 = cross_entropy(j.second(), &beta2).unwrap().value();
        prop_assert!((d1 - d2).abs() <= 1e-9);
        prop_assert!((0.0..=1.0).contains(&v), "{}", v);
    }
}

#[test]
fn solution_is_unique_on_a_grid() {
    let step = 1e-4;
    let grid: Vec<f64> = (0..=10_000).map(|i| i as f64 * step).collect();
    let cases = [(0.4, 0.2, 0.0), (0.4, 0.2, 0.7), (0.5, 0.25, 0.3), (0.8, 0.1, 1.0), (0.3, 0.9, 0.45), (0.9, 0.95, 0.2)];
    for (b1, b2, a) in cases {
        let (beta1, beta2, alpha1) = (bin(b1), bin(b2), bin(a));
        assert_ne!(check_conditions(&beta1, &beta2).unwrap(), ConditionId::None);
        let x = equivalent_measure(&EquivalenceProblem { alpha1: alpha1.clone(), beta1: beta1.clone(), beta2: beta2.clone() })
            .unwrap()
            .prob(0);
        let target = cross_entropy(&alpha1, &beta1).unwrap().value();
        let gap = |y: f64| cross_entropy(&bin(y), &beta2).unwrap().value() - target;
        let hits: Vec<f64> = grid
            .iter()
            .copied()
            .filter(|&y| is_equivalent(&alpha1, &bin(y), &beta1, &beta2).unwrap())
            .collect();
        assert!(hits.iter().all(|&y| (y - x).abs() <= step), "{hits:?} around {x}");
        let sign_changes = grid.windows(2).filter(|w| gap(w[0]).signum() != gap(w[1]).signum()).count();
        assert!(sign_changes <= 1, "{sign_changes} sign changes for {b1},{b2},{a}");
    }
}

#[test]
fn equivalent_freq_pair_is_normalizable() {
    let n = 100_000;
    let schedule = geometric_schedule(n);
    for (a, b1, b2) in [(1.0, 0.4, 0.2), (0.0, 0.4, 0.2), (0.5, 0.5, 0.25), (0.77, 0.7, 0.1)] {
        let (alpha1, beta1, beta2) = (bin(a), bin(b1), bin(b2));
        let alpha2 = equivalent_measure(&EquivalenceProblem { alpha1: alpha1.clone(), beta1: beta1.clone(), beta2: beta2.clone() })
            .unwrap();
        let u = freq_sequence(&alpha1, n);
        let w = freq_sequence(&alpha2, n);
        let trace = normalizability_ratio_trace(&u, &w, &beta1, &beta2, &schedule).unwrap();
        let r = trace.last().unwrap().1;
        assert!((r - 1.0).abs() < 1e-3, "{a},{b1},{b2}: {r}");
    }
}

#[test]
fn control_pair_stays_away_from_one() {
    let n = 100_000;
    let (a, b1, b2) = (bin(0.9), bin(0.4), bin(0.2));
    let u = freq_sequence(&a, n);
    let trace = normalizability_ratio_trace(&u, &u, &b1, &b2, &geometric_schedule(n)).unwrap();
    let r = trace.last().unwrap().1;
    let limit = cross_entropy(&a, &b1).unwrap().value() / cross_entropy(&a, &b2).unwrap().value();
    assert!((r - limit).abs() < 1e-3);
    assert!((r - 1.0).abs() >= 0.05);
    assert!(trace.values().iter().all(|v| (v - 1.0).abs() >= 0.05));
}
