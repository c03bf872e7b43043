use mutdim::info::hellinger;
use mutdim::kakutani::{classify_schedule, hellinger_partial_sums, hellinger_sq_coupled, SumTag, H2_OVER_RHO2_MAX};
use mutdim::measures::{rho_joint, RhoSchedule};
use proptest::prelude::*;

// mpmath, 30 digits, literal 2 − √(1+ρ) − √(1−ρ) summed over n < 10⁶ with ρ = 1/√(n+2)
const INV_SQRT_2_SUM_1E6: f64 = 3.410_094_053_478_889;
// Σ_{n<10⁶} 1/(n+2)
const HARMONIC_SHIFTED_1E6: f64 = 13.392_727_722_864_724;

proptest! {
    #[test]
    fn coupled_h2_is_flattened_hellinger_squared(rho in -1.0f64..=1.0) {
        let j = rho_joint(rho).unwrap();
        let h = hellinger(&j.product_of_marginals().flatten(), &j.flatten()).unwrap();
        prop_assert!((hellinger_sq_coupled(rho).unwrap() - h * h).abs() < 1e-12);
    }

    #[test]
    fn partial_sums_nondecreasing(rho0 in -1.0f64..=1.0, ratio in -0.99f64..0.99, offset in 1.0f64..50.0) {
        for s in [
            RhoSchedule::Geometric { rho0, ratio },
            RhoSchedule::InverseSqrt { offset },
            RhoSchedule::Harmonic { offset },
            RhoSchedule::Const(rho0),
        ] {
            let sums = hellinger_partial_sums(&s, 300).unwrap();
            prop_assert!(sums.windows(2).all(|w| w[1] >= w[0]));
        }
    }
}

#[test]
fn h2_between_quarter_rho_squared_and_chord() {
    let cap = hellinger_sq_coupled(0.9).unwrap() / 0.81;
    for i in -900..=900 {
        let r = i as f64 / 1000.0;
        let h = hellinger_sq_coupled(r).unwrap();
        assert!(h >= r * r / 4.0 - 1e-16, "rho {r}");
        assert!(h <= cap * r * r + 1e-16, "rho {r}");
    }
    for i in -1000..=1000 {
        let r = i as f64 / 1000.0;
        assert!(hellinger_sq_coupled(r).unwrap() <= H2_OVER_RHO2_MAX * r * r + 1e-16);
    }
}

#[test]
fn inverse_sqrt_sum_at_one_million() {
    let s = *hellinger_partial_sums(&RhoSchedule::InverseSqrt { offset: 2.0 }, 1_000_000).unwrap().last().unwrap();
    assert!((s - INV_SQRT_2_SUM_1E6).abs() < 1e-9, "{s}");
    let quarter = HARMONIC_SHIFTED_1E6 / 4.0;
    assert!((s - quarter).abs() / quarter < 0.02);
}

#[test]
fn convergent_sums_stay_under_bound_at_ten_million() {
    for s in [
        RhoSchedule::Harmonic { offset: 1.0 },
        RhoSchedule::Harmonic { offset: 3.5 },
        RhoSchedule::Geometric { rho0: 0.5, ratio: 0.5 },
        RhoSchedule::Geometric { rho0: 1.0, ratio: -0.9 },
        RhoSchedule::Explicit { values: vec![0.9, -0.4, 0.7], tail: 0.0 },
        RhoSchedule::Const(0.0),
    ] {
        let v = classify_schedule(&s).unwrap();
        assert_eq!(v.tag, SumTag::SumConverges, "{s:?}");
        let bound = v.bound.unwrap();
        let last = *hellinger_partial_sums(&s, 10_000_000).unwrap().last().unwrap();
        assert!(last <= bound, "{s:?}: {last} > {bound}");
    }
}

// Reaching 10 by summation would take ~10¹⁷ terms. Each term is at least
// ρₙ²/4 = 1/(4(n+2)), and Σ_{n<N} 1/(n+2) ≥ ln((N+2)/2), so the sums pass 10
// once N ≥ 2e⁴⁰. The per-term bound and the log bound are checked on the
// first 10⁶ terms.
#[test]
fn inverse_sqrt_sums_pass_ten() {
    let s = RhoSchedule::InverseSqrt { offset: 2.0 };
    assert_eq!(classify_schedule(&s).unwrap().tag, SumTag::SumDiverges);
    let sums = hellinger_partial_sums(&s, 1_000_000).unwrap();
    let mut prev = 0.0;
    for (n, &cur) in sums.iter().enumerate() {
        assert!(cur - prev >= 1.0 / (4.0 * (n + 2) as f64) - 1e-15, "term {n}");
        prev = cur;
        let len = (n + 1) as f64;
        assert!(cur >= 0.25 * ((len + 2.0) / 2.0).ln() - 1e-12, "prefix {len}");
    }
    let n_star = 2.0 * 40f64.exp();
    assert!(0.25 * ((n_star + 2.0) / 2.0).ln() >= 10.0);
}
