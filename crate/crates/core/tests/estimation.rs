use mutdim::estimate::{kt_code_length, likelihood_ratio_log, mi_density, plugin_entropy_rate, Method};
use mutdim::experiment::{run_experiment, ExperimentConfig, ExperimentName};
use mutdim::genseq::{sample_coupled, sample_word, Seed, PRNG_NAME};
use mutdim::measures::{product, rho_joint, MeasureSeq, Pmf, RhoSchedule};

const PLUGIN4: Method<'static> = Method::Plugin { block_len: 4 };

fn coin(p0: f64) -> MeasureSeq {
    MeasureSeq::constant(Pmf::new(vec![p0, 1.0 - p0]).unwrap())
}

#[test]
fn kt_rate_of_fair_bits_over_30_seeds() {
    for seed in 0..30 {
        let w = sample_word(&coin(0.5), 1_000_000, Seed(seed)).unwrap();
        let rate = kt_code_length(&w, 2).unwrap() / w.len() as f64;
        assert!((0.999..=1.001).contains(&rate), "seed {seed}: {rate}");
    }
}

#[test]
fn plugin_rate_with_blocks_of_eight() {
    let fair = sample_word(&coin(0.5), 1_000_000, Seed(1)).unwrap();
    assert!((plugin_entropy_rate(&fair, 2, 8).unwrap() - 1.0).abs() <= 0.01);
    let biased = sample_word(&coin(0.75), 1_000_000, Seed(2)).unwrap();
    assert!((plugin_entropy_rate(&biased, 2, 8).unwrap() - 0.811_278_124_459_132_9).abs() <= 0.01);
}

#[test]
fn mi_density_monte_carlo() {
    let u = sample_word(&coin(0.5), 100_000, Seed(3)).unwrap();
    assert!((mi_density(&u, &u, 2, PLUGIN4).unwrap().raw - 1.0).abs() <= 0.02);

    let indep = MeasureSeq::constant(product(&Pmf::uniform(2).unwrap(), &Pmf::uniform(2).unwrap()).unwrap());
    let cw = sample_coupled(&indep, 1_000_000, Seed(4)).unwrap();
    let d = mi_density(&cw.u, &cw.w, 2, PLUGIN4).unwrap();
    assert!(d.clamped >= 0.0 && d.clamped <= 0.01, "{d:?}");

    let half = MeasureSeq::rho_family(RhoSchedule::Const(0.5)).unwrap();
    let cw = sample_coupled(&half, 1_000_000, Seed(5)).unwrap();
    assert!((mi_density(&cw.u, &cw.w, 2, PLUGIN4).unwrap().raw - 0.188_721_875_540_867_1).abs() <= 0.01);
}

#[test]
fn mean_log_likelihood_ratio_is_not_negative() {
    let uniform = Pmf::uniform(2).unwrap();
    let indep = MeasureSeq::constant(product(&uniform, &uniform).unwrap());
    let coupled = MeasureSeq::constant(rho_joint(0.3).unwrap());
    let skewed = MeasureSeq::constant(product(&Pmf::new(vec![0.6, 0.4]).unwrap(), &uniform).unwrap());
    let decaying = MeasureSeq::rho_family(RhoSchedule::Harmonic { offset: 1.0 }).unwrap();
    for (num, den) in [(&coupled, &indep), (&indep, &coupled), (&skewed, &indep), (&decaying, &indep)] {
        let mean = (0..100)
            .map(|seed| {
                let cw = sample_coupled(num, 10_000, Seed(seed)).unwrap();
                *likelihood_ratio_log(num, den, &cw).unwrap().last().unwrap()
            })
            .sum::<f64>()
            / 100.0;
        assert!(mean >= -1.0, "{mean}");
    }
}

#[test]
fn report_carries_provenance_and_seed_order() {
    let mut cfg = ExperimentConfig::new(ExperimentName::MutualDimension, 30_000, vec![9, 2, 5]);
    cfg.workers = Some(3);
    let r = run_experiment(&cfg).unwrap().report;
    assert_eq!(r.config_hash, cfg.hash());
    assert_eq!(r.prng, PRNG_NAME);
    assert_eq!(r.version, mutdim::VERSION);
    assert_eq!(r.seeds.iter().map(|s| s.seed).collect::<Vec<_>>(), vec![9, 2, 5]);
    assert!((r.target.value.unwrap() - 0.188_721_875_540_867_1).abs() < 1e-15);
    let agg = r.aggregate.clone().unwrap();
    assert_eq!(agg.count, 3);
    assert!(agg.stddev >= 0.0 && agg.min <= agg.mean && agg.mean <= agg.max);
    assert!(!r.to_json().contains("time"));
}

#[test]
fn kt_experiment_route() {
    let mut cfg = ExperimentConfig::new(ExperimentName::Independent, 200_000, vec![0, 1]);
    cfg.estimator = mutdim::experiment::EstimatorSpec::Kt;
    let r = run_experiment(&cfg).unwrap().report;
    assert!(r.pass, "{}", r.to_json());
    assert_eq!(r.estimator, "kt");
}
