use stochwave_core::noise::sample_path;
use stochwave_core::verify::{
    pathwise_residual, pathwise_residual_with, ResidualForm, ResidualOptions, Verdict,
};
use stochwave_core::waves::{
    ansatz_a_candidate, burgers_homogeneous_gbm, catalog, kdv_wadati_solution, lookup,
    nagumo_stochastic_wave, nls_strat_cs_solution, CandidateParams, ExpectedVerdict, WaveProfile,
};
use stochwave_core::{PathPoint, SpatialGrid};

const SEED: u64 = 4242;

#[test]
fn catalog_verdicts_match_expectations_on_three_paths() {
    for e in catalog() {
        let c = e.build(&CandidateParams::default()).unwrap();
        let grid = e.grid();
        for i in 0..3 {
            let p = sample_path(e.horizon, e.base_steps, SEED, i).unwrap();
            let r = pathwise_residual(c.model(), &c, &p, &grid, e.horizon, e.levels).unwrap();
            assert!(
                r.verdict.matches(c.expected_verdict()),
                "{} path {i}: {}",
                e.id,
                r.summary()
            );
            if r.verdict == Verdict::Valid {
                assert!(r.fitted_order >= 0.4, "{}: {}", e.id, r.summary());
            }
        }
    }
}

#[test]
fn ansatz_a_floor_stays_above_regression_bound_on_fixed_paths() {
    let e = lookup("ansatz-a").unwrap();
    let c = e.build(&CandidateParams::default()).unwrap();
    for i in 0..3 {
        let p = sample_path(e.horizon, e.base_steps, SEED, i).unwrap();
        let r = pathwise_residual(c.model(), &c, &p, &e.grid(), e.horizon, e.levels).unwrap();
        assert!(r.floor > 0.05 * r.scale, "{}", r.summary());
    }
}

#[test]
fn adding_finer_levels_keeps_gbm_valid() {
    let c = burgers_homogeneous_gbm(1.0, 1.0).unwrap();
    let g = SpatialGrid::periodic(-10.0, 10.0, 16).unwrap();
    for i in 0..4 {
        let p = sample_path(1.0, 16, SEED, i).unwrap();
        let mut floors = Vec::new();
        let base = pathwise_residual(c.model(), &c, &p, &g, 1.0, 6).unwrap();
        assert_eq!(base.verdict, Verdict::Valid, "{}", base.summary());
        for levels in 6..=9 {
            let r = pathwise_residual(c.model(), &c, &p, &g, 1.0, levels).unwrap();
            assert_ne!(
                r.verdict,
                Verdict::Invalid,
                "levels {levels}: {}",
                r.summary()
            );
            floors.push(r.floor);
        }
        assert!(
            floors.windows(2).all(|w| w[1] <= w[0] * 1.0001),
            "{floors:?}"
        );
    }
}

#[test]
fn nagumo_residuals_agree_across_paths() {
    let c = nagumo_stochastic_wave(0.3, 0.5).unwrap();
    let g = SpatialGrid::far_field(-20.0, 20.0, 401).unwrap();
    let floors: Vec<f64> = (0..2)
        .map(|i| {
            let p = sample_path(1.0, 32, SEED, 100 + i).unwrap();
            pathwise_residual(c.model(), &c, &p, &g, 1.0, 5)
                .unwrap()
                .floor
        })
        .collect();
    let ratio = floors[0].max(floors[1]) / floors[0].min(floors[1]);
    assert!(ratio < 10.0, "{floors:?}");
}

#[test]
fn zero_noise_residuals_converge_at_first_order() {
    let cands = [
        (
            nagumo_stochastic_wave(0.3, 0.0).unwrap(),
            SpatialGrid::far_field(-20.0, 20.0, 401).unwrap(),
            1.0,
        ),
        (
            kdv_wadati_solution(1.0, 0.0).unwrap(),
            SpatialGrid::periodic(-20.0, 20.0, 256).unwrap(),
            0.5,
        ),
        (
            nls_strat_cs_solution(1.2, 0.4, 0.0).unwrap(),
            SpatialGrid::periodic(-20.0, 20.0, 256).unwrap(),
            0.5,
        ),
    ];
    for (c, g, t) in cands {
        let p = sample_path(t, 32, SEED, 0).unwrap();
        let r = pathwise_residual(c.model(), &c, &p, &g, t, 5).unwrap();
        assert_eq!(r.verdict, Verdict::Valid, "{}", r.summary());
        assert!((0.8..=1.2).contains(&r.fitted_order), "{}", r.summary());
    }
    // a constant solution leaves no residual at all
    let c = burgers_homogeneous_gbm(2.0, 0.0).unwrap();
    let g = SpatialGrid::periodic(-10.0, 10.0, 16).unwrap();
    let p = sample_path(1.0, 16, SEED, 0).unwrap();
    let r = pathwise_residual(c.model(), &c, &p, &g, 1.0, 4).unwrap();
    assert_eq!(r.verdict, Verdict::Valid);
    assert!(r.levels.iter().all(|l| l.residual_l2 == 0.0));
}

#[test]
fn ito_left_point_sums_converge_at_half_order_for_gbm() {
    let c = burgers_homogeneous_gbm(1.0, 1.0).unwrap();
    let g = SpatialGrid::periodic(-10.0, 10.0, 16).unwrap();
    let opts = ResidualOptions {
        form: ResidualForm::ItoLeftPoint,
        ..ResidualOptions::default()
    };
    let levels = 6;
    let n_paths = 200;
    let mut mean = vec![0.0; levels];
    let mut dts = Vec::new();
    for i in 0..n_paths {
        let p = sample_path(1.0, 8, SEED, i).unwrap();
        let r = pathwise_residual_with(c.model(), &c, &p, &g, 1.0, levels, &opts).unwrap();
        for (m, l) in mean.iter_mut().zip(&r.levels) {
            *m += l.residual_l2 / n_paths as f64;
        }
        dts = r.levels.iter().map(|l| l.dt).collect();
    }
    let order = stochwave_core::stats::fitted_order(&dts, &mean);
    assert!((0.35..=0.65).contains(&order), "order {order}, {mean:?}");
}

#[test]
fn ansatz_a_exponent_is_a_martingale() {
    let (sigma, t) = (0.8, 1.5);
    let c = ansatz_a_candidate(WaveProfile::constant(1.0), 0.0, sigma).unwrap();
    let n = 10_000u64;
    let vals: Vec<f64> = (0..n)
        .map(|i| {
            let p = sample_path(t, 4, SEED, i).unwrap();
            let pt: PathPoint = p.point(4);
            c.eval_at(0.3, &pt).re
        })
        .collect();
    let mean = vals.iter().sum::<f64>() / n as f64;
    let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    let se = sd / (n as f64).sqrt();
    assert!((mean - 1.0).abs() <= 3.0 * se, "mean {mean} ± {se}");
}

#[test]
fn forced_expectations_are_reported_as_mismatches() {
    let e = lookup("ansatz-a").unwrap();
    let c = e
        .build(&CandidateParams::default())
        .unwrap()
        .with_expected(ExpectedVerdict::Valid);
    let p = sample_path(e.horizon, e.base_steps, SEED, 0).unwrap();
    let r = pathwise_residual(c.model(), &c, &p, &e.grid(), e.horizon, e.levels).unwrap();
    assert_eq!(r.verdict, Verdict::Invalid);
    assert!(!r.verdict.matches(r.expected));
}
