//! Built-in scenarios: complete configurations addressable by name.

use std::f64::consts::SQRT_2;
use std::fmt::Write;

use serde_json::{json, Value};
use stochwave_core::waves::catalog;

use crate::config::ExperimentConfig;
use crate::CliError;

struct Scenario {
    name: &'static str,
    summary: &'static str,
    build: fn() -> Value,
}

const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "nagumo-exact",
        summary: "exact Nagumo front: verdicts at σ = 0.5 and 1, deterministic speed, closed-form ensemble",
        build: nagumo_exact,
    },
    Scenario {
        name: "kdv-wadati",
        summary: "KdV soliton with additive noise: verdicts, simulation, soliton-position ensemble",
        build: kdv_wadati,
    },
    Scenario {
        name: "nls-strat-cs",
        summary: "Stratonovich NLS soliton: verdicts, phase-exact Heun run, Itô mass ensemble",
        build: nls_strat_cs,
    },
    Scenario {
        name: "ansatz-a-burgers",
        summary: "Burgers: the exponential-martingale ansatz against the homogeneous GBM solution",
        build: ansatz_a_burgers,
    },
    Scenario {
        name: "ansatz-bc-nls",
        summary: "Itô NLS: amplitude and phase ansätze against the Stratonovich solution",
        build: ansatz_bc_nls,
    },
    Scenario {
        name: "stability-em",
        summary: "explicit heat-step stability boundary and the GBM strong order of Euler-Maruyama",
        build: stability_em,
    },
    Scenario {
        name: "nagumo-ensemble",
        summary: "front position over 200 paths at σ = 0.5: mean speed and variance growth",
        build: nagumo_ensemble,
    },
    Scenario {
        name: "paper-table",
        summary: "all seven catalog candidates with their expected verdicts",
        build: verdict_table,
    },
];

fn seconds(horizon: f64, step: f64) -> Vec<f64> {
    let n = (horizon / step).round() as usize;
    (0..=n).map(|i| i as f64 * step).collect()
}

fn nagumo_exact() -> Value {
    json!({
        "scenario": "nagumo-exact",
        "seed": 4242,
        "verify": {
            "candidates": [
                {"id": "nagumo-exact", "params": {"sigma": 0.5}},
                {"id": "nagumo-exact", "params": {"sigma": 1.0}},
            ],
            "n_paths": 3,
        },
        "simulate": {
            "initial": {"id": "nagumo-exact", "params": {"a": 0.3, "sigma": 0.0}},
            "grid": {"x_min": -50.0, "x_max": 50.0, "n": 1024, "boundary": "far-field"},
            "stepper": {"scheme": "semi-implicit-em", "dt": 0.01},
            "horizon": 10.0,
            "snapshots": seconds(10.0, 1.0),
        },
        "ensemble": {
            "candidate": {"id": "nagumo-exact", "params": {"a": 0.3, "sigma": 0.5}},
            "mode": "closed-form",
            "observable": {"kind": "front-position", "level": 0.5},
            "grid": {"x_min": -40.0, "x_max": 40.0, "n": 801, "boundary": "far-field"},
            "horizon": 10.0,
            "n_steps": 1000,
            "snapshots": seconds(10.0, 1.0),
            "n_paths": 200,
        },
    })
}

fn kdv_wadati() -> Value {
    json!({
        "scenario": "kdv-wadati",
        "seed": 4242,
        "verify": {
            "candidates": [{"id": "kdv-wadati", "params": {"c": 1.0, "sigma": 0.3}}],
            "n_paths": 3,
        },
        "simulate": {
            "initial": {"id": "kdv-wadati", "params": {"c": 1.0, "sigma": 0.3}},
            "grid": {"x_min": -40.0, "x_max": 40.0, "n": 512, "boundary": "periodic"},
            "stepper": {"scheme": "semi-implicit-em", "dt": 0.001},
            "horizon": 2.0,
            "snapshots": seconds(2.0, 0.5),
        },
        "ensemble": {
            "candidate": {"id": "kdv-wadati", "params": {"c": 1.0, "sigma": 0.3}},
            "mode": "closed-form",
            "observable": {"kind": "soliton-position"},
            "grid": {"x_min": -40.0, "x_max": 40.0, "n": 800, "boundary": "periodic"},
            "horizon": 4.0,
            "n_steps": 400,
            "snapshots": seconds(4.0, 0.5),
            "n_paths": 200,
        },
    })
}

fn nls_strat_cs() -> Value {
    json!({
        "scenario": "nls-strat-cs",
        "seed": 4242,
        "verify": {
            "candidates": [{"id": "nls-strat-cs", "params": {"sigma": 0.5}}],
            "n_paths": 3,
        },
        "simulate": {
            "initial": {"id": "nls-strat-cs", "params": {"sigma": 0.5}},
            "grid": {"x_min": -30.0, "x_max": 30.0, "n": 512, "boundary": "periodic"},
            "stepper": {"scheme": "stratonovich-heun", "dt": 1e-4, "phase_exact_nls": true},
            "horizon": 1.0,
            "snapshots": seconds(1.0, 0.25),
        },
        "ensemble": {
            "candidate": {"id": "nls-strat-cs", "params": {"sigma": 0.5}},
            "mode": "simulation",
            "model": {"model": "nls", "sigma": 0.5, "interpretation": "ito"},
            "stepper": {"scheme": "semi-implicit-em", "dt": 0.001},
            "observable": {"kind": "mass"},
            "grid": {"x_min": -30.0, "x_max": 30.0, "n": 256, "boundary": "periodic"},
            "horizon": 1.0,
            "n_steps": 1000,
            "snapshots": seconds(1.0, 0.25),
            "n_paths": 50,
        },
    })
}

fn ansatz_a_burgers() -> Value {
    json!({
        "scenario": "ansatz-a-burgers",
        "seed": 4242,
        "verify": {
            "candidates": [
                {"id": "ansatz-a"},
                {"id": "burgers-gbm", "params": {"sigma": 1.0}},
            ],
            "n_paths": 3,
        },
    })
}

fn ansatz_bc_nls() -> Value {
    json!({
        "scenario": "ansatz-bc-nls",
        "seed": 4242,
        "verify": {
            "candidates": [
                {"id": "ansatz-b"},
                {"id": "ansatz-c"},
                {"id": "nls-strat-cs"},
            ],
            "n_paths": 3,
        },
    })
}

fn stability_em() -> Value {
    let (nu, n, length) = (1.0, 128usize, 20.0);
    let dx = length / n as f64;
    let dts: Vec<f64> = (0..5)
        .map(|k| 0.075 * f64::from(1u32 << k) * dx * dx / nu)
        .collect();
    json!({
        "scenario": "stability-em",
        "seed": 4242,
        "converge": {
            "strong": {
                "candidate": {"id": "burgers-gbm", "params": {"sigma": 1.0}},
                "grid": {"x_min": -10.0, "x_max": 10.0, "n": 16, "boundary": "periodic"},
                "horizon": 1.0,
                "base_steps": 8,
                "levels": 4,
                "n_paths": 1000,
                "stepper": {"scheme": "euler-maruyama", "dt": 1.0},
                "order_band": [0.35, 0.65],
            },
            "stability": {
                "nu": nu,
                "grid": {"x_min": -10.0, "x_max": 10.0, "n": n, "boundary": "periodic"},
                "dts": dts,
                "expected_boundary": 0.5,
            },
        },
    })
}

fn nagumo_ensemble() -> Value {
    let (a, sigma) = (0.3, 0.5);
    let c_sigma = SQRT_2 * (0.5 - a) / (1.0f64 + sigma * sigma).sqrt();
    json!({
        "scenario": "nagumo-ensemble",
        "seed": 4242,
        "ensemble": {
            "candidate": {"id": "nagumo-exact", "params": {"a": a, "sigma": sigma}},
            "mode": "closed-form",
            "observable": {"kind": "front-position", "level": 0.5},
            "grid": {"x_min": -40.0, "x_max": 40.0, "n": 801, "boundary": "far-field"},
            "horizon": 10.0,
            "n_steps": 1000,
            "snapshots": seconds(10.0, 1.0),
            "n_paths": 200,
            "bands": {
                "mean_slope": [0.95 * c_sigma, 1.05 * c_sigma],
                "var_slope": [0.17, 0.23],
            },
        },
    })
}

fn verdict_table() -> Value {
    json!({
        "scenario": "paper-table",
        "seed": 4242,
        "verify": {
            "candidates": [
                {"id": "nagumo-exact"},
                {"id": "kdv-wadati"},
                {"id": "nls-strat-cs"},
                {"id": "burgers-gbm"},
                {"id": "ansatz-a"},
                {"id": "ansatz-b"},
                {"id": "ansatz-c"},
            ],
            "n_paths": 3,
        },
    })
}

pub fn names() -> impl Iterator<Item = &'static str> {
    SCENARIOS.iter().map(|s| s.name)
}

pub fn scenario(name: &str) -> Result<ExperimentConfig, CliError> {
    let s = SCENARIOS.iter().find(|s| s.name == name).ok_or_else(|| {
        CliError::config(format!("unknown scenario `{name}`; try `stochwave list`"))
    })?;
    serde_json::from_value((s.build)())
        .map_err(|e| CliError::config(format!("scenario {name}: {e}")))
}

/// Text printed by `stochwave list`.
pub fn listing() -> String {
    let mut out = String::from("scenarios:\n");
    for s in SCENARIOS {
        let _ = writeln!(out, "  {:<18} {}", s.name, s.summary);
    }
    out.push_str("candidates:\n");
    for e in catalog() {
        let _ = writeln!(out, "  {:<18} {}", e.id, e.summary);
    }
    out
}
