//! Monte Carlo statistics of an observable over independent paths.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::observables::Observable;
use crate::error::{Error, Result};
use crate::model::{ModelSpec, SpatialGrid};
use crate::noise::{sample_path, BrownianPath, PathPoint};
use crate::sim::{integrate, StepperSpec};
use crate::stats::slope_through_origin;
use crate::waves::CandidateSolution;

/// Where the per-path fields come from.
#[derive(Debug, Clone)]
pub enum EnsembleSource {
    /// Evaluate the closed form along each path.
    ClosedForm(CandidateSolution),
    /// Integrate the model from the candidate's `t = 0` field.
    Simulation {
        initial: CandidateSolution,
        stepper: StepperSpec,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub grid: SpatialGrid,
    pub horizon: f64,
    pub n_steps: usize,
    pub snapshots: Vec<f64>,
    pub n_paths: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub observable: &'static str,
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub var: Vec<f64>,
    pub n_paths: usize,
    /// Slope of `mean(t) - mean(0)` through the origin.
    pub mean_slope: f64,
    pub mean_slope_se: f64,
    /// Slope of `var(t)` through the origin.
    pub var_slope: f64,
    pub var_slope_se: f64,
    /// 95% χ² interval for the variance rate from the final snapshot.
    pub var_rate_band: (f64, f64),
    /// Per-path observable values, `samples[path][snapshot]`.
    #[serde(skip)]
    pub samples: Vec<Vec<f64>>,
}

fn moments(samples: &[Vec<f64>], j: usize) -> (f64, f64) {
    let m = samples.len() as f64;
    let mean = samples.iter().map(|s| s[j]).sum::<f64>() / m;
    let var = samples.iter().map(|s| (s[j] - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, var)
}

fn slopes(times: &[f64], samples: &[Vec<f64>]) -> (f64, f64) {
    let k = times.len();
    let (mean, var): (Vec<f64>, Vec<f64>) = (0..k).map(|j| moments(samples, j)).unzip();
    let drift: Vec<f64> = mean.iter().map(|m| m - mean[0]).collect();
    (
        slope_through_origin(times, &drift),
        slope_through_origin(times, &var),
    )
}

/// Summary statistics from per-path samples (`samples[path][snapshot]`).
pub fn summarize(
    observable: &'static str,
    times: &[f64],
    samples: Vec<Vec<f64>>,
) -> Result<EnsembleStats> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::TooFewPaths {
            required: 2,
            got: m,
        });
    }
    let k = times.len();
    let (mean, var): (Vec<f64>, Vec<f64>) = (0..k).map(|j| moments(&samples, j)).unzip();
    let (mean_slope, var_slope) = slopes(times, &samples);

    // jackknife standard errors
    let loo: Vec<(f64, f64)> = (0..m)
        .into_par_iter()
        .map(|drop| {
            let rest: Vec<Vec<f64>> = samples
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, s)| s.clone())
                .collect();
            slopes(times, &rest)
        })
        .collect();
    let jk = |pick: fn(&(f64, f64)) -> f64| {
        let vals: Vec<f64> = loo.iter().map(pick).collect();
        let avg = vals.iter().sum::<f64>() / m as f64;
        ((m as f64 - 1.0) / m as f64 * vals.iter().map(|v| (v - avg).powi(2)).sum::<f64>()).sqrt()
    };
    let mean_slope_se = jk(|p| p.0);
    let var_slope_se = jk(|p| p.1);

    let t_end = times[k - 1];
    let var_rate_band = if t_end > 0.0 {
        let dof = (m - 1) as f64;
        let chi = ChiSquared::new(dof).expect("positive degrees of freedom");
        let s = dof * var[k - 1] / t_end;
        (s / chi.inverse_cdf(0.975), s / chi.inverse_cdf(0.025))
    } else {
        (f64::NAN, f64::NAN)
    };

    Ok(EnsembleStats {
        observable,
        times: times.to_vec(),
        mean,
        var,
        n_paths: m,
        mean_slope,
        mean_slope_se,
        var_slope,
        var_slope_se,
        var_rate_band,
        samples,
    })
}

fn observe_path(
    model: &ModelSpec,
    source: &EnsembleSource,
    observable: Observable,
    cfg: &EnsembleConfig,
    path: &BrownianPath,
) -> Result<Vec<f64>> {
    match source {
        EnsembleSource::ClosedForm(c) => cfg
            .snapshots
            .iter()
            .map(|&t| {
                let pt: PathPoint = path.point_at(t)?;
                observable.measure(&c.field_at(&cfg.grid, &pt))
            })
            .collect(),
        EnsembleSource::Simulation { initial, stepper } => {
            let f0 = initial.field_at(&cfg.grid, &PathPoint::ORIGIN);
            let tr = integrate(model, &f0, path, stepper, &cfg.snapshots)?;
            tr.fields.iter().map(|f| observable.measure(f)).collect()
        }
    }
}

/// Runs `n_paths` independent paths (`path_index = 0..n_paths`) and
/// summarises `observable` at the snapshot times.
pub fn ensemble_stats(
    model: &ModelSpec,
    source: &EnsembleSource,
    observable: Observable,
    cfg: &EnsembleConfig,
) -> Result<EnsembleStats> {
    if cfg.n_paths < 2 {
        return Err(Error::TooFewPaths {
            required: 2,
            got: cfg.n_paths,
        });
    }
    let samples: Vec<Vec<f64>> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|i| {
            sample_path(cfg.horizon, cfg.n_steps, cfg.seed, i)
                .and_then(|path| observe_path(model, source, observable, cfg, &path))
                .map_err(|e| Error::InPath {
                    path_index: i,
                    source: Box::new(e),
                })
        })
        .collect::<Result<_>>()?;
    summarize(observable.name(), &cfg.snapshots, samples)
}
