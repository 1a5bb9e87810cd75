//! Stability probe for explicit diffusion and strong-convergence measurement.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::integrate::integrate;
use super::stepper::{Scheme, StepperSpec};
use crate::error::{Error, Result};
use crate::model::{deriv_values, spectral, DerivOp, DerivScheme, ModelSpec, SpatialGrid};
use crate::noise::{sample_path, BrownianPath, DrawKey};
use crate::stats::fitted_order;
use crate::waves::{CandidateSolution, ExpectedVerdict};

const PROBE_STEPS: usize = 200;
const PROBE_SEED: u64 = 0x005e_ed0f_d1ff;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityRow {
    pub dt: f64,
    /// `ν Δt / Δx²`
    pub mesh_ratio: f64,
    pub max_norm_ratio: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub nu: f64,
    pub dx: f64,
    pub rows: Vec<StabilityRow>,
}

impl StabilityReport {
    /// Largest stable and smallest unstable mesh ratio, when both occur.
    pub fn boundary(&self) -> (Option<f64>, Option<f64>) {
        let stable = self
            .rows
            .iter()
            .filter(|r| r.stable)
            .map(|r| r.mesh_ratio)
            .fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.max(r))));
        let unstable = self
            .rows
            .iter()
            .filter(|r| !r.stable)
            .map(|r| r.mesh_ratio)
            .fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.min(r))));
        (stable, unstable)
    }
}

/// Random data with every Fourier mode present, amplitudes decaying like
/// `1/(1+|m|)`.
fn probe_data(grid: &SpatialGrid) -> Vec<Complex64> {
    let n = grid.len();
    let key = DrawKey::new(PROBE_SEED, 0, 0);
    let mut hat: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n];
    for m in 0..=n / 2 {
        let a = key.normal(2 * m as u64) / (1.0 + m as f64);
        let b = key.normal(2 * m as u64 + 1) / (1.0 + m as f64);
        hat[m] = Complex64::new(a, b);
        if m > 0 && m < n - m {
            hat[n - m] = hat[m].conj();
        }
    }
    // keep the zero and Nyquist modes real
    hat[0].im = 0.0;
    if n.is_multiple_of(2) {
        hat[n / 2].im = 0.0;
    }
    spectral::inverse(&mut hat);
    hat.iter().map(|v| Complex64::new(v.re, 0.0)).collect()
}

/// Runs explicit Euler on `u_t = ν u_xx` (second-order central differences)
/// for 200 steps at each `dt`; a run is stable iff its L² norm never exceeds
/// the initial norm.
pub fn stability_probe(nu: f64, grid: &SpatialGrid, dt_list: &[f64]) -> Result<StabilityReport> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter {
            name: "nu",
            value: nu,
            reason: "viscosity must be positive",
        });
    }
    let u0 = probe_data(grid);
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let n0 = norm(&u0);
    let op = DerivOp::new(DerivScheme::CentralFD2, 2);
    let dx = grid.dx();
    let rows = dt_list
        .iter()
        .map(|&dt| {
            let mut u = u0.clone();
            let mut worst: f64 = 1.0;
            for _ in 0..PROBE_STEPS {
                let lap = deriv_values(grid, &u, op)?;
                u.iter_mut().zip(&lap).for_each(|(v, l)| *v += dt * nu * l);
                let r = norm(&u) / n0;
                worst = worst.max(r);
                if !r.is_finite() {
                    break;
                }
            }
            Ok(StabilityRow {
                dt,
                mesh_ratio: nu * dt / (dx * dx),
                max_norm_ratio: worst,
                stable: worst <= 1.0 + 1e-9,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityReport { nu, dx, rows })
}

/// Errors at the horizon on each dyadic level and the fitted order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub dts: Vec<f64>,
    pub errors: Vec<f64>,
    pub order: f64,
    pub n_paths: usize,
}

/// L² error at the path horizon between a simulation and the candidate on
/// each refinement `path.refined(l)`, `l = 0..levels`.
fn level_errors(
    m: &ModelSpec,
    cand: &CandidateSolution,
    grid: &SpatialGrid,
    path: &BrownianPath,
    levels: usize,
    template: StepperSpec,
) -> Result<Vec<f64>> {
    let finest = path.refined(levels as u32 - 1);
    let exact = cand.field_at(grid, &finest.point(finest.n_steps()));
    let f0 = cand.field_at(grid, &finest.point(0));
    let range = grid.interior(grid.default_interior_fraction());
    let mut p = path.clone();
    let mut errs = Vec::with_capacity(levels);
    for l in 0..levels {
        if l > 0 {
            p = crate::noise::refine_path(&p);
        }
        let st = template.with_dt(p.dt())?;
        let tr = integrate(m, &f0, &p, &st, &[p.horizon()])?;
        let diff = tr.last().zip_with(&exact, |a, b| a - b);
        errs.push(diff.l2_norm_on(range.clone()));
    }
    Ok(errs)
}

/// Strong error against a closed-form solution along refinements of one path.
pub fn strong_convergence_test(
    m: &ModelSpec,
    cand: &CandidateSolution,
    grid: &SpatialGrid,
    path: &BrownianPath,
    levels: usize,
) -> Result<ConvergenceReport> {
    strong_convergence_paths(m, cand, grid, std::slice::from_ref(path), levels)
}

/// Mean strong error over several base paths (run in parallel), with the
/// default explicit scheme for the model.
pub fn strong_convergence_paths(
    m: &ModelSpec,
    cand: &CandidateSolution,
    grid: &SpatialGrid,
    paths: &[BrownianPath],
    levels: usize,
) -> Result<ConvergenceReport> {
    let template = StepperSpec::new(Scheme::explicit_for(m), 1.0)?;
    strong_convergence_with(m, cand, grid, paths, levels, template)
}

/// As [`strong_convergence_paths`]; `template` fixes everything but `dt`.
pub fn strong_convergence_with(
    m: &ModelSpec,
    cand: &CandidateSolution,
    grid: &SpatialGrid,
    paths: &[BrownianPath],
    levels: usize,
    template: StepperSpec,
) -> Result<ConvergenceReport> {
    if levels < 3 {
        return Err(Error::InsufficientLevels(levels));
    }
    if cand.expected_verdict() != ExpectedVerdict::Valid {
        return Err(Error::NoGroundTruth);
    }
    if paths.is_empty() {
        return Err(Error::TooFewPaths {
            required: 1,
            got: 0,
        });
    }
    let per_path: Vec<Vec<f64>> = paths
        .par_iter()
        .map(|p| {
            level_errors(m, cand, grid, p, levels, template).map_err(|e| Error::InPath {
                path_index: p.path_index(),
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    let errors: Vec<f64> = (0..levels)
        .map(|l| per_path.iter().map(|e| e[l]).sum::<f64>() / paths.len() as f64)
        .collect();
    let dt0 = paths[0].dt();
    let dts: Vec<f64> = (0..levels).map(|l| dt0 / (1u64 << l) as f64).collect();
    Ok(ConvergenceReport {
        order: fitted_order(&dts, &errors),
        dts,
        errors,
        n_paths: paths.len(),
    })
}

/// Convenience wrapper drawing `n_paths` base paths keyed by `seed`.
pub fn strong_convergence_ensemble(
    m: &ModelSpec,
    cand: &CandidateSolution,
    grid: &SpatialGrid,
    horizon: f64,
    base_steps: usize,
    levels: usize,
    seed: u64,
    n_paths: usize,
) -> Result<ConvergenceReport> {
    let paths = (0..n_paths as u64)
        .map(|i| sample_path(horizon, base_steps, seed, i))
        .collect::<Result<Vec<_>>>()?;
    strong_convergence_paths(m, cand, grid, &paths, levels)
}
