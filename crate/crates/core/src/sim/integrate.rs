//! Sequential integration along one Brownian path.

use super::stepper::{check_blowup, StepperSpec};
use crate::error::{Error, Result};
use crate::model::{ModelSpec, ScalarField, SpatialGrid};
use crate::noise::BrownianPath;

/// Snapshots of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub fields: Vec<ScalarField>,
    pub model: ModelSpec,
    pub stepper: StepperSpec,
    pub seed: u64,
    pub path_index: u64,
}

impl Trajectory {
    pub fn grid(&self) -> &SpatialGrid {
        self.fields[0].grid()
    }

    pub fn last(&self) -> &ScalarField {
        self.fields
            .last()
            .expect("trajectory has at least one snapshot")
    }
}

/// Step indices for the requested snapshot times, which must lie on the
/// stepper grid.
fn snapshot_steps(snapshots: &[f64], dt: f64, n_steps: usize, horizon: f64) -> Result<Vec<usize>> {
    let mut steps = Vec::with_capacity(snapshots.len());
    for &t in snapshots {
        if !(t >= 0.0 && t <= horizon * (1.0 + 1e-12)) {
            return Err(Error::OutOfHorizon { t, horizon });
        }
        let s = t / dt;
        let k = s.round();
        if (s - k).abs() > 1e-6 {
            return Err(Error::Unsupported(format!(
                "snapshot time {t} is not a multiple of dt = {dt}"
            )));
        }
        steps.push((k as usize).min(n_steps));
    }
    if steps.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Unsupported(
            "snapshot times must be non-decreasing".into(),
        ));
    }
    Ok(steps)
}

/// Integrates `m` from `f0` along `path`; the stepper's `dt` must equal the
/// path step.
pub fn integrate(
    m: &ModelSpec,
    f0: &ScalarField,
    path: &BrownianPath,
    stepper: &StepperSpec,
    snapshots: &[f64],
) -> Result<Trajectory> {
    stepper.check(m)?;
    m.check_field(f0)?;
    let path_dt = path.dt();
    if ((stepper.dt - path_dt) / path_dt).abs() > 1e-9 {
        return Err(Error::PathMismatch {
            dt: stepper.dt,
            path_dt,
        });
    }
    let steps = snapshot_steps(snapshots, path_dt, path.n_steps(), path.horizon())?;
    let mut times = Vec::with_capacity(steps.len());
    let mut fields = Vec::with_capacity(steps.len());
    let mut next = 0;
    let mut u = f0.clone();
    check_blowup(&u, 0.0)?;
    let last = steps.last().copied().unwrap_or(0);
    for n in 0..=last {
        while next < steps.len() && steps[next] == n {
            times.push(path.t(n));
            fields.push(u.clone());
            next += 1;
        }
        if n == last {
            break;
        }
        u = stepper
            .step(m, &u, path.increments()[n])
            .map_err(|e| match e {
                Error::Blowup { detail, .. } => Error::Blowup {
                    time: path.t(n + 1),
                    detail,
                },
                other => other,
            })?;
    }
    Ok(Trajectory {
        times,
        fields,
        model: *m,
        stepper: *stepper,
        seed: path.seed(),
        path_index: path.path_index(),
    })
}
