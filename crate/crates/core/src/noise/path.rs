//! One-dimensional Brownian paths on uniform time grids.

use super::rng::DrawKey;
use crate::error::{Error, Result};

/// Value of a path and its running time-integral at one grid time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPoint {
    pub t: f64,
    pub beta: f64,
    pub int_beta: f64,
}

impl PathPoint {
    pub const ORIGIN: PathPoint = PathPoint {
        t: 0.0,
        beta: 0.0,
        int_beta: 0.0,
    };
}

/// A realisation of β on `0 = t_0 < … < t_N = T`.
#[derive(Debug, Clone, PartialEq)]
pub struct BrownianPath {
    horizon: f64,
    increments: Vec<f64>,
    values: Vec<f64>,
    time_integral: Vec<f64>,
    seed: u64,
    path_index: u64,
    level: u32,
}

/// Draws a path with `n_steps` i.i.d. `N(0, T/n_steps)` increments keyed by
/// `(seed, path_index)`.
pub fn sample_path(
    horizon: f64,
    n_steps: usize,
    seed: u64,
    path_index: u64,
) -> Result<BrownianPath> {
    if !(horizon > 0.0 && horizon.is_finite()) || n_steps == 0 {
        return Err(Error::InvalidHorizon { horizon, n_steps });
    }
    let key = DrawKey::new(seed, path_index, 0);
    let sd = (horizon / n_steps as f64).sqrt();
    let increments: Vec<f64> = (0..n_steps as u64).map(|i| sd * key.normal(i)).collect();
    let values = running_sum(&increments);
    Ok(BrownianPath::assemble(
        horizon, increments, values, seed, path_index, 0,
    ))
}

/// Halves the step: knots are copied from `p`, midpoints come from the
/// Brownian bridge with variance `Δt/4`, keyed by `(seed, path_index, level+1)`.
pub fn refine_path(p: &BrownianPath) -> BrownianPath {
    let level = p.level + 1;
    let key = DrawKey::new(p.seed, p.path_index, level);
    let sd = (p.dt() / 4.0).sqrt();
    let n = p.n_steps();
    let mut values = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        let (a, b) = (p.values[i], p.values[i + 1]);
        values.push(a);
        values.push(0.5 * (a + b) + sd * key.normal(i as u64));
    }
    values.push(p.values[n]);
    let increments = values.windows(2).map(|w| w[1] - w[0]).collect();
    BrownianPath::assemble(p.horizon, increments, values, p.seed, p.path_index, level)
}

fn running_sum(increments: &[f64]) -> Vec<f64> {
    let mut values = Vec::with_capacity(increments.len() + 1);
    let mut acc = 0.0;
    values.push(0.0);
    for &d in increments {
        acc += d;
        values.push(acc);
    }
    values
}

impl BrownianPath {
    fn assemble(
        horizon: f64,
        increments: Vec<f64>,
        values: Vec<f64>,
        seed: u64,
        path_index: u64,
        level: u32,
    ) -> Self {
        let dt = horizon / increments.len() as f64;
        let mut time_integral = Vec::with_capacity(values.len());
        let mut acc = 0.0;
        time_integral.push(0.0);
        for w in values.windows(2) {
            acc += 0.5 * dt * (w[0] + w[1]);
            time_integral.push(acc);
        }
        Self {
            horizon,
            increments,
            values,
            time_integral,
            seed,
            path_index,
            level,
        }
    }

    /// A deterministic path with prescribed knot values (`values[0]` must be 0).
    pub fn from_values(horizon: f64, values: Vec<f64>) -> Result<Self> {
        if !(horizon > 0.0) || values.len() < 2 || values[0] != 0.0 {
            return Err(Error::InvalidHorizon {
                horizon,
                n_steps: values.len().saturating_sub(1),
            });
        }
        let increments = values.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(Self::assemble(horizon, increments, values, 0, 0, 0))
    }

    /// The zero path, for deterministic runs.
    pub fn zero(horizon: f64, n_steps: usize) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) || n_steps == 0 {
            return Err(Error::InvalidHorizon { horizon, n_steps });
        }
        Self::from_values(horizon, vec![0.0; n_steps + 1])
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn n_steps(&self) -> usize {
        self.increments.len()
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.n_steps() as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        if i == self.n_steps() {
            self.horizon
        } else {
            i as f64 * self.dt()
        }
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn time_integrals(&self) -> &[f64] {
        &self.time_integral
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn path_index(&self) -> u64 {
        self.path_index
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn point(&self, i: usize) -> PathPoint {
        PathPoint {
            t: self.t(i),
            beta: self.values[i],
            int_beta: self.time_integral[i],
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0 && t <= self.horizon * (1.0 + 1e-12)) {
            return Err(Error::OutOfHorizon {
                t,
                horizon: self.horizon,
            });
        }
        Ok(())
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let s = t / self.dt();
        let k = (s.floor() as usize).min(self.n_steps() - 1);
        (k, (s - k as f64).clamp(0.0, 1.0))
    }

    /// β(t) from the piecewise-linear interpolant.
    pub fn beta_at(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        let (k, w) = self.locate(t);
        Ok(self.values[k] + w * (self.values[k + 1] - self.values[k]))
    }

    /// `∫_0^t β_s ds` for the piecewise-linear interpolant.
    pub fn time_integral_at(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        let (k, w) = self.locate(t);
        let a = self.values[k];
        let b = a + w * (self.values[k + 1] - a);
        Ok(self.time_integral[k] + 0.5 * w * self.dt() * (a + b))
    }

    pub fn point_at(&self, t: f64) -> Result<PathPoint> {
        Ok(PathPoint {
            t,
            beta: self.beta_at(t)?,
            int_beta: self.time_integral_at(t)?,
        })
    }

    /// Refines `levels` times.
    pub fn refined(&self, levels: u32) -> BrownianPath {
        (0..levels).fold(self.clone(), |p, _| refine_path(&p))
    }

    /// Points of `self` at the knots of a coarser grid with `n_coarse` steps,
    /// which must divide this path's step count.
    pub fn strided_points(&self, n_coarse: usize) -> Vec<PathPoint> {
        assert!(n_coarse > 0 && self.n_steps().is_multiple_of(n_coarse));
        let stride = self.n_steps() / n_coarse;
        (0..=n_coarse).map(|j| self.point(j * stride)).collect()
    }
}
