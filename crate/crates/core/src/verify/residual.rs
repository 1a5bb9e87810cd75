//! Pathwise residuals of candidate solutions in integral form.
//!
//! For a candidate `u` and a refinement level with step `h`, the residual
//! process at a checkpoint `t_k` is
//!
//! ```text
//! R_h(t_k) = u(t_k) - u(0) - Σ_{t_n < t_k} F(u(t_n)) h - Σ_{t_n < t_k} Ĝ_n Δβ_n
//! ```
//!
//! with `Ĝ_n = ½(G(u(t_n)) + G(u(t_{n+1})))` and `F` the Stratonovich drift
//! (the Itô drift minus `½GG'`), or `Ĝ_n = G(u(t_n))` with the Itô drift when
//! [`ResidualForm::ItoLeftPoint`] is selected. Checkpoints are the knots of the
//! coarsest level; the reported residual is the largest interior norm over
//! them. A true solution gives residuals that vanish as `h → 0`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    diffusion_eval, drift_eval_with, DerivScheme, Interpretation, ModelSpec, ScalarField,
    SpatialGrid,
};
use crate::noise::BrownianPath;
use crate::stats::fitted_order;
use crate::waves::{CandidateLabel, CandidateSolution, ExpectedVerdict};

pub const TOL_VALID: f64 = 1e-2;
pub const TOL_INVALID: f64 = 2e-2;
pub const ORDER_GATE: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Valid,
    Invalid,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Whether this verdict agrees with a declared expectation.
    pub fn matches(&self, expected: ExpectedVerdict) -> bool {
        matches!(
            (self, expected),
            (Verdict::Valid, ExpectedVerdict::Valid)
                | (Verdict::Invalid, ExpectedVerdict::Invalid)
                | (_, ExpectedVerdict::Unknown)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualForm {
    /// Stratonovich drift with trapezoidal noise sums.
    #[default]
    StratonovichEquivalent,
    /// Itô drift with left-point noise sums.
    ItoLeftPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResidualOptions {
    pub form: ResidualForm,
    /// Defaults to 0.8 on far-field grids and 1.0 on periodic grids.
    pub interior_fraction: Option<f64>,
    /// Defaults to spectral on periodic grids and fourth-order differences
    /// otherwise.
    pub deriv: Option<DerivScheme>,
    pub tol_valid: f64,
    pub tol_invalid: f64,
    pub order_gate: f64,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        Self {
            form: ResidualForm::default(),
            interior_fraction: None,
            deriv: None,
            tol_valid: TOL_VALID,
            tol_invalid: TOL_INVALID,
            order_gate: ORDER_GATE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelResidual {
    pub dt: f64,
    pub residual_l2: f64,
    pub residual_sup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub label: CandidateLabel,
    pub expected: ExpectedVerdict,
    /// Sorted by decreasing `dt`.
    pub levels: Vec<LevelResidual>,
    pub fitted_order: f64,
    pub floor: f64,
    pub scale: f64,
    pub verdict: Verdict,
    pub interior_fraction: f64,
    pub seed: u64,
    pub path_index: u64,
}

impl ResidualReport {
    /// One-line summary for terminal output.
    pub fn summary(&self) -> String {
        format!(
            "{:?}: verdict={} expected={:?} order={:.3} floor/scale={:.3e} path={}",
            self.label,
            self.verdict.name(),
            self.expected,
            self.fitted_order,
            self.floor / self.scale.max(f64::MIN_POSITIVE),
            self.path_index
        )
    }
}

/// Verdict from the level data; `l2s` sorted by decreasing `dt`.
pub fn classify(
    dts: &[f64],
    l2s: &[f64],
    scale: f64,
    opts: &ResidualOptions,
) -> (f64, f64, Verdict) {
    let floor = l2s.iter().copied().fold(f64::INFINITY, f64::min);
    let top = l2s.iter().copied().fold(0.0, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    if top <= 1e-13 * scale {
        return (f64::INFINITY, floor, Verdict::Valid);
    }
    let order = if l2s.iter().all(|&r| r > 0.0) {
        fitted_order(dts, l2s)
    } else {
        f64::INFINITY
    };
    let verdict = if order >= opts.order_gate && floor < opts.tol_valid * scale {
        Verdict::Valid
    } else if floor >= opts.tol_invalid * scale {
        Verdict::Invalid
    } else {
        Verdict::Inconclusive
    };
    (order, floor, verdict)
}

fn check_candidate(m: &ModelSpec, cand: &CandidateSolution) -> Result<()> {
    let cm = cand.model();
    if cm.kind.is_complex() != m.kind.is_complex()
        || std::mem::discriminant(&cm.kind) != std::mem::discriminant(&m.kind)
    {
        return Err(Error::CandidateModelMismatch {
            candidate: format!("{:?}", cand.label()),
            reason: format!(
                "built for {}, checked against {}",
                cm.kind.name(),
                m.kind.name()
            ),
        });
    }
    cand.compatible_with(m)
}

/// Residual report with default options.
pub fn pathwise_residual(
    m: &ModelSpec,
    cand: &CandidateSolution,
    path: &BrownianPath,
    grid: &SpatialGrid,
    horizon: f64,
    n_levels: usize,
) -> Result<ResidualReport> {
    pathwise_residual_with(
        m,
        cand,
        path,
        grid,
        horizon,
        n_levels,
        &ResidualOptions::default(),
    )
}

pub fn pathwise_residual_with(
    m: &ModelSpec,
    cand: &CandidateSolution,
    path: &BrownianPath,
    grid: &SpatialGrid,
    horizon: f64,
    n_levels: usize,
    opts: &ResidualOptions,
) -> Result<ResidualReport> {
    if n_levels < 3 {
        return Err(Error::InsufficientLevels(n_levels));
    }
    check_candidate(m, cand)?;
    let dt0 = path.dt();
    let steps0 = horizon / dt0;
    let n0 = steps0.round() as usize;
    if n0 == 0 || (steps0 - n0 as f64).abs() > 1e-6 || n0 > path.n_steps() {
        return Err(Error::OutOfHorizon {
            t: horizon,
            horizon: path.horizon(),
        });
    }

    let (model, trapezoid) = match opts.form {
        ResidualForm::StratonovichEquivalent => {
            (m.converted_to(Interpretation::Stratonovich), true)
        }
        ResidualForm::ItoLeftPoint => (m.converted_to(Interpretation::Ito), false),
    };
    let scheme = opts.deriv.unwrap_or(if grid.is_periodic() {
        DerivScheme::Spectral
    } else {
        DerivScheme::CentralFD4
    });
    let fraction = opts
        .interior_fraction
        .unwrap_or_else(|| grid.default_interior_fraction());
    let range = grid.interior(fraction);

    let top = n_levels - 1;
    let finest = path.refined(top as u32);
    let n_fine = n0 << top;
    let knots: Vec<(ScalarField, ScalarField, ScalarField)> = (0..=n_fine)
        .into_par_iter()
        .map(|j| {
            let pt = finest.point(j);
            let u = cand.field_at(grid, &pt);
            if !u.is_finite() {
                return Err(Error::Blowup {
                    time: pt.t,
                    detail: "candidate evaluates to non-finite values".into(),
                });
            }
            let f = drift_eval_with(&model, &u, scheme)?;
            let g = diffusion_eval(&model, &u)?;
            Ok((u, f, g))
        })
        .collect::<Result<_>>()?;

    let scale = knots[0].0.l2_norm_on(range.clone());
    let beta = finest.values();
    let zero = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut levels = Vec::with_capacity(n_levels);
    for l in 0..n_levels {
        let stride = 1usize << (top - l);
        let h = dt0 / (1u64 << l) as f64;
        let per_checkpoint = 1usize << l;
        let mut acc = zero.clone();
        let (mut worst_l2, mut worst_sup) = (0.0f64, 0.0f64);
        for n in 0..(n0 << l) {
            let (a, b) = (n * stride, (n + 1) * stride);
            let db = beta[b] - beta[a];
            let f = knots[a].1.values();
            let (g0, g1) = (knots[a].2.values(), knots[b].2.values());
            for i in 0..grid.len() {
                let g = if trapezoid {
                    0.5 * (g0[i] + g1[i])
                } else {
                    g0[i]
                };
                acc[i] += f[i] * h + g * db;
            }
            if (n + 1) % per_checkpoint == 0 {
                let u0 = knots[0].0.values();
                let ub = knots[b].0.values();
                let r: Vec<Complex64> = (0..grid.len()).map(|i| ub[i] - u0[i] - acc[i]).collect();
                let rf = ScalarField::from_complex(*grid, r)?;
                worst_l2 = worst_l2.max(rf.l2_norm_on(range.clone()));
                worst_sup = worst_sup.max(rf.sup_norm_on(range.clone()));
            }
        }
        levels.push(LevelResidual {
            dt: h,
            residual_l2: worst_l2,
            residual_sup: worst_sup,
        });
    }

    let dts: Vec<f64> = levels.iter().map(|l| l.dt).collect();
    let l2s: Vec<f64> = levels.iter().map(|l| l.residual_l2).collect();
    let (fitted_order, floor, verdict) = classify(&dts, &l2s, scale, opts);
    Ok(ResidualReport {
        label: cand.label(),
        expected: cand.expected_verdict(),
        levels,
        fitted_order,
        floor,
        scale,
        verdict,
        interior_fraction: fraction,
        seed: path.seed(),
        path_index: path.path_index(),
    })
}
