//! Single time steps along a Brownian increment.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    deriv_values, diffusion_eval, drift_eval_with, spectral, Boundary, DerivOp, DerivScheme,
    Interpretation, ModelKind, ModelSpec, ScalarField,
};

/// Interior sup-norm above which a run is declared blown up.
pub const BLOWUP_LEVEL: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    EulerMaruyama,
    StratonovichHeun,
    SemiImplicitEm,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::EulerMaruyama => "euler-maruyama",
            Scheme::StratonovichHeun => "stratonovich-heun",
            Scheme::SemiImplicitEm => "semi-implicit-em",
        }
    }

    /// The interpretation this scheme converges to.
    pub fn interpretation(&self) -> Interpretation {
        match self {
            Scheme::StratonovichHeun => Interpretation::Stratonovich,
            _ => Interpretation::Ito,
        }
    }

    /// Default explicit scheme for a model.
    pub fn explicit_for(m: &ModelSpec) -> Scheme {
        match m.interpretation {
            Interpretation::Ito => Scheme::EulerMaruyama,
            Interpretation::Stratonovich => Scheme::StratonovichHeun,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepperSpec {
    pub scheme: Scheme,
    pub dt: f64,
    /// Apply the NLS noise as an exact phase rotation each step.
    #[serde(default)]
    pub phase_exact_nls: bool,
    /// Derivative scheme for the explicit schemes; the grid default when
    /// absent. The semi-implicit scheme always uses its own operators.
    #[serde(default)]
    pub deriv: Option<DerivScheme>,
}

impl StepperSpec {
    pub fn new(scheme: Scheme, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: dt,
                reason: "time step must be positive",
            });
        }
        Ok(Self {
            scheme,
            dt,
            phase_exact_nls: false,
            deriv: None,
        })
    }

    pub fn with_phase_exact(mut self, on: bool) -> Self {
        self.phase_exact_nls = on;
        self
    }

    pub fn with_deriv(mut self, deriv: DerivScheme) -> Self {
        self.deriv = Some(deriv);
        self
    }

    /// Same settings with a different time step.
    pub fn with_dt(self, dt: f64) -> Result<Self> {
        Self::new(self.scheme, dt)?;
        Ok(Self { dt, ..self })
    }

    pub fn check(&self, m: &ModelSpec) -> Result<()> {
        if self.scheme.interpretation() != m.interpretation {
            return Err(Error::InterpretationMismatch {
                scheme: self.scheme.name(),
                interpretation: m.interpretation.name(),
            });
        }
        if self.phase_exact_nls && m.kind != ModelKind::Nls {
            return Err(Error::Unsupported(
                "phase-exact noise applies to NLS only".into(),
            ));
        }
        Ok(())
    }

    /// One step of size `self.dt` with Brownian increment `dbeta`.
    pub fn step(&self, m: &ModelSpec, f: &ScalarField, dbeta: f64) -> Result<ScalarField> {
        self.check(m)?;
        let dt = self.dt;
        let d = self
            .deriv
            .unwrap_or_else(|| DerivScheme::default_for(f.grid().boundary()));
        let quiet;
        let (model, db) = if self.phase_exact_nls {
            quiet = m.with_sigma(0.0);
            (&quiet, 0.0)
        } else {
            (m, dbeta)
        };
        let out = match self.scheme {
            Scheme::EulerMaruyama => em_step_with(model, f, db, dt, d)?,
            Scheme::StratonovichHeun => heun_step_with(model, f, db, dt, d)?,
            Scheme::SemiImplicitEm => semi_implicit_step(model, f, db, dt)?,
        };
        Ok(if self.phase_exact_nls {
            nls_phase_rotation(m, &out, dbeta, dt)
        } else {
            out
        })
    }
}

/// Exact solution operator of the NLS noise part over one step:
/// `e^{-iσΔβ}` (Stratonovich) or `e^{-iσΔβ + σ²Δt/2}` (Itô).
pub fn nls_phase_rotation(m: &ModelSpec, f: &ScalarField, dbeta: f64, dt: f64) -> ScalarField {
    let s = m.sigma;
    let growth = match m.interpretation {
        Interpretation::Ito => 0.5 * s * s * dt,
        Interpretation::Stratonovich => 0.0,
    };
    let factor = Complex64::new(growth, -s * dbeta).exp();
    f.map(|v| v * factor)
}

fn pin_edges(before: &ScalarField, after: &mut ScalarField) {
    if before.grid().boundary() == Boundary::FarField {
        let n = after.len();
        let (first, last) = (before.values()[0], before.values()[n - 1]);
        let v = after.values_mut();
        v[0] = first;
        v[n - 1] = last;
    }
}

/// Raises `Blowup` for non-finite values or an interior sup-norm above
/// [`BLOWUP_LEVEL`]. The time is filled in by the caller.
pub(crate) fn check_blowup(f: &ScalarField, time: f64) -> Result<()> {
    if !f.is_finite() {
        return Err(Error::Blowup {
            time,
            detail: "non-finite values".into(),
        });
    }
    let g = f.grid();
    let sup = f.sup_norm_on(g.interior(g.default_interior_fraction()));
    if sup > BLOWUP_LEVEL {
        return Err(Error::Blowup {
            time,
            detail: format!("interior sup-norm {sup:.3e} exceeds {BLOWUP_LEVEL:e}"),
        });
    }
    Ok(())
}

fn finish(before: &ScalarField, mut after: ScalarField) -> Result<ScalarField> {
    pin_edges(before, &mut after);
    check_blowup(&after, f64::NAN)?;
    Ok(after)
}

fn require(m: &ModelSpec, interp: Interpretation, scheme: &'static str) -> Result<()> {
    if m.interpretation != interp {
        return Err(Error::InterpretationMismatch {
            scheme,
            interpretation: m.interpretation.name(),
        });
    }
    Ok(())
}

/// `f + F(f) dt + G(f) Δβ`.
pub fn em_step(m: &ModelSpec, f: &ScalarField, dbeta: f64, dt: f64) -> Result<ScalarField> {
    em_step_with(
        m,
        f,
        dbeta,
        dt,
        DerivScheme::default_for(f.grid().boundary()),
    )
}

fn em_step_with(
    m: &ModelSpec,
    f: &ScalarField,
    dbeta: f64,
    dt: f64,
    d: DerivScheme,
) -> Result<ScalarField> {
    require(m, Interpretation::Ito, Scheme::EulerMaruyama.name())?;
    let drift = drift_eval_with(m, f, d)?;
    let noise = diffusion_eval(m, f)?;
    let out = f
        .axpy(Complex64::new(dt, 0.0), &drift)
        .axpy(Complex64::new(dbeta, 0.0), &noise);
    finish(f, out)
}

/// Heun predictor-corrector; converges to the Stratonovich solution.
pub fn heun_stratonovich_step(
    m: &ModelSpec,
    f: &ScalarField,
    dbeta: f64,
    dt: f64,
) -> Result<ScalarField> {
    heun_step_with(
        m,
        f,
        dbeta,
        dt,
        DerivScheme::default_for(f.grid().boundary()),
    )
}

fn heun_step_with(
    m: &ModelSpec,
    f: &ScalarField,
    dbeta: f64,
    dt: f64,
    d: DerivScheme,
) -> Result<ScalarField> {
    require(
        m,
        Interpretation::Stratonovich,
        Scheme::StratonovichHeun.name(),
    )?;
    let (dt_c, db_c) = (Complex64::new(dt, 0.0), Complex64::new(dbeta, 0.0));
    let drift0 = drift_eval_with(m, f, d)?;
    let noise0 = diffusion_eval(m, f)?;
    let mut pred = f.axpy(dt_c, &drift0).axpy(db_c, &noise0);
    pin_edges(f, &mut pred);
    let drift1 = drift_eval_with(m, &pred, d)?;
    let noise1 = diffusion_eval(m, &pred)?;
    let half = Complex64::new(0.5, 0.0);
    let out = f
        .axpy(half * dt_c, &drift0)
        .axpy(half * dt_c, &drift1)
        .axpy(half * db_c, &noise0)
        .axpy(half * db_c, &noise1);
    finish(f, out)
}

/// Fourier symbol of the stiff linear part of each model.
fn linear_symbol(m: &ModelSpec, k: f64) -> Complex64 {
    match m.kind {
        ModelKind::Nagumo { .. } => Complex64::new(-k * k, 0.0),
        ModelKind::Burgers { nu } => Complex64::new(-nu * k * k, 0.0),
        // -∂³ ↦ -(ik)³ = ik³
        ModelKind::KdV => Complex64::new(0.0, k * k * k),
        // i∂² ↦ -ik²
        ModelKind::Nls => Complex64::new(0.0, -k * k),
    }
}

/// Euler–Maruyama with the linear operator taken implicitly: by FFT on
/// periodic grids, by a tridiagonal second-order solve on far-field grids
/// (Nagumo and Burgers only).
pub fn semi_implicit_step(
    m: &ModelSpec,
    f: &ScalarField,
    dbeta: f64,
    dt: f64,
) -> Result<ScalarField> {
    require(m, Interpretation::Ito, Scheme::SemiImplicitEm.name())?;
    let grid = *f.grid();
    let out = match grid.boundary() {
        Boundary::Periodic => {
            let n = grid.len();
            let drift = drift_eval_with(m, f, DerivScheme::Spectral)?;
            let noise = diffusion_eval(m, f)?;
            let mut u: Vec<Complex64> = f.values().to_vec();
            let mut nl: Vec<Complex64> = drift.values().to_vec();
            let mut g: Vec<Complex64> = noise.values().to_vec();
            spectral::forward(&mut u);
            spectral::forward(&mut nl);
            spectral::forward(&mut g);
            let ks = spectral::wavenumbers(n, grid.length());
            for j in 0..n {
                let l = if spectral::is_nyquist(n, j) && m.kind == ModelKind::KdV {
                    Complex64::new(0.0, 0.0)
                } else {
                    linear_symbol(m, ks[j])
                };
                // nl holds F(u); subtract the linear part to keep only N(u)
                let rhs = u[j] + dt * (nl[j] - l * u[j]) + dbeta * g[j];
                u[j] = rhs / (1.0 - dt * l);
            }
            spectral::inverse(&mut u);
            ScalarField::with_values_like(f, u)
        }
        Boundary::FarField => {
            let diff = match m.kind {
                ModelKind::Nagumo { .. } => 1.0,
                ModelKind::Burgers { nu } => nu,
                _ => {
                    return Err(Error::Unsupported(format!(
                        "semi-implicit stepping of {} needs a periodic grid",
                        m.kind.name()
                    )))
                }
            };
            let scheme = DerivScheme::CentralFD2;
            let drift = drift_eval_with(m, f, scheme)?;
            let noise = diffusion_eval(m, f)?;
            let lap = deriv_values(&grid, f.values(), DerivOp::new(scheme, 2))?;
            let n = grid.len();
            let r = diff * dt / (grid.dx() * grid.dx());
            let mut rhs: Vec<Complex64> = (0..n)
                .map(|i| {
                    f.values()[i]
                        + dt * (drift.values()[i] - diff * lap[i])
                        + dbeta * noise.values()[i]
                })
                .collect();
            rhs[0] = f.values()[0];
            rhs[n - 1] = f.values()[n - 1];
            let sol = solve_pinned_tridiagonal(r, &rhs);
            ScalarField::with_values_like(f, sol)
        }
    };
    finish(f, out)
}

/// Solves `(1 + 2r) u_i - r (u_{i-1} + u_{i+1}) = b_i` on the interior with
/// `u_0 = b_0`, `u_{n-1} = b_{n-1}` (Thomas algorithm).
fn solve_pinned_tridiagonal(r: f64, b: &[Complex64]) -> Vec<Complex64> {
    let n = b.len();
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![Complex64::new(0.0, 0.0); n];
    // row 0 is the identity
    d_prime[0] = b[0];
    for i in 1..n - 1 {
        let (a, diag, c) = (-r, 1.0 + 2.0 * r, -r);
        let denom = diag - a * c_prime[i - 1];
        c_prime[i] = c / denom;
        d_prime[i] = (b[i] - a * d_prime[i - 1]) / denom;
    }
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    u[n - 1] = b[n - 1];
    for i in (1..n - 1).rev() {
        u[i] = d_prime[i] - c_prime[i] * u[i + 1];
    }
    u[0] = b[0];
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{NoiseKind, SpatialGrid};
    use std::f64::consts::PI;

    fn far() -> SpatialGrid {
        SpatialGrid::far_field(-5.0, 5.0, 41).unwrap()
    }

    #[test]
    fn nagumo_fixed_point_is_kept() {
        let m = ModelSpec::nagumo(0.3, 0.0).unwrap();
        let one = ScalarField::constant(far(), 1.0);
        let next = em_step(&m, &one, 0.4, 0.01).unwrap();
        assert_eq!(next, one);
    }

    #[test]
    fn gbm_single_step() {
        let g = SpatialGrid::periodic(0.0, 1.0, 8).unwrap();
        let m = ModelSpec::burgers(1.0, NoiseKind::Linear, 1.0).unwrap();
        let one = ScalarField::constant(g, 1.0);
        let next = em_step(&m, &one, 0.1, 0.37).unwrap();
        for v in next.values() {
            assert!((v.re - 1.1).abs() < 1e-14);
        }
    }

    #[test]
    fn heun_matches_second_order_taylor() {
        let g = SpatialGrid::periodic(0.0, 1.0, 8).unwrap();
        let strat = |sigma| {
            ModelSpec::new(
                ModelKind::Burgers { nu: 1.0 },
                NoiseKind::Linear,
                sigma,
                Interpretation::Stratonovich,
            )
            .unwrap()
        };
        let two = ScalarField::constant(g, 2.0);
        assert_eq!(
            heun_stratonovich_step(&strat(0.0), &two, 0.3, 0.1).unwrap(),
            two
        );

        // on a constant field du = u ∘ dβ is the linear ODE with rate Δβ
        let lam = 0.2;
        let next = heun_stratonovich_step(&strat(1.0), &two, lam, 0.1).unwrap();
        let expect = 2.0 * (1.0 + lam + lam * lam / 2.0);
        assert!((next.values()[3].re - expect).abs() < 1e-14);
    }

    #[test]
    fn phase_rotation_is_unit_modulus() {
        let g = SpatialGrid::periodic(-10.0, 10.0, 64).unwrap();
        let m = ModelSpec::nls(0.7, Interpretation::Stratonovich).unwrap();
        let f = ScalarField::from_fn_complex(g, |x| Complex64::new(1.0 / x.cosh(), 0.3 * x));
        let r = nls_phase_rotation(&m, &f, 0.9, 0.01);
        let factor = Complex64::new(0.0, -0.7 * 0.9).exp();
        for (a, b) in r.values().iter().zip(f.values()) {
            assert!((a - b * factor).norm() < 1e-15);
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn interpretation_is_enforced() {
        let g = SpatialGrid::periodic(0.0, 1.0, 8).unwrap();
        let ito = ModelSpec::nls(0.1, Interpretation::Ito).unwrap();
        let f = ScalarField::from_fn_complex(g, |_| Complex64::new(1.0, 0.0));
        assert!(matches!(
            heun_stratonovich_step(&ito, &f, 0.0, 0.1),
            Err(Error::InterpretationMismatch { .. })
        ));
        let strat = ModelSpec::nls(0.1, Interpretation::Stratonovich).unwrap();
        assert!(em_step(&strat, &f, 0.0, 0.1).is_err());
        assert!(StepperSpec::new(Scheme::SemiImplicitEm, 0.1)
            .unwrap()
            .check(&strat)
            .is_err());
        assert!(StepperSpec::new(Scheme::EulerMaruyama, 0.0).is_err());
        let kdv = ModelSpec::kdv(0.0).unwrap();
        let st = StepperSpec::new(Scheme::EulerMaruyama, 0.1)
            .unwrap()
            .with_phase_exact(true);
        assert!(st.check(&kdv).is_err());
    }

    #[test]
    fn blowup_is_reported() {
        let g = far();
        let m = ModelSpec::burgers(1.0, NoiseKind::Linear, 0.0).unwrap();
        let f = ScalarField::from_fn_real(g, |x| 2e6 * (-x * x).exp());
        assert!(em_step(&m, &f, 0.0, 1e-9).unwrap_err().is_blowup());
    }

    #[test]
    fn semi_implicit_heat_matches_exact_decay() {
        // u_t = u_xx on a periodic grid: exact Fourier decay e^{-k²t}; the
        // implicit step gives 1/(1 + k² dt) per step.
        let g = SpatialGrid::periodic(0.0, 2.0 * PI, 32).unwrap();
        let m = ModelSpec::new(
            ModelKind::Burgers { nu: 1.0 },
            NoiseKind::Linear,
            0.0,
            Interpretation::Ito,
        )
        .unwrap();
        // a sine stays a sine under Burgers only to first order, so use a tiny
        // amplitude where the nonlinearity is negligible
        let eps = 1e-8;
        let f = ScalarField::from_fn_real(g, |x| eps * (2.0 * x).sin());
        let dt = 0.5;
        let next = semi_implicit_step(&m, &f, 0.0, dt).unwrap();
        let factor = 1.0 / (1.0 + 4.0 * dt);
        for (a, b) in next.values().iter().zip(f.values()) {
            assert!((a.re - factor * b.re).abs() < 1e-6 * eps);
        }
    }

    #[test]
    fn far_field_semi_implicit_keeps_edges_and_constants() {
        let g = far();
        let m = ModelSpec::nagumo(0.3, 0.0).unwrap();
        let f = ScalarField::from_fn_real(g, |x| 0.5 * (1.0 - (x / 2.0).tanh()));
        let next = semi_implicit_step(&m, &f, 0.0, 1.0).unwrap();
        assert_eq!(next.values()[0], f.values()[0]);
        assert_eq!(next.values()[40], f.values()[40]);
        let one = ScalarField::constant(g, 1.0);
        let next = semi_implicit_step(&m, &one, 0.0, 1.0).unwrap();
        for v in next.values() {
            assert!((v.re - 1.0).abs() < 1e-14);
        }
    }
}
