//! Candidate solutions `u(x, t; β)` built from profiles and a driving path.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::profile::{kdv_soliton_profile, nagumo_profile, nls_soliton, WaveProfile};
use crate::error::{Error, Result};
use crate::model::{
    Boundary, Interpretation, ModelKind, ModelSpec, NoiseKind, ScalarField, SpatialGrid,
};
use crate::noise::{BrownianPath, PathPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateLabel {
    NagumoExact,
    KdVWadati,
    NlsStratCs,
    BurgersHomogeneousGbm,
    AnsatzA,
    AnsatzB,
    AnsatzC,
    Custom,
}

impl CandidateLabel {
    pub fn name(&self) -> &'static str {
        match self {
            CandidateLabel::NagumoExact => "nagumo-exact",
            CandidateLabel::KdVWadati => "kdv-wadati",
            CandidateLabel::NlsStratCs => "nls-strat-cs",
            CandidateLabel::BurgersHomogeneousGbm => "burgers-gbm",
            CandidateLabel::AnsatzA => "ansatz-a",
            CandidateLabel::AnsatzB => "ansatz-b",
            CandidateLabel::AnsatzC => "ansatz-c",
            CandidateLabel::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedVerdict {
    Valid,
    Invalid,
    Unknown,
}

impl ExpectedVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ExpectedVerdict::Valid => "valid",
            ExpectedVerdict::Invalid => "invalid",
            ExpectedVerdict::Unknown => "unknown",
        }
    }
}

pub type CustomEval = Arc<dyn Fn(f64, &PathPoint) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum Form {
    /// `Φ(x - v t - p β - q ∫β) + r β`
    Shifted {
        profile: WaveProfile,
        speed: f64,
        beta_shift: f64,
        integral_shift: f64,
        beta_offset: f64,
    },
    /// `Φ(x - v t) exp(i(kx - ωt) + z_β β + z_t t)`
    Modulated {
        profile: WaveProfile,
        speed: f64,
        k: f64,
        omega: f64,
        z_beta: Complex64,
        z_t: Complex64,
    },
    Custom(CustomEval),
}

#[derive(Clone)]
pub struct CandidateSolution {
    label: CandidateLabel,
    model: ModelSpec,
    expected: ExpectedVerdict,
    form: Form,
}

impl fmt::Debug for CandidateSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CandidateSolution")
            .field("label", &self.label)
            .field("model", &self.model)
            .field("expected", &self.expected)
            .finish_non_exhaustive()
    }
}

fn mismatch(candidate: &str, reason: &str) -> Error {
    Error::CandidateModelMismatch {
        candidate: candidate.into(),
        reason: reason.into(),
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            value: sigma,
            reason: "noise intensity must be non-negative",
        });
    }
    Ok(())
}

/// `Φ(√(1+σ²)(x - c_σ t - α_t))` with `c_σ = c/√(1+σ²)` and
/// `α_t = √2 σ β_t / √(1+σ²)`, the exact front of Itô Nagumo with noise
/// `σ u(1-u) dβ`.
pub fn nagumo_stochastic_wave(a: f64, sigma: f64) -> Result<CandidateSolution> {
    nagumo_profile(a)?;
    check_sigma(sigma)?;
    let stretch = (1.0 + sigma * sigma).sqrt();
    let profile = WaveProfile::Nagumo { a, stretch };
    Ok(CandidateSolution {
        label: CandidateLabel::NagumoExact,
        model: ModelSpec::nagumo(a, sigma)?,
        expected: ExpectedVerdict::Valid,
        form: Form::Shifted {
            profile,
            speed: profile.speed(),
            beta_shift: SQRT_2 * sigma / stretch,
            integral_shift: 0.0,
            beta_offset: 0.0,
        },
    })
}

/// `Φ_c(x - ct + 6σ ∫β) + σβ_t` for KdV with additive noise.
pub fn kdv_wadati_solution(c: f64, sigma: f64) -> Result<CandidateSolution> {
    let profile = kdv_soliton_profile(c)?;
    check_sigma(sigma)?;
    Ok(CandidateSolution {
        label: CandidateLabel::KdVWadati,
        model: ModelSpec::kdv(sigma)?,
        expected: ExpectedVerdict::Valid,
        form: Form::Shifted {
            profile,
            speed: c,
            beta_shift: 0.0,
            integral_shift: -6.0 * sigma,
            beta_offset: sigma,
        },
    })
}

fn nls_form(profile: WaveProfile, z_beta: Complex64, z_t: Complex64) -> Form {
    let (k, omega) = profile.carrier().expect("NLS profile");
    Form::Modulated {
        profile,
        speed: profile.speed(),
        k,
        omega,
        z_beta,
        z_t,
    }
}

/// Deterministic soliton with the phase factor `e^{-iσβ_t}`; exact for
/// Stratonovich NLS.
pub fn nls_strat_cs_solution(amplitude: f64, k: f64, sigma: f64) -> Result<CandidateSolution> {
    let profile = nls_soliton(amplitude, k)?;
    check_sigma(sigma)?;
    Ok(CandidateSolution {
        label: CandidateLabel::NlsStratCs,
        model: ModelSpec::nls(sigma, Interpretation::Stratonovich)?,
        expected: ExpectedVerdict::Valid,
        form: nls_form(
            profile,
            Complex64::new(0.0, -sigma),
            Complex64::new(0.0, 0.0),
        ),
    })
}

/// `Θ(x - ct) e^{σβ_t - σ²t/2}` against Itô Burgers with linear noise.
pub fn ansatz_a_candidate(profile: WaveProfile, c: f64, sigma: f64) -> Result<CandidateSolution> {
    check_sigma(sigma)?;
    if matches!(profile, WaveProfile::NlsSoliton { .. }) {
        return Err(mismatch("ansatz-a", "needs a real profile"));
    }
    let nu = profile.viscosity().unwrap_or(1.0);
    let travelling = matches!(profile, WaveProfile::BurgersFront { .. }) && c == profile.speed();
    let exact = profile.is_constant() || (sigma == 0.0 && travelling);
    Ok(CandidateSolution {
        label: CandidateLabel::AnsatzA,
        model: ModelSpec::burgers(nu, NoiseKind::Linear, sigma)?,
        expected: if exact {
            ExpectedVerdict::Valid
        } else {
            ExpectedVerdict::Invalid
        },
        form: Form::Modulated {
            profile,
            speed: c,
            k: 0.0,
            omega: 0.0,
            z_beta: Complex64::new(sigma, 0.0),
            z_t: Complex64::new(-0.5 * sigma * sigma, 0.0),
        },
    })
}

fn nls_ansatz(
    label: CandidateLabel,
    amplitude: f64,
    k: f64,
    sigma: f64,
    z_beta: Complex64,
    z_t: Complex64,
) -> Result<CandidateSolution> {
    let profile = nls_soliton(amplitude, k)?;
    check_sigma(sigma)?;
    Ok(CandidateSolution {
        label,
        model: ModelSpec::nls(sigma, Interpretation::Ito)?,
        expected: if sigma == 0.0 {
            ExpectedVerdict::Valid
        } else {
            ExpectedVerdict::Invalid
        },
        form: nls_form(profile, z_beta, z_t),
    })
}

/// Soliton times `e^{σβ_t - σ²t/2}` against Itô NLS.
pub fn ansatz_b_candidate(amplitude: f64, k: f64, sigma: f64) -> Result<CandidateSolution> {
    nls_ansatz(
        CandidateLabel::AnsatzB,
        amplitude,
        k,
        sigma,
        Complex64::new(sigma, 0.0),
        Complex64::new(-0.5 * sigma * sigma, 0.0),
    )
}

/// Soliton times `e^{i(-σβ_t + σ²t/2)}` against Itô NLS.
pub fn ansatz_c_candidate(amplitude: f64, k: f64, sigma: f64) -> Result<CandidateSolution> {
    nls_ansatz(
        CandidateLabel::AnsatzC,
        amplitude,
        k,
        sigma,
        Complex64::new(0.0, -sigma),
        Complex64::new(0.0, 0.5 * sigma * sigma),
    )
}

/// Spatially homogeneous `u₀ e^{σβ_t - σ²t/2}`, exact for Itô Burgers with
/// linear noise.
pub fn burgers_homogeneous_gbm(u0: f64, sigma: f64) -> Result<CandidateSolution> {
    let mut c = ansatz_a_candidate(WaveProfile::constant(u0), 0.0, sigma)?;
    c.label = CandidateLabel::BurgersHomogeneousGbm;
    Ok(c)
}

/// Deterministic travelling wave `Φ(x - ct)` tested against `model`.
pub fn travelling_candidate(
    profile: WaveProfile,
    model: ModelSpec,
    expected: ExpectedVerdict,
) -> CandidateSolution {
    CandidateSolution {
        label: CandidateLabel::Custom,
        model,
        expected,
        form: Form::Shifted {
            profile,
            speed: profile.speed(),
            beta_shift: 0.0,
            integral_shift: 0.0,
            beta_offset: 0.0,
        },
    }
}

impl CandidateSolution {
    /// A user-supplied candidate; `eval` must not depend on the path at `t = 0`.
    pub fn custom(model: ModelSpec, expected: ExpectedVerdict, eval: CustomEval) -> Self {
        Self {
            label: CandidateLabel::Custom,
            model,
            expected,
            form: Form::Custom(eval),
        }
    }

    pub fn label(&self) -> CandidateLabel {
        self.label
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn expected_verdict(&self) -> ExpectedVerdict {
        self.expected
    }

    pub fn with_expected(mut self, expected: ExpectedVerdict) -> Self {
        self.expected = expected;
        self
    }

    /// Replaces the model, checking the label stays compatible with it.
    pub fn with_model(mut self, model: ModelSpec) -> Result<Self> {
        check_label(self.label, &model)?;
        self.model = model;
        Ok(self)
    }

    /// Checks that this candidate's label may be tested against `m`.
    pub fn compatible_with(&self, m: &ModelSpec) -> Result<()> {
        check_label(self.label, m)
    }

    /// Underlying profile, if the candidate is built from one.
    pub fn profile(&self) -> Option<&WaveProfile> {
        match &self.form {
            Form::Shifted { profile, .. } | Form::Modulated { profile, .. } => Some(profile),
            Form::Custom(_) => None,
        }
    }

    /// Value at `x` given the path state at one time.
    pub fn eval_at(&self, x: f64, p: &PathPoint) -> Complex64 {
        match &self.form {
            Form::Shifted {
                profile,
                speed,
                beta_shift,
                integral_shift,
                beta_offset,
            } => {
                let xi = x - speed * p.t - beta_shift * p.beta - integral_shift * p.int_beta;
                Complex64::new(profile.value(xi) + beta_offset * p.beta, 0.0)
            }
            Form::Modulated {
                profile,
                speed,
                k,
                omega,
                z_beta,
                z_t,
            } => {
                let phase = Complex64::new(0.0, k * x - omega * p.t) + z_beta * p.beta + z_t * p.t;
                profile.value(x - speed * p.t) * phase.exp()
            }
            Form::Custom(f) => f(x, p),
        }
    }

    pub fn eval(&self, x: f64, t: f64, path: &BrownianPath) -> Result<Complex64> {
        Ok(self.eval_at(x, &path.point_at(t)?))
    }

    /// Limits at `(-∞, +∞)` for the current path state, when they exist.
    pub fn limits_at(&self, p: &PathPoint) -> Option<(Complex64, Complex64)> {
        match &self.form {
            Form::Shifted {
                profile,
                beta_offset,
                ..
            } => {
                let (l, r) = profile.limits();
                let b = beta_offset * p.beta;
                Some((Complex64::new(l + b, 0.0), Complex64::new(r + b, 0.0)))
            }
            Form::Modulated {
                profile,
                k,
                z_beta,
                z_t,
                ..
            } if *k == 0.0 => {
                let (l, r) = profile.limits();
                let m = (z_beta * p.beta + z_t * p.t).exp();
                Some((l * m, r * m))
            }
            _ => None,
        }
    }

    /// Samples the candidate on `grid`. On far-field grids the end nodes take
    /// the limiting values, matching the pinned boundary of the integrators.
    pub fn field_at(&self, grid: &SpatialGrid, p: &PathPoint) -> ScalarField {
        let mut values: Vec<Complex64> = (0..grid.len())
            .map(|i| self.eval_at(grid.x(i), p))
            .collect();
        if grid.boundary() == Boundary::FarField {
            if let Some((l, r)) = self.limits_at(p) {
                values[0] = l;
                *values.last_mut().unwrap() = r;
            }
        }
        if self.model.kind.is_complex() {
            ScalarField::from_complex(*grid, values).expect("length matches grid")
        } else {
            let re: Vec<f64> = values.iter().map(|v| v.re).collect();
            ScalarField::from_real(*grid, &re).expect("length matches grid")
        }
    }
}

fn check_label(label: CandidateLabel, m: &ModelSpec) -> Result<()> {
    let name = format!("{label:?}");
    let ok = match label {
        CandidateLabel::NagumoExact => {
            matches!(m.kind, ModelKind::Nagumo { .. }) && m.noise == NoiseKind::Logistic
        }
        CandidateLabel::KdVWadati => m.kind == ModelKind::KdV && m.noise == NoiseKind::Additive,
        CandidateLabel::NlsStratCs => {
            m.kind == ModelKind::Nls && m.interpretation == Interpretation::Stratonovich
        }
        CandidateLabel::BurgersHomogeneousGbm | CandidateLabel::AnsatzA => {
            matches!(m.kind, ModelKind::Burgers { .. })
        }
        CandidateLabel::AnsatzB | CandidateLabel::AnsatzC => m.kind == ModelKind::Nls,
        CandidateLabel::Custom => true,
    };
    if ok {
        Ok(())
    } else {
        Err(mismatch(
            &name,
            &format!("{} model not allowed", m.kind.name()),
        ))
    }
}
