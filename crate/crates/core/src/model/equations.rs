//! The four model equations written as `du = F(u) dt + G(u) dβ`.
//!
//! | model   | F(u)                         | G(u)           |
//! |---------|------------------------------|----------------|
//! | Nagumo  | u_xx + u(1-u)(u-a)           | σ g(u)         |
//! | Burgers | ν u_xx - u u_x               | σ g(u)         |
//! | KdV     | 6 u u_x - u_xxx              | σ g(u)         |
//! | NLS     | i ψ_xx + i |ψ|² ψ            | -i σ ψ         |
//!
//! The NLS rows come from dividing `i dψ = [-ψ_xx - |ψ|²ψ] dt + σ ψ dβ` by `i`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::deriv::{deriv_values, DerivOp, DerivScheme};
use super::field::ScalarField;
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum ModelKind {
    Nagumo {
        a: f64,
    },
    Burgers {
        nu: f64,
    },
    #[serde(rename = "kdv")]
    KdV,
    Nls,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Nagumo { .. } => "nagumo",
            ModelKind::Burgers { .. } => "burgers",
            ModelKind::KdV => "kdv",
            ModelKind::Nls => "nls",
        }
    }

    /// Numeric model id used in binary dumps.
    pub fn id(&self) -> u32 {
        match self {
            ModelKind::Nagumo { .. } => 1,
            ModelKind::Burgers { .. } => 2,
            ModelKind::KdV => 3,
            ModelKind::Nls => 4,
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, ModelKind::Nls)
    }
}

/// Shape of the multiplicative noise `g`. For NLS only `Linear` is allowed and
/// it stands for `G(ψ) = -iσψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    /// g(u) = u
    Linear,
    /// g(u) = u (1 - u)
    Logistic,
    /// g ≡ 1
    Additive,
}

impl NoiseKind {
    pub fn g(&self, u: Complex64) -> Complex64 {
        match self {
            NoiseKind::Linear => u,
            NoiseKind::Logistic => u * (Complex64::new(1.0, 0.0) - u),
            NoiseKind::Additive => Complex64::new(1.0, 0.0),
        }
    }

    pub fn dg(&self, u: Complex64) -> Complex64 {
        match self {
            NoiseKind::Linear => Complex64::new(1.0, 0.0),
            NoiseKind::Logistic => Complex64::new(1.0, 0.0) - 2.0 * u,
            NoiseKind::Additive => Complex64::new(0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpretation {
    Ito,
    Stratonovich,
}

impl Interpretation {
    pub fn name(&self) -> &'static str {
        match self {
            Interpretation::Ito => "ito",
            Interpretation::Stratonovich => "stratonovich",
        }
    }
}

/// Drift correction `u ↦ s · ½ G(u) G'(u)`; `s = -1` converts an Itô drift to
/// its Stratonovich equivalent, `s = +1` goes the other way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftCorrection {
    noise_factor: Complex64,
    noise: NoiseKind,
    sign: f64,
}

impl DriftCorrection {
    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        f.map(|u| self.at(u))
    }

    pub fn at(&self, u: Complex64) -> Complex64 {
        let gg = self.noise_factor * self.noise.g(u) * self.noise_factor * self.noise.dg(u);
        0.5 * self.sign * gg
    }

    pub fn is_zero(&self) -> bool {
        self.noise_factor == Complex64::new(0.0, 0.0) || self.noise == NoiseKind::Additive
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub noise: NoiseKind,
    pub sigma: f64,
    pub interpretation: Interpretation,
    correction: Option<DriftCorrection>,
}

impl ModelSpec {
    pub fn new(
        kind: ModelKind,
        noise: NoiseKind,
        sigma: f64,
        interpretation: Interpretation,
    ) -> Result<Self> {
        match kind {
            ModelKind::Nagumo { a } if !(a > 0.0 && a < 1.0) => {
                return Err(Error::ThresholdOutOfRange(a))
            }
            ModelKind::Burgers { nu } if !(nu > 0.0 && nu.is_finite()) => {
                return Err(Error::InvalidParameter {
                    name: "nu",
                    value: nu,
                    reason: "viscosity must be positive",
                })
            }
            ModelKind::Nls if noise != NoiseKind::Linear => {
                return Err(Error::Unsupported(
                    "NLS noise is the linear phase noise -iσψ".into(),
                ))
            }
            _ => {}
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: sigma,
                reason: "noise intensity must be non-negative",
            });
        }
        Ok(Self {
            kind,
            noise,
            sigma,
            interpretation,
            correction: None,
        })
    }

    /// Itô Nagumo with logistic noise `σ u (1-u) dβ`.
    pub fn nagumo(a: f64, sigma: f64) -> Result<Self> {
        Self::new(
            ModelKind::Nagumo { a },
            NoiseKind::Logistic,
            sigma,
            Interpretation::Ito,
        )
    }

    /// Itô Burgers `dΥ = [νΥ_xx - ΥΥ_x] dt + σ g(Υ) dβ`.
    pub fn burgers(nu: f64, noise: NoiseKind, sigma: f64) -> Result<Self> {
        Self::new(ModelKind::Burgers { nu }, noise, sigma, Interpretation::Ito)
    }

    /// KdV with additive noise.
    pub fn kdv(sigma: f64) -> Result<Self> {
        Self::new(
            ModelKind::KdV,
            NoiseKind::Additive,
            sigma,
            Interpretation::Ito,
        )
    }

    pub fn nls(sigma: f64, interpretation: Interpretation) -> Result<Self> {
        Self::new(ModelKind::Nls, NoiseKind::Linear, sigma, interpretation)
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    /// Extra drift carried by a converted model, if any.
    pub fn correction(&self) -> Option<&DriftCorrection> {
        self.correction.as_ref()
    }

    fn noise_factor(&self) -> Complex64 {
        match self.kind {
            ModelKind::Nls => -I * self.sigma,
            _ => Complex64::new(self.sigma, 0.0),
        }
    }

    /// The same dynamics written in the other interpretation: the drift gains
    /// `∓ ½ G G'` and the noise coefficient is unchanged.
    pub fn converted_to(&self, target: Interpretation) -> ModelSpec {
        if target == self.interpretation {
            return *self;
        }
        let sign = match target {
            Interpretation::Stratonovich => -1.0,
            Interpretation::Ito => 1.0,
        };
        let corr = DriftCorrection {
            noise_factor: self.noise_factor(),
            noise: self.noise,
            sign,
        };
        // converting back cancels an existing correction
        let correction = match self.correction {
            Some(c) if c.sign == -sign => None,
            _ => Some(corr),
        };
        ModelSpec {
            interpretation: target,
            correction,
            ..*self
        }
    }

    pub fn check_field(&self, f: &ScalarField) -> Result<()> {
        if self.kind.is_complex() == f.is_real() {
            return Err(Error::IncompatibleField(format!(
                "{} model needs a {} field",
                self.kind.name(),
                if self.kind.is_complex() {
                    "complex"
                } else {
                    "real"
                }
            )));
        }
        Ok(())
    }
}

/// Deterministic right-hand side `F(u)` using the default derivative scheme
/// for the grid.
pub fn drift_eval(m: &ModelSpec, f: &ScalarField) -> Result<ScalarField> {
    drift_eval_with(m, f, DerivScheme::default_for(f.grid().boundary()))
}

pub fn drift_eval_with(m: &ModelSpec, f: &ScalarField, scheme: DerivScheme) -> Result<ScalarField> {
    m.check_field(f)?;
    let grid = f.grid();
    let u = f.values();
    let d = |order| deriv_values(grid, u, DerivOp::new(scheme, order));
    let mut out: Vec<Complex64> = match m.kind {
        ModelKind::Nagumo { a } => {
            let uxx = d(2)?;
            u.iter()
                .zip(&uxx)
                .map(|(&v, &vxx)| vxx + v * (1.0 - v) * (v - a))
                .collect()
        }
        ModelKind::Burgers { nu } => {
            let ux = d(1)?;
            let uxx = d(2)?;
            u.iter()
                .zip(ux.iter().zip(&uxx))
                .map(|(&v, (&vx, &vxx))| nu * vxx - v * vx)
                .collect()
        }
        ModelKind::KdV => {
            let ux = d(1)?;
            let uxxx = d(3)?;
            u.iter()
                .zip(ux.iter().zip(&uxxx))
                .map(|(&v, (&vx, &vxxx))| 6.0 * v * vx - vxxx)
                .collect()
        }
        ModelKind::Nls => {
            let uxx = d(2)?;
            u.iter()
                .zip(&uxx)
                .map(|(&v, &vxx)| I * vxx + I * v.norm_sqr() * v)
                .collect()
        }
    };
    if let Some(c) = m.correction {
        out.iter_mut().zip(u).for_each(|(o, &v)| *o += c.at(v));
    }
    Ok(ScalarField::with_values_like(f, out))
}

/// Noise coefficient `G(u)`.
pub fn diffusion_eval(m: &ModelSpec, f: &ScalarField) -> Result<ScalarField> {
    m.check_field(f)?;
    let factor = m.noise_factor();
    let values = f.values().iter().map(|&u| factor * m.noise.g(u)).collect();
    Ok(ScalarField::with_values_like(f, values))
}

/// Functional to add to the Itô drift to obtain the equivalent Stratonovich
/// drift: `u ↦ -½ G(u) G'(u)`. Zero for additive noise.
pub fn ito_to_stratonovich(m: &ModelSpec) -> DriftCorrection {
    DriftCorrection {
        noise_factor: m.noise_factor(),
        noise: m.noise,
        sign: -1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::field::SpatialGrid;

    fn far() -> SpatialGrid {
        SpatialGrid::far_field(-5.0, 5.0, 101).unwrap()
    }

    #[test]
    fn nagumo_fixed_points_have_zero_drift() {
        let m = ModelSpec::nagumo(0.25, 0.0).unwrap();
        for c in [0.0, 0.25, 1.0] {
            let d = drift_eval(&m, &ScalarField::constant(far(), c)).unwrap();
            assert!(d.sup_norm() < 1e-14, "u = {c}");
        }
    }

    #[test]
    fn burgers_linear_profile() {
        let m = ModelSpec::burgers(1.0, NoiseKind::Linear, 0.0).unwrap();
        let g = far();
        let f = ScalarField::from_fn_real(g, |x| x);
        let d = drift_eval(&m, &f).unwrap();
        let i = g.nearest(2.0);
        assert!((g.x(i) - 2.0).abs() < 1e-12);
        assert!((d.values()[i].re + 2.0).abs() < 1e-10);
    }

    #[test]
    fn diffusion_examples() {
        let g = far();
        let two = ScalarField::constant(g, 2.0);
        let zero_noise = ModelSpec::burgers(1.0, NoiseKind::Linear, 0.0).unwrap();
        assert_eq!(diffusion_eval(&zero_noise, &two).unwrap().sup_norm(), 0.0);

        let logistic = ModelSpec::nagumo(0.3, 0.7).unwrap();
        let one = ScalarField::constant(g, 1.0);
        assert_eq!(diffusion_eval(&logistic, &one).unwrap().sup_norm(), 0.0);
        let zero = ScalarField::constant(g, 0.0);
        assert_eq!(diffusion_eval(&logistic, &zero).unwrap().sup_norm(), 0.0);

        let linear = ModelSpec::burgers(1.0, NoiseKind::Linear, 0.5).unwrap();
        let d = diffusion_eval(&linear, &two).unwrap();
        assert!(d.values().iter().all(|v| (v.re - 1.0).abs() < 1e-15));

        let additive = ModelSpec::kdv(0.3).unwrap();
        let d = diffusion_eval(&additive, &two).unwrap();
        assert!(d.values().iter().all(|v| (v.re - 0.3).abs() < 1e-15));
    }

    #[test]
    fn nls_is_divided_through_by_i() {
        let g = SpatialGrid::periodic(0.0, 2.0 * std::f64::consts::PI, 32).unwrap();
        let m = ModelSpec::nls(0.5, Interpretation::Stratonovich).unwrap();
        let f = ScalarField::from_fn_complex(g, |x| Complex64::new(0.0, 2.0 * x).exp());
        // ψ = e^{2ix}: ψ_xx = -4ψ, |ψ|² = 1 ⇒ F = i(-4 + 1)ψ
        let d = drift_eval(&m, &f).unwrap();
        for (i, v) in d.values().iter().enumerate() {
            let expect = I * (-3.0) * f.values()[i];
            assert!((v - expect).norm() < 1e-12);
        }
        let gg = diffusion_eval(&m, &f).unwrap();
        assert!((gg.values()[3] - (-I * 0.5) * f.values()[3]).norm() < 1e-15);
    }

    #[test]
    fn incompatible_fields_are_rejected() {
        let g = SpatialGrid::periodic(0.0, 1.0, 16).unwrap();
        let nls = ModelSpec::nls(0.1, Interpretation::Ito).unwrap();
        assert!(matches!(
            drift_eval(&nls, &ScalarField::constant(g, 1.0)),
            Err(Error::IncompatibleField(_))
        ));
        let kdv = ModelSpec::kdv(0.1).unwrap();
        let c = ScalarField::from_fn_complex(g, |_| Complex64::new(1.0, 1.0));
        assert!(matches!(
            diffusion_eval(&kdv, &c),
            Err(Error::IncompatibleField(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(
            ModelSpec::nagumo(1.2, 0.0),
            Err(Error::ThresholdOutOfRange(1.2))
        );
        assert!(ModelSpec::burgers(0.0, NoiseKind::Linear, 0.0).is_err());
        assert!(ModelSpec::nagumo(0.3, -1.0).is_err());
        assert!(ModelSpec::new(
            ModelKind::Nls,
            NoiseKind::Additive,
            0.1,
            Interpretation::Ito
        )
        .is_err());
    }

    #[test]
    fn correction_examples() {
        let g = far();
        let f = ScalarField::from_fn_real(g, |x| 0.5 + 0.1 * x);
        let sigma = 0.7;

        let add = ito_to_stratonovich(&ModelSpec::kdv(sigma).unwrap());
        assert!(add.is_zero());
        assert_eq!(add.apply(&f).sup_norm(), 0.0);

        let lin = ito_to_stratonovich(&ModelSpec::burgers(1.0, NoiseKind::Linear, sigma).unwrap());
        for (c, u) in lin.apply(&f).values().iter().zip(f.values()) {
            assert!((c.re + sigma * sigma * u.re / 2.0).abs() < 1e-15);
        }

        let log = ito_to_stratonovich(&ModelSpec::nagumo(0.3, sigma).unwrap());
        for (c, u) in log.apply(&f).values().iter().zip(f.values()) {
            let u = u.re;
            let expect = -(sigma * sigma / 2.0) * u * (1.0 - u) * (1.0 - 2.0 * u);
            assert!((c.re - expect).abs() < 1e-15);
        }

        let nls = ito_to_stratonovich(&ModelSpec::nls(sigma, Interpretation::Ito).unwrap());
        let z = Complex64::new(0.3, -1.1);
        assert!((nls.at(z) - sigma * sigma / 2.0 * z).norm() < 1e-15);
    }

    #[test]
    fn correction_vanishes_only_for_constant_g() {
        let g = far();
        let f = ScalarField::from_fn_real(g, |x| 0.2 + 0.05 * x);
        for noise in [NoiseKind::Linear, NoiseKind::Logistic, NoiseKind::Additive] {
            let m = ModelSpec::burgers(1.0, noise, 0.4).unwrap();
            let c = ito_to_stratonovich(&m).apply(&f);
            let zero = c.sup_norm() == 0.0;
            assert_eq!(zero, noise == NoiseKind::Additive, "{noise:?}");
        }
    }

    #[test]
    fn conversion_round_trip_restores_drift() {
        let g = far();
        let f = ScalarField::from_fn_real(g, |x| (0.3 * x).tanh() * 0.5 + 0.5);
        let m = ModelSpec::nagumo(0.3, 0.8).unwrap();
        let back = m
            .converted_to(Interpretation::Stratonovich)
            .converted_to(Interpretation::Ito);
        assert_eq!(back.correction(), None);
        let a = drift_eval(&m, &f).unwrap();
        let b = drift_eval(&back, &f).unwrap();
        assert_eq!(a, b);
    }
}
