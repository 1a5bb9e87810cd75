//! Closed-form travelling-wave profiles with analytic derivatives.
//!
//! All profiles are written in the co-moving coordinate `ξ = x - c t`.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nagumo front slope parameter: `Φ(ξ) = ½[1 + tanh(-s ξ)]`.
const NAGUMO_SLOPE: f64 = SQRT_2 / 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveProfile {
    /// `Φ(κ ξ)` with `Φ(ξ) = ½[1 + tanh(-(√2/4) ξ)]`; `κ = 1` is the
    /// deterministic front.
    Nagumo {
        a: f64,
        stretch: f64,
    },
    /// `c - ((f⁺ - f⁻)/2) tanh((f⁺ - f⁻) ξ / (4ν))`.
    BurgersFront {
        f_plus: f64,
        f_minus: f64,
        nu: f64,
    },
    /// `A sech²(B ξ)` with `A = -c/2`, `B = √c/2`.
    KdVSoliton {
        c: f64,
    },
    /// `A sech(A ξ / √2)`.
    NlsSoliton {
        amplitude: f64,
        k: f64,
    },
    Constant {
        value: f64,
    },
}

/// Deterministic Nagumo front for threshold `a`.
pub fn nagumo_profile(a: f64) -> Result<WaveProfile> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::ThresholdOutOfRange(a));
    }
    Ok(WaveProfile::Nagumo { a, stretch: 1.0 })
}

/// Viscous Burgers front joining `f⁺` (at -∞) to `f⁻` (at +∞).
pub fn burgers_profile(f_plus: f64, f_minus: f64, nu: f64) -> Result<WaveProfile> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "nu",
            value: nu,
            reason: "viscosity must be positive",
        });
    }
    if f_plus < f_minus {
        return Err(Error::ReversedAsymptotes { f_plus, f_minus });
    }
    Ok(WaveProfile::BurgersFront {
        f_plus,
        f_minus,
        nu,
    })
}

/// KdV soliton for `du = [6 u u_x - u_xxx] dt`, moving right with speed `c`.
pub fn kdv_soliton_profile(c: f64) -> Result<WaveProfile> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::NonpositiveSpeed(c));
    }
    Ok(WaveProfile::KdVSoliton { c })
}

/// Bright NLS soliton; carrier wavenumber `k`, speed `2k`, frequency
/// `k² - A²/2`.
pub fn nls_soliton(amplitude: f64, k: f64) -> Result<WaveProfile> {
    if !(amplitude > 0.0 && amplitude.is_finite()) {
        return Err(Error::NonpositiveAmplitude(amplitude));
    }
    Ok(WaveProfile::NlsSoliton { amplitude, k })
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

impl WaveProfile {
    pub fn constant(value: f64) -> Self {
        WaveProfile::Constant { value }
    }

    /// Profile speed `c` of the travelling wave this profile belongs to.
    pub fn speed(&self) -> f64 {
        match *self {
            WaveProfile::Nagumo { a, stretch } => SQRT_2 * (0.5 - a) / stretch,
            WaveProfile::BurgersFront {
                f_plus, f_minus, ..
            } => 0.5 * (f_plus + f_minus),
            WaveProfile::KdVSoliton { c } => c,
            WaveProfile::NlsSoliton { k, .. } => 2.0 * k,
            WaveProfile::Constant { .. } => 0.0,
        }
    }

    /// NLS carrier `(k, ω)`; `None` for other profiles.
    pub fn carrier(&self) -> Option<(f64, f64)> {
        match *self {
            WaveProfile::NlsSoliton { amplitude, k } => {
                Some((k, k * k - 0.5 * amplitude * amplitude))
            }
            _ => None,
        }
    }

    /// Inverse width `B` of the sech-type solitons, stretch `κ·√2/4` for the
    /// Nagumo front, `(f⁺-f⁻)/(4ν)` for Burgers.
    pub fn inverse_width(&self) -> f64 {
        match *self {
            WaveProfile::Nagumo { stretch, .. } => NAGUMO_SLOPE * stretch,
            WaveProfile::BurgersFront {
                f_plus,
                f_minus,
                nu,
            } => (f_plus - f_minus) / (4.0 * nu),
            WaveProfile::KdVSoliton { c } => 0.5 * c.sqrt(),
            WaveProfile::NlsSoliton { amplitude, .. } => amplitude / SQRT_2,
            WaveProfile::Constant { .. } => 0.0,
        }
    }

    /// Signed amplitude of the solitons (`A`), jump `f⁺ - f⁻` for fronts.
    pub fn amplitude(&self) -> f64 {
        match *self {
            WaveProfile::Nagumo { .. } => 1.0,
            WaveProfile::BurgersFront {
                f_plus, f_minus, ..
            } => f_plus - f_minus,
            WaveProfile::KdVSoliton { c } => -0.5 * c,
            WaveProfile::NlsSoliton { amplitude, .. } => amplitude,
            WaveProfile::Constant { .. } => 0.0,
        }
    }

    pub fn viscosity(&self) -> Option<f64> {
        match *self {
            WaveProfile::BurgersFront { nu, .. } => Some(nu),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        match *self {
            WaveProfile::Constant { .. } => true,
            WaveProfile::BurgersFront {
                f_plus, f_minus, ..
            } => f_plus == f_minus,
            _ => false,
        }
    }

    /// Limits at `(-∞, +∞)`.
    pub fn limits(&self) -> (f64, f64) {
        match *self {
            WaveProfile::Nagumo { .. } => (1.0, 0.0),
            WaveProfile::BurgersFront {
                f_plus, f_minus, ..
            } => (f_plus, f_minus),
            WaveProfile::KdVSoliton { .. } | WaveProfile::NlsSoliton { .. } => (0.0, 0.0),
            WaveProfile::Constant { value } => (value, value),
        }
    }

    /// Named parameters, for reports.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        let mut p = match *self {
            WaveProfile::Nagumo { a, stretch } => vec![("a", a), ("stretch", stretch)],
            WaveProfile::BurgersFront {
                f_plus,
                f_minus,
                nu,
            } => vec![("f_plus", f_plus), ("f_minus", f_minus), ("nu", nu)],
            WaveProfile::KdVSoliton { .. } => {
                vec![("A", self.amplitude()), ("B", self.inverse_width())]
            }
            WaveProfile::NlsSoliton { amplitude, k } => {
                vec![
                    ("A", amplitude),
                    ("B", self.inverse_width()),
                    ("k", k),
                    ("omega", self.carrier().unwrap().1),
                ]
            }
            WaveProfile::Constant { value } => vec![("value", value)],
        };
        p.push(("c", self.speed()));
        p
    }

    pub fn value(&self, xi: f64) -> f64 {
        self.derivative(0, xi)
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        Complex64::new(self.value(xi), 0.0)
    }

    /// `d^order Φ / dξ^order` for `order ≤ 3`, in closed form.
    pub fn derivative(&self, order: u8, xi: f64) -> f64 {
        assert!(order <= 3, "closed-form derivatives stop at third order");
        match *self {
            WaveProfile::Nagumo { stretch, .. } => {
                let s = NAGUMO_SLOPE;
                let t = (s * stretch * xi).tanh();
                let sech2 = sech(s * stretch * xi).powi(2);
                let k = stretch.powi(order as i32);
                k * match order {
                    0 => 0.5 * (1.0 - t),
                    1 => -0.5 * s * sech2,
                    2 => s * s * t * sech2,
                    _ => s.powi(3) * sech2 * (1.0 - 3.0 * t * t),
                }
            }
            WaveProfile::BurgersFront {
                f_plus, f_minus, ..
            } => {
                let h = 0.5 * (f_plus - f_minus);
                let b = self.inverse_width();
                let t = (b * xi).tanh();
                let sech2 = sech(b * xi).powi(2);
                match order {
                    0 => self.speed() - h * t,
                    1 => -h * b * sech2,
                    2 => 2.0 * h * b * b * t * sech2,
                    _ => 2.0 * h * b.powi(3) * sech2 * (1.0 - 3.0 * t * t),
                }
            }
            WaveProfile::KdVSoliton { .. } => {
                let a = self.amplitude();
                let b = self.inverse_width();
                let t = (b * xi).tanh();
                let s2 = sech(b * xi).powi(2);
                a * match order {
                    0 => s2,
                    1 => -2.0 * b * t * s2,
                    2 => -2.0 * b * b * s2 * (1.0 - 3.0 * t * t),
                    _ => 8.0 * b.powi(3) * t * s2 * (2.0 - 3.0 * t * t),
                }
            }
            WaveProfile::NlsSoliton { amplitude, .. } => {
                let b = self.inverse_width();
                let t = (b * xi).tanh();
                let s = sech(b * xi);
                amplitude
                    * match order {
                        0 => s,
                        1 => -b * s * t,
                        2 => b * b * s * (1.0 - 2.0 * s * s),
                        _ => b.powi(3) * s * t * (6.0 * s * s - 1.0),
                    }
            }
            WaveProfile::Constant { value } => {
                if order == 0 {
                    value
                } else {
                    0.0
                }
            }
        }
    }
}
