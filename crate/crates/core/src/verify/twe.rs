//! Travelling-wave equations evaluated on closed-form profiles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelKind, ModelSpec, NoiseKind};
use crate::waves::{nls_soliton, WaveProfile};

const SAMPLES: usize = 4001;
const HALF_WIDTHS: f64 = 40.0;

/// Sample points covering the profile: ±40 widths around the centre.
pub fn profile_samples(profile: &WaveProfile) -> Vec<f64> {
    let b = profile.inverse_width();
    let half = if b > 0.0 {
        HALF_WIDTHS / b
    } else {
        HALF_WIDTHS
    };
    (0..SAMPLES)
        .map(|i| -half + 2.0 * half * i as f64 / (SAMPLES - 1) as f64)
        .collect()
}

/// Sup-norm of the travelling-wave equation of `m` with `u = Φ(x - ct)`:
///
/// * Nagumo: `Φ'' + cΦ' + Φ(1-Φ)(Φ-a)`
/// * Burgers: `νΦ'' + cΦ' - ΦΦ'`
/// * KdV: `cΦ' + 6ΦΦ' - Φ'''`
/// * NLS with carrier `e^{i(kx-ωt)}`: `ωΦ + Φ'' - k²Φ + Φ³` and `(2k - c)Φ'`
pub fn twe_residual(profile: &WaveProfile, c: f64, m: &ModelSpec) -> Result<f64> {
    let xi = profile_samples(profile);
    let p = |o: u8, x: f64| profile.derivative(o, x);
    let carrier = profile.carrier();
    let worst = xi
        .iter()
        .map(|&x| {
            let (u, u1, u2) = (p(0, x), p(1, x), p(2, x));
            Ok(match m.kind {
                ModelKind::Nagumo { a } => u2 + c * u1 + u * (1.0 - u) * (u - a),
                ModelKind::Burgers { nu } => nu * u2 + c * u1 - u * u1,
                ModelKind::KdV => c * u1 + 6.0 * u * u1 - p(3, x),
                ModelKind::Nls => {
                    let (k, omega) = carrier.ok_or_else(|| {
                        Error::MissingParameters("NLS profile needs k and ω".into())
                    })?;
                    let re = omega * u + u2 - k * k * u + u * u * u;
                    let im = (2.0 * k - c) * u1;
                    re.abs().max(im.abs())
                }
            }
            .abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(worst.into_iter().fold(0.0, f64::max))
}

/// Residual fields of the stochastic travelling-wave equation
/// `-cΘ' + ΘΘ' e^{σβ-σ²t/2} - νΘ''` at several `(t, β)` samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StochasticTweReport {
    pub xi: Vec<f64>,
    pub samples: Vec<(f64, f64)>,
    pub fields: Vec<Vec<f64>>,
    pub sup_norms: Vec<f64>,
    /// Largest pairwise sup-norm difference between sample fields.
    pub spread: f64,
    /// Sup-norm of `ΘΘ'`, the natural scale of the spread.
    pub reference: f64,
}

pub fn stochastic_twe_field(
    profile: &WaveProfile,
    c: f64,
    nu: f64,
    sigma: f64,
    t: f64,
    beta: f64,
    xi: f64,
) -> f64 {
    let (u, u1, u2) = (
        profile.derivative(0, xi),
        profile.derivative(1, xi),
        profile.derivative(2, xi),
    );
    let e = (sigma * beta - 0.5 * sigma * sigma * t).exp();
    -c * u1 + u * u1 * e - nu * u2
}

pub fn stochastic_twe_residual(
    profile: &WaveProfile,
    c: f64,
    nu: f64,
    sigma: f64,
    samples: &[(f64, f64)],
) -> StochasticTweReport {
    let xi = profile_samples(profile);
    let fields: Vec<Vec<f64>> = samples
        .iter()
        .map(|&(t, b)| {
            xi.iter()
                .map(|&x| stochastic_twe_field(profile, c, nu, sigma, t, b, x))
                .collect()
        })
        .collect();
    let sup = |v: &[f64]| v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let sup_norms = fields.iter().map(|f| sup(f)).collect();
    let mut spread: f64 = 0.0;
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let d: Vec<f64> = fields[i]
                .iter()
                .zip(&fields[j])
                .map(|(a, b)| a - b)
                .collect();
            spread = spread.max(sup(&d));
        }
    }
    let reference = sup(&xi
        .iter()
        .map(|&x| profile.derivative(0, x) * profile.derivative(1, x))
        .collect::<Vec<_>>());
    StochasticTweReport {
        xi,
        samples: samples.to_vec(),
        fields,
        sup_norms,
        spread,
        reference,
    }
}

/// Reduced equations of the soliton with phase `e^{i(kx - ωt - σβ + σ²t/2)}`
/// in Itô NLS, written for `i dψ = …`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionFields {
    pub xi: Vec<f64>,
    pub profile: Vec<f64>,
    /// `(ω - σ²/2)Φ + Φ'' - k²Φ + Φ³` with `ω = k² - A²/2 + σ²/2`, the only
    /// frequency balancing it.
    pub real: Vec<f64>,
    /// `-cΦ' - (σ²/2)Φ + 2kΦ'` with `c = 2k`.
    pub imag: Vec<f64>,
}

pub fn nls_ansatz_c_obstruction(amplitude: f64, k: f64, sigma: f64) -> Result<ObstructionFields> {
    let p = nls_soliton(amplitude, k)?;
    let xi = profile_samples(&p);
    let c = p.speed();
    let half_s2 = 0.5 * sigma * sigma;
    let omega = k * k - 0.5 * amplitude * amplitude + half_s2;
    let mut out = ObstructionFields {
        xi: xi.clone(),
        profile: Vec::with_capacity(xi.len()),
        real: Vec::with_capacity(xi.len()),
        imag: Vec::with_capacity(xi.len()),
    };
    for &x in &xi {
        let (u, u1, u2) = (p.derivative(0, x), p.derivative(1, x), p.derivative(2, x));
        out.profile.push(u);
        out.real
            .push((omega - half_s2) * u + u2 - k * k * u + u * u * u);
        out.imag.push(-c * u1 - half_s2 * u + 2.0 * k * u1);
    }
    Ok(out)
}

/// True iff `g(z h) = z g(h)` on every sample, i.e. `g` is linear there.
pub fn linearity_check(g: NoiseKind, samples: &[(f64, f64)]) -> bool {
    samples.iter().all(|&(z, h)| {
        let lhs = g.g((z * h).into()).re;
        let rhs = z * g.g(h.into()).re;
        (lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs())
    })
}
