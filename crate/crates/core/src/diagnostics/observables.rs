//! Observables of a single field: front and soliton positions, background,
//! phase.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{mass_l2, ScalarField};

/// Level crossing of a field, with the number of crossings found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub position: f64,
    /// More than one means the field is not monotone through the level; the
    /// first crossing is reported.
    pub crossings: usize,
}

pub fn front_crossing(f: &ScalarField, level: f64) -> Result<Crossing> {
    let g = f.grid();
    let v = f.re();
    let mut first = None;
    let mut count = 0;
    let mut hit = |x: f64| {
        count += 1;
        first.get_or_insert(x);
    };
    for i in 0..v.len() - 1 {
        let (a, b) = (v[i] - level, v[i + 1] - level);
        if a == 0.0 {
            hit(g.x(i));
        } else if a * b < 0.0 {
            hit(g.x(i) + a / (a - b) * g.dx());
        }
    }
    if v[v.len() - 1] == level {
        hit(g.x(v.len() - 1));
    }
    first
        .map(|position| Crossing {
            position,
            crossings: count,
        })
        .ok_or(Error::NoCrossing(level))
}

/// Location where the field first crosses `level`, by linear interpolation.
pub fn front_position(f: &ScalarField, level: f64) -> Result<f64> {
    front_crossing(f, level).map(|c| c.position)
}

/// Mean over the outer 5% of nodes on each side: signed for real fields,
/// of the modulus for complex ones.
pub fn background_level(f: &ScalarField) -> f64 {
    let n = f.len();
    let w = ((0.05 * n as f64).round() as usize).max(1);
    let idx = (0..w).chain(n - w..n);
    let sum: f64 = if f.is_real() {
        idx.map(|i| f.values()[i].re).sum()
    } else {
        idx.map(|i| f.values()[i].norm()).sum()
    };
    sum / (2 * w) as f64
}

/// Sub-grid peak of `|f - background|` (of `|f|` for complex fields).
/// The amplitude is signed for real fields.
pub fn soliton_position_amplitude(f: &ScalarField) -> Result<(f64, f64)> {
    let g = f.grid();
    let n = f.len();
    let s: Vec<f64> = if f.is_real() {
        let b = background_level(f);
        f.values().iter().map(|v| v.re - b).collect()
    } else {
        f.values().iter().map(|v| v.norm()).collect()
    };
    let (imax, peak) = s.iter().enumerate().fold((0, 0.0f64), |(bi, bv), (i, v)| {
        if v.abs() > bv.abs() {
            (i, *v)
        } else {
            (bi, bv)
        }
    });
    let lowest = s.iter().copied().fold(f64::INFINITY, f64::min);
    let highest = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak.abs() <= 1e-12 || highest - lowest <= 1e-12 {
        return Err(Error::NoPeak);
    }
    let (left, right) = if g.is_periodic() {
        ((imax + n - 1) % n, (imax + 1) % n)
    } else if imax == 0 || imax == n - 1 {
        return Err(Error::NoPeak);
    } else {
        (imax - 1, imax + 1)
    };
    let (a, b, c) = (s[left], peak, s[right]);
    let curv = a - 2.0 * b + c;
    let delta = if curv != 0.0 {
        0.5 * (a - c) / curv
    } else {
        0.0
    };
    let delta = delta.clamp(-0.5, 0.5);
    let position = g.x(imax) + delta * g.dx();
    let amplitude = b - 0.25 * (a - c) * delta;
    Ok((position, amplitude))
}

/// Argument of `f` at the node nearest `x_ref`.
pub fn phase_extract(f: &ScalarField, x_ref: f64) -> Result<f64> {
    let v = f.values()[f.grid().nearest(x_ref)];
    if v.norm() == 0.0 {
        return Err(Error::ZeroModulus);
    }
    Ok(v.arg())
}

/// Scalar observables tracked over an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum Observable {
    FrontPosition { level: f64 },
    SolitonPosition,
    SolitonAmplitude,
    Background,
    Mass,
}

impl Observable {
    pub fn name(&self) -> &'static str {
        match self {
            Observable::FrontPosition { .. } => "front-position",
            Observable::SolitonPosition => "soliton-position",
            Observable::SolitonAmplitude => "soliton-amplitude",
            Observable::Background => "background",
            Observable::Mass => "mass",
        }
    }

    pub fn measure(&self, f: &ScalarField) -> Result<f64> {
        match *self {
            Observable::FrontPosition { level } => front_position(f, level),
            Observable::SolitonPosition => soliton_position_amplitude(f).map(|p| p.0),
            Observable::SolitonAmplitude => soliton_position_amplitude(f).map(|p| p.1),
            Observable::Background => Ok(background_level(f)),
            Observable::Mass => Ok(mass_l2(f)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SpatialGrid;
    use crate::waves::{burgers_profile, nagumo_profile};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn far(n: usize) -> SpatialGrid {
        SpatialGrid::far_field(-20.0, 20.0, n).unwrap()
    }

    #[test]
    fn nagumo_front_at_origin_and_shifted() {
        let g = far(401);
        let dx2 = g.dx() * g.dx();
        let p = nagumo_profile(0.3).unwrap();
        let f = ScalarField::from_fn_real(g, |x| p.value(x));
        assert!(front_position(&f, 0.5).unwrap().abs() <= dx2);
        let f = ScalarField::from_fn_real(g, |x| p.value(x - 3.0));
        assert!((front_position(&f, 0.5).unwrap() - 3.0).abs() <= dx2);
        let b = burgers_profile(2.0, 0.0, 1.0).unwrap();
        let f = ScalarField::from_fn_real(g, |x| b.value(x));
        assert!(front_position(&f, 1.0).unwrap().abs() <= dx2);
        assert_eq!(front_position(&f, 5.0), Err(Error::NoCrossing(5.0)));
    }

    #[test]
    fn non_monotone_crossings_are_counted() {
        let g = far(201);
        let f = ScalarField::from_fn_real(g, |x| (x / 3.0).cos());
        let c = front_crossing(&f, 0.0).unwrap();
        assert!(c.crossings > 1);
        // first zero of cos(x/3) inside [-20, 20] is at -3π/2 · 3
        assert!((c.position + 4.5 * std::f64::consts::PI).abs() < 1e-2);
    }

    #[test]
    fn sech_peak() {
        let g = SpatialGrid::periodic(-20.0, 20.0, 400).unwrap();
        let (a, b) = (1.3, 0.9);
        let f = ScalarField::from_fn_real(g, |x| a / (b * (x - 5.0)).cosh());
        let (pos, amp) = soliton_position_amplitude(&f).unwrap();
        assert!((pos - 5.0).abs() <= g.dx() * g.dx(), "{pos}");
        assert!((amp - a).abs() < 1e-4, "{amp}");
        let flat = ScalarField::constant(g, 0.4);
        assert_eq!(soliton_position_amplitude(&flat), Err(Error::NoPeak));
    }

    #[test]
    fn background_examples() {
        let g = far(101);
        assert_eq!(background_level(&ScalarField::constant(g, 0.0)), 0.0);
        assert_eq!(background_level(&ScalarField::constant(g, 7.0)), 7.0);
        let f = ScalarField::from_fn_real(g, |x| -0.3 + (-x * x).exp());
        assert!((background_level(&f) + 0.3).abs() < 1e-12);
    }

    #[test]
    fn phase_examples() {
        let g = far(41);
        assert_eq!(
            phase_extract(&ScalarField::constant(g, 2.0), 0.0).unwrap(),
            0.0
        );
        let f = ScalarField::from_fn_complex(g, |_| Complex64::new(0.0, 3.0));
        assert!((phase_extract(&f, 1.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(
            phase_extract(&ScalarField::zeros(g, false), 0.0),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn observable_config_is_fail_closed() {
        let o: Observable =
            serde_json::from_str(r#"{"kind": "front-position", "level": 0.5}"#).unwrap();
        assert_eq!(o, Observable::FrontPosition { level: 0.5 });
        assert!(
            serde_json::from_str::<Observable>(r#"{"kind": "front-position", "levle": 0.5}"#)
                .is_err()
        );
    }

    proptest! {
        #[test]
        fn positions_are_translation_equivariant(shift in -5.0f64..5.0) {
            let g = SpatialGrid::periodic(-30.0, 30.0, 600).unwrap();
            let tol = 2.0 * g.dx() * g.dx();
            let p = nagumo_profile(0.3).unwrap();
            let front = |s: f64| ScalarField::from_fn_real(g, move |x| p.value(x - s));
            let d = front_position(&front(shift), 0.5).unwrap() - front_position(&front(0.0), 0.5).unwrap();
            prop_assert!((d - shift).abs() <= tol);
            let bump = |s: f64| ScalarField::from_fn_real(g, move |x| 1.0 / (x - s).cosh().powi(2));
            let d = soliton_position_amplitude(&bump(shift)).unwrap().0
                - soliton_position_amplitude(&bump(0.0)).unwrap().0;
            prop_assert!((d - shift).abs() <= tol);
        }
    }
}
