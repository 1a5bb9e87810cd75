//! Spatial derivatives: second/fourth order central differences and Fourier
//! spectral differentiation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{Boundary, ScalarField, SpatialGrid};
use super::spectral;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivScheme {
    CentralFD2,
    CentralFD4,
    Spectral,
}

impl DerivScheme {
    /// Spectral on periodic grids, second-order differences otherwise.
    pub fn default_for(boundary: Boundary) -> Self {
        match boundary {
            Boundary::Periodic => DerivScheme::Spectral,
            Boundary::FarField => DerivScheme::CentralFD2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivOp {
    pub scheme: DerivScheme,
    pub order: u8,
}

impl DerivOp {
    pub fn new(scheme: DerivScheme, order: u8) -> Self {
        Self { scheme, order }
    }
}

// (offset, weight) pairs; the result is divided by dx^order.
type Stencil = &'static [(isize, f64)];

const FD2: [Stencil; 3] = [
    &[(-1, -0.5), (1, 0.5)],
    &[(-1, 1.0), (0, -2.0), (1, 1.0)],
    &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
];

const FD4: [Stencil; 3] = [
    &[
        (-2, 1.0 / 12.0),
        (-1, -8.0 / 12.0),
        (1, 8.0 / 12.0),
        (2, -1.0 / 12.0),
    ],
    &[
        (-2, -1.0 / 12.0),
        (-1, 16.0 / 12.0),
        (0, -30.0 / 12.0),
        (1, 16.0 / 12.0),
        (2, -1.0 / 12.0),
    ],
    &[
        (-3, 0.125),
        (-2, -1.0),
        (-1, 1.625),
        (1, -1.625),
        (2, 1.0),
        (3, -0.125),
    ],
];

// Second-order accurate forward stencils anchored at the node itself.
const FORWARD: [&[f64]; 3] = [
    &[-1.5, 2.0, -0.5],
    &[2.0, -5.0, 4.0, -1.0],
    &[-2.5, 9.0, -12.0, 7.0, -1.5],
];

fn half_width(stencil: Stencil) -> usize {
    stencil
        .iter()
        .map(|(o, _)| o.unsigned_abs())
        .max()
        .unwrap_or(0)
}

/// Returns the `order`-th derivative of `f` sampled on the same grid.
pub fn spatial_deriv(f: &ScalarField, op: DerivOp) -> Result<ScalarField> {
    let values = deriv_values(f.grid(), f.values(), op)?;
    Ok(ScalarField::with_values_like(f, values))
}

pub(crate) fn deriv_values(
    grid: &SpatialGrid,
    v: &[Complex64],
    op: DerivOp,
) -> Result<Vec<Complex64>> {
    if !(1..=3).contains(&op.order) {
        return Err(Error::OrderUnsupported(op.order));
    }
    match op.scheme {
        DerivScheme::Spectral => {
            if !grid.is_periodic() {
                return Err(Error::SpectralOnNonPeriodic);
            }
            Ok(spectral_deriv(grid, v, op.order))
        }
        DerivScheme::CentralFD2 => Ok(fd_deriv(grid, v, &FD2, op.order)),
        DerivScheme::CentralFD4 => Ok(fd_deriv(grid, v, &FD4, op.order)),
    }
}

fn spectral_deriv(grid: &SpatialGrid, v: &[Complex64], order: u8) -> Vec<Complex64> {
    let n = v.len();
    let symbol = spectral::derivative_symbol(n, grid.length(), order);
    let mut buf = v.to_vec();
    spectral::forward(&mut buf);
    buf.iter_mut().zip(&symbol).for_each(|(b, s)| *b *= s);
    spectral::inverse(&mut buf);
    buf
}

fn fd_deriv(
    grid: &SpatialGrid,
    v: &[Complex64],
    table: &[Stencil; 3],
    order: u8,
) -> Vec<Complex64> {
    let n = v.len() as isize;
    let idx = (order - 1) as usize;
    let inv = 1.0 / grid.dx().powi(order as i32);
    let central = table[idx];
    let fallback = FD2[idx];
    let hw = half_width(central) as isize;
    let hw2 = half_width(fallback) as isize;
    let apply = |i: isize, st: Stencil| -> Complex64 {
        st.iter()
            .map(|&(o, w)| v[(i + o).rem_euclid(n) as usize] * w)
            .sum::<Complex64>()
            * inv
    };
    (0..n)
        .map(|i| {
            if grid.is_periodic() || (i >= hw && i + hw < n) {
                apply(i, central)
            } else if i >= hw2 && i + hw2 < n {
                apply(i, fallback)
            } else {
                one_sided(v, i as usize, idx, inv)
            }
        })
        .collect()
}

fn one_sided(v: &[Complex64], i: usize, idx: usize, inv: f64) -> Complex64 {
    let w = FORWARD[idx];
    let n = v.len();
    if i + w.len() <= n {
        w.iter()
            .enumerate()
            .map(|(j, &c)| v[i + j] * c)
            .sum::<Complex64>()
            * inv
    } else {
        // backward: mirror the forward stencil, odd orders flip sign
        let sign = if idx.is_multiple_of(2) { -1.0 } else { 1.0 };
        w.iter()
            .enumerate()
            .map(|(j, &c)| v[i - j] * (sign * c))
            .sum::<Complex64>()
            * inv
    }
}
