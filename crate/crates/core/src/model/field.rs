//! Uniform 1D grids and complex-valued fields sampled on them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boundary treatment of a truncated spatial domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// Nodes at `x_min + i dx`, `i < n`; `x_max` is identified with `x_min`.
    Periodic,
    /// Nodes include both endpoints; the two edge nodes hold the far-field
    /// limits of the wave and are pinned during time stepping.
    FarField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
    boundary: Boundary,
}

impl SpatialGrid {
    pub const MIN_NODES: usize = 8;

    pub fn new(x_min: f64, x_max: f64, n: usize, boundary: Boundary) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "need finite x_max > x_min, got [{x_min}, {x_max}]"
            )));
        }
        if n < Self::MIN_NODES {
            return Err(Error::InvalidGrid(format!(
                "need at least {} nodes, got {n}",
                Self::MIN_NODES
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n,
            boundary,
        })
    }

    pub fn periodic(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        Self::new(x_min, x_max, n, Boundary::Periodic)
    }

    pub fn far_field(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        Self::new(x_min, x_max, n, Boundary::FarField)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_periodic(&self) -> bool {
        self.boundary == Boundary::Periodic
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        match self.boundary {
            Boundary::Periodic => self.length() / self.n as f64,
            Boundary::FarField => self.length() / (self.n - 1) as f64,
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Index range of the central `fraction` of the nodes.
    pub fn interior(&self, fraction: f64) -> std::ops::Range<usize> {
        let fraction = fraction.clamp(0.0, 1.0);
        let skip = ((self.n as f64) * (1.0 - fraction) / 2.0).round() as usize;
        let skip = skip.min(self.n / 2 - 1);
        skip..self.n - skip
    }

    /// Interior fraction used for norms: 0.8 on far-field grids, everything on
    /// periodic ones.
    pub fn default_interior_fraction(&self) -> f64 {
        match self.boundary {
            Boundary::Periodic => 1.0,
            Boundary::FarField => 0.8,
        }
    }

    /// Index of the node nearest to `x` (wrapped on periodic grids).
    pub fn nearest(&self, x: f64) -> usize {
        let dx = self.dx();
        match self.boundary {
            Boundary::Periodic => {
                let s = ((x - self.x_min) / dx).round();
                s.rem_euclid(self.n as f64) as usize % self.n
            }
            Boundary::FarField => {
                let s = ((x - self.x_min) / dx).round();
                s.clamp(0.0, (self.n - 1) as f64) as usize
            }
        }
    }
}

/// Samples of `u(., t)` on a grid. Real models keep every imaginary part at
/// exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: SpatialGrid,
    values: Vec<Complex64>,
    is_real: bool,
}

impl ScalarField {
    pub fn from_complex(grid: SpatialGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::FieldLength {
                len: values.len(),
                n: grid.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            is_real: false,
        })
    }

    pub fn from_real(grid: SpatialGrid, values: &[f64]) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::FieldLength {
                len: values.len(),
                n: grid.len(),
            });
        }
        Ok(Self {
            grid,
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            is_real: true,
        })
    }

    pub fn from_fn_real(grid: SpatialGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.len())
            .map(|i| Complex64::new(f(grid.x(i)), 0.0))
            .collect();
        Self {
            grid,
            values,
            is_real: true,
        }
    }

    pub fn from_fn_complex(grid: SpatialGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.x(i))).collect();
        Self {
            grid,
            values,
            is_real: false,
        }
    }

    pub fn zeros(grid: SpatialGrid, is_real: bool) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            is_real,
        }
    }

    pub fn constant(grid: SpatialGrid, value: f64) -> Self {
        Self::from_fn_real(grid, |_| value)
    }

    /// Builds a field with the realness flag of `like`, projecting away any
    /// imaginary round-off when that flag is set.
    pub(crate) fn with_values_like(like: &ScalarField, mut values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), like.grid.len());
        if like.is_real {
            for v in &mut values {
                v.im = 0.0;
            }
        }
        Self {
            grid: like.grid,
            values,
            is_real: like.is_real,
        }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn re(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> ScalarField {
        Self::with_values_like(self, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(
        &self,
        other: &ScalarField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> ScalarField {
        debug_assert_eq!(self.len(), other.len());
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let is_real = self.is_real && other.is_real;
        let mut out = Self {
            grid: self.grid,
            values,
            is_real,
        };
        if is_real {
            out.values.iter_mut().for_each(|v| v.im = 0.0);
        }
        out
    }

    pub fn scale(&self, s: f64) -> ScalarField {
        self.map(|v| v * s)
    }

    /// `self + s * other`
    pub fn axpy(&self, s: Complex64, other: &ScalarField) -> ScalarField {
        let is_real = self.is_real && other.is_real && s.im == 0.0;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a + s * b)
            .collect();
        let mut out = Self {
            grid: self.grid,
            values,
            is_real,
        };
        if is_real {
            out.values.iter_mut().for_each(|v| v.im = 0.0);
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Discrete L2 norm over the node range: `sqrt(dx * sum |v|^2)`.
    pub fn l2_norm_on(&self, range: std::ops::Range<usize>) -> f64 {
        let dx = self.grid.dx();
        (dx * self.values[range].iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn sup_norm_on(&self, range: std::ops::Range<usize>) -> f64 {
        self.values[range]
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm_on(0..self.len())
    }
}

/// Quadrature of `|f|^2` over the domain: rectangle rule on periodic grids,
/// trapezoid on far-field grids.
pub fn mass_l2(f: &ScalarField) -> f64 {
    let grid = f.grid();
    let dx = grid.dx();
    let v = f.values();
    let sum: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    match grid.boundary() {
        Boundary::Periodic => dx * sum,
        Boundary::FarField => {
            let ends = 0.5 * (v[0].norm_sqr() + v[v.len() - 1].norm_sqr());
            dx * (sum - ends)
        }
    }
}
