//! Grids, fields, derivative operators and the model equations.

mod deriv;
mod equations;
mod field;
pub(crate) mod spectral;

pub(crate) use deriv::deriv_values;
pub use deriv::{spatial_deriv, DerivOp, DerivScheme};
pub use equations::{
    diffusion_eval, drift_eval, drift_eval_with, ito_to_stratonovich, DriftCorrection,
    Interpretation, ModelKind, ModelSpec, NoiseKind,
};
pub use field::{mass_l2, Boundary, ScalarField, SpatialGrid};
