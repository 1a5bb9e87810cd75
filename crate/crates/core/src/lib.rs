//! Stochastic travelling waves: model equations, closed-form candidates,
//! Brownian paths, method-of-lines integrators, pathwise residual checks and
//! front/soliton diagnostics.

pub mod diagnostics;
pub mod error;
pub mod export;
pub mod model;
pub mod noise;
pub mod sim;
pub mod stats;
pub mod verify;
pub mod waves;

pub use error::{Error, Result};
pub use model::{
    Boundary, Interpretation, ModelKind, ModelSpec, NoiseKind, ScalarField, SpatialGrid,
};
pub use noise::{sample_path, BrownianPath, PathPoint};
pub use waves::{CandidateSolution, ExpectedVerdict, WaveProfile};
