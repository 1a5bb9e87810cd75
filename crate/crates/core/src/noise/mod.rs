//! Reproducible Brownian paths, dyadic refinement and path functionals.

mod path;
mod rng;

pub use path::{refine_path, sample_path, BrownianPath, PathPoint};
pub use rng::DrawKey;
