//! Substitution checks: pathwise residuals of candidates, travelling-wave
//! equation residuals, and the algebraic obstructions.

mod residual;
mod twe;

pub use residual::{
    classify, pathwise_residual, pathwise_residual_with, LevelResidual, ResidualForm,
    ResidualOptions, ResidualReport, Verdict, ORDER_GATE, TOL_INVALID, TOL_VALID,
};
pub use twe::{
    linearity_check, nls_ansatz_c_obstruction, profile_samples, stochastic_twe_field,
    stochastic_twe_residual, twe_residual, ObstructionFields, StochasticTweReport,
};
