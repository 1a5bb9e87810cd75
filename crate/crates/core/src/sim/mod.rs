//! Method-of-lines integrators along a Brownian path, plus the stability and
//! strong-convergence harnesses.

mod harness;
mod integrate;
mod stepper;

pub use harness::{
    stability_probe, strong_convergence_ensemble, strong_convergence_paths,
    strong_convergence_test, strong_convergence_with, ConvergenceReport, StabilityReport,
    StabilityRow,
};
pub use integrate::{integrate, Trajectory};
pub use stepper::{
    em_step, heun_stratonovich_step, nls_phase_rotation, semi_implicit_step, Scheme, StepperSpec,
    BLOWUP_LEVEL,
};
