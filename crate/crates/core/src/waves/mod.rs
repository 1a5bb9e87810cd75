//! Closed-form profiles, candidate solutions and the candidate catalog.

mod candidate;
mod catalog;
mod profile;

pub use candidate::{
    ansatz_a_candidate, ansatz_b_candidate, ansatz_c_candidate, burgers_homogeneous_gbm,
    kdv_wadati_solution, nagumo_stochastic_wave, nls_strat_cs_solution, travelling_candidate,
    CandidateLabel, CandidateSolution, CustomEval, ExpectedVerdict,
};
pub use catalog::{catalog, lookup, CandidateParams, CatalogEntry};
pub use profile::{burgers_profile, kdv_soliton_profile, nagumo_profile, nls_soliton, WaveProfile};
