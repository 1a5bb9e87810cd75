//! Stable string identifiers for the built-in candidates.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::candidate::{
    ansatz_a_candidate, ansatz_b_candidate, ansatz_c_candidate, burgers_homogeneous_gbm,
    kdv_wadati_solution, nagumo_stochastic_wave, nls_strat_cs_solution, travelling_candidate,
    CandidateSolution, ExpectedVerdict,
};
use super::profile::{burgers_profile, nagumo_profile};
use crate::error::{Error, Result};
use crate::model::{Boundary, ModelSpec, NoiseKind, SpatialGrid};

/// Optional overrides for the catalog defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CandidateParams {
    pub sigma: Option<f64>,
    pub a: Option<f64>,
    pub c: Option<f64>,
    pub amplitude: Option<f64>,
    pub k: Option<f64>,
    pub u0: Option<f64>,
    pub f_plus: Option<f64>,
    pub f_minus: Option<f64>,
    pub nu: Option<f64>,
}

/// Default grid and verification horizon for one catalog entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub summary: &'static str,
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub boundary: Boundary,
    pub horizon: f64,
    pub base_steps: usize,
    pub levels: usize,
}

const fn entry(
    id: &'static str,
    summary: &'static str,
    (x_min, x_max, n): (f64, f64, usize),
    boundary: Boundary,
    (horizon, base_steps, levels): (f64, usize, usize),
) -> CatalogEntry {
    CatalogEntry {
        id,
        summary,
        x_min,
        x_max,
        n,
        boundary,
        horizon,
        base_steps,
        levels,
    }
}

const CATALOG: &[CatalogEntry] = &[
    entry(
        "nagumo-exact",
        "exact stochastic Nagumo front (Itô, logistic noise)",
        (-20.0, 20.0, 401),
        Boundary::FarField,
        (1.0, 32, 5),
    ),
    entry(
        "nagumo-front",
        "deterministic Nagumo front against the noisy equation",
        (-20.0, 20.0, 401),
        Boundary::FarField,
        (1.0, 32, 5),
    ),
    entry(
        "kdv-wadati",
        "KdV soliton with additive-noise shift and background",
        (-20.0, 20.0, 256),
        Boundary::Periodic,
        (0.5, 64, 5),
    ),
    entry(
        "nls-strat-cs",
        "NLS soliton with phase e^{-iσβ} (Stratonovich)",
        (-20.0, 20.0, 256),
        Boundary::Periodic,
        (0.5, 128, 5),
    ),
    entry(
        "burgers-gbm",
        "spatially homogeneous geometric Brownian motion (Itô Burgers)",
        (-10.0, 10.0, 16),
        Boundary::Periodic,
        (1.0, 16, 6),
    ),
    entry(
        "burgers-front",
        "deterministic Burgers front against the noisy equation",
        (-15.0, 15.0, 301),
        Boundary::FarField,
        (1.0, 32, 5),
    ),
    entry(
        "ansatz-a",
        "Burgers front times e^{σβ-σ²t/2}",
        (-20.0, 20.0, 401),
        Boundary::FarField,
        (8.0, 64, 5),
    ),
    entry(
        "ansatz-b",
        "NLS soliton times e^{σβ-σ²t/2} (Itô)",
        (-20.0, 20.0, 256),
        Boundary::Periodic,
        (0.5, 128, 5),
    ),
    entry(
        "ansatz-c",
        "NLS soliton times e^{i(σ²t/2-σβ)} (Itô)",
        (-20.0, 20.0, 256),
        Boundary::Periodic,
        (0.5, 128, 5),
    ),
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn lookup(id: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

impl CatalogEntry {
    pub fn grid(&self) -> SpatialGrid {
        SpatialGrid::new(self.x_min, self.x_max, self.n, self.boundary).expect("catalog grid")
    }

    pub fn build(&self, p: &CandidateParams) -> Result<CandidateSolution> {
        let sigma = p.sigma.unwrap_or(0.5);
        let a = p.a.unwrap_or(0.3);
        let amplitude = p.amplitude.unwrap_or(SQRT_2);
        let k = p.k.unwrap_or(0.5);
        let front = || {
            burgers_profile(
                p.f_plus.unwrap_or(2.0),
                p.f_minus.unwrap_or(0.0),
                p.nu.unwrap_or(1.0),
            )
        };
        let noisy = if sigma == 0.0 {
            ExpectedVerdict::Valid
        } else {
            ExpectedVerdict::Invalid
        };
        match self.id {
            "nagumo-exact" => nagumo_stochastic_wave(a, sigma),
            "nagumo-front" => Ok(travelling_candidate(
                nagumo_profile(a)?,
                ModelSpec::nagumo(a, sigma)?,
                noisy,
            )),
            "kdv-wadati" => kdv_wadati_solution(p.c.unwrap_or(1.0), sigma),
            "nls-strat-cs" => nls_strat_cs_solution(amplitude, k, sigma),
            "burgers-gbm" => burgers_homogeneous_gbm(p.u0.unwrap_or(1.0), sigma),
            "burgers-front" => {
                let prof = front()?;
                let nu = prof.viscosity().expect("Burgers profile");
                Ok(travelling_candidate(
                    prof,
                    ModelSpec::burgers(nu, NoiseKind::Linear, sigma)?,
                    noisy,
                ))
            }
            "ansatz-a" => {
                let prof = front()?;
                ansatz_a_candidate(prof, p.c.unwrap_or(prof.speed()), sigma)
            }
            "ansatz-b" => ansatz_b_candidate(amplitude, k, sigma),
            "ansatz-c" => ansatz_c_candidate(amplitude, k, sigma),
            other => Err(Error::UnknownId(other.to_string())),
        }
    }
}
