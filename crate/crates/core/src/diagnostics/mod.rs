//! Wave observables and ensemble statistics.

mod ensemble;
mod observables;

pub use ensemble::{ensemble_stats, summarize, EnsembleConfig, EnsembleSource, EnsembleStats};
pub use observables::{
    background_level, front_crossing, front_position, phase_extract, soliton_position_amplitude,
    Crossing, Observable,
};
