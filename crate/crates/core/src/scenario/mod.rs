//! Monte Carlo experiments: user drops, spacing and aperture sweeps,
//! eigen-spectra and the two-element study.

mod drops;
mod engine;
mod spectrum;
mod two_element;

pub use drops::{drop_rng, sample_drop, DistanceSampling, DropConfig};
pub use engine::{run_downlink, run_duality, run_uplink, DualityCell, Layout, ScenarioConfig, SweepCell};
pub use spectrum::{eigen_spectrum, SpectrumKind};
pub use two_element::{two_element_row, TwoElementRow};
