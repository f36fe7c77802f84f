//! Strict TOML configuration. Every key has a default; unknown keys are
//! rejected with their dotted path.

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::link::Combiner;
use crate::matching::MatchingKind;
use crate::scenario::{DistanceSampling, DropConfig};
use crate::system::{dbw_to_watts, RadioFrontEnd};
use num_complex::Complex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArraySection {
    /// Element count for fixed-size sweeps; defaults to 16.
    pub elements: Option<usize>,
    /// Aperture in wavelengths for commands that use a single aperture.
    pub aperture: Option<f64>,
    /// Apertures in wavelengths for `sweep-aperture`.
    pub apertures: Vec<f64>,
    /// Dipole radius in wavelengths.
    pub radius: f64,
    /// `R_d / R_r`.
    pub dissipation_ratio: f64,
}

impl Default for ArraySection {
    fn default() -> Self {
        ArraySection { elements: None, aperture: None, apertures: vec![6.0], radius: 1e-3, dissipation_ratio: 1e-3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrontendSection {
    pub carrier_ghz: f64,
    pub bandwidth_mhz: f64,
    pub transmit_power_dbw: f64,
    /// `[re, im]` in ohms.
    pub generator_ohm: [f64; 2],
    pub load_ohm: [f64; 2],
    pub antenna_temperature_k: f64,
    pub noise_resistance_ohm: f64,
    /// `[re, im]`.
    pub noise_correlation: [f64; 2],
}

impl Default for FrontendSection {
    fn default() -> Self {
        FrontendSection {
            carrier_ghz: 3.5,
            bandwidth_mhz: 20.0,
            transmit_power_dbw: -30.0,
            generator_ohm: [186.0, -31.6],
            load_ohm: [186.0, -31.6],
            antenna_temperature_k: 290.0,
            noise_resistance_ohm: 5.0,
            noise_correlation: [0.1, 0.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingSection {
    pub rx: MatchingKind,
    pub tx: MatchingKind,
}

impl Default for MatchingSection {
    fn default() -> Self {
        MatchingSection { rx: MatchingKind::Full, tx: MatchingKind::Full }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub users: usize,
    pub drops: usize,
    pub seed: u64,
    pub combiner: Combiner,
    pub bs_height_m: f64,
    pub min_distance_m: f64,
    pub max_distance_m: f64,
    pub azimuth_min_deg: f64,
    pub azimuth_max_deg: f64,
    pub distance_sampling: DistanceSampling,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection {
            users: 10,
            drops: 200,
            seed: 1,
            combiner: Combiner::Mmse,
            bs_height_m: 10.0,
            min_distance_m: 15.0,
            max_distance_m: 150.0,
            azimuth_min_deg: -90.0,
            azimuth_max_deg: 90.0,
            distance_sampling: DistanceSampling::Uniform,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    /// Spacings in wavelengths.
    pub spacings: Vec<f64>,
    /// Matching kinds to sweep; defaults to `[matching.rx]`.
    pub matching: Option<Vec<MatchingKind>>,
    pub phi_start_deg: f64,
    pub phi_stop_deg: f64,
    pub phi_step_deg: f64,
    /// Azimuth of the interfering user in the two-element study.
    pub reference_phi_deg: f64,
    /// Horizontal distance of both users in the two-element study, m.
    pub ue_distance_m: f64,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            spacings: vec![0.1, 0.25, 0.5, 1.0],
            matching: None,
            phi_start_deg: -90.0,
            phi_stop_deg: 90.0,
            phi_step_deg: 1.0,
            reference_phi_deg: 30.0,
            ue_distance_m: 50.0,
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub array: ArraySection,
    pub frontend: FrontendSection,
    pub matching: MatchingSection,
    pub scenario: ScenarioSection,
    pub sweep: SweepSection,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("array", &["elements", "aperture", "apertures", "radius", "dissipation_ratio"]),
    (
        "frontend",
        &[
            "carrier_ghz",
            "bandwidth_mhz",
            "transmit_power_dbw",
            "generator_ohm",
            "load_ohm",
            "antenna_temperature_k",
            "noise_resistance_ohm",
            "noise_correlation",
        ],
    ),
    ("matching", &["rx", "tx"]),
    (
        "scenario",
        &[
            "users",
            "drops",
            "seed",
            "combiner",
            "bs_height_m",
            "min_distance_m",
            "max_distance_m",
            "azimuth_min_deg",
            "azimuth_max_deg",
            "distance_sampling",
        ],
    ),
    (
        "sweep",
        &["spacings", "matching", "phi_start_deg", "phi_stop_deg", "phi_step_deg", "reference_phi_deg", "ue_distance_m"],
    ),
];

fn section<T: for<'de> Deserialize<'de> + Default>(table: &toml::Table, name: &str) -> Result<T, CliError> {
    match table.get(name) {
        None => Ok(T::default()),
        Some(v) => v.clone().try_into().map_err(|e: toml::de::Error| CliError::config(name, e.message().to_string())),
    }
}

impl RunConfig {
    /// Parses and validates a TOML document.
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::config("<file>", e.to_string()))?;
        for (key, value) in &table {
            let Some((_, fields)) = SECTIONS.iter().find(|(s, _)| s == key) else {
                return Err(CliError::config(key, "unknown section"));
            };
            let Some(inner) = value.as_table() else {
                return Err(CliError::config(key, "expected a table"));
            };
            for field in inner.keys() {
                if !fields.contains(&field.as_str()) {
                    return Err(CliError::config(&format!("{key}.{field}"), "unknown key"));
                }
            }
            if key == "matching" {
                for required in ["rx", "tx"] {
                    if !inner.contains_key(required) {
                        return Err(CliError::config(&format!("matching.{required}"), "missing key"));
                    }
                }
            }
        }
        let cfg = RunConfig {
            array: section(&table, "array")?,
            frontend: section(&table, "frontend")?,
            matching: section(&table, "matching")?,
            scenario: section(&table, "scenario")?,
            sweep: section(&table, "sweep")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |key: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(CliError::config(key, "must be positive"))
            }
        };
        if self.array.elements == Some(0) {
            return Err(CliError::config("array.elements", "must be at least 1"));
        }
        if let Some(a) = self.array.aperture {
            positive("array.aperture", a)?;
        }
        for &a in &self.array.apertures {
            positive("array.apertures", a)?;
        }
        positive("array.radius", self.array.radius)?;
        if self.array.radius > 0.025 {
            return Err(CliError::config("array.radius", "thin-wire model needs radius <= 0.025 wavelengths"));
        }
        if !(self.array.dissipation_ratio >= 0.0) {
            return Err(CliError::config("array.dissipation_ratio", "must be non-negative"));
        }
        let f = &self.frontend;
        positive("frontend.carrier_ghz", f.carrier_ghz)?;
        positive("frontend.bandwidth_mhz", f.bandwidth_mhz)?;
        positive("frontend.generator_ohm", f.generator_ohm[0])?;
        positive("frontend.load_ohm", f.load_ohm[0])?;
        positive("frontend.antenna_temperature_k", f.antenna_temperature_k)?;
        positive("frontend.noise_resistance_ohm", f.noise_resistance_ohm)?;
        if f.noise_correlation[0].hypot(f.noise_correlation[1]) >= 1.0 {
            return Err(CliError::config("frontend.noise_correlation", "|ρ| must be below 1"));
        }
        let s = &self.scenario;
        if s.users == 0 {
            return Err(CliError::config("scenario.users", "must be at least 1"));
        }
        if s.drops == 0 {
            return Err(CliError::config("scenario.drops", "must be at least 1"));
        }
        positive("scenario.min_distance_m", s.min_distance_m)?;
        if s.max_distance_m < s.min_distance_m {
            return Err(CliError::config("scenario.max_distance_m", "must not be below min_distance_m"));
        }
        if s.azimuth_max_deg < s.azimuth_min_deg {
            return Err(CliError::config("scenario.azimuth_max_deg", "must not be below azimuth_min_deg"));
        }
        if self.sweep.spacings.is_empty() {
            return Err(CliError::config("sweep.spacings", "must not be empty"));
        }
        for &d in &self.sweep.spacings {
            positive("sweep.spacings", d)?;
        }
        if matches!(&self.sweep.matching, Some(v) if v.is_empty()) {
            return Err(CliError::config("sweep.matching", "must not be empty"));
        }
        positive("sweep.phi_step_deg", self.sweep.phi_step_deg)?;
        if self.sweep.phi_stop_deg < self.sweep.phi_start_deg {
            return Err(CliError::config("sweep.phi_stop_deg", "must not be below phi_start_deg"));
        }
        positive("sweep.ue_distance_m", self.sweep.ue_distance_m)?;
        Ok(())
    }

    pub fn front_end(&self) -> RadioFrontEnd<f64> {
        let f = &self.frontend;
        RadioFrontEnd {
            carrier_frequency: f.carrier_ghz * 1e9,
            bandwidth: f.bandwidth_mhz * 1e6,
            transmit_power: dbw_to_watts(f.transmit_power_dbw),
            generator: Complex::new(f.generator_ohm[0], f.generator_ohm[1]),
            load: Complex::new(f.load_ohm[0], f.load_ohm[1]),
            antenna_temperature: f.antenna_temperature_k,
            noise_resistance: f.noise_resistance_ohm,
            noise_correlation: Complex::new(f.noise_correlation[0], f.noise_correlation[1]),
            dissipation_ratio: self.array.dissipation_ratio,
            radius_ratio: self.array.radius,
        }
    }

    pub fn drop_config(&self) -> DropConfig {
        let s = &self.scenario;
        DropConfig {
            users: s.users,
            min_distance: s.min_distance_m,
            max_distance: s.max_distance_m,
            azimuth_min: s.azimuth_min_deg.to_radians(),
            azimuth_max: s.azimuth_max_deg.to_radians(),
            bs_height: s.bs_height_m,
            sampling: s.distance_sampling,
        }
    }

    pub fn matching_kinds(&self) -> Vec<MatchingKind> {
        self.sweep.matching.clone().unwrap_or_else(|| vec![self.matching.rx])
    }

    /// Canonical JSON used for the digest; independent of key order in the file.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}
