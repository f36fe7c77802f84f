//! The experiments behind each subcommand.

use super::output::{num, Table};
use super::{CliError, Experiment, RunConfig};
use crate::em::ArrayGeometry;
use crate::link::TwoElementLink;
use crate::scenario::{
    eigen_spectrum, run_duality, run_uplink, two_element_row, Layout, ScenarioConfig, SpectrumKind, SweepCell,
};

const DEFAULT_ELEMENTS: usize = 16;
const DEFAULT_APERTURE: f64 = 6.0;

pub fn execute(experiment: Experiment, cfg: &RunConfig) -> Result<Table, CliError> {
    match experiment {
        Experiment::SweepSpacing => sweep_spacing(cfg),
        Experiment::SweepAperture => sweep_aperture(cfg),
        Experiment::TwoElement => two_element(cfg),
        Experiment::Duality => duality(cfg),
        Experiment::EigenSpectrum => spectrum(cfg),
    }
}

fn scenario(cfg: &RunConfig, layout: Layout, spacing: f64) -> ScenarioConfig {
    ScenarioConfig {
        front_end: cfg.front_end(),
        layout,
        spacing_over_lambda: spacing,
        rx_matching: cfg.matching.rx,
        tx_matching: cfg.matching.tx,
        combiner: cfg.scenario.combiner,
        drops: cfg.drop_config(),
        num_drops: cfg.scenario.drops,
        seed: cfg.scenario.seed,
    }
}

fn cell_tail(c: &SweepCell) -> Vec<String> {
    vec![
        c.matching.label().to_string(),
        c.combiner.label().to_string(),
        num(c.mean_se),
        num(c.stderr_se),
        num(c.mean_gain_db),
        c.drops.to_string(),
        c.seed.to_string(),
    ]
}

pub fn sweep_spacing(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "d_h_over_lambda",
        "matching",
        "combiner",
        "mean_se_per_ue",
        "stderr_se",
        "mean_gain_db",
        "drops",
        "seed",
    ]);
    let layout = Layout::FixedElements(cfg.array.elements.unwrap_or(DEFAULT_ELEMENTS));
    for &d in &cfg.sweep.spacings {
        for kind in cfg.matching_kinds() {
            let mut sc = scenario(cfg, layout, d);
            sc.rx_matching = kind;
            let c = run_uplink(&sc)?;
            let mut row = vec![num(d)];
            row.extend(cell_tail(&c));
            t.push(row);
        }
    }
    Ok(t)
}

pub fn sweep_aperture(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "aperture_over_lambda",
        "d_h_over_lambda",
        "m",
        "matching",
        "combiner",
        "mean_se_per_ue",
        "stderr_se",
        "mean_gain_db",
        "drops",
        "seed",
    ]);
    for &aperture in &cfg.array.apertures {
        for &d in &cfg.sweep.spacings {
            for kind in cfg.matching_kinds() {
                let mut sc = scenario(cfg, Layout::FixedAperture(aperture), d);
                sc.rx_matching = kind;
                let c = run_uplink(&sc)?;
                let mut row = vec![num(aperture), num(d), c.elements.to_string()];
                row.extend(cell_tail(&c));
                t.push(row);
            }
        }
    }
    Ok(t)
}

fn phi_grid(cfg: &RunConfig) -> Vec<f64> {
    let s = &cfg.sweep;
    let n = ((s.phi_stop_deg - s.phi_start_deg) / s.phi_step_deg + 1e-9).floor() as usize + 1;
    (0..n).map(|i| s.phi_start_deg + i as f64 * s.phi_step_deg).collect()
}

pub fn two_element(cfg: &RunConfig) -> Result<Table, CliError> {
    if let Some(m) = cfg.array.elements {
        if m != 2 {
            return Err(CliError::config("array.elements", format!("two-element requires 2 elements, got {m}")));
        }
    }
    let mut t = Table::new(&[
        "d_h_over_lambda",
        "phi_deg",
        "mu",
        "psi",
        "array_gain_closed",
        "array_gain_pipeline",
        "interference_gain_closed",
        "interference_gain_pipeline",
        "snr_db_pipeline",
        "se_mr_closed",
        "se_mr_pipeline",
    ]);
    let fe = cfg.front_end();
    let reference = cfg.sweep.reference_phi_deg.to_radians();
    for &d in &cfg.sweep.spacings {
        let link = TwoElementLink::new(&fe, d * fe.wavelength())?;
        for phi in phi_grid(cfg) {
            let r = two_element_row(
                &link,
                &fe,
                d,
                phi.to_radians(),
                reference,
                cfg.sweep.ue_distance_m,
                cfg.scenario.bs_height_m,
            )?;
            t.push(vec![
                num(d),
                num(phi),
                num(r.mu),
                num(r.psi),
                num(r.array_gain_closed),
                num(r.array_gain_pipeline),
                num(r.interference_gain_closed),
                num(r.interference_gain_pipeline),
                num(r.snr_db_pipeline),
                num(r.se_mr_closed),
                num(r.se_mr_pipeline),
            ]);
        }
    }
    Ok(t)
}

pub fn duality(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "d_h_over_lambda",
        "m",
        "matching",
        "combiner",
        "ul_se",
        "ul_stderr",
        "dl_se_corrected",
        "dl_stderr_corrected",
        "dl_se_naive",
        "dl_stderr_naive",
        "drops",
        "seed",
    ]);
    let layout = match cfg.array.aperture {
        Some(a) => Layout::FixedAperture(a),
        None => Layout::FixedElements(cfg.array.elements.unwrap_or(DEFAULT_ELEMENTS)),
    };
    let kinds = cfg.sweep.matching.clone().unwrap_or_else(|| {
        vec![crate::matching::MatchingKind::Full, crate::matching::MatchingKind::SelfImpedance, crate::matching::MatchingKind::None]
    });
    for &d in &cfg.sweep.spacings {
        for &kind in &kinds {
            let mut sc = scenario(cfg, layout, d);
            sc.rx_matching = kind;
            sc.tx_matching = kind;
            let c = run_duality(&sc)?;
            t.push(vec![
                num(d),
                c.uplink.elements.to_string(),
                kind.label().to_string(),
                sc.combiner.label().to_string(),
                num(c.uplink.mean_se),
                num(c.uplink.stderr_se),
                num(c.downlink.mean_se),
                num(c.downlink.stderr_se),
                num(c.downlink_naive.mean_se),
                num(c.downlink_naive.stderr_se),
                c.uplink.drops.to_string(),
                c.uplink.seed.to_string(),
            ]);
        }
    }
    Ok(t)
}

pub fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "d_h_over_lambda",
        "m",
        "matrix",
        "matching",
        "index",
        "normalized_eigenvalue",
        "level_db",
    ]);
    let fe = cfg.front_end();
    let lambda = fe.wavelength();
    let aperture = cfg.array.aperture.unwrap_or(DEFAULT_APERTURE);
    for &d in &cfg.sweep.spacings {
        let geom = ArrayGeometry::from_aperture(aperture * lambda, d * lambda)?;
        let m = geom.len().to_string();
        let coupling = eigen_spectrum(SpectrumKind::Coupling, &geom, &fe, cfg.matching.rx)?;
        for (i, v) in coupling.iter().enumerate() {
            t.push(vec![num(d), m.clone(), "z_ar".into(), "-".into(), i.to_string(), num(*v), num(20.0 * v.abs().log10())]);
        }
        for kind in cfg.matching_kinds() {
            let noise = eigen_spectrum(SpectrumKind::Noise, &geom, &fe, kind)?;
            for (i, v) in noise.iter().enumerate() {
                t.push(vec![
                    num(d),
                    m.clone(),
                    "u".into(),
                    kind.label().into(),
                    i.to_string(),
                    num(*v),
                    num(10.0 * v.abs().log10()),
                ]);
            }
        }
    }
    Ok(t)
}
