use rayon::prelude::*;

use super::drops::{drop_rng, sample_drop, DropConfig};
use crate::channel::{BaseStation, UserEquipment};
use crate::em::{array::elements_for_aperture, z_art_los, ArrayGeometry};
use crate::error::{Error, Result};
use crate::link::{downlink, uplink, Combiner};
use crate::matching::MatchingKind;
use crate::scalar::CMatrix;
use crate::system::{to_db, RadioFrontEnd};

/// How the array size follows the spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Layout {
    FixedElements(usize),
    /// Aperture in wavelengths; `M = ⌊L/d⌋ + 1`.
    FixedAperture(f64),
}

/// One sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub front_end: RadioFrontEnd<f64>,
    pub layout: Layout,
    pub spacing_over_lambda: f64,
    pub rx_matching: MatchingKind,
    pub tx_matching: MatchingKind,
    pub combiner: Combiner,
    pub drops: DropConfig,
    pub num_drops: usize,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn elements(&self) -> usize {
        match self.layout {
            Layout::FixedElements(m) => m,
            Layout::FixedAperture(l) => elements_for_aperture(l, self.spacing_over_lambda),
        }
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "scenario::config";
        if self.num_drops == 0 {
            return Err(Error::precondition(OP, "at least one drop required"));
        }
        if !(self.spacing_over_lambda > 0.0) {
            return Err(Error::precondition(OP, "spacing must be positive"));
        }
        if self.elements() == 0 {
            return Err(Error::precondition(OP, "at least one element required"));
        }
        self.drops.validate()
    }

    fn base_station(&self) -> Result<BaseStation<f64>> {
        let lambda = self.front_end.wavelength();
        let geom = ArrayGeometry::side_by_side(self.elements(), self.spacing_over_lambda * lambda)?;
        BaseStation::new(geom, &self.front_end, self.rx_matching, self.tx_matching)
    }
}

/// Averages for one sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub spacing_over_lambda: f64,
    pub elements: usize,
    pub matching: MatchingKind,
    pub combiner: Combiner,
    pub mean_se: f64,
    pub stderr_se: f64,
    /// `10 log₁₀` of the mean of `‖h_k‖²/M`.
    pub mean_gain_db: f64,
    pub drops: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualityCell {
    pub uplink: SweepCell,
    pub downlink: SweepCell,
    /// Downlink with precoders built from the uplink channels.
    pub downlink_naive: SweepCell,
}

fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn mean_gain(h: &CMatrix<f64>) -> f64 {
    let m = h.nrows() as f64;
    h.column_iter().map(|c| c.norm_squared() / m).sum::<f64>() / h.ncols() as f64
}

struct DropOutcome {
    ul_se: f64,
    ul_gain: f64,
    dl_se: f64,
    dl_gain: f64,
    naive_se: f64,
}

fn simulate(cfg: &ScenarioConfig, with_downlink: bool) -> Result<Vec<DropOutcome>> {
    cfg.validate()?;
    let bs = cfg.base_station()?;
    let ue = UserEquipment::new(&cfg.front_end)?;
    let ul_map = bs.rx_operator() * ue.uplink_factor();
    let dl_map = bs.whitener() * bs.tx_operator() * ue.downlink_factor();
    let p_ul = vec![ue.power(); cfg.drops.users];
    let p_dl = vec![bs.power(); cfg.drops.users];
    let sigma_dl = ue.downlink_noise_variance();
    (0..cfg.num_drops)
        .into_par_iter()
        .map(|d| {
            let mut rng = drop_rng(cfg.seed, d as u64);
            let paths = sample_drop(&mut rng, &cfg.drops);
            let cols: Result<Vec<_>> =
                paths.iter().map(|p| z_art_los(std::slice::from_ref(p), &bs.geometry, &bs.dipole)).collect();
            let z = CMatrix::from_columns(&cols?);
            let h_ul = &ul_map * &z;
            let ul = uplink(&h_ul, &p_ul, &bs.noise_cov, cfg.combiner)?;
            let mut out = DropOutcome {
                ul_se: ul.mean_se(),
                ul_gain: mean_gain(&h_ul),
                dl_se: f64::NAN,
                dl_gain: f64::NAN,
                naive_se: f64::NAN,
            };
            if with_downlink {
                let h_dl = &dl_map * &z;
                out.dl_se = downlink(&h_dl, &h_dl, &p_dl, sigma_dl, cfg.combiner)?.mean_se();
                out.dl_gain = mean_gain(&h_dl);
                out.naive_se = downlink(&h_ul, &h_dl, &p_dl, sigma_dl, cfg.combiner)?.mean_se();
            }
            Ok(out)
        })
        .collect()
}

fn cell(cfg: &ScenarioConfig, matching: MatchingKind, se: &[f64], gain: &[f64]) -> SweepCell {
    let (mean_se, stderr_se) = mean_stderr(se);
    let (g, _) = mean_stderr(gain);
    SweepCell {
        spacing_over_lambda: cfg.spacing_over_lambda,
        elements: cfg.elements(),
        matching,
        combiner: cfg.combiner,
        mean_se,
        stderr_se,
        mean_gain_db: to_db(g),
        drops: se.len(),
        seed: cfg.seed,
    }
}

/// Mean uplink SE per user over the configured drops.
pub fn run_uplink(cfg: &ScenarioConfig) -> Result<SweepCell> {
    let out = simulate(cfg, false)?;
    let se: Vec<f64> = out.iter().map(|o| o.ul_se).collect();
    let gain: Vec<f64> = out.iter().map(|o| o.ul_gain).collect();
    Ok(cell(cfg, cfg.rx_matching, &se, &gain))
}

/// Mean downlink SE per user; `use_ul_channels_for_precoding` designs the
/// precoders from the uplink channels.
pub fn run_downlink(cfg: &ScenarioConfig, use_ul_channels_for_precoding: bool) -> Result<SweepCell> {
    let out = simulate(cfg, true)?;
    let se: Vec<f64> = out.iter().map(|o| if use_ul_channels_for_precoding { o.naive_se } else { o.dl_se }).collect();
    let gain: Vec<f64> = out.iter().map(|o| o.dl_gain).collect();
    Ok(cell(cfg, cfg.tx_matching, &se, &gain))
}

/// Uplink, corrected downlink and naive downlink over the same drops.
pub fn run_duality(cfg: &ScenarioConfig) -> Result<DualityCell> {
    let out = simulate(cfg, true)?;
    let pick = |f: fn(&DropOutcome) -> f64| out.iter().map(f).collect::<Vec<f64>>();
    let ul_gain = pick(|o| o.ul_gain);
    let dl_gain = pick(|o| o.dl_gain);
    Ok(DualityCell {
        uplink: cell(cfg, cfg.rx_matching, &pick(|o| o.ul_se), &ul_gain),
        downlink: cell(cfg, cfg.tx_matching, &pick(|o| o.dl_se), &dl_gain),
        downlink_naive: cell(cfg, cfg.tx_matching, &pick(|o| o.naive_se), &dl_gain),
    })
}
