use crate::analysis::{array_gain_closed, interference_gain_closed, psi};
use crate::em::{mu_coefficient, Direction};
use crate::error::Result;
use crate::link::TwoElementLink;
use crate::system::{to_db, RadioFrontEnd};

/// Closed-form and pipeline values side by side for one `(d_H, φ)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoElementRow {
    pub spacing_over_lambda: f64,
    pub phi: f64,
    pub mu: f64,
    pub psi: f64,
    pub array_gain_closed: f64,
    pub array_gain_pipeline: f64,
    pub interference_gain_closed: f64,
    pub interference_gain_pipeline: f64,
    pub snr_db_pipeline: f64,
    pub se_mr_closed: f64,
    pub se_mr_pipeline: f64,
}

/// User 1 sits at `phi`; the interferer sits at `reference_phi`. Both are
/// `distance` metres away, `height` metres below the array.
pub fn two_element_row(
    link: &TwoElementLink<f64>,
    fe: &RadioFrontEnd<f64>,
    spacing_over_lambda: f64,
    phi: f64,
    reference_phi: f64,
    horizontal_distance: f64,
    height: f64,
) -> Result<TwoElementRow> {
    let theta = -(height / horizontal_distance).atan();
    let distance = horizontal_distance.hypot(height);
    let k = Direction::new(theta, phi);
    let i = Direction::new(theta, reference_phi);
    let mu = mu_coefficient(spacing_over_lambda * fe.wavelength(), &link.pair.dipole)?;
    let psi_k = psi(spacing_over_lambda, theta, phi);
    let psi_i = psi(spacing_over_lambda, theta, reference_phi);
    let ag = array_gain_closed(mu, psi_k)?;
    let ig = interference_gain_closed(mu, psi_k, psi_i)?;
    let snr1 = link.snr(&link.single, k, distance)?;
    let inr1 = link.snr(&link.single, i, distance)?;
    Ok(TwoElementRow {
        spacing_over_lambda,
        phi,
        mu,
        psi: psi_k,
        array_gain_closed: ag,
        array_gain_pipeline: link.array_gain(k, distance)?,
        interference_gain_closed: ig,
        interference_gain_pipeline: link.interference_gain(k, i, distance)?,
        snr_db_pipeline: to_db(link.snr(&link.pair, k, distance)?),
        se_mr_closed: (1.0 + ag * snr1 / (ig * inr1 + 1.0)).log2(),
        se_mr_pipeline: link.se_mr(k, i, distance)?,
    })
}
