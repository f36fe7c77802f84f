//! Uplink and downlink channels through the matched front ends, and the
//! map between them.

use num_complex::Complex;

use crate::em::{coupling_matrix, self_impedance, ArrayGeometry, DipoleParams};
use crate::error::{Error, Result};
use crate::linalg::{identity, inverse};
use crate::matching::{b_whitener, design_front_end, FrontEndReduction, LnaParams, MatchingKind, Termination};
use crate::noise::{extrinsic_cov, intrinsic_cov, total_noise_cov, NoisePhysics};
use crate::scalar::{j, real, CMatrix, CVector, Real};
use crate::system::RadioFrontEnd;

/// Single-dipole terminal, power matched on transmit and noise matched on
/// receive.
#[derive(Debug, Clone, PartialEq)]
pub struct UserEquipment<T: Real> {
    pub dipole: DipoleParams<T>,
    /// Antenna impedance `Z_self + R_d`.
    pub antenna: Complex<T>,
    pub generator: Complex<T>,
    pub load: Complex<T>,
    pub lna: LnaParams<T>,
    pub noise: NoisePhysics<T>,
    pub transmit_power: T,
    pub tx: FrontEndReduction<T>,
    pub rx: FrontEndReduction<T>,
}

impl<T: Real> UserEquipment<T> {
    pub fn new(fe: &RadioFrontEnd<T>) -> Result<Self> {
        fe.validate()?;
        let dipole = fe.dipole()?;
        let antenna = self_impedance(&dipole)? + real(dipole.dissipation);
        let z = CMatrix::from_element(1, 1, antenna);
        let lna = fe.lna()?;
        let tx = design_front_end(MatchingKind::Full, &z, &Termination::Transmit { generator: fe.generator })?;
        let rx = design_front_end(MatchingKind::Full, &z, &Termination::Receive { load: fe.load, lna })?;
        Ok(UserEquipment {
            dipole,
            antenna,
            generator: fe.generator,
            load: fe.load,
            lna,
            noise: fe.noise_physics(),
            transmit_power: fe.transmit_power,
            tx,
            rx,
        })
    }

    /// `F_T/(Z_G + Z_T)`: antenna current per generator volt.
    pub fn uplink_factor(&self) -> Complex<T> {
        self.tx.f[(0, 0)] / (self.generator + self.tx.z_eff[(0, 0)])
    }

    /// `Q F_R`: load voltage per open-circuit volt.
    pub fn downlink_factor(&self) -> Complex<T> {
        self.rx.q.as_ref().expect("receive reduction")[(0, 0)] * self.rx.f[(0, 0)]
    }

    /// Noise variance across the terminal load.
    pub fn downlink_noise_variance(&self) -> T {
        let z = CMatrix::from_element(1, 1, self.antenna);
        let u_in = intrinsic_cov(&self.rx.z_eff, &self.lna);
        let r_en = extrinsic_cov(&z, &self.noise);
        total_noise_cov(self.rx.q.as_ref().expect("receive reduction"), &u_in, &r_en, &self.rx.f)[(0, 0)].re
    }

    /// Uplink transmit power in normalized units.
    pub fn power(&self) -> T {
        power_mapping(self.transmit_power, self.generator.re)
    }
}

/// Multi-antenna base station with coupled dipoles.
#[derive(Debug, Clone)]
pub struct BaseStation<T: Real> {
    pub geometry: ArrayGeometry<T>,
    pub dipole: DipoleParams<T>,
    /// Coupled array impedance `Z_AR` including `R_d`.
    pub z_ar: CMatrix<T>,
    pub load: Complex<T>,
    pub generator: Complex<T>,
    pub lna: LnaParams<T>,
    pub transmit_power: T,
    pub rx: FrontEndReduction<T>,
    pub tx: FrontEndReduction<T>,
    /// Uplink noise covariance `R_η` across the loads.
    pub noise_cov: CMatrix<T>,
    rx_operator: CMatrix<T>,
    tx_operator: CMatrix<T>,
    whitener: CMatrix<T>,
}

impl<T: Real> BaseStation<T> {
    pub fn new(
        geometry: ArrayGeometry<T>,
        fe: &RadioFrontEnd<T>,
        rx_kind: MatchingKind,
        tx_kind: MatchingKind,
    ) -> Result<Self> {
        fe.validate()?;
        let dipole = fe.dipole()?;
        let z_ar = coupling_matrix(&geometry, &dipole)?;
        let lna = fe.lna()?;
        let rx = design_front_end(rx_kind, &z_ar, &Termination::Receive { load: fe.load, lna })?;
        let tx = design_front_end(tx_kind, &z_ar, &Termination::Transmit { generator: fe.generator })?;
        let u_in = intrinsic_cov(&rx.z_eff, &lna);
        let r_en = extrinsic_cov(&z_ar, &fe.noise_physics());
        let noise_cov = total_noise_cov(rx.q.as_ref().expect("receive reduction"), &u_in, &r_en, &rx.f);
        let rx_operator = uplink_operator(&rx)?;
        let tx_operator = downlink_operator(&tx)?;
        let whitener = b_whitener(tx.b.as_ref().expect("transmit reduction"))?;
        Ok(BaseStation {
            geometry,
            dipole,
            z_ar,
            load: fe.load,
            generator: fe.generator,
            lna,
            transmit_power: fe.transmit_power,
            rx,
            tx,
            noise_cov,
            rx_operator,
            tx_operator,
            whitener,
        })
    }

    pub fn antennas(&self) -> usize {
        self.geometry.len()
    }

    /// `Q F_R`.
    pub fn rx_operator(&self) -> &CMatrix<T> {
        &self.rx_operator
    }

    /// `(Z_G I + Z_T)⁻¹ F_T`.
    pub fn tx_operator(&self) -> &CMatrix<T> {
        &self.tx_operator
    }

    /// `(B^{-1/2})ᵀ`.
    pub fn whitener(&self) -> &CMatrix<T> {
        &self.whitener
    }

    /// Downlink transmit power per stream in normalized units.
    pub fn power(&self) -> T {
        power_mapping(self.transmit_power, self.generator.re)
    }

    pub fn uplink(&self, z_art: &CVector<T>, ue: &UserEquipment<T>) -> CVector<T> {
        &self.rx_operator * z_art * ue.uplink_factor()
    }

    /// `(d_dl, h_dl)`.
    pub fn downlink(&self, z_art: &CVector<T>, ue: &UserEquipment<T>) -> (CVector<T>, CVector<T>) {
        let d = &self.tx_operator * z_art * ue.downlink_factor();
        let h = &self.whitener * &d;
        (d, h)
    }
}

/// `Q F_R`.
pub fn uplink_operator<T: Real>(rx: &FrontEndReduction<T>) -> Result<CMatrix<T>> {
    let q = rx.q.as_ref().ok_or_else(|| Error::precondition("channel::uplink", "receive reduction required"))?;
    Ok(q * &rx.f)
}

/// `(Z_G I + Z_T)⁻¹ F_T`.
pub fn downlink_operator<T: Real>(tx: &FrontEndReduction<T>) -> Result<CMatrix<T>> {
    if tx.b.is_none() {
        return Err(Error::precondition("channel::downlink", "transmit reduction required"));
    }
    let n = tx.z_eff.nrows();
    Ok(inverse(&(identity::<T>(n) * tx.termination + &tx.z_eff), "channel::downlink")? * &tx.f)
}

/// Uplink channel `d_ul` to the base-station loads.
pub fn uplink_channel<T: Real>(z_art: &CVector<T>, rx: &FrontEndReduction<T>, ue: &UserEquipment<T>) -> Result<CVector<T>> {
    Ok(uplink_operator(rx)? * z_art * ue.uplink_factor())
}

/// Downlink channel `(d_dl, h_dl)` with `h_dl = (B^{-1/2})ᵀ d_dl`.
pub fn downlink_channel<T: Real>(
    z_art: &CVector<T>,
    tx: &FrontEndReduction<T>,
    ue: &UserEquipment<T>,
) -> Result<(CVector<T>, CVector<T>)> {
    let d = downlink_operator(tx)? * z_art * ue.downlink_factor();
    let h = b_whitener(tx.b.as_ref().expect("checked by downlink_operator"))? * &d;
    Ok((d, h))
}

/// `α_ul = −j Z_L / (2√(R_G Re Z_AT))` with BS load and UE generator and antenna.
pub fn alpha_ul<T: Real>(bs_load: Complex<T>, ue: &UserEquipment<T>) -> Complex<T> {
    -j::<T>() * bs_load / (T::lit(2.0) * (ue.generator.re * ue.antenna.re).sqrt())
}

/// `α_dl = j Z_L √(Re Z_opt) / ((Z_L + Z_opt) √(Re Z_AR))` at the terminal.
pub fn alpha_dl<T: Real>(ue: &UserEquipment<T>) -> Complex<T> {
    let zopt = ue.lna.optimal_impedance();
    j::<T>() * ue.load * zopt.re.sqrt() / ((ue.load + zopt) * ue.antenna.re.sqrt())
}

/// Uplink gain of a fully matched link.
pub fn xi_ul<T: Real>(bs: &BaseStation<T>, ue: &UserEquipment<T>) -> Complex<T> {
    let zopt = bs.lna.optimal_impedance();
    bs.load * zopt.re.sqrt() / ((bs.load + zopt) * T::lit(2.0) * (ue.generator.re * ue.antenna.re).sqrt())
}

/// Downlink gain of a fully matched link.
pub fn xi_dl<T: Real>(bs: &BaseStation<T>, ue: &UserEquipment<T>) -> Complex<T> {
    let zopt = ue.lna.optimal_impedance();
    ue.load * zopt.re.sqrt() / ((ue.load + zopt) * T::lit(2.0) * (bs.generator.re * ue.antenna.re).sqrt())
}

/// `A_dl,ul = (Z_G I + Z_T)⁻¹ F_T F_R⁻¹ (Z_L I + Z_R)`.
pub fn duality_matrix<T: Real>(bs: &BaseStation<T>) -> Result<CMatrix<T>> {
    const OP: &str = "channel::duality_matrix";
    let n = bs.antennas();
    let fr_inv = inverse(&bs.rx.f, OP)?;
    Ok(&bs.tx_operator * fr_inv * (identity::<T>(n) * bs.load + &bs.rx.z_eff))
}

/// Maps an uplink channel to the normalized downlink channel of the same
/// terminal.
pub fn duality_transform<T: Real>(h_ul: &CVector<T>, bs: &BaseStation<T>, ue: &UserEquipment<T>) -> Result<CVector<T>> {
    const OP: &str = "channel::duality_transform";
    if h_ul.len() != bs.antennas() {
        return Err(Error::precondition(OP, "channel length does not match the array"));
    }
    match (bs.rx.kind, bs.tx.kind) {
        (MatchingKind::Full, MatchingKind::Full) => Ok(h_ul * (xi_dl(bs, ue) / xi_ul(bs, ue))),
        (MatchingKind::None, MatchingKind::None) if bs.load == bs.generator => {
            Ok(bs.whitener() * h_ul * (alpha_dl(ue) / alpha_ul(bs.load, ue)))
        }
        _ => Ok(bs.whitener() * duality_matrix(bs)? * h_ul * (alpha_dl(ue) / alpha_ul(bs.load, ue))),
    }
}

/// `p = 4 R_G P_T`, the generator-referred power.
pub fn power_mapping<T: Real>(transmit_power: T, generator_resistance: T) -> T {
    T::lit(4.0) * generator_resistance * transmit_power
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::{z_art_los, Direction, PlanePath};
    use crate::linalg::relative_error;
    use proptest::prelude::*;

    fn link(m: usize, d: f64, rx: MatchingKind, tx: MatchingKind) -> (BaseStation<f64>, UserEquipment<f64>, CVector<f64>) {
        let fe = RadioFrontEnd::<f64>::reference();
        let lambda = fe.wavelength();
        let bs = BaseStation::new(ArrayGeometry::side_by_side(m, d * lambda).unwrap(), &fe, rx, tx).unwrap();
        let ue = UserEquipment::new(&fe).unwrap();
        let path = PlanePath::line_of_sight(Direction::new(-0.2, 0.7), 50.0);
        let z = z_art_los(&[path], &bs.geometry, &bs.dipole).unwrap();
        (bs, ue, z)
    }

    #[test]
    fn uplink_routes_agree() {
        for kind in [MatchingKind::Full, MatchingKind::SelfImpedance, MatchingKind::None] {
            let (bs, ue, z) = link(5, 0.2, kind, kind);
            let a = uplink_channel(&z, &bs.rx, &ue).unwrap();
            let zl = identity::<f64>(5) * bs.load + &bs.rx.z_eff;
            let b = inverse(&zl, "t").unwrap() * &bs.rx.f * &z * alpha_ul(bs.load, &ue);
            assert!(relative_error(&a, &b) < 1e-12, "{kind:?}");
        }
    }

    #[test]
    fn downlink_routes_agree() {
        for kind in [MatchingKind::Full, MatchingKind::SelfImpedance, MatchingKind::None] {
            let (bs, ue, z) = link(5, 0.2, kind, kind);
            let (d, _) = downlink_channel(&z, &bs.tx, &ue).unwrap();
            let b = bs.tx_operator() * &z * alpha_dl(&ue);
            assert!(relative_error(&d, &b) < 1e-12, "{kind:?}");
        }
    }

    #[test]
    fn full_matching_duality_is_identity_for_identical_ends() {
        let (bs, ue, _) = link(3, 0.3, MatchingKind::Full, MatchingKind::Full);
        assert!((xi_dl(&bs, &ue) - xi_ul(&bs, &ue)).norm() < 1e-15 * xi_ul(&bs, &ue).norm());
    }

    proptest! {
        #[test]
        fn duality_reproduces_downlink(m in 1usize..6, d in 0.05_f64..1.0, kind in 0usize..3) {
            let kind = [MatchingKind::Full, MatchingKind::SelfImpedance, MatchingKind::None][kind];
            let (bs, ue, z) = link(m, d, kind, kind);
            let h_ul = bs.uplink(&z, &ue);
            let (_, h_dl) = bs.downlink(&z, &ue);
            let mapped = duality_transform(&h_ul, &bs, &ue).unwrap();
            prop_assert!(relative_error(&mapped, &h_dl) < 1e-9);
            let generic = bs.whitener() * duality_matrix(&bs).unwrap() * &h_ul * (alpha_dl(&ue) / alpha_ul(bs.load, &ue));
            prop_assert!(relative_error(&generic, &h_dl) < 1e-9);
        }
    }
}
