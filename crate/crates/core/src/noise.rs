//! Extrinsic (antenna) and intrinsic (LNA) noise covariances.

use num_complex::Complex;

use crate::linalg::{hermitian_part, identity, real_part};
use crate::matching::LnaParams;
use crate::scalar::{consts::BOLTZMANN, real, CMatrix, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisePhysics<T> {
    /// Antenna noise temperature, K.
    pub temperature: T,
    /// Noise bandwidth, Hz.
    pub bandwidth: T,
}

impl<T: Real> NoisePhysics<T> {
    /// `4 k_B T Δf`.
    pub fn thermal_scale(&self) -> T {
        T::lit(4.0 * BOLTZMANN) * self.temperature * self.bandwidth
    }
}

/// Antenna thermal noise `R_EN = 4 k_B T_A Δf Re{Z_AR}`.
pub fn extrinsic_cov<T: Real>(z_ar: &CMatrix<T>, phys: &NoisePhysics<T>) -> CMatrix<T> {
    hermitian_part(&real_part(z_ar)) * real(phys.thermal_scale())
}

/// LNA noise referred to the amplifier inputs:
/// `σ_i² (Z_R Z_R^H − R_N(ρ* Z_R + ρ Z_R^H) + R_N² I)`.
pub fn intrinsic_cov<T: Real>(z_r: &CMatrix<T>, lna: &LnaParams<T>) -> CMatrix<T> {
    let n = z_r.nrows();
    let rn = lna.noise_resistance;
    let rho = lna.correlation;
    let zh = z_r.adjoint();
    let u = z_r * &zh - (z_r * rho.conj() + &zh * rho) * real(rn) + identity::<T>(n) * real(rn * rn);
    hermitian_part(&u) * real(lna.current_variance)
}

/// `R_η = Q (U_IN + F_R R_EN F_R^H) Q^H`.
pub fn total_noise_cov<T: Real>(
    q: &CMatrix<T>,
    u_in: &CMatrix<T>,
    r_en: &CMatrix<T>,
    f_r: &CMatrix<T>,
) -> CMatrix<T> {
    let u_en = f_r * r_en * f_r.adjoint();
    hermitian_part(&(q * (u_in + u_en) * q.adjoint()))
}

/// Per-port noise of a noise-matched front end before the load divider:
/// `σ_i²(|Z_opt|² − 2R_N Re(ρ* Z_opt) + R_N²) + 4k_B T Δf Re Z_opt`.
pub fn matched_noise_variance<T: Real>(lna: &LnaParams<T>, phys: &NoisePhysics<T>) -> T {
    let zopt = lna.optimal_impedance();
    let rn = lna.noise_resistance;
    let cross = (lna.correlation.conj() * zopt).re;
    lna.current_variance * (zopt.norm_sqr() - T::lit(2.0) * rn * cross + rn * rn) + phys.thermal_scale() * zopt.re
}

/// Noise variance across one load after the divider `Z_L/(Z_L + Z_opt)`.
pub fn matched_load_noise<T: Real>(load: Complex<T>, lna: &LnaParams<T>, phys: &NoisePhysics<T>) -> T {
    let q = load / (load + lna.optimal_impedance());
    q.norm_sqr() * matched_noise_variance(lna, phys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::{coupling_matrix, ArrayGeometry, DipoleParams};
    use crate::linalg::{hermitian_eigenvalues, is_hermitian, relative_error};
    use crate::matching::{design_front_end, MatchingKind, Termination};
    use crate::scalar::cplx;
    use proptest::prelude::*;

    fn setup(m: usize, d: f64) -> (CMatrix<f64>, LnaParams<f64>, NoisePhysics<f64>, Termination<f64>) {
        let p = DipoleParams::half_wave(1.0).unwrap().with_dissipation_ratio(1e-3).unwrap();
        let z = coupling_matrix(&ArrayGeometry::side_by_side(m, d).unwrap(), &p).unwrap();
        let phys = NoisePhysics { temperature: 290.0, bandwidth: 20e6 };
        let lna = LnaParams::new(5.0, cplx(0.1, 0.0), 2.0 * BOLTZMANN * 20e6 * 290.0 / 5.0).unwrap();
        (z, lna, phys, Termination::Receive { load: cplx(186.0, -31.6), lna })
    }

    #[test]
    fn full_matching_whitens_noise() {
        let (z, lna, phys, term) = setup(4, 0.15);
        let r = design_front_end(MatchingKind::Full, &z, &term).unwrap();
        let u_in = intrinsic_cov(&r.z_eff, &lna);
        let total = total_noise_cov(r.q.as_ref().unwrap(), &u_in, &extrinsic_cov(&z, &phys), &r.f);
        let expect = matched_load_noise(cplx(186.0, -31.6), &lna, &phys);
        assert!(relative_error(&total, &(identity::<f64>(4) * real(expect))) < 1e-9);
    }

    proptest! {
        #[test]
        fn noise_covariance_is_psd(m in 1usize..7, d in 0.05_f64..1.0, kind in 0usize..3) {
            let (z, lna, phys, term) = setup(m, d);
            let kind = [MatchingKind::Full, MatchingKind::SelfImpedance, MatchingKind::None][kind];
            let r = design_front_end(kind, &z, &term).unwrap();
            let u_in = intrinsic_cov(&r.z_eff, &lna);
            let total = total_noise_cov(r.q.as_ref().unwrap(), &u_in, &extrinsic_cov(&z, &phys), &r.f);
            prop_assert!(is_hermitian(&total, 1e-12));
            let eig = hermitian_eigenvalues(&total).unwrap();
            prop_assert!(*eig.last().unwrap() >= -1e-12 * eig[0]);
        }
    }
}
