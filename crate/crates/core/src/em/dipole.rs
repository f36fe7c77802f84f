//! Thin half-wave dipole impedances from the induced-EMF method.

use num_complex::Complex;

use super::special::{ci, sin_cos_integrals};
use crate::error::{Error, Result};
use crate::scalar::{consts, Real};

/// Default radius as a fraction of the wavelength.
pub const DEFAULT_RADIUS_RATIO: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleParams<T> {
    /// Physical length `l`, m.
    pub length: T,
    /// Wire radius `a`, m.
    pub radius: T,
    /// Carrier wavelength `λ`, m.
    pub wavelength: T,
    /// Radiation resistance `R_r = Re{Z_self}`, Ω.
    pub radiation_resistance: T,
    /// Ohmic dissipation resistance `R_d`, Ω.
    pub dissipation: T,
}

impl<T: Real> DipoleParams<T> {
    /// Lossless half-wave dipole of radius `λ/1000`.
    pub fn half_wave(wavelength: T) -> Result<Self> {
        Self::with_geometry(wavelength, wavelength * T::lit(DEFAULT_RADIUS_RATIO))
    }

    pub fn with_geometry(wavelength: T, radius: T) -> Result<Self> {
        const OP: &str = "dipole::params";
        if !(wavelength > T::zero()) || !wavelength.is_finite() {
            return Err(Error::domain(OP, "wavelength must be positive"));
        }
        let length = wavelength * T::lit(0.5);
        if !(radius > T::zero()) || radius * T::lit(20.0) > length {
            return Err(Error::domain(OP, "radius must be positive and much smaller than the length"));
        }
        let mut p = DipoleParams { length, radius, wavelength, radiation_resistance: T::zero(), dissipation: T::zero() };
        p.radiation_resistance = self_impedance(&p)?.re;
        Ok(p)
    }

    pub fn with_dissipation(mut self, dissipation: T) -> Result<Self> {
        if !(dissipation >= T::zero()) {
            return Err(Error::domain("dipole::params", "dissipation resistance must be non-negative"));
        }
        self.dissipation = dissipation;
        Ok(self)
    }

    /// Sets `R_d = ratio · R_r`.
    pub fn with_dissipation_ratio(self, ratio: T) -> Result<Self> {
        let r = self.radiation_resistance * ratio;
        self.with_dissipation(r)
    }

    pub fn wavenumber(&self) -> T {
        T::two_pi() / self.wavelength
    }

    /// `R_r + R_d`.
    pub fn total_resistance(&self) -> T {
        self.radiation_resistance + self.dissipation
    }

    /// Self impedance including dissipation.
    pub fn input_impedance(&self) -> Result<Complex<T>> {
        Ok(self_impedance(self)? + Complex::new(self.dissipation, T::zero()))
    }
}

fn eta_over_4pi<T: Real>() -> T {
    T::lit(consts::FREE_SPACE_IMPEDANCE) / (T::lit(4.0) * T::pi())
}

/// Radiation self impedance referred to the feed, without `R_d`.
pub fn self_impedance<T: Real>(p: &DipoleParams<T>) -> Result<Complex<T>> {
    let k = p.wavenumber();
    let kl = k * p.length;
    let (s1, c1) = sin_cos_integrals(kl)?;
    let (s2, c2) = sin_cos_integrals(kl + kl)?;
    let ca = ci(k * p.radius * p.radius * T::lit(2.0) / p.length)?;
    let g = T::lit(consts::EULER_GAMMA);
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let (sn, cs) = (kl.sin(), kl.cos());
    let rm = eta_over_4pi::<T>()
        * two
        * (g + kl.ln() - c1 + half * sn * (s2 - two * s1) + half * cs * (g + (kl * half).ln() + c2 - two * c1));
    let xm = eta_over_4pi::<T>() * (two * s1 + cs * (two * s1 - s2) - sn * (two * c1 - c2 - ca));
    let feed = (kl * half).sin();
    let f2 = feed * feed;
    Ok(Complex::new(rm / f2, xm / f2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutualConfig {
    SideBySide,
    Collinear,
    ParallelInEchelon,
}

/// Mutual impedance between two parallel half-wave dipoles.
///
/// `separation` is the distance between the dipole axes and `offset` the
/// axial shift between centers. Side-by-side ignores `offset`; collinear
/// ignores `separation` and needs `|offset| > l`.
pub fn mutual_impedance<T: Real>(
    config: MutualConfig,
    separation: T,
    offset: T,
    p: &DipoleParams<T>,
) -> Result<Complex<T>> {
    const OP: &str = "dipole::mutual_impedance";
    let k = p.wavenumber();
    let l = p.length;
    let two = T::lit(2.0);
    match config {
        MutualConfig::SideBySide => {
            if !(separation > T::zero()) {
                return Err(Error::domain(OP, "side-by-side separation must be positive"));
            }
            let d = separation;
            let r = (d * d + l * l).sqrt();
            let (s0, c0) = sin_cos_integrals(k * d)?;
            let (s1, c1) = sin_cos_integrals(k * (r + l))?;
            let (s2, c2) = sin_cos_integrals(k * d * d / (r + l))?;
            let e = eta_over_4pi::<T>();
            Ok(Complex::new(e * (two * c0 - c1 - c2), -e * (two * s0 - s1 - s2)))
        }
        MutualConfig::Collinear => {
            let h = offset.abs();
            if !(h > l) {
                return Err(Error::domain(OP, "collinear dipoles must not overlap (|offset| > length)"));
            }
            let v0 = k * h;
            let (sa, ca) = sin_cos_integrals(two * v0)?;
            let (s1, c1) = sin_cos_integrals(two * k * (h + l))?;
            let (s2, c2) = sin_cos_integrals(two * k * (h - l))?;
            let lv3 = ((h - l) * (h + l) / (h * h)).ln();
            let e = eta_over_4pi::<T>() * T::lit(0.5);
            let (sn, cs) = (v0.sin(), v0.cos());
            let r = -e * cs * (-two * ca + c2 + c1 - lv3) + e * sn * (two * sa - s2 - s1);
            let x = -e * cs * (two * sa - s2 - s1) + e * sn * (two * ca - c2 - c1 - lv3);
            Ok(Complex::new(r, x))
        }
        MutualConfig::ParallelInEchelon => {
            if !(separation > T::zero()) {
                return Err(Error::domain(OP, "echelon separation must be positive"));
            }
            let d = separation;
            let h = offset;
            let w0 = k * h;
            let (a0, a0p) = stable_pair(d, h);
            let (a1, a1p) = stable_pair(d, h - l);
            let (a2, a2p) = stable_pair(d, h + l);
            let (s0, c0) = sin_cos_integrals(k * a0)?;
            let (s0p, c0p) = sin_cos_integrals(k * a0p)?;
            let (s1, c1) = sin_cos_integrals(k * a1)?;
            let (s1p, c1p) = sin_cos_integrals(k * a1p)?;
            let (s2, c2) = sin_cos_integrals(k * a2)?;
            let (s2p, c2p) = sin_cos_integrals(k * a2p)?;
            let e = eta_over_4pi::<T>() * T::lit(0.5);
            let (sn, cs) = (w0.sin(), w0.cos());
            let r = -e * cs * (-two * c0 - two * c0p + c1 + c1p + c2 + c2p)
                + e * sn * (two * s0 - two * s0p - s1 + s1p - s2 + s2p);
            let x = -e * cs * (two * s0 + two * s0p - s1 - s1p - s2 - s2p)
                + e * sn * (two * c0 - two * c0p - c1 + c1p - c2 + c2p);
            Ok(Complex::new(r, x))
        }
    }
}

/// `(√(d²+x²) + x, √(d²+x²) − x)` without cancellation.
fn stable_pair<T: Real>(d: T, x: T) -> (T, T) {
    let r = (d * d + x * x).sqrt();
    if x >= T::zero() {
        (r + x, d * d / (r + x))
    } else {
        (d * d / (r - x), r - x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> DipoleParams<f64> {
        DipoleParams::half_wave(1.0).unwrap()
    }

    #[test]
    fn half_wave_self_impedance() {
        let z = self_impedance(&params()).unwrap();
        assert!((z.re - 73.131_3).abs() < 1e-3, "{z}");
        assert!((z.im - 42.545_5).abs() < 1e-3, "{z}");
    }

    #[test]
    fn mutual_impedance_at_half_wavelength() {
        let z = mutual_impedance(MutualConfig::SideBySide, 0.5, 0.0, &params()).unwrap();
        assert!((z.re + 12.53).abs() < 0.05 && (z.im + 29.91).abs() < 0.05, "{z}");
    }

    #[test]
    fn echelon_reduces_to_side_by_side_and_collinear() {
        let p = params();
        let sbs = mutual_impedance(MutualConfig::SideBySide, 0.3, 0.0, &p).unwrap();
        let ech = mutual_impedance(MutualConfig::ParallelInEchelon, 0.3, 0.0, &p).unwrap();
        assert!((sbs - ech).norm() < 1e-10);
        let col = mutual_impedance(MutualConfig::Collinear, 0.0, 0.8, &p).unwrap();
        let near = mutual_impedance(MutualConfig::ParallelInEchelon, 1e-6, 0.8, &p).unwrap();
        assert!((col - near).norm() < 1e-4, "{col} vs {near}");
    }

    #[test]
    fn echelon_is_symmetric_in_offset() {
        let p = params();
        let a = mutual_impedance(MutualConfig::ParallelInEchelon, 0.3, 0.4, &p).unwrap();
        let b = mutual_impedance(MutualConfig::ParallelInEchelon, 0.3, -0.4, &p).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn invalid_geometry_is_rejected() {
        let p = params();
        assert!(mutual_impedance(MutualConfig::SideBySide, 0.0, 0.0, &p).is_err());
        assert!(mutual_impedance(MutualConfig::Collinear, 0.0, 0.5, &p).is_err());
        assert!(DipoleParams::with_geometry(1.0, 0.2).is_err());
    }
}
