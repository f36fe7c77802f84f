//! Radio front-end parameters shared by base station and user equipment.

use num_complex::Complex;

use crate::em::DipoleParams;
use crate::error::{Error, Result};
use crate::matching::LnaParams;
use crate::noise::NoisePhysics;
use crate::scalar::{consts, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioFrontEnd<T> {
    /// Carrier frequency, Hz.
    pub carrier_frequency: T,
    /// Signal and noise bandwidth, Hz.
    pub bandwidth: T,
    /// Transmit power per user or per stream, W.
    pub transmit_power: T,
    /// Generator impedance `Z_G`, Ω.
    pub generator: Complex<T>,
    /// Load impedance `Z_L`, Ω.
    pub load: Complex<T>,
    /// Antenna noise temperature, K.
    pub antenna_temperature: T,
    /// LNA noise resistance `R_N`, Ω.
    pub noise_resistance: T,
    /// LNA noise correlation coefficient `ρ`.
    pub noise_correlation: Complex<T>,
    /// `R_d / R_r`.
    pub dissipation_ratio: T,
    /// Dipole radius in wavelengths.
    pub radius_ratio: T,
}

impl<T: Real> RadioFrontEnd<T> {
    /// 3.5 GHz, 20 MHz, −30 dBW, `Z_G = Z_L = 186 − j31.6 Ω`, 290 K,
    /// `R_N = 5 Ω`, `ρ = 0.1`, `R_d = 10⁻³ R_r`.
    pub fn reference() -> Self {
        RadioFrontEnd {
            carrier_frequency: T::lit(3.5e9),
            bandwidth: T::lit(20e6),
            transmit_power: T::lit(1e-3),
            generator: Complex::new(T::lit(186.0), T::lit(-31.6)),
            load: Complex::new(T::lit(186.0), T::lit(-31.6)),
            antenna_temperature: T::lit(290.0),
            noise_resistance: T::lit(5.0),
            noise_correlation: Complex::new(T::lit(0.1), T::zero()),
            dissipation_ratio: T::lit(1e-3),
            radius_ratio: T::lit(crate::em::dipole::DEFAULT_RADIUS_RATIO),
        }
    }

    pub fn wavelength(&self) -> T {
        T::lit(consts::SPEED_OF_LIGHT) / self.carrier_frequency
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "system::front_end";
        let positive = [
            (self.carrier_frequency, "carrier frequency"),
            (self.bandwidth, "bandwidth"),
            (self.transmit_power, "transmit power"),
            (self.generator.re, "generator resistance"),
            (self.load.re, "load resistance"),
            (self.antenna_temperature, "antenna temperature"),
            (self.noise_resistance, "noise resistance"),
        ];
        for (v, name) in positive {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::domain(OP, format!("{name} must be positive")));
            }
        }
        if !(self.dissipation_ratio >= T::zero()) {
            return Err(Error::domain(OP, "dissipation ratio must be non-negative"));
        }
        LnaParams::from_front_end(self).map(|_| ())
    }

    pub fn dipole(&self) -> Result<DipoleParams<T>> {
        let lambda = self.wavelength();
        DipoleParams::with_geometry(lambda, lambda * self.radius_ratio)?.with_dissipation_ratio(self.dissipation_ratio)
    }

    pub fn noise_physics(&self) -> NoisePhysics<T> {
        NoisePhysics { temperature: self.antenna_temperature, bandwidth: self.bandwidth }
    }

    pub fn lna(&self) -> Result<LnaParams<T>> {
        LnaParams::from_front_end(self)
    }
}

/// `10^{dBW/10}` W.
pub fn dbw_to_watts<T: Real>(dbw: T) -> T {
    T::lit(10.0).powf(dbw / T::lit(10.0))
}

pub fn to_db<T: Real>(x: T) -> T {
    T::lit(10.0) * x.log10()
}
