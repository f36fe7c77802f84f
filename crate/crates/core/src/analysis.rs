//! Closed-form two-element line-of-sight results used as oracles for the
//! circuit pipeline.

use crate::em::{mu_coefficient, DipoleParams};
use crate::error::{Error, Result};
use crate::scalar::{consts::FREE_SPACE_IMPEDANCE, Real};

/// Everything the two-element closed forms need for one pair of users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoElementLosCase<T> {
    pub spacing: T,
    pub wavelength: T,
    pub theta_k: T,
    pub phi_k: T,
    pub theta_i: T,
    pub phi_i: T,
    pub mu: T,
    pub mu0: T,
    pub mu2: T,
}

impl<T: Real> TwoElementLosCase<T> {
    pub fn new(spacing: T, p: &DipoleParams<T>, k: (T, T), i: (T, T)) -> Result<Self> {
        let (mu0, mu2) = mu_expansion(p);
        Ok(TwoElementLosCase {
            spacing,
            wavelength: p.wavelength,
            theta_k: k.0,
            phi_k: k.1,
            theta_i: i.0,
            phi_i: i.1,
            mu: mu_coefficient(spacing, p)?,
            mu0,
            mu2,
        })
    }

    pub fn psi_k(&self) -> T {
        psi(self.spacing / self.wavelength, self.theta_k, self.phi_k)
    }

    pub fn psi_i(&self) -> T {
        psi(self.spacing / self.wavelength, self.theta_i, self.phi_i)
    }

    pub fn array_gain(&self) -> Result<T> {
        array_gain_closed(self.mu, self.psi_k())
    }

    pub fn interference_gain(&self) -> Result<T> {
        interference_gain_closed(self.mu, self.psi_k(), self.psi_i())
    }
}

/// `(μ₀, μ₂) = (R_r/(R_r+R_d), (π/2) Z₀/(R_r+R_d))`.
pub fn mu_expansion<T: Real>(p: &DipoleParams<T>) -> (T, T) {
    let total = p.total_resistance();
    (p.radiation_resistance / total, T::frac_pi_2() * T::lit(FREE_SPACE_IMPEDANCE) / total)
}

/// Inter-element phase `ψ = 2π (d_H/λ) cos θ sin φ`.
pub fn psi<T: Real>(spacing_over_lambda: T, theta: T, phi: T) -> T {
    T::two_pi() * spacing_over_lambda * theta.cos() * phi.sin()
}

fn check_mu<T: Real>(mu: T, op: &'static str) -> Result<()> {
    if mu.abs() < T::one() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("|μ| must be below 1, got {}", mu.as_f64())))
    }
}

/// `2(1 − μ cos ψ)/(1 − μ²)`.
pub fn array_gain_closed<T: Real>(mu: T, psi: T) -> Result<T> {
    check_mu(mu, "analysis::array_gain_closed")?;
    Ok(T::lit(2.0) * (T::one() - mu * psi.cos()) / (T::one() - mu * mu))
}

/// Largest array gain over all directions for a given spacing: end-fire for
/// `μ > 0`, broadside otherwise.
pub fn max_array_gain<T: Real>(mu: T, spacing_over_lambda: T) -> Result<T> {
    if mu > T::zero() {
        array_gain_closed(mu, T::two_pi() * spacing_over_lambda)
    } else {
        array_gain_closed(mu, T::zero())
    }
}

/// Small-spacing form of the array gain with `μ ≈ μ₀ − μ₂(d_H/λ)²`.
pub fn array_gain_asymptotic<T: Real>(spacing_over_lambda: T, theta: T, phi: T, mu0: T, mu2: T) -> Result<T> {
    check_degenerate(mu0, mu2, "analysis::array_gain_asymptotic")?;
    let x2 = spacing_over_lambda * spacing_over_lambda;
    let c = theta.cos() * phi.sin();
    let pi2 = T::pi() * T::pi();
    let num = T::lit(2.0) * (T::one() - mu0 + (T::lit(2.0) * mu0 * pi2 * c * c + mu2) * x2);
    let den = (T::one() + mu0) * (T::one() - mu0 + mu2 * x2);
    Ok(num / den)
}

/// `d_H → 0` limit `(2μ₀π²(cos θ sin φ)² + μ₂)/(μ₀ μ₂)`.
pub fn array_gain_limit<T: Real>(theta: T, phi: T, mu0: T, mu2: T) -> Result<T> {
    check_degenerate(mu0, mu2, "analysis::array_gain_limit")?;
    let c = theta.cos() * phi.sin();
    Ok((T::lit(2.0) * mu0 * T::pi() * T::pi() * c * c + mu2) / (mu0 * mu2))
}

fn check_degenerate<T: Real>(mu0: T, mu2: T, op: &'static str) -> Result<()> {
    if !(mu0 > T::zero() && mu0 < T::one()) {
        return Err(Error::domain(op, "expansion is degenerate unless 0 < μ₀ < 1 (lossless antennas give μ₀ = 1)"));
    }
    if !(mu2 > T::zero()) {
        return Err(Error::domain(op, "μ₂ must be positive"));
    }
    Ok(())
}

/// Interference gain after MR combining for user `k`, relative to one antenna.
pub fn interference_gain_closed<T: Real>(mu: T, psi_k: T, psi_i: T) -> Result<T> {
    check_mu(mu, "analysis::interference_gain_closed")?;
    let two = T::lit(2.0);
    let mu2 = mu * mu;
    let den = (T::one() - mu * psi_k.cos()) * (T::one() - mu2);
    let a = T::one() + mu2 - two * mu * (psi_k.cos() + psi_i.cos());
    let b = (psi_k - psi_i).cos() + mu2 * (psi_k + psi_i).cos();
    Ok((a + b) / den)
}

/// `μ₀ − μ₂ (d_H/λ)²`.
pub fn mu_taylor<T: Real>(spacing_over_lambda: T, mu0: T, mu2: T) -> T {
    mu0 - mu2 * spacing_over_lambda * spacing_over_lambda
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn trivial_values() {
        assert_eq!(psi(0.3, 0.2, 0.0), 0.0);
        assert!((psi(0.5, 0.0, PI / 2.0) - PI).abs() < 1e-15);
        assert_eq!(array_gain_closed(0.0, 1.3).unwrap(), 2.0);
        assert!((interference_gain_closed(0.0_f64, 0.7, 0.7).unwrap() - 2.0).abs() < 1e-15);
        assert!(interference_gain_closed(0.0, 0.0, PI).unwrap().abs() < 1e-15);
        assert!(array_gain_closed(1.0, 0.0).is_err());
    }

    #[test]
    fn limits() {
        assert!((array_gain_limit(0.0_f64, 0.0, 0.9, 8.0).unwrap() - 1.0 / 0.9).abs() < 1e-15);
        assert!(array_gain_limit(0.0, 0.3, 1.0, 8.0).is_err());
        assert_eq!(mu_taylor(0.0, 0.99, 8.0), 0.99);
    }

    #[test]
    fn taylor_tracks_exact_mu() {
        let p = DipoleParams::half_wave(1.0).unwrap().with_dissipation_ratio(1e-3).unwrap();
        let (mu0, mu2) = mu_expansion(&p);
        let exact = mu_coefficient(0.05, &p).unwrap();
        assert!((mu_taylor(0.05_f64, mu0, mu2) - exact).abs() < 5e-3);
    }

    proptest! {
        #[test]
        fn array_gain_is_even(mu in -0.99_f64..0.99, psi in -10.0_f64..10.0) {
            prop_assert_eq!(array_gain_closed(mu, psi).unwrap(), array_gain_closed(mu, -psi).unwrap());
        }

        #[test]
        fn maximizer_location(mu in -0.95_f64..0.95, x in 0.01_f64..0.5, t in 0.0_f64..1.0) {
            let psi_max = 2.0 * PI * x;
            let g = array_gain_closed(mu, t * psi_max).unwrap();
            prop_assert!(g <= max_array_gain(mu, x).unwrap() * (1.0 + 1e-12));
        }

        #[test]
        fn interference_gain_is_nonnegative(mu in -0.99_f64..0.99, a in -7.0_f64..7.0, b in -7.0_f64..7.0) {
            prop_assert!(interference_gain_closed(mu, a, b).unwrap() >= -1e-12);
        }
    }
}
