//! Plane-wave steering, dipole effective lengths and the line-of-sight
//! open-circuit transfer impedance.

use nalgebra::Vector3;
use num_complex::Complex;

use super::array::ArrayGeometry;
use super::dipole::DipoleParams;
use crate::error::{Error, Result};
use crate::scalar::{cis, consts, real, CVector, Real};

/// Propagation direction: `elevation` is measured from the `x`–`y` plane,
/// `azimuth` from `x` toward `y`. Radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    pub elevation: T,
    pub azimuth: T,
}

impl<T: Real> Direction<T> {
    pub fn new(elevation: T, azimuth: T) -> Self {
        Direction { elevation, azimuth }
    }

    pub fn unit(&self) -> Vector3<T> {
        let (se, ce) = self.elevation.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        Vector3::new(ce * ca, ce * sa, se)
    }

    /// Wave vector `k` for the given wavelength.
    pub fn wave_vector(&self, wavelength: T) -> Vector3<T> {
        self.unit() * (T::two_pi() / wavelength)
    }

    /// Polar unit vector `θ̂` of the local spherical frame.
    pub fn theta_hat(&self) -> Vector3<T> {
        let (se, ce) = self.elevation.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        Vector3::new(se * ca, se * sa, -ce)
    }

    /// The same line seen from the far end: `(−θ, φ + π)`.
    pub fn reversed(&self) -> Self {
        Direction { elevation: -self.elevation, azimuth: self.azimuth + T::pi() }
    }
}

/// A propagation path between a transmitter and the array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePath<T> {
    /// Direction of the path as seen from the array.
    pub arrival: Direction<T>,
    /// Direction of the path as seen from the transmitter.
    pub departure: Direction<T>,
    /// Path length, m.
    pub distance: T,
    /// Extra complex gain on top of free-space spreading.
    pub gain: Complex<T>,
}

impl<T: Real> PlanePath<T> {
    pub fn line_of_sight(arrival: Direction<T>, distance: T) -> Self {
        PlanePath { arrival, departure: arrival.reversed(), distance, gain: real(T::one()) }
    }
}

/// `a_m = e^{j k·u_m}`.
pub fn steering_vector<T: Real>(direction: &Direction<T>, geom: &ArrayGeometry<T>, wavelength: T) -> CVector<T> {
    let k = direction.wave_vector(wavelength);
    CVector::from_iterator(geom.len(), geom.positions().iter().map(|u| cis(k.dot(u))))
}

/// Far-field pattern of a half-wave dipole, `cos(π/2·sin θ)/(π cos θ)`.
pub fn dipole_pattern<T: Real>(elevation: T) -> Result<T> {
    let c = elevation.cos();
    if c.abs() <= T::round_off() {
        return Err(Error::domain("propagation::dipole_pattern", "pattern is undefined along the dipole axis"));
    }
    Ok((T::frac_pi_2() * elevation.sin()).cos() / (T::pi() * c))
}

/// Vector effective length `λ g(θ) θ̂`.
pub fn effective_length<T: Real>(direction: &Direction<T>, p: &DipoleParams<T>) -> Result<Vector3<T>> {
    Ok(direction.theta_hat() * (p.wavelength * dipole_pattern(direction.elevation)?))
}

/// Line-of-sight coefficient `α′ = j e^{jψ₀} (l_t·l_r)/(2λd)` with `ψ₀ = −2πd/λ`.
pub fn los_alpha_prime<T: Real>(
    departure: &Direction<T>,
    arrival: &Direction<T>,
    distance: T,
    p: &DipoleParams<T>,
) -> Result<Complex<T>> {
    if !(distance > T::zero()) {
        return Err(Error::domain("propagation::los_alpha_prime", "distance must be positive"));
    }
    let lt = effective_length(departure, p)?;
    let lr = effective_length(arrival, p)?;
    let psi0 = -T::two_pi() * distance / p.wavelength;
    let scale = lt.dot(&lr) / (T::lit(2.0) * p.wavelength * distance);
    Ok(Complex::new(T::zero(), T::one()) * cis(psi0) * scale)
}

/// Open-circuit transfer impedance `z_ART = Σ Z₀ g α′ a` from one
/// single-dipole transmitter to the array.
pub fn z_art_los<T: Real>(paths: &[PlanePath<T>], geom: &ArrayGeometry<T>, p: &DipoleParams<T>) -> Result<CVector<T>> {
    let z0 = T::lit(consts::FREE_SPACE_IMPEDANCE);
    let mut z = CVector::zeros(geom.len());
    for path in paths {
        let alpha = los_alpha_prime(&path.departure, &path.arrival, path.distance, p)? * path.gain * z0;
        z += steering_vector(&path.arrival, geom, p.wavelength) * alpha;
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn broadside_pattern_and_axis() {
        assert!((dipole_pattern(0.0_f64).unwrap() - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(dipole_pattern(std::f64::consts::FRAC_PI_2).is_err());
    }

    #[test]
    fn los_alpha_magnitude() {
        let p = DipoleParams::half_wave(0.1_f64).unwrap();
        let arr = Direction::new(0.0, 0.3);
        let a = los_alpha_prime(&arr.reversed(), &arr, 20.0, &p).unwrap();
        let expected = p.wavelength / (2.0 * std::f64::consts::PI.powi(2) * 20.0);
        assert!((a.norm() - expected).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn steering_entries_have_unit_modulus(m in 1usize..20, d in 0.01_f64..2.0, th in -1.5_f64..1.5, ph in -3.1_f64..3.1) {
            let g = ArrayGeometry::side_by_side(m, d).unwrap();
            let a = steering_vector(&Direction::new(th, ph), &g, 1.0);
            for z in a.iter() {
                prop_assert!((z.norm() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn reversed_polarization_is_aligned(th in -1.5_f64..1.5, ph in -3.1_f64..3.1) {
            let d = Direction::new(th, ph);
            prop_assert!((d.theta_hat().dot(&d.reversed().theta_hat()) - 1.0).abs() < 1e-12);
        }
    }
}
