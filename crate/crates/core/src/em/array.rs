//! Uniform dipole arrays and their mutual-coupling matrix.

use nalgebra::Vector3;
use num_complex::Complex;

use super::dipole::{mutual_impedance, DipoleParams, MutualConfig};
use crate::error::{Error, Result};
use crate::scalar::{CMatrix, Real};

/// Tolerance on the index count `L/d` before flooring.
const COUNT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Configuration {
    /// Dipoles along `z`, stacked along `y`.
    SideBySide,
    /// Dipoles along `z`, stacked along `z`.
    Collinear,
    /// Parallel dipoles stacked along a slanted line in the `y`–`z` plane.
    Echelon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry<T: Real> {
    positions: Vec<Vector3<T>>,
    spacing: T,
    configuration: Configuration,
}

impl<T: Real> ArrayGeometry<T> {
    /// `count` dipoles spaced `spacing` apart along `y`, centered on the origin.
    pub fn side_by_side(count: usize, spacing: T) -> Result<Self> {
        Self::uniform(count, spacing, T::zero(), Configuration::SideBySide)
    }

    pub fn collinear(count: usize, spacing: T) -> Result<Self> {
        Self::uniform(count, T::zero(), spacing, Configuration::Collinear)
    }

    pub fn echelon(count: usize, lateral: T, axial: T) -> Result<Self> {
        if !(lateral > T::zero()) || axial == T::zero() {
            return Err(Error::domain("array::echelon", "echelon needs non-zero lateral and axial spacing"));
        }
        Self::uniform(count, lateral, axial, Configuration::Echelon)
    }

    /// Side-by-side array filling an aperture: `M = ⌊L/d⌋ + 1`.
    pub fn from_aperture(aperture: T, spacing: T) -> Result<Self> {
        if !(aperture >= T::zero()) || !(spacing > T::zero()) {
            return Err(Error::domain("array::from_aperture", "aperture and spacing must be positive"));
        }
        Self::side_by_side(elements_for_aperture(aperture, spacing), spacing)
    }

    fn uniform(count: usize, dy: T, dz: T, configuration: Configuration) -> Result<Self> {
        if count == 0 {
            return Err(Error::domain("array::geometry", "array needs at least one element"));
        }
        let spacing = (dy * dy + dz * dz).sqrt();
        if !(spacing > T::zero()) && count > 1 {
            return Err(Error::domain("array::geometry", "spacing must be positive"));
        }
        let center = T::lit((count as f64 - 1.0) / 2.0);
        let positions = (0..count)
            .map(|m| {
                let s = T::lit(m as f64) - center;
                Vector3::new(T::zero(), s * dy, s * dz)
            })
            .collect();
        Ok(ArrayGeometry { positions, spacing, configuration })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Vector3<T>] {
        &self.positions
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn configuration(&self) -> Configuration {
        self.configuration
    }

    /// Distance between the outermost elements.
    pub fn aperture(&self) -> T {
        self.spacing * T::lit(self.len().saturating_sub(1) as f64)
    }
}

/// `⌊L/d⌋ + 1`, tolerant of `L/d` landing a hair below an integer.
pub fn elements_for_aperture<T: Real>(aperture: T, spacing: T) -> usize {
    let ratio = (aperture / spacing).as_f64();
    (ratio + COUNT_SLACK).floor() as usize + 1
}

/// Impedance between two parallel z-directed dipoles at the given centers.
pub fn pair_impedance<T: Real>(a: &Vector3<T>, b: &Vector3<T>, p: &DipoleParams<T>) -> Result<Complex<T>> {
    let lateral = ((b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y)).sqrt();
    let axial = b.z - a.z;
    let tol = p.wavelength * T::lit(1e-9);
    if axial.abs() <= tol {
        mutual_impedance(MutualConfig::SideBySide, lateral, T::zero(), p)
    } else if lateral <= tol {
        mutual_impedance(MutualConfig::Collinear, T::zero(), axial, p)
    } else {
        mutual_impedance(MutualConfig::ParallelInEchelon, lateral, axial, p)
    }
}

/// Coupling matrix `Z_AR` with `R_d` added on the diagonal.
///
/// Uniform arrays are Toeplitz, so each offset is evaluated once and the
/// matrix is exactly symmetric.
pub fn coupling_matrix<T: Real>(geom: &ArrayGeometry<T>, p: &DipoleParams<T>) -> Result<CMatrix<T>> {
    let dissipation = vec![p.dissipation; geom.len()];
    coupling_matrix_with_dissipation(geom, p, &dissipation)
}

/// Coupling matrix with a per-element dissipation resistance.
pub fn coupling_matrix_with_dissipation<T: Real>(
    geom: &ArrayGeometry<T>,
    p: &DipoleParams<T>,
    dissipation: &[T],
) -> Result<CMatrix<T>> {
    let m = geom.len();
    if dissipation.len() != m {
        return Err(Error::precondition("array::coupling_matrix", "one dissipation value per element required"));
    }
    let pos = geom.positions();
    let z_self = super::dipole::self_impedance(p)?;
    let mut by_offset = Vec::with_capacity(m);
    by_offset.push(z_self);
    for n in 1..m {
        by_offset.push(pair_impedance(&pos[0], &pos[n], p)?);
    }
    Ok(CMatrix::from_fn(m, m, |r, c| {
        let z = by_offset[r.abs_diff(c)];
        if r == c {
            z + Complex::new(dissipation[r], T::zero())
        } else {
            z
        }
    }))
}

/// Normalized mutual resistance `μ = Re{Z_mutual(d)}/(R_r + R_d)`.
pub fn mu_coefficient<T: Real>(spacing: T, p: &DipoleParams<T>) -> Result<T> {
    let z = mutual_impedance(MutualConfig::SideBySide, spacing, T::zero(), p)?;
    Ok(z.re / p.total_resistance())
}
