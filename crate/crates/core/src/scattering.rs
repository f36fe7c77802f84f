//! Power waves and scattering matrices.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{diag_from, identity, inverse};
use crate::scalar::{real, CMatrix, CVector, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortState<T> {
    pub voltage: Complex<T>,
    pub current: Complex<T>,
    pub reference: Complex<T>,
}

impl<T: Real> PortState<T> {
    pub fn new(voltage: Complex<T>, current: Complex<T>, reference: Complex<T>) -> Result<Self> {
        if !(reference.re > T::zero()) {
            return Err(Error::domain("scattering::port", "reference impedance needs a positive real part"));
        }
        Ok(PortState { voltage, current, reference })
    }
}

/// `a = (v + Z i)/(2√Re Z)`, `b = (v − Z* i)/(2√Re Z)`.
pub fn power_waves<T: Real>(s: &PortState<T>) -> (Complex<T>, Complex<T>) {
    let k = T::lit(2.0) * s.reference.re.sqrt();
    ((s.voltage + s.reference * s.current) / k, (s.voltage - s.reference.conj() * s.current) / k)
}

/// Power waves for a multiport; returns `(a, b)`.
pub fn port_waves<T: Real>(
    v: &CVector<T>,
    i: &CVector<T>,
    references: &[Complex<T>],
) -> Result<(CVector<T>, CVector<T>)> {
    if v.len() != i.len() || v.len() != references.len() {
        return Err(Error::precondition("scattering::port_waves", "length mismatch"));
    }
    let mut a = CVector::zeros(v.len());
    let mut b = CVector::zeros(v.len());
    for n in 0..v.len() {
        let (an, bn) = power_waves(&PortState::new(v[n], i[n], references[n])?);
        a[n] = an;
        b[n] = bn;
    }
    Ok((a, b))
}

/// `S = F (Z − G*)(Z + G)⁻¹ F⁻¹` with `G = diag(Z_ref)`, `F = diag(1/(2√Re Z_ref))`.
pub fn s_from_z<T: Real>(z: &CMatrix<T>, references: &[Complex<T>]) -> Result<CMatrix<T>> {
    const OP: &str = "scattering::s_from_z";
    if !z.is_square() || z.nrows() != references.len() {
        return Err(Error::precondition(OP, "one reference impedance per port required"));
    }
    if references.iter().any(|r| !(r.re > T::zero())) {
        return Err(Error::domain(OP, "reference impedances need positive real parts"));
    }
    let g = diag_from(references);
    let g_conj = g.map(|x| x.conj());
    let f: Vec<_> = references.iter().map(|r| real(T::one() / (T::lit(2.0) * r.re.sqrt()))).collect();
    let f_inv: Vec<_> = references.iter().map(|r| real(T::lit(2.0) * r.re.sqrt())).collect();
    let core = (z - g_conj) * inverse(&(z + &g), OP)?;
    Ok(diag_from(&f) * core * diag_from(&f_inv))
}

/// `‖Sᴴ S − I‖_F`.
pub fn unitarity_defect<T: Real>(s: &CMatrix<T>) -> T {
    crate::linalg::frobenius(&(s.adjoint() * s - identity::<T>(s.nrows())))
}
