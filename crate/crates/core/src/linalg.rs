//! Dense complex linear algebra helpers with explicit failure modes.

use log::warn;
use nalgebra::{Cholesky, DMatrix, Dim, Matrix, RawStorage};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real, CMatrix, CVector, Real};

/// Condition number above which inversions log a warning.
pub const CONDITION_WARN: f64 = 1e12;

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

pub fn hermitian_part<T: Real>(a: &CMatrix<T>) -> CMatrix<T> {
    (a + a.adjoint()) * real(T::lit(0.5))
}

/// Entrywise real part, returned as a complex matrix.
pub fn real_part<T: Real>(a: &CMatrix<T>) -> CMatrix<T> {
    a.map(|z| real(z.re))
}

pub fn frobenius<T: Real, R: Dim, C: Dim, S: RawStorage<Complex<T>, R, C>>(a: &Matrix<Complex<T>, R, C, S>) -> T {
    a.iter().fold(T::zero(), |acc, z| acc + z.re * z.re + z.im * z.im).sqrt()
}

/// `‖a − b‖_F / ‖b‖_F` for matrices or vectors of equal shape.
pub fn relative_error<T, R, C, S1, S2>(a: &Matrix<Complex<T>, R, C, S1>, b: &Matrix<Complex<T>, R, C, S2>) -> T
where
    T: Real,
    R: Dim,
    C: Dim,
    S1: RawStorage<Complex<T>, R, C>,
    S2: RawStorage<Complex<T>, R, C>,
{
    assert_eq!(a.shape(), b.shape(), "relative_error: shape mismatch");
    let den = frobenius(b);
    let num = a.iter().zip(b.iter()).fold(T::zero(), |acc, (x, y)| acc + (*x - *y).norm_sqr()).sqrt();
    if den > T::zero() {
        num / den
    } else {
        num
    }
}

pub fn is_hermitian<T: Real>(a: &CMatrix<T>, rel_tol: T) -> bool {
    a.is_square() && frobenius(&(a - a.adjoint())) <= rel_tol * frobenius(a).max(T::tiny())
}

fn check_square<T: Real>(a: &CMatrix<T>, op: &'static str) -> Result<()> {
    if a.is_square() && a.nrows() > 0 {
        Ok(())
    } else {
        Err(Error::precondition(op, format!("expected a non-empty square matrix, got {}x{}", a.nrows(), a.ncols())))
    }
}

fn hermitian_eigen<T: Real>(a: &CMatrix<T>, op: &'static str) -> Result<(Vec<T>, CMatrix<T>)> {
    check_square(a, op)?;
    let tol = T::lit(1e-8).max(T::round_off() * T::lit(100.0));
    if !is_hermitian(a, tol) {
        return Err(Error::precondition(op, "matrix is not Hermitian"));
    }
    let eig = hermitian_part(a).symmetric_eigen();
    Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<T>> {
    let (mut values, _) = hermitian_eigen(a, "linalg::hermitian_eigenvalues")?;
    values.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(values)
}

fn spectral_map<T: Real>(vectors: &CMatrix<T>, values: &[T], f: impl Fn(T) -> T) -> CMatrix<T> {
    let n = values.len();
    let mut scaled = vectors.clone();
    for (col, &lam) in values.iter().enumerate() {
        let s = real(f(lam));
        for row in 0..n {
            scaled[(row, col)] *= s;
        }
    }
    let out = scaled * vectors.adjoint();
    hermitian_part(&out)
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues down to `-1e-12·‖A‖` are clamped to zero.
pub fn principal_sqrt<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>> {
    const OP: &str = "linalg::principal_sqrt";
    let (values, vectors) = hermitian_eigen(a, OP)?;
    let scale = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let floor = -T::round_off() * scale;
    let mut clamped = Vec::with_capacity(values.len());
    for &v in &values {
        if v < floor {
            return Err(Error::Indefinite { op: OP, min_eigenvalue: v.as_f64() });
        }
        clamped.push(v.max(T::zero()));
    }
    Ok(spectral_map(&vectors, &clamped, |v| v.sqrt()))
}

/// Inverse of the principal square root of a Hermitian positive definite matrix.
pub fn inverse_principal_sqrt<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>> {
    const OP: &str = "linalg::inverse_principal_sqrt";
    let (values, vectors) = hermitian_eigen(a, OP)?;
    let scale = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let min = values.iter().fold(T::max_value().unwrap_or(scale), |m, v| m.min(*v));
    if min <= T::round_off() * scale {
        return Err(Error::Indefinite { op: OP, min_eigenvalue: min.as_f64() });
    }
    if (scale / min).as_f64() > CONDITION_WARN {
        warn!("{OP}: condition number {:e}", (scale / min).as_f64());
    }
    Ok(spectral_map(&vectors, &values, |v| T::one() / v.sqrt()))
}

/// Inverse via LU; fails on exact or numerical singularity.
pub fn inverse<T: Real>(a: &CMatrix<T>, op: &'static str) -> Result<CMatrix<T>> {
    check_square(a, op)?;
    let inv = a.clone().lu().try_inverse().ok_or(Error::Singular { op })?;
    if inv.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Singular { op });
    }
    let cond = (frobenius(a) * frobenius(&inv)).as_f64();
    if cond > CONDITION_WARN {
        warn!("{op}: ill-conditioned inversion (Frobenius condition {cond:e})");
    }
    Ok(inv)
}

/// Solves `A X = B` for Hermitian positive definite `A`.
pub fn solve_hpd<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, op: &'static str) -> Result<CMatrix<T>> {
    check_square(a, op)?;
    let chol = Cholesky::new(hermitian_part(a)).ok_or(Error::Indefinite { op, min_eigenvalue: f64::NAN })?;
    Ok(chol.solve(b))
}

/// `v^H A v`, real part.
pub fn quadratic_form<T: Real>(a: &CMatrix<T>, v: &CVector<T>) -> T {
    (v.adjoint() * a * v)[(0, 0)].re
}

pub fn diag_from<T: Real>(values: &[Complex<T>]) -> CMatrix<T> {
    let n = values.len();
    DMatrix::from_fn(n, n, |r, c| if r == c { values[r] } else { Complex::new(T::zero(), T::zero()) })
}

/// Diagonal of `a` as a diagonal matrix.
pub fn diagonal_of<T: Real>(a: &CMatrix<T>) -> CMatrix<T> {
    let d: Vec<_> = (0..a.nrows()).map(|i| a[(i, i)]).collect();
    diag_from(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn hpd() -> CMatrix<f64> {
        let b = CMatrix::from_fn(3, 3, |r, c| cplx((r + 2 * c) as f64 * 0.3 - 0.4, (r as f64 - c as f64) * 0.2));
        &b * b.adjoint() + identity::<f64>(3)
    }

    #[test]
    fn sqrt_squares_back() {
        let a = hpd();
        let s = principal_sqrt(&a).unwrap();
        assert!(relative_error(&(&s * &s), &a) < 1e-13);
        let si = inverse_principal_sqrt(&a).unwrap();
        assert!(relative_error(&(&si * &s), &identity(3)) < 1e-13);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let a = diag_from(&[real(1.0), real(-0.5)]);
        assert!(matches!(principal_sqrt(&a), Err(Error::Indefinite { .. })));
    }

    #[test]
    fn sqrt_clamps_roundoff_negatives() {
        let a = diag_from(&[real(1.0), real(-1e-15)]);
        let s = principal_sqrt(&a).unwrap();
        assert_eq!(s[(1, 1)].re, 0.0);
    }

    #[test]
    fn singular_inverse_is_reported() {
        let a = CMatrix::<f64>::from_element(2, 2, real(1.0));
        assert!(matches!(inverse(&a, "t"), Err(Error::Singular { .. })));
    }
}
