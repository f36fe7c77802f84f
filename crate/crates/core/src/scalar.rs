//! Scalar abstraction shared by every physics module.

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point type the model is generic over (`f32` or `f64`).
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite constant")
    }

    /// Smallest positive normal value.
    fn tiny() -> Self;

    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Tolerance floor used for "zero within rounding" checks: 1e-12 for
    /// `f64`, a few ulps-scaled value for narrower types.
    #[inline]
    fn round_off() -> Self {
        let floor = Self::lit(1e-12);
        let eps = Self::default_epsilon() * Self::lit(64.0);
        if eps > floor {
            eps
        } else {
            floor
        }
    }
}

impl Real for f32 {
    fn tiny() -> Self {
        f32::MIN_POSITIVE
    }
}

impl Real for f64 {
    fn tiny() -> Self {
        f64::MIN_POSITIVE
    }
}

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// `e^{jθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

#[inline]
pub fn j<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

#[inline]
pub fn abs2<T: Real>(z: Complex<T>) -> T {
    z.re * z.re + z.im * z.im
}

#[inline]
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    abs2(z).sqrt()
}

/// Principal square root of a complex number.
pub fn csqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let r = modulus(z);
    if r == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let half = T::lit(0.5);
    let re = ((r + z.re) * half).sqrt();
    let im = ((r - z.re) * half).sqrt();
    Complex::new(re, if z.im < T::zero() { -im } else { im })
}

pub mod consts {
    /// Free-space wave impedance used throughout, in ohms.
    pub const FREE_SPACE_IMPEDANCE: f64 = 377.0;
    /// Boltzmann constant, J/K.
    pub const BOLTZMANN: f64 = 1.380_649e-23;
    /// Speed of light in vacuum, m/s.
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Euler–Mascheroni constant.
    pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
}
