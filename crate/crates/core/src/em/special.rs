//! Sine and cosine integrals.
//!
//! Power series below `x = 2`, a complex continued fraction (modified
//! Lentz) above it. Absolute accuracy is about 1e-15 in `f64`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{consts::EULER_GAMMA, Real};

const MAX_ITER: usize = 200;
const SERIES_LIMIT: f64 = 2.0;

/// `Si(x) = ∫₀ˣ sin t / t dt`, defined for all real `x` (odd).
pub fn si<T: Real>(x: T) -> T {
    if x == T::zero() {
        return T::zero();
    }
    let (s, _) = kernel(x.abs());
    if x < T::zero() {
        -s
    } else {
        s
    }
}

/// `Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt` for `x > 0`.
pub fn ci<T: Real>(x: T) -> Result<T> {
    Ok(sin_cos_integrals(x)?.1)
}

/// `(Si(x), Ci(x))` for `x > 0`.
pub fn sin_cos_integrals<T: Real>(x: T) -> Result<(T, T)> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("special::sin_cos_integrals", format!("Ci requires a finite x > 0, got {}", x.as_f64())));
    }
    Ok(kernel(x))
}

fn kernel<T: Real>(t: T) -> (T, T) {
    let eps = T::default_epsilon();
    let tiny = T::tiny();
    if t > T::lit(SERIES_LIMIT) {
        let one = T::one();
        let mut b = Complex::new(one, t);
        let mut c = Complex::new(one / tiny, T::zero());
        let mut d = Complex::new(one, T::zero()) / b;
        let mut h = d;
        for i in 2..MAX_ITER {
            let a = -T::lit(((i - 1) * (i - 1)) as f64);
            b += Complex::new(T::lit(2.0), T::zero());
            d = Complex::new(one, T::zero()) / (d * a + b);
            c = b + Complex::new(a, T::zero()) / c;
            let del = c * d;
            h *= del;
            if (del.re - one).abs() + del.im.abs() < eps {
                break;
            }
        }
        h *= Complex::new(t.cos(), -t.sin());
        (T::frac_pi_2() + h.im, -h.re)
    } else if t * t < tiny {
        (t, T::lit(EULER_GAMMA) + t.ln())
    } else {
        let mut sum = T::zero();
        let mut sums = T::zero();
        let mut sumc = T::zero();
        let mut sign = T::one();
        let mut fact = T::one();
        let mut odd = true;
        for k in 1..MAX_ITER {
            let kf = T::lit(k as f64);
            fact *= t / kf;
            let term = fact / kf;
            sum += sign * term;
            let err = term / sum.abs();
            if odd {
                sign = -sign;
                sums = sum;
                sum = sumc;
            } else {
                sumc = sum;
                sum = sums;
            }
            if err < eps {
                break;
            }
            odd = !odd;
        }
        (sums, sumc + t.ln() + T::lit(EULER_GAMMA))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Values from an independent reference implementation.
    const REF: &[(f64, f64, f64)] = &[
        (0.5, 0.493_107_418_043_066_6, -0.177_784_078_806_612_3),
        (1.0, 0.946_083_070_367_183, 0.337_403_922_900_968_2),
        (std::f64::consts::PI, 1.851_937_051_982_465_8, 0.073_667_912_046_425_87),
        (2.0 * std::f64::consts::PI, 1.418_151_576_132_628_4, -0.022_560_661_746_346_11),
        (10.0, 1.658_347_594_218_874, -0.045_456_433_004_455_37),
    ];

    #[test]
    fn matches_reference_values() {
        for &(x, s, c) in REF {
            let (gs, gc) = sin_cos_integrals(x).unwrap();
            assert!((gs - s).abs() < 1e-12, "Si({x}) = {gs}, expected {s}");
            assert!((gc - c).abs() < 1e-12, "Ci({x}) = {gc}, expected {c}");
        }
    }

    #[test]
    fn edge_cases() {
        assert_eq!(si(0.0_f64), 0.0);
        assert!((si(1e6_f64) - std::f64::consts::FRAC_PI_2).abs() < 1e-5);
        assert!(ci(0.0_f64).is_err());
        assert!(ci(-1.0_f64).is_err());
    }

    #[test]
    fn single_precision_is_close() {
        let (s, c) = sin_cos_integrals(1.0_f32).unwrap();
        assert!((s - 0.946_083_1).abs() < 1e-6 && (c - 0.337_403_9).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn continuous_across_branch(dx in -1e-9_f64..1e-9) {
            let a = sin_cos_integrals(2.0 + dx).unwrap();
            let b = sin_cos_integrals(2.0).unwrap();
            prop_assert!((a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8);
        }

        #[test]
        fn derivatives_match_integrands(x in 0.1_f64..60.0) {
            let h = 1e-5;
            let (sp, cp) = sin_cos_integrals(x + h).unwrap();
            let (sm, cm) = sin_cos_integrals(x - h).unwrap();
            prop_assert!(((sp - sm) / (2.0 * h) - x.sin() / x).abs() < 1e-7);
            prop_assert!(((cp - cm) / (2.0 * h) - x.cos() / x).abs() < 1e-7);
        }

        #[test]
        fn si_is_odd(x in -50.0_f64..50.0) {
            prop_assert_eq!(si(-x), -si(x));
        }
    }
}
