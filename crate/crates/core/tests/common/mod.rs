//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of a complex integrand.
pub fn integrate(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    fn rec(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol.max(1e-15 * v.norm()) || depth > 24 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth + 1) + rec(f, m, b, 0.5 * tol, depth + 1)
    }
    rec(f, a, b, tol, 0)
}

/// Induced-EMF mutual impedance between two parallel half-wave dipoles with
/// sinusoidal currents: lateral separation `d`, axial offset `h`.
pub fn induced_emf_mutual(d: f64, h: f64, wavelength: f64, eta: f64) -> Complex64 {
    let k = 2.0 * std::f64::consts::PI / wavelength;
    let l = wavelength / 2.0;
    let j = Complex64::new(0.0, 1.0);
    let f = |z: f64| {
        let r1 = (d * d + (z + h - l / 2.0).powi(2)).sqrt();
        let r2 = (d * d + (z + h + l / 2.0).powi(2)).sqrt();
        let g = (-j * k * r1).exp() / r1 + (-j * k * r2).exp() / r2;
        g * (k * (l / 2.0 - z.abs())).sin()
    };
    let v = integrate(&f, -l / 2.0, 0.0, 1e-13) + integrate(&f, 0.0, l / 2.0, 1e-13);
    j * eta / (4.0 * std::f64::consts::PI) * v
}

/// `Si(x)` and `Ci(x)` from their defining integrals.
pub fn si_ci(x: f64) -> (f64, f64) {
    let si = integrate(&|t: f64| Complex64::new(if t == 0.0 { 1.0 } else { t.sin() / t }, 0.0), 0.0, x, 1e-15).re;
    let c = integrate(
        &|t: f64| Complex64::new(if t == 0.0 { 0.0 } else { (t.cos() - 1.0) / t }, 0.0),
        0.0,
        x,
        1e-15,
    )
    .re;
    (si, 0.577_215_664_901_532_9 + x.ln() + c)
}
