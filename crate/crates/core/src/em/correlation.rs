//! Spatial correlation of the open-circuit array response under an
//! angular scattering density.

use nalgebra::Vector3;
use rayon::prelude::*;

use super::array::ArrayGeometry;
use super::propagation::Direction;
use crate::error::{Error, Result};
use crate::linalg::{frobenius, relative_error};
use crate::scalar::{cis, CMatrix, Real};

const NODES: usize = 8;
const START_PANELS: usize = 4;
const MAX_PANELS: usize = 512;
const CONVERGENCE: f64 = 1e-8;
const NORMALIZATION_TOL: f64 = 1e-6;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn composite(panels: usize, lo: f64, hi: f64, rule: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let width = (hi - lo) / panels as f64;
    let mut pts = Vec::with_capacity(panels * rule.len());
    for p in 0..panels {
        let mid = lo + width * (p as f64 + 0.5);
        for &(x, w) in rule {
            pts.push((mid + 0.5 * width * x, 0.5 * width * w));
        }
    }
    pts
}

fn integrate<T: Real>(
    panels: usize,
    rule: &[(f64, f64)],
    weight: &(impl Fn(&Direction<T>) -> T + Sync),
    positions: &[Vector3<T>],
    wavelength: T,
) -> (CMatrix<T>, T) {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let grid = composite(panels, -half_pi, half_pi, rule);
    let m = positions.len();
    let rows: Vec<(CMatrix<T>, T)> = grid
        .par_iter()
        .map(|&(th, wth)| {
            let mut acc = CMatrix::zeros(m, m);
            let mut mass = T::zero();
            let mut a = Vec::with_capacity(m);
            for &(ph, wph) in &grid {
                let dir = Direction::new(T::lit(th), T::lit(ph));
                let w = weight(&dir) * T::lit(wth * wph);
                if w == T::zero() {
                    continue;
                }
                mass += w;
                let k = dir.wave_vector(wavelength);
                a.clear();
                a.extend(positions.iter().map(|u| cis(k.dot(u))));
                for r in 0..m {
                    for c in r..m {
                        acc[(r, c)] += a[r] * a[c].conj() * w;
                    }
                }
            }
            (acc, mass)
        })
        .collect();
    let mut sigma = CMatrix::zeros(m, m);
    let mut mass = T::zero();
    for (acc, w) in rows {
        sigma += acc;
        mass += w;
    }
    for r in 0..m {
        for c in 0..r {
            sigma[(r, c)] = sigma[(c, r)].conj();
        }
    }
    (sigma, mass)
}

/// `Σ = ∫∫ β(θ,φ) f(θ,φ) a(θ,φ) a(θ,φ)^H dθ dφ` over `θ, φ ∈ [−π/2, π/2]`.
///
/// `density` must integrate to one. Quadrature is refined until successive
/// estimates agree to 1e-8 in relative Frobenius norm.
pub fn spatial_correlation<T: Real>(
    beta: impl Fn(&Direction<T>) -> T + Sync,
    density: impl Fn(&Direction<T>) -> T + Sync,
    geom: &ArrayGeometry<T>,
    wavelength: T,
) -> Result<CMatrix<T>> {
    const OP: &str = "correlation::spatial_correlation";
    let rule = gauss_legendre(NODES);
    let weight = |d: &Direction<T>| beta(d) * density(d);
    let mut panels = START_PANELS;
    let (mut prev, _) = integrate(panels, &rule, &weight, geom.positions(), wavelength);
    let mut prev_mass = integrate(panels, &rule, &|d: &Direction<T>| density(d), &[], wavelength).1;
    loop {
        panels *= 2;
        if panels > MAX_PANELS {
            return Err(Error::domain(OP, "quadrature did not converge; density too concentrated"));
        }
        let (next, _) = integrate(panels, &rule, &weight, geom.positions(), wavelength);
        let mass = integrate(panels, &rule, &|d: &Direction<T>| density(d), &[], wavelength).1;
        let settled = relative_error(&next, &prev) < T::lit(CONVERGENCE).max(T::round_off())
            && (mass - prev_mass).abs() < T::lit(CONVERGENCE).max(T::round_off());
        prev = next;
        prev_mass = mass;
        if settled || frobenius(&prev) == T::zero() {
            break;
        }
    }
    if (prev_mass - T::one()).abs() > T::lit(NORMALIZATION_TOL).max(T::round_off()) {
        return Err(Error::precondition(
            OP,
            format!("angular density integrates to {} instead of 1", prev_mass.as_f64()),
        ));
    }
    Ok(prev)
}
