//! Lossless reciprocal matching networks and their reduction to the
//! quantities the channel model needs.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{diagonal_of, hermitian_part, identity, inverse, inverse_principal_sqrt, principal_sqrt, real_part};
use crate::scalar::{cplx, j, real, CMatrix, Real};
use crate::system::RadioFrontEnd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingKind {
    /// Multiport matching to the full coupled impedance.
    Full,
    /// Per-element matching to the self impedance only.
    #[serde(rename = "self")]
    SelfImpedance,
    /// Direct connection.
    None,
}

impl MatchingKind {
    pub fn label(&self) -> &'static str {
        match self {
            MatchingKind::Full => "full",
            MatchingKind::SelfImpedance => "self",
            MatchingKind::None => "none",
        }
    }
}

impl std::str::FromStr for MatchingKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(MatchingKind::Full),
            "self" => Ok(MatchingKind::SelfImpedance),
            "none" => Ok(MatchingKind::None),
            other => Err(format!("unknown matching kind `{other}` (expected full, self or none)")),
        }
    }
}

/// LNA noise model: noise resistance, correlation and current-noise variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnaParams<T> {
    pub noise_resistance: T,
    pub correlation: Complex<T>,
    /// `σ_i²`, A².
    pub current_variance: T,
}

impl<T: Real> LnaParams<T> {
    pub fn new(noise_resistance: T, correlation: Complex<T>, current_variance: T) -> Result<Self> {
        const OP: &str = "matching::lna";
        if !(noise_resistance > T::zero()) || !(current_variance > T::zero()) {
            return Err(Error::domain(OP, "noise resistance and current variance must be positive"));
        }
        if !(correlation.norm_sqr() < T::one()) {
            return Err(Error::domain(OP, "noise correlation must satisfy |ρ| < 1"));
        }
        Ok(LnaParams { noise_resistance, correlation, current_variance })
    }

    /// `σ_i² = 2 k_B B T / R_N`.
    pub fn from_front_end(fe: &RadioFrontEnd<T>) -> Result<Self> {
        let kb = T::lit(crate::scalar::consts::BOLTZMANN);
        let var = T::lit(2.0) * kb * fe.bandwidth * fe.antenna_temperature / fe.noise_resistance;
        Self::new(fe.noise_resistance, fe.noise_correlation, var)
    }

    /// Noise-optimal source impedance `Z_opt = R_N(√(1 − Im ρ²) + j Im ρ)`.
    pub fn optimal_impedance(&self) -> Complex<T> {
        let ir = self.correlation.im;
        cplx((T::one() - ir * ir).sqrt(), ir) * self.noise_resistance
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination<T> {
    /// Transmit side driven by generators of impedance `Z_G`.
    Transmit { generator: Complex<T> },
    /// Receive side loaded by LNAs of input impedance `Z_L`.
    Receive { load: Complex<T>, lna: LnaParams<T> },
}

impl<T: Real> Termination<T> {
    pub fn impedance(&self) -> Complex<T> {
        match *self {
            Termination::Transmit { generator } => generator,
            Termination::Receive { load, .. } => load,
        }
    }
}

/// Impedance blocks of a `2N`-port network; port group 1 faces the
/// amplifiers, group 2 the antennas.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPortBlocks<T: Real> {
    pub z11: CMatrix<T>,
    pub z12: CMatrix<T>,
    pub z21: CMatrix<T>,
    pub z22: CMatrix<T>,
}

impl<T: Real> TwoPortBlocks<T> {
    pub fn assembled(&self) -> CMatrix<T> {
        let n = self.z11.nrows();
        let mut z = CMatrix::zeros(2 * n, 2 * n);
        z.view_mut((0, 0), (n, n)).copy_from(&self.z11);
        z.view_mut((0, n), (n, n)).copy_from(&self.z12);
        z.view_mut((n, 0), (n, n)).copy_from(&self.z21);
        z.view_mut((n, n), (n, n)).copy_from(&self.z22);
        z
    }

    /// Lossless: the Hermitian part of the full matrix vanishes.
    pub fn is_lossless(&self, tol: T) -> bool {
        let z = self.assembled();
        crate::linalg::frobenius(&hermitian_part(&z)) <= tol * crate::linalg::frobenius(&z)
    }

    pub fn is_reciprocal(&self, tol: T) -> bool {
        let z = self.assembled();
        crate::linalg::frobenius(&(&z - z.transpose())) <= tol * crate::linalg::frobenius(&z)
    }
}

/// What the channel model needs from one side's front end.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontEndReduction<T: Real> {
    pub kind: MatchingKind,
    /// Amplifier-side impedance `Z_G` or `Z_L`.
    pub termination: Complex<T>,
    /// Voltage transfer `F_T` or `F_R`.
    pub f: CMatrix<T>,
    /// Impedance seen from the amplifiers, `Z_T` or `Z_R`.
    pub z_eff: CMatrix<T>,
    /// `Q = Z_L (Z_L I + Z_R)⁻¹`, receive side only.
    pub q: Option<CMatrix<T>>,
    /// Power-normalization matrix `B`, transmit side only.
    pub b: Option<CMatrix<T>>,
}

fn check_antenna<T: Real>(z_a: &CMatrix<T>, op: &'static str) -> Result<()> {
    if !z_a.is_square() || z_a.nrows() == 0 {
        return Err(Error::precondition(op, "antenna impedance must be a non-empty square matrix"));
    }
    if crate::linalg::frobenius(&(z_a - z_a.transpose())) > T::round_off() * T::lit(1e3) * crate::linalg::frobenius(z_a)
    {
        return Err(Error::precondition(op, "antenna impedance must be symmetric"));
    }
    Ok(())
}

/// Synthesizes the matching network for the given antenna impedance.
///
/// Power matching on transmit makes `Z_T = Z_G* I`; noise matching on
/// receive makes `Z_R = Z_opt I`.
pub fn synthesize<T: Real>(z_a: &CMatrix<T>, termination: &Termination<T>) -> Result<TwoPortBlocks<T>> {
    const OP: &str = "matching::synthesize";
    check_antenna(z_a, OP)?;
    let n = z_a.nrows();
    let re = real_part(z_a);
    let im = z_a.map(|z| real(z.im));
    let re_sqrt = principal_sqrt(&re).map_err(|e| Error::Synthesis { op: OP, msg: e.to_string() })?;
    let minus_j = -j::<T>();
    let (z11, z12) = match *termination {
        Termination::Transmit { generator } => {
            if !(generator.re > T::zero()) {
                return Err(Error::domain(OP, "generator resistance must be positive"));
            }
            (identity::<T>(n) * (minus_j * generator.im), &re_sqrt * (minus_j * generator.re.sqrt()))
        }
        Termination::Receive { lna, .. } => {
            let zopt = lna.optimal_impedance();
            (identity::<T>(n) * (j::<T>() * zopt.im), &re_sqrt * (j::<T>() * zopt.re.sqrt()))
        }
    };
    let z21 = z12.transpose();
    let z22 = im * minus_j;
    Ok(TwoPortBlocks { z11, z12, z21, z22 })
}

/// Reduces antenna impedance and (optional) network blocks to `F`, the
/// effective impedance and `Q` or `B`.
pub fn reduce_front_end<T: Real>(
    kind: MatchingKind,
    blocks: Option<&TwoPortBlocks<T>>,
    z_a: &CMatrix<T>,
    termination: &Termination<T>,
) -> Result<FrontEndReduction<T>> {
    const OP: &str = "matching::reduce_front_end";
    check_antenna(z_a, OP)?;
    let n = z_a.nrows();
    let (f, z_eff) = match (kind, blocks) {
        (MatchingKind::None, None) => (identity::<T>(n), z_a.clone()),
        (MatchingKind::None, Some(_)) => {
            return Err(Error::precondition(OP, "no matching network expected for kind `none`"))
        }
        (_, None) => return Err(Error::precondition(OP, "matching network blocks required")),
        (_, Some(b)) => {
            if b.z11.nrows() != n {
                return Err(Error::precondition(OP, "network size does not match the antenna array"));
            }
            let f = &b.z12 * inverse(&(&b.z22 + z_a), OP)?;
            let z_eff = &b.z11 - &f * &b.z21;
            (f, z_eff)
        }
    };
    let zt = termination.impedance();
    let (q, b) = match termination {
        Termination::Receive { load, .. } => {
            let q = inverse(&(identity::<T>(n) * *load + &z_eff), OP)? * *load;
            (Some(q), None)
        }
        Termination::Transmit { generator } => (None, Some(b_matrix(*generator, &z_eff)?)),
    };
    Ok(FrontEndReduction { kind, termination: zt, f, z_eff, q, b })
}

/// Synthesizes (if needed) and reduces in one step. Self-impedance matching
/// designs against `diag(Z_A)` and reduces against the full `Z_A`.
pub fn design_front_end<T: Real>(
    kind: MatchingKind,
    z_a: &CMatrix<T>,
    termination: &Termination<T>,
) -> Result<FrontEndReduction<T>> {
    let blocks = match kind {
        MatchingKind::Full => Some(synthesize(z_a, termination)?),
        MatchingKind::SelfImpedance => Some(synthesize(&diagonal_of(z_a), termination)?),
        MatchingKind::None => None,
    };
    reduce_front_end(kind, blocks.as_ref(), z_a, termination)
}

/// `B = 4R_G (Z_G I + Z_T)^{-H} Re{Z_T} (Z_G I + Z_T)^{-1}`.
pub fn b_matrix<T: Real>(generator: Complex<T>, z_t: &CMatrix<T>) -> Result<CMatrix<T>> {
    const OP: &str = "matching::b_matrix";
    let n = z_t.nrows();
    let inv = inverse(&(identity::<T>(n) * generator + z_t), OP)?;
    let b = inv.adjoint() * hermitian_part(z_t) * &inv * real(T::lit(4.0) * generator.re);
    Ok(hermitian_part(&b))
}

/// `(B^{-1/2})ᵀ`, the map from `d_dl` to the normalized downlink channel.
pub fn b_whitener<T: Real>(b: &CMatrix<T>) -> Result<CMatrix<T>> {
    Ok(inverse_principal_sqrt(b)?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::{coupling_matrix, ArrayGeometry, DipoleParams};
    use crate::linalg::relative_error;
    use proptest::prelude::*;

    fn z_array(m: usize, d: f64) -> CMatrix<f64> {
        let p = DipoleParams::half_wave(1.0).unwrap().with_dissipation_ratio(1e-3).unwrap();
        coupling_matrix(&ArrayGeometry::side_by_side(m, d).unwrap(), &p).unwrap()
    }

    fn rx() -> Termination<f64> {
        let lna = LnaParams::new(5.0, cplx(0.1, 0.0), 1e-10).unwrap();
        Termination::Receive { load: cplx(186.0, -31.6), lna }
    }

    fn tx() -> Termination<f64> {
        Termination::Transmit { generator: cplx(186.0, -31.6) }
    }

    #[test]
    fn full_matching_targets() {
        let z = z_array(4, 0.2);
        let r = design_front_end(MatchingKind::Full, &z, &rx()).unwrap();
        let zopt = cplx(5.0 * (1.0_f64).sqrt(), 0.0);
        assert!(relative_error(&r.z_eff, &(identity::<f64>(4) * zopt)) < 1e-10);
        let t = design_front_end(MatchingKind::Full, &z, &tx()).unwrap();
        assert!(relative_error(&t.z_eff, &(identity::<f64>(4) * cplx(186.0, 31.6))) < 1e-10);
        assert!(relative_error(t.b.as_ref().unwrap(), &identity::<f64>(4)) < 1e-10);
    }

    #[test]
    fn blocks_must_match_kind() {
        let z = z_array(2, 0.5);
        let blocks = synthesize(&z, &tx()).unwrap();
        assert!(reduce_front_end(MatchingKind::None, Some(&blocks), &z, &tx()).is_err());
        assert!(reduce_front_end(MatchingKind::Full, None, &z, &tx()).is_err());
    }

    #[test]
    fn no_matching_is_identity_transfer() {
        let z = z_array(3, 0.3);
        let r = design_front_end(MatchingKind::None, &z, &rx()).unwrap();
        assert_eq!(r.f, identity::<f64>(3));
        assert_eq!(r.z_eff, z);
    }

    proptest! {
        #[test]
        fn synthesized_networks_are_lossless_and_reciprocal(m in 1usize..8, d in 0.05_f64..1.0, rx_side in any::<bool>()) {
            let z = z_array(m, d);
            let term = if rx_side { rx() } else { tx() };
            let b = synthesize(&z, &term).unwrap();
            prop_assert!(b.is_lossless(1e-10));
            prop_assert!(b.is_reciprocal(1e-10));
        }

        #[test]
        fn b_is_hermitian_positive_definite(m in 1usize..8, d in 0.05_f64..1.0, kind in 0usize..3) {
            let z = z_array(m, d);
            let kind = [MatchingKind::Full, MatchingKind::SelfImpedance, MatchingKind::None][kind];
            let t = design_front_end(kind, &z, &tx()).unwrap();
            let b = t.b.unwrap();
            prop_assert!(crate::linalg::is_hermitian(&b, 1e-12));
            let eig = crate::linalg::hermitian_eigenvalues(&b).unwrap();
            prop_assert!(*eig.last().unwrap() > 0.0);
        }
    }
}
