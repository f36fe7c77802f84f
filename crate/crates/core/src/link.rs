//! Linear combining and precoding, per-user SINR and spectral efficiency.

use crate::channel::{BaseStation, UserEquipment};
use crate::em::{z_art_los, ArrayGeometry, Direction, PlanePath};
use crate::error::{Error, Result};
use crate::linalg::{identity, quadratic_form, solve_hpd};
use crate::matching::MatchingKind;
use crate::scalar::{real, CMatrix, CVector, Real};
use crate::system::RadioFrontEnd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combiner {
    /// Maximum ratio.
    Mr,
    /// Minimum mean square error.
    Mmse,
}

impl Combiner {
    pub fn label(&self) -> &'static str {
        match self {
            Combiner::Mr => "mr",
            Combiner::Mmse => "mmse",
        }
    }
}

impl std::str::FromStr for Combiner {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mr" => Ok(Combiner::Mr),
            "mmse" => Ok(Combiner::Mmse),
            other => Err(format!("unknown combiner `{other}` (expected mr or mmse)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkResult<T> {
    pub sinr: Vec<T>,
    /// `log₂(1 + SINR)` per user, bit/s/Hz.
    pub se: Vec<T>,
}

impl<T: Real> LinkResult<T> {
    fn from_sinr(sinr: Vec<T>) -> Self {
        let se = sinr.iter().map(|&s| (T::one() + s).log2()).collect();
        LinkResult { sinr, se }
    }

    pub fn mean_se(&self) -> T {
        let n = T::lit(self.se.len().max(1) as f64);
        self.se.iter().fold(T::zero(), |a, &b| a + b) / n
    }
}

fn check_inputs<T: Real>(h: &CMatrix<T>, powers: &[T], op: &'static str) -> Result<()> {
    if h.ncols() != powers.len() || h.ncols() == 0 || h.nrows() == 0 {
        return Err(Error::precondition(op, "one power per channel column required"));
    }
    if powers.iter().any(|p| !(*p >= T::zero())) {
        return Err(Error::precondition(op, "powers must be non-negative"));
    }
    Ok(())
}

/// `u = h/‖h‖`.
pub fn mr_combiner<T: Real>(h: &CVector<T>) -> Result<CVector<T>> {
    let n = h.norm();
    if !(n > T::zero()) {
        return Err(Error::domain("link::mr_combiner", "zero channel"));
    }
    Ok(h.unscale(n))
}

/// `Σ_i p_i h_i h_iᴴ + R`.
fn weighted_gram<T: Real>(h: &CMatrix<T>, powers: &[T], r: &CMatrix<T>) -> CMatrix<T> {
    let mut c = r.clone();
    for (k, &p) in powers.iter().enumerate() {
        let col = h.column(k);
        c += (col * col.adjoint()) * real(p);
    }
    c
}

/// MMSE combiners for every user as columns: `(Σ p h hᴴ + R_n)⁻¹ H`.
pub fn mmse_combiners<T: Real>(h: &CMatrix<T>, powers: &[T], r_n: &CMatrix<T>) -> Result<CMatrix<T>> {
    const OP: &str = "link::mmse_combiner";
    check_inputs(h, powers, OP)?;
    if r_n.shape() != (h.nrows(), h.nrows()) {
        return Err(Error::precondition(OP, "noise covariance size does not match the array"));
    }
    solve_hpd(&weighted_gram(h, powers, r_n), h, OP)
}

/// Uplink SINR of user `k` with combiner `u`.
pub fn uplink_sinr<T: Real>(u: &CVector<T>, h: &CMatrix<T>, powers: &[T], r_n: &CMatrix<T>, k: usize) -> T {
    let g = u.adjoint() * h;
    let mut signal = T::zero();
    let mut interference = T::zero();
    for (i, &p) in powers.iter().enumerate() {
        let v = p * g[(0, i)].norm_sqr();
        if i == k {
            signal = v;
        } else {
            interference += v;
        }
    }
    signal / (interference + quadratic_form(r_n, u))
}

pub fn uplink<T: Real>(h: &CMatrix<T>, powers: &[T], r_n: &CMatrix<T>, combiner: Combiner) -> Result<LinkResult<T>> {
    check_inputs(h, powers, "link::uplink")?;
    let u = match combiner {
        Combiner::Mmse => mmse_combiners(h, powers, r_n)?,
        Combiner::Mr => {
            let cols: Result<Vec<_>> = (0..h.ncols()).map(|k| mr_combiner(&h.column(k).into_owned())).collect();
            CMatrix::from_columns(&cols?)
        }
    };
    let sinr = (0..h.ncols()).map(|k| uplink_sinr(&u.column(k).into_owned(), h, powers, r_n, k)).collect();
    Ok(LinkResult::from_sinr(sinr))
}

/// Unit-norm precoders as columns, designed from `h`.
pub fn downlink_precoders<T: Real>(h: &CMatrix<T>, powers: &[T], noise: T, scheme: Combiner) -> Result<CMatrix<T>> {
    const OP: &str = "link::downlink_precoders";
    check_inputs(h, powers, OP)?;
    let raw = match scheme {
        Combiner::Mr => h.clone(),
        Combiner::Mmse => {
            let r = identity::<T>(h.nrows()) * real(noise);
            solve_hpd(&weighted_gram(h, powers, &r), h, OP)?
        }
    };
    let mut w = raw;
    for mut col in w.column_iter_mut() {
        let n = col.norm();
        if !(n > T::zero()) {
            return Err(Error::domain(OP, "zero precoder"));
        }
        col.unscale_mut(n);
    }
    Ok(w)
}

/// Downlink SINR of user `k`: `p_k|w_kᴴh_k|² / (Σ_{i≠k} p_i|w_iᴴh_k|² + σ²)`.
pub fn downlink_sinr<T: Real>(w: &CMatrix<T>, h: &CMatrix<T>, powers: &[T], noise: T, k: usize) -> T {
    let g = w.adjoint() * h.column(k);
    let mut signal = T::zero();
    let mut interference = T::zero();
    for (i, &p) in powers.iter().enumerate() {
        let v = p * g[i].norm_sqr();
        if i == k {
            signal = v;
        } else {
            interference += v;
        }
    }
    signal / (interference + noise)
}

/// Downlink with precoders designed on `h_design` and evaluated on `h_true`.
pub fn downlink<T: Real>(
    h_design: &CMatrix<T>,
    h_true: &CMatrix<T>,
    powers: &[T],
    noise: T,
    scheme: Combiner,
) -> Result<LinkResult<T>> {
    if h_design.shape() != h_true.shape() {
        return Err(Error::precondition("link::downlink", "design and true channels differ in shape"));
    }
    let w = downlink_precoders(h_design, powers, noise, scheme)?;
    let sinr = (0..h_true.ncols()).map(|k| downlink_sinr(&w, h_true, powers, noise, k)).collect();
    Ok(LinkResult::from_sinr(sinr))
}

/// Two-element array next to its one-element reference, both fully
/// matched, for gains measured through the whole circuit chain.
#[derive(Debug, Clone)]
pub struct TwoElementLink<T: Real> {
    pub pair: BaseStation<T>,
    pub single: BaseStation<T>,
    pub ue: UserEquipment<T>,
}

impl<T: Real> TwoElementLink<T> {
    pub fn new(fe: &RadioFrontEnd<T>, spacing: T) -> Result<Self> {
        let pair = BaseStation::new(ArrayGeometry::side_by_side(2, spacing)?, fe, MatchingKind::Full, MatchingKind::Full)?;
        let single =
            BaseStation::new(ArrayGeometry::side_by_side(1, spacing)?, fe, MatchingKind::Full, MatchingKind::Full)?;
        Ok(TwoElementLink { pair, single, ue: UserEquipment::new(fe)? })
    }

    fn channel(&self, bs: &BaseStation<T>, dir: Direction<T>, distance: T) -> Result<CVector<T>> {
        let z = z_art_los(&[PlanePath::line_of_sight(dir, distance)], &bs.geometry, &bs.dipole)?;
        Ok(bs.uplink(&z, &self.ue))
    }

    /// Single-user SNR `p hᴴ R⁻¹ h` at the given station.
    pub fn snr(&self, bs: &BaseStation<T>, dir: Direction<T>, distance: T) -> Result<T> {
        let h = self.channel(bs, dir, distance)?;
        let x = solve_hpd(&bs.noise_cov, &CMatrix::from_column_slice(h.len(), 1, h.as_slice()), "link::snr")?;
        Ok(self.ue.power() * (h.adjoint() * x)[(0, 0)].re)
    }

    /// SNR with two elements over SNR with one.
    pub fn array_gain(&self, dir: Direction<T>, distance: T) -> Result<T> {
        Ok(self.snr(&self.pair, dir, distance)? / self.snr(&self.single, dir, distance)?)
    }

    /// Interference-to-noise ratio of user `i` after the MR combiner of user
    /// `k`, relative to the one-element value.
    pub fn interference_gain(&self, k: Direction<T>, i: Direction<T>, distance: T) -> Result<T> {
        let hk = self.channel(&self.pair, k, distance)?;
        let hi = self.channel(&self.pair, i, distance)?;
        let u = mr_combiner(&hk)?;
        let inr2 = (u.adjoint() * &hi)[(0, 0)].norm_sqr() / quadratic_form(&self.pair.noise_cov, &u);
        let h1 = self.channel(&self.single, i, distance)?;
        let inr1 = h1[0].norm_sqr() / self.single.noise_cov[(0, 0)].re;
        Ok(inr2 / inr1)
    }

    /// Uplink SE of user `k` against interferer `i` with MR combining.
    pub fn se_mr(&self, k: Direction<T>, i: Direction<T>, distance: T) -> Result<T> {
        let h = CMatrix::from_columns(&[self.channel(&self.pair, k, distance)?, self.channel(&self.pair, i, distance)?]);
        let p = self.ue.power();
        Ok(uplink(&h, &[p, p], &self.pair.noise_cov, Combiner::Mr)?.se[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;
    use proptest::prelude::*;

    fn random_channels(m: usize, k: usize, seed: u64) -> CMatrix<f64> {
        let mut s = seed;
        CMatrix::from_fn(m, k, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            cplx(a, b)
        })
    }

    #[test]
    fn scalar_case_collapses() {
        let h = CMatrix::from_element(1, 1, cplx(0.3, -0.4));
        let r = CMatrix::from_element(1, 1, cplx(0.01, 0.0));
        for c in [Combiner::Mr, Combiner::Mmse] {
            let res: LinkResult<f64> = uplink(&h, &[2.0], &r, c).unwrap();
            assert!((res.sinr[0] - 2.0 * 0.25 / 0.01).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_channel_mr_fails() {
        assert!(mr_combiner(&CVector::<f64>::zeros(3)).is_err());
    }

    proptest! {
        #[test]
        fn mmse_dominates_mr(m in 1usize..6, k in 1usize..5, seed in any::<u64>()) {
            let h = random_channels(m, k, seed);
            let r = identity::<f64>(m) * real(0.1);
            let p = vec![1.0; k];
            let mmse = uplink(&h, &p, &r, Combiner::Mmse).unwrap();
            let mr = uplink(&h, &p, &r, Combiner::Mr).unwrap();
            for (a, b) in mmse.sinr.iter().zip(&mr.sinr) {
                prop_assert!(*a >= *b * (1.0 - 1e-9));
            }
        }

        #[test]
        fn sinr_is_scale_invariant(m in 1usize..6, k in 1usize..4, seed in any::<u64>(), c in 0.1_f64..10.0) {
            let h = random_channels(m, k, seed);
            let r = identity::<f64>(m) * real(0.2);
            let p = vec![1.0; k];
            let u = mmse_combiners(&h, &p, &r).unwrap();
            let a = uplink_sinr(&u.column(0).into_owned(), &h, &p, &r, 0);
            let b = uplink_sinr(&(u.column(0) * real(c)), &h, &p, &r, 0);
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1e-12));
        }

        #[test]
        fn precoders_have_unit_norm(m in 1usize..6, k in 1usize..4, seed in any::<u64>()) {
            let h = random_channels(m, k, seed);
            let w = downlink_precoders(&h, &vec![1.0; k], 0.3, Combiner::Mmse).unwrap();
            for col in w.column_iter() {
                prop_assert!((col.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
