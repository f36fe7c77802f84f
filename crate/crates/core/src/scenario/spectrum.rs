use crate::em::{coupling_matrix, ArrayGeometry};
use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, real_part};
use crate::matching::{design_front_end, LnaParams, MatchingKind, Termination};
use crate::noise::{extrinsic_cov, intrinsic_cov};
use crate::system::RadioFrontEnd;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// `Re{Z_AR}`.
    Coupling,
    /// Noise correlation `U = U_IN + U_EN` before the load divider.
    Noise,
}

/// Eigenvalues sorted in descending order and scaled so the largest is one.
pub fn eigen_spectrum(
    kind: SpectrumKind,
    geom: &ArrayGeometry<f64>,
    fe: &RadioFrontEnd<f64>,
    matching: MatchingKind,
) -> Result<Vec<f64>> {
    let dipole = fe.dipole()?;
    let z = coupling_matrix(geom, &dipole)?;
    let m = match kind {
        SpectrumKind::Coupling => real_part(&z),
        SpectrumKind::Noise => {
            let lna = LnaParams::from_front_end(fe)?;
            let rx = design_front_end(matching, &z, &Termination::Receive { load: fe.load, lna })?;
            let u_en = &rx.f * extrinsic_cov(&z, &fe.noise_physics()) * rx.f.adjoint();
            intrinsic_cov(&rx.z_eff, &lna) + u_en
        }
    };
    let values = hermitian_eigenvalues(&m)?;
    let top = values[0];
    Ok(values.into_iter().map(|v| v / top).collect())
}
