//! Electromagnetic layer: special functions, dipole impedances, array
//! geometry, propagation and spatial correlation.

pub mod array;
pub mod correlation;
pub mod dipole;
pub mod propagation;
pub mod special;

pub use array::{coupling_matrix, coupling_matrix_with_dissipation, mu_coefficient, ArrayGeometry, Configuration};
pub use correlation::spatial_correlation;
pub use dipole::{mutual_impedance, self_impedance, DipoleParams, MutualConfig};
pub use propagation::{dipole_pattern, effective_length, los_alpha_prime, steering_vector, z_art_los, Direction, PlanePath};
pub use special::{ci, si, sin_cos_integrals};
