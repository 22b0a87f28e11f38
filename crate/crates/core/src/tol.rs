//! Default tolerances, one decade of slack per matrix multiply.

/// Integral-generation symmetry residuals.
pub const GENERATION: f64 = 1e-12;
/// Matrix commutators [H, K+^2].
pub const COMMUTATION: f64 = 1e-10;
/// Subspace / level projections.
pub const SUBSPACE: f64 = 1e-8;
/// Exponential-map deviation |expm((pi/2) K+) - K|.
pub const EXP_MAP: f64 = 1e-12;
/// Pairing relations (norms, overlaps, back-action).
pub const PAIRING: f64 = 1e-10;
/// Compact rotation identity K Psi = cos(pi k/2) Psi + sin(pi k/2) Psi~.
pub const ROTATION: f64 = 1e-9;
/// Eigenvalue-to-integer rounding |lambda + k^2|.
pub const K_ROUNDING: f64 = 1e-8;
/// Gap separating distinct eigenvalue groups.
pub const DEGENERACY_GAP: f64 = 1e-7;
/// Orthonormality of eigenvector columns.
pub const ORTHONORMALITY: f64 = 1e-10;
/// Magnetic selection rules (diagonal zeros, purity residuals).
pub const MAGNETIC: f64 = 1e-10;
/// Norm check on ingested state vectors.
pub const STATE_NORM: f64 = 1e-8;
/// Hermiticity of assembled matrices.
pub const HERMITICITY: f64 = 1e-12;
