//! Many-electron time-reversal algebra over Kramers-restricted Slater determinants.
//!
//! The one-electron time-reversal operator K maps a spinor onto its Kramers
//! partner (K phi_p = phi_pbar, K phi_pbar = -phi_p, K^2 = -1). Two
//! many-electron extensions act on determinant spaces:
//!
//! - the unitary operator KK = prod_i K_i with KK^2 = (-1)^N,
//! - the generator KK+ = sum_i K_i, antilinear and anti-self-adjoint,
//!   connected to KK through KK = exp((pi/2) KK+).
//!
//! The square KK+^2 is linear and Hermitian; its eigenvalues are -k^2 with
//! k an integer of the same parity as the electron count, bounded by the
//! number of open shells. Diagonalizing it over a determinant basis yields
//! Kramers configuration state functions (KCSFs), the relativistic analog
//! of spin-adapted CSFs, together with a pairing structure KK+ Psi = k Psi~.
//!
//! Modules:
//! - [`detalg`]: bitstring determinants and the elementary fermionic /
//!   time-reversal actions on them.
//! - [`trgen`]: open-shell bases and dense matrices of KK+, KK+^2, KK,
//!   plus the exponential-map verification.
//! - [`eig`]: self-contained Jacobi eigensolver and degenerate-subspace
//!   utilities.
//! - [`kcsf`]: KCSF construction, k-labels, pairing, and Kramers
//!   contamination.
//! - [`spincmp`]: Sz/S^2 over the same determinants and the mapping between
//!   spin CSFs and KCSFs.
//! - [`modelham`]: random time-reversal-symmetric model Hamiltonians in a
//!   finite Fock subspace and the associated symmetry checks.
//!
//! All numerics are generic over the floating scalar ([`Scalar`]); the
//! aliases below fix f64 for ordinary use.

pub mod detalg;
pub mod eig;
pub mod error;
pub mod kcsf;
pub mod mat;
pub mod modelham;
pub mod report;
pub mod scalar;
pub mod spincmp;
pub mod tol;
pub mod trgen;

pub use error::Error;
pub use report::{CheckReport, VerificationReport};
pub use scalar::Scalar;

/// Default floating scalar.
pub type Real = f64;
/// Complex number over the default scalar.
pub type Complex64 = num_complex::Complex<Real>;
/// Dense real matrix over the default scalar.
pub type RealMat = ndarray::Array2<Real>;
/// Dense complex matrix over the default scalar.
pub type ComplexMat = ndarray::Array2<Complex64>;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
