//! Exact verification of the computable steps behind the general-type
//! threshold for moduli of (1,p)-polarised abelian surfaces.
//!
//! The crate is organised around a small exact linear-algebra substrate
//! ([`mat::Mat`] generic over the [`scalar::Scalar`] field) and five
//! subject modules:
//!
//! * [`groups`]: the paramodular group Γ_t, its level subgroup, named
//!   elements, membership predicates, conjugation, and the fractional
//!   linear action on the Siegel upper half-plane;
//! * [`dimensions`]: the weight-2 Jacobi cusp form count, group indices,
//!   and the leading cusp-form dimension coefficients with an exact audit
//!   of the index chain;
//! * [`singularities`]: Reid-Tai classification of cyclic and monomial
//!   quotient singularities and the catalog of every type arising on the
//!   compactified moduli space;
//! * [`toric`]: interior lattice-point plurigenus counts for the boundary
//!   quotient germs, exact simplex volumes, and growth reports;
//! * [`obstruction`]: the supply-versus-obstruction coefficients, their
//!   audits, the strict threshold inequality with its minimum prime 173,
//!   and the propagation to polarisations p·q².
//!
//! [`acceptance`] packages the end-to-end checks as named criteria.
//!
//! All arithmetic is exact; there is no floating point in this crate.

pub mod acceptance;
pub mod arith;
pub mod dimensions;
pub mod groups;
pub mod mat;
pub mod obstruction;
pub mod scalar;
pub mod singularities;
pub mod toric;

pub use mat::Mat;
pub use scalar::{frac, GaussRational, QuadScalar, Rational, Scalar};

/// 4×4 and 2×2 work over ℚ.
pub type RationalMat = Mat<Rational>;
/// Matrices over ℚ(√p), used for the dual-surface symmetry.
pub type QuadMat = Mat<QuadScalar>;
/// Matrices over the Gaussian rationals, used for the Möbius action.
pub type ComplexMat = Mat<GaussRational>;
