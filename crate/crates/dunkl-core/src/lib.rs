//! Exact-arithmetic Dunkl operator calculus for finite reflection groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — the exact coefficient field Q(k0, k1): rational functions in
//!   the multiplicity parameters, canonically normalized.
//! * [`poly`] — sparse multivariate polynomials over that field, with the
//!   orthogonal-group action and divided differences.
//! * [`roots`] — root systems, reflection groups, lengths, discriminants, and
//!   the fundamental-degree table.
//! * [`dunkl`] — Dunkl operators, the Dunkl Laplacian, the kappa and Gaussian
//!   bilinear forms, intertwining operators, reproducing kernels, harmonic
//!   projections, radicals, and Macdonald–Mehta closed forms.
//! * [`jack`] — nonsymmetric Jack polynomials for the symmetric group:
//!   Cherednik–Dunkl operators, the zeta recursion, hook-product closed forms,
//!   and symmetric Jack polynomials.
//! * [`harmonics2d`] — explicit harmonic bases on the plane for Z2, Z2 x Z2,
//!   and dihedral groups, from classical orthogonal-polynomial recurrences.
//! * [`numeric`] — floating-point layer: certified kernel partial sums,
//!   quadrature, Gamma-function evaluation, transform and heat-kernel checks.
//! * [`suites`] — the named verification suites run by the CLI and by the
//!   acceptance test.
//!
//! All symbolic computation is exact: no floating point enters outside the
//! [`numeric`] module, and every closed-form identity is checked either by
//! structural equality of canonical forms or by quadrature with explicit
//! tolerances.

pub mod dunkl;
pub mod error;
pub mod harmonics2d;
pub mod jack;
pub mod numeric;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
