//! Exact-arithmetic Clifford-Hermite polynomials for finite reflection groups.
//!
//! The crate builds the generalized Hermite polynomials attached to a Dunkl
//! operator family: starting from a homogeneous Dunkl-monogenic polynomial
//! `P_n` (a kernel element of the Dunkl-Dirac operator `D_h`), repeated
//! application of the raising operator `D_+ = D_h - 2x` produces the family
//! `H_s = (D_+)^s P_n`. Everything is computed over arbitrary-precision
//! rationals, so recurrences, the Rodrigues formula, orthogonality, the
//! differential equation, the Laguerre closed form and the norm constants
//! can all be checked as exact identities rather than approximations.
//!
//! Module layout:
//!
//! - [`clifford`]: the universal Clifford algebra `R_{0,d}` over rationals.
//! - [`multipoly`]: multivariate polynomials with multivector coefficients.
//! - [`reflection`]: root systems, reflection groups, multiplicity functions.
//! - [`dunkl`]: the operators `T_i`, `D_h`, the Laplacian, `D_+`, and the
//!   spherical part of `D_h`.
//! - [`monogenic`]: exact kernel bases of `D_h` and their orthogonalization.
//! - [`hermite`]: the Hermite families, radial coefficients, Laguerre forms.
//! - [`integrate`]: exact Gaussian-weighted inner products as symbolic
//!   Gamma-function values (hyperoctahedral groups).
//! - [`numeric`]: floating-point cross checks (generalized Gauss quadrature,
//!   Monte Carlo).
//! - [`verify`]: the identity-verification suite behind the CLI.

pub mod clifford;
pub mod dunkl;
pub mod error;
pub mod hermite;
pub mod integrate;
pub(crate) mod linalg;
pub mod monogenic;
pub mod multipoly;
pub mod numeric;
pub mod rat;
pub mod reflection;
pub mod verify;

pub use clifford::Multivector;
pub use error::Error;
pub use integrate::GammaExpr;
pub use multipoly::CPoly;
pub use rat::Rat;
pub use reflection::{Family, ReflectionData};
