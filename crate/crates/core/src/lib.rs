//! Exact symbolic realization of the indefinite orthogonal Lie algebra o(p,q)
//! by polynomial-coefficient differential operators, the commuting sl₂ triple,
//! and the (g,K)-modules cut out by the finite-dimensional sl₂-modules.
//!
//! Layers, bottom up:
//! - [`scalar`], [`poly`], [`weyl`]: Gaussian-rational polynomials and the Weyl algebra.
//! - [`liealg`]: basis matrices, the representations `π`/`π♯`, Casimirs, moment map.
//! - [`harmonics`]: harmonic polynomial spaces and the harmonic projection.
//! - [`module`]: the formal space of `Σ P_α ψ_α` and its sl₂ / p actions.
//! - [`gkmod`]: K-type lattices, irreducibility, growth and Bernstein degree.
//! - [`report`], [`verify`]: verification suites and structured reports used by the CLI.

pub mod error;
pub mod export;
pub mod gkmod;
pub mod harmonics;
pub mod liealg;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use poly::{Ambient, Block, Monomial, Polynomial};
pub use scalar::{Rational, Scalar};
pub use weyl::WeylOperator;
