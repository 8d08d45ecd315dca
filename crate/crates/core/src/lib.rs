//! Certificates for (strong) nonnegativity of polynomials on real varieties.
//!
//! The crate computes negative-arc certificates (a polynomial is not strongly
//! nonnegative at a point, hence not a sum of squares modulo the ideal), exact
//! Gram-matrix sum-of-squares certificates, theta-body membership evidence, and
//! tangent-space / convex-singularity reports.

pub mod arcsearch;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod ideal;
pub mod jet;
pub mod linalg;
pub mod lp;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod sdp;
pub mod sos;
pub mod theta;
pub mod univariate;

pub use error::{Error, Result};
pub use ideal::GroebnerContext;
pub use jet::{ArcHom, Jet, Leading};
pub use poly::{Monomial, OrderKind, Polynomial, TermOrder};
pub use rational::Rational;
