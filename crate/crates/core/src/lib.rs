//! Exact graded characters for twisted affinizations of simple Lie algebras.
//!
//! The crate computes characters of thin Demazure modules, Weyl modules,
//! integrable highest weight modules, projective covers and thick Weyl
//! modules, and the branching polynomials that relate them across levels.
//!
//! Weights are written in fundamental-weight coordinates with Bourbaki node
//! labels. Exponents of `q` count the degree above the generating extremal
//! weight, so every family starts at `q^0`.

pub mod afweight;
pub mod cartan;
pub mod charring;
pub mod coeff;
pub mod demazure;
pub mod error;
pub mod expand;
pub mod irrep;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod qpoly;
pub mod serial;
pub mod verify;

pub use afweight::{AffineWeight, ReducedWord};
pub use cartan::{CartanType, RootSystem, Weight};
pub use charring::{Anchor, GradedCharacter, Truncation};
pub use coeff::Int;
pub use demazure::Engine;
pub use error::{Error, Result};
pub use expand::{Basis, Expansion, Family};
pub use irrep::IrrepSum;
pub use qpoly::QPoly;
