//! Exact computer algebra for Hecke algebras, their affine extensions, traces,
//! the specialized elliptic Hall algebra and its Fock representation.
//!
//! Algebras are generic over a [`Coeff`] field. The aliases below fix it to the
//! rational-function field [`Scalar`].

pub mod affine;
mod display;
pub mod error;
pub mod fock;
pub mod hall;
pub mod hecke;
pub mod partition;
pub mod perm;
pub mod scalar;
pub mod symfunc;
pub mod trace;

pub use error::{Error, Result};
pub use partition::Partition;
pub use perm::Perm;
pub use scalar::{Coeff, Laurent, Scalar, SpecialS};

pub type HeckeElement = hecke::HeckeElem<Scalar>;
pub type AffineElement = affine::AffineElem<Scalar>;
pub type HallElement = hall::HallElem<Scalar>;
pub type SymElement = symfunc::SymElem<Scalar>;
pub type FockOperator = fock::FockOperator<Scalar>;
