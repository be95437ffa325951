//! Finite-model workbench for algebras of α-ary relations: diagonal-free
//! cylindric, substitution-cylindric and finitary polyadic algebras.
//!
//! The crate evaluates the relation operators over finite bases, parses and
//! evaluates equations, instantiates the standard equation suites, checks
//! them in finite algebras, handles finite atom structures and their complex
//! algebras, and replays the representation constructions at small scale.

pub mod algebra;
pub mod bits;
pub mod checker;
pub mod duality;
pub mod error;
pub mod relation;
pub mod represent;
pub mod set_algebra;
pub mod suites;
pub mod terms;
pub mod transform;

pub use algebra::{Algebra, Capabilities};
pub use bits::Bits;
pub use error::Error;
pub use relation::{Limits, Point, Relation, Shape};
pub use set_algebra::SetAlgebra;
pub use transform::{Generator, Transformation};
