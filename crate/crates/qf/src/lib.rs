//! Finite sup-lattices, quantales, and modules over quantales, with the
//! explicit constructions relating them: tensor products and internal homs,
//! biproducts, matrix quantales, idempotent splittings, and the comparison
//! functors used to verify Morita equivalences exhaustively at small scale.
//!
//! Everything is finite and deterministic. Structures validate their axioms
//! on construction and return typed errors carrying witnesses; searches run
//! in a fixed order so that reports and found witnesses are reproducible.

pub mod bits;
pub mod catalog;
pub mod error;
pub mod format;
pub mod iso;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod morita;
pub mod quantale;
pub mod report;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
