//! Adapted homology bases for prime-order automorphisms of closed surfaces.
//!
//! Given the conjugacy invariants of a class (order `p`, quotient genus
//! `g0`, rotation data at the fixed points) the crate produces the
//! one-relator presentation of the surface group from Reidemeister-Schreier
//! rewriting, the adapted basis, the integer matrices of the action and of
//! the intersection form, and an integer symplectic change of basis.

pub mod basis;
pub mod invariants;
pub mod matrix;
pub mod rewriter;
pub mod symplectic;
pub mod verify;

pub use basis::{BasisElement, BasisError, LabeledMatrix, ResidueContext};
pub use invariants::{ConjugacyInput, InvariantError, PrimeOrderData};
pub use matrix::IntMatrix;
pub use rewriter::{
    FreeWord, GeneratorSymbol, Presentation, RewriteError, SchreierGenerator, SimplifiedPresentation,
};
pub use symplectic::{SymplecticChange, SymplecticError};
pub use verify::{verify, SweepReport, VerificationReport};
