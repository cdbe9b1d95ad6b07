//! Seifert surfaces of a knot modelled as abstract surface systems.
//!
//! A [`SurfaceSystem`] lists surface classes together with the pattern in
//! which lifts of each pair meet in the infinite cyclic cover. From that
//! data this crate computes covering spreads and intersection numbers,
//! builds the Kakimizu complex as a [`FlagComplex`], and checks its
//! structural properties: distance equals covering spread plus one, short
//! cycles in vertex links have diagonals, cycles contract, and
//! two-dimensional instances are contractible.

pub mod complex;
pub mod pattern;
pub mod systems;
pub mod verify;

pub use complex::{ComplexError, Cycle, FlagComplex, HomotopyBounds, NullHomotopyWitness, H1};
pub use pattern::{covering_spread, dualize, intersection_number, lt_lb, validate_pattern, OffsetPattern};
pub use systems::{Complexity, SurfaceSystem, SystemError};
pub use verify::{Verdict, VerificationReport, VerifyBounds};
