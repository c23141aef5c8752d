//! Exact computation and cross-checking of multiplicity-free branching laws
//! for highest weight modules.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`] builds root systems of types A–G (and arbitrary reductive
//!   subsystems in an ambient ε-space) and computes weight multiplicities.
//! * [`charoracle`] is the finite-dimensional ground truth: Klimyk tensor
//!   products and branching by weight projection.
//! * [`sympairs`] holds the classification tables of symmetric pairs and the
//!   pan-type criterion.
//! * [`hermitian`] builds the Z̃-graded root data of Hermitian Lie algebras and
//!   the greedy strongly orthogonal root sequences.
//! * [`branching`] emits the explicit branching laws as truncated expansions.
//! * [`verify`] binds the closed forms to the oracle.

pub mod branching;
pub mod charoracle;
pub mod error;
pub mod exact;
pub mod hermitian;
pub mod rootsys;
pub mod sympairs;
pub mod verify;

pub use branching::{BranchingExpansion, ContinuousTerm, Label, LabelKind, Mult, PartitionTuple, Term};
pub use charoracle::{Decomposition, ProjectionMap};
pub use error::{Error, Result};
pub use exact::Q;
pub use hermitian::{HermitianData, StrongOrthSequence};
pub use rootsys::{Basis, Family, FormalCharacter, RootSystem, Weight};
pub use sympairs::{Algebra, PanNode, SymmetricPairRecord};
pub use verify::{Status, VerificationReport};
