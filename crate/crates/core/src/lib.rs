//! Finite state spaces, property lattices and Aerts' products.
//!
//! Lattices are represented as Moore families of atom sets ([`ClosureSystem`]).
//! A state space `(Σ, ⊥)` yields its property lattice of biorthogonally closed
//! sets; separated and minimal products combine two of them. On top sit
//! exhaustive axiom checkers with replayable certificates and a pruned
//! symmetry search deciding plane transitivity.

pub mod atomset;
pub mod axioms;
pub mod catalog;
pub mod cli;
pub mod closure;
pub mod dot;
pub mod error;
pub mod format;
pub mod lattice;
pub mod products;
pub mod search;
pub mod state_space;
pub mod symmetry;

pub use atomset::AtomSet;
pub use closure::{meet_closure, ClosureSystem, LatticeElement};
pub use error::{Error, Result};
pub use lattice::{closure_space_of, AbstractLattice};
pub use state_space::{OrthoRelation, Ppl, StateSpace};
