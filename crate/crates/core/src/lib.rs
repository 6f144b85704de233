//! Relative Wilf-equivalence in permutation classes.
//!
//! Classes are handled as finite, level-stored down-sets of permutations.
//! On top of that sit involvement counts and balance, a small propagating
//! solver that finds every balanced one-level extension of a finite class,
//! and a bottom-up search driver over those extensions. Two structural
//! encodings are provided as well: LR words for `Av(213, 312)` and peg
//! permutations with their grid classes.

pub mod class;
pub mod extension;
pub mod error;
pub mod peg;
pub mod perm;
pub mod symmetry;
pub mod wedge;
pub mod wilf;

pub use class::{basis_of, enumerate_av, finiteness_bound, upward_closure, FiniteClass, FinitenessBound};
pub use error::{Error, Result};
pub use perm::{parse_permutation, Perm};
pub use symmetry::{canonical_orbit_representative, Symmetry};
