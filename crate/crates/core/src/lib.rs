//! Homological invariants of quiver representations over computable
//! commutative rings.
//!
//! Representations are stored pointwise free: one free module per vertex and
//! one exact matrix per arrow. On top of exact linear algebra over `Z`, `Q`,
//! `F_p`, `Z/m` and `F_p[e]/(e^n)` the crate computes `Hom` and `Ext^1`,
//! decides rigidity and exceptionality, mutates exceptional sequences,
//! constructs the exceptional lattice of a real Schur root over any supported
//! ring and splits rigid lattices into exceptional summands.

pub mod cli;
pub mod error;
pub mod homology;
pub mod mutation;
pub mod quiver;
pub mod ring;
pub mod sample;
pub mod structure;

pub use error::{Error, Result};
pub use homology::{
    check_base_change, hom_ext, is_exceptional, is_rigid, rigid_hom_ext_ranks, HomExt,
};
pub use mutation::{
    braid_act, is_exceptional_pair, left_mutate, orbit_search, right_mutate, standard_sequence,
    ExcSequence, MutationCase, MutationResult,
};
pub use quiver::{DimVector, Quiver, Rep, RepMorphism};
pub use ring::{Matrix, ModulePresentation, RingElem, RingHom, RingSpec};
pub use structure::{
    decompose_rigid, exceptional_lattice, generic_dims, is_real_schur_root, lift_rigid,
    GenericDims, RigidDecomposition, SchurTest,
};
