//! Crystallizations of closed 3-manifolds.
//!
//! A closed 3-manifold is represented by a 4-coloured graph whose dual
//! complex triangulates it. This crate provides the graph type and its
//! residue machinery, canonical codes, the dipole / generalized-dipole /
//! rho-pair move calculus, exhaustive generation of rigid crystallizations,
//! the class-merging classification with handle bookkeeping, and homology
//! and fundamental-group invariants.

pub mod canon;
pub mod census;
pub mod classify;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod moves;

pub use canon::{canonical_order, code, decode, is_colour_isomorphic, Code, OrderedGraph};
pub use census::{build_catalogue, extend_with_colour3, generate_sphere_gems, Catalogue, SphereGem};
pub use classify::{
    apply_sequence, classify_list, factorize, sequences, split_by_h, theta, ClassRecord, Factorization,
    MoveSequence, ReductionResult,
};
pub use error::{Error, Result};
pub use invariants::{
    abelianize, chain_complex, first_homology, homology, pi1_presentation, AbelianGroup, ChainComplex,
    Letter, Presentation,
};
pub use graph::{connected_sum, find_sum_split, ColourSet, ColouredGraph, Residue, SumSplit};
pub use moves::{
    add_dipole, cancel_gen_dipole, delete_dipole, find_dipoles, find_gen_dipoles, find_rho_pairs,
    is_rigid, rigidify, switch_rho_pair, Dipole, DipoleSite, GenDipole, Handle, RhoKind, RhoPair,
    Rigidified,
};
