//! Exact linear algebra and circuit semantics over odd prime fields.
//!
//! The crate models relations between tuples of field values: affine
//! subspaces of F_p^(m+n) treated as multivalued maps from m wires to n
//! wires. On top of that sit symplectic state spaces (each wire carries a
//! voltage and a current coordinate), classification predicates for
//! current conservation and losslessness, and a netlist layer that
//! evaluates electrical component diagrams to relations and synthesizes
//! diagrams back from relations.

pub mod circuit;
pub mod classify;
pub mod error;
pub mod field;
pub mod matrix;
pub mod relation;
pub mod subspace;
pub mod symplectic;
pub mod synth;

pub use circuit::{
    divider_relation_check, generator_relation, horizontal_resistor, GeneratorKind, MeshSpec,
    Netlist, NetlistBuilder, PortRef,
};
pub use classify::{
    canonical_admittance, classify, form_is_kirchhoff, is_deterministic, is_graph_state,
    is_kirchhoff, is_translation_invariant, matrix_is_deterministic, position_partition,
    satisfies_kcl, state_from_admittance, Classification,
};
pub use error::{Error, Result};
pub use field::{Prime, Scalar};
pub use matrix::{Matrix, Permutation};
pub use relation::{matrix_is_quasi_stochastic, Relation, StandardForm};
pub use subspace::AffineSubspace;
pub use synth::{synth_affine, synth_graph_state, synth_kirchhoff};
pub use symplectic::{lift, symplectic_dual, symplectic_form_matrix, LagrangianForm, SymplecticRelation};
