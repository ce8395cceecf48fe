//! Exact path complexity of the binary search tree class.
//!
//! The states of a BST under insert and delete are its shapes. Stage `n` of
//! the state diagram holds all Catalan(n) shapes of order `n`; insert moves up
//! a stage and delete moves down. The path complexity for length `n` counts,
//! over every valid insert/delete sequence of length `n`, the walks through
//! the diagram that realize it.
//!
//! - [`shape`]: shapes, canonical encoding, stage enumeration
//! - [`transitions`]: insert, standard delete, modified (leaf-chasing) delete
//! - [`keyed`]: concrete keyed BST used to check the shape-level operations
//! - [`diagram`]: the layered state diagram and its DOT export
//! - [`sequences`]: valid sequences and the stack counts
//! - [`complexity`]: path counting, `p(n, k)` tables, bounds, curve fits
//! - [`oracle`], [`verify`]: brute-force references and invariant suites

pub mod complexity;
pub mod diagram;
pub mod error;
pub mod keyed;
pub mod oracle;
pub mod sequences;
pub mod shape;
pub mod transitions;
pub mod verify;

pub use complexity::{
    count_paths, count_paths_traced, effective_delete_multiplier, p_nk, path_table, ratio_2dp,
    ratio_table, total_path_complexity, CountTable, MultiplierConvention, PathTrace, Strategy,
    TraceStep,
};
pub use diagram::{
    build_diagram, export_dot, stage_profile, DegreeStats, StageProfile, StateDiagram,
};
pub use error::{Error, Result};
pub use keyed::{keyed_realize, shape_of, KeyedTree};
pub use sequences::{
    enumerate_valid, is_valid, stack_path_complexity, stack_pnk, stack_table, Op, OpSequence,
};
pub use shape::{
    catalan, enumerate_shapes, enumerate_shapes_capped, Shape, ShapeId, DEFAULT_STAGE_CAP,
};
pub use transitions::{
    delete_children, delete_modified, delete_modified_children, delete_predecessor,
    delete_predecessor_children, delete_standard, delete_standard_children, insert_children,
    leaf_removals, DeleteVariant,
};

pub use num_bigint::BigUint;
pub use num_rational::BigRational;

/// Rational as `"num/den"`.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}
