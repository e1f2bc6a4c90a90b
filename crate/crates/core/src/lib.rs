//! Conflict-free row splits of binary matrices.
//!
//! A binary matrix is conflict-free when its column supports form a laminar
//! family, i.e. when it admits a perfect phylogeny. Splitting rows into
//! several rows whose bitwise OR restores the original makes any matrix
//! conflict-free; this crate computes such splits with few rows or few
//! distinct rows via branchings of the containment digraph, and solves the
//! minimum-price chain partition problem that underlies the linear
//! heuristic.

pub mod branching;
pub mod containment;
pub mod dag;
pub mod instances;
pub mod io;
pub mod matching;
pub mod matrix;
pub mod poset;
pub mod rowset;
pub mod solvers;

pub use branching::{Branching, BranchingError, DEFAULT_BUDGET};
pub use containment::{build_containment, ContainmentDigraph};
pub use dag::{Dag, DagError};
pub use matrix::{
    find_conflict, verify_row_split, BinaryMatrix, ConflictWitness, MatrixError, RejectReason, RowSplit, Verdict,
};
pub use poset::{AntichainTower, ChainPartition, PosetError, WeightFn};
pub use rowset::RowSet;
pub use solvers::{solve, Method, Objective, SolveError, SolveReport};
