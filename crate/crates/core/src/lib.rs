//! Binary actions of finite groups on finite carriers.
//!
//! A binary action assigns to every group element `g` a binary operation
//! `g(x, y)` on the carrier subject to `(gh)(x, y) = g(x, h(x, y))` and
//! `e(x, y) = y`. This crate validates such actions, builds the standard
//! constructions, computes orbits and orbit spaces of distributive actions,
//! checks the topological statements on finite spaces and enumerates all
//! actions of a small group on a small carrier.

pub mod action;
pub mod binop;
pub mod catalog;
pub mod cli;
pub mod group;
pub mod io;
pub mod orbits;
pub mod search;
pub mod subset;
pub mod topology;

pub use action::{ActionError, BinaryAction, OrdinaryAction};
pub use binop::{BinaryOp, BinopError};
pub use group::{FiniteGroup, GroupError};
pub use orbits::{OrbitError, OrbitSpace};
pub use search::{EnumerationResult, EnumerationTask, SearchError};
pub use subset::Subset;
pub use topology::{FiniteTopology, TopologicalBinaryGSpace, TopologyError};

/// A statement that holds by theorem failed on concrete data.
///
/// This only happens if the implementation is wrong; callers abort on it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("theorem check failed ({check}): {witness}")]
pub struct TheoremViolation {
    pub check: &'static str,
    pub witness: String,
}

impl TheoremViolation {
    pub fn new(check: &'static str, witness: impl Into<String>) -> Self {
        TheoremViolation { check, witness: witness.into() }
    }
}
