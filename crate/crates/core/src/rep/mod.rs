//! Finite-dimensional representations of presented algebras over exact
//! fields: Hom spaces, Krull–Schmidt decomposition, the gluing and blow-up
//! functors, and brute-force enumeration of indecomposables.

mod decompose;
mod enumerate;
mod functor;
mod hom;
mod representation;

use thiserror::Error;

use crate::construct::ConstructError;
use crate::field::FieldSpec;

pub use decompose::{
    decompose, find_splitting, is_indecomposable, simple_multiplicity, strip_simple_summands, IsoRegistry,
};
pub use enumerate::{
    enumerate_indecomposables, enumerate_representations, enumeration_budget, IsoClass, DEFAULT_BUDGET,
};
pub use functor::{
    functor_f_blow, functor_f_glue, functor_f_inessential, functor_g_blow, functor_g_inessential, Operation,
    OperationStep,
};
pub use hom::{hom_space, is_isomorphic, HomSpace, Morphism, SEARCH_CAP};
pub use representation::{RelationCheck, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("arrow `{arrow}` needs a {expected:?} matrix, got {found:?}")]
    ShapeMismatch {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {expected} entries, got {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("representations do not match: {0}")]
    Mismatch(String),
    #[error("search space {field}^{dimension} exceeds the cap of 2^20")]
    SearchSpaceTooLarge { field: FieldSpec, dimension: usize },
    #[error("dimension vector {dims:?} has {needed} free entries, over the budget of {budget}")]
    BudgetExceeded {
        dims: Vec<usize>,
        needed: usize,
        budget: usize,
    },
    #[error("enumeration needs a finite field, got {0}")]
    InfiniteField(FieldSpec),
    #[error("operation does not fit this functor: {0}")]
    WrongOperation(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}
