use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::gamma::ConditionReport;
use crate::simplicial::IdentityViolation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// An algebraic law that a finite table failed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Shape,
    Closure,
    Identity,
    Associativity,
    Commutativity,
    Inverse,
    /// `d(a, a)` must not depend on `a`.
    UnitIndependence,
    ActionIdentity,
    ActionComposition,
    ActionAdditive,
    ActionUnit,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Shape => "shape",
            Axiom::Closure => "closure",
            Axiom::Identity => "identity",
            Axiom::Associativity => "associativity",
            Axiom::Commutativity => "commutativity",
            Axiom::Inverse => "inverse",
            Axiom::UnitIndependence => "unit-independence",
            Axiom::ActionIdentity => "action-identity",
            Axiom::ActionComposition => "action-composition",
            Axiom::ActionAdditive => "action-additive",
            Axiom::ActionUnit => "action-unit",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed axiom together with the element indices that witness the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot compose: source {source_len} does not match target {target_len}")]
    Mismatch {
        source_len: usize,
        target_len: usize,
    },

    #[error("invalid morphism: {0}")]
    InvalidMap(&'static str),

    #[error("assignment images of {first} and {second} share the element {shared}")]
    OverlappingImages {
        first: usize,
        second: usize,
        shared: usize,
    },

    #[error("index {index} out of range (bound {bound})")]
    OutOfRange { index: usize, bound: usize },

    #[error("no table for a morphism {source_level} -> {target_level}")]
    MissingTable {
        source_level: usize,
        target_level: usize,
    },

    #[error("axiom violated: {0}")]
    Axiom(AxiomViolation),

    #[error("presheaf is not strict: {0}")]
    NotStrict(Box<ConditionReport>),

    #[error("insufficient truncation: need {required}, have {available}")]
    InsufficientTruncation { required: usize, available: usize },

    #[error("resource budget exceeded: {required} simplices requested, budget {budget}")]
    Budget { required: usize, budget: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("simplicial identity violated: {0}")]
    Simplicial(IdentityViolation),

    #[error("presheaf is not functorial at level {level}: element {element}")]
    NotFunctorial { level: usize, element: usize },

    #[error("map is not an isomorphism at level {level}: simplex {simplex}")]
    NotIsomorphism { level: usize, simplex: usize },

    #[error(
        "map is not equivariant for group element {element} at level {level}: simplex {simplex}"
    )]
    NotEquivariant {
        element: usize,
        level: usize,
        simplex: usize,
    },

    #[error("chain is not a cycle")]
    NotACycle,
}

impl Error {
    pub(crate) fn axiom(axiom: Axiom, witness: Vec<usize>) -> Self {
        Error::Axiom(AxiomViolation { axiom, witness })
    }
}
