//! Finite models of the Dieudonné-module constructions behind the existence
//! results: the self-dual lattice `M₀` over `Z[√p]`, its index-`p`
//! sublattices and their Frobenius-pairing condition, the Fermat locus on
//! `P¹`, and module doubling under Weil restriction.

use thiserror::Error;

use crate::arithmetic::ArithmeticError;

pub mod doubling;
pub mod field;
pub mod lattice;
pub mod matrix;
pub mod ring;

pub use doubling::{weil_double, DoubledModule, KernelDecomposition};
pub use field::{fermat_locus, FieldElement, PrimePowerField, ProjectivePoint};
pub use lattice::{
    kernel_condition, lagrangian_basis, lines_in_reduction, make_step1_lattice, LagrangianBasis,
    RLattice, ReductionLine,
};
pub use matrix::ModMatrix;
pub use ring::{RAutomorphism, TruncatedRing, TruncatedRingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error("extension degree {0} is not supported (use 1 or 2)")]
    BadDegree(u8),
    #[error("[0:0] is not a projective point")]
    ZeroPoint,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Gram matrix is not alternating")]
    NotAlternating,
    #[error("pairing is not compatible with multiplication by sqrt(p)")]
    NotRCompatible,
    #[error("pairing is not perfect modulo p")]
    DegenerateForm,
    #[error("matrix is not invertible over the truncated ring")]
    NotInvertible,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}
