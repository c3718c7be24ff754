//! Exact algebra for multi-level fractional factorial designs.
//!
//! A fraction of a full factorial design is a 0/1 response over the run
//! index set. This crate computes its indicator polynomial (the unique
//! interpolating polynomial supported on the standard monomials), the
//! contrast representation `mu = C y`, orthogonality strength, the quadratic
//! relation system that characterizes indicator coefficients, the symmetry
//! group acting on fractions, and an exhaustive search for all fractions of a
//! given size and strength.
//!
//! Everything is exact over the rationals. The crate is `no_std` and only
//! needs `alloc`; file formats, parallelism and the command line live in the
//! `fracdesign` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod contrast;
pub mod enumerate;
mod error;
pub mod indicator;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod relations;
pub mod space;
pub mod symmetry;

pub use contrast::{
    compatible_sizes, contrast_matrix, contrast_rep, contrast_rep_from_theta, marginal, strength, z_basis,
    ContrastLabel, ContrastMatrix, ContrastRep, MarginalTable,
};
pub use enumerate::{count_orthogonal, enumerate_orthogonal, Enumerator};
pub use error::Error;
pub use indicator::{
    fraction_of_indicator, indicator_of, is_indicator, reduce_mod_design, DivisorBasis, IndicatorPoly, Interpolator,
};
pub use matrix::{solve_exact, ExactMatrix};
pub use poly::Poly;
pub use rational::Rational;
pub use relations::{
    emit_relations, fixed_size_constraint, relation_system, size_constraint, strength_constraints, LinearConstraint,
    RelationFormat, RelationSystem, RelationTerm,
};
pub use space::{DesignSpace, Exponents, FactorSpec, Fraction, RunIndex};
pub use symmetry::{complement, GroupElement, Orbit, SymmetryGroup};

pub type Result<T, E = Error> = core::result::Result<T, E>;
