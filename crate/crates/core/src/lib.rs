//! Exact arithmetic for polynomial automorphisms of the plane over ℤ, ℚ,
//! prime fields and truncated polynomial rings, with tame decompositions,
//! nilpotent lifting and a positive-characteristic tameness test.

pub mod autmap;
pub mod catalog;
pub mod charp;
pub mod error;
pub mod linalg;
pub mod phih;
pub mod poly;
pub mod ring;
pub mod tame_field;

pub use autmap::{
    apply_factor_list, invert_factors, nagata, simplify_factors, try_invert, verify_certificate,
    AutoMap, Certificate, Factor, Matrix2, Shift,
};
pub use charp::{
    basis_shapes, decide_tameness, normalize, obstruction_check, search_sum_of_powers, BasisShape,
    Congruence, MonomialConstraint, Normalized, Obstruction, ObstructionOutcome,
    ObstructionWitness, ResidueSet, SearchBounds, TamenessVerdict,
};
pub use error::{Error, Result};
pub use phih::{
    conjugate_phi, factor_phi_monomial, find_potential, lift_decompose, monomial_to_powers, phi_of,
    Coordinate, Potential, PowerTerm, SumOfPowersForm,
};
pub use poly::{jacobian_det, JacobianMatrix, Monomial, Poly2};
pub use ring::{is_prime, reduce_hom, Coeff, Hom, Ring, RingElement, RingKind};
pub use tame_field::{
    elementary_product, jvdk_decompose, jvdk_decompose_traced, sa_to_ea_factors, sl2_to_elementary,
    ElementaryMatrix, ReductionStep, ReductionTrace,
};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;
