//! Exact commuting-probability computations for finite rings.
//!
//! A ring is described by additive cyclic orders and a structure-constant
//! table for the products of its additive generators. On top of that this
//! crate builds the commutator apparatus (centralizers, commutator sets and
//! subgroups, relative centers), exact rational commuting probabilities for
//! subring pairs with several independently implemented routes, sharp lower
//! and upper bounds with tightness predicates, and a checkable notion of
//! equivalence between pairs that preserves all commutator structure.
//!
//! Everything is exact: probabilities are ratios of machine integers, and
//! every quantity is computed by counting, never by floating point.

pub mod bitset;
pub mod bounds;
pub mod catalog;
pub mod commutator;
pub mod isoclinism;
pub mod prob;
pub mod rational;
pub mod ring;
pub mod subring;
pub mod verify;

pub use bitset::MemberSet;
pub use rational::Rational;
pub use ring::{
    build_ring, direct_product, matrix_ring, ring_zn, strictly_upper_triangular_ring,
    upper_triangular_ring, Element, Ring, RingError, RingRef, RingSpec,
};
pub use subring::{enumerate_subrings, Subring, SubringEnumeration};
