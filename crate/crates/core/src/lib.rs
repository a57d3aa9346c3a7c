//! Finite commutative rings, finite modules and commutative monoids, with
//! semigroup-module arithmetic `R[S]`, `M[S]`, content ideals and exhaustive
//! zero-divisor analysis.
//!
//! Every ring and module is an explicit table over `0..n`, so each predicate
//! here is a finite scan. The infinite objects `R[S]` and `M[S]` are reached
//! through content criteria and through bounded windows of series
//! ([`verify::SupportWindow`]).

pub mod algebra;
pub mod analysis;
pub mod bitset;
pub mod error;
pub mod ideal;
pub mod module;
pub mod monoid;
pub mod ring;
pub mod series;
mod table;
pub mod verify;

pub use algebra::{DmResult, ExtendedIdeal, SemigroupModule, SemigroupRing, ZeroDivisorVerdict};
pub use analysis::{
    check_property_a, decompose_zero_divisors, has_very_few_zero_divisors, primality, Decomposition,
    PrimeDecomposition, PropertyAReport,
};
pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use ideal::{prime_avoidance_locate, prime_ideals, Coverage, Ideal, PrimeCheck};
pub use module::{FiniteModule, Submodule, SubmoduleClassification};
pub use monoid::{Monoid, MonoidElement};
pub use ring::{Elem, FiniteRing};
pub use series::{CoefficientSpace, Series};
