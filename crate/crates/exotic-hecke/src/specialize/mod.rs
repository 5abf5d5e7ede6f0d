//! Specialization of the affine Hecke algebra at a central character and the count of simple
//! modules of the resulting finite-dimensional algebra.

pub mod algebra;
pub mod hecke_quotient;
pub mod poly;
pub mod quotient;

pub use algebra::{check_associative, count_simples, Algebra, FiniteDimAlgebra, SimpleCount};
pub use hecke_quotient::{build_specialized, SpecializedHecke};
pub use quotient::{quotient_basis, QuotientRing};
