//! Multi-parameter affine Hecke algebras in their polynomial (antispherical)
//! model, exact central-character arithmetic, specialization to finite
//! dimensional algebras, and the characteristic-3 geometry of the exotic
//! nilpotent cone of G2.
//!
//! Module map:
//! - [`root_data`]: root data, Weyl groups, presets `A1`, `A2`, `G2`.
//! - [`laurent`]: the group algebra `A[X*]` over `A = Z[q_i^{±1}]` and Demazure operators.
//! - [`hecke`]: the affine Hecke algebra in the normal form `Σ_w T_w f_w`.
//! - [`asph`]: operators of the antispherical module and relation checks.
//! - [`character`]: central characters modelled in `(Q/Z) ⊕ Z^m`.
//! - [`specialize`]: specialized algebras and the count of their simple modules.
//! - [`g2`]: `V = g_s ⊕ g/g_s` over `F_{3^k}`, orbits, Springer fibers, classification.
//! - [`report`]: glue producing the JSON reports used by the command line tool.

pub mod asph;
pub mod character;
pub mod error;
pub mod g2;
pub mod hecke;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod root_data;
pub mod specialize;

pub use error::{Error, Result};
