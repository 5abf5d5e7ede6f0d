//! Geometry of `G2` in characteristic 3 acting on `V = g_s ⊕ g/g_s`, where `g_s` is the ideal
//! generated by the short root vectors.

pub mod chevalley;
pub mod classify;
pub mod fibers;
pub mod field;
pub mod space;
pub mod table;

pub use classify::{fixed_borel_lines, fixed_space_classify, point_signature, Classification, Signature, SignatureClass};
pub use fibers::{fiber_cells, fiber_point_count, fit_polynomial, CellCount};
pub use field::{Elt, Field};
pub use space::{G2Space, G2Vector};
pub use table::{
    b_stabilizer_solve, orbit_table, BStabilizer, OrbitRecord, TABLE_COMPONENT_ORDERS, TABLE_REPS, TABLE_STABILIZER_DIMS,
};
