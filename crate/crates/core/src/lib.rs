pub mod algebraic;
pub mod binary_groups;
pub mod error;
pub mod goursat;
pub mod hypercube;
pub mod linalg;
pub mod orbit_cell;
pub mod quaternion;
pub mod report;
pub mod scalar;
pub mod sphere2;
