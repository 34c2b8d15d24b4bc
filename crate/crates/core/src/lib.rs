//! Exact finite-field machinery for constructing quantum MDS codes from
//! (consta)cyclic MDS codes via their puncture codes.

pub mod gf;
pub mod linalg;
pub mod ccodes;
pub mod pcode;
pub mod qstab;
