//! Finitely generated abelian groups: Smith normal form over the integers,
//! cokernels of integer matrices reduced modulo `n`, and preimage solving.

mod cokernel;
mod matrix;
mod snf;

pub use cokernel::{cokernel_mod, lift_solution, FiniteAbelianPresentation};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
