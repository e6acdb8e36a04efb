//! Exact integer, modular, finite-field and finite-abelian-group arithmetic
//! used by every other module.

mod abelian;
mod cyclotomic;
mod ff;
mod kronecker;
mod snf;
mod structure;

pub use abelian::{FiniteAbelianGroup, GroupElement};
pub use cyclotomic::{cyclotomic_mul, CyclotomicInt};
pub use ff::{FFElem, FiniteField};
pub use kronecker::{kronecker, kronecker_i64};
pub use snf::{smith_normal_form, SmithPresentation};
pub use structure::AbstractGroup;
