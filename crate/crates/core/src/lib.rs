//! Exact arithmetic underlying bounds on the number of classical weight-one
//! specializations of an ordinary family: class groups and units of quadratic
//! fields, p-adic unit indices, ray class groups, the dihedral bound M, the
//! exceptional bound a*b, and Hecke coefficients of dihedral weight-one forms.

pub mod arith;
pub mod bounds;
pub mod classfield;
pub mod dihedral;
pub mod error;
pub mod iwasawa;
pub mod oracles;
pub mod padic;
pub mod quadfield;

pub use error::Error;

/// Default p-adic working precision. Desk-scale examples separate from zero
/// comfortably at this precision; override per call or via the CLI.
pub const DEFAULT_PRECISION: u32 = 10;
