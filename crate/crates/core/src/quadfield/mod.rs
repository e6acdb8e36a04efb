//! Quadratic fields K = Q(sqrt(D)) over Q: prime splitting, class group and
//! narrow class group via binary quadratic forms, fundamental unit via
//! continued fractions, ideal enumeration by norm.

mod classgroup;
mod forms;
mod ideals;
mod unit;

pub use classgroup::ClassGroup;
pub use forms::QuadForm;
pub use ideals::{elt_norm, elt_product, elt_signs, ideals_of_norm, Ideal, IdealOfNorm};
pub use unit::{fundamental_unit, FundamentalUnit};
pub(crate) use unit::omega_params;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::kronecker;
use crate::error::{Error, Result};

/// A quadratic field presented by its fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadField {
    d: BigInt,
}

/// Splitting behavior of a rational prime in K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

fn squarefree(n: &BigInt) -> bool {
    let mut n = n.abs();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            n /= &d;
            if (&n % &d).is_zero() {
                return false;
            }
        }
        d += 1u32;
    }
    true
}

/// Is d a fundamental discriminant (of the maximal order of a quadratic
/// field)?
pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    if d.is_zero() || *d == BigInt::from(1) {
        return false;
    }
    let four = BigInt::from(4);
    let r = d.mod_floor(&four);
    if r == BigInt::from(1) {
        squarefree(d)
    } else if r.is_zero() {
        let m = d / &four;
        let rm = m.mod_floor(&four);
        (rm == BigInt::from(2) || rm == BigInt::from(3)) && squarefree(&m)
    } else {
        false
    }
}

impl QuadField {
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if !is_fundamental_discriminant(&d) {
            return Err(Error::usage(format!(
                "{d} is not a fundamental discriminant"
            )));
        }
        Ok(QuadField { d })
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn disc_i64(&self) -> i64 {
        self.d.to_i64().expect("desk-scale discriminant")
    }

    pub fn is_real(&self) -> bool {
        self.d.is_positive()
    }

    pub fn is_imaginary(&self) -> bool {
        self.d.is_negative()
    }

    /// Splitting of the rational prime l in K, by the Kronecker symbol (D/l).
    pub fn classify_prime(&self, l: u64) -> SplitType {
        match kronecker(&self.d, &BigInt::from(l)) {
            1 => SplitType::Split,
            -1 => SplitType::Inert,
            _ => SplitType::Ramified,
        }
    }

    /// The form (l, b, c) of the prime ideal P above a split or ramified l.
    ///
    /// For split l the two primes correspond to the two square roots of D
    /// mod 4l; P is the one with the smaller b in [0, 2l), P^sigma the other
    /// (a convention, surfaced in output).
    pub fn prime_form(&self, l: u64) -> Result<QuadForm> {
        let split = self.classify_prime(l);
        if split == SplitType::Inert {
            return Err(Error::usage(format!("{l} is inert, no degree-one prime")));
        }
        let lb = BigInt::from(l);
        let two_l = BigInt::from(2 * l);
        let four_l = BigInt::from(4 * l);
        let mut b = BigInt::zero();
        while b < two_l {
            if (&b * &b - &self.d).mod_floor(&four_l).is_zero() {
                let c = (&b * &b - &self.d) / &four_l;
                return Ok(QuadForm::new(lb, b, c));
            }
            b += 1u32;
        }
        unreachable!("split/ramified prime must divide a represented value")
    }

    /// Form of the conjugate prime P^sigma above a split l.
    pub fn conjugate_prime_form(&self, l: u64) -> Result<QuadForm> {
        if self.classify_prime(l) != SplitType::Split {
            return Err(Error::usage(format!("{l} does not split")));
        }
        let f = self.prime_form(l)?;
        Ok(QuadForm::new(f.a.clone(), -f.b.clone(), f.c.clone()))
    }

    /// The principal form of discriminant D.
    pub fn principal_form(&self) -> QuadForm {
        if self.d.is_even() {
            QuadForm::new(BigInt::from(1), BigInt::zero(), -(&self.d / 4i32))
        } else {
            QuadForm::new(
                BigInt::from(1),
                BigInt::from(1),
                (BigInt::from(1) - &self.d) / 4i32,
            )
        }
    }
}

/// Splitting classification of a rational prime.
pub fn classify_prime(field: &QuadField, l: u64) -> SplitType {
    field.classify_prime(l)
}
