use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use super::QuadField;

/// Fundamental unit ε₀ = (x + y√D)/2 of a real quadratic field, the least
/// unit > 1. Solves x² − Dy² = ±4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalUnit {
    pub x: BigInt,
    pub y: BigInt,
    /// norm of ε₀, always +1 or -1
    pub norm: i32,
    d: BigInt,
}

impl FundamentalUnit {
    /// Coordinates (u, v) of ε₀ = u + vω in the integral basis (1, ω).
    pub fn omega_coords(&self) -> (BigInt, BigInt) {
        let (t, _) = omega_params(&self.d);
        (((&self.x - &t * &self.y) / 2i32), self.y.clone())
    }

    /// Floating approximation of ε₀ under the embedding √D > 0.
    pub fn approx(&self) -> f64 {
        let x = self.x.to_f64().unwrap();
        let y = self.y.to_f64().unwrap();
        let d = self.d.to_f64().unwrap();
        (x + y * d.sqrt()) / 2.0
    }
}

impl std::fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.d.is_even() {
            // x is always even here, so ε₀ = x/2 + y√(D/4)
            write!(f, "{} + {}*sqrt({})", &self.x / 2i32, self.y, &self.d / 4i32)
        } else {
            write!(f, "({} + {}*sqrt({}))/2", self.x, self.y, self.d)
        }
    }
}

/// (t, n) with ω² = tω + n for the ring generator ω of discriminant d.
pub(crate) fn omega_params(d: &BigInt) -> (BigInt, BigInt) {
    if d.is_even() {
        (BigInt::zero(), d / 4i32)
    } else {
        (BigInt::one(), (d - 1i32) / 4i32)
    }
}

/// Fundamental unit of a real quadratic field by the continued-fraction
/// expansion of ω: the first convergent p/q with |N(p − qω̄)| = 1 yields ε₀.
pub fn fundamental_unit(k: &QuadField) -> Result<FundamentalUnit> {
    if k.is_imaginary() {
        return Err(Error::usage(
            "imaginary quadratic field: unit group is finite torsion".to_string(),
        ));
    }
    let d = k.discriminant().clone();
    // expand (p0 + sqrt(r))/q0: ω = (1+√D)/2 for odd D, √(D/4) for even D
    let (r, mut p, mut q) = if d.is_odd() {
        (d.clone(), BigInt::one(), BigInt::from(2))
    } else {
        (&d / 4i32, BigInt::zero(), BigInt::one())
    };
    let s = r.sqrt();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one()); // numerators p_{-2}, p_{-1}
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero()); // denominators
    for _ in 0..100_000 {
        let a = (&p + &s).div_floor(&q);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        // candidate unit (x + y√D)/2 from convergent h2/k2
        let (x, y) = if d.is_odd() {
            (BigInt::from(2) * &h2 - &k2, k2.clone())
        } else {
            (BigInt::from(2) * &h2, k2.clone())
        };
        let n4 = &x * &x - &d * &y * &y;
        if n4.abs() == BigInt::from(4) {
            let norm = if n4.is_positive() { 1 } else { -1 };
            return Ok(FundamentalUnit { x, y, norm, d });
        }
        p = &a * &q - &p;
        q = (&r - &p * &p) / &q;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    Err(Error::Resource(format!(
        "continued fraction of D={d} did not close within the step budget"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: i64) -> FundamentalUnit {
        fundamental_unit(&QuadField::new(d).unwrap()).unwrap()
    }

    #[test]
    fn golden_ratio() {
        let u = unit(5);
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (1.into(), 1.into(), -1));
        assert_eq!(u.omega_coords(), (0.into(), 1.into()));
    }

    #[test]
    fn small_fields() {
        let u = unit(13);
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (3.into(), 1.into(), -1));
        let u = unit(17);
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (8.into(), 2.into(), -1));
        let u = unit(12);
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (4.into(), 1.into(), 1));
        assert_eq!(u.to_string(), "2 + 1*sqrt(3)");
    }

    #[test]
    fn minimality_by_exhaustion() {
        // no smaller solution of x² − Dy² = ±4 below the returned unit
        for d in [5i64, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 44, 53, 61] {
            let u = unit(d);
            let val = u.approx();
            assert!(u.norm == 1 || u.norm == -1);
            let ymax = u.y.to_i64().unwrap();
            for y in 1..=ymax {
                for x in 1..=(val * 2.0).ceil() as i64 {
                    if (x * x - d * y * y).abs() == 4 {
                        let cand = (x as f64 + y as f64 * (d as f64).sqrt()) / 2.0;
                        assert!(cand >= val - 1e-9, "D={d}: smaller unit ({x},{y})");
                    }
                }
            }
        }
    }

    #[test]
    fn imaginary_rejected() {
        assert!(fundamental_unit(&QuadField::new(-23).unwrap()).is_err());
    }
}
