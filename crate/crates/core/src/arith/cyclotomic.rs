use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Element of Z[zeta_n] in the power basis 1, zeta, ..., zeta^(phi(n)-1),
/// with arithmetic modulo the n-th cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct CyclotomicInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut phi = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            phi -= phi / d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by prod of Phi_d over proper divisors d of n
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

// exact division of polynomials with monic divisor
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, dcoef) in den.iter().enumerate() {
            rem[i + j] -= &c * dcoef;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

impl CyclotomicInt {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        CyclotomicInt {
            order,
            coeffs: vec![BigInt::zero(); euler_phi(order) as usize],
        }
    }

    pub fn from_int(order: u32, v: BigInt) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = v;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, BigInt::one())
    }

    /// zeta_n^k.
    pub fn root_pow(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        Self::from_poly(order, poly)
    }

    pub fn root(order: u32) -> Self {
        Self::root_pow(order, 1)
    }

    fn from_poly(order: u32, poly: Vec<BigInt>) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        let mut rem = poly;
        if rem.len() < deg {
            rem.resize(deg, BigInt::zero());
        }
        // reduce modulo the monic cyclotomic polynomial
        for i in (deg..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            rem[i] = BigInt::zero();
            for (j, pc) in phi.iter().enumerate().take(deg) {
                rem[i - deg + j] -= &c * pc;
            }
        }
        rem.truncate(deg);
        CyclotomicInt {
            order,
            coeffs: rem,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::usage(format!(
                "cyclotomic order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CyclotomicInt {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CyclotomicInt {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut prod = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(Self::from_poly(self.order, prod))
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Reduce every coefficient modulo m (canonical residues).
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        use num_integer::Integer;
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mod_floor(m)).collect(),
        }
    }
}

/// Product of two cyclotomic integers of the same order.
pub fn cyclotomic_mul(a: &CyclotomicInt, b: &CyclotomicInt) -> Result<CyclotomicInt> {
    a.mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i: fn(&[i64]) -> Vec<BigInt> = |v| v.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(cyclotomic_poly(1), to_i(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), to_i(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), to_i(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), to_i(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), to_i(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(9), to_i(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn frozen_examples_order_3() {
        let z = CyclotomicInt::root(3);
        // zeta^2 = -1 - zeta
        let z2 = z.mul(&z).unwrap();
        assert_eq!(
            z2.coeffs(),
            &[BigInt::from(-1), BigInt::from(-1)]
        );
        // zeta * zeta^2 = 1
        assert_eq!(z.mul(&z2).unwrap(), CyclotomicInt::one(3));
        // (1 + zeta)(1 + zeta^2) = 1 + zeta + zeta^2 + 1 = 1
        let a = CyclotomicInt::one(3).add(&z).unwrap();
        let b = CyclotomicInt::one(3).add(&z2).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CyclotomicInt::one(3));
    }

    #[test]
    fn basis_root_has_exact_order() {
        for n in [2u32, 3, 4, 5, 6, 8, 9, 12] {
            let z = CyclotomicInt::root(n);
            assert_eq!(z.pow(n as u64).unwrap(), CyclotomicInt::one(n));
            for d in 1..n {
                if n % d == 0 {
                    assert_ne!(z.pow(d as u64).unwrap(), CyclotomicInt::one(n), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = CyclotomicInt::root(3);
        let b = CyclotomicInt::root(4);
        assert!(a.mul(&b).is_err());
    }
}
