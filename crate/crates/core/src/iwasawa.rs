//! Truncated one-variable Iwasawa-algebra series mod (p^N, X^M): μ/λ
//! invariants by coefficient valuations, specialization at arithmetic and
//! weight-one points, and the λ-style root-count bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::CyclotomicInt;
use crate::error::{Error, Result};
use crate::padic::is_prime;

/// Largest cyclotomic order accepted for specialization targets.
const MAX_CYCLOTOMIC_ORDER: u32 = 2048;

/// T(X) = Σ a_i X^i mod (p^N, X^M), coefficients canonical mod p^N,
/// lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IwasawaSeries {
    p: u64,
    precision: u32,
    coeffs: Vec<BigInt>,
}

/// An evaluation point X = ε(γ)u^{k−1} − 1 with u = 1 + p and ε a wild
/// character of p-power order m (ε(γ) = ζ_m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializationPoint {
    pub weight: u32,
    pub wild_order: u32,
}

impl SpecializationPoint {
    pub fn new(p: u64, weight: u32, wild_order: u32) -> Result<Self> {
        if weight < 1 {
            return Err(Error::usage("weight must be at least 1".to_string()));
        }
        let mut m = wild_order;
        if m == 0 {
            return Err(Error::usage("wild character order must be positive".to_string()));
        }
        while m > 1 {
            if m % (p as u32) != 0 {
                return Err(Error::usage(format!(
                    "wild character order {wild_order} is not a power of p = {p}"
                )));
            }
            m /= p as u32;
        }
        if wild_order > MAX_CYCLOTOMIC_ORDER {
            return Err(Error::usage(format!(
                "cyclotomic order {wild_order} exceeds the supported bound {MAX_CYCLOTOMIC_ORDER}"
            )));
        }
        Ok(SpecializationPoint { weight, wild_order })
    }
}

impl IwasawaSeries {
    pub fn new(p: u64, precision: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::usage(format!("p = {p} must be an odd prime")));
        }
        if precision == 0 || coeffs.is_empty() {
            return Err(Error::usage(
                "need positive precision and at least one coefficient".to_string(),
            ));
        }
        let m = BigInt::from(p).pow(precision);
        Ok(IwasawaSeries {
            p,
            precision,
            coeffs: coeffs.into_iter().map(|c| c.mod_floor(&m)).collect(),
        })
    }

    /// Parse the plain-text series format: a header line `p N M` followed by
    /// M whitespace-separated integer coefficients, lowest degree first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut toks = text.split_whitespace();
        let mut next = |what: &str| -> Result<BigInt> {
            toks.next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
        };
        let p = u64::try_from(next("p")?).map_err(|_| Error::Parse("bad p".to_string()))?;
        let n = u32::try_from(next("N")?).map_err(|_| Error::Parse("bad N".to_string()))?;
        let m = usize::try_from(next("M")?).map_err(|_| Error::Parse("bad M".to_string()))?;
        let mut coeffs = Vec::with_capacity(m);
        for i in 0..m {
            coeffs.push(next(&format!("coefficient {i}"))?);
        }
        if toks.next().is_some() {
            return Err(Error::Parse("trailing tokens after coefficients".to_string()));
        }
        IwasawaSeries::new(p, n, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Product of two series over the same (p, N); the truncation degree of
    /// the result is the sum of the factors' degrees minus one.
    pub fn mul(&self, other: &IwasawaSeries) -> Result<IwasawaSeries> {
        if self.p != other.p || self.precision != other.precision {
            return Err(Error::usage("series live over different rings".to_string()));
        }
        let mut prod = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        IwasawaSeries::new(self.p, self.precision, prod)
    }

    fn coeff_valuation(&self, c: &BigInt) -> u32 {
        let pb = BigInt::from(self.p);
        let mut r = c.clone();
        let mut v = 0;
        while v < self.precision && !r.is_zero() && (&r % &pb).is_zero() {
            r /= &pb;
            v += 1;
        }
        if c.is_zero() {
            self.precision
        } else {
            v
        }
    }
}

/// μ = min_i ord_p(a_i) and λ = least index attaining it, by Weierstrass
/// preparation of the truncated series.
pub fn weierstrass_invariants(t: &IwasawaSeries) -> Result<(u32, u32)> {
    if t.coeffs.len() < 2 {
        return Err(Error::TruncationTooShort(
            "invariant extraction needs truncation degree at least 2".to_string(),
        ));
    }
    let vals: Vec<u32> = t.coeffs.iter().map(|c| t.coeff_valuation(c)).collect();
    let mu = *vals.iter().min().unwrap();
    if mu >= t.precision {
        return Err(Error::Indeterminate);
    }
    let lambda = vals.iter().position(|&v| v == mu).unwrap() as u32;
    Ok((mu, lambda))
}

/// Evaluate T at X = ζ_m·u^{k−1} − 1 (u = 1 + p), in Z[ζ_m] with
/// coefficients reduced mod p^N.
pub fn specialize(t: &IwasawaSeries, point: &SpecializationPoint) -> Result<CyclotomicInt> {
    let m = point.wild_order;
    if m > MAX_CYCLOTOMIC_ORDER {
        return Err(Error::usage(format!(
            "cyclotomic order {m} exceeds the supported bound {MAX_CYCLOTOMIC_ORDER}"
        )));
    }
    let modulus = BigInt::from(t.p).pow(t.precision);
    let u_pow = BigInt::from(t.p + 1).modpow(&BigInt::from(point.weight - 1), &modulus);
    // x = ζ_m · u^{k−1} − 1
    let x = CyclotomicInt::root(m)
        .scalar_mul(&u_pow)
        .sub(&CyclotomicInt::one(m))?;
    // Horner evaluation
    let mut acc = CyclotomicInt::zero(m);
    for c in t.coeffs.iter().rev() {
        acc = acc.mul(&x)?.add(&CyclotomicInt::from_int(m, c.clone()))?;
        acc = acc.reduce_mod(&modulus);
    }
    Ok(acc)
}

/// Upper bound (= λ) on the number of weight-one points ζ_{p^j} − 1 at which
/// T can vanish: all such points have positive valuation, so zeros among
/// them are zeros of the distinguished polynomial, of degree λ.
pub fn weight_one_root_bound(t: &IwasawaSeries) -> Result<u32> {
    let (_, lambda) = weierstrass_invariants(t)?;
    Ok(lambda)
}
