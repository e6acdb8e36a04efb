//! Fixed-precision p-adic integer arithmetic for odd p: logarithm,
//! exponential, Teichmüller lift, Hensel lifting of quadratic roots, and the
//! p-adic unit-index computation for real quadratic fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadfield::{fundamental_unit, QuadField, SplitType};

/// A p-adic integer known modulo p^N, residue canonical in [0, p^N).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    residue: BigInt,
}

fn pow_big(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::usage(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible mod {m}");
    e.x.mod_floor(m)
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Result<PadicInt> {
        check_odd_prime(p)?;
        if precision == 0 {
            return Err(Error::usage("precision must be positive".to_string()));
        }
        Ok(PadicInt {
            p,
            precision,
            residue: value.into().mod_floor(&pow_big(p, precision)),
        })
    }

    fn make(p: u64, precision: u32, value: BigInt) -> PadicInt {
        PadicInt {
            p,
            precision,
            residue: value.mod_floor(&pow_big(p, precision)),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    /// ord_p of the residue, capped at the precision. A return value equal
    /// to the precision means "zero at working precision".
    pub fn valuation(&self) -> u32 {
        let pb = BigInt::from(self.p);
        let mut r = self.residue.clone();
        let mut v = 0u32;
        while v < self.precision {
            if r.is_zero() || !(&r % &pb).is_zero() {
                break;
            }
            r /= &pb;
            v += 1;
        }
        if self.residue.is_zero() {
            self.precision
        } else {
            v
        }
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.residue.is_zero()
    }

    /// Truncate to a smaller precision.
    pub fn truncate(&self, precision: u32) -> PadicInt {
        assert!(precision <= self.precision);
        PadicInt::make(self.p, precision, self.residue.clone())
    }

    pub fn add(&self, other: &PadicInt) -> PadicInt {
        self.check_compat(other);
        PadicInt::make(self.p, self.precision, &self.residue + &other.residue)
    }

    pub fn sub(&self, other: &PadicInt) -> PadicInt {
        self.check_compat(other);
        PadicInt::make(self.p, self.precision, &self.residue - &other.residue)
    }

    pub fn mul(&self, other: &PadicInt) -> PadicInt {
        self.check_compat(other);
        PadicInt::make(self.p, self.precision, &self.residue * &other.residue)
    }

    /// Inverse of a unit (valuation zero).
    pub fn inv(&self) -> Result<PadicInt> {
        if self.valuation() > 0 {
            return Err(Error::usage("cannot invert a non-unit".to_string()));
        }
        let m = pow_big(self.p, self.precision);
        Ok(PadicInt::make(self.p, self.precision, mod_inverse(&self.residue, &m)))
    }

    pub fn pow(&self, e: &BigInt) -> PadicInt {
        assert!(!e.is_negative());
        let m = pow_big(self.p, self.precision);
        PadicInt::make(
            self.p,
            self.precision,
            self.residue.modpow(e, &m),
        )
    }

    fn check_compat(&self, other: &PadicInt) {
        assert_eq!(self.p, other.p);
        assert_eq!(self.precision, other.precision);
    }
}

/// Result of the unit-index computation |(∏ U_{K,P})/Ū_K| = p^{v−1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitIndexResult {
    /// ord_p of log of the principal-unit generator ε₀^m
    pub v: u32,
    /// v − 1
    pub index_exponent: u32,
    /// p^{v−1}
    pub index: BigInt,
    /// false when v hit the working precision (not separated from zero)
    pub precision_ok: bool,
}

/// Working precision wide enough to absorb every digit lost to divisions in
/// the log/exp series at target precision N.
fn guarded_precision(n: u32) -> u32 {
    2 * n + 16
}

/// p-adic logarithm of a principal unit, correct mod p^N.
pub fn padic_log(u: &PadicInt) -> Result<PadicInt> {
    let p = u.p;
    let n = u.precision;
    if (u.residue().mod_floor(&BigInt::from(p))) != BigInt::one() {
        return Err(Error::usage(
            "padic_log requires a principal unit (u = 1 mod p)".to_string(),
        ));
    }
    let w = guarded_precision(n);
    let mw = pow_big(p, w);
    let x = (&u.residue - 1i32).mod_floor(&mw);
    let terms = 2 * (n as u64) + 16;
    let mut acc = BigInt::zero();
    let mut xpow = BigInt::one();
    for k in 1..=terms {
        xpow = (&xpow * &x) % &mw;
        // term = ± x^k / k, with the p-part of k divided out exactly
        let mut kk = BigInt::from(k);
        let mut t = xpow.clone();
        let pb = BigInt::from(p);
        while (&kk % &pb).is_zero() {
            kk /= &pb;
            debug_assert!((&t % &pb).is_zero());
            t /= &pb;
        }
        t = (&t * mod_inverse(&kk, &mw)) % &mw;
        if k % 2 == 1 {
            acc += &t;
        } else {
            acc -= &t;
        }
        acc = acc.mod_floor(&mw);
    }
    PadicInt::new(p, n, acc)
}

/// p-adic exponential of an element of pZ_p, correct mod p^N.
pub fn padic_exp(x: &PadicInt) -> Result<PadicInt> {
    let p = x.p;
    let n = x.precision;
    if !x.is_zero_at_precision() && x.valuation() == 0 {
        return Err(Error::usage(
            "padic_exp requires ord_p(x) >= 1".to_string(),
        ));
    }
    let w = guarded_precision(n);
    let mw = pow_big(p, w);
    let xv = x.residue.mod_floor(&mw);
    let terms = 2 * (n as u64) + 16;
    let pb = BigInt::from(p);
    let mut acc = BigInt::one();
    // maintain x^k and the factorial split k! = p^fk · fu
    let mut xpow = BigInt::one();
    let mut f_p = 0u32;
    let mut f_unit = BigInt::one();
    for k in 1..=terms {
        xpow = (&xpow * &xv) % &mw;
        let mut kk = BigInt::from(k);
        while (&kk % &pb).is_zero() {
            kk /= &pb;
            f_p += 1;
        }
        f_unit = (&f_unit * &kk) % &mw;
        let mut t = xpow.clone();
        for _ in 0..f_p {
            debug_assert!((&t % &pb).is_zero());
            t /= &pb;
        }
        t = (&t * mod_inverse(&f_unit, &mw)) % &mw;
        acc = (acc + t).mod_floor(&mw);
    }
    PadicInt::new(p, n, acc)
}

/// Teichmüller lift: the (p−1)-st root of unity congruent to a mod p,
/// by iterating x ↦ x^p until stabilization.
pub fn teichmuller(a: &BigInt, p: u64, precision: u32) -> Result<PadicInt> {
    check_odd_prime(p)?;
    if (a.mod_floor(&BigInt::from(p))).is_zero() {
        return Err(Error::usage(format!("{p} divides {a}: no Teichmüller lift")));
    }
    let m = pow_big(p, precision);
    let pb = BigInt::from(p);
    let mut x = a.mod_floor(&m);
    for _ in 0..(10 * precision as u64 + 10) {
        let next = x.modpow(&pb, &m);
        if next == x {
            return PadicInt::new(p, precision, x);
        }
        x = next;
    }
    Err(Error::Precision {
        precision,
        reason: "Teichmüller iteration did not stabilize".to_string(),
    })
}

/// Newton-lifted simple root of x² − tr·x + nm mod p^N, choosing the branch
/// whose residue mod p is smaller.
pub fn hensel_quadratic_root(tr: &BigInt, nm: &BigInt, p: u64, precision: u32) -> Result<PadicInt> {
    check_odd_prime(p)?;
    let pb = BigInt::from(p);
    let disc = tr * tr - BigInt::from(4) * nm;
    if (disc.mod_floor(&pb)).is_zero() {
        return Err(Error::usage(format!(
            "discriminant of x^2 - {tr} x + {nm} vanishes mod {p}: no simple root"
        )));
    }
    let f = |x: &BigInt, m: &BigInt| -> BigInt { (x * x - tr * x + nm).mod_floor(m) };
    // simple roots mod p by exhaustion; take the smaller residue
    let mut root: Option<BigInt> = None;
    let mut r = BigInt::zero();
    while r < pb {
        if f(&r, &pb).is_zero() {
            root = Some(r);
            break;
        }
        r += 1u32;
    }
    let mut x = root.ok_or_else(|| {
        Error::usage(format!("x^2 - {tr} x + {nm} has no root mod {p}"))
    })?;
    // quadratic Newton iteration
    let mut k = 1u32;
    while k < precision {
        k = (2 * k).min(precision);
        let m = pow_big(p, k);
        let deriv = (BigInt::from(2) * &x - tr).mod_floor(&m);
        x = (&x - f(&x, &m) * mod_inverse(&deriv, &m)).mod_floor(&m);
    }
    debug_assert!(f(&x, &pow_big(p, precision)).is_zero());
    PadicInt::new(p, precision, x)
}

/// Multiplicative order of a mod p (a unit).
fn order_mod_p(a: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    let mut x = a.clone();
    let mut k = 1u64;
    while !x.is_one() {
        x = (&x * &a).mod_floor(&pb);
        k += 1;
        assert!(k <= p, "not a unit mod {p}");
    }
    k
}

fn unit_index_with_branch(
    k: &QuadField,
    p: u64,
    precision: u32,
    conjugate: bool,
) -> Result<UnitIndexResult> {
    check_odd_prime(p)?;
    if k.is_imaginary() {
        return Err(Error::usage(
            "unit index requires a real quadratic field".to_string(),
        ));
    }
    match k.classify_prime(p) {
        SplitType::Split => {}
        other => {
            return Err(Error::usage(format!(
                "p = {p} is {other:?} in K: the unit-index computation requires p split in K"
            )));
        }
    }
    let eps = fundamental_unit(k)?;
    let w = guarded_precision(precision);
    let mw = pow_big(p, w);
    // embed ε₀ = (x + y√D)/2 into Z_p via a Hensel square root of D
    let sqrt_d = hensel_quadratic_root(&BigInt::zero(), &-k.discriminant(), p, w)?;
    let root = if conjugate {
        (-sqrt_d.residue()).mod_floor(&mw)
    } else {
        sqrt_d.residue().clone()
    };
    let half = mod_inverse(&BigInt::from(2), &mw);
    let emb = ((&eps.x + &eps.y * root) * half).mod_floor(&mw);
    // pass to the principal-unit part: raise to the order of the residue
    let m = order_mod_p(&emb, p);
    let u = PadicInt::new(p, precision, emb.modpow(&BigInt::from(m), &mw))?;
    let lg = padic_log(&u)?;
    let v = lg.valuation();
    debug_assert!(v >= 1);
    Ok(UnitIndexResult {
        v,
        index_exponent: v - 1,
        index: pow_big(p, v - 1),
        precision_ok: v < precision,
    })
}

/// The unit-index factor p^{v−1} with v = ord_p(log ε₀^m), for p split in a
/// real quadratic field.
pub fn unit_index(k: &QuadField, p: u64, precision: u32) -> Result<UnitIndexResult> {
    unit_index_with_branch(k, p, precision, false)
}
