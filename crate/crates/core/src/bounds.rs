//! Assembly of the headline bounds: the dihedral bound M = p^{ord_p(M′)}
//! with its full factorization, the invariant-assembly mode for general
//! totally real base fields, the exceptional bound a·b, and the projective
//! trace table with its root-congruence criterion.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classfield::{character_target, finiteness_test, FinitenessResult};
use crate::error::{Error, Result};
use crate::padic::is_prime;
use crate::quadfield::{ClassGroup, QuadField};

/// How a bound report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Exact,
    FromInvariants,
}

/// The dihedral bound with its audited factorization: M′ is the product of
/// the listed factors and M = p^{ord_p(M′)}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub factors: Vec<(String, BigInt)>,
    pub m_prime: BigInt,
    pub m: BigInt,
    pub mode: Mode,
}

fn p_part(n: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut out = BigInt::one();
    let mut n = n.clone();
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        out *= &pb;
    }
    out
}

fn assemble(factors: Vec<(String, BigInt)>, p: u64, mode: Mode) -> BoundReport {
    let m_prime = factors
        .iter()
        .fold(BigInt::one(), |acc, (_, f)| acc * f);
    let m = p_part(&m_prime, p);
    BoundReport {
        factors,
        m_prime,
        m,
        mode,
    }
}

/// The dihedral bound for F = Q: M′ = h · p^{v−1} · ∏(q−1) · ∏(q+1) over
/// the tame primes dividing n0, and M = p^{ord_p(M′)}.
pub fn dihedral_bound_exact(
    k: &QuadField,
    p: u64,
    n0: u64,
    precision: u32,
) -> Result<BoundReport> {
    match finiteness_test(k, p, precision)? {
        FinitenessResult::Finite { .. } => {}
        FinitenessResult::Infinite { reason } => {
            return Err(Error::usage(format!(
                "the character group is infinite ({reason}); no finite bound exists"
            )));
        }
        FinitenessResult::Undetermined => {
            return Err(Error::Precision {
                precision,
                reason: "unit index not separated from zero".to_string(),
            });
        }
    }
    let ct = character_target(k, p, n0, precision)?;
    let h = ClassGroup::new(k).h().clone();
    let mut factors = vec![
        ("h".to_string(), h),
        ("unit index".to_string(), ct.unit_part.clone()),
    ];
    for (l, q) in &ct.split_parts {
        factors.push((format!("l={l} split (q-1)"), BigInt::from(*q)));
    }
    for (l, q) in &ct.inert_parts {
        factors.push((format!("l={l} inert (q+1)"), BigInt::from(*q)));
    }
    Ok(assemble(factors, p, Mode::Exact))
}

/// Numerical invariants of a general totally real base field, supplied by
/// the user rather than computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralFieldInvariants {
    /// degree of F over Q
    pub d: u32,
    /// number of primes of F above p
    pub t: u32,
    pub class_number_k: BigInt,
    /// ord_p of the unit index
    pub unit_index_p_exponent: u32,
    /// residue sizes q_l of the split tame primes
    pub split_tame: Vec<u64>,
    /// residue sizes q_l of the inert tame primes
    pub inert_tame: Vec<u64>,
    /// r with p^r exactly dividing |Cl_F|
    pub hf_p_exponent: u32,
}

/// The dihedral bound assembled arithmetically from user-supplied
/// invariants.
pub fn dihedral_bound_from_invariants(
    inv: &GeneralFieldInvariants,
    p: u64,
) -> Result<BoundReport> {
    if p < 3 || !is_prime(p) {
        return Err(Error::usage(format!("p = {p} must be an odd prime")));
    }
    if inv.t > inv.d {
        return Err(Error::usage(format!(
            "t = {} primes above p cannot exceed the degree d = {}",
            inv.t, inv.d
        )));
    }
    if inv.class_number_k < BigInt::one() {
        return Err(Error::usage("class number must be positive".to_string()));
    }
    for q in inv.split_tame.iter().chain(&inv.inert_tame) {
        if *q < 2 || q % p == 0 {
            return Err(Error::usage(format!(
                "tame residue size {q} must be a prime power coprime to p = {p}"
            )));
        }
    }
    let mut factors = vec![
        (
            "h (user-supplied)".to_string(),
            inv.class_number_k.clone(),
        ),
        (
            "unit index (user-supplied)".to_string(),
            BigInt::from(p).pow(inv.unit_index_p_exponent),
        ),
    ];
    for q in &inv.split_tame {
        factors.push((format!("q={q} split, q-1 (user-supplied)"), BigInt::from(q - 1)));
    }
    for q in &inv.inert_tame {
        factors.push((format!("q={q} inert, q+1 (user-supplied)"), BigInt::from(q + 1)));
    }
    Ok(assemble(factors, p, Mode::FromInvariants))
}

/// Projective image type of an exceptional family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExceptionalType {
    A4,
    S4,
    A5,
}

/// The exceptional bound a·b on classical weight-one specializations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalBound {
    pub a: u32,
    pub b: BigInt,
    pub bound: BigInt,
    /// r with p^r exactly dividing hF
    pub r: u32,
}

/// a = 2 exactly for (p = 5, A5), else 1; b = p^r with r = ord_p(hF),
/// times 2^t when p ∈ {3, 5}.
pub fn exceptional_bound(
    p: u64,
    exc_type: ExceptionalType,
    hf: &BigInt,
    t: u32,
) -> Result<ExceptionalBound> {
    if p < 3 || !is_prime(p) {
        return Err(Error::usage(format!("p = {p} must be an odd prime")));
    }
    if t < 1 || hf < &BigInt::one() {
        return Err(Error::usage(
            "need t >= 1 primes above p and hF >= 1".to_string(),
        ));
    }
    let a = if p == 5 && exc_type == ExceptionalType::A5 {
        2
    } else {
        1
    };
    let pb = BigInt::from(p);
    let mut r = 0u32;
    let mut n = hf.clone();
    while (&n % &pb).is_zero() {
        n /= &pb;
        r += 1;
    }
    let mut b = pb.pow(r);
    if p == 3 || p == 5 {
        b *= BigInt::from(2u64).pow(t);
    }
    let bound = BigInt::from(a) * &b;
    Ok(ExceptionalBound { a, b, bound, r })
}

/// Projective trace of an image element, by the order of the element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ProjectiveTrace {
    /// a rational integer value
    Integer(i64),
    /// either root of the monic quadratic X² + c1·X + c0
    RootOfQuadratic { c1: i64, c0: i64 },
}

impl std::fmt::Display for ProjectiveTrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectiveTrace::Integer(v) => write!(f, "{v}"),
            ProjectiveTrace::RootOfQuadratic { c1, c0 } => {
                write!(f, "root of X^2 + ({c1})X + ({c0})")
            }
        }
    }
}

/// Trace-squared-over-determinant table value for an element of the given
/// order in the projective image (orders up to 5 occur).
pub fn projective_trace(order: u32) -> Result<ProjectiveTrace> {
    match order {
        1 => Ok(ProjectiveTrace::Integer(4)),
        2 => Ok(ProjectiveTrace::Integer(0)),
        3 => Ok(ProjectiveTrace::Integer(1)),
        4 => Ok(ProjectiveTrace::Integer(2)),
        5 => Ok(ProjectiveTrace::RootOfQuadratic { c1: -3, c0: 1 }),
        _ => Err(Error::usage(format!(
            "exceptional projective images have element orders 1..5, got {order}"
        ))),
    }
}

/// Are the two roots of X² − 3X + 1 congruent mod p? True exactly when p
/// divides the discriminant 5.
pub fn a5_root_congruence(p: u64) -> Result<bool> {
    if p < 3 || !is_prime(p) {
        return Err(Error::usage(format!("p = {p} must be an odd prime")));
    }
    Ok(5 % p == 0)
}
