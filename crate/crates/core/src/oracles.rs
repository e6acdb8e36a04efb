//! Brute-force cross-checks for the main computations. Each oracle uses a
//! different algorithm from the main path (literal enumeration, machine
//! integers, no ideal lattices or p-adic logarithms) so that agreement is
//! meaningful evidence. Exposed in the library so the CLI can run both
//! paths under --verify.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::{smith_normal_form, FiniteAbelianGroup};
use crate::classfield::Modulus;
use crate::error::{Error, Result};
use crate::padic::is_prime;
use crate::quadfield::QuadField;

/// Ceilings that keep the brute-force oracles at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// largest ideal norm enumerated
    pub max_norm: u64,
    /// largest |D| accepted
    pub max_disc: u64,
    /// largest p-adic precision accepted
    pub max_precision: u32,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_norm: 200,
            max_disc: 50,
            max_precision: 12,
        }
    }
}

impl OracleBudget {
    pub fn new(max_norm: u64, max_disc: u64, max_precision: u32) -> Result<Self> {
        if max_norm == 0 || max_disc == 0 || max_precision == 0 {
            return Err(Error::usage("oracle budget fields must be positive".to_string()));
        }
        Ok(OracleBudget {
            max_norm,
            max_disc,
            max_precision,
        })
    }
}

/// (t, n) with ω² = tω + n, in machine integers.
fn omega_tn(d: i64) -> (i64, i64) {
    if d.rem_euclid(2) == 0 {
        (0, d / 4)
    } else {
        (1, (d - 1) / 4)
    }
}

/// N(x + yω) as an i128.
fn norm_i128(d: i64, x: i128, y: i128) -> i128 {
    let (t, n) = omega_tn(d);
    x * x + (t as i128) * x * y - (n as i128) * y * y
}

fn powmod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    acc as u64
}

fn inv_mod(a: i128, m: i128) -> Option<i128> {
    // extended euclid
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 {
        Some(s0.rem_euclid(m))
    } else {
        None
    }
}

/// Smallest root of x² ≡ tx + n mod l, if any.
fn root_mod(d: i64, l: u64) -> Option<u64> {
    let (t, n) = omega_tn(d);
    let li = l as i128;
    (0..l).find(|&x| {
        let x = x as i128;
        (x * x - (t as i128) * x - (n as i128)).rem_euclid(li) == 0
    })
}

/// Lift a simple root of x² − tx − n from mod l to mod l^e (Newton).
fn lift_root(d: i64, l: u64, e: u32, r0: u64) -> i128 {
    let (t, n) = omega_tn(d);
    let (t, n) = (t as i128, n as i128);
    let mut modulus = l as i128;
    let target = (l as i128).pow(e);
    let mut r = r0 as i128;
    while modulus < target {
        modulus = (modulus * modulus).min(target);
        let f = (r * r - t * r - n).rem_euclid(modulus);
        let fp = (2 * r - t).rem_euclid(modulus);
        let inv = inv_mod(fp, modulus).expect("simple root stays simple");
        r = (r - f * inv).rem_euclid(modulus);
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PrimeKind {
    SplitPlus,
    SplitMinus,
    Inert,
    Ramified,
}

/// Ray class group by literal enumeration: prime ideals of bounded norm as
/// generators, principal ray ideals (α), α ≡ 1 mod m totally positive, as
/// relations, Smith normal form at the end.
pub fn oracle_ray_class(
    k: &QuadField,
    m: &Modulus,
    budget: &OracleBudget,
) -> Result<FiniteAbelianGroup> {
    let d = k.disc_i64();
    if d.unsigned_abs() > budget.max_disc {
        return Err(Error::Resource(format!(
            "|D| = {} exceeds the oracle budget {}",
            d.unsigned_abs(),
            budget.max_disc
        )));
    }
    let m_int = m
        .norm()
        .to_u64()
        .filter(|n| *n <= budget.max_norm)
        .ok_or_else(|| Error::Resource("modulus norm exceeds the oracle budget".to_string()))?;
    let _ = m_int;
    let n0 = m.n0;
    let pr = (m.p as i128).pow(m.r);
    // the ω-image in Z/p^r at the chosen branch (smallest root first)
    let w_pr = if m.r > 0 {
        let r0 = root_mod(d, m.p).ok_or_else(|| {
            Error::usage(format!("p = {} has no degree-one prime", m.p))
        })?;
        lift_root(d, m.p, m.r, r0)
    } else {
        0
    };

    // generator primes: small primes coprime to the modulus. The cap is well
    // below the element-norm window so that the enumeration below supplies
    // enough relations among the generators; factorizations that leave the
    // generator set are simply skipped.
    let gen_bound = budget.max_norm.min(30);
    let mut gens: Vec<(u64, PrimeKind)> = Vec::new();
    let mut l = 2u64;
    while l <= gen_bound {
        if is_prime(l) && n0 % l != 0 && (m.r == 0 || m.p != l) {
            match crate::arith::kronecker_i64(d, l as i64) {
                1 => {
                    gens.push((l, PrimeKind::SplitPlus));
                    gens.push((l, PrimeKind::SplitMinus));
                }
                -1 => {
                    if l * l <= budget.max_norm {
                        gens.push((l, PrimeKind::Inert));
                    }
                }
                _ => gens.push((l, PrimeKind::Ramified)),
            }
        }
        l += 1;
    }
    let ngens = gens.len();

    // relation elements live in a much larger norm window than the generator
    // primes: a single relation of large ideal norm (a product of many small
    // primes) is often the shortest route to pinning down a class order
    let elt_norm = 40 * budget.max_norm as i128;

    // coordinate box: imaginary norms grow in both coordinates; real fields
    // need room for a fundamental-unit multiple of each small generator
    let (xb, yb) = if d < 0 {
        let yb = ((4 * elt_norm as i64 / -d) as f64).sqrt() as i128 + 2;
        let xb = (elt_norm as f64).sqrt() as i128 + (d.abs() as f64).sqrt() as i128 * yb + 4;
        (xb, yb)
    } else {
        // smallest unit > 1 by direct search on x² − Dy² = ±4
        let mut eps = 2.0f64;
        'outer: for y in 1i128..10_000 {
            let x2 = d as i128 * y * y;
            for pm in [-4i128, 4] {
                let t = x2 + pm;
                if t >= 0 {
                    let x = (t as f64).sqrt().round() as i128;
                    if x * x == t {
                        eps = (x as f64 + y as f64 * (d as f64).sqrt()) / 2.0;
                        break 'outer;
                    }
                }
            }
        }
        let b = ((elt_norm as f64).sqrt() * eps * 2.0) as i128 + 8;
        (b, b)
    };

    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    let mnorm = elt_norm;
    let sqrt_d = if d > 0 { (d as f64).sqrt() } else { 0.0 };
    let (t, _) = omega_tn(d);
    let mut y = -yb;
    while y <= yb {
        if y.rem_euclid(n0 as i128) != 0 {
            y += 1;
            continue;
        }
        let mut x = -xb + (1 - (-xb)).rem_euclid(n0 as i128);
        while x <= xb {
            // α = x + yω ≡ 1 mod n0 and mod Q^r, totally positive, norm in
            // budget, coprime to the modulus
            let nm = norm_i128(d, x, y);
            if nm == 0 || nm.abs() > mnorm {
                x += n0 as i128;
                continue;
            }
            if m.r > 0 && (x + y * w_pr - 1).rem_euclid(pr) != 0 {
                x += n0 as i128;
                continue;
            }
            if m.r > 0 && nm.rem_euclid(m.p as i128) == 0 {
                x += n0 as i128;
                continue;
            }
            if n0 > 1 && num_integer::gcd(nm.unsigned_abs() % n0 as u128, n0 as u128) != 1 {
                x += n0 as i128;
                continue;
            }
            if d > 0 {
                let a = 2 * x + t as i128 * y;
                let s1 = a as f64 + y as f64 * sqrt_d;
                let s2 = a as f64 - y as f64 * sqrt_d;
                if s1 <= 0.0 || s2 <= 0.0 {
                    x += n0 as i128;
                    continue;
                }
            }
            if let Some(rel) = factor_element(d, x, y, nm, &gens) {
                relations.push(rel);
            }
            x += n0 as i128;
        }
        y += 1;
    }
    Ok(smith_normal_form(&relations, ngens).group().clone())
}

/// Valuation vector of the principal ideal (x + yω) over the generator
/// primes, or None if a prime factor falls outside the generator set.
fn factor_element(
    d: i64,
    x: i128,
    y: i128,
    nm: i128,
    gens: &[(u64, PrimeKind)],
) -> Option<Vec<BigInt>> {
    let mut rel = vec![BigInt::ZERO; gens.len()];
    let mut rest = nm.unsigned_abs();
    let mut l = 2u128;
    while rest > 1 {
        if l * l > rest {
            l = rest;
        }
        if rest % l != 0 {
            l += 1;
            continue;
        }
        let mut e = 0u32;
        while rest % l == 0 {
            rest /= l;
            e += 1;
        }
        let lu = l as u64;
        match crate::arith::kronecker_i64(d, lu as i64) {
            1 => {
                let i_plus = gens.iter().position(|g| *g == (lu, PrimeKind::SplitPlus))?;
                // v at the + branch: l-divisibility of x + y·r with r the
                // lifted + root
                let r = lift_root(d, lu, e, root_mod(d, lu).unwrap());
                let le = (l as i128).pow(e);
                let mut val = (x + y * r).rem_euclid(le);
                let mut vp = 0u32;
                while vp < e && val % l as i128 == 0 {
                    val /= l as i128;
                    vp += 1;
                }
                rel[i_plus] += vp;
                rel[i_plus + 1] += e - vp;
            }
            -1 => {
                let i = gens.iter().position(|g| *g == (lu, PrimeKind::Inert))?;
                debug_assert!(e % 2 == 0);
                rel[i] += e / 2;
            }
            _ => {
                let i = gens.iter().position(|g| *g == (lu, PrimeKind::Ramified))?;
                rel[i] += e;
            }
        }
        l += 1;
    }
    Some(rel)
}

/// Unit-index oracle: p^{N−1} divided by the multiplicative order of the
/// principal-unit part of ε₀ inside (Z/p^N)^×, with ε₀ found by direct
/// search and √D by root lifting — no p-adic logarithm.
pub fn oracle_unit_index(d: i64, p: u64, precision: u32, budget: &OracleBudget) -> Result<BigInt> {
    if d <= 0 {
        return Err(Error::usage("needs a real quadratic field".to_string()));
    }
    if d.unsigned_abs() > budget.max_disc || precision > budget.max_precision {
        return Err(Error::Resource("oracle budget exceeded".to_string()));
    }
    if !is_prime(p) || p < 3 || crate::arith::kronecker_i64(d, p as i64) != 1 {
        return Err(Error::usage(format!("p = {p} must be an odd split prime")));
    }
    // fundamental unit (x0 + y0√D)/2 by direct search
    let mut unit = None;
    'outer: for y in 1i128..200_000 {
        for pm in [-4i128, 4] {
            let t = d as i128 * y * y + pm;
            if t >= 0 {
                let x = (t as f64).sqrt().round() as i128;
                for x in [x - 1, x, x + 1] {
                    if x > 0 && x * x == t {
                        unit = Some((x, y));
                        break 'outer;
                    }
                }
            }
        }
    }
    let (x0, y0) = unit.ok_or_else(|| Error::Resource("unit search exhausted".to_string()))?;
    let pn = BigInt::from(p).pow(precision);
    // √D mod p^N from the root of z² − D
    let r0 = (0..p)
        .find(|z| (z * z) % p == (d as u64).rem_euclid(p))
        .expect("split prime has a square root");
    let mut root = BigInt::from(r0);
    let mut modulus = BigInt::from(p);
    while modulus < pn {
        modulus = (&modulus * &modulus).min(pn.clone());
        let f = (&root * &root - d) % &modulus;
        let fp = BigInt::from(2) * &root % &modulus;
        let inv = fp.modinv(&modulus).expect("2·root invertible");
        root = ((&root - f * inv) % &modulus + &modulus) % &modulus;
    }
    let inv2 = BigInt::from(2).modinv(&pn).unwrap();
    let eps = (BigInt::from(x0) + BigInt::from(y0) * &root) * inv2 % &pn;
    // strip the prime-to-p part: raise to the order of ε₀ mod p
    let mut mord = 1u64;
    let eps_p = (&eps % p).to_u64().unwrap();
    while powmod(eps_p, mord, p) != 1 {
        mord += 1;
    }
    let w = eps.modpow(&BigInt::from(mord), &pn);
    // order of w in the principal units is a p-power dividing p^{N−1}
    let mut ord = BigInt::one();
    let mut cur = w.clone();
    while !cur.is_one() {
        cur = cur.modpow(&BigInt::from(p), &pn);
        ord *= p;
    }
    Ok(BigInt::from(p).pow(precision - 1) / ord)
}

/// Local quotient cardinality by literal coset enumeration: split l counts
/// cosets of the diagonal in F_l^× × F_l^×, inert l counts projective
/// points of F_{l²} over F_l, ramified l gives 1.
pub fn oracle_local_quotient(d: i64, l: u64) -> Result<u64> {
    if !is_prime(l) {
        return Err(Error::usage(format!("{l} is not prime")));
    }
    match crate::arith::kronecker_i64(d, l as i64) {
        1 => {
            // distinct a·b⁻¹ over (a, b) in F_l^× × F_l^×
            let mut seen = vec![false; l as usize];
            let mut count = 0u64;
            for a in 1..l {
                for b in 1..l {
                    let q = (a as i128 * inv_mod(b as i128, l as i128).unwrap()) % l as i128;
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
        -1 => {
            // projective line over F_l via scalar-equivalence classes of
            // nonzero pairs
            let mut reps: Vec<(u64, u64)> = Vec::new();
            for a in 0..l {
                for b in 0..l {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let equivalent = reps.iter().any(|&(c, e)| {
                        (1..l).any(|s| (s * a) % l == c && (s * b) % l == e)
                    });
                    if !equivalent {
                        reps.push((a, b));
                    }
                }
            }
            Ok(reps.len() as u64)
        }
        _ => Ok(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfield::{local_quotient, ray_class_group};
    use crate::padic::unit_index;

    fn grp(d: i64, n0: u64, p: u64, r: u32) -> (FiniteAbelianGroup, FiniteAbelianGroup) {
        let k = QuadField::new(d).unwrap();
        let m = Modulus::new(n0, p, r).unwrap();
        let main = ray_class_group(&k, &m).unwrap();
        let oracle = oracle_ray_class(&k, &m, &OracleBudget::default()).unwrap();
        assert!(oracle.is_finite(), "D={d} n0={n0} p={p} r={r}: relation supply too thin");
        (main, oracle)
    }

    #[test]
    fn ray_class_frozen_examples() {
        let (_, o) = grp(-4, 1, 3, 0);
        assert!(o.is_trivial());
        let (_, o) = grp(-23, 1, 3, 0);
        assert_eq!(o.invariant_factors(), &[BigInt::from(3)]);
        let (_, o) = grp(-4, 5, 3, 0);
        assert_eq!(o.invariant_factors(), &[BigInt::from(4)]);
    }

    #[test]
    fn ray_class_agreement_imaginary() {
        for d in [-3i64, -4, -7, -8, -11, -15, -20, -23, -24, -31, -35, -39, -40] {
            for n0 in [1u64, 2, 3, 4, 5] {
                // the p slot is inert in the modulus when r = 0 but must
                // still be coprime to n0
                let (main, oracle) = grp(d, n0, if n0 % 3 == 0 { 7 } else { 3 }, 0);
                assert_eq!(
                    main.invariant_factors(),
                    oracle.invariant_factors(),
                    "D={d} n0={n0}"
                );
            }
        }
    }

    #[test]
    fn ray_class_agreement_wild_part() {
        // r = 1 moduli at split p
        for (d, n0, p) in [(-4i64, 1u64, 5u64), (-4, 3, 5), (-23, 1, 3), (-8, 1, 3), (-23, 2, 3)] {
            let (main, oracle) = grp(d, n0, p, 1);
            assert_eq!(
                main.invariant_factors(),
                oracle.invariant_factors(),
                "D={d} n0={n0} p={p}"
            );
        }
    }

    #[test]
    fn ray_class_agreement_real() {
        // narrow class groups (trivial modulus) and one tame modulus
        for (d, n0) in [(5i64, 1u64), (8, 1), (12, 1), (13, 1), (5, 4), (12, 5)] {
            let (main, oracle) = grp(d, n0, 3, 0);
            assert_eq!(
                main.invariant_factors(),
                oracle.invariant_factors(),
                "D={d} n0={n0}"
            );
        }
    }

    #[test]
    fn ray_class_budget_enforced() {
        let k = QuadField::new(-163).unwrap();
        let m = Modulus::new(1, 3, 0).unwrap();
        assert!(oracle_ray_class(&k, &m, &OracleBudget::default()).is_err());
    }

    #[test]
    fn unit_index_frozen_examples() {
        let b = OracleBudget::default();
        assert!(oracle_unit_index(5, 11, 10, &b).unwrap().is_one());
        assert!(oracle_unit_index(5, 19, 10, &b).unwrap().is_one());
        assert!(oracle_unit_index(5, 29, 10, &b).unwrap().is_one());
    }

    #[test]
    fn unit_index_agreement() {
        let b = OracleBudget::default();
        for (d, p) in [(5i64, 11u64), (5, 19), (5, 29), (13, 3), (13, 17), (17, 13), (8, 7), (12, 11)] {
            for n in [6u32, 10] {
                let k = QuadField::new(d).unwrap();
                let main = unit_index(&k, p, n).unwrap();
                let oracle = oracle_unit_index(d, p, n, &b).unwrap();
                assert_eq!(main.index, oracle, "D={d} p={p} N={n}");
            }
        }
    }

    #[test]
    fn local_quotient_frozen_examples() {
        assert_eq!(oracle_local_quotient(5, 11).unwrap(), 10);
        assert_eq!(oracle_local_quotient(5, 3).unwrap(), 4);
        assert_eq!(oracle_local_quotient(-4, 2).unwrap(), 1);
    }

    #[test]
    fn local_quotient_agreement() {
        for d in [-23i64, -4, -3, 5, 8, 12, 13, 17] {
            let k = QuadField::new(d).unwrap();
            for l in [2u64, 3, 5, 7, 11, 13] {
                let main = local_quotient(&k, l).unwrap();
                let oracle = oracle_local_quotient(d, l).unwrap();
                assert_eq!(
                    main.group.order().unwrap(),
                    BigInt::from(oracle),
                    "D={d} l={l}"
                );
            }
        }
    }
}
