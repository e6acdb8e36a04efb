//! Dihedral weight-one data: Hecke coefficients of forms induced from
//! class-group characters of imaginary quadratic fields, the conductor of
//! the induction, and p-stabilization eigenvalues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{CyclotomicInt, GroupElement};
use crate::error::{Error, Result};
use crate::padic::is_prime;
use crate::quadfield::{ideals_of_norm, ClassGroup, QuadField, SplitType};

/// A character of the class group of an imaginary quadratic field, valued in
/// roots of unity of order dividing the group exponent.
#[derive(Debug, Clone)]
pub struct ClassCharacter {
    cl: ClassGroup,
    /// χ(e_i) = ζ_E^{k_i} on the i-th invariant-factor generator
    zeta_exponents: Vec<BigInt>,
    /// E, the group exponent; the cyclotomic order all values live in
    exponent: u32,
}

impl ClassCharacter {
    /// Build the character sending the i-th invariant-factor generator e_i
    /// (of order d_i) to ζ_{d_i}^{exponents[i]}.
    pub fn new(k: &QuadField, exponents: &[i64]) -> Result<Self> {
        if !k.is_imaginary() {
            return Err(Error::usage(
                "class characters are taken over imaginary quadratic fields here".to_string(),
            ));
        }
        let cl = ClassGroup::new(k);
        let factors = cl.group().invariant_factors().to_vec();
        if exponents.len() != factors.len() {
            return Err(Error::usage(format!(
                "expected {} exponent(s) for the invariant factors {:?}",
                factors.len(),
                factors
            )));
        }
        let e_big = cl.group().exponent();
        let exponent = e_big
            .to_u32()
            .ok_or_else(|| Error::Resource("class group exponent too large".to_string()))?;
        let zeta_exponents = exponents
            .iter()
            .zip(&factors)
            .map(|(a, d)| {
                let step = &e_big / d;
                (BigInt::from(*a) * step).mod_floor(&e_big)
            })
            .collect();
        Ok(ClassCharacter {
            cl,
            zeta_exponents,
            exponent,
        })
    }

    pub fn field(&self) -> &QuadField {
        self.cl.field()
    }

    pub fn class_group(&self) -> &ClassGroup {
        &self.cl
    }

    /// Value on a class-group element, as a root of unity in Z[ζ_E].
    pub fn value(&self, e: &GroupElement) -> CyclotomicInt {
        let eb = BigInt::from(self.exponent);
        let mut acc = BigInt::zero();
        for (k, x) in self.zeta_exponents.iter().zip(&e.coords) {
            acc += k * x;
        }
        let acc = acc.mod_floor(&eb);
        CyclotomicInt::root_pow(self.exponent, acc.to_i64().unwrap())
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u32 {
        let eb = BigInt::from(self.exponent);
        let mut g = eb.clone();
        for k in &self.zeta_exponents {
            g = g.gcd(k);
        }
        (&eb / g).to_u32().unwrap()
    }

    /// The cyclotomic order the coefficient values are expressed in.
    pub fn cyclotomic_order(&self) -> u32 {
        self.exponent
    }

    /// The ζ_E-exponents of the character on the invariant-factor generators.
    pub fn zeta_exponents(&self) -> &[BigInt] {
        &self.zeta_exponents
    }

    /// φ∘σ = φ⁻¹, the conjugate character.
    pub fn conjugate(&self) -> ClassCharacter {
        let eb = BigInt::from(self.exponent);
        ClassCharacter {
            cl: self.cl.clone(),
            zeta_exponents: self
                .zeta_exponents
                .iter()
                .map(|k| (-k).mod_floor(&eb))
                .collect(),
            exponent: self.exponent,
        }
    }

    /// φ² ≠ 1: the induced representation is irreducible exactly when the
    /// character differs from its conjugate.
    pub fn is_induction_irreducible(&self) -> bool {
        let eb = BigInt::from(self.exponent);
        self.zeta_exponents
            .iter()
            .any(|k| !(BigInt::from(2) * k).mod_floor(&eb).is_zero())
    }
}

/// The truncated Hecke coefficient sequence of the induced weight-one form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DihedralCoefficients {
    /// level |D| of the induced form (unramified character)
    pub level: u64,
    /// c(1), ..., c(B)
    pub coefficients: Vec<CyclotomicInt>,
}

impl DihedralCoefficients {
    /// c(m) for 1 <= m <= B.
    pub fn c(&self, m: u64) -> &CyclotomicInt {
        &self.coefficients[(m - 1) as usize]
    }

    pub fn truncation(&self) -> u64 {
        self.coefficients.len() as u64
    }
}

/// Hecke coefficients c(m) = Σ_{N(A)=m} φ([A]) for m up to the truncation B.
pub fn induce_coefficients(phi: &ClassCharacter, b: u64) -> Result<DihedralCoefficients> {
    if !phi.is_induction_irreducible() {
        return Err(Error::usage(
            "the character squares to one, so the induction is reducible".to_string(),
        ));
    }
    if b < 1 {
        return Err(Error::usage("truncation must be at least 1".to_string()));
    }
    let level = phi
        .field()
        .discriminant()
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Resource("discriminant too large".to_string()))?;
    let mut coefficients = Vec::with_capacity(b as usize);
    for m in 1..=b {
        let mut c = CyclotomicInt::zero(phi.cyclotomic_order());
        for ideal in ideals_of_norm(phi.class_group(), m)? {
            c = c.add(&phi.value(&ideal.class))?;
        }
        coefficients.push(c);
    }
    Ok(DihedralCoefficients {
        level,
        coefficients,
    })
}

/// Conductor of the induced form: N(cond φ)·|D| with cond φ = (1) in the
/// unramified case implemented here.
pub fn conductor_of_induction(phi: &ClassCharacter) -> BigInt {
    phi.field().discriminant().abs()
}

/// Frobenius data of the induced form at a prime p of good reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub p: u64,
    pub split_type: SplitType,
    /// the two Frobenius eigenvalues (roots of X² − c(p)X + det)
    pub eigenvalues: Vec<CyclotomicInt>,
    pub c_p: CyclotomicInt,
    /// determinant ε_{K/Q}(p) = ±1
    pub det: i32,
}

/// Eigenvalues of Frobenius at p: for split p the two unit values φ(P),
/// φ(P^σ); for inert p the pair ±1 with c(p) = 0.
pub fn p_stabilization_data(phi: &ClassCharacter, p: u64) -> Result<StabilizationReport> {
    if !is_prime(p) {
        return Err(Error::usage(format!("{p} is not prime")));
    }
    let k = phi.field();
    let order = phi.cyclotomic_order();
    match k.classify_prime(p) {
        SplitType::Ramified => Err(Error::usage(format!(
            "p = {p} divides the level; stabilization needs a good prime"
        ))),
        SplitType::Split => {
            let a = phi.value(&phi.class_group().dlog(&k.prime_form(p)?));
            let b = phi.value(&phi.class_group().dlog(&k.conjugate_prime_form(p)?));
            let c_p = a.add(&b)?;
            Ok(StabilizationReport {
                p,
                split_type: SplitType::Split,
                eigenvalues: vec![a, b],
                c_p,
                det: 1,
            })
        }
        SplitType::Inert => Ok(StabilizationReport {
            p,
            split_type: SplitType::Inert,
            eigenvalues: vec![
                CyclotomicInt::one(order),
                CyclotomicInt::one(order).neg(),
            ],
            c_p: CyclotomicInt::zero(order),
            det: -1,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn phi23() -> ClassCharacter {
        ClassCharacter::new(&QuadField::new(-23).unwrap(), &[1]).unwrap()
    }

    fn as_int(v: &CyclotomicInt) -> Option<BigInt> {
        let mut it = v.coeffs().iter();
        let c0 = it.next().cloned().unwrap_or_else(BigInt::zero);
        if it.all(|c| c.is_zero()) {
            Some(c0)
        } else {
            None
        }
    }

    #[test]
    fn frozen_coefficients_d23() {
        let c = induce_coefficients(&phi23(), 10).unwrap();
        assert_eq!(c.level, 23);
        assert!(c.c(1).is_one());
        assert_eq!(as_int(c.c(2)), Some(BigInt::from(-1)));
        assert!(c.c(5).is_zero()); // 5 inert
        assert!(c.c(7).is_zero()); // 7 inert
    }

    #[test]
    fn reducible_induction_rejected() {
        // trivial character
        let phi = ClassCharacter::new(&QuadField::new(-23).unwrap(), &[0]).unwrap();
        assert!(!phi.is_induction_irreducible());
        assert!(induce_coefficients(&phi, 5).is_err());
        // genus character of D=-15 (class group Z/2) also squares to one
        let phi = ClassCharacter::new(&QuadField::new(-15).unwrap(), &[1]).unwrap();
        assert!(induce_coefficients(&phi, 5).is_err());
    }

    #[test]
    fn conductor_formula() {
        assert_eq!(conductor_of_induction(&phi23()), BigInt::from(23));
        let phi = ClassCharacter::new(&QuadField::new(-4).unwrap(), &[]).unwrap();
        assert_eq!(conductor_of_induction(&phi), BigInt::from(4));
        let phi = ClassCharacter::new(&QuadField::new(-31).unwrap(), &[1]).unwrap();
        assert_eq!(conductor_of_induction(&phi), BigInt::from(31));
    }

    #[test]
    fn character_is_homomorphism() {
        let phi = phi23();
        let g = phi.class_group().group().clone();
        for a in g.elements() {
            for b in g.elements() {
                let lhs = phi.value(&g.add(&a, &b));
                let rhs = phi.value(&a).mul(&phi.value(&b)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn multiplicativity() {
        let c = induce_coefficients(&phi23(), 40).unwrap();
        for m in 1..=40u64 {
            for n in 1..=40u64 {
                if m * n <= 40 && m.gcd(&n) == 1 {
                    assert_eq!(
                        *c.c(m * n),
                        c.c(m).mul(c.c(n)).unwrap(),
                        "m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn hecke_recursion_at_good_primes() {
        let phi = phi23();
        let c = induce_coefficients(&phi, 64).unwrap();
        for l in [2u64, 3, 5, 7] {
            let eps = match phi.field().classify_prime(l) {
                SplitType::Split => BigInt::one(),
                SplitType::Inert => BigInt::from(-1),
                SplitType::Ramified => continue,
            };
            let mut k = 1u64;
            while l.pow(k as u32 + 1) <= 64 {
                let lhs = c.c(l.pow(k as u32 + 1)).clone();
                let rhs = c
                    .c(l)
                    .mul(c.c(l.pow(k as u32)))
                    .unwrap()
                    .sub(&c.c(l.pow(k as u32 - 1)).scalar_mul(&eps))
                    .unwrap();
                assert_eq!(lhs, rhs, "l={l} k={k}");
                k += 1;
            }
        }
    }

    #[test]
    fn inert_primes_vanish() {
        let phi = phi23();
        let c = induce_coefficients(&phi, 60).unwrap();
        for l in [5u64, 7, 11, 17, 19, 37, 43, 53] {
            assert_eq!(phi.field().classify_prime(l), SplitType::Inert);
            assert!(c.c(l).is_zero(), "l={l}");
        }
    }

    #[test]
    fn conjugate_character_gives_same_coefficients() {
        let phi = phi23();
        let sigma = phi.conjugate();
        assert_ne!(phi.value(&phi.class_group().group().elements()[1]),
                   sigma.value(&phi.class_group().group().elements()[1]));
        let a = induce_coefficients(&phi, 30).unwrap();
        let b = induce_coefficients(&sigma, 30).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn eta_product_oracle_d23() {
        // q ∏ (1-q^n)(1-q^23n) up to q^40, multiplied out directly
        const B: usize = 40;
        let mut poly = vec![0i64; B + 1];
        poly[0] = 1;
        for n in 1..=B {
            for factor in [n, 23 * n] {
                if factor > B {
                    continue;
                }
                // multiply by (1 - q^factor)
                for i in (factor..=B).rev() {
                    poly[i] -= poly[i - factor];
                }
            }
        }
        // shift by q: coefficient of q^m in the eta product is poly[m-1]
        let c = induce_coefficients(&phi23(), B as u64).unwrap();
        for m in 1..=B as u64 {
            assert_eq!(
                as_int(c.c(m)),
                Some(BigInt::from(poly[(m - 1) as usize])),
                "m={m}"
            );
        }
    }

    #[test]
    fn stabilization_split() {
        let phi = phi23();
        let r = p_stabilization_data(&phi, 2).unwrap();
        assert_eq!(r.split_type, SplitType::Split);
        assert_eq!(r.det, 1);
        assert_eq!(as_int(&r.c_p), Some(BigInt::from(-1)));
        // eigenvalues are the two primitive cube roots of unity
        let z = CyclotomicInt::root(3);
        let z2 = z.mul(&z).unwrap();
        assert!(r.eigenvalues.contains(&z) && r.eigenvalues.contains(&z2));
        // product of eigenvalues = det
        assert!(r.eigenvalues[0].mul(&r.eigenvalues[1]).unwrap().is_one());
        // trace = c(p)
        assert_eq!(r.eigenvalues[0].add(&r.eigenvalues[1]).unwrap(), r.c_p);
    }

    #[test]
    fn stabilization_inert_and_ramified() {
        let phi = phi23();
        let r = p_stabilization_data(&phi, 5).unwrap();
        assert_eq!(r.split_type, SplitType::Inert);
        assert_eq!(r.det, -1);
        assert!(r.c_p.is_zero());
        assert_eq!(as_int(&r.eigenvalues[0]), Some(BigInt::one()));
        assert_eq!(as_int(&r.eigenvalues[1]), Some(BigInt::from(-1)));
        assert!(p_stabilization_data(&phi, 23).is_err());
        assert!(p_stabilization_data(&phi, 6).is_err());
    }

    #[test]
    fn larger_field_d47() {
        // h(-47) = 5; a character of order 5 induces a form of level 47
        let phi = ClassCharacter::new(&QuadField::new(-47).unwrap(), &[1]).unwrap();
        assert_eq!(phi.order(), 5);
        let c = induce_coefficients(&phi, 20).unwrap();
        assert_eq!(c.level, 47);
        assert!(c.c(1).is_one());
        // 2 splits into order-5 classes: c(2) = ζ5^k + ζ5^-k, not an integer
        assert_eq!(phi.field().classify_prime(2), SplitType::Split);
        assert!(as_int(c.c(2)).is_none());
    }
}
