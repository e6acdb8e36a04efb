use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::GroupElement;
use crate::error::{Error, Result};
use super::classgroup::ClassGroup;
use super::forms::QuadForm;
use super::unit::omega_params;
use super::{QuadField, SplitType};

/// Integral ideal of the maximal order, as a lattice Z·a + Z·(b + cω) in
/// Hermite form (a > 0, c > 0, 0 ≤ b < a, c | a, c | b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ideal {
    d: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// Product of two ring elements written on the basis (1, ω), ω² = tω + n.
fn elt_mul(tn: &(BigInt, BigInt), p: &(BigInt, BigInt), q: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let (t, n) = tn;
    let yy = &p.1 * &q.1;
    (
        &p.0 * &q.0 + n * &yy,
        &p.0 * &q.1 + &p.1 * &q.0 + t * &yy,
    )
}

/// Norm form N(x + yω) = x² + txy − ny².
pub fn elt_norm(d: &BigInt, x: &BigInt, y: &BigInt) -> BigInt {
    let (t, n) = omega_params(d);
    x * x + &t * x * y - &n * y * y
}

/// Product (x1 + y1ω)(x2 + y2ω) in the integral basis (1, ω).
pub fn elt_product(
    d: &BigInt,
    a: &(BigInt, BigInt),
    b: &(BigInt, BigInt),
) -> (BigInt, BigInt) {
    elt_mul(&omega_params(d), a, b)
}

/// Signs of x + yω at the two real embeddings (real fields), with the first
/// embedding sending √D to the positive root.
pub fn elt_signs(d: &BigInt, x: &BigInt, y: &BigInt) -> (i32, i32) {
    let (t, _) = omega_params(d);
    // x + yω = (A + B√D)/2 with A = 2x + ty, B = y
    let a = BigInt::from(2) * x + &t * y;
    let sign = |a: &BigInt, b: &BigInt| -> i32 {
        // sign of A + B√D, D > 0 not a square
        if b.is_zero() {
            return if a.is_positive() { 1 } else { -1 };
        }
        if a.sign() == b.sign() {
            return if b.is_positive() { 1 } else { -1 };
        }
        let lhs = a * a;
        let rhs = b * b * d;
        if lhs > rhs {
            if a.is_positive() { 1 } else { -1 }
        } else if b.is_positive() {
            1
        } else {
            -1
        }
    };
    (sign(&a, y), sign(&a, &(-y)))
}

impl Ideal {
    fn from_gens(d: &BigInt, gens: &[(BigInt, BigInt)]) -> Ideal {
        // close under multiplication by ω, then row-reduce to Hermite form
        let tn = omega_params(d);
        let mut all: Vec<(BigInt, BigInt)> = Vec::new();
        for g in gens {
            all.push(g.clone());
            all.push(elt_mul(&tn, g, &(BigInt::zero(), BigInt::one())));
        }
        // one generator with minimal positive ω-coefficient via gcd chain
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut consts: Vec<BigInt> = Vec::new();
        for (x, y) in all {
            if y.is_zero() {
                consts.push(x);
                continue;
            }
            match pivot.take() {
                None => pivot = Some((x, y)),
                Some((px, py)) => {
                    let e = py.extended_gcd(&y);
                    let g = e.gcd;
                    let new = (&e.x * &px + &e.y * &x, &e.x * &py + &e.y * &y);
                    // reduce the old rows against the new pivot; their
                    // ω-parts vanish
                    consts.push(&px - (&py / &g) * &new.0);
                    consts.push(&x - (&y / &g) * &new.0);
                    pivot = Some(new);
                }
            }
        }
        let (bx, mut c) = pivot.expect("nonzero ideal");
        let mut b = bx;
        if c.is_negative() {
            c = -c;
            b = -b;
        }
        let mut a = BigInt::zero();
        for x in consts {
            a = a.gcd(&x);
        }
        assert!(!a.is_zero(), "ideal lattice is full rank");
        b = b.mod_floor(&a);
        debug_assert!((&a % &c).is_zero() && (&b % &c).is_zero());
        Ideal { d: d.clone(), a, b, c }
    }

    /// The unit ideal (whole maximal order).
    pub fn whole(k: &QuadField) -> Ideal {
        Ideal {
            d: k.discriminant().clone(),
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    /// The principal ideal (x + yω).
    pub fn principal(k: &QuadField, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Ideal {
        Ideal::from_gens(k.discriminant(), &[(x.into(), y.into())])
    }

    /// The ideal corresponding to a form (a, b, c): Z·a + Z·(−b + √D)/2.
    pub fn from_form(k: &QuadField, f: &QuadForm) -> Ideal {
        let d = k.discriminant();
        let beta = if d.is_odd() {
            (-&f.b - 1i32) / 2i32
        } else {
            -&f.b / 2i32
        };
        Ideal::from_gens(d, &[(f.a.abs(), BigInt::zero()), (beta, BigInt::one())])
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        if !(y % &self.c).is_zero() {
            return false;
        }
        let k = y / &self.c;
        ((x - k * &self.b) % &self.a).is_zero()
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.d, other.d);
        let tn = omega_params(&self.d);
        let b1: [(BigInt, BigInt); 2] = [
            (self.a.clone(), BigInt::zero()),
            (self.b.clone(), self.c.clone()),
        ];
        let b2: [(BigInt, BigInt); 2] = [
            (other.a.clone(), BigInt::zero()),
            (other.b.clone(), other.c.clone()),
        ];
        let mut gens = Vec::new();
        for p in &b1 {
            for q in &b2 {
                gens.push(elt_mul(&tn, p, q));
            }
        }
        Ideal::from_gens(&self.d, &gens)
    }

    pub fn pow(&self, e: u64) -> Ideal {
        let mut out = Ideal {
            d: self.d.clone(),
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        };
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// A generator, when the ideal is principal: (x, y) with (x + yω) = self.
    ///
    /// Searches elements of the lattice with |norm| equal to the ideal norm;
    /// for real fields the search window is one fundamental-unit orbit wide.
    pub fn principal_generator(&self) -> Option<(BigInt, BigInt)> {
        let m = self.norm();
        let mf = num_traits::ToPrimitive::to_f64(&m).unwrap();
        let df = num_traits::ToPrimitive::to_f64(&self.d).unwrap();
        let (t, _) = omega_params(&self.d);
        let y_bound: i64 = if self.d.is_negative() {
            ((4.0 * mf / -df).sqrt().ceil() as i64) + 1
        } else {
            let eps = super::unit::fundamental_unit(&QuadField::new(self.d.clone()).unwrap())
                .expect("real field")
                .approx();
            ((2.0 * eps * mf.sqrt() / df.sqrt()).ceil() as i64) + 2
        };
        let targets: Vec<BigInt> = if self.d.is_negative() {
            vec![m.clone()]
        } else {
            vec![m.clone(), -m.clone()]
        };
        for y in 0..=y_bound {
            let yb = BigInt::from(y);
            for tgt in &targets {
                // x = (−ty ± s)/2 with s² = Dy² + 4·N
                let s2 = &self.d * &yb * &yb + BigInt::from(4) * tgt;
                if s2.is_negative() {
                    continue;
                }
                let s = s2.sqrt();
                if &s * &s != s2 {
                    continue;
                }
                for sgn in [1i32, -1] {
                    let num = -&t * &yb + if sgn == 1 { s.clone() } else { -s.clone() };
                    if !num.is_even() {
                        continue;
                    }
                    let x = num / 2i32;
                    if self.contains(&x, &yb) && elt_norm(&self.d, &x, &yb).abs() == m {
                        return Some((x, yb));
                    }
                }
            }
        }
        None
    }
}

/// One integral ideal of a given norm, labeled by its prime factorization,
/// with its class-group discrete log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealOfNorm {
    pub label: String,
    pub norm: BigInt,
    pub class: GroupElement,
}

fn label_part(out: &mut Vec<String>, name: String, e: u64) {
    if e == 1 {
        out.push(name);
    } else if e > 1 {
        out.push(format!("{name}^{e}"));
    }
}

/// All integral ideals of norm m, with the class of each in the form class
/// group. Assembled multiplicatively from the splitting of each prime
/// dividing m.
pub fn ideals_of_norm(cl: &ClassGroup, m: u64) -> Result<Vec<IdealOfNorm>> {
    if m == 0 {
        return Err(Error::usage("ideal norm must be positive".to_string()));
    }
    let k = cl.field().clone();
    let g = cl.group().clone();
    // options per prime power: (label parts, class contribution)
    let mut per_prime: Vec<Vec<(Vec<String>, GroupElement)>> = Vec::new();
    let mut rest = m;
    let mut l = 2u64;
    while rest > 1 {
        if l * l > rest {
            l = rest;
        }
        if rest % l != 0 {
            l += 1;
            continue;
        }
        let mut e = 0u64;
        while rest % l == 0 {
            rest /= l;
            e += 1;
        }
        let options = match k.classify_prime(l) {
            SplitType::Inert => {
                if e % 2 == 1 {
                    return Ok(Vec::new());
                }
                let mut parts = Vec::new();
                label_part(&mut parts, format!("({l})"), e / 2);
                vec![(parts, g.identity())]
            }
            SplitType::Ramified => {
                let p = cl.dlog(&k.prime_form(l)?);
                let mut parts = Vec::new();
                label_part(&mut parts, format!("R{l}"), e);
                vec![(parts, g.mul_scalar(&p, &BigInt::from(e)))]
            }
            SplitType::Split => {
                let p = cl.dlog(&k.prime_form(l)?);
                (0..=e)
                    .map(|i| {
                        let mut parts = Vec::new();
                        label_part(&mut parts, format!("P{l}"), i);
                        label_part(&mut parts, format!("P{l}s"), e - i);
                        let cls = g.mul_scalar(
                            &p,
                            &(BigInt::from(i) - BigInt::from(e - i)),
                        );
                        (parts, cls)
                    })
                    .collect()
            }
        };
        per_prime.push(options);
        l += 1;
    }
    // cartesian product across primes
    let mut acc: Vec<(Vec<String>, GroupElement)> = vec![(Vec::new(), g.identity())];
    for options in per_prime {
        let mut next = Vec::new();
        for (parts, cls) in &acc {
            for (op, oc) in &options {
                let mut np = parts.clone();
                np.extend(op.iter().cloned());
                next.push((np, g.add(cls, oc)));
            }
        }
        acc = next;
    }
    Ok(acc
        .into_iter()
        .map(|(parts, class)| IdealOfNorm {
            label: if parts.is_empty() {
                "(1)".to_string()
            } else {
                parts.join("*")
            },
            norm: BigInt::from(m),
            class,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::kronecker_i64;
    use super::super::is_fundamental_discriminant;

    fn cl(d: i64) -> ClassGroup {
        ClassGroup::new(&QuadField::new(d).unwrap())
    }

    #[test]
    fn d_minus_23_norm_2() {
        let cl = cl(-23);
        let ids = ideals_of_norm(&cl, 2).unwrap();
        assert_eq!(ids.len(), 2);
        for i in &ids {
            assert_eq!(cl.group().element_order(&i.class), BigInt::from(3));
        }
        assert_eq!(cl.group().add(&ids[0].class, &ids[1].class), cl.group().identity());
        assert!(ideals_of_norm(&cl, 5).unwrap().is_empty());
    }

    #[test]
    fn d_minus_4_norm_2() {
        let cl = cl(-4);
        let ids = ideals_of_norm(&cl, 2).unwrap();
        assert_eq!(ids.len(), 1);
        assert_eq!(ids[0].class, cl.group().identity());
        assert_eq!(ids[0].label, "R2");
    }

    #[test]
    fn counting_formula() {
        // #ideals of norm m = Σ_{d | m} (D/d) for m coprime to D
        for d in (-50i64..0).filter(|d| is_fundamental_discriminant(&BigInt::from(*d))) {
            let cl = cl(d);
            for m in 1u64..=200 {
                if num_integer::gcd(m as i64, d.abs()) != 1 {
                    continue;
                }
                let expect: i64 = (1..=m)
                    .filter(|t| m % t == 0)
                    .map(|t| kronecker_i64(d, t as i64) as i64)
                    .sum();
                let got = ideals_of_norm(&cl, m).unwrap().len() as i64;
                assert_eq!(got, expect, "D={d}, m={m}");
            }
        }
    }

    #[test]
    fn lattice_arithmetic() {
        let k = QuadField::new(-23).unwrap();
        let p = Ideal::from_form(&k, &k.prime_form(2).unwrap());
        let ps = Ideal::from_form(&k, &k.conjugate_prime_form(2).unwrap());
        assert_eq!(p.norm(), BigInt::from(2));
        // P · P^σ = (2)
        assert_eq!(p.mul(&ps), Ideal::principal(&k, 2, 0));
        // P is not principal but P³ is
        assert!(p.principal_generator().is_none());
        let p3 = p.pow(3);
        let (x, y) = p3.principal_generator().unwrap();
        assert_eq!(elt_norm(k.discriminant(), &x, &y).abs(), BigInt::from(8));
        assert_eq!(Ideal::principal(&k, x, y), p3);
    }

    #[test]
    fn real_field_generator_and_signs() {
        let k = QuadField::new(12).unwrap();
        // the ramified prime above 3 is (√3), norm −3: narrowly non-trivial
        let p3 = Ideal::from_form(&k, &k.prime_form(3).unwrap());
        assert_eq!(p3.norm(), BigInt::from(3));
        let (x, y) = p3.principal_generator().unwrap();
        assert_eq!(elt_norm(k.discriminant(), &x, &y).abs(), BigInt::from(3));
        let d = k.discriminant();
        // ω = √3: ω itself is mixed-sign
        assert_eq!(elt_signs(d, &BigInt::from(0), &BigInt::from(1)), (1, -1));
        assert_eq!(elt_signs(d, &BigInt::from(2), &BigInt::from(1)), (1, 1));
        assert_eq!(elt_signs(d, &BigInt::from(-2), &BigInt::from(1)), (-1, -1));
    }
}
