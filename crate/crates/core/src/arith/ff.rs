use crate::error::{Error, Result};

/// F_l or F_{l^2} for a prime l. Degree-2 fields are presented as
/// F_l[x]/(x^2 + bx + c) for the lexicographically smallest (b, c) making
/// the quadratic irreducible, so representations are reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    l: u64,
    degree: u8,
    /// (b, c) of the defining quadratic; (0, 0) in degree 1
    modulus: (u64, u64),
}

/// Element c0 + c1*x of a `FiniteField` (c1 = 0 in degree 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FFElem {
    pub c0: u64,
    pub c1: u64,
}

fn is_prime(n: u64) -> bool {
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

impl FiniteField {
    pub fn prime_field(l: u64) -> Result<Self> {
        if !is_prime(l) {
            return Err(Error::usage(format!("{l} is not prime")));
        }
        Ok(FiniteField {
            l,
            degree: 1,
            modulus: (0, 0),
        })
    }

    pub fn quadratic_extension(l: u64) -> Result<Self> {
        if !is_prime(l) {
            return Err(Error::usage(format!("{l} is not prime")));
        }
        // smallest (b, c) in lexicographic order with x^2 + bx + c irreducible
        for b in 0..l {
            for c in 0..l {
                if !Self::has_root(l, b, c) {
                    return Ok(FiniteField {
                        l,
                        degree: 2,
                        modulus: (b, c),
                    });
                }
            }
        }
        unreachable!("every prime field admits an irreducible quadratic")
    }

    fn has_root(l: u64, b: u64, c: u64) -> bool {
        (0..l).any(|x| (x * x + b * x + c) % l == 0)
    }

    pub fn characteristic(&self) -> u64 {
        self.l
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn size(&self) -> u64 {
        if self.degree == 1 {
            self.l
        } else {
            self.l * self.l
        }
    }

    pub fn modulus(&self) -> (u64, u64) {
        self.modulus
    }

    pub fn elem(&self, c0: u64, c1: u64) -> FFElem {
        debug_assert!(self.degree == 2 || c1 == 0);
        FFElem {
            c0: c0 % self.l,
            c1: c1 % self.l,
        }
    }

    pub fn zero(&self) -> FFElem {
        FFElem { c0: 0, c1: 0 }
    }

    pub fn one(&self) -> FFElem {
        FFElem { c0: 1, c1: 0 }
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem {
            c0: (a.c0 + b.c0) % self.l,
            c1: (a.c1 + b.c1) % self.l,
        }
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        let l = self.l as u128;
        let (a0, a1, b0, b1) = (a.c0 as u128, a.c1 as u128, b.c0 as u128, b.c1 as u128);
        if self.degree == 1 {
            return FFElem {
                c0: ((a0 * b0) % l) as u64,
                c1: 0,
            };
        }
        // (a0 + a1 x)(b0 + b1 x) with x^2 = -bx - c
        let (mb, mc) = (self.modulus.0 as u128, self.modulus.1 as u128);
        let x2 = (a1 * b1) % l;
        let c1 = (a0 * b1 + a1 * b0 + x2 * ((l - mb % l) % l)) % l;
        let c0 = (a0 * b0 + x2 * ((l - mc % l) % l)) % l;
        FFElem {
            c0: (c0 % l) as u64,
            c1: (c1 % l) as u64,
        }
    }

    pub fn pow(&self, a: FFElem, mut e: u64) -> FFElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x -> x^l, the field automorphism fixing F_l.
    pub fn frobenius(&self, a: FFElem) -> FFElem {
        self.pow(a, self.l)
    }

    pub fn is_zero(&self, a: FFElem) -> bool {
        a.c0 == 0 && a.c1 == 0
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FFElem) -> u64 {
        assert!(!self.is_zero(a));
        let n = self.size() - 1;
        let mut best = n;
        for d in 1..=n {
            if n % d == 0 && self.pow(a, d) == self.one() {
                best = d;
                break;
            }
        }
        best
    }

    /// Deterministic generator of the multiplicative group: the first element
    /// of full order in (c1, c0) enumeration order.
    pub fn generator(&self) -> FFElem {
        let n = self.size() - 1;
        for c1 in 0..if self.degree == 2 { self.l } else { 1 } {
            for c0 in 0..self.l {
                let a = FFElem { c0, c1 };
                if !self.is_zero(a) && self.order(a) == n {
                    return a;
                }
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicative_group_order() {
        for l in [2u64, 3, 5, 7, 11, 13] {
            let f1 = FiniteField::prime_field(l).unwrap();
            let g = f1.generator();
            assert_eq!(f1.order(g), l - 1);
            let f2 = FiniteField::quadratic_extension(l).unwrap();
            let g2 = f2.generator();
            assert_eq!(f2.order(g2), l * l - 1);
        }
    }

    #[test]
    fn deterministic_modulus() {
        // F_9 = F_3[x]/(x^2 + 1): (0, 1) is the smallest irreducible pair
        let f = FiniteField::quadratic_extension(3).unwrap();
        assert_eq!(f.modulus(), (0, 1));
        // F_4 = F_2[x]/(x^2 + x + 1)
        let f = FiniteField::quadratic_extension(2).unwrap();
        assert_eq!(f.modulus(), (1, 1));
    }

    #[test]
    fn frobenius_is_an_automorphism_fixing_the_prime_field() {
        for l in [3u64, 5, 7] {
            let f = FiniteField::quadratic_extension(l).unwrap();
            for c1 in 0..l {
                for c0 in 0..l {
                    let a = f.elem(c0, c1);
                    for d1 in 0..l {
                        for d0 in 0..l {
                            let b = f.elem(d0, d1);
                            assert_eq!(
                                f.frobenius(f.mul(a, b)),
                                f.mul(f.frobenius(a), f.frobenius(b))
                            );
                        }
                    }
                    // fixed points are exactly the degree-1 subfield
                    assert_eq!(f.frobenius(a) == a, c1 == 0);
                }
            }
        }
    }

    #[test]
    fn arithmetic_in_f9() {
        // x^2 = -1 in F_9 with modulus x^2 + 1
        let f = FiniteField::quadratic_extension(3).unwrap();
        let x = f.elem(0, 1);
        assert_eq!(f.mul(x, x), f.elem(2, 0));
    }
}
