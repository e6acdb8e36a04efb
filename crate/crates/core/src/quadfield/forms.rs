use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Binary quadratic form ax^2 + bxy + cy^2 with discriminant b^2 - 4ac.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// Reduced predicate for negative discriminant: |b| <= a <= c, with
    /// b >= 0 when |b| = a or a = c.
    pub fn is_reduced_definite(&self) -> bool {
        let babs = self.b.abs();
        babs <= self.a
            && self.a <= self.c
            && !((babs == self.a || self.a == self.c) && self.b.is_negative())
    }

    /// Reduced predicate for positive discriminant D:
    /// |sqrt(D) - 2|a|| < b < sqrt(D).
    pub fn is_reduced_indefinite(&self) -> bool {
        let d = self.discriminant();
        debug_assert!(d.is_positive());
        if !self.b.is_positive() {
            return false;
        }
        let b2 = &self.b * &self.b;
        if b2 >= d {
            return false;
        }
        // |sqrt(D) - 2|a|| < b  <=>  (sqrt(D) - 2|a|)^2 < b^2 with the sign
        // analysis folded in: equivalent to 0 < 2|a| - (sqrt(D)-b) and
        // 2|a| < sqrt(D)+b, both strict; compare squares to stay exact
        let two_a = BigInt::from(2) * self.a.abs();
        // 2|a| < sqrt(D) + b <=> (2|a| - b)^2 < D when 2|a| > b, else true
        let upper_ok = if two_a > self.b {
            let t = &two_a - &self.b;
            &t * &t < d
        } else {
            true
        };
        // sqrt(D) - b < 2|a| <=> D < (2|a| + b)^2
        let t = &two_a + &self.b;
        let lower_ok = d < &t * &t;
        upper_ok && lower_ok
    }

    /// Reduce a positive definite form (discriminant < 0, a > 0).
    pub fn reduce_definite(&self) -> QuadForm {
        let mut f = self.clone();
        debug_assert!(f.discriminant().is_negative());
        loop {
            // normalize: -a < b <= a
            if f.b > f.a || f.b <= -&f.a {
                let two_a = BigInt::from(2) * &f.a;
                // b' = b mod 2a shifted into (-a, a]
                let mut bm = f.b.mod_floor(&two_a);
                if bm > f.a {
                    bm -= &two_a;
                }
                let c = (&bm * &bm - f.discriminant()) / (BigInt::from(4) * &f.a);
                f = QuadForm::new(f.a.clone(), bm, c);
            }
            if f.a > f.c {
                f = QuadForm::new(f.c.clone(), -f.b.clone(), f.a.clone());
                continue;
            }
            if (f.b.abs() == f.a || f.a == f.c) && f.b.is_negative() {
                f = QuadForm::new(f.a.clone(), -f.b.clone(), f.c.clone());
            }
            return f;
        }
    }

    /// One step of the indefinite reduction operator rho.
    pub fn rho(&self) -> QuadForm {
        let d = self.discriminant();
        let s = d.sqrt();
        let c_abs = self.c.abs();
        let two_c = BigInt::from(2) * &c_abs;
        // r = -b mod 2|c|, positioned by the standard window
        let r0 = (-&self.b).mod_floor(&two_c);
        let r = if c_abs > s {
            // -|c| < r <= |c|
            if r0 > c_abs {
                r0 - &two_c
            } else {
                r0
            }
        } else {
            // sqrt(D) - 2|c| < r < sqrt(D): shift r0 into (s - 2|c|, s]
            let lo = &s - &two_c;
            let mut r = r0;
            while r <= lo {
                r += &two_c;
            }
            while r > s {
                r -= &two_c;
            }
            r
        };
        let new_c = (&r * &r - &d) / (BigInt::from(4) * &self.c);
        QuadForm::new(self.c.clone(), r, new_c)
    }

    /// Reduce an indefinite form by iterating rho.
    pub fn reduce_indefinite(&self) -> QuadForm {
        let mut f = self.clone();
        for _ in 0..10_000 {
            if f.is_reduced_indefinite() {
                return f;
            }
            f = f.rho();
        }
        panic!("indefinite reduction did not terminate: {self:?}");
    }

    /// The cycle of reduced forms equivalent to a reduced indefinite form.
    pub fn cycle(&self) -> Vec<QuadForm> {
        debug_assert!(self.is_reduced_indefinite());
        let mut out = vec![self.clone()];
        let mut f = self.rho();
        while &f != self {
            debug_assert!(f.is_reduced_indefinite());
            out.push(f.clone());
            f = f.rho();
        }
        out
    }

    /// Canonical representative of the proper equivalence class of an
    /// indefinite form: the lexicographically least (a, b, c) in its cycle.
    pub fn canonical_indefinite(&self) -> QuadForm {
        let red = self.reduce_indefinite();
        red.cycle()
            .into_iter()
            .min_by(|f, g| {
                (&f.a, &f.b, &f.c).cmp(&(&g.a, &g.b, &g.c))
            })
            .unwrap()
    }

    /// Canonical representative for either signature.
    pub fn canonical(&self) -> QuadForm {
        if self.discriminant().is_negative() {
            self.reduce_definite()
        } else {
            self.canonical_indefinite()
        }
    }

    /// Gauss/Dirichlet composition. Both forms must have the same
    /// discriminant. The result is canonical.
    pub fn compose(&self, other: &QuadForm) -> QuadForm {
        let d = self.discriminant();
        assert_eq!(d, other.discriminant(), "discriminant mismatch");
        let (a1, b1) = (&self.a, &self.b);
        let (a2, b2, c2) = (&other.a, &other.b, &other.c);
        let s = (b1 + b2) / 2i32;
        let e = a1.gcd(a2).gcd(&s);
        let a3 = a1 * a2 / (&e * &e);
        let two_a3 = BigInt::from(2) * &a3;
        // B = b2 mod 2a2/e, B = b1 mod 2a1/e, B^2 = D mod 4a3; solve the
        // first two by CRT on non-coprime moduli, then scan lifts for the
        // quadratic condition
        let m1 = BigInt::from(2) * a1 / &e;
        let m2 = BigInt::from(2) * a2 / &e;
        let g = m1.gcd(&m2);
        debug_assert!(((b1 - b2).mod_floor(&g)).is_zero());
        // b = b1 + m1 * t with t solving (m1/g) t = (b2 - b1)/g mod (m2/g)
        let m1g = &m1 / &g;
        let m2g = &m2 / &g;
        let rhs = (b2 - b1) / &g;
        let inv = mod_inverse(&m1g.mod_floor(&m2g), &m2g);
        let t = (rhs * inv).mod_floor(&m2g);
        let lcm = &m1 * &m2g;
        let mut b3 = (b1 + &m1 * t).mod_floor(&lcm);
        // lift modulo lcm until B^2 = D mod 4a3
        let four_a3 = BigInt::from(4) * &a3;
        let mut found = false;
        let mut steps = (&two_a3 / &lcm).abs() + BigInt::one();
        while steps.is_positive() {
            if ((&b3 * &b3 - &d).mod_floor(&four_a3)).is_zero() {
                found = true;
                break;
            }
            b3 += &lcm;
            steps -= 1u32;
        }
        assert!(found, "composition congruence has a solution by theory");
        let c3 = (&b3 * &b3 - &d) / &four_a3;
        let _ = c2; // c2 enters only through the discriminant
        QuadForm::new(a3, b3, c3).canonical()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// All reduced positive definite forms of discriminant D < 0.
pub fn reduced_definite_forms(d: &BigInt) -> Vec<QuadForm> {
    debug_assert!(d.is_negative());
    let mut out = Vec::new();
    let bound = (-d / 3u32).sqrt();
    let mut a = BigInt::one();
    while a <= bound {
        let mut b = BigInt::one() - &a;
        while b <= a {
            let num = &b * &b - d;
            let den = BigInt::from(4) * &a;
            if (&num % &den).is_zero() {
                let c = num / den;
                let f = QuadForm::new(a.clone(), b.clone(), c);
                if f.is_reduced_definite() {
                    out.push(f);
                }
            }
            b += 1u32;
        }
        a += 1u32;
    }
    out
}

/// All reduced indefinite forms of discriminant D > 0.
pub fn reduced_indefinite_forms(d: &BigInt) -> Vec<QuadForm> {
    debug_assert!(d.is_positive());
    let mut out = Vec::new();
    let s = d.sqrt();
    let mut b = BigInt::one();
    while b <= s {
        if (&b - d).mod_floor(&BigInt::from(2)).is_zero() {
            let n = (d - &b * &b) / 4u32; // = |a| * |c|, positive when b^2 < D
            if n.is_positive() {
                let mut a_abs = BigInt::one();
                while &a_abs * &a_abs <= n {
                    if (&n % &a_abs).is_zero() {
                        for da in [a_abs.clone(), &n / &a_abs] {
                            for sign in [1i32, -1] {
                                let a = if sign == 1 { da.clone() } else { -da.clone() };
                                let c = -(&n / &da) * sign;
                                let f = QuadForm::new(a, b.clone(), c);
                                if f.is_reduced_indefinite() && !out.contains(&f) {
                                    out.push(f);
                                }
                            }
                        }
                    }
                    a_abs += 1u32;
                }
            }
        }
        b += 1u32;
    }
    out
}
