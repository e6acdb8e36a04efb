use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Kronecker symbol (a/n), defined for all integers a and n.
///
/// Extends the Jacobi symbol by (a/2) = 0, 1, -1 according to
/// a mod 8, together with (a/-1) = sign conventions.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i32 {
    if n.is_zero() {
        return if a.magnitude() == &1u32.into() { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut n = n.clone();
    let mut k = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            k = -k;
        }
    }
    // factor out 2 from n
    let mut v = 0u32;
    while n.is_even() {
        n /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        // (a/2) for odd a: +1 if a = 1, 7 mod 8, -1 if a = 3, 5 mod 8
        let r = (a.mod_floor(&BigInt::from(8))).to_u8().unwrap();
        if r == 3 || r == 5 {
            k = -k;
        }
    }
    // Jacobi symbol (a/n) for odd positive n
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        let mut t = 0u32;
        while a.is_even() {
            a /= 2;
            t += 1;
        }
        if t % 2 == 1 {
            let r = (n.mod_floor(&BigInt::from(8))).to_u8().unwrap();
            if r == 3 || r == 5 {
                k = -k;
            }
        }
        // quadratic reciprocity for odd a, n
        if a.mod_floor(&BigInt::from(4)).to_u8().unwrap() == 3
            && n.mod_floor(&BigInt::from(4)).to_u8().unwrap() == 3
        {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n == BigInt::from(1) {
        k
    } else {
        0
    }
}

pub fn kronecker_i64(a: i64, n: i64) -> i32 {
    kronecker(&BigInt::from(a), &BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frozen_values() {
        assert_eq!(kronecker_i64(-4, 5), 1);
        assert_eq!(kronecker_i64(5, 5), 0);
        // exhaustive check: x^2 = 2 mod 5 has no solution, and -23 = 2 mod 5
        assert!((0..5).all(|x| (x * x) % 5 != 2));
        assert_eq!(kronecker_i64(-23, 5), -1);
    }

    #[test]
    fn against_euler_criterion() {
        for l in [3i64, 5, 7, 11, 13, 17, 19, 23] {
            for a in -30i64..30 {
                let expect = if a.rem_euclid(l) == 0 {
                    0
                } else if (1..l).any(|x| (x * x).rem_euclid(l) == a.rem_euclid(l)) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker_i64(a, l), expect, "({a}/{l})");
            }
        }
    }

    #[test]
    fn two_and_sign_cases() {
        assert_eq!(kronecker_i64(7, 2), 1);
        assert_eq!(kronecker_i64(3, 2), -1);
        assert_eq!(kronecker_i64(17, 2), 1);
        assert_eq!(kronecker_i64(-1, 2), 1);
        assert_eq!(kronecker_i64(2, 2), 0);
    }

    proptest! {
        // complete multiplicativity in the numerator for fixed odd prime l
        #[test]
        fn multiplicative_in_numerator(a in -200i64..200, b in -200i64..200) {
            for l in [3i64, 7, 11, 23, 31] {
                prop_assert_eq!(
                    kronecker_i64(a * b, l),
                    kronecker_i64(a, l) * kronecker_i64(b, l)
                );
            }
        }
    }
}
