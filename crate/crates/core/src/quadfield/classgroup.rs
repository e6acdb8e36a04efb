use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{AbstractGroup, FiniteAbelianGroup, GroupElement};
use super::forms::{reduced_definite_forms, reduced_indefinite_forms, QuadForm};
use super::unit::fundamental_unit;
use super::QuadField;

/// Class group data of a quadratic field, realized on binary quadratic form
/// classes.
///
/// The underlying group is the form class group: Cl_K for imaginary K, and
/// the narrow class group Cl_K^+ for real K. Both orders h and h^+ are
/// reported; for real K with norm(ε₀) = +1 they differ by a factor of 2.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    field: QuadField,
    engine: AbstractGroup<QuadForm>,
    reps: Vec<QuadForm>,
    h: BigInt,
    h_plus: BigInt,
    unit_norm: Option<i32>,
}

impl ClassGroup {
    pub fn new(field: &QuadField) -> Self {
        let d = field.discriminant();
        let mut reps: Vec<QuadForm> = if field.is_imaginary() {
            reduced_definite_forms(d)
        } else {
            // one canonical representative per cycle of reduced forms
            let mut out: Vec<QuadForm> = Vec::new();
            for f in reduced_indefinite_forms(d) {
                let c = f.canonical_indefinite();
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            out
        };
        reps.sort_by(|f, g| (&f.a, &f.b, &f.c).cmp(&(&g.a, &g.b, &g.c)));
        let id = field.principal_form().canonical();
        let engine = AbstractGroup::analyze(&reps, &id, |f, g| f.compose(g));
        let h_plus = BigInt::from(reps.len());
        let (h, unit_norm) = if field.is_imaginary() {
            (h_plus.clone(), None)
        } else {
            let n = fundamental_unit(field).expect("real field").norm;
            let h = if n == -1 {
                h_plus.clone()
            } else {
                assert!((&h_plus % 2u32).is_zero());
                &h_plus / 2
            };
            (h, Some(n))
        };
        ClassGroup {
            field: field.clone(),
            engine,
            reps,
            h,
            h_plus,
            unit_norm,
        }
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    /// Class number h = |Cl_K|.
    pub fn h(&self) -> &BigInt {
        &self.h
    }

    /// Narrow class number h^+ = |Cl_K^+|.
    pub fn h_plus(&self) -> &BigInt {
        &self.h_plus
    }

    /// Norm of the fundamental unit (real fields only).
    pub fn unit_norm(&self) -> Option<i32> {
        self.unit_norm
    }

    /// The form class group (narrow class group for real fields).
    pub fn group(&self) -> &FiniteAbelianGroup {
        self.engine.group()
    }

    /// Canonical class representatives, sorted.
    pub fn representatives(&self) -> &[QuadForm] {
        &self.reps
    }

    /// Discrete log of a form class in invariant coordinates.
    pub fn dlog(&self, f: &QuadForm) -> GroupElement {
        self.engine
            .dlog(&f.canonical())
            .expect("form of matching discriminant")
    }

    /// A form realizing an invariant-coordinate class.
    pub fn form_for(&self, e: &GroupElement) -> QuadForm {
        let mut f = self.field.principal_form().canonical();
        for (g, exp) in self.engine.word_for(e) {
            // inverse class is represented by the conjugate form
            let base = if exp.is_negative() {
                QuadForm::new(g.a.clone(), -g.b.clone(), g.c.clone()).canonical()
            } else {
                g
            };
            let mut k = exp.abs();
            while k.is_positive() {
                f = f.compose(&base);
                k -= 1u32;
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_class_numbers() {
        // (D, h): classical table values
        for (d, h) in [(-3i64, 1u32), (-4, 1), (-7, 1), (-8, 1), (-23, 3), (-47, 5), (-163, 1)] {
            let cl = ClassGroup::new(&QuadField::new(d).unwrap());
            assert_eq!(cl.h(), &BigInt::from(h), "D={d}");
            assert_eq!(cl.h_plus(), &BigInt::from(h), "D={d}");
        }
    }

    #[test]
    fn d_minus_23_structure() {
        let cl = ClassGroup::new(&QuadField::new(-23).unwrap());
        assert_eq!(cl.group().invariant_factors(), &[BigInt::from(3)]);
        let forms: Vec<(i64, i64, i64)> = [(1, 1, 6), (2, 1, 3), (2, -1, 3)].to_vec();
        for (a, b, c) in forms {
            let f = QuadForm::new(a.into(), b.into(), c.into());
            assert!(cl.representatives().contains(&f));
        }
    }

    #[test]
    fn real_narrow_vs_wide() {
        // norm(ε₀) = −1: h = h^+
        for d in [5i64, 8, 13, 17, 29] {
            let cl = ClassGroup::new(&QuadField::new(d).unwrap());
            assert_eq!(cl.h(), cl.h_plus(), "D={d}");
            assert_eq!(cl.unit_norm(), Some(-1), "D={d}");
        }
        // norm(ε₀) = +1: h^+ = 2h
        for (d, h) in [(12i64, 1u32), (21, 1), (24, 1), (33, 1)] {
            let cl = ClassGroup::new(&QuadField::new(d).unwrap());
            assert_eq!(cl.unit_norm(), Some(1), "D={d}");
            assert_eq!(cl.h(), &BigInt::from(h), "D={d}");
            assert_eq!(cl.h_plus(), &BigInt::from(2 * h), "D={d}");
        }
    }

    #[test]
    fn dlog_is_homomorphism() {
        let cl = ClassGroup::new(&QuadField::new(-47).unwrap());
        let reps = cl.representatives().to_vec();
        for f in &reps {
            for g in &reps {
                let sum = cl.group().add(&cl.dlog(f), &cl.dlog(g));
                assert_eq!(sum, cl.dlog(&f.compose(g)));
            }
        }
    }

    #[test]
    fn form_for_round_trip() {
        let cl = ClassGroup::new(&QuadField::new(-23).unwrap());
        for f in cl.representatives().to_vec() {
            let e = cl.dlog(&f);
            assert_eq!(cl.dlog(&cl.form_for(&e)), e);
        }
    }

    #[test]
    fn p_part_agreement() {
        // ord_p(h) = ord_p(h^+) for odd p, since h^+/h ∈ {1, 2}
        for d in [5i64, 12, 40, 60, 65, -23, -31] {
            let cl = ClassGroup::new(&QuadField::new(d).unwrap());
            let ratio = cl.h_plus() / cl.h();
            assert!(ratio == BigInt::from(1) || ratio == BigInt::from(2), "D={d}");
        }
    }
}
