//! Randomized algebraic properties: field axioms for the scalar type,
//! Laurent-polynomial ring axioms, and coordinate-ring identities on
//! small random elements. Everything is exact, so every property is an
//! equality of canonical forms.

use num::BigRational;
use ospq_core::context::Context;
use ospq_core::coordring::{counit0, evaluate, multiply, PWElement, PWIndex};
use ospq_core::scalars::{LaurentPoly, RatFunc};
use ospq_core::uqalg::Word;
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p = &p + &LaurentPoly::term(e, BigRational::from_integer(c.into()));
        }
        p
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_map(|(a, b)| {
        if b.is_zero() {
            RatFunc::from_poly(a)
        } else {
            RatFunc::new(a, b).unwrap()
        }
    })
}

fn pw_element() -> impl Strategy<Value = PWElement> {
    proptest::collection::vec(
        ((0i64..=1, 0usize..3, 0usize..3), -2i64..=2),
        0..3,
    )
    .prop_map(|terms| {
        let mut f = PWElement::zero();
        for ((m, i, j), c) in terms {
            let lam = vec![m];
            let d = if m == 0 { 1 } else { 3 };
            let idx = PWIndex {
                lambda: lam,
                row: i % d,
                col: j % d,
            };
            f.add_term(idx, &RatFunc::from_int(c));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &RatFunc::zero(), a.clone());
        prop_assert_eq!(&a * &RatFunc::one(), a.clone());
        prop_assert_eq!(&a - &a, RatFunc::zero());
        if !a.is_zero() {
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn ratfunc_canonical_equality(a in ratfunc(), c in ratfunc()) {
        // scaling numerator and denominator by the same nonzero factor
        // produces the structurally identical canonical form
        prop_assume!(!c.is_zero());
        prop_assert_eq!(&(&a * &c) / &c, a);
    }

    #[test]
    fn ratfunc_evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc()) {
        let q0 = BigRational::new(3.into(), 2.into());
        if let (Ok(va), Ok(vb), Ok(vs), Ok(vp)) = (
            a.eval(&q0),
            b.eval(&q0),
            (&a + &b).eval(&q0),
            (&a * &b).eval(&q0),
        ) {
            prop_assert_eq!(vs, &va + &vb);
            prop_assert_eq!(vp, va * vb);
        }
    }

    #[test]
    fn coordinate_ring_multiplication_is_associative(
        f in pw_element(), g in pw_element(), h in pw_element(),
    ) {
        let ctx = Context::new(1).unwrap();
        let lhs = multiply(&ctx, &multiply(&ctx, &f, &g).unwrap(), &h).unwrap();
        let rhs = multiply(&ctx, &f, &multiply(&ctx, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coordinate_ring_product_evaluates_by_coproduct(f in pw_element(), g in pw_element()) {
        // (fg)(x) for x = 1 is epsilon(f) epsilon(g): the counit is an
        // algebra homomorphism
        let ctx = Context::new(1).unwrap();
        let prod = multiply(&ctx, &f, &g).unwrap();
        let lhs = counit0(&ctx, &prod).unwrap();
        let rhs = &counit0(&ctx, &f).unwrap() * &counit0(&ctx, &g).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        // and the same value is the evaluation against the empty word
        prop_assert_eq!(evaluate(&ctx, &prod, &Word::one()).unwrap(), lhs);
    }
}
