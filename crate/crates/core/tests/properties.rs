use proptest::prelude::*;

use kr_crystal::laurent::{q_binomial, LaurentPoly};
use kr_crystal::verify::{c_sequences, norm_u};
use kr_crystal::weight::lambda_of_c;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn order_is_translation_invariant(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.q_cmp(&b), (&a + &c).q_cmp(&(&b + &c)));
    }

    #[test]
    fn valuation_is_additive(a in poly(), b in poly()) {
        let prod = &a * &b;
        match (a.valuation(), b.valuation()) {
            (Some(x), Some(y)) => prop_assert_eq!(prod.valuation(), Some(x + y)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn display_round_trips(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn q_binomial_at_one(l in 0i64..=20, m in 0i64..=20) {
        prop_assume!(m <= l);
        let b = q_binomial(l, m).unwrap();
        prop_assert!(b.eval_at_one() > 0.into());
        prop_assert_eq!(b.valuation(), Some(-m * (l - m)));
    }

    #[test]
    fn lambda_of_c_is_dominant(k in 1usize..=6, l in 0u32..=4, pick in 0usize..100) {
        let n = k + 2;
        let cs = c_sequences(k, l);
        let c = &cs[pick % cs.len()];
        let w = lambda_of_c(n.max(4), k, l, c).unwrap();
        prop_assert!(w.is_dominant());
        let u = norm_u(n.max(4), k, l, c).unwrap();
        prop_assert!(u.in_c_plus_qa(1));
    }
}
