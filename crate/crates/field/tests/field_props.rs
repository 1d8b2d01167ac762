use kummer_field::{BigRational, ParamGuard, Poly, RationalFunction, Var};
use num_traits::Zero;
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = Poly> {
    let term = (-4i64..=4, 0u16..3, 0u16..3, 0u16..2);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        let mut p = Poly::zero();
        for (c, a, b, e) in ts {
            let m = Poly::var(Var::S).pow(a.into())
                * Poly::var(Var::T).pow(b.into())
                * Poly::var(Var::R).pow(e.into());
            p = p + m * Poly::int(c);
        }
        p
    })
}

fn st_poly() -> impl Strategy<Value = Poly> {
    small_poly().prop_map(|p| p.eval_var(Var::R, &BigRational::zero()))
}

fn nonzero(p: Poly) -> Poly {
    if p.is_zero() {
        Poly::one()
    } else {
        p
    }
}

fn rf() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), small_poly()).prop_map(|(n, d)| RationalFunction::new(n, nonzero(d)).unwrap())
}

fn st_rf() -> impl Strategy<Value = RationalFunction> {
    (st_poly(), st_poly()).prop_map(|(n, d)| RationalFunction::new(n, nonzero(d)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_and_multiplication_associate(a in rf(), b in rf(), c in rf()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in rf(), b in rf(), c in rf()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverse_cancels(a in rf()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normalize_is_idempotent(n in small_poly(), d in small_poly(), k in small_poly()) {
        let d = nonzero(d);
        let k = nonzero(k);
        let f = RationalFunction::new(n.clone(), d.clone()).unwrap();
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        // n*k / d*k is the same fraction
        let scaled = RationalFunction::new(&n * &k, &d * &k).unwrap();
        prop_assert_eq!(scaled, f);
    }

    #[test]
    fn specialize_is_a_homomorphism(a in st_rf(), b in st_rf(), s0 in -6i64..7, t0 in -6i64..7) {
        let s0 = BigRational::from_integer(s0.into());
        let t0 = BigRational::from_integer(t0.into());
        let sa = a.specialize(&s0, &t0, ParamGuard::None);
        let sb = b.specialize(&s0, &t0, ParamGuard::None);
        if let (Ok(x), Ok(y)) = (sa, sb) {
            prop_assert_eq!((&a * &b).specialize(&s0, &t0, ParamGuard::None), Ok(&x * &y));
            prop_assert_eq!((&a + &b).specialize(&s0, &t0, ParamGuard::None), Ok(&x + &y));
        }
    }

    #[test]
    fn printer_round_trips(a in rf()) {
        let text = a.to_string();
        let back: RationalFunction = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn only_plus_minus_one_are_torsion(a in rf()) {
        prop_assume!(!a.is_zero());
        let expected = a.is_one() || (-&a).is_one();
        prop_assert_eq!(a.torsion_unit_test(), Ok(expected));
    }

    #[test]
    fn squares_have_square_roots(a in rf()) {
        let root = (&a * &a).nth_root(2).unwrap();
        prop_assert!(root == a || root == -&a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_divides_and_is_maximal(a in small_poly(), b in small_poly(), g in small_poly()) {
        let g = nonzero(g);
        let x = &a * &g;
        let y = &b * &g;
        let d = kummer_field::gcd::gcd(&x, &y);
        if !x.is_zero() {
            prop_assert!(x.div_exact(&d).is_some());
        }
        if !y.is_zero() {
            prop_assert!(y.div_exact(&d).is_some());
        }
        prop_assert!(d.div_exact(&g).is_some());
    }
}
