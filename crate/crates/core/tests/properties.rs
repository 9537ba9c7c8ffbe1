mod common;

use common::*;
use liouvred_core::basis::PivotOrder;
use liouvred_core::reduction::Reducer;
use liouvred_core::syntax::{parse, print};
use liouvred_core::{Elem, Poly, Tower};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn setup(seed: u64, which: usize) -> (StdRng, Tower) {
    (StdRng::seed_from_u64(seed), tower_pool()[which].clone())
}

/// Random polynomial in the top generator of `t` with coefficients in the
/// lower generators.
fn top_poly(rng: &mut StdRng, t: &Tower) -> Poly {
    let n = t.height();
    loop {
        let e = rand_poly(rng, t, 2, 4);
        if let Some(p) = e.as_poly_in(t.var_of(n)) {
            if !p.is_zero() {
                return p;
            }
        }
    }
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 128, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn gcd_agrees_with_euclid(seed in any::<u64>(), which in 0usize..8) {
        let (mut rng, t) = setup(seed, which);
        let c = top_poly(&mut rng, &t);
        let a = top_poly(&mut rng, &t).mul(&c);
        let b = top_poly(&mut rng, &t).mul(&c);
        let g = Poly::gcd(&a, &b);
        prop_assert_eq!(&g, &Poly::ext_gcd(&a, &b).0);
        prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
        prop_assert!(g.rem(&c.monic()).is_zero());
    }

    #[test]
    fn inverse_modulo_is_an_inverse(seed in any::<u64>(), which in 0usize..8) {
        let (mut rng, t) = setup(seed, which);
        let a = top_poly(&mut rng, &t);
        let m = top_poly(&mut rng, &t);
        prop_assume!(m.degi() > 0);
        let coprime = Poly::ext_gcd(&a, &m).0.is_one();
        match a.inv_mod(&m) {
            Some(s) => {
                prop_assert!(coprime);
                prop_assert!(a.mul(&s).rem(&m).is_one());
                prop_assert!(s.degi() < m.degi());
            }
            None => prop_assert!(!coprime),
        }
    }

    #[test]
    fn field_operations_are_consistent(seed in any::<u64>(), which in 0usize..8) {
        let (mut rng, t) = setup(seed, which);
        let a = rand_frac(&mut rng, &t, 2);
        let b = rand_frac(&mut rng, &t, 2);
        let c = rand_frac(&mut rng, &t, 2);
        prop_assert_eq!(&(&a / &b) * &b, a.clone());
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivation_obeys_leibniz(seed in any::<u64>(), which in 0usize..8) {
        let (mut rng, t) = setup(seed, which);
        let a = rand_frac(&mut rng, &t, 2);
        let b = rand_frac(&mut rng, &t, 2);
        prop_assert_eq!(t.derive(&(&a * &b)), &(&t.derive(&a) * &b) + &(&a * &t.derive(&b)));
        prop_assert_eq!(t.derive(&(&a + &b)), &t.derive(&a) + &t.derive(&b));
    }

    #[test]
    fn printed_elements_parse_back(seed in any::<u64>(), which in 0usize..8) {
        let (mut rng, t) = setup(seed, which);
        let a = rand_frac(&mut rng, &t, 3);
        let text = print(&a, &t);
        prop_assert_eq!(parse(&text, &t).unwrap(), a);
    }

    #[test]
    fn pivot_orders_differ_by_an_image(seed in any::<u64>(), which in 0usize..8) {
        let (mut rng, t) = setup(seed, which);
        let n = t.height();
        let h = rand_h(&mut rng, &t);
        let f = rand_frac(&mut rng, &t, 2);
        let mut asc = Reducer::with_order(t.clone(), PivotOrder::Ascending);
        let mut desc = Reducer::with_order(t.clone(), PivotOrder::Descending);
        let ra = asc.remainder(&f, &h, n).unwrap();
        let rd = desc.remainder(&f, &h, n).unwrap();
        prop_assert_eq!(asc.remainder(&rd, &h, n).unwrap(), ra.clone());
        let (g, r) = asc.rpair(&(&ra - &rd), &h, n).unwrap();
        prop_assert!(r.is_zero());
        prop_assert_eq!(&t.derive(&g) + &(&h * &g), &ra - &rd);
    }

    #[test]
    fn remainder_of_an_image_vanishes(seed in any::<u64>(), which in 0usize..8) {
        let (mut rng, t) = setup(seed, which);
        let n = t.height();
        let g = rand_frac(&mut rng, &t, 2);
        let f = t.derive(&g);
        let mut red = Reducer::new(t.clone());
        let (g0, r) = red.rpair(&f, &Elem::zero(), n).unwrap();
        prop_assert!(r.is_zero());
        prop_assert!(t.derive(&(&g0 - &g)).is_zero());
    }
}
