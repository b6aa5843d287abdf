use proptest::prelude::*;

use loopstab::homotopies::{bott, bott_invert, InvertMode};
use loopstab::json::{decomposition_from_json, decomposition_to_json, op_from_json, op_to_json, unit_from_json, unit_to_json};
use loopstab::loops::{Loop, RLoop, RMat};
use loopstab::operators::{FMap, ZOp};
use loopstab::oracle::{dense_mul, truncate, Bindings};
use loopstab::random;
use loopstab::scalar::{Mat, Rational, Ring};

type Op = ZOp<RMat>;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn mat(d: usize) -> impl Strategy<Value = RMat> {
    prop::collection::vec(rational(), d * d).prop_map(move |v| Mat::from_fn(d, |i, j| v[i * d + j].clone()))
}

fn rloop(d: usize) -> impl Strategy<Value = RLoop> {
    prop::collection::vec((-2i64..=2, mat(d)), 0..3).prop_map(move |ts| {
        let mut a = Loop::zero(&d);
        for (k, c) in ts {
            a.add_term(k, &c);
        }
        a
    })
}

fn op(d: usize) -> impl Strategy<Value = Op> {
    (rloop(d), rloop(d), prop::collection::vec(((-2i64..=2, -2i64..=2), mat(d)), 0..3)).prop_map(move |(l, h, f)| {
        let mut finite = FMap::new();
        for (ij, x) in f {
            if !x.is_zero() {
                finite.insert(ij, x);
            }
        }
        ZOp::new(l, h, finite)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        match a.recip() {
            Some(r) => prop_assert!(a.mul(&r).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn loop_product_is_associative(a in rloop(2), b in rloop(2), c in rloop(2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.reflect().reflect(), a);
    }

    #[test]
    fn operator_product_is_associative(a in op(2), b in op(2), c in op(2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn reflections_are_involutions(a in op(2)) {
        prop_assert_eq!(a.reflect_halves().reflect_halves(), a.clone());
        prop_assert_eq!(a.conj_qhat().conj_qhat(), a);
    }

    #[test]
    fn entries_follow_the_parts(a in op(1), i in -5i64..=5, j in -5i64..=5) {
        let mut want = a.laurent().coeff(i - j);
        if i >= 0 && j >= 0 {
            want = want.add(&a.half().coeff(i - j));
        }
        if let Some(x) = a.finite().get(&(i, j)) {
            want = want.add(x);
        }
        prop_assert_eq!(a.entry(i, j), want);
    }

    #[test]
    fn dense_products_agree_on_the_safe_region(a in op(2), b in op(2)) {
        let win = [(-8i64, 8i64)];
        let ta = truncate(&a, &win, &Bindings::none()).unwrap();
        let tb = truncate(&b, &win, &Bindings::none()).unwrap();
        let prod = dense_mul(&ta, &tb).unwrap();
        prop_assert!(prod.safe_count() > 0);
        let exact = truncate(&a.mul(&b), &win, &Bindings::none()).unwrap();
        prop_assert!(prod.agrees_with(&exact).unwrap());
    }

    #[test]
    fn builder_units(seed in any::<u64>(), d in 1usize..=3, len in 1usize..=4) {
        let mut r = random::rng(seed);
        let a = random::loop_unit(&mut r, d, len);
        prop_assert!(a.verify());
        let b = bott(&a);
        prop_assert!(b.op().mul(b.op()).is_one());
        let a1_inv = a.forward.eval_sign(1).try_inverse().unwrap();
        prop_assert_eq!(bott_invert(b.op(), InvertMode::Z1).unwrap(), a.forward.scale_right(&a1_inv));
        prop_assert_eq!(unit_from_json(&unit_to_json(&a)).unwrap(), a);
        prop_assert_eq!(op_from_json::<Rational>(&op_to_json(b.op())).unwrap(), b.into_op());
    }

    #[test]
    fn decompositions_round_trip(seed in any::<u64>(), d in 1usize..=3, s in 1usize..=3) {
        let dec = random::decomposition(&mut random::rng(seed), d, s);
        prop_assert_eq!(decomposition_from_json(&decomposition_to_json(&dec)).unwrap(), dec);
    }
}
