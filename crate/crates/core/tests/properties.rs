use isobaric_mf::companion::{gfp_values, glp_trace, CoreParams, HookTable};
use isobaric_mf::identities::{check_product_params, check_duality};
use isobaric_mf::localmf::{convolve, inverse, recover_params, LocalMF};
use isobaric_mf::ring::{scalar_format, scalar_parse, Poly, RingKind};
use isobaric_mf::roots::conv_power;
use isobaric_mf::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big_int() -> impl Strategy<Value = BigInt> {
    prop_oneof![
        (-1000i64..1000).prop_map(BigInt::from),
        any::<i64>().prop_map(|x| BigInt::from(x) * BigInt::from(x) * BigInt::from(x.signum()))
    ]
}

fn big_rat() -> impl Strategy<Value = BigRational> {
    (big_int(), 1i64..500).prop_map(|(n, d)| BigRational::new(n, d.into()))
}

fn int_s() -> impl Strategy<Value = Scalar> {
    big_int().prop_map(Scalar::Int)
}

fn rat_s() -> impl Strategy<Value = Scalar> {
    big_rat().prop_map(Scalar::Rat)
}

fn polyp_s() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(big_int(), 0..5).prop_map(|c| Scalar::PolyP(Poly::new(c)))
}

fn ratpolyp_s() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(big_rat(), 0..5).prop_map(|c| Scalar::RatPolyP(Poly::new(c)))
}

fn mod_s(m: u64) -> impl Strategy<Value = Scalar> {
    any::<i64>().prop_map(move |v| Scalar::modular(v, m).unwrap())
}

fn any_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![int_s(), rat_s(), polyp_s(), ratpolyp_s(), mod_s(7), mod_s(1_000_003)]
}

fn same_ring_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop_oneof![
        (int_s(), int_s(), int_s()),
        (rat_s(), rat_s(), rat_s()),
        (polyp_s(), polyp_s(), polyp_s()),
        (ratpolyp_s(), ratpolyp_s(), ratpolyp_s()),
        (mod_s(13), mod_s(13), mod_s(13)),
    ]
}

fn int_core(max_k: usize) -> impl Strategy<Value = CoreParams> {
    prop::collection::vec(-5i64..=5, 1..=max_k).prop_filter_map("t_k must be nonzero", |mut t| {
        if *t.last().unwrap() == 0 {
            *t.last_mut().unwrap() = 1;
        }
        CoreParams::finite(t.into_iter().map(Scalar::int).collect()).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn int_roundtrip(x in int_s()) {
        prop_assert_eq!(scalar_parse(&scalar_format(&x)).unwrap(), x);
    }

    #[test]
    fn rat_roundtrip(x in rat_s()) {
        prop_assert_eq!(scalar_parse(&scalar_format(&x)).unwrap(), x);
    }

    #[test]
    fn polyp_roundtrip(x in polyp_s()) {
        prop_assert_eq!(scalar_parse(&scalar_format(&x)).unwrap(), x);
    }

    #[test]
    fn ratpolyp_roundtrip(x in ratpolyp_s()) {
        prop_assert_eq!(scalar_parse(&scalar_format(&x)).unwrap(), x);
    }

    #[test]
    fn mod_roundtrip(x in prop_oneof![mod_s(2), mod_s(97), mod_s(1_000_003)]) {
        prop_assert_eq!(scalar_parse(&scalar_format(&x)).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms((a, b, c) in same_ring_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero(a.ring()));
        prop_assert_eq!(&a * &Scalar::one(a.ring()), a.clone());
    }

    #[test]
    fn promotion_commutes_with_arithmetic(a in int_s(), b in int_s()) {
        for ring in [RingKind::Rational, RingKind::PolyP, RingKind::RatPolyP] {
            let sum = (&a + &b).promote(ring).unwrap();
            prop_assert_eq!(sum, a.promote(ring).unwrap() + b.promote(ring).unwrap());
        }
    }

    #[test]
    fn json_roundtrip(x in any_scalar()) {
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&text).unwrap(), x);
    }

    #[test]
    fn recover_inverts_from_params(t in int_core(4), horizon in 6usize..14) {
        let f = LocalMF::from_params(&t, horizon).unwrap();
        let rec = recover_params(f.values()).unwrap();
        for (j, x) in rec.params().iter().enumerate() {
            let want = t.get(j + 1).unwrap_or_else(|| Scalar::int(0));
            prop_assert_eq!(x, &want);
        }
    }

    #[test]
    fn duality_and_products(a in int_core(3), b in int_core(3)) {
        let f = LocalMF::from_params(&a, 12).unwrap();
        let g = LocalMF::from_params(&b, 12).unwrap();
        prop_assert!(check_duality(&f).unwrap().pass);
        prop_assert!(check_product_params(&f, &g).unwrap().pass);
        let id = convolve(&f, &inverse(&f).unwrap()).unwrap();
        prop_assert!(id.is_identity());
    }

    #[test]
    fn convolution_is_commutative(a in int_core(3), b in int_core(3)) {
        let f = LocalMF::from_params(&a, 10).unwrap();
        let g = LocalMF::from_params(&b, 10).unwrap();
        let (fg, gf) = (convolve(&f, &g).unwrap(), convolve(&g, &f).unwrap());
        prop_assert_eq!(fg.values(), gf.values());
    }

    #[test]
    fn orbit_rows_step_both_ways(t in int_core(4), n in -6i64..10) {
        let table = HookTable::new(&t, -8, 14).unwrap();
        let f = gfp_values(&t, 14).unwrap();
        if n >= 0 {
            prop_assert_eq!(table.get(n, 0), f[n as usize].promote(RingKind::Rational).unwrap());
        }
        // Every column satisfies the recursion.
        for j in 0..t.k() {
            let k = t.k() as i64;
            let rhs = (1..=k).fold(Scalar::zero(table.get(n + k, j).ring()), |acc, i| {
                acc + t.get(i as usize).unwrap().promote(table.get(n + k - i, j).ring()).unwrap() * table.get(n + k - i, j)
            });
            prop_assert_eq!(table.get(n + k, j), rhs);
        }
    }

    #[test]
    fn lucas_is_power_sum_derivative(t in int_core(4)) {
        // n F_n = Σ_{j=1}^{n} G_j F_{n-j}
        let f = gfp_values(&t, 10).unwrap();
        for n in 1..=10usize {
            let rhs = (1..=n).fold(Scalar::int(0), |acc, j| acc + glp_trace(&t, j as i64).unwrap() * f[n - j].clone());
            prop_assert_eq!(Scalar::int(n as i64) * f[n].clone(), rhs);
        }
    }

    #[test]
    fn half_powers_square_back(t in int_core(3)) {
        let f = LocalMF::from_params(&t, 10).unwrap();
        let half = conv_power(&f, &BigRational::new(1.into(), 2.into()), 10).unwrap().to_local().unwrap();
        let sq = convolve(&half, &half).unwrap();
        let want = f.promote(RingKind::Rational).unwrap();
        prop_assert_eq!(sq.values(), want.values());
    }
}
