use langlands_gl::order::closure_leq_bfs;
use langlands_gl::*;
use proptest::prelude::*;

fn multisegment(max_len: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec((-3i64..3, 0i64..3), 1..max_len).prop_map(|v| {
        let pairs: Vec<(i64, i64)> = v.into_iter().map(|(a, l)| (a, a + l)).collect();
        Multisegment::ints(&pairs)
    })
}

fn std_elem(m: Multisegment) -> PadicElement {
    KElement::single(Basis::PadicStd, m)
}

proptest! {
    #[test]
    fn dualize_is_an_involution(m in multisegment(6)) {
        prop_assert_eq!(m.dualize().dualize(), m.clone());
        prop_assert_eq!(weight_of(&m.dualize()), weight_of(&m).dualize());
    }

    #[test]
    fn moves_preserve_weight(m in multisegment(6)) {
        let phi = weight_of(&m);
        for n in elementary_moves(&m) {
            prop_assert_eq!(weight_of(&n), phi.clone());
            prop_assert!(orbit_dimension(&n) > orbit_dimension(&m));
        }
    }

    #[test]
    fn closure_matches_rank_dominance(m in multisegment(5), pick in any::<prop::sample::Index>()) {
        let all = enumerate_multisegments(&weight_of(&m), 16).unwrap();
        let n = pick.get(&all);
        let dominated = rank_profile(&m).dominated_by(&rank_profile(n));
        prop_assert_eq!(closure_leq(&m, n).unwrap(), dominated);
        prop_assert_eq!(closure_leq_bfs(&m, n).unwrap(), dominated);
    }

    #[test]
    fn closure_is_dualize_invariant(m in multisegment(5), pick in any::<prop::sample::Index>()) {
        let all = enumerate_multisegments(&weight_of(&m), 16).unwrap();
        let n = pick.get(&all);
        prop_assert_eq!(closure_leq(&m, n).unwrap(), closure_leq(&m.dualize(), &n.dualize()).unwrap());
    }

    #[test]
    fn jordan_round_trip(m in multisegment(6)) {
        prop_assert_eq!(jordan_type(&jordan_rep(&m)), m);
    }

    #[test]
    fn derivatives_are_multiplicative(
        x in multisegment(3),
        y in multisegment(3),
        k in -3i64..5,
        right in any::<bool>(),
    ) {
        let side = if right { Side::Right } else { Side::Left };
        let k = Point::int(k);
        let product = multiply_standards(&std_elem(x.clone()), &std_elem(y.clone())).unwrap();
        let lhs = bz_derivative(side, k, &product).unwrap();
        let dx = bz_derivative(side, k, &std_elem(x)).unwrap();
        let dy = bz_derivative(side, k, &std_elem(y)).unwrap();
        prop_assert_eq!(lhs, multiply_standards(&dx, &dy).unwrap());
    }

    #[test]
    fn right_derivative_is_conjugate_left(m in multisegment(4), k in -3i64..5) {
        let k = Point::int(k);
        let right = bz_derivative(Side::Right, k, &std_elem(m.clone())).unwrap();
        let left = bz_derivative(Side::Left, -k, &std_elem(m.dualize())).unwrap();
        let back = KElement::from_terms(Basis::PadicStd, left.terms().map(|(x, c)| (x.dualize(), c)));
        prop_assert_eq!(right, back);
    }
}

fn dominant(gaps: &[i64]) -> Vec<i64> {
    let mut v = vec![0];
    for g in gaps.iter().rev() {
        v.insert(0, v[0] + g);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translation_is_adjoint_to_pushpull(
        gl in prop::collection::vec(0i64..3, 0..3),
        gr in prop::collection::vec(0i64..3, 0..3),
        j in 1usize..4,
        c in 1usize..4,
        right in any::<bool>(),
    ) {
        let n = gl.len().min(gr.len()) + 1;
        let block = RealBlock::ints(&dominant(&gl[..n - 1]), &dominant(&gr[..n - 1])).unwrap();
        let d = if right {
            TranslationDatum::increment_right(&block, j, c)
        } else {
            TranslationDatum::decrement_left(&block, j, c)
        };
        prop_assume!(d.is_ok());
        let d = d.unwrap();
        for b in d.target.cosets() {
            let f = KElement::single(Basis::SheafStdReal, b.clone());
            let pf = pushpull(&d, &f).unwrap();
            for a in d.source.cosets() {
                let x = KElement::single(Basis::RealStd, a.clone());
                let lhs = pairing_real(&d.target, &translate(&d, &x).unwrap(), &f).unwrap();
                prop_assert_eq!(lhs, pairing_real(&d.source, &x, &pf).unwrap());
            }
        }
    }
}
