use knotforge::construct::{realize_knot, realize_link_n};
use knotforge::diagram::{
    clasping, conway_skein, insert_reverse_twist, parallel_pairs, reverse_pairs,
};
use knotforge::surgery::{
    apply_tangle_surgery, concordance_pair_surgery, large_volume_triples, stallings_full_twist,
    stallings_sites, surgery_triples, v2_pretzel,
};
use knotforge::{ConwayPoly, Diagram};
use proptest::prelude::*;

fn odd() -> impl Strategy<Value = i64> {
    (-25i64..=25).prop_map(|x| 2 * x + 1)
}

fn braid_diagram() -> impl Strategy<Value = Diagram> {
    (2usize..=4).prop_flat_map(|m| {
        let g = m as i32 - 1;
        prop::collection::vec(
            (1..=g).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]),
            1..=8,
        )
        .prop_map(move |w| Diagram::braid_closure(m, &w).unwrap())
    })
}

fn knot_coeffs() -> impl Strategy<Value = Vec<i64>> {
    (1usize..=3).prop_flat_map(|d| {
        (
            prop::collection::vec(-3i64..=3, d - 1),
            prop_oneof![-3i64..=-1, 1i64..=3],
        )
            .prop_map(|(mut a, last)| {
                a.push(last);
                a
            })
    })
}

#[test]
fn triple_identities() {
    for k in (-5i64..=5).filter(|&k| k != 0) {
        for n in -5i64..=5 {
            let t = surgery_triples(k, n).unwrap();
            let (p, q, r) = (t.p, t.q, t.r);
            assert_eq!(
                (p - 1) * q + (p - 1) * r + q * r + 1,
                0,
                "(A) for k={k} n={n}"
            );
            assert_eq!(
                (p + 1) * q + (p + 1) * r + q * r + 1,
                4 * k,
                "(B) for k={k} n={n}"
            );
            assert_eq!(p % 2, 0);
            assert_eq!(q + r, 2 * k);
            assert!(t.is_valid());
        }
    }
}

#[test]
fn v2_base_case() {
    for k in 1..=5 {
        let t = surgery_triples(k, 0).unwrap();
        assert_eq!((t.p, t.q, t.r), (0, 1, 2 * k - 1));
        assert_eq!(v2_pretzel(t.p + 1, t.q, t.r).unwrap(), k);
        assert_eq!(v2_pretzel(t.p - 1, t.q, t.r).unwrap(), 0);
    }
}

#[test]
fn large_volume_identity() {
    let v = large_volume_triples(99).unwrap();
    assert_eq!(v[0], (7, 5, -3));
    assert_eq!(v.len(), 48);
    for (p, q, r) in v {
        assert_eq!(p * q + p * r + q * r, -1);
        assert_eq!(q + r, 2);
        assert!(p > 1 && q > 1 && -r > 1);
        assert!(p % 2 != 0 && q % 2 != 0 && r % 2 != 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn v2_symmetric(a in odd(), b in odd(), c in odd()) {
        let v = v2_pretzel(a, b, c).unwrap();
        prop_assert_eq!(v2_pretzel(b, a, c).unwrap(), v);
        prop_assert_eq!(v2_pretzel(c, b, a).unwrap(), v);
        prop_assert_eq!(4 * v, a * b + a * c + b * c + 1);
    }

    #[test]
    fn v2_difference(k in (1i64..=5).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]), n in -5i64..=5) {
        let t = surgery_triples(k, n).unwrap();
        let diff = v2_pretzel(t.p + 1, t.q, t.r).unwrap() - v2_pretzel(t.p - 1, t.q, t.r).unwrap();
        prop_assert_eq!(diff, (t.q + t.r) / 2);
        prop_assert_eq!(diff, k);
    }

    #[test]
    fn clasping_changes_components(d in braid_diagram(), pick in any::<prop::sample::Index>(), sign in prop_oneof![Just(1i8), Just(-1i8)]) {
        let i = pick.index(d.crossing_count());
        let c = clasping(&d, i, sign).unwrap();
        prop_assert_eq!(c.component_count().abs_diff(d.component_count()), 1);
    }

    #[test]
    fn full_twist_residual(d in braid_diagram(), pick in any::<prop::sample::Index>(), sense in prop_oneof![Just(1i8), Just(-1i8)]) {
        let pairs: Vec<_> = parallel_pairs(&d).into_iter().chain(reverse_pairs(&d)).collect();
        if !pairs.is_empty() {
            let (e, res) = stallings_full_twist(&d, pairs[pick.index(pairs.len())], sense).unwrap();
            prop_assert_eq!(e.crossing_count(), d.crossing_count() + 2);
            prop_assert_eq!(conway_skein(&e).unwrap(), &conway_skein(&d).unwrap() + &res);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn surgery_on_realized_knots(a in knot_coeffs(), n in -2i64..=2) {
        let nabla = ConwayPoly::from_coeff_vector(&a);
        let r = realize_knot(&nabla).unwrap();
        let site = r.surgery_site.unwrap();
        let mirrored = r.diagram.crossings()[site[0]].sign < 0;
        let t = surgery_triples(1, n).unwrap();
        let d = apply_tangle_surgery(&r.diagram, &site, &t, mirrored).unwrap();
        prop_assert_eq!(conway_skein(&d).unwrap(), nabla);
        prop_assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn concordance_pairs(a in knot_coeffs(), n in 1i64..=2) {
        let r = realize_knot(&ConwayPoly::from_coeff_vector(&a)).unwrap();
        let t = surgery_triples(1, n).unwrap();
        let d = concordance_pair_surgery(&r.diagram, &t).unwrap();
        prop_assert_eq!(conway_skein(&d).unwrap(), r.nabla);
        prop_assert!(r.diagram.seifert_data().chi - d.seifert_data().chi <= 4);
    }
}

#[test]
fn stallings_sites_preserve() {
    for s in ["z^3", "2z^3 + z^5", "z^3 - z^5"] {
        let r = realize_link_n(&s.parse().unwrap(), 4, false).unwrap();
        for pair in stallings_sites(&r.diagram).unwrap() {
            for sense in [1, -1] {
                let (_, res) = stallings_full_twist(&r.diagram, pair, sense).unwrap();
                assert!(res.is_zero());
                let d = insert_reverse_twist(&r.diagram, pair, 6, sense).unwrap();
                assert_eq!(conway_skein(&d).unwrap(), r.nabla);
            }
        }
    }
}
