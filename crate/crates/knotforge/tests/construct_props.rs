use knotforge::construct::{
    alexander_from_seifert, realize_knot, realize_link2, realize_link_n, seifert_matrix_v,
    ConstructError,
};
use knotforge::diagram::{conway_skein, V0};
use knotforge::ConwayPoly;
use proptest::prelude::*;

fn coeffs(max_d: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_d).prop_flat_map(|d| {
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

fn odd_link(max_deg: u32) -> impl Strategy<Value = ConwayPoly> {
    prop::collection::vec(-3i64..=3, (max_deg as usize).div_ceil(2))
        .prop_map(|cs| {
            ConwayPoly::from_terms(
                cs.into_iter()
                    .enumerate()
                    .map(|(i, c)| (2 * i as u32 + 1, c)),
            )
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Monic polynomials admissible for `n` components with positive genus.
fn monic_link(n: u32) -> impl Strategy<Value = ConwayPoly> {
    let lo = n - 1;
    (
        prop::collection::vec(-2i64..=2, 1..=2),
        prop_oneof![Just(1i64), Just(-1i64)],
    )
        .prop_map(move |(mid, lead)| {
            let mut terms: Vec<(u32, i64)> = mid
                .iter()
                .enumerate()
                .map(|(i, &c)| (lo + 2 * i as u32, c))
                .collect();
            terms.push((lo + 2 * mid.len() as u32, lead));
            ConwayPoly::from_terms(terms)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn knots_realize(a in coeffs(3)) {
        let nabla = ConwayPoly::from_coeff_vector(&a);
        let d = a.len();
        let r = realize_knot(&nabla).unwrap();
        prop_assert_eq!(conway_skein(&r.diagram).unwrap(), nabla.clone());
        prop_assert_eq!(r.genus, d as i64);
        prop_assert_eq!(r.d as usize, d);
        prop_assert_eq!(r.t_strong_reverse, 4 * d - 1);
        let expected_t = if a[d - 1] == -1 { 4 * d - 3 } else { 4 * d - 2 };
        prop_assert_eq!(r.t_strong, expected_t);
        if nabla != ConwayPoly::from_coeff_vector(&[-1]) {
            let b = r.volume_bound.unwrap();
            prop_assert!((b - 10.0 * V0 * (4 * d - 3) as f64).abs() < 1e-9);
        }
        let v = seifert_matrix_v(&a).unwrap();
        prop_assert_eq!(alexander_from_seifert(&v), nabla.to_alexander());
        prop_assert_eq!(r.matrix, Some(v));
    }

    #[test]
    fn two_component_links(nabla in odd_link(5)) {
        let r = realize_link2(&nabla, false).unwrap();
        prop_assert_eq!(conway_skein(&r.diagram).unwrap(), nabla.clone());
        prop_assert_eq!(r.diagram.component_count(), 2);
        let d = nabla.maxdeg().unwrap() as f64;
        prop_assert!((r.volume_bound.unwrap() - 20.0 * V0 * (d - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn mirror_trick_keeps_target(nabla in odd_link(5)) {
        let r = realize_link2(&nabla, true).unwrap();
        prop_assert_eq!(conway_skein(&r.diagram).unwrap(), nabla);
    }

    #[test]
    fn many_component_links(n in 3u32..=5, seed in monic_link(3), pick in any::<prop::sample::Index>()) {
        let nabla = monic_link_for(n, &seed, pick.index(2));
        let r = realize_link_n(&nabla, n as usize, false);
        if n == 3 && nabla.coeff(2) == -2 {
            prop_assert!(matches!(r, Err(ConstructError::Certificate(_))));
            return Ok(());
        }
        let r = r.unwrap();
        prop_assert_eq!(conway_skein(&r.diagram).unwrap(), nabla.clone());
        prop_assert_eq!(r.diagram.component_count(), n as usize);
        prop_assert!(r.linking_graph.as_ref().unwrap().matches_template());
        prop_assert_eq!(nabla.maxdeg().unwrap() as i64, 1 - r.diagram.seifert_data().chi);
    }
}

/// Shift the coefficients of `seed` to start at `z^(n-1)`, optionally negated.
fn monic_link_for(n: u32, seed: &ConwayPoly, flip: usize) -> ConwayPoly {
    let p = ConwayPoly::from_terms(seed.terms().map(|(e, c)| (e + n - 3, c)));
    if flip == 1 {
        p.scale(-1)
    } else {
        p
    }
}

#[test]
fn genus_zero_links() {
    for n in 3..=6u32 {
        for sign in [1i64, -1] {
            let nabla = ConwayPoly::monomial(sign, n - 1);
            let r = realize_link_n(&nabla, n as usize, false);
            if n == 3 && sign == 1 {
                assert!(matches!(
                    r,
                    Err(ConstructError::ImpossibleRealization { .. })
                ));
                continue;
            }
            let r = r.unwrap();
            assert_eq!(conway_skein(&r.diagram).unwrap(), nabla);
            assert_eq!(r.diagram.component_count(), n as usize);
        }
    }
}

#[test]
fn documented_instance() {
    let nabla: ConwayPoly = "1 - 2z^2 + 2z^4".parse().unwrap();
    assert_eq!(nabla.coeff_vector().unwrap(), vec![2, 2]);
    let v = seifert_matrix_v(&[2, 2]).unwrap();
    assert_eq!(alexander_from_seifert(&v), nabla.to_alexander());
    assert_eq!(realize_knot(&nabla).unwrap().genus, 2);
}
