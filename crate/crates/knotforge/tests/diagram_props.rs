use knotforge::diagram::{
    alexander_det, connected_sum, conway_skein, disjoint_union, insert_kink, insert_r2,
    insert_twist, parallel_pairs, reverse_pairs,
};
use knotforge::{ConwayPoly, Diagram, DiagramError};
use proptest::prelude::*;

/// Braid closures with 1 to `max_len` crossings on 2 to 4 strands.
fn diagram(max_len: usize) -> impl Strategy<Value = Diagram> {
    (2usize..=4).prop_flat_map(move |m| {
        let g = m as i32 - 1;
        prop::collection::vec(
            (1..=g).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]),
            1..=max_len,
        )
        .prop_map(move |w| Diagram::braid_closure(m, &w).unwrap())
    })
}

fn arcs(d: &Diagram) -> Vec<u32> {
    let mut v: Vec<u32> = d.crossings().iter().flat_map(|x| x.arcs).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn nabla(d: &Diagram) -> ConwayPoly {
    conway_skein(d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn skein_relation(d in diagram(10), pick in any::<prop::sample::Index>()) {
        let i = pick.index(d.crossing_count());
        let plus = if d.crossings()[i].sign > 0 { d.clone() } else { d.switch(i).unwrap() };
        let minus = plus.switch(i).unwrap();
        let zero = d.smooth(i).unwrap();
        prop_assert_eq!(&nabla(&plus) - &nabla(&minus), nabla(&zero).shift_up(1));
    }

    #[test]
    fn reidemeister_invariance(
        d in diagram(9),
        pick in any::<prop::sample::Index>(),
        sign in prop_oneof![Just(1i8), Just(-1i8)],
        over in any::<bool>(),
    ) {
        let n = nabla(&d);
        let a = arcs(&d);
        let k = insert_kink(&d, a[pick.index(a.len())], sign, over).unwrap();
        prop_assert_eq!(nabla(&k), n.clone());
        let rev = reverse_pairs(&d);
        if !rev.is_empty() {
            let r = insert_r2(&d, rev[pick.index(rev.len())], over).unwrap();
            prop_assert_eq!(r.crossing_count(), d.crossing_count() + 2);
            prop_assert_eq!(nabla(&r), n.clone());
        }
        let par = parallel_pairs(&d);
        if !par.is_empty() {
            let word = if over { [1, -1] } else { [-1, 1] };
            let r = insert_twist(&d, par[pick.index(par.len())], &word).unwrap();
            prop_assert_eq!(nabla(&r), n);
        }
    }

    #[test]
    fn mirror_parity(d in diagram(10)) {
        let n = nabla(&d);
        let sign = if d.component_count() % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(nabla(&d.mirror()), n.scale(sign));
    }

    #[test]
    fn degree_bound(d in diagram(10)) {
        let n = nabla(&d);
        if let Some(m) = n.maxdeg() {
            prop_assert!(m as i64 <= 1 - d.seifert_data().chi);
        }
    }

    #[test]
    fn determinant_agrees(d in diagram(12)) {
        let delta = nabla(&d).to_alexander();
        match alexander_det(&d) {
            Ok(det) => prop_assert!(det.associate_eq(&delta), "{} vs {}", det, delta),
            Err(DiagramError::Disconnected) => prop_assert!(delta.is_zero()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn split_and_sum(a in diagram(6), b in diagram(6)) {
        prop_assert!(nabla(&disjoint_union(&a, &b)).is_zero());
        let s = connected_sum(&a, &b);
        s.validate().unwrap();
        prop_assert_eq!(s.component_count(), a.component_count() + b.component_count() - 1);
        prop_assert_eq!(nabla(&s), &nabla(&a) * &nabla(&b));
    }
}

#[test]
fn known_values() {
    let torus24 = Diagram::braid_closure(2, &[1, 1, 1, 1]).unwrap();
    assert_eq!(nabla(&torus24).to_string(), "2z + z^3");
    let torus25 = Diagram::braid_closure(2, &[1; 5]).unwrap();
    assert_eq!(nabla(&torus25).to_string(), "1 + 3z^2 + z^4");
    assert_eq!(nabla(&Diagram::unlink(3)).to_string(), "0");
}
