mod common;

use gkh_core::checker::{SweepConfig, SweepFamily};
use gkh_core::diagram::{
    build_montesinos, build_montesinos_layout, build_pretzel, build_rational_tangle, connected_sum, export_pd,
    import_pd, MontesinosDesc, RationalTangleDesc,
};
use gkh_core::{DiagramError, LinkDiagram};

fn under_endpoint_counts(d: &LinkDiagram) -> Vec<usize> {
    let mut counts = vec![0; d.arc_count()];
    for c in d.crossings() {
        counts[c.under_a.0] += 1;
        counts[c.under_b.0] += 1;
    }
    counts
}

#[test]
fn generated_diagrams_satisfy_the_arc_invariants() {
    for family in [SweepFamily::Pretzel, SweepFamily::Montesinos] {
        let k = if family == SweepFamily::Pretzel { 2..=4 } else { 2..=3 };
        for desc in SweepConfig::new(family, k, 1..=6).instances().unwrap() {
            let layout = build_montesinos_layout(&desc);
            let d = &layout.diagram;
            let expected: usize = layout.tangles.iter().map(|t| t.crossing_count()).sum();
            assert_eq!(d.crossing_count(), expected, "{desc}");
            assert_eq!(d.arc_count(), d.crossing_count(), "{desc}");
            assert!(under_endpoint_counts(d).iter().all(|&c| c == 2), "{desc}");
            assert!(d.is_alternating(), "{desc}");
        }
    }
}

#[test]
fn tangle_crossings_are_the_sum_of_partial_quotients() {
    for n in 1..=40u64 {
        for m in (1..=n).filter(|&m| num_integer::gcd(m, n) == 1) {
            let desc = RationalTangleDesc::new(m, n).unwrap();
            let t = build_rational_tangle(&desc);
            assert_eq!(t.crossing_count() as u64, desc.partial_quotients.iter().sum::<u64>(), "{m}/{n}");
        }
    }
}

#[test]
fn montesinos_with_unit_numerators_is_the_pretzel() {
    for twists in [&[1u64, 1][..], &[3, 3, 3], &[11, 7, 5, 2], &[2, 5, 1, 4, 3]] {
        let pairs: Vec<(u64, u64)> = twists.iter().map(|&n| (1, n)).collect();
        let m = build_montesinos(&MontesinosDesc::new(&pairs).unwrap());
        let p = build_pretzel(twists).unwrap();
        assert_eq!(m.crossings(), p.crossings(), "{twists:?}");
        assert_eq!(m.arc_count(), p.arc_count());
    }
}

#[test]
fn pd_round_trip_is_a_relabeling() {
    for (name, d) in common::corpus() {
        if d.crossing_count() == 0 {
            continue;
        }
        let back = import_pd(&export_pd(&d)).unwrap();
        assert!(back.is_relabeling_of(&d), "{name}");
        assert_eq!(back.component_count(), d.component_count(), "{name}");
    }
}

#[test]
fn relabeling_detects_different_knots() {
    let fig8 = common::pd("figure_eight");
    let cinquefoil = common::pd("5_1");
    let twist = common::pd("5_2");
    assert!(!cinquefoil.is_relabeling_of(&twist));
    assert!(!fig8.is_relabeling_of(&common::pd("trefoil")));
}

#[test]
fn components_of_known_links() {
    let cases: [(&[u64], usize); 6] =
        [(&[1, 1], 2), (&[2, 2], 2), (&[1, 1, 1], 1), (&[3, 3, 3], 1), (&[2, 2, 2], 3), (&[2, 4, 6], 3)];
    for (twists, comps) in cases {
        assert_eq!(build_pretzel(twists).unwrap().component_count(), comps, "{twists:?}");
    }
}

#[test]
fn connected_sum_shape() {
    let t = common::pd("trefoil");
    let sum = connected_sum(&t, &t).unwrap();
    assert_eq!((sum.diagram.crossing_count(), sum.diagram.arc_count()), (6, 6));
    assert_eq!(sum.diagram.component_count(), 1);
    assert!(matches!(connected_sum(&t, &common::pd("hopf")).unwrap_err(), DiagramError::NotAKnot { components: 2 }));
    let with_unknot = connected_sum(&t, &LinkDiagram::unknot()).unwrap();
    assert!(with_unknot.diagram.is_relabeling_of(&t));
}
