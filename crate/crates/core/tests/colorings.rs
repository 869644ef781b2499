mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use gkh_core::checker::representative_coloring;
use gkh_core::coloring::{coloring_group, enumerate_colorings, montesinos_coloring, pretzel_coloring, ColoringVector};
use gkh_core::diagram::{build_montesinos_layout, MontesinosDesc};
use gkh_core::homology::{h1_from_diagram, link_determinant};
use gkh_core::ArcId;

/// `k * prod gcd(d_i, k)` over the invariant factors of `H_1`, with free
/// summands contributing `k` each.
fn predicted(d: &gkh_core::LinkDiagram, k: u64) -> BigInt {
    let shape = h1_from_diagram(d, ArcId(0)).unwrap().shape;
    let kb = BigInt::from(k);
    let torsion: BigInt = shape.torsion.iter().map(|t| t.gcd(&kb)).product();
    &kb * torsion * kb.pow(shape.free_rank as u32)
}

#[test]
fn corpus_is_large_enough() {
    assert!(common::corpus().len() >= 30);
}

#[test]
fn coloring_count_identity_over_corpus() {
    for (name, d) in common::corpus() {
        for k in 2..=12u64 {
            let solver = coloring_group(&d, k).unwrap().total_count;
            assert_eq!(solver, predicted(&d, k), "{name}, k = {k}");
            if d.arc_count() <= 9 && k <= 5 {
                assert_eq!(solver, BigInt::from(common::brute_force_count(&d, k)), "{name}, k = {k}");
            }
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for name in ["trefoil", "figure_eight", "granny", "hopf", "5_1"] {
        let d = common::pd(name);
        for k in 2..=5 {
            let listed: Vec<Vec<u64>> =
                enumerate_colorings(&d, k, 100_000).unwrap().into_iter().map(|c| c.colors).collect();
            let mut brute = common::brute_force_colorings(&d, k);
            brute.sort();
            assert_eq!(listed, brute, "{name}, k = {k}");
        }
    }
}

/// At a prime determinant every nontrivial coloring is an affine image of
/// any fixed one, so checking one representative decides the conjecture.
#[test]
fn one_representative_suffices_at_prime_determinant() {
    let mut checked = 0;
    for (name, d) in common::corpus() {
        let det = link_determinant(&d);
        let Some(p) = det.to_u64().filter(|&p| p <= 13 && gkh_core::arith::is_prime_u64(p)) else {
            continue;
        };
        if !d.is_knot() || d.arc_count() > 9 {
            continue;
        }
        let rep = representative_coloring(&d, p).unwrap();
        assert!(rep.is_valid_for(&d) && !rep.is_trivial(), "{name}");
        for colors in common::brute_force_colorings(&d, p) {
            let c = ColoringVector::new(p, colors);
            if c.is_trivial() {
                continue;
            }
            let (a0, a1) = rep.affine_relation_to(&c).unwrap_or_else(|| panic!("{name}: {c:?} not affine"));
            let image: Vec<u64> = rep.colors.iter().map(|&x| (a0 + a1 * x) % p).collect();
            assert_eq!(image, c.colors, "{name}");
            assert_eq!(c.is_injective(), rep.is_injective(), "{name}");
        }
        checked += 1;
    }
    assert!(checked >= 6, "only {checked} diagrams checked");
}

#[test]
fn closed_form_colorings_satisfy_the_relations() {
    for t in [&[11u64, 7, 5, 2][..], &[3, 5, 7], &[2, 3], &[1, 1, 1]] {
        let desc = MontesinosDesc::pretzel(t).unwrap();
        let layout = build_montesinos_layout(&desc);
        let p = link_determinant(&layout.diagram).to_u64().unwrap();
        if gkh_core::arith::is_prime_u64(p) {
            let c = pretzel_coloring(t, p, 0, 1).unwrap();
            assert!(c.is_valid_for(&layout.diagram), "{t:?}");
            assert!(c.is_injective(), "{t:?}");
        }
        let c = montesinos_coloring(&layout, p, 1).unwrap();
        assert!(c.is_valid_for(&layout.diagram), "{t:?}");
    }
    let desc = MontesinosDesc::new(&[(3, 7), (2, 5), (1, 3), (1, 1)]).unwrap();
    let layout = build_montesinos_layout(&desc);
    let c = montesinos_coloring(&layout, 227, 1).unwrap();
    assert!(c.is_valid_for(&layout.diagram));
    assert!(c.is_injective());
}

#[test]
fn p_11_7_5_2_coloring_is_injective_mod_719() {
    let c = pretzel_coloring(&[11, 7, 5, 2], 719, 0, 1).unwrap();
    assert_eq!(c.colors.len(), 25);
    assert!(c.is_injective());
}
