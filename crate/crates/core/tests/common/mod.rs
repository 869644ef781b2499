#![allow(dead_code)]

use gkh_core::diagram::{build_montesinos, build_pretzel, build_two_bridge, connected_sum, import_pd, MontesinosDesc};
use gkh_core::LinkDiagram;

pub const PD_FILES: [(&str, &str); 10] = [
    ("trefoil", include_str!("../data/trefoil.pd")),
    ("figure_eight", include_str!("../data/figure_eight.pd")),
    ("5_1", include_str!("../data/5_1.pd")),
    ("5_2", include_str!("../data/5_2.pd")),
    ("6_1", include_str!("../data/6_1.pd")),
    ("6_2", include_str!("../data/6_2.pd")),
    ("6_3", include_str!("../data/6_3.pd")),
    ("7_1", include_str!("../data/7_1.pd")),
    ("granny", include_str!("../data/granny.pd")),
    ("hopf", include_str!("../data/hopf.pd")),
];

pub fn pd(name: &str) -> LinkDiagram {
    let text = PD_FILES.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no fixture {name}")).1;
    import_pd(text).unwrap()
}

/// Family members, 2-bridge knots, connected sums and imports.
pub fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = Vec::new();
    for t in [
        &[1u64, 1][..],
        &[2, 2],
        &[1, 1, 1],
        &[2, 3],
        &[1, 2, 3],
        &[2, 2, 2],
        &[3, 3, 3],
        &[1, 1, 1, 1],
        &[2, 4, 6],
        &[3, 5, 7],
        &[2, 2, 2, 2],
        &[11, 7, 5, 2],
        &[15, 10, 6],
    ] {
        let d = build_pretzel(t).unwrap();
        out.push((d.family().to_string(), d));
    }
    for pairs in [
        &[(1u64, 2u64), (1, 3)][..],
        &[(2, 3), (1, 3), (1, 2)],
        &[(2, 5), (3, 7)],
        &[(3, 7), (2, 5), (1, 3), (1, 1)],
        &[(1, 1), (1, 1), (1, 2)],
        &[(3, 4), (1, 4)],
    ] {
        let d = build_montesinos(&MontesinosDesc::new(pairs).unwrap());
        out.push((d.family().to_string(), d));
    }
    for (m, n) in [(3, 1), (5, 2), (7, 3), (8, 3), (9, 4), (12, 5)] {
        let d = build_two_bridge(m, n).unwrap().diagram;
        out.push((d.family().to_string(), d));
    }
    let trefoil = build_pretzel(&[1, 1, 1]).unwrap();
    let sum = connected_sum(&trefoil, &pd("figure_eight")).unwrap().diagram;
    out.push((sum.family().to_string(), sum));
    out.push(("unknot".into(), LinkDiagram::unknot()));
    for (name, text) in PD_FILES {
        out.push((format!("pd:{name}"), import_pd(text).unwrap()));
    }
    out
}

/// Counts solutions of the coloring relations by trying all `k^arcs`
/// assignments.
pub fn brute_force_count(d: &LinkDiagram, k: u64) -> u64 {
    let n = d.arc_count();
    let mut colors = vec![0u64; n];
    let mut count = 0;
    loop {
        if d.crossings()
            .iter()
            .all(|c| (2 * colors[c.over.0] + 2 * k - colors[c.under_a.0] - colors[c.under_b.0]).is_multiple_of(k))
        {
            count += 1;
        }
        let Some(pos) = (0..n).find(|&i| colors[i] + 1 < k) else {
            return count;
        };
        colors[..pos].iter_mut().for_each(|c| *c = 0);
        colors[pos] += 1;
    }
}

/// All colorings by brute force, for small cases.
pub fn brute_force_colorings(d: &LinkDiagram, k: u64) -> Vec<Vec<u64>> {
    let n = d.arc_count();
    let mut colors = vec![0u64; n];
    let mut out = Vec::new();
    loop {
        if d.crossings()
            .iter()
            .all(|c| (2 * colors[c.over.0] + 2 * k - colors[c.under_a.0] - colors[c.under_b.0]).is_multiple_of(k))
        {
            out.push(colors.clone());
        }
        let Some(pos) = (0..n).find(|&i| colors[i] + 1 < k) else {
            return out;
        };
        colors[..pos].iter_mut().for_each(|c| *c = 0);
        colors[pos] += 1;
    }
}

/// Determinant by cofactor expansion, for small integer matrices.
pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * laplace_det(&minor)
        })
        .sum()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Index sets of size `r` from `0..n`.
pub fn choose(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = choose(n - 1, r - 1);
    with.iter_mut().for_each(|s| s.push(n - 1));
    let mut out = choose(n - 1, r);
    out.extend(with);
    out
}

/// Determinantal divisors: gcd of all `r x r` minors, `r = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (1..=rows.min(cols))
        .map(|r| {
            let mut g = 0;
            for rs in choose(rows, r) {
                for cs in choose(cols, r) {
                    let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    g = gcd(g, laplace_det(&minor));
                }
            }
            g
        })
        .collect()
}
