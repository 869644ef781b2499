//! First homology of the double branched cover, three ways: from a diagram
//! (crossing relations with one arc pinned to zero), from the Montesinos
//! presentation matrix, and from the closed-form elementary divisors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coloring::crossing_matrix;
use crate::diagram::{build_montesinos, ArcId, LinkDiagram, MontesinosDesc};
use crate::linalg::{cokernel, smith_normal_form, AbelianGroupShape, GroupElement, IntegerMatrix};

/// The homology class represented by an arc.
pub type ArcLabel = GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("pinned arc {pinned} is out of range for a diagram with {arc_count} arcs")]
    PinnedOutOfRange { pinned: usize, arc_count: usize },
}

#[derive(Debug, Clone)]
pub struct DiagramHomology {
    pub shape: AbelianGroupShape,
    pub pinned: ArcId,
    /// One label per arc; the pinned arc is zero.
    pub labels: Vec<ArcLabel>,
}

impl DiagramHomology {
    /// Lexicographically least pair of arcs with equal labels.
    pub fn first_collision(&self) -> Option<(ArcId, ArcId)> {
        let mut idx: Vec<usize> = (0..self.labels.len()).collect();
        idx.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]).then(a.cmp(&b)));
        idx.windows(2).filter(|w| self.labels[w[0]] == self.labels[w[1]]).map(|w| (ArcId(w[0]), ArcId(w[1]))).min()
    }

    pub fn distinct_labels(&self) -> usize {
        let mut l = self.labels.clone();
        l.sort();
        l.dedup();
        l.len()
    }
}

/// `H_1` as the crossing relations modulo the pinned arc, with every arc's
/// class in invariant-factor coordinates.
pub fn h1_from_diagram(d: &LinkDiagram, pinned: ArcId) -> Result<DiagramHomology, HomologyError> {
    if pinned.0 >= d.arc_count() {
        return Err(HomologyError::PinnedOutOfRange { pinned: pinned.0, arc_count: d.arc_count() });
    }
    let reduced = crossing_matrix(d).without_column(pinned.0);
    let coker = cokernel(&reduced);
    let zero = GroupElement {
        torsion: vec![BigInt::zero(); coker.shape.torsion.len()],
        free: vec![BigInt::zero(); coker.shape.free_rank],
    };
    let labels = (0..d.arc_count())
        .map(|a| match a.cmp(&pinned.0) {
            std::cmp::Ordering::Less => coker.project_basis(a),
            std::cmp::Ordering::Equal => zero.clone(),
            std::cmp::Ordering::Greater => coker.project_basis(a - 1),
        })
        .collect();
    Ok(DiagramHomology { shape: coker.shape, pinned, labels })
}

/// `|det|` of the crossing matrix with the pinned column and the last row
/// removed; `None` when that minor is not square.
pub fn crossing_minor_determinant(d: &LinkDiagram, pinned: ArcId) -> Option<BigInt> {
    if d.crossing_count() != d.arc_count() || d.crossing_count() == 0 {
        return None;
    }
    let m = crossing_matrix(d).without_column(pinned.0).without_row(d.crossing_count() - 1);
    Some(m.determinant().expect("square minor").abs())
}

/// The determinant of the link: `|H_1|`, or zero when `H_1` is infinite.
pub fn link_determinant(d: &LinkDiagram) -> BigInt {
    let reduced = if d.arc_count() == 0 { crossing_matrix(d) } else { crossing_matrix(d).without_column(0) };
    AbelianGroupShape::from_diagonal(&smith_normal_form(&reduced).diagonal)
        .with_columns(reduced.cols(), reduced.rows())
        .order()
}

impl AbelianGroupShape {
    /// Accounts for columns that exceed the row count (they are free).
    fn with_columns(mut self, cols: usize, rows: usize) -> Self {
        self.free_rank += cols.saturating_sub(rows);
        self
    }
}

/// `A_k`: rows `n_1 e_1 - n_{j} e_{j}` for `j = 2..k`, then `(m_1, ..., m_k)`.
pub fn montesinos_presentation(desc: &MontesinosDesc) -> IntegerMatrix {
    let k = desc.len();
    let mut a = IntegerMatrix::zeros(k, k);
    let t = &desc.tangles;
    for j in 1..k {
        a[(j - 1, 0)] = BigInt::from(t[0].n);
        a[(j - 1, j)] = -BigInt::from(t[j].n);
    }
    for (j, f) in t.iter().enumerate() {
        a[(k - 1, j)] = BigInt::from(f.m);
    }
    a
}

/// `D = sum_i n_1 ... n_{i-1} m_i n_{i+1} ... n_k`.
pub fn conway_determinant(desc: &MontesinosDesc) -> BigInt {
    words(desc).iter().map(|w| w.iter().map(|&x| BigInt::from(x)).product::<BigInt>()).sum()
}

/// The letters of `n_1 ... n_{i-1} m_i n_{i+1} ... n_k`, one word per `i`.
fn words(desc: &MontesinosDesc) -> Vec<Vec<u64>> {
    let n = desc.denominators();
    (0..desc.len())
        .map(|i| {
            let mut w = n.clone();
            w[i] = desc.tangles[i].m;
            w
        })
        .collect()
}

/// `D_0, ..., D_{k-1}`: `D_0` is the determinant and `D_s` is the gcd of every
/// product obtained from any word by dropping `s` letters.
pub fn elementary_divisors_closed_form(desc: &MontesinosDesc) -> Vec<BigInt> {
    let k = desc.len();
    let words = words(desc);
    let mut out = vec![conway_determinant(desc)];
    for s in 1..k {
        let keep = k - s;
        let mut g = BigInt::zero();
        for w in &words {
            for subset in subsets(k, keep) {
                let prod: BigInt = subset.iter().map(|&i| BigInt::from(w[i])).product();
                g = g.gcd(&prod);
            }
        }
        out.push(g);
    }
    out
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// `Z_{D_0/D_1} + Z_{D_1/D_2} + ... + Z_{D_{k-2}/D_{k-1}}`.
pub fn shape_from_divisors(divisors: &[BigInt]) -> AbelianGroupShape {
    let quotients: Vec<BigInt> =
        divisors.windows(2).map(|w| if w[1].is_zero() { BigInt::zero() } else { &w[0] / &w[1] }).collect();
    AbelianGroupShape::from_diagonal(&quotients)
}

/// `gcd` over products of all but two of the twists; `1` when `k = 2`.
pub fn pretzel_cyclicity_gcd(twists: &[u64]) -> BigInt {
    let k = twists.len();
    let mut g = BigInt::zero();
    for i in 0..k {
        for j in i + 1..k {
            let prod: BigInt =
                twists.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &n)| BigInt::from(n)).product();
            g = g.gcd(&prod);
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub descriptor: String,
    pub closed_form: AbelianGroupShape,
    pub presentation: AbelianGroupShape,
    pub diagram: AbelianGroupShape,
    #[serde(serialize_with = "crate::bigser::one_big")]
    pub conway_determinant: BigInt,
    pub consistent: bool,
    /// Full matrices, attached only when the routes disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<MismatchDetail>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MismatchDetail {
    pub presentation_matrix: IntegerMatrix,
    pub crossing_matrix: IntegerMatrix,
}

/// Compares the closed form, the SNF of `A_k` and the SNF of the built
/// diagram's pinned crossing matrix.
pub fn cross_validate(desc: &MontesinosDesc) -> CrossValidation {
    cross_validate_with(desc, &build_montesinos(desc))
}

pub fn cross_validate_with(desc: &MontesinosDesc, diagram: &LinkDiagram) -> CrossValidation {
    let closed_form = shape_from_divisors(&elementary_divisors_closed_form(desc));
    let a = montesinos_presentation(desc);
    let presentation = cokernel(&a).shape;
    let from_diagram = h1_from_diagram(diagram, ArcId(0)).expect("arc 0 exists").shape;
    let det = conway_determinant(desc);
    let consistent = closed_form == presentation && presentation == from_diagram && from_diagram.order() == det;
    let mismatch =
        (!consistent).then(|| MismatchDetail { presentation_matrix: a, crossing_matrix: crossing_matrix(diagram) });
    CrossValidation {
        descriptor: diagram.family().to_string(),
        closed_form,
        presentation,
        diagram: from_diagram,
        conway_determinant: det,
        consistent,
        mismatch,
    }
}
