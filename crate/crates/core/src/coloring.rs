//! Fox colorings: at every crossing the two under-arcs sum to twice the
//! over-arc modulo `k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::diagram::{ArcId, DiagramError, LinkDiagram, MontesinosDesc, MontesinosLayout, RationalTangle};
use crate::homology::conway_determinant;
use crate::linalg::{nullspace_mod, IntegerMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("enumeration needs {required} colorings, above the limit of {limit}")]
    TooMany { required: BigInt, limit: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {modulus} differs from the determinant {determinant}")]
    DeterminantMismatch { modulus: u64, determinant: BigInt },
    #[error("propagated labels disagree where tangles are joined (modulus {0})")]
    InconsistentClosure(u64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl From<LinalgError> for ColoringError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::BadModulus(k) => ColoringError::BadModulus(k),
            LinalgError::NotSquare { .. } => unreachable!("coloring never takes determinants"),
        }
    }
}

/// One row per crossing and one column per arc: `+2` at the over-arc and `-1`
/// at each under-arc, accumulated when arcs coincide.
pub fn crossing_matrix(d: &LinkDiagram) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(d.crossing_count(), d.arc_count());
    for (i, c) in d.crossings().iter().enumerate() {
        m[(i, c.over.0)] += 2;
        m[(i, c.under_a.0)] -= 1;
        m[(i, c.under_b.0)] -= 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoringVector {
    pub modulus: u64,
    pub colors: Vec<u64>,
}

impl ColoringVector {
    pub fn new(modulus: u64, colors: impl IntoIterator<Item = u64>) -> Self {
        Self { modulus, colors: colors.into_iter().map(|c| c % modulus).collect() }
    }

    fn from_bigints<'a>(modulus: u64, labels: impl IntoIterator<Item = &'a BigInt>) -> Self {
        let k = BigInt::from(modulus);
        let colors = labels.into_iter().map(|x| x.mod_floor(&k).to_u64().expect("residue fits")).collect();
        Self { modulus, colors }
    }

    pub fn is_valid_for(&self, d: &LinkDiagram) -> bool {
        if self.colors.len() != d.arc_count() {
            return false;
        }
        let k = self.modulus as u128;
        d.crossings().iter().all(|c| {
            let over = self.colors[c.over.0] as u128;
            let under = self.colors[c.under_a.0] as u128 + self.colors[c.under_b.0] as u128;
            (2 * over) % k == under % k
        })
    }

    /// Monochromatic colorings are the trivial ones.
    pub fn is_trivial(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }

    /// All pairs of arcs sharing a color, lexicographically ordered.
    pub fn repeats(&self) -> Vec<(ArcId, ArcId)> {
        let mut by_color: Vec<(u64, usize)> = self.colors.iter().copied().zip(0..).collect();
        by_color.sort_unstable();
        let mut out = Vec::new();
        for group in by_color.chunk_by(|a, b| a.0 == b.0) {
            for (i, a) in group.iter().enumerate() {
                for b in &group[i + 1..] {
                    out.push((ArcId(a.1), ArcId(b.1)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_injective(&self) -> bool {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.windows(2).all(|w| w[0] != w[1])
    }

    pub fn report(&self) -> ColoringReport {
        let repeats: Vec<[usize; 2]> = self.repeats().into_iter().map(|(a, b)| [a.0, b.0]).collect();
        ColoringReport { k: self.modulus, colors: self.colors.clone(), distinct: repeats.is_empty(), repeats }
    }

    /// Solves `other = a0 + a1 * self` from two arcs and checks it on every arc.
    /// Only meaningful for a prime modulus.
    pub fn affine_relation_to(&self, other: &ColoringVector) -> Option<(u64, u64)> {
        let p = BigInt::from(self.modulus);
        let (i, j) = (0..self.colors.len())
            .flat_map(|i| (i + 1..self.colors.len()).map(move |j| (i, j)))
            .find(|&(i, j)| self.colors[i] != self.colors[j])?;
        let df = (BigInt::from(self.colors[j]) - self.colors[i]).mod_floor(&p);
        let dg = (BigInt::from(other.colors[j]) - other.colors[i]).mod_floor(&p);
        let a1 = (dg * df.modinv(&p)?).mod_floor(&p);
        let a0 = (BigInt::from(other.colors[i]) - &a1 * self.colors[i]).mod_floor(&p);
        let holds = self.colors.iter().zip(&other.colors).all(|(&f, &g)| (&a0 + &a1 * f - g).mod_floor(&p).is_zero());
        holds.then(|| (a0.to_u64().unwrap(), a1.to_u64().unwrap()))
    }
}

/// `{ "k", "colors", "distinct", "repeats": [[arc_i, arc_j], ...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub k: u64,
    pub colors: Vec<u64>,
    pub distinct: bool,
    pub repeats: Vec<[usize; 2]>,
}

/// The group of all Fox `k`-colorings, counted as raw solution vectors.
#[derive(Debug, Clone)]
pub struct ColoringGroup {
    pub modulus: u64,
    /// The group is the direct sum of the cyclic subgroups these generate.
    pub generators: Vec<ColoringVector>,
    pub orders: Vec<u64>,
    pub total_count: BigInt,
}

pub fn coloring_group(d: &LinkDiagram, k: u64) -> Result<ColoringGroup, ColoringError> {
    let kernel = nullspace_mod(&crossing_matrix(d), k)?;
    Ok(ColoringGroup {
        modulus: k,
        generators: kernel.generators.into_iter().map(|g| ColoringVector { modulus: k, colors: g }).collect(),
        orders: kernel.orders,
        total_count: kernel.count,
    })
}

/// Every `k`-coloring, in lexicographic order of the color vectors.
pub fn enumerate_colorings(d: &LinkDiagram, k: u64, limit: usize) -> Result<Vec<ColoringVector>, ColoringError> {
    let group = coloring_group(d, k)?;
    if group.total_count > BigInt::from(limit) {
        return Err(ColoringError::TooMany { required: group.total_count, limit });
    }
    let n = d.arc_count();
    let mut out = vec![vec![0u64; n]];
    for (gen, &order) in group.generators.iter().zip(&group.orders) {
        let mut next = Vec::with_capacity(out.len() * order as usize);
        for base in &out {
            let mut v = base.clone();
            for _ in 0..order {
                next.push(v.clone());
                for (x, g) in v.iter_mut().zip(&gen.colors) {
                    *x = ((*x as u128 + *g as u128) % k as u128) as u64;
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out.into_iter().map(|colors| ColoringVector { modulus: k, colors }).collect())
}

/// Corner labels of an `m/n` tangle whose north-west arc is `y1` and whose
/// internal maximum is `y`: returns `(north-east, south-east, south-west)`.
pub fn rational_corner_labels(m: u64, n: u64, y1: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    let d = y - y1;
    (m * &d + y1, (m + n) * &d + y1, n * &d + y1)
}

/// Integer labels for every local arc of the tangle, given the labels of the
/// north-west arc and the internal maximum. Each emerging arc gets
/// `2 * over - incoming`, so every label is `y1 + c (y - y1)` for a fixed `c`.
pub fn propagate_tangle(t: &RationalTangle, y1: &BigInt, y: &BigInt) -> Vec<BigInt> {
    let mut labels = vec![BigInt::zero(); t.arc_count()];
    labels[0] = y1.clone();
    labels[1] = y.clone();
    for x in &t.crossings {
        labels[x.emerging] = 2 * &labels[x.over] - &labels[x.incoming];
    }
    labels
}

/// Labels the closed diagram tangle by tangle: tangle `i` gets north-west
/// label `x_{i-1}` and internal maximum `x_{i-1} + z_i`, and
/// `x_i = x_{i-1} + m_i z_i`. Fails if the joins disagree modulo `modulus`.
pub fn closure_coloring(
    layout: &MontesinosLayout,
    modulus: u64,
    x0: &BigInt,
    steps: &[BigInt],
) -> Result<ColoringVector, ColoringError> {
    if modulus < 2 {
        return Err(ColoringError::BadModulus(modulus));
    }
    let k = BigInt::from(modulus);
    let mut colors: Vec<Option<BigInt>> = vec![None; layout.diagram.arc_count()];
    let mut x = x0.clone();
    for ((t, map), z) in layout.tangles.iter().zip(&layout.arc_maps).zip(steps) {
        let labels = propagate_tangle(t, &x, &(&x + z));
        for (local, label) in labels.iter().enumerate() {
            let label = label.mod_floor(&k);
            match &colors[map[local].0] {
                Some(prev) if *prev != label => return Err(ColoringError::InconsistentClosure(modulus)),
                _ => colors[map[local].0] = Some(label),
            }
        }
        x += t.desc.m * z;
    }
    let colors: Vec<BigInt> = colors.into_iter().map(|c| c.expect("every arc lies in some tangle")).collect();
    Ok(ColoringVector::from_bigints(modulus, &colors))
}

/// The coloring with steps `z_i = scale * prod_{j != i} n_j`, which closes up
/// modulo the determinant.
pub fn montesinos_coloring(
    layout: &MontesinosLayout,
    modulus: u64,
    scale: u64,
) -> Result<ColoringVector, ColoringError> {
    let dens = layout.desc.denominators();
    let steps: Vec<BigInt> = (0..dens.len())
        .map(|i| {
            let prod: BigInt =
                dens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &n)| BigInt::from(n)).product();
            prod * scale
        })
        .collect();
    closure_coloring(layout, modulus, &BigInt::zero(), &steps)
}

/// The `p`-coloring of `P(n_1, ..., n_k)` with connecting maxima `x_0 = x0`,
/// `x_1 = x1`, where `p` is the (prime) determinant. The remaining maxima are
/// forced by `n_i z_i = n_1 z_1 (mod p)` with `z_i = x_i - x_{i-1}`.
pub fn pretzel_coloring(twists: &[u64], p: u64, x0: u64, x1: u64) -> Result<ColoringVector, ColoringError> {
    let desc = MontesinosDesc::pretzel(twists)?;
    if !arith::is_prime_u64(p) {
        return Err(ColoringError::NotPrime(p));
    }
    let determinant = conway_determinant(&desc);
    if determinant != BigInt::from(p) {
        return Err(ColoringError::DeterminantMismatch { modulus: p, determinant });
    }
    let pb = BigInt::from(p);
    let z1 = (BigInt::from(x1) - x0).mod_floor(&pb);
    let lead = z1.clone() * twists[0];
    let steps: Vec<BigInt> = twists
        .iter()
        .map(|&n| {
            let inv = BigInt::from(n).modinv(&pb).expect("twists are units modulo a prime determinant");
            (&lead * inv).mod_floor(&pb)
        })
        .collect();
    debug_assert_eq!(steps[0], z1);
    let layout = crate::diagram::build_montesinos_layout(&desc);
    closure_coloring(&layout, p, &BigInt::from(x0), &steps)
}
