//! Rational tangles from continued fractions, and their closures into
//! Montesinos (and pretzel) links and 2-bridge links.
//!
//! A tangle is grown one crossing at a time from the `0` tangle (two
//! horizontal arcs) or the `oo` tangle (two vertical arcs). Every crossing is
//! drawn the same way: the over-strand runs from the north-east port to the
//! south-west port, the incoming under-strand enters at north-west and the new
//! arc emerges at south-east. With this convention a horizontal twist on the
//! east side maps the fraction `F` to `F + 1`, a vertical twist on the south
//! side maps `1/F` to `1/F + 1`, and the result is alternating.

use std::fmt;

use num_integer::Integer;

use super::{merge_classes, ArcId, Crossing, DiagramError, Family, LinkDiagram};

/// A reduced fraction `m/n` with `m, n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangleFraction {
    pub m: u64,
    pub n: u64,
}

impl TangleFraction {
    pub fn new(m: u64, n: u64) -> Result<Self, DiagramError> {
        if m == 0 || n == 0 {
            return Err(DiagramError::NonPositiveTwist(0));
        }
        if m.gcd(&n) != 1 {
            return Err(DiagramError::NotCoprime { m, n });
        }
        Ok(Self { m, n })
    }
}

impl fmt::Display for TangleFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

/// Partial quotients `a_1, ..., a_k` with `m/n = a_k + 1/(a_{k-1} + ... + 1/a_1)`.
///
/// The list is the Euclidean quotient sequence read backwards, so `a_k` (the
/// integer part) is last and is zero exactly when `m < n`.
pub fn continued_fraction(m: u64, n: u64) -> Result<Vec<u64>, DiagramError> {
    TangleFraction::new(m, n)?;
    let (mut p, mut q) = (m, n);
    let mut quotients = Vec::new();
    while q != 0 {
        quotients.push(p / q);
        (p, q) = (q, p % q);
    }
    quotients.reverse();
    Ok(quotients)
}

/// Evaluates `a_k + 1/(a_{k-1} + ... + 1/a_1)` as a reduced `(numerator, denominator)`.
/// Returns `None` when an intermediate denominator vanishes.
pub fn evaluate_partial_quotients(a: &[u64]) -> Option<(u64, u64)> {
    let (&first, rest) = a.split_first()?;
    let (mut num, mut den) = (first, 1u64);
    for &ai in rest {
        if num == 0 {
            return None;
        }
        (num, den) = (ai.checked_mul(num)?.checked_add(den)?, num);
    }
    let g = num.gcd(&den);
    Some((num / g, den / g))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTangleDesc {
    pub m: u64,
    pub n: u64,
    pub partial_quotients: Vec<u64>,
}

impl RationalTangleDesc {
    pub fn new(m: u64, n: u64) -> Result<Self, DiagramError> {
        Ok(Self { m, n, partial_quotients: continued_fraction(m, n)? })
    }

    pub fn fraction(&self) -> TangleFraction {
        TangleFraction { m: self.m, n: self.n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistKind {
    /// East side, `F -> F + 1`.
    Horizontal,
    /// South side, `1/F -> 1/F + 1`.
    Vertical,
}

/// A crossing inside a tangle, in tangle-local arc ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangleCrossing {
    pub over: usize,
    /// Under-arc that existed before this crossing was added.
    pub incoming: usize,
    /// Under-arc created by this crossing.
    pub emerging: usize,
    pub twist: TwistKind,
}

/// Tangle-local arcs at the four boundary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corners {
    pub nw: usize,
    pub ne: usize,
    pub sw: usize,
    pub se: usize,
}

/// An alternating rational tangle.
///
/// Local arc `0` is the strand entering at the north-west corner and local
/// arc `1` the internal maximum; arc `2 + i` emerges at crossing `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTangle {
    pub desc: RationalTangleDesc,
    pub crossings: Vec<TangleCrossing>,
    pub corners: Corners,
}

impl RationalTangle {
    pub fn arc_count(&self) -> usize {
        self.crossings.len() + 2
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn corner_slots(&self) -> [usize; 4] {
        [self.corners.nw, self.corners.ne, self.corners.sw, self.corners.se]
    }
}

pub fn build_rational_tangle(desc: &RationalTangleDesc) -> RationalTangle {
    let a = &desc.partial_quotients;
    let k = a.len();
    // odd length starts from the 0 tangle, even length from the oo tangle
    let mut corners =
        if k % 2 == 1 { Corners { nw: 0, ne: 0, sw: 1, se: 1 } } else { Corners { nw: 0, ne: 1, sw: 0, se: 1 } };
    let mut crossings = Vec::new();
    for (i, &count) in a.iter().enumerate() {
        let twist = if (k - 1 - i).is_multiple_of(2) { TwistKind::Horizontal } else { TwistKind::Vertical };
        for _ in 0..count {
            let emerging = crossings.len() + 2;
            let incoming = match twist {
                TwistKind::Horizontal => corners.ne,
                TwistKind::Vertical => corners.sw,
            };
            crossings.push(TangleCrossing { over: corners.se, incoming, emerging, twist });
            match twist {
                TwistKind::Horizontal => corners.ne = corners.se,
                TwistKind::Vertical => corners.sw = corners.se,
            }
            corners.se = emerging;
        }
    }
    RationalTangle { desc: desc.clone(), crossings, corners }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MontesinosDesc {
    pub tangles: Vec<TangleFraction>,
}

impl MontesinosDesc {
    /// Requires `k >= 2` and `0 < m_i <= n_i` with `gcd(m_i, n_i) = 1`.
    pub fn new(pairs: &[(u64, u64)]) -> Result<Self, DiagramError> {
        if pairs.len() < 2 {
            return Err(DiagramError::TooFewTangles(pairs.len()));
        }
        let tangles = pairs
            .iter()
            .map(|&(m, n)| {
                if m == 0 || m > n {
                    return Err(DiagramError::FractionOutOfRange { m, n });
                }
                TangleFraction::new(m, n)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { tangles })
    }

    /// The pretzel link `P(n_1, ..., n_k)` as `M(1/n_1, ..., 1/n_k)`.
    pub fn pretzel(twists: &[u64]) -> Result<Self, DiagramError> {
        if let Some(&bad) = twists.iter().find(|&&n| n == 0) {
            return Err(DiagramError::NonPositiveTwist(bad as i64));
        }
        let pairs: Vec<(u64, u64)> = twists.iter().map(|&n| (1, n)).collect();
        Self::new(&pairs)
    }

    pub fn len(&self) -> usize {
        self.tangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tangles.is_empty()
    }

    pub fn is_pretzel(&self) -> bool {
        self.tangles.iter().all(|t| t.m == 1)
    }

    pub fn numerators(&self) -> Vec<u64> {
        self.tangles.iter().map(|t| t.m).collect()
    }

    pub fn denominators(&self) -> Vec<u64> {
        self.tangles.iter().map(|t| t.n).collect()
    }
}

impl fmt::Display for MontesinosDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.tangles.iter().map(ToString::to_string).collect();
        write!(f, "M({})", s.join(","))
    }
}

/// A closed Montesinos diagram together with the tangles it was built from.
#[derive(Debug, Clone)]
pub struct MontesinosLayout {
    pub desc: MontesinosDesc,
    pub tangles: Vec<RationalTangle>,
    /// `arc_maps[i][local]` is the diagram arc of local arc `local` of tangle `i`.
    pub arc_maps: Vec<Vec<ArcId>>,
    pub diagram: LinkDiagram,
}

/// A `(tangle, local arc)` position.
type Slot = (usize, usize);

/// Merges tangle-local arcs along `joins` (pairs of `(tangle, local arc)`),
/// then numbers the merged arcs: arcs away from every corner first, ordered by
/// the crossing that creates them, then corner arcs ordered by their least
/// boundary slot.
fn close_tangles(
    tangles: &[RationalTangle],
    joins: &[(Slot, Slot)],
    slot_rank: impl Fn(usize, usize) -> usize,
    family: Family,
) -> (Vec<Vec<ArcId>>, LinkDiagram) {
    let mut offsets = Vec::with_capacity(tangles.len());
    let mut total = 0;
    for t in tangles {
        offsets.push(total);
        total += t.arc_count();
    }
    let flat = |(t, a): Slot| offsets[t] + a;
    let (class_of, classes) = merge_classes(total, joins.iter().map(|&(x, y)| (flat(x), flat(y))));

    // (is_boundary, rank)
    let mut key = vec![(false, usize::MAX); classes];
    let mut global_crossing = 0;
    for (ti, t) in tangles.iter().enumerate() {
        for (corner, &local) in t.corner_slots().iter().enumerate() {
            let c = class_of[offsets[ti] + local];
            let rank = slot_rank(ti, corner);
            key[c] = (true, if key[c].0 { key[c].1.min(rank) } else { rank });
        }
        for x in &t.crossings {
            let c = class_of[offsets[ti] + x.emerging];
            if !key[c].0 {
                key[c].1 = key[c].1.min(global_crossing);
            }
            global_crossing += 1;
        }
    }
    let mut order: Vec<usize> = (0..classes).collect();
    order.sort_by_key(|&c| key[c]);
    let mut arc_of_class = vec![0; classes];
    for (id, &c) in order.iter().enumerate() {
        arc_of_class[c] = id;
    }

    let arc_maps: Vec<Vec<ArcId>> = tangles
        .iter()
        .enumerate()
        .map(|(ti, t)| (0..t.arc_count()).map(|a| ArcId(arc_of_class[class_of[offsets[ti] + a]])).collect())
        .collect();
    let crossings = tangles
        .iter()
        .zip(&arc_maps)
        .flat_map(|(t, map)| {
            t.crossings.iter().map(move |x| Crossing {
                over: map[x.over],
                under_a: map[x.incoming],
                under_b: map[x.emerging],
            })
        })
        .collect();
    let diagram = LinkDiagram::new(classes, crossings, family).expect("closed tangles form a valid diagram");
    (arc_maps, diagram)
}

/// Closes the tangles in a row: `NE_i ~ NW_{i+1}`, `SE_i ~ SW_{i+1}`, and the
/// outermost corners `NW_1 ~ NE_k`, `SW_1 ~ SE_k`.
pub fn build_montesinos_layout(desc: &MontesinosDesc) -> MontesinosLayout {
    let tangles: Vec<RationalTangle> = desc
        .tangles
        .iter()
        .map(|f| build_rational_tangle(&RationalTangleDesc::new(f.m, f.n).expect("validated fraction")))
        .collect();
    let k = tangles.len();
    let mut joins = Vec::with_capacity(2 * k);
    for i in 0..k {
        let j = (i + 1) % k;
        joins.push(((i, tangles[i].corners.ne), (j, tangles[j].corners.nw)));
        joins.push(((i, tangles[i].corners.se), (j, tangles[j].corners.sw)));
    }
    let family =
        if desc.is_pretzel() { Family::Pretzel(desc.denominators()) } else { Family::Montesinos(desc.tangles.clone()) };
    let slot_rank = |t: usize, corner: usize| match corner {
        0 | 1 => 2 * t + corner,
        _ => 2 * k + 2 * t + (corner - 2),
    };
    let (arc_maps, diagram) = close_tangles(&tangles, &joins, slot_rank, family);
    MontesinosLayout { desc: desc.clone(), tangles, arc_maps, diagram }
}

pub fn build_montesinos(desc: &MontesinosDesc) -> LinkDiagram {
    build_montesinos_layout(desc).diagram
}

/// Pretzel link `P(n_1, ..., n_k)`: `k` vertical twist columns closed in a row.
pub fn build_pretzel(twists: &[u64]) -> Result<LinkDiagram, DiagramError> {
    Ok(build_montesinos(&MontesinosDesc::pretzel(twists)?))
}

/// The 2-bridge link of an `m/n` tangle (`m > n`), closed by joining
/// `NW ~ NE` and `SW ~ SE`.
#[derive(Debug, Clone)]
pub struct TwoBridgeLayout {
    pub tangle: RationalTangle,
    pub arc_map: Vec<ArcId>,
    pub diagram: LinkDiagram,
}

pub fn build_two_bridge(m: u64, n: u64) -> Result<TwoBridgeLayout, DiagramError> {
    let desc = RationalTangleDesc::new(m, n)?;
    if m <= n {
        return Err(DiagramError::TwoBridgeOrder { m, n });
    }
    let tangle = build_rational_tangle(&desc);
    let c = tangle.corners;
    let joins = [((0, c.nw), (0, c.ne)), ((0, c.sw), (0, c.se))];
    let tangles = [tangle];
    let (mut maps, diagram) = close_tangles(&tangles, &joins, |_, corner| corner, Family::TwoBridge { m, n });
    let [tangle] = tangles;
    Ok(TwoBridgeLayout { tangle, arc_map: maps.remove(0), diagram })
}
