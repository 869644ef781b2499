//! Link diagrams at the level of arcs: every crossing records its over-arc
//! and the two under-arcs that terminate there.

use std::fmt;

use serde::Serialize;

mod pd;
mod tangle;

pub use pd::{export_pd, import_pd};
pub use tangle::{
    build_montesinos, build_montesinos_layout, build_pretzel, build_rational_tangle, build_two_bridge,
    continued_fraction, evaluate_partial_quotients, Corners, MontesinosDesc, MontesinosLayout, RationalTangle,
    RationalTangleDesc, TangleCrossing, TangleFraction, TwistKind, TwoBridgeLayout,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("need at least two tangles, got {0}")]
    TooFewTangles(usize),
    #[error("twist parameters must be positive, got {0}")]
    NonPositiveTwist(i64),
    #[error("{m}/{n} is not in lowest terms")]
    NotCoprime { m: u64, n: u64 },
    #[error("tangle fraction {m}/{n} must satisfy 0 < m <= n")]
    FractionOutOfRange { m: u64, n: u64 },
    #[error("2-bridge closure needs m > n >= 1, got {m}/{n}")]
    TwoBridgeOrder { m: u64, n: u64 },
    #[error("crossing {crossing} refers to arc {arc}, but the diagram has {arc_count} arcs")]
    ArcOutOfRange { crossing: usize, arc: usize, arc_count: usize },
    #[error("arc {arc} has {count} under-endpoints (expected 2){}", .crossing.map(|c| format!(", at crossing {c}")).unwrap_or_default())]
    UnderEndpoints { arc: usize, count: usize, crossing: Option<usize> },
    #[error("planar diagram code has no crossings")]
    Empty,
    #[error("crossing {crossing} (line {line}): {reason}")]
    Malformed { crossing: usize, line: usize, reason: String },
    #[error("crossing {crossing}: over-strand labels {b} and {d} differ")]
    AmbiguousOver { crossing: usize, b: usize, d: usize },
    #[error("arc label {label} never occurs (labels must be 1..={max})")]
    DanglingLabel { label: usize, max: usize },
    #[error("connected sum needs knot diagrams, operand has {components} components")]
    NotAKnot { components: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ArcId(pub usize);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One crossing: `under_a + under_b = 2 over` for every coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub over: ArcId,
    pub under_a: ArcId,
    pub under_b: ArcId,
}

impl Crossing {
    pub fn new(over: usize, under_a: usize, under_b: usize) -> Self {
        Self { over: ArcId(over), under_a: ArcId(under_a), under_b: ArcId(under_b) }
    }
}

/// Where a diagram came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Pretzel(Vec<u64>),
    Montesinos(Vec<TangleFraction>),
    TwoBridge { m: u64, n: u64 },
    ConnectedSum(Box<Family>, Box<Family>),
    Unknot,
    Imported,
}

impl Family {
    /// Family-generated diagrams are reduced, alternating and prime by construction.
    pub fn certifies_hypotheses(&self) -> bool {
        matches!(self, Family::Pretzel(_) | Family::Montesinos(_) | Family::TwoBridge { .. } | Family::Unknot)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::Pretzel(_) => "pretzel",
            Family::Montesinos(_) => "montesinos",
            Family::TwoBridge { .. } => "two-bridge",
            Family::ConnectedSum(..) => "connected-sum",
            Family::Unknot => "unknot",
            Family::Imported => "imported",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Pretzel(n) => {
                let s: Vec<String> = n.iter().map(ToString::to_string).collect();
                write!(f, "P({})", s.join(","))
            }
            Family::Montesinos(t) => {
                let s: Vec<String> = t.iter().map(ToString::to_string).collect();
                write!(f, "M({})", s.join(","))
            }
            Family::TwoBridge { m, n } => write!(f, "b({m}/{n})"),
            Family::ConnectedSum(a, b) => write!(f, "{a} # {b}"),
            Family::Unknot => write!(f, "unknot"),
            Family::Imported => write!(f, "imported"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    arc_count: usize,
    crossings: Vec<Crossing>,
    components: usize,
    family: Family,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Class index per element after merging `pairs`, numbered by first occurrence.
pub(crate) fn merge_classes(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let mut ids = vec![usize::MAX; n];
    let mut next = 0;
    let class_of = (0..n)
        .map(|x| {
            let r = uf.find(x);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            ids[r]
        })
        .collect();
    (class_of, next)
}

impl LinkDiagram {
    /// Validates ids and that every arc ends at exactly two under-endpoints.
    /// An arc touching no crossing at all is accepted as a free unknotted loop.
    pub fn new(arc_count: usize, crossings: Vec<Crossing>, family: Family) -> Result<Self, DiagramError> {
        let mut under = vec![0usize; arc_count];
        let mut seen = vec![false; arc_count];
        let mut last = vec![None; arc_count];
        for (i, c) in crossings.iter().enumerate() {
            for a in [c.over, c.under_a, c.under_b] {
                if a.0 >= arc_count {
                    return Err(DiagramError::ArcOutOfRange { crossing: i, arc: a.0, arc_count });
                }
                seen[a.0] = true;
            }
            for a in [c.under_a, c.under_b] {
                under[a.0] += 1;
                last[a.0] = Some(i);
                if under[a.0] > 2 {
                    return Err(DiagramError::UnderEndpoints { arc: a.0, count: under[a.0], crossing: Some(i) });
                }
            }
        }
        for arc in 0..arc_count {
            if under[arc] != 2 && !(under[arc] == 0 && !seen[arc]) {
                return Err(DiagramError::UnderEndpoints { arc, count: under[arc], crossing: last[arc] });
            }
        }
        let (_, components) = merge_classes(arc_count, crossings.iter().map(|c| (c.under_a.0, c.under_b.0)));
        Ok(Self { arc_count, crossings, components, family })
    }

    /// The zero-crossing unknot: one free arc.
    pub fn unknot() -> Self {
        Self { arc_count: 1, crossings: Vec::new(), components: 1, family: Family::Unknot }
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    /// In an alternating diagram each arc passes over exactly one crossing.
    pub fn is_alternating(&self) -> bool {
        let mut over = vec![0usize; self.arc_count];
        for c in &self.crossings {
            over[c.over.0] += 1;
        }
        let mut touched = vec![false; self.arc_count];
        for c in &self.crossings {
            touched[c.under_a.0] = true;
            touched[c.under_b.0] = true;
        }
        (0..self.arc_count).all(|a| over[a] == 1 || (!touched[a] && over[a] == 0))
    }

    /// Arc ids grouped by link component.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        let (class_of, n) = merge_classes(self.arc_count, self.crossings.iter().map(|c| (c.under_a.0, c.under_b.0)));
        let mut out = vec![Vec::new(); n];
        for (arc, &c) in class_of.iter().enumerate() {
            out[c].push(ArcId(arc));
        }
        out
    }

    /// True when some bijection of arcs maps the crossing multiset of `self`
    /// onto that of `other`.
    pub fn is_relabeling_of(&self, other: &LinkDiagram) -> bool {
        if self.arc_count != other.arc_count || self.crossings.len() != other.crossings.len() {
            return false;
        }
        let n = self.arc_count;
        let mut fwd = vec![usize::MAX; n];
        let mut bwd = vec![usize::MAX; n];
        let mut used = vec![false; other.crossings.len()];
        let free_loops = |d: &LinkDiagram| {
            let mut touched = vec![false; d.arc_count];
            for c in &d.crossings {
                for a in [c.over, c.under_a, c.under_b] {
                    touched[a.0] = true;
                }
            }
            touched.iter().filter(|t| !**t).count()
        };
        if free_loops(self) != free_loops(other) {
            return false;
        }
        iso_search(&self.crossings, &other.crossings, 0, &mut fwd, &mut bwd, &mut used)
    }

    /// Diagram export in the JSON shape used by reports.
    pub fn export(&self) -> DiagramExport {
        let params = match &self.family {
            Family::Pretzel(n) => FamilyParams::Twists(n.clone()),
            Family::Montesinos(t) => FamilyParams::Fractions(t.iter().map(|f| [f.m, f.n]).collect()),
            Family::TwoBridge { m, n } => FamilyParams::Fractions(vec![[*m, *n]]),
            _ => FamilyParams::Twists(Vec::new()),
        };
        DiagramExport {
            arc_count: self.arc_count,
            crossings: self.crossings.iter().map(|c| [c.over.0, c.under_a.0, c.under_b.0]).collect(),
            components: self.components,
            family: self.family.kind(),
            params,
        }
    }
}

fn try_bind(a: usize, b: usize, fwd: &mut [usize], bwd: &mut [usize], log: &mut Vec<usize>) -> bool {
    match (fwd[a], bwd[b]) {
        (x, y) if x == b && y == a => true,
        (usize::MAX, usize::MAX) => {
            fwd[a] = b;
            bwd[b] = a;
            log.push(a);
            true
        }
        _ => false,
    }
}

fn iso_search(
    xs: &[Crossing],
    ys: &[Crossing],
    i: usize,
    fwd: &mut Vec<usize>,
    bwd: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if i == xs.len() {
        return true;
    }
    let x = xs[i];
    for j in 0..ys.len() {
        if used[j] {
            continue;
        }
        let y = ys[j];
        for (ya, yb) in [(y.under_a, y.under_b), (y.under_b, y.under_a)] {
            let mut log = Vec::new();
            let ok = try_bind(x.over.0, y.over.0, fwd, bwd, &mut log)
                && try_bind(x.under_a.0, ya.0, fwd, bwd, &mut log)
                && try_bind(x.under_b.0, yb.0, fwd, bwd, &mut log);
            if ok {
                used[j] = true;
                if iso_search(xs, ys, i + 1, fwd, bwd, used) {
                    return true;
                }
                used[j] = false;
            }
            for a in log {
                bwd[fwd[a]] = usize::MAX;
                fwd[a] = usize::MAX;
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FamilyParams {
    Twists(Vec<u64>),
    Fractions(Vec<[u64; 2]>),
}

/// `{ "arc_count", "crossings": [[over, under_a, under_b], ...], "components", "family", "params" }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramExport {
    pub arc_count: usize,
    pub crossings: Vec<[usize; 3]>,
    pub components: usize,
    pub family: &'static str,
    pub params: FamilyParams,
}

/// The result of splicing two knot diagrams together, with the two arcs
/// that cross the splitting sphere.
#[derive(Debug, Clone)]
pub struct ConnectedSum {
    pub diagram: LinkDiagram,
    pub connecting_arcs: (ArcId, ArcId),
}

/// Connected sum along arc 0 of each operand.
pub fn connected_sum(d1: &LinkDiagram, d2: &LinkDiagram) -> Result<ConnectedSum, DiagramError> {
    connected_sum_at(d1, ArcId(0), d2, ArcId(0))
}

/// Cuts `a1` and `a2` next to one of their under-endpoints and reconnects the
/// loose ends across the two diagrams. Arcs of `d2` are shifted by the arc
/// count of `d1`.
pub fn connected_sum_at(
    d1: &LinkDiagram,
    a1: ArcId,
    d2: &LinkDiagram,
    a2: ArcId,
) -> Result<ConnectedSum, DiagramError> {
    for d in [d1, d2] {
        if !d.is_knot() {
            return Err(DiagramError::NotAKnot { components: d.components });
        }
    }
    let family = Family::ConnectedSum(Box::new(d1.family.clone()), Box::new(d2.family.clone()));
    let shift = d1.arc_count;
    let mut crossings = d1.crossings.clone();
    crossings
        .extend(d2.crossings.iter().map(|c| Crossing::new(c.over.0 + shift, c.under_a.0 + shift, c.under_b.0 + shift)));
    let b = ArcId(a2.0 + shift);

    let first_under = |cs: &[Crossing], range: std::ops::Range<usize>, arc: ArcId| {
        cs[range].iter().enumerate().find_map(|(i, c)| {
            if c.under_a == arc {
                Some((i, false))
            } else if c.under_b == arc {
                Some((i, true))
            } else {
                None
            }
        })
    };
    let n1 = d1.crossings.len();
    let slot1 = first_under(&crossings, 0..n1, a1);
    let slot2 = first_under(&crossings, n1..crossings.len(), b).map(|(i, s)| (i + n1, s));

    match (slot1, slot2) {
        (Some(s1), Some(s2)) => {
            for ((i, second), arc) in [(s1, b), (s2, a1)] {
                let c = &mut crossings[i];
                if second {
                    c.under_b = arc;
                } else {
                    c.under_a = arc;
                }
            }
            let diagram = LinkDiagram::new(d1.arc_count + d2.arc_count, crossings, family)?;
            Ok(ConnectedSum { diagram, connecting_arcs: (a1.min(b), a1.max(b)) })
        }
        // a crossingless operand is a free loop and is absorbed into the other arc
        _ => {
            let (keep, arc) = if slot1.is_none() { (d2, a2) } else { (d1, a1) };
            let diagram = keep.clone().with_family(family);
            Ok(ConnectedSum { diagram, connecting_arcs: (arc, arc) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::new(
            3,
            vec![Crossing::new(2, 0, 1), Crossing::new(0, 1, 2), Crossing::new(1, 2, 0)],
            Family::Imported,
        )
        .unwrap()
    }

    #[test]
    fn validation_errors() {
        let err = LinkDiagram::new(2, vec![Crossing::new(0, 1, 5)], Family::Imported).unwrap_err();
        assert!(matches!(err, DiagramError::ArcOutOfRange { arc: 5, .. }));
        let err =
            LinkDiagram::new(2, vec![Crossing::new(0, 1, 1), Crossing::new(0, 1, 0)], Family::Imported).unwrap_err();
        assert!(matches!(err, DiagramError::UnderEndpoints { arc: 1, count: 3, .. }));
    }

    #[test]
    fn trefoil_basics() {
        let t = trefoil();
        assert_eq!(t.component_count(), 1);
        assert!(t.is_alternating());
        assert_eq!(t.export().crossings, vec![[2, 0, 1], [0, 1, 2], [1, 2, 0]]);
    }

    #[test]
    fn relabeling_detects_isomorphism() {
        let t = trefoil();
        let perm = LinkDiagram::new(
            3,
            vec![Crossing::new(1, 2, 0), Crossing::new(0, 2, 1), Crossing::new(2, 0, 1)],
            Family::Imported,
        )
        .unwrap();
        assert!(t.is_relabeling_of(&perm));
        assert!(!t.is_relabeling_of(&LinkDiagram::unknot()));
    }

    #[test]
    fn connected_sum_of_trefoils() {
        let t = trefoil();
        let s = connected_sum(&t, &t).unwrap();
        assert_eq!(s.diagram.crossing_count(), 6);
        assert_eq!(s.diagram.arc_count(), 6);
        assert_eq!(s.diagram.component_count(), 1);
        assert!(s.diagram.is_alternating());
        assert_eq!(s.connecting_arcs, (ArcId(0), ArcId(3)));
    }

    #[test]
    fn connected_sum_with_unknot_is_identity() {
        let t = trefoil();
        let s = connected_sum(&t, &LinkDiagram::unknot()).unwrap();
        assert!(s.diagram.is_relabeling_of(&t));
        let s = connected_sum(&LinkDiagram::unknot(), &t).unwrap();
        assert!(s.diagram.is_relabeling_of(&t));
    }

    #[test]
    fn connected_sum_rejects_links() {
        let hopf = build_pretzel(&[1, 1]).unwrap();
        assert_eq!(hopf.component_count(), 2);
        let err = connected_sum(&hopf, &trefoil()).unwrap_err();
        assert_eq!(err, DiagramError::NotAKnot { components: 2 });
    }
}
