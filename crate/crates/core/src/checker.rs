//! Verdicts for the Kauffman-Harary conjecture (prime determinant, Fox
//! colorings) and its homological generalization (distinct arc classes in
//! `H_1` of the double branched cover), plus family sweeps.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith;
use crate::bigser;
use crate::coloring::{coloring_group, propagate_tangle, ColoringReport, ColoringVector};
use crate::diagram::{
    build_montesinos_layout, build_two_bridge, connected_sum, ArcId, DiagramError, LinkDiagram, MontesinosDesc,
};
use crate::homology::{cross_validate_with, h1_from_diagram, pretzel_cyclicity_gcd, CrossValidation, HomologyError};
use crate::linalg::{AbelianGroupShape, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conjecture {
    Kh,
    Gkh,
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conjecture::Kh => "kh",
            Conjecture::Gkh => "gkh",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable(String),
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable(_) => "not_applicable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotApplicable(reason) => write!(f, "not_applicable ({reason})"),
            v => f.write_str(v.as_str()),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The value two colliding arcs share.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessLabel {
    Homology(GroupElement),
    Color(u64),
}

impl fmt::Display for WitnessLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessLabel::Homology(g) => write!(f, "{g}"),
            WitnessLabel::Color(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub arcs: [usize; 2],
    pub label: WitnessLabel,
}

#[derive(Debug, Clone, Serialize)]
pub struct GkhReport {
    pub diagram: String,
    pub family: &'static str,
    pub conjecture: Conjecture,
    pub arc_count: usize,
    pub crossing_count: usize,
    pub components: usize,
    pub group: AbelianGroupShape,
    #[serde(serialize_with = "bigser::one_big")]
    pub determinant: BigInt,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub pinned_arc: usize,
    pub distinct_labels: usize,
    /// Homology class of every arc (empty for the coloring check).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<GroupElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring_evidence: Option<ColoringReport>,
    pub hypotheses_certified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl GkhReport {
    fn base(d: &LinkDiagram, conjecture: Conjecture, group: AbelianGroupShape, pinned: ArcId) -> Self {
        let mut notes = Vec::new();
        let certified = d.family().certifies_hypotheses();
        if !certified {
            notes.push("primeness and absence of nugatory crossings are not verified for this diagram".into());
        }
        if !d.is_alternating() {
            notes.push("diagram is not alternating".into());
        }
        GkhReport {
            diagram: d.family().to_string(),
            family: d.family().kind(),
            conjecture,
            arc_count: d.arc_count(),
            crossing_count: d.crossing_count(),
            components: d.component_count(),
            determinant: group.order(),
            group,
            verdict: Verdict::Holds,
            reason: None,
            witness: None,
            pinned_arc: pinned.0,
            distinct_labels: 0,
            labels: Vec::new(),
            coloring_evidence: None,
            hypotheses_certified: certified,
            notes,
        }
    }

    fn not_applicable(mut self, reason: String) -> Self {
        self.reason = Some(reason.clone());
        self.verdict = Verdict::NotApplicable(reason);
        self
    }

    /// Re-derives the witness from the stored labels or coloring.
    pub fn witness_is_consistent(&self) -> bool {
        let Some(w) = &self.witness else {
            return self.verdict != Verdict::Fails;
        };
        let [a, b] = w.arcs;
        match &w.label {
            WitnessLabel::Homology(g) => self.labels.get(a) == Some(g) && self.labels.get(b) == Some(g) && a != b,
            WitnessLabel::Color(c) => self
                .coloring_evidence
                .as_ref()
                .is_some_and(|e| e.colors.get(a) == Some(c) && e.colors.get(b) == Some(c) && a != b),
        }
    }
}

/// Kauffman-Harary for a knot whose determinant `p` is prime: one
/// nontrivial `p`-coloring, checked for pairwise distinct colors.
pub fn check_kh_prime(d: &LinkDiagram) -> GkhReport {
    let h = h1_from_diagram(d, ArcId(0)).expect("arc 0 exists");
    let report = GkhReport::base(d, Conjecture::Kh, h.shape, ArcId(0));
    if !d.is_knot() {
        return report.not_applicable(format!(
            "diagram has {} components; the prime-determinant form needs a knot (use gkh)",
            d.component_count()
        ));
    }
    let Some(p) = arith::as_prime(&report.determinant) else {
        let det = report.determinant.clone();
        return report.not_applicable(format!("determinant {det} is not prime"));
    };
    let coloring = representative_coloring(d, p).expect("a prime determinant admits nontrivial colorings");
    finish_kh(report, coloring)
}

fn finish_kh(mut report: GkhReport, coloring: ColoringVector) -> GkhReport {
    let evidence = coloring.report();
    report.distinct_labels = {
        let mut c = coloring.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    if let Some(&(a, b)) = coloring.repeats().first() {
        report.verdict = Verdict::Fails;
        report.witness = Some(Witness { arcs: [a.0, b.0], label: WitnessLabel::Color(coloring.colors[a.0]) });
    }
    report.coloring_evidence = Some(evidence);
    report
}

/// A nontrivial `p`-coloring normalized so that arc 0 has color 0 and the
/// first arc with a different color has color 1.
pub fn representative_coloring(d: &LinkDiagram, p: u64) -> Option<ColoringVector> {
    let group = coloring_group(d, p).ok()?;
    let g = group.generators.into_iter().find(|g| !g.is_trivial())?;
    let shift = g.colors[0];
    let shifted: Vec<u64> = g.colors.iter().map(|&c| (c + p - shift) % p).collect();
    let first = *shifted.iter().find(|&&c| c != 0)?;
    let inv = BigInt::from(first).modinv(&BigInt::from(p))?.to_u64()?;
    Some(ColoringVector::new(p, shifted.iter().map(|&c| ((c as u128 * inv as u128) % p as u128) as u64)))
}

/// Generalized Kauffman-Harary with arc 0 pinned.
pub fn check_gkh(d: &LinkDiagram) -> GkhReport {
    check_gkh_pinned(d, ArcId(0)).expect("arc 0 exists")
}

/// Generalized Kauffman-Harary: arcs must represent pairwise distinct
/// elements of `H_1`. The witness is the lexicographically least collision.
pub fn check_gkh_pinned(d: &LinkDiagram, pinned: ArcId) -> Result<GkhReport, HomologyError> {
    let h = h1_from_diagram(d, pinned)?;
    let mut report = GkhReport::base(d, Conjecture::Gkh, h.shape.clone(), pinned);
    report.distinct_labels = h.distinct_labels();
    if let Some((a, b)) = h.first_collision() {
        report.verdict = Verdict::Fails;
        report.witness = Some(Witness { arcs: [a.0, b.0], label: WitnessLabel::Homology(h.labels[a.0].clone()) });
    }
    report.labels = h.labels;
    Ok(report)
}

pub fn check(d: &LinkDiagram, conjecture: Conjecture, pinned: ArcId) -> Result<GkhReport, HomologyError> {
    match conjecture {
        Conjecture::Kh => Ok(check_kh_prime(d)),
        Conjecture::Gkh => check_gkh_pinned(d, pinned),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoBridgeReport {
    pub m: u64,
    pub n: u64,
    #[serde(flatten)]
    pub gkh: GkhReport,
    /// `H_1` is cyclic of order `m`.
    pub h1_is_cyclic_m: bool,
    /// Unreduced labels of the tangle arcs, seeded with `0` and `1`.
    #[serde(serialize_with = "bigser::vec")]
    pub unreduced_labels: Vec<BigInt>,
    /// Every crossing has `incoming < over < emerging`.
    pub monotone: bool,
    /// Labels lie in `[0, m + n]`.
    pub bounded: bool,
    /// The closed diagram's arcs get pairwise distinct labels modulo `m`.
    pub distinct_mod_m: bool,
}

impl TwoBridgeReport {
    pub fn all_checks_pass(&self) -> bool {
        self.gkh.verdict == Verdict::Holds
            && self.h1_is_cyclic_m
            && self.monotone
            && self.bounded
            && self.distinct_mod_m
    }
}

/// The closed `m/n` 2-bridge diagram: homology, propagated labels and GKH.
pub fn two_bridge_check(m: u64, n: u64) -> Result<TwoBridgeReport, DiagramError> {
    let layout = build_two_bridge(m, n)?;
    let gkh = check_gkh(&layout.diagram);
    let h1_is_cyclic_m = gkh.group.is_cyclic() && gkh.group.order() == BigInt::from(m);

    let labels = propagate_tangle(&layout.tangle, &BigInt::zero(), &BigInt::from(1));
    let monotone = layout
        .tangle
        .crossings
        .iter()
        .all(|x| labels[x.incoming] < labels[x.over] && labels[x.over] < labels[x.emerging]);
    let top = BigInt::from(m + n);
    let bounded = labels.iter().all(|l| !l.is_negative() && *l <= top);

    let modulus = BigInt::from(m);
    let mut residues: Vec<Option<BigInt>> = vec![None; layout.diagram.arc_count()];
    let mut consistent = true;
    for (local, label) in labels.iter().enumerate() {
        let r = label.mod_floor(&modulus);
        let slot = &mut residues[layout.arc_map[local].0];
        match slot {
            Some(prev) if *prev != r => consistent = false,
            _ => *slot = Some(r),
        }
    }
    let mut seen: Vec<BigInt> = residues.into_iter().flatten().collect();
    let total = seen.len();
    seen.sort();
    seen.dedup();
    let distinct_mod_m = consistent && total == layout.diagram.arc_count() && seen.len() == total;

    Ok(TwoBridgeReport { m, n, gkh, h1_is_cyclic_m, unreduced_labels: labels, monotone, bounded, distinct_mod_m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepFamily {
    Pretzel,
    Montesinos,
}

impl fmt::Display for SweepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepFamily::Pretzel => "pretzel",
            SweepFamily::Montesinos => "montesinos",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepBounds {
    /// Number of tangles.
    pub k: RangeInclusive<usize>,
    /// Twist counts (pretzel) or denominators (Montesinos).
    pub n: RangeInclusive<u64>,
}

impl Serialize for SweepBounds {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct B {
            k: [usize; 2],
            n: [u64; 2],
        }
        B { k: [*self.k.start(), *self.k.end()], n: [*self.n.start(), *self.n.end()] }.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SweepError {
    #[error("sweep bounds are empty: k in {k_lo}..={k_hi}, n in {n_lo}..={n_hi}")]
    EmptyBounds { k_lo: usize, k_hi: usize, n_lo: u64, n_hi: u64 },
    #[error("sweeps need at least 2 tangles, got k from {0}")]
    TooFewTangles(usize),
    #[error("twists and denominators must be positive")]
    NonPositive,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub bounds: SweepBounds,
    /// Extra diagrams checked alongside the family; used as negative controls.
    pub controls: Vec<LinkDiagram>,
}

impl SweepConfig {
    pub fn new(family: SweepFamily, k: RangeInclusive<usize>, n: RangeInclusive<u64>) -> Self {
        SweepConfig { family, bounds: SweepBounds { k, n }, controls: Vec::new() }
    }

    pub fn with_control(mut self, d: LinkDiagram) -> Self {
        self.controls.push(d);
        self
    }

    /// Every family member within the bounds, in canonical order: by `k`,
    /// then lexicographically in the parameter tuple.
    pub fn instances(&self) -> Result<Vec<MontesinosDesc>, SweepError> {
        let (k, n) = (&self.bounds.k, &self.bounds.n);
        if k.is_empty() || n.is_empty() {
            return Err(SweepError::EmptyBounds { k_lo: *k.start(), k_hi: *k.end(), n_lo: *n.start(), n_hi: *n.end() });
        }
        if *k.start() < 2 {
            return Err(SweepError::TooFewTangles(*k.start()));
        }
        if *n.start() == 0 {
            return Err(SweepError::NonPositive);
        }
        let letters: Vec<(u64, u64)> = match self.family {
            SweepFamily::Pretzel => n.clone().map(|n| (1, n)).collect(),
            SweepFamily::Montesinos => {
                n.clone().flat_map(|n| (1..=n).filter(move |&m| m.gcd(&n) == 1).map(move |m| (m, n))).collect()
            }
        };
        let mut out = Vec::new();
        for k in k.clone() {
            let mut idx = vec![0usize; k];
            loop {
                let pairs: Vec<(u64, u64)> = idx.iter().map(|&i| letters[i]).collect();
                out.push(MontesinosDesc::new(&pairs).expect("enumerated fractions are valid"));
                let Some(pos) = (0..k).rev().find(|&p| idx[p] + 1 < letters.len()) else {
                    break;
                };
                idx[pos] += 1;
                idx[pos + 1..].iter_mut().for_each(|i| *i = 0);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct KhTally {
    pub applicable: usize,
    pub holds: usize,
    pub fails: usize,
    /// Knots with prime determinant where the two checks disagree.
    pub disagreements: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CrossValidationTally {
    pub checked: usize,
    pub mismatches: Vec<CrossValidation>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CyclicityTally {
    pub checked: usize,
    /// Pretzels where cyclicity of `H_1` and the gcd criterion disagree.
    pub disagreements: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub family: SweepFamily,
    pub bounds: SweepBounds,
    pub instances: usize,
    pub holds: usize,
    pub fails: usize,
    pub not_applicable: usize,
    pub failures: Vec<GkhReport>,
    pub kh: KhTally,
    pub cross_validation: CrossValidationTally,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclicity: Option<CyclicityTally>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.fails == 0
            && self.kh.fails == 0
            && self.kh.disagreements.is_empty()
            && self.cross_validation.mismatches.is_empty()
            && self.cyclicity.as_ref().is_none_or(|c| c.disagreements.is_empty())
    }
}

struct InstanceOutcome {
    gkh: GkhReport,
    kh: Option<GkhReport>,
    validation: Option<CrossValidation>,
    cyclicity_disagreement: Option<String>,
    pretzel: bool,
}

fn run_instance(desc: &MontesinosDesc) -> InstanceOutcome {
    let layout = build_montesinos_layout(desc);
    let d = &layout.diagram;
    let gkh = check_gkh(d);
    let kh = (d.is_knot() && arith::as_prime(&gkh.determinant).is_some()).then(|| check_kh_prime(d));
    let validation = cross_validate_with(desc, d);
    let cyclicity_disagreement = desc.is_pretzel().then(|| {
        let criterion = pretzel_cyclicity_gcd(&desc.denominators()) == BigInt::from(1);
        (criterion != gkh.group.is_cyclic())
            .then(|| format!("{}: H_1 = {}, gcd criterion says cyclic = {criterion}", gkh.diagram, gkh.group))
    });
    InstanceOutcome {
        gkh,
        kh,
        validation: Some(validation),
        cyclicity_disagreement: cyclicity_disagreement.flatten(),
        pretzel: desc.is_pretzel(),
    }
}

fn run_control(d: &LinkDiagram) -> InstanceOutcome {
    InstanceOutcome { gkh: check_gkh(d), kh: None, validation: None, cyclicity_disagreement: None, pretzel: false }
}

#[cfg(feature = "parallel")]
fn map_all<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_all<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Runs the GKH check, the prime-determinant KH check where it applies, the
/// three-route homology comparison and (for pretzels) the cyclicity
/// criterion over every instance in the bounds, then over the controls.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport, SweepError> {
    let descs = config.instances()?;
    let mut outcomes = map_all(&descs, run_instance);
    outcomes.extend(map_all(&config.controls, run_control));

    let mut report = SweepReport {
        family: config.family,
        bounds: config.bounds.clone(),
        instances: outcomes.len(),
        holds: 0,
        fails: 0,
        not_applicable: 0,
        failures: Vec::new(),
        kh: KhTally::default(),
        cross_validation: CrossValidationTally::default(),
        cyclicity: (config.family == SweepFamily::Pretzel).then(CyclicityTally::default),
    };
    for o in outcomes {
        if let Some(kh) = &o.kh {
            report.kh.applicable += 1;
            match kh.verdict {
                Verdict::Holds => report.kh.holds += 1,
                Verdict::Fails => report.kh.fails += 1,
                Verdict::NotApplicable(_) => {}
            }
            if kh.verdict != o.gkh.verdict {
                report.kh.disagreements.push(format!("{}: kh {} vs gkh {}", o.gkh.diagram, kh.verdict, o.gkh.verdict));
            }
        }
        if let Some(v) = o.validation {
            report.cross_validation.checked += 1;
            if !v.consistent {
                report.cross_validation.mismatches.push(v);
            }
        }
        if let Some(c) = &mut report.cyclicity {
            c.checked += usize::from(o.pretzel);
            c.disagreements.extend(o.cyclicity_disagreement);
        }
        match o.gkh.verdict {
            Verdict::Holds => report.holds += 1,
            Verdict::Fails => {
                report.fails += 1;
                report.failures.push(o.gkh);
            }
            Verdict::NotApplicable(_) => report.not_applicable += 1,
        }
    }
    Ok(report)
}

/// The connected sum of two standard trefoils, a composite knot whose
/// connecting arcs always share a homology class.
pub fn trefoil_sum_control() -> LinkDiagram {
    let t = crate::diagram::build_pretzel(&[1, 1, 1]).expect("valid pretzel");
    connected_sum(&t, &t).expect("trefoil is a knot").diagram
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_pretzel, connected_sum};

    #[test]
    fn kh_holds_for_p_11_7_5_2() {
        let r = check_kh_prime(&build_pretzel(&[11, 7, 5, 2]).unwrap());
        assert_eq!(r.determinant, BigInt::from(719));
        assert_eq!(r.verdict, Verdict::Holds);
        let e = r.coloring_evidence.unwrap();
        assert_eq!((e.k, e.colors.len(), e.distinct), (719, 25, true));
    }

    #[test]
    fn kh_on_trefoil_and_composites() {
        let t = build_pretzel(&[1, 1, 1]).unwrap();
        let r = check_kh_prime(&t);
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.coloring_evidence.unwrap().colors, vec![0, 1, 2]);
        let sum = connected_sum(&t, &t).unwrap().diagram;
        let r = check_kh_prime(&sum);
        assert_eq!(r.verdict, Verdict::NotApplicable("determinant 9 is not prime".into()));
        let hopf = build_pretzel(&[1, 1]).unwrap();
        assert!(matches!(check_kh_prime(&hopf).verdict, Verdict::NotApplicable(_)));
    }

    #[test]
    fn gkh_examples() {
        let r = check_gkh(&build_pretzel(&[3, 3, 3]).unwrap());
        assert_eq!((r.verdict.clone(), r.distinct_labels), (Verdict::Holds, 9));
        let r = check_gkh(&build_pretzel(&[15, 10, 6]).unwrap());
        assert_eq!((r.verdict.clone(), r.distinct_labels), (Verdict::Holds, 31));
        assert!(r.hypotheses_certified);
    }

    #[test]
    fn gkh_fails_on_connected_sum_at_connecting_arcs() {
        let t = build_pretzel(&[1, 1, 1]).unwrap();
        let sum = connected_sum(&t, &t).unwrap();
        let r = check_gkh(&sum.diagram);
        assert_eq!(r.verdict, Verdict::Fails);
        let w = r.witness.clone().unwrap();
        assert_eq!(w.arcs, [sum.connecting_arcs.0 .0, sum.connecting_arcs.1 .0]);
        assert!(r.witness_is_consistent());
        assert!(!r.hypotheses_certified);
    }

    #[test]
    fn two_bridge_small_cases() {
        for (m, n) in [(3, 1), (5, 2), (7, 3), (13, 5)] {
            let r = two_bridge_check(m, n).unwrap();
            assert!(r.all_checks_pass(), "{m}/{n}: {r:?}");
        }
        assert_eq!(two_bridge_check(2, 3).unwrap_err(), DiagramError::TwoBridgeOrder { m: 2, n: 3 });
    }

    #[test]
    fn sweep_enumeration_order_and_size() {
        let c = SweepConfig::new(SweepFamily::Pretzel, 2..=3, 1..=2);
        let inst = c.instances().unwrap();
        assert_eq!(inst.len(), 4 + 8);
        assert_eq!(inst[1].denominators(), vec![1, 2]);
        let c = SweepConfig::new(SweepFamily::Montesinos, 2..=2, 1..=3);
        let inst = c.instances().unwrap();
        assert_eq!(inst.len(), 16);
        assert_eq!(inst[3].to_string(), "M(1/1,2/3)");
    }

    #[test]
    fn sweep_rejects_empty_bounds() {
        #[allow(clippy::reversed_empty_ranges)]
        let c = SweepConfig::new(SweepFamily::Pretzel, 3..=2, 1..=4);
        assert!(matches!(sweep(&c).unwrap_err(), SweepError::EmptyBounds { .. }));
        let c = SweepConfig::new(SweepFamily::Pretzel, 1..=2, 1..=4);
        assert_eq!(sweep(&c).unwrap_err(), SweepError::TooFewTangles(1));
    }

    #[test]
    fn small_sweep_with_control() {
        let c = SweepConfig::new(SweepFamily::Pretzel, 2..=3, 1..=3).with_control(trefoil_sum_control());
        let r = sweep(&c).unwrap();
        assert_eq!(r.instances, 9 + 27 + 1);
        assert_eq!(r.fails, 1);
        assert_eq!(r.failures[0].family, "connected-sum");
        assert!(r.cross_validation.mismatches.is_empty());
        assert!(r.cyclicity.unwrap().disagreements.is_empty());
    }
}
