//! Planar-diagram text: one crossing per line, `X a b c d`, 1-based arc
//! labels, listed counterclockwise from an under-strand. Positions 1 and 3
//! are the under-arcs, positions 2 and 4 both name the over-arc.

use super::{ArcId, Crossing, DiagramError, Family, LinkDiagram};

pub fn import_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut raw: Vec<[usize; 4]> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let crossing = raw.len();
        let malformed = |reason: String| DiagramError::Malformed { crossing, line: lineno + 1, reason };
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("X") => {}
            Some(t) => return Err(malformed(format!("expected `X`, found `{t}`"))),
            None => unreachable!(),
        }
        let labels = tokens
            .map(|t| t.parse::<usize>().map_err(|_| malformed(format!("`{t}` is not an arc label"))))
            .collect::<Result<Vec<_>, _>>()?;
        let Ok(labels) = <[usize; 4]>::try_from(labels.as_slice()) else {
            return Err(malformed(format!("expected 4 labels, found {}", labels.len())));
        };
        if labels.contains(&0) {
            return Err(malformed("arc labels are 1-based".into()));
        }
        if labels[1] != labels[3] {
            return Err(DiagramError::AmbiguousOver { crossing, b: labels[1], d: labels[3] });
        }
        raw.push(labels);
    }
    if raw.is_empty() {
        return Err(DiagramError::Empty);
    }

    let max = raw.iter().flatten().copied().max().unwrap_or(0);
    let mut present = vec![false; max + 1];
    let mut under = vec![0usize; max + 1];
    for (i, x) in raw.iter().enumerate() {
        for &l in x {
            present[l] = true;
        }
        for l in [x[0], x[2]] {
            under[l] += 1;
            if under[l] > 2 {
                return Err(DiagramError::UnderEndpoints { arc: l, count: under[l], crossing: Some(i) });
            }
        }
    }
    if let Some(label) = (1..=max).find(|&l| !present[l]) {
        return Err(DiagramError::DanglingLabel { label, max });
    }
    if let Some(arc) = (1..=max).find(|&l| under[l] != 2) {
        let crossing = raw.iter().rposition(|x| x.contains(&arc));
        return Err(DiagramError::UnderEndpoints { arc, count: under[arc], crossing });
    }

    let crossings = raw
        .iter()
        .map(|x| Crossing { over: ArcId(x[1] - 1), under_a: ArcId(x[0] - 1), under_b: ArcId(x[2] - 1) })
        .collect();
    LinkDiagram::new(max, crossings, Family::Imported)
}

pub fn export_pd(d: &LinkDiagram) -> String {
    let mut out = format!("# {}\n", d.family());
    for c in d.crossings() {
        let (o, a, b) = (c.over.0 + 1, c.under_a.0 + 1, c.under_b.0 + 1);
        out.push_str(&format!("X {a} {o} {b} {o}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "# trefoil\nX 1 3 2 3\nX 2 1 3 1\n\nX 3 2 1 2\n";

    #[test]
    fn imports_trefoil() {
        let d = import_pd(TREFOIL).unwrap();
        assert_eq!((d.crossing_count(), d.arc_count(), d.component_count()), (3, 3, 1));
        assert_eq!(d.crossings()[0], Crossing::new(2, 0, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(import_pd("").unwrap_err(), DiagramError::Empty);
        assert_eq!(import_pd("# nothing\n\n").unwrap_err(), DiagramError::Empty);
        assert!(matches!(import_pd("X 1 2 3").unwrap_err(), DiagramError::Malformed { crossing: 0, .. }));
        assert!(matches!(
            import_pd("X 1 2 3 2\nY 1 2 3 4").unwrap_err(),
            DiagramError::Malformed { crossing: 1, line: 2, .. }
        ));
        assert!(matches!(import_pd("X 1 a 3 2").unwrap_err(), DiagramError::Malformed { .. }));
        assert_eq!(import_pd("X 1 2 3 4").unwrap_err(), DiagramError::AmbiguousOver { crossing: 0, b: 2, d: 4 });
        // arc 1 used as an under-strand three times
        let err = import_pd("X 1 3 2 3\nX 1 1 3 1\nX 3 2 1 2\n").unwrap_err();
        assert!(matches!(err, DiagramError::UnderEndpoints { arc: 1, count: 3, crossing: Some(2) }));
        let err = import_pd("X 1 4 2 4\nX 2 1 4 1\nX 4 2 1 2\n").unwrap_err();
        assert_eq!(err, DiagramError::DanglingLabel { label: 3, max: 4 });
    }

    #[test]
    fn roundtrip_preserves_crossings() {
        let d = import_pd(TREFOIL).unwrap();
        let again = import_pd(&export_pd(&d)).unwrap();
        assert_eq!(again.crossings(), d.crossings());
    }
}
