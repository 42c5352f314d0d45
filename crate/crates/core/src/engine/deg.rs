//! The DEG text format:
//!
//! ```text
//! deg 1
//! n 4 stat peak
//! vertex a { 3 }
//! vertex b { 2 }
//! edge 2 a b
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::{index_range, DEGround, StatKind};
use crate::error::{Error, Result};
use crate::stats::{parse_members, DescentSet, PeakSet, MAX_DEGREE};

pub fn parse_deg(text: &str) -> Result<DEGround> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (no, header) = lines.next().ok_or_else(|| Error::parse(1, "empty DEG file"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["deg", "1"] {
        return Err(Error::parse(no, format!("expected `deg 1`, got {header:?}")));
    }
    let (no, line) = lines
        .next()
        .ok_or_else(|| Error::parse(no + 1, "missing `n <degree> stat <des|peak>` line"))?;
    let (degree, kind) = match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", d, "stat", k] => {
            let d: usize = d
                .parse()
                .map_err(|_| Error::parse(no, format!("bad degree {d:?}")))?;
            if d == 0 || d > MAX_DEGREE {
                return Err(Error::parse(no, format!("degree {d} outside 1..={MAX_DEGREE}")));
            }
            (d, k.parse::<StatKind>().map_err(|e| Error::parse(no, e.to_string()))?)
        }
        _ => return Err(Error::parse(no, format!("expected `n <degree> stat <des|peak>`, got {line:?}"))),
    };

    let mut ids: Vec<String> = Vec::new();
    let mut stats: Vec<u64> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize, String, String)> = Vec::new();
    for (no, line) in lines {
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match word {
            "vertex" => {
                let rest = rest.trim_start();
                let (id, set) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::parse(no, "expected `vertex <id> { ... }`"))?;
                let members = parse_members(set.trim()).map_err(|e| Error::parse(no, e.to_string()))?;
                let mask = match kind {
                    StatKind::Des => DescentSet::new(degree, &members).map(|d| d.mask()),
                    StatKind::Peak => PeakSet::new(degree, &members).map(|p| p.mask()),
                }
                .map_err(|e| Error::parse(no, format!("vertex {id}: {e}")))?;
                if index.insert(id.to_string(), ids.len()).is_some() {
                    return Err(Error::parse(no, format!("duplicate vertex id {id}")));
                }
                ids.push(id.to_string());
                stats.push(mask);
            }
            "edge" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
                [i, a, b] => {
                    let i: usize = i
                        .parse()
                        .map_err(|_| Error::parse(no, format!("bad involution index {i:?}")))?;
                    let range = index_range(kind, degree);
                    if !range.contains(&i) {
                        return Err(Error::parse(
                            no,
                            format!("involution index {i} outside {}..={}", range.start(), range.end()),
                        ));
                    }
                    edges.push((no, i, a.to_string(), b.to_string()));
                }
                _ => return Err(Error::parse(no, "expected `edge <i> <id1> <id2>`")),
            },
            _ => return Err(Error::parse(no, format!("unknown directive {word:?}"))),
        }
    }

    let n = ids.len();
    let mut involutions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut set_by: HashMap<(usize, usize), usize> = HashMap::new();
    for (no, i, a, b) in edges {
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::parse(no, format!("unknown vertex {id}")))
        };
        let (x, y) = (lookup(&a)?, lookup(&b)?);
        for v in [x, y] {
            if let Some(prev) = set_by.insert((i, v), no) {
                return Err(Error::parse(
                    no,
                    format!(
                        "involution {i} is not involutive: {} already paired on line {prev}",
                        ids[v]
                    ),
                ));
            }
        }
        let f = involutions.entry(i).or_insert_with(|| (0..n).collect());
        f[x] = y;
        f[y] = x;
    }
    DEGround::from_parts(degree, kind, ids, stats, involutions).map_err(|e| Error::parse(0, e.to_string()))
}

/// Writes a ground in the DEG format; each non-trivial pair appears once.
pub fn write_deg(g: &DEGround) -> String {
    let mut out = String::from("deg 1\n");
    let _ = writeln!(out, "n {} stat {}", g.degree(), g.kind());
    for k in 0..g.len() {
        let members = g.stat_string(k);
        let inner = members.trim_start_matches('{').trim_end_matches('}');
        let _ = writeln!(out, "vertex {} {{ {} }}", g.id(k), inner);
    }
    for (&i, f) in g.involutions() {
        for (x, &y) in f.iter().enumerate() {
            if x < y {
                let _ = writeln!(out, "edge {i} {} {}", g.id(x), g.id(y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_ground, Builtin};

    const PAIR: &str = "deg 1\nn 4 stat peak\nvertex a { 3 }\nvertex b { 2 }\nedge 2 a b\n";

    #[test]
    fn parse_pair() {
        let g = parse_deg(PAIR).unwrap();
        assert_eq!((g.len(), g.degree(), g.kind()), (2, 4, StatKind::Peak));
        assert_eq!(g.apply(2, 0), 1);
        assert_eq!(g.classes().len(), 1);
    }

    #[test]
    fn rejects() {
        let bad = |text: &str| parse_deg(text).unwrap_err();
        let e = bad("deg 1\nn 4 stat peak\nvertex a {3}\nvertex b {2}\nvertex c {2}\nedge 2 a b\nedge 2 a c\n");
        assert!(matches!(e, Error::Parse { line: 7, .. }), "{e}");
        let e = bad("deg 1\nn 4 stat peak\nvertex a {3}\nvertex a {2}\n");
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = bad("deg 1\nn 5 stat peak\nvertex a {2,3}\n");
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = bad("deg 2\n");
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = bad("deg 1\nn 4 stat peak\nvertex a {3}\nedge 3 a a\n");
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = bad("deg 1\nn 4 stat des\nvertex a {3}\nedge 2 a z\n");
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
    }

    #[test]
    fn empty_vertex_list() {
        let g = parse_deg("deg 1\nn 3 stat des\n").unwrap();
        assert!(g.is_empty());
        assert!(g.classes().is_empty());
    }

    #[test]
    fn round_trip() {
        for b in [
            Builtin::PermD(4),
            Builtin::ShsytB("[4,2,1]".parse().unwrap()),
            Builtin::SignedPermPhi(3),
        ] {
            let g = build_ground(&b).unwrap();
            let text = write_deg(&g);
            assert_eq!(parse_deg(&text).unwrap(), g);
        }
    }
}
