//! Integer partitions, strict partitions and their (shifted) diagrams.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Partitions sort in decreasing lexicographic order: `[4] < [3,1] < [2,2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A strictly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeKind {
    Straight,
    Shifted,
}

/// A cell of a diagram. Rows and columns are 1-based and row 1 is the
/// bottom row. In a shifted diagram row `i` starts at column `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    pub diagonal: bool,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!(
                "{} has a zero part",
                render_parts(&parts)
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "{} is not weakly decreasing",
                render_parts(&parts)
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn to_strict(&self) -> Result<StrictPartition> {
        StrictPartition::new(self.parts.clone())
    }
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let p = Partition::new(parts)?;
        if !p.is_strict() {
            return Err(Error::InvalidShape(format!(
                "{p} is not strictly decreasing"
            )));
        }
        Ok(StrictPartition { parts: p.parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn as_partition(&self) -> Partition {
        Partition {
            parts: self.parts.clone(),
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StrictPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<StrictPartition> for Partition {
    fn from(p: StrictPartition) -> Self {
        Partition { parts: p.parts }
    }
}

fn render_parts(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("[{}]", inner.join(","))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_parts(&self.parts))
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_parts(&self.parts))
    }
}

/// Parses `[3,1]`; the empty partition is `[]`.
pub(crate) fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidShape(format!("expected [a,b,...], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidShape(format!("bad part {t:?} in {s:?}")))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrictPartition::new(parse_parts(s)?)
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_partitions(n, n, false, &mut cur, &mut out);
    out.into_iter().map(|parts| Partition { parts }).collect()
}

/// All strict partitions of `n` in decreasing lexicographic order.
pub fn strict_partitions_of(n: usize) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_partitions(n, n, true, &mut cur, &mut out);
    out.into_iter()
        .map(|parts| StrictPartition { parts })
        .collect()
}

fn fill_partitions(
    remaining: usize,
    max_part: usize,
    strict: bool,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        cur.push(part);
        let next_max = if strict { part - 1 } else { part };
        fill_partitions(remaining - part, next_max, strict, cur, out);
        cur.pop();
    }
}

/// Cells of the diagram of `parts`. Shifted diagrams require strict parts.
pub fn shape_cells(parts: &[usize], kind: ShapeKind) -> Result<Vec<Cell>> {
    Partition::new(parts.to_vec())?;
    if kind == ShapeKind::Shifted && parts.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidShape(format!(
            "shifted diagram needs a strict partition, got {}",
            render_parts(parts)
        )));
    }
    let mut cells = Vec::with_capacity(parts.iter().sum());
    for (r, &len) in parts.iter().enumerate() {
        let row = r + 1;
        let start = match kind {
            ShapeKind::Straight => 1,
            ShapeKind::Shifted => row,
        };
        for col in start..start + len {
            cells.push(Cell {
                row,
                col,
                diagonal: kind == ShapeKind::Shifted && col == row,
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_partitions(n: usize, strict: bool) -> usize {
        // Count weakly/strictly decreasing sequences summing to n by
        // filtering all compositions of n.
        let mut count = 0;
        if n == 0 {
            return 1;
        }
        for mask in 0u32..(1 << (n - 1)) {
            let mut parts = Vec::new();
            let mut run = 1;
            for b in 0..n - 1 {
                if mask & (1 << b) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            let ok = parts
                .windows(2)
                .all(|w| if strict { w[0] > w[1] } else { w[0] >= w[1] });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn partitions_small() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        assert_eq!(partitions_of(7).len(), 15);
        for n in 0..=12 {
            assert_eq!(partitions_of(n).len(), brute_partitions(n, false));
            assert_eq!(strict_partitions_of(n).len(), brute_partitions(n, true));
        }
    }

    #[test]
    fn strict_partitions_small() {
        let render = |n| -> Vec<String> {
            strict_partitions_of(n)
                .iter()
                .map(|p| p.to_string())
                .collect()
        };
        assert_eq!(render(1), ["[1]"]);
        assert_eq!(render(5), ["[5]", "[4,1]", "[3,2]"]);
        assert_eq!(render(7), ["[7]", "[6,1]", "[5,2]", "[4,3]", "[4,2,1]"]);
    }

    #[test]
    fn order_is_sorted_and_unique() {
        for n in 0..=10 {
            let ps = partitions_of(n);
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn cells() {
        let c = shape_cells(&[3, 1], ShapeKind::Shifted).unwrap();
        let coords: Vec<(usize, usize)> = c.iter().map(|c| (c.row, c.col)).collect();
        assert_eq!(coords, [(1, 1), (1, 2), (1, 3), (2, 2)]);
        let diag: Vec<(usize, usize)> = c
            .iter()
            .filter(|c| c.diagonal)
            .map(|c| (c.row, c.col))
            .collect();
        assert_eq!(diag, [(1, 1), (2, 2)]);

        let c = shape_cells(&[1], ShapeKind::Straight).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!c[0].diagonal);

        let c = shape_cells(&[6, 4, 3, 1], ShapeKind::Shifted).unwrap();
        assert_eq!(c.len(), 14);
        assert_eq!(c.iter().filter(|c| c.diagonal).count(), 4);

        assert!(matches!(
            shape_cells(&[2, 2], ShapeKind::Shifted),
            Err(Error::InvalidShape(_))
        ));
    }

    #[test]
    fn parse_and_render() {
        let p: Partition = "[3, 1]".parse().unwrap();
        assert_eq!(p.to_string(), "[3,1]");
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[2,2]".parse::<StrictPartition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
    }
}
