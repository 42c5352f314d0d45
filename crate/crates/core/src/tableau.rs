//! Straight and shifted tableaux, signed words, and their statistics.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{Cell, Partition, ShapeKind, StrictPartition};
use crate::stats::DescentSet;

/// A tableau or word letter. Primed letters sort just below their
/// unprimed value: `1' < 1 < 2' < 2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Entry {
    pub value: u32,
    pub primed: bool,
}

impl Entry {
    pub const fn new(value: u32) -> Self {
        Entry {
            value,
            primed: false,
        }
    }

    pub const fn primed(value: u32) -> Self {
        Entry {
            value,
            primed: true,
        }
    }

    fn key(&self) -> (u32, bool) {
        (self.value, !self.primed)
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.primed { "'" } else { "" })
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, primed) = match s.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let value = digits
            .parse::<u32>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| Error::Argument(format!("bad entry {s:?}")))?;
        Ok(Entry { value, primed })
    }
}

/// Letters with distinct values forming `{1, ..., n}`, each possibly primed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord {
    letters: Vec<Entry>,
}

impl SignedWord {
    pub fn new(letters: Vec<Entry>) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for e in &letters {
            let v = e.value as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::Argument(format!(
                    "{} is not a signed permutation",
                    render_word(&letters)
                )));
            }
            seen[v] = true;
        }
        Ok(SignedWord { letters })
    }

    pub fn unsigned(values: &[u32]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Entry::new(v)).collect())
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<Entry>) -> Self {
        SignedWord { letters }
    }

    pub fn letters(&self) -> &[Entry] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn values(&self) -> Vec<u32> {
        self.letters.iter().map(|e| e.value).collect()
    }

    pub fn is_unsigned(&self) -> bool {
        self.letters.iter().all(|e| !e.primed)
    }

    /// `pos[v]` is the index of value `v`; `pos[0]` is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.letters.len() + 1];
        for (k, e) in self.letters.iter().enumerate() {
            pos[e.value as usize] = k;
        }
        pos
    }

    pub fn descent_set(&self) -> DescentSet {
        descent_set_word(self)
    }
}

fn render_word(letters: &[Entry]) -> String {
    let compact = letters.iter().all(|e| e.value < 10);
    let toks: Vec<String> = letters.iter().map(|e| e.to_string()).collect();
    if compact {
        toks.concat()
    } else {
        toks.join(" ")
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(&self.letters))
    }
}

/// Parses `412'3` (single digits) or `4 1 2' 3`.
pub fn parse_word(s: &str) -> Result<Vec<Entry>> {
    let s = s.trim();
    if s.contains(char::is_whitespace) {
        return s.split_whitespace().map(str::parse).collect();
    }
    let mut out: Vec<Entry> = Vec::new();
    for ch in s.chars() {
        match ch {
            '\'' => match out.last_mut() {
                Some(e) if !e.primed => e.primed = true,
                _ => return Err(Error::Argument(format!("misplaced prime in {s:?}"))),
            },
            d if d.is_ascii_digit() && d != '0' => out.push(Entry::new(d as u32 - '0' as u32)),
            _ => return Err(Error::Argument(format!("bad letter {ch:?} in {s:?}"))),
        }
    }
    Ok(out)
}

impl FromStr for SignedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignedWord::new(parse_word(s)?)
    }
}

/// `{ i : (i unprimed and right of i+1) or (i+1 primed and right of i) }`.
pub fn descent_set_word(w: &SignedWord) -> DescentSet {
    let n = w.len();
    let pos = w.positions();
    let mut primed = vec![false; n + 1];
    for e in &w.letters {
        primed[e.value as usize] = e.primed;
    }
    let mut mask = 0u64;
    for i in 1..n {
        if (!primed[i] && pos[i] > pos[i + 1]) || (primed[i + 1] && pos[i + 1] > pos[i]) {
            mask |= 1 << i;
        }
    }
    DescentSet::from_mask_unchecked(n.max(1), mask)
}

/// A filling of a straight or shifted diagram. `rows[0]` is the bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    kind: ShapeKind,
    rows: Vec<Vec<Entry>>,
}

impl Tableau {
    /// Builds a tableau from rows listed bottom first and checks the
    /// semi-standard conditions for its kind.
    pub fn new(kind: ShapeKind, rows: Vec<Vec<Entry>>) -> Result<Self> {
        let t = Tableau { kind, rows };
        t.check()?;
        Ok(t)
    }

    /// Fills `shape` with `word` read as rows top to bottom.
    pub fn from_reading_word(kind: ShapeKind, shape: &[usize], word: &[Entry]) -> Result<Self> {
        if shape.iter().sum::<usize>() != word.len() {
            return Err(Error::InvalidTableau(format!(
                "word of length {} does not fill a shape of size {}",
                word.len(),
                shape.iter().sum::<usize>()
            )));
        }
        let mut rows = vec![Vec::new(); shape.len()];
        let mut it = word.iter();
        for r in (0..shape.len()).rev() {
            rows[r] = it.by_ref().take(shape[r]).copied().collect();
        }
        Tableau::new(kind, rows)
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// 1-based column of the `k`-th entry (0-based) of row index `r` (0-based).
    pub fn column(&self, r: usize, k: usize) -> usize {
        match self.kind {
            ShapeKind::Straight => k + 1,
            ShapeKind::Shifted => r + 1 + k,
        }
    }

    pub fn cell(&self, r: usize, k: usize) -> Cell {
        let col = self.column(r, k);
        Cell {
            row: r + 1,
            col,
            diagonal: self.kind == ShapeKind::Shifted && col == r + 1,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, Entry)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(k, &e)| (self.cell(r, k), e))
        })
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Entry> {
        let r = row.checked_sub(1)?;
        let start = self.column(r, 0);
        let k = col.checked_sub(start)?;
        self.rows.get(r)?.get(k).copied()
    }

    /// Entry directly below position `(r, k)`, if any.
    fn below(&self, r: usize, k: usize) -> Option<Entry> {
        if r == 0 {
            return None;
        }
        let idx = match self.kind {
            ShapeKind::Straight => k,
            ShapeKind::Shifted => k + 1,
        };
        self.rows[r - 1].get(idx).copied()
    }

    pub fn check(&self) -> Result<()> {
        let shape = self.shape();
        if shape.contains(&0) {
            return Err(Error::InvalidTableau("empty row".into()));
        }
        let shape_ok = match self.kind {
            ShapeKind::Straight => shape.windows(2).all(|w| w[0] >= w[1]),
            ShapeKind::Shifted => shape.windows(2).all(|w| w[0] > w[1]),
        };
        if !shape_ok {
            return Err(Error::InvalidTableau(format!(
                "row lengths {shape:?} do not form a {} shape",
                match self.kind {
                    ShapeKind::Straight => "straight",
                    ShapeKind::Shifted => "shifted",
                }
            )));
        }
        for (r, row) in self.rows.iter().enumerate() {
            for (k, &e) in row.iter().enumerate() {
                if e.value == 0 {
                    return Err(Error::InvalidTableau("zero entry".into()));
                }
                let left = if k > 0 { Some(row[k - 1]) } else { None };
                let below = self.below(r, k);
                let bad = match self.kind {
                    ShapeKind::Straight => {
                        e.primed
                            || left.is_some_and(|l| l > e)
                            || below.is_some_and(|b| b >= e)
                    }
                    ShapeKind::Shifted => {
                        left.is_some_and(|l| l > e || (l == e && e.primed))
                            || below.is_some_and(|b| b > e || (b == e && !e.primed))
                    }
                };
                if bad {
                    return Err(Error::InvalidTableau(format!(
                        "entry {e} at {:?} breaks the ordering rules",
                        self.cell(r, k)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Absolute values are exactly `1..=n`, each once.
    pub fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        for row in &self.rows {
            for e in row {
                let v = e.value as usize;
                if v > n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }

    pub fn has_primes(&self) -> bool {
        self.rows.iter().flatten().any(|e| e.primed)
    }

    pub fn has_primed_diagonal(&self) -> bool {
        self.cells().any(|(c, e)| c.diagonal && e.primed)
    }

    /// Rows read left to right, top row first.
    pub fn reading_word(&self) -> Vec<Entry> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    pub fn signed_word(&self) -> Result<SignedWord> {
        SignedWord::new(self.reading_word())
    }

    /// `(row index, position in row)` of each value of a standard tableau.
    pub fn locations(&self) -> Vec<(usize, usize)> {
        let mut loc = vec![(0, 0); self.size() + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                loc[e.value as usize] = (r, k);
            }
        }
        loc
    }

    pub fn map_entries(&self, mut f: impl FnMut(Entry) -> Entry) -> Tableau {
        Tableau {
            kind: self.kind,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|&e| f(e)).collect())
                .collect(),
        }
    }

    pub fn entry_at(&self, r: usize, k: usize) -> Entry {
        self.rows[r][k]
    }

    pub(crate) fn set_entry(&mut self, r: usize, k: usize, e: Entry) {
        self.rows[r][k] = e;
    }
}

/// Row-based descent set of a standard (possibly signed) tableau:
/// `i` unprimed in a strictly lower row than `i+1`, or `i+1` primed in a
/// weakly lower row than `i`.
pub fn descent_set_tab(t: &Tableau) -> Result<DescentSet> {
    if !t.is_standard() {
        return Err(Error::Argument("descent set needs a standard tableau".into()));
    }
    let n = t.size();
    let loc = t.locations();
    let mut mask = 0u64;
    for i in 1..n {
        let (ri, ki) = loc[i];
        let (rj, kj) = loc[i + 1];
        let i_primed = t.rows[ri][ki].primed;
        let j_primed = t.rows[rj][kj].primed;
        if (!i_primed && ri < rj) || (j_primed && rj <= ri) {
            mask |= 1 << i;
        }
    }
    Ok(DescentSet::from_mask_unchecked(n.max(1), mask))
}

/// Exponent vector of `T`: entry `i-1` counts the entries of absolute value `i`.
pub fn monomial_weight(t: &Tableau) -> Vec<usize> {
    let max = t.rows.iter().flatten().map(|e| e.value).max().unwrap_or(0) as usize;
    let mut w = vec![0; max];
    for e in t.rows.iter().flatten() {
        w[e.value as usize - 1] += 1;
    }
    w
}

/// Replaces values by `1..n` in the primed order. Equal unprimed letters are
/// numbered left to right, equal primed letters right to left; primes stay
/// in place.
pub fn standardize(word: &[Entry]) -> SignedWord {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by(|&a, &b| {
        word[a].cmp(&word[b]).then_with(|| {
            if word[a].primed {
                b.cmp(&a)
            } else {
                a.cmp(&b)
            }
        })
    });
    let mut letters = word.to_vec();
    for (rank, &k) in idx.iter().enumerate() {
        letters[k].value = rank as u32 + 1;
    }
    SignedWord::from_letters_unchecked(letters)
}

// ---------------------------------------------------------------------------
// Enumeration

fn fill_cells(
    kind: ShapeKind,
    shape: &[usize],
    alphabet: &[Entry],
    allow: &dyn Fn(&Tableau, usize, usize, Entry) -> bool,
) -> Vec<Tableau> {
    let mut t = Tableau {
        kind,
        rows: shape.iter().map(|&l| Vec::with_capacity(l)).collect(),
    };
    let order: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| (0..l).map(move |k| (r, k)))
        .collect();
    let mut out = Vec::new();
    fill_rec(&mut t, &order, 0, alphabet, allow, &mut out);
    out
}

fn fill_rec(
    t: &mut Tableau,
    order: &[(usize, usize)],
    at: usize,
    alphabet: &[Entry],
    allow: &dyn Fn(&Tableau, usize, usize, Entry) -> bool,
    out: &mut Vec<Tableau>,
) {
    if at == order.len() {
        out.push(t.clone());
        return;
    }
    let (r, k) = order[at];
    for &e in alphabet {
        if allow(t, r, k, e) {
            t.rows[r].push(e);
            fill_rec(t, order, at + 1, alphabet, allow, out);
            t.rows[r].pop();
        }
    }
}

/// Semi-standard Young tableaux of shape `shape` with entries at most `max`.
pub fn enumerate_ssyt(shape: &Partition, max: u32) -> Vec<Tableau> {
    let alphabet: Vec<Entry> = (1..=max).map(Entry::new).collect();
    fill_cells(ShapeKind::Straight, shape.parts(), &alphabet, &|t, r, k, e| {
        (k == 0 || t.rows[r][k - 1] <= e) && t.below(r, k).is_none_or(|b| b < e)
    })
}

/// Semi-standard shifted tableaux with absolute values at most `max`.
pub fn enumerate_shssyt(shape: &StrictPartition, max: u32, diagonal_primes: bool) -> Vec<Tableau> {
    let alphabet: Vec<Entry> = (1..=max)
        .flat_map(|v| [Entry::primed(v), Entry::new(v)])
        .collect();
    fill_cells(ShapeKind::Shifted, shape.parts(), &alphabet, &|t, r, k, e| {
        if e.primed && k == 0 && !diagonal_primes {
            return false;
        }
        if k > 0 {
            let l = t.rows[r][k - 1];
            if l > e || (l == e && e.primed) {
                return false;
            }
        }
        t.below(r, k).is_none_or(|b| b < e || (b == e && e.primed))
    })
}

fn standard_fillings(kind: ShapeKind, shape: &[usize]) -> Vec<Tableau> {
    let n: usize = shape.iter().sum();
    let mut t = Tableau {
        kind,
        rows: shape.iter().map(|&l| Vec::with_capacity(l)).collect(),
    };
    let mut out = Vec::new();
    standard_rec(&mut t, shape, 1, n as u32, &mut out);
    out.sort_by_cached_key(Tableau::reading_word);
    out
}

fn standard_rec(t: &mut Tableau, shape: &[usize], next: u32, n: u32, out: &mut Vec<Tableau>) {
    if next > n {
        out.push(t.clone());
        return;
    }
    for r in 0..shape.len() {
        let k = t.rows[r].len();
        if k == shape[r] {
            continue;
        }
        let supported = r == 0
            || match t.kind {
                ShapeKind::Straight => t.rows[r - 1].len() > k,
                ShapeKind::Shifted => t.rows[r - 1].len() > k + 1,
            };
        if supported {
            t.rows[r].push(Entry::new(next));
            standard_rec(t, shape, next + 1, n, out);
            t.rows[r].pop();
        }
    }
}

/// Standard Young tableaux of straight shape.
pub fn enumerate_syt(shape: &Partition) -> Vec<Tableau> {
    standard_fillings(ShapeKind::Straight, shape.parts())
}

/// Unsigned standard shifted tableaux.
pub fn enumerate_shsyt(shape: &StrictPartition) -> Vec<Tableau> {
    standard_fillings(ShapeKind::Shifted, shape.parts())
}

/// Every standard shifted tableau with every prime vector on its
/// off-diagonal cells, plus its diagonal cells when `diagonal_primes`.
pub fn enumerate_signed_standard(shape: &StrictPartition, diagonal_primes: bool) -> Vec<Tableau> {
    let mut out = Vec::new();
    for base in enumerate_shsyt(shape) {
        let slots: Vec<(usize, usize)> = base
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| (0..row.len()).map(move |k| (r, k)))
            .filter(|&(_, k)| diagonal_primes || k != 0)
            .collect();
        for bits in 0u64..(1 << slots.len()) {
            let mut t = base.clone();
            for (s, &(r, k)) in slots.iter().enumerate() {
                t.rows[r][k].primed = bits & (1 << s) != 0;
            }
            debug_assert!(t.check().is_ok());
            out.push(t);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Text format

impl fmt::Display for Tableau {
    /// Rows top to bottom; shifted row `i` is indented by `i-1` fields.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for (line_no, (r, row)) in self.rows.iter().enumerate().rev().enumerate() {
            if line_no > 0 {
                writeln!(f)?;
            }
            if self.kind == ShapeKind::Shifted {
                write!(f, "{}", " ".repeat(r * (width + 1)))?;
            }
            let fields: Vec<String> = row
                .iter()
                .map(|e| format!("{:>width$}", e.to_string()))
                .collect();
            write!(f, "{}", fields.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the text format written by `Display`.
pub fn parse_tableau(text: &str, kind: ShapeKind) -> Result<Tableau> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let mut rows = Vec::with_capacity(lines.len());
    for (no, line) in lines.iter().enumerate().rev() {
        let row = line
            .split_whitespace()
            .map(|tok| tok.parse::<Entry>().map_err(|e| Error::parse(no + 1, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Tableau::new(kind, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::new(p.to_vec()).unwrap()
    }

    fn pt(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn word(s: &str) -> SignedWord {
        s.parse().unwrap()
    }

    fn shifted(text: &str) -> Tableau {
        parse_tableau(text, ShapeKind::Shifted).unwrap()
    }

    fn word_str(t: &Tableau) -> String {
        render_word(&t.reading_word())
    }

    #[test]
    fn entry_order() {
        let mut v = vec![Entry::new(2), Entry::primed(2), Entry::new(1), Entry::primed(1)];
        v.sort();
        assert_eq!(v, [Entry::primed(1), Entry::new(1), Entry::primed(2), Entry::new(2)]);
    }

    #[test]
    fn reading_words() {
        let t = Tableau::new(
            ShapeKind::Straight,
            vec![vec![Entry::new(1), Entry::new(3), Entry::new(4)], vec![Entry::new(2)]],
        )
        .unwrap();
        assert_eq!(word_str(&t), "2134");
        assert_eq!(word_str(&shifted("  3\n1 2 4")), "3124");
        let one = Tableau::new(ShapeKind::Straight, vec![vec![Entry::new(1)]]).unwrap();
        assert_eq!(word_str(&one), "1");
    }

    #[test]
    fn word_descents() {
        assert_eq!(word("3124").descent_set().members(), [2]);
        assert!(word("1234").descent_set().is_empty());
        assert_eq!(word("412'3").descent_set().members(), [1, 3]);
    }

    #[test]
    fn tableau_descents() {
        let des: Vec<Vec<usize>> = enumerate_syt(&pt(&[3, 1]))
            .iter()
            .map(|t| descent_set_tab(t).unwrap().members())
            .collect();
        assert_eq!(des, [vec![1], vec![2], vec![3]]);
        let des: Vec<Vec<usize>> = enumerate_shsyt(&sp(&[3, 1]))
            .iter()
            .map(|t| descent_set_tab(t).unwrap().members())
            .collect();
        assert_eq!(des, [vec![2], vec![3]]);
        let col = &enumerate_syt(&pt(&[1, 1, 1]))[0];
        assert_eq!(descent_set_tab(col).unwrap().members(), [1, 2]);
        let ssyt = &enumerate_ssyt(&pt(&[2]), 1)[0];
        assert!(descent_set_tab(ssyt).is_err());
    }

    #[test]
    fn tableau_and_word_descents_agree() {
        for n in 1..=8 {
            for p in crate::partition::partitions_of(n) {
                for t in enumerate_syt(&p) {
                    assert_eq!(descent_set_tab(&t).unwrap(), t.signed_word().unwrap().descent_set());
                }
            }
            for p in crate::partition::strict_partitions_of(n) {
                for t in enumerate_signed_standard(&p, true) {
                    assert_eq!(descent_set_tab(&t).unwrap(), t.signed_word().unwrap().descent_set());
                }
            }
        }
    }

    #[test]
    fn ssyt_counts() {
        let words: Vec<String> = enumerate_ssyt(&pt(&[3, 1]), 2).iter().map(word_str).collect();
        assert_eq!(words, ["2111", "2112", "2122"]);
        assert_eq!(enumerate_ssyt(&pt(&[1]), 1).len(), 1);
        assert_eq!(enumerate_ssyt(&pt(&[2, 2]), 3).len(), 6);
    }

    #[test]
    fn syt_counts() {
        assert_eq!(enumerate_syt(&pt(&[3, 1])).len(), 3);
        assert_eq!(enumerate_syt(&pt(&[5])).len(), 1);
        assert_eq!(enumerate_syt(&pt(&[2, 2])).len(), 2);
        // sum of f^λ squared is n!
        for n in 1..=7usize {
            let total: usize = crate::partition::partitions_of(n)
                .iter()
                .map(|p| enumerate_syt(p).len().pow(2))
                .sum();
            assert_eq!(total, (1..=n).product::<usize>());
        }
    }

    #[test]
    fn shifted_counts() {
        let mut words: Vec<String> = enumerate_shssyt(&sp(&[3, 1]), 2, false)
            .iter()
            .map(word_str)
            .collect();
        words.sort();
        let mut expected = vec!["2111", "2112", "2112'", "212'2"];
        expected.sort();
        assert_eq!(words, expected);
        assert_eq!(enumerate_shssyt(&sp(&[1]), 1, false).len(), 1);
        assert_eq!(enumerate_shssyt(&sp(&[3, 1]), 2, true).len(), 16);

        let words: Vec<String> = enumerate_shsyt(&sp(&[3, 1])).iter().map(word_str).collect();
        assert_eq!(words, ["3124", "4123"]);
        assert_eq!(enumerate_shsyt(&sp(&[6])).len(), 1);
        assert_eq!(enumerate_shsyt(&sp(&[4, 2, 1])).len(), 7);

        assert_eq!(enumerate_signed_standard(&sp(&[3, 1]), false).len(), 8);
        assert_eq!(enumerate_signed_standard(&sp(&[3, 1]), true).len(), 32);
        assert_eq!(enumerate_signed_standard(&sp(&[1]), false).len(), 1);
    }

    #[test]
    fn signed_standard_cardinality() {
        for n in 1..=7 {
            for p in crate::partition::strict_partitions_of(n) {
                let g = enumerate_shsyt(&p).len();
                let star = enumerate_signed_standard(&p, false);
                let all = enumerate_signed_standard(&p, true);
                assert_eq!(star.len(), g << (n - p.length()));
                assert_eq!(all.len(), g << n);
                for t in all.iter() {
                    t.check().unwrap();
                    assert!(t.is_standard());
                }
                assert!(star.iter().all(|t| !t.has_primed_diagonal()));
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len());
            }
        }
    }

    #[test]
    fn enumerators_are_valid_and_unique() {
        for n in 1..=6 {
            for p in crate::partition::partitions_of(n) {
                let all = enumerate_ssyt(&p, 3);
                for t in &all {
                    t.check().unwrap();
                }
                let mut s = all.clone();
                s.sort();
                s.dedup();
                assert_eq!(s.len(), all.len());
            }
            for p in crate::partition::strict_partitions_of(n) {
                let all = enumerate_shssyt(&p, 3, true);
                for t in &all {
                    t.check().unwrap();
                }
                let mut s = all.clone();
                s.sort();
                s.dedup();
                assert_eq!(s.len(), all.len());
            }
        }
    }

    #[test]
    fn standardization() {
        let w = standardize(&parse_word("2111").unwrap());
        assert_eq!(w.to_string(), "4123");
        let w = standardize(&parse_word("2112'").unwrap());
        assert_eq!(w.to_string(), "4123'");
        let w = standardize(&parse_word("312'4").unwrap());
        assert_eq!(w.to_string(), "312'4");
    }

    #[test]
    fn standardized_shifted_words_are_signed_standard() {
        for n in 1..=6 {
            for p in crate::partition::strict_partitions_of(n) {
                let targets: std::collections::HashSet<Vec<Entry>> =
                    enumerate_signed_standard(&p, false)
                        .iter()
                        .map(Tableau::reading_word)
                        .collect();
                for t in enumerate_shssyt(&p, 3, false) {
                    let w = standardize(&t.reading_word());
                    assert!(targets.contains(w.letters()), "{t}");
                }
            }
        }
    }

    #[test]
    fn weights() {
        let ts = enumerate_ssyt(&pt(&[3, 1]), 2);
        assert_eq!(monomial_weight(&ts[0]), [3, 1]);
        let mut total = std::collections::BTreeMap::new();
        for t in enumerate_shssyt(&sp(&[3, 1]), 2, false) {
            *total.entry(monomial_weight(&t)).or_insert(0) += 1;
        }
        let expect: std::collections::BTreeMap<Vec<usize>, i32> =
            [(vec![3, 1], 1), (vec![2, 2], 2), (vec![1, 3], 1)].into_iter().collect();
        assert_eq!(total, expect);
        let empty = Tableau::new(ShapeKind::Straight, vec![]).unwrap();
        assert!(monomial_weight(&empty).is_empty());
    }

    #[test]
    fn text_round_trip() {
        for t in enumerate_signed_standard(&sp(&[4, 2, 1]), true).iter().step_by(37) {
            let s = t.to_string();
            assert_eq!(parse_tableau(&s, ShapeKind::Shifted).unwrap(), *t);
            assert_eq!(parse_tableau(&s, ShapeKind::Shifted).unwrap().to_string(), s);
        }
        let t = &enumerate_syt(&pt(&[3, 1]))[0];
        assert_eq!(t.to_string(), "2\n1 3 4");
        assert_eq!(shifted("  3\n1 2 4").to_string(), "  3\n1 2 4");
        assert_eq!(shifted("    3'\n1 2' 4").to_string(), "   3'\n 1 2'  4");
    }

    #[test]
    fn validity_rules() {
        // two primed 2s in a row
        assert!(parse_tableau("1 2' 2'", ShapeKind::Shifted).is_err());
        // two unprimed 2s in a column
        assert!(parse_tableau("  2\n1 2 3", ShapeKind::Shifted).is_err());
        // primed 2s stacked in a column are fine
        assert!(parse_tableau("  2'\n1 2' 3", ShapeKind::Shifted).is_ok());
        assert!(parse_tableau("1 1\n1", ShapeKind::Straight).is_err());
        assert!(parse_tableau("1 2'", ShapeKind::Straight).is_err());
        assert!(parse_tableau("  1\n1 2", ShapeKind::Shifted).is_err());
    }
}
