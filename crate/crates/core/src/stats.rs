//! Descent, peak and spike sets, stored as bit masks over `{1, ..., n-1}`.
//!
//! All three sort by size first and then lexicographically on their sorted
//! member lists, so `{} < {2} < {3} < {2,4}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 63;

fn members_of(mask: u64) -> impl Iterator<Item = usize> {
    (1..64).filter(move |&i| mask & (1u64 << i) != 0)
}

fn graded_lex(a: u64, b: u64) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| members_of(a).cmp(members_of(b)))
}

fn render_mask(mask: u64) -> String {
    let inner: Vec<String> = members_of(mask).map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub(crate) fn parse_members(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Argument(format!("expected {{a,b,...}}, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Argument(format!("bad member {t:?} in {s:?}")))
        })
        .collect()
}

fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::Argument(format!(
            "degree {degree} outside 1..={MAX_DEGREE}"
        )));
    }
    Ok(())
}

macro_rules! subset_type {
    ($(#[$meta:meta])* $name:ident, $lo:expr) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub struct $name {
            degree: usize,
            mask: u64,
        }

        impl $name {
            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn mask(&self) -> u64 {
                self.mask
            }

            pub fn contains(&self, i: usize) -> bool {
                i < 64 && self.mask & (1u64 << i) != 0
            }

            pub fn members(&self) -> Vec<usize> {
                members_of(self.mask).collect()
            }

            pub fn len(&self) -> usize {
                self.mask.count_ones() as usize
            }

            pub fn is_empty(&self) -> bool {
                self.mask == 0
            }

            /// Smallest admissible member for this kind of set.
            pub const LOWEST: usize = $lo;

            #[allow(dead_code)]
            fn range_ok(degree: usize, mask: u64) -> bool {
                let allowed = if degree <= $lo {
                    0
                } else {
                    ((1u64 << degree) - 1) & !((1u64 << $lo) - 1)
                };
                mask & !allowed == 0
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                self.degree
                    .cmp(&other.degree)
                    .then_with(|| graded_lex(self.mask, other.mask))
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&render_mask(self.mask))
            }
        }
    };
}

subset_type!(
    /// A subset of `{1, ..., n-1}`.
    DescentSet,
    1
);
subset_type!(
    /// A subset of `{2, ..., n-1}` with no two consecutive members.
    PeakSet,
    2
);
subset_type!(
    /// A subset of `{2, ..., n-1}`.
    SpikeSet,
    2
);

impl DescentSet {
    pub fn from_mask(degree: usize, mask: u64) -> Result<Self> {
        check_degree(degree)?;
        if !Self::range_ok(degree, mask) {
            return Err(Error::Argument(format!(
                "{} is not a subset of {{1..{}}}",
                render_mask(mask),
                degree - 1
            )));
        }
        Ok(DescentSet { degree, mask })
    }

    pub fn new(degree: usize, members: &[usize]) -> Result<Self> {
        Self::from_mask(degree, mask_from(members)?)
    }

    pub(crate) fn from_mask_unchecked(degree: usize, mask: u64) -> Self {
        debug_assert!(Self::range_ok(degree, mask));
        DescentSet { degree, mask }
    }

    /// All `2^(n-1)` descent sets of degree `n`, in sorted order.
    pub fn all(degree: usize) -> Vec<DescentSet> {
        let mut all: Vec<DescentSet> = (0..1u64 << (degree - 1))
            .map(|m| DescentSet {
                degree,
                mask: m << 1,
            })
            .collect();
        all.sort();
        all
    }

    pub fn parse(degree: usize, s: &str) -> Result<Self> {
        Self::new(degree, &parse_members(s)?)
    }
}

impl PeakSet {
    pub fn from_mask(degree: usize, mask: u64) -> Result<Self> {
        check_degree(degree)?;
        if !Self::range_ok(degree, mask) {
            return Err(Error::Argument(format!(
                "{} is not a subset of {{2..{}}}",
                render_mask(mask),
                degree.saturating_sub(1)
            )));
        }
        if mask & (mask >> 1) != 0 {
            return Err(Error::Argument(format!(
                "{} has consecutive members",
                render_mask(mask)
            )));
        }
        Ok(PeakSet { degree, mask })
    }

    pub fn new(degree: usize, members: &[usize]) -> Result<Self> {
        Self::from_mask(degree, mask_from(members)?)
    }

    pub fn parse(degree: usize, s: &str) -> Result<Self> {
        Self::new(degree, &parse_members(s)?)
    }

    /// `P - 1` as a descent set of degree `n - 1`.
    pub fn shift_down(&self) -> DescentSet {
        DescentSet::from_mask_unchecked(self.degree - 1, self.mask >> 1)
    }
}

impl SpikeSet {
    pub fn contains_all(&self, p: &PeakSet) -> bool {
        p.mask & !self.mask == 0
    }
}

fn mask_from(members: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &m in members {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::Argument(format!("member {m} out of range")));
        }
        mask |= 1u64 << m;
    }
    Ok(mask)
}

/// `{ i in 2..n-1 : i in D, i-1 not in D }`.
pub fn peak_of(d: &DescentSet) -> PeakSet {
    let m = d.mask;
    let peaks = m & !(m << 1) & !0b11;
    PeakSet {
        degree: d.degree,
        mask: peaks,
    }
}

/// `{ i in 2..n-1 : exactly one of i-1, i lies in D }`.
pub fn spike_of(d: &DescentSet) -> SpikeSet {
    let m = d.mask;
    let limit = if d.degree >= 2 {
        (1u64 << d.degree) - 1
    } else {
        0
    };
    let spikes = (m ^ (m << 1)) & limit & !0b11;
    SpikeSet {
        degree: d.degree,
        mask: spikes,
    }
}

/// `(D ∩ {j-1..i}) - (j-2)` as a descent set of degree `i-j+3`.
pub fn restrict_descents(d: &DescentSet, j: usize, i: usize) -> Result<DescentSet> {
    let n = d.degree;
    if !(1 < j && j <= i && i < n) {
        return Err(Error::Argument(format!(
            "window ({j},{i}) outside 1 < j <= i < {n}"
        )));
    }
    let window = ((1u64 << (i + 1)) - 1) & !((1u64 << (j - 1)) - 1);
    Ok(DescentSet::from_mask_unchecked(
        i - j + 3,
        (d.mask & window) >> (j - 2),
    ))
}

/// Which interval a peak set is intersected with before shifting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeakWindow {
    /// `{j, ..., i+1}`; restricted sets are always peak sets of degree `i-j+4`.
    #[default]
    Calibrated,
    /// `{j-1, ..., i+1}`; may produce a set containing 1.
    Literal,
}

/// `(P ∩ {j..i+1}) - (j-2)` as a peak set of degree `i-j+4`.
pub fn restrict_peaks(p: &PeakSet, j: usize, i: usize) -> Result<PeakSet> {
    restrict_peaks_with(p, j, i, PeakWindow::Calibrated)
}

pub fn restrict_peaks_with(p: &PeakSet, j: usize, i: usize, window: PeakWindow) -> Result<PeakSet> {
    let n = p.degree;
    if !(1 < j && j <= i && i + 1 < n) {
        return Err(Error::Argument(format!(
            "window ({j},{i}) outside 1 < j <= i < {}",
            n.saturating_sub(1)
        )));
    }
    let lo = match window {
        PeakWindow::Calibrated => j,
        PeakWindow::Literal => j - 1,
    };
    let mask = ((1u64 << (i + 2)) - 1) & !((1u64 << lo) - 1);
    PeakSet::from_mask(i - j + 4, (p.mask & mask) >> (j - 2))
}

/// All peak sets of degree `n`, in sorted order.
pub fn peak_sets(n: usize) -> Vec<PeakSet> {
    let mut out: Vec<PeakSet> = (0..1u64 << n.saturating_sub(1))
        .map(|m| m << 1)
        .filter(|&m| m & 0b11 == 0 && m & (m >> 1) == 0)
        .map(|mask| PeakSet { degree: n, mask })
        .collect();
    out.sort();
    out
}

impl FromStr for DescentSet {
    type Err = Error;

    /// Parses `{1,3}` with the smallest degree that contains it.
    fn from_str(s: &str) -> Result<Self> {
        let m = parse_members(s)?;
        let degree = m.iter().max().map_or(1, |&x| x + 1);
        Self::new(degree, &m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn des(n: usize, m: &[usize]) -> DescentSet {
        DescentSet::new(n, m).unwrap()
    }

    #[test]
    fn peaks_and_spikes() {
        assert!(peak_of(&des(4, &[])).is_empty());
        assert_eq!(peak_of(&des(4, &[2])).members(), [2]);
        assert_eq!(peak_of(&des(4, &[1, 3])).members(), [3]);
        assert!(spike_of(&des(4, &[])).is_empty());
        assert_eq!(spike_of(&des(4, &[1])).members(), [2]);
        assert_eq!(spike_of(&des(4, &[2, 3])).members(), [2]);
        // 1 is never a peak or spike
        assert!(peak_of(&des(3, &[1])).is_empty());
        assert_eq!(spike_of(&des(3, &[2])).members(), [2]);
        assert_eq!(spike_of(&des(3, &[1])).members(), [2]);
    }

    #[test]
    fn peak_inside_spike() {
        for n in 1..=10 {
            for d in DescentSet::all(n) {
                let p = peak_of(&d);
                let s = spike_of(&d);
                assert!(s.contains_all(&p));
                assert!(PeakSet::from_mask(n, p.mask()).is_ok());
                assert!(s.members().iter().all(|&i| (2..n).contains(&i)));
            }
        }
    }

    #[test]
    fn restrictions() {
        let r = restrict_descents(&des(4, &[1, 3]), 2, 3).unwrap();
        assert_eq!((r.degree(), r.members()), (4, vec![1, 3]));
        let r = restrict_descents(&des(5, &[2, 4]), 3, 4).unwrap();
        assert_eq!((r.degree(), r.members()), (4, vec![1, 3]));
        assert!(restrict_descents(&des(5, &[]), 2, 2).unwrap().is_empty());
        assert!(restrict_descents(&des(5, &[]), 1, 2).is_err());
        assert!(restrict_descents(&des(5, &[]), 3, 2).is_err());
        assert!(restrict_descents(&des(5, &[]), 2, 5).is_err());
        for n in 2..=9 {
            for d in DescentSet::all(n) {
                if n >= 3 {
                    assert_eq!(restrict_descents(&d, 2, n - 1).unwrap(), d);
                }
            }
        }

        let p = PeakSet::new(5, &[2, 4]).unwrap();
        let r = restrict_peaks(&p, 2, 3).unwrap();
        assert_eq!((r.degree(), r.members()), (5, vec![2, 4]));
        let r = restrict_peaks(&p, 3, 3).unwrap();
        assert_eq!((r.degree(), r.members()), (4, vec![3]));
        assert!(restrict_peaks(&PeakSet::new(5, &[]).unwrap(), 2, 2)
            .unwrap()
            .is_empty());
        assert!(restrict_peaks(&p, 2, 4).is_err());
        // the literal window keeps 2 -> 1, which is not a peak position
        assert!(restrict_peaks_with(&p, 3, 3, PeakWindow::Literal).is_err());
    }

    #[test]
    fn peak_set_listing() {
        let render = |n| -> Vec<String> { peak_sets(n).iter().map(|p| p.to_string()).collect() };
        assert_eq!(render(4), ["{}", "{2}", "{3}"]);
        assert_eq!(render(2), ["{}"]);
        assert_eq!(render(5), ["{}", "{2}", "{3}", "{4}", "{2,4}"]);
        let (mut a, mut b) = (1usize, 1usize);
        for n in 1..=12 {
            assert_eq!(peak_sets(n).len(), a, "n = {n}");
            (a, b) = (b, a + b);
        }
    }

    #[test]
    fn validation() {
        assert!(DescentSet::new(4, &[4]).is_err());
        assert!(PeakSet::new(5, &[1]).is_err());
        assert!(PeakSet::new(5, &[2, 3]).is_err());
        assert_eq!(DescentSet::parse(4, "{1, 3}").unwrap(), des(4, &[1, 3]));
        assert_eq!(des(4, &[1, 3]).to_string(), "{1,3}");
    }

    #[test]
    fn sort_order() {
        let sorted: Vec<String> = DescentSet::all(4).iter().map(|d| d.to_string()).collect();
        assert_eq!(
            sorted,
            ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
    }
}
