//! Dual equivalence machinery over finite grounds: objects with a descent or
//! peak statistic and a family of involutions indexed by `i`.

mod deg;
mod iso;
mod verify;

pub use deg::{parse_deg, write_deg};
pub use iso::{all_isomorphisms, classify_shifted_class, find_isomorphism, Classification};
pub use verify::{
    class_certificates, lemma_axiom4_check, verify_shifted, verify_strong, verify_weak, Axioms, Certified, ClassCertificate,
    ConditionReport, VerificationReport, VerifyOptions, Witness,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::involution::{b, b_tab, d, d_tab, phi, psi};
use crate::partition::{Partition, StrictPartition};
use crate::qsym::{QSymF, QSymG};
use crate::stats::{
    peak_of, restrict_descents, restrict_peaks_with, DescentSet, PeakSet, PeakWindow, MAX_DEGREE,
};
use crate::tableau::{
    descent_set_tab, enumerate_shsyt, enumerate_signed_standard, enumerate_syt, Entry,
    SignedWord, Tableau,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    Des,
    Peak,
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatKind::Des => "des",
            StatKind::Peak => "peak",
        })
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "des" => Ok(StatKind::Des),
            "peak" => Ok(StatKind::Peak),
            _ => Err(Error::Argument(format!("unknown statistic {s:?}"))),
        }
    }
}

/// A finite set of objects with a statistic and an involution family.
///
/// Involution indices run over `2..=n-1` for descent grounds and `2..=n-2`
/// for peak grounds; every index in range is present (possibly the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DEGround {
    degree: usize,
    kind: StatKind,
    ids: Vec<String>,
    stats: Vec<u64>,
    involutions: BTreeMap<usize, Vec<usize>>,
    index: HashMap<String, usize>,
}

/// Involution indices admitted by a ground of this kind and degree.
pub fn index_range(kind: StatKind, degree: usize) -> std::ops::RangeInclusive<usize> {
    match kind {
        StatKind::Des => 2..=degree.saturating_sub(1),
        StatKind::Peak => 2..=degree.saturating_sub(2),
    }
}

impl DEGround {
    /// Validates and assembles a ground. Missing involution indices are
    /// filled with the identity.
    pub fn from_parts(
        degree: usize,
        kind: StatKind,
        ids: Vec<String>,
        stats: Vec<u64>,
        mut involutions: BTreeMap<usize, Vec<usize>>,
    ) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Argument(format!("degree {degree} outside 1..={MAX_DEGREE}")));
        }
        if ids.len() != stats.len() {
            return Err(Error::Argument("one statistic per object required".into()));
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (k, id) in ids.iter().enumerate() {
            if id.is_empty() || id.contains(char::is_whitespace) {
                return Err(Error::Argument(format!("bad object id {id:?}")));
            }
            if index.insert(id.clone(), k).is_some() {
                return Err(Error::Argument(format!("duplicate object id {id}")));
            }
        }
        for (k, &m) in stats.iter().enumerate() {
            let ok = match kind {
                StatKind::Des => DescentSet::from_mask(degree, m).map(|_| ()),
                StatKind::Peak => PeakSet::from_mask(degree, m).map(|_| ()),
            };
            ok.map_err(|e| Error::Argument(format!("statistic of {}: {e}", ids[k])))?;
        }
        let range = index_range(kind, degree);
        if let Some(&i) = involutions.keys().find(|i| !range.contains(i)) {
            return Err(Error::Argument(format!(
                "involution index {i} outside {}..={}",
                range.start(),
                range.end()
            )));
        }
        let n = ids.len();
        for i in range {
            let f = involutions.entry(i).or_insert_with(|| (0..n).collect());
            if f.len() != n {
                return Err(Error::Argument(format!("involution {i} has the wrong length")));
            }
            for (x, &y) in f.iter().enumerate() {
                if y >= n || f[y] != x {
                    let back = f.get(y).map_or("nothing".to_string(), |&z| ids[z].clone());
                    let target = ids.get(y).cloned().unwrap_or_else(|| format!("#{y}"));
                    return Err(Error::Argument(format!(
                        "involution {i} is not involutive: {} -> {target} -> {back}",
                        ids[x]
                    )));
                }
            }
        }
        Ok(DEGround {
            degree,
            kind,
            ids,
            stats,
            involutions,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> StatKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, k: usize) -> &str {
        &self.ids[k]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Raw bitmask of the statistic of object `k`.
    pub fn stat_mask(&self, k: usize) -> u64 {
        self.stats[k]
    }

    pub fn descent_set(&self, k: usize) -> Option<DescentSet> {
        (self.kind == StatKind::Des)
            .then(|| DescentSet::from_mask(self.degree, self.stats[k]).expect("validated"))
    }

    pub fn peak_set(&self, k: usize) -> Option<PeakSet> {
        (self.kind == StatKind::Peak)
            .then(|| PeakSet::from_mask(self.degree, self.stats[k]).expect("validated"))
    }

    /// Renders the statistic of object `k` as a set, e.g. `{2,4}`.
    pub fn stat_string(&self, k: usize) -> String {
        match self.kind {
            StatKind::Des => self.descent_set(k).unwrap().to_string(),
            StatKind::Peak => self.peak_set(k).unwrap().to_string(),
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.involutions.keys().copied()
    }

    pub fn involution(&self, i: usize) -> Option<&[usize]> {
        self.involutions.get(&i).map(Vec::as_slice)
    }

    pub fn involutions(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.involutions
    }

    pub fn apply(&self, i: usize, x: usize) -> usize {
        self.involutions[&i][x]
    }

    pub fn is_fixed(&self, i: usize, x: usize) -> bool {
        self.apply(i, x) == x
    }

    /// Connected components under all involutions, members ascending and
    /// classes ordered by their first member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = self.indices().collect();
        self.components(&all)
    }

    /// Components under the involutions `j..=i` only.
    pub fn window_classes(&self, j: usize, i: usize) -> Result<Vec<Vec<usize>>> {
        self.check_window(j, i)?;
        Ok(self.components(&(j..=i).collect::<Vec<_>>()))
    }

    /// The restricted class `[t]_(j,i)`.
    pub fn restricted_class(&self, t: usize, j: usize, i: usize) -> Result<Vec<usize>> {
        self.check_window(j, i)?;
        if t >= self.len() {
            return Err(Error::Argument(format!("no object #{t}")));
        }
        let mut seen = vec![false; self.len()];
        seen[t] = true;
        let mut stack = vec![t];
        let mut out = vec![t];
        while let Some(x) = stack.pop() {
            for k in j..=i {
                let y = self.apply(k, x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn check_window(&self, j: usize, i: usize) -> Result<()> {
        let range = index_range(self.kind, self.degree);
        if !(j <= i && range.contains(&j) && range.contains(&i)) {
            return Err(Error::Argument(format!(
                "window ({j},{i}) outside the involution range {}..={}",
                range.start(),
                range.end()
            )));
        }
        Ok(())
    }

    fn components(&self, indices: &[usize]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &i in indices {
            let f = &self.involutions[&i];
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, f[x]));
                if a != b {
                    // keep the smaller index as root
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            let k = *slot.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(x);
        }
        out
    }

    /// Restricted statistic of object `k` for the window `(j,i)`.
    pub fn restricted_stat(&self, k: usize, j: usize, i: usize, window: PeakWindow) -> Result<u64> {
        match self.kind {
            StatKind::Des => Ok(restrict_descents(&self.descent_set(k).unwrap(), j, i)?.mask()),
            StatKind::Peak => {
                Ok(restrict_peaks_with(&self.peak_set(k).unwrap(), j, i, window)?.mask())
            }
        }
    }

    /// Degree of restricted statistics for the window `(j,i)`.
    pub fn restricted_degree(&self, j: usize, i: usize) -> usize {
        match self.kind {
            StatKind::Des => i - j + 3,
            StatKind::Peak => i - j + 4,
        }
    }

    /// Sum of `F_Des` (or `G_Peak`) over `class`, restricted to a window when
    /// one is given.
    pub fn class_genfn(
        &self,
        class: &[usize],
        window: Option<(usize, usize)>,
        peak_window: PeakWindow,
    ) -> Result<GenFn> {
        let degree = match window {
            Some((j, i)) => {
                self.check_window(j, i)?;
                self.restricted_degree(j, i)
            }
            None => self.degree,
        };
        let masks = class
            .iter()
            .map(|&k| match window {
                Some((j, i)) => self.restricted_stat(k, j, i, peak_window),
                None => Ok(self.stats[k]),
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(match self.kind {
            StatKind::Des => {
                let mut f = QSymF::zero(degree);
                for m in masks {
                    f.add_term(DescentSet::from_mask(degree, m)?, 1);
                }
                GenFn::F(f)
            }
            StatKind::Peak => {
                let mut g = QSymG::zero(degree);
                for m in masks {
                    g.add_term(PeakSet::from_mask(degree, m)?, 1);
                }
                GenFn::G(g)
            }
        })
    }

    /// The sub-ground on `members` (which must be closed under the involutions
    /// used). With a window `(j,i)` the statistic is restricted and the
    /// involutions `j..=i` are renumbered `2..=i-j+2`.
    pub fn subground(
        &self,
        members: &[usize],
        window: Option<(usize, usize)>,
        peak_window: PeakWindow,
    ) -> Result<DEGround> {
        let local: HashMap<usize, usize> =
            members.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let (degree, pairs): (usize, Vec<(usize, usize)>) = match window {
            Some((j, i)) => {
                self.check_window(j, i)?;
                (self.restricted_degree(j, i), (j..=i).map(|k| (k, k + 2 - j)).collect())
            }
            None => (self.degree, self.indices().map(|k| (k, k)).collect()),
        };
        let mut involutions = BTreeMap::new();
        for (from, to) in pairs {
            let f = members
                .iter()
                .map(|&x| {
                    local.get(&self.apply(from, x)).copied().ok_or_else(|| {
                        Error::Argument(format!("members are not closed under involution {from}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            involutions.insert(to, f);
        }
        let stats = members
            .iter()
            .map(|&k| match window {
                Some((j, i)) => self.restricted_stat(k, j, i, peak_window),
                None => Ok(self.stats[k]),
            })
            .collect::<Result<Vec<_>>>()?;
        let ids = members.iter().map(|&k| self.ids[k].clone()).collect();
        DEGround::from_parts(degree, self.kind, ids, stats, involutions)
    }

    /// Reads a peak ground of degree `n` as a descent ground of degree `n-1`
    /// by shifting every peak set down by one.
    pub fn peaks_shifted_down(&self) -> Result<DEGround> {
        if self.kind != StatKind::Peak || self.degree < 2 {
            return Err(Error::Argument("needs a peak ground of degree at least 2".into()));
        }
        let stats = self.stats.iter().map(|m| m >> 1).collect();
        DEGround::from_parts(
            self.degree - 1,
            StatKind::Des,
            self.ids.clone(),
            stats,
            self.involutions.clone(),
        )
    }
}

/// A class generating function in the `F` or `G` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GenFn {
    F(QSymF),
    G(QSymG),
}

impl fmt::Display for GenFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenFn::F(x) => x.fmt(f),
            GenFn::G(x) => x.fmt(f),
        }
    }
}

// ---------------------------------------------------------------------------
// Builtin grounds

/// The builtin families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    /// Permutations of `n` under `d_i`, with descent sets.
    PermD(usize),
    /// Permutations of `n` under `b_i`, with peak sets.
    PermB(usize),
    /// Signed permutations of `n` under `phi_i`.
    SignedPermPhi(usize),
    SytD(Partition),
    ShsytB(StrictPartition),
    /// Signed standard shifted tableaux under `psi_i`; diagonal primes are
    /// allowed only when the flag is set.
    SignedShsytPsi(StrictPartition, bool),
}

impl Builtin {
    /// Resolves CLI-style names, e.g. `("perm", "d", Some(4), None)`.
    pub fn from_names(
        ground: &str,
        family: &str,
        n: Option<usize>,
        shape: Option<&[usize]>,
        diagonal_primes: bool,
    ) -> Result<Self> {
        let need_n = || n.ok_or_else(|| Error::Argument(format!("{ground} needs --n")));
        let need_shape =
            || shape.ok_or_else(|| Error::Argument(format!("{ground} needs --shape")));
        match (ground, family) {
            ("perm", "d") => Ok(Builtin::PermD(need_n()?)),
            ("perm", "b") => Ok(Builtin::PermB(need_n()?)),
            ("signedperm", "phi") => Ok(Builtin::SignedPermPhi(need_n()?)),
            ("syt", "d") => Ok(Builtin::SytD(Partition::new(need_shape()?.to_vec())?)),
            ("shsyt", "b") => Ok(Builtin::ShsytB(StrictPartition::new(need_shape()?.to_vec())?)),
            ("signed-shsyt", "psi") => Ok(Builtin::SignedShsytPsi(
                StrictPartition::new(need_shape()?.to_vec())?,
                diagonal_primes,
            )),
            _ => Err(Error::Argument(format!(
                "no builtin ground {ground} with family {family}"
            ))),
        }
    }
}

/// Letters concatenated when every value is a single digit, dot-separated
/// otherwise, so ids never contain whitespace.
fn word_id(letters: &[Entry]) -> String {
    let sep = if letters.iter().all(|e| e.value < 10) { "" } else { "." };
    letters.iter().map(Entry::to_string).collect::<Vec<_>>().join(sep)
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(k) = (1..n).rev().find(|&k| cur[k - 1] < cur[k]) else {
            return out;
        };
        let l = (k..n).rev().find(|&l| cur[l] > cur[k - 1]).unwrap();
        cur.swap(k - 1, l);
        cur[k..].reverse();
        out.push(cur.clone());
    }
}

fn materialize<T, F>(
    degree: usize,
    kind: StatKind,
    objects: Vec<T>,
    id: impl Fn(&T) -> String + Sync,
    stat: impl Fn(&T) -> Result<u64>,
    apply: F,
) -> Result<DEGround>
where
    T: Clone + Eq + Hash + Send + Sync,
    F: Fn(usize, &T) -> Result<T> + Sync,
{
    let lookup: HashMap<&T, usize> = objects.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut involutions = BTreeMap::new();
    for i in index_range(kind, degree) {
        let f = objects
            .par_iter()
            .map(|t| {
                let u = apply(i, t)?;
                lookup.get(&u).copied().ok_or_else(|| {
                    Error::Invariant(format!("involution {i} leaves the ground at {}", id(t)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        involutions.insert(i, f);
    }
    let ids = objects.iter().map(&id).collect();
    let stats = objects.iter().map(&stat).collect::<Result<Vec<_>>>()?;
    DEGround::from_parts(degree, kind, ids, stats, involutions)
}

#[allow(clippy::ptr_arg)] // passed where `fn(&Vec<u32>)` is expected
fn perm_id(w: &Vec<u32>) -> String {
    let letters: Vec<Entry> = w.iter().map(|&v| Entry::new(v)).collect();
    word_id(&letters)
}

fn perm_des(w: &[u32]) -> Result<DescentSet> {
    Ok(SignedWord::unsigned(w)?.descent_set())
}

fn tableau_id(t: &Tableau) -> String {
    word_id(&t.reading_word())
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::Argument(format!("size {n} outside 1..={MAX_DEGREE}")));
    }
    Ok(())
}

/// Materializes a builtin ground with every involution precomputed.
pub fn build_ground(family: &Builtin) -> Result<DEGround> {
    match family {
        Builtin::PermD(n) => {
            check_size(*n)?;
            materialize(*n, StatKind::Des, permutations(*n), perm_id, |w| Ok(perm_des(w)?.mask()), |i, w| d(i, w))
        }
        Builtin::PermB(n) => {
            check_size(*n)?;
            materialize(
                *n,
                StatKind::Peak,
                permutations(*n),
                perm_id,
                |w| Ok(peak_of(&perm_des(w)?).mask()),
                |i, w| b(i, w),
            )
        }
        Builtin::SignedPermPhi(n) => {
            check_size(*n)?;
            if *n > 8 {
                return Err(Error::Argument(format!("signed permutations of {n} are too many")));
            }
            let mut words = Vec::new();
            for p in permutations(*n) {
                for signs in 0..1u32 << n {
                    let letters = p
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| Entry {
                            value: v,
                            primed: signs >> (n - 1 - k) & 1 == 1,
                        })
                        .collect();
                    words.push(SignedWord::new(letters)?);
                }
            }
            materialize(
                *n,
                StatKind::Des,
                words,
                |w| word_id(w.letters()),
                |w| Ok(w.descent_set().mask()),
                phi,
            )
        }
        Builtin::SytD(shape) => {
            check_size(shape.size())?;
            materialize(
                shape.size(),
                StatKind::Des,
                enumerate_syt(shape),
                tableau_id,
                |t| Ok(descent_set_tab(t)?.mask()),
                d_tab,
            )
        }
        Builtin::ShsytB(shape) => {
            check_size(shape.size())?;
            materialize(
                shape.size(),
                StatKind::Peak,
                enumerate_shsyt(shape),
                tableau_id,
                |t| Ok(peak_of(&descent_set_tab(t)?).mask()),
                b_tab,
            )
        }
        Builtin::SignedShsytPsi(shape, diagonal_primes) => {
            check_size(shape.size())?;
            materialize(
                shape.size(),
                StatKind::Des,
                enumerate_signed_standard(shape, *diagonal_primes),
                tableau_id,
                |t| Ok(descent_set_tab(t)?.mask()),
                psi,
            )
        }
    }
}
