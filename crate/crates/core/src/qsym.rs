//! Quasisymmetric functions in the fundamental (`F`) and shifted fundamental
//! (`G`) bases, Schur / Schur-Q / Schur-P constructions, and exact
//! expansion into the Schur and Schur-P bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ExactSolver, Solution};
use crate::partition::{partitions_of, strict_partitions_of, Partition, StrictPartition};
use crate::poly::Polynomial;
use crate::stats::{peak_of, peak_sets, spike_of, DescentSet, PeakSet};
use crate::tableau::{
    descent_set_tab, enumerate_shsyt, enumerate_shssyt, enumerate_signed_standard,
    enumerate_ssyt, enumerate_syt, monomial_weight, Tableau,
};

/// Largest degree the Schur and Schur-P solvers accept.
pub const MAX_SOLVE_DEGREE: usize = 12;

/// An integer combination of `F_D` over descent sets of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSymF {
    degree: usize,
    coeffs: BTreeMap<DescentSet, i64>,
}

/// An integer combination of `G_P` over peak sets of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSymG {
    degree: usize,
    coeffs: BTreeMap<PeakSet, i64>,
}

macro_rules! sparse_combination {
    ($name:ident, $key:ty, $letter:literal) => {
        impl $name {
            pub fn zero(degree: usize) -> Self {
                $name {
                    degree,
                    coeffs: BTreeMap::new(),
                }
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn coeffs(&self) -> &BTreeMap<$key, i64> {
                &self.coeffs
            }

            pub fn coefficient(&self, key: &$key) -> i64 {
                self.coeffs.get(key).copied().unwrap_or(0)
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn add_term(&mut self, key: $key, coeff: i64) {
                assert_eq!(key.degree(), self.degree, "degree mismatch");
                if coeff == 0 {
                    return;
                }
                let c = self.coeffs.entry(key).or_insert(0);
                *c += coeff;
                if *c == 0 {
                    self.coeffs.remove(&key);
                }
            }

            pub fn add(&mut self, other: &$name) {
                assert_eq!(other.degree, self.degree, "degree mismatch");
                for (&k, &c) in &other.coeffs {
                    self.add_term(k, c);
                }
            }

            pub fn scaled(&self, by: i64) -> Self {
                let mut out = Self::zero(self.degree);
                for (&k, &c) in &self.coeffs {
                    out.add_term(k, c * by);
                }
                out
            }

            /// One `<coefficient> <basis><set>` line per term, sorted by key.
            pub fn to_lines(&self) -> String {
                self.coeffs
                    .iter()
                    .map(|(k, c)| format!("{c} {}{k}\n", $letter))
                    .collect()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.coeffs.is_empty() {
                    return f.write_str("0");
                }
                for (k, (key, &c)) in self.coeffs.iter().enumerate() {
                    let sep = match (k, c < 0) {
                        (0, false) => "",
                        (0, true) => "-",
                        (_, false) => " + ",
                        (_, true) => " - ",
                    };
                    let a = c.abs();
                    if a == 1 {
                        write!(f, "{sep}{}{key}", $letter)?;
                    } else {
                        write!(f, "{sep}{a} {}{key}", $letter)?;
                    }
                }
                Ok(())
            }
        }
    };
}

sparse_combination!(QSymF, DescentSet, "F");
sparse_combination!(QSymG, PeakSet, "G");

fn parse_term_line(line: &str, letter: char, lineno: usize) -> Result<(&str, &str)> {
    let mut parts = line.split_whitespace();
    let (Some(coef), Some(key), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::parse(lineno, format!("expected `<coefficient> {letter}...`, got {line:?}")));
    };
    let key = key
        .strip_prefix(letter)
        .ok_or_else(|| Error::parse(lineno, format!("expected basis {letter} in {line:?}")))?;
    Ok((coef, key))
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_int(s: &str, lineno: usize) -> Result<i64> {
    s.parse()
        .map_err(|_| Error::parse(lineno, format!("bad integer coefficient {s:?}")))
}

impl QSymF {
    /// Parses the line format written by [`QSymF::to_lines`].
    pub fn parse_lines(text: &str, degree: usize) -> Result<Self> {
        let mut out = QSymF::zero(degree);
        for (no, line) in lines(text) {
            let (c, key) = parse_term_line(line, 'F', no)?;
            let d = DescentSet::parse(degree, key).map_err(|e| Error::parse(no, e.to_string()))?;
            out.add_term(d, parse_int(c, no)?);
        }
        Ok(out)
    }
}

impl QSymG {
    pub fn parse_lines(text: &str, degree: usize) -> Result<Self> {
        let mut out = QSymG::zero(degree);
        for (no, line) in lines(text) {
            let (c, key) = parse_term_line(line, 'G', no)?;
            let p = PeakSet::parse(degree, key).map_err(|e| Error::parse(no, e.to_string()))?;
            out.add_term(p, parse_int(c, no)?);
        }
        Ok(out)
    }
}

/// Coefficients of a symmetric function in a partition-indexed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion<K: Ord> {
    degree: usize,
    coeffs: BTreeMap<K, BigRational>,
}

/// Schur expansion, keyed by partitions.
pub type SchurExpansion = Expansion<Partition>;
/// Schur-P expansion, keyed by strict partitions.
pub type PExpansion = Expansion<StrictPartition>;

impl<K: Ord + Clone + fmt::Display> Expansion<K> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<K, BigRational> {
        &self.coeffs
    }

    pub fn coefficient(&self, key: &K) -> BigRational {
        self.coeffs.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Every coefficient is a nonnegative integer.
    pub fn is_positive(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// The single index carrying coefficient 1, when that is all there is.
    pub fn unit(&self) -> Option<&K> {
        match self.coeffs.iter().next() {
            Some((k, c)) if self.coeffs.len() == 1 && c.is_one() => Some(k),
            _ => None,
        }
    }

    pub fn to_lines(&self, letter: &str) -> String {
        self.coeffs
            .iter()
            .map(|(k, c)| format!("{c} {letter}{k}\n"))
            .collect()
    }

    fn parse_with(text: &str, degree: usize, letter: char) -> Result<Self>
    where
        K: FromStr<Err = Error>,
        K: HasSize,
    {
        let mut coeffs = BTreeMap::new();
        for (no, line) in lines(text) {
            let (c, key) = parse_term_line(line, letter, no)?;
            let k: K = key.parse().map_err(|e: Error| Error::parse(no, e.to_string()))?;
            if k.size() != degree {
                return Err(Error::parse(no, format!("{k} does not have size {degree}")));
            }
            let c: BigRational = c
                .parse()
                .map_err(|_| Error::parse(no, format!("bad coefficient {c:?}")))?;
            if !c.is_zero() {
                coeffs.insert(k, c);
            }
        }
        Ok(Expansion { degree, coeffs })
    }
}

pub trait HasSize {
    fn size(&self) -> usize;
}

impl HasSize for Partition {
    fn size(&self) -> usize {
        Partition::size(self)
    }
}

impl HasSize for StrictPartition {
    fn size(&self) -> usize {
        StrictPartition::size(self)
    }
}

impl SchurExpansion {
    /// Parses `<coefficient> s[3,1]` lines.
    pub fn parse_lines(text: &str, degree: usize) -> Result<Self> {
        Self::parse_with(text, degree, 's')
    }
}

impl PExpansion {
    /// Parses `<coefficient> P[4,2,1]` lines.
    pub fn parse_lines(text: &str, degree: usize) -> Result<Self> {
        Self::parse_with(text, degree, 'P')
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_expansion(f, &self.coeffs, "s")
    }
}

impl fmt::Display for PExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_expansion(f, &self.coeffs, "P")
    }
}

fn render_expansion<K: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &BTreeMap<K, BigRational>,
    letter: &str,
) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    for (k, (key, c)) in coeffs.iter().enumerate() {
        let sep = match (k, c.is_negative()) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let a = c.abs();
        if a.is_one() {
            write!(f, "{sep}{letter}{key}")?;
        } else {
            write!(f, "{sep}{a} {letter}{key}")?;
        }
    }
    Ok(())
}

/// Result of expanding a quasisymmetric function in the Schur basis.
#[derive(Debug, Clone, PartialEq)]
pub enum SchurOutcome {
    Symmetric(SchurExpansion),
    /// Not in the span of Schur functions; the witness is a descent set where
    /// the best fit leaves a nonzero residual.
    NotSymmetric { witness: DescentSet },
}

#[derive(Debug, Clone, PartialEq)]
pub enum POutcome {
    InSpan(PExpansion),
    NotInSpan { witness: PeakSet },
}

impl SchurOutcome {
    pub fn expansion(&self) -> Option<&SchurExpansion> {
        match self {
            SchurOutcome::Symmetric(e) => Some(e),
            SchurOutcome::NotSymmetric { .. } => None,
        }
    }
}

impl POutcome {
    pub fn expansion(&self) -> Option<&PExpansion> {
        match self {
            POutcome::InSpan(e) => Some(e),
            POutcome::NotInSpan { .. } => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Constructions

/// `F_D(x_1..x_k)`: weakly increasing index sequences with strict rises at
/// the positions in `D`.
pub fn f_specialize(d: &DescentSet, k: usize) -> Polynomial {
    let n = d.degree();
    let mut out = Polynomial::zero(k);
    let mut exps = vec![0usize; k];
    fn rec(
        d: &DescentSet,
        pos: usize,
        n: usize,
        min: usize,
        exps: &mut Vec<usize>,
        out: &mut Polynomial,
    ) {
        if pos > n {
            out.add_term(exps, 1);
            return;
        }
        for v in min..exps.len() {
            exps[v] += 1;
            let next = if d.contains(pos) { v + 1 } else { v };
            rec(d, pos + 1, n, next, exps, out);
            exps[v] -= 1;
        }
    }
    rec(d, 1, n, 0, &mut exps, &mut out);
    out
}

/// Specializes an `F`-expansion to `k` variables.
pub fn specialize_f(f: &QSymF, k: usize) -> Polynomial {
    let mut out = Polynomial::zero(k);
    for (d, &c) in f.coeffs() {
        out += &f_specialize(d, k).scaled(c);
    }
    out
}

fn sum_descents(degree: usize, tableaux: &[Tableau]) -> QSymF {
    let mut out = QSymF::zero(degree);
    for t in tableaux {
        let d = descent_set_tab(t).expect("enumerated tableaux are standard");
        out.add_term(d, 1);
    }
    out
}

/// `s_λ = Σ_{T ∈ SYT(λ)} F_{Des(T)}`.
pub fn schur_in_f(shape: &Partition) -> QSymF {
    sum_descents(shape.size().max(1), &enumerate_syt(shape))
}

/// `P_λ = Σ F_{Des(S)}` over signed standard tableaux with an unprimed diagonal.
pub fn p_in_f(shape: &StrictPartition) -> QSymF {
    sum_descents(shape.size().max(1), &enumerate_signed_standard(shape, false))
}

/// `Q_λ`, computed both as `2^ℓ P_λ` and directly over all signed standard
/// tableaux; the two must agree.
pub fn q_in_f(shape: &StrictPartition) -> Result<QSymF> {
    let scaled = p_in_f(shape).scaled(1 << shape.length());
    let direct = sum_descents(shape.size().max(1), &enumerate_signed_standard(shape, true));
    if scaled != direct {
        return Err(Error::Invariant(format!(
            "Q{shape}: 2^l P = {scaled} but the signed sum is {direct}"
        )));
    }
    Ok(direct)
}

/// `P_λ = Σ_{T ∈ ShSYT(λ)} G_{Peak(T)}`.
pub fn p_in_g(shape: &StrictPartition) -> QSymG {
    let n = shape.size().max(1);
    let mut out = QSymG::zero(n);
    for t in enumerate_shsyt(shape) {
        let d = descent_set_tab(&t).expect("standard");
        out.add_term(peak_of(&d), 1);
    }
    out
}

/// `G_P = Σ F_D` over descent sets whose spike set contains `P`.
pub fn g_to_f(g: &QSymG) -> QSymF {
    let n = g.degree();
    let mut out = QSymF::zero(n);
    let all = DescentSet::all(n);
    for (p, &c) in g.coeffs() {
        for d in &all {
            if spike_of(d).contains_all(p) {
                out.add_term(*d, c);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Schur,
    Q,
    P,
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "schur" => Ok(SeriesKind::Schur),
            "Q" => Ok(SeriesKind::Q),
            "P" => Ok(SeriesKind::P),
            _ => Err(Error::Argument(format!("unknown function kind {s:?}"))),
        }
    }
}

/// Tableau generating polynomial of `s_λ`, `Q_λ` or `P_λ` in `k` variables.
pub fn monomial_series(kind: SeriesKind, shape: &[usize], k: usize) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::Argument("need at least one variable".into()));
    }
    let max = k as u32;
    let tableaux = match kind {
        SeriesKind::Schur => enumerate_ssyt(&Partition::new(shape.to_vec())?, max),
        SeriesKind::Q => enumerate_shssyt(&StrictPartition::new(shape.to_vec())?, max, true),
        SeriesKind::P => enumerate_shssyt(&StrictPartition::new(shape.to_vec())?, max, false),
    };
    let mut out = Polynomial::zero(k);
    for t in &tableaux {
        out.add_term(&monomial_weight(t), 1);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Expansion solvers

struct SchurBasis {
    shapes: Vec<Partition>,
    solver: ExactSolver,
}

struct PBasis {
    shapes: Vec<StrictPartition>,
    peak_row: HashMap<u64, usize>,
    peaks: Vec<PeakSet>,
    solver: ExactSolver,
}

fn check_solve_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SOLVE_DEGREE {
        return Err(Error::Argument(format!(
            "degree {n} outside 1..={MAX_SOLVE_DEGREE}"
        )));
    }
    Ok(())
}

fn schur_basis(n: usize) -> Arc<SchurBasis> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SchurBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return b.clone();
    }
    let shapes = partitions_of(n);
    // row index of a descent set = mask >> 1
    let mut matrix = vec![vec![0i64; shapes.len()]; 1 << (n - 1)];
    for (col, shape) in shapes.iter().enumerate() {
        for t in enumerate_syt(shape) {
            let d = descent_set_tab(&t).expect("standard");
            matrix[(d.mask() >> 1) as usize][col] += 1;
        }
    }
    let solver = ExactSolver::new(matrix, shapes.len()).expect("Schur functions are independent");
    let basis = Arc::new(SchurBasis { shapes, solver });
    cache.lock().unwrap().insert(n, basis.clone());
    basis
}

fn p_basis(n: usize) -> Arc<PBasis> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return b.clone();
    }
    let shapes = strict_partitions_of(n);
    let peaks = peak_sets(n);
    let peak_row: HashMap<u64, usize> = peaks.iter().enumerate().map(|(k, p)| (p.mask(), k)).collect();
    let mut matrix = vec![vec![0i64; shapes.len()]; peaks.len()];
    for (col, shape) in shapes.iter().enumerate() {
        for t in enumerate_shsyt(shape) {
            let p = peak_of(&descent_set_tab(&t).expect("standard"));
            matrix[peak_row[&p.mask()]][col] += 1;
        }
    }
    let solver = ExactSolver::new(matrix, shapes.len()).expect("Schur P-functions are independent");
    let basis = Arc::new(PBasis {
        shapes,
        peak_row,
        peaks,
        solver,
    });
    cache.lock().unwrap().insert(n, basis.clone());
    basis
}

/// Rank and shape of the `F`-expansion matrix of the Schur basis of degree `n`.
pub fn schur_matrix_rank(n: usize) -> Result<(usize, usize, usize)> {
    check_solve_degree(n)?;
    let b = schur_basis(n);
    Ok((b.solver.rows(), b.solver.cols(), b.solver.rank()))
}

/// Rank and shape of the `G`-expansion matrix of the Schur-P basis of degree `n`.
pub fn p_matrix_rank(n: usize) -> Result<(usize, usize, usize)> {
    check_solve_degree(n)?;
    let b = p_basis(n);
    Ok((b.solver.rows(), b.solver.cols(), b.solver.rank()))
}

fn collect<K: Ord + Clone>(shapes: &[K], x: Vec<BigRational>) -> BTreeMap<K, BigRational> {
    shapes
        .iter()
        .cloned()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Solves `f = Σ a_λ s_λ` exactly, or reports that `f` is not symmetric.
pub fn expand_in_schur(f: &QSymF) -> Result<SchurOutcome> {
    let n = f.degree();
    check_solve_degree(n)?;
    let basis = schur_basis(n);
    let mut rhs = vec![0i64; 1 << (n - 1)];
    for (d, &c) in f.coeffs() {
        rhs[(d.mask() >> 1) as usize] = c;
    }
    Ok(match basis.solver.solve(&rhs) {
        Solution::Unique(x) => SchurOutcome::Symmetric(Expansion {
            degree: n,
            coeffs: collect(&basis.shapes, x),
        }),
        Solution::Inconsistent { row } => SchurOutcome::NotSymmetric {
            witness: DescentSet::from_mask_unchecked(n, (row as u64) << 1),
        },
    })
}

/// Solves `g = Σ a_λ P_λ` exactly over strict partitions.
pub fn expand_in_p(g: &QSymG) -> Result<POutcome> {
    let n = g.degree();
    check_solve_degree(n)?;
    let basis = p_basis(n);
    let mut rhs = vec![0i64; basis.peaks.len()];
    for (p, &c) in g.coeffs() {
        rhs[basis.peak_row[&p.mask()]] = c;
    }
    Ok(match basis.solver.solve(&rhs) {
        Solution::Unique(x) => POutcome::InSpan(Expansion {
            degree: n,
            coeffs: collect(&basis.shapes, x),
        }),
        Solution::Inconsistent { row } => POutcome::NotInSpan {
            witness: basis.peaks[row],
        },
    })
}

/// Integer coefficient helper for tests and rendering.
pub fn as_integer(c: &BigRational) -> Option<BigInt> {
    c.is_integer().then(|| c.to_integer())
}
