//! Elementary involutions: `d_i` and `b_i` on permutations and standard
//! tableaux, `phi_i` on signed permutations and `psi_i` on signed standard
//! shifted tableaux.

use crate::error::{Error, Result};
use crate::partition::ShapeKind;
use crate::stats::spike_of;
use crate::tableau::{descent_set_word, Entry, SignedWord, Tableau};

fn check_permutation(w: &[u32]) -> Result<Vec<usize>> {
    let n = w.len();
    let mut pos = vec![usize::MAX; n + 1];
    for (k, &v) in w.iter().enumerate() {
        let v = v as usize;
        if v == 0 || v > n || pos[v] != usize::MAX {
            return Err(Error::Argument(format!("{w:?} is not a permutation")));
        }
        pos[v] = k;
    }
    Ok(pos)
}

fn between(x: usize, lo: usize, hi: usize) -> bool {
    (lo < x && x < hi) || (hi < x && x < lo)
}

/// Which pair of values `d_i` exchanges, given value positions.
fn d_swap(i: usize, pos: &[usize]) -> Option<(usize, usize)> {
    let (a, b, c) = (pos[i - 1], pos[i], pos[i + 1]);
    if between(b, a, c) {
        None
    } else if between(a, b, c) {
        Some((i, i + 1))
    } else {
        Some((i - 1, i))
    }
}

fn swap_values(w: &mut [u32], pos: &[usize], x: usize, y: usize) {
    w.swap(pos[x], pos[y]);
}

/// Haiman's elementary dual equivalence `d_i` for `1 < i < n`.
pub fn d(i: usize, w: &[u32]) -> Result<Vec<u32>> {
    let pos = check_permutation(w)?;
    let n = w.len();
    if !(1 < i && i < n) {
        return Err(Error::Argument(format!("d_{i} needs 1 < i < {n}")));
    }
    let mut out = w.to_vec();
    if let Some((x, y)) = d_swap(i, &pos) {
        swap_values(&mut out, &pos, x, y);
    }
    Ok(out)
}

/// The four candidate moves of `b_i`: (swapped pair, middle letter, left letter).
fn b_candidates(i: usize) -> [((usize, usize), usize, usize); 4] {
    [
        ((i - 1, i), i + 1, i + 2),
        ((i, i + 1), i - 1, i + 2),
        ((i, i + 1), i + 2, i - 1),
        ((i + 1, i + 2), i, i - 1),
    ]
}

fn b_swap(i: usize, pos: &[usize]) -> Result<Option<(usize, usize)>> {
    let mut chosen: Option<(usize, usize)> = None;
    for ((x, y), c, left) in b_candidates(i) {
        if between(pos[c], pos[x], pos[y]) && pos[left] < pos[c] {
            match chosen {
                None => chosen = Some((x, y)),
                Some(prev) if prev == (x, y) => {}
                Some(prev) => {
                    let layout: Vec<String> = (i - 1..=i + 2)
                        .map(|v| format!("{v}@{}", pos[v]))
                        .collect();
                    return Err(Error::Invariant(format!(
                        "b_{i}: candidate swaps {prev:?} and {:?} both apply ({})",
                        (x, y),
                        layout.join(" ")
                    )));
                }
            }
        }
    }
    Ok(chosen)
}

/// Haiman's elementary shifted dual equivalence `b_i` for `1 < i < n-1`.
pub fn b(i: usize, w: &[u32]) -> Result<Vec<u32>> {
    let pos = check_permutation(w)?;
    let n = w.len();
    if !(1 < i && i + 1 < n) {
        return Err(Error::Argument(format!("b_{i} needs 1 < i < {}", n.saturating_sub(1))));
    }
    let mut out = w.to_vec();
    if let Some((x, y)) = b_swap(i, &pos)? {
        swap_values(&mut out, &pos, x, y);
    }
    Ok(out)
}

fn unsigned_word(t: &Tableau) -> Result<Vec<u32>> {
    if t.has_primes() {
        return Err(Error::Argument("expected an unsigned tableau".into()));
    }
    Ok(t.reading_word().iter().map(|e| e.value).collect())
}

fn refill(t: &Tableau, w: &[u32]) -> Result<Tableau> {
    let letters: Vec<Entry> = w.iter().map(|&v| Entry::new(v)).collect();
    Tableau::from_reading_word(t.kind(), &t.shape(), &letters)
        .map_err(|e| Error::Invariant(format!("image of {t:?} is not a tableau: {e}")))
}

/// `d_i` on a standard Young tableau through its reading word.
pub fn d_tab(i: usize, t: &Tableau) -> Result<Tableau> {
    if t.kind() != ShapeKind::Straight || !t.is_standard() {
        return Err(Error::Argument("d_i needs a standard Young tableau".into()));
    }
    refill(t, &d(i, &unsigned_word(t)?)?)
}

/// `b_i` on an unsigned standard shifted tableau through its reading word.
pub fn b_tab(i: usize, t: &Tableau) -> Result<Tableau> {
    if t.kind() != ShapeKind::Shifted || !t.is_standard() {
        return Err(Error::Argument("b_i needs a standard shifted tableau".into()));
    }
    refill(t, &b(i, &unsigned_word(t)?)?)
}

fn check_index(name: &str, i: usize, n: usize) -> Result<()> {
    if !(1 < i && i < n) {
        return Err(Error::Argument(format!("{name}_{i} needs 1 < i < {n}")));
    }
    Ok(())
}

/// Positions (in the word) of the values `i-1, i, i+1`, sorted.
fn abc_positions(i: usize, pos: &[usize]) -> [usize; 3] {
    let mut p = [pos[i - 1], pos[i], pos[i + 1]];
    p.sort_unstable();
    p
}

/// The signed-permutation involution `phi_i`.
pub fn phi(i: usize, w: &SignedWord) -> Result<SignedWord> {
    check_index("phi", i, w.len())?;
    if !spike_of(&descent_set_word(w)).contains(i) {
        return Ok(w.clone());
    }
    let pos = w.positions();
    let [pa, pb, pc] = abc_positions(i, &pos);
    let mut letters = w.letters().to_vec();
    if letters[pb].primed != letters[pc].primed {
        letters[pb].primed = !letters[pb].primed;
        letters[pc].primed = !letters[pc].primed;
    } else {
        let (va, vc) = (letters[pa].value, letters[pc].value);
        letters[pa].value = vc;
        letters[pc].value = va;
    }
    Ok(SignedWord::from_letters_unchecked(letters))
}

/// The signed-tableau involution `psi_i`.
pub fn psi(i: usize, s: &Tableau) -> Result<Tableau> {
    if s.kind() != ShapeKind::Shifted || !s.is_standard() {
        return Err(Error::Argument("psi_i needs a signed standard shifted tableau".into()));
    }
    check_index("psi", i, s.size())?;
    let w = s.signed_word()?;
    if !spike_of(&descent_set_word(&w)).contains(i) {
        return Ok(s.clone());
    }
    let pos = w.positions();
    let [pa, pb, pc] = abc_positions(i, &pos);
    let letters = w.letters();
    let loc = s.locations();
    let cell_of = |p: usize| loc[letters[p].value as usize];
    let (ca, cb, cc) = (cell_of(pa), cell_of(pb), cell_of(pc));
    let mut out = s.clone();
    let col_a = s.column(ca.0, ca.1);
    // When i-1, i, i+1 fill one column the spike forces exactly one of b, c
    // to be primed, and the sign exchange below is the involutive move.
    if col_a == s.column(cc.0, cc.1) && col_a != s.column(cb.0, cb.1) {
        let mut e = s.entry_at(cc.0, cc.1);
        e.primed = !e.primed;
        out.set_entry(cc.0, cc.1, e);
    } else if letters[pb].primed != letters[pc].primed {
        let (mut eb, mut ec) = (s.entry_at(cb.0, cb.1), s.entry_at(cc.0, cc.1));
        std::mem::swap(&mut eb.primed, &mut ec.primed);
        out.set_entry(cb.0, cb.1, eb);
        out.set_entry(cc.0, cc.1, ec);
    } else {
        let (mut ea, mut ec) = (s.entry_at(ca.0, ca.1), s.entry_at(cc.0, cc.1));
        std::mem::swap(&mut ea.value, &mut ec.value);
        out.set_entry(ca.0, ca.1, ea);
        out.set_entry(cc.0, cc.1, ec);
    }
    out.check()
        .map_err(|e| Error::Invariant(format!("psi_{i} of\n{s}\nis invalid: {e}")))?;
    Ok(out)
}
