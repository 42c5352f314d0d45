use std::collections::BTreeMap;
use std::fmt;
use std::ops::AddAssign;

/// A sparse integer polynomial in `x_1..x_k`, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * x^exponents`; shorter exponent vectors are zero-padded.
    pub fn add_term(&mut self, exponents: &[usize], coeff: i64) {
        assert!(exponents.len() <= self.nvars, "too many variables");
        if coeff == 0 {
            return;
        }
        let mut key = exponents.to_vec();
        key.resize(self.nvars, 0);
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, exponents: &[usize]) -> i64 {
        let mut key = exponents.to_vec();
        key.resize(self.nvars, 0);
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn scaled(&self, by: i64) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e, c * by);
        }
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl fmt::Display for Polynomial {
    /// Largest exponent vectors first: `x1^3 x2 + 2 x1^2 x2^2 + x1 x2^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (exps, &c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    _ => factors.push(format!("x{}^{}", v + 1, e)),
                }
            }
            let mono = factors.join(" ");
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (a, mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                _ => write!(f, "{a} {mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render() {
        let mut p = Polynomial::zero(2);
        p.add_term(&[1, 3], 1);
        p.add_term(&[3, 1], 1);
        p.add_term(&[2, 2], 2);
        assert_eq!(p.to_string(), "x1^3 x2 + 2 x1^2 x2^2 + x1 x2^3");
        let mut q = Polynomial::zero(1);
        q.add_term(&[], 3);
        q.add_term(&[1], -1);
        assert_eq!(q.to_string(), "-x1 + 3");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn cancellation() {
        let mut p = Polynomial::zero(2);
        p.add_term(&[1, 0], 2);
        let q = p.scaled(-1);
        p += &q;
        assert!(p.is_zero());
    }
}
