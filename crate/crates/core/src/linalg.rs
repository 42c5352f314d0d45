//! Exact solving of overdetermined integer systems `M x = b` where `M` has
//! full column rank.
//!
//! A square set of independent rows is picked once with fraction-free
//! (Bareiss) elimination, and its adjugate is computed by fraction-free
//! Gauss-Jordan, so every solve is an integer matrix-vector product followed
//! by an exact consistency check against all rows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ExactSolver {
    matrix: Vec<Vec<i64>>,
    cols: usize,
    pivot_rows: Vec<usize>,
    /// `scale * inverse(M[pivot_rows])`
    scaled_inverse: Vec<Vec<BigInt>>,
    scale: BigInt,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// No solution; `row` is the first row whose residual is nonzero.
    Inconsistent { row: usize },
}

fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (&a / b, &a % b);
    debug_assert!(r.is_zero(), "fraction-free step left a remainder");
    q
}

impl ExactSolver {
    pub fn new(matrix: Vec<Vec<i64>>, cols: usize) -> Result<Self> {
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("ragged matrix".into()));
        }
        let pivot_rows = independent_rows(&matrix, cols)?;
        let square: Vec<Vec<BigInt>> = pivot_rows
            .iter()
            .map(|&r| matrix[r].iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let (scale, scaled_inverse) = scaled_inverse(square);
        Ok(ExactSolver {
            matrix,
            cols,
            pivot_rows,
            scaled_inverse,
            scale,
        })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn solve(&self, rhs: &[i64]) -> Solution {
        assert_eq!(rhs.len(), self.matrix.len(), "rhs length");
        let picked: Vec<BigInt> = self.pivot_rows.iter().map(|&r| BigInt::from(rhs[r])).collect();
        let y: Vec<BigInt> = self
            .scaled_inverse
            .iter()
            .map(|row| row.iter().zip(&picked).map(|(a, b)| a * b).sum())
            .collect();
        for (r, row) in self.matrix.iter().enumerate() {
            let lhs: BigInt = row
                .iter()
                .zip(&y)
                .filter(|(&m, _)| m != 0)
                .map(|(&m, v)| v * m)
                .sum();
            if lhs != &self.scale * rhs[r] {
                return Solution::Inconsistent { row: r };
            }
        }
        Solution::Unique(
            y.into_iter()
                .map(|v| BigRational::new(v, self.scale.clone()))
                .collect(),
        )
    }
}

/// Indices of `cols` linearly independent rows, by Bareiss elimination.
fn independent_rows(matrix: &[Vec<i64>], cols: usize) -> Result<Vec<usize>> {
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut origin: Vec<usize> = (0..a.len()).collect();
    let mut prev = BigInt::one();
    for k in 0..cols {
        let Some(p) = (k..a.len()).find(|&p| !a[p][k].is_zero()) else {
            return Err(Error::Invariant(format!(
                "matrix has rank {k} < {cols} columns"
            )));
        };
        a.swap(k, p);
        origin.swap(k, p);
        for i in k + 1..a.len() {
            if a[i][k].is_zero() {
                for j in k + 1..cols {
                    a[i][j] = exact_div(&a[k][k] * &a[i][j], &prev);
                }
            } else {
                for j in k + 1..cols {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = exact_div(v, &prev);
                }
                a[i][k] = BigInt::zero();
            }
        }
        prev = a[k][k].clone();
    }
    Ok(origin[..cols].to_vec())
}

/// Fraction-free Gauss-Jordan on `[A | I]`; returns `(d, d * A^-1)`.
fn scaled_inverse(a: Vec<Vec<BigInt>>) -> (BigInt, Vec<Vec<BigInt>>) {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&p| !m[p][k].is_zero())
            .expect("pivot rows are independent");
        m.swap(k, p);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(v, &prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let inv = m.into_iter().map(|row| row[n..].to_vec()).collect();
    (prev, inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain rational Gaussian elimination, used only as an oracle.
    fn rational_solve(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
        let cols = m[0].len();
        let mut a: Vec<Vec<BigRational>> = m
            .iter()
            .zip(b)
            .map(|(row, &bv)| {
                row.iter()
                    .chain(std::iter::once(&bv))
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&p| !a[p][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=cols {
                        let t = &a[r][j] * &f;
                        a[i][j] = &a[i][j] - t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); cols];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = a[k][cols].clone();
        }
        Some(x)
    }

    #[test]
    fn small_system() {
        let m = vec![vec![1, 0], vec![1, 1], vec![0, 1]];
        let s = ExactSolver::new(m, 2).unwrap();
        assert_eq!(s.rank(), 2);
        match s.solve(&[2, 5, 3]) {
            Solution::Unique(x) => {
                assert_eq!(x, vec![BigRational::from_integer(2.into()), BigRational::from_integer(3.into())])
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(s.solve(&[2, 5, 4]), Solution::Inconsistent { row: 2 });
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let m = vec![vec![1, 2], vec![2, 4]];
        assert!(ExactSolver::new(m, 2).is_err());
    }

    #[test]
    fn fractional_solution() {
        let m = vec![vec![2, 1], vec![1, 3]];
        let s = ExactSolver::new(m, 2).unwrap();
        let Solution::Unique(x) = s.solve(&[1, 0]) else { panic!() };
        assert_eq!(x[0], BigRational::new(3.into(), 5.into()));
        assert_eq!(x[1], BigRational::new((-1).into(), 5.into()));
    }

    proptest! {
        #[test]
        fn agrees_with_rational_elimination(
            entries in proptest::collection::vec(-4i64..5, 24),
            xs in proptest::collection::vec(-3i64..4, 4),
            noise in proptest::collection::vec(-1i64..2, 6),
        ) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let Ok(s) = ExactSolver::new(m.clone(), 4) else {
                return Ok(());
            };
            let mut b: Vec<i64> = m.iter().map(|r| r.iter().zip(&xs).map(|(a, x)| a * x).sum()).collect();
            let x = xs.iter().map(|&v| BigRational::from_integer(v.into())).collect::<Vec<_>>();
            prop_assert_eq!(s.solve(&b), Solution::Unique(x));
            for (v, d) in b.iter_mut().zip(&noise) {
                *v += d;
            }
            match (s.solve(&b), rational_solve(&m, &b)) {
                (Solution::Unique(a), Some(o)) => prop_assert_eq!(a, o),
                (Solution::Inconsistent { .. }, None) => {}
                (a, o) => prop_assert!(false, "solver {:?} vs oracle {:?}", a, o),
            }
        }
    }
}
