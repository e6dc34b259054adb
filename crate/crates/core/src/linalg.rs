//! Exact linear algebra over the rationals.
//!
//! Two independent elimination routes are provided: rational reduced row
//! echelon form (kernels, solutions) and fraction-free Bareiss elimination
//! over the integers (ranks). Rigidity verdicts use the latter; tests check
//! that both agree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// All rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Stacks the rows of `other` below these.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// `vᵀ M`.
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (r, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let x = self.get(r, c);
                if !x.is_zero() {
                    *o += coef * x;
                }
            }
        }
        out
    }

    /// Reduced row echelon form by fraction-free Gauss-Jordan elimination on
    /// the integer-scaled rows. Every intermediate entry is a minor of the
    /// scaled matrix, so each division by the previous pivot is exact; the
    /// rational form is recovered by one final division per entry.
    pub fn rref(&self) -> Rref {
        let mut a = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut k = 0;
        for c in 0..cols {
            if k == rows {
                break;
            }
            let Some(p) = (k..rows)
                .filter(|&r| !a[r][c].is_zero())
                .min_by_key(|&r| a[r][c].bits())
            else {
                continue;
            };
            a.swap(p, k);
            let pivot_row = std::mem::take(&mut a[k]);
            let pivot = pivot_row[c].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == k {
                    continue;
                }
                let lead = std::mem::take(&mut row[c]);
                for j in 0..cols {
                    if j == c {
                        continue;
                    }
                    let mut num = &pivot * &row[j];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        num -= &lead * &pivot_row[j];
                    }
                    debug_assert!((&num % &prev).is_zero(), "inexact fraction-free division");
                    row[j] = if prev.is_one() { num } else { num / &prev };
                }
            }
            a[k] = pivot_row;
            prev = pivot;
            pivots.push(c);
            k += 1;
        }
        let mut m = Matrix::zeros(rows, cols);
        for (r, row) in a.into_iter().enumerate().take(k) {
            for (j, x) in row.into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, j, Rational::new(x, prev.clone()));
                }
            }
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M x = 0}` read off the reduced echelon form: one vector
    /// per free column, with a 1 there and 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(i, free).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ M = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<Rational>> {
        self.transpose().nullspace()
    }

    /// Each row scaled by the lcm of its denominators.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    /// Rank by fraction-free elimination on the integer-scaled rows.
    pub fn rank_bareiss(&self) -> usize {
        bareiss_rank(self.integer_rows(), self.cols)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of an integer matrix by Bareiss elimination.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut k = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, k);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                row[j] = num / &prev;
            }
        }
        prev = pivot.clone();
        k += 1;
    }
    k
}

/// Whether two families of vectors span the same subspace.
pub fn spans_equal(a: &[Vec<Rational>], b: &[Vec<Rational>], len: usize) -> bool {
    let ra = Matrix::from_rows(a.to_vec(), len).rank();
    let rb = Matrix::from_rows(b.to_vec(), len).rank();
    if ra != rb {
        return false;
    }
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    Matrix::from_rows(both, len).rank() == ra
}
