//! Exact rational matrices with fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A dense matrix of exact rationals, row-major, entries in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        RationalMatrix { n_rows, n_cols, data: vec![BigRational::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * n_cols);
        for row in rows {
            assert_eq!(row.len(), n_cols, "ragged rows");
            data.extend(row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))));
        }
        RationalMatrix { n_rows: rows.len(), n_cols, data }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.n_cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.n_cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.n_cols..(r + 1) * self.n_cols]
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        RationalMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols) {
            return Err(Error::Shape("addition of differently shaped matrices".into()));
        }
        Ok(RationalMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.n_cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }

    /// Each row multiplied by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n_rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }
}

/// Fraction-free forward elimination. Returns the pivot columns; `a` is left
/// in echelon form with pivots on rows `0..rank`.
fn bareiss(a: &mut [Vec<BigInt>], n_cols: usize) -> Vec<usize> {
    let n_rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(p) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..n_cols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Exact rank over the rationals.
pub fn rational_rank(m: &RationalMatrix) -> usize {
    let mut a = m.integer_rows();
    bareiss(&mut a, m.n_cols).len()
}

/// Solves `A·X = B` exactly for square invertible `A`.
pub fn rational_solve(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    let n = a.n_rows;
    if a.n_cols != n {
        return Err(Error::Shape(format!("A must be square, got {}x{}", n, a.n_cols)));
    }
    if b.n_rows != n {
        return Err(Error::Shape(format!("A has {n} rows, B has {}", b.n_rows)));
    }
    let p = b.n_cols;
    let mut aug = RationalMatrix::zeros(n, n + p);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        for c in 0..p {
            aug.set(r, n + c, b.get(r, c).clone());
        }
    }
    let mut full = aug.integer_rows();
    let pivots = bareiss(&mut full, n + p);
    // Invertible iff the first n columns all carry pivots.
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| i != c) {
        return Err(Error::Singular);
    }

    let mut x = RationalMatrix::zeros(n, p);
    for j in 0..p {
        for i in (0..n).rev() {
            let mut acc = BigRational::from_integer(full[i][n + j].clone());
            for k in i + 1..n {
                if !full[i][k].is_zero() {
                    acc -= BigRational::from_integer(full[i][k].clone()) * x.get(k, j);
                }
            }
            x.set(i, j, acc / BigRational::from_integer(full[i][i].clone()));
        }
    }
    Ok(x)
}

/// Largest absolute numerator, a cheap size diagnostic for reports.
pub fn max_abs_numerator(m: &RationalMatrix) -> BigInt {
    m.data.iter().map(|x| x.numer().abs()).max().unwrap_or_else(BigInt::zero)
}
