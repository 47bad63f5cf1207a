//! Sparse matrices over GF(2) and column-ordered elimination.
//!
//! Columns are stored as sorted row-index lists; adding two columns is their
//! symmetric difference. Elimination works on a bit-packed scratch column so
//! each column addition is a run of word XORs.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A sparse `n_rows × n_cols` matrix over GF(2), stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    n_rows: usize,
    cols: Vec<Vec<u32>>,
}

impl Gf2Matrix {
    /// Builds a matrix from column supports. Row lists are sorted and
    /// duplicate entries cancel in pairs.
    pub fn from_columns(n_rows: usize, cols: Vec<Vec<u32>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Vec<u32> = Vec::with_capacity(c.len());
                for r in c {
                    assert!((r as usize) < n_rows, "row {r} out of range ({n_rows} rows)");
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Gf2Matrix { n_rows, cols }
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Gf2Matrix { n_rows, cols: vec![Vec::new(); n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix { n_rows: n, cols: (0..n as u32).map(|i| vec![i]).collect() }
    }

    /// Builds a matrix from dense 0/1 rows.
    pub fn from_dense_rows(rows: &[Vec<u8>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut cols = vec![Vec::new(); n_cols];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged rows");
            for (c, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    cols[c].push(r as u32);
                }
            }
        }
        Gf2Matrix { n_rows: rows.len(), cols }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[u32] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].binary_search(&(r as u32)).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// The submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, which: &[usize]) -> Self {
        Gf2Matrix {
            n_rows: self.n_rows,
            cols: which.iter().map(|&c| self.cols[c].clone()).collect(),
        }
    }

    /// Keeps only the listed rows (ascending), renumbering them `0..keep.len()`.
    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let mut map = vec![u32::MAX; self.n_rows];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new as u32;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut out: Vec<u32> = c
                    .iter()
                    .map(|&r| map[r as usize])
                    .filter(|&r| r != u32::MAX)
                    .collect();
                out.sort_unstable();
                out
            })
            .collect();
        Gf2Matrix { n_rows: keep.len(), cols }
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.n_rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &r in col {
                cols[r as usize].push(c as u32);
            }
        }
        Gf2Matrix { n_rows: self.cols.len(), cols }
    }

    /// Matrix product `self · other` over GF(2).
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if other.n_rows != self.n_cols() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows,
                self.n_cols(),
                other.n_rows,
                other.n_cols()
            )));
        }
        let mut work = FixedBitSet::with_capacity(self.n_rows);
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                work.clear();
                for &k in oc {
                    for &r in &self.cols[k as usize] {
                        work.toggle(r as usize);
                    }
                }
                work.ones().map(|r| r as u32).collect()
            })
            .collect();
        Ok(Gf2Matrix { n_rows: self.n_rows, cols })
    }

    /// Rows as dense bit-packed vectors.
    pub fn to_dense_rows(&self) -> Vec<FixedBitSet> {
        let mut rows = vec![FixedBitSet::with_capacity(self.n_cols()); self.n_rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &r in col {
                rows[r as usize].insert(c);
            }
        }
        rows
    }

    /// Rank by row-major Gaussian elimination on bit-packed rows.
    pub fn rank_dense(&self) -> usize {
        let mut rows = self.to_dense_rows();
        let mut rank = 0;
        for c in 0..self.n_cols() {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].contains(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot = &head[rank];
            for row in tail.iter_mut().filter(|row| row.contains(c)) {
                row.symmetric_difference_with(pivot);
            }
            rank += 1;
        }
        rank
    }
}

/// Outcome of a column-ordered elimination.
///
/// Besides the rank and the pivot/zero column split, this keeps, for every
/// pivot column, its reduced form and the set of original columns that sum to
/// it. That record lets [`ReductionResult::solve_column`] answer any number of
/// right-hand sides without repeating the elimination.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub rank: usize,
    /// Pivot columns in processing order.
    pub pivot_cols: Vec<usize>,
    pub pivot_row_of: BTreeMap<usize, usize>,
    /// Columns that reduced to zero, in processing order.
    pub zero_cols: Vec<usize>,
    n_rows: usize,
    n_cols: usize,
    pivot_rows: Vec<u32>,
    reduced: Vec<Vec<u32>>,
    combos: Vec<Vec<u32>>,
}

impl ReductionResult {
    /// Pivot rows in the order the pivots were created.
    pub fn pivot_rows(&self) -> &[u32] {
        &self.pivot_rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row_of.contains_key(&col)
    }

    /// Expresses `rhs` as a sum of pivot columns of the reduced matrix.
    ///
    /// Returns the original column indices (ascending) whose sum is `rhs`, or
    /// `None` when `rhs` is outside their span.
    pub fn solve_column(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        let mut work = FixedBitSet::with_capacity(self.n_rows);
        for &r in rhs {
            work.toggle(r as usize);
        }
        let mut combo = FixedBitSet::with_capacity(self.n_cols);
        for (i, &p) in self.pivot_rows.iter().enumerate() {
            if work.contains(p as usize) {
                for &r in &self.reduced[i] {
                    work.toggle(r as usize);
                }
                for &c in &self.combos[i] {
                    combo.toggle(c as usize);
                }
            }
        }
        if work.is_clear() {
            Some(combo.ones().map(|c| c as u32).collect())
        } else {
            None
        }
    }

    /// Reduces `v` against the recorded pivots; returns the residual support.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let mut work = FixedBitSet::with_capacity(self.n_rows);
        for &r in v {
            work.toggle(r as usize);
        }
        for (i, &p) in self.pivot_rows.iter().enumerate() {
            if work.contains(p as usize) {
                for &r in &self.reduced[i] {
                    work.toggle(r as usize);
                }
            }
        }
        work.ones().map(|r| r as u32).collect()
    }
}

/// Column-ordered elimination with the largest-index pivot rule.
///
/// Columns are taken in `column_order`; a column independent of those already
/// processed becomes a pivot column whose pivot row is the largest row index
/// left in its reduced form.
pub fn gf2_reduce(m: &Gf2Matrix, column_order: &[usize]) -> ReductionResult {
    gf2_reduce_with(m, column_order, |_, support| *support.last().expect("non-empty"))
}

/// Column-ordered elimination with a caller-chosen pivot row.
///
/// `choose(col, support)` receives the column index and the sorted support of
/// its fully reduced form (never empty) and returns the pivot row, which must
/// belong to the support. Each new column is reduced against every existing
/// pivot in creation order, so any choice yields a valid elimination.
pub fn gf2_reduce_with<F>(m: &Gf2Matrix, column_order: &[usize], mut choose: F) -> ReductionResult
where
    F: FnMut(usize, &[u32]) -> u32,
{
    assert!(is_permutation(column_order, m.n_cols()), "column_order must be a permutation");
    let mut result = ReductionResult {
        rank: 0,
        pivot_cols: Vec::new(),
        pivot_row_of: BTreeMap::new(),
        zero_cols: Vec::new(),
        n_rows: m.n_rows,
        n_cols: m.n_cols(),
        pivot_rows: Vec::new(),
        reduced: Vec::new(),
        combos: Vec::new(),
    };
    let mut work = FixedBitSet::with_capacity(m.n_rows);
    let mut combo = FixedBitSet::with_capacity(m.n_cols());
    for &c in column_order {
        work.clear();
        combo.clear();
        for &r in &m.cols[c] {
            work.insert(r as usize);
        }
        combo.insert(c);
        for (i, &p) in result.pivot_rows.iter().enumerate() {
            if work.contains(p as usize) {
                for &r in &result.reduced[i] {
                    work.toggle(r as usize);
                }
                for &k in &result.combos[i] {
                    combo.toggle(k as usize);
                }
            }
        }
        let support: Vec<u32> = work.ones().map(|r| r as u32).collect();
        if support.is_empty() {
            result.zero_cols.push(c);
            continue;
        }
        let pivot = choose(c, &support);
        assert!(support.binary_search(&pivot).is_ok(), "pivot row must lie in the support");
        result.pivot_cols.push(c);
        result.pivot_row_of.insert(c, pivot as usize);
        result.pivot_rows.push(pivot);
        result.reduced.push(support);
        result.combos.push(combo.ones().map(|k| k as u32).collect());
    }
    result.rank = result.pivot_cols.len();
    result
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(n);
    order.iter().all(|&c| c < n && !seen.put(c))
}

/// Solves `A·X = B` over GF(2) for `A` with independent columns.
pub fn gf2_solve(a: &Gf2Matrix, b: &Gf2Matrix) -> Result<Gf2Matrix> {
    if a.n_rows != b.n_rows {
        return Err(Error::Shape(format!("A has {} rows, B has {}", a.n_rows, b.n_rows)));
    }
    let order: Vec<usize> = (0..a.n_cols()).collect();
    let red = gf2_reduce(a, &order);
    if red.rank < a.n_cols() {
        return Err(Error::NotFullRank { rank: red.rank, cols: a.n_cols() });
    }
    let cols = b
        .cols
        .iter()
        .enumerate()
        .map(|(j, col)| red.solve_column(col).ok_or(Error::NotInSpan { column: j }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Gf2Matrix { n_rows: a.n_cols(), cols })
}
