use std::fmt;

use num_traits::Zero;

use super::rat::{format_rat, rat, Rat};
use crate::error::{Error, Result};

/// A rational matrix stored as sorted sparse rows.
///
/// Semantically a map `(row, col) -> Rat`; entries that are absent are zero and
/// no stored entry is ever zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rat)>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, rat(1)));
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<Rat>]) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "dense data does not match declared shape {rows}x{cols}"
            )));
        }
        let data = entries
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        Ok(RatMatrix { rows, cols, data })
    }

    /// Convenience for tests and hand-built examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let dense: Vec<Vec<Rat>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_dense(r, c, &dense).expect("ragged rows")
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, x) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!(
                    "entry ({i},{j}) outside {rows}x{cols}"
                )));
            }
            m.add_to(i, j, &x);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[(usize, Rat)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    /// Fraction of stored entries, in `[0, 1]`.
    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.nnz() as f64 / cells as f64
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Rat) {
        if x.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, cur + x);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                t.data[*j].push((i, x.clone()));
            }
        }
        t
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, x * s)).collect())
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let mut acc: Vec<Rat> = vec![Rat::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                let x = std::mem::replace(&mut acc[j], Rat::zero());
                if !x.is_zero() {
                    out.data[i].push((j, x));
                }
            }
            touched.clear();
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (j, x) in row {
                out.add_to(i, *j, x);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rat::zero(), |acc, (j, x)| acc + x * &v[*j])
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out[i][*j] = x.clone();
            }
        }
        out
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Build from dense column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.data[i].push((j, x.clone()));
                }
            }
        }
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (i, row) in block.data.iter().enumerate() {
            for (j, x) in row {
                self.set(r0 + i, c0 + j, x.clone());
            }
        }
    }

    /// Sub-matrix with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let mut out = Self::zeros(rows.len(), cols.len());
        for (k, &r) in rows.iter().enumerate() {
            for (j, x) in &self.data[r] {
                if col_pos[*j] != usize::MAX {
                    out.data[k].push((col_pos[*j], x.clone()));
                }
            }
            out.data[k].sort_by_key(|e| e.0);
        }
        out
    }

    pub(crate) fn sparse_rows(&self) -> &[Vec<(usize, Rat)>] {
        &self.data
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(format_rat).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_transpose() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = RatMatrix::from_i64(&[&[1, 0, 1], &[2, 1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, RatMatrix::from_i64(&[&[5, 2, 1], &[2, 1, 0], &[3, 0, 3]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn cancellation_leaves_no_zero_entries() {
        let a = RatMatrix::from_i64(&[&[1, -1]]);
        let b = RatMatrix::from_i64(&[&[1], &[1]]);
        let ab = a.mul(&b).unwrap();
        assert!(ab.is_zero());
        assert_eq!(ab.nnz(), 0);
    }
}
