//! Fraction-free elimination on sparse integer rows.
//!
//! Rational input is first scaled row by row to primitive integer vectors.
//! Row operations are `r <- a*r - b*p` with `a, b` the cofactors of the two
//! entries being cancelled, followed by division by the row content, so every
//! stored row stays primitive with a positive leading entry. Elimination is
//! attempted with checked `i64` arithmetic first and restarted with `BigInt`
//! on overflow; both paths run the same algorithm and produce the same result.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::RatMatrix;
use super::rat::{to_primitive_integers, Rat};

/// Integer coefficient usable by the eliminator. Arithmetic returns `None` on
/// overflow.
pub(crate) trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool;
    fn from_big(b: &BigInt) -> Option<Self>;
}

impl Coef for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn gcd(&self, o: &Self) -> Self {
        // i64::MIN never reaches here: `neg` and `sub` reject it first.
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i64().filter(|x| *x != i64::MIN)
    }
}

impl Coef for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
}

pub(crate) type Row<T> = Vec<(usize, T)>;

/// Divide by the content and make the leading entry positive.
fn normalize<T: Coef>(row: &mut Row<T>) -> Option<()> {
    let Some(first) = row.first() else {
        return Some(());
    };
    let mut g = first.1.gcd(&first.1);
    for (_, x) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    let flip = row[0].1.is_negative();
    if !g.is_one() {
        for e in row.iter_mut() {
            e.1 = e.1.div_exact(&g);
        }
    }
    if flip {
        for e in row.iter_mut() {
            e.1 = e.1.neg()?;
        }
    }
    Some(())
}

/// `a*r - b*p` where `a = p[c]/g`, `b = r[c]/g`; the entry in column `c` cancels.
fn cancel<T: Coef>(r: &Row<T>, p: &Row<T>, rc: &T, pc: &T) -> Option<Row<T>> {
    let g = rc.gcd(pc);
    let a = pc.div_exact(&g);
    let b = rc.div_exact(&g);
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a.mul(&r[i].1)?));
            i += 1;
        } else if take_p {
            out.push((p[j].0, b.mul(&p[j].1)?.neg()?));
            j += 1;
        } else {
            let v = a.mul(&r[i].1)?.sub(&b.mul(&p[j].1)?)?;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn entry<T>(row: &Row<T>, c: usize) -> Option<&T> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
}

/// Echelon form where only leading entries are cleared. Enough for rank and
/// for span-intersection tricks that read off rows by leading column.
#[derive(Debug, Clone)]
pub(crate) struct LeadEchelon<T: Coef> {
    rows: Vec<Row<T>>,
    pivot_of: HashMap<usize, usize>,
}

impl<T: Coef> LeadEchelon<T> {
    pub fn new() -> Self {
        LeadEchelon {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `Some(true)` if the row was independent, `None` on overflow.
    pub fn insert(&mut self, mut row: Row<T>) -> Option<bool> {
        normalize(&mut row)?;
        while let Some(&(c, _)) = row.first() {
            match self.pivot_of.get(&c) {
                Some(&k) => {
                    let p = &self.rows[k];
                    row = cancel(&row, p, &row[0].1, &p[0].1)?;
                    normalize(&mut row)?;
                }
                None => {
                    self.pivot_of.insert(c, self.rows.len());
                    self.rows.push(row);
                    return Some(true);
                }
            }
        }
        Some(false)
    }

    pub fn rows(&self) -> &[Row<T>] {
        &self.rows
    }
}

/// Fully reduced echelon form: every pivot column is zero outside its pivot
/// row. The sorted set of rows is the canonical primitive-integer RREF of the
/// span.
#[derive(Debug, Clone)]
pub(crate) struct ReducedEchelon {
    rows: Vec<Row<BigInt>>,
    pivot_of: HashMap<usize, usize>,
}

impl ReducedEchelon {
    pub fn new() -> Self {
        ReducedEchelon {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    /// Clear every pivot column of `row`. The result is a nonzero multiple of
    /// the linear residual of `row` modulo the span.
    pub fn reduce(&self, mut row: Row<BigInt>) -> Row<BigInt> {
        let cols: Vec<usize> = row
            .iter()
            .map(|e| e.0)
            .filter(|c| self.pivot_of.contains_key(c))
            .collect();
        for c in cols {
            let Some(rc) = entry(&row, c).cloned() else {
                continue;
            };
            let p = &self.rows[self.pivot_of[&c]];
            let pc = entry(p, c).expect("pivot entry").clone();
            row = cancel(&row, p, &rc, &pc).expect("bigint arithmetic cannot overflow");
        }
        row
    }

    pub fn insert(&mut self, row: Row<BigInt>) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        normalize(&mut row).expect("bigint");
        let c = row[0].0;
        let pc = row[0].1.clone();
        for k in 0..self.rows.len() {
            if let Some(rc) = entry(&self.rows[k], c).cloned() {
                let mut r = cancel(&self.rows[k], &row, &rc, &pc).expect("bigint");
                normalize(&mut r).expect("bigint");
                self.rows[k] = r;
            }
        }
        self.pivot_of.insert(c, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<Row<BigInt>> {
        let mut idx: Vec<(usize, usize)> = self.pivot_of.iter().map(|(c, k)| (*c, *k)).collect();
        idx.sort_unstable();
        idx.into_iter().map(|(_, k)| self.rows[k].clone()).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivot_of.keys().copied().collect();
        v.sort_unstable();
        v
    }
}

pub(crate) fn dense_to_row(v: &[BigInt]) -> Row<BigInt> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !Zero::is_zero(*x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub(crate) fn rat_row_to_int(row: &[(usize, Rat)]) -> Row<BigInt> {
    let vals: Vec<Rat> = row.iter().map(|e| e.1.clone()).collect();
    let ints = to_primitive_integers(&vals);
    row.iter().map(|e| e.0).zip(ints).collect()
}

pub(crate) fn rat_vec_to_row(v: &[Rat]) -> Row<BigInt> {
    dense_to_row(&to_primitive_integers(v))
}

fn matrix_int_rows(m: &RatMatrix) -> Vec<Row<BigInt>> {
    m.sparse_rows().iter().map(|r| rat_row_to_int(r)).collect()
}

/// Density above which rank switches to dense Bareiss elimination.
pub const DEFAULT_DENSITY_THRESHOLD: f64 = 0.25;

#[derive(Debug, Clone, Copy)]
pub struct EliminationConfig {
    pub density_threshold: f64,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        EliminationConfig {
            density_threshold: DEFAULT_DENSITY_THRESHOLD,
        }
    }
}

fn sparse_rank_with<T: Coef>(rows: &[Row<BigInt>]) -> Option<usize> {
    let mut ech = LeadEchelon::<T>::new();
    for r in rows {
        let converted: Option<Row<T>> = r
            .iter()
            .map(|(c, x)| T::from_big(x).map(|v| (*c, v)))
            .collect();
        ech.insert(converted?)?;
    }
    Some(ech.rank())
}

pub(crate) fn sparse_rank(rows: &[Row<BigInt>]) -> usize {
    sparse_rank_with::<i64>(rows)
        .unwrap_or_else(|| sparse_rank_with::<BigInt>(rows).expect("bigint cannot overflow"))
}

/// Bareiss fraction-free elimination on a dense integer matrix. Pivot: first
/// nonzero entry scanning columns left to right, rows top to bottom.
pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !Zero::is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..n {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = <BigInt as Zero>::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

pub fn rank_with(m: &RatMatrix, cfg: EliminationConfig) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let rows = matrix_int_rows(m);
    if m.density() > cfg.density_threshold {
        let dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let mut d = vec![<BigInt as Zero>::zero(); m.cols()];
                for (c, x) in r {
                    d[*c] = x.clone();
                }
                d
            })
            .collect();
        bareiss_rank(dense, m.cols())
    } else {
        sparse_rank(&rows)
    }
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    rank_with(m, EliminationConfig::default())
}

/// Basis of the null space `{v : m v = 0}`, one vector per free column of the
/// reduced row echelon form (free entry set to one).
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let mut ech = ReducedEchelon::new();
    for r in matrix_int_rows(m) {
        ech.insert(r);
    }
    let pivots = ech.pivot_columns();
    let rows = ech.sorted_rows();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols()];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut out = Vec::new();
    for f in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); m.cols()];
        v[f] = Rat::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            if let Some(x) = entry(row, f) {
                let lead = entry(row, pc).expect("pivot");
                v[pc] = -Rat::new(x.clone(), lead.clone());
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::rat;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::zeros(2, 3)), 0);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        let m = RatMatrix::from_i64(&[&[2, 4, 0, 1], &[1, 2, 3, 0], &[3, 6, 3, 1], &[0, 0, 1, 1]]);
        let dense = rank_with(&m, EliminationConfig { density_threshold: 0.0 });
        let sparse = rank_with(&m, EliminationConfig { density_threshold: 1.0 });
        assert_eq!(dense, sparse);
        assert_eq!(dense, 3);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 2)).len(), 2);
        let k = kernel_basis(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * rat(-1), &k[0][1] * rat(2));
    }

    #[test]
    fn i64_overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![
            vec![(0, BigInt::from(big)), (1, BigInt::from(7))],
            vec![(0, BigInt::from(big - 1)), (1, BigInt::from(5))],
            vec![(0, BigInt::from(3)), (1, BigInt::from(big))],
        ];
        assert!(sparse_rank_with::<i64>(&rows).is_none());
        assert_eq!(sparse_rank(&rows), 2);
    }
}
