//! Subspaces of `Q^n` in canonical reduced-echelon form, and subquotients.
//!
//! A [`Subspace`] is stored as its primitive-integer RREF (positive pivots,
//! rows sorted by pivot column), so two subspaces are equal iff their stored
//! rows are equal.

use num_bigint::BigInt;
use num_traits::Zero;

use super::echelon::{rat_vec_to_row, LeadEchelon, ReducedEchelon, Row};
use super::matrix::RatMatrix;
use super::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Row<BigInt>>,
}

fn row_to_rat(row: &Row<BigInt>, n: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    for (c, x) in row {
        v[*c] = Rat::from_integer(x.clone());
    }
    v
}

fn shift(row: &Row<BigInt>, by: usize) -> Row<BigInt> {
    row.iter().map(|(c, x)| (c + by, x.clone())).collect()
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| vec![(i, BigInt::from(1))]).collect(),
        }
    }

    fn from_int_rows(ambient: usize, rows: impl IntoIterator<Item = Row<BigInt>>) -> Self {
        let mut ech = ReducedEchelon::new();
        for r in rows {
            ech.insert(r);
        }
        Subspace {
            ambient,
            rows: ech.sorted_rows(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        Self::from_int_rows(
            ambient,
            vectors.iter().map(|v| {
                assert_eq!(v.len(), ambient, "vector outside ambient space");
                rat_vec_to_row(v)
            }),
        )
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::from_int_rows(ambient, indices.into_iter().map(|i| vec![(i, BigInt::from(1))]))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> Vec<Vec<Rat>> {
        self.rows.iter().map(|r| row_to_rat(r, self.ambient)).collect()
    }

    fn echelon(&self) -> ReducedEchelon {
        let mut ech = ReducedEchelon::new();
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.echelon().reduce(rat_vec_to_row(v)).is_empty()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let ech = self.echelon();
        other.rows.iter().all(|r| ech.reduce(r.clone()).is_empty())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Self::from_int_rows(
            self.ambient,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        )
    }

    /// Zassenhaus: echelonize rows `(u | u)` and `(v | 0)`; rows whose left
    /// half vanishes carry the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut ech = LeadEchelon::<BigInt>::new();
        for u in &self.rows {
            let mut r = u.clone();
            r.extend(shift(u, n));
            ech.insert(r);
        }
        for v in &other.rows {
            ech.insert(v.clone());
        }
        let inter = ech
            .rows()
            .iter()
            .filter(|r| r.first().is_some_and(|e| e.0 >= n))
            .map(|r| shift_down(r, n));
        Self::from_int_rows(n, inter)
    }

    /// Image of this subspace under `map` (a `m x n` matrix).
    pub fn image(&self, map: &RatMatrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        let imgs: Vec<Vec<Rat>> = self.basis().iter().map(|v| map.apply(v)).collect();
        Subspace::span(map.rows(), &imgs)
    }

    /// `{x in self : map x in target}`.
    pub fn preimage_within(&self, map: &RatMatrix, target: &Subspace) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        assert_eq!(map.rows(), target.ambient);
        let m = map.rows();
        let mut ech = LeadEchelon::<BigInt>::new();
        for s in self.basis() {
            ech.insert(rat_vec_to_row(&[map.apply(&s), s].concat()));
        }
        for w in &target.rows {
            ech.insert(w.clone());
        }
        let pre = ech
            .rows()
            .iter()
            .filter(|r| r.first().is_some_and(|e| e.0 >= m))
            .map(|r| shift_down(r, m));
        Self::from_int_rows(self.ambient, pre)
    }

    /// Kernel of `map` restricted to this subspace.
    pub fn kernel_within(&self, map: &RatMatrix) -> Subspace {
        self.preimage_within(map, &Subspace::zero(map.rows()))
    }
}

fn shift_down(row: &Row<BigInt>, by: usize) -> Row<BigInt> {
    row.iter().map(|(c, x)| (c - by, x.clone())).collect()
}

/// `num / den` with `den ⊆ num`, together with fixed representatives of a
/// basis of the quotient.
#[derive(Clone, Debug)]
pub struct Subquotient {
    num: Subspace,
    den: Subspace,
    reps: Vec<Vec<Rat>>,
    solver: ReducedEchelon,
}

impl Subquotient {
    pub fn new(num: Subspace, den: Subspace) -> Self {
        debug_assert!(num.contains_subspace(&den), "denominator not inside numerator");
        let n = num.ambient;
        let mut probe = den.echelon();
        let mut reps = Vec::new();
        for v in num.basis() {
            if probe.insert(rat_vec_to_row(&v)) {
                reps.push(v);
            }
        }
        // rows (rep_i | e_i | 0) and (b_j | 0 | 0); a query (x | 0 | 1) reduces
        // to (0 | -c | s) with x = sum c_i/s rep_i  mod den.
        let mut solver = ReducedEchelon::new();
        for (i, v) in reps.iter().enumerate() {
            let mut r = rat_vec_to_row(v);
            r.push((n + i, BigInt::from(1)));
            solver.insert(r);
        }
        for b in &den.rows {
            solver.insert(b.clone());
        }
        Subquotient {
            num,
            den,
            reps,
            solver,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.num.ambient
    }

    pub fn numerator(&self) -> &Subspace {
        &self.num
    }

    pub fn denominator(&self) -> &Subspace {
        &self.den
    }

    pub fn representatives(&self) -> &[Vec<Rat>] {
        &self.reps
    }

    /// Coordinates of the class of `x` (which must lie in the numerator).
    pub fn coords(&self, x: &[Rat]) -> Vec<Rat> {
        let n = self.num.ambient;
        let k = self.reps.len();
        let mut q = rat_vec_to_row(x);
        let scale = {
            // recover the factor used by rat_vec_to_row
            let first = x.iter().position(|v| !v.is_zero());
            match first {
                None => return vec![Rat::zero(); k],
                Some(i) => {
                    let c = q.iter().find(|e| e.0 == i).expect("nonzero").1.clone();
                    Rat::from_integer(c) / &x[i]
                }
            }
        };
        q.push((n + k, BigInt::from(1)));
        let r = self.solver.reduce(q);
        let mut out = vec![Rat::zero(); k];
        let mut s = None;
        for (c, v) in &r {
            if *c < n {
                panic!("vector does not lie in the numerator of the subquotient");
            } else if *c < n + k {
                out[c - n] = -Rat::from_integer(v.clone());
            } else {
                s = Some(Rat::from_integer(v.clone()));
            }
        }
        let s = s.expect("tracking coordinate survives") * scale;
        out.iter().map(|c| c / &s).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::{rat, ratio};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn preimage() {
        // map (x,y,z) -> (x+y, z)
        let m = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let target = Subspace::span(2, &[v(&[1, 0])]);
        let pre = Subspace::full(3).preimage_within(&m, &target);
        assert_eq!(pre, Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]));
        let ker = Subspace::full(3).kernel_within(&m);
        assert_eq!(ker, Subspace::span(3, &[v(&[1, -1, 0])]));
    }

    #[test]
    fn subquotient_coordinates() {
        let num = Subspace::full(3);
        let den = Subspace::span(3, &[v(&[1, 1, 1])]);
        let sq = Subquotient::new(num, den);
        assert_eq!(sq.dim(), 2);
        let reps = sq.representatives().to_vec();
        let x: Vec<Rat> = reps[0]
            .iter()
            .zip(&reps[1])
            .map(|(a, b)| a * ratio(3, 2) - b * rat(2) + rat(5))
            .collect();
        assert_eq!(sq.coords(&x), vec![ratio(3, 2), rat(-2)]);
    }
}
