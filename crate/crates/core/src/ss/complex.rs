use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gmodule::{check_equivariance, GMap, GModule};
use crate::group::FiniteGroup;
use crate::linalg::{rank, Rat, RatMatrix, Subquotient, Subspace};

/// A bounded cochain complex of G-modules `K^a -> ... -> K^b`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    start: i64,
    modules: Vec<GModule>,
    differentials: Vec<GMap>,
}

impl CochainComplex {
    /// `differentials[i]` maps `modules[i]` to `modules[i + 1]`.
    pub fn new(start: i64, modules: Vec<GModule>, differentials: Vec<GMap>) -> Result<Self> {
        if !modules.is_empty() && differentials.len() + 1 != modules.len() {
            return Err(Error::Shape(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                differentials.len()
            )));
        }
        if let Some(first) = modules.first() {
            if modules.iter().any(|m| m.group() != first.group()) {
                return Err(Error::Shape("modules over different groups".into()));
            }
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.source() != &modules[i] || d.target() != &modules[i + 1] {
                return Err(Error::Shape(format!(
                    "differential at degree {} does not match its modules",
                    start + i as i64
                )));
            }
        }
        let c = CochainComplex {
            start,
            modules,
            differentials,
        };
        c.validate()?;
        Ok(c)
    }

    /// A complex of plain vector spaces (trivial group) from its matrices.
    pub fn from_matrices(start: i64, dims: &[usize], matrices: Vec<RatMatrix>) -> Result<Self> {
        let g = Arc::new(FiniteGroup::trivial());
        Self::from_matrices_over(g, start, dims, matrices)
    }

    /// Modules with trivial action over `group`.
    pub fn from_matrices_over(
        group: Arc<FiniteGroup>,
        start: i64,
        dims: &[usize],
        matrices: Vec<RatMatrix>,
    ) -> Result<Self> {
        let modules: Vec<GModule> = dims.iter().map(|&d| GModule::trivial(group.clone(), d)).collect();
        let diffs = matrices
            .into_iter()
            .enumerate()
            .map(|(i, m)| GMap::new(modules[i].clone(), modules[i + 1].clone(), m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(start, modules, diffs)
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        let _ = group;
        CochainComplex {
            start: 0,
            modules: Vec::new(),
            differentials: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        for (i, d) in self.differentials.iter().enumerate() {
            let degree = self.start + i as i64;
            if !check_equivariance(d)? {
                return Err(Error::NotEquivariant { degree });
            }
            if let Some(next) = self.differentials.get(i + 1) {
                if !next.matrix().mul(d.matrix())?.is_zero() {
                    return Err(Error::NotAComplex { degree });
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        self.modules.first().map(|m| m.group())
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the top degree.
    pub fn end(&self) -> i64 {
        self.start + self.modules.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.start..self.end()
    }

    fn idx(&self, k: i64) -> Option<usize> {
        (k >= self.start && k < self.end()).then(|| (k - self.start) as usize)
    }

    pub fn module(&self, k: i64) -> Option<&GModule> {
        self.idx(k).map(|i| &self.modules[i])
    }

    pub fn dim(&self, k: i64) -> usize {
        self.module(k).map_or(0, GModule::dim)
    }

    /// `d^k: K^k -> K^{k+1}`, if both ends exist.
    pub fn differential(&self, k: i64) -> Option<&GMap> {
        self.idx(k).and_then(|i| self.differentials.get(i))
    }

    /// `d^k` as a matrix, zero (with correct shape) at the ends.
    pub fn d_matrix(&self, k: i64) -> RatMatrix {
        match self.differential(k) {
            Some(d) => d.matrix().clone(),
            None => RatMatrix::zeros(self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(k) as i64)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDim {
    pub degree: i64,
    pub dim: usize,
    pub vn_dim: Rat,
}

/// `H^k` together with cocycle/coboundary subspaces and class representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    pub dim: usize,
    pub vn_dim: Rat,
    pub classes: Subquotient,
}

fn vn(dim: usize, c: &CochainComplex) -> Rat {
    let order = c.group().map_or(1, |g| g.order());
    Rat::new(dim.into(), order.into())
}

/// Cohomology dimensions from ranks alone: `dim ker d^k - rank d^{k-1}`.
pub fn cohomology_dims(c: &CochainComplex) -> Vec<CohomologyDim> {
    let ranks: Vec<usize> = (c.start - 1..c.end()).map(|k| rank(&c.d_matrix(k))).collect();
    c.degrees()
        .enumerate()
        .map(|(i, k)| {
            let dim = c.dim(k) - ranks[i + 1] - ranks[i];
            CohomologyDim {
                degree: k,
                dim,
                vn_dim: vn(dim, c),
            }
        })
        .collect()
}

/// `H^k = ker d^k / im d^{k-1}` with explicit bases.
pub fn cohomology(c: &CochainComplex) -> Vec<Cohomology> {
    c.degrees()
        .map(|k| {
            let n = c.dim(k);
            let cocycles = Subspace::full(n).kernel_within(&c.d_matrix(k));
            let coboundaries = Subspace::full(c.dim(k - 1)).image(&c.d_matrix(k - 1));
            let classes = Subquotient::new(cocycles, coboundaries);
            Cohomology {
                degree: k,
                dim: classes.dim(),
                vn_dim: vn(classes.dim(), c),
                classes,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn acyclic_two_term() {
        let c = CochainComplex::from_matrices(0, &[1, 1], vec![RatMatrix::from_i64(&[&[1]])]).unwrap();
        assert!(cohomology_dims(&c).iter().all(|h| h.dim == 0));
        assert!(cohomology(&c).iter().all(|h| h.dim == 0));
    }

    #[test]
    fn simplicial_circle() {
        // vertices 0,1,2; edges 01, 02, 12; coboundary (delta f)(uv) = f(v) - f(u)
        let d0 = RatMatrix::from_i64(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        let c = CochainComplex::from_matrices(0, &[3, 3], vec![d0]).unwrap();
        let dims: Vec<usize> = cohomology_dims(&c).iter().map(|h| h.dim).collect();
        assert_eq!(dims, vec![1, 1]);
        assert_eq!(cohomology(&c)[1].vn_dim, rat(1));
    }

    #[test]
    fn d_squared_nonzero_names_degree() {
        let a = RatMatrix::from_i64(&[&[1]]);
        let err = CochainComplex::from_matrices(3, &[1, 1, 1], vec![a.clone(), a]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex { degree: 3 }));
    }
}
