//! First-quadrant-style double complexes, their totalization, and the
//! degeneration test for the column-filtration spectral sequence.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gmodule::{check_equivariance, GMap, GModule};
use crate::group::FiniteGroup;
use crate::linalg::RatMatrix;

use super::complex::{cohomology_dims, CochainComplex};
use super::filtered::{degeneration_page, spectral_sequence, FilteredComplex};

/// Cells `K^{p,q}` with `d': K^{p,q} -> K^{p+1,q}` and `d'': K^{p,q} -> K^{p,q+1}`.
/// Missing differentials are zero.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    group: Arc<FiniteGroup>,
    cells: BTreeMap<(i64, i64), GModule>,
    horizontal: BTreeMap<(i64, i64), RatMatrix>,
    vertical: BTreeMap<(i64, i64), RatMatrix>,
}

impl DoubleComplex {
    pub fn new(
        group: Arc<FiniteGroup>,
        cells: BTreeMap<(i64, i64), GModule>,
        horizontal: BTreeMap<(i64, i64), RatMatrix>,
        vertical: BTreeMap<(i64, i64), RatMatrix>,
    ) -> Result<Self> {
        if cells.values().any(|m| m.group() != &group) {
            return Err(Error::DoubleComplex("cells over different groups".into()));
        }
        let dc = DoubleComplex {
            group,
            cells,
            horizontal,
            vertical,
        };
        dc.validate()?;
        Ok(dc)
    }

    /// Plain vector spaces: `dims[(p,q)]` with the given matrices.
    pub fn from_matrices(
        dims: &BTreeMap<(i64, i64), usize>,
        horizontal: BTreeMap<(i64, i64), RatMatrix>,
        vertical: BTreeMap<(i64, i64), RatMatrix>,
    ) -> Result<Self> {
        let group = Arc::new(FiniteGroup::trivial());
        let cells = dims
            .iter()
            .map(|(&k, &d)| (k, GModule::trivial(group.clone(), d)))
            .collect();
        Self::new(group, cells, horizontal, vertical)
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, GModule::dim)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(i64, i64), &GModule)> {
        self.cells.iter()
    }

    /// `d'` out of `(p, q)` (zero if absent).
    pub fn horizontal(&self, p: i64, q: i64) -> RatMatrix {
        self.horizontal
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim(p + 1, q), self.dim(p, q)))
    }

    /// `d''` out of `(p, q)` (zero if absent).
    pub fn vertical(&self, p: i64, q: i64) -> RatMatrix {
        self.vertical
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim(p, q + 1), self.dim(p, q)))
    }

    fn module(&self, p: i64, q: i64) -> GModule {
        self.cells
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| GModule::zero(self.group.clone()))
    }

    fn validate(&self) -> Result<()> {
        for (kind, maps, (dp, dq)) in [("horizontal", &self.horizontal, (1, 0)), ("vertical", &self.vertical, (0, 1))] {
            for (&(p, q), m) in maps {
                if m.shape() != (self.dim(p + dp, q + dq), self.dim(p, q)) {
                    return Err(Error::DoubleComplex(format!("{kind} map at ({p},{q}) has the wrong shape")));
                }
                let f = GMap::new(self.module(p, q), self.module(p + dp, q + dq), m.clone())?;
                if !check_equivariance(&f)? {
                    return Err(Error::DoubleComplex(format!("{kind} map at ({p},{q}) is not equivariant")));
                }
            }
        }
        for &(p, q) in self.cells.keys() {
            let h = self.horizontal(p, q);
            let v = self.vertical(p, q);
            if !self.horizontal(p + 1, q).mul(&h)?.is_zero() {
                return Err(Error::DoubleComplex(format!("d'd' != 0 at ({p},{q})")));
            }
            if !self.vertical(p, q + 1).mul(&v)?.is_zero() {
                return Err(Error::DoubleComplex(format!("d''d'' != 0 at ({p},{q})")));
            }
            let a = self.vertical(p + 1, q).mul(&h)?;
            let b = self.horizontal(p, q + 1).mul(&v)?;
            if !a.add(&b)?.is_zero() {
                return Err(Error::DoubleComplex(format!("d' and d'' do not anticommute at ({p},{q})")));
            }
        }
        Ok(())
    }

    /// `Tot^n = ⊕_{p+q=n} K^{p,q}` with `D = d' + d''`, filtered by columns
    /// `F^s Tot = ⊕_{p >= s}`. Within each degree, cells are ordered by `p`.
    pub fn totalize(&self) -> Result<FilteredComplex> {
        let Some(lo) = self.cells.keys().map(|k| k.0 + k.1).min() else {
            return Ok(FilteredComplex::trivial(CochainComplex::empty(self.group.clone())));
        };
        let hi = self.cells.keys().map(|k| k.0 + k.1).max().expect("nonempty");
        let layout = |n: i64| -> Vec<(i64, i64, usize)> {
            let mut off = 0;
            let mut v = Vec::new();
            for (&(p, q), m) in &self.cells {
                if p + q == n {
                    v.push((p, q, off));
                    off += m.dim();
                }
            }
            v
        };
        let mut modules = Vec::new();
        let mut levels = Vec::new();
        for n in lo..=hi {
            let parts: Vec<GModule> = layout(n).iter().map(|&(p, q, _)| self.module(p, q)).collect();
            modules.push(if parts.is_empty() {
                GModule::zero(self.group.clone())
            } else {
                GModule::direct_sum(&parts)?
            });
            levels.push(
                layout(n)
                    .iter()
                    .flat_map(|&(p, q, _)| std::iter::repeat_n(p, self.dim(p, q)))
                    .collect::<Vec<i64>>(),
            );
        }
        let mut diffs = Vec::new();
        for n in lo..hi {
            let (src, tgt) = (layout(n), layout(n + 1));
            let i = (n - lo) as usize;
            let mut m = RatMatrix::zeros(modules[i + 1].dim(), modules[i].dim());
            for &(p, q, c0) in &src {
                for &(tp, tq, r0) in &tgt {
                    if (tp, tq) == (p + 1, q) {
                        m.set_block(r0, c0, &self.horizontal(p, q));
                    } else if (tp, tq) == (p, q + 1) {
                        m.set_block(r0, c0, &self.vertical(p, q));
                    }
                }
            }
            diffs.push(GMap::new(modules[i].clone(), modules[i + 1].clone(), m)?);
        }
        let complex = CochainComplex::new(lo, modules, diffs)?;
        if levels.iter().all(Vec::is_empty) {
            return Ok(FilteredComplex::trivial(complex));
        }
        // degrees with no basis vectors still need a level range
        FilteredComplex::from_levels(complex, &levels)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FroelicherReport {
    /// `Σ_{p+q=n} dim H^q(K^{p,•}, d'')`.
    pub e1_total: BTreeMap<i64, usize>,
    /// `dim H^n(Tot)`.
    pub h_total: BTreeMap<i64, usize>,
    pub degenerates: bool,
    /// First page from which all differentials vanish.
    pub degeneration_page: usize,
}

pub fn froelicher(dc: &DoubleComplex) -> Result<FroelicherReport> {
    let tot = dc.totalize()?;
    let pages = spectral_sequence(&tot, tot.default_r_max())?;
    let c = tot.complex();
    let e1_total: BTreeMap<i64, usize> = c.degrees().map(|n| (n, pages[1].total_dim(n))).collect();
    let h_total: BTreeMap<i64, usize> = cohomology_dims(c).into_iter().map(|h| (h.degree, h.dim)).collect();
    Ok(FroelicherReport {
        degenerates: e1_total == h_total,
        degeneration_page: degeneration_page(&pages)?,
        e1_total,
        h_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_differentials_degenerate() {
        // Hodge diamond of a genus-2 curve
        let dims = BTreeMap::from([((0, 0), 1), ((1, 0), 2), ((0, 1), 2), ((1, 1), 1)]);
        let dc = DoubleComplex::from_matrices(&dims, BTreeMap::new(), BTreeMap::new()).unwrap();
        let rep = froelicher(&dc).unwrap();
        assert!(rep.degenerates);
        assert_eq!(rep.h_total[&1], 4);
        assert_eq!(rep.degeneration_page, 1);
    }

    #[test]
    fn rejects_commuting_squares() {
        let one = || RatMatrix::from_i64(&[&[1]]);
        let dims = BTreeMap::from([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]);
        let h = BTreeMap::from([((0, 0), one()), ((0, 1), one())]);
        let v = BTreeMap::from([((0, 0), one()), ((1, 0), one())]);
        assert!(DoubleComplex::from_matrices(&dims, h, v).is_err());
    }
}
