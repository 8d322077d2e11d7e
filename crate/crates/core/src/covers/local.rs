//! Cochain complexes of finite covers, presented as a base complex whose
//! coefficients carry group elements.
//!
//! Every base cell `c` has a free orbit of lifts `(c, h)`, `h ∈ G`, with `G`
//! acting by left multiplication on `h`. A base entry `(row, col, coef, k)`
//! of `d^j` means `d(col, h) += coef · (row, h·k)` for every `h`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gmodule::{GMap, GModule};
use crate::group::FiniteGroup;
use crate::linalg::{rank_with, EliminationConfig, Rat, RatMatrix};
use crate::ss::{cohomology_dims, CochainComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedEntry {
    pub row: usize,
    pub col: usize,
    pub coef: Rat,
    pub element: usize,
}

#[derive(Clone, Debug)]
pub struct LocalSystemComplex {
    group: Arc<FiniteGroup>,
    start: i64,
    cells: Vec<usize>,
    /// `entries[j]` describes `d^{start + j}`.
    entries: Vec<Vec<TwistedEntry>>,
}

impl LocalSystemComplex {
    pub fn new(group: Arc<FiniteGroup>, start: i64, cells: Vec<usize>, entries: Vec<Vec<TwistedEntry>>) -> Result<Self> {
        if !cells.is_empty() && entries.len() + 1 != cells.len() {
            return Err(Error::Shape(format!(
                "{} degrees need {} differentials, got {}",
                cells.len(),
                cells.len() - 1,
                entries.len()
            )));
        }
        for (j, es) in entries.iter().enumerate() {
            for e in es {
                if e.row >= cells[j + 1] || e.col >= cells[j] || e.element >= group.order() {
                    return Err(Error::Shape(format!("entry {e:?} out of range in degree {}", start + j as i64)));
                }
            }
        }
        Ok(LocalSystemComplex {
            group,
            start,
            cells,
            entries,
        })
    }

    /// Trivial monodromy: `|G|` disjoint copies of `base`.
    pub fn untwisted(group: Arc<FiniteGroup>, base: &CochainComplex) -> Result<Self> {
        let cells: Vec<usize> = base.degrees().map(|k| base.dim(k)).collect();
        let entries = base
            .degrees()
            .take(cells.len().saturating_sub(1))
            .map(|k| {
                let m = base.d_matrix(k);
                (0..m.rows())
                    .flat_map(|r| {
                        m.row(r)
                            .iter()
                            .map(move |(c, x)| TwistedEntry {
                                row: r,
                                col: *c,
                                coef: x.clone(),
                                element: 0,
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        Self::new(group, base.start(), cells, entries)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn base_cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn entries(&self) -> &[Vec<TwistedEntry>] {
        &self.entries
    }

    /// The quotient complex over `X`: every group label forgotten.
    pub fn base_complex(&self) -> Result<CochainComplex> {
        let mats = self
            .entries
            .iter()
            .enumerate()
            .map(|(j, es)| {
                let mut m = RatMatrix::zeros(self.cells[j + 1], self.cells[j]);
                for e in es {
                    m.add_to(e.row, e.col, &e.coef);
                }
                m
            })
            .collect();
        CochainComplex::from_matrices(self.start, &self.cells, mats)
    }

    /// Lifted cells as permutation modules `Q[G]^{cells}`, basis `(c, h) ↦ c|G| + h`.
    pub fn equivariant_complex(&self) -> Result<CochainComplex> {
        let g = &self.group;
        let n = g.order();
        let modules: Vec<GModule> = self
            .cells
            .iter()
            .map(|&k| {
                let perms = g
                    .elements()
                    .map(|x| (0..k * n).map(|i| (i / n) * n + g.mul(x, i % n)).collect())
                    .collect();
                GModule::from_permutations(g.clone(), perms)
            })
            .collect::<Result<_>>()?;
        let mut diffs = Vec::new();
        for (j, es) in self.entries.iter().enumerate() {
            let mut m = RatMatrix::zeros(modules[j + 1].dim(), modules[j].dim());
            for e in es {
                for h in g.elements() {
                    m.add_to(e.row * n + g.mul(h, e.element), e.col * n + h, &e.coef);
                }
            }
            diffs.push(GMap::new(modules[j].clone(), modules[j + 1].clone(), m)?);
        }
        CochainComplex::new(self.start, modules, diffs)
    }

    /// The same lifted complex over `Q` with sheet-major ordering
    /// `(c, h) ↦ h·cells + c`.
    pub fn expanded_matrices(&self) -> Vec<RatMatrix> {
        let g = &self.group;
        let n = g.order();
        self.entries
            .iter()
            .enumerate()
            .map(|(j, es)| {
                let (src, tgt) = (self.cells[j], self.cells[j + 1]);
                let mut m = RatMatrix::zeros(tgt * n, src * n);
                for e in es {
                    for h in g.elements() {
                        m.add_to(g.mul(h, e.element) * tgt + e.row, h * src + e.col, &e.coef);
                    }
                }
                m
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantDim {
    pub degree: i64,
    pub dim: usize,
    pub vn_dim: Rat,
}

/// Cohomology of the lifted complex, computed twice: as a complex of
/// `G`-modules (equivariance and `d² = 0` checked), and by plain dense
/// elimination of the expanded total-space matrices. Disagreement is an error.
pub fn equivariant_cohomology(l: &LocalSystemComplex) -> Result<Vec<EquivariantDim>> {
    let eq = cohomology_dims(&l.equivariant_complex()?);
    let n = l.group.order();
    let dense = EliminationConfig { density_threshold: 0.0 };
    let ranks: Vec<usize> = l.expanded_matrices().iter().map(|m| rank_with(m, dense)).collect();
    let mut out = Vec::new();
    for (j, h) in eq.iter().enumerate() {
        let dim = l.cells[j] * n;
        let out_rank = ranks.get(j).copied().unwrap_or(0);
        let in_rank = if j > 0 { ranks[j - 1] } else { 0 };
        let total = dim - out_rank - in_rank;
        if total != h.dim {
            return Err(Error::CoverMismatch {
                degree: h.degree,
                equivariant: h.dim,
                total,
            });
        }
        out.push(EquivariantDim {
            degree: h.degree,
            dim: h.dim,
            vn_dim: h.vn_dim.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    /// Circle with vertices 0, 1 and edges a = (0 -> 1), b = (1 -> 0) where b
    /// carries the label `t`.
    fn circle(group: Arc<FiniteGroup>, t: usize) -> LocalSystemComplex {
        let one = rat(1);
        let e = |row, col, coef: &Rat, element| TwistedEntry {
            row,
            col,
            coef: coef.clone(),
            element,
        };
        // d(v) on edges: edge a: v1 - v0, edge b: v0·t - v1
        let entries = vec![vec![
            e(0, 0, &-one.clone(), 0),
            e(0, 1, &one, 0),
            e(1, 1, &-one.clone(), 0),
            e(1, 0, &one, t),
        ]];
        LocalSystemComplex::new(group, 0, vec![2, 2], entries).unwrap()
    }

    #[test]
    fn connected_double_cover() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let h = equivariant_cohomology(&circle(z2, 1)).unwrap();
        assert_eq!((h[0].dim, h[1].dim), (1, 1));
        assert_eq!(h[0].vn_dim, ratio(1, 2));
    }

    #[test]
    fn disconnected_double_cover() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let h = equivariant_cohomology(&circle(z2, 0)).unwrap();
        assert_eq!((h[0].dim, h[1].dim), (2, 2));
    }

    #[test]
    fn trivial_group_is_base() {
        let g = Arc::new(FiniteGroup::trivial());
        let l = circle(g, 0);
        let h = equivariant_cohomology(&l).unwrap();
        let base = cohomology_dims(&l.base_complex().unwrap());
        assert_eq!(h.iter().map(|x| x.dim).collect::<Vec<_>>(), base.iter().map(|x| x.dim).collect::<Vec<_>>());
    }
}
