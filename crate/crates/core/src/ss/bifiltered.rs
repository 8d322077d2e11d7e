//! A second filtration `F` on a complex already filtered by `W`, and the two
//! ways of inducing it on the pages of the `W` spectral sequence:
//!
//! * direct: `F^s E_r` is the image of `Z_r ∩ F^s K` in `E_r`;
//! * recurrent: `F^s E_0` is direct, and `F^s E_{r+1}` is the image of
//!   `F^s E_r ∩ ker d_r` in `E_{r+1} = ker d_r / im d_r`.
//!
//! Deciding in general when these agree is not attempted; the dimensions of
//! the graded pieces are compared cell by cell and disagreements reported.

use crate::error::{Error, Result};
use crate::linalg::{Rat, RatMatrix, Subspace};

use super::filtered::{FilteredComplex, SSPage};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCell {
    pub r: usize,
    pub p: i64,
    pub q: i64,
    pub s: i64,
    /// `dim Gr_F^s E_r^{p,q}` for the direct filtration.
    pub direct: usize,
    /// Same for the recurrent filtration.
    pub recurrent: usize,
}

#[derive(Clone, Debug)]
pub struct InducedReport {
    pub cells: Vec<InducedCell>,
}

impl InducedReport {
    pub fn consistent(&self) -> bool {
        self.cells.iter().all(|c| c.direct == c.recurrent)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &InducedCell> {
        self.cells.iter().filter(|c| c.direct != c.recurrent)
    }

    /// Direct graded dims of one cell, keyed by `s`.
    pub fn graded(&self, r: usize, p: i64, q: i64) -> Vec<(i64, usize)> {
        self.cells
            .iter()
            .filter(|c| c.r == r && c.p == p && c.q == q)
            .map(|c| (c.s, c.direct))
            .collect()
    }
}

fn coords_span(page: &SSPage, p: i64, q: i64, vectors: &[Vec<Rat>]) -> Subspace {
    let e = page.entry(p, q).expect("cell exists");
    let cs: Vec<Vec<Rat>> = vectors.iter().map(|v| e.classes.coords(v)).collect();
    Subspace::span(e.dim(), &cs)
}

/// Compare direct and recurrent induced `F` filtrations on `pages` (the
/// spectral sequence of `w`). `f` must filter the same complex.
pub fn induced_filtrations(w: &FilteredComplex, f: &FilteredComplex, pages: &[SSPage]) -> Result<InducedReport> {
    let c = w.complex();
    if f.complex().degrees() != c.degrees() || c.degrees().any(|k| f.complex().dim(k) != c.dim(k)) {
        return Err(Error::Filtration("second filtration lives on a different complex".into()));
    }
    let (s_min, s_max) = f.p_range();
    let mut cells = Vec::new();
    // recurrent[(p,q)][s - s_min] in page coordinates
    let mut recurrent: std::collections::BTreeMap<(i64, i64), Vec<Subspace>> = Default::default();
    for (idx, page) in pages.iter().enumerate() {
        let mut direct_all = std::collections::BTreeMap::new();
        for e in page.entries() {
            let n = e.p + e.q;
            let num = e.classes.numerator();
            let direct: Vec<Subspace> = (s_min..=s_max + 1)
                .map(|s| coords_span(page, e.p, e.q, &num.intersect(&f.f(n, s)).basis()))
                .collect();
            direct_all.insert((e.p, e.q), direct);
        }
        if idx == 0 {
            recurrent = direct_all.clone();
        } else {
            let prev = &pages[idx - 1];
            let rr = prev.r as i64;
            let mut next = std::collections::BTreeMap::new();
            for e in page.entries() {
                let (p, q) = (e.p, e.q);
                let pe = prev.entry(p, q).expect("same cells on every page");
                let ker = match prev.differential(p, q) {
                    Some(d) => Subspace::full(pe.dim()).kernel_within(d.matrix()),
                    None => Subspace::full(pe.dim()),
                };
                let im = match prev.differential(p - rr, q + rr - 1) {
                    Some(d) => Subspace::full(d.source().dim()).image(d.matrix()),
                    None => Subspace::zero(pe.dim()),
                };
                // phi: E_{r+1} -> E_r on representatives
                let cols: Vec<Vec<Rat>> = e
                    .classes
                    .representatives()
                    .iter()
                    .map(|x| pe.classes.coords(x))
                    .collect();
                let phi = RatMatrix::from_columns(pe.dim(), &cols);
                let spaces = recurrent[&(p, q)]
                    .iter()
                    .map(|fs| Subspace::full(e.dim()).preimage_within(&phi, &fs.intersect(&ker).sum(&im)))
                    .collect();
                next.insert((p, q), spaces);
            }
            recurrent = next;
        }
        for e in page.entries() {
            let d = &direct_all[&(e.p, e.q)];
            let rc = &recurrent[&(e.p, e.q)];
            for (j, s) in (s_min..=s_max).enumerate() {
                cells.push(InducedCell {
                    r: page.r,
                    p: e.p,
                    q: e.q,
                    s,
                    direct: d[j].dim() - d[j + 1].dim(),
                    recurrent: rc[j].dim() - rc[j + 1].dim(),
                });
            }
        }
    }
    Ok(InducedReport { cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ss::complex::CochainComplex;
    use crate::ss::filtered::spectral_sequence;

    #[test]
    fn agree_on_split_bigrading() {
        // K^0 = <a, b>, K^1 = <c>, d(a) = c; W levels and F levels on a basis
        let c = CochainComplex::from_matrices(0, &[2, 1], vec![RatMatrix::from_i64(&[&[1, 0]])]).unwrap();
        let w = FilteredComplex::from_levels(c.clone(), &[vec![0, 0], vec![1]]).unwrap();
        let f = FilteredComplex::from_levels(c, &[vec![1, 0], vec![1]]).unwrap();
        let pages = spectral_sequence(&w, w.default_r_max()).unwrap();
        let rep = induced_filtrations(&w, &f, &pages).unwrap();
        assert!(rep.consistent());
        // surviving class b has F-degree 0
        let last = pages.last().unwrap().r;
        assert_eq!(rep.graded(last, 0, 0), vec![(0, 1), (1, 0)]);
    }
}
