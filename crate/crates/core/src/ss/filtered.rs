//! Decreasing filtrations on cochain complexes and their spectral sequences.
//!
//! Pages are built directly from the filtration:
//! `Z_r^{p,q} = F^p K^n ∩ d^{-1}(F^{p+r} K^{n+1})` and
//! `E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})`
//! with `n = p + q`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gmodule::{Action, GMap, GModule};
use crate::linalg::{Rat, RatMatrix, Subquotient, Subspace};

use super::complex::CochainComplex;

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    complex: CochainComplex,
    p_min: i64,
    p_max: i64,
    /// `spaces[k - start][p - p_min] = F^p K^k`.
    spaces: Vec<Vec<Subspace>>,
}

impl FilteredComplex {
    /// `spaces[i][j]` is `F^{p_min + j} K^{start + i}`.
    pub fn new(complex: CochainComplex, p_min: i64, spaces: Vec<Vec<Subspace>>) -> Result<Self> {
        let steps = spaces.first().map_or(1, Vec::len);
        if spaces.len() != complex.degrees().count() {
            return Err(Error::Filtration(format!(
                "filtration given for {} degrees, complex has {}",
                spaces.len(),
                complex.degrees().count()
            )));
        }
        if steps == 0 || spaces.iter().any(|s| s.len() != steps) {
            return Err(Error::Filtration("every degree needs the same number of steps".into()));
        }
        let f = FilteredComplex {
            p_max: p_min + steps as i64 - 1,
            complex,
            p_min,
            spaces,
        };
        f.validate()?;
        Ok(f)
    }

    /// Filtration from spanning sets: `spans[i][j]` spans `F^{p_min + j} K^{start + i}`.
    pub fn from_spans(complex: CochainComplex, p_min: i64, spans: &[Vec<Vec<Vec<Rat>>>]) -> Result<Self> {
        let spaces = spans
            .iter()
            .enumerate()
            .map(|(i, per_p)| {
                let n = complex.dim(complex.start() + i as i64);
                per_p
                    .iter()
                    .map(|vs| {
                        if vs.iter().any(|v| v.len() != n) {
                            return Err(Error::Filtration(format!("spanning vector of wrong length in degree {}", complex.start() + i as i64)));
                        }
                        Ok(Subspace::span(n, vs))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(complex, p_min, spaces)
    }

    /// Basis-adapted filtration: basis vector `i` of `K^k` lies in `F^p` iff
    /// `levels[k - start][i] >= p`.
    pub fn from_levels(complex: CochainComplex, levels: &[Vec<i64>]) -> Result<Self> {
        let all: Vec<i64> = levels.iter().flatten().copied().collect();
        let p_min = all.iter().copied().min().unwrap_or(0);
        let p_max = all.iter().copied().max().unwrap_or(0);
        let spaces = levels
            .iter()
            .map(|lv| {
                (p_min..=p_max)
                    .map(|p| Subspace::coordinate(lv.len(), (0..lv.len()).filter(|&i| lv[i] >= p)))
                    .collect()
            })
            .collect();
        Self::new(complex, p_min, spaces)
    }

    /// The one-step filtration `F^0 = K`, `F^1 = 0`.
    pub fn trivial(complex: CochainComplex) -> Self {
        let spaces = complex.degrees().map(|k| vec![Subspace::full(complex.dim(k))]).collect();
        FilteredComplex {
            complex,
            p_min: 0,
            p_max: 0,
            spaces,
        }
    }

    fn validate(&self) -> Result<()> {
        let c = &self.complex;
        for k in c.degrees() {
            let n = c.dim(k);
            let row = &self.spaces[(k - c.start()) as usize];
            if row.iter().any(|s| s.ambient() != n) {
                return Err(Error::Filtration(format!("subspace in degree {k} has the wrong ambient dimension")));
            }
            if row[0].dim() != n {
                return Err(Error::Filtration(format!("F^{} K^{k} is not all of K^{k}", self.p_min)));
            }
            for j in 1..row.len() {
                if !row[j - 1].contains_subspace(&row[j]) {
                    return Err(Error::Filtration(format!(
                        "F^{} K^{k} is not contained in F^{} K^{k}",
                        self.p_min + j as i64,
                        self.p_min + j as i64 - 1
                    )));
                }
            }
            if let Some(m) = c.module(k) {
                if m.action() != &Action::Trivial {
                    for (j, s) in row.iter().enumerate() {
                        for g in m.group().generators() {
                            if s.basis().iter().any(|v| !s.contains(&m.act(*g, v))) {
                                return Err(Error::Filtration(format!(
                                    "F^{} K^{k} is not G-stable",
                                    self.p_min + j as i64
                                )));
                            }
                        }
                    }
                }
            }
            let d = c.d_matrix(k);
            for p in self.p_min..=self.p_max {
                let img = self.f(k, p).image(&d);
                if !self.f(k + 1, p).contains_subspace(&img) {
                    return Err(Error::Filtration(format!("d does not preserve F^{p} in degree {k}")));
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn p_range(&self) -> (i64, i64) {
        (self.p_min, self.p_max)
    }

    /// Number of filtration steps `p_max - p_min + 1`.
    pub fn length(&self) -> usize {
        (self.p_max - self.p_min + 1) as usize
    }

    /// `F^p K^k`, extended by `K^k` below `p_min` and `0` above `p_max`.
    pub fn f(&self, k: i64, p: i64) -> Subspace {
        let n = self.complex.dim(k);
        if k < self.complex.start() || k >= self.complex.end() {
            return Subspace::zero(0);
        }
        if p <= self.p_min {
            Subspace::full(n)
        } else if p > self.p_max {
            Subspace::zero(n)
        } else {
            self.spaces[(k - self.complex.start()) as usize][(p - self.p_min) as usize].clone()
        }
    }

    /// `r_max` past which every differential vanishes for support reasons.
    pub fn default_r_max(&self) -> usize {
        self.length() + 1
    }

    /// `dim Gr_F^p H^n = dim (F^p Z^n + B^n) / (F^{p+1} Z^n + B^n)`, computed
    /// on the cohomology itself, keyed by `(p, n)` with zero pieces omitted.
    pub fn graded_cohomology(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for n in self.complex.degrees() {
            let dn = self.complex.d_matrix(n);
            let cocycles = Subspace::full(self.complex.dim(n)).kernel_within(&dn);
            let boundaries = Subspace::full(self.complex.dim(n - 1)).image(&self.complex.d_matrix(n - 1));
            let step = |p: i64| cocycles.intersect(&self.f(n, p)).sum(&boundaries).dim();
            for p in self.p_min..=self.p_max {
                let d = step(p) - step(p + 1);
                if d > 0 {
                    out.insert((p, n), d);
                }
            }
        }
        out
    }

    /// `Z_r^{p, n-p} = F^p K^n ∩ d^{-1}(F^{p+r} K^{n+1})`, valid for `r >= -1`.
    fn z(&self, n: i64, p: i64, r: i64) -> Subspace {
        self.f(n, p).preimage_within(&self.complex.d_matrix(n), &self.f(n + 1, p + r))
    }
}

#[derive(Clone, Debug)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub classes: Subquotient,
    pub module: GModule,
}

impl PageEntry {
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    pub fn vn_dim(&self) -> Rat {
        self.module.vn_dim()
    }
}

/// One page `E_r` with its differentials `d_r: E_r^{p,q} -> E_r^{p+r, q-r+1}`.
#[derive(Clone, Debug)]
pub struct SSPage {
    pub r: usize,
    entries: BTreeMap<(i64, i64), PageEntry>,
    differentials: BTreeMap<(i64, i64), GMap>,
}

impl SSPage {
    pub fn entries(&self) -> impl Iterator<Item = &PageEntry> {
        self.entries.values()
    }

    pub fn entry(&self, p: i64, q: i64) -> Option<&PageEntry> {
        self.entries.get(&(p, q))
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.entry(p, q).map_or(0, PageEntry::dim)
    }

    /// `d_r` out of cell `(p, q)`, when its target cell exists.
    pub fn differential(&self, p: i64, q: i64) -> Option<&GMap> {
        self.differentials.get(&(p, q))
    }

    pub fn differentials(&self) -> impl Iterator<Item = (&(i64, i64), &GMap)> {
        self.differentials.iter()
    }

    /// `Σ_{p+q=n} dim E_r^{p,q}`.
    pub fn total_dim(&self, n: i64) -> usize {
        self.entries.values().filter(|e| e.p + e.q == n).map(PageEntry::dim).sum()
    }

    /// Total degrees that have at least one cell.
    pub fn degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.entries.values().map(|e| e.p + e.q).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn all_differentials_zero(&self) -> bool {
        self.differentials.values().all(|d| d.matrix().is_zero())
    }

    /// Dimensions of the cohomology of `(E_r, d_r)` at every cell.
    pub fn homology_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let r = self.r as i64;
        self.entries
            .keys()
            .map(|&(p, q)| {
                let out = self.differential(p, q).map_or(0, |d| crate::linalg::rank(d.matrix()));
                let inc = self
                    .differential(p - r, q + r - 1)
                    .map_or(0, |d| crate::linalg::rank(d.matrix()));
                ((p, q), self.dim(p, q) - out - inc)
            })
            .collect()
    }
}

fn induced_module(source: &GModule, classes: &Subquotient) -> GModule {
    let group = source.group().clone();
    if source.action() == &Action::Trivial {
        return GModule::trivial(group, classes.dim());
    }
    let mats = group
        .elements()
        .map(|g| {
            let cols: Vec<Vec<Rat>> = classes
                .representatives()
                .iter()
                .map(|v| classes.coords(&source.act(g, v)))
                .collect();
            RatMatrix::from_columns(classes.dim(), &cols)
        })
        .collect();
    GModule::from_matrices_unchecked(group, classes.dim(), mats)
}

/// Pages `E_0, ..., E_{r_max}`. An empty complex gives empty pages.
pub fn spectral_sequence(f: &FilteredComplex, r_max: usize) -> Result<Vec<SSPage>> {
    let c = &f.complex;
    let mut pages = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max as i64 {
        let mut entries = BTreeMap::new();
        for n in c.degrees() {
            let Some(module) = c.module(n) else { continue };
            for p in f.p_min..=f.p_max {
                let num = f.z(n, p, r);
                let mut den = f.z(n, p + 1, r - 1);
                if n > c.start() {
                    let src = f.z(n - 1, p - r + 1, r - 1);
                    den = den.sum(&src.image(&c.d_matrix(n - 1)));
                }
                let classes = Subquotient::new(num, den);
                let module = induced_module(module, &classes);
                entries.insert((p, n - p), PageEntry { p, q: n - p, classes, module });
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(p, q), e) in &entries {
            let Some(t) = entries.get(&(p + r, q - r + 1)) else { continue };
            let d = c.d_matrix(p + q);
            let cols: Vec<Vec<Rat>> = e
                .classes
                .representatives()
                .iter()
                .map(|v| t.classes.coords(&d.apply(v)))
                .collect();
            let m = RatMatrix::from_columns(t.dim(), &cols);
            differentials.insert((p, q), GMap::new(e.module.clone(), t.module.clone(), m)?);
        }
        pages.push(SSPage {
            r: r as usize,
            entries,
            differentials,
        });
    }
    Ok(pages)
}

/// Check that each page is the cohomology of the previous one.
pub fn check_page_recursion(pages: &[SSPage]) -> Result<()> {
    for w in pages.windows(2) {
        let h = w[0].homology_dims();
        for (&(p, q), &d) in &h {
            if w[1].dim(p, q) != d {
                return Err(Error::Pages(format!(
                    "H(E_{}) at ({p},{q}) has dim {d} but E_{} has dim {}",
                    w[0].r,
                    w[1].r,
                    w[1].dim(p, q)
                )));
            }
        }
    }
    Ok(())
}

/// Smallest `r0 >= 1` with `d_r = 0` for every computed `r >= r0`. The last
/// page must lie past the support range so that later differentials vanish
/// automatically.
pub fn degeneration_page(pages: &[SSPage]) -> Result<usize> {
    let Some(last) = pages.last() else {
        return Ok(1);
    };
    check_page_recursion(pages)?;
    if !last.all_differentials_zero() {
        return Err(Error::Pages(format!(
            "page E_{} still has nonzero differentials; compute more pages",
            last.r
        )));
    }
    let mut r0 = last.r.max(1);
    for page in pages.iter().rev() {
        if page.r < 1 || !page.all_differentials_zero() {
            break;
        }
        r0 = page.r;
    }
    Ok(r0)
}

/// `Σ_{p+q=n} dim E_∞^{p,q} = total[n]` for every degree, using the last page.
pub fn abutment_check(pages: &[SSPage], total: &[(i64, usize)]) -> bool {
    let Some(last) = pages.last() else {
        return total.iter().all(|&(_, d)| d == 0);
    };
    let mut degrees: Vec<i64> = last.degrees();
    degrees.extend(total.iter().map(|t| t.0));
    degrees.sort_unstable();
    degrees.dedup();
    degrees.into_iter().all(|n| {
        let want = total.iter().find(|t| t.0 == n).map_or(0, |t| t.1);
        last.total_dim(n) == want
    })
}
