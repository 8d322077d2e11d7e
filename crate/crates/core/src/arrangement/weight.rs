//! The `E_1` page of the weight spectral sequence of `X ∖ D`.
//!
//! Cell `(p, q)` is the column `-p`, row `q` entry `E_1^{-p,q} = H^{q-2p}(D(p))`;
//! it contributes weight `q` to `H^{q-p}` of the complement. The differential
//! `d_1: E_1^{-p,q} -> E_1^{-p+1,q}` is the alternating sum of Gysin maps
//! `H^{q-2p}(D_J) -> H^{q-2p+2}(D_{J∖{j_m}})` with sign `(-1)^{q-2p} (-1)^m`,
//! where `m` is the position of `j_m` in the ascending tuple `J`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gmodule::{check_equivariance, GMap, GModule};
use crate::group::FiniteGroup;
use crate::linalg::{rank, Rat, RatMatrix};
use crate::ss::{DoubleComplex, FilteredComplex};

use super::model::{Arrangement, Subset};

/// One block of Gysin data: the pushforward from `H^{q-2p}` of component
/// `component` of `D_subset` to `H^{q-2p+2}` of its parent in
/// `D_{subset ∖ {divisor}}`, without the sign of the weight differential.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GysinKey {
    pub row: usize,
    pub subset: Subset,
    pub component: usize,
    pub divisor: usize,
}

#[derive(Clone, Debug, Default)]
pub struct GysinData {
    blocks: BTreeMap<GysinKey, RatMatrix>,
}

impl GysinData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: GysinKey, block: RatMatrix) {
        self.blocks.insert(key, block);
    }

    pub fn with(mut self, row: usize, subset: Subset, component: usize, divisor: usize, block: RatMatrix) -> Self {
        self.insert(
            GysinKey {
                row,
                subset,
                component,
                divisor,
            },
            block,
        );
        self
    }

    pub fn get(&self, key: &GysinKey) -> Option<&RatMatrix> {
        self.blocks.get(key)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&GysinKey, &RatMatrix)> {
        self.blocks.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn permute_divisors(&self, perm: &[usize]) -> GysinData {
        GysinData {
            blocks: self
                .blocks
                .iter()
                .map(|(k, m)| {
                    let mut s: Subset = k.subset.iter().map(|&i| perm[i]).collect();
                    s.sort_unstable();
                    (
                        GysinKey {
                            row: k.row,
                            subset: s,
                            component: k.component,
                            divisor: perm[k.divisor],
                        },
                        m.clone(),
                    )
                })
                .collect(),
        }
    }
}

/// Which stratum component and which cohomology basis vector a coordinate of
/// an `E_1` cell stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    pub subset: Subset,
    pub component: usize,
    pub index: usize,
    /// Hodge type after the Tate shift by the column, when known.
    pub hodge: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct E1Cell {
    pub p: usize,
    pub q: usize,
    pub module: GModule,
    pub labels: Vec<BasisLabel>,
}

impl E1Cell {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Total degree of the complement cohomology this cell contributes to.
    pub fn degree(&self) -> usize {
        self.q - self.p
    }
}

#[derive(Clone, Debug)]
pub struct WeightE1 {
    ambient_dim: usize,
    group: Arc<FiniteGroup>,
    cells: BTreeMap<(usize, usize), E1Cell>,
    /// `d1[(p, q)]: cell (p, q) -> cell (p - 1, q)`.
    d1: BTreeMap<(usize, usize), GMap>,
}

fn cell_layout(a: &Arrangement, p: usize, q: usize) -> (Vec<BasisLabel>, BTreeMap<(Subset, usize), usize>) {
    let k = q as i64 - 2 * p as i64;
    let mut labels = Vec::new();
    let mut offsets = BTreeMap::new();
    for j in a.strata_of_size(p) {
        for (c, comp) in a.components(j).iter().enumerate() {
            offsets.insert((j.clone(), c), labels.len());
            let hodge_types: Option<Vec<(usize, usize)>> = comp.hodge.as_ref().map(|h| {
                let row = &h[k as usize];
                (0..row.len())
                    .flat_map(|x| std::iter::repeat_n((x + p, k as usize - x + p), row[x]))
                    .collect()
            });
            for idx in 0..comp.b(k) {
                labels.push(BasisLabel {
                    subset: j.clone(),
                    component: c,
                    index: idx,
                    hodge: hodge_types.as_ref().map(|t| t[idx]),
                });
            }
        }
    }
    (labels, offsets)
}

fn cell_module(a: &Arrangement, labels: &[BasisLabel], offsets: &BTreeMap<(Subset, usize), usize>) -> Result<GModule> {
    let g = a.group().clone();
    let moved = labels.iter().any(|l| a.has_action(&l.subset));
    if g.order() == 1 || !moved {
        return Ok(GModule::trivial(g, labels.len()));
    }
    let perms = g
        .elements()
        .map(|x| {
            labels
                .iter()
                .map(|l| offsets[&(l.subset.clone(), a.act(x, &l.subset, l.component))] + l.index)
                .collect()
        })
        .collect();
    GModule::from_permutations(g, perms)
}

/// Build `E_1` with its differential, deriving the top row from incidence
/// multiplicities and taking every other needed block from `gysin`.
pub fn assemble_weight_e1(a: &Arrangement, gysin: &GysinData) -> Result<WeightE1> {
    let n = a.ambient_dim();
    let depth = a.depth();
    let mut cells = BTreeMap::new();
    let mut offsets_of = BTreeMap::new();
    for p in 0..=depth {
        for q in 2 * p..=2 * n {
            let (labels, offsets) = cell_layout(a, p, q);
            let module = cell_module(a, &labels, &offsets)?;
            offsets_of.insert((p, q), offsets);
            cells.insert((p, q), E1Cell { p, q, module, labels });
        }
    }
    let mut missing_rows = BTreeSet::new();
    let mut missing = Vec::new();
    let mut d1 = BTreeMap::new();
    for p in 1..=depth {
        for q in 2 * p..=2 * n {
            let k = (q - 2 * p) as i64;
            let src = &cells[&(p, q)];
            let tgt = &cells[&(p - 1, q)];
            let mut m = RatMatrix::zeros(tgt.dim(), src.dim());
            let sign_q = if k % 2 == 0 { 1 } else { -1 };
            for j in a.strata_of_size(p) {
                for (c, comp) in a.components(j).iter().enumerate() {
                    let cols = comp.b(k);
                    if cols == 0 {
                        continue;
                    }
                    let c0 = offsets_of[&(p, q)][&(j.clone(), c)];
                    for (pos, &i) in j.iter().enumerate() {
                        let up: Subset = j.iter().copied().filter(|&x| x != i).collect();
                        let par = a.parent_of(j, c, i);
                        let pcomp = &a.components(&up)[par.component];
                        let rows = pcomp.b(k + 2);
                        if rows == 0 {
                            continue;
                        }
                        let key = GysinKey {
                            row: q,
                            subset: j.clone(),
                            component: c,
                            divisor: i,
                        };
                        let auto = (q == 2 * n).then(|| {
                            // top classes: the pushforward is the multiplicity
                            RatMatrix::from_i64(&[&[par.multiplicity as i64]])
                        });
                        let block = match (auto, gysin.get(&key)) {
                            (Some(auto), Some(given)) if &auto != given => {
                                return Err(Error::Arrangement(format!(
                                    "Gysin block for component {c} of stratum {j:?} dropping {i} in the top row disagrees with the incidence multiplicity"
                                )));
                            }
                            (Some(auto), _) => auto,
                            (None, Some(given)) => given.clone(),
                            (None, None) => {
                                missing_rows.insert(q);
                                missing.push(format!("row {q}: stratum {j:?} component {c} -> drop {i}"));
                                continue;
                            }
                        };
                        if block.shape() != (rows, cols) {
                            return Err(Error::Shape(format!(
                                "Gysin block row {q}, stratum {j:?}, component {c}, drop {i}: expected {rows}x{cols}, got {}x{}",
                                block.rows(),
                                block.cols()
                            )));
                        }
                        let sign = Rat::from_integer((sign_q * if pos % 2 == 0 { 1 } else { -1 }).into());
                        let r0 = offsets_of[&(p - 1, q)][&(up.clone(), par.component)];
                        for (r, row) in block.sparse_rows().iter().enumerate() {
                            for (cc, x) in row {
                                m.add_to(r0 + r, c0 + cc, &(x * &sign));
                            }
                        }
                    }
                }
            }
            let map = GMap::new(src.module.clone(), tgt.module.clone(), m)?;
            if !check_equivariance(&map)? {
                return Err(Error::Cover(format!(
                    "Gysin data in row {q} out of column -{p} is not equivariant under the deck group"
                )));
            }
            d1.insert((p, q), map);
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingGysin {
            rows: missing_rows.into_iter().collect(),
            detail: missing.join("; "),
        });
    }
    for (&(p, q), d) in &d1 {
        if let Some(next) = d1.get(&(p - 1, q)) {
            if !next.matrix().mul(d.matrix())?.is_zero() {
                return Err(Error::D1Squared { p, q });
            }
        }
    }
    Ok(WeightE1 {
        ambient_dim: n,
        group: a.group().clone(),
        cells,
        d1,
    })
}

impl WeightE1 {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn cells(&self) -> impl Iterator<Item = &E1Cell> {
        self.cells.values()
    }

    pub fn cell(&self, p: usize, q: usize) -> Option<&E1Cell> {
        self.cells.get(&(p, q))
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.cell(p, q).map_or(0, E1Cell::dim)
    }

    /// `d_1` out of cell `(p, q)`.
    pub fn d1(&self, p: usize, q: usize) -> Option<&GMap> {
        self.d1.get(&(p, q))
    }

    pub fn d1_maps(&self) -> impl Iterator<Item = (&(usize, usize), &GMap)> {
        self.d1.iter()
    }

    fn rank_out(&self, p: usize, q: usize) -> usize {
        self.d1(p, q).map_or(0, |d| rank(d.matrix()))
    }

    /// `dim E_2^{-p,q}`.
    pub fn e2_dim(&self, p: usize, q: usize) -> usize {
        self.dim(p, q) - self.rank_out(p, q) - self.rank_out(p + 1, q)
    }

    /// `E_1` as a double complex with cells at `(-p, q)` and `d_1` horizontal;
    /// its column filtration is the weight filtration in decreasing form.
    pub fn as_double_complex(&self) -> Result<DoubleComplex> {
        let cells = self
            .cells
            .iter()
            .map(|(&(p, q), c)| ((-(p as i64), q as i64), c.module.clone()))
            .collect();
        let horizontal = self
            .d1
            .iter()
            .map(|(&(p, q), d)| ((-(p as i64), q as i64), d.matrix().clone()))
            .collect();
        DoubleComplex::new(self.group.clone(), cells, horizontal, BTreeMap::new())
    }

    /// The total complex of `E_1` filtered by columns.
    pub fn weight_filtered_complex(&self) -> Result<FilteredComplex> {
        self.as_double_complex()?.totalize()
    }

    /// The Hodge filtration `F^s = span of basis vectors of shifted type (a, b)`
    /// with `a >= s`, on the same total complex, in the same basis order.
    pub fn hodge_filtered_complex(&self) -> Result<Option<FilteredComplex>> {
        let tot = self.weight_filtered_complex()?;
        let c = tot.complex();
        let mut levels = Vec::new();
        for deg in c.degrees() {
            let mut lv = Vec::new();
            // same order as DoubleComplex::totalize: by column -p ascending
            for ((_, _), cell) in self.cells.iter().rev() {
                if (cell.q as i64 - cell.p as i64) != deg {
                    continue;
                }
                for l in &cell.labels {
                    match l.hodge {
                        Some((a, _)) => lv.push(a as i64),
                        None => return Ok(None),
                    }
                }
            }
            levels.push(lv);
        }
        Ok(Some(FilteredComplex::from_levels(c.clone(), &levels)?))
    }
}

/// Weight-graded pieces of the complement cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGraded {
    pub group_order: usize,
    /// `(degree n, weight m) -> dim_Q Gr^W_m H^n`, zero pieces omitted.
    pub graded: BTreeMap<(usize, usize), usize>,
    /// `n -> Σ_m dim Gr^W_m H^n`.
    pub totals: BTreeMap<usize, usize>,
    /// Whether some `d_r`, `r >= 2`, has nonzero source and target on `E_2`.
    pub higher_differential_support: bool,
}

impl WeightGraded {
    pub fn dim(&self, n: usize, weight: usize) -> usize {
        self.graded.get(&(n, weight)).copied().unwrap_or(0)
    }

    pub fn vn_dim(&self, n: usize, weight: usize) -> Rat {
        Rat::new(self.dim(n, weight).into(), self.group_order.into())
    }

    pub fn total(&self, n: usize) -> usize {
        self.totals.get(&n).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> Rat {
        let chi: i64 = self
            .totals
            .iter()
            .map(|(&n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        Rat::new(chi.into(), self.group_order.into())
    }
}

/// `E_2 = H(E_1, d_1)`, read as `Gr^W_q H^{q-p}` from cell `(p, q)`.
pub fn weight_graded_dims(e1: &WeightE1) -> WeightGraded {
    let mut graded = BTreeMap::new();
    let mut totals = BTreeMap::new();
    for n in 0..=2 * e1.ambient_dim {
        totals.insert(n, 0);
    }
    let mut e2 = BTreeMap::new();
    for &(p, q) in e1.cells.keys() {
        let d = e1.e2_dim(p, q);
        e2.insert((p, q), d);
        if d > 0 {
            graded.insert((q - p, q), d);
            *totals.entry(q - p).or_insert(0) += d;
        }
    }
    // d_r: (-p, q) -> (-p + r, q - r + 1)
    let support = e2.iter().any(|(&(p, q), &d)| {
        d > 0
            && (2..=p).any(|r| {
                q + 1 >= r && e2.get(&(p - r, q + 1 - r)).is_some_and(|&t| t > 0)
            })
    });
    WeightGraded {
        group_order: e1.group.order(),
        graded,
        totals,
        higher_differential_support: support,
    }
}

/// `Gr^W_0`-part in the column-index sense: `H^n(X) / im d_1`, the image of
/// `H^n(X)` in `H^n(X ∖ D)`. Keyed by degree, as `Q`-dimensions.
pub fn gr0_restriction_image(e1: &WeightE1) -> BTreeMap<usize, usize> {
    (0..=2 * e1.ambient_dim)
        .map(|n| (n, e1.dim(0, n) - e1.rank_out(1, n)))
        .collect()
}
