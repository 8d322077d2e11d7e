//! JSON input formats. Numbers are integers or exact fractions `"a/b"`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Component, GysinData, GysinKey, Subset};
use crate::covers::{CoverSpec, LiftedComponent, StratumLift};
use crate::error::{Error, Result};
use crate::graph::{DualGraph, GraphEdge, IntersectionForm};
use crate::group::FiniteGroup;
use crate::linalg::{format_rat, parse_rat, Rat, RatMatrix, Subspace};
use crate::ss::{CochainComplex, DoubleComplex, FilteredComplex};

use super::simplicial::{SimplicialComplex, SubcomplexSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            Num::Int(n) => Ok(Rat::from_integer((*n).into())),
            Num::Text(s) => parse_rat(s),
        }
    }

    pub fn from_rat(r: &Rat) -> Self {
        match (r.is_integer(), i64::try_from(r.numer())) {
            (true, Ok(n)) => Num::Int(n),
            _ => Num::Text(format_rat(r)),
        }
    }
}

pub type MatrixJson = Vec<Vec<Num>>;

/// Rows of exact numbers; an empty list stands for a matrix with no rows.
pub fn matrix_from_json(m: &MatrixJson, cols_if_empty: usize) -> Result<RatMatrix> {
    if m.is_empty() {
        return Ok(RatMatrix::zeros(0, cols_if_empty));
    }
    let rows = m
        .iter()
        .map(|r| r.iter().map(Num::to_rat).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_dense(rows.len(), rows[0].len(), &rows)
}

pub fn matrix_to_json(m: &RatMatrix) -> MatrixJson {
    m.to_dense().iter().map(|r| r.iter().map(Num::from_rat).collect()).collect()
}

/// A group element: its index, or `{"word": [i, j, ...]}`, the product of
/// the listed generators `g_i g_j ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Word { word: Vec<usize> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

/// A parsed group with the element index of each listed generator.
#[derive(Clone, Debug)]
pub struct GroupInput {
    pub group: Arc<FiniteGroup>,
    pub listed: Vec<usize>,
}

impl GroupInput {
    pub fn element(&self, r: &ElementRef) -> Result<usize> {
        match r {
            ElementRef::Index(i) if *i < self.group.order() => Ok(*i),
            ElementRef::Index(i) => Err(Error::Parse(format!("group has no element {i}"))),
            ElementRef::Word { word } => word.iter().try_fold(self.group.identity(), |acc, &i| {
                let g = self
                    .listed
                    .get(i)
                    .ok_or_else(|| Error::Parse(format!("group has no listed generator {i}")))?;
                Ok(self.group.mul(acc, *g))
            }),
        }
    }

    pub fn trivial() -> Self {
        GroupInput {
            group: Arc::new(FiniteGroup::trivial()),
            listed: Vec::new(),
        }
    }
}

impl GroupJson {
    pub fn parse(&self) -> Result<GroupInput> {
        match (self.cyclic, &self.generators, &self.table) {
            (Some(n), None, None) if n > 0 => Ok(GroupInput {
                group: Arc::new(FiniteGroup::cyclic(n)),
                listed: if n > 1 { vec![1] } else { vec![0] },
            }),
            (None, Some(gens), None) => {
                let degree = gens.first().map_or(0, Vec::len);
                let (g, listed) = FiniteGroup::from_permutations_indexed(degree, gens)?;
                Ok(GroupInput {
                    group: Arc::new(g),
                    listed,
                })
            }
            (None, None, Some(t)) => {
                let g = FiniteGroup::from_table(t.clone())?;
                Ok(GroupInput {
                    listed: g.generators().to_vec(),
                    group: Arc::new(g),
                })
            }
            _ => Err(Error::Parse(
                "a group is given by exactly one of `cyclic` (order), `generators` or `table`".into(),
            )),
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            table: Some(g.table().to_vec()),
            ..Default::default()
        }
    }
}

fn yes() -> bool {
    true
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub id: String,
    #[serde(default = "yes")]
    pub compact: bool,
    pub betti: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    pub subset: Vec<usize>,
    pub components: Vec<ComponentJson>,
}

/// Component `component` of `D_subset` lies in component `parent` of
/// `D_{subset ∖ {divisor}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceJson {
    pub subset: Vec<usize>,
    pub component: usize,
    pub divisor: usize,
    pub parent: usize,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfIntersectionJson {
    pub divisor: usize,
    #[serde(default)]
    pub component: usize,
    pub value: i64,
}

/// Pushforward from `H^{row - 2|subset|}` of a component of `D_subset` into
/// its parent in `D_{subset ∖ {divisor}}`, without the differential's sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GysinJson {
    pub row: usize,
    pub subset: Vec<usize>,
    pub component: usize,
    pub divisor: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftedJson {
    pub base: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub element: ElementRef,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftJson {
    pub subset: Vec<usize>,
    pub components: Vec<LiftedJson>,
    #[serde(default)]
    pub action: Vec<ActionJson>,
    /// Generators of the stabilizer of the smallest member of each orbit.
    pub stabilizers: Vec<Vec<ElementRef>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftIncidenceJson {
    pub subset: Vec<usize>,
    pub component: usize,
    pub divisor: usize,
    pub parent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromyJson {
    pub strata: Vec<LiftJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub incidence: Vec<LiftIncidenceJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gysin: Vec<GysinJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeLabelJson {
    pub edge: [usize; 2],
    pub element: ElementRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialFile {
    pub vertices: usize,
    pub maximal: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub divisor: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edge_labels: Vec<EdgeLabelJson>,
    /// Expected Betti numbers of the complement (or of the cover).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub ambient_dim: usize,
    pub divisors: Vec<String>,
    pub strata: Vec<StratumJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub incidence: Vec<IncidenceJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intersection_numbers: Vec<SelfIntersectionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gysin: Vec<GysinJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromyJson>,
    /// A simplicial model of the ambient space with the divisor as a
    /// subcomplex, used as a brute-force oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplicial: Option<SimplicialFile>,
}

#[derive(Clone, Debug)]
pub struct OracleModel {
    pub complex: SimplicialComplex,
    pub divisor: SubcomplexSpec,
}

#[derive(Clone, Debug)]
pub struct ArrangementInput {
    pub arrangement: Arrangement,
    pub gysin: GysinData,
    pub cover: Option<CoverSpec>,
    pub model: Option<OracleModel>,
}

fn gysin_from_json(blocks: &[GysinJson]) -> Result<GysinData> {
    let mut g = GysinData::new();
    for b in blocks {
        g.insert(
            GysinKey {
                row: b.row,
                subset: sorted(&b.subset),
                component: b.component,
                divisor: b.divisor,
            },
            matrix_from_json(&b.matrix, 0)?,
        );
    }
    Ok(g)
}

fn gysin_to_json(g: &GysinData) -> Vec<GysinJson> {
    g.blocks()
        .map(|(k, m)| GysinJson {
            row: k.row,
            subset: k.subset.clone(),
            component: k.component,
            divisor: k.divisor,
            matrix: matrix_to_json(m),
        })
        .collect()
}

fn sorted(s: &[usize]) -> Subset {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

impl ArrangementFile {
    pub fn parse(&self) -> Result<ArrangementInput> {
        let mut b = Arrangement::builder(self.ambient_dim, self.divisors.clone());
        let mut seen = BTreeSet::new();
        for s in &self.strata {
            let subset = sorted(&s.subset);
            if !seen.insert(subset.clone()) {
                return Err(Error::Parse(format!("stratum {subset:?} listed twice")));
            }
            let comps = s
                .components
                .iter()
                .map(|c| Component {
                    id: c.id.clone(),
                    compact: c.compact,
                    betti: c.betti.clone(),
                    hodge: c.hodge.clone(),
                })
                .collect();
            b = b.stratum(subset, comps);
        }
        for i in &self.incidence {
            b = b.parent(sorted(&i.subset), i.component, i.divisor, i.parent, i.multiplicity);
        }
        for s in &self.intersection_numbers {
            b = b.self_intersection(s.divisor, s.component, s.value);
        }
        let arrangement = b.build()?;
        let gysin = gysin_from_json(&self.gysin)?;
        let cover = match (&self.group, &self.monodromy) {
            (None, None) => None,
            (Some(g), Some(m)) => Some(parse_monodromy(&g.parse()?, m)?),
            _ => return Err(Error::Parse("`group` and `monodromy` must be given together".into())),
        };
        let model = self
            .simplicial
            .as_ref()
            .map(|s| -> Result<OracleModel> {
                Ok(OracleModel {
                    complex: SimplicialComplex::new(s.vertices, &s.maximal)?,
                    divisor: SubcomplexSpec::new(s.divisor.clone()),
                })
            })
            .transpose()?;
        Ok(ArrangementInput {
            arrangement,
            gysin,
            cover,
            model,
        })
    }

    /// The file describing `a` (with its incidence listed in full).
    pub fn from_parts(a: &Arrangement, gysin: &GysinData, cover: Option<&CoverSpec>) -> Self {
        ArrangementFile {
            ambient_dim: a.ambient_dim(),
            divisors: a.divisors().to_vec(),
            strata: a
                .strata()
                .map(|(s, cs)| StratumJson {
                    subset: s.clone(),
                    components: cs
                        .iter()
                        .map(|c| ComponentJson {
                            id: c.id.clone(),
                            compact: c.compact,
                            betti: c.betti.clone(),
                            hodge: c.hodge.clone(),
                        })
                        .collect(),
                })
                .collect(),
            incidence: a
                .parents()
                .map(|((s, c, i), p)| IncidenceJson {
                    subset: s.clone(),
                    component: *c,
                    divisor: *i,
                    parent: p.component,
                    multiplicity: p.multiplicity,
                })
                .collect(),
            intersection_numbers: a
                .strata_of_size(1)
                .into_iter()
                .flat_map(|s| {
                    (0..a.components(s).len()).filter_map(move |c| {
                        a.self_intersection(s[0], c).map(|value| SelfIntersectionJson {
                            divisor: s[0],
                            component: c,
                            value,
                        })
                    })
                })
                .collect(),
            gysin: gysin_to_json(gysin),
            group: cover.map(|c| GroupJson::from_group(c.group())),
            monodromy: cover.map(|c| MonodromyJson {
                strata: c
                    .lifts()
                    .map(|(s, l)| LiftJson {
                        subset: s.clone(),
                        components: l
                            .components
                            .iter()
                            .map(|x| LiftedJson {
                                base: x.base,
                                betti: x.betti.clone(),
                                hodge: x.hodge.clone(),
                            })
                            .collect(),
                        action: l
                            .action
                            .iter()
                            .map(|(g, p)| ActionJson {
                                element: ElementRef::Index(*g),
                                perm: p.clone(),
                            })
                            .collect(),
                        stabilizers: l
                            .stabilizers
                            .iter()
                            .map(|st| st.iter().map(|&x| ElementRef::Index(x)).collect())
                            .collect(),
                    })
                    .collect(),
                incidence: c
                    .incidence()
                    .iter()
                    .map(|((s, x, i), p)| LiftIncidenceJson {
                        subset: s.clone(),
                        component: *x,
                        divisor: *i,
                        parent: *p,
                    })
                    .collect(),
                gysin: gysin_to_json(c.gysin()),
            }),
            simplicial: None,
        }
    }
}

fn parse_monodromy(g: &GroupInput, m: &MonodromyJson) -> Result<CoverSpec> {
    let mut strata = BTreeMap::new();
    for l in &m.strata {
        let action = l
            .action
            .iter()
            .map(|a| Ok((g.element(&a.element)?, a.perm.clone())))
            .collect::<Result<Vec<_>>>()?;
        let stabilizers = l
            .stabilizers
            .iter()
            .map(|st| {
                let gens = st.iter().map(|r| g.element(r)).collect::<Result<Vec<_>>>()?;
                Ok(g.group.closure(&gens))
            })
            .collect::<Result<Vec<_>>>()?;
        let components = l
            .components
            .iter()
            .map(|c| LiftedComponent {
                base: c.base,
                betti: c.betti.clone(),
                hodge: c.hodge.clone(),
            })
            .collect();
        let subset = sorted(&l.subset);
        if strata
            .insert(
                subset.clone(),
                StratumLift {
                    components,
                    action,
                    stabilizers,
                },
            )
            .is_some()
        {
            return Err(Error::Parse(format!("lift of stratum {subset:?} listed twice")));
        }
    }
    let incidence = m
        .incidence
        .iter()
        .map(|i| ((sorted(&i.subset), i.component, i.divisor), i.parent))
        .collect();
    CoverSpec::new(g.group.clone(), strata, incidence, gysin_from_json(&m.gysin)?)
}

impl SimplicialFile {
    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.vertices, &self.maximal)
    }

    /// The file of an oracle model, without group or labels.
    pub fn from_model(m: &OracleModel) -> Self {
        SimplicialFile {
            vertices: m.complex.vertices(),
            maximal: m.complex.maximal_faces(),
            divisor: m.divisor.simplices.clone(),
            group: None,
            edge_labels: Vec::new(),
            expected: None,
        }
    }

    pub fn group(&self) -> Result<Option<GroupInput>> {
        self.group.as_ref().map(GroupJson::parse).transpose()
    }

    /// Edge labels keyed by ascending vertex pairs; a label on `(v, u)` with
    /// `u < v` is stored inverted.
    pub fn labels(&self, g: &GroupInput) -> Result<BTreeMap<(usize, usize), usize>> {
        let mut out = BTreeMap::new();
        for l in &self.edge_labels {
            let [u, v] = l.edge;
            let e = g.element(&l.element)?;
            let (key, val) = if u < v { ((u, v), e) } else { ((v, u), g.group.inv(e)) };
            if out.insert(key, val).is_some() {
                return Err(Error::Parse(format!("edge {key:?} labelled twice")));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationJson {
    /// Filtration level of each basis vector, per degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_min: Option<i64>,
    /// `spans[i][j]` spans `F^{p_min + j}` in degree `start + i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spans: Option<Vec<Vec<Vec<Vec<Num>>>>>,
}

impl FiltrationJson {
    pub fn parse(&self, c: &CochainComplex) -> Result<FilteredComplex> {
        match (&self.levels, &self.spans) {
            (Some(l), None) => FilteredComplex::from_levels(c.clone(), l),
            (None, Some(s)) => {
                let spans = s
                    .iter()
                    .map(|deg| {
                        deg.iter()
                            .map(|vs| {
                                vs.iter()
                                    .map(|v| v.iter().map(Num::to_rat).collect::<Result<Vec<_>>>())
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                FilteredComplex::from_spans(c.clone(), self.p_min.unwrap_or(0), &spans)
            }
            _ => Err(Error::Parse("a filtration is given by exactly one of `levels` or `spans`".into())),
        }
    }

    /// Spans of every filtration step of `f`.
    pub fn from_filtered(f: &FilteredComplex) -> Self {
        let (p_min, p_max) = f.p_range();
        let spans = f
            .complex()
            .degrees()
            .map(|k| {
                (p_min..=p_max)
                    .map(|p| {
                        let s: Subspace = f.f(k, p);
                        s.basis().iter().map(|v| v.iter().map(Num::from_rat).collect()).collect()
                    })
                    .collect()
            })
            .collect();
        FiltrationJson {
            levels: None,
            p_min: Some(p_min),
            spans: Some(spans),
        }
    }
}

/// A cochain complex of vector spaces with one or two filtrations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplexFile {
    #[serde(default)]
    pub start: i64,
    pub dims: Vec<usize>,
    pub differentials: Vec<MatrixJson>,
    pub filtration: FiltrationJson,
    /// A second filtration whose induced filtrations on the pages are compared.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_filtration: Option<FiltrationJson>,
}

impl RawComplexFile {
    pub fn complex(&self) -> Result<CochainComplex> {
        let mats = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_json(m, self.dims.get(i).copied().unwrap_or(0)))
            .collect::<Result<Vec<_>>>()?;
        CochainComplex::from_matrices(self.start, &self.dims, mats)
    }

    pub fn filtered(&self) -> Result<(FilteredComplex, Option<FilteredComplex>)> {
        let c = self.complex()?;
        let f = self.filtration.parse(&c)?;
        let second = self.second_filtration.as_ref().map(|s| s.parse(&c)).transpose()?;
        Ok((f, second))
    }

    pub fn from_filtered(f: &FilteredComplex) -> Self {
        let c = f.complex();
        RawComplexFile {
            start: c.start(),
            dims: c.degrees().map(|k| c.dim(k)).collect(),
            differentials: c.degrees().skip(1).map(|k| matrix_to_json(&c.d_matrix(k - 1))).collect(),
            filtration: FiltrationJson::from_filtered(f),
            second_filtration: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

/// The map out of cell `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellMapJson {
    pub p: i64,
    pub q: i64,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleComplexFile {
    pub cells: Vec<CellJson>,
    #[serde(default)]
    pub horizontal: Vec<CellMapJson>,
    #[serde(default)]
    pub vertical: Vec<CellMapJson>,
}

impl DoubleComplexFile {
    pub fn parse(&self) -> Result<DoubleComplex> {
        let dims: BTreeMap<(i64, i64), usize> = self.cells.iter().map(|c| ((c.p, c.q), c.dim)).collect();
        let maps = |ms: &[CellMapJson]| -> Result<BTreeMap<(i64, i64), RatMatrix>> {
            ms.iter()
                .map(|m| {
                    let cols = dims.get(&(m.p, m.q)).copied().unwrap_or(0);
                    Ok(((m.p, m.q), matrix_from_json(&m.matrix, cols)?))
                })
                .collect()
        };
        DoubleComplex::from_matrices(&dims, maps(&self.horizontal)?, maps(&self.vertical)?)
    }

    pub fn from_double(dc: &DoubleComplex) -> Self {
        let cells: Vec<CellJson> = dc
            .cells()
            .map(|(&(p, q), m)| CellJson { p, q, dim: m.dim() })
            .collect();
        let mut horizontal = Vec::new();
        let mut vertical = Vec::new();
        for c in &cells {
            let h = dc.horizontal(c.p, c.q);
            if !h.is_zero() {
                horizontal.push(CellMapJson {
                    p: c.p,
                    q: c.q,
                    matrix: matrix_to_json(&h),
                });
            }
            let v = dc.vertical(c.p, c.q);
            if !v.is_zero() {
                vertical.push(CellMapJson {
                    p: c.p,
                    q: c.q,
                    matrix: matrix_to_json(&v),
                });
            }
        }
        DoubleComplexFile {
            cells,
            horizontal,
            vertical,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    #[serde(default)]
    pub label: String,
    pub tail: Option<usize>,
    pub head: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    /// Deck group of a cover given by one label per edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edge_labels: Vec<ElementRef>,
    /// Intersection matrix on the vertices, tested for negative definiteness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_form: Option<MatrixJson>,
}

impl GraphFile {
    pub fn parse(&self) -> Result<(DualGraph, Option<IntersectionForm>)> {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| GraphEdge {
                label: if e.label.is_empty() { format!("e{i}") } else { e.label.clone() },
                tail: e.tail,
                head: e.head,
            })
            .collect();
        let mut g = DualGraph::new(self.vertices.clone(), edges)?;
        if let Some(gj) = &self.group {
            let gi = gj.parse()?;
            let labels = self
                .edge_labels
                .iter()
                .map(|r| gi.element(r))
                .collect::<Result<Vec<_>>>()?;
            g = DualGraph::cover(&g, gi.group.clone(), &labels)?;
        } else if !self.edge_labels.is_empty() {
            return Err(Error::Parse("edge labels need a group".into()));
        }
        let form = self
            .intersection_form
            .as_ref()
            .map(|m| IntersectionForm::new(self.vertices.clone(), matrix_from_json(m, 0)?))
            .transpose()?;
        Ok((g, form))
    }
}

/// Any of the accepted documents, recognized by its characteristic key.
#[derive(Clone, Debug)]
pub enum InputFile {
    Arrangement(Box<ArrangementFile>),
    Simplicial(SimplicialFile),
    Raw(RawComplexFile),
    Double(DoubleComplexFile),
    Graph(GraphFile),
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let has = |k: &str| v.get(k).is_some();
        Ok(if has("ambient_dim") {
            InputFile::Arrangement(Box::new(serde_json::from_value(v)?))
        } else if has("maximal") {
            InputFile::Simplicial(serde_json::from_value(v)?)
        } else if has("differentials") {
            InputFile::Raw(serde_json::from_value(v)?)
        } else if has("cells") {
            InputFile::Double(serde_json::from_value(v)?)
        } else if has("edges") {
            InputFile::Graph(serde_json::from_value(v)?)
        } else {
            return Err(Error::Parse(
                "unrecognized document: expected an arrangement, simplicial, raw complex, double complex or graph file"
                    .into(),
            ));
        })
    }
}
