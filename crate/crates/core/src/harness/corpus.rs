//! Model arrangements with known answers: punctured curves (with simplicial
//! models), products of curves, plane curve configurations, the blown-up
//! plane, and their finite covers.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arrangement::{Arrangement, Component, GysinData};
use crate::covers::{CoverSpec, LiftedComponent, StratumLift};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{rat, RatMatrix};
use crate::ss::DoubleComplex;

use super::format::{ArrangementInput, OracleModel};
use super::simplicial::{SimplicialComplex, SubcomplexSpec};

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: String,
    pub input: ArrangementInput,
}

impl CorpusItem {
    fn new(name: impl Into<String>, arrangement: Arrangement, gysin: GysinData) -> Self {
        CorpusItem {
            name: name.into(),
            input: ArrangementInput {
                arrangement,
                gysin,
                cover: None,
                model: None,
            },
        }
    }

    fn with_cover(mut self, c: CoverSpec) -> Self {
        self.input.cover = Some(c);
        self
    }

    fn with_model(mut self, m: OracleModel) -> Self {
        self.input.model = Some(m);
        self
    }
}

/// A genus `g` curve with `n` distinct points removed.
pub fn punctured_curve(g: usize, n: usize) -> Arrangement {
    let mut b = Arrangement::builder(1, (0..n).map(|i| format!("p{i}")).collect())
        .stratum(vec![], vec![Component::curve("C", g)]);
    for i in 0..n {
        b = b.stratum(vec![i], vec![Component::point(format!("p{i}"))]);
    }
    b.build().expect("punctured curves are valid")
}

/// The octahedral sphere; antipodal pairs are `(0,1)`, `(2,3)`, `(4,5)`.
pub fn octahedron() -> SimplicialComplex {
    let mut t = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                t.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::new(6, &t).expect("octahedron")
}

const GRID: usize = 4;

fn grid_vertex(copy: usize, i: usize, j: usize) -> usize {
    copy * GRID * GRID + (i % GRID) * GRID + (j % GRID)
}

/// Triangles of a `4 x 4` grid torus, as copy `copy`.
fn grid_torus(copy: usize) -> Vec<Vec<usize>> {
    let mut t = Vec::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let v = |a, b| grid_vertex(copy, i + a, j + b);
            t.push(vec![v(0, 0), v(1, 0), v(1, 1)]);
            t.push(vec![v(0, 0), v(0, 1), v(1, 1)]);
        }
    }
    t
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// A closed orientable surface of genus `g` as a simplicial complex: the
/// octahedron for `g = 0`, otherwise `g` grid tori joined in a chain by
/// triangular tubes. Returns the complex and vertices away from the tubes.
pub fn surface(g: usize) -> (SimplicialComplex, Vec<usize>) {
    if g == 0 {
        return (octahedron(), (0..6).collect());
    }
    let entry = |c| sorted(vec![grid_vertex(c, 0, 0), grid_vertex(c, 1, 0), grid_vertex(c, 1, 1)]);
    let exit = |c| sorted(vec![grid_vertex(c, 2, 2), grid_vertex(c, 3, 2), grid_vertex(c, 3, 3)]);
    let mut tris = Vec::new();
    for c in 0..g {
        for t in grid_torus(c) {
            let t = sorted(t);
            if (c > 0 && t == entry(c)) || (c + 1 < g && t == exit(c)) {
                continue;
            }
            tris.push(t);
        }
    }
    for c in 0..g.saturating_sub(1) {
        let (a, b) = (exit(c), entry(c + 1));
        for k in 0..3 {
            let k1 = (k + 1) % 3;
            tris.push(sorted(vec![a[k], a[k1], b[k]]));
            tris.push(sorted(vec![a[k1], b[k1], b[k]]));
        }
    }
    let free = [(0, 2), (2, 0), (1, 3), (3, 1), (0, 3), (2, 3), (3, 0)]
        .iter()
        .map(|&(i, j)| grid_vertex(0, i, j))
        .collect();
    (SimplicialComplex::new(g * GRID * GRID, &tris).expect("surface"), free)
}

/// Genus `g` curve minus `n <= 6` points, paired with its simplicial model.
pub fn curve_item(g: usize, n: usize) -> CorpusItem {
    let (x, free) = surface(g);
    assert!(n <= free.len(), "at most {} punctures in the model", free.len());
    CorpusItem::new(format!("curve(g={g},n={n})"), punctured_curve(g, n), GysinData::new()).with_model(OracleModel {
        complex: x,
        divisor: SubcomplexSpec::vertices(free[..n].iter().copied()),
    })
}

/// The Hodge diamond of a genus `g` curve, with its basis order: in each
/// degree, types `(a, d - a)` with `a` ascending.
fn curve_types(g: usize) -> Vec<Vec<usize>> {
    vec![vec![0], [vec![0; g], vec![1; g]].concat(), vec![1]]
}

/// Künneth basis of `H^k(C_1 x C_2)` sorted by Hodge type: entries
/// `(type a, d_1, i_1, d_2, i_2)`.
fn kunneth(g1: usize, g2: usize, k: usize) -> Vec<(usize, usize, usize, usize, usize)> {
    let (t1, t2) = (curve_types(g1), curve_types(g2));
    let mut out = Vec::new();
    for d1 in 0..=2usize {
        if k < d1 || k - d1 > 2 {
            continue;
        }
        let d2 = k - d1;
        for (i1, a1) in t1[d1].iter().enumerate() {
            for (i2, a2) in t2[d2].iter().enumerate() {
                out.push((a1 + a2, d1, i1, d2, i2));
            }
        }
    }
    out.sort_by_key(|e| e.0);
    out
}

fn product_component(id: &str, g1: usize, g2: usize) -> Component {
    let betti: Vec<usize> = (0..=4).map(|k| kunneth(g1, g2, k).len()).collect();
    let hodge = (0..=4)
        .map(|k| {
            let mut row = vec![0; k + 1];
            for e in kunneth(g1, g2, k) {
                row[e.0] += 1;
            }
            row
        })
        .collect();
    Component::new(id, true, betti).with_hodge(hodge)
}

/// Pushforward of `H^d` of a fibre into `H^{d+2}(C_1 x C_2)`: `{pt} x C_2`
/// sends `f_j` to `[pt] ⊗ f_j`, `C_1 x {pt}` sends `e_i` to `e_i ⊗ [pt]`.
fn fibre_gysin(g1: usize, g2: usize, vertical: bool, d: usize) -> RatMatrix {
    let target = kunneth(g1, g2, d + 2);
    let cols = if vertical { curve_types(g2)[d].len() } else { curve_types(g1)[d].len() };
    let mut m = RatMatrix::zeros(target.len(), cols);
    for (r, &(_, d1, i1, d2, i2)) in target.iter().enumerate() {
        let hit = if vertical { (d1, i1, d2) == (2, 0, d) } else { (d2, i2, d1) == (2, 0, d) };
        if hit {
            m.set(r, if vertical { i2 } else { i1 }, rat(1));
        }
    }
    m
}

/// `C_1 x C_2` with `a` vertical fibres `{p_i} x C_2` (divisors `0..a`) and
/// `b` horizontal fibres `C_1 x {q_j}` (divisors `a..a+b`).
pub fn product_of_curves(g1: usize, a: usize, g2: usize, b: usize) -> (Arrangement, GysinData) {
    let names = (0..a).map(|i| format!("F{i}")).chain((0..b).map(|j| format!("G{j}"))).collect();
    let mut bld = Arrangement::builder(2, names).stratum(vec![], vec![product_component("X", g1, g2)]);
    let mut gysin = GysinData::new();
    for i in 0..a + b {
        let vertical = i < a;
        let genus = if vertical { g2 } else { g1 };
        bld = bld
            .stratum(vec![i], vec![Component::curve(format!("D{i}"), genus)])
            .self_intersection(i, 0, 0);
        for d in 0..2 {
            gysin = gysin.with(d + 2, vec![i], 0, i, fibre_gysin(g1, g2, vertical, d));
        }
    }
    for i in 0..a {
        for j in a..a + b {
            bld = bld.stratum(vec![i, j], vec![Component::point(format!("x{i}{j}"))]);
        }
    }
    (bld.build().expect("product arrangement"), gysin)
}

pub fn product_item(g1: usize, a: usize, g2: usize, b: usize) -> CorpusItem {
    let (arr, gy) = product_of_curves(g1, a, g2, b);
    CorpusItem::new(format!("product(g1={g1},a={a},g2={g2},b={b})"), arr, gy)
}

fn plane_hodge() -> Vec<Vec<usize>> {
    vec![vec![1], vec![0, 0], vec![0, 1, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0, 0]]
}

/// `P²` with smooth curves of the given degrees in general position.
pub fn plane_curves(degrees: &[usize]) -> (Arrangement, GysinData) {
    let names = degrees.iter().enumerate().map(|(i, d)| format!("C{i}(deg {d})")).collect();
    let mut bld = Arrangement::builder(2, names)
        .stratum(vec![], vec![Component::new("P2", true, vec![1, 0, 1, 0, 1]).with_hodge(plane_hodge())]);
    let mut gysin = GysinData::new();
    for (i, &d) in degrees.iter().enumerate() {
        let genus = (d - 1) * (d.max(2) - 2) / 2;
        bld = bld
            .stratum(vec![i], vec![Component::curve(format!("C{i}"), genus)])
            .self_intersection(i, 0, (d * d) as i64);
        gysin = gysin.with(2, vec![i], 0, i, RatMatrix::from_i64(&[&[d as i64]]));
    }
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            let pts = degrees[i] * degrees[j];
            let comps = (0..pts).map(|k| Component::point(format!("x{i}{j}.{k}"))).collect();
            bld = bld.stratum(vec![i, j], comps);
        }
    }
    (bld.build().expect("plane curves"), gysin)
}

/// `Bl_p P²` with the exceptional curve `E` (divisor 0), the strict
/// transforms of `k` lines through `p`, and `m` general lines. `H² = <H, E>`.
pub fn blown_up_plane(k: usize, m: usize) -> (Arrangement, GysinData) {
    let mut names = vec!["E".to_string()];
    names.extend((0..k).map(|i| format!("L{i}")));
    names.extend((0..m).map(|i| format!("M{i}")));
    let n = names.len();
    let hodge = vec![vec![1], vec![0, 0], vec![0, 2, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0, 0]];
    let mut bld =
        Arrangement::builder(2, names).stratum(vec![], vec![Component::new("Bl", true, vec![1, 0, 2, 0, 1]).with_hodge(hodge)]);
    let mut gysin = GysinData::new();
    let class = |i: usize| -> (i64, i64, i64) {
        // (coefficient of H, coefficient of E, self-intersection)
        if i == 0 {
            (0, 1, -1)
        } else if i <= k {
            (1, -1, 0)
        } else {
            (1, 0, 1)
        }
    };
    for i in 0..n {
        let (h, e, s) = class(i);
        bld = bld
            .stratum(vec![i], vec![Component::curve(format!("D{i}"), 0)])
            .self_intersection(i, 0, s);
        gysin = gysin.with(2, vec![i], 0, i, RatMatrix::from_i64(&[&[h], &[e]]));
    }
    for i in 0..n {
        for j in i + 1..n {
            let (hi, ei, _) = class(i);
            let (hj, ej, _) = class(j);
            // H.H = 1, E.E = -1, H.E = 0
            let pts = hi * hj - ei * ej;
            if pts > 0 {
                let comps = (0..pts).map(|t| Component::point(format!("x{i}{j}.{t}"))).collect();
                bld = bld.stratum(vec![i, j], comps);
            }
        }
    }
    (bld.build().expect("blown-up plane"), gysin)
}

fn free_lift(group: &FiniteGroup, base: usize) -> StratumLift {
    let n = group.order();
    StratumLift {
        components: (0..n).map(|_| LiftedComponent::over(base)).collect(),
        action: group.elements().map(|g| (g, (0..n).map(|x| group.mul(g, x)).collect())).collect(),
        stabilizers: vec![vec![group.identity()]],
    }
}

fn fixed_lift(group: &FiniteGroup, c: LiftedComponent) -> StratumLift {
    StratumLift {
        components: vec![c],
        action: group.elements().map(|g| (g, vec![0])).collect(),
        stabilizers: vec![group.elements().collect()],
    }
}

/// A cover of a genus `g` curve minus `n` points whose components are the
/// cosets of `h`: each is a connected `h`-cover of the curve, so `h` must be
/// trivial when `g = 0`. Punctures lift to free orbits.
pub fn curve_cover(g: usize, n: usize, group: Arc<FiniteGroup>, h: &[usize]) -> Result<(Arrangement, CoverSpec)> {
    let a = punctured_curve(g, n);
    let cosets = group.left_cosets(h);
    let mut strata = BTreeMap::new();
    strata.insert(
        vec![],
        StratumLift {
            components: (0..cosets.len()).map(|_| LiftedComponent::over(0)).collect(),
            action: group.elements().map(|x| (x, group.coset_action(h, x))).collect(),
            stabilizers: vec![h.to_vec()],
        },
    );
    let mut incidence = BTreeMap::new();
    for i in 0..n {
        strata.insert(vec![i], free_lift(&group, 0));
        incidence.insert((vec![i], group.identity(), i), 0);
    }
    let c = CoverSpec::new(group, strata, incidence, GysinData::new())?;
    Ok((a, c))
}

/// The pullback to `C_1 x C_2` of a connected `G`-cover of `C_1` (so
/// `g1 >= 1` unless `G` is trivial), with lifted Gysin maps from the Künneth
/// decomposition of `C̃_1 x C_2`.
pub fn product_cover(g1: usize, a: usize, g2: usize, b: usize, group: Arc<FiniteGroup>) -> Result<CorpusItem> {
    let (arr, gysin) = product_of_curves(g1, a, g2, b);
    let s = group.order();
    let gt = 1 + s * g1 - s;
    let ambient = product_component("X~", gt, g2);
    let mut strata = BTreeMap::new();
    strata.insert(
        vec![],
        fixed_lift(&group, LiftedComponent::over(0).with_betti(ambient.betti.clone()).with_hodge(ambient.hodge.clone().expect("hodge"))),
    );
    let mut incidence = BTreeMap::new();
    let mut lg = GysinData::new();
    for i in 0..a + b {
        let vertical = i < a;
        if vertical {
            strata.insert(vec![i], free_lift(&group, 0));
            for x in 0..s {
                for d in 0..2 {
                    lg = lg.with(d + 2, vec![i], x, i, fibre_gysin(gt, g2, true, d));
                }
            }
        } else {
            strata.insert(vec![i], fixed_lift(&group, LiftedComponent::over(0)));
            for d in 0..2 {
                lg = lg.with(d + 2, vec![i], 0, i, fibre_gysin(gt, g2, false, d));
            }
        }
    }
    for i in 0..a {
        for j in a..a + b {
            strata.insert(vec![i, j], free_lift(&group, 0));
            incidence.insert((vec![i, j], group.identity(), j), group.identity());
        }
    }
    let c = CoverSpec::new(group.clone(), strata, incidence, lg)?;
    Ok(CorpusItem::new(
        format!("product-cover(g1={g1},a={a},g2={g2},b={b},G={})", group.name()),
        arr,
        gysin,
    )
    .with_cover(c))
}

/// The fixed surface-case corpus.
pub fn surface_corpus() -> Vec<CorpusItem> {
    let mut v = Vec::new();
    for degs in [vec![1, 1, 1], vec![1, 1, 1, 1], vec![1, 2], vec![2, 2], vec![3, 1], vec![1]] {
        let (a, g) = plane_curves(&degs);
        v.push(CorpusItem::new(format!("plane-curves{degs:?}"), a, g));
    }
    for (k, m) in [(0, 0), (1, 0), (2, 0), (2, 1), (3, 2)] {
        let (a, g) = blown_up_plane(k, m);
        v.push(CorpusItem::new(format!("blown-up-plane(k={k},m={m})"), a, g));
    }
    for (g1, a, g2, b) in [(0, 1, 0, 1), (1, 2, 0, 2), (1, 1, 2, 2), (2, 2, 1, 1), (0, 3, 0, 2)] {
        v.push(product_item(g1, a, g2, b));
    }
    for (g1, a, g2, b, grp) in [
        (1, 1, 0, 1, FiniteGroup::cyclic(2)),
        (1, 2, 1, 1, FiniteGroup::cyclic(3)),
        (2, 1, 0, 2, FiniteGroup::s3()),
        (1, 2, 0, 2, FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))),
    ] {
        v.push(product_cover(g1, a, g2, b, Arc::new(grp)).expect("corpus cover"));
    }
    v
}

/// `u(0,1) -d'-> w(1,1) <-d''- v(1,0) -d'-> z(2,0)`: `E_1` has one class in
/// total degrees 1 and 2, the total complex is acyclic, and `d_2 u = z`.
pub fn froelicher_counterexample() -> DoubleComplex {
    let one = || RatMatrix::from_i64(&[&[1]]);
    let dims = BTreeMap::from([((0, 1), 1), ((1, 1), 1), ((1, 0), 1), ((2, 0), 1)]);
    let h = BTreeMap::from([((0, 1), one()), ((1, 0), one())]);
    let v = BTreeMap::from([((1, 0), one())]);
    DoubleComplex::from_matrices(&dims, h, v).expect("counterexample is a double complex")
}

/// The Dolbeault bigrading of a genus 2 curve with zero differentials.
pub fn genus2_hodge_double_complex() -> DoubleComplex {
    let dims = BTreeMap::from([((0, 0), 1), ((1, 0), 2), ((0, 1), 2), ((1, 1), 1)]);
    DoubleComplex::from_matrices(&dims, BTreeMap::new(), BTreeMap::new()).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{assemble_weight_e1, weight_graded_dims};
    use crate::harness::simplicial::complement_cohomology;

    #[test]
    fn surfaces_have_the_right_cohomology() {
        for g in 0..3 {
            let (x, _) = surface(g);
            assert_eq!(x.cohomology().unwrap(), vec![1, 2 * g, 1], "genus {g}");
        }
    }

    #[test]
    fn genus2_three_punctures() {
        let it = curve_item(2, 3);
        let m = it.input.model.as_ref().unwrap();
        let b = complement_cohomology(&m.complex, &m.divisor, 1).unwrap();
        assert_eq!(&b[..2], &[1, 6]);
        assert!(b[2..].iter().all(|&x| x == 0));
    }

    #[test]
    fn product_weights() {
        // P1 x P1 minus one fibre of each kind is C^2
        let (a, g) = product_of_curves(0, 1, 0, 1);
        let w = weight_graded_dims(&assemble_weight_e1(&a, &g).unwrap());
        assert_eq!((w.total(0), w.total(1), w.total(2)), (1, 0, 0));
    }

    #[test]
    fn corpus_assembles() {
        for it in surface_corpus() {
            let i = &it.input;
            let a = match &i.cover {
                Some(c) => crate::covers::induce_arrangement(&i.arrangement, c).unwrap(),
                None => i.arrangement.clone(),
            };
            let g = match &i.cover {
                Some(c) => crate::covers::induce_gysin(&i.arrangement, &i.gysin, c, &a),
                None => i.gysin.clone(),
            };
            assemble_weight_e1(&a, &g).unwrap_or_else(|e| panic!("{}: {e}", it.name));
        }
    }
}
