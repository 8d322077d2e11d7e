//! Dual graphs of divisor configurations on surfaces, their (ℓ²-)homology,
//! and exact definiteness certificates for intersection forms.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arrangement::{Arrangement, Subset};
use crate::covers::{induce_arrangement, CoverSpec};
use crate::error::{Error, Result};
use crate::gmodule::{GMap, GModule};
use crate::group::FiniteGroup;
use crate::linalg::{rank, rat, Rat, RatMatrix};
use crate::ss::{cohomology_dims, CochainComplex};

/// An oriented edge. `∂e = head − tail`; a missing endpoint is a half-edge
/// into a dropped (non-compact) vertex, and `tail == head` is a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub label: String,
    pub tail: Option<usize>,
    pub head: Option<usize>,
}

impl GraphEdge {
    pub fn new(label: impl Into<String>, tail: usize, head: usize) -> Self {
        GraphEdge {
            label: label.into(),
            tail: Some(tail),
            head: Some(head),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DualGraph {
    group: Arc<FiniteGroup>,
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
    /// One permutation per group element; empty for the trivial group.
    vertex_perms: Vec<Vec<usize>>,
    edge_perms: Vec<Vec<usize>>,
    notices: Vec<String>,
}

fn check_perm(p: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    p.len() == m && p.iter().all(|&x| x < m && !std::mem::replace(&mut seen[x], true))
}

impl DualGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<GraphEdge>) -> Result<Self> {
        let n = vertices.len();
        for e in &edges {
            if e.tail.is_some_and(|v| v >= n) || e.head.is_some_and(|v| v >= n) {
                return Err(Error::Shape(format!("edge {:?} has an endpoint outside {n} vertices", e.label)));
            }
        }
        Ok(DualGraph {
            group: Arc::new(FiniteGroup::trivial()),
            vertices,
            edges,
            vertex_perms: Vec::new(),
            edge_perms: Vec::new(),
            notices: Vec::new(),
        })
    }

    /// Attach a group action; it must be an action and preserve oriented incidence.
    pub fn with_action(
        mut self,
        group: Arc<FiniteGroup>,
        vertex_perms: Vec<Vec<usize>>,
        edge_perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (nv, ne) = (self.vertices.len(), self.edges.len());
        if vertex_perms.len() != group.order() || edge_perms.len() != group.order() {
            return Err(Error::Cover("graph action needs one permutation per group element".into()));
        }
        if !vertex_perms.iter().all(|p| check_perm(p, nv)) || !edge_perms.iter().all(|p| check_perm(p, ne)) {
            return Err(Error::Cover("graph action is not given by permutations".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                if (0..nv).any(|x| vertex_perms[a][vertex_perms[b][x]] != vertex_perms[ab][x])
                    || (0..ne).any(|x| edge_perms[a][edge_perms[b][x]] != edge_perms[ab][x])
                {
                    return Err(Error::Cover("graph permutations do not define a group action".into()));
                }
            }
            for (i, e) in self.edges.iter().enumerate() {
                let f = &self.edges[edge_perms[a][i]];
                let mv = |v: Option<usize>| v.map(|v| vertex_perms[a][v]);
                if mv(e.tail) != f.tail || mv(e.head) != f.head {
                    return Err(Error::Cover(format!(
                        "element {a} does not preserve the endpoints of edge {:?}",
                        e.label
                    )));
                }
            }
        }
        self.group = group;
        self.vertex_perms = vertex_perms;
        self.edge_perms = edge_perms;
        Ok(self)
    }

    /// Vertices are compact components of `D(1)`, edges compact components of
    /// `D(2)`; for `J = {i < j}` the edge runs from its component in `D_i` to
    /// its component in `D_j`. Non-compact components are dropped with a notice.
    pub fn from_arrangement(a: &Arrangement, cover: Option<&CoverSpec>) -> Result<Self> {
        let lifted;
        let a = match cover {
            Some(c) => {
                lifted = induce_arrangement(a, c)?;
                &lifted
            }
            None => a,
        };
        let mut notices = Vec::new();
        let mut vindex: BTreeMap<(Subset, usize), usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut vkeys = Vec::new();
        for s in a.strata_of_size(1) {
            for (c, comp) in a.components(s).iter().enumerate() {
                if comp.compact {
                    vindex.insert((s.clone(), c), vertices.len());
                    vertices.push(comp.id.clone());
                    vkeys.push((s.clone(), c));
                } else {
                    notices.push(format!("non-compact component {:?} of D_{s:?} dropped", comp.id));
                }
            }
        }
        let mut edges = Vec::new();
        let mut ekeys = Vec::new();
        for s in a.strata_of_size(2) {
            for (c, comp) in a.components(s).iter().enumerate() {
                if !comp.compact {
                    notices.push(format!("non-compact component {:?} of D_{s:?} dropped", comp.id));
                    continue;
                }
                let end = |drop: usize| {
                    let keep = vec![s[1 - drop]];
                    vindex.get(&(keep, a.parent_of(s, c, s[drop]).component)).copied()
                };
                let e = GraphEdge {
                    label: comp.id.clone(),
                    tail: end(1),
                    head: end(0),
                };
                if e.tail.is_none() || e.head.is_none() {
                    notices.push(format!("edge {:?} is a half-edge", comp.id));
                }
                edges.push(e);
                ekeys.push((s.clone(), c));
            }
        }
        let mut g = DualGraph::new(vertices, edges)?;
        g.notices = notices;
        if a.group().order() > 1 {
            let group = a.group().clone();
            let eindex: BTreeMap<&(Subset, usize), usize> = ekeys.iter().enumerate().map(|(i, k)| (k, i)).collect();
            let vp = group
                .elements()
                .map(|x| vkeys.iter().map(|(s, c)| vindex[&(s.clone(), a.act(x, s, *c))]).collect())
                .collect();
            let ep = group
                .elements()
                .map(|x| ekeys.iter().map(|(s, c)| eindex[&(s.clone(), a.act(x, s, *c))]).collect())
                .collect();
            g = g.with_action(group, vp, ep)?;
        }
        Ok(g)
    }

    /// The `|G|`-sheeted cover of a plain graph with edge `e` labelled
    /// `labels[e]`: edge `(e, h)` runs from `(tail, h)` to `(head, h·labels[e])`.
    /// Lifted cells are numbered `cell·|G| + h`.
    pub fn cover(base: &DualGraph, group: Arc<FiniteGroup>, labels: &[usize]) -> Result<Self> {
        if base.group.order() != 1 {
            return Err(Error::Cover("only graphs without a group action can be covered".into()));
        }
        if labels.len() != base.edges.len() || labels.iter().any(|&k| k >= group.order()) {
            return Err(Error::Cover("need one group element per edge".into()));
        }
        let n = group.order();
        let vertices = base
            .vertices
            .iter()
            .flat_map(|v| (0..n).map(move |h| format!("{v}.{h}")))
            .collect();
        let mut edges = Vec::new();
        for (e, &k) in base.edges.iter().zip(labels) {
            for h in group.elements() {
                edges.push(GraphEdge {
                    label: format!("{}.{h}", e.label),
                    tail: e.tail.map(|v| v * n + h),
                    head: e.head.map(|v| v * n + group.mul(h, k)),
                });
            }
        }
        let sheets = |cells: usize, x: usize| (0..cells * n).map(|i| (i / n) * n + group.mul(x, i % n)).collect();
        let vp = group.elements().map(|x| sheets(base.vertices.len(), x)).collect();
        let ep = group.elements().map(|x| sheets(base.edges.len(), x)).collect();
        let mut g = DualGraph::new(vertices, edges)?;
        g.notices = base.notices.clone();
        g.with_action(group.clone(), vp, ep)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn notices(&self) -> &[String] {
        &self.notices
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// Edge-to-vertex boundary, `vertices × edges`.
    pub fn boundary(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.vertices.len(), self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            if let Some(h) = e.head {
                m.add_to(h, j, &rat(1));
            }
            if let Some(t) = e.tail {
                m.add_to(t, j, &rat(-1));
            }
        }
        m
    }

    fn module(&self, perms: &[Vec<usize>], dim: usize) -> Result<GModule> {
        if perms.is_empty() {
            Ok(GModule::trivial(self.group.clone(), dim))
        } else {
            GModule::from_permutations(self.group.clone(), perms.to_vec())
        }
    }

    /// Edges in degree −1, vertices in degree 0, as `Q[G]`-modules.
    pub fn chain_complex(&self) -> Result<CochainComplex> {
        let e = self.module(&self.edge_perms, self.edges.len())?;
        let v = self.module(&self.vertex_perms, self.vertices.len())?;
        let d = GMap::new(e.clone(), v.clone(), self.boundary())?;
        CochainComplex::new(-1, vec![e, v], vec![d])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphHomology {
    pub h0: usize,
    pub h1: usize,
    pub h0_vn: Rat,
    pub h1_vn: Rat,
}

/// `H_0` and `H_1` of the graph over `Q[G]`; for the trivial group these are
/// the ordinary Betti numbers.
pub fn graph_l2_homology(g: &DualGraph) -> Result<GraphHomology> {
    let dims = cohomology_dims(&g.chain_complex()?);
    Ok(GraphHomology {
        h0: dims[1].dim,
        h1: dims[0].dim,
        h0_vn: dims[1].vn_dim.clone(),
        h1_vn: dims[0].vn_dim.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    pub labels: Vec<String>,
    pub matrix: RatMatrix,
}

impl IntersectionForm {
    /// Checks symmetry and that off-diagonal entries are nonnegative integers.
    pub fn new(labels: Vec<String>, matrix: RatMatrix) -> Result<Self> {
        let n = labels.len();
        if matrix.shape() != (n, n) {
            return Err(Error::Shape(format!("intersection form must be {n} x {n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let x = matrix.get(i, j);
                if x != matrix.get(j, i) {
                    return Err(Error::Shape("intersection form is not symmetric".into()));
                }
                if i != j && (!x.is_integer() || x < rat(0)) {
                    return Err(Error::Shape(format!("entry ({i}, {j}) is not a nonnegative integer")));
                }
            }
        }
        Ok(IntersectionForm { labels, matrix })
    }

    /// Diagonal −2, off-diagonal the adjacency of the given graph on `n` nodes.
    pub fn from_dynkin(name: &str, n: usize, edges: &[(usize, usize)]) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rat(-2));
        }
        for &(i, j) in edges {
            m.set(i, j, rat(1));
            m.set(j, i, rat(1));
        }
        IntersectionForm {
            labels: (0..n).map(|i| format!("{name}.{i}")).collect(),
            matrix: m,
        }
    }

    pub fn a(k: usize) -> Self {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_dynkin(&format!("A{k}"), k, &edges)
    }

    /// A chain of `k − 1` nodes with one extra node on the third from the end.
    pub fn d(k: usize) -> Self {
        let mut edges: Vec<_> = (1..k.saturating_sub(1)).map(|i| (i - 1, i)).collect();
        if k >= 3 {
            edges.push((k - 3, k - 1));
        }
        Self::from_dynkin(&format!("D{k}"), k, &edges)
    }

    pub fn e8() -> Self {
        let mut edges: Vec<_> = (1..7).map(|i| (i - 1, i)).collect();
        edges.push((4, 7));
        Self::from_dynkin("E8", 8, &edges)
    }

    pub fn hyperbolic() -> Self {
        IntersectionForm {
            labels: vec!["e".into(), "f".into()],
            matrix: RatMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Simultaneous row and column permutation: new index `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        IntersectionForm {
            labels: perm.iter().map(|&i| self.labels[i].clone()).collect(),
            matrix: self.matrix.select(perm, perm),
        }
    }
}

/// Self-intersections on the diagonal, numbers of intersection points off it,
/// over the compact components of `D(1)` in stratum order.
pub fn intersection_form(a: &Arrangement) -> Result<IntersectionForm> {
    if a.ambient_dim() != 2 {
        return Err(Error::Arrangement("intersection forms need a surface".into()));
    }
    let mut index = BTreeMap::new();
    let mut labels = Vec::new();
    let mut diag = Vec::new();
    for s in a.strata_of_size(1) {
        for (c, comp) in a.components(s).iter().enumerate() {
            if !comp.compact {
                continue;
            }
            let v = a.self_intersection(s[0], c).ok_or_else(|| {
                Error::Arrangement(format!("missing self-intersection of component {:?} of divisor {}", comp.id, s[0]))
            })?;
            index.insert((s[0], c), labels.len());
            labels.push(comp.id.clone());
            diag.push(v);
        }
    }
    let mut m = RatMatrix::zeros(labels.len(), labels.len());
    for (i, v) in diag.iter().enumerate() {
        m.set(i, i, rat(*v));
    }
    for s in a.strata_of_size(2) {
        for c in 0..a.components(s).len() {
            let x = index.get(&(s[0], a.parent_of(s, c, s[1]).component));
            let y = index.get(&(s[1], a.parent_of(s, c, s[0]).component));
            if let (Some(&x), Some(&y)) = (x, y) {
                m.add_to(x, y, &rat(1));
                m.add_to(y, x, &rat(1));
            }
        }
    }
    IntersectionForm::new(labels, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub negative_definite: bool,
    /// Pivots of `LDLᵀ` without pivoting, up to and including the first
    /// nonnegative one.
    pub pivots: Vec<Rat>,
    pub radical_dim: usize,
}

/// Exact test: `Q` is negative definite iff every pivot of symmetric
/// elimination in the given order is negative.
pub fn is_negative_definite(q: &IntersectionForm) -> Definiteness {
    let n = q.dim();
    let mut a = q.matrix.to_dense();
    let mut pivots = Vec::new();
    let mut negative_definite = true;
    for k in 0..n {
        let p = a[k][k].clone();
        pivots.push(p.clone());
        if p >= rat(0) {
            negative_definite = false;
            break;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            if f == rat(0) {
                continue;
            }
            for j in k + 1..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    Definiteness {
        negative_definite,
        pivots,
        radical_dim: n - rank(&q.matrix),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn cycle(k: usize) -> DualGraph {
        let v = (0..k).map(|i| format!("v{i}")).collect();
        let e = (0..k).map(|i| GraphEdge::new(format!("e{i}"), i, (i + 1) % k)).collect();
        DualGraph::new(v, e).unwrap()
    }

    #[test]
    fn trees_and_cycles() {
        let path = DualGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![GraphEdge::new("x", 0, 1), GraphEdge::new("y", 1, 2)],
        )
        .unwrap();
        let h = graph_l2_homology(&path).unwrap();
        assert_eq!((h.h0, h.h1), (1, 0));
        let h = graph_l2_homology(&cycle(5)).unwrap();
        assert_eq!((h.h0, h.h1), (1, 1));
    }

    #[test]
    fn connected_double_cover_of_cycle() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let g = DualGraph::cover(&cycle(3), z2, &[0, 0, 1]).unwrap();
        let h = graph_l2_homology(&g).unwrap();
        assert_eq!((h.h0, h.h1), (1, 1));
        assert_eq!((h.h0_vn, h.h1_vn), (ratio(1, 2), ratio(1, 2)));
    }

    #[test]
    fn loops_count_in_h1() {
        let g = DualGraph::new(vec!["a".into()], vec![GraphEdge::new("l", 0, 0)]).unwrap();
        let h = graph_l2_homology(&g).unwrap();
        assert_eq!((h.h0, h.h1), (1, 1));
    }

    #[test]
    fn pivots() {
        let q = IntersectionForm::new(vec!["a".into(), "b".into()], RatMatrix::from_i64(&[&[-2, 1], &[1, -2]])).unwrap();
        let d = is_negative_definite(&q);
        assert!(d.negative_definite);
        assert_eq!(d.pivots, vec![rat(-2), ratio(-3, 2)]);
        let q = IntersectionForm::new(vec!["a".into(), "b".into()], RatMatrix::from_i64(&[&[-2, 2], &[2, -2]])).unwrap();
        let d = is_negative_definite(&q);
        assert!(!d.negative_definite);
        assert_eq!((d.pivots.last().cloned(), d.radical_dim), (Some(rat(0)), 1));
        assert!(!is_negative_definite(&IntersectionForm::hyperbolic()).negative_definite);
    }

    #[test]
    fn dynkin_forms_are_definite() {
        for k in 1..=8 {
            assert!(is_negative_definite(&IntersectionForm::a(k)).negative_definite);
            assert!(is_negative_definite(&IntersectionForm::d(k)).negative_definite);
        }
        assert!(is_negative_definite(&IntersectionForm::e8()).negative_definite);
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(IntersectionForm::new(vec!["a".into(), "b".into()], RatMatrix::from_i64(&[&[-1, 1], &[0, -1]])).is_err());
    }
}
