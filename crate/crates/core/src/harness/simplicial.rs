//! Brute-force simplicial oracle: cohomology of finite simplicial complexes,
//! of complements of subcomplexes, and of finite covers given by edge labels.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::covers::{LocalSystemComplex, TwistedEntry};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{rat, RatMatrix};
use crate::ss::{cohomology_dims, CochainComplex};

type Simplex = Vec<usize>;

/// A finite simplicial complex on vertices `0..vertices`. Every vertex is a
/// 0-face, even when no maximal simplex mentions it.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: usize,
    /// `faces[k]`: the `k`-simplices, each ascending, in lexicographic order.
    faces: Vec<Vec<Simplex>>,
    index: Vec<BTreeMap<Simplex, usize>>,
}

fn closure(vertices: usize, generators: impl IntoIterator<Item = Simplex>) -> Vec<BTreeSet<Simplex>> {
    let mut by_dim: Vec<BTreeSet<Simplex>> = vec![(0..vertices).map(|v| vec![v]).collect()];
    for s in generators {
        let k = s.len();
        if k > 24 {
            // guarded by the caller; 2^k subsets would not fit anyway
            continue;
        }
        for mask in 1u32..(1 << k) {
            let f: Simplex = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
            let d = f.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(f);
        }
    }
    by_dim
}

impl SimplicialComplex {
    /// The complex generated by `maximal`; simplices are vertex sets.
    pub fn new(vertices: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) || s.iter().any(|&v| v >= vertices) {
                return Err(Error::Parse(format!("{s:?} is not a simplex on {vertices} vertices")));
            }
            if s.len() > 16 {
                return Err(Error::Parse(format!("simplex {s:?} is too large")));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::Parse(format!("duplicate maximal simplex {s:?}")));
            }
            gens.push(s);
        }
        Ok(Self::from_closure(vertices, closure(vertices, gens)))
    }

    fn from_closure(vertices: usize, by_dim: Vec<BTreeSet<Simplex>>) -> Self {
        let faces: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertices, faces, index }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn dim(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        !s.is_empty() && self.index.get(s.len() - 1).is_some_and(|m| m.contains_key(s))
    }

    pub fn face_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// `δ: C^k -> C^{k+1}`, `(δf)(σ) = Σ_i (-1)^i f(σ ∖ v_i)`.
    pub fn coboundary(&self, k: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.faces(k + 1).len(), self.faces(k).len());
        for (r, s) in self.faces(k + 1).iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let c = self.index[k][&f];
                m.add_to(r, c, &rat(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        m
    }

    pub fn cochain_complex(&self) -> Result<CochainComplex> {
        let dims: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        let mats = (0..dims.len().saturating_sub(1)).map(|k| self.coboundary(k)).collect();
        CochainComplex::from_matrices(0, &dims, mats)
    }

    /// Betti numbers over `Q`, degrees `0..=dim`.
    pub fn cohomology(&self) -> Result<Vec<usize>> {
        if self.vertices == 0 {
            return Ok(Vec::new());
        }
        Ok(cohomology_dims(&self.cochain_complex()?).into_iter().map(|h| h.dim).collect())
    }

    /// Maximal flags `v ⊂ {v, w} ⊂ ...` through every top simplex, as chains of
    /// `(dimension, face index)`.
    fn flags(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for (k, fs) in self.faces.iter().enumerate() {
            for s in fs {
                if k + 1 < self.faces.len() && self.is_face_of_larger(s) {
                    continue;
                }
                let mut perm: Vec<usize> = (0..s.len()).collect();
                loop {
                    let mut chain = Vec::with_capacity(s.len());
                    let mut cur: Vec<usize> = Vec::with_capacity(s.len());
                    for &i in &perm {
                        cur.push(s[i]);
                        let mut sorted = cur.clone();
                        sorted.sort_unstable();
                        chain.push((sorted.len() - 1, self.index[sorted.len() - 1][&sorted]));
                    }
                    out.push(chain);
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Faces that are not proper faces of another face.
    pub fn maximal_faces(&self) -> Vec<Simplex> {
        self.faces
            .iter()
            .enumerate()
            .flat_map(|(k, fs)| fs.iter().filter(move |s| k + 1 == self.faces.len() || !self.is_face_of_larger(s)))
            .cloned()
            .collect()
    }

    fn is_face_of_larger(&self, s: &[usize]) -> bool {
        let k = s.len();
        (0..self.vertices).any(|v| {
            if s.binary_search(&v).is_ok() {
                return false;
            }
            let mut t = s.to_vec();
            t.push(v);
            t.sort_unstable();
            self.index.get(k).is_some_and(|m| m.contains_key(&t))
        })
    }

    /// Global numbering of faces: dimension-major.
    fn face_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.faces.len());
        let mut acc = 0;
        for fs in &self.faces {
            off.push(acc);
            acc += fs.len();
        }
        off
    }

    /// Barycentric subdivision restricted to the faces where `keep` holds:
    /// the order complex of those faces. Returns the complex and, per new
    /// vertex, the face it is the barycenter of. With `keep` an up-set this is
    /// the full subcomplex of the subdivision on the kept barycenters.
    fn order_complex(&self, keep: impl Fn(usize, usize) -> bool) -> (SimplicialComplex, Vec<Simplex>) {
        let off = self.face_offsets();
        let mut new_index = BTreeMap::new();
        let mut labels = Vec::new();
        for (k, fs) in self.faces.iter().enumerate() {
            for (i, f) in fs.iter().enumerate() {
                if keep(k, i) {
                    new_index.insert(off[k] + i, labels.len());
                    labels.push(f.clone());
                }
            }
        }
        let mut gens = BTreeSet::new();
        for chain in self.flags() {
            let s: Simplex = chain
                .iter()
                .filter_map(|&(k, i)| new_index.get(&(off[k] + i)).copied())
                .collect();
            if !s.is_empty() {
                let mut s = s;
                s.sort_unstable();
                gens.insert(s);
            }
        }
        let sd = Self::from_closure(labels.len(), closure(labels.len(), gens));
        (sd, labels)
    }

    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<Simplex>) {
        self.order_complex(|_, _| true)
    }

    /// Cochain complex of the `|G|`-sheeted cover with edge labels `g_uv`
    /// (`u < v`; unlisted edges carry the identity). The lift of `[v_0 .. v_k]`
    /// on sheet `h` has vertices `(v_i, h·g_{v_0 v_i})`.
    pub fn cover_complex(&self, group: Arc<FiniteGroup>, labels: &BTreeMap<(usize, usize), usize>) -> Result<LocalSystemComplex> {
        let g = group.clone();
        let lab = self.label_fn(&g, labels)?;
        let mut entries = Vec::new();
        for k in 0..self.faces.len().saturating_sub(1) {
            let mut es = Vec::new();
            for (r, s) in self.faces[k + 1].iter().enumerate() {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    let element = if i == 0 { group.inv(lab(s[0], s[1])) } else { group.identity() };
                    es.push(TwistedEntry {
                        row: r,
                        col: self.index[k][&f],
                        coef: rat(if i % 2 == 0 { 1 } else { -1 }),
                        element,
                    });
                }
            }
            entries.push(es);
        }
        let cells = self.faces.iter().map(Vec::len).collect();
        LocalSystemComplex::new(group, 0, cells, entries)
    }

    /// The total space of the same cover as a simplicial complex, vertex
    /// `(v, h)` numbered `v·|G| + h`.
    pub fn cover_total_space(
        &self,
        group: &FiniteGroup,
        labels: &BTreeMap<(usize, usize), usize>,
    ) -> Result<SimplicialComplex> {
        let lab = self.label_fn(group, labels)?;
        let n = group.order();
        let mut gens = Vec::new();
        for fs in &self.faces {
            for s in fs {
                for h in group.elements() {
                    let mut t: Simplex = s
                        .iter()
                        .map(|&v| v * n + if v == s[0] { h } else { group.mul(h, lab(s[0], v)) })
                        .collect();
                    t.sort_unstable();
                    gens.push(t);
                }
            }
        }
        Ok(Self::from_closure(self.vertices * n, closure(self.vertices * n, gens)))
    }

    /// Validates labels and the cocycle condition `g_ab g_bc = g_ac` on every
    /// 2-face, and returns `(u, v) -> g_uv` for any ordered pair in a face.
    fn label_fn<'a>(
        &self,
        group: &'a FiniteGroup,
        labels: &'a BTreeMap<(usize, usize), usize>,
    ) -> Result<impl Fn(usize, usize) -> usize + 'a> {
        for (&(u, v), &g) in labels {
            if u >= v || !self.contains(&[u, v]) || g >= group.order() {
                return Err(Error::Cover(format!("label {g} on ({u}, {v}) is not an edge label")));
            }
        }
        let f = move |u: usize, v: usize| -> usize {
            if u == v {
                group.identity()
            } else if u < v {
                labels.get(&(u, v)).copied().unwrap_or(group.identity())
            } else {
                group.inv(labels.get(&(v, u)).copied().unwrap_or(group.identity()))
            }
        };
        for s in self.faces(2) {
            if group.mul(f(s[0], s[1]), f(s[1], s[2])) != f(s[0], s[2]) {
                return Err(Error::Cocycle(s.clone()));
            }
        }
        Ok(f)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Simplices generating the divisor subcomplex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubcomplexSpec {
    pub simplices: Vec<Vec<usize>>,
}

impl SubcomplexSpec {
    pub fn new(simplices: Vec<Vec<usize>>) -> Self {
        SubcomplexSpec { simplices }
    }

    pub fn vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        SubcomplexSpec {
            simplices: vs.into_iter().map(|v| vec![v]).collect(),
        }
    }

    /// Membership flags `in_d[k][i]` for the faces of `x`.
    fn faces_in(&self, x: &SimplicialComplex) -> Result<Vec<Vec<bool>>> {
        let mut in_d: Vec<Vec<bool>> = x.faces.iter().map(|fs| vec![false; fs.len()]).collect();
        for s in &self.simplices {
            let mut s = s.clone();
            s.sort_unstable();
            if !x.contains(&s) {
                return Err(Error::Subcomplex(format!("{s:?} is not a simplex of the complex")));
            }
            let k = s.len();
            for mask in 1u32..(1 << k) {
                let f: Simplex = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                in_d[f.len() - 1][x.index[f.len() - 1][&f]] = true;
            }
        }
        Ok(in_d)
    }
}

/// The full subcomplex of the `subdivisions`-fold barycentric subdivision
/// spanned by barycenters of simplices not in `D`: a deformation retract of
/// `|X| ∖ |D|`.
pub fn complement_complex(x: &SimplicialComplex, d: &SubcomplexSpec, subdivisions: usize) -> Result<SimplicialComplex> {
    if subdivisions == 0 {
        return Err(Error::Parse("at least one barycentric subdivision is needed".into()));
    }
    let mut x = x.clone();
    let mut in_d = d.faces_in(&x)?;
    for _ in 1..subdivisions {
        let (sd, labels) = x.barycentric_subdivision();
        // a face of sd X lies in sd D iff each of its barycenters is a face of D
        let vert_in_d: Vec<bool> = labels.iter().map(|f| in_d[f.len() - 1][x.index[f.len() - 1][f]]).collect();
        in_d = sd.faces.iter().map(|fs| fs.iter().map(|s| s.iter().all(|&v| vert_in_d[v])).collect()).collect();
        x = sd;
    }
    Ok(x.order_complex(|k, i| !in_d[k][i]).0)
}

/// Betti numbers of `|X| ∖ |D|`.
pub fn complement_cohomology(x: &SimplicialComplex, d: &SubcomplexSpec, subdivisions: usize) -> Result<Vec<usize>> {
    complement_complex(x, d, subdivisions)?.cohomology()
}

/// Relabel a cover by a gauge transformation `φ`: `g'_uv = φ(u)⁻¹ g_uv φ(v)`.
pub fn gauge_transform(
    group: &FiniteGroup,
    labels: &BTreeMap<(usize, usize), usize>,
    edges: &[Vec<usize>],
    phi: &[usize],
) -> BTreeMap<(usize, usize), usize> {
    edges
        .iter()
        .map(|e| {
            let (u, v) = (e[0], e[1]);
            let g = labels.get(&(u, v)).copied().unwrap_or(group.identity());
            ((u, v), group.mul(group.mul(group.inv(phi[u]), g), phi[v]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::equivariant_cohomology;

    fn octahedron() -> SimplicialComplex {
        // vertices 0/1, 2/3, 4/5 antipodal
        let mut t = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    t.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(6, &t).unwrap()
    }

    fn circle() -> SimplicialComplex {
        SimplicialComplex::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn sphere_and_annulus() {
        let s = octahedron();
        assert_eq!(s.cohomology().unwrap(), vec![1, 0, 1]);
        assert_eq!(complement_cohomology(&s, &SubcomplexSpec::default(), 1).unwrap(), vec![1, 0, 1]);
        let ann = complement_cohomology(&s, &SubcomplexSpec::vertices([0, 1]), 1).unwrap();
        assert_eq!(&ann[..2], &[1, 1]);
        assert!(ann[2..].iter().all(|&b| b == 0));
        let ann2 = complement_cohomology(&s, &SubcomplexSpec::vertices([0, 1]), 2).unwrap();
        assert_eq!(ann, ann2);
    }

    #[test]
    fn subdivision_keeps_cohomology() {
        let (sd, labels) = circle().barycentric_subdivision();
        assert_eq!(labels.len(), 6);
        assert_eq!(sd.cohomology().unwrap(), vec![1, 1]);
    }

    #[test]
    fn rejects_foreign_divisor() {
        let err = complement_cohomology(&circle(), &SubcomplexSpec::new(vec![vec![0, 3]]), 1);
        assert!(matches!(err, Err(Error::Subcomplex(_))));
    }

    #[test]
    fn circle_covers() {
        let c = circle();
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let twist = BTreeMap::from([((0, 2), 1)]);
        let l = c.cover_complex(z2.clone(), &twist).unwrap();
        let h = equivariant_cohomology(&l).unwrap();
        assert_eq!((h[0].dim, h[1].dim), (1, 1));
        assert_eq!(c.cover_total_space(&z2, &twist).unwrap().cohomology().unwrap(), vec![1, 1]);
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let h = equivariant_cohomology(&c.cover_complex(z3, &BTreeMap::new()).unwrap()).unwrap();
        assert_eq!((h[0].dim, h[1].dim), (3, 3));
    }

    #[test]
    fn cocycle_violation_names_the_face() {
        let t = SimplicialComplex::new(3, &[vec![0, 1, 2]]).unwrap();
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let err = t.cover_complex(z2, &BTreeMap::from([((0, 1), 1)]));
        assert!(matches!(err, Err(Error::Cocycle(f)) if f == vec![0, 1, 2]));
    }
}
