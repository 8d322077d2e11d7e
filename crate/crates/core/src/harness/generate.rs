//! Seeded random inputs for self-tests. Every generator is a deterministic
//! function of the RNG state.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Subset;
use crate::group::FiniteGroup;
use crate::linalg::{rat, Rat, RatMatrix};
use crate::ss::{CochainComplex, DoubleComplex, FilteredComplex};

use super::corpus::{self, CorpusItem};
use super::simplicial::{gauge_transform, SimplicialComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rat {
    let v = *[-2i64, -1, 1, 2, 3].choose(rng).expect("nonempty");
    rat(v)
}

/// A random invertible `n x n` matrix as a product of elementary matrices
/// `I + c E_ij` with `allowed(i, j)`, together with its inverse.
fn elementary_product(rng: &mut ChaCha8Rng, n: usize, allowed: impl Fn(usize, usize) -> bool) -> (RatMatrix, RatMatrix) {
    let mut s = RatMatrix::identity(n);
    let mut s_inv = RatMatrix::identity(n);
    if n < 2 {
        return (s, s_inv);
    }
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j || !allowed(i, j) {
            continue;
        }
        let c = nonzero(rng);
        let mut e = RatMatrix::identity(n);
        e.set(i, j, c.clone());
        let mut e_inv = RatMatrix::identity(n);
        e_inv.set(i, j, -c);
        s = e.mul(&s).expect("square");
        s_inv = s_inv.mul(&e_inv).expect("square");
    }
    (s, s_inv)
}

/// A filtered complex with total dimension `<= max_dim` and at most
/// `max_len` filtration steps: a direct sum of single classes and acyclic
/// pairs `x -> y` placed at random filtration levels, conjugated by a
/// filtration-preserving triangular change of basis and then by an arbitrary
/// invertible one (which moves the filtration along).
pub fn random_filtered_complex(rng: &mut ChaCha8Rng, max_dim: usize, max_len: usize) -> FilteredComplex {
    let degrees = rng.gen_range(1..=4usize);
    let len = rng.gen_range(1..=max_len.max(1)) as i64;
    let target = rng.gen_range(1..=max_dim.max(1));
    // per degree: levels of basis vectors; pairs (deg, src, tgt, coef)
    let mut levels: Vec<Vec<i64>> = vec![Vec::new(); degrees];
    let mut arrows = Vec::new();
    let mut total = 0;
    while total < target {
        let k = rng.gen_range(0..degrees);
        let p = rng.gen_range(0..len);
        if k + 1 < degrees && total + 2 <= target && rng.gen_bool(0.6) {
            let p2 = rng.gen_range(p..len);
            levels[k].push(p);
            levels[k + 1].push(p2);
            arrows.push((k, levels[k].len() - 1, levels[k + 1].len() - 1, nonzero(rng)));
            total += 2;
        } else {
            levels[k].push(p);
            total += 1;
        }
    }
    let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut d: Vec<RatMatrix> = (0..degrees.saturating_sub(1))
        .map(|k| RatMatrix::zeros(dims[k + 1], dims[k]))
        .collect();
    for (k, s, t, c) in arrows {
        d[k].set(t, s, c);
    }
    // T e_j = e_j + c e_i only when level_i >= level_j keeps every F^p
    let tri: Vec<(RatMatrix, RatMatrix)> = (0..degrees)
        .map(|k| {
            let lv = levels[k].clone();
            elementary_product(rng, dims[k], move |i, j| lv[i] >= lv[j])
        })
        .collect();
    let glob: Vec<(RatMatrix, RatMatrix)> = (0..degrees).map(|k| elementary_product(rng, dims[k], |_, _| true)).collect();
    let mats: Vec<RatMatrix> = d
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let t = tri[k + 1].0.mul(m).and_then(|x| x.mul(&tri[k].1)).expect("shapes");
            glob[k + 1].0.mul(&t).and_then(|x| x.mul(&glob[k].1)).expect("shapes")
        })
        .collect();
    let complex = CochainComplex::from_matrices(0, &dims, mats).expect("conjugate of a complex");
    let spans: Vec<Vec<Vec<Vec<Rat>>>> = (0..degrees)
        .map(|k| {
            let s = &glob[k].0;
            (0..len)
                .map(|p| (0..dims[k]).filter(|&i| levels[k][i] >= p).map(|i| s.column(i)).collect())
                .collect()
        })
        .collect();
    FilteredComplex::from_spans(complex, 0, &spans).expect("filtration is preserved")
}

type Cell = (i64, i64);

#[derive(Default)]
struct DoubleBuilder {
    dims: BTreeMap<Cell, usize>,
    /// `(source cell, source index, target cell, target index, coefficient, horizontal?)`
    arrows: Vec<(Cell, usize, Cell, usize, Rat, bool)>,
}

impl DoubleBuilder {
    fn cell(&mut self, c: Cell) -> usize {
        let d = self.dims.entry(c).or_insert(0);
        *d += 1;
        *d - 1
    }

    fn arrow(&mut self, s: (Cell, usize), t: (Cell, usize), c: Rat) {
        let horizontal = t.0 .0 == s.0 .0 + 1;
        self.arrows.push((s.0, s.1, t.0, t.1, c, horizontal));
    }
}

/// A random double complex: dots, anticommuting squares and zigzags on two
/// adjacent antidiagonals, then a random change of basis in every cell.
pub fn random_double_complex(rng: &mut ChaCha8Rng) -> DoubleComplex {
    let mut b = DoubleBuilder::default();
    let pieces = rng.gen_range(1..=4);
    for _ in 0..pieces {
        let (p, q) = (rng.gen_range(0..3i64), rng.gen_range(0..3i64));
        match rng.gen_range(0..3) {
            0 => {
                b.cell((p, q));
            }
            1 => {
                let x00 = ((p, q), b.cell((p, q)));
                let x10 = ((p + 1, q), b.cell((p + 1, q)));
                let x01 = ((p, q + 1), b.cell((p, q + 1)));
                let x11 = ((p + 1, q + 1), b.cell((p + 1, q + 1)));
                let (a, top, left) = (nonzero(rng), nonzero(rng), nonzero(rng));
                let right = -(&top * &left) / &a;
                b.arrow(x00, x10, a);
                b.arrow(x01, x11, top);
                b.arrow(x00, x01, left);
                b.arrow(x10, x11, right);
            }
            _ => {
                // ... t_{m-1} <- b_m -> t_m <- b_{m+1} ..., b_m = (p+m, q+2-m), t_m = b_m + (1, 0)
                let len = rng.gen_range(2..=5usize);
                // position 2m is b_m, position 2m + 1 is t_m
                let start: i64 = if rng.gen_bool(0.5) { -1 } else { 0 };
                let q0 = q + 2;
                let mut prev: Option<((Cell, usize), bool)> = None;
                for s in 0..len as i64 {
                    let k = start + s;
                    let is_top = k.rem_euclid(2) == 1;
                    let m = k.div_euclid(2);
                    let c = if is_top { (p + m + 1, q0 - m) } else { (p + m, q0 - m) };
                    let here = (c, b.cell(c));
                    if let Some((pr, pr_top)) = prev {
                        let coef = nonzero(rng);
                        if pr_top {
                            b.arrow(here, pr, coef);
                        } else {
                            b.arrow(pr, here, coef);
                        }
                    }
                    prev = Some((here, is_top));
                }
            }
        }
    }
    let change: BTreeMap<Cell, (RatMatrix, RatMatrix)> =
        b.dims.iter().map(|(&c, &n)| (c, elementary_product(rng, n, |_, _| true))).collect();
    let mut h: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    let mut v: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    for (s, si, t, ti, c, horizontal) in &b.arrows {
        let map = if *horizontal { &mut h } else { &mut v };
        map.entry(*s)
            .or_insert_with(|| RatMatrix::zeros(b.dims[t], b.dims[s]))
            .add_to(*ti, *si, c);
    }
    let conj = |m: BTreeMap<Cell, RatMatrix>, horizontal: bool| -> BTreeMap<Cell, RatMatrix> {
        m.into_iter()
            .map(|(s, x)| {
                let t = if horizontal { (s.0 + 1, s.1) } else { (s.0, s.1 + 1) };
                let y = change[&t].0.mul(&x).and_then(|y| y.mul(&change[&s].1)).expect("shapes");
                (s, y)
            })
            .collect()
    };
    DoubleComplex::from_matrices(&b.dims, conj(h, true), conj(v, false)).expect("pieces form a double complex")
}

pub fn random_group(rng: &mut ChaCha8Rng) -> Arc<FiniteGroup> {
    let gs = FiniteGroup::small_groups();
    Arc::new(gs.choose(rng).expect("nonempty").clone())
}

/// A random arrangement from the model families, always with a nonempty
/// divisor; punctured curves come with their simplicial model.
pub fn random_arrangement(rng: &mut ChaCha8Rng) -> CorpusItem {
    match rng.gen_range(0..5) {
        0 => corpus::curve_item(rng.gen_range(0..=2), rng.gen_range(1..=4)),
        1 => corpus::product_item(rng.gen_range(0..=2), rng.gen_range(1..=2), rng.gen_range(0..=2), rng.gen_range(0..=2)),
        2 => {
            let k = rng.gen_range(1..=3);
            let degs: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
            let (a, g) = corpus::plane_curves(&degs);
            plain_item(format!("plane-curves{degs:?}"), a, g)
        }
        3 => {
            let (k, m) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
            let (a, g) = corpus::blown_up_plane(k, m);
            plain_item(format!("blown-up-plane(k={k},m={m})"), a, g)
        }
        _ => random_product_cover(rng),
    }
}

fn plain_item(name: String, a: crate::arrangement::Arrangement, g: crate::arrangement::GysinData) -> CorpusItem {
    CorpusItem {
        name,
        input: super::format::ArrangementInput {
            arrangement: a,
            gysin: g,
            cover: None,
            model: None,
        },
    }
}

fn random_product_cover(rng: &mut ChaCha8Rng) -> CorpusItem {
    let grp = random_group(rng);
    corpus::product_cover(
        rng.gen_range(1..=2),
        rng.gen_range(1..=2),
        rng.gen_range(0..=1),
        rng.gen_range(0..=2),
        grp,
    )
    .expect("product covers are valid")
}

/// A random finite cover with `|G| <= 6`: a punctured curve whose lifted
/// components are the cosets of a random subgroup, or a product cover.
pub fn random_cover(rng: &mut ChaCha8Rng) -> CorpusItem {
    if rng.gen_bool(0.3) {
        return random_product_cover(rng);
    }
    let grp = random_group(rng);
    let g = rng.gen_range(0..=3);
    let n = rng.gen_range(0..=4);
    let h = if g == 0 {
        vec![grp.identity()]
    } else {
        grp.subgroups().choose(rng).expect("nonempty").clone()
    };
    let (a, c) = corpus::curve_cover(g, n, grp.clone(), &h).expect("curve covers are valid");
    let mut it = plain_item(format!("curve-cover(g={g},n={n},G={},|H|={})", grp.name(), h.len()), a, Default::default());
    it.input.cover = Some(c);
    it
}

/// A simplicial complex with a group and edge labels satisfying the cocycle
/// condition.
#[derive(Clone, Debug)]
pub struct SimplicialCover {
    pub name: String,
    pub complex: SimplicialComplex,
    pub group: Arc<FiniteGroup>,
    pub labels: BTreeMap<(usize, usize), usize>,
}

fn torus(m: usize) -> SimplicialComplex {
    let v = |i: usize, j: usize| (i % m) * m + (j % m);
    let mut t = Vec::new();
    for i in 0..m {
        for j in 0..m {
            t.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            t.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    SimplicialComplex::new(m * m, &t).expect("grid torus")
}

fn power(g: &FiniteGroup, x: usize, e: i64) -> usize {
    let base = if e < 0 { g.inv(x) } else { x };
    (0..e.unsigned_abs()).fold(g.identity(), |acc, _| g.mul(acc, base))
}

/// Labels on the `m x m` grid torus: crossing the seam in the first
/// direction costs `a`, in the second `b`; `a` and `b` must commute.
fn seam_labels(m: usize, g: &FiniteGroup, a: usize, b: usize) -> BTreeMap<(usize, usize), usize> {
    let x = torus(m);
    let wrap = |from: usize, to: usize| -> i64 {
        if from == m - 1 && to == 0 {
            1
        } else if from == 0 && to == m - 1 {
            -1
        } else {
            0
        }
    };
    x.faces(1)
        .iter()
        .map(|e| {
            let (u, v) = (e[0], e[1]);
            let (ui, uj, vi, vj) = (u / m, u % m, v / m, v % m);
            let l = g.mul(power(g, a, wrap(ui, vi)), power(g, b, wrap(uj, vj)));
            ((u, v), l)
        })
        .collect()
}

/// Random graphs with arbitrary labels, grid tori with commuting seam
/// labels, and closed surfaces with coboundary labels, each followed by a
/// random gauge transformation.
pub fn random_simplicial_cover(rng: &mut ChaCha8Rng) -> SimplicialCover {
    let group = random_group(rng);
    let order = group.order();
    let (name, complex, labels) = match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=7);
            let mut edges: Vec<Vec<usize>> = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push(vec![u, v]);
                    }
                }
            }
            if edges.is_empty() {
                edges.push(vec![0, 1]);
            }
            let labels = edges.iter().map(|e| ((e[0], e[1]), rng.gen_range(0..order))).collect();
            (format!("graph(n={n})"), SimplicialComplex::new(n, &edges).expect("graph"), labels)
        }
        1 => {
            let m = rng.gen_range(3..=4);
            let a = rng.gen_range(0..order);
            let commuting: Vec<usize> = group.elements().filter(|&b| group.mul(a, b) == group.mul(b, a)).collect();
            let b = *commuting.choose(rng).expect("identity commutes");
            (format!("torus(m={m},a={a},b={b})"), torus(m), seam_labels(m, &group, a, b))
        }
        _ => {
            let (x, _) = corpus::surface(rng.gen_range(0..=1));
            let phi: Vec<usize> = (0..x.vertices()).map(|_| rng.gen_range(0..order)).collect();
            let edges = x.faces(1).to_vec();
            let labels = gauge_transform(&group, &BTreeMap::new(), &edges, &phi);
            ("surface(coboundary)".to_string(), x, labels)
        }
    };
    let phi: Vec<usize> = (0..complex.vertices()).map(|_| rng.gen_range(0..order)).collect();
    let labels = gauge_transform(&group, &labels, complex.faces(1), &phi);
    SimplicialCover {
        name: format!("{name}/{}", group.name()),
        complex,
        group,
        labels,
    }
}

/// A random transposition of two divisor indices.
pub fn random_transposition(rng: &mut ChaCha8Rng, n: usize) -> Subset {
    let mut p: Vec<usize> = (0..n).collect();
    if n >= 2 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        p.swap(i, j);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::equivariant_cohomology;

    #[test]
    fn generators_are_deterministic_and_valid() {
        for seed in 0..20 {
            let a = random_filtered_complex(&mut rng(seed), 12, 4);
            let b = random_filtered_complex(&mut rng(seed), 12, 4);
            assert_eq!(a.complex().degrees().count(), b.complex().degrees().count());
            let dc = random_double_complex(&mut rng(seed));
            dc.totalize().unwrap();
            let sc = random_simplicial_cover(&mut rng(seed));
            let l = sc.complex.cover_complex(sc.group.clone(), &sc.labels).unwrap();
            equivariant_cohomology(&l).unwrap();
        }
    }

    #[test]
    fn zigzag_counterexample_shape() {
        let dc = corpus::froelicher_counterexample();
        let r = crate::ss::froelicher(&dc).unwrap();
        assert!(!r.degenerates);
        assert_eq!(r.degeneration_page, 3);
    }
}
