//! Independent brute-force oracles for the integration tests. Nothing here
//! calls the library's elimination, subspace or spectral sequence code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use l2hodge::group::FiniteGroup;
use l2hodge::linalg::{Rat, RatMatrix};
use l2hodge::ss::{DoubleComplex, FilteredComplex};
use num_traits::{One, Zero};

pub type Dense = Vec<Vec<Rat>>;

pub fn dense(m: &RatMatrix) -> Dense {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

/// Row-reduce in place; returns pivot columns.
fn rref(a: &mut Dense, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rat::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Dense, cols: usize) -> usize {
    let mut a = a.clone();
    rref(&mut a, cols).len()
}

pub fn rank_of(m: &RatMatrix) -> usize {
    rank(&dense(m), m.cols())
}

/// Kernel basis of an `rows x cols` matrix.
pub fn kernel(a: &Dense, cols: usize) -> Vec<Vec<Rat>> {
    let mut a = a.clone();
    let piv = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

fn apply(a: &Dense, v: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// `dim Gr_F^p H^n` from ranks: `dim(F^p Z + B) - dim(F^{p+1} Z + B)`.
pub fn graded_cohomology(f: &FilteredComplex) -> BTreeMap<(i64, i64), usize> {
    let c = f.complex();
    let (p_min, p_max) = f.p_range();
    let mut out = BTreeMap::new();
    for n in c.degrees() {
        let dim = c.dim(n);
        let d = dense(&c.d_matrix(n));
        let prev = c.d_matrix(n - 1);
        let boundaries: Vec<Vec<Rat>> = (0..prev.cols()).map(|j| (0..dim).map(|i| prev.get(i, j)).collect()).collect();
        let step = |p: i64| -> usize {
            let fp = f.f(n, p).basis();
            // F^p ∩ Z: combinations of the F^p basis killed by d
            let images: Dense = if fp.is_empty() {
                Vec::new()
            } else {
                let cols: Vec<Vec<Rat>> = fp.iter().map(|v| apply(&d, v)).collect();
                (0..d.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
            };
            let mut vectors: Vec<Vec<Rat>> = kernel(&images, fp.len())
                .into_iter()
                .map(|k| (0..dim).map(|i| fp.iter().zip(&k).map(|(v, x)| &v[i] * x).sum()).collect())
                .collect();
            vectors.extend(boundaries.iter().cloned());
            rank(&vectors, dim)
        };
        for p in p_min..=p_max {
            let g = step(p) - step(p + 1);
            if g > 0 {
                out.insert((p, n), g);
            }
        }
    }
    out
}

/// `(Σ_{p+q=n} dim H(K^{p,•}, d''), dim H^n(Tot))` by assembling `Tot` by hand.
pub fn froelicher_brute(dc: &DoubleComplex) -> (BTreeMap<i64, usize>, BTreeMap<i64, usize>) {
    let cells: BTreeMap<(i64, i64), usize> = dc.cells().map(|(&k, m)| (k, m.dim())).filter(|(_, d)| *d > 0).collect();
    let dim = |p: i64, q: i64| cells.get(&(p, q)).copied().unwrap_or(0);
    let mut e1 = BTreeMap::new();
    for &(p, q) in cells.keys() {
        let out = rank_of(&dc.vertical(p, q));
        let inc = rank_of(&dc.vertical(p, q - 1));
        *e1.entry(p + q).or_insert(0) += dim(p, q) - out - inc;
    }
    let degrees: BTreeSet<i64> = cells.keys().map(|k| k.0 + k.1).collect();
    // offsets of each cell inside Tot^n
    let layout = |n: i64| -> (Vec<(i64, usize)>, usize) {
        let mut off = Vec::new();
        let mut total = 0;
        for (&(p, q), &d) in &cells {
            if p + q == n {
                off.push((p, total));
                total += d;
            }
        }
        (off, total)
    };
    let total_d = |n: i64| -> (Dense, usize) {
        let (src, cols) = layout(n);
        let (tgt, rows) = layout(n + 1);
        let mut m = vec![vec![Rat::zero(); cols]; rows];
        for &(p, so) in &src {
            let q = n - p;
            for (map, tp) in [(dc.horizontal(p, q), p + 1), (dc.vertical(p, q), p)] {
                if let Some(&(_, to)) = tgt.iter().find(|t| t.0 == tp) {
                    for i in 0..map.rows() {
                        for j in 0..map.cols() {
                            m[to + i][so + j] += map.get(i, j);
                        }
                    }
                }
            }
        }
        (m, cols)
    };
    let mut h = BTreeMap::new();
    for &n in &degrees {
        let (d_out, cols) = total_d(n);
        let (d_in, in_cols) = total_d(n - 1);
        h.insert(n, cols - rank(&d_out, cols) - rank(&d_in, in_cols));
    }
    for n in degrees {
        e1.entry(n).or_insert(0);
    }
    (e1, h)
}

/// All faces of the simplices generated by `maximal`, by dimension.
pub fn faces_of(maximal: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for s in maximal {
        let k = s.len();
        for mask in 1u32..(1 << k) {
            let f: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
            if by_dim.len() < f.len() {
                by_dim.resize_with(f.len(), BTreeSet::new);
            }
            by_dim[f.len() - 1].insert(f);
        }
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Betti numbers of a simplicial complex given by its faces.
pub fn betti(faces: &[Vec<Vec<usize>>]) -> Vec<usize> {
    let index: Vec<BTreeMap<&Vec<usize>, usize>> =
        faces.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
    // boundary ranks: rank of δ^k : C^k -> C^{k+1}
    let ranks: Vec<usize> = (0..faces.len())
        .map(|k| {
            if k + 1 >= faces.len() {
                return 0;
            }
            let mut m = vec![vec![Rat::zero(); faces[k].len()]; faces[k + 1].len()];
            for (r, s) in faces[k + 1].iter().enumerate() {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                    m[r][index[k][&f]] += sign;
                }
            }
            rank(&m, faces[k].len())
        })
        .collect();
    (0..faces.len())
        .map(|k| faces[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

/// Betti numbers of the `G`-cover of the complex generated by `maximal`:
/// vertex `(v, h)` is `v |G| + h`, and a simplex `s = {v0 < ...}` lifts to
/// `{(v_i, h g(v0, v_i))}` with `g(u, v)` the label of the edge `u < v`.
pub fn cover_betti(maximal: &[Vec<usize>], g: &FiniteGroup, labels: &BTreeMap<(usize, usize), usize>) -> Vec<usize> {
    let order = g.order();
    let label = |u: usize, v: usize| -> usize {
        match u.cmp(&v) {
            std::cmp::Ordering::Equal => g.identity(),
            std::cmp::Ordering::Less => labels.get(&(u, v)).copied().unwrap_or(g.identity()),
            std::cmp::Ordering::Greater => g.inv(labels.get(&(v, u)).copied().unwrap_or(g.identity())),
        }
    };
    let mut lifted = Vec::new();
    for s in maximal {
        let mut s = s.clone();
        s.sort_unstable();
        for h in 0..order {
            let mut t: Vec<usize> = s.iter().map(|&v| v * order + g.mul(h, label(s[0], v))).collect();
            t.sort_unstable();
            lifted.push(t);
        }
    }
    betti(&faces_of(&lifted))
}
