//! Finite-dimensional rational representations of a finite group and the
//! equivariant maps between them.
//!
//! For a finite deck group the von Neumann dimension of a module is simply
//! `dim_Q / |G|`; the regular module `Q[G]` plays the role of `l^2(G)` and has
//! dimension one.

use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{rat, Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Every element acts as the identity.
    Trivial,
    /// One permutation of the basis per group element: `g e_i = e_{perm[g][i]}`.
    Permutation(Vec<Vec<usize>>),
    /// One matrix per group element.
    Matrices(Vec<RatMatrix>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    dim: usize,
    action: Action,
}

impl GModule {
    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        GModule {
            group,
            dim,
            action: Action::Trivial,
        }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        Self::trivial(group, 0)
    }

    /// `Q[G]` with `g e_h = e_{gh}`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let perms = group
            .elements()
            .map(|g| group.elements().map(|h| group.mul(g, h)).collect())
            .collect();
        GModule {
            dim: group.order(),
            group,
            action: Action::Permutation(perms),
        }
    }

    /// `Q[G/H]`, basis the left cosets of `h` in [`FiniteGroup::left_cosets`] order.
    pub fn cosets(group: Arc<FiniteGroup>, h: &[usize]) -> Result<Self> {
        if !group.is_subgroup(h) {
            return Err(Error::Module(format!("{h:?} is not a subgroup")));
        }
        let perms: Vec<Vec<usize>> = group.elements().map(|g| group.coset_action(h, g)).collect();
        Ok(GModule {
            dim: perms[0].len(),
            group,
            action: Action::Permutation(perms),
        })
    }

    /// `Q[G/H] ⊗ Q^b` with `G` permuting the coset factor only. Basis order:
    /// coset-major.
    pub fn induced_trivial(group: Arc<FiniteGroup>, h: &[usize], b: usize) -> Result<Self> {
        let base = Self::cosets(group.clone(), h)?;
        let Action::Permutation(perms) = &base.action else {
            unreachable!()
        };
        let perms = perms
            .iter()
            .map(|p| {
                (0..p.len() * b)
                    .map(|i| p[i / b] * b + i % b)
                    .collect()
            })
            .collect();
        Ok(GModule {
            dim: base.dim * b,
            group,
            action: Action::Permutation(perms),
        })
    }

    /// Validate one permutation per group element as a homomorphism.
    pub fn from_permutations(group: Arc<FiniteGroup>, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::Module("need one permutation per group element".into()));
        }
        let dim = perms.first().map_or(0, Vec::len);
        for p in &perms {
            let mut seen = vec![false; dim];
            if p.len() != dim || p.iter().any(|&x| x >= dim || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Module(format!("{p:?} is not a permutation")));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..dim).any(|i| perms[g][perms[h][i]] != perms[gh][i]) {
                    return Err(Error::Module(format!(
                        "permutation action is not a homomorphism at ({g},{h})"
                    )));
                }
            }
        }
        Ok(GModule {
            group,
            dim,
            action: Action::Permutation(perms),
        })
    }

    /// Extend permutation images of the group's generators to the whole group,
    /// rejecting data that is not a group action.
    pub fn from_generator_permutations(
        group: Arc<FiniteGroup>,
        dim: usize,
        images: &[Vec<usize>],
    ) -> Result<Self> {
        let gens = group.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::Module(format!(
                "expected {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        perms[0] = Some((0..dim).collect());
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let img = &images[k];
                if img.len() != dim {
                    return Err(Error::Module("generator image has wrong length".into()));
                }
                let pe = perms[e].as_ref().expect("visited");
                let composed: Vec<usize> = pe.iter().map(|&x| img[x]).collect();
                let ge = group.mul(g, e);
                match &perms[ge] {
                    None => {
                        perms[ge] = Some(composed);
                        queue.push_back(ge);
                    }
                    Some(p) if *p != composed => {
                        return Err(Error::Module(
                            "generator permutations do not define a group action".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        let perms = perms.into_iter().map(|p| p.expect("generators generate")).collect();
        Self::from_permutations(group, perms)
    }

    /// Validate one matrix per group element as a homomorphism.
    pub fn from_matrices(group: Arc<FiniteGroup>, dim: usize, mats: Vec<RatMatrix>) -> Result<Self> {
        if mats.len() != group.order() || mats.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Module("need one dim x dim matrix per element".into()));
        }
        if mats[0] != RatMatrix::identity(dim) {
            return Err(Error::Module("identity does not act as the identity".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if mats[g].mul(&mats[h])? != mats[group.mul(g, h)] {
                    return Err(Error::Module(format!("not a homomorphism at ({g},{h})")));
                }
            }
        }
        Ok(GModule {
            group,
            dim,
            action: Action::Matrices(mats),
        })
    }

    pub(crate) fn from_matrices_unchecked(group: Arc<FiniteGroup>, dim: usize, mats: Vec<RatMatrix>) -> Self {
        GModule {
            group,
            dim,
            action: Action::Matrices(mats),
        }
    }

    pub fn direct_sum(parts: &[GModule]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Module("empty direct sum needs a group".into()));
        };
        let group = first.group.clone();
        if parts.iter().any(|m| m.group != group) {
            return Err(Error::Module("direct sum over different groups".into()));
        }
        let dim = parts.iter().map(|m| m.dim).sum();
        if parts.iter().all(|m| m.action == Action::Trivial) {
            return Ok(Self::trivial(group, dim));
        }
        if parts.iter().all(|m| !matches!(m.action, Action::Matrices(_))) {
            let perms = group
                .elements()
                .map(|g| {
                    let mut p = Vec::with_capacity(dim);
                    let mut off = 0;
                    for m in parts {
                        p.extend(m.permutation(g).expect("not a matrix action").iter().map(|x| x + off));
                        off += m.dim;
                    }
                    p
                })
                .collect();
            return Ok(GModule {
                group,
                dim,
                action: Action::Permutation(perms),
            });
        }
        let mats = group
            .elements()
            .map(|g| {
                let mut m = RatMatrix::zeros(dim, dim);
                let mut off = 0;
                for part in parts {
                    m.set_block(off, off, &part.matrix(g));
                    off += part.dim;
                }
                m
            })
            .collect();
        Ok(Self::from_matrices_unchecked(group, dim, mats))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// The basis permutation of `g`, if the action is by permutations.
    pub fn permutation(&self, g: usize) -> Option<Vec<usize>> {
        match &self.action {
            Action::Trivial => Some((0..self.dim).collect()),
            Action::Permutation(p) => Some(p[g].clone()),
            Action::Matrices(_) => None,
        }
    }

    pub fn matrix(&self, g: usize) -> RatMatrix {
        match &self.action {
            Action::Trivial => RatMatrix::identity(self.dim),
            Action::Permutation(p) => {
                RatMatrix::from_triplets(self.dim, self.dim, p[g].iter().enumerate().map(|(i, &j)| (j, i, rat(1))))
                    .expect("permutation in range")
            }
            Action::Matrices(m) => m[g].clone(),
        }
    }

    pub fn act(&self, g: usize, v: &[Rat]) -> Vec<Rat> {
        match &self.action {
            Action::Trivial => v.to_vec(),
            Action::Permutation(p) => {
                let mut out = vec![Rat::from_integer(BigInt::from(0)); self.dim];
                for (i, x) in v.iter().enumerate() {
                    out[p[g][i]] = x.clone();
                }
                out
            }
            Action::Matrices(m) => m[g].apply(v),
        }
    }

    /// Restriction to the trivial subgroup: the underlying `Q`-dimension.
    pub fn restrict_to_trivial(&self) -> usize {
        self.dim
    }

    pub fn vn_dim(&self) -> Rat {
        vn_dim(self)
    }
}

/// `dim_Q(M) / |G|`.
pub fn vn_dim(m: &GModule) -> Rat {
    Rat::new(BigInt::from(m.dim), BigInt::from(m.group.order()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    source: GModule,
    target: GModule,
    matrix: RatMatrix,
}

impl GMap {
    pub fn new(source: GModule, target: GModule, matrix: RatMatrix) -> Result<Self> {
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, modules need {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        if source.group != target.group {
            return Err(Error::Shape("source and target over different groups".into()));
        }
        Ok(GMap {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: GModule, target: GModule) -> Self {
        let matrix = RatMatrix::zeros(target.dim, source.dim);
        GMap {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn compose(&self, first: &GMap) -> Result<GMap> {
        if first.target != self.source {
            return Err(Error::Shape("composition of non-matching maps".into()));
        }
        GMap::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)?)
    }

    pub fn is_equivariant(&self) -> bool {
        check_equivariance(self).unwrap_or(false)
    }
}

/// `matrix * ρ_src(g) == ρ_tgt(g) * matrix` for every generator `g`.
pub fn check_equivariance(f: &GMap) -> Result<bool> {
    let (src, tgt, m) = (&f.source, &f.target, &f.matrix);
    if m.shape() != (tgt.dim, src.dim) || src.group != tgt.group {
        return Err(Error::Shape("map does not fit its modules".into()));
    }
    if src.action == Action::Trivial && tgt.action == Action::Trivial {
        return Ok(true);
    }
    for &g in src.group.generators() {
        if let (Some(ps), Some(pt)) = (src.permutation(g), tgt.permutation(g)) {
            // (M P_s)(pt[i], ps[j]) == (P_t M)(pt[i], ps[j])  <=>  M(i,j) == M(pt[i], ps[j])
            for i in 0..m.rows() {
                for (j, x) in m.row(i) {
                    if m.get(pt[i], ps[*j]) != *x {
                        return Ok(false);
                    }
                }
            }
            // the count of entries is preserved by the bijection, so this suffices
            continue;
        }
        let lhs = m.mul(&src.matrix(g))?;
        let rhs = tgt.matrix(g).mul(m)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn vn_dims() {
        assert_eq!(vn_dim(&GModule::regular(z(3))), rat(1));
        let g4 = z(4);
        let h = g4.closure(&[2]);
        let m = GModule::cosets(g4, &h).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(vn_dim(&m), ratio(1, 2));
        assert_eq!(vn_dim(&GModule::zero(z(5))), rat(0));
    }

    #[test]
    fn equivariance_examples() {
        let reg = GModule::regular(z(2));
        let id = GMap::new(reg.clone(), reg.clone(), RatMatrix::identity(2)).unwrap();
        assert!(check_equivariance(&id).unwrap());
        let swap = GMap::new(reg.clone(), reg.clone(), RatMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(check_equivariance(&swap).unwrap());
        let proj = GMap::new(reg.clone(), reg.clone(), RatMatrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(!check_equivariance(&proj).unwrap());
    }

    #[test]
    fn matrix_and_permutation_checks_agree() {
        let reg = GModule::regular(z(3));
        let mats: Vec<RatMatrix> = (0..3).map(|g| reg.matrix(g)).collect();
        let regm = GModule::from_matrices(z(3), 3, mats).unwrap();
        let m = RatMatrix::from_i64(&[&[1, 2, 3], &[3, 1, 2], &[2, 3, 1]]);
        let a = check_equivariance(&GMap::new(reg.clone(), reg.clone(), m.clone()).unwrap()).unwrap();
        let b = check_equivariance(&GMap::new(regm.clone(), regm.clone(), m).unwrap()).unwrap();
        assert_eq!(a, b);
        let bad = RatMatrix::from_i64(&[&[1, 2, 3], &[0, 1, 2], &[2, 3, 1]]);
        assert!(!check_equivariance(&GMap::new(regm.clone(), regm, bad).unwrap()).unwrap());
    }

    #[test]
    fn generator_images_are_validated() {
        let g = z(2);
        assert!(GModule::from_generator_permutations(g.clone(), 2, &[vec![1, 0]]).is_ok());
        // a 3-cycle cannot be the image of an element of order 2
        assert!(GModule::from_generator_permutations(g, 3, &[vec![1, 2, 0]]).is_err());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let reg = GModule::regular(z(2));
        assert!(GMap::new(reg.clone(), reg, RatMatrix::zeros(3, 2)).is_err());
    }
}
