//! Finite groups given by a multiplication table.
//!
//! Elements are `0..order` and the identity is always `0`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    name: String,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup {
            table: vec![vec![0]],
            inverse: vec![0],
            generators: Vec::new(),
            name: "1".into(),
        }
    }

    /// Close a set of permutations of `0..degree` under composition. The
    /// product `g*h` acts as `g(h(x))`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_indexed(degree, gens).map(|(g, _)| g)
    }

    /// As [`FiniteGroup::from_permutations`], also returning the element
    /// index of each listed permutation.
    pub fn from_permutations_indexed(degree: usize, gens: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Group(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose(g, &elems[i]);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| index[&compose(&elems[i], &elems[j])]).collect())
            .collect();
        let listed: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let mut generators: Vec<usize> = listed.iter().copied().filter(|&g| g != 0).collect();
        generators.dedup();
        let mut grp = Self::from_table_unchecked(table, format!("perm<{}>", gens.len()));
        grp.generators = generators;
        Ok((grp, listed))
    }

    fn from_table_unchecked(table: Vec<Vec<usize>>, name: String) -> Self {
        let n = table.len();
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("inverse exists"))
            .collect();
        let mut g = FiniteGroup {
            table,
            inverse,
            generators: Vec::new(),
            name,
        };
        g.generators = g.greedy_generators();
        g
    }

    /// Validate a multiplication table by brute force (identity at 0,
    /// associativity, inverses, Latin square).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Group("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Group("table is not square with entries in 0..order".into()));
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::Group("element 0 is not the identity".into()));
            }
            if !(0..n).any(|j| table[i][j] == 0 && table[j][i] == 0) {
                return Err(Error::Group(format!("element {i} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Group(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(table, format!("table<{n}>")))
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mut g = Self::from_table_unchecked(table, format!("Z/{n}"));
        g.generators = if n > 1 { vec![1] } else { vec![] };
        g
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        // element (x, y) has index x*nb + y, so (0,0) stays the identity
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb))
                    .collect()
            })
            .collect();
        let mut g = Self::from_table_unchecked(table, format!("{}x{}", a.name, b.name));
        g.generators = a
            .generators
            .iter()
            .map(|&x| x * nb)
            .chain(b.generators.iter().copied())
            .collect();
        g
    }

    /// The symmetric group on three letters.
    pub fn s3() -> Self {
        let mut g = Self::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("valid");
        g.name = "S3".into();
        g
    }

    /// Every group of order at most 6, up to isomorphism.
    pub fn small_groups() -> Vec<FiniteGroup> {
        let mut v: Vec<FiniteGroup> = (1..=6).map(Self::cyclic).collect();
        v.push(Self::direct_product(&Self::cyclic(2), &Self::cyclic(2)));
        v.push(Self::s3());
        v
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// A generating set (empty for the trivial group).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([0usize]);
        for g in 1..self.order() {
            if !span.contains(&g) {
                gens.push(g);
                span = self.closure(&gens).into_iter().collect();
            }
        }
        gens
    }

    /// The subgroup generated by `elems`, sorted.
    pub fn closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([0usize]);
        let mut queue: VecDeque<usize> = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in elems {
                let y = self.mul(g, x);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// All subgroups, found as closures of pairs of elements (every subgroup of
    /// a group of order at most 7 is 2-generated; larger groups get the
    /// 2-generated ones).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in self.elements() {
            for b in a..self.order() {
                found.insert(self.closure(&[a, b]));
            }
        }
        found.into_iter().collect()
    }

    /// Left cosets `gH`, each sorted, ordered by smallest element; the first
    /// coset is `H` itself.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// Permutation of left cosets of `h` induced by left multiplication by `g`.
    pub fn coset_action(&self, h: &[usize], g: usize) -> Vec<usize> {
        let cosets = self.left_cosets(h);
        let mut which = vec![0; self.order()];
        for (k, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = k;
            }
        }
        cosets.iter().map(|c| which[self.mul(g, c[0])]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_groups() {
        for g in FiniteGroup::small_groups() {
            assert!(FiniteGroup::from_table(g.table().to_vec()).is_ok(), "{}", g.name());
            assert_eq!(g.closure(g.generators()).len(), g.order());
        }
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = FiniteGroup::s3();
        assert_eq!(g.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a))));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // Latin square with identity 0 but not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5).is_err());
    }

    #[test]
    fn cosets_partition() {
        let g = FiniteGroup::cyclic(6);
        let h = g.closure(&[3]);
        let cosets = g.left_cosets(&h);
        assert_eq!(cosets.len(), 3);
        assert_eq!(cosets[0], h);
        assert_eq!(g.coset_action(&h, 1), vec![1, 2, 0]);
    }
}
