//! Combinatorial model of a compact complex manifold `X` with a normal
//! crossing divisor `D = D_0 ∪ ... ∪ D_{N-1}`.
//!
//! Strata are keyed by ascending index subsets `I` (the empty subset is `X`
//! itself). Each component of `D_J` has, for every `i ∈ J`, a unique parent
//! component of `D_{J∖{i}}` containing it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub type Subset = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub compact: bool,
    /// `b^0 .. b^{2d}` for a component of complex dimension `d`.
    pub betti: Vec<usize>,
    /// `hodge[k][a] = h^{a, k-a}`.
    pub hodge: Option<Vec<Vec<usize>>>,
}

impl Component {
    pub fn new(id: impl Into<String>, compact: bool, betti: Vec<usize>) -> Self {
        Component {
            id: id.into(),
            compact,
            betti,
            hodge: None,
        }
    }

    pub fn point(id: impl Into<String>) -> Self {
        Component {
            id: id.into(),
            compact: true,
            betti: vec![1],
            hodge: Some(vec![vec![1]]),
        }
    }

    /// A compact curve of genus `g` with its Hodge table.
    pub fn curve(id: impl Into<String>, genus: usize) -> Self {
        Component {
            id: id.into(),
            compact: true,
            betti: vec![1, 2 * genus, 1],
            hodge: Some(vec![vec![1], vec![genus, genus], vec![0, 1, 0]]),
        }
    }

    pub fn with_hodge(mut self, hodge: Vec<Vec<usize>>) -> Self {
        self.hodge = Some(hodge);
        self
    }

    pub fn top_degree(&self) -> usize {
        self.betti.len() - 1
    }

    /// `b^k`, zero outside the range.
    pub fn b(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.betti.get(k as usize).copied().unwrap_or(0)
        }
    }

    pub fn euler(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    fn validate(&self, expected_top: usize, where_: &str) -> Result<()> {
        let bad = |msg: String| Err(Error::Arrangement(format!("{where_} component {:?}: {msg}", self.id)));
        if self.betti.len() != expected_top + 1 {
            return bad(format!("expected {} Betti numbers, got {}", expected_top + 1, self.betti.len()));
        }
        if self.betti[0] != 1 {
            return bad("components are connected, so b^0 must be 1".into());
        }
        if self.compact {
            for k in 0..=expected_top {
                if self.betti[k] != self.betti[expected_top - k] {
                    return bad(format!("Betti numbers violate Poincaré duality at degree {k}"));
                }
            }
        } else if expected_top == 0 {
            return bad("a point cannot be non-compact".into());
        } else if self.betti[expected_top] != 0 {
            return bad("non-compact component must have vanishing top Betti number".into());
        }
        if let Some(h) = &self.hodge {
            if h.len() != self.betti.len() {
                return bad("Hodge table needs one row per degree".into());
            }
            for (k, row) in h.iter().enumerate() {
                if row.len() != k + 1 {
                    return bad(format!("Hodge row {k} needs {} entries", k + 1));
                }
                if row.iter().sum::<usize>() != self.betti[k] {
                    return bad(format!("Hodge numbers in degree {k} do not sum to b^{k}"));
                }
                if self.compact && (0..=k).any(|a| row[a] != row[k - a]) {
                    return bad(format!("Hodge numbers in degree {k} are not symmetric"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parent {
    pub component: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    ambient_dim: usize,
    divisors: Vec<String>,
    strata: BTreeMap<Subset, Vec<Component>>,
    /// `(J, component, i) -> parent in D_{J∖{i}}`.
    parents: BTreeMap<(Subset, usize, usize), Parent>,
    /// `(divisor, component) -> D·D` (surface case).
    self_intersections: BTreeMap<(usize, usize), i64>,
    group: Arc<FiniteGroup>,
    /// Per stratum, one permutation of its components per group element.
    actions: BTreeMap<Subset, Vec<Vec<usize>>>,
}

/// Incremental construction with validation in [`ArrangementBuilder::build`].
#[derive(Clone, Debug)]
pub struct ArrangementBuilder {
    a: Arrangement,
}

impl ArrangementBuilder {
    pub fn new(ambient_dim: usize, divisors: Vec<String>) -> Self {
        ArrangementBuilder {
            a: Arrangement {
                ambient_dim,
                divisors,
                strata: BTreeMap::new(),
                parents: BTreeMap::new(),
                self_intersections: BTreeMap::new(),
                group: Arc::new(FiniteGroup::trivial()),
                actions: BTreeMap::new(),
            },
        }
    }

    pub fn stratum(mut self, subset: Subset, components: Vec<Component>) -> Self {
        self.a.strata.insert(subset, components);
        self
    }

    /// Component `child` of `D_J` lies in component `parent` of `D_{J∖{i}}`.
    pub fn parent(mut self, subset: Subset, child: usize, divisor: usize, parent: usize, multiplicity: usize) -> Self {
        self.a.parents.insert(
            (subset, child, divisor),
            Parent {
                component: parent,
                multiplicity,
            },
        );
        self
    }

    /// Components `children` of `D_{I∪{i}}` lie in component `c` of `D_I`.
    pub fn contains(mut self, subset: &[usize], c: usize, divisor: usize, children: &[(usize, usize)]) -> Self {
        let mut j = subset.to_vec();
        j.push(divisor);
        j.sort_unstable();
        for &(child, mult) in children {
            self = self.parent(j.clone(), child, divisor, c, mult);
        }
        self
    }

    pub fn self_intersection(mut self, divisor: usize, component: usize, value: i64) -> Self {
        self.a.self_intersections.insert((divisor, component), value);
        self
    }

    pub fn group(mut self, group: Arc<FiniteGroup>) -> Self {
        self.a.group = group;
        self
    }

    /// `perms[g]` permutes the components of `D_subset`.
    pub fn action(mut self, subset: Subset, perms: Vec<Vec<usize>>) -> Self {
        self.a.actions.insert(subset, perms);
        self
    }

    pub fn build(mut self) -> Result<Arrangement> {
        self.a.fill_default_parents();
        self.a.validate()?;
        Ok(self.a)
    }
}

fn without(j: &[usize], i: usize) -> Subset {
    j.iter().copied().filter(|&x| x != i).collect()
}

impl Arrangement {
    pub fn builder(ambient_dim: usize, divisors: Vec<String>) -> ArrangementBuilder {
        ArrangementBuilder::new(ambient_dim, divisors)
    }

    fn fill_default_parents(&mut self) {
        // a stratum whose smaller stratum has a single component needs no data
        let keys: Vec<(Subset, usize)> = self
            .strata
            .iter()
            .flat_map(|(j, cs)| (0..cs.len()).map(move |c| (j.clone(), c)))
            .collect();
        for (j, c) in keys {
            for &i in &j {
                let up = without(&j, i);
                if self.strata.get(&up).is_some_and(|cs| cs.len() == 1) {
                    self.parents.entry((j.clone(), c, i)).or_insert(Parent {
                        component: 0,
                        multiplicity: 1,
                    });
                }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.ambient_dim;
        let nd = self.divisors.len();
        match self.strata.get(&Vec::new()) {
            Some(cs) if !cs.is_empty() => {}
            _ => return Err(Error::Arrangement("the ambient stratum (empty subset) is missing".into())),
        }
        for (subset, comps) in &self.strata {
            let label = format!("stratum {subset:?}");
            if subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&i| i >= nd) {
                return Err(Error::Arrangement(format!("{label}: subsets must be ascending divisor indices")));
            }
            if subset.len() > n {
                return Err(Error::Arrangement(format!("{label}: more than {n} divisors cannot meet")));
            }
            for c in comps {
                c.validate(2 * (n - subset.len()), &label)?;
            }
        }
        for (k, comps) in self.strata.iter() {
            if k.is_empty() && comps.iter().any(|c| c.betti.len() != 2 * n + 1) {
                return Err(Error::Arrangement("ambient stratum has the wrong dimension".into()));
            }
        }
        for ((j, c, i), p) in &self.parents {
            let ok_child = self.strata.get(j).is_some_and(|cs| *c < cs.len()) && j.contains(i);
            let up = without(j, *i);
            let ok_parent = self.strata.get(&up).is_some_and(|cs| p.component < cs.len());
            if !ok_child || !ok_parent {
                return Err(Error::Arrangement(format!(
                    "incidence entry for component {c} of stratum {j:?} dropping divisor {i} refers to a missing component"
                )));
            }
            if p.multiplicity == 0 {
                return Err(Error::Arrangement(format!("zero multiplicity in stratum {j:?}")));
            }
        }
        for (j, comps) in &self.strata {
            for c in 0..comps.len() {
                for &i in j {
                    if !self.parents.contains_key(&(j.clone(), c, i)) {
                        return Err(Error::Arrangement(format!(
                            "component {c} of stratum {j:?} has no containing component in stratum {:?}",
                            without(j, i)
                        )));
                    }
                }
            }
        }
        for (j, comps) in &self.strata {
            for c in 0..comps.len() {
                // i-then-j equals j-then-i
                for &a in j {
                    for &b in j {
                        if a >= b {
                            continue;
                        }
                        let via_a = self.parent_of(&without(j, a), self.parent_of(j, c, a).component, b);
                        let via_b = self.parent_of(&without(j, b), self.parent_of(j, c, b).component, a);
                        if via_a.component != via_b.component {
                            return Err(Error::Arrangement(format!(
                                "incidence of component {c} of stratum {j:?} depends on the order of dropping {a} and {b}"
                            )));
                        }
                    }
                }
            }
        }
        for &(i, c) in self.self_intersections.keys() {
            if !self.strata.get(&vec![i]).is_some_and(|cs| c < cs.len()) {
                return Err(Error::Arrangement(format!(
                    "self-intersection given for missing component {c} of divisor {i}"
                )));
            }
        }
        self.validate_actions()
    }

    fn validate_actions(&self) -> Result<()> {
        let g = &self.group;
        for (subset, perms) in &self.actions {
            let Some(comps) = self.strata.get(subset) else {
                return Err(Error::Cover(format!("action given for missing stratum {subset:?}")));
            };
            let m = comps.len();
            if perms.len() != g.order() {
                return Err(Error::Cover(format!("stratum {subset:?}: need one permutation per group element")));
            }
            for p in perms {
                let mut seen = vec![false; m];
                if p.len() != m || p.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
                    return Err(Error::Cover(format!("stratum {subset:?}: {p:?} is not a permutation")));
                }
            }
            for a in g.elements() {
                for b in g.elements() {
                    let ab = g.mul(a, b);
                    if (0..m).any(|x| perms[a][perms[b][x]] != perms[ab][x]) {
                        return Err(Error::Cover(format!("stratum {subset:?}: not a group action")));
                    }
                }
            }
            for (c, comp) in comps.iter().enumerate() {
                for p in perms {
                    let img = &comps[p[c]];
                    if img.betti != comp.betti || img.compact != comp.compact {
                        return Err(Error::Cover(format!(
                            "stratum {subset:?}: the action moves component {c} to a different kind of component"
                        )));
                    }
                }
            }
        }
        for ((j, c, i), par) in &self.parents {
            for gel in g.elements() {
                let gc = self.act(gel, j, *c);
                let gp = self.act(gel, &without(j, *i), par.component);
                let p2 = self.parent_of(j, gc, *i);
                if p2.component != gp || p2.multiplicity != par.multiplicity {
                    return Err(Error::Cover(format!(
                        "stratum {j:?}: the action does not preserve incidence of component {c}"
                    )));
                }
            }
        }
        for (&(i, c), &v) in &self.self_intersections {
            for gel in g.elements() {
                let gc = self.act(gel, &[i], c);
                if self.self_intersections.get(&(i, gc)).is_some_and(|&w| w != v) {
                    return Err(Error::Cover(format!("self-intersections of divisor {i} are not G-invariant")));
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn divisors(&self) -> &[String] {
        &self.divisors
    }

    pub fn num_divisors(&self) -> usize {
        self.divisors.len()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn strata(&self) -> impl Iterator<Item = (&Subset, &Vec<Component>)> {
        self.strata.iter()
    }

    /// Components of `D_I` (empty if the stratum is absent).
    pub fn components(&self, subset: &[usize]) -> &[Component] {
        self.strata.get(subset).map_or(&[], Vec::as_slice)
    }

    /// Strata with `|I| = p`, ascending.
    pub fn strata_of_size(&self, p: usize) -> Vec<&Subset> {
        self.strata.keys().filter(|k| k.len() == p).collect()
    }

    /// Deepest nonempty stratum size.
    pub fn depth(&self) -> usize {
        self.strata
            .iter()
            .filter(|(_, cs)| !cs.is_empty())
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0)
    }

    pub fn parent_of(&self, subset: &[usize], component: usize, divisor: usize) -> Parent {
        self.parents[&(subset.to_vec(), component, divisor)]
    }

    pub fn parents(&self) -> impl Iterator<Item = (&(Subset, usize, usize), &Parent)> {
        self.parents.iter()
    }

    pub fn self_intersection(&self, divisor: usize, component: usize) -> Option<i64> {
        self.self_intersections.get(&(divisor, component)).copied()
    }

    /// Image of component `c` of `D_subset` under group element `g`.
    pub fn act(&self, g: usize, subset: &[usize], c: usize) -> usize {
        self.actions.get(subset).map_or(c, |p| p[g][c])
    }

    pub fn has_action(&self, subset: &[usize]) -> bool {
        self.actions.contains_key(subset)
    }

    pub fn has_hodge(&self) -> bool {
        self.strata.values().flatten().all(|c| c.hodge.is_some())
    }

    /// Relabel divisor `i` as `perm[i]`. Every reported dimension is
    /// invariant under this.
    pub fn permute_divisors(&self, perm: &[usize]) -> Result<Arrangement> {
        let nd = self.divisors.len();
        let mut seen = vec![false; nd];
        if perm.len() != nd || perm.iter().any(|&x| x >= nd || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Arrangement(format!("{perm:?} is not a permutation of the divisors")));
        }
        let map = |s: &[usize]| -> Subset {
            let mut v: Subset = s.iter().map(|&i| perm[i]).collect();
            v.sort_unstable();
            v
        };
        let mut divisors = vec![String::new(); nd];
        for (i, d) in self.divisors.iter().enumerate() {
            divisors[perm[i]] = d.clone();
        }
        Ok(Arrangement {
            ambient_dim: self.ambient_dim,
            divisors,
            strata: self.strata.iter().map(|(k, v)| (map(k), v.clone())).collect(),
            parents: self
                .parents
                .iter()
                .map(|((j, c, i), p)| ((map(j), *c, perm[*i]), *p))
                .collect(),
            self_intersections: self
                .self_intersections
                .iter()
                .map(|(&(i, c), &v)| ((perm[i], c), v))
                .collect(),
            group: self.group.clone(),
            actions: self.actions.iter().map(|(k, v)| (map(k), v.clone())).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn punctured_curve(g: usize, n: usize) -> Arrangement {
        let mut b = Arrangement::builder(1, (0..n).map(|i| format!("p{i}")).collect())
            .stratum(vec![], vec![Component::curve("C", g)]);
        for i in 0..n {
            b = b.stratum(vec![i], vec![Component::point(format!("p{i}"))]);
        }
        b.build().unwrap()
    }

    #[test]
    fn default_incidence_into_single_ambient() {
        let a = punctured_curve(2, 3);
        assert_eq!(a.parent_of(&[1], 0, 1).component, 0);
        assert_eq!(a.depth(), 1);
    }

    #[test]
    fn rejects_asymmetric_betti() {
        let r = Arrangement::builder(1, vec![])
            .stratum(vec![], vec![Component::new("C", true, vec![1, 2, 0])])
            .build();
        assert!(r.is_err());
    }

    #[test]
    fn permuting_divisors_keeps_components() {
        let a = punctured_curve(1, 2);
        let b = a.permute_divisors(&[1, 0]).unwrap();
        assert_eq!(b.divisors(), &["p1".to_string(), "p0".to_string()]);
        assert_eq!(b.components(&[0]).len(), 1);
    }
}
