//! Finite Galois covers described by monodromy on stratum components.
//!
//! A cover `X̃ -> X` with deck group `G`, unramified over `X`, replaces every
//! component `c` of a stratum by the `G`-set of components of its preimage:
//! one orbit, with stabilizer `G_c̃` of a chosen lift, and each lift mapping
//! to `c` as a Galois cover with group `G_c̃`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::arrangement::{Arrangement, Component, GysinData, GysinKey, Subset};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedComponent {
    /// Index of the base component this lies over.
    pub base: usize,
    /// Betti numbers of the lift; derived when omitted (see [`induce_arrangement`]).
    pub betti: Option<Vec<usize>>,
    pub hodge: Option<Vec<Vec<usize>>>,
}

impl LiftedComponent {
    pub fn over(base: usize) -> Self {
        LiftedComponent {
            base,
            betti: None,
            hodge: None,
        }
    }

    pub fn with_betti(mut self, betti: Vec<usize>) -> Self {
        self.betti = Some(betti);
        self
    }

    pub fn with_hodge(mut self, hodge: Vec<Vec<usize>>) -> Self {
        self.hodge = Some(hodge);
        self
    }
}

#[derive(Clone, Debug)]
pub struct StratumLift {
    pub components: Vec<LiftedComponent>,
    /// `(group element, permutation of the lifted components)`; the listed
    /// elements must generate the group.
    pub action: Vec<(usize, Vec<usize>)>,
    /// Stabilizer of the smallest member of each orbit, orbits ordered by
    /// smallest member.
    pub stabilizers: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CoverSpec {
    group: Arc<FiniteGroup>,
    strata: BTreeMap<Subset, StratumLift>,
    /// `(J, lifted component, i) -> lifted parent in D̃_{J∖{i}}`.
    incidence: BTreeMap<(Subset, usize, usize), usize>,
    gysin: GysinData,
    /// Full permutation action per stratum, one permutation per element.
    perms: BTreeMap<Subset, Vec<Vec<usize>>>,
}

/// Extend permutations of some generating elements to all of `group`.
pub fn extend_action(group: &FiniteGroup, given: &[(usize, Vec<usize>)], m: usize) -> Result<Vec<Vec<usize>>> {
    for (g, p) in given {
        let mut seen = vec![false; m];
        if *g >= group.order() || p.len() != m || p.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Cover(format!("{p:?} for element {g} is not a permutation of {m} components")));
        }
    }
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    perms[0] = Some((0..m).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for (g, img) in given {
            let pe = perms[e].clone().expect("visited");
            let composed: Vec<usize> = pe.iter().map(|&x| img[x]).collect();
            let ge = group.mul(*g, e);
            match &perms[ge] {
                None => {
                    perms[ge] = Some(composed);
                    queue.push_back(ge);
                }
                Some(p) if *p != composed => {
                    return Err(Error::Cover("permutations do not define a group action".into()));
                }
                Some(_) => {}
            }
        }
    }
    perms
        .into_iter()
        .map(|p| p.ok_or_else(|| Error::Cover("the listed elements do not generate the group".into())))
        .collect()
}

fn orbits(perms: &[Vec<usize>], m: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for x in 0..m {
        if seen[x] {
            continue;
        }
        let orbit: BTreeSet<usize> = perms.iter().map(|p| p[x]).collect();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

fn stabilizer(perms: &[Vec<usize>], x: usize) -> Vec<usize> {
    (0..perms.len()).filter(|&g| perms[g][x] == x).collect()
}

impl CoverSpec {
    pub fn new(
        group: Arc<FiniteGroup>,
        strata: BTreeMap<Subset, StratumLift>,
        incidence: BTreeMap<(Subset, usize, usize), usize>,
        gysin: GysinData,
    ) -> Result<Self> {
        let mut perms = BTreeMap::new();
        for (s, lift) in &strata {
            if lift.components.is_empty() {
                return Err(Error::Cover(format!("stratum {s:?}: empty list of lifted components")));
            }
            let m = lift.components.len();
            let p = extend_action(&group, &lift.action, m)
                .map_err(|e| Error::Cover(format!("stratum {s:?}: {e}")))?;
            let orbs = orbits(&p, m);
            if orbs.len() != lift.stabilizers.len() {
                return Err(Error::Cover(format!(
                    "stratum {s:?}: {} orbits but {} stabilizers given",
                    orbs.len(),
                    lift.stabilizers.len()
                )));
            }
            for (orb, given) in orbs.iter().zip(&lift.stabilizers) {
                let mut given = given.clone();
                given.sort_unstable();
                given.dedup();
                if stabilizer(&p, orb[0]) != given {
                    return Err(Error::Cover(format!(
                        "stratum {s:?}: stabilizer {given:?} of lifted component {} does not match the action",
                        orb[0]
                    )));
                }
                let b = lift.components[orb[0]].base;
                if orb.iter().any(|&x| lift.components[x].base != b) {
                    return Err(Error::Cover(format!(
                        "stratum {s:?}: an orbit mixes lifts of different base components"
                    )));
                }
            }
            perms.insert(s.clone(), p);
        }
        Ok(CoverSpec {
            group,
            strata,
            incidence,
            gysin,
            perms,
        })
    }

    /// The trivial cover of `a` by the trivial group.
    pub fn trivial(a: &Arrangement) -> Self {
        let group = Arc::new(FiniteGroup::trivial());
        let strata = a
            .strata()
            .filter(|(_, cs)| !cs.is_empty())
            .map(|(s, cs)| {
                (
                    s.clone(),
                    StratumLift {
                        components: (0..cs.len()).map(LiftedComponent::over).collect(),
                        action: Vec::new(),
                        stabilizers: (0..cs.len()).map(|_| vec![0]).collect(),
                    },
                )
            })
            .collect();
        let incidence = a.parents().map(|(k, p)| (k.clone(), p.component)).collect();
        CoverSpec::new(group, strata, incidence, GysinData::new()).expect("trivial cover is valid")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lift(&self, subset: &[usize]) -> Option<&StratumLift> {
        self.strata.get(subset)
    }

    pub fn lifts(&self) -> impl Iterator<Item = (&Subset, &StratumLift)> {
        self.strata.iter()
    }

    /// Explicitly given lifted incidences, `(J, lifted component, i) -> parent`.
    pub fn incidence(&self) -> &BTreeMap<(Subset, usize, usize), usize> {
        &self.incidence
    }

    pub fn permutations(&self, subset: &[usize]) -> Option<&Vec<Vec<usize>>> {
        self.perms.get(subset)
    }

    pub fn gysin(&self) -> &GysinData {
        &self.gysin
    }

    /// Order of the stabilizer of lifted component `x` of `D̃_subset`.
    pub fn stabilizer_order(&self, subset: &[usize], x: usize) -> usize {
        self.perms[subset].iter().filter(|p| p[x] == x).count()
    }
}

/// `b / |G_i|`: the von Neumann dimension of `Q[G/G_i] ⊗ H^k` for a lift
/// with Betti number `b` and stabilizer of order `stabilizer_order`.
pub fn stratum_vn_dims(b: usize, stabilizer_order: usize, group_order: usize) -> Result<Rat> {
    if stabilizer_order == 0 || group_order == 0 || !group_order.is_multiple_of(stabilizer_order) {
        return Err(Error::Cover(format!(
            "stabilizer order {stabilizer_order} does not divide the group order {group_order}"
        )));
    }
    Ok(Rat::new(b.into(), stabilizer_order.into()))
}

fn lifted_betti(base: &Component, lift: &LiftedComponent, s: usize, label: &str) -> Result<Vec<usize>> {
    if let Some(b) = &lift.betti {
        return Ok(b.clone());
    }
    if s == 1 {
        return Ok(base.betti.clone());
    }
    let chi = s as i64 * base.euler();
    match base.top_degree() {
        0 => Err(Error::Cover(format!(
            "{label}: a point cannot have a nontrivial stabilizer in an unramified cover"
        ))),
        2 if base.compact => {
            let b1 = 2 - chi;
            if b1 < 0 {
                return Err(Error::Cover(format!("{label}: Euler characteristic {chi} impossible for a curve")));
            }
            Ok(vec![1, b1 as usize, 1])
        }
        2 => {
            let b1 = 1 - chi;
            if b1 < 0 {
                return Err(Error::Cover(format!("{label}: Euler characteristic {chi} impossible for an open curve")));
            }
            Ok(vec![1, b1 as usize, 0])
        }
        _ => Err(Error::Cover(format!(
            "{label}: Betti numbers of a lift with nontrivial stabilizer must be given"
        ))),
    }
}

fn lifted_hodge(base: &Component, lift: &LiftedComponent, betti: &[usize], s: usize) -> Option<Vec<Vec<usize>>> {
    if lift.hodge.is_some() {
        return lift.hodge.clone();
    }
    if s == 1 && betti == base.betti.as_slice() {
        return base.hodge.clone();
    }
    match betti.len() {
        1 => Some(vec![vec![1]]),
        3 if base.compact => {
            let g = betti[1] / 2;
            Some(vec![vec![1], vec![g, g], vec![0, 1, 0]])
        }
        _ => None,
    }
}

/// The cover as an arrangement over `G`: each stratum component is replaced by
/// its lifts, permuted by the deck group.
///
/// Missing lifted Betti numbers are derived for trivial stabilizers (the lift
/// is isomorphic to its base) and for curves (`χ(lift) = |G_c̃| χ(base)`);
/// every lift must satisfy that Euler relation.
pub fn induce_arrangement(a: &Arrangement, c: &CoverSpec) -> Result<Arrangement> {
    if a.group().order() != 1 {
        return Err(Error::Cover("the base arrangement already carries a group".into()));
    }
    let g = c.group();
    let mut builder = Arrangement::builder(a.ambient_dim(), a.divisors().to_vec()).group(g.clone());
    for (s, comps) in a.strata() {
        if comps.is_empty() {
            continue;
        }
        let label = format!("stratum {s:?}");
        let lift = c
            .lift(s)
            .ok_or_else(|| Error::Cover(format!("{label}: no lifted components given")))?;
        let perms = c.permutations(s).expect("validated");
        let mut covered = vec![0usize; comps.len()];
        for orb in orbits(perms, lift.components.len()) {
            let b = lift.components[orb[0]].base;
            if b >= comps.len() {
                return Err(Error::Cover(format!("{label}: lift refers to missing base component {b}")));
            }
            covered[b] += 1;
        }
        if let Some(b) = covered.iter().position(|&k| k != 1) {
            return Err(Error::Cover(format!(
                "{label}: base component {b} must have exactly one orbit of lifts, found {}",
                covered[b]
            )));
        }
        let mut lifted = Vec::new();
        for (x, lc) in lift.components.iter().enumerate() {
            let base = &comps[lc.base];
            let st = c.stabilizer_order(s, x);
            let betti = lifted_betti(base, lc, st, &label)?;
            let chi: i64 = betti
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            if chi != st as i64 * base.euler() {
                return Err(Error::Cover(format!(
                    "{label}: lift {x} has Euler characteristic {chi}, expected {} x {}",
                    st,
                    base.euler()
                )));
            }
            let hodge = lifted_hodge(base, lc, &betti, st);
            lifted.push(Component {
                id: format!("{}~{x}", base.id),
                compact: base.compact,
                hodge,
                betti,
            });
        }
        builder = builder.stratum(s.clone(), lifted);
        if g.order() > 1 {
            builder = builder.action(s.clone(), perms.clone());
        }
        if s.len() == 1 {
            for (x, lc) in lift.components.iter().enumerate() {
                if let Some(v) = a.self_intersection(s[0], lc.base) {
                    builder = builder.self_intersection(s[0], x, v * c.stabilizer_order(s, x) as i64);
                }
            }
        }
    }
    for (key, parent) in lifted_incidence(a, c)? {
        let (j, x, i) = key;
        let base_c = c.lift(&j).expect("lift").components[x].base;
        let mult = a.parent_of(&j, base_c, i).multiplicity;
        builder = builder.parent(j, x, i, parent, mult);
    }
    builder
        .build()
        .map_err(|e| Error::Cover(format!("induced arrangement is inconsistent: {e}")))
}

fn lifted_incidence(a: &Arrangement, c: &CoverSpec) -> Result<BTreeMap<(Subset, usize, usize), usize>> {
    let g = c.group();
    let mut out: BTreeMap<(Subset, usize, usize), usize> = BTreeMap::new();
    for (j, comps) in a.strata() {
        if j.is_empty() || comps.is_empty() {
            continue;
        }
        let lift = c.lift(j).expect("checked by caller");
        let perms = c.permutations(j).expect("validated");
        for &i in j {
            let up: Subset = j.iter().copied().filter(|&x| x != i).collect();
            let up_lift = c
                .lift(&up)
                .ok_or_else(|| Error::Cover(format!("stratum {up:?}: no lifted components given")))?;
            let up_perms = c.permutations(&up).expect("validated");
            for orb in orbits(perms, lift.components.len()) {
                let x0 = orb[0];
                let base_parent = a.parent_of(j, lift.components[x0].base, i).component;
                let seed = orb
                    .iter()
                    .find_map(|&x| c.incidence.get(&(j.clone(), x, i)).map(|&p| (x, p)));
                let (x, p) = match seed {
                    Some(s) => s,
                    None => {
                        let stab = stabilizer(perms, x0);
                        let cands: Vec<usize> = (0..up_lift.components.len())
                            .filter(|&y| up_lift.components[y].base == base_parent)
                            .filter(|&y| stab.iter().all(|&h| up_perms[h][y] == y))
                            .collect();
                        if cands.len() != 1 {
                            return Err(Error::Cover(format!(
                                "stratum {j:?}: lifted incidence of component {x0} dropping divisor {i} is ambiguous; give it explicitly"
                            )));
                        }
                        (x0, cands[0])
                    }
                };
                for h in g.elements() {
                    let (hx, hp) = (perms[h][x], up_perms[h][p]);
                    let key = (j.clone(), hx, i);
                    if let Some(&given) = c.incidence.get(&key) {
                        if given != hp {
                            return Err(Error::Cover(format!(
                                "stratum {j:?}: lifted incidence is not compatible with the action"
                            )));
                        }
                    }
                    if out.insert(key, hp).is_some_and(|old| old != hp) {
                        return Err(Error::Cover(format!(
                            "stratum {j:?}: stabilizer of component {hx} does not fix its parent"
                        )));
                    }
                }
                if up_lift.components[p].base != base_parent {
                    return Err(Error::Cover(format!(
                        "stratum {j:?}: lifted incidence does not lie over the base incidence"
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// Gysin data for the induced arrangement: blocks given in the cover spec,
/// else the base block when both ends have trivial stabilizer (the lifts are
/// then isomorphic to their base components).
pub fn induce_gysin(a: &Arrangement, base: &GysinData, c: &CoverSpec, lifted: &Arrangement) -> GysinData {
    let mut out = c.gysin().clone();
    let n = a.ambient_dim();
    for (j, comps) in lifted.strata() {
        let p = j.len();
        if p == 0 {
            continue;
        }
        for x in 0..comps.len() {
            for &i in j {
                let up: Subset = j.iter().copied().filter(|&y| y != i).collect();
                let par = lifted.parent_of(j, x, i).component;
                if c.stabilizer_order(j, x) != 1 || c.stabilizer_order(&up, par) != 1 {
                    continue;
                }
                let bx = c.lift(j).expect("lift").components[x].base;
                for q in 2 * p..2 * n {
                    let key = GysinKey {
                        row: q,
                        subset: j.clone(),
                        component: bx,
                        divisor: i,
                    };
                    let lkey = GysinKey { component: x, ..key.clone() };
                    if out.get(&lkey).is_none() {
                        if let Some(m) = base.get(&key) {
                            out.insert(lkey, m.clone());
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn vn_formula() {
        assert_eq!(stratum_vn_dims(2, 2, 2).unwrap(), rat(1));
        assert_eq!(stratum_vn_dims(0, 1, 3).unwrap(), rat(0));
        assert_eq!(stratum_vn_dims(3, 1, 6).unwrap(), rat(3));
        assert!(stratum_vn_dims(1, 4, 6).is_err());
        assert_eq!(stratum_vn_dims(1, 2, 4).unwrap(), ratio(1, 2));
    }

    fn curve_with_point(g: usize) -> Arrangement {
        Arrangement::builder(1, vec!["p".into()])
            .stratum(vec![], vec![Component::curve("C", g)])
            .stratum(vec![0], vec![Component::point("p")])
            .build()
            .unwrap()
    }

    #[test]
    fn connected_double_cover_of_a_pointed_torus() {
        let a = curve_with_point(1);
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let strata = BTreeMap::from([
            (
                vec![],
                StratumLift {
                    components: vec![LiftedComponent::over(0)],
                    action: vec![(1, vec![0])],
                    stabilizers: vec![vec![0, 1]],
                },
            ),
            (
                vec![0],
                StratumLift {
                    components: vec![LiftedComponent::over(0), LiftedComponent::over(0)],
                    action: vec![(1, vec![1, 0])],
                    stabilizers: vec![vec![0]],
                },
            ),
        ]);
        let c = CoverSpec::new(z2, strata, BTreeMap::new(), GysinData::new()).unwrap();
        let lifted = induce_arrangement(&a, &c).unwrap();
        // torus double covers are tori
        assert_eq!(lifted.components(&[])[0].betti, vec![1, 2, 1]);
        assert_eq!(lifted.components(&[0]).len(), 2);
    }

    #[test]
    fn point_with_stabilizer_is_rejected() {
        let a = curve_with_point(1);
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let strata = BTreeMap::from([
            (
                vec![],
                StratumLift {
                    components: vec![LiftedComponent::over(0)],
                    action: vec![(1, vec![0])],
                    stabilizers: vec![vec![0, 1]],
                },
            ),
            (
                vec![0],
                StratumLift {
                    components: vec![LiftedComponent::over(0)],
                    action: vec![(1, vec![0])],
                    stabilizers: vec![vec![0, 1]],
                },
            ),
        ]);
        let c = CoverSpec::new(z2, strata, BTreeMap::new(), GysinData::new()).unwrap();
        assert!(induce_arrangement(&a, &c).is_err());
    }
}
