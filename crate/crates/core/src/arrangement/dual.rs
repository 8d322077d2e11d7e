use std::collections::BTreeMap;

use crate::covers::{induce_arrangement, CoverSpec};
use crate::error::Result;
use crate::gmodule::{GMap, GModule};
use crate::linalg::{rat, RatMatrix};
use crate::ss::CochainComplex;

use super::model::{Arrangement, Subset};

/// Cells of the dual complex in dimension `l`: compact components of the
/// strata `D_I` with `|I| = l + 1`, ordered by subset then component.
fn cells(a: &Arrangement, l: usize) -> Vec<(Subset, usize)> {
    a.strata_of_size(l + 1)
        .into_iter()
        .flat_map(|s| {
            a.components(s)
                .iter()
                .enumerate()
                .filter(|(_, c)| c.compact)
                .map(move |(i, _)| (s.clone(), i))
        })
        .collect()
}

fn module(a: &Arrangement, cells: &[(Subset, usize)]) -> Result<GModule> {
    let g = a.group().clone();
    if g.order() == 1 {
        return Ok(GModule::trivial(g, cells.len()));
    }
    let index: BTreeMap<&(Subset, usize), usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let perms = g
        .elements()
        .map(|x| {
            cells
                .iter()
                .map(|(s, c)| index[&(s.clone(), a.act(x, s, *c))])
                .collect()
        })
        .collect();
    GModule::from_permutations(g, perms)
}

/// The dual complex as a cochain complex: the `l`-chains sit in degree `-l`
/// and the boundary of a cell of `D_J` is `Σ_m (-1)^m` (its parent in
/// `D_{J∖{j_m}}`), restricted to compact parents. With a cover, cells are the
/// lifted components with their permutation action.
pub fn build_dual_complex(a: &Arrangement, cover: Option<&CoverSpec>) -> Result<CochainComplex> {
    let lifted;
    let a = match cover {
        Some(c) => {
            lifted = induce_arrangement(a, c)?;
            &lifted
        }
        None => a,
    };
    let top = (1..=a.ambient_dim()).rev().find(|&p| !cells(a, p - 1).is_empty());
    let Some(top) = top else {
        return Ok(CochainComplex::empty(a.group().clone()));
    };
    let by_l: Vec<Vec<(Subset, usize)>> = (0..top).map(|l| cells(a, l)).collect();
    // degrees -(top-1) .. 0, i.e. l = top-1 down to 0
    let modules: Vec<GModule> = (0..top).rev().map(|l| module(a, &by_l[l])).collect::<Result<_>>()?;
    let mut diffs = Vec::new();
    for l in (1..top).rev() {
        let tgt_index: BTreeMap<&(Subset, usize), usize> =
            by_l[l - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut m = RatMatrix::zeros(by_l[l - 1].len(), by_l[l].len());
        for (col, (j, c)) in by_l[l].iter().enumerate() {
            for (pos, &i) in j.iter().enumerate() {
                let up: Subset = j.iter().copied().filter(|&x| x != i).collect();
                let par = a.parent_of(j, *c, i).component;
                if let Some(&row) = tgt_index.get(&(up, par)) {
                    m.add_to(row, col, &rat(if pos % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        let src = modules[top - 1 - l].clone();
        let tgt = modules[top - l].clone();
        diffs.push(GMap::new(src, tgt, m)?);
    }
    CochainComplex::new(-(top as i64 - 1), modules, diffs)
}
