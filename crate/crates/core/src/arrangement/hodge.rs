//! Mixed Hodge numbers of the complement from the Hodge-graded pieces of the
//! weight `E_1` page.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::rank;

use super::model::Arrangement;
use super::weight::{assemble_weight_e1, GysinData, WeightE1};

/// `(degree n, weight m, a, b) -> h^{a,b}_m` of `Gr^W_m H^n`, as `Q`-dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MHSTable {
    pub group_order: usize,
    pub entries: BTreeMap<(usize, usize, usize, usize), usize>,
}

impl MHSTable {
    pub fn get(&self, n: usize, m: usize, a: usize, b: usize) -> usize {
        self.entries.get(&(n, m, a, b)).copied().unwrap_or(0)
    }

    /// `Σ_{m,a,b} h^{a,b}_m` in degree `n`.
    pub fn total(&self, n: usize) -> usize {
        self.entries.iter().filter(|(k, _)| k.0 == n).map(|(_, &v)| v).sum()
    }

    /// `Σ_{a+b=m} h^{a,b}_m` in degree `n`.
    pub fn weight_total(&self, n: usize, m: usize) -> usize {
        self.entries
            .iter()
            .filter(|(k, _)| k.0 == n && k.1 == m)
            .map(|(_, &v)| v)
            .sum()
    }
}

fn type_indices(e1: &WeightE1, p: usize, q: usize, t: (usize, usize)) -> Vec<usize> {
    e1.cell(p, q)
        .map(|c| {
            c.labels
                .iter()
                .enumerate()
                .filter(|(_, l)| l.hodge == Some(t))
                .map(|(i, _)| i)
                .collect()
        })
        .unwrap_or_default()
}

/// Reject a `d_1` with an entry between different (shifted) Hodge types.
fn check_block_diagonal(e1: &WeightE1) -> Result<()> {
    for (&(p, q), d) in e1.d1_maps() {
        let src = &e1.cell(p, q).expect("cell").labels;
        let tgt = &e1.cell(p - 1, q).expect("cell").labels;
        for (r, row) in d.matrix().sparse_rows().iter().enumerate() {
            for (c, _) in row {
                if src[*c].hodge != tgt[r].hodge {
                    return Err(Error::HodgeMixing(format!(
                        "row {q}, column -{p}: type {:?} of stratum {:?} maps to type {:?} of stratum {:?}",
                        src[*c].hodge, src[*c].subset, tgt[r].hodge, tgt[r].subset
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Hodge numbers of each `Gr^W_m H^n` from the Hodge-type blocks of `d_1`.
pub fn mixed_hodge_numbers_from_e1(e1: &WeightE1) -> Result<MHSTable> {
    if e1.cells().any(|c| c.labels.iter().any(|l| l.hodge.is_none())) {
        return Err(Error::Arrangement("Hodge tables are required on every stratum component".into()));
    }
    check_block_diagonal(e1)?;
    let mut entries = BTreeMap::new();
    for cell in e1.cells() {
        let (p, q) = (cell.p, cell.q);
        for a in 0..=q {
            let t = (a, q - a);
            let here = type_indices(e1, p, q, t);
            if here.is_empty() {
                continue;
            }
            let out = e1.d1(p, q).map_or(0, |d| {
                rank(&d.matrix().select(&type_indices(e1, p - 1, q, t), &here))
            });
            let inc = e1.d1(p + 1, q).map_or(0, |d| {
                rank(&d.matrix().select(&here, &type_indices(e1, p + 1, q, t)))
            });
            let dim = here.len() - out - inc;
            if dim > 0 {
                entries.insert((q - p, q, a, q - a), dim);
            }
        }
    }
    Ok(MHSTable {
        group_order: e1.group().order(),
        entries,
    })
}

pub fn mixed_hodge_numbers(a: &Arrangement, g: &GysinData) -> Result<MHSTable> {
    if a.strata().any(|(_, cs)| cs.iter().any(|c| !c.compact)) {
        return Err(Error::Arrangement(
            "non-compact strata carry no pure Hodge structure; mixed Hodge numbers need compact strata".into(),
        ));
    }
    mixed_hodge_numbers_from_e1(&assemble_weight_e1(a, g)?)
}

/// Opposedness, Hodge symmetry, and totals against `expected_total[n]`.
pub fn check_mhs_table(t: &MHSTable, expected_total: &[usize]) -> bool {
    let opposed = t.entries.keys().all(|&(_, m, a, b)| a + b == m);
    let symmetric = t
        .entries
        .iter()
        .all(|(&(n, m, a, b), &v)| t.get(n, m, b, a) == v);
    let max_n = t.entries.keys().map(|k| k.0).max().unwrap_or(0);
    let totals = (0..expected_total.len().max(max_n + 1))
        .all(|n| t.total(n) == expected_total.get(n).copied().unwrap_or(0));
    opposed && symmetric && totals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::model::Component;

    #[test]
    fn annulus_is_pure_tate() {
        let a = Arrangement::builder(1, vec!["0".into(), "inf".into()])
            .stratum(vec![], vec![Component::curve("P1", 0)])
            .stratum(vec![0], vec![Component::point("0")])
            .stratum(vec![1], vec![Component::point("inf")])
            .build()
            .unwrap();
        let t = mixed_hodge_numbers(&a, &GysinData::new()).unwrap();
        assert_eq!(t.get(1, 2, 1, 1), 1);
        assert_eq!(t.total(1), 1);
        assert!(check_mhs_table(&t, &[1, 1, 0]));
    }

    #[test]
    fn table_checks() {
        let mut t = MHSTable {
            group_order: 1,
            entries: BTreeMap::from([((1, 1, 1, 0), 1), ((1, 1, 0, 1), 1)]),
        };
        assert!(check_mhs_table(&t, &[0, 2]));
        t.entries.insert((1, 1, 1, 0), 2);
        assert!(!check_mhs_table(&t, &[0, 3]));
        let off = MHSTable {
            group_order: 1,
            entries: BTreeMap::from([((1, 2, 0, 1), 1), ((1, 2, 1, 0), 1)]),
        };
        assert!(!check_mhs_table(&off, &[0, 2]));
    }
}
