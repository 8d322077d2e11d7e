use serde::Serialize;

use crate::linalg::{format_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub label: String,
    pub expected: Option<String>,
    pub computed: Option<String>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub pass: bool,
    /// Label of the first disagreeing entry.
    pub first_mismatch: Option<String>,
}

/// Exact comparison of two labelled tables. A label present on one side only
/// is a mismatch.
pub fn compare(expected: &[(String, Rat)], computed: &[(String, Rat)]) -> ComparisonReport {
    let mut labels: Vec<&String> = expected.iter().map(|e| &e.0).collect();
    for (l, _) in computed {
        if !labels.contains(&l) {
            labels.push(l);
        }
    }
    let find = |t: &[(String, Rat)], l: &str| t.iter().find(|e| e.0 == l).map(|e| e.1.clone());
    let rows: Vec<ComparisonRow> = labels
        .into_iter()
        .map(|l| {
            let (e, c) = (find(expected, l), find(computed, l));
            ComparisonRow {
                label: l.clone(),
                equal: e.is_some() && e == c,
                expected: e.as_ref().map(format_rat),
                computed: c.as_ref().map(format_rat),
            }
        })
        .collect();
    let first_mismatch = rows.iter().find(|r| !r.equal).map(|r| r.label.clone());
    ComparisonReport {
        pass: first_mismatch.is_none(),
        rows,
        first_mismatch,
    }
}

/// Label degree `n` of a Betti vector as `H^n`.
pub fn degree_table(dims: impl IntoIterator<Item = (i64, usize)>) -> Vec<(String, Rat)> {
    dims.into_iter()
        .map(|(n, d)| (format!("H^{n}"), Rat::from_integer(d.into())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn equal_and_perturbed() {
        let a = degree_table([(0, 1), (1, 6)]);
        assert!(compare(&a, &a).pass);
        let mut b = a.clone();
        b[1].1 = rat(5);
        let r = compare(&a, &b);
        assert!(!r.pass);
        assert_eq!(r.first_mismatch.as_deref(), Some("H^1"));
        let r = compare(&a, &a[..1]);
        assert_eq!(r.first_mismatch.as_deref(), Some("H^1"));
    }
}
