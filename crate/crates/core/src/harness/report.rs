//! Tabular reports, printed as tab-separated text or as a JSON document.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convention {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub convention: Vec<Convention>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    pub notices: Vec<String>,
}

/// The fixed conventions every report restates.
pub fn convention_block() -> Vec<Convention> {
    [
        ("index order", "divisors in file order; strata subsets ascending; components in file order"),
        (
            "d1 sign",
            "(-1)^(q-2p) (-1)^m, m = position of the dropped index in the ascending subset",
        ),
        ("dual boundary sign", "(-1)^m, m = position of the dropped index"),
        (
            "weight index",
            "E1 cell (p,q) is column -p, row q = H^(q-2p)(D(p)); it carries weight q in H^(q-p)",
        ),
        (
            "dual graph",
            "H1 of the dual graph is compared with Gr^W_4 H^2 (column p = 2) of a surface complement",
        ),
        (
            "coefficients",
            "exact rationals; Q[G] stands in for l2(G), vn_dim = dim_Q / |G|, reduced and unreduced agree",
        ),
    ]
    .into_iter()
    .map(|(k, v)| Convention {
        key: k.into(),
        value: v.into(),
    })
    .collect()
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            seed: None,
            convention: convention_block(),
            tables: Vec::new(),
            checks: Vec::new(),
            notices: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn table(&mut self, name: impl Into<String>, columns: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn notice(&mut self, n: impl Into<String>) {
        self.notices.push(n.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.tables.extend(other.tables);
        self.checks.extend(other.checks);
        self.notices.extend(other.notices);
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# command\t{}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "# seed\t{seed}");
        }
        for c in &self.convention {
            let _ = writeln!(s, "# convention\t{}\t{}", c.key, c.value);
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n## {}", t.name);
            let _ = writeln!(s, "{}", t.columns.join("\t"));
            for r in &t.rows {
                let _ = writeln!(s, "{}", r.join("\t"));
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\n## checks");
            let _ = writeln!(s, "check\tstatus\tdetail");
            for c in &self.checks {
                let _ = writeln!(s, "{}\t{}\t{}", c.name, if c.pass { "pass" } else { "FAIL" }, c.detail);
            }
        }
        for n in &self.notices {
            let _ = writeln!(s, "# notice\t{n}");
        }
        s
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
