//! A seeded randomized self-test over every generator, as run by
//! `l2hodge check` without a file.

use l2hodge::harness::commands::self_test;

fn main() -> anyhow::Result<()> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let report = self_test(seed, 10)?;
    print!("{}", report.to_tsv());
    Ok(())
}
