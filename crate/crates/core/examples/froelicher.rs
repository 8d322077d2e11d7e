//! Frölicher degeneration: the genus-2 Hodge double complex degenerates at
//! E1, the four-cell zigzag does not.

use l2hodge::harness::corpus;
use l2hodge::ss::froelicher;

fn main() -> anyhow::Result<()> {
    for (name, dc) in [
        ("genus 2", corpus::genus2_hodge_double_complex()),
        ("zigzag", corpus::froelicher_counterexample()),
    ] {
        let r = froelicher(&dc)?;
        println!(
            "{name}: E1 totals {:?}, H(Tot) {:?}, degenerates {} (page {})",
            r.e1_total, r.h_total, r.degenerates, r.degeneration_page
        );
    }
    Ok(())
}
