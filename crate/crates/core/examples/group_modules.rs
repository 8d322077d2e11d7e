//! Small groups, permutation modules and von Neumann dimensions.

use std::sync::Arc;

use l2hodge::gmodule::GModule;
use l2hodge::group::FiniteGroup;

fn main() -> anyhow::Result<()> {
    for g in FiniteGroup::small_groups() {
        let g = Arc::new(g);
        let subgroups = g.subgroups();
        let dims: Vec<String> = subgroups
            .iter()
            .map(|h| GModule::cosets(g.clone(), h).map(|m| m.vn_dim().to_string()))
            .collect::<Result<_, _>>()?;
        println!("{:8} order {}: vn_dim Q[G/H] over subgroups = {}", g.name(), g.order(), dims.join(" "));
    }
    Ok(())
}
