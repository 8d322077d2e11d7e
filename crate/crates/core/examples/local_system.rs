//! Cohomology of a cover from a twisted cochain complex, computed
//! equivariantly and on the total space.

use std::collections::BTreeMap;
use std::sync::Arc;

use l2hodge::covers::equivariant_cohomology;
use l2hodge::group::FiniteGroup;
use l2hodge::harness::simplicial::SimplicialComplex;

fn main() -> anyhow::Result<()> {
    let circle = SimplicialComplex::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]])?;
    for order in [2, 3] {
        let g = Arc::new(FiniteGroup::cyclic(order));
        for twist in [0, 1] {
            let labels = BTreeMap::from([((0, 1), 0), ((1, 2), 0), ((0, 2), twist)]);
            let l = circle.cover_complex(g.clone(), &labels)?;
            let dims: Vec<String> = equivariant_cohomology(&l)?
                .iter()
                .map(|h| format!("H^{} = {} (vn {})", h.degree, h.dim, h.vn_dim))
                .collect();
            println!("Z/{order}, twist {twist}: {}", dims.join(", "));
        }
    }
    Ok(())
}
