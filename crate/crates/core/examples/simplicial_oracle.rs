//! Complement cohomology of simplicial pairs by barycentric subdivision.

use l2hodge::harness::corpus;
use l2hodge::harness::simplicial::{complement_cohomology, SimplicialComplex, SubcomplexSpec};

fn main() -> anyhow::Result<()> {
    let sphere = corpus::octahedron();
    let poles = SubcomplexSpec::vertices([0, 5]);
    println!("sphere minus two points: {:?}", complement_cohomology(&sphere, &poles, 1)?);

    let torus: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    let torus = SimplicialComplex::new(7, &torus)?;
    println!("torus: {:?}", torus.cohomology()?);
    for k in [1, 2] {
        let b = complement_cohomology(&torus, &SubcomplexSpec::vertices([0]), k)?;
        println!("torus minus a point, {k} subdivision(s): {b:?}");
    }
    Ok(())
}
