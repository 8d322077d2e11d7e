//! Weight spectral sequence of a genus-2 curve minus three points, checked
//! against the simplicial oracle.

use l2hodge::arrangement::{assemble_weight_e1, euler_characteristic, weight_graded_dims};
use l2hodge::harness::corpus;
use l2hodge::harness::simplicial::complement_cohomology;
use l2hodge::ss::{degeneration_page, spectral_sequence};

fn main() -> anyhow::Result<()> {
    let item = corpus::curve_item(2, 3);
    let a = &item.input.arrangement;
    let e1 = assemble_weight_e1(a, &item.input.gysin)?;
    for c in e1.cells() {
        println!("E1[{},{}] = {}", c.p, c.q, c.dim());
    }
    let w = weight_graded_dims(&e1);
    for (&(n, m), d) in &w.graded {
        println!("Gr^W_{m} H^{n} = {d}");
    }
    let f = e1.weight_filtered_complex()?;
    let pages = spectral_sequence(&f, f.default_r_max())?;
    println!("degenerates at E_{}", degeneration_page(&pages)?);
    println!("euler characteristic {}", euler_characteristic(a));

    let model = item.input.model.as_ref().expect("curve items carry a model");
    let oracle = complement_cohomology(&model.complex, &model.divisor, 1)?;
    println!("oracle Betti numbers {oracle:?}");
    Ok(())
}
