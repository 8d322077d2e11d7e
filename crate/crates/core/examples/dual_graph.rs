//! The dual graph of a surface divisor computes the top weight of H^2,
//! also after passing to a finite cover.

use l2hodge::arrangement::{assemble_weight_e1, weight_graded_dims};
use l2hodge::graph::{graph_l2_homology, DualGraph};
use l2hodge::harness::commands::lifted;
use l2hodge::harness::corpus;

fn main() -> anyhow::Result<()> {
    for item in corpus::surface_corpus() {
        let i = &item.input;
        let g = DualGraph::from_arrangement(&i.arrangement, i.cover.as_ref())?;
        let h = graph_l2_homology(&g)?;
        let (a, gy) = lifted(i)?;
        let w = weight_graded_dims(&assemble_weight_e1(&a, &gy)?);
        println!("{:40} H_1(graph) = {:4}  Gr^W_4 H^2 = {}", item.name, h.h1_vn.to_string(), w.vn_dim(2, 4));
    }
    Ok(())
}
