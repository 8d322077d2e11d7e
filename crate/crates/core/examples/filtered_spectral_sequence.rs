//! Pages of a filtered complex where `d_2` is the first nonzero differential.

use l2hodge::linalg::RatMatrix;
use l2hodge::ss::{degeneration_page, spectral_sequence, CochainComplex, FilteredComplex};

fn main() -> anyhow::Result<()> {
    // x in degree 0 at level 0 hits y in degree 1 at level 2
    let c = CochainComplex::from_matrices(0, &[1, 1], vec![RatMatrix::from_i64(&[&[1]])])?;
    let f = FilteredComplex::from_levels(c, &[vec![0], vec![2]])?;
    let pages = spectral_sequence(&f, f.default_r_max())?;
    for page in &pages {
        let cells: Vec<String> = page
            .entries()
            .filter(|e| e.dim() > 0)
            .map(|e| format!("({},{}):{}", e.p, e.q, e.dim()))
            .collect();
        println!("E_{}: {}", page.r, cells.join(" "));
    }
    println!("degenerates at E_{}", degeneration_page(&pages)?);
    println!("Gr_F H = {:?}", f.graded_cohomology());
    Ok(())
}
