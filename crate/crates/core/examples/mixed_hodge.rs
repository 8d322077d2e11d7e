//! Mixed Hodge numbers of the annulus and of the complement of three lines
//! in the plane.

use l2hodge::arrangement::mixed_hodge_numbers;
use l2hodge::harness::corpus;

fn main() -> anyhow::Result<()> {
    let annulus = corpus::punctured_curve(0, 2);
    let (lines, gysin) = corpus::plane_curves(&[1, 1, 1]);
    for (name, t) in [
        ("P1 minus two points", mixed_hodge_numbers(&annulus, &Default::default())?),
        ("P2 minus three lines", mixed_hodge_numbers(&lines, &gysin)?),
    ] {
        println!("{name}");
        for (&(n, m, a, b), h) in &t.entries {
            println!("  H^{n} weight {m}: h^({a},{b}) = {h}");
        }
    }
    Ok(())
}
