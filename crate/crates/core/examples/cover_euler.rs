//! The l2 Euler characteristic of finite covers equals the base value.

use std::sync::Arc;

use l2hodge::arrangement::euler_l2;
use l2hodge::group::FiniteGroup;
use l2hodge::harness::corpus;

fn main() -> anyhow::Result<()> {
    let s3 = Arc::new(FiniteGroup::s3());
    // genus 2 curve minus 3 points, components indexed by cosets of a Z/2
    let h = s3.subgroups().into_iter().find(|h| h.len() == 2).expect("S3 has order 2 subgroups");
    let (a, cover) = corpus::curve_cover(2, 3, s3.clone(), &h)?;
    println!("curve cover over S3: {}", euler_l2(&a, Some(&cover))?);

    let item = corpus::product_cover(1, 1, 0, 2, Arc::new(FiniteGroup::cyclic(3)))?;
    let i = &item.input;
    println!("{}: base {}", item.name, euler_l2(&i.arrangement, None)?);
    println!("{}: l2   {}", item.name, euler_l2(&i.arrangement, i.cover.as_ref())?);
    Ok(())
}
