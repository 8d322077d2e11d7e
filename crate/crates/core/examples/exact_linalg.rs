//! Exact rational rank and kernels.

use l2hodge::linalg::{format_rat, kernel_basis, rank, RatMatrix};

fn main() {
    let m = RatMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
    println!("rank {}", rank(&m));
    for v in kernel_basis(&m) {
        let v: Vec<String> = v.iter().map(format_rat).collect();
        println!("kernel vector [{}]", v.join(", "));
    }
}
