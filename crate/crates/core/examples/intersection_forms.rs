//! Negative definiteness of Dynkin intersection forms, with the pivot
//! certificate.

use l2hodge::graph::{is_negative_definite, IntersectionForm};
use l2hodge::linalg::format_rat;

fn main() {
    let mut forms: Vec<(String, IntersectionForm)> = Vec::new();
    forms.extend((1..=8).map(|k| (format!("A{k}"), IntersectionForm::a(k))));
    forms.extend((4..=8).map(|k| (format!("D{k}"), IntersectionForm::d(k))));
    forms.push(("E8".into(), IntersectionForm::e8()));
    forms.push(("hyperbolic".into(), IntersectionForm::hyperbolic()));
    for (name, q) in forms {
        let d = is_negative_definite(&q);
        let pivots: Vec<String> = d.pivots.iter().map(format_rat).collect();
        println!("{name:10} definite {:5} pivots [{}]", d.negative_definite, pivots.join(", "));
    }
}
