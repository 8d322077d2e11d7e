//! Invariants over seeded random inputs.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use l2hodge::arrangement::{assemble_weight_e1, euler_l2, mixed_hodge_numbers, weight_graded_dims};
use l2hodge::covers::equivariant_cohomology;
use l2hodge::graph::{is_negative_definite, IntersectionForm};
use l2hodge::group::FiniteGroup;
use l2hodge::harness::commands::lifted;
use l2hodge::harness::format::{DoubleComplexFile, InputFile, RawComplexFile};
use l2hodge::harness::generate;
use l2hodge::harness::simplicial::{complement_cohomology, gauge_transform};
use l2hodge::linalg::{rank, rank_with, EliminationConfig, Rat, RatMatrix};
use l2hodge::ss::{check_page_recursion, cohomology_dims, froelicher, spectral_sequence, DoubleComplex, FilteredComplex};
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn small_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            let rows: Vec<Vec<Rat>> = v.chunks(c).map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
            RatMatrix::from_dense(r, c, &rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn rank_agrees_with_oracle_and_transpose(m in small_matrix()) {
        let dense = EliminationConfig { density_threshold: 0.0 };
        let r = rank(&m);
        prop_assert_eq!(r, common::rank_of(&m));
        prop_assert_eq!(r, rank_with(&m, dense));
        prop_assert_eq!(r, rank(&m.transpose()));
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn pages_satisfy_the_recursion(seed in any::<u64>()) {
        let f = generate::random_filtered_complex(&mut generate::rng(seed), 12, 4);
        let pages = spectral_sequence(&f, f.default_r_max()).unwrap();
        prop_assert!(check_page_recursion(&pages).is_ok());
        // Euler characteristic is constant across pages
        let chi = f.complex().euler_characteristic();
        for page in &pages {
            let page_chi: i64 = f.complex().degrees().map(|n| {
                let d = page.total_dim(n) as i64;
                if n % 2 == 0 { d } else { -d }
            }).sum();
            prop_assert_eq!(page_chi, chi);
        }
    }

    #[test]
    fn trivial_filtration_e1_is_cohomology(seed in any::<u64>()) {
        let f = generate::random_filtered_complex(&mut generate::rng(seed), 10, 3);
        let t = FilteredComplex::trivial(f.complex().clone());
        let pages = spectral_sequence(&t, t.default_r_max()).unwrap();
        for h in cohomology_dims(t.complex()) {
            prop_assert_eq!(pages[1].total_dim(h.degree), h.dim);
        }
    }

    #[test]
    fn raw_file_round_trip(seed in any::<u64>()) {
        let f = generate::random_filtered_complex(&mut generate::rng(seed), 10, 4);
        let text = serde_json::to_string(&RawComplexFile::from_filtered(&f)).unwrap();
        let InputFile::Raw(raw) = InputFile::parse(&text).unwrap() else { panic!("not a raw file") };
        let (g, _) = raw.filtered().unwrap();
        prop_assert_eq!(g.graded_cohomology(), f.graded_cohomology());
    }

    #[test]
    fn froelicher_totals_survive_transposition(seed in any::<u64>()) {
        let dc = generate::random_double_complex(&mut generate::rng(seed));
        let r = froelicher(&dc).unwrap();
        let t = transpose(&dc);
        let rt = froelicher(&t).unwrap();
        prop_assert_eq!(r.h_total, rt.h_total);
    }

    #[test]
    fn double_file_round_trip(seed in any::<u64>()) {
        let dc = generate::random_double_complex(&mut generate::rng(seed));
        let text = serde_json::to_string(&DoubleComplexFile::from_double(&dc)).unwrap();
        let InputFile::Double(f) = InputFile::parse(&text).unwrap() else { panic!("not a double complex file") };
        prop_assert_eq!(froelicher(&f.parse().unwrap()).unwrap(), froelicher(&dc).unwrap());
    }
}

/// `K'^{p,q} = K^{q,p}` with `d'` and `d''` exchanged; the anticommuting
/// convention makes this a double complex with the same total complex.
fn transpose(dc: &DoubleComplex) -> DoubleComplex {
    let dims: BTreeMap<(i64, i64), usize> = dc.cells().map(|(&(p, q), m)| ((q, p), m.dim())).collect();
    let h = dc.cells().map(|(&(p, q), _)| ((q, p), dc.vertical(p, q))).collect();
    let v = dc.cells().map(|(&(p, q), _)| ((q, p), dc.horizontal(p, q))).collect();
    DoubleComplex::from_matrices(&dims, h, v).unwrap()
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn weights_are_invariant_under_divisor_transpositions(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let item = generate::random_arrangement(&mut rng);
        let i = &item.input;
        prop_assume!(i.cover.is_none() && i.arrangement.num_divisors() >= 2);
        let perm = generate::random_transposition(&mut rng, i.arrangement.num_divisors());
        let a = i.arrangement.permute_divisors(&perm).unwrap();
        let g = i.gysin.permute_divisors(&perm);
        let before = weight_graded_dims(&assemble_weight_e1(&i.arrangement, &i.gysin).unwrap());
        let after = weight_graded_dims(&assemble_weight_e1(&a, &g).unwrap());
        prop_assert_eq!(before.graded, after.graded);
    }

    #[test]
    fn weight_totals_give_the_euler_characteristic(seed in any::<u64>()) {
        let item = generate::random_arrangement(&mut generate::rng(seed));
        let (a, g) = lifted(&item.input).unwrap();
        let w = weight_graded_dims(&assemble_weight_e1(&a, &g).unwrap());
        prop_assert_eq!(w.euler(), euler_l2(&item.input.arrangement, item.input.cover.as_ref()).unwrap());
    }

    #[test]
    fn hodge_numbers_refine_weights(seed in any::<u64>()) {
        let item = generate::random_arrangement(&mut generate::rng(seed));
        let (a, g) = lifted(&item.input).unwrap();
        prop_assume!(a.has_hodge());
        let t = mixed_hodge_numbers(&a, &g).unwrap();
        let w = weight_graded_dims(&assemble_weight_e1(&a, &g).unwrap());
        for (&(n, m), &d) in &w.graded {
            prop_assert_eq!(t.weight_total(n, m), d);
        }
        for (&(n, m, x, y), &v) in &t.entries {
            prop_assert_eq!(x + y, m);
            prop_assert_eq!(t.get(n, m, y, x), v);
        }
    }

    #[test]
    fn curve_models_agree_with_the_oracle(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let item = l2hodge::harness::corpus::curve_item(rng.gen_range(0..=1), rng.gen_range(0..=3));
        let m = item.input.model.as_ref().unwrap();
        let w = weight_graded_dims(&assemble_weight_e1(&item.input.arrangement, &item.input.gysin).unwrap());
        let b = complement_cohomology(&m.complex, &m.divisor, 1).unwrap();
        for (k, &d) in b.iter().enumerate() {
            prop_assert_eq!(w.total(k), d);
        }
    }

    #[test]
    fn covers_keep_the_euler_characteristic(seed in any::<u64>()) {
        let item = generate::random_cover(&mut generate::rng(seed));
        let i = &item.input;
        prop_assert_eq!(euler_l2(&i.arrangement, i.cover.as_ref()).unwrap(), euler_l2(&i.arrangement, None).unwrap());
    }

    #[test]
    fn cover_cohomology_is_gauge_invariant(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let sc = generate::random_simplicial_cover(&mut rng);
        let phi: Vec<usize> = (0..sc.complex.vertices()).map(|_| rng.gen_range(0..sc.group.order())).collect();
        let moved = gauge_transform(&sc.group, &sc.labels, sc.complex.faces(1), &phi);
        let dims = |labels| -> Vec<usize> {
            let l = sc.complex.cover_complex(sc.group.clone(), labels).unwrap();
            equivariant_cohomology(&l).unwrap().iter().map(|h| h.dim).collect()
        };
        prop_assert_eq!(dims(&sc.labels), dims(&moved));
    }

    #[test]
    fn definiteness_is_invariant_under_relabelling(k in 1usize..9, shift in 0usize..9) {
        let q = IntersectionForm::a(k);
        let perm: Vec<usize> = (0..k).map(|i| (i + shift) % k).collect();
        let p = q.permuted(&perm);
        prop_assert!(is_negative_definite(&p).negative_definite);
        prop_assert_eq!(is_negative_definite(&p).radical_dim, 0);
    }
}

#[test]
fn small_groups_satisfy_the_axioms() {
    for g in FiniteGroup::small_groups() {
        let g = Arc::new(g);
        let e = g.identity();
        for a in g.elements() {
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(a, g.inv(a)), e);
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }
}
