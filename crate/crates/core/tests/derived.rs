//! Worked examples whose expected values come from hand computation or from
//! the brute-force oracles in `common`.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use l2hodge::arrangement::{
    assemble_weight_e1, build_dual_complex, euler_l2, gr0_restriction_image, mixed_hodge_numbers, weight_graded_dims,
};
use l2hodge::covers::{equivariant_cohomology, stratum_vn_dims};
use l2hodge::gmodule::{check_equivariance, GMap, GModule};
use l2hodge::graph::{graph_l2_homology, is_negative_definite, DualGraph, GraphEdge, IntersectionForm};
use l2hodge::group::FiniteGroup;
use l2hodge::harness::corpus;
use l2hodge::harness::simplicial::{complement_cohomology, SimplicialComplex, SubcomplexSpec};
use l2hodge::linalg::{kernel_basis, rank, rat, ratio, RatMatrix};
use l2hodge::ss::{
    abutment_check, cohomology_dims, degeneration_page, froelicher, spectral_sequence, CochainComplex,
    FilteredComplex,
};

#[test]
fn rank_and_kernel_of_a_rank_one_matrix() {
    let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
    assert_eq!(rank(&m), 1);
    assert_eq!(common::rank_of(&m), 1);
    let k = kernel_basis(&m);
    assert_eq!(k.len(), 1);
    // proportional to (2, -1)
    assert_eq!(&k[0][0] * rat(-1), &k[0][1] * rat(2));
}

#[test]
fn coset_module_dimension() {
    let g = Arc::new(FiniteGroup::cyclic(4));
    let m = GModule::cosets(g, &[0, 2]).unwrap();
    assert_eq!(m.dim(), 2);
    assert_eq!(m.vn_dim(), ratio(1, 2));
}

#[test]
fn equivariance_on_the_regular_module() {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let reg = GModule::regular(g.clone());
    let swap = GMap::new(reg.clone(), reg.clone(), RatMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
    assert!(check_equivariance(&swap).unwrap());
    let line = GModule::trivial(g, 1);
    let proj = GMap::new(reg, line, RatMatrix::from_i64(&[&[1, 0]])).unwrap();
    assert!(!check_equivariance(&proj).unwrap());
}

#[test]
fn three_term_complex_against_rank_arithmetic() {
    let d0 = RatMatrix::from_i64(&[&[1, 0], &[2, 0], &[0, 0]]);
    let d1 = RatMatrix::from_i64(&[&[2, -1, 5]]);
    let c = CochainComplex::from_matrices(0, &[2, 3, 1], vec![d0.clone(), d1.clone()]).unwrap();
    let got: Vec<usize> = cohomology_dims(&c).iter().map(|h| h.dim).collect();
    let (r0, r1) = (common::rank_of(&d0), common::rank_of(&d1));
    assert_eq!(got, vec![2 - r0, 3 - r1 - r0, 1 - r1]);
}

#[test]
fn two_step_filtration_matches_filtered_cohomology() {
    // degree 0: a; degree 1: b, c with d a = b; c survives at level 1
    let c = CochainComplex::from_matrices(0, &[1, 2], vec![RatMatrix::from_i64(&[&[1], &[0]])]).unwrap();
    let f = FilteredComplex::from_levels(c, &[vec![0], vec![0, 1]]).unwrap();
    let pages = spectral_sequence(&f, f.default_r_max()).unwrap();
    let last = pages.last().unwrap();
    let einf: BTreeMap<(i64, i64), usize> =
        last.entries().filter(|e| e.dim() > 0).map(|e| ((e.p, e.p + e.q), e.dim())).collect();
    assert_eq!(einf, common::graded_cohomology(&f));
    assert_eq!(einf, BTreeMap::from([((1, 1), 1)]));
}

#[test]
fn surviving_d2_degenerates_at_three() {
    // x (deg 0, level 0) -> y (deg 1, level 2); z (deg 0, level 1) and w (deg 1, level 1) are cycles
    let d = RatMatrix::from_i64(&[&[1, 0], &[0, 0]]);
    let c = CochainComplex::from_matrices(0, &[2, 2], vec![d]).unwrap();
    let f = FilteredComplex::from_levels(c, &[vec![0, 1], vec![2, 1]]).unwrap();
    let pages = spectral_sequence(&f, f.default_r_max()).unwrap();
    // E_1 = E_2: d_1 would go from level 0 to level 1, but d x lies in level 2
    for r in 1..=2 {
        assert_eq!(pages[r].total_dim(0), 2);
        assert_eq!(pages[r].total_dim(1), 2);
    }
    assert_eq!(pages[3].total_dim(0), 1);
    assert_eq!(pages[3].total_dim(1), 1);
    assert_eq!(degeneration_page(&pages).unwrap(), 3);
    assert_eq!(common::graded_cohomology(&f), BTreeMap::from([((1, 0), 1), ((1, 1), 1)]));
}

#[test]
fn abutment_detects_perturbation() {
    let item = corpus::curve_item(2, 3);
    let e1 = assemble_weight_e1(&item.input.arrangement, &item.input.gysin).unwrap();
    let f = e1.weight_filtered_complex().unwrap();
    let pages = spectral_sequence(&f, f.default_r_max()).unwrap();
    let m = item.input.model.as_ref().unwrap();
    let oracle = complement_cohomology(&m.complex, &m.divisor, 1).unwrap();
    let total: Vec<(i64, usize)> = oracle.iter().enumerate().map(|(k, &d)| (k as i64, d)).collect();
    assert!(abutment_check(&pages, &total));
    let mut bad = total.clone();
    bad[1].1 += 1;
    assert!(!abutment_check(&pages, &bad));
}

#[test]
fn froelicher_examples_against_brute_totalization() {
    let g2 = corpus::genus2_hodge_double_complex();
    let r = froelicher(&g2).unwrap();
    assert!(r.degenerates);
    assert_eq!(r.h_total[&1], 4);
    assert_eq!((r.e1_total.clone(), r.h_total.clone()), common::froelicher_brute(&g2));

    let zz = corpus::froelicher_counterexample();
    let r = froelicher(&zz).unwrap();
    assert!(!r.degenerates);
    let (e1, h) = common::froelicher_brute(&zz);
    assert_ne!(e1, h);
    assert_eq!((r.e1_total, r.h_total), (e1, h));
}

#[test]
fn curve_gysin_is_the_degree_map() {
    let (g, n) = (2, 3);
    let a = corpus::punctured_curve(g, n);
    let e1 = assemble_weight_e1(&a, &Default::default()).unwrap();
    assert_eq!(e1.dim(1, 2), n);
    assert_eq!(e1.dim(0, 2), 1);
    let d1 = e1.d1(1, 2).unwrap().matrix();
    assert_eq!(d1.shape(), (1, n));
    assert!((0..n).all(|j| d1.get(0, j) == rat(1) || d1.get(0, j) == rat(-1)));
    assert!((0..n).all(|j| d1.get(0, j) == d1.get(0, 0)));
}

#[test]
fn curve_weights_and_gr0() {
    let a = corpus::punctured_curve(2, 3);
    let e1 = assemble_weight_e1(&a, &Default::default()).unwrap();
    let w = weight_graded_dims(&e1);
    assert_eq!((w.dim(0, 0), w.dim(1, 1), w.dim(1, 2)), (1, 4, 2));
    let gr0 = gr0_restriction_image(&e1);
    assert_eq!((gr0[&1], gr0[&2]), (4, 0));

    let annulus = corpus::punctured_curve(0, 2);
    let w = weight_graded_dims(&assemble_weight_e1(&annulus, &Default::default()).unwrap());
    assert_eq!((w.dim(1, 2), w.dim(1, 1)), (1, 0));
}

#[test]
fn curve_hodge_numbers() {
    for (g, n) in [(0, 2), (1, 1), (2, 3), (3, 4)] {
        let t = mixed_hodge_numbers(&corpus::punctured_curve(g, n), &Default::default()).unwrap();
        assert_eq!(t.get(1, 1, 1, 0), g, "g={g} n={n}");
        assert_eq!(t.get(1, 1, 0, 1), g);
        assert_eq!(t.get(1, 2, 1, 1), n - 1);
        assert_eq!(t.total(1), 2 * g + n - 1);
    }
}

#[test]
fn curve_euler_characteristic_and_covers() {
    let a = corpus::punctured_curve(2, 3);
    assert_eq!(euler_l2(&a, None).unwrap(), rat(2 - 2 * 2 - 3));
    let s3 = Arc::new(FiniteGroup::s3());
    for h in s3.subgroups() {
        let (a, c) = corpus::curve_cover(2, 3, s3.clone(), &h).unwrap();
        assert_eq!(euler_l2(&a, Some(&c)).unwrap(), rat(-5));
    }
}

#[test]
fn triangle_of_curves_has_one_cycle() {
    let (a, _) = corpus::plane_curves(&[1, 1, 1]);
    let dual = build_dual_complex(&a, None).unwrap();
    let dims: Vec<usize> = cohomology_dims(&dual).iter().map(|h| h.dim).collect();
    // degrees -1 (edges) and 0 (vertices): H_1 sits in degree -1
    assert_eq!(dims, vec![1, 1]);
    let g = DualGraph::from_arrangement(&a, None).unwrap();
    assert_eq!(graph_l2_homology(&g).unwrap().h1, 1);
}

#[test]
fn stratum_dimensions() {
    assert_eq!(stratum_vn_dims(3, 1, 6).unwrap(), rat(3));
    // free Z/2 orbit: regular module per Betti unit
    assert_eq!(stratum_vn_dims(2, 1, 2).unwrap(), rat(2));
}

#[test]
fn circle_covers() {
    let circle = SimplicialComplex::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let max = circle.maximal_faces();
    for (twist, want) in [(1, vec![1, 1]), (0, vec![2, 2])] {
        let labels = BTreeMap::from([((0, 2), twist)]);
        let l = circle.cover_complex(z2.clone(), &labels).unwrap();
        let dims: Vec<usize> = equivariant_cohomology(&l).unwrap().iter().map(|h| h.dim).collect();
        assert_eq!(dims, want);
        assert_eq!(common::cover_betti(&max, &z2, &labels), want);
    }
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let l = circle.cover_complex(z3.clone(), &BTreeMap::new()).unwrap();
    let dims: Vec<usize> = equivariant_cohomology(&l).unwrap().iter().map(|h| h.dim).collect();
    assert_eq!(dims, vec![3, 3]);
}

#[test]
fn double_cover_of_a_cycle_graph() {
    let base = DualGraph::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![GraphEdge::new("ab", 0, 1), GraphEdge::new("bc", 1, 2), GraphEdge::new("ca", 2, 0)],
    )
    .unwrap();
    let g = DualGraph::cover(&base, Arc::new(FiniteGroup::cyclic(2)), &[0, 0, 1]).unwrap();
    let h = graph_l2_homology(&g).unwrap();
    assert_eq!((h.h0_vn, h.h1_vn), (ratio(1, 2), ratio(1, 2)));
}

#[test]
fn intersection_forms_by_hand() {
    let pair = IntersectionForm::new(vec!["A".into(), "B".into()], RatMatrix::from_i64(&[&[-2, 1], &[1, -2]])).unwrap();
    let d = is_negative_definite(&pair);
    assert!(d.negative_definite);
    assert_eq!(d.pivots, vec![rat(-2), ratio(-3, 2)]);
    let singular = IntersectionForm::new(vec!["A".into(), "B".into()], RatMatrix::from_i64(&[&[-2, 2], &[2, -2]])).unwrap();
    let d = is_negative_definite(&singular);
    assert!(!d.negative_definite);
    assert_eq!(d.radical_dim, 1);
    assert_eq!(d.pivots.last(), Some(&rat(0)));
}

#[test]
fn oracle_examples() {
    let sphere = corpus::octahedron();
    assert_eq!(sphere.cohomology().unwrap(), vec![1, 0, 1]);
    let b = complement_cohomology(&sphere, &SubcomplexSpec::vertices([0, 5]), 1).unwrap();
    assert_eq!(&b[..2], &[1, 1]);
    let empty = complement_cohomology(&sphere, &SubcomplexSpec::default(), 1).unwrap();
    assert_eq!(empty, sphere.cohomology().unwrap());

    let torus: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    let x = SimplicialComplex::new(7, &torus).unwrap();
    assert_eq!(x.cohomology().unwrap(), common::betti(&common::faces_of(&torus)));
    assert_eq!(x.cohomology().unwrap(), vec![1, 2, 1]);
    let b = complement_cohomology(&x, &SubcomplexSpec::vertices([3]), 1).unwrap();
    assert_eq!(&b[..2], &[1, 2]);
    assert!(b[2..].iter().all(|&v| v == 0));
}

#[test]
fn curve_weights_match_oracle_under_two_subdivisions() {
    for (g, n) in [(0, 2), (1, 2)] {
        let item = corpus::curve_item(g, n);
        let m = item.input.model.as_ref().unwrap();
        let w = weight_graded_dims(&assemble_weight_e1(&item.input.arrangement, &item.input.gysin).unwrap());
        let oracle = complement_cohomology(&m.complex, &m.divisor, 2).unwrap();
        for (k, &b) in oracle.iter().enumerate() {
            assert_eq!(w.total(k), b, "g={g} n={n} degree {k}");
        }
    }
}
