//! Acceptance criteria, one line each with timing. Runs without the libtest
//! harness so the lines always print; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use l2hodge::arrangement::{
    assemble_weight_e1, euler_characteristic, euler_l2, mixed_hodge_numbers, weight_graded_dims,
};
use l2hodge::covers::equivariant_cohomology;
use l2hodge::graph::{graph_l2_homology, is_negative_definite, DualGraph, IntersectionForm};
use l2hodge::harness::commands::lifted;
use l2hodge::harness::corpus;
use l2hodge::harness::generate;
use l2hodge::harness::simplicial::complement_cohomology;
use l2hodge::linalg::rat;
use l2hodge::ss::{abutment_check, degeneration_page, froelicher, spectral_sequence};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn curve_benchmark() -> Outcome {
    let item = corpus::curve_item(2, 3);
    let i = &item.input;
    let e1 = assemble_weight_e1(&i.arrangement, &i.gysin).map_err(s)?;
    let w = weight_graded_dims(&e1);
    ensure(w.dim(0, 0) == 1 && w.total(0) == 1, || format!("H^0 weights {:?}", w.graded))?;
    ensure(w.dim(1, 1) == 4 && w.dim(1, 2) == 2 && w.total(1) == 6, || format!("H^1 weights {:?}", w.graded))?;
    let chi = euler_l2(&i.arrangement, None).map_err(s)?;
    ensure(chi == rat(-5), || format!("euler_l2 = {chi}"))?;
    let m = i.model.as_ref().ok_or("no model")?;
    let oracle = complement_cohomology(&m.complex, &m.divisor, 1).map_err(s)?;
    ensure(oracle.get(1) == Some(&6), || format!("oracle {oracle:?}"))?;
    let f = e1.weight_filtered_complex().map_err(s)?;
    let pages = spectral_sequence(&f, f.default_r_max()).map_err(s)?;
    let total: Vec<(i64, usize)> = oracle.iter().enumerate().map(|(k, &d)| (k as i64, d)).collect();
    ensure(abutment_check(&pages, &total), || "abutment against the oracle fails".into())?;
    Ok(format!("Gr^W H^1 = 4 + 2, euler -5, oracle {oracle:?}"))
}

fn annulus_benchmark() -> Outcome {
    let item = corpus::curve_item(0, 2);
    let i = &item.input;
    let t = mixed_hodge_numbers(&i.arrangement, &i.gysin).map_err(s)?;
    let h1: BTreeMap<_, _> = t.entries.iter().filter(|(k, _)| k.0 == 1).collect();
    ensure(h1.len() == 1 && t.get(1, 2, 1, 1) == 1, || format!("H^1 table {h1:?}"))?;
    let m = i.model.as_ref().ok_or("no model")?;
    let oracle = complement_cohomology(&m.complex, &m.divisor, 1).map_err(s)?;
    ensure(oracle.get(1) == Some(&1), || format!("oracle {oracle:?}"))?;
    Ok("H^1: h^(1,1) = 1 in weight 2 only; oracle b1 = 1".into())
}

fn weight_degeneration() -> Outcome {
    let mut rng = generate::rng(3);
    let mut paired = 0;
    for k in 0..50 {
        let item = generate::random_arrangement(&mut rng);
        let (a, g) = lifted(&item.input).map_err(s)?;
        let e1 = assemble_weight_e1(&a, &g).map_err(|e| format!("#{k} {}: {e}", item.name))?;
        let f = e1.weight_filtered_complex().map_err(s)?;
        let pages = spectral_sequence(&f, f.default_r_max()).map_err(s)?;
        let r0 = degeneration_page(&pages).map_err(s)?;
        ensure(r0 == 2, || format!("#{k} {}: degeneration page {r0}", item.name))?;
        if let Some(m) = &item.input.model {
            let oracle = complement_cohomology(&m.complex, &m.divisor, 1).map_err(s)?;
            let total: Vec<(i64, usize)> = oracle.iter().enumerate().map(|(k, &d)| (k as i64, d)).collect();
            ensure(abutment_check(&pages, &total), || format!("#{k} {}: oracle abutment", item.name))?;
            paired += 1;
        }
    }
    Ok(format!("50 arrangements, {paired} paired with the oracle"))
}

fn euler_invariance() -> Outcome {
    let mut rng = generate::rng(4);
    for k in 0..100 {
        let item = generate::random_cover(&mut rng);
        let i = &item.input;
        let c = i.cover.as_ref().ok_or("cover missing")?;
        ensure(c.group().order() <= 6, || "group too large".into())?;
        let base = euler_characteristic(&i.arrangement);
        let l2 = euler_l2(&i.arrangement, Some(c)).map_err(|e| format!("#{k} {}: {e}", item.name))?;
        ensure(l2 == base, || format!("#{k} {}: {l2} != {base}", item.name))?;
    }
    Ok("100 covers".into())
}

fn dual_complex_claim() -> Outcome {
    let corpus = corpus::surface_corpus();
    let mut covers = 0;
    for item in &corpus {
        let i = &item.input;
        let g = DualGraph::from_arrangement(&i.arrangement, i.cover.as_ref()).map_err(s)?;
        let h1 = graph_l2_homology(&g).map_err(s)?.h1_vn;
        let (a, gy) = lifted(i).map_err(s)?;
        let top = weight_graded_dims(&assemble_weight_e1(&a, &gy).map_err(s)?).vn_dim(2, 4);
        ensure(top == h1, || format!("{}: Gr^W {top} vs H_1 {h1}", item.name))?;
        covers += usize::from(i.cover.is_some());
    }
    Ok(format!("{} surface inputs, {covers} of them covers", corpus.len()))
}

fn ss_engine() -> Outcome {
    let mut rng = generate::rng(6);
    for k in 0..200 {
        let f = generate::random_filtered_complex(&mut rng, 12, 4);
        let pages = spectral_sequence(&f, f.default_r_max()).map_err(s)?;
        let last = pages.last().ok_or("no pages")?;
        let einf: BTreeMap<(i64, i64), usize> =
            last.entries().filter(|e| e.dim() > 0).map(|e| ((e.p, e.p + e.q), e.dim())).collect();
        let direct = common::graded_cohomology(&f);
        ensure(einf == direct, || format!("#{k}: E_inf {einf:?} vs direct {direct:?}"))?;
    }
    Ok("200 filtered complexes".into())
}

fn equivariant_routes() -> Outcome {
    let mut rng = generate::rng(7);
    for k in 0..100 {
        let sc = generate::random_simplicial_cover(&mut rng);
        let l = sc.complex.cover_complex(sc.group.clone(), &sc.labels).map_err(s)?;
        // both internal routes must agree, or this returns a mismatch error
        let eq: Vec<usize> = equivariant_cohomology(&l)
            .map_err(|e| format!("#{k} {}: {e}", sc.name))?
            .iter()
            .map(|h| h.dim)
            .collect();
        let brute = common::cover_betti(&sc.complex.maximal_faces(), &sc.group, &sc.labels);
        ensure(eq == brute, || format!("#{k} {}: {eq:?} vs total space {brute:?}", sc.name))?;
    }
    Ok("100 covers".into())
}

fn froelicher_detector() -> Outcome {
    let mut rng = generate::rng(8);
    let mut failing = 0;
    for k in 0..100 {
        let dc = generate::random_double_complex(&mut rng);
        let r = froelicher(&dc).map_err(s)?;
        let (e1, h) = common::froelicher_brute(&dc);
        ensure(r.degenerates == (e1 == h), || format!("#{k}: flag {} vs brute {e1:?} {h:?}", r.degenerates))?;
        failing += usize::from(!r.degenerates);
    }
    ensure(froelicher(&corpus::genus2_hodge_double_complex()).map_err(s)?.degenerates, || {
        "genus-2 model does not degenerate".into()
    })?;
    ensure(!froelicher(&corpus::froelicher_counterexample()).map_err(s)?.degenerates, || {
        "counterexample degenerates".into()
    })?;
    Ok(format!("100 double complexes ({failing} non-degenerate), genus 2 and zigzag as expected"))
}

fn intersection_forms() -> Outcome {
    let mut forms: Vec<(String, IntersectionForm)> = (1..=8).map(|k| (format!("A{k}"), IntersectionForm::a(k))).collect();
    forms.extend((1..=8).map(|k| (format!("D{k}"), IntersectionForm::d(k))));
    forms.push(("E8".into(), IntersectionForm::e8()));
    for (name, q) in &forms {
        let d = is_negative_definite(q);
        ensure(d.negative_definite, || format!("{name} not definite"))?;
        ensure(d.pivots.len() == q.dim() && d.pivots.iter().all(|p| *p < rat(0)), || {
            format!("{name} pivots {:?}", d.pivots)
        })?;
    }
    ensure(!is_negative_definite(&IntersectionForm::hyperbolic()).negative_definite, || {
        "hyperbolic form reported definite".into()
    })?;
    Ok(format!("{} Dynkin forms definite, hyperbolic not", forms.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 curve benchmark", Duration::from_secs(1), curve_benchmark),
        ("2 annulus benchmark", Duration::from_secs(1), annulus_benchmark),
        ("3 weight degeneration at E2", Duration::from_secs(30), weight_degeneration),
        ("4 l2 Euler invariance", Duration::from_secs(30), euler_invariance),
        ("5 dual complex and top weight", Duration::from_secs(10), dual_complex_claim),
        ("6 spectral sequence engine", Duration::from_secs(60), ss_engine),
        ("7 equivariant cohomology routes", Duration::from_secs(60), equivariant_routes),
        ("8 Frolicher detector", Duration::from_secs(30), froelicher_detector),
        ("9 intersection forms", Duration::from_secs(1), intersection_forms),
    ];
    let mut failed = 0;
    for (name, bound, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (status, detail) = match (&outcome, took <= bound) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {bound:?} bound")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        failed += usize::from(status == "FAIL");
        println!("{status} criterion {name:34} {:>9.3}s / {:>3}s  {detail}", took.as_secs_f64(), bound.as_secs());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
