//! The command-line operations, each returning a [`Report`]. A report passes
//! when all of its checks pass; errors are either input errors or
//! computational mismatches (see [`Error::is_input_error`]).

use std::collections::BTreeMap;
use std::path::Path;

use crate::arrangement::{
    assemble_weight_e1, check_mhs_table, euler_characteristic, euler_l2, mixed_hodge_numbers, weight_graded_dims,
    Arrangement, GysinData, WeightGraded,
};
use crate::covers::{equivariant_cohomology, induce_arrangement, induce_gysin};
use crate::error::{Error, Result};
use crate::graph::{graph_l2_homology, intersection_form, is_negative_definite, DualGraph, IntersectionForm};
use crate::linalg::{format_rat, rank, Rat};
use crate::ss::{
    abutment_check, cohomology_dims, degeneration_page, froelicher, induced_filtrations, spectral_sequence,
    DoubleComplex, FilteredComplex, SSPage,
};

use super::compare::{compare, degree_table, ComparisonReport};
use super::format::{ArrangementInput, InputFile, SimplicialFile};
use super::generate;
use super::report::Report;
use super::simplicial::{complement_cohomology, SubcomplexSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Last page to compute; `None` computes until degeneration is certain.
    pub pages: Option<usize>,
    /// Barycentric subdivisions used by the simplicial oracle.
    pub subdivide: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            pages: None,
            subdivide: 1,
            seed: 0,
        }
    }
}

pub fn load(path: &Path) -> Result<InputFile> {
    InputFile::parse(&std::fs::read_to_string(path)?)
}

fn arrangement_of(input: &InputFile, command: &str) -> Result<ArrangementInput> {
    match input {
        InputFile::Arrangement(f) => f.parse(),
        _ => Err(Error::Parse(format!("`{command}` expects an arrangement file"))),
    }
}

fn n(x: usize) -> String {
    x.to_string()
}

fn q(x: &Rat) -> String {
    format_rat(x)
}

fn vn(dim: usize, order: usize) -> String {
    q(&Rat::new(dim.into(), order.into()))
}

/// The arrangement the weight machinery runs on: the lifted one when a cover
/// is present.
pub fn lifted(input: &ArrangementInput) -> Result<(Arrangement, GysinData)> {
    match &input.cover {
        None => Ok((input.arrangement.clone(), input.gysin.clone())),
        Some(c) => {
            let a = induce_arrangement(&input.arrangement, c)?;
            let g = induce_gysin(&input.arrangement, &input.gysin, c, &a);
            Ok((a, g))
        }
    }
}

fn mismatch_detail(r: &ComparisonReport) -> String {
    match &r.first_mismatch {
        None => format!("{} entries agree", r.rows.len()),
        Some(label) => {
            let row = r.rows.iter().find(|x| &x.label == label).expect("mismatch has a row");
            format!(
                "first mismatch at {label}: expected {}, computed {}",
                row.expected.as_deref().unwrap_or("-"),
                row.computed.as_deref().unwrap_or("-")
            )
        }
    }
}

/// Betti numbers as an `H^n` table over degrees `0..len`, zero-padded.
fn betti_table(b: &[usize], len: usize) -> Vec<(String, Rat)> {
    degree_table((0..len.max(b.len())).map(|k| (k as i64, b.get(k).copied().unwrap_or(0))))
}

fn weight_totals(w: &WeightGraded) -> Vec<usize> {
    let top = w.totals.keys().max().map_or(0, |&k| k + 1);
    (0..top).map(|k| w.total(k)).collect()
}

/// Weight `E_1`, `E_2 = Gr^W H`, the degeneration page, and the oracle
/// comparison when a simplicial model is attached.
pub fn weights(input: &ArrangementInput, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("weights");
    let (a, g) = lifted(input)?;
    let order = a.group().order();
    let e1 = assemble_weight_e1(&a, &g)?;
    let rows = e1
        .cells()
        .map(|c| {
            let rk = e1.d1(c.p, c.q).map_or(0, |m| rank(m.matrix()));
            vec![n(c.p), n(c.q), n(c.dim()), vn(c.dim(), order), n(rk)]
        })
        .collect();
    rep.table("weight E1 (cell (p,q) = H^(q-2p)(D(p)))", &["p", "q", "dim", "vn_dim", "rank d1 out"], rows);
    let w = weight_graded_dims(&e1);
    let rows = w
        .graded
        .iter()
        .map(|(&(deg, m), &d)| vec![n(deg), n(m), n(d), vn(d, order)])
        .collect();
    rep.table("Gr^W H", &["degree", "weight", "dim", "vn_dim"], rows);

    let f = e1.weight_filtered_complex()?;
    let r_max = opts.pages.unwrap_or_else(|| f.default_r_max());
    let pages = spectral_sequence(&f, r_max)?;
    let total: Vec<(i64, usize)> = cohomology_dims(f.complex()).iter().map(|h| (h.degree, h.dim)).collect();
    rep.check("abutment", abutment_check(&pages, &total), "E_infinity totals equal H(Tot E1)");
    match degeneration_page(&pages) {
        Ok(r0) => rep.check("degenerates at E2", r0 <= 2, format!("degeneration page {r0}")),
        Err(e) if opts.pages.is_some() => rep.notice(format!("degeneration undecided: {e}")),
        Err(e) => return Err(e),
    }
    if w.higher_differential_support {
        rep.notice("some d_r with r >= 2 has nonzero source and target on E2");
    }
    if let Some(m) = &input.model {
        let base = if input.cover.is_some() {
            weight_graded_dims(&assemble_weight_e1(&input.arrangement, &input.gysin)?)
        } else {
            w.clone()
        };
        let oracle = complement_cohomology(&m.complex, &m.divisor, opts.subdivide.max(1))?;
        let computed = weight_totals(&base);
        let len = oracle.len().max(computed.len());
        let cmp = compare(&betti_table(&oracle, len), &betti_table(&computed, len));
        rep.check("oracle abutment", cmp.pass, mismatch_detail(&cmp));
    }
    Ok(rep)
}

/// Mixed Hodge numbers `h^{a,b}` of every `Gr^W_m H^n`.
pub fn hodge(input: &ArrangementInput) -> Result<Report> {
    let mut rep = Report::new("hodge");
    let (a, g) = lifted(input)?;
    let order = a.group().order();
    let t = mixed_hodge_numbers(&a, &g)?;
    let rows = t
        .entries
        .iter()
        .map(|(&(deg, m, x, y), &d)| vec![n(deg), n(m), n(x), n(y), n(d), vn(d, order)])
        .collect();
    rep.table("mixed Hodge numbers", &["degree", "weight", "a", "b", "h^(a,b)", "vn"], rows);
    let w = weight_graded_dims(&assemble_weight_e1(&a, &g)?);
    let totals: Vec<usize> = (0..=2 * a.ambient_dim()).map(|k| w.total(k)).collect();
    rep.check(
        "Hodge symmetry, opposedness and totals",
        check_mhs_table(&t, &totals),
        "h^(a,b) = h^(b,a), a + b = weight, sums equal Gr^W totals",
    );
    Ok(rep)
}

/// Euler characteristic three ways: from the strata, from the `ℓ²` strata of
/// the cover, and from the weight-graded totals.
pub fn euler(input: &ArrangementInput, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("euler");
    let base = euler_characteristic(&input.arrangement);
    let l2 = euler_l2(&input.arrangement, input.cover.as_ref())?;
    let (a, g) = lifted(input)?;
    let from_weights = weight_graded_dims(&assemble_weight_e1(&a, &g)?).euler();
    let mut rows = vec![
        vec!["strata".to_string(), q(&base)],
        vec!["l2 strata".to_string(), q(&l2)],
        vec!["weight totals".to_string(), q(&from_weights)],
    ];
    rep.check("l2 equals base", l2 == base, format!("{} = {}", q(&l2), q(&base)));
    rep.check(
        "weight totals equal base",
        from_weights == base,
        format!("{} = {}", q(&from_weights), q(&base)),
    );
    if let Some(m) = &input.model {
        let b = complement_cohomology(&m.complex, &m.divisor, opts.subdivide.max(1))?;
        let chi: i64 = b.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        let chi = Rat::from_integer(chi.into());
        rows.push(vec!["oracle".to_string(), q(&chi)]);
        rep.check("oracle equals base", chi == base, format!("{} = {}", q(&chi), q(&base)));
    }
    rep.table("euler characteristic", &["route", "value"], rows);
    Ok(rep)
}

fn graph_tables(rep: &mut Report, g: &DualGraph) -> Result<crate::graph::GraphHomology> {
    let h = graph_l2_homology(g)?;
    let order = g.group().order();
    rep.table(
        "dual graph",
        &["vertices", "edges", "group order"],
        vec![vec![n(g.vertices().len()), n(g.edges().len()), n(order)]],
    );
    rep.table(
        "graph homology",
        &["degree", "dim", "vn_dim"],
        vec![vec!["H_0".into(), n(h.h0), q(&h.h0_vn)], vec!["H_1".into(), n(h.h1), q(&h.h1_vn)]],
    );
    for notice in g.notices() {
        rep.notice(notice.clone());
    }
    let chi = Rat::new(g.euler_characteristic().into(), order.into());
    let alt = &h.h0_vn - &h.h1_vn;
    rep.check("H_0 - H_1 equals V - E", alt == chi, format!("{} = {}", q(&alt), q(&chi)));
    Ok(h)
}

fn definiteness(rep: &mut Report, form: &IntersectionForm) {
    let d = is_negative_definite(form);
    rep.table(
        "intersection form",
        &["dim", "negative definite", "radical dim", "pivots"],
        vec![vec![
            n(form.dim()),
            d.negative_definite.to_string(),
            n(d.radical_dim),
            d.pivots.iter().map(q).collect::<Vec<_>>().join(" "),
        ]],
    );
}

/// Dual graph homology; for a surface complement it is compared with the top
/// weight of `H^2`.
pub fn graph(input: &InputFile) -> Result<Report> {
    let mut rep = Report::new("graph");
    match input {
        InputFile::Graph(f) => {
            let (g, form) = f.parse()?;
            graph_tables(&mut rep, &g)?;
            if let Some(form) = form {
                definiteness(&mut rep, &form);
            }
        }
        InputFile::Arrangement(f) => {
            let input = f.parse()?;
            let g = DualGraph::from_arrangement(&input.arrangement, input.cover.as_ref())?;
            let h = graph_tables(&mut rep, &g)?;
            if input.arrangement.ambient_dim() == 2 {
                let (a, gy) = lifted(&input)?;
                let w = weight_graded_dims(&assemble_weight_e1(&a, &gy)?);
                let top = w.vn_dim(2, 4);
                rep.check(
                    "Gr^W_4 H^2 equals H_1(dual graph)",
                    top == h.h1_vn,
                    format!("{} = {}", q(&top), q(&h.h1_vn)),
                );
                match intersection_form(&input.arrangement) {
                    Ok(form) => definiteness(&mut rep, &form),
                    Err(e) => rep.notice(format!("no intersection form: {e}")),
                }
            } else {
                rep.notice("the top-weight comparison applies to surfaces only");
            }
        }
        _ => return Err(Error::Parse("`graph` expects a graph or arrangement file".into())),
    }
    Ok(rep)
}

fn page_rows(pages: &[SSPage]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for page in pages {
        for e in page.entries() {
            if e.dim() > 0 {
                let rk = page.differential(e.p, e.q).map_or(0, |m| rank(m.matrix()));
                rows.push(vec![n(page.r), e.p.to_string(), e.q.to_string(), n(e.dim()), q(&e.vn_dim()), n(rk)]);
            }
        }
    }
    rows
}

/// The spectral sequence of a filtered complex, with the abutment checked
/// against `Gr_F H` computed directly.
pub fn spectral(f: &FilteredComplex, second: Option<&FilteredComplex>, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("ss");
    let r_max = opts.pages.unwrap_or_else(|| f.default_r_max());
    let pages = spectral_sequence(f, r_max)?;
    rep.table("pages", &["r", "p", "q", "dim", "vn_dim", "rank d_r out"], page_rows(&pages));
    let total: Vec<(i64, usize)> = cohomology_dims(f.complex()).iter().map(|h| (h.degree, h.dim)).collect();
    rep.table(
        "cohomology",
        &["degree", "dim"],
        total.iter().map(|&(k, d)| vec![k.to_string(), n(d)]).collect(),
    );
    match degeneration_page(&pages) {
        Ok(r0) => {
            rep.table("degeneration", &["page"], vec![vec![n(r0)]]);
            rep.check("abutment", abutment_check(&pages, &total), "E_infinity totals equal dim H^n");
            let last = pages.last().expect("at least E_0");
            let einf: BTreeMap<(i64, i64), usize> = last
                .entries()
                .filter(|e| e.dim() > 0)
                .map(|e| ((e.p, e.p + e.q), e.dim()))
                .collect();
            let direct = f.graded_cohomology();
            rep.check("E_infinity equals Gr_F H", einf == direct, format!("{} graded pieces", direct.len()));
        }
        Err(e) if opts.pages.is_some() => rep.notice(format!("not degenerate by E_{r_max}: {e}")),
        Err(e) => return Err(e),
    }
    if let Some(w) = second {
        let ind = induced_filtrations(f, w, &pages)?;
        let bad: Vec<String> = ind
            .mismatches()
            .map(|c| format!("E_{}^({},{}) s={}: {} vs {}", c.r, c.p, c.q, c.s, c.direct, c.recurrent))
            .collect();
        rep.check(
            "direct and recurrent induced filtrations agree",
            bad.is_empty(),
            if bad.is_empty() { format!("{} cells", ind.cells.len()) } else { bad.join("; ") },
        );
    }
    Ok(rep)
}

/// Frölicher degeneration: `E_1` totals against the cohomology of the
/// totalization.
pub fn froelicher_report(dc: &DoubleComplex) -> Result<Report> {
    let mut rep = Report::new("froelicher");
    let r = froelicher(dc)?;
    let rows = r
        .h_total
        .iter()
        .map(|(&k, &h)| vec![k.to_string(), n(r.e1_total.get(&k).copied().unwrap_or(0)), n(h)])
        .collect();
    rep.table("totals", &["degree", "E1 total", "dim H(Tot)"], rows);
    rep.table(
        "degeneration",
        &["degenerates at E1", "page"],
        vec![vec![r.degenerates.to_string(), n(r.degeneration_page)]],
    );
    rep.check(
        "degeneration flag matches the page",
        r.degenerates == (r.degeneration_page <= 1),
        "E1 totals equal H(Tot) iff all d_r vanish from E1 on",
    );
    Ok(rep)
}

/// The brute-force oracle: complement cohomology of a simplicial pair, or
/// the cohomology of a cover given by edge labels, computed equivariantly and
/// on the total space.
pub fn oracle(f: &SimplicialFile, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("oracle");
    let x = f.complex()?;
    let group = f.group()?;
    if !f.divisor.is_empty() && !f.edge_labels.is_empty() {
        return Err(Error::Parse("give either a divisor or edge labels, not both".into()));
    }
    let computed: Vec<(String, Rat)> = if let Some(gi) = group {
        let labels = f.labels(&gi)?;
        let l = x.cover_complex(gi.group.clone(), &labels)?;
        let eq = equivariant_cohomology(&l)?;
        let order = gi.group.order();
        let total = x.cover_total_space(&gi.group, &labels)?.cohomology()?;
        let eq_b: Vec<usize> = eq.iter().map(|h| h.dim).collect();
        let len = eq_b.len().max(total.len());
        let eq_dims = betti_table(&eq_b, len);
        let cmp = compare(&betti_table(&total, len), &eq_dims);
        rep.check("equivariant equals total space", cmp.pass, mismatch_detail(&cmp));
        rep.table(
            "cover cohomology",
            &["degree", "dim", "vn_dim"],
            eq.iter().map(|h| vec![h.degree.to_string(), n(h.dim), vn(h.dim, order)]).collect(),
        );
        eq_dims
    } else {
        let d = SubcomplexSpec::new(f.divisor.clone());
        let b = complement_cohomology(&x, &d, opts.subdivide.max(1))?;
        rep.table(
            "complement cohomology",
            &["degree", "dim"],
            b.iter().enumerate().map(|(k, &v)| vec![n(k), n(v)]).collect(),
        );
        betti_table(&b, 0)
    };
    if let Some(exp) = &f.expected {
        let len = exp.len().max(computed.len());
        let padded: Vec<usize> = computed.iter().map(|(_, r)| r.to_integer().try_into().unwrap_or(0)).collect();
        let cmp = compare(&betti_table(exp, len), &betti_table(&padded, len));
        rep.check("expected Betti numbers", cmp.pass, mismatch_detail(&cmp));
    }
    Ok(rep)
}

fn transposition_check(rep: &mut Report, input: &ArrangementInput, opts: &Options) -> Result<()> {
    let a = &input.arrangement;
    if input.cover.is_some() || a.num_divisors() < 2 {
        rep.notice("transposition invariance skipped (cover present or fewer than two divisors)");
        return Ok(());
    }
    let perm = generate::random_transposition(&mut generate::rng(opts.seed), a.num_divisors());
    let before = weight_graded_dims(&assemble_weight_e1(a, &input.gysin)?);
    let pa = a.permute_divisors(&perm)?;
    let pg = input.gysin.permute_divisors(&perm);
    let after = weight_graded_dims(&assemble_weight_e1(&pa, &pg)?);
    rep.check(
        "divisor transposition invariance",
        before.graded == after.graded,
        format!("permutation {perm:?}"),
    );
    Ok(())
}

/// Every cross-validation that applies to the given file.
pub fn check(input: &InputFile, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("check").with_seed(opts.seed);
    match input {
        InputFile::Arrangement(f) => {
            let ai = f.parse()?;
            rep.merge(weights(&ai, opts)?);
            rep.merge(euler(&ai, opts)?);
            let (a, _) = lifted(&ai)?;
            if a.strata().all(|(_, cs)| cs.iter().all(|c| c.compact)) && a.has_hodge() {
                rep.merge(hodge(&ai)?);
            } else {
                rep.notice("mixed Hodge numbers skipped (non-compact strata or no Hodge data)");
            }
            if ai.arrangement.ambient_dim() == 2 {
                rep.merge(graph(input)?);
            }
            transposition_check(&mut rep, &ai, opts)?;
            if let Some(m) = &ai.model {
                let one = complement_cohomology(&m.complex, &m.divisor, 1)?;
                let two = complement_cohomology(&m.complex, &m.divisor, 2)?;
                rep.check("one and two subdivisions agree", one == two, format!("{one:?}"));
            }
        }
        InputFile::Raw(f) => {
            let (w, second) = f.filtered()?;
            rep.merge(spectral(&w, second.as_ref(), opts)?);
        }
        InputFile::Double(f) => rep.merge(froelicher_report(&f.parse()?)?),
        InputFile::Simplicial(f) => rep.merge(oracle(f, opts)?),
        InputFile::Graph(_) => rep.merge(graph(input)?),
    }
    Ok(rep)
}

/// A seeded self-test over random inputs of every kind; `rounds` inputs per
/// kind.
pub fn self_test(seed: u64, rounds: usize) -> Result<Report> {
    let mut rep = Report::new("check").with_seed(seed);
    let mut rng = generate::rng(seed);
    let mut failures: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    let mut fail = |kind: &'static str, what: String| failures.entry(kind).or_default().push(what);

    for i in 0..rounds {
        let f = generate::random_filtered_complex(&mut rng, 12, 4);
        let pages = spectral_sequence(&f, f.default_r_max())?;
        let last = pages.last().expect("pages");
        let einf: BTreeMap<(i64, i64), usize> =
            last.entries().filter(|e| e.dim() > 0).map(|e| ((e.p, e.p + e.q), e.dim())).collect();
        if einf != f.graded_cohomology() {
            fail("filtered complexes", format!("#{i}"));
        }

        let dc = generate::random_double_complex(&mut rng);
        let r = froelicher(&dc)?;
        if r.degenerates != (r.degeneration_page <= 1) {
            fail("double complexes", format!("#{i}"));
        }

        let cover = generate::random_cover(&mut rng);
        match euler_l2(&cover.input.arrangement, cover.input.cover.as_ref()) {
            Ok(_) => {}
            Err(e @ Error::EulerMismatch { .. }) => fail("covers", format!("{}: {e}", cover.name)),
            Err(e) => return Err(e),
        }

        let sc = generate::random_simplicial_cover(&mut rng);
        let l = sc.complex.cover_complex(sc.group.clone(), &sc.labels)?;
        let eq: Vec<usize> = equivariant_cohomology(&l)?.iter().map(|h| h.dim).collect();
        let total = sc.complex.cover_total_space(&sc.group, &sc.labels)?.cohomology()?;
        if eq != total {
            fail("simplicial covers", sc.name.clone());
        }

        let item = generate::random_arrangement(&mut rng);
        let (a, g) = lifted(&item.input)?;
        let f = assemble_weight_e1(&a, &g)?.weight_filtered_complex()?;
        let pages = spectral_sequence(&f, f.default_r_max())?;
        if degeneration_page(&pages)? != 2 {
            fail("arrangements", item.name.clone());
        }
    }
    for kind in ["filtered complexes", "double complexes", "covers", "simplicial covers", "arrangements"] {
        let bad = failures.remove(kind).unwrap_or_default();
        rep.check(
            format!("random {kind}"),
            bad.is_empty(),
            if bad.is_empty() { format!("{rounds} inputs") } else { bad.join("; ") },
        );
    }
    Ok(rep)
}

/// Dispatch a named command on a file.
pub fn run(command: &str, path: Option<&Path>, opts: &Options) -> Result<Report> {
    let Some(path) = path else {
        return match command {
            "check" => self_test(opts.seed, 20),
            _ => Err(Error::Parse(format!("`{command}` needs an input file"))),
        };
    };
    let input = load(path)?;
    match command {
        "weights" => weights(&arrangement_of(&input, command)?, opts),
        "hodge" => hodge(&arrangement_of(&input, command)?),
        "euler" => euler(&arrangement_of(&input, command)?, opts),
        "graph" => graph(&input),
        "ss" => match &input {
            InputFile::Raw(f) => {
                let (w, second) = f.filtered()?;
                spectral(&w, second.as_ref(), opts)
            }
            _ => Err(Error::Parse("`ss` expects a raw complex file".into())),
        },
        "froelicher" => match &input {
            InputFile::Double(f) => froelicher_report(&f.parse()?),
            _ => Err(Error::Parse("`froelicher` expects a double complex file".into())),
        },
        "oracle" => match &input {
            InputFile::Simplicial(f) => oracle(f, opts),
            InputFile::Arrangement(f) => match &f.simplicial {
                Some(s) => oracle(s, opts),
                None => Err(Error::Parse("the arrangement file has no simplicial model".into())),
            },
            _ => Err(Error::Parse("`oracle` expects a simplicial file".into())),
        },
        "check" => check(&input, opts),
        other => Err(Error::Parse(format!("unknown command `{other}`"))),
    }
}
