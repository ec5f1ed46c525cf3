use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use subcube_core::families::{compose, pebhint, php, pyramid, ChargedGraph, Gadget};
use subcube_core::maxres::{check_viol_invariant, replay};
use subcube_core::oracles::{binomial, bpeb_graph, min_res_width, scs_min_degree, tseitin_level_census};
use subcube_core::subcubesums::check_certificate;
use subcube_core::witnesses::{pebhint_or_maxres_proof, php_scs_proof};
use subcube_core::{CheckOptions, ClauseMultiset, Verdict};

use super::check_options;
use crate::args::{Global, ModeArgs, Sweep};

/// Linear steps per pyramid vertex allowed by the upper-bound check.
const LINEAR_CONSTANT: usize = 8;

pub fn run(g: &Global, sweep: &Sweep) -> Result<u8> {
    let csv = match sweep {
        Sweep::PebhintOrSize { heights } => to_csv(&pebhint_rows(g, heights.clone().collect()))?,
        Sweep::Census { sizes } => to_csv(&census_rows(sizes.clone().collect()))?,
        Sweep::PhpScs { ms } => {
            let rows: Vec<PhpRow> = ms.clone().collect::<Vec<_>>().into_par_iter().map(|m| php_row(g, m)).collect();
            to_csv(&rows)?
        }
        Sweep::Bpeb { heights } => {
            let hs: Vec<usize> = heights.clone().collect();
            let rows: Vec<BpebRow> = hs
                .into_par_iter()
                .map(|h| {
                    let value = bpeb_graph(&pyramid(h)).ok();
                    BpebRow {
                        h,
                        vertices: pyramid(h).len(),
                        bpeb: value,
                        expected: h + 1,
                        status: status(value == Some(h + 1), value.is_none()),
                    }
                })
                .collect();
            to_csv(&rows)?
        }
        Sweep::Degrees { budget } => {
            let rows: Vec<DegreeRow> = degree_families()
                .into_par_iter()
                .map(|(name, f)| degree_row(name, &f, (*budget).into()))
                .collect();
            to_csv(&rows)?
        }
    };
    crate::io::emit(g.out.as_ref(), &csv)?;
    Ok(0)
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn status(ok: bool, missing: bool) -> &'static str {
    match (ok, missing) {
        (_, true) => "error",
        (true, false) => "ok",
        (false, false) => "mismatch",
    }
}

fn mode_name(v: &Verdict) -> String {
    match v.samples {
        Some(k) => format!("sampled:{k}"),
        None => "exhaustive".into(),
    }
}

#[derive(Serialize, Default)]
struct PebhintRow {
    h: usize,
    vertices: usize,
    variables: usize,
    clauses: usize,
    steps: usize,
    resolutions: usize,
    weakenings: usize,
    linear_bound: usize,
    refuted: bool,
    viol_preserved: bool,
    mode: String,
    fit_slope: f64,
    fit_intercept: f64,
    fit_r2: f64,
    status: String,
}

fn pebhint_rows(g: &Global, heights: Vec<usize>) -> Vec<PebhintRow> {
    let mut rows: Vec<PebhintRow> = heights
        .into_par_iter()
        .map(|h| {
            let vertices = pyramid(h).len();
            let mut row = PebhintRow {
                h,
                vertices,
                linear_bound: LINEAR_CONSTANT * vertices,
                ..Default::default()
            };
            let measured = pebhint_or_maxres_proof(h).and_then(|log| {
                let r = replay(&log)?;
                let v = check_viol_invariant(&log, check_options(g, ModeArgs { samples: None }))?;
                Ok((log, r.refuted, v))
            });
            match measured {
                Ok((log, refuted, v)) => {
                    row.variables = log.initial.num_vars();
                    row.clauses = log.initial.len();
                    row.steps = log.len();
                    row.resolutions = log.resolutions();
                    row.weakenings = log.weakenings();
                    row.refuted = refuted;
                    row.viol_preserved = v.pass;
                    row.mode = mode_name(&v);
                    let ok = refuted && v.pass && row.steps <= row.linear_bound;
                    row.status = status(ok, false).into();
                }
                Err(e) => row.status = format!("error: {e}"),
            }
            row
        })
        .collect();
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.status == "ok")
        .map(|r| (r.vertices as f64, r.steps as f64))
        .collect();
    if let Some((slope, intercept, r2)) = linear_fit(&points) {
        for r in &mut rows {
            r.fit_slope = slope;
            r.fit_intercept = intercept;
            r.fit_r2 = r2;
        }
    }
    rows
}

/// Least-squares line through `points`, with its R².
fn linear_fit(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some((slope, intercept, r2))
}

#[derive(Serialize)]
struct CensusRow {
    graph: String,
    vertices: usize,
    edges: usize,
    level: u64,
    count: Option<u64>,
    closed_form: Option<u64>,
    status: String,
}

fn census_rows(sizes: Vec<usize>) -> Vec<CensusRow> {
    let graphs: Vec<(String, ChargedGraph)> = sizes
        .iter()
        .filter(|&&n| n >= 3 && n % 2 == 1)
        .map(|&n| (format!("cycle:{n}"), ChargedGraph::cycle(n)))
        .chain(sizes.iter().filter(|&&n| n >= 2).map(|&n| (format!("complete:{n}"), ChargedGraph::complete(n))))
        .collect();
    graphs
        .into_par_iter()
        .flat_map_iter(|(name, gr)| {
            let (n, m) = (gr.num_vertices, gr.edges.len());
            match tseitin_level_census(&gr) {
                Ok(c) => (1..=n as u64)
                    .filter(|i| i % 2 == 1 || c.levels.contains_key(i))
                    .map(|i| {
                        let count = c.levels.get(&i).copied().unwrap_or(0);
                        let expected = (i % 2 == 1).then(|| binomial(n as u64, i) << (m + 1 - n));
                        CensusRow {
                            graph: name.clone(),
                            vertices: n,
                            edges: m,
                            level: i,
                            count: Some(count),
                            closed_form: expected,
                            status: status(expected == Some(count), false).into(),
                        }
                    })
                    .collect::<Vec<_>>(),
                Err(e) => vec![CensusRow {
                    graph: name,
                    vertices: n,
                    edges: m,
                    level: 0,
                    count: None,
                    closed_form: None,
                    status: format!("skipped: {e}"),
                }],
            }
        })
        .collect()
}

#[derive(Serialize)]
struct PhpRow {
    m: usize,
    variables: usize,
    clauses: usize,
    cubes: usize,
    degree: usize,
    pass: bool,
    mode: String,
    status: String,
}

fn php_row(g: &Global, m: usize) -> PhpRow {
    let cert = php_scs_proof(m);
    let f = php(m);
    let opts: CheckOptions = check_options(g, ModeArgs { samples: None });
    let (pass, mode, st) = match check_certificate(&cert, opts) {
        Ok(v) => (v.pass, mode_name(&v), status(v.pass, false).to_string()),
        Err(e) => (false, String::new(), format!("error: {e}")),
    };
    PhpRow {
        m,
        variables: f.num_vars(),
        clauses: f.len(),
        cubes: cert.cubes.size(),
        degree: cert.degree(),
        pass,
        mode,
        status: st,
    }
}

#[derive(Serialize)]
struct BpebRow {
    h: usize,
    vertices: usize,
    bpeb: Option<usize>,
    expected: usize,
    status: &'static str,
}

#[derive(Serialize)]
struct DegreeRow {
    family: &'static str,
    variables: usize,
    clauses: usize,
    res_width: Option<usize>,
    junta_degree: Option<usize>,
    integral_degree: Option<usize>,
    verified: bool,
    nodes: u64,
    status: String,
}

fn degree_families() -> Vec<(&'static str, ClauseMultiset)> {
    let mut out = vec![
        ("php1", php(1)),
        ("php2", php(2)),
        ("tseitin-triangle", subcube_core::families::tseitin(&ChargedGraph::triangle())),
        ("tseitin-cycle5", subcube_core::families::tseitin(&ChargedGraph::cycle(5))),
        ("tseitin-complete4", subcube_core::families::tseitin(&ChargedGraph::complete(4))),
    ];
    if let Ok(f) = pebhint(&pyramid(1)) {
        out.push(("pebhint-1", f.clone()));
        out.push(("pebhint-or-1", compose(&f, Gadget::Or2)));
    }
    out
}

fn degree_row(family: &'static str, f: &ClauseMultiset, budget: subcube_core::oracles::SearchBudget) -> DegreeRow {
    let mut row = DegreeRow {
        family,
        variables: f.num_vars(),
        clauses: f.len(),
        res_width: min_res_width(f).ok(),
        junta_degree: None,
        integral_degree: None,
        verified: false,
        nodes: 0,
        status: String::new(),
    };
    match scs_min_degree(f, budget) {
        Ok(r) => {
            row.junta_degree = Some(r.junta_degree);
            row.integral_degree = r.integral_degree;
            row.verified = r.verified;
            row.nodes = r.nodes;
            row.status = if r.integral_complete { "ok".into() } else { "budget".into() };
        }
        Err(e) => row.status = format!("error: {e}"),
    }
    row
}
