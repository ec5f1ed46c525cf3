use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use subcube_core::dimacs::{write_cnf, write_cubes};
use subcube_core::families::{random_regular_bipartite, subset_cardinality};
use subcube_core::maxres::{parse_log, write_log, ProofLog};
use subcube_core::subcubesums::ScsCertificate;
use subcube_core::witnesses::{
    pebhint_or_maxres_proof, php_scs_proof, pyramid2_pebbling_tree, scs_from_maxresw, size_bound,
    subsetcard_scs_proof, vertex_tables_latex,
};

use crate::args::{Global, WitnessKind};
use crate::config::ExperimentConfig;
use crate::io;

pub fn run(g: &Global, kind: &WitnessKind) -> Result<u8> {
    let cfg = ExperimentConfig::new("witness", g);
    let text = match kind {
        WitnessKind::PhpScs { m } => certificate(&php_scs_proof(*m), cfg.family("php").param("m", m)),
        WitnessKind::SubsetScs { n, formula, emit_latex } => {
            let bg = random_regular_bipartite(*n, g.seed)?;
            let cfg = cfg.family("subset").param("n", n);
            if let Some(p) = formula {
                io::write(p, &write_cnf(&subset_cardinality(&bg)?, &cfg.header()))?;
            }
            if let Some(p) = emit_latex {
                io::write(p, &vertex_tables_latex())?;
            }
            certificate(&subsetcard_scs_proof(&bg)?, cfg)
        }
        WitnessKind::PebhintOr { height, formula } => {
            let log = pebhint_or_maxres_proof(*height)?;
            let cfg = cfg.family("pebhint-or").param("h", height);
            if let Some(p) = formula {
                io::write(p, &write_cnf(&log.initial, &cfg.header()))?;
            }
            let mut comments = cfg.header();
            comments.push(format!("steps {} resolutions {} weakenings {}", log.len(), log.resolutions(), log.weakenings()));
            write_log(&log.steps, formula.as_ref().map(|p| p.display().to_string()).as_deref(), &comments)
        }
        WitnessKind::PyramidTree { formula } => {
            let (f, t) = pyramid2_pebbling_tree();
            let cfg = cfg.family("pebbling").param("h", 2);
            if let Some(p) = formula {
                io::write(p, &write_cnf(&f, &cfg.header()))?;
            }
            let mut out = String::new();
            for line in cfg.header() {
                out.push_str(&format!("; {line}\n"));
            }
            out.push_str(&format!("; size {} leaves {} resolutions {}\n", t.size(), t.leaves(), t.resolutions()));
            out.push_str(&t.to_sexpr());
            out.push('\n');
            out
        }
        WitnessKind::ScsFromLog { formula, log } => {
            let proof = load_log(formula.as_deref(), log)?;
            let cert = scs_from_maxresw(&proof)?;
            let bound = size_bound(proof.initial.len(), proof.initial.num_vars(), proof.len());
            let cfg = cfg.family("scs-from-log").param("log", log.display());
            let mut header = cfg.header();
            header.push(format!("size {} bound {bound}", cert.cubes.size()));
            write_cubes(&cert.cubes, &header)
        }
        WitnessKind::VertexTable => vertex_tables_latex(),
    };
    io::emit(g.out.as_ref(), &text)?;
    Ok(0)
}

fn certificate(cert: &ScsCertificate, cfg: ExperimentConfig) -> String {
    let m = cert.measures();
    let mut header = cfg.header();
    header.push(format!("size {} degree {}", m.size, cert.degree()));
    write_cubes(&cert.cubes, &header)
}

/// Reads a log and its formula: `formula` when given, else the path in the
/// log header, resolved against the log's directory when relative.
pub fn load_log(formula: Option<&Path>, log: &Path) -> Result<ProofLog> {
    let text = io::read(log)?;
    let parsed = parse_log(&text).with_context(|| format!("parsing {}", log.display()))?;
    let path = match (formula, &parsed.formula) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(named)) => resolve(log, named),
        (None, None) => anyhow::bail!("{} names no formula; pass --formula", log.display()),
    };
    Ok(ProofLog::new(io::read_cnf(&path)?, parsed.steps))
}

fn resolve(log: &Path, named: &str) -> PathBuf {
    let p = PathBuf::from(named);
    if p.is_absolute() || p.exists() {
        return p;
    }
    log.parent().map(|d| d.join(&p)).unwrap_or(p)
}
