use anyhow::{Context, Result};
use serde_json::{json, Value};
use subcube_core::maxres::{check_trace, replay};
use subcube_core::subcubesums::{check_certificate, ScsCertificate};
use subcube_core::Error;

use super::check_options;
use super::witness::load_log;
use crate::args::{CheckKind, Global};
use crate::config::ExperimentConfig;
use crate::io;

/// Exit 0 on pass, 1 on a failing proof. Unreadable input surfaces as an
/// error, which `main` maps to exit 2.
pub fn run(g: &Global, kind: &CheckKind) -> Result<u8> {
    let (mut out, pass) = match kind {
        CheckKind::Maxres { formula, proof, mode } => {
            let log = load_log(formula.as_deref(), proof)?;
            let cfg = config(g, "maxres", mode.samples).param("proof", proof.display());
            match replay(&log) {
                Err(Error::StepFailed { index, reason }) => {
                    let v = json!({ "pass": false, "step": index, "detail": reason, "config": cfg });
                    (v, false)
                }
                Err(e) => return Err(e).context("replaying proof"),
                Ok(r) => {
                    let verdict = check_trace(log.initial.num_vars(), &r.trace, check_options(g, *mode));
                    let mut v = serde_json::to_value(&verdict)?;
                    let pass = verdict.pass && r.refuted;
                    if verdict.pass && !r.refuted {
                        v["detail"] = "final multiset contains no empty clause".into();
                    }
                    v["pass"] = pass.into();
                    v["refuted"] = r.refuted.into();
                    v["steps"] = r.steps.into();
                    v["final_clauses"] = r.final_multiset.len().into();
                    v["config"] = serde_json::to_value(cfg)?;
                    (v, pass)
                }
            }
        }
        CheckKind::Scs { formula, proof, mode } => {
            let cert = ScsCertificate::new(io::read_cnf(formula)?, io::read_cubes(proof)?)?;
            let verdict = check_certificate(&cert, check_options(g, *mode))?;
            let m = cert.measures();
            let mut v = serde_json::to_value(&verdict)?;
            v["size"] = m.size.into();
            v["degree"] = cert.degree().into();
            let cfg = config(g, "scs", mode.samples)
                .param("formula", formula.display())
                .param("proof", proof.display());
            v["config"] = serde_json::to_value(cfg)?;
            (v, verdict.pass)
        }
    };
    if let Value::Object(map) = &mut out {
        map.retain(|_, v| !v.is_null());
    }
    io::emit(g.out.as_ref(), &io::json_line(&out))?;
    Ok(if pass { 0 } else { 1 })
}

fn config(g: &Global, kind: &str, samples: Option<u64>) -> ExperimentConfig {
    let cfg = ExperimentConfig::new("check", g).family(kind);
    match samples {
        Some(k) => cfg.sampled(k),
        None => cfg,
    }
}
