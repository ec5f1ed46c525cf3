//! Proof logs and their text form.
//!
//! ```text
//! c formula php2.cnf
//! r 1 4 3
//! w 2 7
//! ```
//!
//! `r <pos> <neg> <pivot>` resolves occurrence `pos` (containing the pivot)
//! with `neg` (containing its negation); `w <occ> <var>` weakens. Occurrence
//! ids follow [`OccMultiset`](super::OccMultiset) numbering.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::formula::{ClauseMultiset, Var};

use super::rule::MaxResStep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLog {
    pub initial: ClauseMultiset,
    pub steps: Vec<MaxResStep>,
}

impl ProofLog {
    pub fn new(initial: ClauseMultiset, steps: Vec<MaxResStep>) -> Self {
        ProofLog { initial, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn weakenings(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, MaxResStep::Weaken { .. }))
            .count()
    }

    pub fn resolutions(&self) -> usize {
        self.len() - self.weakenings()
    }
}

/// Steps of a text log plus the formula path named in its header, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogText {
    pub formula: Option<String>,
    pub comments: Vec<String>,
    pub steps: Vec<MaxResStep>,
}

pub fn parse_log(text: &str) -> Result<LogText> {
    let mut out = LogText {
        formula: None,
        comments: Vec::new(),
        steps: Vec::new(),
    };
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let mut toks = t.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        let num = |k: usize| -> Result<u64> {
            rest.get(k)
                .ok_or_else(|| Error::parse(lineno, format!("`{head}` expects more fields")))?
                .parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("bad number `{}`", rest[k])))
        };
        let var = |k: usize| -> Result<Var> {
            let v = u32::try_from(num(k)?).map_err(|_| Error::parse(lineno, "variable too large"))?;
            Var::new(v).map_err(|e| Error::parse(lineno, e.to_string()))
        };
        match head {
            "c" => {
                let body = t[1..].trim();
                if let Some(path) = body.strip_prefix("formula ") {
                    out.formula.get_or_insert_with(|| path.trim().to_string());
                }
                out.comments.push(body.to_string());
            }
            "r" => {
                if rest.len() != 3 {
                    return Err(Error::parse(lineno, "expected `r <pos> <neg> <pivot>`"));
                }
                out.steps.push(MaxResStep::Resolve {
                    pos: num(0)? as usize,
                    neg: num(1)? as usize,
                    pivot: var(2)?,
                });
            }
            "w" => {
                if rest.len() != 2 {
                    return Err(Error::parse(lineno, "expected `w <occ> <var>`"));
                }
                out.steps.push(MaxResStep::Weaken {
                    occ: num(0)? as usize,
                    var: var(1)?,
                });
            }
            other => return Err(Error::parse(lineno, format!("unknown step kind `{other}`"))),
        }
    }
    Ok(out)
}

pub fn write_log(steps: &[MaxResStep], formula: Option<&str>, comments: &[String]) -> String {
    let mut out = String::new();
    if let Some(p) = formula {
        let _ = writeln!(out, "c formula {p}");
    }
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    for s in steps {
        let _ = match s {
            MaxResStep::Resolve { pos, neg, pivot } => writeln!(out, "r {pos} {neg} {}", pivot.index()),
            MaxResStep::Weaken { occ, var } => writeln!(out, "w {occ} {}", var.index()),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let steps = vec![
            MaxResStep::Resolve {
                pos: 1,
                neg: 3,
                pivot: Var::from_index(2),
            },
            MaxResStep::Weaken {
                occ: 4,
                var: Var::from_index(5),
            },
        ];
        let text = write_log(&steps, Some("f.cnf"), &["family test".into()]);
        assert_eq!(text, "c formula f.cnf\nc family test\nr 1 3 2\nw 4 5\n");
        let back = parse_log(&text).unwrap();
        assert_eq!(back.steps, steps);
        assert_eq!(back.formula.as_deref(), Some("f.cnf"));
    }

    #[test]
    fn truncated_lines_are_rejected() {
        assert!(matches!(parse_log("r 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_log("c x\nw 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_log("r 1 2 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_log("q 1 2\n").is_err());
    }
}
