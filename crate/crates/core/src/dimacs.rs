//! DIMACS CNF and cube-list text formats.
//!
//! A clause multiset is written with one line per occurrence, so
//! multiplicity is encoded by repetition. Cube lists use the same token
//! grammar under a `p cubes <vars> <cubes>` header: each line is the
//! conjunction of its signed literals, terminated by `0`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::formula::{Clause, ClauseMultiset, Cube, CubeMultiset};

/// Parsed body plus the comment lines (without the leading `c `).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub comments: Vec<String>,
}

impl<T> Parsed<T> {
    /// Value of the first `c <key> <value>` comment.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let rest = c.strip_prefix(key)?;
            rest.starts_with(char::is_whitespace).then(|| rest.trim())
        })
    }
}

struct Body {
    header: Option<(String, usize, usize)>,
    rows: Vec<(usize, Vec<i64>)>,
    comments: Vec<String>,
}

fn tokenize(text: &str) -> Result<Body> {
    let mut header = None;
    let mut rows = Vec::new();
    let mut comments = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut start_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t == "%" {
            continue;
        }
        if t == "c" || t.starts_with("c ") || t.starts_with("c\t") {
            comments.push(t[1..].trim().to_string());
            continue;
        }
        if let Some(rest) = t.strip_prefix("p ") {
            if header.is_some() {
                return Err(Error::parse(lineno, "duplicate problem line"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::parse(lineno, "expected `p <kind> <vars> <count>`"));
            }
            let vars = parts[1]
                .parse()
                .map_err(|_| Error::parse(lineno, "bad variable count"))?;
            let count = parts[2]
                .parse()
                .map_err(|_| Error::parse(lineno, "bad item count"))?;
            header = Some((parts[0].to_string(), vars, count));
            continue;
        }
        for tok in t.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad literal `{tok}`")))?;
            if current.is_empty() {
                start_line = lineno;
            }
            if v == 0 {
                rows.push((start_line, std::mem::take(&mut current)));
            } else {
                current.push(v);
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::parse(start_line, "last item not terminated by 0"));
    }
    Ok(Body {
        header,
        rows,
        comments,
    })
}

fn check_header(body: &Body, kind: &str, lines: usize) -> Result<(usize, usize)> {
    match &body.header {
        Some((k, vars, count)) => {
            if k != kind {
                return Err(Error::parse(1, format!("expected `p {kind}`, found `p {k}`")));
            }
            if *count != body.rows.len() {
                return Err(Error::parse(
                    lines,
                    format!("header announces {count} items, found {}", body.rows.len()),
                ));
            }
            Ok((*vars, *count))
        }
        None => Err(Error::parse(1, format!("missing `p {kind}` line"))),
    }
}

pub fn parse_cnf(text: &str) -> Result<Parsed<ClauseMultiset>> {
    let body = tokenize(text)?;
    let (vars, _) = check_header(&body, "cnf", text.lines().count())?;
    let mut clauses = Vec::with_capacity(body.rows.len());
    for (line, row) in &body.rows {
        let c = Clause::from_dimacs(row).map_err(|e| Error::parse(*line, e.to_string()))?;
        if c.max_var() as usize > vars {
            return Err(Error::parse(*line, format!("variable {} exceeds header", c.max_var())));
        }
        clauses.push(c);
    }
    Ok(Parsed {
        value: ClauseMultiset::new(vars, clauses)?,
        comments: body.comments,
    })
}

pub fn parse_cubes(text: &str) -> Result<Parsed<CubeMultiset>> {
    let body = tokenize(text)?;
    let (vars, _) = check_header(&body, "cubes", text.lines().count())?;
    let mut cubes = Vec::with_capacity(body.rows.len());
    for (line, row) in &body.rows {
        let c = Cube::from_dimacs(row).map_err(|e| Error::parse(*line, e.to_string()))?;
        if c.max_var() as usize > vars {
            return Err(Error::parse(*line, format!("variable {} exceeds header", c.max_var())));
        }
        cubes.push(c);
    }
    Ok(Parsed {
        value: CubeMultiset::new(vars, cubes)?,
        comments: body.comments,
    })
}

fn write_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
}

fn write_row(out: &mut String, lits: &[i64]) {
    for l in lits {
        let _ = write!(out, "{l} ");
    }
    out.push_str("0\n");
}

pub fn write_cnf(f: &ClauseMultiset, comments: &[String]) -> String {
    let mut out = String::new();
    write_comments(&mut out, comments);
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.len());
    for c in f.clauses() {
        write_row(&mut out, &c.to_dimacs());
    }
    out
}

pub fn write_cubes(g: &CubeMultiset, comments: &[String]) -> String {
    let mut out = String::new();
    write_comments(&mut out, comments);
    let _ = writeln!(out, "p cubes {} {}", g.num_vars(), g.size());
    for c in g.cubes() {
        write_row(&mut out, &c.to_dimacs());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_multiplicities_and_comments() {
        let text = "c family test\nc m 2\np cnf 2 3\n1 -2 0\n1 -2 0\n0\n";
        let p = parse_cnf(text).unwrap();
        assert_eq!(p.value.len(), 3);
        assert_eq!(p.value.multiplicities().len(), 2);
        assert!(p.value.contains_empty());
        assert_eq!(p.comment_value("m"), Some("2"));
        assert_eq!(p.comment_value("family"), Some("test"));
    }

    #[test]
    fn clause_may_span_lines() {
        let p = parse_cnf("p cnf 3 1\n1 2\n3 0\n").unwrap();
        assert_eq!(p.value.clauses()[0].width(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_cnf("p cnf 2 1\n1 x 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_cnf("p cnf 1 1\n1 2 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_cnf("p cnf 2 1\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_cnf("1 2 0\n").is_err());
        assert!(parse_cnf("p cnf 2 2\n1 2 0\n").is_err());
    }

    #[test]
    fn cube_list_format() {
        let g = CubeMultiset::new(3, vec![Cube::from_dimacs(&[-1, 3]).unwrap(), Cube::full()]).unwrap();
        let text = write_cubes(&g, &["formula php.cnf".to_string()]);
        assert_eq!(text, "c formula php.cnf\np cubes 3 2\n-1 3 0\n0\n");
        let back = parse_cubes(&text).unwrap();
        assert_eq!(back.value, g);
        assert_eq!(back.comment_value("formula"), Some("php.cnf"));
    }

    proptest! {
        #[test]
        fn cnf_roundtrip(rows in proptest::collection::vec(proptest::collection::vec((1i64..=6, any::<bool>()), 0..5), 0..10)) {
            let clauses: Vec<Clause> = rows
                .iter()
                .map(|r| Clause::from_dimacs(&r.iter().map(|&(v, s)| if s { v } else { -v }).collect::<Vec<_>>()).unwrap())
                .collect();
            let f = ClauseMultiset::new(6, clauses).unwrap();
            let back = parse_cnf(&write_cnf(&f, &[])).unwrap().value;
            prop_assert_eq!(back, f);
        }
    }
}
