//! Per-vertex clause tables for the subset-cardinality certificate.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{edge_var, subset_cardinality, subsets, BipartiteDegreeGraph, Side};
use crate::formula::{falsifying_cube, Assignment, Clause, CubeMultiset, Lit};
use crate::subcubesums::ScsCertificate;

/// Kind of vertex: side and degree (4 or 5).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexType {
    pub side: Side,
    pub degree: usize,
}

impl VertexType {
    pub const ALL: [VertexType; 4] = [
        VertexType { side: Side::Left, degree: 4 },
        VertexType { side: Side::Left, degree: 5 },
        VertexType { side: Side::Right, degree: 4 },
        VertexType { side: Side::Right, degree: 5 },
    ];

    /// Multiplicities in `h_w` of `∨x_e`, `∨¬x_e`, `x_e ∨ ∨_{f≠e} ¬x_f`
    /// (each `e`) and `¬x_e ∨ ∨_{f≠e} x_f` (each `e`).
    pub fn h_multiplicities(self) -> [usize; 4] {
        match (self.side, self.degree) {
            (Side::Left, 4) => [2, 2, 1, 0],
            (Side::Left, 5) => [7, 2, 1, 2],
            (Side::Right, 4) => [2, 2, 0, 1],
            (Side::Right, 5) => [2, 7, 2, 1],
            _ => unreachable!("degree is 4 or 5"),
        }
    }

    /// Number of empty clauses in `h'_w`.
    pub fn boxes(self) -> usize {
        self.degree.div_ceil(2)
    }

    fn check(self) -> Result<()> {
        if self.degree == 4 || self.degree == 5 {
            Ok(())
        } else {
            Err(Error::Graph(format!("vertex degree {} is not 4 or 5", self.degree)))
        }
    }
}

/// The clause multisets `f_w`, `f'_w`, `h_w`, `h'_w` of one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCubeTable {
    pub kind: VertexType,
    pub edges: Vec<usize>,
    pub f: Vec<Clause>,
    pub f_prime: Vec<Clause>,
    pub h: Vec<Clause>,
    pub h_prime: Vec<Clause>,
}

impl VertexCubeTable {
    pub fn new(side: Side, edges: Vec<usize>) -> Result<Self> {
        let kind = VertexType {
            side,
            degree: edges.len(),
        };
        kind.check()?;
        let positive = side == Side::Left;
        let lit = |e: usize, pos: bool| Lit::new(edge_var(e), pos);
        let f = subsets(&edges, 3)
            .into_iter()
            .map(|s| Clause::new(s.into_iter().map(|e| lit(e, positive))))
            .collect();
        let f_prime = edges.iter().map(|&e| Clause::new([lit(e, !positive)])).collect();
        let [all_pos, all_neg, one_pos, one_neg] = kind.h_multiplicities();
        let mut h = Vec::new();
        let all = |pos: bool| Clause::new(edges.iter().map(|&e| lit(e, pos)));
        h.extend(std::iter::repeat_n(all(true), all_pos));
        h.extend(std::iter::repeat_n(all(false), all_neg));
        for &e in &edges {
            let odd = |pos: bool| Clause::new(edges.iter().map(|&g| lit(g, if g == e { pos } else { !pos })));
            h.extend(std::iter::repeat_n(odd(true), one_pos));
            h.extend(std::iter::repeat_n(odd(false), one_neg));
        }
        let h_prime = vec![Clause::empty(); kind.boxes()];
        Ok(VertexCubeTable {
            kind,
            edges,
            f,
            f_prime,
            h,
            h_prime,
        })
    }

    /// Checks `viol_f + viol_f' = viol_h + viol_h'` at every assignment of
    /// the vertex's edges. Returns the first failing local assignment.
    pub fn check_identity(&self) -> Option<Vec<bool>> {
        let d = self.edges.len();
        let max_edge = self.edges.iter().max().copied().unwrap_or(0);
        let count = |cs: &[Clause], a: &Assignment| {
            cs.iter()
                .filter(|c| !c.lits().iter().any(|l| a.get(l.var()) == l.is_positive()))
                .count()
        };
        (0u32..1 << d).find_map(|s| {
            let mut a = Assignment::zeros(max_edge + 1);
            let local: Vec<bool> = (0..d).map(|k| (s >> k) & 1 == 1).collect();
            for (k, &e) in self.edges.iter().enumerate() {
                a.set(edge_var(e), local[k]);
            }
            let lhs = count(&self.f, &a) + count(&self.f_prime, &a);
            let rhs = count(&self.h, &a) + count(&self.h_prime, &a);
            (lhs != rhs).then_some(local)
        })
    }
}

/// The displayed right-hand sides: `(coefficient, pattern)` where the
/// pattern fixes every local variable (`1` for `x_i`, `0` for `¬x_i`).
const EQ_DEGREE4: [(i64, &str); 6] = [(2, "1111"), (1, "1110"), (1, "1101"), (1, "1011"), (1, "0111"), (2, "0000")];
const EQ_DEGREE5: [(i64, &str); 12] = [
    (2, "11111"),
    (1, "11110"),
    (1, "11101"),
    (1, "11011"),
    (1, "10111"),
    (1, "01111"),
    (2, "00001"),
    (2, "00010"),
    (2, "00100"),
    (2, "01000"),
    (2, "10000"),
    (7, "00000"),
];

/// Both sides of the left-vertex polynomial identity at `x`:
/// `Σ_{|I|=d-k+1} Π_{i∈I}(1 − x_i) − (k − Σ x_i)` with `k = ⌈d/2⌉`,
/// against the displayed sum of monomials. Only `d = 4, 5` are displayed.
pub fn local_identity_sides(x: &[bool]) -> Result<(i64, i64)> {
    let d = x.len();
    let rhs_terms: &[(i64, &str)] = match d {
        4 => &EQ_DEGREE4,
        5 => &EQ_DEGREE5,
        _ => return Err(Error::Invalid(format!("no displayed identity for degree {d}"))),
    };
    let k = d.div_ceil(2);
    let idx: Vec<usize> = (0..d).collect();
    let zeros = |s: &Vec<usize>| s.iter().all(|&i| !x[i]) as i64;
    let lhs = subsets(&idx, d - k + 1).iter().map(zeros).sum::<i64>() - (k as i64 - x.iter().filter(|&&b| b).count() as i64);
    let rhs = rhs_terms
        .iter()
        .filter(|(_, p)| p.chars().zip(x).all(|(c, &b)| (c == '1') == b))
        .map(|(c, _)| c)
        .sum();
    Ok((lhs, rhs))
}

/// Every local assignment of degree `d` where the displayed identity fails.
pub fn local_identity_failures(d: usize) -> Result<Vec<Vec<bool>>> {
    let mut out = Vec::new();
    for s in 0u32..1 << d {
        let x: Vec<bool> = (0..d).map(|k| (s >> k) & 1 == 1).collect();
        let (l, r) = local_identity_sides(&x)?;
        if l != r {
            out.push(x);
        }
    }
    Ok(out)
}

/// One table per vertex: left vertices first.
pub fn vertex_tables(g: &BipartiteDegreeGraph) -> Result<Vec<VertexCubeTable>> {
    g.validate()?;
    [Side::Left, Side::Right]
        .into_iter()
        .flat_map(|side| (0..g.n).map(move |w| (side, w)))
        .map(|(side, w)| VertexCubeTable::new(side, g.incident(side, w)))
        .collect()
}

/// Certificate made of the falsifying cubes of every `h_w`.
pub fn subsetcard_scs_proof(g: &BipartiteDegreeGraph) -> Result<ScsCertificate> {
    let tables = vertex_tables(g)?;
    if let Some(bad) = tables.par_iter().find_map_any(|t| t.check_identity().map(|a| (t.kind, a))) {
        return Err(Error::Invalid(format!("vertex identity fails for {:?} at {:?}", bad.0, bad.1)));
    }
    let cubes = tables
        .iter()
        .flat_map(|t| t.h.iter())
        .map(falsifying_cube)
        .collect::<Result<Vec<_>>>()?;
    ScsCertificate::new(subset_cardinality(g)?, CubeMultiset::new(g.edges.len(), cubes)?)
}

/// LaTeX tabular of the per-vertex multiplicities.
pub fn vertex_tables_latex() -> String {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{|l|l|l|l|l|}\n\\hline\n");
    out.push_str("Clause & $w\\in U$, deg 4 & $w\\in U$, deg 5 & $w\\in V$, deg 4 & $w\\in V$, deg 5 \\\\ \\hline\n");
    let cell = |m: usize, set: &str| if m == 0 { String::new() } else { format!("{m} in ${set}$") };
    let f_rows: [(&str, [bool; 4]); 2] = [
        ("For $A \\in {E_w\\choose 3}$: $\\bigvee_{e\\in A}x_e$", [true, true, false, false]),
        ("For $A \\in {E_w\\choose 3}$: $\\bigvee_{e\\in A}\\overline{x_e}$", [false, false, true, true]),
    ];
    for (label, on) in f_rows {
        let cells: Vec<String> = on.iter().map(|&b| cell(b as usize, "f_w")).collect();
        let _ = writeln!(out, "{label} & {} \\\\ \\hline", cells.join(" & "));
    }
    for (label, on) in [
        ("For $e\\ni w$: $\\overline{x_e}$", [true, true, false, false]),
        ("For $e\\ni w$: $x_e$", [false, false, true, true]),
    ] {
        let cells: Vec<String> = on.iter().map(|&b| cell(b as usize, "f'_w")).collect();
        let _ = writeln!(out, "{label} & {} \\\\ \\hline", cells.join(" & "));
    }
    let boxes: Vec<String> = VertexType::ALL.iter().map(|t| cell(t.boxes(), "h'_w")).collect();
    let _ = writeln!(out, "$\\Box$ & {} \\\\ \\hline", boxes.join(" & "));
    let labels = [
        "$\\bigvee_{e\\in E_w} x_e$",
        "$\\bigvee_{e\\in E_w} \\overline{x_e}$",
        "For $e\\in E_w$: $x_e \\vee \\bigvee_{f\\in E_w\\setminus \\{e\\}} \\overline{x_f}$",
        "For $e\\in E_w$: $\\overline{x_e} \\vee \\bigvee_{f\\in E_w\\setminus \\{e\\}} x_f$",
    ];
    for (row, label) in labels.iter().enumerate() {
        let cells: Vec<String> = VertexType::ALL.iter().map(|t| cell(t.h_multiplicities()[row], "h_w")).collect();
        let _ = writeln!(out, "{label} & {} \\\\ \\hline", cells.join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::random_regular_bipartite;
    use crate::subcubesums::check_certificate;
    use crate::verdict::CheckMode;

    #[test]
    fn displayed_identities_hold() {
        assert!(local_identity_failures(4).unwrap().is_empty());
        assert!(local_identity_failures(5).unwrap().is_empty());
        assert!(local_identity_sides(&[true; 3]).is_err());
    }

    #[test]
    fn vertex_identity_for_every_type() {
        for side in [Side::Left, Side::Right] {
            for d in [4, 5] {
                let t = VertexCubeTable::new(side, (0..d).collect()).unwrap();
                assert_eq!(t.check_identity(), None, "{side:?} degree {d}");
            }
        }
        assert!(VertexCubeTable::new(Side::Left, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn perturbed_table_fails_identity() {
        let mut t = VertexCubeTable::new(Side::Left, (0..5).collect()).unwrap();
        t.h.pop();
        assert!(t.check_identity().is_some());
    }

    #[test]
    fn smallest_instance_certificate() {
        let g = random_regular_bipartite(4, 0).unwrap();
        let cert = subsetcard_scs_proof(&g).unwrap();
        assert_eq!(cert.formula.num_vars(), 17);
        assert!(check_certificate(&cert, CheckMode::Exhaustive).unwrap().pass);
    }

    #[test]
    fn latex_mentions_every_multiplicity() {
        let tex = vertex_tables_latex();
        assert!(tex.contains("7 in $h_w$"));
        assert!(tex.contains("3 in $h'_w$"));
        assert!(tex.starts_with("\\begin{tabular}"));
    }
}
