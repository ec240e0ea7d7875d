//! Text instance files, JSON reports and planarization output.
//!
//! An instance file starts with a header `n m k`, then one `e u v` line per
//! edge of G and one `f u v` line per pair, in id order. Lines starting with
//! `#` are comments, except `# lb <value>` (certified lower bound) and
//! `# budget <value>` (crossing budget), which are kept as metadata.

use crate::embed::{dart_edge, Planarization};
use crate::error::MeiError;
use crate::gen::Instance;
use crate::graph::{InsertionSet, Multigraph, VertexId};
use crate::mei::{pairs_of, strong_g_term, CrBound, MeiReport, Mode};
use serde::Serialize;
use std::fmt::Write;

fn parse_err(line: usize, msg: impl Into<String>) -> MeiError {
    MeiError::Parse { line, msg: msg.into() }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, MeiError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))
}

pub fn parse_instance(text: &str) -> Result<Instance, MeiError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut g = Multigraph::new(0);
    let mut pairs = Vec::new();
    let (mut lb, mut budget) = (None, None);
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        last = line;
        if let Some(rest) = t.strip_prefix('#') {
            let mut it = rest.split_whitespace();
            match it.next() {
                Some("lb") => lb = Some(number(it.next(), line, "lower bound")? as u64),
                Some("budget") => budget = Some(number(it.next(), line, "budget")? as u64),
                _ => {}
            }
            continue;
        }
        let mut it = t.split_whitespace();
        let Some((n, _, _)) = header else {
            let n = number(it.next(), line, "vertex count")?;
            let m = number(it.next(), line, "edge count")?;
            let k = number(it.next(), line, "pair count")?;
            if it.next().is_some() {
                return Err(parse_err(line, "header has more than three fields"));
            }
            header = Some((n, m, k));
            g = Multigraph::new(n);
            continue;
        };
        let tag = it.next().unwrap();
        let u = number(it.next(), line, "first end")?;
        let v = number(it.next(), line, "second end")?;
        if it.next().is_some() {
            return Err(parse_err(line, "trailing fields"));
        }
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex {} out of range", u.max(v))));
        }
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        match tag {
            "e" => {
                g.add_edge(u, v).expect("checked ends");
            }
            "f" => pairs.push((u, v)),
            _ => return Err(parse_err(line, format!("unknown line kind '{tag}'"))),
        }
    }
    let (_, m, k) = header.ok_or_else(|| parse_err(last.max(1), "missing header"))?;
    if g.m() != m {
        return Err(parse_err(last, format!("header promises {m} edges, found {}", g.m())));
    }
    if pairs.len() != k {
        return Err(parse_err(last, format!("header promises {k} pairs, found {}", pairs.len())));
    }
    Ok(Instance { g, f: InsertionSet::new(pairs), lb, budget })
}

pub fn write_instance(inst: &Instance) -> String {
    let mut s = String::new();
    writeln!(s, "{} {} {}", inst.g.n(), inst.g.m(), inst.f.len()).unwrap();
    for &[u, v] in inst.g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for &(u, v) in &inst.f.pairs {
        writeln!(s, "f {u} {v}").unwrap();
    }
    if let Some(lb) = inst.lb {
        writeln!(s, "# lb {lb}").unwrap();
    }
    if let Some(b) = inst.budget {
        writeln!(s, "# budget {b}").unwrap();
    }
    s
}

/// The plane drawing of G + F as an edge list; crossings are the vertices
/// from `n_g` on.
pub fn write_planarization(pl: &Planarization) -> String {
    let mut s = String::new();
    writeln!(s, "# dummies {}", pl.dummies()).unwrap();
    writeln!(s, "{} {} 0", pl.n(), pl.ends.len()).unwrap();
    for &[u, v] in &pl.ends {
        writeln!(s, "e {u} {v}").unwrap();
    }
    s
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Guarantee {
    /// `ins_sigma + (2 floor(delta/2) + 1) C(k, 2)`.
    pub weak: u64,
    /// `ins_sigma + floor(delta/2) 2k floor(log2 2k) + C(k, 2)`.
    pub strong: u64,
    /// Part of `strong` that bounds crossings with G beyond `ins_sigma`.
    pub strong_g_term: u64,
    pub pairs: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub delta: usize,
    pub ins_values: Vec<u64>,
    pub ins_sigma: u64,
    pub walk_lengths: Vec<u64>,
    pub crossings_with_g: u64,
    pub crossings_f_f: u64,
    pub total: u64,
    pub guarantee: Guarantee,
    pub cr_bound: CrBound,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<u64>,
    pub reconciled: usize,
    pub mirrored_reference: bool,
    /// Per vertex, the cyclic order of `[edge, neighbour]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<[VertexId; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Report {
    pub fn new(r: &MeiReport, lower_bound: Option<u64>, dump_embedding: bool, wall_time_ms: Option<f64>) -> Report {
        let (k, delta) = (r.k as u64, r.delta as u64);
        let rotation = dump_embedding.then(|| {
            (0..r.embedding.n())
                .map(|v| r.embedding.rotation(v).iter().map(|&d| [dart_edge(d), r.embedding.head(d)]).collect())
                .collect()
        });
        Report {
            mode: r.mode,
            n: r.n,
            m: r.m,
            k: r.k,
            delta: r.delta,
            ins_values: r.ins_values.clone(),
            ins_sigma: r.ins_sigma,
            walk_lengths: r.walk_lengths.clone(),
            crossings_with_g: r.crossings_with_g,
            crossings_f_f: r.crossings_f_f,
            total: r.total,
            guarantee: Guarantee {
                weak: r.guarantee_weak,
                strong: r.guarantee_strong,
                strong_g_term: strong_g_term(k, delta),
                pairs: pairs_of(k),
            },
            cr_bound: r.cr,
            lower_bound,
            reconciled: r.reconciled,
            mirrored_reference: r.mirrored,
            rotation,
            wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_metadata_are_read() {
        let inst = parse_instance("# a square\n4 4 1\ne 0 1\ne 1 2\ne 2 3\ne 3 0\nf 0 2\n# lb 0\n").unwrap();
        assert_eq!((inst.g.m(), inst.f.pairs.clone(), inst.lb), (4, vec![(0, 2)], Some(0)));
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn malformed_lines_name_their_line() {
        let cases = [
            ("3 2 0\ne 0 1\n", 2),
            ("3 1 0\ne 0 5\n", 2),
            ("3 1 0\ne 1 1\n", 2),
            ("3 1 0\nx 0 1\n", 2),
            ("3 1\n", 1),
            ("3 1 0\ne 0 one\n", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(MeiError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
