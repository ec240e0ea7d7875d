//! Exhaustive reference answers for small instances: every plane embedding
//! of G, exact single and multiple insertion values.

use crate::decomp::{NodeId, NodeKind};
use crate::embed::{Dart, Embedding};
use crate::error::MeiError;
use crate::frame::{Choices, CutLayout, Frame, Placement};
use crate::graph::{InsertionSet, Multigraph, VertexId};
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Cyclic orders of `items` with the first one fixed.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    permutations(&items[1..])
        .into_iter()
        .map(|mut p| {
            p.insert(0, items[0]);
            p
        })
        .collect()
}

/// Every way to nest the blocks at cut vertex `c`, given their corner counts.
fn layouts(blocks: &[usize], corners: &BTreeMap<usize, usize>, cap: usize) -> Result<Vec<CutLayout>, MeiError> {
    let root = blocks[0];
    let rest = &blocks[1..];
    let m = rest.len();
    let mut out = Vec::new();
    // host index into `blocks` for every non-root block
    let mut host = vec![0usize; m];
    loop {
        let acyclic = (0..m).all(|i| {
            let mut x = i;
            for _ in 0..=m {
                if host[x] == 0 {
                    return true;
                }
                x = host[x] - 1;
            }
            false
        });
        if acyclic {
            let mut radix = Vec::new();
            for i in 0..m {
                let h = blocks[host[i]];
                radix.push(corners[&h]);
                radix.push(corners[&rest[i]]);
            }
            let mut idx = vec![0usize; 2 * m];
            loop {
                let placed = (0..m)
                    .map(|i| Placement { block: rest[i], host: blocks[host[i]], corner: idx[2 * i], open: idx[2 * i + 1] })
                    .collect();
                out.push(CutLayout { root, placed });
                if out.len() > cap {
                    return Err(MeiError::TooManyEmbeddings(cap));
                }
                if !advance(&mut idx, &radix) {
                    break;
                }
            }
        }
        let radix = vec![m + 1; m];
        if !advance(&mut host, &radix) {
            break;
        }
    }
    Ok(out)
}

/// Mixed-radix increment; false after the last value.
fn advance(idx: &mut [usize], radix: &[usize]) -> bool {
    for i in 0..idx.len() {
        idx[i] += 1;
        if idx[i] < radix[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// All plane embeddings of a connected planar `g`, one per fingerprint.
/// Fails when the raw number of combinations exceeds `cap`.
pub fn embeddings(g: &Multigraph, cap: usize) -> Result<Vec<Embedding>, MeiError> {
    let fr = Frame::new(g)?;
    embeddings_of(&fr, cap)
}

pub fn embeddings_of(fr: &Frame, cap: usize) -> Result<Vec<Embedding>, MeiError> {
    let ct = &fr.ct;
    let rs: Vec<NodeId> = (0..ct.nodes.len()).filter(|&x| ct.kind(x) == NodeKind::R).collect();
    let ps: Vec<NodeId> = (0..ct.nodes.len()).filter(|&x| ct.kind(x) == NodeKind::P).collect();
    let p_opts: Vec<Vec<Vec<usize>>> = ps.iter().map(|&p| cyclic_orders(&fr.p_default[p])).collect();
    let base = fr.default_choices();
    let cuts: Vec<VertexId> = (0..g_n(fr)).filter(|&v| ct.bc.vertex_blocks[v].len() > 1).collect();
    let mut c_opts = Vec::new();
    for &c in &cuts {
        let corners: BTreeMap<usize, usize> =
            ct.bc.vertex_blocks[c].iter().map(|&b| (b, fr.block_rotation(&base, b, c).len())).collect();
        c_opts.push(layouts(&ct.bc.vertex_blocks[c], &corners, cap)?);
    }
    let mut total: f64 = 2f64.powi(rs.len() as i32);
    for o in p_opts.iter().map(Vec::len).chain(c_opts.iter().map(Vec::len)) {
        total *= o as f64;
    }
    if total > cap as f64 {
        return Err(MeiError::TooManyEmbeddings(cap));
    }
    let mut radix: Vec<usize> = vec![2; rs.len()];
    radix.extend(p_opts.iter().map(Vec::len));
    radix.extend(c_opts.iter().map(Vec::len));
    let mut idx = vec![0usize; radix.len()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let mut ch: Choices = base.clone();
        for (i, &r) in rs.iter().enumerate() {
            ch.flipped[r] = idx[i] == 1;
        }
        for (i, &p) in ps.iter().enumerate() {
            ch.p_order.insert(p, p_opts[i][idx[rs.len() + i]].clone());
        }
        for (i, &c) in cuts.iter().enumerate() {
            ch.cuts.insert(c, c_opts[i][idx[rs.len() + ps.len() + i]].clone());
        }
        let emb = fr.embed(&ch);
        if seen.insert(emb.fingerprint()) {
            out.push(emb);
        }
        if !advance(&mut idx, &radix) {
            break;
        }
    }
    Ok(out)
}

fn g_n(fr: &Frame) -> usize {
    fr.g().n()
}

/// `ins(G, v1v2)`: fewest crossings of a new edge over all embeddings.
pub fn exact_ins_single(g: &Multigraph, v1: VertexId, v2: VertexId, cap: usize) -> Result<u64, MeiError> {
    let embs = embeddings(g, cap)?;
    Ok(embs.iter().map(|e| e.dual_distance(v1, v2) as u64).min().unwrap())
}

/// Best total of independent insertion walks in one common embedding,
/// ignoring crossings among the new edges.
pub fn exact_ins_prime(g: &Multigraph, f: &InsertionSet, cap: usize) -> Result<u64, MeiError> {
    let embs = embeddings(g, cap)?;
    Ok(embs
        .iter()
        .map(|e| f.pairs.iter().map(|&(a, b)| e.dual_distance(a, b) as u64).sum::<u64>())
        .min()
        .unwrap())
}

/// Exact answers for one instance from a single enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    /// Distinct embeddings found.
    pub embeddings: usize,
    pub ins_prime: u64,
    /// `ins(G, f)` of every pair on its own.
    pub ins_values: Vec<u64>,
}

pub fn summary(g: &Multigraph, f: &InsertionSet, cap: usize) -> Result<OracleSummary, MeiError> {
    f.validate(g)?;
    let embs = embeddings(g, cap)?;
    let table: Vec<Vec<u64>> =
        embs.iter().map(|e| f.pairs.iter().map(|&(a, b)| e.dual_distance(a, b) as u64).collect()).collect();
    let ins_values = (0..f.len()).map(|i| table.iter().map(|row| row[i]).min().unwrap()).collect();
    let ins_prime = table.iter().map(|row| row.iter().sum()).min().unwrap();
    Ok(OracleSummary { embeddings: embs.len(), ins_prime, ins_values })
}

/// All plane embeddings by trying every rotation system. Only for tiny graphs.
pub fn brute_force_embeddings(g: &Multigraph, cap: usize) -> Result<Vec<Embedding>, MeiError> {
    let n = g.n();
    let options: Vec<Vec<Vec<Dart>>> = (0..n)
        .map(|v| {
            let darts: Vec<Dart> =
                g.incident(v).iter().map(|&e| if g.ends(e)[0] == v { 2 * e } else { 2 * e + 1 }).collect();
            cyclic_orders(&darts)
        })
        .collect();
    let total: f64 = options.iter().map(|o| o.len() as f64).product();
    if total > cap as f64 {
        return Err(MeiError::TooManyEmbeddings(cap));
    }
    let radix: Vec<usize> = options.iter().map(Vec::len).collect();
    let mut idx = vec![0usize; n];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let rot: Vec<Vec<Dart>> = (0..n).map(|v| options[v][idx[v]].clone()).collect();
        let e = Embedding::from_rotations(g, rot)?;
        if e.euler_characteristic() == 2 && seen.insert(e.fingerprint()) {
            out.push(e);
        }
        if !advance(&mut idx, &radix) {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_has_two_embeddings() {
        let g = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(embeddings(&g, 1000).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        // seven paths of length two between the poles 0 and 1
        let edges: Vec<(usize, usize)> = (2..9).flat_map(|m| [(0, m), (m, 1)]).collect();
        let g = Multigraph::from_edges(9, &edges).unwrap();
        assert_eq!(embeddings(&g, 100).unwrap_err(), MeiError::TooManyEmbeddings(100));
    }

    #[test]
    fn path_needs_no_crossing() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_ins_single(&g, 0, 2, 100).unwrap(), 0);
    }
}
