//! Block-cut trees, SPQR trees and the combined decomposition.

pub mod bc;
pub mod conpath;
pub mod contree;
pub mod spqr;

pub use contree::{ConTree, Node, NodeId, NodeKind, SkelEdge, SkelKind};

pub use spqr::{triconnected_components, CompKind, Split};

/// Structural check of a split into triconnected components: component
/// shapes, twin counts, tree shape and no same-type neighbours. By the
/// uniqueness of the triconnected decomposition this pins it down.
pub fn check_split(n: usize, edges: &[[usize; 2]], split: &Split) -> Result<(), String> {
    let m = edges.len();
    let ne = split.ends.len();
    if split.ends[..m] != *edges {
        return Err("input edges changed".into());
    }
    let mut count = vec![0usize; ne];
    let mut owner: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for (i, (kind, es)) in split.comps.iter().enumerate() {
        for &e in es {
            count[e] += 1;
            owner[e].push(i);
        }
        let mut vs: Vec<usize> = es.iter().flat_map(|&e| split.ends[e]).collect();
        vs.sort_unstable();
        vs.dedup();
        match kind {
            CompKind::Bond => {
                if vs.len() != 2 || es.len() < 3 {
                    return Err(format!("bad bond {i}"));
                }
            }
            CompKind::Polygon => {
                if es.len() < 3 || vs.len() != es.len() {
                    return Err(format!("bad polygon {i}"));
                }
                let mut deg = std::collections::BTreeMap::new();
                for &e in es {
                    for v in split.ends[e] {
                        *deg.entry(v).or_insert(0) += 1;
                    }
                }
                if deg.values().any(|&d| d != 2) || !connected(&vs, es, &split.ends, &[]) {
                    return Err(format!("polygon {i} is not a cycle"));
                }
            }
            CompKind::Rigid => {
                if vs.len() < 4 {
                    return Err(format!("rigid {i} too small"));
                }
                let mut pairs: Vec<(usize, usize)> = es
                    .iter()
                    .map(|&e| {
                        let [a, b] = split.ends[e];
                        (a.min(b), a.max(b))
                    })
                    .collect();
                pairs.sort_unstable();
                if pairs.windows(2).any(|w| w[0] == w[1]) {
                    return Err(format!("rigid {i} has parallel edges"));
                }
                for a in 0..vs.len() {
                    for b in a + 1..vs.len() {
                        if !connected(&vs, es, &split.ends, &[vs[a], vs[b]]) {
                            return Err(format!("rigid {i} has separation pair"));
                        }
                    }
                }
            }
        }
    }
    for e in 0..ne {
        let want = if e < m { 1 } else { 2 };
        if count[e] != want && !(e >= m && count[e] == 0) {
            return Err(format!("edge {e} appears {} times", count[e]));
        }
    }
    // tree over components
    let c = split.comps.len();
    let mut adj = vec![Vec::new(); c];
    let mut tree_edges = 0;
    for e in m..ne {
        if owner[e].len() == 2 {
            let (a, b) = (owner[e][0], owner[e][1]);
            if a == b {
                return Err("virtual edge twice in one component".into());
            }
            if split.comps[a].0 == split.comps[b].0 && split.comps[a].0 != CompKind::Rigid {
                return Err("adjacent components of equal type".into());
            }
            adj[a].push(b);
            adj[b].push(a);
            tree_edges += 1;
        }
    }
    if tree_edges + 1 != c {
        return Err("component graph is not a tree".into());
    }
    let mut seen = vec![false; c];
    let mut st = vec![0];
    seen[0] = true;
    while let Some(x) = st.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                st.push(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err("component graph disconnected".into());
    }
    let _ = n;
    Ok(())
}

fn connected(vs: &[usize], es: &[usize], ends: &[[usize; 2]], removed: &[usize]) -> bool {
    let keep: Vec<usize> = vs.iter().copied().filter(|v| !removed.contains(v)).collect();
    if keep.is_empty() {
        return true;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut st = vec![keep[0]];
    seen.insert(keep[0]);
    while let Some(x) = st.pop() {
        for &e in es {
            let [a, b] = ends[e];
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !removed.contains(&y) && seen.insert(y) {
                st.push(y);
            }
        }
    }
    seen.len() == keep.len()
}
