//! Blocks and cut vertices of a connected multigraph.

use crate::graph::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Debug)]
pub struct Block {
    pub edges: Vec<EdgeId>,
    pub verts: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct BlockCut {
    pub blocks: Vec<Block>,
    pub is_cut: Vec<bool>,
    pub edge_block: Vec<usize>,
    /// Blocks containing each vertex, ascending.
    pub vertex_blocks: Vec<Vec<usize>>,
}

/// Iterative Hopcroft-Tarjan; blocks are numbered in the order they close.
pub fn blocks(g: &Multigraph) -> BlockCut {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut estack: Vec<EdgeId> = Vec::new();
    let mut out = Vec::new();
    let mut t = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = t;
        low[root] = t;
        t += 1;
        // (vertex, parent edge, next incidence index)
        let mut stack: Vec<(VertexId, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < g.incident(v).len() {
                let e = g.incident(v)[*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                let w = g.other(e, v);
                if disc[w] == usize::MAX {
                    disc[w] = t;
                    low[w] = t;
                    t += 1;
                    estack.push(e);
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    estack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut edges = Vec::new();
                    while let Some(f) = estack.pop() {
                        edges.push(f);
                        if f == pe {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    let mut verts: Vec<VertexId> = edges.iter().flat_map(|&f| g.ends(f)).collect();
                    verts.sort_unstable();
                    verts.dedup();
                    out.push(Block { edges, verts });
                }
            }
        }
        if g.incident(root).is_empty() {
            out.push(Block { edges: Vec::new(), verts: vec![root] });
        }
    }
    let mut edge_block = vec![0; g.m()];
    let mut vertex_blocks = vec![Vec::new(); n];
    for (b, blk) in out.iter().enumerate() {
        for &e in &blk.edges {
            edge_block[e] = b;
        }
        for &v in &blk.verts {
            vertex_blocks[v].push(b);
        }
    }
    let is_cut = vertex_blocks.iter().map(|l| l.len() > 1).collect();
    BlockCut { blocks: out, is_cut, edge_block, vertex_blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bowtie_has_two_blocks() {
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let bc = blocks(&g);
        assert_eq!(bc.blocks.len(), 2);
        assert_eq!(bc.is_cut, vec![false, false, true, false, false]);
    }

    #[test]
    fn path_blocks_are_bridges() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bc = blocks(&g);
        assert_eq!(bc.blocks.len(), 3);
        assert!(bc.blocks.iter().all(|b| b.edges.len() == 1));
    }

    #[test]
    fn parallel_pair_is_one_block() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        let bc = blocks(&g);
        assert_eq!(bc.blocks.len(), 2);
        assert_eq!(bc.blocks[bc.edge_block[0]].edges, vec![0, 1]);
    }
}
