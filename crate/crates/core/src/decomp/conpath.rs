//! Con-paths: the node sequence between two vertices in the decomposition graph.

use super::contree::{ConTree, NodeId, NodeKind};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bc {
    Block(usize),
    Cut(VertexId),
}

fn bc_parent(ct: &ConTree, x: Bc) -> Option<Bc> {
    match x {
        Bc::Block(b) => ct.block_parent_cut[b].map(Bc::Cut),
        Bc::Cut(c) => Some(Bc::Block(ct.cut_parent_block[c])),
    }
}

fn bc_depth(ct: &ConTree, x: Bc) -> usize {
    match x {
        Bc::Block(b) => 2 * ct.block_depth[b],
        Bc::Cut(c) => 2 * ct.block_depth[ct.cut_parent_block[c]] + 1,
    }
}

fn bc_start(ct: &ConTree, v: VertexId) -> Bc {
    if ct.bc.is_cut[v] {
        Bc::Cut(v)
    } else {
        Bc::Block(ct.bc.vertex_blocks[v][0])
    }
}

fn bc_path(ct: &ConTree, a: Bc, b: Bc) -> Vec<Bc> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while x != y {
        if bc_depth(ct, x) >= bc_depth(ct, y) {
            x = bc_parent(ct, x).expect("connected block tree");
            left.push(x);
        } else {
            y = bc_parent(ct, y).expect("connected block tree");
            right.push(y);
        }
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

fn is_ancestor(ct: &ConTree, x: NodeId, y: NodeId) -> bool {
    let (a, b) = (&ct.nodes[x], &ct.nodes[y]);
    a.tin <= b.tin && b.tout <= a.tout
}

/// Path between two nodes of one block tree.
pub fn tree_path(ct: &ConTree, a: NodeId, b: NodeId) -> Vec<NodeId> {
    let mut left = vec![a];
    let mut x = a;
    while !is_ancestor(ct, x, b) {
        x = ct.nodes[x].parent.unwrap().0;
        left.push(x);
    }
    let mut right = Vec::new();
    let mut y = b;
    while y != x {
        right.push(y);
        y = ct.nodes[y].parent.unwrap().0;
    }
    left.extend(right.into_iter().rev());
    left
}

/// Node sequence of block `b` between a node holding `w1` and one holding `w2`.
/// When one node holds both, the smallest non-P node is taken.
pub fn block_piece(ct: &ConTree, b: usize, w1: VertexId, w2: VertexId) -> Vec<NodeId> {
    let a_set = ct.mates_in_block(w1, b);
    let both: Vec<NodeId> = a_set.iter().copied().filter(|&x| ct.nodes[x].contains(w2)).collect();
    if let Some(&x) = both.iter().min_by_key(|&&x| (ct.kind(x) == NodeKind::P, x)) {
        return vec![x];
    }
    let b0 = ct.mates_in_block(w2, b)[0];
    let path = tree_path(ct, a_set[0], b0);
    let last_a = path.iter().rposition(|&x| ct.nodes[x].contains(w1)).unwrap();
    let first_b = last_a + path[last_a..].iter().position(|&x| ct.nodes[x].contains(w2)).unwrap();
    path[last_a..=first_b].to_vec()
}

/// The con-path of `{v1, v2}` as a path in the decomposition graph.
pub fn con_path(ct: &ConTree, v1: VertexId, v2: VertexId) -> Vec<NodeId> {
    assert_ne!(v1, v2);
    let mut bc = bc_path(ct, bc_start(ct, v1), bc_start(ct, v2));
    if matches!(bc.first(), Some(Bc::Cut(_))) {
        bc.remove(0);
    }
    if matches!(bc.last(), Some(Bc::Cut(_))) {
        bc.pop();
    }
    let mut out = Vec::new();
    for (i, &x) in bc.iter().enumerate() {
        match x {
            Bc::Cut(c) => out.push(ct.c_node[c].unwrap()),
            Bc::Block(b) => {
                let w1 = if i == 0 {
                    v1
                } else {
                    match bc[i - 1] {
                        Bc::Cut(c) => c,
                        Bc::Block(_) => unreachable!(),
                    }
                };
                let w2 = if i + 1 == bc.len() {
                    v2
                } else {
                    match bc[i + 1] {
                        Bc::Cut(c) => c,
                        Bc::Block(_) => unreachable!(),
                    }
                };
                out.extend(block_piece(ct, b, w1, w2));
            }
        }
    }
    out
}

/// Shared nodes of two con-paths, in the order of the first one.
pub fn intersection(p1: &[NodeId], p2: &[NodeId]) -> Vec<NodeId> {
    p1.iter().copied().filter(|x| p2.contains(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    #[test]
    fn triangle_pair_is_one_s_node() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let ct = ConTree::build(&g);
        let p = con_path(&ct, 0, 2);
        assert_eq!(p.len(), 1);
        assert_eq!(ct.kind(p[0]), NodeKind::S);
    }

    #[test]
    fn leaf_blocks_give_d_c_d() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let ct = ConTree::build(&g);
        let kinds: Vec<NodeKind> = con_path(&ct, 0, 2).iter().map(|&x| ct.kind(x)).collect();
        assert_eq!(kinds, vec![NodeKind::D, NodeKind::C, NodeKind::D]);
    }

    #[test]
    fn theta_interiors_give_s_p_s() {
        // poles 0 and 1, interior vertices 2, 3, 4
        let g = Multigraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let ct = ConTree::build(&g);
        let kinds: Vec<NodeKind> = con_path(&ct, 2, 3).iter().map(|&x| ct.kind(x)).collect();
        assert_eq!(kinds, vec![NodeKind::S, NodeKind::P, NodeKind::S]);
    }
}
