//! The combined tree: a block-cut tree whose blocks carry their sSPR trees,
//! with D-nodes for trivial blocks and C-nodes for cut vertices.

use super::bc::{self, BlockCut};
use super::spqr::{triconnected_components, CompKind};
use crate::embed::{dart_of, Embedding};
use crate::graph::{EdgeId, Multigraph, VertexId};
use serde::Serialize;

pub type NodeId = usize;
pub const NO_BLOCK: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NodeKind {
    S,
    P,
    R,
    D,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkelKind {
    Real(EdgeId),
    Virtual { node: NodeId, edge: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkelEdge {
    /// Lower endpoint first.
    pub ends: [VertexId; 2],
    pub kind: SkelKind,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub kind: NodeKind,
    pub block: usize,
    pub verts: Vec<VertexId>,
    pub edges: Vec<SkelEdge>,
    /// Skeleton edges at each local vertex, ascending.
    pub inc: Vec<Vec<usize>>,
    /// Parent in the block tree and the own edge towards it.
    pub parent: Option<(NodeId, usize)>,
    /// Children in the block tree with the own edge towards each, by `tin`.
    pub children: Vec<(NodeId, usize)>,
    pub tin: usize,
    pub tout: usize,
}

impl Node {
    pub fn local(&self, v: VertexId) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.local(v).is_some()
    }

    pub fn edges_at(&self, v: VertexId) -> &[usize] {
        match self.local(v) {
            Some(i) => &self.inc[i],
            None => &[],
        }
    }

    pub fn is_virtual(&self, i: usize) -> bool {
        matches!(self.edges[i].kind, SkelKind::Virtual { .. })
    }

    /// Own edge index of the virtual edge whose twin lives in `other`.
    pub fn edge_to(&self, other: NodeId) -> Option<usize> {
        self.edges.iter().position(|e| matches!(e.kind, SkelKind::Virtual { node, .. } if node == other))
    }

    pub fn tree_neighbors(&self) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.edges.iter().enumerate().filter_map(|(i, e)| match e.kind {
            SkelKind::Virtual { node, .. } => Some((node, i)),
            SkelKind::Real(_) => None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConTree {
    pub g: Multigraph,
    pub bc: BlockCut,
    pub nodes: Vec<Node>,
    pub block_root: Vec<NodeId>,
    pub block_nodes: Vec<Vec<NodeId>>,
    /// C-node of each cut vertex.
    pub c_node: Vec<Option<NodeId>>,
    /// Node holding each G-edge as a real skeleton edge, and its index there.
    pub home: Vec<(NodeId, usize)>,
    /// Non-C nodes whose skeleton contains each vertex, ascending.
    pub vnodes: Vec<Vec<NodeId>>,
    /// Block-cut tree rooted at `root_block`.
    pub root_block: usize,
    pub block_parent_cut: Vec<Option<VertexId>>,
    pub cut_parent_block: Vec<usize>,
    pub block_depth: Vec<usize>,
    /// Decomposition graph adjacency, ascending.
    pub dadj: Vec<Vec<NodeId>>,
    /// Representative G-edge at each end of every skeleton edge.
    pub rep: Vec<Vec<[EdgeId; 2]>>,
}

fn new_node(kind: NodeKind, block: usize, edges: Vec<SkelEdge>) -> Node {
    let mut verts: Vec<VertexId> = edges.iter().flat_map(|e| e.ends).collect();
    verts.sort_unstable();
    verts.dedup();
    let mut inc = vec![Vec::new(); verts.len()];
    for (i, e) in edges.iter().enumerate() {
        for v in e.ends {
            inc[verts.binary_search(&v).unwrap()].push(i);
        }
    }
    Node { kind, block, verts, edges, inc, parent: None, children: Vec::new(), tin: 0, tout: 0 }
}

fn ordered(a: VertexId, b: VertexId) -> [VertexId; 2] {
    [a.min(b), a.max(b)]
}

impl ConTree {
    /// Builds the tree of a connected multigraph.
    pub fn build(g: &Multigraph) -> ConTree {
        let bcut = bc::blocks(g);
        let mut nodes: Vec<Node> = Vec::new();
        let mut block_nodes = Vec::new();
        let mut home = vec![(usize::MAX, 0); g.m()];
        for (b, blk) in bcut.blocks.iter().enumerate() {
            let first = nodes.len();
            if blk.verts.len() <= 2 {
                let edges = blk
                    .edges
                    .iter()
                    .map(|&e| {
                        let [u, v] = g.ends(e);
                        SkelEdge { ends: ordered(u, v), kind: SkelKind::Real(e) }
                    })
                    .collect();
                nodes.push(new_node(NodeKind::D, b, edges));
            } else {
                build_block(g, b, &blk.verts, &blk.edges, &mut nodes);
            }
            block_nodes.push((first..nodes.len()).collect::<Vec<_>>());
        }
        for (id, nd) in nodes.iter().enumerate() {
            for (i, e) in nd.edges.iter().enumerate() {
                if let SkelKind::Real(x) = e.kind {
                    home[x] = (id, i);
                }
            }
        }
        let block_root: Vec<NodeId> = block_nodes.iter().map(|l| l[0]).collect();
        for &r in &block_root {
            number_block_tree(&mut nodes, r);
        }

        // block-cut tree
        let nb = bcut.blocks.len();
        let root_block = if g.n() > 0 { bcut.vertex_blocks[0][0] } else { 0 };
        let mut block_parent_cut = vec![None; nb];
        let mut cut_parent_block = vec![usize::MAX; g.n()];
        let mut block_depth = vec![0; nb];
        let mut seen = vec![false; nb];
        let mut queue = std::collections::VecDeque::new();
        if nb > 0 {
            seen[root_block] = true;
            queue.push_back(root_block);
        }
        while let Some(b) = queue.pop_front() {
            for &c in &bcut.blocks[b].verts {
                if !bcut.is_cut[c] || block_parent_cut[b] == Some(c) {
                    continue;
                }
                cut_parent_block[c] = b;
                for &b2 in &bcut.vertex_blocks[c] {
                    if !seen[b2] {
                        seen[b2] = true;
                        block_parent_cut[b2] = Some(c);
                        block_depth[b2] = block_depth[b] + 1;
                        queue.push_back(b2);
                    }
                }
            }
        }

        let mut c_node = vec![None; g.n()];
        for v in 0..g.n() {
            if bcut.is_cut[v] {
                c_node[v] = Some(nodes.len());
                let mut nd = new_node(NodeKind::C, NO_BLOCK, Vec::new());
                nd.verts = vec![v];
                nd.inc = vec![Vec::new()];
                nodes.push(nd);
            }
        }
        let mut vnodes = vec![Vec::new(); g.n()];
        for (id, nd) in nodes.iter().enumerate() {
            if nd.kind != NodeKind::C {
                for &v in &nd.verts {
                    vnodes[v].push(id);
                }
            }
        }
        let mut dadj: Vec<Vec<NodeId>> = nodes.iter().map(|nd| nd.tree_neighbors().map(|(x, _)| x).collect()).collect();
        for v in 0..g.n() {
            if let Some(c) = c_node[v] {
                for &mu in &vnodes[v] {
                    if nodes[mu].kind != NodeKind::P {
                        dadj[c].push(mu);
                        dadj[mu].push(c);
                    }
                }
            }
        }
        for l in &mut dadj {
            l.sort_unstable();
            l.dedup();
        }
        let mut ct = ConTree {
            g: g.clone(),
            bc: bcut,
            nodes,
            block_root,
            block_nodes,
            c_node,
            home,
            vnodes,
            root_block,
            block_parent_cut,
            cut_parent_block,
            block_depth,
            dadj,
            rep: Vec::new(),
        };
        ct.rep = compute_reps(&ct);
        ct
    }

    pub fn kind(&self, v: NodeId) -> NodeKind {
        self.nodes[v].kind
    }

    /// Nodes of the block tree of `b` whose skeleton contains `v`.
    pub fn mates_in_block(&self, v: VertexId, b: usize) -> Vec<NodeId> {
        self.vnodes[v].iter().copied().filter(|&x| self.nodes[x].block == b).collect()
    }

    pub fn is_mate(&self, node: NodeId, v: VertexId) -> bool {
        self.nodes[node].kind != NodeKind::C && self.nodes[node].contains(v)
    }

    /// Skeleton edge of `mu` whose expansion holds the G-edge `e`.
    /// `e` must lie in the block of `mu`.
    pub fn classify(&self, mu: NodeId, e: EdgeId) -> usize {
        let (h, hi) = self.home[e];
        if h == mu {
            return hi;
        }
        let nd = &self.nodes[mu];
        let th = self.nodes[h].tin;
        if nd.tin < th && th < nd.tout {
            let k = nd.children.partition_point(|&(c, _)| self.nodes[c].tin <= th);
            return nd.children[k - 1].1;
        }
        nd.parent.expect("edge outside the subtree needs a parent").1
    }

    /// Cyclic order of skeleton edges of `mu` at `v` as seen in `emb`.
    pub fn skeleton_rotation(&self, emb: &Embedding, mu: NodeId, v: VertexId) -> Vec<usize> {
        let nd = &self.nodes[mu];
        let li = nd.local(v).expect("vertex in skeleton");
        let mut l: Vec<(usize, usize)> = nd.inc[li]
            .iter()
            .map(|&i| {
                let side = usize::from(nd.edges[i].ends[1] == v);
                let e = self.rep[mu][i][side];
                (emb.position(dart_of(&self.g, e, v)), i)
            })
            .collect();
        l.sort_unstable();
        l.into_iter().map(|(_, i)| i).collect()
    }
}

fn build_block(g: &Multigraph, b: usize, verts: &[VertexId], edges: &[EdgeId], nodes: &mut Vec<Node>) {
    let local: Vec<[usize; 2]> = edges
        .iter()
        .map(|&e| {
            let [u, v] = g.ends(e);
            [verts.binary_search(&u).unwrap(), verts.binary_search(&v).unwrap()]
        })
        .collect();
    let split = triconnected_components(verts.len(), &local);
    let m = edges.len();
    let base = nodes.len();
    let ne = split.ends.len();
    // owners of each virtual edge: (component, index in component)
    let mut owner: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ne];
    let mut comps: Vec<(NodeKind, Vec<SkelEdge>)> = Vec::new();
    for (ci, (kind, es)) in split.comps.iter().enumerate() {
        let kind = match kind {
            CompKind::Bond => NodeKind::P,
            CompKind::Polygon => NodeKind::S,
            CompKind::Rigid => NodeKind::R,
        };
        let mut sk = Vec::with_capacity(es.len());
        for (i, &e) in es.iter().enumerate() {
            let [a, c] = split.ends[e];
            let ends = ordered(verts[a], verts[c]);
            if e < m {
                sk.push(SkelEdge { ends, kind: SkelKind::Real(edges[e]) });
            } else {
                owner[e].push((ci, i));
                sk.push(SkelEdge { ends, kind: SkelKind::Virtual { node: usize::MAX, edge: usize::MAX } });
            }
        }
        comps.push((kind, sk));
    }
    let mut extra: Vec<(NodeKind, Vec<SkelEdge>)> = Vec::new();
    for e in m..ne {
        if owner[e].len() != 2 {
            continue;
        }
        let (a, ai) = owner[e][0];
        let (c, cii) = owner[e][1];
        let ka = comps[a].0;
        let kc = comps[c].0;
        let needs_s = matches!((ka, kc), (NodeKind::R, NodeKind::R) | (NodeKind::R, NodeKind::P) | (NodeKind::P, NodeKind::R));
        if needs_s {
            let s = split.comps.len() + extra.len();
            let ends = comps[a].1[ai].ends;
            extra.push((
                NodeKind::S,
                vec![
                    SkelEdge { ends, kind: SkelKind::Virtual { node: base + a, edge: ai } },
                    SkelEdge { ends, kind: SkelKind::Virtual { node: base + c, edge: cii } },
                ],
            ));
            comps[a].1[ai].kind = SkelKind::Virtual { node: base + s, edge: 0 };
            comps[c].1[cii].kind = SkelKind::Virtual { node: base + s, edge: 1 };
        } else {
            comps[a].1[ai].kind = SkelKind::Virtual { node: base + c, edge: cii };
            comps[c].1[cii].kind = SkelKind::Virtual { node: base + a, edge: ai };
        }
    }
    for (kind, sk) in comps.into_iter().chain(extra) {
        nodes.push(new_node(kind, b, sk));
    }
}

fn number_block_tree(nodes: &mut [Node], root: NodeId) {
    let mut t = 0;
    // (node, parent, next edge index)
    let mut stack: Vec<(NodeId, NodeId, usize)> = vec![(root, usize::MAX, 0)];
    nodes[root].tin = t;
    t += 1;
    while let Some(&mut (x, p, ref mut i)) = stack.last_mut() {
        if *i < nodes[x].edges.len() {
            let k = *i;
            *i += 1;
            if let SkelKind::Virtual { node, edge } = nodes[x].edges[k].kind {
                if node != p {
                    nodes[node].parent = Some((x, edge));
                    nodes[x].children.push((node, k));
                    nodes[node].tin = t;
                    t += 1;
                    stack.push((node, x, 0));
                }
            }
            continue;
        }
        nodes[x].tout = t;
        stack.pop();
    }
}

fn compute_reps(ct: &ConTree) -> Vec<Vec<[EdgeId; 2]>> {
    let nodes = &ct.nodes;
    let mut rep: Vec<Vec<[EdgeId; 2]>> = nodes
        .iter()
        .map(|nd| {
            nd.edges
                .iter()
                .map(|e| match e.kind {
                    SkelKind::Real(x) => [x, x],
                    SkelKind::Virtual { .. } => [usize::MAX; 2],
                })
                .collect()
        })
        .collect();
    for &root in &ct.block_root {
        let mut order = vec![root];
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            k += 1;
            order.extend(nodes[x].children.iter().map(|&(c, _)| c));
        }
        // children first: the parent's edge towards a child gets the child's pick
        for &x in order.iter().rev() {
            if let Some((p, pe)) = nodes[x].parent {
                let own = nodes[p].children.iter().find(|&&(c, _)| c == x).unwrap().1;
                let ends = nodes[x].edges[pe].ends;
                for (s, v) in ends.into_iter().enumerate() {
                    let j = *nodes[x].edges_at(v).iter().find(|&&j| j != pe).unwrap();
                    let side = usize::from(nodes[x].edges[j].ends[1] == v);
                    let r = rep[x][j][side];
                    let ps = usize::from(nodes[p].edges[own].ends[1] == v);
                    debug_assert_eq!(nodes[p].edges[own].ends[s], v);
                    rep[p][own][ps] = r;
                }
            }
        }
        // then parents: a child's edge towards the parent
        for &x in &order {
            for &(c, own) in &nodes[x].children {
                let pe = nodes[c].parent.unwrap().1;
                let ends = nodes[c].edges[pe].ends;
                for v in ends {
                    let j = *nodes[x].edges_at(v).iter().find(|&&j| j != own).unwrap();
                    let side = usize::from(nodes[x].edges[j].ends[1] == v);
                    let r = rep[x][j][side];
                    let cs = usize::from(ends[1] == v);
                    rep[c][pe][cs] = r;
                }
            }
        }
    }
    rep
}
