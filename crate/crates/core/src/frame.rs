//! The decomposition together with a fixed default embedding, and gluing of
//! per-node choices (R flips, P orders, block placements at cut vertices)
//! into a rotation system of the whole graph.

use crate::decomp::{ConTree, NodeId, NodeKind, SkelKind};
use crate::embed::{dart_edge, dart_of, test_and_embed, Dart, Embedding};
use crate::error::MeiError;
use crate::graph::{EdgeId, Multigraph, VertexId};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Where a block sits around a cut vertex: inside the corner after
/// `host_rot[corner]` of its host, with its own corner after `rot[open]`
/// facing the host.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pub block: usize,
    pub host: usize,
    pub corner: usize,
    pub open: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CutLayout {
    pub root: usize,
    pub placed: Vec<Placement>,
}

/// Free parameters of an embedding. Unset entries fall back to the default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Choices {
    pub flipped: Vec<bool>,
    /// Cyclic order at the lower pole, per P-node.
    pub p_order: BTreeMap<NodeId, Vec<usize>>,
    pub cuts: BTreeMap<VertexId, CutLayout>,
}

impl Choices {
    pub fn flip(&self, mu: NodeId) -> bool {
        self.flipped.get(mu).copied().unwrap_or(false)
    }
}

pub struct Frame {
    /// Shared with the mirrored frame.
    pub ct: Arc<ConTree>,
    pub gd: Embedding,
    /// Default skeleton of every R-node as an embedded graph on local ids.
    pub r_emb: Vec<Option<Embedding>>,
    /// Default order at the lower pole of every P-node.
    pub p_default: Vec<Vec<usize>>,
    /// Per S-node and local vertex: the edges entering and leaving it along
    /// the canonical direction (edge 0 from its lower to its higher end).
    pub s_dir: Vec<Vec<[usize; 2]>>,
    /// Largest edge id of each D-node; its corners mark the default face.
    pub d_max: Vec<EdgeId>,
}

impl Frame {
    /// Checks connectivity and planarity and builds all default data.
    pub fn new(g: &Multigraph) -> Result<Frame, MeiError> {
        if !g.is_connected() {
            return Err(MeiError::Disconnected);
        }
        let gd = test_and_embed(g)?;
        let ct = crate::run_with_stack(|| ConTree::build(g));
        Ok(Frame::with_embedding(Arc::new(ct), gd))
    }

    /// The same decomposition over the mirrored reference embedding.
    pub fn mirrored(&self) -> Frame {
        Frame::with_embedding(self.ct.clone(), self.gd.mirror())
    }

    pub fn with_embedding(ct: Arc<ConTree>, gd: Embedding) -> Frame {
        let nn = ct.nodes.len();
        let mut r_emb = vec![None; nn];
        let mut p_default = vec![Vec::new(); nn];
        let mut s_dir = vec![Vec::new(); nn];
        let mut d_max = vec![usize::MAX; nn];
        for (id, nd) in ct.nodes.iter().enumerate() {
            match nd.kind {
                NodeKind::R => {
                    let rot = nd
                        .verts
                        .iter()
                        .map(|&v| {
                            ct.skeleton_rotation(&gd, id, v)
                                .into_iter()
                                .map(|i| skel_dart(nd.edges[i].ends, i, v))
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>();
                    let ends = nd
                        .edges
                        .iter()
                        .map(|e| [nd.local(e.ends[0]).unwrap(), nd.local(e.ends[1]).unwrap()])
                        .collect();
                    r_emb[id] = Some(
                        Embedding::from_parts(nd.verts.len(), ends, rot).expect("induced skeleton embedding"),
                    );
                }
                NodeKind::P => p_default[id] = ct.skeleton_rotation(&gd, id, nd.verts[0]),
                NodeKind::S => {
                    let mut dir = cycle_direction(&ct, id);
                    if default_is_larger_corner(&ct, &gd, id, &dir) {
                        dir.iter_mut().for_each(|d| d.swap(0, 1));
                    }
                    s_dir[id] = dir;
                }
                NodeKind::D => d_max[id] = nd.edges.iter().map(|e| real(e.kind)).max().unwrap_or(usize::MAX),
                NodeKind::C => {}
            }
        }
        Frame { ct, gd, r_emb, p_default, s_dir, d_max }
    }

    pub fn g(&self) -> &Multigraph {
        &self.ct.g
    }

    /// Whether the corner after skeleton edge `a` at `v` of S-node `mu` lies
    /// in its default face.
    pub fn s_default_after(&self, mu: NodeId, v: VertexId, a: usize) -> bool {
        let li = self.ct.nodes[mu].local(v).expect("vertex of the S-skeleton");
        self.s_dir[mu][li][0] == a
    }

    /// Whether skeleton edge `i` of S-node `mu` runs from `from` in the canonical direction.
    pub fn s_forward(&self, mu: NodeId, i: usize, from: VertexId) -> bool {
        let li = self.ct.nodes[mu].local(from).unwrap();
        self.s_dir[mu][li][1] == i
    }

    /// Cyclic order of skeleton edges of `mu` at `v` under `ch`.
    pub fn node_rotation(&self, ch: &Choices, mu: NodeId, v: VertexId) -> Vec<usize> {
        let nd = &self.ct.nodes[mu];
        let li = nd.local(v).expect("vertex of the skeleton");
        match nd.kind {
            NodeKind::R => {
                let emb = self.r_emb[mu].as_ref().unwrap();
                let mut r: Vec<usize> = emb.rotation(li).iter().map(|&d| dart_edge(d)).collect();
                if ch.flip(mu) {
                    r.reverse();
                }
                r
            }
            NodeKind::P => {
                let mut r = ch.p_order.get(&mu).cloned().unwrap_or_else(|| self.p_default[mu].clone());
                if li == 1 {
                    r.reverse();
                }
                r
            }
            NodeKind::D => {
                let mut r: Vec<usize> = (0..nd.edges.len()).collect();
                r.sort_by_key(|&i| real(nd.edges[i].kind));
                if li == 1 {
                    r.reverse();
                }
                r
            }
            NodeKind::S => nd.inc[li].clone(),
            NodeKind::C => Vec::new(),
        }
    }

    /// Rotation at `v` of block `b` on its own, as darts of G.
    pub fn block_rotation(&self, ch: &Choices, b: usize, v: VertexId) -> Vec<Dart> {
        let ct = &self.ct;
        let start = *ct.vnodes[v].iter().find(|&&x| ct.nodes[x].block == b).expect("vertex in block");
        let mut out = Vec::new();
        let r0 = self.node_rotation(ch, start, v);
        let len = r0.len();
        // (node, rotation, next position, remaining)
        let mut stack: Vec<(NodeId, Vec<usize>, usize, usize)> = vec![(start, r0, 0, len)];
        while let Some(top) = stack.last_mut() {
            if top.3 == 0 {
                stack.pop();
                continue;
            }
            let i = top.1[top.2 % top.1.len()];
            top.2 += 1;
            top.3 -= 1;
            match ct.nodes[top.0].edges[i].kind {
                SkelKind::Real(e) => out.push(dart_of(&ct.g, e, v)),
                SkelKind::Virtual { node, edge } => {
                    let r = self.node_rotation(ch, node, v);
                    let k = r.iter().position(|&x| x == edge).unwrap();
                    let n = r.len();
                    stack.push((node, r, k + 1, n - 1));
                }
            }
        }
        out
    }

    /// Default layout at a cut vertex: everything in the resting corner of the lowest block.
    pub fn default_layout(&self, c: VertexId, rots: &BTreeMap<usize, Vec<Dart>>) -> CutLayout {
        let blocks = &self.ct.bc.vertex_blocks[c];
        let root = blocks[0];
        let corner = resting_corner(&rots[&root]);
        let placed = blocks[1..]
            .iter()
            .map(|&b| Placement { block: b, host: root, corner, open: resting_corner(&rots[&b]) })
            .collect();
        CutLayout { root, placed }
    }

    /// Rotation at cut vertex `c` assembled from its block rotations.
    pub fn cut_rotation(&self, layout: &CutLayout, rots: &BTreeMap<usize, Vec<Dart>>) -> Vec<Dart> {
        let mut kids: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for p in &layout.placed {
            kids.entry((p.host, p.corner)).or_default().push((p.block, p.open));
        }
        for l in kids.values_mut() {
            l.sort_unstable();
        }
        let mut out = Vec::new();
        let r = &rots[&layout.root];
        emit(layout.root, 0, r.len(), rots, &kids, &mut out);
        out
    }

    pub fn embed(&self, ch: &Choices) -> Embedding {
        let g = self.g();
        let ct = &self.ct;
        let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); g.n()];
        for v in 0..g.n() {
            let blocks = &ct.bc.vertex_blocks[v];
            if blocks.len() == 1 {
                if !ct.bc.blocks[blocks[0]].edges.is_empty() {
                    rot[v] = self.block_rotation(ch, blocks[0], v);
                }
                continue;
            }
            let rots: BTreeMap<usize, Vec<Dart>> =
                blocks.iter().map(|&b| (b, self.block_rotation(ch, b, v))).collect();
            let layout = ch.cuts.get(&v).cloned().unwrap_or_else(|| self.default_layout(v, &rots));
            rot[v] = self.cut_rotation(&layout, &rots);
        }
        Embedding::from_rotations(g, rot).expect("glued rotation system")
    }

    /// Default order of the P-node edges, made explicit.
    pub fn default_choices(&self) -> Choices {
        Choices { flipped: vec![false; self.ct.nodes.len()], ..Choices::default() }
    }
}

fn emit(
    b: usize,
    start: usize,
    count: usize,
    rots: &BTreeMap<usize, Vec<Dart>>,
    kids: &BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    out: &mut Vec<Dart>,
) {
    let r = &rots[&b];
    for s in 0..count {
        let i = (start + s) % r.len();
        out.push(r[i]);
        if let Some(l) = kids.get(&(b, i)) {
            for &(child, open) in l {
                let n = rots[&child].len();
                emit(child, open + 1, n, rots, kids, out);
            }
        }
    }
}

/// Corner of a block rotation used when nothing asks for a particular one:
/// the one between the smallest pair of edges, so that it names the same
/// corner in a mirrored rotation. Ties only arise with two darts.
pub fn resting_corner(rot: &[Dart]) -> usize {
    let n = rot.len();
    (0..n)
        .rev()
        .min_by_key(|&i| {
            let (a, b) = (dart_edge(rot[i]), dart_edge(rot[(i + 1) % n]));
            (a.min(b), a.max(b))
        })
        .unwrap()
}

fn real(k: SkelKind) -> EdgeId {
    match k {
        SkelKind::Real(e) => e,
        SkelKind::Virtual { .. } => usize::MAX,
    }
}

/// Dart of skeleton edge `i` (ends ordered low-high) leaving `v`, on local ids.
fn skel_dart(ends: [VertexId; 2], i: usize, v: VertexId) -> Dart {
    if ends[0] == v {
        2 * i
    } else {
        2 * i + 1
    }
}

/// Whether the default face of S-node `mu` under `dir` meets, at the first
/// vertex where the two faces differ there, the corner with the larger pair
/// of edge ids in `gd`. Mirroring `gd` keeps corners as edge pairs, so this
/// makes the default face follow the reference embedding.
fn default_is_larger_corner(ct: &ConTree, gd: &Embedding, mu: NodeId, dir: &[[usize; 2]]) -> bool {
    let nd = &ct.nodes[mu];
    for (li, &v) in nd.verts.iter().enumerate() {
        let darts: Vec<Dart> =
            gd.rotation(v).iter().copied().filter(|&d| ct.nodes[ct.home[dart_edge(d)].0].block == nd.block).collect();
        if darts.len() < 3 {
            continue;
        }
        let class: Vec<usize> = darts.iter().map(|&d| ct.classify(mu, dart_edge(d))).collect();
        let n = darts.len();
        let corner = |a: usize| {
            let i = (0..n).find(|&i| class[i] == a && class[(i + 1) % n] != a).unwrap();
            let (x, y) = (dart_edge(darts[i]), dart_edge(darts[(i + 1) % n]));
            (x.min(y), x.max(y))
        };
        let [p, q] = dir[li];
        return corner(p) > corner(q);
    }
    false
}

fn cycle_direction(ct: &ConTree, mu: NodeId) -> Vec<[usize; 2]> {
    let nd = &ct.nodes[mu];
    let mut dir = vec![[usize::MAX; 2]; nd.verts.len()];
    let mut e = 0;
    let mut v = nd.edges[0].ends[1];
    loop {
        let li = nd.local(v).unwrap();
        let next = if nd.inc[li][0] == e { nd.inc[li][1] } else { nd.inc[li][0] };
        dir[li] = [e, next];
        if next == 0 {
            break;
        }
        let ends = nd.edges[next].ends;
        v = if ends[0] == v { ends[1] } else { ends[0] };
        e = next;
    }
    dir
}
