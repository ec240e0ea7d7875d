//! Optimal insertion of one edge over all embeddings: crossing costs of
//! skeleton edges, local searches in rigid skeletons and the preferences
//! an optimal route asks of every node it passes.

use crate::decomp::conpath::con_path;
use crate::decomp::{NodeId, NodeKind, SkelKind};
use crate::embed::{perturbation, splitmix64, twin, Embedding, FaceId};
use crate::frame::Frame;
use crate::graph::VertexId;
use crate::pref::Pref;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

const INF: u64 = u64::MAX;

/// Cheapest number of G-edges crossed when passing through the expansion
/// of a skeleton edge.
pub struct Costs {
    /// Expansion of the parent's edge towards the node.
    down: Vec<u64>,
    /// Expansion of the node's own parent edge.
    up: HashMap<NodeId, u64>,
    /// Weight and tie-break perturbation of every edge of an R-skeleton,
    /// filled when a route first passes the node.
    r_weights: HashMap<NodeId, Vec<(u64, u64)>>,
    search: Search,
}

impl Costs {
    pub fn new(fr: &Frame) -> Costs {
        let ct = &fr.ct;
        let mut costs =
            Costs { down: vec![0; ct.nodes.len()], up: HashMap::new(), r_weights: HashMap::new(), search: Search::default() };
        let mut order: Vec<NodeId> = (0..ct.nodes.len())
            .filter(|&x| !matches!(ct.kind(x), NodeKind::C | NodeKind::D))
            .collect();
        order.sort_by_key(|&x| Reverse(ct.nodes[x].tin));
        for x in order {
            if let Some((_, j)) = ct.nodes[x].parent {
                costs.down[x] = costs.cross(fr, x, j);
            }
        }
        costs
    }

    fn r_weights(&mut self, fr: &Frame, mu: NodeId) -> Vec<(u64, u64)> {
        if let Some(w) = self.r_weights.remove(&mu) {
            return w;
        }
        (0..fr.ct.nodes[mu].edges.len()).map(|k| (self.edge_cost(fr, mu, k), skeleton_perturbation(fr, mu, k))).collect()
    }

    pub fn edge_cost(&mut self, fr: &Frame, mu: NodeId, k: usize) -> u64 {
        let nd = &fr.ct.nodes[mu];
        match nd.edges[k].kind {
            SkelKind::Real(_) => 1,
            SkelKind::Virtual { node, .. } => {
                if nd.parent.map(|p| p.1) == Some(k) {
                    self.up(fr, mu)
                } else {
                    self.down[node]
                }
            }
        }
    }

    fn up(&mut self, fr: &Frame, mu: NodeId) -> u64 {
        if let Some(&c) = self.up.get(&mu) {
            return c;
        }
        let ct = &fr.ct;
        let mut chain = vec![mu];
        let mut x = mu;
        loop {
            let p = ct.nodes[x].parent.expect("node with a parent edge").0;
            if ct.nodes[p].parent.is_none() || self.up.contains_key(&p) {
                break;
            }
            chain.push(p);
            x = p;
        }
        for &x in chain.iter().rev() {
            let p = ct.nodes[x].parent.unwrap().0;
            let j = ct.nodes[p].edge_to(x).unwrap();
            let c = self.cross(fr, p, j);
            self.up.insert(x, c);
        }
        self.up[&mu]
    }

    /// Cost of passing through the expansion of the skeleton of `nu` between
    /// the two sides of its edge `j`.
    fn cross(&mut self, fr: &Frame, nu: NodeId, j: usize) -> u64 {
        let ne = fr.ct.nodes[nu].edges.len();
        let w: Vec<u64> = (0..ne).map(|k| if k == j { INF } else { self.edge_cost(fr, nu, k) }).collect();
        match fr.ct.kind(nu) {
            NodeKind::S => w.iter().copied().filter(|&c| c != INF).min().unwrap(),
            NodeKind::P => w.iter().copied().filter(|&c| c != INF).fold(0u64, |a, c| a.saturating_add(c)),
            NodeKind::R => {
                let emb = fr.r_emb[nu].as_ref().unwrap();
                let s = [emb.face_of(2 * j)];
                let t = [emb.face_of(2 * j + 1)];
                let w: Vec<(u64, u64)> = w.iter().enumerate().map(|(k, &c)| (c, skeleton_perturbation(fr, nu, k))).collect();
                self.search.run(emb, &w, &[], &s, &t).0
            }
            k => panic!("no crossing cost for {k:?}"),
        }
    }
}

fn skeleton_perturbation(fr: &Frame, mu: NodeId, k: usize) -> u64 {
    match fr.ct.nodes[mu].edges[k].kind {
        SkelKind::Real(e) => perturbation(e),
        SkelKind::Virtual { .. } => splitmix64(((mu as u64) << 24 | k as u64) ^ 0x5bd1_e995_0000_0000) >> 24,
    }
}

/// Dijkstra state of one face.
#[derive(Clone, Copy)]
struct Label {
    best: (u64, u64),
    from: FaceId,
    is_dst: bool,
}

const FRESH: Label = Label { best: (INF, INF), from: usize::MAX, is_dst: false };

/// Dijkstra state kept between searches; only touched entries are reset.
#[derive(Default)]
struct Search {
    label: Vec<Label>,
    touched: Vec<FaceId>,
    heap: BinaryHeap<Reverse<(u64, u64, FaceId)>>,
}

impl Search {
    /// Weighted shortest dual path in the skeleton embedding `emb` from any
    /// face in `src` to any face in `dst`. Edge `k` costs `w[k].0`, with
    /// `w[k].1` breaking ties; edges in `blocked` or of weight `INF` cannot
    /// be crossed. Returns the cost and the start and end faces.
    fn run(&mut self, emb: &Embedding, w: &[(u64, u64)], blocked: &[usize], src: &[FaceId], dst: &[FaceId]) -> (u64, FaceId, FaceId) {
        let nf = emb.face_count();
        if self.label.len() < nf {
            self.label.resize(nf, FRESH);
        }
        self.heap.clear();
        for &f in src {
            self.label[f].best = (0, 0);
            self.label[f].from = f;
            self.touched.push(f);
            self.heap.push(Reverse((0, 0, f)));
        }
        for &f in dst {
            self.label[f].is_dst = true;
            self.touched.push(f);
        }
        let mut found = None;
        while let Some(Reverse((c, p, f))) = self.heap.pop() {
            let here = self.label[f];
            if (c, p) > here.best {
                continue;
            }
            if here.is_dst {
                found = Some((c, here.from, f));
                break;
            }
            for &d in emb.face(f) {
                let k = d / 2;
                let (wk, pk) = w[k];
                if wk == INF || blocked.contains(&k) {
                    continue;
                }
                let g = emb.face_of(twin(d));
                let key = (c + wk, p + pk);
                let there = &mut self.label[g];
                if key < there.best {
                    if there.best.0 == INF && !there.is_dst {
                        self.touched.push(g);
                    }
                    there.best = key;
                    there.from = here.from;
                    self.heap.push(Reverse((key.0, key.1, g)));
                }
            }
        }
        for f in self.touched.drain(..) {
            self.label[f] = FRESH;
        }
        found.expect("skeleton dual is connected")
    }
}

/// Where a route enters or leaves a skeleton.
#[derive(Clone, Copy, Debug)]
enum End {
    Vertex(VertexId),
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub value: u64,
    pub path: Vec<NodeId>,
    pub prefs: BTreeMap<NodeId, Pref>,
}

/// Whether the S-face merged with face `phi` of R-node `mu` across the
/// link to S-node `nu` is not the default face of `nu`.
fn merged_s_spin(fr: &Frame, mu: NodeId, nu: NodeId, phi: FaceId) -> bool {
    let nd = &fr.ct.nodes[mu];
    let j = nd.edge_to(nu).unwrap();
    let jt = match nd.edges[j].kind {
        SkelKind::Virtual { edge, .. } => edge,
        SkelKind::Real(_) => unreachable!(),
    };
    let [low, high] = nd.edges[j].ends;
    let emb = fr.r_emb[mu].as_ref().unwrap();
    if emb.face_of(2 * j) == phi {
        !fr.s_forward(nu, jt, high)
    } else {
        !fr.s_forward(nu, jt, low)
    }
}

/// Face `phi` of R-node `mu` at vertex `c`, named by its two bounding skeleton edges.
fn corner_label(fr: &Frame, mu: NodeId, c: VertexId, phi: FaceId) -> [usize; 2] {
    let li = fr.ct.nodes[mu].local(c).unwrap();
    let emb = fr.r_emb[mu].as_ref().unwrap();
    let t = *emb.rotation(li).iter().find(|&&t| emb.face_of(twin(t)) == phi).expect("face at the vertex");
    let (a, b) = (t / 2, emb.rot_next(t) / 2);
    [a.min(b), a.max(b)]
}

/// An optimal insertion of `{v1, v2}` into `G` over all of its embeddings.
pub fn insert_single(fr: &Frame, costs: &mut Costs, v1: VertexId, v2: VertexId) -> Insertion {
    let ct = &fr.ct;
    let path = con_path(ct, v1, v2);
    let n = path.len();
    let end_at = |i: usize, other: Option<usize>, v: VertexId| match other {
        None => End::Vertex(v),
        Some(o) if ct.kind(path[o]) == NodeKind::C => End::Vertex(ct.nodes[path[o]].verts[0]),
        Some(o) => End::Edge(ct.nodes[path[i]].edge_to(path[o]).unwrap()),
    };
    let mut value = 0u64;
    let mut faces: Vec<Option<[FaceId; 2]>> = vec![None; n];
    for i in 0..n {
        let mu = path[i];
        if ct.kind(mu) != NodeKind::R {
            continue;
        }
        let a = end_at(i, i.checked_sub(1), v1);
        let b = end_at(i, (i + 1 < n).then_some(i + 1), v2);
        let nd = &ct.nodes[mu];
        let emb = fr.r_emb[mu].as_ref().unwrap();
        let w = costs.r_weights(fr, mu);
        let mut blocked = Vec::new();
        let mut side = |x: End| match x {
            End::Vertex(v) => emb.faces_at(nd.local(v).unwrap()),
            End::Edge(j) => {
                blocked.push(j);
                vec![emb.face_of(2 * j), emb.face_of(2 * j + 1)]
            }
        };
        let s = side(a);
        let t = side(b);
        let (c, f, g) = costs.search.run(emb, &w, &blocked, &s, &t);
        costs.r_weights.insert(mu, w);
        value += c;
        faces[i] = Some([f, g]);
    }
    let mut prefs = BTreeMap::new();
    for i in 1..n.saturating_sub(1) {
        let nu = path[i];
        let peers = [path[i - 1], path[i + 1]];
        // face used by an R-peer on its link towards `nu`
        let link_face = |j: usize| {
            if ct.kind(peers[j]) != NodeKind::R {
                return None;
            }
            let [f, g] = faces[i - 1 + 2 * j].unwrap();
            Some(if j == 0 { g } else { f })
        };
        let pref = match ct.kind(nu) {
            NodeKind::S => {
                let spin = |j: usize| link_face(j).map_or(false, |phi| merged_s_spin(fr, peers[j], nu, phi));
                Pref::S { peers, switching: spin(0) ^ spin(1) }
            }
            NodeKind::P => {
                let side = |j: usize| {
                    link_face(j).map(|phi| {
                        let k = ct.nodes[peers[j]].edge_to(nu).unwrap();
                        fr.r_emb[peers[j]].as_ref().unwrap().face_of(2 * k) == phi
                    })
                };
                Pref::P { peers, sides: [side(0), side(1)] }
            }
            NodeKind::C => {
                let c = ct.nodes[nu].verts[0];
                let label = |j: usize| link_face(j).map(|phi| corner_label(fr, peers[j], c, phi));
                Pref::C { peers, faces: [label(0), label(1)] }
            }
            NodeKind::R | NodeKind::D => continue,
        };
        prefs.insert(nu, pref.normalized());
    }
    Insertion { value, path, prefs }
}
