//! Inserting edges into a fixed embedding: one shortest dual walk per pair,
//! then a drawing of all of them as a planarization with dummy vertices.

use super::{twin, Dart, Embedding, FaceId, Walk, WalkSearch};
use crate::graph::{EdgeId, InsertionSet, Multigraph, VertexId};
use std::collections::VecDeque;

/// What a planarization edge is a piece of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// Piece of a G-edge, directed like it.
    G { edge: EdgeId },
    /// Piece of the inserted edge with this F-index, drawn inside a G-face.
    F { index: usize, face: FaceId },
}

/// Plane drawing of G + F with every crossing replaced by a degree-4 dummy vertex.
#[derive(Clone, Debug)]
pub struct Planarization {
    /// Number of vertices of G; dummies follow in creation order.
    pub n_g: usize,
    pub ends: Vec<[VertexId; 2]>,
    pub rot: Vec<Vec<Dart>>,
    pub pieces: Vec<Piece>,
    /// Index of every dart in the rotation at its origin.
    pos: Vec<usize>,
    /// G-face every dart lies in, on its left.
    label: Vec<FaceId>,
    /// Darts by their G-face.
    by_face: Vec<Vec<Dart>>,
}

impl Planarization {
    fn new(emb: &Embedding) -> Planarization {
        let pieces = (0..emb.m()).map(|e| Piece::G { edge: e }).collect();
        let pos = (0..2 * emb.m()).map(|d| emb.position(d)).collect();
        let label: Vec<FaceId> = (0..2 * emb.m()).map(|d| emb.face_of(d)).collect();
        let by_face = emb.faces().map(|f| f.to_vec()).collect();
        Planarization { n_g: emb.n(), ends: emb.ends.clone(), rot: emb.rot.clone(), pieces, pos, label, by_face }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn dummies(&self) -> usize {
        self.n() - self.n_g
    }

    pub fn embedding(&self) -> Embedding {
        Embedding::from_parts(self.n(), self.ends.clone(), self.rot.clone()).expect("planarization stays a rotation system")
    }

    pub fn graph(&self) -> Multigraph {
        let edges: Vec<(VertexId, VertexId)> = self.ends.iter().map(|&[a, b]| (a, b)).collect();
        Multigraph::from_edges(self.n(), &edges).expect("planarization edges are valid")
    }

    fn origin(&self, d: Dart) -> VertexId {
        self.ends[d / 2][d % 2]
    }

    fn face_next(&self, d: Dart) -> Dart {
        let t = twin(d);
        let r = &self.rot[self.origin(t)];
        r[(self.pos[t] + 1) % r.len()]
    }

    fn set_rotation(&mut self, v: VertexId, rot: Vec<Dart>) {
        for (i, &d) in rot.iter().enumerate() {
            self.pos[d] = i;
        }
        self.rot[v] = rot;
    }

    fn push_darts(&mut self, faces: [FaceId; 2]) {
        for f in faces {
            self.by_face[f].push(self.label.len());
            self.label.push(f);
            self.pos.push(usize::MAX);
        }
    }

    /// Splits the edge of `d` at a new vertex. Dart ids stay put: the even dart
    /// keeps its origin, the odd one now leaves the new vertex, and the far
    /// end sees the new edge in its old slot. Returns the new vertex and edge.
    /// The rotation at the new vertex is left for the caller.
    fn subdivide(&mut self, e: EdgeId) -> (VertexId, EdgeId) {
        let [a, b] = self.ends[e];
        let x = self.rot.len();
        let e2 = self.ends.len();
        self.rot.push(Vec::new());
        self.ends[e] = [a, x];
        self.ends.push([x, b]);
        self.pieces.push(self.pieces[e]);
        self.push_darts([self.label[2 * e], self.label[2 * e + 1]]);
        let slot = self.pos[2 * e + 1];
        self.rot[b][slot] = 2 * e2 + 1;
        self.pos[2 * e2 + 1] = slot;
        (x, e2)
    }

    fn add_edge(&mut self, a: VertexId, b: VertexId, index: usize, face: FaceId) -> EdgeId {
        self.ends.push([a, b]);
        self.pieces.push(Piece::F { index, face });
        self.push_darts([face, face]);
        self.ends.len() - 1
    }

    fn insert_after(&mut self, v: VertexId, t: Dart, d: Dart) {
        let mut r = std::mem::take(&mut self.rot[v]);
        r.insert(self.pos[t] + 1, d);
        self.set_rotation(v, r);
    }
}

/// Result of inserting all pairs into a fixed embedding.
#[derive(Clone, Debug)]
pub struct FixedInsertion {
    /// One walk per pair, each computed against G alone.
    pub walks: Vec<Walk>,
    /// Sum of walk lengths: crossings between F and G.
    pub g_crossings: u64,
    /// Crossings among F-edges in the drawing.
    pub ff_crossings: u64,
    /// Crossing count per unordered F-pair `(i, j)`, `i < j`, only nonzero ones.
    pub ff_pairs: Vec<((usize, usize), u64)>,
    pub drawing: Planarization,
}

const NONE: usize = usize::MAX;

/// Draws pair `index` along `walk` in the current drawing, crossing as few
/// drawn F-pieces as possible. Returns the F-indices crossed, in order.
/// Only the faces inside the G-faces of the walk are traced.
/// `fid` is scratch space, all `NONE`, and is left that way.
fn draw_one(pl: &mut Planarization, fid: &mut Vec<usize>, index: usize, v: [VertexId; 2], walk: &Walk) -> Vec<usize> {
    let len = walk.len();
    fid.resize(pl.label.len(), NONE);
    let mut faces: Vec<Vec<Dart>> = Vec::new();
    // stage of each traced face: the walk visits each G-face at most once
    let mut state: Vec<usize> = Vec::new();
    for (t, &gf) in walk.faces.iter().enumerate() {
        for &d in &pl.by_face[gf] {
            if fid[d] != NONE {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = d;
            loop {
                fid[x] = faces.len();
                cyc.push(x);
                x = pl.face_next(x);
                if x == d {
                    break;
                }
            }
            faces.push(cyc);
            state.push(t);
        }
    }
    let nf = faces.len();
    let corner = |t: Dart| fid[twin(t)];
    let mut dist = vec![NONE; nf];
    let mut pred: Vec<Option<Dart>> = vec![None; nf];
    let mut queue = VecDeque::new();
    for &t in &pl.rot[v[0]] {
        let f = corner(t);
        if f != NONE && state[f] == 0 && dist[f] != 0 {
            dist[f] = 0;
            queue.push_back(f);
        }
    }
    let mut is_end = vec![false; nf];
    for &t in &pl.rot[v[1]] {
        let f = corner(t);
        if f != NONE && state[f] == len {
            is_end[f] = true;
        }
    }
    let mut end = None;
    while let Some(f) = queue.pop_front() {
        if is_end[f] {
            end = Some(f);
            break;
        }
        let t = state[f];
        for &d in &faces[f] {
            let g = fid[twin(d)];
            if g == NONE {
                continue;
            }
            let step = match pl.pieces[d / 2] {
                Piece::F { .. } if state[g] == t => 1,
                Piece::G { edge, .. } if t < len && edge == walk.edges[t] && state[g] == t + 1 => 0,
                _ => continue,
            };
            if dist[f] + step < dist[g] {
                dist[g] = dist[f] + step;
                pred[g] = Some(d);
                if step == 0 {
                    queue.push_front(g);
                } else {
                    queue.push_back(g);
                }
            }
        }
    }
    let last = end.expect("walk can be followed in the drawing");
    // crossing darts, each leaving the face before it
    let mut cross: Vec<Dart> = Vec::new();
    let mut f = last;
    while let Some(d) = pred[f] {
        cross.push(d);
        f = fid[d];
    }
    cross.reverse();
    let first = f;
    let mut anchor = [
        *pl.rot[v[0]].iter().find(|&&t| corner(t) == first).unwrap(),
        *pl.rot[v[1]].iter().find(|&&t| corner(t) == last).unwrap(),
    ];
    for &d in faces.iter().flatten() {
        fid[d] = NONE;
    }
    // G-face of each new piece: the stage advances at every G crossing
    let mut seg_face = vec![walk.faces[0]];
    for &d in &cross {
        let t = seg_face.len() - 1;
        let stage = walk.faces.iter().position(|&x| x == seg_face[t]).unwrap();
        let next = if matches!(pl.pieces[d / 2], Piece::G { .. }) { walk.faces[stage + 1] } else { seg_face[t] };
        seg_face.push(next);
    }
    let mut crossed_f = Vec::new();
    // (dummy, dart towards the start side's origin, dart towards the far side)
    let mut dummies: Vec<(VertexId, Dart, Dart)> = Vec::new();
    for &d in &cross {
        let e = d / 2;
        debug_assert!(cross.iter().filter(|&&x| x / 2 == e).count() == 1, "edge crossed twice");
        if let Piece::F { index: j, .. } = pl.pieces[e] {
            crossed_f.push(j);
        }
        let (x, e2) = pl.subdivide(e);
        for a in anchor.iter_mut() {
            if *a == 2 * e + 1 {
                *a = 2 * e2 + 1;
            }
        }
        // d runs u -> w with the start side on its left face walk
        let (to_u, to_w) = if d % 2 == 0 { (2 * e + 1, 2 * e2) } else { (2 * e2, 2 * e + 1) };
        dummies.push((x, to_u, to_w));
    }
    // chain of new pieces v1 - x1 - ... - xm - v2, each inside one G-face
    let mut nodes = vec![v[0]];
    nodes.extend(dummies.iter().map(|t| t.0));
    nodes.push(v[1]);
    let mut segs = Vec::new();
    for i in 0..nodes.len() - 1 {
        segs.push(pl.add_edge(nodes[i], nodes[i + 1], index, seg_face[i]));
    }
    pl.insert_after(v[0], anchor[0], 2 * segs[0]);
    let s_last = *segs.last().unwrap();
    pl.insert_after(v[1], anchor[1], 2 * s_last + 1);
    for (i, &(x, to_u, to_w)) in dummies.iter().enumerate() {
        pl.set_rotation(x, vec![to_u, 2 * segs[i] + 1, to_w, 2 * segs[i + 1]]);
    }
    crossed_f
}

/// Inserts every pair of `f` into the fixed embedding `emb`.
pub fn insert_edges_fixed(emb: &Embedding, f: &InsertionSet) -> FixedInsertion {
    let mut search = WalkSearch::new(emb);
    let walks: Vec<Walk> = f.pairs.iter().map(|&(a, b)| search.walk(emb, a, b)).collect();
    let g_crossings = walks.iter().map(|w| w.len() as u64).sum();
    let mut pl = Planarization::new(emb);
    let mut counts = std::collections::BTreeMap::new();
    let mut fid = Vec::new();
    for (i, (&(a, b), w)) in f.pairs.iter().zip(&walks).enumerate() {
        for j in draw_one(&mut pl, &mut fid, i, [a, b], w) {
            *counts.entry((j.min(i), j.max(i))).or_insert(0u64) += 1;
        }
    }
    let ff_pairs: Vec<((usize, usize), u64)> = counts.into_iter().collect();
    let ff_crossings = ff_pairs.iter().map(|p| p.1).sum();
    FixedInsertion { walks, g_crossings, ff_crossings, ff_pairs, drawing: pl }
}
