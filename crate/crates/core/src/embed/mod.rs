//! Rotation systems, faces and dual walks.
//!
//! Dart `2e` runs from `ends(e)[0]` to `ends(e)[1]`, dart `2e+1` the other way.
//! The face successor of a dart `d` is the rotation successor of its twin.

mod fixed;
mod lr;

pub use fixed::{insert_edges_fixed, FixedInsertion, Piece, Planarization};
pub use lr::test_and_embed;

use crate::error::MeiError;
use crate::graph::{EdgeId, Multigraph, VertexId};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub type Dart = usize;
pub type FaceId = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn dart_edge(d: Dart) -> EdgeId {
    d >> 1
}

#[inline]
pub fn dart_of(g: &Multigraph, e: EdgeId, from: VertexId) -> Dart {
    if g.ends(e)[0] == from {
        2 * e
    } else {
        2 * e + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    ends: Vec<[VertexId; 2]>,
    rot: Vec<Vec<Dart>>,
    pos: Vec<usize>,
    face_of: Vec<FaceId>,
    /// Darts of face `f` are `face_darts[face_start[f]..face_start[f + 1]]`.
    face_start: Vec<usize>,
    face_darts: Vec<Dart>,
}

impl Embedding {
    /// Builds an embedding from per-vertex cyclic dart orders and checks that
    /// every dart appears exactly once at its origin.
    pub fn from_rotations(g: &Multigraph, rot: Vec<Vec<Dart>>) -> Result<Self, MeiError> {
        Self::from_parts(g.n(), g.edges().to_vec(), rot)
    }

    pub fn from_parts(
        n: usize,
        ends: Vec<[VertexId; 2]>,
        rot: Vec<Vec<Dart>>,
    ) -> Result<Self, MeiError> {
        if rot.len() != n {
            return Err(MeiError::BadRotation("vertex count".into()));
        }
        let nd = 2 * ends.len();
        let mut pos = vec![usize::MAX; nd];
        for (v, r) in rot.iter().enumerate() {
            for (i, &d) in r.iter().enumerate() {
                if d >= nd || pos[d] != usize::MAX {
                    return Err(MeiError::BadRotation(format!("dart {d} repeated or unknown")));
                }
                if ends[d >> 1][d & 1] != v {
                    return Err(MeiError::BadRotation(format!("dart {d} not at vertex {v}")));
                }
                pos[d] = i;
            }
        }
        if pos.iter().any(|&p| p == usize::MAX) {
            return Err(MeiError::BadRotation("missing dart".into()));
        }
        let mut emb = Embedding { ends, rot, pos, face_of: vec![usize::MAX; nd], face_start: vec![0], face_darts: Vec::with_capacity(nd) };
        emb.trace_faces();
        Ok(emb)
    }

    fn trace_faces(&mut self) {
        let nd = self.face_of.len();
        for start in 0..nd {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let f = self.face_start.len() - 1;
            let mut d = start;
            loop {
                self.face_of[d] = f;
                self.face_darts.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            self.face_start.push(self.face_darts.len());
        }
        if nd == 0 {
            self.face_start.push(0);
        }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn m(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e]
    }

    pub fn origin(&self, d: Dart) -> VertexId {
        self.ends[d >> 1][d & 1]
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.ends[d >> 1][1 - (d & 1)]
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rot
    }

    pub fn position(&self, d: Dart) -> usize {
        self.pos[d]
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        let r = &self.rot[self.origin(d)];
        r[(self.pos[d] + 1) % r.len()]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let r = &self.rot[self.origin(d)];
        r[(self.pos[d] + r.len() - 1) % r.len()]
    }

    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(twin(d))
    }

    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    /// Every face as its darts in walk order, by face id.
    pub fn faces(&self) -> impl ExactSizeIterator<Item = &[Dart]> + '_ {
        (0..self.face_count()).map(|f| self.face(f))
    }

    /// Darts of face `f` in walk order.
    pub fn face(&self, f: FaceId) -> &[Dart] {
        &self.face_darts[self.face_start[f]..self.face_start[f + 1]]
    }

    pub fn face_count(&self) -> usize {
        self.face_start.len() - 1
    }

    /// Faces incident to `v`, ascending, without repeats.
    pub fn faces_at(&self, v: VertexId) -> Vec<FaceId> {
        let mut fs: Vec<FaceId> = self.rot[v].iter().map(|&d| self.face_of[d]).collect();
        if fs.is_empty() && self.m() == 0 {
            fs.push(0);
        }
        fs.sort_unstable();
        fs.dedup();
        fs
    }

    /// `V - E + F`, which is 2 for a connected plane graph.
    pub fn euler_characteristic(&self) -> i64 {
        self.n() as i64 - self.m() as i64 + self.face_count() as i64
    }

    pub fn mirror(&self) -> Embedding {
        let rot = self.rot.iter().map(|r| r.iter().rev().copied().collect()).collect();
        Embedding::from_parts(self.n(), self.ends.clone(), rot).expect("mirror of a valid rotation")
    }

    /// Faces as dart sets, sorted. Two embeddings with equal fingerprints
    /// have the same dual graph and vertex-face incidences.
    pub fn fingerprint(&self) -> Vec<Vec<Dart>> {
        let mut out: Vec<Vec<Dart>> = self
            .faces()
            .map(|f| {
                let mut s = f.to_vec();
                s.sort_unstable();
                s
            })
            .collect();
        out.sort();
        out
    }

    /// Unweighted dual distance between the face sets of two vertices.
    pub fn dual_distance(&self, a: VertexId, b: VertexId) -> usize {
        let nf = self.face_count();
        let mut dist = vec![usize::MAX; nf];
        let mut queue = std::collections::VecDeque::new();
        for f in self.faces_at(a) {
            dist[f] = 0;
            queue.push_back(f);
        }
        let targets = self.faces_at(b);
        let mut is_target = vec![false; nf];
        for &f in &targets {
            is_target[f] = true;
        }
        while let Some(f) = queue.pop_front() {
            if is_target[f] {
                return dist[f];
            }
            for &d in self.face(f) {
                let h = self.face_of[twin(d)];
                if dist[h] == usize::MAX {
                    dist[h] = dist[f] + 1;
                    queue.push_back(h);
                }
            }
        }
        usize::MAX
    }

    /// Text dump: one line per vertex listing its darts as `edge:head`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (v, r) in self.rot.iter().enumerate() {
            s.push_str(&v.to_string());
            s.push(':');
            for &d in r {
                s.push_str(&format!(" {}>{}", d >> 1, self.head(d)));
            }
            s.push('\n');
        }
        s
    }
}

/// A dual walk: `faces[0..=len]`, crossing `edges[t]` between `faces[t]` and `faces[t+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub faces: Vec<FaceId>,
    pub edges: Vec<EdgeId>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Secondary weight of an edge crossing; sums of these break ties between
/// equally short walks so that shortest walks are unique in practice.
pub(crate) fn perturbation(e: EdgeId) -> u64 {
    splitmix64(e as u64) >> 24
}

const NONE: u32 = u32::MAX;

/// Search state of one face.
#[derive(Clone, Copy)]
struct Label {
    len: u32,
    pred_face: u32,
    pred_edge: u32,
    done: bool,
    target: bool,
    pert: u64,
}

const FRESH: Label = Label { len: u32::MAX, pred_face: NONE, pred_edge: NONE, done: false, target: false, pert: u64::MAX };

/// Scratch space for repeated walk searches in one embedding; only the
/// faces a search touched are reset before the next one.
pub struct WalkSearch {
    label: Vec<Label>,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<(u32, u64, u32)>>,
}

impl WalkSearch {
    pub fn new(emb: &Embedding) -> WalkSearch {
        WalkSearch { label: vec![FRESH; emb.face_count()], touched: Vec::new(), heap: BinaryHeap::new() }
    }

    fn touch(&mut self, f: usize) -> &mut Label {
        if self.label[f].len == u32::MAX && !self.label[f].target {
            self.touched.push(f as u32);
        }
        &mut self.label[f]
    }

    /// Shortest dual walk from the faces at `v1` to the faces at `v2`.
    pub fn walk(&mut self, emb: &Embedding, v1: VertexId, v2: VertexId) -> Walk {
        for &f in &self.touched {
            self.label[f as usize] = FRESH;
        }
        self.touched.clear();
        self.heap.clear();
        for f in emb.faces_at(v2) {
            self.touch(f).target = true;
        }
        for f in emb.faces_at(v1) {
            let l = self.touch(f);
            (l.len, l.pert) = (0, 0);
            self.heap.push(Reverse((0, 0, f as u32)));
        }
        let mut end = None;
        while let Some(Reverse((len, pert, f))) = self.heap.pop() {
            let f = f as usize;
            if self.label[f].done {
                continue;
            }
            self.label[f].done = true;
            if self.label[f].target {
                end = Some(f);
                break;
            }
            for &d in emb.face(f) {
                let h = emb.face_of[twin(d)];
                if self.label[h].done {
                    continue;
                }
                let e = dart_edge(d);
                let key = (len + 1, pert + perturbation(e));
                let cur = self.label[h];
                let better = key < (cur.len, cur.pert)
                    || (key == (cur.len, cur.pert) && (f as u32, e as u32) < (cur.pred_face, cur.pred_edge));
                if better {
                    let l = self.touch(h);
                    (l.len, l.pert, l.pred_face, l.pred_edge) = (key.0, key.1, f as u32, e as u32);
                    self.heap.push(Reverse((key.0, key.1, h as u32)));
                }
            }
        }
        let mut f = end.expect("connected graph has a walk between any two vertices");
        let mut faces = vec![f];
        let mut edges = Vec::new();
        while self.label[f].pred_face != NONE {
            edges.push(self.label[f].pred_edge as usize);
            f = self.label[f].pred_face as usize;
            faces.push(f);
        }
        faces.reverse();
        edges.reverse();
        Walk { faces, edges }
    }
}

/// Shortest dual walk from the faces at `v1` to the faces at `v2`.
pub fn insertion_walk(emb: &Embedding, v1: VertexId, v2: VertexId) -> Walk {
    WalkSearch::new(emb).walk(emb, v1, v2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_has_four_triangles() {
        let g = k4();
        let e = test_and_embed(&g).unwrap();
        assert_eq!(e.euler_characteristic(), 2);
        assert_eq!(e.face_count(), 4);
        assert!(e.faces().all(|f| f.len() == 3));
    }

    #[test]
    fn mirror_is_an_embedding() {
        let e = test_and_embed(&k4()).unwrap();
        let m = e.mirror();
        assert_eq!(m.euler_characteristic(), 2);
        assert_ne!(m.fingerprint(), e.fingerprint());
        assert_eq!(m.mirror(), e);
    }

    #[test]
    fn bad_rotation_rejected() {
        let g = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(Embedding::from_rotations(&g, vec![vec![1], vec![0]]).is_err());
        assert!(Embedding::from_rotations(&g, vec![vec![0], vec![1]]).is_ok());
    }

    #[test]
    fn single_vertex_has_one_face() {
        let g = Multigraph::new(1);
        let e = test_and_embed(&g).unwrap();
        assert_eq!(e.face_count(), 1);
        assert_eq!(e.euler_characteristic(), 2);
    }

    #[test]
    fn walk_in_k4_is_empty() {
        let e = test_and_embed(&k4()).unwrap();
        assert_eq!(insertion_walk(&e, 0, 1).len(), 0);
    }
}
