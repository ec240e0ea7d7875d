//! Left-right planarity test with embedding, after Brandes' description of
//! de Fraysseix and Rosenstiehl's criterion. Runs on the underlying simple
//! graph; parallel edges are put back as contiguous bunches afterwards.

use super::{dart_of, Embedding};
use crate::error::MeiError;
use crate::graph::Multigraph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy)]
struct Pair {
    left: Interval,
    right: Interval,
    id: usize,
}

struct Lr {
    n: usize,
    // simple edges
    eu: Vec<usize>,
    ev: Vec<usize>,
    adjs: Vec<Vec<(usize, usize)>>,
    // orientation
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    out: Vec<Vec<usize>>,
    // testing
    refe: Vec<usize>,
    side: Vec<i64>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    s: Vec<Pair>,
    next_id: usize,
    roots: Vec<usize>,
    // embedding
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<usize>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
}

impl Lr {
    fn other(&self, e: usize, v: usize) -> usize {
        if self.eu[e] == v {
            self.ev[e]
        } else {
            self.eu[e]
        }
    }

    fn half(&self, v: usize, e: usize) -> usize {
        2 * e + usize::from(self.eu[e] != v)
    }

    fn top_id(&self) -> usize {
        self.s.last().map_or(NONE, |p| p.id)
    }

    fn new_pair(&mut self, left: Interval, right: Interval) -> Pair {
        self.next_id += 1;
        Pair { left, right, id: self.next_id }
    }

    fn orient(&mut self, root: usize) {
        // frame: (vertex, index into adjs, child pending)
        let mut stack: Vec<(usize, usize, bool)> = vec![(root, 0, false)];
        while let Some(&mut (v, ref mut i, ref mut pending)) = stack.last_mut() {
            if *pending {
                *pending = false;
                let e = self.adjs[v][*i].1;
                *i += 1;
                self.after_edge(v, e);
                continue;
            }
            if *i >= self.adjs[v].len() {
                stack.pop();
                continue;
            }
            let (w, e) = self.adjs[v][*i];
            if self.oriented[e] {
                *i += 1;
                continue;
            }
            self.oriented[e] = true;
            self.src[e] = v;
            self.dst[e] = w;
            self.out[v].push(e);
            self.lowpt[e] = self.height[v];
            self.lowpt2[e] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = e;
                self.height[w] = self.height[v] + 1;
                *pending = true;
                stack.push((w, 0, false));
            } else {
                self.lowpt[e] = self.height[w];
                *i += 1;
                self.after_edge(v, e);
            }
        }
    }

    fn after_edge(&mut self, v: usize, vw: usize) {
        self.nesting[vw] = 2 * self.lowpt[vw] as i64;
        if self.lowpt2[vw] < self.height[v] {
            self.nesting[vw] += 1;
        }
        let e = self.parent_edge[v];
        if e != NONE {
            if self.lowpt[vw] < self.lowpt[e] {
                self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                self.lowpt[e] = self.lowpt[vw];
            } else if self.lowpt[vw] > self.lowpt[e] {
                self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
            } else {
                self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
            }
        }
    }

    fn conflicting(&self, iv: &Interval, b: usize) -> bool {
        match iv.high {
            Some(h) => !iv.empty() && self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &Pair) -> usize {
        if p.left.empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, root: usize) -> bool {
        let mut stack: Vec<(usize, usize, bool)> = vec![(root, 0, false)];
        while let Some(&mut (v, ref mut i, ref mut pending)) = stack.last_mut() {
            let e = self.parent_edge[v];
            if *pending {
                *pending = false;
                let idx = *i;
                *i += 1;
                let ei = self.out[v][idx];
                if !self.integrate(v, idx, ei, e) {
                    return false;
                }
                continue;
            }
            if *i >= self.out[v].len() {
                if e != NONE {
                    self.remove_back_edges(e);
                }
                stack.pop();
                continue;
            }
            let idx = *i;
            let ei = self.out[v][idx];
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.top_id();
            if ei == self.parent_edge[w] {
                *pending = true;
                stack.push((w, 0, false));
            } else {
                *i += 1;
                self.lowpt_edge[ei] = ei;
                let p = self.new_pair(Interval::default(), Interval { low: Some(ei), high: Some(ei) });
                self.s.push(p);
                if !self.integrate(v, idx, ei, e) {
                    return false;
                }
            }
        }
        true
    }

    fn integrate(&mut self, v: usize, idx: usize, ei: usize, e: usize) -> bool {
        if self.lowpt[ei] < self.height[v] {
            if idx == 0 {
                self.lowpt_edge[e] = self.lowpt_edge[ei];
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.new_pair(Interval::default(), Interval::default());
        loop {
            let mut q = self.s.pop().expect("constraint stack");
            if !q.left.empty() {
                std::mem::swap(&mut q.left, &mut q.right);
            }
            if !q.left.empty() {
                return false;
            }
            let qrl = q.right.low.unwrap();
            if self.lowpt[qrl] > self.lowpt[e] {
                if p.right.empty() {
                    p.right = q.right;
                } else {
                    self.refe[p.right.low.unwrap()] = q.right.high.unwrap();
                }
                p.right.low = q.right.low;
            } else {
                self.refe[qrl] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.s.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.s.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                std::mem::swap(&mut q.left, &mut q.right);
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(prl) = p.right.low {
                self.refe[prl] = q.right.high.map_or(NONE, |x| x);
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left = q.left;
            } else {
                self.refe[p.left.low.unwrap()] = q.left.high.map_or(NONE, |x| x);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.s.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.s.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.s.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.s.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = opt(self.refe[h]);
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refe[l] = p.right.low.map_or(NONE, |x| x);
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = opt(self.refe[h]);
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.refe[r] = p.left.low.map_or(NONE, |x| x);
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.s.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.s.last().expect("return edge keeps a pair on the stack");
            let hl = top.left.high;
            let hr = top.right.high;
            self.refe[e] = match (hl, hr) {
                (Some(l), None) => l,
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => l,
                (_, r) => r.map_or(NONE, |x| x),
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = Vec::new();
        let mut x = e;
        while self.refe[x] != NONE {
            chain.push(x);
            x = self.refe[x];
        }
        let mut s = self.side[x];
        for &y in chain.iter().rev() {
            self.side[y] *= s;
            self.refe[y] = NONE;
            s = self.side[y];
        }
        self.side[e]
    }

    fn add_cw(&mut self, v: usize, e: usize, reference: usize) {
        let h = self.half(v, e);
        if reference == NONE {
            self.cw[h] = h;
            self.ccw[h] = h;
            self.first[v] = h;
        } else {
            let r = self.half(v, reference);
            let nxt = self.cw[r];
            self.cw[r] = h;
            self.ccw[h] = r;
            self.cw[h] = nxt;
            self.ccw[nxt] = h;
        }
    }

    fn add_ccw(&mut self, v: usize, e: usize, reference: usize) {
        if reference == NONE {
            self.add_cw(v, e, NONE);
        } else {
            let r = self.half(v, reference);
            let before = self.ccw[r] >> 1;
            self.add_cw(v, e, before);
            if self.first[v] == r {
                self.first[v] = self.half(v, e);
            }
        }
    }

    fn add_first(&mut self, v: usize, e: usize) {
        let f = self.first[v];
        let reference = if f == NONE { NONE } else { f >> 1 };
        self.add_ccw(v, e, reference);
    }

    fn embed(&mut self, root: usize) {
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i >= self.out[v].len() {
                stack.pop();
                continue;
            }
            let ei = self.out[v][*i];
            *i += 1;
            let w = self.dst[ei];
            if ei == self.parent_edge[w] {
                self.add_first(w, ei);
                self.left_ref[v] = ei;
                self.right_ref[v] = ei;
                stack.push((w, 0));
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.add_cw(w, ei, r);
            } else {
                let l = self.left_ref[w];
                self.add_ccw(w, ei, l);
                self.left_ref[w] = ei;
            }
        }
    }

    fn run(&mut self) -> bool {
        for v in 0..self.n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..self.n {
            let nest = &self.nesting;
            self.out[v].sort_by_key(|&e| nest[e]);
        }
        for r in self.roots.clone() {
            if !self.test(r) {
                return false;
            }
        }
        for e in 0..self.eu.len() {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        for v in 0..self.n {
            let nest = &self.nesting;
            self.out[v].sort_by_key(|&e| nest[e]);
            let mut prev = NONE;
            for k in 0..self.out[v].len() {
                let e = self.out[v][k];
                self.add_cw(v, e, prev);
                prev = e;
            }
        }
        for r in self.roots.clone() {
            self.embed(r);
        }
        true
    }
}

fn opt(x: usize) -> Option<usize> {
    (x != NONE).then_some(x)
}

/// Tests planarity and returns a rotation system. Parallel edges become
/// contiguous bunches: ascending ids at the lower endpoint, descending at the
/// higher one.
pub fn test_and_embed(g: &Multigraph) -> Result<Embedding, MeiError> {
    let n = g.n();
    let mut pairs: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &[a, b])| (a.min(b), a.max(b), e))
        .collect();
    pairs.sort_unstable();
    let mut eu = Vec::new();
    let mut ev = Vec::new();
    let mut bunch: Vec<Vec<usize>> = Vec::new();
    for &(a, b, e) in &pairs {
        if eu.last() == Some(&a) && ev.last() == Some(&b) {
            bunch.last_mut().unwrap().push(e);
        } else {
            eu.push(a);
            ev.push(b);
            bunch.push(vec![e]);
        }
    }
    let ms = eu.len();
    if n > 2 && ms > 3 * n - 6 {
        return Err(MeiError::NotPlanar);
    }
    let mut adjs = vec![Vec::new(); n];
    for s in 0..ms {
        adjs[eu[s]].push((ev[s], s));
        adjs[ev[s]].push((eu[s], s));
    }
    for a in &mut adjs {
        a.sort_unstable();
    }
    let mut lr = Lr {
        n,
        eu,
        ev,
        adjs,
        src: vec![NONE; ms],
        dst: vec![NONE; ms],
        oriented: vec![false; ms],
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        lowpt: vec![0; ms],
        lowpt2: vec![0; ms],
        nesting: vec![0; ms],
        out: vec![Vec::new(); n],
        refe: vec![NONE; ms],
        side: vec![1; ms],
        lowpt_edge: vec![NONE; ms],
        stack_bottom: vec![NONE; ms],
        s: Vec::new(),
        next_id: 0,
        roots: Vec::new(),
        cw: vec![NONE; 2 * ms],
        ccw: vec![NONE; 2 * ms],
        first: vec![NONE; n],
        left_ref: vec![NONE; n],
        right_ref: vec![NONE; n],
    };
    if !lr.run() {
        return Err(MeiError::NotPlanar);
    }
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        let f = lr.first[v];
        if f == NONE {
            continue;
        }
        let mut h = f;
        loop {
            let s = h >> 1;
            let w = lr.other(s, v);
            let list = &bunch[s];
            if v < w {
                rot[v].extend(list.iter().map(|&e| dart_of(g, e, v)));
            } else {
                rot[v].extend(list.iter().rev().map(|&e| dart_of(g, e, v)));
            }
            h = lr.cw[h];
            if h == f {
                break;
            }
        }
    }
    let emb = Embedding::from_rotations(g, rot)?;
    if lr.roots.len() == 1 && emb.euler_characteristic() != 2 {
        return Err(MeiError::NotPlanar);
    }
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    #[test]
    fn k5_and_k33_rejected() {
        assert_eq!(test_and_embed(&complete(5)), Err(MeiError::NotPlanar));
        let mut g = Multigraph::new(6);
        for i in 0..3 {
            for j in 3..6 {
                g.add_edge(i, j).unwrap();
            }
        }
        assert_eq!(test_and_embed(&g), Err(MeiError::NotPlanar));
    }

    #[test]
    fn k5_minus_edge_accepted() {
        let mut g = Multigraph::new(5);
        for i in 0..5 {
            for j in i + 1..5 {
                if (i, j) != (3, 4) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        let e = test_and_embed(&g).unwrap();
        assert_eq!(e.euler_characteristic(), 2);
    }

    #[test]
    fn parallel_bunch_makes_digons() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 0), (0, 1), (1, 2), (2, 0)]).unwrap();
        let e = test_and_embed(&g).unwrap();
        assert_eq!(e.euler_characteristic(), 2);
        let digons = e.faces().filter(|f| f.len() == 2).count();
        assert_eq!(digons, 2);
    }

    #[test]
    fn deterministic() {
        let g = complete(4);
        assert_eq!(test_and_embed(&g).unwrap(), test_and_embed(&g).unwrap());
    }
}
