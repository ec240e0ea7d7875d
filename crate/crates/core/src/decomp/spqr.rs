//! Triconnected components of a biconnected multigraph, following
//! Hopcroft and Tarjan's path search with Gutwenger and Mutzel's corrections.
//!
//! Edge ids below `m` are the input edges; larger ids are virtual edges.

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompKind {
    Bond,
    Polygon,
    Rigid,
}

#[derive(Clone, Debug)]
pub struct Split {
    /// Endpoints of every edge, input and virtual.
    pub ends: Vec<[usize; 2]>,
    pub m_real: usize,
    pub comps: Vec<(CompKind, Vec<usize>)>,
}

const NIL: usize = usize::MAX;
const UNSEEN: u8 = 0;
const TREE: u8 = 1;
const FROND: u8 = 2;
const REMOVED: u8 = 3;

#[derive(Clone, Copy)]
struct List {
    head: usize,
    tail: usize,
    len: usize,
}

impl List {
    const EMPTY: List = List { head: NIL, tail: NIL, len: 0 };
}

#[derive(Default)]
struct Pool {
    data: Vec<usize>,
    prev: Vec<usize>,
    next: Vec<usize>,
}

impl Pool {
    fn node(&mut self, x: usize) -> usize {
        self.data.push(x);
        self.prev.push(NIL);
        self.next.push(NIL);
        self.data.len() - 1
    }

    fn push_back(&mut self, l: &mut List, x: usize) -> usize {
        let k = self.node(x);
        self.prev[k] = l.tail;
        if l.tail != NIL {
            self.next[l.tail] = k;
        } else {
            l.head = k;
        }
        l.tail = k;
        l.len += 1;
        k
    }

    fn push_front(&mut self, l: &mut List, x: usize) -> usize {
        let k = self.node(x);
        self.next[k] = l.head;
        if l.head != NIL {
            self.prev[l.head] = k;
        } else {
            l.tail = k;
        }
        l.head = k;
        l.len += 1;
        k
    }

    /// Unlinks `k`; its own `next` pointer is kept so iteration can resume.
    fn remove(&mut self, l: &mut List, k: usize) {
        let (p, q) = (self.prev[k], self.next[k]);
        if p != NIL {
            self.next[p] = q;
        } else {
            l.head = q;
        }
        if q != NIL {
            self.prev[q] = p;
        } else {
            l.tail = p;
        }
        l.len -= 1;
    }
}

struct Tric {
    n: usize,
    m_real: usize,
    ends: Vec<[usize; 2]>,
    src: Vec<usize>,
    dst: Vec<usize>,
    status: Vec<u8>,
    inc: Vec<Vec<usize>>,
    pool: Pool,
    adj: Vec<List>,
    high: Vec<List>,
    in_adj: Vec<usize>,
    in_high: Vec<usize>,
    starts_path: Vec<bool>,
    dfs_number: Vec<i64>,
    newnum: Vec<i64>,
    node_at: Vec<usize>,
    lowpt1: Vec<i64>,
    lowpt2: Vec<i64>,
    nd: Vec<i64>,
    parent: Vec<usize>,
    degree: Vec<i64>,
    tree_arc: Vec<usize>,
    counter: i64,
    new_path: bool,
    th: Vec<i64>,
    ta: Vec<i64>,
    tb: Vec<i64>,
    estack: Vec<usize>,
    comps: Vec<Vec<usize>>,
    bonds: Vec<bool>,
}

impl Tric {
    fn new_edge(&mut self, u: usize, v: usize) -> usize {
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.src.push(u);
        self.dst.push(v);
        self.status.push(UNSEEN);
        self.in_adj.push(NIL);
        self.in_high.push(NIL);
        self.starts_path.push(false);
        e
    }

    fn add_comp(&mut self, edges: Vec<usize>, bond: bool) {
        self.comps.push(edges);
        self.bonds.push(bond);
    }

    fn split_multiple_edges(&mut self) {
        let mut order: Vec<usize> = (0..self.m_real).collect();
        order.sort_by_key(|&e| {
            let [a, b] = self.ends[e];
            (a.min(b), a.max(b), e)
        });
        let key = |t: &Tric, e: usize| {
            let [a, b] = t.ends[e];
            (a.min(b), a.max(b))
        };
        let mut i = 0;
        while i < order.len() {
            let mut j = i + 1;
            while j < order.len() && key(self, order[j]) == key(self, order[i]) {
                j += 1;
            }
            if j - i >= 2 {
                let (a, b) = key(self, order[i]);
                let mut comp: Vec<usize> = order[i..j].to_vec();
                for &e in &comp {
                    self.status[e] = REMOVED;
                }
                let v = self.new_edge(a, b);
                self.inc[a].push(v);
                self.inc[b].push(v);
                comp.push(v);
                self.add_comp(comp, true);
            }
            i = j;
        }
    }

    fn dfs1(&mut self, v: usize, u: usize) {
        self.counter += 1;
        self.dfs_number[v] = self.counter;
        self.parent[v] = u;
        self.lowpt1[v] = self.dfs_number[v];
        self.lowpt2[v] = self.dfs_number[v];
        self.nd[v] = 1;
        for k in 0..self.inc[v].len() {
            let e = self.inc[v][k];
            if self.status[e] != UNSEEN {
                continue;
            }
            let [a, b] = self.ends[e];
            let w = if a == v { b } else { a };
            self.src[e] = v;
            self.dst[e] = w;
            if self.dfs_number[w] == 0 {
                self.status[e] = TREE;
                self.tree_arc[w] = e;
                self.dfs1(w, v);
                if self.lowpt1[w] < self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt1[v].min(self.lowpt2[w]);
                    self.lowpt1[v] = self.lowpt1[w];
                } else if self.lowpt1[w] == self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt2[v].min(self.lowpt2[w]);
                } else {
                    self.lowpt2[v] = self.lowpt2[v].min(self.lowpt1[w]);
                }
                self.nd[v] += self.nd[w];
            } else {
                self.status[e] = FROND;
                if self.dfs_number[w] < self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt1[v];
                    self.lowpt1[v] = self.dfs_number[w];
                } else if self.dfs_number[w] > self.lowpt1[v] {
                    self.lowpt2[v] = self.lowpt2[v].min(self.dfs_number[w]);
                }
            }
        }
    }

    fn build_acceptable_adj(&mut self) {
        let max = 3 * self.n + 2;
        let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
        for e in 0..self.ends.len() {
            let phi = match self.status[e] {
                TREE => {
                    let (v, w) = (self.src[e], self.dst[e]);
                    if self.lowpt2[w] < self.dfs_number[v] {
                        3 * self.lowpt1[w]
                    } else {
                        3 * self.lowpt1[w] + 2
                    }
                }
                FROND => 3 * self.dfs_number[self.dst[e]] + 1,
                _ => continue,
            };
            bucket[phi as usize].push(e);
        }
        for b in bucket {
            for e in b {
                let v = self.src[e];
                let mut l = self.adj[v];
                self.in_adj[e] = self.pool.push_back(&mut l, e);
                self.adj[v] = l;
            }
        }
    }

    fn path_finder(&mut self, v: usize) {
        self.newnum[v] = self.counter - self.nd[v] + 1;
        let mut k = self.adj[v].head;
        while k != NIL {
            let e = self.pool.data[k];
            k = self.pool.next[k];
            let w = self.dst[e];
            if self.new_path {
                self.new_path = false;
                self.starts_path[e] = true;
            }
            if self.status[e] == TREE {
                self.path_finder(w);
                self.counter -= 1;
            } else {
                let mut l = self.high[w];
                self.in_high[e] = self.pool.push_back(&mut l, self.newnum[v] as usize);
                self.high[w] = l;
                self.new_path = true;
            }
        }
    }

    fn dfs2(&mut self) {
        self.counter = self.n as i64;
        self.new_path = true;
        self.path_finder(0);
        let mut old_to_new = vec![0i64; self.n + 1];
        for v in 0..self.n {
            old_to_new[self.dfs_number[v] as usize] = self.newnum[v];
        }
        for v in 0..self.n {
            self.node_at[self.newnum[v] as usize] = v;
            self.lowpt1[v] = old_to_new[self.lowpt1[v] as usize];
            self.lowpt2[v] = old_to_new[self.lowpt2[v] as usize];
        }
    }

    fn high_of(&self, v: usize) -> i64 {
        let h = self.high[v].head;
        if h == NIL {
            0
        } else {
            self.pool.data[h] as i64
        }
    }

    fn del_high(&mut self, e: usize) {
        let k = self.in_high[e];
        if k != NIL {
            let v = self.dst[e];
            let mut l = self.high[v];
            self.pool.remove(&mut l, k);
            self.high[v] = l;
            self.in_high[e] = NIL;
        }
    }

    fn adj_remove(&mut self, v: usize, k: usize) {
        let mut l = self.adj[v];
        self.pool.remove(&mut l, k);
        self.adj[v] = l;
    }

    fn top(&self) -> usize {
        self.ta.len() - 1
    }

    fn tpush(&mut self, h: i64, a: i64, b: i64) {
        self.th.push(h);
        self.ta.push(a);
        self.tb.push(b);
    }

    fn tpop(&mut self) {
        self.th.pop();
        self.ta.pop();
        self.tb.pop();
    }

    fn push_eos(&mut self) {
        self.tpush(-1, -1, -1);
    }

    fn not_eos(&self) -> bool {
        self.ta[self.top()] != -1
    }

    fn first_target(&self, w: usize) -> Option<usize> {
        let h = self.adj[w].head;
        (h != NIL).then(|| self.dst[self.pool.data[h]])
    }

    fn path_search(&mut self, v: usize) {
        let vnum = self.newnum[v];
        let mut outv = self.adj[v].len as i64;
        let mut it = self.adj[v].head;
        while it != NIL {
            let e = self.pool.data[it];
            if self.status[e] == TREE {
                let mut w = self.dst[e];
                let mut wnum = self.newnum[w];
                if self.starts_path[e] {
                    let mut y = 0;
                    if self.ta[self.top()] > self.lowpt1[w] {
                        let mut b = 0;
                        while self.ta[self.top()] > self.lowpt1[w] {
                            let t = self.top();
                            y = y.max(self.th[t]);
                            b = self.tb[t];
                            self.tpop();
                        }
                        self.tpush(y.max(wnum + self.nd[w] - 1), self.lowpt1[w], b);
                    } else {
                        self.tpush(wnum + self.nd[w] - 1, self.lowpt1[w], vnum);
                    }
                    self.push_eos();
                }

                self.path_search(w);

                self.estack.push(self.tree_arc[w]);

                loop {
                    let t = self.top();
                    let deg2 = self.degree[w] == 2
                        && self.first_target(w).is_some_and(|x| self.newnum[x] > wnum);
                    if !(vnum != 1 && (self.ta[t] == vnum || deg2)) {
                        break;
                    }
                    let a = self.ta[t];
                    let b = self.tb[t];
                    let mut e_ab = NIL;
                    let mut e_virt;
                    let x;
                    if a == vnum && b >= 0 && self.parent[self.node_at[b as usize]] == self.node_at[a as usize] {
                        self.tpop();
                        continue;
                    }
                    if deg2 {
                        let e1 = self.estack.pop().unwrap();
                        let e2 = self.estack.pop().unwrap();
                        let k2 = self.in_adj[e2];
                        self.adj_remove(w, k2);
                        x = self.dst[e2];
                        e_virt = self.new_edge(v, x);
                        self.degree[v] -= 1;
                        self.degree[x] -= 1;
                        debug_assert_eq!(self.src[e2], w);
                        self.add_comp(vec![e1, e2, e_virt], false);
                        if let Some(&top) = self.estack.last() {
                            if self.src[top] == x && self.dst[top] == v {
                                e_ab = self.estack.pop().unwrap();
                                let k = self.in_adj[e_ab];
                                self.adj_remove(x, k);
                                self.del_high(e_ab);
                            }
                        }
                    } else {
                        let h = self.th[t];
                        self.tpop();
                        let mut comp = Vec::new();
                        loop {
                            let xy = *self.estack.last().unwrap();
                            let (xs, xt) = (self.src[xy], self.dst[xy]);
                            let (nx, ny) = (self.newnum[xs], self.newnum[xt]);
                            if !(a <= nx && nx <= h && a <= ny && ny <= h) {
                                break;
                            }
                            if (nx == a && ny == b) || (ny == a && nx == b) {
                                e_ab = self.estack.pop().unwrap();
                                let k = self.in_adj[e_ab];
                                self.adj_remove(self.src[e_ab], k);
                                self.del_high(e_ab);
                            } else {
                                let eh = self.estack.pop().unwrap();
                                if it != self.in_adj[eh] {
                                    let k = self.in_adj[eh];
                                    self.adj_remove(self.src[eh], k);
                                    self.del_high(eh);
                                }
                                comp.push(eh);
                                self.degree[xs] -= 1;
                                self.degree[xt] -= 1;
                            }
                        }
                        e_virt = self.new_edge(self.node_at[a as usize], self.node_at[b as usize]);
                        comp.push(e_virt);
                        self.add_comp(comp, false);
                        x = self.node_at[b as usize];
                    }
                    if e_ab != NIL {
                        let nv = self.new_edge(v, x);
                        self.add_comp(vec![e_ab, e_virt, nv], true);
                        e_virt = nv;
                        self.degree[x] -= 1;
                        self.degree[v] -= 1;
                    }
                    self.estack.push(e_virt);
                    self.pool.data[it] = e_virt;
                    self.in_adj[e_virt] = it;
                    self.degree[x] += 1;
                    self.degree[v] += 1;
                    self.parent[x] = v;
                    self.tree_arc[x] = e_virt;
                    self.status[e_virt] = TREE;
                    w = x;
                    wnum = self.newnum[w];
                }

                // type-1 pairs
                if self.lowpt2[w] >= vnum
                    && self.lowpt1[w] < vnum
                    && (self.parent[v] != 0 || outv >= 2)
                {
                    let mut comp = Vec::new();
                    while let Some(&xy) = self.estack.last() {
                        let x = self.newnum[self.src[xy]];
                        let y = self.newnum[self.dst[xy]];
                        let inside = |z: i64| wnum <= z && z < wnum + self.nd[w];
                        if !(inside(x) || inside(y)) {
                            break;
                        }
                        self.estack.pop();
                        comp.push(xy);
                        self.del_high(xy);
                        self.degree[self.src[xy]] -= 1;
                        self.degree[self.dst[xy]] -= 1;
                    }
                    let lw = self.node_at[self.lowpt1[w] as usize];
                    let mut e_virt = self.new_edge(v, lw);
                    comp.push(e_virt);
                    self.add_comp(comp, false);

                    if let Some(&top) = self.estack.last() {
                        let (ts, tt) = (self.src[top], self.dst[top]);
                        if (ts == v && tt == lw) || (ts == lw && tt == v) {
                            let eh = self.estack.pop().unwrap();
                            if it != self.in_adj[eh] {
                                let k = self.in_adj[eh];
                                self.adj_remove(self.src[eh], k);
                            }
                            let nv = self.new_edge(v, lw);
                            self.add_comp(vec![eh, e_virt, nv], true);
                            e_virt = nv;
                            self.in_high[e_virt] = self.in_high[eh];
                            self.degree[v] -= 1;
                            self.degree[lw] -= 1;
                        }
                    }

                    if lw != self.parent[v] {
                        self.estack.push(e_virt);
                        self.pool.data[it] = e_virt;
                        self.in_adj[e_virt] = it;
                        self.status[e_virt] = FROND;
                        if self.in_high[e_virt] == NIL && self.high_of(lw) < vnum {
                            let mut l = self.high[lw];
                            self.in_high[e_virt] = self.pool.push_front(&mut l, vnum as usize);
                            self.high[lw] = l;
                        }
                        self.degree[v] += 1;
                        self.degree[lw] += 1;
                    } else {
                        self.adj_remove(v, it);
                        let nv = self.new_edge(lw, v);
                        let eh = self.tree_arc[v];
                        self.add_comp(vec![e_virt, nv, eh], true);
                        self.tree_arc[v] = nv;
                        self.status[nv] = TREE;
                        let k = self.in_adj[eh];
                        self.in_adj[nv] = k;
                        self.pool.data[k] = nv;
                    }
                }

                if self.starts_path[e] {
                    while self.not_eos() {
                        self.tpop();
                    }
                    self.tpop();
                }

                while self.not_eos() {
                    let t = self.top();
                    if self.tb[t] != vnum && self.high_of(v) > self.th[t] {
                        self.tpop();
                    } else {
                        break;
                    }
                }
                outv -= 1;
            } else {
                let w = self.dst[e];
                let wnum = self.newnum[w];
                if self.starts_path[e] {
                    let mut y = 0;
                    if self.ta[self.top()] > wnum {
                        let mut b = 0;
                        while self.ta[self.top()] > wnum {
                            let t = self.top();
                            y = y.max(self.th[t]);
                            b = self.tb[t];
                            self.tpop();
                        }
                        self.tpush(y, wnum, b);
                    } else {
                        self.tpush(vnum, wnum, vnum);
                    }
                }
                self.estack.push(e);
            }
            it = self.pool.next[it];
        }
    }
}

fn classify(ends: &[[usize; 2]], edges: &[usize]) -> CompKind {
    let mut vs: Vec<usize> = edges.iter().flat_map(|&e| ends[e]).collect();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() == 2 {
        return CompKind::Bond;
    }
    if vs.len() == edges.len() {
        // a connected component with |V| = |E| and min degree 2 is a cycle
        return CompKind::Polygon;
    }
    CompKind::Rigid
}

/// Splits a biconnected multigraph on `n >= 3` vertices into its
/// triconnected components, merging adjacent bonds and adjacent polygons.
pub fn triconnected_components(n: usize, edges: &[[usize; 2]]) -> Split {
    let m = edges.len();
    let mut inc = vec![Vec::new(); n];
    for (e, &[a, b]) in edges.iter().enumerate() {
        inc[a].push(e);
        inc[b].push(e);
    }
    let mut t = Tric {
        n,
        m_real: m,
        ends: edges.to_vec(),
        src: edges.iter().map(|e| e[0]).collect(),
        dst: edges.iter().map(|e| e[1]).collect(),
        status: vec![UNSEEN; m],
        inc,
        pool: Pool::default(),
        adj: vec![List::EMPTY; n],
        high: vec![List::EMPTY; n],
        in_adj: vec![NIL; m],
        in_high: vec![NIL; m],
        starts_path: vec![false; m],
        dfs_number: vec![0; n],
        newnum: vec![0; n],
        node_at: vec![0; n + 1],
        lowpt1: vec![0; n],
        lowpt2: vec![0; n],
        nd: vec![0; n],
        parent: vec![NIL; n],
        degree: vec![0; n],
        tree_arc: vec![NIL; n],
        counter: 0,
        new_path: false,
        th: Vec::new(),
        ta: Vec::new(),
        tb: Vec::new(),
        estack: Vec::new(),
        comps: Vec::new(),
        bonds: Vec::new(),
    };
    t.split_multiple_edges();
    for v in 0..n {
        t.degree[v] = t.inc[v].iter().filter(|&&e| t.status[e] != REMOVED).count() as i64;
    }
    t.dfs1(0, NIL);
    t.build_acceptable_adj();
    t.dfs2();
    t.push_eos();
    t.path_search(0);
    let last = std::mem::take(&mut t.estack);
    if !last.is_empty() {
        t.add_comp(last, false);
    }

    // classify and merge
    let kinds: Vec<CompKind> = t
        .comps
        .iter()
        .zip(&t.bonds)
        .map(|(c, &b)| if b { CompKind::Bond } else { classify(&t.ends, c) })
        .collect();
    let ne = t.ends.len();
    let mut owner = vec![[NIL; 2]; ne];
    for (i, c) in t.comps.iter().enumerate() {
        for &e in c {
            if e >= m {
                let o = &mut owner[e];
                if o[0] == NIL {
                    o[0] = i;
                } else {
                    o[1] = i;
                }
            }
        }
    }
    let mut visited = vec![false; t.comps.len()];
    let mut out = Vec::new();
    for i in 0..t.comps.len() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let kind = kinds[i];
        if kind == CompKind::Rigid {
            out.push((kind, t.comps[i].clone()));
            continue;
        }
        let mut merged: Vec<usize> = Vec::new();
        let mut dropped: Vec<bool> = Vec::new();
        let mut queue: Vec<usize> = t.comps[i].clone();
        let mut k = 0;
        while k < queue.len() {
            let e = queue[k];
            k += 1;
            if e >= m {
                let j = owner[e]
                    .into_iter()
                    .find(|&c| c != NIL && !visited[c] && kinds[c] == kind);
                if let Some(j) = j {
                    visited[j] = true;
                    for &f in &t.comps[j] {
                        if f != e {
                            queue.push(f);
                        }
                    }
                    dropped.push(true);
                    merged.push(e);
                    continue;
                }
            }
            dropped.push(false);
            merged.push(e);
        }
        let edges: Vec<usize> = merged
            .into_iter()
            .zip(dropped)
            .filter(|&(_, d)| !d)
            .map(|(e, _)| e)
            .collect();
        out.push((kind, edges));
    }
    Split { ends: t.ends, m_real: m, comps: out }
}
