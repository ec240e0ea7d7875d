//! Node embedding preferences, the spin variables linking them, embedding
//! specifications and the honoring check.

use crate::decomp::{NodeId, NodeKind, SkelKind};
use crate::embed::{dart_edge, twin, Dart, Embedding};
use crate::frame::Frame;
use crate::graph::VertexId;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pref {
    /// The peer edges are neighbours in the P-skeleton order. For an R-peer,
    /// whether its route uses the face holding the low-to-high dart of the link.
    P { peers: [NodeId; 2], sides: [Option<bool>; 2] },
    /// The spins of the two peer links differ (`switching`) or agree.
    S { peers: [NodeId; 2], switching: bool },
    /// For an R-peer, the face holding the other block, named by the two
    /// consecutive skeleton edges bounding it at the cut vertex (sorted).
    C { peers: [NodeId; 2], faces: [Option<[usize; 2]>; 2] },
}

impl Pref {
    pub fn peers(&self) -> [NodeId; 2] {
        match *self {
            Pref::P { peers, .. } | Pref::S { peers, .. } | Pref::C { peers, .. } => peers,
        }
    }

    /// Same preference with peers in ascending order.
    pub fn normalized(self) -> Pref {
        match self {
            Pref::P { peers: [a, b], sides: [sa, sb] } => {
                if a <= b {
                    Pref::P { peers: [a, b], sides: [sa, sb] }
                } else {
                    Pref::P { peers: [b, a], sides: [sb, sa] }
                }
            }
            Pref::S { peers: [a, b], switching } => Pref::S { peers: [a.min(b), a.max(b)], switching },
            Pref::C { peers: [a, b], faces: [fa, fb] } => {
                if a <= b {
                    Pref::C { peers: [a, b], faces: [fa, fb] }
                } else {
                    Pref::C { peers: [b, a], faces: [fb, fa] }
                }
            }
        }
    }

    pub fn dump(&self, nu: NodeId) -> String {
        match self {
            Pref::P { peers, .. } => format!("{nu}: peers=({},{})", peers[0], peers[1]),
            Pref::S { peers, switching } => format!(
                "{nu}: peers=({},{}) label={}",
                peers[0],
                peers[1],
                if *switching { "SWITCHING" } else { "NONSWITCHING" }
            ),
            Pref::C { peers, faces } => format!("{nu}: peers=({},{}) faces={:?}", peers[0], peers[1], faces),
        }
    }
}

/// A spin-carrying object: the flip of an R-node, a twin pair between an
/// S- and a P-node, or a cut vertex paired with an S-node containing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Flip(NodeId),
    Twin(NodeId, NodeId),
    Cs(VertexId, NodeId),
}

/// The spin an S-node `nu` reads from its link to peer `mu`.
pub fn s_link(fr: &Frame, nu: NodeId, mu: NodeId) -> Spin {
    let ct = &fr.ct;
    match ct.kind(mu) {
        NodeKind::R => Spin::Flip(mu),
        NodeKind::P => Spin::Twin(nu.min(mu), nu.max(mu)),
        NodeKind::C => Spin::Cs(ct.nodes[mu].verts[0], nu),
        k => panic!("S-node peer of kind {k:?}"),
    }
}

/// The spin a P-node `nu` reads from its link to peer `mu`.
pub fn p_link(fr: &Frame, nu: NodeId, mu: NodeId) -> Spin {
    match fr.ct.kind(mu) {
        NodeKind::R => Spin::Flip(mu),
        NodeKind::S => Spin::Twin(nu.min(mu), nu.max(mu)),
        k => panic!("P-node peer of kind {k:?}"),
    }
}

/// Spins of the two peer links of P-node `nu` (negative = true) when the
/// edge towards `peers[1]` follows the one towards `peers[0]` at the lower pole,
/// or the reverse when `forward` is false.
pub fn p_link_bits(fr: &Frame, nu: NodeId, peers: [NodeId; 2], sides: [Option<bool>; 2], forward: bool) -> [bool; 2] {
    let ct = &fr.ct;
    let x = ct.nodes[nu].verts[0];
    let twin_in = |s: NodeId| {
        let i = ct.nodes[nu].edge_to(s).expect("peer is a tree neighbour");
        match ct.nodes[nu].edges[i].kind {
            SkelKind::Virtual { edge, .. } => edge,
            SkelKind::Real(_) => unreachable!(),
        }
    };
    let b0 = match ct.kind(peers[0]) {
        NodeKind::R => !sides[0].expect("side of an R-peer"),
        _ => !fr.s_forward(peers[0], twin_in(peers[0]), x),
    };
    let b1 = match ct.kind(peers[1]) {
        NodeKind::R => sides[1].expect("side of an R-peer"),
        _ => !fr.s_default_after(peers[1], x, twin_in(peers[1])),
    };
    if forward {
        [b0, b1]
    } else {
        [!b0, !b1]
    }
}

/// The two corners at cut vertex `c` facing each other between blocks `h1`
/// and `h2`: for each block, the dart before the other block and the one after it.
pub fn facing_corners(fr: &Frame, emb: &Embedding, c: VertexId, h1: usize, h2: usize) -> Option<[[Dart; 2]; 2]> {
    let eb = &fr.ct.bc.edge_block;
    let seq: Vec<(usize, Dart)> = emb
        .rotation(c)
        .iter()
        .filter_map(|&d| {
            let b = eb[dart_edge(d)];
            if b == h1 {
                Some((0, d))
            } else if b == h2 {
                Some((1, d))
            } else {
                None
            }
        })
        .collect();
    let n = seq.len();
    let switches: Vec<usize> = (0..n).filter(|&i| seq[i].0 != seq[(i + 1) % n].0).collect();
    if switches.len() != 2 {
        return None;
    }
    let mut out = [[0; 2]; 2];
    for &i in &switches {
        let (side, d) = seq[i];
        let back = switches.iter().copied().find(|&j| j != i).unwrap();
        out[side] = [d, seq[(back + 1) % n].1];
    }
    Some(out)
}

/// Pairs of block corners at cut vertex `c`, one of `h1` and one of `h2`,
/// that a common face of `emb` touches at `c`. A corner is given by the block's
/// darts before and after it.
pub fn shared_corners(fr: &Frame, emb: &Embedding, c: VertexId, h1: usize, h2: usize) -> Vec<[[Dart; 2]; 2]> {
    let eb = &fr.ct.bc.edge_block;
    let rot = emb.rotation(c);
    let n = rot.len();
    let around = |h: usize| -> Vec<[Dart; 2]> {
        // for each position, the last dart of `h` at or before it and the first after it
        let own: Vec<usize> = (0..n).filter(|&i| eb[dart_edge(rot[i])] == h).collect();
        let mut out = vec![[0; 2]; n];
        for i in 0..n {
            let k = own.partition_point(|&j| j <= i);
            let before = if k == 0 { own[own.len() - 1] } else { own[k - 1] };
            let after = if k == own.len() { own[0] } else { own[k] };
            out[i] = [rot[before], rot[after]];
        }
        out
    };
    let (a, b) = (around(h1), around(h2));
    // block corners each face touches at `c`
    let mut touch: BTreeMap<usize, [Vec<[Dart; 2]>; 2]> = BTreeMap::new();
    for i in 0..n {
        let (x, y) = (rot[i], rot[(i + 1) % n]);
        let (bx, by) = (eb[dart_edge(x)], eb[dart_edge(y)]);
        let t = touch.entry(emb.face_of(twin(x))).or_default();
        if bx == h1 || by == h1 {
            t[0].push(a[i]);
        }
        if bx == h2 || by == h2 {
            t[1].push(b[i]);
        }
    }
    let mut out = Vec::new();
    for [p, q] in touch.values() {
        for &x in p {
            for &y in q {
                out.push([x, y]);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seen {
    Fine,
    Broken,
    /// The corner is a face of an S-skeleton; negative when not the default face.
    Spin(bool),
}

/// How the corner `(t, t2)` at cut vertex `c` of the block of `mu` reads
/// from `mu`'s skeleton.
pub fn read_corner(fr: &Frame, mu: NodeId, c: VertexId, t: Dart, t2: Dart, want: Option<[usize; 2]>) -> Seen {
    let ct = &fr.ct;
    match ct.kind(mu) {
        NodeKind::D => {
            let lower = ct.nodes[mu].verts[0] == c;
            let d = if lower { t } else { t2 };
            if dart_edge(d) == fr.d_max[mu] {
                Seen::Fine
            } else {
                Seen::Broken
            }
        }
        NodeKind::R => {
            let a = ct.classify(mu, dart_edge(t));
            let b = ct.classify(mu, dart_edge(t2));
            if a != b && Some([a.min(b), a.max(b)]) == want {
                Seen::Fine
            } else {
                Seen::Broken
            }
        }
        NodeKind::S => {
            let a = ct.classify(mu, dart_edge(t));
            let b = ct.classify(mu, dart_edge(t2));
            if a == b {
                Seen::Broken
            } else {
                Seen::Spin(!fr.s_default_after(mu, c, a))
            }
        }
        k => panic!("cut-vertex peer of kind {k:?}"),
    }
}

/// Whether R-node `mu` is mirrored in `emb` relative to the default.
pub fn is_flipped(fr: &Frame, emb: &Embedding, mu: NodeId) -> bool {
    let nd = &fr.ct.nodes[mu];
    let v = nd.verts[0];
    let seen = fr.ct.skeleton_rotation(emb, mu, v);
    let def: Vec<usize> =
        fr.r_emb[mu].as_ref().unwrap().rotation(0).iter().map(|&d| dart_edge(d)).collect();
    let k = seen.iter().position(|&x| x == def[0]).unwrap();
    let n = seen.len();
    let same = (0..n).all(|i| seen[(k + i) % n] == def[i]);
    if same {
        return false;
    }
    debug_assert!((0..n).all(|i| seen[(k + n - i) % n] == def[i]), "skeleton order is neither default nor mirrored");
    true
}

/// Embedding specification: R flips, P orders at the lower pole (starting
/// from the smallest edge), and for every ordered pair of blocks at a cut
/// vertex the dart after which the second sits in the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spec {
    pub flipped: BTreeMap<NodeId, bool>,
    pub p_order: BTreeMap<NodeId, Vec<usize>>,
    pub faces: BTreeMap<(VertexId, usize, usize), Dart>,
}

pub fn specify(fr: &Frame, emb: &Embedding) -> Spec {
    let ct = &fr.ct;
    let mut spec = Spec { flipped: BTreeMap::new(), p_order: BTreeMap::new(), faces: BTreeMap::new() };
    for (id, nd) in ct.nodes.iter().enumerate() {
        match nd.kind {
            NodeKind::R => {
                spec.flipped.insert(id, is_flipped(fr, emb, id));
            }
            NodeKind::P => {
                let mut r = ct.skeleton_rotation(emb, id, nd.verts[0]);
                let k = r.iter().enumerate().min_by_key(|&(_, &x)| x).unwrap().0;
                r.rotate_left(k);
                spec.p_order.insert(id, r);
            }
            _ => {}
        }
    }
    for c in 0..ct.g.n() {
        let bl = &ct.bc.vertex_blocks[c];
        for &h1 in bl {
            for &h2 in bl {
                if h1 < h2 {
                    let [a, b] = facing_corners(fr, emb, c, h1, h2).expect("blocks do not interleave");
                    spec.faces.insert((c, h1, h2), a[0]);
                    spec.faces.insert((c, h2, h1), b[0]);
                }
            }
        }
    }
    spec
}

/// Result of the honoring check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub count: usize,
    pub violated: Vec<NodeId>,
}

struct Factor {
    node: NodeId,
    vars: Vec<usize>,
    /// Satisfied for the assignment with bit `i` = value of `vars[i]`.
    sat: [bool; 4],
}

/// Minimum number of preferences `emb` fails, over all spin values not
/// fixed by the embedding.
pub fn honors(fr: &Frame, emb: &Embedding, prefs: &BTreeMap<NodeId, Pref>) -> Defect {
    let ct = &fr.ct;
    let mut var_id: HashMap<Spin, usize> = HashMap::new();
    let mut flips: HashMap<NodeId, bool> = HashMap::new();
    let mut factors: Vec<Factor> = Vec::new();
    let mut term = |s: Spin, var_id: &mut HashMap<Spin, usize>| -> Term {
        if let Spin::Flip(mu) = s {
            return Term::Const(*flips.entry(mu).or_insert_with(|| is_flipped(fr, emb, mu)));
        }
        let n = var_id.len();
        Term::Var(*var_id.entry(s).or_insert(n))
    };
    for (&nu, pref) in prefs {
        match *pref {
            Pref::S { peers, switching } => {
                let t = [term(s_link(fr, nu, peers[0]), &mut var_id), term(s_link(fr, nu, peers[1]), &mut var_id)];
                factors.push(two_term_factor(nu, &t, |v| (v[0] != v[1]) == switching));
            }
            Pref::P { peers, sides } => {
                let x = ct.nodes[nu].verts[0];
                let r = ct.skeleton_rotation(emb, nu, x);
                let ea = ct.nodes[nu].edge_to(peers[0]).unwrap();
                let eb = ct.nodes[nu].edge_to(peers[1]).unwrap();
                let n = r.len();
                let pa = r.iter().position(|&i| i == ea).unwrap();
                let forward = r[(pa + 1) % n] == eb;
                let backward = r[(pa + n - 1) % n] == eb;
                let t = [term(p_link(fr, nu, peers[0]), &mut var_id), term(p_link(fr, nu, peers[1]), &mut var_id)];
                let want: Vec<[bool; 2]> = [forward, backward]
                    .iter()
                    .zip([true, false])
                    .filter(|&(&ok, _)| ok)
                    .map(|(_, dir)| p_link_bits(fr, nu, peers, sides, dir))
                    .collect();
                factors.push(two_term_factor(nu, &t, |v| want.contains(&v)));
            }
            Pref::C { peers, faces } => {
                let c = ct.nodes[nu].verts[0];
                let h = [ct.nodes[peers[0]].block, ct.nodes[peers[1]].block];
                let spin_var: Vec<Option<usize>> = (0..2)
                    .map(|i| (ct.kind(peers[i]) == NodeKind::S).then(|| var_id_of(&mut var_id, Spin::Cs(c, peers[i]))))
                    .collect();
                let vars: Vec<usize> = spin_var.iter().flatten().copied().collect();
                // per shared corner: required spin of each peer, if any
                let mut options: Vec<[Option<bool>; 2]> = Vec::new();
                for corners in shared_corners(fr, emb, c, h[0], h[1]) {
                    let mut need = [None; 2];
                    let mut ok = true;
                    for i in 0..2 {
                        match read_corner(fr, peers[i], c, corners[i][0], corners[i][1], faces[i]) {
                            Seen::Fine => {}
                            Seen::Broken => ok = false,
                            Seen::Spin(b) => need[i] = Some(b),
                        }
                    }
                    if ok && !options.contains(&need) {
                        options.push(need);
                    }
                }
                let mut sat = [false; 4];
                for (bits, s) in sat.iter_mut().enumerate() {
                    let mut val = [None; 2];
                    let mut k = 0;
                    for i in 0..2 {
                        if spin_var[i].is_some() {
                            val[i] = Some(bits >> k & 1 == 1);
                            k += 1;
                        }
                    }
                    *s = options.iter().any(|need| (0..2).all(|i| need[i].is_none() || need[i] == val[i]));
                }
                factors.push(Factor { node: nu, vars, sat });
            }
        }
    }
    let (count, violated) = min_violations(var_id.len(), &factors);
    Defect { count, violated }
}

/// Either a free spin variable or a spin fixed by the embedding.
enum Term {
    Var(usize),
    Const(bool),
}

fn two_term_factor(node: NodeId, t: &[Term; 2], ok: impl Fn([bool; 2]) -> bool) -> Factor {
    let vars: Vec<usize> = t.iter().filter_map(|x| if let Term::Var(i) = x { Some(*i) } else { None }).collect();
    let mut sat = [false; 4];
    for (bits, s) in sat.iter_mut().enumerate() {
        let mut k = 0;
        let mut val = [false; 2];
        for (j, x) in t.iter().enumerate() {
            val[j] = match x {
                Term::Const(b) => *b,
                Term::Var(_) => {
                    let b = bits >> k & 1 == 1;
                    k += 1;
                    b
                }
            };
        }
        *s = ok(val);
    }
    Factor { node, vars, sat }
}

fn var_id_of(var_id: &mut HashMap<Spin, usize>, s: Spin) -> usize {
    let n = var_id.len();
    *var_id.entry(s).or_insert(n)
}

fn factor_cost(f: &Factor, val: &[Option<bool>]) -> usize {
    let mut bits = 0;
    for (k, &v) in f.vars.iter().enumerate() {
        if val[v].unwrap_or(false) {
            bits |= 1 << k;
        }
    }
    usize::from(!f.sat[bits])
}

/// Exact minimisation; every variable sits in at most two factors and
/// every factor has at most two variables, so components are paths or cycles.
fn min_violations(nv: usize, factors: &[Factor]) -> (usize, Vec<NodeId>) {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (fi, f) in factors.iter().enumerate() {
        for &v in &f.vars {
            at[v].push(fi);
        }
    }
    debug_assert!(at.iter().all(|l| l.len() <= 2));
    let mut val: Vec<Option<bool>> = vec![None; nv];
    let mut seen = vec![false; nv];
    for s in 0..nv {
        if seen[s] {
            continue;
        }
        // collect the component and order it as a chain
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            k += 1;
            for &fi in &at[v] {
                for &w in &factors[fi].vars {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
        }
        let binary = |v: usize| at[v].iter().copied().filter(|&fi| factors[fi].vars.len() == 2).collect::<Vec<_>>();
        let start = comp.iter().copied().find(|&v| binary(v).len() < 2).unwrap_or(s);
        let mut order = vec![start];
        let mut links: Vec<usize> = Vec::new();
        let mut closing = None;
        let mut prev_f = usize::MAX;
        loop {
            let v = *order.last().unwrap();
            let next = binary(v).into_iter().find(|&fi| fi != prev_f);
            let Some(fi) = next else { break };
            let f = &factors[fi];
            let w = if f.vars[0] == v { f.vars[1] } else { f.vars[0] };
            if w == start {
                closing = Some(fi);
                break;
            }
            order.push(w);
            links.push(fi);
            prev_f = fi;
        }
        debug_assert_eq!(order.len(), comp.len());
        let unary_cost = |v: usize, b: bool, val: &mut Vec<Option<bool>>| -> usize {
            val[v] = Some(b);
            let c = at[v].iter().filter(|&&fi| factors[fi].vars.len() == 1).map(|&fi| factor_cost(&factors[fi], val)).sum();
            val[v] = None;
            c
        };
        let pair_cost = |fi: usize, v: usize, bv: bool, w: usize, bw: bool, val: &mut Vec<Option<bool>>| -> usize {
            val[v] = Some(bv);
            val[w] = Some(bw);
            let c = factor_cost(&factors[fi], val);
            val[v] = None;
            val[w] = None;
            c
        };
        let mut best: Option<(usize, Vec<bool>)> = None;
        let firsts: &[bool] = if closing.is_some() { &[false, true] } else { &[false] };
        for &first in firsts {
            // dp[b] = (cost, choice trail)
            let r = order.len();
            let mut cost = vec![[usize::MAX; 2]; r];
            let mut from = vec![[false; 2]; r];
            for b in [false, true] {
                if closing.is_some() && b != first {
                    continue;
                }
                cost[0][b as usize] = unary_cost(order[0], b, &mut val);
            }
            for i in 1..r {
                for b in [false, true] {
                    let u = unary_cost(order[i], b, &mut val);
                    for a in [false, true] {
                        if cost[i - 1][a as usize] == usize::MAX {
                            continue;
                        }
                        let c = cost[i - 1][a as usize] + u + pair_cost(links[i - 1], order[i - 1], a, order[i], b, &mut val);
                        if c < cost[i][b as usize] {
                            cost[i][b as usize] = c;
                            from[i][b as usize] = a;
                        }
                    }
                }
            }
            for b in [false, true] {
                let mut c = cost[r - 1][b as usize];
                if c == usize::MAX {
                    continue;
                }
                if let Some(fi) = closing {
                    c += pair_cost(fi, order[r - 1], b, order[0], first, &mut val);
                }
                if best.as_ref().map_or(true, |x| c < x.0) {
                    let mut bits = vec![false; r];
                    bits[r - 1] = b;
                    for i in (1..r).rev() {
                        bits[i - 1] = from[i][bits[i] as usize];
                    }
                    best = Some((c, bits));
                }
            }
        }
        let (_, bits) = best.unwrap();
        for (i, &v) in order.iter().enumerate() {
            val[v] = Some(bits[i]);
        }
    }
    let mut violated: Vec<NodeId> = factors.iter().filter(|f| factor_cost(f, &val) == 1).map(|f| f.node).collect();
    violated.sort_unstable();
    (violated.len(), violated)
}
