//! Building one embedding that honors a whole collection of node preferences.

use crate::decomp::{NodeId, NodeKind};
use crate::embed::{dart_edge, Dart, Embedding};
use crate::frame::{resting_corner, Choices, CutLayout, Frame, Placement};
use crate::graph::VertexId;
use crate::pref::{p_link, p_link_bits, s_link, Pref, Spin};
use std::collections::{BTreeMap, HashMap};

/// Union-find over spins with parity to the parent.
#[derive(Default)]
struct Parity {
    id: HashMap<Spin, usize>,
    parent: Vec<usize>,
    odd: Vec<bool>,
}

impl Parity {
    fn var(&mut self, s: Spin) -> usize {
        let n = self.parent.len();
        let i = *self.id.entry(s).or_insert(n);
        if i == n {
            self.parent.push(n);
            self.odd.push(false);
        }
        i
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // compress, accumulating parity from the top
        let mut acc = false;
        for &y in path.iter().rev() {
            acc ^= self.odd[y];
            self.odd[y] = acc;
            self.parent[y] = r;
        }
        (r, if path.is_empty() { false } else { self.odd[x] })
    }

    /// Requires `a xor b == want`; false when that contradicts earlier requirements.
    fn join(&mut self, a: Spin, b: Spin, want: bool) -> bool {
        let (a, b) = (self.var(a), self.var(b));
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == want;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.odd[hi] = pa ^ pb ^ want;
        true
    }

    /// Value of a spin; unconstrained roots are positive (false).
    fn value(&mut self, s: Spin) -> bool {
        match self.id.get(&s) {
            None => false,
            Some(&i) => self.find(i).1,
        }
    }
}

/// Index `i` such that the corner after `rot[i]` at cut vertex `c` reads as
/// wanted from peer `mu`.
fn pick_corner(rot: &[Dart], mu: NodeId, c: VertexId, want: &dyn Fn(Dart, Dart) -> bool) -> usize {
    let n = rot.len();
    (0..n).find(|&i| want(rot[i], rot[(i + 1) % n])).unwrap_or_else(|| {
        debug_assert!(false, "no corner of node {mu} at {c} fits");
        n - 1
    })
}

fn corner_test<'a>(
    fr: &'a Frame,
    par: &mut Parity,
    mu: NodeId,
    c: VertexId,
    face: Option<[usize; 2]>,
) -> Box<dyn Fn(Dart, Dart) -> bool + 'a> {
    let ct = &fr.ct;
    match ct.kind(mu) {
        NodeKind::R => {
            let [a, b] = face.expect("face label of an R-peer");
            Box::new(move |t, t2| {
                let (x, y) = (ct.classify(mu, dart_edge(t)), ct.classify(mu, dart_edge(t2)));
                x != y && [x.min(y), x.max(y)] == [a, b]
            })
        }
        NodeKind::S => {
            let neg = par.value(Spin::Cs(c, mu));
            Box::new(move |t, t2| {
                let (x, y) = (ct.classify(mu, dart_edge(t)), ct.classify(mu, dart_edge(t2)));
                x != y && !fr.s_default_after(mu, c, x) == neg
            })
        }
        NodeKind::D => {
            let lower = ct.nodes[mu].verts[0] == c;
            let dm = fr.d_max[mu];
            Box::new(move |t, t2| dart_edge(if lower { t } else { t2 }) == dm)
        }
        k => panic!("cut-vertex peer of kind {k:?}"),
    }
}

/// Embedding choices honoring `prefs`; nodes without a preference keep their default.
pub fn realize_choices(fr: &Frame, prefs: &BTreeMap<NodeId, Pref>) -> Choices {
    let ct = &fr.ct;
    let mut par = Parity::default();
    for (&nu, pref) in prefs {
        let ok = match *pref {
            Pref::S { peers, switching } => par.join(s_link(fr, nu, peers[0]), s_link(fr, nu, peers[1]), switching),
            Pref::P { peers, sides } => {
                let b = p_link_bits(fr, nu, peers, sides, true);
                par.join(p_link(fr, nu, peers[0]), p_link(fr, nu, peers[1]), b[0] ^ b[1])
            }
            Pref::C { .. } => true,
        };
        debug_assert!(ok, "spin requirements along a tree never conflict");
    }
    let mut ch = fr.default_choices();
    for (mu, f) in ch.flipped.iter_mut().enumerate() {
        if ct.kind(mu) == NodeKind::R {
            *f = par.value(Spin::Flip(mu));
        }
    }
    for (&nu, pref) in prefs {
        if let Pref::P { peers, sides } = *pref {
            let b = p_link_bits(fr, nu, peers, sides, true);
            let forward = par.value(p_link(fr, nu, peers[0])) == b[0];
            let ea = ct.nodes[nu].edge_to(peers[0]).unwrap();
            let eb = ct.nodes[nu].edge_to(peers[1]).unwrap();
            // default order with `eb` moved next to `ea`
            let mut order: Vec<usize> = fr.p_default[nu].iter().copied().filter(|&i| i != eb).collect();
            let at = order.iter().position(|&i| i == ea).unwrap();
            order.insert(if forward { at + 1 } else { at }, eb);
            ch.p_order.insert(nu, order);
        }
    }
    for (&nu, pref) in prefs {
        if let Pref::C { peers, faces } = *pref {
            let c = ct.nodes[nu].verts[0];
            let h = [ct.nodes[peers[0]].block, ct.nodes[peers[1]].block];
            let rots: BTreeMap<usize, Vec<Dart>> =
                ct.bc.vertex_blocks[c].iter().map(|&b| (b, fr.block_rotation(&ch, b, c))).collect();
            let t1 = corner_test(fr, &mut par, peers[0], c, faces[0]);
            let t2 = corner_test(fr, &mut par, peers[1], c, faces[1]);
            let corner = pick_corner(&rots[&h[0]], peers[0], c, &*t1);
            let open = pick_corner(&rots[&h[1]], peers[1], c, &*t2);
            let rest = resting_corner(&rots[&h[0]]);
            let placed = ct.bc.vertex_blocks[c]
                .iter()
                .filter(|&&b| b != h[0])
                .map(|&b| {
                    if b == h[1] {
                        Placement { block: b, host: h[0], corner, open }
                    } else {
                        Placement { block: b, host: h[0], corner: rest, open: resting_corner(&rots[&b]) }
                    }
                })
                .collect();
            ch.cuts.insert(c, CutLayout { root: h[0], placed });
        }
    }
    ch
}

/// An embedding of G honoring `prefs`.
pub fn realize(fr: &Frame, prefs: &BTreeMap<NodeId, Pref>) -> Embedding {
    fr.embed(&realize_choices(fr, prefs))
}
