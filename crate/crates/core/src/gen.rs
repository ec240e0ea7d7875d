//! Instance generators.

use crate::error::MeiError;
use crate::graph::{InsertionSet, Multigraph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub g: Multigraph,
    pub f: InsertionSet,
    /// Certified lower bound on the optimum, when the family has one.
    pub lb: Option<u64>,
    /// Crossing budget of the decision question the instance encodes.
    pub budget: Option<u64>,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

/// Random connected planar multigraph: a stacked triangulation thinned out
/// around a random spanning tree, with a few doubled edges, then relabelled.
pub fn random_planar(n: usize, k: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    if n == 2 {
        edges.push((0, 1));
    } else if n >= 3 {
        edges.extend([(0, 1), (1, 2), (2, 0)]);
        let mut faces = vec![[0, 1, 2], [0, 2, 1]];
        for v in 3..n {
            let i = rng.gen_range(0..faces.len());
            let [a, b, c] = faces[i];
            faces[i] = [a, b, v];
            faces.push([b, c, v]);
            faces.push([c, a, v]);
            edges.extend([(a, v), (b, v), (c, v)]);
        }
    }
    // random spanning tree by randomized search
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push(i);
        adj[v].push(i);
    }
    let mut in_tree = vec![false; edges.len()];
    if n > 0 {
        let mut seen = vec![false; n];
        let root = rng.gen_range(0..n);
        seen[root] = true;
        let mut frontier = vec![root];
        while !frontier.is_empty() {
            let j = rng.gen_range(0..frontier.len());
            let v = frontier.swap_remove(j);
            let mut inc = adj[v].clone();
            inc.shuffle(&mut rng);
            for e in inc {
                let (a, b) = edges[e];
                let w = if a == v { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    frontier.push(w);
                }
            }
        }
    }
    let p_del = [0.0, 0.2, 0.45, 0.65, 0.8, 0.9][rng.gen_range(0..6)];
    let mut kept: Vec<(VertexId, VertexId)> = edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| in_tree[i] || !rng.gen_bool(p_del))
        .map(|(_, &e)| e)
        .collect();
    if !kept.is_empty() && rng.gen_bool(0.3) {
        let extra = rng.gen_range(1..=kept.len() / 8 + 1);
        for _ in 0..extra {
            let e = kept[rng.gen_range(0..kept.len())];
            kept.push(e);
        }
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    kept.shuffle(&mut rng);
    let mut g = Multigraph::new(n);
    let mut present = HashSet::new();
    for (u, v) in kept {
        let (a, b) = if rng.gen_bool(0.5) { (perm[u], perm[v]) } else { (perm[v], perm[u]) };
        g.add_edge(a, b).expect("generated edge is valid");
        present.insert(key(a, b));
    }
    let mut pairs = Vec::new();
    if n >= 2 {
        for _ in 0..k {
            let mut pick = None;
            for _ in 0..64 {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v && !present.contains(&key(u, v)) {
                    pick = Some((u, v));
                    break;
                }
            }
            let p = pick.unwrap_or_else(|| {
                let u = rng.gen_range(0..n);
                (u, (u + 1 + rng.gen_range(0..n - 1)) % n)
            });
            pairs.push(p);
        }
    }
    Instance { g, f: InsertionSet::new(pairs), lb: None, budget: None }
}

/// `w x h` square grid, row-major ids, with `k` random pairs. Pair ends are
/// drawn as fractions of the side lengths, so one seed gives the same layout
/// at every size.
pub fn grid(w: usize, h: usize, k: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |x: usize, y: usize| y * w + x;
    let mut g = Multigraph::new(w * h);
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                g.add_edge(id(x, y), id(x + 1, y)).unwrap();
            }
            if y + 1 < h {
                g.add_edge(id(x, y), id(x, y + 1)).unwrap();
            }
        }
    }
    let pick = |rng: &mut ChaCha8Rng| {
        let fx: f64 = rng.gen();
        let fy: f64 = rng.gen();
        id((fx * w as f64) as usize, (fy * h as f64) as usize)
    };
    let mut pairs = Vec::new();
    for _ in 0..k {
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        pairs.push(if a != b { (a, b) } else { (a, (a + 1) % (w * h)) });
    }
    Instance { g, f: InsertionSet::new(pairs), lb: None, budget: None }
}

fn bad(msg: &str) -> MeiError {
    MeiError::BadParams(msg.to_string())
}

fn add_bunch(g: &mut Multigraph, u: VertexId, v: VertexId, mult: usize) {
    for _ in 0..mult {
        g.add_edge(u, v).expect("generated edge is valid");
    }
}

/// Honeycomb patch in brick-wall form with `a`, `b` subdividing two
/// horizontal edges of the middle row, far from each other and the boundary.
/// Every route from `a` to `b` crosses at least `r` edges.
pub fn construction_i(r: usize) -> Instance {
    let r = r.max(1);
    let rows = 4 * r + 4;
    let cols = 16 * r + 9;
    let id = |i: usize, j: usize| i * cols + j;
    let mid = rows / 2;
    let cut = [(mid, cols / 4), (mid, 3 * cols / 4)];
    let mut g = Multigraph::new(rows * cols + 2);
    let (a, b) = (rows * cols, rows * cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                match cut.iter().position(|&c| c == (i, j)) {
                    Some(t) => {
                        let x = [a, b][t];
                        g.add_edge(id(i, j), x).unwrap();
                        g.add_edge(x, id(i, j + 1)).unwrap();
                    }
                    None => {
                        g.add_edge(id(i, j), id(i, j + 1)).unwrap();
                    }
                }
            }
            if i + 1 < rows && (i + j) % 2 == 0 {
                g.add_edge(id(i, j), id(i + 1, j)).unwrap();
            }
        }
    }
    Instance { g, f: InsertionSet::new(vec![(a, b)]), lb: None, budget: None }
}

/// Triconnected graph with maximum degree 4 around an outer face of length
/// `2l`, labelled `s_1..s_l, t_1..t_l` in order, with `F = {s_i t_i}`.
/// Every pair shares the outer face and every two pairs interleave on it.
pub fn construction_ii(l: usize) -> Result<Instance, MeiError> {
    if l < 2 {
        return Err(bad("construction II needs l >= 2"));
    }
    let outer = 2 * l;
    let ring = 4 * l;
    let depth = l + 1;
    let mut g = Multigraph::new(outer + ring * depth);
    let r = |j: usize, p: usize| outer + j * ring + p % ring;
    for i in 0..outer {
        g.add_edge(i, (i + 1) % outer).unwrap();
        g.add_edge(i, r(0, 2 * i)).unwrap();
        g.add_edge(i, r(0, 2 * i + 1)).unwrap();
    }
    for j in 0..depth {
        for p in 0..ring {
            g.add_edge(r(j, p), r(j, p + 1)).unwrap();
            if j + 1 < depth {
                g.add_edge(r(j, p), r(j + 1, p)).unwrap();
            }
        }
    }
    let pairs = (0..l).map(|i| (i, l + i)).collect();
    Ok(Instance { g, f: InsertionSet::new(pairs), lb: None, budget: None })
}

/// Adds a crossing-resistant gadget: `cycles` concentric cycles joined by
/// spokes, with the given marked vertices hung off the outermost cycle in
/// order, evenly spaced. Every line is a bunch of `mult` parallel edges, so
/// each marked vertex gains degree `2 * mult`.
fn add_gadget(g: &mut Multigraph, marked: &[VertexId], cycles: usize, spacing: usize, mult: usize) {
    let len = marked.len() * spacing;
    let base = g.n();
    for _ in 0..cycles * len {
        g.add_vertex();
    }
    let c = |j: usize, p: usize| base + j * len + p % len;
    for j in 0..cycles {
        for p in 0..len {
            add_bunch(g, c(j, p), c(j, p + 1), mult);
            if j + 1 < cycles {
                add_bunch(g, c(j, p), c(j + 1, p), mult);
            }
        }
    }
    for (i, &v) in marked.iter().enumerate() {
        let at = i * spacing + len;
        add_bunch(g, v, c(0, at - 1), mult);
        add_bunch(g, v, c(0, at + 1), mult);
    }
}

/// Gadget with `q` fresh marked vertices `0..q` for parameters `m`, `delta`.
pub fn gadget(q: usize, m: usize, delta: usize) -> Multigraph {
    let mut g = Multigraph::new(q);
    let marked: Vec<VertexId> = (0..q).collect();
    add_gadget(&mut g, &marked, 2 * m, 4 * m, delta / 4);
    g
}

/// Poles and terminals of one recursive half.
fn bolted(g: &mut Multigraph, d: usize, m: usize, delta: usize) -> (VertexId, VertexId, Vec<VertexId>) {
    let fresh = |g: &mut Multigraph| g.add_vertex();
    if d == 1 {
        let (x, s2, y, s1) = (fresh(g), fresh(g), fresh(g), fresh(g));
        add_gadget(g, &[x, s2, y, s1], 2 * m, 4 * m, delta / 4);
        return (x, y, vec![s1, s2]);
    }
    let (xs, ys, mut ts) = bolted(g, d - 1, m, delta);
    let (xt, yt, tt) = bolted(g, d - 1, m, delta);
    let (x, y) = (fresh(g), fresh(g));
    add_gadget(g, &[x, xt, yt, y, ys, xs], 2 * m, 4 * m, delta / 4);
    ts.extend(tt);
    (x, y, ts)
}

/// Nested gadgets where each of the `m` pairs alone inserts without
/// crossings but all of them together need at least `delta * m * log2(m) / 2`,
/// which is attached as the certified lower bound.
pub fn construction_iii(m: usize, delta: usize) -> Result<Instance, MeiError> {
    if delta < 4 || delta % 4 != 0 {
        return Err(bad("construction III needs delta >= 4 divisible by 4"));
    }
    if m < 2 || !m.is_power_of_two() {
        return Err(bad("construction III needs m a power of two, at least 2"));
    }
    let d = m.trailing_zeros() as usize;
    let mut g = Multigraph::new(0);
    let (xs, ys, ts) = bolted(&mut g, d, m, delta);
    let (xt, yt, tt) = bolted(&mut g, d, m, delta);
    let x = g.add_vertex();
    let y = g.add_vertex();
    add_gadget(&mut g, &[x, xt, yt, y, ys, xs], 2 * m, 4 * m, delta / 4);
    let pairs = ts.into_iter().zip(tt).collect();
    Ok(Instance { g, f: InsertionSet::new(pairs), lb: Some((delta / 2 * m * d) as u64), budget: None })
}

/// Instance built from a fixed linear crossing number question: the chords
/// `h` on the path `v_1..v_n` (1-based) become the pairs, and the spine plus
/// two apexes become bunches of `|h|^2` parallel edges. The crossing budget
/// `l` carries over unchanged.
pub fn ziegler(h: &[(usize, usize)], n: usize, l: u64) -> Result<Instance, MeiError> {
    if n < 3 {
        return Err(bad("ziegler needs n >= 3"));
    }
    if h.is_empty() {
        return Err(bad("ziegler needs at least one chord"));
    }
    for &(i, j) in h {
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(bad("chord end out of range"));
        }
        if i.abs_diff(j) <= 1 {
            return Err(bad("chords may not be loops or join path neighbours"));
        }
    }
    let mult = h.len() * h.len();
    let (wa, wb) = (n, n + 1);
    let mut g = Multigraph::new(n + 2);
    for i in 0..n - 1 {
        add_bunch(&mut g, i, i + 1, mult);
    }
    for (u, v) in [(0, wa), (n - 1, wa), (0, wb), (n - 1, wb), (wa, wb)] {
        add_bunch(&mut g, u, v, mult);
    }
    let pairs = h.iter().map(|&(i, j)| (i - 1, j - 1)).collect();
    Ok(Instance { g, f: InsertionSet::new(pairs), lb: None, budget: Some(l) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::test_and_embed;

    #[test]
    fn random_is_seeded() {
        assert_eq!(random_planar(30, 4, 7), random_planar(30, 4, 7));
        assert_ne!(random_planar(30, 4, 7), random_planar(30, 4, 8));
    }

    #[test]
    fn random_is_connected_planar() {
        for seed in 0..200 {
            let inst = random_planar(3 + (seed as usize % 40), 3, seed);
            assert!(inst.g.is_connected());
            assert!(test_and_embed(&inst.g).is_ok(), "seed {seed}");
        }
    }

    #[test]
    fn three_vertices_give_triangle_or_path() {
        for seed in 0..40 {
            let inst = random_planar(3, 0, seed);
            let m = inst.g.edges().iter().map(|&[a, b]| key(a, b)).collect::<HashSet<_>>().len();
            assert!(m == 2 || m == 3);
            assert!(inst.f.is_empty());
        }
    }
}
