use mei_core::decomp::NodeKind;
use mei_core::embed::{test_and_embed, twin};
use mei_core::frame::Frame;
use mei_core::gen::{construction_i, construction_ii, construction_iii, gadget, random_planar, ziegler};
use mei_core::mei::{run_mei, Mode};
use mei_core::oracle::{embeddings, exact_ins_prime, exact_ins_single};
use mei_core::{MeiError, Multigraph};
use std::collections::{BTreeSet, VecDeque};

#[test]
fn hex_grid_pair_needs_r_crossings() {
    for r in 1..=3 {
        let inst = construction_i(r);
        let (a, b) = inst.f.pairs[0];
        let emb = test_and_embed(&inst.g).unwrap();
        assert!(emb.dual_distance(a, b) >= r, "r {r}");
        let mut with_ab = inst.g.clone();
        with_ab.add_edge(a, b).unwrap();
        assert_eq!(with_ab.max_degree(), 3);
        let exact = exact_ins_single(&inst.g, a, b, 1000).unwrap();
        assert!(exact >= r as u64, "r {r}: exact {exact}");
    }
}

#[test]
fn interleaved_face_is_triconnected_with_small_degree() {
    for l in 2..=6 {
        let inst = construction_ii(l).unwrap();
        assert!(inst.g.max_degree() <= 4);
        let fr = Frame::new(&inst.g).unwrap();
        let kinds: Vec<NodeKind> = (0..fr.ct.nodes.len()).map(|x| fr.ct.kind(x)).collect();
        assert_eq!(kinds, vec![NodeKind::R], "l {l}");
        for &(s, t) in &inst.f.pairs {
            let mut h = inst.g.clone();
            h.add_edge(s, t).unwrap();
            assert!(test_and_embed(&h).is_ok());
        }
    }
    assert!(matches!(construction_ii(1), Err(MeiError::BadParams(_))));
}

#[test]
fn interleaved_pairs_cost_one_crossing_per_two() {
    for (l, want) in [(2, 1), (3, 3), (4, 6), (5, 10)] {
        let inst = construction_ii(l).unwrap();
        assert_eq!(exact_ins_prime(&inst.g, &inst.f, 100).unwrap(), 0);
        for mode in [Mode::Weak, Mode::Strong] {
            let r = run_mei(&inst.g, &inst.f, mode).unwrap();
            assert!(r.ins_values.iter().all(|&v| v == 0));
            assert_eq!(r.total, want, "l {l} {mode:?}");
        }
    }
}

/// Fewest edges of `h` crossed by a curve between two sectors of the active
/// face cut by the bars, never crossing a bar and never entering a third sector.
fn sector_distances(h: &Multigraph, marked: &[usize], bars: &[(usize, usize)]) -> Vec<(usize, usize, bool, usize)> {
    let mut g = h.clone();
    let first_bar = g.m();
    for &(i, j) in bars {
        g.add_edge(marked[i], marked[j]).unwrap();
    }
    let emb = test_and_embed(&g).unwrap();
    let is_bar = |d: usize| d / 2 >= first_bar;
    let sectors: Vec<usize> = (0..emb.face_count()).filter(|&f| emb.face(f).iter().any(|&d| is_bar(d))).collect();
    let bars_of = |f: usize| -> BTreeSet<usize> { emb.face(f).iter().filter(|&&d| is_bar(d)).map(|&d| d / 2).collect() };
    let mut out = Vec::new();
    for (x, &s) in sectors.iter().enumerate() {
        for &t in &sectors[x + 1..] {
            let adjacent = !bars_of(s).is_disjoint(&bars_of(t));
            let mut dist = vec![usize::MAX; emb.face_count()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(f) = queue.pop_front() {
                if f == t {
                    continue;
                }
                for &d in emb.face(f) {
                    let g2 = emb.face_of(twin(d));
                    if is_bar(d) || (sectors.contains(&g2) && g2 != t) {
                        continue;
                    }
                    if dist[f] + 1 < dist[g2] {
                        dist[g2] = dist[f] + 1;
                        queue.push_back(g2);
                    }
                }
            }
            out.push((s, t, adjacent, dist[t]));
        }
    }
    out
}

#[test]
fn gadgets_resist_crossing_between_sectors() {
    let (m, delta) = (2, 4);
    for (q, bars) in [(4, vec![(0, 2)]), (6, vec![(0, 3), (1, 2), (4, 5)])] {
        let h = gadget(q, m, delta);
        let marked: Vec<usize> = (0..q).collect();
        assert!(marked.iter().all(|&v| h.degree(v) == delta / 2));
        assert!(h.max_degree() <= delta);
        assert_eq!(embeddings(&h, 1000).unwrap().len(), 2, "q {q}: unique up to mirroring");
        let found = sector_distances(&h, &marked, &bars);
        assert_eq!(found.len(), if q == 4 { 1 } else { 6 });
        for (s, t, adjacent, d) in found {
            assert!(d >= delta / 2, "q {q}: sectors {s}, {t} only {d} apart");
            if !adjacent {
                assert!(d >= m * delta, "q {q}: far sectors {s}, {t} only {d} apart");
            }
        }
    }
}

#[test]
fn nested_gadgets_carry_their_lower_bound() {
    let inst = construction_iii(2, 4).unwrap();
    assert_eq!(inst.lb, Some(4));
    assert_eq!(inst.f.len(), 2);
    assert!(inst.g.max_degree() <= 4);
    for &(s, t) in &inst.f.pairs {
        assert_eq!(inst.g.degree(s), 2);
        assert_eq!(inst.g.degree(t), 2);
    }
    for mode in [Mode::Weak, Mode::Strong] {
        let r = run_mei(&inst.g, &inst.f, mode).unwrap();
        assert_eq!(r.ins_values, vec![0, 0]);
        assert!(r.total >= 4, "{mode:?}: {}", r.total);
    }
    let wider = construction_iii(4, 8).unwrap();
    assert_eq!(wider.lb, Some(32));
    assert!(wider.g.max_degree() <= 8);
    assert!(matches!(construction_iii(3, 4), Err(MeiError::BadParams(_))));
    assert!(matches!(construction_iii(2, 6), Err(MeiError::BadParams(_))));
}

#[test]
fn ziegler_bunches_have_the_stated_sizes() {
    let inst = ziegler(&[(1, 3), (1, 3)], 3, 0).unwrap();
    assert_eq!((inst.g.n(), inst.g.m(), inst.budget), (5, 28, Some(0)));
    assert_eq!(inst.f.pairs, vec![(0, 2), (0, 2)]);
    assert!(matches!(ziegler(&[(1, 2)], 4, 0), Err(MeiError::BadParams(_))));
    assert!(matches!(ziegler(&[(2, 2)], 4, 0), Err(MeiError::BadParams(_))));
    assert!(matches!(ziegler(&[(1, 9)], 4, 0), Err(MeiError::BadParams(_))));
    assert!(matches!(ziegler(&[(1, 3)], 2, 0), Err(MeiError::BadParams(_))));
}

#[test]
fn ziegler_toy_instances_match_their_page_answers() {
    // two nested chords fit on one page
    let inst = ziegler(&[(1, 3), (3, 5)], 5, 0).unwrap();
    let b = inst.budget.unwrap();
    let r = run_mei(&inst.g, &inst.f, Mode::Strong).unwrap();
    assert_eq!(r.ins_sigma, 0);
    assert!(r.total <= b);
    // three pairwise interleaving chords: two of them share a page, so every
    // drawing crosses; the algorithm keeps all three on one page
    let inst = ziegler(&[(1, 4), (2, 5), (3, 6)], 6, 1).unwrap();
    let r = run_mei(&inst.g, &inst.f, Mode::Strong).unwrap();
    assert_eq!(r.ins_sigma, 0);
    assert!((1..=3).contains(&r.total));
}

#[test]
fn generators_are_planar_and_repeatable() {
    let all = [
        construction_i(2),
        construction_ii(3).unwrap(),
        construction_iii(2, 4).unwrap(),
        ziegler(&[(1, 4), (2, 5)], 5, 0).unwrap(),
        random_planar(40, 5, 3),
    ];
    for inst in &all {
        assert!(inst.g.is_connected());
        assert!(test_and_embed(&inst.g).is_ok());
        assert!(inst.f.validate(&inst.g).is_ok());
    }
    assert_eq!(construction_iii(2, 4).unwrap(), all[2]);
}
