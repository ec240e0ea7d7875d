use mei_core::embed::{test_and_embed, Embedding};
use mei_core::{MeiError, Multigraph};
use proptest::prelude::*;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Tries every rotation system; planar iff one of them has Euler characteristic 2.
fn brute_planar(g: &Multigraph) -> bool {
    let n = g.n();
    let options: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            let darts: Vec<usize> = g
                .incident(v)
                .iter()
                .map(|&e| if g.ends(e)[0] == v { 2 * e } else { 2 * e + 1 })
                .collect();
            if darts.is_empty() {
                return vec![vec![]];
            }
            permutations(&darts[1..])
                .into_iter()
                .map(|mut p| {
                    p.insert(0, darts[0]);
                    p
                })
                .collect()
        })
        .collect();
    let mut idx = vec![0; n];
    loop {
        let rot: Vec<Vec<usize>> = (0..n).map(|v| options[v][idx[v]].clone()).collect();
        let e = Embedding::from_rotations(g, rot).unwrap();
        if e.euler_characteristic() == 2 {
            return true;
        }
        let mut v = 0;
        loop {
            if v == n {
                return false;
            }
            idx[v] += 1;
            if idx[v] < options[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn agrees_with_exhaustive_search(
        n in 3usize..7,
        raw in proptest::collection::vec((0usize..7, 0usize..7), 4..11)
    ) {
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        edges.extend(raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b));
        edges.truncate(9);
        let g = Multigraph::from_edges(n, &edges).unwrap();
        let fast = test_and_embed(&g);
        let slow = brute_planar(&g);
        prop_assert_eq!(fast.is_ok(), slow, "{:?}", edges);
        if let Ok(e) = fast {
            prop_assert_eq!(e.euler_characteristic(), 2);
        } else {
            prop_assert_eq!(fast.unwrap_err(), MeiError::NotPlanar);
        }
    }
}
