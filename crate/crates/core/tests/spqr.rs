use mei_core::decomp::{bc, check_split, triconnected_components};
use mei_core::Multigraph;
use proptest::prelude::*;

fn split_blocks(n: usize, edges: &[(usize, usize)]) -> Result<usize, String> {
    let g = Multigraph::from_edges(n, edges).unwrap();
    if !g.is_connected() {
        return Ok(0);
    }
    let bcs = bc::blocks(&g);
    let mut checked = 0;
    for b in &bcs.blocks {
        if b.verts.len() < 3 {
            continue;
        }
        let local: Vec<[usize; 2]> = b
            .edges
            .iter()
            .map(|&e| {
                let [u, v] = g.ends(e);
                [b.verts.binary_search(&u).unwrap(), b.verts.binary_search(&v).unwrap()]
            })
            .collect();
        let s = mei_core::run_with_stack(|| triconnected_components(b.verts.len(), &local));
        check_split(b.verts.len(), &local, &s)?;
        checked += 1;
    }
    Ok(checked)
}

#[test]
fn k4_is_one_rigid() {
    let e = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let s = triconnected_components(4, &e);
    assert_eq!(s.comps.len(), 1);
    check_split(4, &e, &s).unwrap();
}

#[test]
fn cycle_is_one_polygon() {
    let e = [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]];
    let s = triconnected_components(5, &e);
    assert_eq!(s.comps.len(), 1);
    check_split(5, &e, &s).unwrap();
}

#[test]
fn theta_has_bond_and_three_polygons() {
    let e = [[0, 1], [1, 2], [0, 3], [3, 2], [0, 4], [4, 2]];
    let s = triconnected_components(5, &e);
    check_split(5, &e, &s).unwrap();
    assert_eq!(s.comps.len(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]
    #[test]
    fn random_blocks_split_validly(
        n in 3usize..9,
        raw in proptest::collection::vec((0usize..9, 0usize..9), 3..22)
    ) {
        let edges: Vec<(usize, usize)> = raw.into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a != b)
            .collect();
        let r = split_blocks(n, &edges);
        prop_assert!(r.is_ok(), "{:?} {:?}", edges, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]
    #[test]
    fn denser_blocks_split_validly(
        n in 4usize..14,
        raw in proptest::collection::vec((0usize..14, 0usize..14), 12..40)
    ) {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend(raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b));
        let r = split_blocks(n, &edges);
        prop_assert_eq!(r, Ok(1), "{:?}", edges);
    }
}
