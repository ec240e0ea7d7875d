use mei_core::embed::{insert_edges_fixed, test_and_embed};
use mei_core::gen::random_planar;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn drawing_is_a_planarization(n in 2usize..40, k in 1usize..7, seed in any::<u64>()) {
        let inst = random_planar(n, k, seed);
        let emb = test_and_embed(&inst.g).unwrap();
        let r = insert_edges_fixed(&emb, &inst.f);
        for (w, &(a, b)) in r.walks.iter().zip(&inst.f.pairs) {
            prop_assert_eq!(w.len(), emb.dual_distance(a, b));
        }
        let d = &r.drawing;
        prop_assert_eq!(d.dummies() as u64, r.g_crossings + r.ff_crossings);
        prop_assert_eq!(d.embedding().euler_characteristic(), 2);
        prop_assert!(test_and_embed(&d.graph()).is_ok());
        prop_assert_eq!(d.graph().m(), inst.g.m() + inst.f.len() + 2 * d.dummies());
        for &(_, c) in &r.ff_pairs {
            prop_assert!(c <= 1, "pairs {:?}", r.ff_pairs);
        }
    }

    #[test]
    fn walk_lengths_survive_mirroring(n in 2usize..40, k in 1usize..7, seed in any::<u64>()) {
        let inst = random_planar(n, k, seed);
        let emb = test_and_embed(&inst.g).unwrap();
        let a = insert_edges_fixed(&emb, &inst.f);
        let b = insert_edges_fixed(&emb.mirror(), &inst.f);
        let la: Vec<usize> = a.walks.iter().map(|w| w.len()).collect();
        let lb: Vec<usize> = b.walks.iter().map(|w| w.len()).collect();
        prop_assert_eq!(la, lb);
    }
}
