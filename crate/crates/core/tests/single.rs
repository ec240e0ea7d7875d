use mei_core::frame::Frame;
use mei_core::gen::random_planar;
use mei_core::oracle::{embeddings_of, exact_ins_single};
use mei_core::pref::honors;
use mei_core::realize::realize;
use mei_core::single::{insert_single, Costs};

const CAP: usize = 100_000;

#[test]
fn value_is_optimal_and_realized() {
    let mut checked = 0;
    for seed in 0..600u64 {
        let n = 3 + seed as usize % 10;
        let inst = random_planar(n, 1, seed);
        if inst.g.m() > 20 {
            continue;
        }
        let (v1, v2) = inst.f.pairs[0];
        let Ok(exact) = exact_ins_single(&inst.g, v1, v2, CAP) else { continue };
        let fr = Frame::new(&inst.g).unwrap();
        let mut costs = Costs::new(&fr);
        let ins = insert_single(&fr, &mut costs, v1, v2);
        assert_eq!(ins.value, exact, "seed {seed}: {:?} pair {:?}", inst.g.edges(), (v1, v2));
        let emb = realize(&fr, &ins.prefs);
        assert_eq!(emb.euler_characteristic(), 2);
        assert_eq!(honors(&fr, &emb, &ins.prefs).count, 0, "seed {seed}");
        assert_eq!(emb.dual_distance(v1, v2) as u64, exact, "seed {seed}: realized walk");
        checked += 1;
    }
    assert!(checked >= 200, "only {checked} instances checked");
}

#[test]
fn every_honoring_embedding_is_optimal() {
    for seed in 0..300u64 {
        let inst = random_planar(4 + seed as usize % 7, 1, seed + 10_000);
        let (v1, v2) = inst.f.pairs[0];
        let fr = Frame::new(&inst.g).unwrap();
        let Ok(embs) = embeddings_of(&fr, 20_000) else { continue };
        let mut costs = Costs::new(&fr);
        let ins = insert_single(&fr, &mut costs, v1, v2);
        let mut honoring = 0;
        for e in &embs {
            if honors(&fr, e, &ins.prefs).count == 0 {
                honoring += 1;
                assert_eq!(e.dual_distance(v1, v2) as u64, ins.value, "seed {seed}");
            }
        }
        assert!(honoring > 0, "seed {seed}");
    }
}
