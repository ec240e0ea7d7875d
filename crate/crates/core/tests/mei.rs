use mei_core::decomp::NodeId;
use mei_core::frame::Frame;
use mei_core::gen::random_planar;
use mei_core::mei::{
    compute_preferences, good_simplicial_sequence, reconcile, run_mei_on, sequence_is_good, strong_g_term, Mode,
};
use mei_core::oracle::{embeddings_of, exact_ins_prime, exact_ins_single};
use mei_core::pref::honors;
use mei_core::realize::realize;
use mei_core::run_with_stack;
use proptest::prelude::*;

const CAP: usize = 100_000;

#[test]
fn one_pair_is_solved_exactly() {
    let mut checked = 0;
    for seed in 0..400u64 {
        let inst = random_planar(3 + seed as usize % 10, 1, seed + 70_000);
        if inst.g.m() > 20 {
            continue;
        }
        let (a, b) = inst.f.pairs[0];
        let Ok(exact) = exact_ins_single(&inst.g, a, b, CAP) else { continue };
        let fr = Frame::new(&inst.g).unwrap();
        for mode in [Mode::Weak, Mode::Strong] {
            let r = run_mei_on(&fr, &inst.f, mode);
            assert_eq!(r.total, exact, "seed {seed}");
            assert_eq!(r.ins_sigma, exact, "seed {seed}");
        }
        checked += 1;
    }
    assert!(checked >= 200);
}

#[test]
fn reconciled_preferences_stay_optimal_and_nearly_agree() {
    for seed in 0..150u64 {
        let inst = random_planar(5 + seed as usize % 9, 2 + seed as usize % 4, seed + 80_000);
        let fr = Frame::new(&inst.g).unwrap();
        let mut ins = compute_preferences(&fr, &inst.f);
        let before = ins.clone();
        reconcile(&fr.ct, &mut ins);
        for (j, x) in ins.iter().enumerate() {
            assert_eq!(x.value, before[j].value);
            let (a, b) = inst.f.pairs[j];
            let emb = realize(&fr, &x.prefs);
            assert_eq!(honors(&fr, &emb, &x.prefs).count, 0, "seed {seed}");
            assert_eq!(emb.dual_distance(a, b) as u64, x.value, "seed {seed}: pair {j} lost optimality");
        }
        for i in 0..ins.len() {
            for j in i + 1..ins.len() {
                let differ = ins[i]
                    .prefs
                    .iter()
                    .filter(|(nu, p)| ins[j].prefs.get(nu).is_some_and(|q| q != *p))
                    .count();
                assert!(differ <= 2, "seed {seed}: pairs {i}, {j} disagree at {differ} nodes");
            }
        }
    }
}

#[test]
fn simplicial_sequences_are_good() {
    run_with_stack(|| {
        for seed in 0..300u64 {
            let inst = random_planar(6 + seed as usize % 60, 1 + seed as usize % 12, seed + 90_000);
            let fr = Frame::new(&inst.g).unwrap();
            let ins = compute_preferences(&fr, &inst.f);
            let paths: Vec<Vec<NodeId>> = ins.into_iter().map(|x| x.path).collect();
            let seq = good_simplicial_sequence(&fr.ct, &paths);
            assert!(sequence_is_good(&fr.ct, &paths, &seq), "seed {seed}");
        }
    });
}

#[test]
fn both_modes_meet_their_bounds_and_honor_the_merge() {
    run_with_stack(|| {
        for seed in 0..200u64 {
            let inst = random_planar(5 + seed as usize % 80, 1 + seed as usize % 10, seed + 100_000);
            let fr = Frame::new(&inst.g).unwrap();
            for mode in [Mode::Weak, Mode::Strong] {
                let r = run_mei_on(&fr, &inst.f, mode);
                assert!(r.total <= r.guarantee(), "seed {seed} {mode:?}: {} > {}", r.total, r.guarantee());
                assert_eq!(r.total, r.crossings_with_g + r.crossings_f_f);
                assert_eq!(r.embedding.euler_characteristic(), 2);
                let mirror = fr.mirrored();
                let used = if r.mirrored { &mirror } else { &fr };
                assert_eq!(honors(used, &r.embedding, &r.merged).count, 0, "seed {seed} {mode:?}");
                for (i, ids) in &r.table.p_prime {
                    assert!(ids.iter().all(|x| r.table.p[i].contains(x)));
                }
                if mode == Mode::Weak {
                    assert_eq!(r.table.p, r.table.p_prime);
                }
            }
        }
    });
}

#[test]
fn crossings_with_g_lie_between_the_exact_optimum_and_the_bound() {
    let mut checked = 0;
    for seed in 0..300u64 {
        let inst = random_planar(4 + seed as usize % 9, 2 + seed as usize % 3, seed + 110_000);
        let Ok(exact) = exact_ins_prime(&inst.g, &inst.f, CAP) else { continue };
        let fr = Frame::new(&inst.g).unwrap();
        let r = run_mei_on(&fr, &inst.f, Mode::Strong);
        let k = inst.f.len() as u64;
        assert!(exact <= r.crossings_with_g, "seed {seed}");
        assert!(r.crossings_with_g <= exact + strong_g_term(k, r.delta as u64), "seed {seed}");
        assert!(r.ins_sigma <= exact);
        checked += 1;
    }
    assert!(checked >= 100);
}

#[test]
fn mirrored_reference_embedding_gives_the_same_total() {
    for seed in 0..150u64 {
        let inst = random_planar(5 + seed as usize % 30, 1 + seed as usize % 6, seed + 120_000);
        let fr = Frame::new(&inst.g).unwrap();
        let mirrored = fr.mirrored();
        for mode in [Mode::Weak, Mode::Strong] {
            let a = run_mei_on(&fr, &inst.f, mode);
            let b = run_mei_on(&mirrored, &inst.f, mode);
            assert_eq!(a.ins_values, b.ins_values, "seed {seed}");
            assert_eq!(a.total, b.total, "seed {seed} {mode:?}");
            assert_eq!(a.crossings_with_g, b.crossings_with_g, "seed {seed} {mode:?}");
        }
    }
}

#[test]
fn every_single_preference_is_honored_by_some_enumerated_embedding() {
    for seed in 0..80u64 {
        let inst = random_planar(4 + seed as usize % 6, 3, seed + 130_000);
        let fr = Frame::new(&inst.g).unwrap();
        let Ok(embs) = embeddings_of(&fr, 20_000) else { continue };
        for x in compute_preferences(&fr, &inst.f) {
            assert!(embs.iter().any(|e| honors(&fr, e, &x.prefs).count == 0), "seed {seed}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn reports_are_consistent(n in 3usize..60, k in 0usize..9, seed in any::<u64>()) {
        let inst = random_planar(n, k, seed);
        let fr = Frame::new(&inst.g).unwrap();
        for mode in [Mode::Weak, Mode::Strong] {
            let r = run_with_stack(|| run_mei_on(&fr, &inst.f, mode));
            prop_assert_eq!(r.total, r.crossings_with_g + r.crossings_f_f);
            prop_assert!(r.ins_sigma <= r.crossings_with_g);
            prop_assert_eq!(r.walk_lengths.iter().sum::<u64>(), r.crossings_with_g);
            prop_assert!(r.total <= r.guarantee());
            prop_assert_eq!(r.fixed.drawing.dummies() as u64, r.total);
            prop_assert_eq!(r.fixed.drawing.embedding().euler_characteristic(), 2);
        }
    }
}
