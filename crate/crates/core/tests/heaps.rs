use partition_heaps::trace::{gen, Op, Pattern, Trace};
use partition_heaps::validation::{differential_run, replay, ReplayOptions};
use partition_heaps::{
    new_heap, ExpHeap, FhTngHeap, HeapConfig, HeapError, HeapKind, LpHeap, SelectMode,
};
use proptest::prelude::*;

#[test]
fn every_pattern_gives_identical_outputs_across_heaps() {
    for p in Pattern::ALL {
        let t = gen(p, 20_000, 11);
        let outs: Vec<_> = HeapKind::PARTITION
            .into_iter()
            .map(|k| {
                let v = differential_run(&t, k, HeapConfig::default());
                assert!(v.passed(), "{p}: {v}");
                v.outputs
            })
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{p}");
    }
}

#[test]
fn randomized_selection_matches_oracle() {
    let config = HeapConfig {
        select: SelectMode::Randomized { seed: 3 },
        ..HeapConfig::default()
    };
    for p in [Pattern::Random, Pattern::AdversarialDk, Pattern::Sawtooth] {
        let t = gen(p, 20_000, 4);
        for k in HeapKind::PARTITION {
            let v = differential_run(&t, k, config);
            assert!(v.passed(), "{p}: {v}");
        }
    }
}

#[test]
fn boxed_heaps_share_error_behaviour() {
    for k in HeapKind::PARTITION.into_iter().chain([HeapKind::Oracle]) {
        let mut h = new_heap::<i64>(k, HeapConfig::default());
        assert_eq!(h.pop_min(), Err(HeapError::Empty));
        assert_eq!(h.find_min(), Err(HeapError::Empty));
        let a = h.insert(10);
        assert_eq!(h.decrease_key(a, 11), Err(HeapError::KeyIncrease));
        h.decrease_key(a, 10).unwrap();
        assert_eq!(h.delete_min(), Ok(10));
        assert_eq!(h.decrease_key(a, 1), Err(HeapError::DeadHandle));
        assert!(h.is_empty());
        assert!(h.audit().passed(), "{}", h.audit());
    }
}

#[test]
fn duplicate_keys_come_out_in_insertion_order() {
    let mut ops: Vec<Op> = (0..500).map(|i| Op::Insert(i % 3)).collect();
    ops.extend(std::iter::repeat_n(Op::DeleteMin, 500));
    let t = Trace::new(ops);
    for k in HeapKind::PARTITION {
        let v = differential_run(&t, k, HeapConfig::default());
        assert!(v.passed(), "{v}");
        assert!(v.outputs.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn concrete_types_are_usable_directly() {
    let mut lp = LpHeap::new();
    let mut fh = FhTngHeap::new();
    let mut ex = ExpHeap::new();
    for k in [5u32, 3, 8, 1] {
        lp.insert(k);
        fh.insert(k);
        ex.insert(k);
    }
    for want in [1, 3, 5, 8] {
        assert_eq!(lp.pop_min().unwrap().user, want);
        assert_eq!(fh.pop_min().unwrap().user, want);
        assert_eq!(ex.pop_min().unwrap().user, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_traces_replay_cleanly(seed in any::<u64>(), ops in 0usize..3000, p in 0usize..6) {
        let t = gen(Pattern::ALL[p], ops, seed);
        for k in HeapKind::PARTITION {
            let opts = ReplayOptions { oracle: true, audit_every: Some(97), ..ReplayOptions::default() };
            let v = replay(&t, k, opts, |_| {});
            prop_assert!(v.passed(), "{}", v);
        }
    }
}
