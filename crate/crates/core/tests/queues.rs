mod common;

use common::{drive, random_steps, Step};
use monoqueue::{
    Backend, BinaryHeapQueue, DialQueue, HotQueue, MonotoneQueue, MultiLevelBuckets, OracleQueue,
    QueueConfig, QueueError, RadixHeap, TwoLevelRadixHeap,
};
use proptest::prelude::*;

const N: usize = 24;
const MAX_KEY: u64 = 1 << 40;

fn steps() -> impl Strategy<Value = Vec<Step>> {
    prop::collection::vec(
        (any::<u8>(), any::<u64>(), any::<u64>()).prop_map(|(op, a, b)| Step { op, a, b }),
        0..300,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dial_matches_model(span in 1u64..80, s in steps()) {
        let mut q = DialQueue::new(span, N, MAX_KEY);
        drive(&mut q, N, span, 1, &s, |q| q.check_invariants()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn mlb_matches_model(span in 1u64..300, k in 1u32..5, s in steps()) {
        let mut q = MultiLevelBuckets::new(span, k, 1, N, MAX_KEY);
        drive(&mut q, N, span, 1, &s, |q| q.check_invariants()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn wide_mlb_matches_model(span in 1u64..300, k in 1u32..4, p in 1u64..9, s in steps()) {
        let mut q = MultiLevelBuckets::new(span, k, p, N, MAX_KEY);
        drive(&mut q, N, span, p, &s, |q| q.check_invariants()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn hot_matches_model(span in 1u64..300, k in 1u32..5, t in 0usize..8, s in steps()) {
        let mut q = HotQueue::new(span, k, 1, t, N, MAX_KEY);
        drive(&mut q, N, span, 1, &s, |q| q.check_twins()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn wide_hot_matches_model(span in 1u64..300, k in 2u32..4, p in 2u64..6, t in 1usize..6, s in steps()) {
        let mut q = HotQueue::new(span, k, p, t, N, MAX_KEY);
        drive(&mut q, N, span, p, &s, |q| q.check_twins()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn radix_matches_model(span in 1u64..300, s in steps()) {
        let mut q = RadixHeap::new(span, MAX_KEY, N);
        drive(&mut q, N, span, 1, &s, |q| q.check_invariants()).map_err(TestCaseError::fail)?;
        let k = q.bucket_count() as u32;
        prop_assert!(q.max_placements() <= k);
    }

    #[test]
    fn radix2_matches_model(span in 1u64..300, delta in 2u64..7, s in steps()) {
        let mut q = TwoLevelRadixHeap::new(span, MAX_KEY, delta, N);
        drive(&mut q, N, span, 1, &s, |q| q.check_invariants()).map_err(TestCaseError::fail)?;
        let k = q.bucket_count() as u32;
        prop_assert!(q.max_placements() <= k);
    }

    #[test]
    fn binary_heap_matches_model(span in 1u64..300, s in steps()) {
        let mut q = BinaryHeapQueue::new(N, MAX_KEY);
        drive(&mut q, N, span, 1, &s, |_| Ok(())).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn oracle_matches_model(span in 1u64..300, s in steps()) {
        let mut q = OracleQueue::new(N, MAX_KEY);
        drive(&mut q, N, span, 1, &s, |_| Ok(())).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn mlb_placements_bounded_by_levels(span in 1u64..500, k in 1u32..5, s in steps()) {
        let mut q = MultiLevelBuckets::new(span, k, 1, N, MAX_KEY);
        drive(&mut q, N, span, 1, &s, |_| Ok(())).map_err(TestCaseError::fail)?;
        prop_assert!(q.max_placements() <= k);
    }

    #[test]
    fn zero_threshold_hot_equals_mlb(span in 1u64..300, k in 1u32..4, s in steps()) {
        let mut hot = HotQueue::new(span, k, 1, 0, N, MAX_KEY);
        let mut mlb = MultiLevelBuckets::new(span, k, 1, N, MAX_KEY);
        let a = drive(&mut hot, N, span, 1, &s, |_| Ok(())).map_err(TestCaseError::fail)?;
        let b = drive(&mut mlb, N, span, 1, &s, |_| Ok(())).map_err(TestCaseError::fail)?;
        prop_assert_eq!(a.extracted, b.extracted);
        prop_assert_eq!(hot.counters(), mlb.counters());
    }

    #[test]
    fn dial_scan_steps_bounded_by_last_key(span in 1u64..60, s in steps()) {
        let mut q = DialQueue::new(span, N, MAX_KEY);
        let out = drive(&mut q, N, span, 1, &s, |_| Ok(())).map_err(TestCaseError::fail)?;
        let last = out.extracted.last().map_or(0, |&(_, k)| k);
        prop_assert!(q.counters().empty_scan_steps <= last);
    }

    #[test]
    fn counters_never_shrink(span in 1u64..100, s in steps()) {
        for backend in Backend::ALL {
            let mut q = QueueConfig::new(N, span, MAX_KEY).build(backend).unwrap();
            let mut prev = q.counters().values();
            drive(&mut q, N, span, 1, &s, |q| {
                let now = q.counters().values();
                if now.iter().zip(prev).any(|(a, b)| *a < b) {
                    return Err(format!("{} counters went backwards", q.name()));
                }
                prev = now;
                Ok(())
            })
            .map_err(TestCaseError::fail)?;
        }
    }
}

#[test]
fn long_random_runs_for_every_backend() {
    for seed in 0..6u64 {
        let s = random_steps(20_000, seed);
        for span in [1u64, 7, 64, 1000] {
            for backend in Backend::ALL {
                let cfg = QueueConfig::new(64, span, MAX_KEY)
                    .with_levels(3)
                    .with_delta(3);
                let mut q = cfg.build(backend).unwrap();
                drive(&mut q, 64, span, 1, &s, |_| Ok(()))
                    .unwrap_or_else(|e| panic!("{backend} C={span} seed={seed}: {e}"));
            }
        }
    }
}

#[test]
fn contract_errors_are_uniform() {
    for backend in Backend::ALL {
        let mut q = QueueConfig::new(4, 10, 100).build(backend).unwrap();
        q.insert(0, 5).unwrap();
        assert!(
            matches!(q.insert(0, 6), Err(QueueError::DuplicateId { id: 0, .. })),
            "{backend}"
        );
        assert!(
            matches!(q.insert(9, 6), Err(QueueError::IdOutOfRange { id: 9, .. })),
            "{backend}"
        );
        assert!(
            matches!(q.insert(1, 101), Err(QueueError::KeyOutOfRange { .. })),
            "{backend}"
        );
        assert!(
            matches!(q.decrease_key(2, 1), Err(QueueError::UnknownId { id: 2 })),
            "{backend}"
        );
        assert!(
            matches!(q.decrease_key(0, 7), Err(QueueError::NotADecrease { .. })),
            "{backend}"
        );
        q.decrease_key(0, 5).unwrap();
        assert_eq!(q.counters().decreases, 0, "{backend}");
        assert_eq!(q.extract_min().map(|e| e.key), Some(5));
        assert!(
            matches!(
                q.insert(1, 4),
                Err(QueueError::MonotonicityViolation { .. })
            ),
            "{backend}"
        );
        assert_eq!(q.len(), 0);
        assert_eq!(q.extract_min(), None);
    }
}
