mod common;

use eqg::homspace::invariant_state_moment;
use eqg::partitions::{is_block_stable, PartitionCategory, SetPartition};
use eqg::weingarten::{haar_moment, MomentWord};
use proptest::prelude::*;

fn partition(max_points: usize) -> impl Strategy<Value = SetPartition> {
    (0..=max_points).prop_flat_map(|s| {
        proptest::collection::vec(0usize..s.max(1), s).prop_map(|labels| SetPartition::kernel_of(&labels))
    })
}

fn same_size_pair(max_points: usize) -> impl Strategy<Value = (SetPartition, SetPartition, SetPartition)> {
    (0..=max_points).prop_flat_map(|s| {
        let labels = || proptest::collection::vec(0usize..s.max(1), s);
        (labels(), labels(), labels()).prop_map(|(a, b, c)| {
            (SetPartition::kernel_of(&a), SetPartition::kernel_of(&b), SetPartition::kernel_of(&c))
        })
    })
}

proptest! {
    #[test]
    fn join_is_a_lattice_operation((a, b, c) in same_size_pair(7)) {
        let ab = a.join(&b).unwrap();
        prop_assert_eq!(&ab, &b.join(&a).unwrap());
        prop_assert_eq!(ab.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(&a.join(&a).unwrap(), &a);
        prop_assert!(ab.block_count() <= a.block_count().min(b.block_count()));
        prop_assert!(a.refines(&ab) && b.refines(&ab));
    }

    #[test]
    fn delta_of_join((a, b, _) in same_size_pair(6), seed in proptest::collection::vec(1usize..=3, 6)) {
        let i = &seed[..a.points()];
        let both = a.delta(i).unwrap() && b.delta(i).unwrap();
        prop_assert_eq!(both, a.join(&b).unwrap().delta(i).unwrap());
    }

    #[test]
    fn serialization_round_trips(p in partition(8)) {
        prop_assert_eq!(p.to_string().parse::<SetPartition>().unwrap(), p);
    }

    #[test]
    fn removal_keeps_noncrossing(p in partition(8)) {
        prop_assume!(p.is_noncrossing());
        for q in p.block_removal_subpartitions() {
            prop_assert!(q.is_noncrossing());
        }
    }

    #[test]
    fn noncrossing_agrees_with_block_oracle(p in partition(8)) {
        prop_assert_eq!(p.is_noncrossing(), !common::crosses(p.blocks()));
    }

    /// Haar moments depend only on the kernels of the row and column tuples.
    #[test]
    fn haar_moment_is_kernel_invariant(
        cat_index in 0usize..8,
        rows in proptest::collection::vec(1usize..=3, 0..=3),
        shift_r in 0usize..3,
        shift_c in 0usize..3,
        cols_seed in proptest::collection::vec(1usize..=3, 3),
    ) {
        let cat = PartitionCategory::UNPRIMED[cat_index];
        let n = 6;
        let cols = &cols_seed[..rows.len()];
        let w = MomentWord::new(n, rows.iter().copied().zip(cols.iter().copied()).collect()).unwrap();
        // Injective relabelling x -> x + shift on each side separately.
        let relabelled = MomentWord::new(
            n,
            rows.iter().map(|&x| x + shift_r).zip(cols.iter().map(|&x| (4 - x) + shift_c)).collect(),
        ).unwrap();
        prop_assert_eq!(haar_moment(cat, n, &w).unwrap(), haar_moment(cat, n, &relabelled).unwrap());
    }

    #[test]
    fn invariant_state_equals_haar(
        cat_index in 0usize..8,
        k in 0usize..4,
        letters in proptest::collection::vec((0usize..4, 1usize..=4), 0..=4),
    ) {
        let cat = PartitionCategory::UNPRIMED[cat_index];
        let n = 4;
        prop_assume!(k < n || letters.is_empty());
        let letters: Vec<(usize, usize)> = letters.into_iter().map(|(r, c)| (k + 1 + r % (n - k), c)).collect();
        let w = MomentWord::new(n, letters).unwrap();
        prop_assert_eq!(invariant_state_moment(cat, n, k, &w).unwrap(), haar_moment(cat, n, &w).unwrap());
    }
}

#[test]
fn category_sizes_match_independent_enumerators() {
    for s in 0..=8usize {
        let all = common::bell_partitions(s);
        assert_eq!(PartitionCategory::S.enumerate(s).len(), all.len(), "Bell({s})");

        let points: Vec<usize> = (1..=s).collect();
        let matchings = common::pairings(&points);
        let expected = if s % 2 == 0 { common::double_factorial_odd(s as u64) } else { 0 };
        assert_eq!(matchings.len() as u64, expected);
        assert_eq!(PartitionCategory::O.enumerate(s).len(), matchings.len());

        let nc = matchings.iter().filter(|m| !common::crosses(m)).count();
        let expected = if s % 2 == 0 { common::catalan(s as u64 / 2) } else { 0 };
        assert_eq!(nc as u64, expected);
        assert_eq!(PartitionCategory::OFree.enumerate(s).len(), nc);

        for cat in PartitionCategory::ALL {
            let rule = cat.rule();
            let expected: std::collections::BTreeSet<SetPartition> = all
                .iter()
                .filter(|b| b.iter().all(|blk| rule.admits(blk.len())))
                .filter(|b| !cat.is_free() || !common::crosses(b))
                .filter(|_| !cat.is_primed() || s % 2 == 0)
                .map(|b| common::to_partition(s, b))
                .collect();
            let got = cat.enumerate(s);
            assert_eq!(got.len(), expected.len(), "{cat} s={s}");
            assert_eq!(got.iter().cloned().collect::<std::collections::BTreeSet<_>>(), expected, "{cat} s={s}");
        }
    }
}

#[test]
fn stability_of_all_categories() {
    for cat in PartitionCategory::UNPRIMED {
        assert!(is_block_stable(cat, 6).stable, "{cat}");
    }
    for cat in [PartitionCategory::SPrime, PartitionCategory::BPrime] {
        let r = is_block_stable(cat, 6);
        assert!(!r.stable);
        assert_eq!(r.witness.unwrap().partition.points(), 2);
    }
}
