use std::collections::BTreeSet;

use blockweights::partitions::{cores_of_size, count_with_core, enumerate_partitions, is_e_core};
use blockweights::weights::*;

/// Number of `h`-tuples of partitions with sizes summing to `w`.
fn multipartitions(h: u32, w: u32) -> u64 {
    let p: Vec<u64> = (0..=w)
        .map(|m| enumerate_partitions(m).len() as u64)
        .collect();
    let mut series = vec![0u64; w as usize + 1];
    series[0] = 1;
    for _ in 0..h {
        let mut next = vec![0u64; w as usize + 1];
        for a in 0..=w as usize {
            for b in 0..=w as usize - a {
                next[a + b] += series[a] * p[b];
            }
        }
        series = next;
    }
    series[w as usize]
}

#[test]
fn counts_match_multipartitions() {
    for ell in [2u64, 3, 5, 7] {
        for h in 1..=5 {
            for w in 0..=9 {
                assert_eq!(
                    count_core_functions(h, w as u64, ell),
                    multipartitions(h, w),
                    "h={h} w={w} ell={ell}"
                );
            }
        }
    }
}

#[test]
fn enumeration_is_exact_and_duplicate_free() {
    for ell in [2u64, 3, 5] {
        for h in 1..=3 {
            for w in 0..=6u64 {
                let all = enumerate_core_functions(h, w, ell);
                assert_eq!(all.len() as u64, count_core_functions(h, w, ell));
                let distinct: BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
                for k in &all {
                    assert!(k.is_member(h, w, ell));
                    for (slot, core) in k.entries() {
                        assert!(ell.pow(slot.d) <= w);
                        assert!(!core.is_empty() && is_e_core(core, ell as u32));
                    }
                }
            }
        }
    }
}

#[test]
fn spec_examples() {
    assert_eq!(count_core_functions(3, 0, 2), 1);
    assert!(enumerate_core_functions(3, 0, 2)[0].is_empty());
    assert_eq!(count_core_functions(1, 2, 2), 2);
    assert_eq!(count_core_functions(2, 1, 3), 2);
    assert_eq!(slots_at_level(3, 0, 2).len(), 3);
}

#[test]
fn counting_identity_small() {
    for e in 1..=3u32 {
        for ell in [2u64, 3] {
            for lambda in (0..=4).flat_map(|s| cores_of_size(s, e)) {
                for w in 0..=4u32 {
                    assert_eq!(
                        count_with_core(lambda.size() + e * w, e, &lambda),
                        count_core_functions(e, w as u64, ell)
                    );
                }
            }
        }
    }
}
