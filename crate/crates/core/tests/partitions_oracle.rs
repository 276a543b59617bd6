//! Partition combinatorics against a geometric rim-hook oracle.

use std::collections::BTreeSet;

use blockweights::partitions::*;
use proptest::prelude::*;

fn conjugate(parts: &[u32]) -> Vec<u32> {
    let first = parts.first().copied().unwrap_or(0);
    (0..first)
        .map(|c| parts.iter().filter(|&&x| x > c).count() as u32)
        .collect()
}

/// Cells `(row, col)` whose hook has length `e`; each one names a rim `e`-hook
/// whose hand sits in that row.
fn hook_cells(parts: &[u32], e: u32) -> Vec<(usize, usize)> {
    let conj = conjugate(parts);
    let mut out = Vec::new();
    for (i, &row) in parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row as usize) {
            let arm = row - j as u32 - 1;
            let leg = col - i as u32 - 1;
            if arm + leg + 1 == e {
                out.push((i, j));
            }
        }
    }
    out
}

/// Removes the rim hook attached to cell `(i, j)`.
fn remove_rim_hook(parts: &[u32], (i, j): (usize, usize)) -> Vec<u32> {
    let conj = conjugate(parts);
    let last = conj[j] as usize - 1;
    let mut out = parts.to_vec();
    for r in i..last {
        out[r] = parts[r + 1] - 1;
    }
    out[last] = j as u32;
    out.retain(|&x| x > 0);
    out
}

fn core_by_hooks(parts: &[u32], e: u32) -> Vec<u32> {
    let mut cur = parts.to_vec();
    while let Some(&cell) = hook_cells(&cur, e).iter().min() {
        let next = remove_rim_hook(&cur, cell);
        assert_eq!(next.iter().sum::<u32>() + e, cur.iter().sum::<u32>());
        assert!(next.windows(2).all(|w| w[0] >= w[1]), "{cur:?} -> {next:?}");
        cur = next;
    }
    cur
}

fn all_terminal_cores(parts: &[u32], e: u32, out: &mut BTreeSet<Vec<u32>>) {
    let cells = hook_cells(parts, e);
    if cells.is_empty() {
        out.insert(parts.to_vec());
    }
    for cell in cells {
        all_terminal_cores(&remove_rim_hook(parts, cell), e, out);
    }
}

#[test]
fn abacus_core_matches_rim_hook_removal() {
    for m in 0..=12 {
        for mu in enumerate_partitions(m) {
            for e in 1..=6 {
                assert_eq!(
                    e_core(&mu, e).parts(),
                    core_by_hooks(mu.parts(), e).as_slice(),
                    "{mu} e={e}"
                );
            }
        }
    }
}

#[test]
fn core_independent_of_removal_order() {
    for m in 0..=8 {
        for mu in enumerate_partitions(m) {
            for e in 1..=4 {
                let mut cores = BTreeSet::new();
                all_terminal_cores(mu.parts(), e, &mut cores);
                assert_eq!(cores.len(), 1, "{mu} e={e}");
                assert_eq!(cores.into_iter().next().unwrap(), e_core(&mu, e).parts());
            }
        }
    }
}

#[test]
fn weight_counts_hooks() {
    for m in 0..=10 {
        for mu in enumerate_partitions(m) {
            for e in 1..=5 {
                let total: u32 = e_quotient(&mu, e).iter().map(|p| p.size()).sum();
                assert_eq!(e_weight(&mu, e), total);
            }
        }
    }
}

#[test]
fn core_quotient_is_a_bijection() {
    for e in 1..=5u32 {
        for m in 0..=10 {
            let mut seen = BTreeSet::new();
            for mu in enumerate_partitions(m) {
                let key = (e_core(&mu, e), e_quotient(&mu, e));
                assert!(seen.insert(key.clone()), "{mu} e={e}");
                assert_eq!(from_core_quotient(&key.0, &key.1, e).unwrap(), mu);
            }
        }
    }
}

#[test]
fn count_with_core_partitions_everything() {
    for e in 2..=4 {
        for m in 0..=10 {
            let total: u64 = (0..=m)
                .flat_map(|s| cores_of_size(s, e))
                .map(|lambda| count_with_core(m, e, &lambda))
                .sum();
            assert_eq!(total, enumerate_partitions(m).len() as u64);
        }
    }
}

#[test]
fn non_core_rejected_on_rebuild() {
    let quot = vec![Partition::empty(), Partition::empty()];
    assert!(from_core_quotient(&Partition::new(vec![2]), &quot, 2).is_err());
    assert!(from_core_quotient(&Partition::empty(), &quot[..1], 2).is_err());
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..9, 0..9).prop_map(Partition::new)
}

proptest! {
    #[test]
    fn core_is_idempotent(mu in arb_partition(), e in 1u32..7) {
        let c = e_core(&mu, e);
        prop_assert_eq!(e_core(&c, e), c.clone());
        prop_assert_eq!(mu.size() % e, c.size() % e);
        prop_assert!(is_e_core(&c, e));
    }

    #[test]
    fn transpose_is_an_involution(mu in arb_partition()) {
        prop_assert_eq!(transpose(&transpose(&mu)), mu.clone());
        prop_assert_eq!(transpose(&mu).size(), mu.size());
        prop_assert_eq!(transpose(&mu).parts().to_vec(), conjugate(mu.parts()));
    }

    #[test]
    fn tower_round_trip(mu in arb_partition(), ell in prop::sample::select(vec![2u32, 3, 5])) {
        let t = core_tower(&mu, ell);
        prop_assert_eq!(t.weighted_size(), mu.size() as u64);
        prop_assert_eq!(tower_to_partition(&t).unwrap(), mu.clone());
        for (d, level) in t.levels.iter().enumerate() {
            prop_assert_eq!(level.len(), (ell as usize).pow(d as u32));
            prop_assert!(level.iter().all(|c| is_e_core(c, ell)));
        }
    }

    #[test]
    fn quotient_round_trip(mu in arb_partition(), e in 1u32..7) {
        let q = e_quotient(&mu, e);
        prop_assert_eq!(q.len(), e as usize);
        let core = e_core(&mu, e);
        prop_assert_eq!(core.size() + e * q.iter().map(|p| p.size()).sum::<u32>(), mu.size());
        prop_assert_eq!(from_core_quotient(&core, &q, e).unwrap(), mu);
    }

    #[test]
    fn delta_divides_parts(mu in arb_partition()) {
        let d = delta(&mu);
        prop_assert!(mu.parts().iter().all(|&x| (x as u64).is_multiple_of(d.max(1))));
        prop_assert_eq!(d == 0, mu.is_empty());
    }
}
