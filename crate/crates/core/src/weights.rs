//! Slot index sets `I_d(h)` and the spaces `A(h, w)` of core functions.

use std::collections::BTreeMap;

use crate::partitions::{cores_of_size, Partition};

/// Slot `(d, k, j)` with `1 <= k <= h` and `1 <= j <= ell^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotIndex {
    pub d: u32,
    pub k: u32,
    pub j: u64,
}

/// Finite-support map from slots to nonempty `ell`-cores.
///
/// Empty values are never stored, so equality is equality of maps.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoreFunction {
    entries: BTreeMap<SlotIndex, Partition>,
}

impl CoreFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets a slot; an empty value clears it.
    pub fn insert(&mut self, slot: SlotIndex, core: Partition) {
        if core.is_empty() {
            self.entries.remove(&slot);
        } else {
            self.entries.insert(slot, core);
        }
    }

    pub fn get(&self, slot: &SlotIndex) -> Option<&Partition> {
        self.entries.get(slot)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SlotIndex, &Partition)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// `sum ell^d |K(d, k, j)|`.
    pub fn weighted_size(&self, ell: u64) -> u64 {
        self.entries
            .iter()
            .map(|(s, c)| ell.pow(s.d) * c.size() as u64)
            .sum()
    }

    /// Membership in `A(h, w)`.
    pub fn is_member(&self, h: u32, w: u64, ell: u64) -> bool {
        self.entries.iter().all(|(s, c)| {
            (1..=h).contains(&s.k)
                && (1..=ell.pow(s.d)).contains(&s.j)
                && crate::partitions::is_e_core(c, ell as u32)
        }) && self.weighted_size(ell) == w
    }
}

/// Slots of level `d` in `(k, j)` order.
pub fn slots_at_level(h: u32, d: u32, ell: u64) -> Vec<SlotIndex> {
    let width = ell.pow(d);
    (1..=h)
        .flat_map(|k| (1..=width).map(move |j| SlotIndex { d, k, j }))
        .collect()
}

/// Highest level that can carry a nonempty value when the total is `w`.
pub fn max_level(w: u64, ell: u64) -> u32 {
    let mut d = 0;
    while ell.pow(d + 1) <= w.max(1) {
        d += 1;
    }
    d
}

/// Slots that may be occupied in `A(h, w)`, in `(d, k, j)` order.
fn admissible_slots(h: u32, w: u64, ell: u64) -> Vec<SlotIndex> {
    (0..=max_level(w, ell))
        .flat_map(|d| slots_at_level(h, d, ell))
        .collect()
}

/// Every member of `A(h, w)`, in depth-first order over slots.
pub fn enumerate_core_functions(h: u32, w: u64, ell: u64) -> Vec<CoreFunction> {
    let slots = admissible_slots(h, w, ell);
    let cores: Vec<Vec<Partition>> = (0..=w)
        .map(|s| cores_of_size(s as u32, ell as u32))
        .collect();
    let mut out = Vec::new();
    let mut current = CoreFunction::new();
    fill(&slots, 0, w, ell, &cores, &mut current, &mut out);
    out
}

fn fill(
    slots: &[SlotIndex],
    at: usize,
    rest: u64,
    ell: u64,
    cores: &[Vec<Partition>],
    current: &mut CoreFunction,
    out: &mut Vec<CoreFunction>,
) {
    if rest == 0 {
        out.push(current.clone());
        return;
    }
    let Some(&slot) = slots.get(at) else {
        return;
    };
    let scale = ell.pow(slot.d);
    if scale > rest {
        // Slots are sorted by level, so nothing later fits either.
        return;
    }
    fill(slots, at + 1, rest, ell, cores, current, out);
    for size in 1..=rest / scale {
        for core in &cores[size as usize] {
            current.insert(slot, core.clone());
            fill(slots, at + 1, rest - size * scale, ell, cores, current, out);
        }
    }
    current.insert(slot, Partition::empty());
}

/// `|A(h, w)|`, computed by a generating-function product over slots.
pub fn count_core_functions(h: u32, w: u64, ell: u64) -> u64 {
    let w_us = w as usize;
    let core_counts: Vec<u64> = (0..=w)
        .map(|s| cores_of_size(s as u32, ell as u32).len() as u64)
        .collect();
    let mut series = vec![0u64; w_us + 1];
    series[0] = 1;
    for d in 0..=max_level(w, ell) {
        let scale = ell.pow(d) as usize;
        let factor: Vec<u64> = (0..=w_us)
            .map(|t| {
                if t % scale == 0 {
                    core_counts[t / scale]
                } else {
                    0
                }
            })
            .collect();
        for _ in 0..(h as u64 * ell.pow(d)) {
            let mut next = vec![0u64; w_us + 1];
            for (a, &x) in series.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (b, &y) in factor.iter().enumerate().take(w_us + 1 - a) {
                    next[a + b] += x * y;
                }
            }
            series = next;
        }
    }
    series[w_us]
}
