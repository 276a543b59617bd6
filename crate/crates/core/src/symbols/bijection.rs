//! The block-preserving, equivariant bijection from admissible symbols to
//! weight symbols: `e_i`-quotient followed by `ell`-core towers.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partitions::{
    core_tower, e_core, e_quotient, from_core_quotient, tower_to_partition, CoreTower, Partition,
};
use crate::weights::{CoreFunction, SlotIndex};

use super::{AdmissibleSymbol, BrauerPair, WeightEntry, WeightSymbol};

pub fn bijection_s(s: &AdmissibleSymbol, inst: &Instance) -> WeightSymbol {
    let ell = inst.params().ell as u32;
    let entries = s
        .pairs()
        .iter()
        .map(|p| {
            let e_i = inst.e_of_deg(p.orbit.deg());
            let mut k = CoreFunction::new();
            for (ki, comp) in e_quotient(&p.mu, e_i).iter().enumerate() {
                let tower = core_tower(comp, ell);
                for (d, level) in tower.levels.iter().enumerate() {
                    for (j, core) in level.iter().enumerate() {
                        let slot = SlotIndex {
                            d: d as u32,
                            k: ki as u32 + 1,
                            j: j as u64 + 1,
                        };
                        k.insert(slot, core.clone());
                    }
                }
            }
            WeightEntry {
                orbit: p.orbit,
                m: p.mu.size(),
                lambda: e_core(&p.mu, e_i),
                k,
            }
        })
        .collect();
    WeightSymbol::from_sorted(entries)
}

pub fn s_inverse(w: &WeightSymbol, inst: &Instance) -> Result<AdmissibleSymbol> {
    let ell = inst.params().ell as u32;
    let mut pairs = Vec::with_capacity(w.entries().len());
    for en in w.entries() {
        let e_i = inst.e_of_deg(en.orbit.deg());
        let mut towers: Vec<CoreTower> = (0..e_i)
            .map(|_| CoreTower {
                ell,
                levels: Vec::new(),
            })
            .collect();
        for (slot, core) in en.k.entries() {
            if slot.k == 0 || slot.k > e_i {
                return Err(Error::Domain(format!(
                    "slot component {} out of range 1..={e_i}",
                    slot.k
                )));
            }
            let width = (ell as u64).pow(slot.d);
            if slot.j == 0 || slot.j > width {
                return Err(Error::Domain(format!(
                    "slot node {} out of range at depth {}",
                    slot.j, slot.d
                )));
            }
            let t = &mut towers[slot.k as usize - 1];
            while t.levels.len() <= slot.d as usize {
                let len = (ell as usize).pow(t.levels.len() as u32);
                t.levels.push(vec![Partition::empty(); len]);
            }
            t.levels[slot.d as usize][slot.j as usize - 1] = core.clone();
        }
        let quot = towers
            .iter()
            .map(tower_to_partition)
            .collect::<Result<Vec<_>>>()?;
        let mu = from_core_quotient(&en.lambda, &quot, e_i)?;
        if mu.size() != en.m {
            return Err(Error::Domain(format!(
                "rebuilt partition {mu} does not have size {}",
                en.m
            )));
        }
        pairs.push(BrauerPair {
            orbit: en.orbit,
            mu,
        });
    }
    Ok(AdmissibleSymbol::from_sorted(pairs))
}
