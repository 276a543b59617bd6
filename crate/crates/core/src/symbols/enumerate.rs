//! Enumeration of block symbols, admissible symbols and weight symbols.

use crate::error::Result;
use crate::instance::Instance;
use crate::par_map;
use crate::partitions::Partition;
use crate::semisimple::FrobeniusOrbit;

use super::{
    block_weight, AdmissibleSymbol, BlockEntry, BlockSymbol, BrauerPair, WeightEntry, WeightSymbol,
};

/// Every way to pick distinct orbits with multiplicities `m_i >= 1` so that
/// `sum deg_i * m_i = n`. Entries of each support are sorted by orbit; the
/// list itself is sorted.
pub fn supports(inst: &Instance) -> Vec<Vec<(FrobeniusOrbit, u32)>> {
    let n = inst.params().n;
    let mut by_deg: Vec<FrobeniusOrbit> = inst.orbits().to_vec();
    by_deg.sort_by_key(|o| (o.deg(), *o));
    let by_deg = &by_deg;
    let firsts: Vec<usize> = (0..by_deg.len())
        .filter(|&i| by_deg[i].deg() <= n)
        .collect();
    let chunks = par_map(inst.execution(), &firsts, |&i| {
        let mut out = Vec::new();
        let o = by_deg[i];
        for m in 1..=n / o.deg() {
            let mut cur = vec![(o, m)];
            extend_support(by_deg, i + 1, n - o.deg() * m, &mut cur, &mut out);
        }
        out
    });
    let mut all: Vec<_> = chunks.into_iter().flatten().collect();
    all.sort();
    all
}

fn extend_support(
    by_deg: &[FrobeniusOrbit],
    start: usize,
    rest: u32,
    cur: &mut Vec<(FrobeniusOrbit, u32)>,
    out: &mut Vec<Vec<(FrobeniusOrbit, u32)>>,
) {
    if rest == 0 {
        let mut s = cur.clone();
        s.sort();
        out.push(s);
        return;
    }
    for i in start..by_deg.len() {
        let o = by_deg[i];
        if o.deg() > rest {
            break;
        }
        for m in 1..=rest / o.deg() {
            cur.push((o, m));
            extend_support(by_deg, i + 1, rest - o.deg() * m, cur, out);
            cur.pop();
        }
    }
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::with_capacity(choices.len())];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn blocks_on_support(support: &[(FrobeniusOrbit, u32)], inst: &Instance) -> Vec<BlockSymbol> {
    let choices: Vec<Vec<BlockEntry>> = support
        .iter()
        .map(|&(orbit, m)| {
            let e_i = inst.e_of_deg(orbit.deg());
            inst.cores(e_i, m)
                .map(|lambda| BlockEntry {
                    orbit,
                    m,
                    lambda: lambda.clone(),
                })
                .collect()
        })
        .collect();
    product(&choices)
        .into_iter()
        .map(BlockSymbol::from_sorted)
        .collect()
}

/// All block symbols of the instance, sorted.
pub fn enumerate_block_symbols(inst: &Instance) -> Vec<BlockSymbol> {
    let sup = supports(inst);
    let mut out: Vec<BlockSymbol> = par_map(inst.execution(), &sup, |s| blocks_on_support(s, inst))
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    out
}

/// All admissible symbols of the instance, sorted.
pub fn enumerate_admissible_symbols(inst: &Instance) -> Vec<AdmissibleSymbol> {
    let sup = supports(inst);
    let mut out: Vec<AdmissibleSymbol> = par_map(inst.execution(), &sup, |s| {
        let choices: Vec<Vec<BrauerPair>> = s
            .iter()
            .map(|&(orbit, m)| {
                crate::partitions::enumerate_partitions(m)
                    .into_iter()
                    .map(|mu| BrauerPair { orbit, mu })
                    .collect()
            })
            .collect();
        product(&choices)
            .into_iter()
            .map(AdmissibleSymbol::from_sorted)
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    out.sort();
    out
}

/// Admissible symbols whose block is `b`, sorted.
pub fn symbols_in_block(b: &BlockSymbol, inst: &Instance) -> Vec<AdmissibleSymbol> {
    let choices: Vec<Vec<BrauerPair>> = b
        .entries()
        .iter()
        .map(|en| {
            let e_i = inst.e_of_deg(en.orbit.deg());
            inst.with_core(e_i, en.m, &en.lambda)
                .iter()
                .map(|mu: &Partition| BrauerPair {
                    orbit: en.orbit,
                    mu: mu.clone(),
                })
                .collect()
        })
        .collect();
    let mut out: Vec<AdmissibleSymbol> = product(&choices)
        .into_iter()
        .map(AdmissibleSymbol::from_sorted)
        .collect();
    out.sort();
    out
}

/// Weight symbols attached to `b`, sorted.
pub fn weight_symbols_in_block(b: &BlockSymbol, inst: &Instance) -> Result<Vec<WeightSymbol>> {
    let mut choices: Vec<Vec<WeightEntry>> = Vec::with_capacity(b.entries().len());
    for en in b.entries() {
        let w = block_weight(en.orbit, en.m, &en.lambda, inst)?;
        let h = inst.e_of_deg(en.orbit.deg());
        choices.push(
            inst.core_functions(h, w)?
                .iter()
                .map(|k| WeightEntry {
                    orbit: en.orbit,
                    m: en.m,
                    lambda: en.lambda.clone(),
                    k: k.clone(),
                })
                .collect(),
        );
    }
    let mut out: Vec<WeightSymbol> = product(&choices)
        .into_iter()
        .map(WeightSymbol::from_sorted)
        .collect();
    out.sort();
    Ok(out)
}

/// `|admissible symbols|` from the generating function
/// `prod over orbits (1 + sum_{m >= 1} p(m) x^(deg * m))`, without listing them.
pub fn count_admissible_symbols(inst: &Instance) -> u64 {
    let n = inst.params().n as usize;
    let p: Vec<u64> = (0..=n as u32)
        .map(|m| crate::partitions::enumerate_partitions(m).len() as u64)
        .collect();
    let mut coeff = vec![0u64; n + 1];
    coeff[0] = 1;
    for o in inst.orbits() {
        let d = o.deg() as usize;
        for total in (0..=n).rev() {
            let mut add = 0;
            for m in 1..=total / d {
                add += p[m] * coeff[total - d * m];
            }
            coeff[total] += add;
        }
    }
    coeff[n]
}
