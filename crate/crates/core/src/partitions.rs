//! Partitions, `e`-cores and `e`-quotients via beta-sets, and `ell`-core towers.
//!
//! Beta-set convention: a partition with `len` parts is read with `r` beads,
//! `r` the least multiple of `e` that is `>= len`, at positions
//! `mu_i + r - i` (`i = 1..r`). Quotient component `k` (0-based) is the
//! partition formed by the beads on runner `k`, i.e. positions `= k mod e`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Accepts only already-normalized parts.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Beta-set with `r >= len` beads, descending.
    pub fn beta_set(&self, r: usize) -> Vec<u32> {
        assert!(r >= self.len());
        (0..r)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + (r - 1 - i) as u32)
            .collect()
    }

    /// Inverse of [`Partition::beta_set`]; any order of distinct positions.
    pub fn from_beta_set(beta: &[u32]) -> Self {
        let mut b = beta.to_vec();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let r = b.len();
        Partition::new((0..r).map(|i| b[i] - (r - 1 - i) as u32).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Domain(format!("partition {s:?} must be bracketed")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Domain(format!("bad part in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_parts(parts)
    }
}

fn bead_count(len: usize, e: u32) -> usize {
    let e = e as usize;
    len.div_ceil(e) * e
}

/// Beads per runner and the quotient-forming positions on each runner.
fn abacus(mu: &Partition, e: u32) -> Vec<Vec<u32>> {
    let r = bead_count(mu.len(), e);
    let mut runners = vec![Vec::new(); e as usize];
    for b in mu.beta_set(r) {
        runners[(b % e) as usize].push(b / e);
    }
    runners
}

fn core_from_counts(counts: &[usize], e: u32) -> Partition {
    let mut beta = Vec::new();
    for (k, &c) in counts.iter().enumerate() {
        for t in 0..c {
            beta.push(k as u32 + e * t as u32);
        }
    }
    Partition::from_beta_set(&beta)
}

pub fn e_core(mu: &Partition, e: u32) -> Partition {
    assert!(e >= 1);
    if e == 1 {
        return Partition::empty();
    }
    let counts: Vec<usize> = abacus(mu, e).iter().map(Vec::len).collect();
    core_from_counts(&counts, e)
}

pub fn is_e_core(lambda: &Partition, e: u32) -> bool {
    e_core(lambda, e) == *lambda
}

/// Number of rim `e`-hooks removed to reach the core.
pub fn e_weight(mu: &Partition, e: u32) -> u32 {
    (mu.size() - e_core(mu, e).size()) / e
}

/// Quotient components, one per runner.
pub fn e_quotient(mu: &Partition, e: u32) -> Vec<Partition> {
    assert!(e >= 1);
    abacus(mu, e)
        .iter()
        .map(|pos| Partition::from_beta_set(pos))
        .collect()
}

/// Rebuilds the unique partition with the given `e`-core and `e`-quotient.
pub fn from_core_quotient(lambda: &Partition, quot: &[Partition], e: u32) -> Result<Partition> {
    if quot.len() != e as usize {
        return Err(Error::Domain(format!(
            "quotient has {} components, expected {e}",
            quot.len()
        )));
    }
    if !is_e_core(lambda, e) {
        return Err(Error::Domain(format!("{lambda} is not a {e}-core")));
    }
    let mut counts: Vec<usize> = if e == 1 {
        vec![0]
    } else {
        abacus(lambda, e).iter().map(Vec::len).collect()
    };
    // Adding e beads shifts every runner by one bead and preserves the runner labels.
    while counts.iter().zip(quot).any(|(&c, qk)| c < qk.len()) {
        counts.iter_mut().for_each(|c| *c += 1);
    }
    let mut beta = Vec::new();
    for (k, (qk, &c)) in quot.iter().zip(&counts).enumerate() {
        for pos in qk.beta_set(c) {
            beta.push(k as u32 + e * pos);
        }
    }
    Ok(Partition::from_beta_set(&beta))
}

/// `gcd` of the parts; 0 for the empty partition.
pub fn delta(mu: &Partition) -> u64 {
    mu.parts()
        .iter()
        .fold(0, |g, &x| crate::arith::gcd(g, x as u64))
}

pub fn transpose(mu: &Partition) -> Partition {
    let first = mu.parts().first().copied().unwrap_or(0);
    Partition(
        (1..=first)
            .map(|c| mu.parts().iter().filter(|&&x| x >= c).count() as u32)
            .collect(),
    )
}

/// All partitions of `m` in descending lexicographic order.
pub fn enumerate_partitions(m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_partitions(m, m, &mut cur, &mut out);
    out
}

fn fill_partitions(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        cur.push(part);
        fill_partitions(rest - part, part, cur, out);
        cur.pop();
    }
}

/// Partitions of `m` whose `e`-core is `lambda`, descending lexicographic.
pub fn enumerate_with_core(m: u32, e: u32, lambda: &Partition) -> Vec<Partition> {
    if m < lambda.size() || !(m - lambda.size()).is_multiple_of(e) {
        return Vec::new();
    }
    enumerate_partitions(m)
        .into_iter()
        .filter(|mu| e_core(mu, e) == *lambda)
        .collect()
}

pub fn count_with_core(m: u32, e: u32, lambda: &Partition) -> u64 {
    if m < lambda.size() || !(m - lambda.size()).is_multiple_of(e) {
        return 0;
    }
    let mut count = 0;
    let mut cur = Vec::new();
    count_rec(m, m, &mut cur, &mut |mu| {
        if e_core(mu, e) == *lambda {
            count += 1;
        }
    });
    count
}

fn count_rec(rest: u32, max: u32, cur: &mut Vec<u32>, visit: &mut impl FnMut(&Partition)) {
    if rest == 0 {
        let p = Partition(std::mem::take(cur));
        visit(&p);
        *cur = p.0;
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        cur.push(part);
        count_rec(rest - part, part, cur, visit);
        cur.pop();
    }
}

/// All `e`-cores of size exactly `m`.
pub fn cores_of_size(m: u32, e: u32) -> Vec<Partition> {
    enumerate_partitions(m)
        .into_iter()
        .filter(|p| is_e_core(p, e))
        .collect()
}

/// The `ell`-core tower of a partition.
///
/// `levels[d]` holds the `ell^d` cores at depth `d`; node `j` (0-based) at
/// depth `d` is reached by the base-`ell` digits of `j`, most significant
/// first, each digit choosing a quotient component. Trailing all-empty
/// levels are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreTower {
    pub ell: u32,
    pub levels: Vec<Vec<Partition>>,
}

impl CoreTower {
    pub fn level(&self, d: usize) -> Option<&[Partition]> {
        self.levels.get(d).map(Vec::as_slice)
    }

    /// `sum_d ell^d * (total size at depth d)`.
    pub fn weighted_size(&self) -> u64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(d, lv)| {
                (self.ell as u64).pow(d as u32) * lv.iter().map(|p| p.size() as u64).sum::<u64>()
            })
            .sum()
    }
}

pub fn core_tower(nu: &Partition, ell: u32) -> CoreTower {
    assert!(ell >= 2);
    let mut levels = Vec::new();
    let mut remainders = vec![nu.clone()];
    while remainders.iter().any(|p| !p.is_empty()) {
        levels.push(remainders.iter().map(|p| e_core(p, ell)).collect());
        remainders = remainders.iter().flat_map(|p| e_quotient(p, ell)).collect();
    }
    CoreTower { ell, levels }
}

pub fn tower_to_partition(tower: &CoreTower) -> Result<Partition> {
    node_partition(tower, 0, 0)
}

fn node_partition(tower: &CoreTower, d: usize, j: usize) -> Result<Partition> {
    let Some(level) = tower.levels.get(d) else {
        return Ok(Partition::empty());
    };
    let core = level
        .get(j)
        .ok_or_else(|| Error::Domain(format!("tower level {d} has {} nodes", level.len())))?;
    let ell = tower.ell as usize;
    let quot = (0..ell)
        .map(|k| node_partition(tower, d + 1, j * ell + k))
        .collect::<Result<Vec<_>>>()?;
    from_core_quotient(core, &quot, tower.ell)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn core_examples() {
        assert_eq!(e_core(&p(&[1]), 2), p(&[1]));
        assert_eq!(e_core(&p(&[2]), 2), Partition::empty());
        assert_eq!(e_core(&p(&[3, 1, 1]), 2), p(&[1]));
        assert_eq!(e_core(&p(&[4, 2, 1]), 1), Partition::empty());
        assert_eq!(e_weight(&p(&[1]), 2), 0);
        assert_eq!(e_weight(&p(&[2]), 2), 1);
        assert_eq!(e_weight(&p(&[3, 1, 1]), 2), 2);
    }

    #[test]
    fn is_core_examples() {
        assert!(is_e_core(&Partition::empty(), 3));
        assert!(is_e_core(&p(&[1]), 2));
        assert!(!is_e_core(&p(&[2]), 2));
        assert!(is_e_core(&p(&[2, 1]), 2));
    }

    #[test]
    fn quotient_examples() {
        let q = e_quotient(&Partition::empty(), 3);
        assert_eq!(q, vec![Partition::empty(); 3]);
        let q = e_quotient(&p(&[2]), 2);
        assert_eq!(q, vec![Partition::empty(), p(&[1])]);
        assert_eq!(e_quotient(&p(&[3, 1]), 1), vec![p(&[3, 1])]);
        let err = from_core_quotient(&p(&[2]), &[Partition::empty(), p(&[1])], 2);
        assert!(matches!(err, Err(Error::Domain(_))));
        assert!(from_core_quotient(&Partition::empty(), &[p(&[1])], 2).is_err());
    }

    #[test]
    fn delta_and_transpose_examples() {
        assert_eq!(delta(&p(&[4, 2])), 2);
        assert_eq!(delta(&Partition::empty()), 0);
        assert_eq!(transpose(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(transpose(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_with_core(4, 2, &Partition::empty()), 5);
        assert_eq!(count_with_core(1, 2, &p(&[1])), 1);
        assert_eq!(count_with_core(2, 2, &Partition::empty()), 2);
        assert_eq!(count_with_core(3, 2, &Partition::empty()), 0);
        assert_eq!(
            enumerate_with_core(2, 2, &Partition::empty()),
            vec![p(&[2]), p(&[1, 1])]
        );
    }

    #[test]
    fn partitions_are_descending_and_complete() {
        let all = enumerate_partitions(5);
        assert_eq!(all.len(), 7);
        assert_eq!(all.first(), Some(&p(&[5])));
        assert_eq!(all.last(), Some(&p(&[1, 1, 1, 1, 1])));
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let counts: Vec<usize> = (0..=12).map(|m| enumerate_partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn serialization() {
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("[2, 2,1]".parse::<Partition>().unwrap(), p(&[2, 2, 1]));
        assert!("[1,2]".parse::<Partition>().is_err());
    }

    #[test]
    fn tower_examples() {
        assert!(core_tower(&Partition::empty(), 2).levels.is_empty());
        let t = core_tower(&p(&[1]), 2);
        assert_eq!(t.levels, vec![vec![p(&[1])]]);
        // (2) with ell = 2: core empty, quotient ([], [1]), so depth 1 holds [] and [1].
        let t = core_tower(&p(&[2]), 2);
        assert_eq!(
            t.levels,
            vec![vec![Partition::empty()], vec![Partition::empty(), p(&[1])]]
        );
        assert_eq!(t.weighted_size(), 2);
    }

    #[test]
    fn round_trips_exhaustive() {
        for m in 0..=10 {
            for mu in enumerate_partitions(m) {
                for e in 1..=5 {
                    let core = e_core(&mu, e);
                    let quot = e_quotient(&mu, e);
                    let total: u32 = quot.iter().map(Partition::size).sum();
                    assert_eq!(mu.size(), core.size() + e * total);
                    assert_eq!(from_core_quotient(&core, &quot, e).unwrap(), mu);
                }
            }
        }
        for m in 0..=9 {
            for nu in enumerate_partitions(m) {
                for ell in [2, 3] {
                    let t = core_tower(&nu, ell);
                    assert_eq!(t.weighted_size(), m as u64);
                    for (d, lv) in t.levels.iter().enumerate() {
                        assert_eq!(lv.len(), (ell as usize).pow(d as u32));
                        assert!(lv.iter().all(|c| is_e_core(c, ell)));
                    }
                    assert_eq!(tower_to_partition(&t).unwrap(), nu);
                }
            }
        }
    }
}
