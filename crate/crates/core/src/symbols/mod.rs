//! Labels of Brauer characters, blocks and weights of `GL_n(eps q)`, the
//! action of the `ell'`-part of the center on them, and the stabilizer
//! counts that govern restriction to `SL_n(eps q)`.
//!
//! * [`AdmissibleSymbol`]: pairs `([sigma], mu)` with `sum deg * |mu| = n`.
//! * [`BlockSymbol`]: triples `([sigma], m, lambda)`, `lambda` an `e_i`-core.
//! * [`WeightSymbol`]: block triples decorated with a core function `K`.
//!
//! Entries are kept sorted by orbit representative; since orbits within a
//! symbol are distinct, that sequence is the canonical form of the multiset.

mod bijection;
mod enumerate;
mod sl;

pub use bijection::{bijection_s, s_inverse};
pub use enumerate::{
    count_admissible_symbols, enumerate_admissible_symbols, enumerate_block_symbols, supports,
    symbols_in_block, weight_symbols_in_block,
};
pub use sl::{
    sl_block_report, sl_covered_blocks, sl_report_from, SlBlockReport, ELL_DIVIDES_CENTER, ELL_TWO,
};

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::arith::{ell_part, gcd};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partitions::{delta, e_core, is_e_core, transpose, Partition};
use crate::semisimple::{act_on_orbit, center_act, suborbit, FrobeniusOrbit, RootLabel};
use crate::weights::CoreFunction;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrauerPair {
    pub orbit: FrobeniusOrbit,
    pub mu: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockEntry {
    pub orbit: FrobeniusOrbit,
    pub m: u32,
    pub lambda: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightEntry {
    pub orbit: FrobeniusOrbit,
    pub m: u32,
    pub lambda: Partition,
    pub k: CoreFunction,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleSymbol {
    pairs: Vec<BrauerPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockSymbol {
    entries: Vec<BlockEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightSymbol {
    entries: Vec<WeightEntry>,
}

/// Something with an orbit per entry, acted on by the center.
pub trait OrbitLabelled: Clone + Ord {
    /// Applies `f` to every orbit and restores canonical order.
    fn map_orbits(&self, f: impl FnMut(FrobeniusOrbit) -> FrobeniusOrbit) -> Self;
    fn orbits(&self) -> Vec<FrobeniusOrbit>;
}

macro_rules! orbit_labelled {
    ($ty:ident, $field:ident) => {
        impl OrbitLabelled for $ty {
            fn map_orbits(&self, mut f: impl FnMut(FrobeniusOrbit) -> FrobeniusOrbit) -> Self {
                let mut items = self.$field.clone();
                for it in &mut items {
                    it.orbit = f(it.orbit);
                }
                items.sort_unstable_by(|a, b| a.orbit.cmp(&b.orbit));
                $ty { $field: items }
            }

            fn orbits(&self) -> Vec<FrobeniusOrbit> {
                self.$field.iter().map(|x| x.orbit).collect()
            }
        }
    };
}

orbit_labelled!(AdmissibleSymbol, pairs);
orbit_labelled!(BlockSymbol, entries);
orbit_labelled!(WeightSymbol, entries);

/// `z . x`: every orbit `[sigma]` replaced by `[z sigma]`.
pub fn z_act<T: OrbitLabelled>(z: RootLabel, x: &T, inst: &Instance) -> T {
    if z.is_identity() {
        return x.clone();
    }
    x.map_orbits(|o| act_on_orbit(z, o, inst.params()))
}

/// Elements of `group` fixing `x`.
pub fn stabilizer<T: OrbitLabelled>(x: &T, group: &[RootLabel], inst: &Instance) -> Vec<RootLabel> {
    group
        .iter()
        .copied()
        .filter(|&z| z_act(z, x, inst) == *x)
        .collect()
}

/// Center orbit of `x` (sorted; first element is the canonical representative)
/// and the order of its stabilizer.
pub fn orbit_and_stabilizer<T: OrbitLabelled>(x: &T, inst: &Instance) -> (Vec<T>, u64) {
    let mut orbit = Vec::new();
    let mut stab = 0;
    for &z in inst.center().elements() {
        let y = z_act(z, x, inst);
        if y == *x {
            stab += 1;
        }
        orbit.push(y);
    }
    orbit.sort();
    orbit.dedup();
    (orbit, stab)
}

/// Minimum of the center orbit.
pub fn canonical_rep<T: OrbitLabelled>(x: &T, inst: &Instance) -> T {
    inst.center()
        .elements()
        .iter()
        .map(|&z| z_act(z, x, inst))
        .min()
        .expect("center contains the identity")
}

fn check_orbits(orbits: &[FrobeniusOrbit], inst: &Instance) -> Result<()> {
    let ell = inst.params().ell;
    if orbits.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("repeated orbit in symbol".into()));
    }
    for o in orbits {
        if o.rep().den() % ell == 0 || o.rep().den() % inst.params().p == 0 {
            return Err(Error::Domain(format!("{o} is not an ell'-element class")));
        }
        if o.deg() > inst.params().n || *o != crate::semisimple::orbit_of(o.rep(), inst.params()) {
            return Err(Error::Domain(format!(
                "{o} with degree {} is not a canonical orbit",
                o.deg()
            )));
        }
    }
    Ok(())
}

fn check_total(total: u64, inst: &Instance) -> Result<()> {
    if total != inst.params().n as u64 {
        return Err(Error::Domain(format!(
            "symbol has rank {total}, expected {}",
            inst.params().n
        )));
    }
    Ok(())
}

impl AdmissibleSymbol {
    pub fn new(mut pairs: Vec<BrauerPair>, inst: &Instance) -> Result<Self> {
        pairs.sort_unstable_by_key(|a| a.orbit);
        let orbits: Vec<_> = pairs.iter().map(|p| p.orbit).collect();
        check_orbits(&orbits, inst)?;
        if pairs.iter().any(|p| p.mu.is_empty()) {
            return Err(Error::Domain("empty partition in admissible symbol".into()));
        }
        check_total(
            pairs
                .iter()
                .map(|p| p.orbit.deg() as u64 * p.mu.size() as u64)
                .sum(),
            inst,
        )?;
        Ok(AdmissibleSymbol { pairs })
    }

    pub(crate) fn from_sorted(pairs: Vec<BrauerPair>) -> Self {
        AdmissibleSymbol { pairs }
    }

    pub fn pairs(&self) -> &[BrauerPair] {
        &self.pairs
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("symbols serialize")
    }
}

impl BlockSymbol {
    pub fn new(mut entries: Vec<BlockEntry>, inst: &Instance) -> Result<Self> {
        entries.sort_unstable_by_key(|a| a.orbit);
        let orbits: Vec<_> = entries.iter().map(|p| p.orbit).collect();
        check_orbits(&orbits, inst)?;
        for en in &entries {
            block_weight(en.orbit, en.m, &en.lambda, inst)?;
        }
        check_total(
            entries
                .iter()
                .map(|p| p.orbit.deg() as u64 * p.m as u64)
                .sum(),
            inst,
        )?;
        Ok(BlockSymbol { entries })
    }

    pub(crate) fn from_sorted(entries: Vec<BlockEntry>) -> Self {
        BlockSymbol { entries }
    }

    pub fn entries(&self) -> &[BlockEntry] {
        &self.entries
    }

    /// Unipotent blocks: the only elementary divisor is the identity orbit.
    pub fn is_unipotent(&self) -> bool {
        self.entries.iter().all(|e| e.orbit.is_identity())
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("symbols serialize")
    }
}

impl std::fmt::Display for BlockSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {}, {})", e.orbit, e.m, e.lambda)?;
        }
        write!(f, "]")
    }
}

impl WeightSymbol {
    pub fn new(mut entries: Vec<WeightEntry>, inst: &Instance) -> Result<Self> {
        entries.sort_unstable_by_key(|a| a.orbit);
        let orbits: Vec<_> = entries.iter().map(|p| p.orbit).collect();
        check_orbits(&orbits, inst)?;
        let ell = inst.params().ell;
        for en in &entries {
            let w = block_weight(en.orbit, en.m, &en.lambda, inst)?;
            let h = inst.e_of_deg(en.orbit.deg());
            if !en.k.is_member(h, w as u64, ell) {
                return Err(Error::Domain(format!("core function not in A({h}, {w})")));
            }
        }
        check_total(
            entries
                .iter()
                .map(|p| p.orbit.deg() as u64 * p.m as u64)
                .sum(),
            inst,
        )?;
        Ok(WeightSymbol { entries })
    }

    pub(crate) fn from_sorted(entries: Vec<WeightEntry>) -> Self {
        WeightSymbol { entries }
    }

    pub fn entries(&self) -> &[WeightEntry] {
        &self.entries
    }

    /// The block symbol obtained by forgetting the core functions.
    pub fn block_part(&self) -> BlockSymbol {
        BlockSymbol::from_sorted(
            self.entries
                .iter()
                .map(|e| BlockEntry {
                    orbit: e.orbit,
                    m: e.m,
                    lambda: e.lambda.clone(),
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("symbols serialize")
    }
}

// Field order is the sorted key order, so streamed and tree output agree.
#[derive(Serialize)]
struct PairOut<'a> {
    deg: u32,
    mu: &'a [u32],
    orbit: String,
}

#[derive(Serialize)]
struct BlockOut<'a> {
    deg: u32,
    lambda: &'a [u32],
    m: u32,
    orbit: String,
}

#[derive(Serialize)]
struct SlotOut<'a> {
    core: &'a [u32],
    d: u32,
    j: u64,
    k: u32,
}

#[derive(Serialize)]
struct WeightOut<'a> {
    #[serde(rename = "K")]
    core_function: Vec<SlotOut<'a>>,
    deg: u32,
    lambda: &'a [u32],
    m: u32,
    orbit: String,
}

impl Serialize for AdmissibleSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.pairs.iter().map(|p| PairOut {
            deg: p.orbit.deg(),
            mu: p.mu.parts(),
            orbit: p.orbit.rep().to_string(),
        }))
    }
}

impl Serialize for BlockSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|p| BlockOut {
            deg: p.orbit.deg(),
            lambda: p.lambda.parts(),
            m: p.m,
            orbit: p.orbit.rep().to_string(),
        }))
    }
}

impl Serialize for WeightSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|p| {
            WeightOut {
                core_function: p
                    .k
                    .entries()
                    .map(|(slot, c)| SlotOut {
                        core: c.parts(),
                        d: slot.d,
                        j: slot.j,
                        k: slot.k,
                    })
                    .collect(),
                deg: p.orbit.deg(),
                lambda: p.lambda.parts(),
                m: p.m,
                orbit: p.orbit.rep().to_string(),
            }
        }))
    }
}

/// `w = (m - |lambda|) / e_i` after checking that `(m, lambda)` fits a block.
pub fn block_weight(
    orbit: FrobeniusOrbit,
    m: u32,
    lambda: &Partition,
    inst: &Instance,
) -> Result<u32> {
    let e_i = inst.e_of_deg(orbit.deg());
    if m == 0
        || !is_e_core(lambda, e_i)
        || lambda.size() > m
        || !(m - lambda.size()).is_multiple_of(e_i)
    {
        return Err(Error::Domain(format!(
            "({orbit}, {m}, {lambda}) is not a block triple for e = {e_i}"
        )));
    }
    Ok((m - lambda.size()) / e_i)
}

pub fn kappa_ellprime<T: OrbitLabelled>(x: &T, inst: &Instance) -> u64 {
    stabilizer(x, inst.center().elements(), inst).len() as u64
}

/// `ell`-part of `gcd(n, q - eps, Delta(mu_1'), ..., Delta(mu_a'))`.
pub fn kappa_ell(s: &AdmissibleSymbol, inst: &Instance) -> u64 {
    let p = inst.params();
    let g = s
        .pairs
        .iter()
        .fold(gcd(p.n as u64, p.center_order()), |g, pair| {
            gcd(g, delta(&transpose(&pair.mu)))
        });
    ell_part(g, p.ell)
}

pub fn kappa(s: &AdmissibleSymbol, inst: &Instance) -> u64 {
    kappa_ell(s, inst) * kappa_ellprime(s, inst)
}

pub fn kappa_weight(w: &WeightSymbol, inst: &Instance) -> u64 {
    kappa_ellprime(w, inst)
}

pub fn block_of(s: &AdmissibleSymbol, inst: &Instance) -> BlockSymbol {
    BlockSymbol::from_sorted(
        s.pairs
            .iter()
            .map(|p| BlockEntry {
                orbit: p.orbit,
                m: p.mu.size(),
                lambda: e_core(&p.mu, inst.e_of_deg(p.orbit.deg())),
            })
            .collect(),
    )
}

/// `[sigma]_b`, the part of the orbit that the block's defect torus sees.
pub fn block_suborbit_set(
    orbit: FrobeniusOrbit,
    m: u32,
    lambda: &Partition,
    inst: &Instance,
) -> Result<Vec<RootLabel>> {
    let w = block_weight(orbit, m, lambda, inst)?;
    let p = inst.params();
    let sigma = orbit.rep();
    if p.ell != 2 {
        return Ok(if w == 0 {
            Vec::new()
        } else {
            suborbit(sigma, p.e as u32, p)
        });
    }
    let q_minus = p.center_order();
    if q_minus.is_multiple_of(4) || orbit.deg().is_multiple_of(2) {
        Ok(orbit.elements(p))
    } else if m == 1 {
        Ok(Vec::new())
    } else {
        Ok(suborbit(sigma, 2, p))
    }
}

/// `C_1`, `C_2` and `kappa(b) = |C_1 cap C_2|` for a block symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockKappa {
    pub c1: Vec<RootLabel>,
    pub c2: Vec<RootLabel>,
    pub kappa: u64,
}

pub fn kappa_block(b: &BlockSymbol, inst: &Instance) -> Result<BlockKappa> {
    let center = inst.center().elements();
    let c1 = stabilizer(b, center, inst);
    let mut sets = Vec::with_capacity(b.entries.len());
    for en in &b.entries {
        let mut s = block_suborbit_set(en.orbit, en.m, &en.lambda, inst)?;
        s.sort_unstable();
        sets.push(s);
    }
    let c2: Vec<RootLabel> = center
        .iter()
        .copied()
        .filter(|&z| {
            sets.iter().all(|s| {
                let mut moved: Vec<RootLabel> = s.iter().map(|&x| center_act(z, x)).collect();
                moved.sort_unstable();
                moved == *s
            })
        })
        .collect();
    let kappa = c1.iter().filter(|z| c2.contains(z)).count() as u64;
    Ok(BlockKappa { c1, c2, kappa })
}
