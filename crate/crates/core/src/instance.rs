//! Per-instance context: validated parameters, the `ell'`-part of the center,
//! the supporting twist orbits and small lookup tables shared by the symbol
//! enumerations.

use std::collections::{BTreeMap, HashMap};

use crate::arith::{e_gamma, InstanceParams};
use crate::error::{Error, Result};
use crate::partitions::{e_core, enumerate_partitions, Partition};
use crate::semisimple::{center_elements, enumerate_ellprime_orbits, CenterGroup, FrobeniusOrbit};
use crate::weights::{enumerate_core_functions, CoreFunction};
use crate::Execution;

pub struct Instance {
    params: InstanceParams,
    center: CenterGroup,
    orbits: Vec<FrobeniusOrbit>,
    /// `e_gamma(d)` for `d = 1..=n`, index `d - 1`.
    e_by_deg: Vec<u32>,
    /// `(e, m)` -> partitions of `m` grouped by `e`-core.
    by_core: HashMap<(u32, u32), BTreeMap<Partition, Vec<Partition>>>,
    /// `(h, w)` -> `A(h, w)`.
    core_functions: HashMap<(u32, u32), Vec<CoreFunction>>,
    execution: Execution,
}

impl Instance {
    pub fn new(params: InstanceParams) -> Self {
        Self::with_execution(params, Execution::default())
    }

    pub fn with_execution(params: InstanceParams, execution: Execution) -> Self {
        let n = params.n;
        let e_by_deg: Vec<u32> = (1..=n).map(|d| e_gamma(d, &params) as u32).collect();
        let mut e_values = e_by_deg.clone();
        e_values.sort_unstable();
        e_values.dedup();
        let partitions: Vec<Vec<Partition>> = (0..=n).map(enumerate_partitions).collect();
        let mut by_core = HashMap::new();
        let mut core_functions = HashMap::new();
        for &e in &e_values {
            for m in 0..=n {
                let mut groups: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
                for mu in &partitions[m as usize] {
                    groups.entry(e_core(mu, e)).or_default().push(mu.clone());
                }
                by_core.insert((e, m), groups);
            }
            for w in 0..=n / e {
                core_functions.insert((e, w), enumerate_core_functions(e, w as u64, params.ell));
            }
        }
        Instance {
            center: center_elements(&params),
            orbits: enumerate_ellprime_orbits(&params),
            params,
            e_by_deg,
            by_core,
            core_functions,
            execution,
        }
    }

    pub fn params(&self) -> &InstanceParams {
        &self.params
    }

    pub fn center(&self) -> &CenterGroup {
        &self.center
    }

    /// All `ell'`-orbits of degree at most `n`, sorted by representative.
    pub fn orbits(&self) -> &[FrobeniusOrbit] {
        &self.orbits
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    /// `e_gamma` for an orbit of degree `deg <= n`.
    pub fn e_of_deg(&self, deg: u32) -> u32 {
        self.e_by_deg[deg as usize - 1]
    }

    /// Partitions of `m` with `e`-core `lambda`, descending lexicographic.
    pub fn with_core(&self, e: u32, m: u32, lambda: &Partition) -> &[Partition] {
        self.by_core
            .get(&(e, m))
            .and_then(|g| g.get(lambda))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// The `e`-cores that occur for partitions of `m`.
    pub fn cores(&self, e: u32, m: u32) -> impl Iterator<Item = &Partition> {
        self.by_core.get(&(e, m)).into_iter().flat_map(|g| g.keys())
    }

    pub fn core_functions(&self, h: u32, w: u32) -> Result<&[CoreFunction]> {
        self.core_functions
            .get(&(h, w))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Domain(format!("no table for A({h}, {w})")))
    }
}
