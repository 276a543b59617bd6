//! Restriction to `SL_n(eps q)`: covered blocks and per-block counts of
//! Brauer characters and weights.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::semisimple::RootLabel;

use super::{
    kappa, kappa_block, kappa_weight, symbols_in_block, weight_symbols_in_block, z_act,
    AdmissibleSymbol, BlockSymbol, OrbitLabelled, WeightSymbol,
};

pub const ELL_TWO: &str = "ell=2 upper bound only";
pub const ELL_DIVIDES_CENTER: &str = "ell divides gcd(n, q-eps)";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlBlockReport {
    pub covered: u64,
    pub ibr_per_block: u64,
    pub weights_per_block: u64,
}

/// Number of `SL`-blocks covered by the block, `kappa(b)`; odd `ell` only.
pub fn sl_covered_blocks(b: &BlockSymbol, inst: &Instance) -> Result<u64> {
    if inst.params().ell == 2 {
        return Err(Error::Unsupported(ELL_TWO.into()));
    }
    Ok(kappa_block(b, inst)?.kappa)
}

pub fn sl_block_report(b: &BlockSymbol, inst: &Instance) -> Result<SlBlockReport> {
    let symbols = symbols_in_block(b, inst);
    let weights = weight_symbols_in_block(b, inst)?;
    sl_report_from(b, &symbols, &weights, inst)
}

/// As [`sl_block_report`], reusing already enumerated symbols of the block.
pub fn sl_report_from(
    b: &BlockSymbol,
    symbols: &[AdmissibleSymbol],
    weights: &[WeightSymbol],
    inst: &Instance,
) -> Result<SlBlockReport> {
    let covered = sl_covered_blocks(b, inst)?;
    if inst.params().ell_divides_sl_center() {
        return Err(Error::Unsupported(ELL_DIVIDES_CENTER.into()));
    }
    let c1 = kappa_block(b, inst)?.c1;
    let ibr = sum_over_orbits(symbols, &c1, covered, inst, kappa)?;
    let wts = sum_over_orbits(weights, &c1, covered, inst, kappa_weight)?;
    Ok(SlBlockReport {
        covered,
        ibr_per_block: ibr,
        weights_per_block: wts,
    })
}

/// `sum kappa(x) / kappa(b)` over center orbits meeting `items`; such an
/// orbit meets the block in exactly one `C_1`-orbit.
fn sum_over_orbits<T: OrbitLabelled + std::fmt::Debug>(
    items: &[T],
    c1: &[RootLabel],
    kb: u64,
    inst: &Instance,
    kappa_of: impl Fn(&T, &Instance) -> u64,
) -> Result<u64> {
    let mut total = 0;
    let mut seen = BTreeSet::new();
    for x in items {
        if c1.len() > 1 {
            let key = c1
                .iter()
                .map(|&z| z_act(z, x, inst))
                .min()
                .expect("C_1 contains the identity");
            if !seen.insert(key) {
                continue;
            }
        }
        let k = kappa_of(x, inst);
        if !k.is_multiple_of(kb) {
            return Err(Error::InvariantViolation(format!(
                "kappa(b) = {kb} does not divide {k} for {x:?}"
            )));
        }
        total += k / kb;
    }
    Ok(total)
}
