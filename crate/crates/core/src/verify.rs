//! Per-instance and grid verification reports.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::arith::{InstanceParams, Sign};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::symbols::{
    bijection_s, block_of, canonical_rep, count_admissible_symbols, enumerate_block_symbols,
    kappa_block, kappa_ell, kappa_weight, s_inverse, sl_report_from, stabilizer, symbols_in_block,
    weight_symbols_in_block, z_act, BlockSymbol, SlBlockReport, ELL_DIVIDES_CENTER, ELL_TWO,
};
use crate::{par_map, Execution};

pub const CHECK_NAMES: [&str; 10] = [
    "divisibility",
    "gl_awc",
    "global_consistency",
    "s_equivariance",
    "s_kappa",
    "s_roundtrip",
    "sl_awc",
    "stabilizer_containment",
    "symbol_partition",
    "unipotent_bijection",
];

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Emit rows for unipotent blocks only; checks still cover every block.
    pub unipotent_only: bool,
    pub execution: Execution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlRow {
    Counts(SlBlockReport),
    Refused {
        covered: Option<u64>,
        reason: String,
    },
}

impl Serialize for SlRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            SlRow::Counts(c) => {
                m.serialize_entry("covered", &c.covered)?;
                m.serialize_entry("ibr_per_block", &c.ibr_per_block)?;
                m.serialize_entry("weights_per_block", &c.weights_per_block)?;
            }
            SlRow::Refused { covered, reason } => {
                if let Some(k) = covered {
                    m.serialize_entry("covered", k)?;
                }
                m.serialize_entry("refused", reason)?;
            }
        }
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRow {
    pub ibr: u64,
    pub kappa_b: u64,
    pub label: BlockSymbol,
    pub sl: SlRow,
    pub weights: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub sl_block_count: Option<u64>,
    pub sl_total_ibr: Option<u64>,
    pub total_symbols: u64,
    pub total_weight_symbols: u64,
}

#[derive(Serialize)]
struct InstanceOut {
    ell: u64,
    eps: i64,
    n: u32,
    q: u64,
}

fn instance_out(n: u32, q: u64, eps: Sign, ell: u64) -> InstanceOut {
    InstanceOut {
        ell,
        eps: eps.value(),
        n,
        q,
    }
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub params: InstanceParams,
    pub blocks: Vec<BlockRow>,
    pub checks: BTreeMap<&'static str, bool>,
    pub totals: Totals,
    pub failures: Vec<String>,
}

impl Serialize for InstanceReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = &self.params;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("blocks", &self.blocks)?;
        m.serialize_entry("checks", &self.checks)?;
        if !self.failures.is_empty() {
            m.serialize_entry("failures", &self.failures)?;
        }
        m.serialize_entry("instance", &instance_out(p.n, p.q, p.eps, p.ell))?;
        m.serialize_entry("totals", &self.totals)?;
        m.end()
    }
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

/// Failed checks of one block, normally empty.
#[derive(Default)]
struct Failures(Vec<(&'static str, String)>);

impl Failures {
    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok && self.0.iter().all(|(n, _)| *n != name) {
            self.0.push((name, detail()));
        }
    }
}

struct BlockOutcome {
    row: BlockRow,
    failures: Failures,
    /// `sum kappa(s) * |Stab(s)|` over the block's symbols.
    weighted_kappa: u64,
}

fn check_block(b: &BlockSymbol, inst: &Instance) -> Result<BlockOutcome> {
    let p = inst.params();
    let center = inst.center().elements();
    let mut f = Failures::default();
    let syms = symbols_in_block(b, inst);
    let wts = weight_symbols_in_block(b, inst)?;
    let kb = kappa_block(b, inst)?;

    f.record("gl_awc", syms.len() == wts.len(), || {
        format!(
            "{b}: {} symbols vs {} weight symbols",
            syms.len(),
            wts.len()
        )
    });

    let images: Vec<_> = syms.iter().map(|s| bijection_s(s, inst)).collect();
    let mut sorted_images = images.clone();
    sorted_images.sort();
    let roundtrip = syms
        .iter()
        .zip(&images)
        .all(|(s, w)| s_inverse(w, inst).ok().as_ref() == Some(s))
        && wts.iter().all(|w| {
            s_inverse(w, inst)
                .map(|s| bijection_s(&s, inst) == *w)
                .unwrap_or(false)
        })
        && images.iter().all(|w| w.block_part() == *b)
        && sorted_images == wts;
    f.record("s_roundtrip", roundtrip, || {
        format!("{b}: S is not a block bijection")
    });

    let full_kappa = !p.ell_divides_sl_center();
    let mut sym_kappas = Vec::with_capacity(syms.len());
    let mut weighted_kappa = 0;
    for (s, w) in syms.iter().zip(&images) {
        let stab = stabilizer(s, center, inst);
        let ks = kappa_ell(s, inst) * stab.len() as u64;
        let kw = kappa_weight(w, inst);
        sym_kappas.push(ks);
        weighted_kappa += ks * stab.len() as u64;
        let ok = stab.len() as u64 == kw && (!full_kappa || ks == kw);
        f.record("s_kappa", ok, || {
            format!("{b}: kappa {ks} vs weight kappa {kw}")
        });
        f.record(
            "stabilizer_containment",
            stab.iter().all(|z| kb.c1.contains(z)),
            || format!("{b}: stabilizer not inside C_1"),
        );
    }

    // Every symbol of the instance passes through here once, so the generator suffices.
    let g = inst.center().generator();
    for (s, w) in syms.iter().zip(&images) {
        let ok = bijection_s(&z_act(g, s, inst), inst) == z_act(g, w, inst);
        f.record("s_equivariance", ok, || {
            format!("{b}: S(z.s) != z.S(s) for z = {g}")
        });
    }

    f.record(
        "symbol_partition",
        syms.iter().all(|s| block_of(s, inst) == *b),
        || format!("{b}: symbol outside its block"),
    );

    let sl = if p.ell == 2 {
        SlRow::Refused {
            covered: None,
            reason: ELL_TWO.into(),
        }
    } else {
        for &ks in &sym_kappas {
            f.record("divisibility", ks % kb.kappa == 0, || {
                format!("{b}: kappa(b) = {} does not divide {ks}", kb.kappa)
            });
        }
        if p.ell_divides_sl_center() {
            SlRow::Refused {
                covered: Some(kb.kappa),
                reason: ELL_DIVIDES_CENTER.into(),
            }
        } else {
            match sl_report_from(b, &syms, &wts, inst) {
                Ok(r) => {
                    f.record("sl_awc", r.ibr_per_block == r.weights_per_block, || {
                        format!(
                            "{b}: {} Brauer characters vs {} weights",
                            r.ibr_per_block, r.weights_per_block
                        )
                    });
                    if b.is_unipotent() {
                        let ok = r.ibr_per_block == syms.len() as u64
                            && sym_kappas.iter().all(|&k| k == kb.kappa);
                        f.record("unipotent_bijection", ok, || {
                            format!("{b}: restriction is not a bijection")
                        });
                    }
                    SlRow::Counts(r)
                }
                Err(Error::InvariantViolation(msg)) => {
                    f.record("divisibility", false, || msg.clone());
                    SlRow::Refused {
                        covered: Some(kb.kappa),
                        reason: msg,
                    }
                }
                Err(e) => return Err(e),
            }
        }
    };

    Ok(BlockOutcome {
        row: BlockRow {
            ibr: syms.len() as u64,
            kappa_b: kb.kappa,
            label: b.clone(),
            sl,
            weights: wts.len() as u64,
        },
        failures: f,
        weighted_kappa,
    })
}

/// The checks that apply to an instance; SL checks need odd `ell`, and the
/// count comparisons also need `ell` not dividing `gcd(n, q - eps)`.
pub fn applicable_checks(params: &InstanceParams) -> Vec<&'static str> {
    let mut names = vec![
        "gl_awc",
        "s_roundtrip",
        "s_kappa",
        "s_equivariance",
        "symbol_partition",
        "stabilizer_containment",
    ];
    if params.ell != 2 {
        names.push("divisibility");
        if !params.ell_divides_sl_center() {
            names.extend(["sl_awc", "global_consistency", "unipotent_bijection"]);
        }
    }
    names
}

pub fn run_instance(params: InstanceParams, opts: VerifyOptions) -> Result<InstanceReport> {
    let inst = Instance::with_execution(params, opts.execution);
    let p = inst.params();
    let blocks = enumerate_block_symbols(&inst);
    let outcomes = par_map(opts.execution, &blocks, |b| check_block(b, &inst));
    drop(blocks);

    let mut checks: BTreeMap<&'static str, bool> = applicable_checks(p)
        .into_iter()
        .map(|n| (n, true))
        .collect();
    let mut failures = Vec::new();
    let mut fail = |name: &'static str, msg: String| {
        if let Some(v) = checks.get_mut(name) {
            if *v {
                failures.push(format!("{name}: {msg}"));
            }
            *v = false;
        }
    };

    let mut rows = Vec::with_capacity(outcomes.len());
    let mut weighted_kappa = 0;
    for o in outcomes {
        let o = o?;
        for (name, msg) in o.failures.0 {
            fail(name, msg);
        }
        weighted_kappa += o.weighted_kappa;
        rows.push(o.row);
    }

    let total_symbols: u64 = rows.iter().map(|r| r.ibr).sum();
    let total_weight_symbols: u64 = rows.iter().map(|r| r.weights).sum();

    let counted = count_admissible_symbols(&inst);
    if counted != total_symbols {
        fail(
            "symbol_partition",
            format!("{counted} symbols overall, {total_symbols} across blocks"),
        );
    }

    // Each center orbit contributes kappa(s) * |Z| to the weighted sum.
    let z = inst.center().order();
    if weighted_kappa % z != 0 {
        fail(
            "s_kappa",
            format!("orbit sum {weighted_kappa} not divisible by |Z| = {z}"),
        );
    }
    let sym_orbit_sum = weighted_kappa / z;

    let mut sl_block_count = None;
    if p.ell != 2 {
        let mut count = 0;
        let mut weighted_ibr = 0;
        for r in &rows {
            if canonical_rep(&r.label, &inst) != r.label {
                continue;
            }
            count += r.kappa_b;
            if let SlRow::Counts(c) = &r.sl {
                weighted_ibr += r.kappa_b * c.ibr_per_block;
            }
        }
        sl_block_count = Some(count);
        if !p.ell_divides_sl_center() && weighted_ibr != sym_orbit_sum {
            fail(
                "global_consistency",
                format!("block side {weighted_ibr} vs symbol side {sym_orbit_sum}"),
            );
        }
    }

    if opts.unipotent_only {
        rows.retain(|r| r.label.is_unipotent());
    }

    Ok(InstanceReport {
        params: *p,
        blocks: rows,
        checks,
        totals: Totals {
            sl_block_count,
            sl_total_ibr: Some(sym_orbit_sum),
            total_symbols,
            total_weight_symbols,
        },
        failures,
    })
}

/// A parameter grid: every combination of the listed values.
#[derive(Clone, Debug, Default)]
pub struct GridSpec {
    pub n: Vec<u32>,
    pub q: Vec<u64>,
    pub eps: Vec<Sign>,
    pub ell: Vec<u64>,
}

impl GridSpec {
    /// Grid points in `(n, q, eps, ell)` order, without repeats.
    pub fn points(&self) -> Vec<(u32, u64, Sign, u64)> {
        let mut points = Vec::new();
        for &n in &self.n {
            for &q in &self.q {
                for &eps in &self.eps {
                    for &ell in &self.ell {
                        points.push((n, q, eps, ell));
                    }
                }
            }
        }
        points.sort_by_key(|&(n, q, eps, ell)| (n, q, eps.value(), ell));
        points.dedup();
        points
    }
}

#[derive(Debug)]
pub enum GridEntry {
    Report(Box<InstanceReport>),
    /// A grid point with `ell = p`.
    Rejected {
        n: u32,
        q: u64,
        eps: Sign,
        ell: u64,
        error: Error,
    },
}

impl Serialize for GridEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GridEntry::Report(r) => r.serialize(s),
            GridEntry::Rejected {
                n,
                q,
                eps,
                ell,
                error,
            } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("error", &error.to_string())?;
                m.serialize_entry("instance", &instance_out(*n, *q, *eps, *ell))?;
                m.end()
            }
        }
    }
}

impl GridEntry {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn passed(&self) -> bool {
        match self {
            GridEntry::Report(r) => r.passed(),
            GridEntry::Rejected { .. } => true,
        }
    }
}

#[derive(Debug)]
pub struct GridOutcome {
    pub entries: Vec<GridEntry>,
    pub exit_code: i32,
}

impl GridOutcome {
    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(GridEntry::to_json).collect())
    }
}

/// Checks every grid point before running any, so configuration errors
/// surface first. Points with `ell = p` are rejected individually; any other
/// invalid point fails the whole grid.
pub fn validate_grid(
    grid: &GridSpec,
) -> Result<Vec<std::result::Result<InstanceParams, GridEntry>>> {
    let mut out = Vec::new();
    for (n, q, eps, ell) in grid.points() {
        match InstanceParams::new(n, q, eps, ell) {
            Ok(params) => out.push(Ok(params)),
            Err(error) if crate::arith::prime_power(q).map(|(p, _)| p) == Some(ell) => {
                out.push(Err(GridEntry::Rejected {
                    n,
                    q,
                    eps,
                    ell,
                    error,
                }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Runs the grid, handing each entry to `sink` as soon as it is ready.
/// Returns the exit status: 0 if every check passed, 1 otherwise.
pub fn run_grid_with(
    grid: &GridSpec,
    opts: VerifyOptions,
    mut sink: impl FnMut(GridEntry) -> Result<()>,
) -> Result<i32> {
    let mut exit_code = 0;
    for point in validate_grid(grid)? {
        let entry = match point {
            Ok(params) => GridEntry::Report(Box::new(run_instance(params, opts)?)),
            Err(rejected) => rejected,
        };
        if !entry.passed() {
            exit_code = 1;
        }
        sink(entry)?;
    }
    Ok(exit_code)
}

pub fn run_grid(grid: &GridSpec, opts: VerifyOptions) -> Result<GridOutcome> {
    let mut entries = Vec::new();
    let exit_code = run_grid_with(grid, opts, |e| {
        entries.push(e);
        Ok(())
    })?;
    Ok(GridOutcome { entries, exit_code })
}
