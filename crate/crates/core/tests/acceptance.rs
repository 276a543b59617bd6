//! Acceptance run: one PASS/FAIL line per criterion, exact integer checks only.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use blockweights::arith::{e0_of, e_gamma, gcd, is_small_prime, prime_power, InstanceParams, Sign};
use blockweights::instance::Instance;
use blockweights::oracle::{cross_check, GroupKind};
use blockweights::partitions::{cores_of_size, count_with_core};
use blockweights::semisimple::orbit_of;
use blockweights::symbols::*;
use blockweights::verify::{run_instance, InstanceReport, SlRow, VerifyOptions};
use blockweights::weights::count_core_functions;
use blockweights::Error;

const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
const ELLS: [u64; 4] = [2, 3, 5, 7];

fn grid(max_n: u32) -> Vec<InstanceParams> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for q in QS {
            for eps in [Sign::Minus, Sign::Plus] {
                for ell in ELLS {
                    if prime_power(q).unwrap().0 != ell {
                        out.push(InstanceParams::new(n, q, eps, ell).unwrap());
                    }
                }
            }
        }
    }
    out
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core_function_identity() -> Outcome {
    let mut cases = 0;
    for e in 1..=5u32 {
        for lambda in (0..=6).flat_map(|s| cores_of_size(s, e)) {
            for w in 0..=7u32 {
                let lhs = count_with_core(lambda.size() + e * w, e, &lambda);
                for ell in [2u64, 3, 5] {
                    let rhs = count_core_functions(e, w as u64, ell);
                    ensure(lhs == rhs, || {
                        format!("e={e} lambda={lambda} w={w} ell={ell}: {lhs} != {rhs}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn gl_level(reports: &[InstanceReport]) -> Outcome {
    let mut blocks = 0;
    for r in reports {
        ensure(r.checks["gl_awc"], || {
            format!("{:?}: {:?}", r.params, r.failures)
        })?;
        for row in &r.blocks {
            ensure(row.ibr == row.weights, || {
                format!("{:?}: block {}", r.params, row.label)
            })?;
        }
        blocks += r.blocks.len();
    }
    Ok(format!("{} instances, {blocks} blocks", reports.len()))
}

fn bijection_grid() -> Outcome {
    let mut symbols = 0;
    for params in grid(5) {
        let inst = Instance::new(params);
        let full_kappa = !params.ell_divides_sl_center();
        for b in enumerate_block_symbols(&inst) {
            let syms = symbols_in_block(&b, &inst);
            let wts = weight_symbols_in_block(&b, &inst).map_err(|e| e.to_string())?;
            let mut images = Vec::with_capacity(syms.len());
            for s in &syms {
                let w = bijection_s(s, &inst);
                ensure(s_inverse(&w, &inst).ok().as_ref() == Some(s), || {
                    format!("{params:?}: S^-1 S != id")
                })?;
                ensure(w.block_part() == b, || format!("{params:?}: block moved"))?;
                let (kw, kp, k) = (
                    kappa_weight(&w, &inst),
                    kappa_ellprime(s, &inst),
                    kappa(s, &inst),
                );
                ensure(kp == kw && (!full_kappa || k == kw), || {
                    format!("{params:?}: kappa {k} vs {kw}")
                })?;
                for &z in inst.center().elements() {
                    ensure(
                        bijection_s(&z_act(z, s, &inst), &inst) == z_act(z, &w, &inst),
                        || format!("{params:?}: not equivariant at z = {z}"),
                    )?;
                }
                images.push(w);
            }
            for w in &wts {
                let s = s_inverse(w, &inst).map_err(|e| e.to_string())?;
                ensure(bijection_s(&s, &inst) == *w, || {
                    format!("{params:?}: S S^-1 != id")
                })?;
            }
            images.sort();
            ensure(images == wts, || {
                format!("{params:?}: image of S is not the weight set of {b}")
            })?;
            symbols += syms.len();
        }
    }
    Ok(format!("{symbols} symbols"))
}

fn sl_level(reports: &[InstanceReport]) -> Outcome {
    let mut admitted = 0;
    for r in reports {
        let p = &r.params;
        if p.ell == 2 || p.ell_divides_sl_center() {
            continue;
        }
        admitted += 1;
        for name in ["sl_awc", "divisibility", "global_consistency"] {
            ensure(r.checks[name], || {
                format!("{p:?}: {name}: {:?}", r.failures)
            })?;
        }
        for row in &r.blocks {
            match &row.sl {
                SlRow::Counts(c) => ensure(c.ibr_per_block == c.weights_per_block, || {
                    format!("{p:?}: {}", row.label)
                })?,
                SlRow::Refused { reason, .. } => return Err(format!("{p:?}: refused {reason}")),
            }
        }
    }
    Ok(format!("{admitted} admitted instances"))
}

fn worked_values() -> Outcome {
    let params = InstanceParams::new(2, 5, Sign::Plus, 3).unwrap();
    let inst = Instance::new(params);
    ensure(enumerate_block_symbols(&inst).len() == 12, || {
        "GL_2(5) block count".into()
    })?;
    ensure(enumerate_admissible_symbols(&inst).len() == 16, || {
        "GL_2(5) symbol count".into()
    })?;
    let r = run_instance(params, VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.totals.total_weight_symbols == 16, || {
        "weight symbol count".into()
    })?;
    ensure(r.totals.sl_block_count == Some(5), || {
        format!("SL blocks {:?}", r.totals.sl_block_count)
    })?;
    ensure(r.totals.sl_total_ibr == Some(7), || {
        format!("SL Brauer characters {:?}", r.totals.sl_total_ibr)
    })?;
    let orbit = |s: &str| orbit_of(s.parse().unwrap(), &params);
    let unipotent = BlockSymbol::new(
        vec![BlockEntry {
            orbit: orbit("0/1"),
            m: 2,
            lambda: "[]".parse().unwrap(),
        }],
        &inst,
    )
    .map_err(|e| e.to_string())?;
    let pair = BlockSymbol::new(
        vec![
            BlockEntry {
                orbit: orbit("1/4"),
                m: 1,
                lambda: "[1]".parse().unwrap(),
            },
            BlockEntry {
                orbit: orbit("3/4"),
                m: 1,
                lambda: "[1]".parse().unwrap(),
            },
        ],
        &inst,
    )
    .map_err(|e| e.to_string())?;
    for (b, expected) in [(unipotent, (1, 2, 2)), (pair, (2, 1, 1))] {
        let s = sl_block_report(&b, &inst).map_err(|e| e.to_string())?;
        let got = (s.covered, s.ibr_per_block, s.weights_per_block);
        ensure(got == expected, || format!("{b}: {got:?} != {expected:?}"))?;
    }
    Ok("GL_2(5) and SL_2(5), ell = 3".into())
}

fn oracle_equivalence() -> Outcome {
    for (kind, n, q, ell, count) in [
        (GroupKind::GL, 2, 5, 3, 16),
        (GroupKind::SL, 2, 5, 3, 7),
        (GroupKind::GU, 2, 2, 5, 9),
    ] {
        let r = cross_check(kind, n, q, ell).map_err(|e| e.to_string())?;
        ensure(r.pass && r.ell_regular == count, || format!("{r:?}"))?;
    }
    let mut compared = 0;
    let mut skipped = 0;
    for kind in [GroupKind::GL, GroupKind::GU, GroupKind::SL, GroupKind::SU] {
        for n in 1..=2 {
            for q in [2u64, 3, 4, 5] {
                for ell in ELLS {
                    if prime_power(q).unwrap().0 == ell {
                        continue;
                    }
                    let start = Instant::now();
                    match cross_check(kind, n, q, ell) {
                        Ok(r) => {
                            ensure(r.pass, || format!("{r:?}"))?;
                            compared += 1;
                        }
                        Err(Error::Unsupported(_)) => skipped += 1,
                        Err(e) => return Err(format!("{kind}_{n}({q}) ell={ell}: {e}")),
                    }
                    ensure(start.elapsed().as_secs() < 30, || {
                        format!("{kind}_{n}({q}) took too long")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{compared} groups compared, {skipped} outside the oracle's range"
    ))
}

fn arithmetic() -> Outcome {
    let mut cases = 0;
    for q in 2..=200u64 {
        let Some((p, _)) = prime_power(q) else {
            continue;
        };
        for ell in (2..=50u64).filter(|&l| is_small_prime(l) && l != p) {
            let e = InstanceParams::new(1, q, Sign::Plus, ell).unwrap().e;
            let e_minus = InstanceParams::new(1, q, Sign::Minus, ell).unwrap().e;
            if ell > 2 {
                let e0 = e0_of(q, ell).unwrap();
                let expected = match e0 % 4 {
                    1 | 3 => 2 * e0,
                    2 => e0 / 2,
                    _ => e0,
                };
                ensure(e == e0 && e_minus == expected, || {
                    format!("q={q} ell={ell}: e={e}, e-={e_minus}, e0={e0}")
                })?;
                cases += 1;
            }
            if q <= 50 && ell <= 13 {
                for eps in [Sign::Plus, Sign::Minus] {
                    let params = InstanceParams::new(1, q, eps, ell).unwrap();
                    for d in 1..=12 {
                        let direct = e_gamma(d, &params);
                        ensure(direct == params.e / gcd(params.e, d as u64), || {
                            format!("q={q} ell={ell} d={d}")
                        })?;
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn main() -> ExitCode {
    let mut reports: Option<Vec<InstanceReport>> = None;
    let mut all_pass = true;
    let mut run = |id: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} [{name}]: PASS ({detail}; {secs:.1}s)"),
            Err(detail) => {
                all_pass = false;
                println!("criterion {id} [{name}]: FAIL ({detail}; {secs:.1}s)");
            }
        }
    };

    run(
        1,
        "core-function counting identity",
        &mut core_function_identity,
    );
    run(2, "GL-level blockwise weight equality", &mut || {
        let rs = grid(6)
            .into_iter()
            .map(|p| run_instance(p, VerifyOptions::default()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let out = gl_level(&rs);
        reports = Some(rs);
        out
    });
    run(3, "bijection S", &mut bijection_grid);
    run(4, "SL-level equality", &mut || match &reports {
        Some(rs) => sl_level(rs),
        None => Err("grid reports unavailable".into()),
    });
    run(5, "worked instance values", &mut worked_values);
    run(6, "oracle equivalence", &mut oracle_equivalence);
    run(7, "arithmetic relations", &mut arithmetic);

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
