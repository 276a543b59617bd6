use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blockweights::arith::Sign;
use blockweights::oracle::{cross_check, GroupKind};
use blockweights::verify::{
    run_grid_with, validate_grid, GridEntry, GridSpec, SlRow, VerifyOptions,
};
use blockweights::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "blockweights",
    version,
    about = "Block, Brauer character and weight counts for GL_n and SL_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on a grid of instances.
    Verify {
        /// Rank range, `A..B` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range)]
        n: RankRange,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Signs, `+1` for GL and `-1` for GU.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_sign, required = true)]
        eps: Vec<Sign>,
        #[arg(long, value_delimiter = ',', required = true)]
        ell: Vec<u64>,
        /// Emit rows for unipotent blocks only.
        #[arg(long)]
        unipotent_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare brute-force class counts of a small matrix group with the engine.
    Oracle {
        #[arg(long, value_parser = parse_kind)]
        group: GroupKind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug)]
struct RankRange(u32, u32);

fn parse_range(s: &str) -> Result<RankRange, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad rank {t:?}: {e}"))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok(RankRange(parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let a = parse(s)?;
            Ok(RankRange(a, a))
        }
    }
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.trim()
        .parse::<i64>()
        .ok()
        .and_then(Sign::from_value)
        .ok_or_else(|| format!("sign must be +1 or -1, got {s:?}"))
}

fn parse_kind(s: &str) -> Result<GroupKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

const CSV_HEADER: [&str; 13] = [
    "n",
    "q",
    "eps",
    "ell",
    "label",
    "ibr",
    "weights",
    "kappa_b",
    "sl_covered",
    "sl_ibr_per_block",
    "sl_weights_per_block",
    "sl_refused",
    "error",
];

fn csv_rows(entry: &GridEntry, w: &mut csv::Writer<Box<dyn Write>>) -> csv::Result<()> {
    match entry {
        GridEntry::Report(r) => {
            let p = &r.params;
            for row in &r.blocks {
                let (covered, ibr, wts, refused) = match &row.sl {
                    SlRow::Counts(c) => (
                        c.covered.to_string(),
                        c.ibr_per_block.to_string(),
                        c.weights_per_block.to_string(),
                        String::new(),
                    ),
                    SlRow::Refused { covered, reason } => (
                        covered.map(|k| k.to_string()).unwrap_or_default(),
                        String::new(),
                        String::new(),
                        reason.clone(),
                    ),
                };
                w.write_record([
                    p.n.to_string(),
                    p.q.to_string(),
                    p.eps.to_string(),
                    p.ell.to_string(),
                    row.label.to_string(),
                    row.ibr.to_string(),
                    row.weights.to_string(),
                    row.kappa_b.to_string(),
                    covered,
                    ibr,
                    wts,
                    refused,
                    String::new(),
                ])?;
            }
        }
        GridEntry::Rejected {
            n,
            q,
            eps,
            ell,
            error,
        } => {
            let mut rec = vec![
                n.to_string(),
                q.to_string(),
                eps.to_string(),
                ell.to_string(),
            ];
            rec.extend(std::iter::repeat_n(String::new(), 8));
            rec.push(error.to_string());
            w.write_record(rec)?;
        }
    }
    Ok(())
}

fn write_grid(
    grid: &GridSpec,
    opts: VerifyOptions,
    format: Format,
    out: Box<dyn Write>,
) -> Result<i32, Error> {
    let io_err = |e: io::Error| Error::Config(format!("cannot write report: {e}"));
    let csv_err = |e: csv::Error| Error::Config(format!("cannot write report: {e}"));
    match format {
        Format::Json => {
            let mut out = io::BufWriter::new(out);
            let mut first = true;
            out.write_all(b"[").map_err(io_err)?;
            let code = run_grid_with(grid, opts, |entry| {
                out.write_all(if first { b"\n" } else { b",\n" })
                    .map_err(io_err)?;
                first = false;
                serde_json::to_writer_pretty(&mut out, &entry)
                    .map_err(|e| Error::Config(e.to_string()))
            })?;
            out.write_all(b"\n]\n")
                .and_then(|_| out.flush())
                .map_err(io_err)?;
            Ok(code)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            let code = run_grid_with(grid, opts, |entry| {
                csv_rows(&entry, &mut w).map_err(csv_err)
            })?;
            w.flush().map_err(io_err)?;
            Ok(code)
        }
    }
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            n,
            q,
            eps,
            ell,
            unipotent_only,
            format,
            out,
        } => {
            let grid = GridSpec {
                n: (n.0..=n.1).collect(),
                q,
                eps,
                ell,
            };
            let opts = VerifyOptions {
                unipotent_only,
                ..Default::default()
            };
            if let Err(e) = validate_grid(&grid) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            let out = match open_output(&out) {
                Ok(w) => w,
                Err(e) => {
                    eprintln!("error: cannot open report: {e}");
                    return ExitCode::from(2);
                }
            };
            match write_grid(&grid, opts, format, out) {
                Ok(code) => ExitCode::from(code as u8),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Oracle { group, n, q, ell } => match cross_check(group, n, q, ell) {
            Ok(record) => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&record.to_json()).expect("json")
                );
                if record.pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
