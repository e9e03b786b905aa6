//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a verification mismatch, 2 on
//! a usage or validation error. Data goes to stdout; progress and errors go
//! to stderr.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::characters::{
    gf_from_enumeration, level2_char_closed, level2_gf_closed, level2_gf_raw, verify_character,
    verify_classical, verify_main, verify_weyl_kac, weyl_kac_principal, Level2Module, MainRelation,
};
use crate::classical::{ag_counts, bressoud_counts, mp_counts, product_side, Family};
use crate::coloured::{c_counts, c_geq_counts, verify_psi, GroundedFamily, PartitionJson};
use crate::crystal::verify_phi;
use crate::error::{Error, Result};
use crate::par::Parallelism;
use crate::qseries::SeriesJson;
use crate::report::Report;

/// Environment variable holding the default truncation order.
pub const ORDER_ENV: &str = "CRYSTAL_PARTITIONS_ORDER";

const DEFAULT_ORDER: i64 = 20;
const DEFAULT_CHARACTER_ORDER: i64 = 8;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "crystal-partitions",
    version,
    about = "Count, enumerate and verify coloured partition identities"
)]
pub struct RunConfig {
    /// Worker threads for grids (1 = sequential, 0 = all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report elapsed_ms as 0 so that output is reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Suppress progress lines on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficient vector of a partition counter up to weight --max.
    Count {
        family: CountFamily,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the partitions of a family up to weight --max.
    Enum {
        family: EnumFamily,
        #[command(flatten)]
        params: Params,
        /// Level-2 module (for `level2`).
        #[arg(long)]
        module: Option<Level2Module>,
        #[arg(long, default_value_t = 5)]
        max: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a product side or a level-2 generating function.
    Series {
        target: SeriesTarget,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        module: Option<Level2Module>,
        /// For `level2`: closed product, raw product before even extraction, or enumeration.
        #[arg(long, value_enum, default_value_t = Source::Closed)]
        source: Source,
        #[arg(long, env = ORDER_ENV)]
        order: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a bijection exhaustively; omitting --i checks every 0 <= i <= n.
    Bijection {
        map: BijectionMap,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        n: usize,
        /// Largest deviating prefix length (phi).
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Weight bound (graded counts for phi, partitions for psi).
        #[arg(long, default_value_t = 12)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify a single identity.
    Verify {
        target: VerifyTarget,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "exact")]
        rel: MainRelation,
        #[arg(long)]
        module: Option<Level2Module>,
        #[arg(long, env = ORDER_ENV)]
        order: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify every cell of a grid and print a summary.
    Grid {
        target: GridTarget,
        /// Largest n for `main` (no value means an empty grid).
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "exact,atleast")]
        rel: Vec<MainRelation>,
        /// Modules for `character`; pass an empty value for an empty grid.
        #[arg(long, value_delimiter = ',', default_value = "L01,2L0,2L1")]
        modules: Vec<String>,
        #[arg(long, env = ORDER_ENV)]
        order: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Closed level-2 character, expanded to δ/2-order --order.
    Character {
        #[arg(long)]
        module: Level2Module,
        #[arg(long, env = ORDER_ENV)]
        order: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Params {
    #[arg(long, default_value_t = 0)]
    i: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
}

impl Params {
    fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::Usage("--n is required".into()))
    }

    fn r(&self) -> Result<usize> {
        self.r.ok_or_else(|| Error::Usage("--r is required".into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountFamily {
    C,
    Cgeq,
    Mp,
    Ag,
    Bressoud,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnumFamily {
    C,
    Cgeq,
    Level2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesTarget {
    C,
    Cgeq,
    Mp,
    Ag,
    Bressoud,
    WeylKac,
    Level2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    Closed,
    Raw,
    Enumerated,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BijectionMap {
    Phi,
    Psi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    Main,
    Mp,
    Ag,
    Bressoud,
    WeylKac,
    Character,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GridTarget {
    Main,
    Character,
}

#[derive(Serialize)]
struct CountsJson {
    target: String,
    max: usize,
    counts: Vec<u64>,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
    cells: Vec<Report>,
}

struct Ctx {
    par: Parallelism,
    no_timing: bool,
    quiet: bool,
}

impl Ctx {
    fn finish(&self, r: Report) -> Report {
        if self.no_timing {
            r.without_timing()
        } else {
            r
        }
    }

    fn progress(&self, r: &Report) {
        if !self.quiet {
            eprintln!(
                "[{}] {}",
                if r.passed() { "pass" } else { "FAIL" },
                r.identity
            );
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Data is written to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            if code == EXIT_PASS {
                let _ = write!(out, "{e}");
            } else {
                let _ = e.print();
            }
            return code;
        }
    };
    match execute(cfg, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_MISMATCH,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("write failed: {e}"))
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Usage(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn require_module(module: Option<Level2Module>) -> Result<Level2Module> {
    module.ok_or_else(|| Error::Usage("--module is required (L01, 2L0 or 2L1)".into()))
}

/// Returns whether every check passed.
fn execute(cfg: RunConfig, out: &mut dyn Write) -> Result<bool> {
    let ctx = Ctx {
        par: Parallelism::from_jobs(cfg.jobs),
        no_timing: cfg.no_timing,
        quiet: cfg.quiet,
    };
    match cfg.command {
        Command::Count {
            family,
            params,
            max,
            format,
        } => {
            let (target, counts) = match family {
                CountFamily::C => (
                    format!("c:i={}:n={}", params.i, params.n()?),
                    c_counts(params.i, params.n()?, max)?,
                ),
                CountFamily::Cgeq => (
                    format!("cgeq:i={}:n={}", params.i, params.n()?),
                    c_geq_counts(params.i, params.n()?, max)?,
                ),
                CountFamily::Mp => (
                    format!("mp:i={}:n={}", params.i, params.n()?),
                    mp_counts(params.i, params.n()?, max)?,
                ),
                CountFamily::Ag => (
                    format!("ag:i={}:r={}", params.i, params.r()?),
                    ag_counts(params.i, params.r()?, max)?,
                ),
                CountFamily::Bressoud => (
                    format!("bressoud:i={}:r={}", params.i, params.r()?),
                    bressoud_counts(params.i, params.r()?, max)?,
                ),
            };
            write_counts(
                out,
                format,
                CountsJson {
                    target,
                    max,
                    counts,
                },
            )?;
            Ok(true)
        }
        Command::Enum {
            family,
            params,
            module,
            max,
            format,
        } => {
            let fam = match family {
                EnumFamily::C => GroundedFamily::c(params.i, params.n()?)?,
                EnumFamily::Cgeq => GroundedFamily::c_geq(params.i, params.n()?)?,
                EnumFamily::Level2 => require_module(module)?.family()?,
            };
            let parts = fam.enumerate(max)?;
            match format {
                Format::Json => json(
                    out,
                    &parts
                        .iter()
                        .map(|p| p.to_json())
                        .collect::<Vec<PartitionJson>>(),
                )?,
                Format::Csv => {
                    writeln!(out, "weight,parts").map_err(io)?;
                    for p in &parts {
                        let joined: Vec<String> = p.parts.iter().map(|q| q.to_string()).collect();
                        writeln!(out, "{},{}", p.weight(), joined.join(" ")).map_err(io)?;
                    }
                }
                Format::Text => {
                    for p in &parts {
                        writeln!(out, "{} {p}", p.weight()).map_err(io)?;
                    }
                }
            }
            Ok(true)
        }
        Command::Series {
            target,
            params,
            module,
            source,
            order,
            format,
        } => {
            let order = order.unwrap_or(DEFAULT_ORDER);
            let i = params.i;
            let series: SeriesJson = match target {
                SeriesTarget::C | SeriesTarget::Mp => {
                    (&product_side(Family::MpOrMain { i, n: params.n()? }, order)?).into()
                }
                SeriesTarget::Cgeq => {
                    (&product_side(Family::MainGeq { i, n: params.n()? }, order)?).into()
                }
                SeriesTarget::Ag => {
                    (&product_side(Family::Ag { i, r: params.r()? }, order)?).into()
                }
                SeriesTarget::Bressoud => {
                    (&product_side(Family::Bressoud { i, r: params.r()? }, order)?).into()
                }
                SeriesTarget::WeylKac => (&weyl_kac_principal(i, params.n()?, order)?).into(),
                SeriesTarget::Level2 => {
                    let m = require_module(module)?;
                    let gf = match source {
                        Source::Closed => level2_gf_closed(m, order)?,
                        Source::Raw => level2_gf_raw(m, order)?,
                        Source::Enumerated => gf_from_enumeration(m, order)?,
                    };
                    (&gf).into()
                }
            };
            write_series(out, format, &series)?;
            Ok(true)
        }
        Command::Bijection {
            map,
            i,
            n,
            max_len,
            max,
            format,
        } => {
            let is: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (0..=n).collect(),
            };
            let reports = ctx
                .par
                .map(is, |i| {
                    let r = match map {
                        BijectionMap::Phi => verify_phi(n, i, max_len, max),
                        BijectionMap::Psi => verify_psi(i, n, max),
                    }
                    .map(|r| ctx.finish(r));
                    if let Ok(r) = &r {
                        ctx.progress(r);
                    }
                    r
                })
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            write_summary(out, format, reports)
        }
        Command::Verify {
            target,
            params,
            rel,
            module,
            order,
            format,
        } => {
            let i = params.i;
            let report = match target {
                VerifyTarget::Main => {
                    verify_main(i, params.n()?, rel, order.unwrap_or(DEFAULT_ORDER))?
                }
                VerifyTarget::Mp => verify_classical(
                    Family::MpOrMain { i, n: params.n()? },
                    order.unwrap_or(DEFAULT_ORDER),
                )?,
                VerifyTarget::Ag => verify_classical(
                    Family::Ag { i, r: params.r()? },
                    order.unwrap_or(DEFAULT_ORDER),
                )?,
                VerifyTarget::Bressoud => verify_classical(
                    Family::Bressoud { i, r: params.r()? },
                    order.unwrap_or(DEFAULT_ORDER),
                )?,
                VerifyTarget::WeylKac => {
                    verify_weyl_kac(i, params.n()?, order.unwrap_or(DEFAULT_ORDER))?
                }
                VerifyTarget::Character => verify_character(
                    require_module(module)?,
                    order.unwrap_or(DEFAULT_CHARACTER_ORDER),
                )?,
            };
            let report = ctx.finish(report);
            ctx.progress(&report);
            let passed = report.passed();
            match format {
                Format::Json => json(out, &report)?,
                Format::Csv => write_report_csv(out, &[report])?,
                Format::Text => writeln!(out, "{report}").map_err(io)?,
            }
            Ok(passed)
        }
        Command::Grid {
            target,
            n_max,
            rel,
            modules,
            order,
            format,
        } => {
            let reports = match target {
                GridTarget::Main => {
                    let order = order.unwrap_or(DEFAULT_ORDER);
                    let mut cells = Vec::new();
                    if let Some(n_max) = n_max {
                        for &r in &rel {
                            for n in 0..=n_max {
                                cells.extend((0..=n).map(|i| (i, n, r)));
                            }
                        }
                    }
                    run_cells(&ctx, cells, |(i, n, r)| verify_main(i, n, r, order))?
                }
                GridTarget::Character => {
                    let order = order.unwrap_or(DEFAULT_CHARACTER_ORDER);
                    let modules = modules
                        .iter()
                        .map(|s| s.trim())
                        .filter(|s| !s.is_empty())
                        .map(str::parse)
                        .collect::<Result<Vec<Level2Module>>>()?;
                    run_cells(&ctx, modules, |m| verify_character(m, order))?
                }
            };
            write_summary(out, format, reports)
        }
        Command::Character {
            module,
            order,
            format,
        } => {
            let ch = level2_char_closed(module, order.unwrap_or(DEFAULT_CHARACTER_ORDER))?;
            match format {
                Format::Text => writeln!(out, "{ch}").map_err(io)?,
                _ => write_series(out, format, &(&ch).into())?,
            }
            Ok(true)
        }
    }
}

/// Runs `f` over `cells` with progress lines, results in cell order.
fn run_cells<T: Send>(
    ctx: &Ctx,
    cells: Vec<T>,
    f: impl Fn(T) -> Result<Report> + Sync + Send,
) -> Result<Vec<Report>> {
    ctx.par
        .map(cells, |c| {
            let r = f(c).map(|r| ctx.finish(r));
            if let Ok(r) = &r {
                ctx.progress(r);
            }
            r
        })
        .into_iter()
        .collect()
}

fn write_counts(out: &mut dyn Write, format: Format, data: CountsJson) -> Result<()> {
    match format {
        Format::Json => json(out, &data),
        Format::Csv => {
            writeln!(out, "m,count").map_err(io)?;
            for (m, c) in data.counts.iter().enumerate() {
                writeln!(out, "{m},{c}").map_err(io)?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{}", data.target).map_err(io)?;
            for (m, c) in data.counts.iter().enumerate() {
                writeln!(out, "{m:>4} {c}").map_err(io)?;
            }
            Ok(())
        }
    }
}

fn write_series(out: &mut dyn Write, format: Format, s: &SeriesJson) -> Result<()> {
    match format {
        Format::Json => json(out, s),
        Format::Csv => {
            writeln!(out, "q,colours,coeff").map_err(io)?;
            for t in &s.terms {
                let cs: Vec<String> = t.colours.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{},{},{}", t.q, cs.join(" "), t.coeff).map_err(io)?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "# q_min {} trunc_order {}", s.q_min, s.trunc_order).map_err(io)?;
            for t in &s.terms {
                let cs: Vec<String> = t.colours.iter().map(|c| c.to_string()).collect();
                writeln!(out, "q^{} [{}] {}", t.q, cs.join(","), t.coeff).map_err(io)?;
            }
            Ok(())
        }
    }
}

fn write_report_csv(out: &mut dyn Write, reports: &[Report]) -> Result<()> {
    writeln!(
        out,
        "identity,order,status,stage,exponent,lhs,rhs,elapsed_ms"
    )
    .map_err(io)?;
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let (stage, exp, lhs, rhs) = match &r.first_mismatch {
            Some(m) => (
                m.stage.as_str(),
                m.exponent.as_str(),
                m.lhs.as_str(),
                m.rhs.as_str(),
            ),
            None => ("", "", "", ""),
        };
        writeln!(
            out,
            "{},{},{status},{stage},{exp},{lhs},{rhs},{}",
            r.identity, r.order, r.elapsed_ms
        )
        .map_err(io)?;
    }
    Ok(())
}

fn write_summary(out: &mut dyn Write, format: Format, cells: Vec<Report>) -> Result<bool> {
    let passed = cells.iter().filter(|r| r.passed()).count();
    let summary = Summary {
        total: cells.len(),
        passed,
        failed: cells.len() - passed,
        cells,
    };
    match format {
        Format::Json => json(out, &summary)?,
        Format::Csv => write_report_csv(out, &summary.cells)?,
        Format::Text => {
            for r in &summary.cells {
                writeln!(out, "{r}").map_err(io)?;
            }
            writeln!(out, "{}/{} passed", summary.passed, summary.total).map_err(io)?;
        }
    }
    Ok(summary.failed == 0)
}
