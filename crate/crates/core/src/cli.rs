//! The `skein` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bracket::{bracket_classical, bracket_resolve, state_sum_oracle};
use crate::diagram::{glue_diagrams, random_diagram, GlueMode, RandomParams, SlicedDiagram};
use crate::error::{Result, SkeinError};
use crate::homology::{omega, HomClass, ManifoldHomologyData};
use crate::jones::{jones_polynomial_with, SwitchPolicy};
use crate::kauffman::{glue_compat_report, kappa, przytycki_class};
use crate::suites::{run_suite, SuiteParams, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "skein", version, about = "Kauffman bracket and Jones skein computations on sliced diagrams")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    First,
    Last,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Stack,
    SideBySide,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kauffman bracket in the laminar basis.
    Bracket {
        /// Diagram file, inline JSON, or `-` for stdin.
        input: String,
        #[arg(long, default_value_t = 0)]
        reduction: u64,
        /// Divide out one loop value so that the unknot is 1.
        #[arg(long)]
        classical: bool,
        /// Use the direct state sum instead of the recursive resolver.
        #[arg(long)]
        oracle: bool,
    },
    /// Jones polynomial of an oriented link in the disk.
    Jones {
        input: String,
        #[arg(long, value_enum, default_value_t = Policy::First)]
        policy: Policy,
    },
    /// Image under the Kauffman map.
    Kappa {
        input: String,
        /// Preset (`handlebody:G`, `sigma-times-i:H:MARKING`, `ball`) or a JSON file; defaults
        /// to the handlebody of the diagram's genus.
        #[arg(long)]
        manifold: Option<String>,
    },
    /// Homology class and framing exponent in the Przytycki module.
    Przytycki {
        input: String,
        #[arg(long)]
        manifold: Option<String>,
    },
    /// Writhe indeterminacy of a homology class.
    Omega {
        #[arg(long)]
        manifold: String,
        /// Free coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Torsion residues, comma separated.
        #[arg(long)]
        torsion: Option<String>,
    },
    /// Glue two diagrams and compare the Kauffman map on both sides.
    Glue {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value_t = Mode::Stack)]
        mode: Mode,
    },
    /// Run a property suite over seeded random diagrams.
    Check {
        /// Suite name, or `all`.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
    },
    /// Print seeded random diagrams as JSON lines.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_crossings: usize,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        bottom: usize,
        #[arg(long, default_value_t = 0)]
        top: usize,
        #[arg(long)]
        unoriented: bool,
    },
}

/// Errors tagged with the exit code they map to.
struct Failed(i32, String);

impl From<SkeinError> for Failed {
    fn from(e: SkeinError) -> Self {
        Failed(EXIT_FAILURE, e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Failed {
    Failed(EXIT_USAGE, e.to_string())
}

/// Read a diagram from a path, inline JSON, or stdin (`-`).
pub fn parse_diagram_source(src: &str) -> Result<SlicedDiagram> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| SkeinError::Parse(e.to_string()))?;
        s
    } else if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(src).map_err(|e| SkeinError::Parse(format!("{src}: {e}")))?
    };
    SlicedDiagram::from_json_str(&text)
}

pub fn parse_diagram_file(path: &Path) -> Result<SlicedDiagram> {
    let text = std::fs::read_to_string(path).map_err(|e| SkeinError::Parse(format!("{}: {e}", path.display())))?;
    SlicedDiagram::from_json_str(&text)
}

fn load(src: &str) -> std::result::Result<SlicedDiagram, Failed> {
    parse_diagram_source(src).map_err(usage)
}

fn manifold(arg: Option<&str>, d: Option<&SlicedDiagram>) -> std::result::Result<ManifoldHomologyData, Failed> {
    let Some(arg) = arg else {
        return Ok(ManifoldHomologyData::handlebody(d.map_or(0, SlicedDiagram::genus)));
    };
    let data = if arg.trim_start().starts_with('{') {
        serde_json::from_str(arg).map_err(usage)?
    } else if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(usage)?;
        serde_json::from_str(&text).map_err(usage)?
    } else {
        ManifoldHomologyData::preset(arg).map_err(usage)?
    };
    data.check().map_err(usage)?;
    Ok(data)
}

fn int_list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, Failed> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| usage(format!("bad integer {x:?} in {s:?}"))))
        .collect()
}

fn diagram_summary(d: &SlicedDiagram) -> Value {
    json!({
        "genus": d.genus(),
        "bottom": d.bottom(),
        "top": d.top(),
        "crossings": d.crossing_count(),
        "components": d.component_count(),
    })
}

/// Output value plus a human-readable rendering and the exit code.
struct Report {
    value: Value,
    pretty: String,
    code: i32,
}

impl Report {
    fn ok(value: Value, pretty: String) -> Self {
        Report { value, pretty, code: EXIT_OK }
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<Report, Failed> {
    match &cli.command {
        Command::Bracket { input, reduction, classical, oracle } => {
            let d = load(input)?;
            let e = match (oracle, classical) {
                (false, false) => bracket_resolve(&d.unoriented(), *reduction)?,
                (false, true) => bracket_classical(&d.unoriented(), *reduction)?,
                (true, false) => state_sum_oracle(&d.unoriented())?.project(*reduction)?,
                (true, true) => state_sum_oracle(&d.unoriented())?.classical()?.project(*reduction)?,
            };
            let pretty = e.to_string();
            Ok(Report::ok(
                json!({ "diagram": diagram_summary(&d), "classical": classical, "bracket": e }),
                pretty,
            ))
        }
        Command::Jones { input, policy } => {
            let d = load(input)?;
            let policy = match policy {
                Policy::First => SwitchPolicy::FirstOffending,
                Policy::Last => SwitchPolicy::LastOffending,
            };
            let (v, stats) = jones_polynomial_with(&d, policy)?;
            Ok(Report::ok(
                json!({
                    "diagram": diagram_summary(&d),
                    "s": v.as_s(),
                    "s_display": v.to_string(),
                    "t_display": v.display_t(),
                    "recursion_nodes": stats.nodes,
                }),
                format!("V = {}\n  = {} (s = t^(1/2))", v.display_t(), v),
            ))
        }
        Command::Kappa { input, manifold: m } => {
            let d = load(input)?;
            let data = manifold(m.as_deref(), Some(&d))?;
            let img = kappa(&d, &data)?;
            let pretty = format!(
                "class {:?}, mod 2 tag {:?}, reduction {}\n{}",
                img.class.free, img.mod2, img.reduction, img.element
            );
            Ok(Report::ok(json!({ "manifold": data.label, "kappa": img }), pretty))
        }
        Command::Przytycki { input, manifold: m } => {
            let d = load(input)?;
            let data = manifold(m.as_deref(), Some(&d))?;
            let p = przytycki_class(&d, &data)?;
            let pretty = if p.omega > 0 {
                format!("class {:?}, q^{} (mod q^{})", p.class.free, p.exponent, 2 * p.omega)
            } else {
                format!("class {:?}, q^{}", p.class.free, p.exponent)
            };
            Ok(Report::ok(json!({ "manifold": data.label, "przytycki": p }), pretty))
        }
        Command::Omega { manifold: m, class, torsion } => {
            let data = manifold(Some(m), None)?;
            let free = int_list::<i64>(class)?;
            let torsion = match torsion {
                Some(t) => int_list::<u64>(t)?,
                None => Vec::new(),
            };
            let alpha = HomClass::with_torsion(free, torsion);
            let w = omega(&data, &alpha).map_err(|e| match e {
                SkeinError::DimensionMismatch { .. } | SkeinError::Parse(_) => usage(e),
                e => e.into(),
            })?;
            Ok(Report::ok(json!({ "manifold": data.label, "class": alpha, "omega": w }), w.to_string()))
        }
        Command::Glue { first, second, mode } => {
            let (d1, d2) = (load(first)?, load(second)?);
            let mode = match mode {
                Mode::Stack => GlueMode::Stack,
                Mode::SideBySide => GlueMode::SideBySide,
            };
            let glued = glue_diagrams(&d1, &d2, mode)?;
            if !d1.is_oriented() {
                return Ok(Report::ok(json!({ "glued": glued.to_json() }), glued.to_json_string()));
            }
            let data = |d: &SlicedDiagram| ManifoldHomologyData::handlebody(d.genus());
            let report = glue_compat_report(&d1, &d2, mode, &data(&d1), &data(&d2))?;
            Ok(Report {
                pretty: format!("{}\ncompatible: {}", glued.to_json_string(), report.ok()),
                code: if report.ok() { EXIT_OK } else { EXIT_FAILURE },
                value: json!({ "glued": glued.to_json(), "compatibility": report }),
            })
        }
        Command::Check { suite, seed, count, max_crossings } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
                return Err(usage(format!("unknown suite {bad:?}; known: all, {}", SUITES.join(", "))));
            }
            let params = SuiteParams { seed: *seed, count: *count, max_crossings: *max_crossings };
            let reports = names.iter().map(|n| run_suite(n, params)).collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.ok());
            let mut pretty = String::new();
            for r in &reports {
                pretty.push_str(&format!(
                    "{} {}: {}/{} passed (seed {})\n",
                    if r.ok() { "PASS" } else { "FAIL" },
                    r.suite,
                    r.passed,
                    r.count,
                    r.seed
                ));
                for f in &r.failures {
                    pretty.push_str(&format!("  case seed {}: {}\n  diagram: {}\n", f.case_seed, f.detail, f.diagram));
                }
            }
            Ok(Report {
                value: json!({ "ok": ok, "suites": reports }),
                pretty: pretty.trim_end().to_string(),
                code: if ok { EXIT_OK } else { EXIT_FAILURE },
            })
        }
        Command::Generate { seed, count, max_crossings, genus, bottom, top, unoriented } => {
            let params = RandomParams {
                max_crossings: *max_crossings,
                genus: *genus,
                bottom: *bottom,
                top: *top,
                max_width: 6.max(bottom.max(top) + 2),
                oriented: !unoriented,
            };
            let diagrams = (0..*count as u64)
                .map(|i| random_diagram(seed.wrapping_add(i), params))
                .collect::<Result<Vec<_>>>()
                .map_err(usage)?;
            let lines: Vec<String> = diagrams.iter().map(SlicedDiagram::to_json_string).collect();
            let value = Value::Array(diagrams.iter().map(SlicedDiagram::to_json).collect());
            Ok(Report::ok(value, lines.join("\n")))
        }
    }
}

/// Parse arguments, run the command, and write the result. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.value).expect("report serializes"),
                Format::Pretty => report.pretty,
            };
            let _ = writeln!(out, "{text}");
            report.code
        }
        Err(Failed(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
