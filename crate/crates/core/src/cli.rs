//! Command-line front end.
//!
//! Exit codes: `0` success, `2` bad input (expression, family, range or
//! refinement file), `3` a degree formula did not divide exactly, `4` the
//! oracle suite produced an unexpected result.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::atlas::{report, threshold_scan, Family, RefinementTable, Report, SBResult, Scan};
use crate::error::Error;
use crate::oracle::CheckSuite;
use crate::spaces::parse;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NON_INTEGRAL: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

/// Environment variable naming a refinement file; `--refinements` wins over it.
pub const REFINEMENTS_ENV: &str = "ATLAS_REFINEMENTS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Parser)]
#[command(
    name = "sbatlas",
    version,
    about = "Embedding degrees and minimal Darboux atlas bounds for Hermitian symmetric spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report all invariants of a space, e.g. `compute "I(2,5) x CP(1)"`.
    Compute {
        expr: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        #[command(flatten)]
        refinements: RefinementArgs,
    },
    /// Scan a family over an inclusive parameter range, e.g. `table I:k=2 4..10`.
    Table {
        /// `I:k=<int>`, `II`, `III` or `IV`.
        family: String,
        /// Inclusive range `a..b`.
        range: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        #[command(flatten)]
        refinements: RefinementArgs,
    },
    /// Run the arithmetic, tableau and isomorphism cross-checks.
    Check {
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

#[derive(Debug, Args)]
pub struct RefinementArgs {
    /// Ignore all literature refinements.
    #[arg(long)]
    pub no_refinements: bool,
    /// Refinement file (`key | values | citation` per line).
    #[arg(long, value_name = "PATH", env = REFINEMENTS_ENV)]
    pub refinements: Option<PathBuf>,
}

impl RefinementArgs {
    pub fn table(&self) -> Result<RefinementTable, Error> {
        if self.no_refinements {
            return Ok(RefinementTable::empty());
        }
        match &self.refinements {
            Some(path) => Ok(RefinementTable::load(path)?),
            None => Ok(RefinementTable::builtin()),
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Arith(_) => EXIT_NON_INTEGRAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}

/// Runs one command and returns its rendered output and exit code.
pub fn execute(command: &Command) -> Result<(String, i32), Error> {
    match command {
        Command::Compute {
            expr,
            format,
            refinements,
        } => {
            let table = refinements.table()?;
            let space = parse(expr)?;
            let r = report(&space, &table)?;
            Ok((render_report(&r, *format), EXIT_OK))
        }
        Command::Table {
            family,
            range,
            format,
            refinements,
        } => {
            let table = refinements.table()?;
            let family: Family = family.parse()?;
            let (from, to) = parse_range(range)?;
            let scan = threshold_scan(family, from, to, &table)?;
            Ok((render_scan(&scan, *format), EXIT_OK))
        }
        Command::Check { format } => {
            let suite = CheckSuite::run()?;
            let code = if suite.deviations().is_empty() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            };
            Ok((render_check(&suite, *format), code))
        }
    }
}

/// Parses an inclusive range `a..b`.
pub fn parse_range(text: &str) -> Result<(u32, u32), Error> {
    let bad = || {
        crate::error::SpaceError::InvalidParams(format!(
            "range must look like `a..b` with a ≤ b, got `{text}`"
        ))
    };
    let (a, b) = text.trim().split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad().into());
    }
    Ok((a, b))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn sb_fields(sb: &SBResult) -> [String; 5] {
    match sb {
        SBResult::Exact { value } => [
            "Exact".into(),
            value.to_string(),
            value.to_string(),
            String::new(),
            String::new(),
        ],
        SBResult::Range {
            lower,
            upper,
            refinement,
        } => [
            "Range".into(),
            lower.to_string(),
            upper.to_string(),
            refinement
                .as_ref()
                .map(|r| r.values.to_string())
                .unwrap_or_default(),
            refinement
                .as_ref()
                .map(|r| r.citation.clone())
                .unwrap_or_default(),
        ],
    }
}

pub fn render_report(r: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(r),
        OutputFormat::Csv => {
            let [kind, lower, upper, refined, citation] = sb_fields(&r.sb);
            to_csv(
                &[
                    "space",
                    "n",
                    "rank",
                    "degree",
                    "gamma",
                    "sb_kind",
                    "sb_lower",
                    "sb_upper",
                    "refinement",
                    "citation",
                    "case",
                ],
                &[vec![
                    r.space.clone(),
                    r.n.to_string(),
                    r.rank.to_string(),
                    r.degree.to_string(),
                    r.gamma.to_string(),
                    kind,
                    lower,
                    upper,
                    refined,
                    citation,
                    r.case.to_string(),
                ]],
            )
        }
        OutputFormat::Latex => {
            let rows = [
                ("space", tex_text(&r.space)),
                ("$n$", r.n.to_string()),
                ("rank", r.rank.to_string()),
                ("$\\deg f$", r.degree.to_string()),
                (
                    "$\\mathrm{Vol}$",
                    format!(
                        "${}\\,\\pi^{{{}}}/{}!$",
                        r.volume.units, r.volume.dim, r.volume.dim
                    ),
                ),
                ("$c_G$", format!("${}\\pi$", r.gromov_width_units)),
                ("$\\Gamma$", r.gamma.to_string()),
                ("$S_B$", tex_sb(&r.sb)),
                ("clause", r.case.to_string()),
            ];
            let mut s = String::from("\\begin{tabular}{ll}\n\\hline\n");
            for (k, v) in rows {
                s.push_str(&format!("{k} & {v} \\\\\n"));
            }
            s.push_str("\\hline\n\\end{tabular}\n");
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            let mut line = |k: &str, v: String| s.push_str(&format!("{k:<14} {v}\n"));
            line("space", r.space.clone());
            line("n", format!("{} (real dimension {})", r.n, r.real_dim));
            line("rank", r.rank.to_string());
            line("degree", r.degree.to_string());
            line("volume", r.volume.to_string());
            line("gromov width", format!("{} · π", r.gromov_width_units));
            line("gamma", r.gamma.to_string());
            line("clause", r.case.to_string());
            if !r.warnings.is_empty() {
                s.push_str("warnings:\n");
                for w in &r.warnings {
                    s.push_str(&format!("  - {w}\n"));
                }
            }
            s.push_str("citations:\n");
            for c in &r.citations {
                s.push_str(&format!("  - {c}\n"));
            }
            s.push_str(&format!("{}\n", r.sb));
            s
        }
    }
}

pub fn render_scan(scan: &Scan, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(scan),
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = scan
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.param.to_string(),
                        r.space.clone(),
                        r.n.to_string(),
                        r.degree.to_string(),
                        r.sb.compact(),
                        r.clause.to_string(),
                    ]
                })
                .collect();
            let mut s = to_csv(&["param", "space", "n", "degree", "sb", "clause"], &rows);
            for f in &scan.footnotes {
                s.push_str(&format!("# {f}\n"));
            }
            s
        }
        OutputFormat::Latex => {
            let mut s = format!(
                "% {} over s = {}..{}\n\\begin{{tabular}}{{rlrrll}}\n\\hline\n\
                 $s$ & space & $n$ & $\\deg f$ & $S_B$ & clause \\\\\n\\hline\n",
                scan.family, scan.range[0], scan.range[1]
            );
            for r in &scan.rows {
                s.push_str(&format!(
                    "{} & {} & {} & {} & {} & {} \\\\\n",
                    r.param,
                    tex_text(&r.space),
                    r.n,
                    r.degree,
                    tex_sb(&r.sb),
                    r.clause
                ));
            }
            s.push_str("\\hline\n\\end{tabular}\n");
            for f in &scan.footnotes {
                s.push_str(&format!(
                    "\\par\\noindent{{\\footnotesize {}}}\n",
                    tex_text(f)
                ));
            }
            s
        }
        OutputFormat::Human => {
            let header = ["s", "space", "n", "degree", "S_B", "clause"];
            let body: Vec<[String; 6]> = scan
                .rows
                .iter()
                .map(|r| {
                    [
                        r.param.to_string(),
                        r.space.clone(),
                        r.n.to_string(),
                        r.degree.to_string(),
                        r.sb.compact(),
                        r.clause.to_string(),
                    ]
                })
                .collect();
            let mut widths = header.map(|h| h.chars().count());
            for row in &body {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let fmt_row = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut s = format!(
                "{} over s = {}..{}\n",
                scan.family, scan.range[0], scan.range[1]
            );
            s.push_str(&fmt_row(header.to_vec()));
            for row in &body {
                s.push_str(&fmt_row(row.iter().map(String::as_str).collect()));
            }
            for f in &scan.footnotes {
                s.push_str(&format!("* {f}\n"));
            }
            s
        }
    }
}

pub fn render_check(suite: &CheckSuite, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(&suite.diagnostics),
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = suite
                .diagnostics
                .iter()
                .map(|d| {
                    vec![
                        d.left.clone(),
                        d.right.clone(),
                        d.dim_left.to_string(),
                        d.dim_right.to_string(),
                        d.degree_left.to_string(),
                        d.degree_right.to_string(),
                        format!("{:?}", d.verdict),
                    ]
                })
                .collect();
            to_csv(
                &[
                    "left",
                    "right",
                    "dim_left",
                    "dim_right",
                    "degree_left",
                    "degree_right",
                    "verdict",
                ],
                &rows,
            )
        }
        OutputFormat::Latex => {
            let mut s = String::from(
                "\\begin{tabular}{llrrl}\n\\hline\n\
                 left & right & $n$ & $\\deg f$ & verdict \\\\\n\\hline\n",
            );
            for d in &suite.diagnostics {
                s.push_str(&format!(
                    "{} & {} & {} / {} & {} / {} & {:?} \\\\\n",
                    tex_text(&d.left),
                    tex_text(&d.right),
                    d.dim_left,
                    d.dim_right,
                    d.degree_left,
                    d.degree_right,
                    d.verdict
                ));
            }
            s.push_str("\\hline\n\\end{tabular}\n");
            s.push_str(&format!("% {}\n", suite.summary()));
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            for d in &suite.diagnostics {
                s.push_str(&format!(
                    "{:<16} dims {} / {}, degrees {} / {}: {:?}\n",
                    d.label(),
                    d.dim_left,
                    d.dim_right,
                    d.degree_left,
                    d.degree_right,
                    d.verdict
                ));
            }
            for dev in suite.deviations() {
                s.push_str(&format!("UNEXPECTED: {dev}\n"));
            }
            s.push_str(&suite.summary());
            s.push('\n');
            s
        }
    }
}

fn tex_text(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '_' | '&' | '%' | '$' | '#' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\^{}"),
            '≥' => out.push_str("$\\geq$"),
            '≤' => out.push_str("$\\leq$"),
            '≅' => out.push_str("$\\cong$"),
            '×' => out.push_str("$\\times$"),
            _ => out.push(c),
        }
    }
    out
}

fn tex_sb(sb: &SBResult) -> String {
    match sb {
        SBResult::Exact { value } => format!("${value}$"),
        SBResult::Range {
            lower,
            upper,
            refinement,
        } => {
            let refined = refinement.as_ref().map(|r| match &r.values {
                crate::atlas::RefinedValues::Set(vs) => {
                    let items: Vec<String> = vs.iter().map(ToString::to_string).collect();
                    format!(" \\to \\{{{}\\}}", items.join(","))
                }
                crate::atlas::RefinedValues::Interval { lower, upper } => {
                    format!(" \\to [{lower},{upper}]")
                }
            });
            format!("$[{lower},{upper}]{}$", refined.unwrap_or_default())
        }
    }
}
