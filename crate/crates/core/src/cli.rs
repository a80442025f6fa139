//! Command-line driver. Exit codes: 0 success, 1 verification or diff
//! failure (and I/O problems), 2 bad arguments or parameters.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::conditions::check;
use crate::conditions::srg_parameters_for;
use crate::constructions::{
    conference_to_etf, graphical_hadamard_complement_etf, graphical_hadamard_etf, harmonic_etf,
    mcfarland_difference_set, paley_conference, paley_difference_set, paley_graph, singer_difference_set,
    skew_conference, srg_to_real_etf, steiner_etf, steiner_from_geometry, steiner_pairs, steiner_triples,
    symmetric_from_skew, Geometry,
};
use crate::error::{Error, Result};
use crate::frames::{
    drop_one_transform, read_json, simplex_frame, to_json_string, verify_etf, FieldTag, Frame, DEFAULT_TOL,
};
use crate::registry::{self, Catalog};
use crate::tabulate::{self, build_table, diff_against_fixture};

#[derive(Parser, Debug)]
#[command(name = "etf", about = "Construct, verify and tabulate equiangular tight frames")]
struct Cli {
    /// Print the version to standard error before running.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a frame and write it as JSON.
    Construct(ConstructArgs),
    /// Check whether a frame file is an ETF; prints a JSON report.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the necessary existence conditions for an (m, n) pair.
    Check { m: u64, n: u64 },
    /// Print one of the existence tables.
    Table {
        #[arg(value_enum)]
        which: TableArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a generated table against a CSV file.
    Diff {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Dump the family registry as JSON.
    Registry {
        #[arg(long, value_enum, default_value_t = TableArg::Complex)]
        catalog: TableArg,
        #[arg(long, default_value_t = registry::TABLE_MAX_N / 2)]
        max_m: u64,
        #[arg(long, default_value_t = registry::TABLE_MAX_N)]
        max_n: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableArg {
    Real,
    Complex,
    Conference,
}

impl From<TableArg> for Catalog {
    fn from(t: TableArg) -> Self {
        match t {
            TableArg::Real => Catalog::Real,
            TableArg::Complex => Catalog::Complex,
            TableArg::Conference => Catalog::Conference,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Md,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// Harmonic ETF of the Paley difference set, `q = 3 mod 4`.
    Paley,
    /// Harmonic ETF of the Singer difference set of PG(m-1, q).
    Singer,
    /// Harmonic ETF of a McFarland difference set.
    Mcfarland,
    /// Steiner ETF of the complete graph on `v` points.
    SteinerPairs,
    /// Steiner ETF of a Steiner triple system on `v` points.
    SteinerTriples,
    /// Steiner ETF of the lines of AG(d, q).
    Affine,
    /// Steiner ETF of the lines of PG(d, q).
    Projective,
    /// Redundancy-two ETF of the Paley conference matrix of order `q + 1`.
    Conference,
    /// Redundancy-two complex ETF of a skew conference matrix of order `h = 2^t`.
    SkewConference,
    /// Real redundancy-two ETF from a symmetric conference matrix of order
    /// `(h-1)^2 + 1`.
    SymmetricFromSkew,
    /// Drop one vector from the skew Paley ETF, `q = 3 mod 4`.
    DropOne,
    /// Real ETF from the Paley graph on GF(q), `q = 1 mod 4`.
    PaleyGraph,
    /// Graphical Hadamard ETF of order `4^k`.
    Graphical,
    /// `m + 1` vectors in dimension `m`.
    Simplex,
    /// Any constructible registry label, given with `--label`.
    Registry,
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Field or group order.
    #[arg(long)]
    q: Option<u64>,
    /// Dimension (simplex) or projective dimension plus one (singer).
    #[arg(long)]
    m: Option<u64>,
    /// Geometry dimension or McFarland exponent.
    #[arg(long)]
    d: Option<u32>,
    /// Number of points of the Steiner system.
    #[arg(long)]
    v: Option<usize>,
    /// Order of the skew conference matrix.
    #[arg(long)]
    h: Option<usize>,
    /// Kronecker power of the graphical Hadamard matrix.
    #[arg(long)]
    k: Option<u32>,
    /// Registry label such as "SkewPaley(8)".
    #[arg(long)]
    label: Option<String>,
    /// Use the Naimark side for the graphical family.
    #[arg(long)]
    complement: bool,
    /// Scalar field for Steiner embeddings.
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    field: FieldArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Format(_) => Failure::Failed(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn need<T>(value: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this family")))
}

fn build(args: &ConstructArgs) -> std::result::Result<Frame, Failure> {
    let field = match args.field {
        FieldArg::Real => FieldTag::Real,
        FieldArg::Complex => FieldTag::Complex,
    };
    let frame: Result<Frame> = match args.family {
        Family::Paley => harmonic_etf(&paley_difference_set(need(args.q, "q")?)?),
        Family::Singer => harmonic_etf(&singer_difference_set(need(args.q, "q")?, need(args.m, "m")? as u32)?),
        Family::Mcfarland => harmonic_etf(&mcfarland_difference_set(need(args.q, "q")?, need(args.d, "d")?)?),
        Family::SteinerPairs => steiner_etf(&steiner_pairs(need(args.v, "v")?)?, field),
        Family::SteinerTriples => steiner_etf(&steiner_triples(need(args.v, "v")?)?, field),
        Family::Affine => steiner_etf(
            &steiner_from_geometry(Geometry::Affine, need(args.q, "q")?, need(args.d, "d")?)?,
            field,
        ),
        Family::Projective => steiner_etf(
            &steiner_from_geometry(Geometry::Projective, need(args.q, "q")?, need(args.d, "d")?)?,
            field,
        ),
        Family::Conference => conference_to_etf(&paley_conference(need(args.q, "q")?)?),
        Family::SkewConference => conference_to_etf(&skew_conference(need(args.h, "h")?)?),
        Family::SymmetricFromSkew => conference_to_etf(&symmetric_from_skew(&skew_conference(need(args.h, "h")?)?)?),
        Family::DropOne => drop_one_transform(&conference_to_etf(&paley_conference(need(args.q, "q")?)?)?),
        Family::PaleyGraph => {
            let q = need(args.q, "q")?;
            let m = q.div_ceil(2);
            let params = srg_parameters_for(m, q + 1)?;
            srg_to_real_etf(&paley_graph(q)?, &params, m as usize)
        }
        Family::Graphical if args.complement => graphical_hadamard_complement_etf(need(args.k, "k")?),
        Family::Graphical => graphical_hadamard_etf(need(args.k, "k")?),
        Family::Simplex => simplex_frame(need(args.m, "m")? as usize),
        Family::Registry => {
            let label = need(args.label.clone(), "label")?;
            let fd = registry::find(&label)
                .ok_or_else(|| Failure::Usage(format!("no registry family labelled {label:?}")))?;
            registry::try_construct(&fd)
        }
    };
    Ok(frame?)
}

fn execute(cli: Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Failed(e.to_string());
    match cli.command {
        Command::Construct(args) => {
            let frame = build(&args)?;
            match &args.out {
                Some(path) => crate::frames::write_json(&frame, path)?,
                None => out.write_all(to_json_string(&frame).as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
        Command::Verify { file, tol } => {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
            }
            let report = verify_etf(&read_json(&file)?, tol);
            let text = serde_json::to_string_pretty(&report).map_err(Error::from)?;
            writeln!(out, "{text}").map_err(io)?;
            Ok(if report.is_etf() { 0 } else { 1 })
        }
        Command::Check { m, n } => {
            let report = check(m, n)?;
            let text = serde_json::to_string_pretty(&report).map_err(Error::from)?;
            writeln!(out, "{text}").map_err(io)?;
            Ok(0)
        }
        Command::Table {
            which,
            format,
            out: path,
        } => {
            let rows = build_table(which.into());
            let text = match format {
                Format::Csv => tabulate::to_csv(&rows),
                Format::Md => tabulate::to_markdown(&rows),
                Format::Latex => tabulate::to_latex(&rows),
                Format::Json => tabulate::to_json(&rows) + "\n",
            };
            match path {
                Some(p) => std::fs::write(p, text).map_err(io)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
        Command::Diff { table, fixture } => {
            let catalog = match table {
                1 => Catalog::Real,
                2 => Catalog::Complex,
                _ => Catalog::Conference,
            };
            let diff = diff_against_fixture(&build_table(catalog), &fixture)?;
            if diff.is_empty() {
                writeln!(out, "table {table}: no differences").map_err(io)?;
                Ok(0)
            } else {
                write!(out, "{diff}").map_err(io)?;
                Ok(1)
            }
        }
        Command::Registry { catalog, max_m, max_n } => {
            let fds = registry::enumerate_families(max_m, max_n, catalog.into());
            writeln!(out, "{}", registry::to_json(&fds)).map_err(io)?;
            Ok(0)
        }
    }
}

/// Runs the CLI on `argv` (program name first), writing results to `out`
/// and diagnostics to `err`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if cli.verbose {
        let _ = writeln!(err, "etf {}", env!("CARGO_PKG_VERSION"));
    }
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
