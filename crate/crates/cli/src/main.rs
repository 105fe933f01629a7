use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpdim::FieldChoice;
use fpdim_cli::{execute, parse_tolerance, Command, Format, RunConfig, SpecSource, EXIT_INPUT};

/// Frobenius-Perron dimensions of bound quiver algebras.
#[derive(Parser)]
#[command(name = "fpdim", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension and path basis of the algebra.
    Basis(Opts),
    /// Frobenius-Perron dimension table.
    Fpd {
        #[command(flatten)]
        opts: Opts,
        /// Use the canonical-family classification for fpd(E1).
        #[arg(long)]
        classify: bool,
    },
    /// Decide fpd in {0, 1} for a canonical-family quotient.
    Classify(Opts),
    /// Run the invariant suites.
    Check {
        #[command(flatten)]
        opts: Opts,
        /// Number of random quotients for the monotonicity suite.
        #[arg(long, default_value_t = 3)]
        quotients: usize,
    },
    /// List the indecomposable catalog.
    Catalog(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Spec file (JSON).
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    spec: Option<PathBuf>,
    /// Built-in spec, e.g. a4, example-6.2-2, canonical-A:2,1/directed.
    #[arg(long)]
    builtin: Option<String>,
    /// Q or GF:p; overrides the spec file.
    #[arg(long)]
    field: Option<String>,
    #[arg(long = "max-path-len")]
    max_path_len: Option<usize>,
    /// Largest total dimension admitted into the catalog.
    #[arg(long = "max-dim", default_value_t = 64)]
    max_dim: usize,
    #[arg(long = "max-entries", default_value_t = 256)]
    max_entries: usize,
    #[arg(long, default_value_t = fpdim::fp::DEFAULT_MMAX)]
    mmax: usize,
    #[arg(long)]
    nmax: Option<usize>,
    /// Width of certified intervals.
    #[arg(long, default_value = "1e-9")]
    tol: String,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// What to print on standard output.
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn config(command: Command, opts: Opts) -> anyhow::Result<RunConfig> {
    let source = match (opts.spec, opts.builtin) {
        (Some(p), _) => SpecSource::Path(p),
        (None, Some(b)) => SpecSource::Builtin(b),
        (None, None) => anyhow::bail!("one of --spec or --builtin is required"),
    };
    let mut c = RunConfig::new(command, source);
    c.field = opts.field.as_deref().map(FieldChoice::parse).transpose()?;
    c.max_path_len = opts.max_path_len;
    c.max_dim = opts.max_dim;
    c.max_entries = opts.max_entries;
    c.mmax = opts.mmax;
    c.nmax = opts.nmax;
    c.tol = parse_tolerance(&opts.tol)?;
    c.out = opts.out;
    c.format = match opts.format {
        FormatArg::Table => Format::Table,
        FormatArg::Json => Format::Json,
    };
    // the environment wins over the flag
    c.seed = match std::env::var("FPDIM_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| anyhow::anyhow!("bad FPDIM_SEED `{s}`"))?,
        Err(_) => opts.seed,
    };
    c.jobs = opts.jobs;
    Ok(c)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let cfg = match cli.command {
        Cmd::Basis(o) => config(Command::Basis, o),
        Cmd::Fpd { opts, classify } => config(Command::Fpd, opts).map(|mut c| {
            c.classify = classify;
            c
        }),
        Cmd::Classify(o) => config(Command::Classify, o),
        Cmd::Check { opts, quotients } => config(Command::Check, opts).map(|mut c| {
            c.quotients = quotients;
            c
        }),
        Cmd::Catalog(o) => config(Command::Catalog, o),
    };
    let result = cfg.and_then(|c| execute(&c));
    match result {
        Ok((stdout, code)) => {
            let _ = std::io::stdout().write_all(stdout.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
