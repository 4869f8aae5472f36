use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use opq_core::error::Error;
use opq_core::export::{growth_csv, ladder_export, lattice_export, parse_direction};
use opq_core::gkmod::{check_gates, gk_invariants};
use opq_core::module::ExtremalSpec;
use opq_core::report::{Format, RunConfig};
use opq_core::verify;

#[derive(Parser)]
#[command(
    name = "opq",
    version,
    about = "Exact verification of the o(p,q) operator realization and its (g,K)-modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    m: Option<u32>,
    /// Series degree for the ψ identities.
    #[arg(long)]
    depth: Option<u32>,
    /// Window on κ₊ + κ₋.
    #[arg(long)]
    window: Option<u32>,
    /// liealg, sl2, module, gkmod or all.
    #[arg(long)]
    suite: Option<String>,
    /// json, csv or figure.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random elements in the closed-form comparison.
    #[arg(long)]
    corpus: Option<usize>,
    /// key=value file; flags take precedence.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a report.
    Verify(Common),
    /// Export the K-type lattice with case classes and transition flags.
    Ktypes(Common),
    /// Graded dimensions, GK dimension and Bernstein degree.
    Gkdim(Common),
    /// Closed ladder power against iteration; text output unless `--format json` is given.
    Ladder {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 0)]
        mu: u32,
        #[arg(long, default_value_t = 1)]
        nu: u32,
        /// down: (X⁻)^ν on a highest weight vector; up: (X⁺)^ν on a lowest one.
        #[arg(long, default_value = "down")]
        direction: String,
    },
}

fn load(c: &Common) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &c.config {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{path}: {e}")))?;
        cfg.apply_kv(&text)?;
    }
    let pairs = [
        ("p", c.p.map(|v| v.to_string())),
        ("q", c.q.map(|v| v.to_string())),
        ("m", c.m.map(|v| v.to_string())),
        ("depth", c.depth.map(|v| v.to_string())),
        ("window", c.window.map(|v| v.to_string())),
        ("suite", c.suite.clone()),
        ("format", c.format.clone()),
        ("out", c.out.clone()),
        ("seed", c.seed.map(|v| v.to_string())),
        ("corpus", c.corpus.map(|v| v.to_string())),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), Error> {
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Config(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn unsupported(what: &str, f: Format) -> Error {
    Error::Config(format!("{what} does not support the {f:?} format").to_lowercase())
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify(c) => {
            let cfg = load(&c)?;
            let report = verify::run(&cfg)?;
            let text = match cfg.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Figure => return Err(unsupported("verify", cfg.format)),
            };
            emit(&cfg, &text)?;
            Ok(report.all_pass())
        }
        Command::Ktypes(c) => {
            let cfg = load(&c)?;
            check_gates(cfg.p, cfg.q, cfg.m)?;
            let e = lattice_export(cfg.p, cfg.q, cfg.m, cfg.window)?;
            let text = match cfg.format {
                Format::Json => e.to_json(),
                Format::Csv => e.to_csv(),
                Format::Figure => e.to_figure(),
            };
            emit(&cfg, &text)?;
            Ok(true)
        }
        Command::Gkdim(c) => {
            let cfg = load(&c)?;
            check_gates(cfg.p, cfg.q, cfg.m)?;
            let g = gk_invariants(cfg.p, cfg.q, cfg.m)?;
            let text = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&g).expect("serializes") + "\n",
                Format::Csv => growth_csv(&g),
                Format::Figure => return Err(unsupported("gkdim", cfg.format)),
            };
            emit(&cfg, &text)?;
            Ok(true)
        }
        Command::Ladder {
            common,
            k,
            l,
            mu,
            nu,
            direction,
        } => {
            let cfg = load(&common)?;
            let kind = parse_direction(&direction)?;
            let spec = ExtremalSpec {
                kind,
                ..ExtremalSpec::highest(cfg.p, cfg.q, k, l, mu)
            };
            let e = ladder_export(&spec, nu)?;
            let text = if cfg.format == Format::Json && common.format.is_some() {
                e.to_json()
            } else {
                e.to_text()
            };
            emit(&cfg, &text)?;
            Ok(e.agrees)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
