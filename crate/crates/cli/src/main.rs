mod cache;
mod config;
mod job;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Result;
use clap::{Parser, ValueEnum};

use cache::{Cache, Lookup, ResultRecord};
use config::Config;
use job::{Command, JobSpec, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Filtrations, closures, growth and cobar cohomology of comodules over
/// coordinate algebras of affine groups in characteristic p.
#[derive(Debug, Parser)]
#[command(name = "cofilt", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Group, e.g. `Ga@p=2`, `GL:2@p=5`, `SL:3@p=2`
    #[arg(long)]
    group: String,
    /// Module expression, e.g. `sym(2, natural)` or `primitives`
    #[arg(long)]
    module: Option<String>,
    /// Comma-separated monomials spanning X (closure only)
    #[arg(long)]
    span: Option<String>,
    #[arg(long)]
    dmax: Option<u32>,
    /// Top cobar degree (cobar only, default 2)
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Cache directory; overrides the config file
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, conflicts_with = "cache")]
    no_cache: bool,
    /// Trailing window length for growth classification
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    max_ambient_dim: Option<usize>,
    #[arg(long)]
    max_ch_size: Option<usize>,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn run(cli: Cli) -> Result<String> {
    let config = Config::from_env()?;
    let limits = Limits {
        max_ambient_dim: cli.max_ambient_dim.unwrap_or(config.max_ambient_dim),
        max_ch_size: cli.max_ch_size.unwrap_or(config.max_ch_size),
        max_dmax: config.max_dmax,
    };
    let spec = JobSpec::canonical(
        cli.command,
        &cli.group,
        cli.module.as_deref(),
        cli.span.as_deref(),
        cli.dmax,
        cli.nmax,
        cli.window,
    )?;
    let fp = cache::fingerprint(&spec);
    let cache = match (cli.no_cache, cli.cache.or(config.cache_dir)) {
        (false, Some(dir)) => Some(Cache::new(&dir)),
        _ => None,
    };
    let hit = match cache.as_ref().map(|c| c.lookup(&fp, cofilt::VERSION)) {
        Some(Lookup::Hit(r)) => Some(*r),
        Some(Lookup::Stale(why)) => {
            eprintln!("warning: {why}; recomputing");
            None
        }
        Some(Lookup::Miss) | None => None,
    };
    let record = match hit {
        Some(r) => {
            eprintln!("cache hit {fp}");
            r
        }
        None => {
            let payload = job::run(&spec, limits)?;
            let record = ResultRecord {
                fingerprint: fp,
                engine_version: cofilt::VERSION.to_string(),
                timestamp: now(),
                job: spec,
                payload,
            };
            if let Some(c) = &cache {
                c.store(&record)?;
            }
            record
        }
    };
    match cli.format {
        Format::Json => output::json(&record),
        Format::Csv => output::csv(&record),
    }
}

/// 1 for bad input, 2 for a resource ceiling, 3 for a broken invariant.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<cofilt::Error>()) {
        Some(cofilt::Error::Resource { .. }) => 2,
        Some(cofilt::Error::Internal(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
