//! Command-line front end: argument parsing, caching and rendering.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod inputs;
pub mod report;

use clap::Parser;

use catcoh::{FieldSpec, PrimeField, Rationals};

use args::Cli;
use cache::{content_key, Cache};
use commands::{execute, Params};
use error::CliError;
use report::{render, Echo, Report, SCHEMA};

/// What the process should print and exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match run_cli(&cli) {
        Ok((report, out)) => Outcome { code: if report.ok() { 0 } else { 1 }, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn run_cli(cli: &Cli) -> Result<(Report, String), CliError> {
    let g = &cli.global;
    if g.nmax < 1 {
        return Err(CliError::Parse("--nmax must be at least 1".into()));
    }
    let spec = FieldSpec::parse(&g.field)?;
    let params = Params { n_max: g.nmax, r_max: g.rmax };
    let cacheable = !matches!(cli.command, args::Command::Validate(_) | args::Command::Build(_));
    let cache = g.cache_dir.as_deref().filter(|_| cacheable).map(Cache::new);
    let key = match &cache {
        Some(_) => Some(cache_key(cli, &spec)?),
        None => None,
    };
    let cached = match (&cache, &key) {
        (Some(c), Some(k)) => c.load(k)?,
        _ => None,
    };
    let report = match cached {
        Some(r) => r,
        None => {
            let r = match spec {
                FieldSpec::Prime(p) => execute(PrimeField::new(p)?, &cli.command, &params)?,
                FieldSpec::Rational => execute(Rationals, &cli.command, &params)?,
            };
            if let (Some(c), Some(k)) = (&cache, &key) {
                c.store(k, &r)?;
            }
            r
        }
    };
    let field = match spec {
        FieldSpec::Prime(p) => format!("F{p}"),
        FieldSpec::Rational => "Q".to_string(),
    };
    let out = render(&report, g.format, &Echo { field: &field, n_max: g.nmax, r_max: g.rmax });
    Ok((report, out))
}

fn cache_key(cli: &Cli, spec: &FieldSpec) -> Result<String, CliError> {
    let command = format!("{:?}", cli.command);
    let field = format!("{spec:?}");
    let n = cli.global.nmax.to_le_bytes();
    let r = cli.global.rmax.to_le_bytes();
    let files = inputs::input_paths(&cli.command).into_iter().map(|p| inputs::read(p)).collect::<Result<Vec<_>, _>>()?;
    let mut parts: Vec<&[u8]> = vec![SCHEMA.as_bytes(), command.as_bytes(), field.as_bytes(), &n, &r];
    parts.extend(files.iter().map(|f| f.as_slice()));
    Ok(content_key(&parts))
}
