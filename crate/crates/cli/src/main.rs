mod args;
mod commands;
mod fixtures;
mod report;

use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command, Format, ReportCmd};

/// Caps rayon parallelism when `SECTORFACT_THREADS` is set.
fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SECTORFACT_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("SECTORFACT_THREADS={v:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")
}

/// Returns whether the report is free of violations.
fn real_main(cli: Cli) -> Result<bool> {
    if let Command::Fixture { name } = &cli.command {
        match name {
            None => println!("{}", fixtures::NAMES.join("\n")),
            Some(n) => print!("{}", fixtures::fixture(n).with_context(|| format!("no fixture named {n:?}"))?),
        }
        return Ok(true);
    }
    configure_threads()?;
    let refs: Option<BTreeMap<String, String>> = match &cli.common.paper_ref {
        None => None,
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(serde_json::from_str(&text).with_context(|| format!("{} is not an object of strings", p.display()))?)
        }
    };
    let mut report = commands::run(&cli.command)?;
    if let Some(r) = &refs {
        report.annotate(r);
    }
    let render = matches!(cli.command, Command::Report(ReportCmd::Render { .. }));
    if let Some(out) = &cli.common.out {
        std::fs::write(out, report.to_json()).with_context(|| format!("writing {}", out.display()))?;
    }
    if render || cli.common.format == Format::Text || cli.common.out.is_some() {
        print!("{}", report.render());
    } else {
        print!("{}", report.to_json());
    }
    Ok(report.valid)
}

fn main() -> ExitCode {
    match real_main(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
