use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use skewpbw_cli::report::render_text;
use skewpbw_cli::runner::{run, CommandKind, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Classify,
    Audit,
    Pbw,
    Topo,
    All,
}

impl From<Command> for CommandKind {
    fn from(c: Command) -> CommandKind {
        match c {
            Command::Classify => CommandKind::Classify,
            Command::Audit => CommandKind::Audit,
            Command::Pbw => CommandKind::Pbw,
            Command::Topo => CommandKind::Topo,
            Command::All => CommandKind::All,
        }
    }
}

/// Exhaustive ring-theoretic classification, theorem audits, skew PBW
/// extension probes and spectral topology over a corpus file.
#[derive(Parser, Debug)]
#[command(name = "skewpbw", version, about)]
struct Cli {
    /// What to run.
    #[arg(value_enum)]
    command: Command,

    /// Corpus file; the bundled default corpus is used when omitted.
    corpus: Option<PathBuf>,

    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed for sampled probes and the audit's random subsets.
    #[arg(long)]
    seed: Option<u64>,

    /// Largest ring order admitted to lattice enumeration.
    #[arg(long = "ring-cap")]
    ring_cap: Option<usize>,

    /// Total-degree bound for probe candidates.
    #[arg(long = "probe-degree")]
    probe_degree: Option<u32>,

    /// Cap on probe product evaluations.
    #[arg(long = "probe-budget")]
    probe_budget: Option<u64>,

    /// Worker threads; the report bytes do not depend on this.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let corpus = match &cli.corpus {
        None => skewpbw_cli::load_default(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match skewpbw_cli::parse_corpus(&text) {
                Ok(file) => skewpbw_cli::resolve(&file),
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            }
        }
    };

    let mut cfg = RunConfig::default().merged_with_corpus(&corpus);
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(cap) = cli.ring_cap {
        cfg.ring_cap = cap;
    }
    if let Some(d) = cli.probe_degree {
        cfg.probe_degree = d;
    }
    if let Some(b) = cli.probe_budget {
        cfg.probe_budget = b;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }

    let report = run(&corpus, cli.command.into(), &cfg);

    print!("{}", render_text(&report));

    if let Some(out) = &cli.out {
        if let Err(e) = std::fs::write(out, report.to_json_string()) {
            eprintln!("cannot write {}: {e}", out.display());
            return ExitCode::from(2);
        }
    }

    if report.status == "ok" {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
