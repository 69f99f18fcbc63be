use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hodgehh::error::{exit_status, CliError, CliResult};
use hodgehh::format::parse_ring;
use hodgehh::jobs::{self, AlgebraJob, Context, ModuleChoice};
use hodgehh::report::Report;
use hodgehh::space::Space;
use hodgehh_core::budget::Budget;

#[derive(Parser)]
#[command(name = "hodgehh", version, about = "Exact chain-level Hodge filtrations on Loday constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest arity accepted for truncated powers.
    #[arg(long, global = true)]
    max_arity: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Algebra file, or `corpus:NAME` for a built-in algebra.
    #[arg(long)]
    algebra: String,
    /// Z, Q or Fp(p); overrides the RING line of the file.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Largest weight kept; defaults to (max degree + 2) times the top basis weight.
    #[arg(long)]
    max_weight: Option<u32>,
}

impl AlgebraArgs {
    fn job(&self) -> CliResult<AlgebraJob> {
        Ok(AlgebraJob {
            algebra: self.algebra.clone(),
            ring: self.ring.as_deref().map(parse_ring).transpose()?,
            max_degree: self.max_degree,
            max_weight: self.max_weight,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild homology (the Loday construction over the circle).
    Hh(AlgebraArgs),
    /// Homology of the Loday construction over a space.
    Loday {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "circle")]
        space: String,
    },
    /// The Loday construction with coefficients in a module at the basepoint.
    LodayCoeff {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "circle")]
        space: String,
        /// `free`, `augmentation`, or a module file.
        #[arg(long, default_value = "augmentation")]
        module: String,
    },
    /// Homology of every filtration stage, layer and quotient.
    Filtration {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "circle")]
        space: String,
    },
    /// A layer of the truncated-power tower with its symmetric group action.
    Layers {
        #[arg(long, default_value = "circle")]
        space: String,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        level: usize,
        /// Also compute the degree-r map on the layer (circle only).
        #[arg(long, allow_hyphen_values = true)]
        adams: Option<i64>,
    },
    /// Adams operations on Hochschild homology over Q.
    Adams {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 2)]
        r: u64,
        /// Also check that the r-th and s-th operations compose to the rs-th.
        #[arg(long)]
        s: Option<u64>,
    },
    /// Hodge decomposition of Hochschild homology over Q.
    HodgeQ(AlgebraArgs),
    /// Twisted subdivision of a space, with an optional nerve comparison sweep.
    Tw {
        #[arg(long, default_value = "simplex:1")]
        space: String,
        #[arg(long, default_value_t = 3)]
        top: usize,
        /// Also compare twisted nerves on all categories with at most this many objects and arrows, e.g. 3,4.
        #[arg(long, value_parser = parse_pair)]
        nerve_corpus: Option<(usize, usize)>,
    },
    /// End, Kan extension and coend identities over a category corpus.
    #[command(name = "check-section2")]
    CheckIdentities {
        #[arg(long, default_value = "small")]
        corpus: String,
    },
    /// Truncated powers against the bounded subcomplexes of the full power.
    #[command(name = "check-prop44")]
    CheckModel {
        #[arg(long, default_value = "circle")]
        space: String,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
    /// Layer identification for the circle: concentration, sign action, rank ladder, Adams scalars.
    #[command(name = "check-prop61")]
    CheckLayers {
        #[arg(long, default_value_t = 3)]
        max_level: usize,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected OBJECTS,ARROWS")?;
    Ok((a.trim().parse().map_err(|_| "bad object count")?, b.trim().parse().map_err(|_| "bad arrow count")?))
}

fn budget(max_arity: Option<usize>) -> CliResult<Budget> {
    let mut budget = match std::env::var("HODGEHH_BUDGET_MB") {
        Ok(v) => Budget::with_memory_mb(v.parse().map_err(|_| CliError::Validation(format!("HODGEHH_BUDGET_MB={v:?} is not a number")))?),
        Err(_) => Budget::default(),
    };
    if let Some(m) = max_arity {
        budget.max_arity = m;
    }
    Ok(budget)
}

fn emit(report: &impl Report, cli: &Cli) -> CliResult<bool> {
    let mut text = match cli.format {
        Format::Json => serde_json::to_string_pretty(report).map_err(|e| CliError::Validation(e.to_string()))?,
        Format::Csv => report.csv(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(report.passed())
}

fn run(cli: &Cli) -> CliResult<bool> {
    let ctx = Context { budget: budget(cli.max_arity)?, threads: cli.threads };
    match &cli.command {
        Command::Hh(a) => emit(&jobs::hh(&ctx, &a.job()?)?, cli),
        Command::Loday { algebra, space } => emit(&jobs::loday(&ctx, &algebra.job()?, &Space::parse(space)?)?, cli),
        Command::LodayCoeff { algebra, space, module } => {
            let module = match module.as_str() {
                "free" => ModuleChoice::Free,
                "augmentation" => ModuleChoice::Augmentation,
                path => ModuleChoice::File(path.to_string()),
            };
            emit(&jobs::loday_coeff(&ctx, &algebra.job()?, &Space::parse(space)?, &module)?, cli)
        }
        Command::Filtration { algebra, space } => emit(&jobs::filtration(&ctx, &algebra.job()?, &Space::parse(space)?)?, cli),
        Command::Layers { space, arity, level, adams } => emit(&jobs::layers(&ctx, &Space::parse(space)?, *arity, *level, *adams)?, cli),
        Command::Adams { algebra, r, s } => emit(&jobs::adams(&ctx, &algebra.job()?, *r, *s)?, cli),
        Command::HodgeQ(a) => emit(&jobs::hodge_q(&ctx, &a.job()?)?, cli),
        Command::Tw { space, top, nerve_corpus } => emit(&jobs::tw(&ctx, &Space::parse(space)?, *top, *nerve_corpus)?, cli),
        Command::CheckIdentities { corpus } => emit(&jobs::check_identities(&ctx, corpus)?, cli),
        Command::CheckModel { space, arity } => emit(&jobs::check_model(&ctx, &Space::parse(space)?, *arity)?, cli),
        Command::CheckLayers { max_level } => emit(&jobs::check_layers(&ctx, *max_level)?, cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    match &outcome {
        Ok(true) => {}
        Ok(false) => eprintln!("{}", json!({ "error": "check_failed", "message": "a checked property did not hold; see the report" })),
        Err(e) => eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() })),
    }
    ExitCode::from(exit_status(&outcome))
}
