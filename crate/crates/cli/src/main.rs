use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use diffcoh::random::DEFAULT_SEED;
use diffcoh_cli::commands::{self, Method};
use diffcoh_cli::examples::{self, ExampleArgs, EXAMPLES};
use diffcoh_cli::scenario::{parse_graded, parse_scenario, Scenario};
use diffcoh_cli::{emit, selftest, CliError, Format, ReportTable};

#[derive(Parser)]
#[command(name = "diffcoh", version, about = "Difference group cohomology over finite fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a scenario describes a valid difference module.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Group cohomology H^j(G, M) with the induced sigma-action.
    Cohomology {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Difference cohomology H^j_sigma(G, M).
    Diffcoh {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Stable cohomology: the colimit of H^j(G, M^(i)) along restriction.
    Stable {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Compare H^j_sigma(G, M^inf) with H^(j-1)_st(G, M) by independent routes.
    #[command(name = "induced-stable", alias = "thm38")]
    InducedStable {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Run the task named in a scenario file.
    Run {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Difference cohomology of a graded G_m-module.
    Gm {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// H^j_sigma(G_a, F_p) with the Frobenius.
    GaExample {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        #[arg(long, default_value_t = 12)]
        trunc: u32,
    },
    /// Built-in worked examples; without a name, list them.
    Examples {
        name: Option<String>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        t: Option<i64>,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Randomized route comparison, negative controls, algebraic laws and golden examples.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

const DEFAULT_JMAX: usize = 6;
const DEFAULT_INDUCED_JMAX: usize = 4;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    parse_scenario(&read(path)?)
}

fn run_task(scenario: &Scenario, task: &str, jmax: Option<usize>, method: Method) -> Result<ReportTable, CliError> {
    let built = scenario.build()?;
    let jmax = jmax.or(scenario.jmax);
    match task {
        "validate" => commands::validate(&built.module),
        "cohomology" => commands::group_cohomology(&built.module, jmax.unwrap_or(DEFAULT_JMAX)),
        "diffcoh" => commands::difference_cohomology(&built.module, jmax.unwrap_or(DEFAULT_JMAX), method),
        "oracle" => commands::difference_cohomology(&built.module, jmax.unwrap_or(DEFAULT_JMAX), Method::Both),
        "stable" => commands::stable(&built.module.base, jmax.unwrap_or(DEFAULT_JMAX)),
        "induced-stable" | "thm38" => {
            commands::induced_stable(&built.module.base, jmax.unwrap_or(DEFAULT_INDUCED_JMAX))
        }
        other => Err(CliError::Scenario {
            path: "task".into(),
            message: format!(
                "unknown task {other:?}; expected validate, cohomology, diffcoh, oracle, stable or induced-stable"
            ),
        }),
    }
}

fn execute(command: Command) -> Result<ReportTable, CliError> {
    match command {
        Command::Validate { scenario } => run_task(&load(&scenario)?, "validate", None, Method::Both),
        Command::Cohomology { scenario, jmax } => run_task(&load(&scenario)?, "cohomology", jmax, Method::Both),
        Command::Diffcoh { scenario, jmax, method } => run_task(&load(&scenario)?, "diffcoh", jmax, method),
        Command::Stable { scenario, jmax } => run_task(&load(&scenario)?, "stable", jmax, Method::Both),
        Command::InducedStable { scenario, jmax } => run_task(&load(&scenario)?, "induced-stable", jmax, Method::Both),
        Command::Run { scenario } => {
            let s = load(&scenario)?;
            let task = s.task.clone().unwrap_or_else(|| "diffcoh".into());
            run_task(&s, &task, None, Method::Both)
        }
        Command::Gm { scenario } => commands::gm(&parse_graded(&read(&scenario)?)?.build()?),
        Command::GaExample { p, jmax, trunc } => commands::ga_example(p, jmax, trunc),
        Command::Examples { name: None, .. } => {
            let mut t = ReportTable::new("built-in examples");
            for (name, aliases, about) in EXAMPLES {
                t.notes.push(format!("{name} (alias {}): {about}", aliases.join(", ")));
            }
            Ok(t)
        }
        Command::Examples {
            name: Some(name),
            p,
            t,
            jmax,
            trunc,
        } => examples::run(&name, ExampleArgs { p, t, jmax, trunc }),
        Command::Selftest { .. } => unreachable!("handled in main"),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Selftest { seed } = cli.command {
        let report = selftest::run(seed);
        print!("{}", report.render());
        return match &report.failure {
            None => {
                println!("selftest passed");
                ExitCode::SUCCESS
            }
            Some(e) => fail(e),
        };
    }
    match execute(cli.command) {
        Ok(table) => {
            print!("{}", emit(&table, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
