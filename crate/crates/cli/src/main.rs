use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mwnw::axioms::{
    check_ownership_lemma, run_checks, run_suite, search_group_manipulation, Check,
    ManipulationMode, SuiteConfig, SuiteReport, DEFAULT_MANIPULATION_BUDGET,
};
use mwnw::baselines::{max_utilitarian, round_robin, serial_dictatorship, weighted_leximin};
use mwnw::generate::{generate_instance, GENERATOR_ID};
use mwnw::{
    brute_force_mwnw_tie, parse_instance, parse_rational, solve_mwnw_tie, utility, Allocation,
    Instance, Rational, SizeGuard, UtilityVector,
};
use mwnw_cli::{pretty_table, reproduce};

const EXIT_USAGE: u8 = 1;
const EXIT_INVARIANT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mwnw",
    version,
    about = "Weighted Nash welfare allocation for binary valuations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the polynomial-time solver on an instance.
    Solve(InstanceArgs),
    /// Exhaustive search for the optimal utility vector (small instances).
    Oracle {
        #[command(flatten)]
        input: InstanceArgs,
        /// Maximum number of assignments to enumerate.
        #[arg(long, default_value_t = SizeGuard::default().max_search_space)]
        guard: u64,
    },
    /// Run a comparison rule.
    Baseline {
        name: BaselineName,
        #[command(flatten)]
        input: InstanceArgs,
        /// Enumeration limit for the leximin rule.
        #[arg(long, default_value_t = SizeGuard::default().max_search_space)]
        guard: u64,
    },
    /// Run property checks on one instance or on random instances.
    ///
    /// Positional arguments are the selector (ownership, resource,
    /// population, subset, gsp, strong-gsp, oracle-equiv or all) and
    /// optional key=value settings: seed, trials, n-max, m-max,
    /// max-coalition, guard, budget, weights.
    Check {
        #[arg(long, conflicts_with = "random")]
        instance: Option<PathBuf>,
        /// Generate random instances instead of reading one.
        #[arg(long)]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        max_coalition: Option<usize>,
        #[arg(long)]
        guard: Option<u64>,
        /// Comma-separated weight pool for random instances.
        #[arg(long)]
        weights: Option<String>,
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
    },
    /// Search for a profitable coalition misreport.
    Manipulate {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, default_value_t = 2)]
        max_coalition: usize,
        #[arg(long, value_enum, default_value_t = Mode::StrongGsp)]
        mode: Mode,
        /// Maximum number of reported instances to solve.
        #[arg(long, default_value_t = DEFAULT_MANIPULATION_BUDGET)]
        budget: u64,
    },
    /// Print a seeded random instance. Settings may also be given as
    /// key=value arguments (seed, n, m, p, weights).
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'n', long = "agents", default_value_t = 3)]
        n: usize,
        #[arg(short = 'm', long = "goods", default_value_t = 5)]
        m: usize,
        /// Probability that an agent values a good.
        #[arg(short = 'p', long = "density", default_value_t = 0.5)]
        p: f64,
        /// Comma-separated weight pool.
        #[arg(long, default_value = "1")]
        weights: String,
        #[arg(long)]
        pretty: bool,
        settings: Vec<String>,
    },
    /// Re-run the built-in worked examples and compare with known results.
    ReproducePaper,
}

#[derive(clap::Args)]
struct InstanceArgs {
    /// Instance JSON file, or `-` for standard input.
    #[arg(long)]
    instance: PathBuf,
    /// Human-readable table instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineName {
    SerialDictatorship,
    RoundRobin,
    Utilitarian,
    Leximin,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Gsp,
    StrongGsp,
}

/// A failed command: exit status plus message for standard error.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn read_instance(path: &PathBuf) -> Result<Instance, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    parse_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_pool(text: &str) -> Result<Vec<Rational>, Failure> {
    let pool = text
        .split(',')
        .map(|s| {
            parse_rational(s.trim())
                .filter(|w| *w > Rational::from_integer(0.into()))
                .ok_or_else(|| usage(format!("invalid weight {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(pool)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Failure> {
    value
        .parse()
        .map_err(|_| usage(format!("invalid value {value:?} for {key}")))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn emit_allocation(inst: &Instance, alloc: &Allocation, u: &UtilityVector, pretty: bool) {
    if pretty {
        print!("{}", pretty_table(inst, alloc, u));
    } else {
        let mut v = alloc.to_json_value(inst);
        v["utilities"] = json!(u);
        print_json(&v);
    }
}

fn cmd_solve(input: &InstanceArgs) -> CmdResult {
    let inst = read_instance(&input.instance)?;
    let alloc = solve_mwnw_tie(&inst).map_err(|e| Failure(EXIT_INVARIANT, e.to_string()))?;
    if !check_ownership_lemma(&inst, &alloc) {
        return Err(Failure(
            EXIT_INVARIANT,
            format!(
                "internal error: solver output violates bundle ownership: {}",
                alloc.to_json(&inst)
            ),
        ));
    }
    let u = utility(&inst, &alloc).map_err(|e| Failure(EXIT_INVARIANT, e.to_string()))?;
    emit_allocation(&inst, &alloc, &u, input.pretty);
    Ok(0)
}

fn cmd_oracle(input: &InstanceArgs, guard: u64) -> CmdResult {
    let inst = read_instance(&input.instance)?;
    let (alloc, u) = brute_force_mwnw_tie(&inst, SizeGuard::new(guard))?;
    emit_allocation(&inst, &alloc, &u, input.pretty);
    Ok(0)
}

fn cmd_baseline(name: BaselineName, input: &InstanceArgs, guard: u64) -> CmdResult {
    let inst = read_instance(&input.instance)?;
    let alloc = match name {
        BaselineName::SerialDictatorship => serial_dictatorship(&inst),
        BaselineName::RoundRobin => round_robin(&inst),
        BaselineName::Utilitarian => max_utilitarian(&inst),
        BaselineName::Leximin => weighted_leximin(&inst, SizeGuard::new(guard))?,
    };
    let u = utility(&inst, &alloc)?;
    emit_allocation(&inst, &alloc, &u, input.pretty);
    Ok(0)
}

fn cmd_manipulate(
    input: &InstanceArgs,
    max_coalition: usize,
    mode: Mode,
    budget: u64,
) -> CmdResult {
    let inst = read_instance(&input.instance)?;
    let mode = match mode {
        Mode::Gsp => ManipulationMode::Gsp,
        Mode::StrongGsp => ManipulationMode::StrongGsp,
    };
    let found = search_group_manipulation(&inst, max_coalition, mode, budget)?;
    let v = json!({ "witness": found.map(|w| w.to_json_value()) });
    if input.pretty {
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        );
    } else {
        print_json(&v);
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    mut seed: u64,
    mut n: usize,
    mut m: usize,
    mut p: f64,
    mut weights: String,
    pretty: bool,
    settings: &[String],
) -> CmdResult {
    for s in settings {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, got {s:?}")))?;
        match k {
            "seed" => seed = parse_value(k, v)?,
            "n" => n = parse_value(k, v)?,
            "m" => m = parse_value(k, v)?,
            "p" | "density" => p = parse_value(k, v)?,
            "weights" => weights = v.to_string(),
            _ => return Err(usage(format!("unknown setting {k:?}"))),
        }
    }
    let pool = parse_pool(&weights)?;
    let inst = generate_instance(seed, n, m, p, &pool)?;
    if pretty {
        let v: Value = serde_json::from_str(&inst.to_json())?;
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("{}", inst.to_json());
    }
    Ok(0)
}

struct CheckArgs<'a> {
    instance: Option<&'a PathBuf>,
    seed: Option<u64>,
    trials: Option<usize>,
    max_coalition: Option<usize>,
    guard: Option<u64>,
    weights: Option<&'a str>,
    args: &'a [String],
}

fn check_config(a: &CheckArgs) -> Result<SuiteConfig, Failure> {
    let mut config = SuiteConfig::default();
    let mut selector = None;
    if let Some(s) = a.seed {
        config.seed = s;
    }
    if let Some(t) = a.trials {
        config.trials = t;
    }
    if let Some(k) = a.max_coalition {
        config.max_coalition = k;
    }
    if let Some(g) = a.guard {
        config.guard = SizeGuard::new(g);
    }
    if let Some(w) = a.weights {
        config.weight_pool = parse_pool(w)?;
    }
    for arg in a.args {
        let Some((k, v)) = arg.split_once('=') else {
            if selector.replace(arg.as_str()).is_some() {
                return Err(usage("more than one selector given"));
            }
            continue;
        };
        match k {
            "seed" => config.seed = parse_value(k, v)?,
            "trials" => config.trials = parse_value(k, v)?,
            "n-max" => config.agents.1 = parse_value(k, v)?,
            "m-max" => config.goods.1 = parse_value(k, v)?,
            "max-coalition" => config.max_coalition = parse_value(k, v)?,
            "guard" => config.guard = SizeGuard::new(parse_value(k, v)?),
            "budget" => config.manipulation_budget = parse_value(k, v)?,
            "weights" => config.weight_pool = parse_pool(v)?,
            _ => return Err(usage(format!("unknown setting {k:?}"))),
        }
    }
    let selector = selector.ok_or_else(|| usage("missing check selector"))?;
    config.checks = Check::parse_selector(selector)?;
    if config.max_coalition == 0 {
        return Err(usage("max-coalition must be positive"));
    }
    Ok(config)
}

fn cmd_check(a: CheckArgs) -> CmdResult {
    let config = check_config(&a)?;
    let report = match a.instance {
        None => run_suite(&config)?,
        Some(path) => {
            let inst = read_instance(path)?;
            let start = std::time::Instant::now();
            config.validate()?;
            let input = config.instance_input(config.seed, inst);
            let (failures, witnesses, skipped) = run_checks(&config, config.seed, &input);
            SuiteReport {
                trials: 1,
                seed: config.seed,
                generator: GENERATOR_ID,
                failures,
                witnesses,
                skipped,
                elapsed: start.elapsed(),
            }
        }
    };
    println!("{}", report.to_json());
    if report.passed() {
        return Ok(0);
    }
    for f in &report.failures {
        eprintln!("failed {} check; replay with seed {}", f.kind, f.seed);
    }
    Ok(EXIT_INVARIANT)
}

fn cmd_reproduce() -> CmdResult {
    let items = reproduce::run_items(&solve_mwnw_tie);
    print!("{}", reproduce::render(&items));
    let failed: Vec<String> = items
        .iter()
        .filter(|i| !i.passed())
        .map(|i| format!("({})", i.label))
        .collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        Err(Failure(
            EXIT_MISMATCH,
            format!("mismatched items: {}", failed.join(" ")),
        ))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Solve(input) => cmd_solve(&input),
        Command::Oracle { input, guard } => cmd_oracle(&input, guard),
        Command::Baseline { name, input, guard } => cmd_baseline(name, &input, guard),
        Command::Check {
            instance,
            random: _,
            seed,
            trials,
            max_coalition,
            guard,
            weights,
            args,
        } => cmd_check(CheckArgs {
            instance: instance.as_ref(),
            seed,
            trials,
            max_coalition,
            guard,
            weights: weights.as_deref(),
            args: &args,
        }),
        Command::Manipulate {
            input,
            max_coalition,
            mode,
            budget,
        } => cmd_manipulate(&input, max_coalition, mode, budget),
        Command::Gen {
            seed,
            n,
            m,
            p,
            weights,
            pretty,
            settings,
        } => cmd_gen(seed, n, m, p, weights, pretty, &settings),
        Command::ReproducePaper => cmd_reproduce(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
