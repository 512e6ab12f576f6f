use bordcat::cli::{cmd_cohomology, cmd_gauge, cmd_verify, exit_code, parse_ratio, GaugeTarget, Input, Options, PairSpec, RunReport, Scope, Suite};
use bordcat::exactalg::{set_enumeration_cap, FinAbGroup};
use bordcat::{Error, Result};
use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

/// Relative cohomology backgrounds and gauging of finite abelian higher-form
/// symmetries on triangulated manifolds.
///
/// Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 enumeration
/// cap exceeded.
#[derive(Parser)]
#[command(name = "bordcat", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient group, e.g. Z2 or Z2xZ4.
    #[arg(long, global = true, default_value = "Z2")]
    coeff: String,
    /// Form degree of the symmetry.
    #[arg(long, global = true, default_value_t = 0)]
    q: usize,
    /// Weight of the outgoing end in the gauging normalization: 0, 1 or 0.5.
    #[arg(long, global = true, default_value = "0.5")]
    s: String,
    /// Largest group enumerated; BORDCAT_CAP overrides.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit the report as CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Use random sections seeded by this value instead of lex-min ones.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology group of a library manifold or manifold file.
    Cohomology {
        /// Library name or path of a manifold JSON file.
        manifold: String,
        #[arg(long)]
        deg: usize,
        /// absolute, boundary, triangulation or dual.
        #[arg(long)]
        pair: Option<String>,
        /// Also print generating cocycles.
        #[arg(long)]
        representatives: bool,
    },
    /// Gauge a theory and evaluate it on a closed manifold or a bordism.
    Gauge {
        /// Theory to gauge; `trivial` is built in.
        theory: String,
        /// Closed manifold: library name or manifold file.
        #[arg(long, required_unless_present = "bordism", conflicts_with = "bordism")]
        manifold: Option<String>,
        /// identity, pants, copants, bent-in, bent-out, disk-in or disk-out.
        #[arg(long, requires = "slice")]
        bordism: Option<String>,
        /// Slice the bordism is built over: library name or manifold file.
        #[arg(long)]
        slice: Option<String>,
        /// Dual backgrounds to evaluate at: A=0, A=1,0 or all.
        #[arg(long)]
        refined: Option<String>,
        /// Also gauge the dual symmetry of the gauged theory.
        #[arg(long)]
        double: bool,
    },
    /// Run a verification suite: axioms, sequences, gauging, double-gauge or delta.
    Verify {
        suite: String,
        /// small or full.
        #[arg(long)]
        fixtures: Option<String>,
        #[arg(long)]
        manifold: Vec<String>,
        /// Slice for the suites that need one (default circle).
        #[arg(long)]
        sigma: Option<String>,
    },
}

fn options(g: &Global) -> Result<Options> {
    let cap = match std::env::var("BORDCAT_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("BORDCAT_CAP=`{v}`")))?,
        Err(_) => g.cap,
    };
    set_enumeration_cap(cap);
    Ok(Options { coeff: FinAbGroup::parse(&g.coeff)?, q: g.q, s: parse_ratio(&g.s)?, seed: g.seed })
}

fn run(cli: &Cli) -> Result<RunReport> {
    let opts = options(&cli.global)?;
    match &cli.command {
        Command::Cohomology { manifold, deg, pair, representatives } => {
            let pair = pair.as_deref().map(str::parse::<PairSpec>).transpose()?;
            cmd_cohomology(&Input::resolve(manifold)?, *deg, pair, &opts, *representatives)
        }
        Command::Gauge { theory, manifold, bordism, slice, refined, double } => {
            let target = match (manifold, bordism, slice) {
                (Some(m), _, _) => GaugeTarget::Closed(Input::resolve(m)?),
                (None, Some(b), Some(s)) => GaugeTarget::Bordism { name: b.clone(), slice: Input::resolve(s)? },
                _ => return Err(Error::Invalid("gauge needs --manifold or --bordism with --slice".into())),
            };
            cmd_gauge(theory, &target, refined.as_deref(), *double, &opts)
        }
        Command::Verify { suite, fixtures, manifold, sigma } => {
            let scope = Scope {
                fixtures: fixtures.clone(),
                manifolds: manifold.iter().map(|m| Input::resolve(m)).collect::<Result<_>>()?,
                sigma: sigma.as_deref().map(Input::resolve).transpose()?,
            };
            cmd_verify(suite.parse::<Suite>()?, &scope, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = if cli.global.json {
                Ok(report.to_json() + "\n")
            } else if cli.global.csv {
                report.to_csv()
            } else {
                Ok(report.to_text())
            };
            match out {
                Ok(s) => print!("{s}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
