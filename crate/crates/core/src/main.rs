use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nested_arches::fpl::fpl_counts;
use nested_arches::linkpat::NestedArchSpec;
use nested_arches::loopmodel::ground_state_numeric;
use nested_arches::nested::{phi_det, phi_lgv, phi_schur_specialized, phi_subset, ParamSet};
use nested_arches::scalar::rational;
use nested_arches::tilings::{hexagon_count, region_from_text, WeightMode};
use nested_arches::verify::{emit, run_verify, Bounds, Format, SUITES};
use nested_arches::{CycloNum, Error, Result};

#[derive(Parser)]
#[command(name = "nested-arches", version, about = "Exact O(1) loop model components, lozenge tilings and FPL counts")]
struct Cli {
    #[arg(long, global = true, env = "NESTED_ARCHES_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Abort cleanly once this many seconds have passed.
    #[arg(long, global = true)]
    max_seconds: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Plane-partition partition function Φ_{a,b,c}.
    Phi(PhiArgs),
    /// Ground state of the loop model on 2n sites.
    Psi {
        #[arg(long)]
        n: usize,
        /// Comma-separated spectral parameters; seeded random integers if absent.
        #[arg(long)]
        z: Option<String>,
    },
    #[command(subcommand)]
    Tilings(TilingsCmd),
    #[command(subcommand)]
    Fpl(FplCmd),
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        abc: Option<usize>,
        #[arg(long)]
        draws: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Subset,
    Det,
    Lgv,
    Schur,
}

#[derive(Args)]
struct PhiArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    alphas: String,
    #[arg(long)]
    betas: String,
    #[arg(long)]
    gammas: String,
    #[arg(long, value_enum, default_value = "subset")]
    method: Method,
}

#[derive(Subcommand)]
enum TilingsCmd {
    Count {
        #[arg(long)]
        region: PathBuf,
    },
    Partition {
        #[arg(long)]
        region: PathBuf,
        /// Use `q u − q⁻¹ v` instead of `u − v`.
        #[arg(long)]
        q: bool,
    },
    /// Number of tilings of the a × b × c hexagon.
    Hexagon {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
    },
}

#[derive(Subcommand)]
enum FplCmd {
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "tsv")]
        json: bool,
        #[arg(long)]
        tsv: bool,
    },
}

fn values(s: &str) -> Result<Vec<CycloNum>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|v| v.trim().parse()).collect()
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn phi(args: &PhiArgs) -> Result<CycloNum> {
    let spec = NestedArchSpec::new(args.a, args.b, args.c);
    let p = ParamSet {
        alphas: values(&args.alphas)?,
        betas: values(&args.betas)?,
        gammas: values(&args.gammas)?,
    };
    match args.method {
        Method::Subset => phi_subset(spec, &p),
        Method::Det => phi_det(spec, &p),
        Method::Lgv => phi_lgv(spec, &p),
        Method::Schur => {
            let (Some(al), Some(be)) = (p.alphas.first(), p.betas.first()) else {
                return Err(Error::InconsistentSize("schur needs at least one alpha and one beta".into()));
            };
            if p.alphas.iter().any(|x| x != al) || p.betas.iter().any(|x| x != be) {
                return Err(Error::Precondition("schur needs all alphas equal and all betas equal".into()));
            }
            phi_schur_specialized(spec, al, be, &p.gammas)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let budget = cli.max_seconds.map(Duration::from_secs);
    match &cli.cmd {
        Cmd::Phi(args) => println!("{}", phi(args)?),
        Cmd::Psi { n, z } => {
            let z = match z {
                Some(s) => values(s)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    (0..2 * n).map(|_| CycloNum::from_base(rational(rng.gen_range(1..=1_000_000), 1))).collect()
                }
            };
            let report = ground_state_numeric(*n, &z)?.report();
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializes")),
                _ => {
                    for c in &report.components {
                        println!("{}\t{}", c.pattern, c.value);
                    }
                }
            }
        }
        Cmd::Tilings(t) => match t {
            TilingsCmd::Count { region } => {
                let r = region_from_text(&read(region)?)?;
                println!("{}", r.count_tilings());
            }
            TilingsCmd::Partition { region, q } => {
                let r = region_from_text(&read(region)?)?;
                let mode = if *q { WeightMode::QDifference } else { WeightMode::Difference };
                println!("{}", r.partition_function(mode));
            }
            TilingsCmd::Hexagon { a, b, c } => println!("{}", hexagon_count(*a, *b, *c)),
        },
        Cmd::Fpl(FplCmd::Census { n, json, tsv }) => {
            let census = fpl_counts(*n)?;
            if *json || (!*tsv && cli.format == Format::Json) {
                println!("{}", serde_json::to_string_pretty(&census).expect("serializes"));
            } else {
                print!("{}", census.to_tsv());
            }
        }
        Cmd::Verify { suite, n, abc, draws } => {
            let suites: Vec<&str> = match suite.as_str() {
                "all" => SUITES.to_vec(),
                "phi" => vec!["phi-cross"],
                s => vec![s],
            };
            let mut ok = true;
            for s in suites {
                let d = Bounds::default_for(s);
                let bounds = Bounds {
                    n: n.unwrap_or(d.n),
                    abc: abc.unwrap_or(d.abc),
                    draws: draws.unwrap_or(d.draws),
                };
                let report = run_verify(s, Some(bounds), cli.seed, budget)?;
                print!("{}", emit(&report, cli.format));
                ok &= report.passed();
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
