use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lpmwc::approx::{approx_solve, trivial_solve, ApproxConfig, Source, UtcConfig};
use lpmwc::exact::{solve_exact, DEFAULT_BUDGET};
use lpmwc::format::{InstanceFile, PartitionFile};
use lpmwc::instances::{
    gen_3partition, gen_bisection, gen_fig1, gen_mskp, gen_random, gen_star_meta, path_graph,
    Generated, RandomSpec,
};
use lpmwc::relax::{cp_objective, fractional_cuts, star_gap};
use lpmwc::report::{AlgorithmResult, FractionalReport, SolveReport};
use lpmwc::utc::{UtcMode, DEFAULT_MASS_FACTOR};
use lpmwc::{Edge, Error, Exponent, Graph, Instance, MultiwayCut};

#[derive(Parser)]
#[command(
    name = "lpmwc",
    version,
    about = "Minimum lp-norm multiway cut solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance to standard output.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Solve an instance file and print a JSON report.
    Solve(SolveArgs),
    /// Score a partition or fractional assignment against an instance.
    Eval {
        instance: PathBuf,
        partition: PathBuf,
    },
    /// Integrality gap of the convex relaxation on the k-leaf star.
    Gap {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Star {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "2")]
        p: String,
    },
    Fig1 {
        #[arg(long)]
        p: f64,
    },
    Bisection {
        #[command(flatten)]
        base: BaseGraph,
        #[arg(long = "C")]
        c: u64,
        #[arg(long)]
        p: f64,
    },
    #[command(name = "3partition")]
    ThreePartition {
        #[arg(long, value_delimiter = ',')]
        weights: Vec<f64>,
        #[arg(long = "B")]
        b: f64,
        #[arg(long)]
        p: f64,
    },
    Mskp {
        #[command(flatten)]
        base: BaseGraph,
        #[arg(long)]
        k: usize,
        #[arg(long = "B")]
        b: f64,
        #[arg(long, default_value = "2")]
        p: String,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1.0)]
        lo: f64,
        #[arg(long, default_value_t = 1.0)]
        hi: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "2")]
        p: String,
    },
}

/// Base graph for gadget kinds: `--n` vertices and `--edges u-v[:w],...`,
/// defaulting to the path on n vertices.
#[derive(Args)]
struct BaseGraph {
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',')]
    edges: Option<Vec<String>>,
}

impl BaseGraph {
    fn build(&self) -> Result<Graph, Error> {
        let Some(list) = &self.edges else {
            return Ok(path_graph(self.n));
        };
        let bad = |s: &str| Error::Parse {
            line: 0,
            msg: format!("bad edge '{s}' (want u-v or u-v:w)"),
        };
        let mut edges = Vec::new();
        for item in list {
            let (pair, w) = match item.split_once(':') {
                Some((pair, w)) => (pair, w.parse().map_err(|_| bad(item))?),
                None => (item.as_str(), 1.0),
            };
            let (u, v) = pair.split_once('-').ok_or_else(|| bad(item))?;
            edges.push(Edge {
                u: u.trim().parse().map_err(|_| bad(item))?,
                v: v.trim().parse().map_err(|_| bad(item))?,
                w,
            });
        }
        Graph::new(self.n, edges)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Exact,
    Trivial,
    Approx,
    Compare,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "compare")]
    algo: Algo,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Fixed β for the cover stage (overrides --beta-coeff).
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    beta_coeff: f64,
    #[arg(long, value_enum, default_value = "auto")]
    utc: UtcArg,
    #[arg(long, default_value_t = DEFAULT_MASS_FACTOR)]
    mass_factor: f64,
    /// Recorded in the report; every solver is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum UtcArg {
    Auto,
    Exact,
    Heuristic,
}

impl From<UtcArg> for UtcMode {
    fn from(a: UtcArg) -> Self {
        match a {
            UtcArg::Auto => UtcMode::Auto,
            UtcArg::Exact => UtcMode::Exact,
            UtcArg::Heuristic => UtcMode::Heuristic,
        }
    }
}

fn parse_exponent(s: &str) -> Result<Exponent, Error> {
    if s == "inf" {
        return Ok(Exponent::Infinity);
    }
    let p: f64 = s
        .parse()
        .map_err(|_| Error::InvalidP(format!("'{s}' is neither a number nor 'inf'")))?;
    Exponent::finite(p)
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn cmd_gen(kind: GenKind) -> Result<(), Error> {
    let generated: Generated = match kind {
        GenKind::Star { k, p } => gen_star_meta(k, parse_exponent(&p)?)?,
        GenKind::Fig1 { p } => gen_fig1(p)?,
        GenKind::Bisection { base, c, p } => gen_bisection(&base.build()?, c, p)?,
        GenKind::ThreePartition { weights, b, p } => gen_3partition(&weights, b, p)?,
        GenKind::Mskp { base, k, b, p } => gen_mskp(&base.build()?, k, b, parse_exponent(&p)?)?,
        GenKind::Random {
            n,
            k,
            density,
            lo,
            hi,
            seed,
            p,
        } => gen_random(&RandomSpec {
            n,
            k,
            density,
            weight_range: (lo, hi),
            seed,
            p: parse_exponent(&p)?,
        })?,
    };
    print!("{}", InstanceFile::from_generated(&generated).serialize());
    Ok(())
}

fn approx_config(args: &SolveArgs) -> ApproxConfig {
    ApproxConfig {
        beta_coeff: args.beta_coeff,
        beta: args.beta,
        utc: UtcConfig {
            mode: args.utc.into(),
            mass_factor: args.mass_factor,
        },
    }
}

struct Candidate {
    name: &'static str,
    cut: MultiwayCut,
    extra: SolveReport,
}

fn run_exact(inst: &Instance, budget: u128) -> Result<Candidate, Error> {
    let r = solve_exact(inst, budget)?;
    let mut rep = SolveReport::for_cut(inst, "exact", &r.optimum);
    rep.states_explored = Some(r.states_explored);
    Ok(Candidate {
        name: "exact",
        cut: r.optimum,
        extra: rep,
    })
}

fn run_trivial(inst: &Instance) -> Candidate {
    let t = trivial_solve(inst);
    let rep = SolveReport::for_cut(inst, "trivial", &t.cut);
    Candidate {
        name: "trivial",
        cut: t.cut,
        extra: rep,
    }
}

fn run_approx(inst: &Instance, cfg: &ApproxConfig) -> Result<Candidate, Error> {
    let r = approx_solve(inst, cfg)?;
    let mut rep = SolveReport::for_cut(inst, "approx", &r.cut);
    rep.certified = Some(r.certified);
    rep.d_grid = Some(r.runs.iter().map(|run| run.d).collect());
    rep.d_used = r.d_used;
    rep.details = Some(serde_json::json!({
        "source": r.source,
        "beta": r.beta,
        "mwu_sets": r.mwu_sets,
        "uncross_steps": r.uncross_steps,
        "lower_bound_p": r.lower_bound_p,
        "upper_bound_p": r.upper_bound_p,
        "trivial_objective": r.trivial_objective,
        "pipeline_won": r.source == Source::Pipeline,
        "runs": r.runs,
    }));
    Ok(Candidate {
        name: "approx",
        cut: r.cut,
        extra: rep,
    })
}

fn cmd_solve(args: SolveArgs) -> Result<(), Error> {
    let file = InstanceFile::parse(&read(&args.instance)?)?;
    let inst = &file.instance;
    let threshold = file.meta().and_then(|m| m.threshold);
    let cfg = approx_config(&args);

    let mut report = match args.algo {
        Algo::Exact | Algo::Trivial | Algo::Approx => {
            let start = Instant::now();
            let cand = match args.algo {
                Algo::Exact => run_exact(inst, args.budget)?,
                Algo::Trivial => run_trivial(inst),
                _ => run_approx(inst, &cfg)?,
            };
            let mut rep = cand.extra;
            rep.timings_ms.insert(cand.name.to_string(), millis(start));
            rep
        }
        Algo::Compare => {
            let mut results = Vec::new();
            let mut candidates = Vec::new();
            let mut timings = BTreeMap::new();
            type Runner<'a> = Box<dyn Fn() -> Result<Candidate, Error> + 'a>;
            let runners: Vec<(&str, Runner)> = vec![
                ("exact", Box::new(|| run_exact(inst, args.budget))),
                ("trivial", Box::new(|| Ok(run_trivial(inst)))),
                ("approx", Box::new(|| run_approx(inst, &cfg))),
            ];
            for (name, run) in runners {
                let start = Instant::now();
                let outcome = run();
                let ms = millis(start);
                timings.insert(name.to_string(), ms);
                match outcome {
                    Ok(c) => {
                        results.push(AlgorithmResult {
                            algorithm: name.to_string(),
                            objective: Some(c.extra.objective),
                            millis: ms,
                            ratio_vs_oracle: None,
                            error: None,
                        });
                        candidates.push(c);
                    }
                    Err(e) => results.push(AlgorithmResult {
                        algorithm: name.to_string(),
                        objective: None,
                        millis: ms,
                        ratio_vs_oracle: None,
                        error: Some(e.to_string()),
                    }),
                }
            }
            let oracle = candidates
                .iter()
                .find(|c| c.name == "exact")
                .map(|c| c.extra.objective);
            if let Some(opt) = oracle {
                for r in &mut results {
                    r.ratio_vs_oracle = r.objective.map(|o| ratio(o, opt));
                }
            }
            // trivial always succeeds, so there is at least one candidate
            let best = candidates
                .into_iter()
                .min_by(|a, b| a.extra.objective.total_cmp(&b.extra.objective))
                .expect("trivial candidate");
            let mut rep = SolveReport::for_cut(inst, best.name, &best.cut);
            rep.certified = best.extra.certified;
            rep.d_grid = best.extra.d_grid;
            rep.d_used = best.extra.d_used;
            rep.states_explored = best.extra.states_explored;
            rep.timings_ms = timings;
            rep.algorithms = results;
            rep
        }
    };
    if let Some(opt) = report
        .algorithms
        .iter()
        .find(|r| r.algorithm == "exact")
        .and_then(|r| r.objective)
    {
        report.ratio_vs_oracle = Some(ratio(report.objective, opt));
    }
    report.threshold = threshold;
    report.seed = args.seed;
    print_json(&report);
    Ok(())
}

fn ratio(value: f64, optimum: f64) -> f64 {
    if optimum == 0.0 {
        if value == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        value / optimum
    }
}

fn cmd_eval(instance: &Path, partition: &Path) -> Result<(), Error> {
    let file = InstanceFile::parse(&read(instance)?)?;
    let inst = &file.instance;
    match PartitionFile::parse(&read(partition)?)? {
        integral @ PartitionFile::Integral(_) => {
            let cut = integral.to_cut(inst)?;
            let mut rep = SolveReport::for_cut(inst, "eval", &cut);
            rep.threshold = file.meta().and_then(|m| m.threshold);
            print_json(&rep);
        }
        frac @ PartitionFile::Fractional(_) => {
            let x = frac.to_fractional(inst)?;
            let objective = cp_objective(inst, &x)?;
            print_json(&FractionalReport {
                p: inst.p.to_string(),
                objective,
                part_cuts: fractional_cuts(inst, &x),
                feasible: true,
            });
        }
    }
    Ok(())
}

fn cmd_gap(k: usize, p: f64) -> Result<(), Error> {
    print_json(&star_gap(k, p)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { kind } => cmd_gen(kind),
        Command::Solve(args) => cmd_solve(args),
        Command::Eval {
            instance,
            partition,
        } => cmd_eval(&instance, &partition),
        Command::Gap { k, p } => cmd_gap(k, p),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
