use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use distcolor::coloring::{
    check_choosable, list_color, two_distance_chromatic, verify_coloring, ChoosabilityMode, ChoosabilityVerdict,
    Color, ListAssignment, Radius, SizeProfile, Verdict,
};
use distcolor::density::mad_exact;
use distcolor::discharging::{certify_nonnegative, check_equation_1, run_discharging};
use distcolor::gadgets::{build_gadget, cross_check_procedure, verify_gadget, GadgetId};
use distcolor::generators::{from_spec, random_sparse};
use distcolor::graph::{girth, parse_edge_list, square};
use distcolor::reducibility::{
    analyze, color_constructive_with, find_configuration, ConstructiveError, ConstructiveOptions,
};
use distcolor::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "distcolor", version, about = "2-distance list coloring toolkit")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Edge-list file, or `-` for stdin.
    path: Option<PathBuf>,
    /// Generator spec instead of a file, e.g. `petersen` or `random_sparse:60:10`.
    #[arg(long = "gen", conflicts_with = "path")]
    spec: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n, m, maximum degree, girth, mad and the initial charge sum.
    Stats(Input),
    /// Edge list of the square.
    Square(Input),
    /// 2-distance coloring: constructive 6-list coloring by default.
    Color2 {
        #[command(flatten)]
        input: Input,
        /// Exact 2-distance chromatic number (or exact list coloring with --lists).
        #[arg(long)]
        exact: bool,
        /// List file, one `v: c1,c2,...` line per vertex.
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Random 6-lists drawn from 12 colors (uses --seed).
        #[arg(long, conflicts_with = "lists")]
        random_lists: bool,
        /// Accept girth 9 instead of 10.
        #[arg(long = "girth-9-ok")]
        girth_nine_ok: bool,
        /// Try configurations from L14 down to L8.
        #[arg(long)]
        reverse_order: bool,
    },
    /// Choosability of the distance-1 or distance-2 constraint graph.
    Choosable {
        #[command(flatten)]
        input: Input,
        /// Comma-separated list sizes, one per vertex.
        #[arg(long, conflicts_with = "size")]
        sizes: Option<String>,
        /// The same list size for every vertex.
        #[arg(long)]
        size: Option<usize>,
        /// 1 for the graph itself, 2 for its square.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 2)]
        radius: u8,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Random list assignments tried in randomized mode.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// The ten gadgets.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// First reducible configuration found.
    Detect(Input),
    /// Charge ledger and per-vertex certificate.
    Discharge(Input),
    /// Emit a generated graph.
    Gen {
        /// Generator spec, e.g. `wegner_g3:8` or `random_sparse:60:10`.
        spec: String,
    },
    /// Generate graphs and run detect, discharge and color2 on each.
    Corpus {
        /// Number of graphs, one per seed starting at --seed.
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Largest vertex count requested.
        #[arg(long, default_value_t = 200)]
        max_n: usize,
        #[arg(long, default_value_t = 10)]
        girth: usize,
        /// Try configurations from L14 down to L8.
        #[arg(long)]
        reverse_order: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetAction {
    /// Choosability at the gadget's profile.
    Verify {
        /// Gadget letter or `all`.
        id: String,
        #[arg(long, value_enum, default_value_t = Mode::Randomized)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Labels, profile and edge list.
    Show { id: String },
    /// Compare the extension procedure with the solver on random lists.
    Fuzz {
        /// Gadget letter or `all`.
        id: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
}

/// Verdict of a finished run; errors are reported separately.
enum Outcome {
    Success,
    Negative,
}

struct Report {
    body: String,
    result: String,
    outcome: Outcome,
    /// Emit the trailer as a comment so the body stays a loadable edge list.
    graph_output: bool,
}

impl Report {
    fn ok(body: String, result: impl Into<String>) -> Report {
        Report { body, result: result.into(), outcome: Outcome::Success, graph_output: false }
    }

    fn negative(body: String, result: impl Into<String>) -> Report {
        Report { body, result: result.into(), outcome: Outcome::Negative, graph_output: false }
    }

    fn graph(body: String) -> Report {
        Report { body, result: "OK".into(), outcome: Outcome::Success, graph_output: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let header = format!("# distcolor {:?} seed={}\n", cli.command, cli.seed);
    match run(&cli) {
        Ok(report) => {
            let trailer = if report.graph_output { "# RESULT: " } else { "RESULT: " };
            let text = format!("{header}{}{trailer}{}\n", report.body, report.result);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            match report.outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::Negative => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(input: &Input, seed: u64) -> Result<Graph> {
    match (&input.path, &input.spec) {
        (_, Some(spec)) => Ok(from_spec(spec, seed)?),
        (Some(path), None) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
            };
            Ok(parse_edge_list(&text)?)
        }
        (None, None) => bail!("no input graph: give a path or --gen <spec>"),
    }
}

fn gadget_ids(id: &str) -> Result<Vec<GadgetId>> {
    if id.eq_ignore_ascii_case("all") {
        return Ok(GadgetId::ALL.to_vec());
    }
    Ok(vec![id.parse()?])
}

fn random_six_lists(n: usize, rng: &mut ChaCha8Rng) -> ListAssignment {
    let lists = (0..n)
        .map(|_| {
            let mut pool: Vec<Color> = (0..12).collect();
            pool.shuffle(rng);
            pool.truncate(6);
            pool
        })
        .collect();
    ListAssignment::new(lists).expect("lists are nonempty")
}

fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.seed;
    match &cli.command {
        Command::Stats(input) => {
            let g = load(input, seed)?;
            let gi = girth(&g).map_or("inf".to_string(), |x| x.to_string());
            let mad = if g.n() == 0 { "0".to_string() } else { mad_exact(&g).to_string() };
            let (eq1, _) = check_equation_1(&g);
            let body = format!("n={} m={} delta={} girth={gi} mad={mad} eq1={eq1}\n", g.n(), g.m(), g.max_degree());
            Ok(Report::ok(body, "OK"))
        }
        Command::Square(input) => Ok(Report::graph(square(&load(input, seed)?).to_edge_list())),
        Command::Gen { spec } => Ok(Report::graph(from_spec(spec, seed)?.to_edge_list())),
        Command::Color2 { input, exact, lists, random_lists, girth_nine_ok, reverse_order } => {
            let g = load(input, seed)?;
            let lists = match (lists, random_lists) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    Some(ListAssignment::parse(&text, g.n())?)
                }
                (None, true) => Some(random_six_lists(g.n(), &mut ChaCha8Rng::seed_from_u64(seed))),
                (None, false) => None,
            };
            if *exact {
                return Ok(match lists {
                    None => {
                        let (chi, c) = two_distance_chromatic(&g);
                        check_valid(&g, &c)?;
                        Report::ok(format!("chi2={chi}\n{}", c.to_text()), "VALID")
                    }
                    Some(l) => match list_color(&square(&g), &l) {
                        Some(c) => {
                            check_valid(&g, &c)?;
                            Report::ok(c.to_text(), "VALID")
                        }
                        None => Report::negative(String::new(), "UNSAT"),
                    },
                });
            }
            let lists = lists.unwrap_or_else(|| ListAssignment::uniform(g.n(), &[0, 1, 2, 3, 4, 5]));
            let opts = ConstructiveOptions {
                girth_nine_ok: *girth_nine_ok,
                reverse_order: *reverse_order,
                ..Default::default()
            };
            match color_constructive_with(&g, &lists, opts) {
                Ok(run) => {
                    check_valid(&g, &run.coloring)?;
                    let mut body = String::new();
                    for t in &run.trace {
                        let lemma = t.lemma.map_or("base".to_string(), |l| l.to_string());
                        let gadget = t.gadget.map_or("-".to_string(), |id| id.to_string());
                        let anchor = t.anchor.map_or("-".to_string(), |a| a.to_string());
                        writeln!(body, "# step depth={} n={} {lemma} anchor={anchor} gadget={gadget}", t.depth, t.n)?;
                    }
                    body.push_str(&run.coloring.to_text());
                    Ok(Report::ok(body, "VALID"))
                }
                Err(ConstructiveError::TheoremFalsifying { graph }) => Ok(Report::negative(
                    format!("no reducible configuration in the residual graph:\n{}", graph.to_edge_list()),
                    "NO_CONFIGURATION",
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Choosable { input, sizes, size, radius, mode, trials } => {
            let g = load(input, seed)?;
            let constraints = if *radius == 2 { square(&g) } else { g.clone() };
            let profile = match (sizes, size) {
                (Some(s), _) => {
                    let v: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
                    SizeProfile::new(v.context("--sizes must be comma-separated integers")?)?
                }
                (None, Some(k)) => SizeProfile::new(vec![*k; g.n()])?,
                (None, None) => bail!("give --sizes or --size"),
            };
            let mode = choosability_mode(*mode, *trials, seed);
            let report = check_choosable(&constraints, &profile, mode)?;
            let body = format!("radius={radius} checked={}\n", report.checked);
            Ok(match report.verdict {
                ChoosabilityVerdict::Choosable => Report::ok(body, "CHOOSABLE"),
                ChoosabilityVerdict::NoFailureFound => Report::ok(body, "NO_FAILURE_FOUND"),
                ChoosabilityVerdict::Counterexample(l) => {
                    Report::negative(format!("{body}counterexample:\n{}", l.to_text()), "NOT_CHOOSABLE")
                }
            })
        }
        Command::Gadget { action } => gadget(action, seed),
        Command::Detect(input) => {
            let g = load(input, seed)?;
            match find_configuration(&g) {
                Some(m) => {
                    let a = analyze(&g);
                    let mut body = format!("{}\n", m.describe());
                    for (label, v) in &m.mapping {
                        writeln!(body, "# {label}={v} {}", a.classes[*v].describe())?;
                    }
                    Ok(Report::ok(body, format!("FOUND {}", m.lemma)))
                }
                None => Ok(Report::negative(String::new(), "NONE")),
            }
        }
        Command::Discharge(input) => {
            let g = load(input, seed)?;
            let ledger = run_discharging(&g)?;
            let cert = certify_nonnegative(&g, &ledger);
            let (eq1, _) = check_equation_1(&g);
            let mut body = ledger.transfer_lines();
            body.push_str(&cert.table());
            writeln!(body, "sum_mu={} sum_mu_star={} eq1={eq1}", ledger.total_initial(), ledger.total_final())?;
            if !cert.bound_failures().is_empty() {
                bail!("final charge below the case bound at {:?}", cert.bound_failures());
            }
            let result = format!("CONSERVED={} NONNEG={}", ledger.conserved(), cert.all_nonnegative());
            Ok(Report::ok(body, result))
        }
        Command::Corpus { count, max_n, girth, reverse_order } => corpus(*count, *max_n, *girth, *reverse_order, seed),
    }
}

fn check_valid(g: &Graph, c: &distcolor::coloring::Coloring) -> Result<()> {
    match verify_coloring(g, c, Radius::Two)? {
        Verdict::Valid => Ok(()),
        Verdict::Violation(u, v) => bail!("internal: produced coloring clashes at {u} {v}"),
    }
}

fn choosability_mode(mode: Mode, trials: u64, seed: u64) -> ChoosabilityMode {
    match mode {
        Mode::Exhaustive => ChoosabilityMode::Exhaustive,
        Mode::Randomized => ChoosabilityMode::Randomized { trials, seed },
    }
}

fn gadget(action: &GadgetAction, seed: u64) -> Result<Report> {
    match action {
        GadgetAction::Show { id } => {
            let mut body = String::new();
            for id in gadget_ids(id)? {
                body.push_str(&build_gadget(id).dump());
            }
            Ok(Report::graph(body))
        }
        GadgetAction::Verify { id, mode, trials } => {
            let mut body = String::new();
            let mut failed = Vec::new();
            for id in gadget_ids(id)? {
                let g = build_gadget(id);
                let sizes: Vec<String> = g.profile.sizes().iter().map(usize::to_string).collect();
                let report = verify_gadget(id, choosability_mode(*mode, *trials, seed))?;
                let verdict = match &report.verdict {
                    ChoosabilityVerdict::Choosable => "choosable".to_string(),
                    ChoosabilityVerdict::NoFailureFound => "no-failure-found".to_string(),
                    ChoosabilityVerdict::Counterexample(l) => {
                        failed.push(id);
                        format!("counterexample\n{}", l.to_text())
                    }
                };
                writeln!(body, "({id}) profile={} checked={} {verdict}", sizes.join(","), report.checked)?;
            }
            Ok(if failed.is_empty() {
                Report::ok(body, "ALL_CHOOSABLE")
            } else {
                let ids: Vec<String> = failed.iter().map(|id| format!("({id})")).collect();
                Report::negative(body, format!("NOT_CHOOSABLE {}", ids.join(" ")))
            })
        }
        GadgetAction::Fuzz { id, trials } => {
            let mut body = String::new();
            let mut failed = false;
            for id in gadget_ids(id)? {
                let r = cross_check_procedure(id, *trials, seed);
                let cov: Vec<String> = r.coverage.iter().map(|(b, c)| format!("{b}={c}")).collect();
                writeln!(
                    body,
                    "({id}) trials={} valid={} agreements={} failures={} coverage: {}",
                    r.trials,
                    r.valid,
                    r.agreements,
                    r.failures.len(),
                    cov.join(" ")
                )?;
                for (lists, why) in r.failures.iter().take(3) {
                    writeln!(body, "# failure: {why}\n{}", lists.to_text())?;
                }
                failed |= !r.passed() || !r.uncovered().is_empty();
            }
            Ok(if failed { Report::negative(body, "FAIL") } else { Report::ok(body, "PASS") })
        }
    }
}

/// Vertex count of the `i`-th corpus instance.
fn corpus_n(seed: u64, max_n: usize) -> usize {
    let lo = 40.min(max_n);
    lo + (seed.wrapping_mul(37) % (max_n - lo + 1) as u64) as usize
}

fn corpus(count: u64, max_n: usize, target_girth: usize, reverse_order: bool, seed: u64) -> Result<Report> {
    if max_n < 40 {
        bail!("--max-n must be at least 40");
    }
    let opts = ConstructiveOptions { girth_nine_ok: target_girth == 9, reverse_order, ..Default::default() };
    let (mut detect, mut conserved, mut colored) = (0, 0, 0);
    let mut body = String::new();
    for i in 0..count {
        let s = seed.wrapping_add(i);
        let g = random_sparse(corpus_n(s, max_n), target_girth, s)?;
        let lemma = find_configuration(&g).map(|m| m.lemma);
        let ledger = run_discharging(&g)?;
        let cert = certify_nonnegative(&g, &ledger);
        let uniform = ListAssignment::uniform(g.n(), &[0, 1, 2, 3, 4, 5]);
        let random = random_six_lists(g.n(), &mut ChaCha8Rng::seed_from_u64(s));
        let mut ok = true;
        for lists in [&uniform, &random] {
            match color_constructive_with(&g, lists, opts) {
                Ok(run) => ok &= verify_coloring(&g, &run.coloring, Radius::Two)? == Verdict::Valid,
                Err(e) => {
                    writeln!(body, "# seed={s}: {e}")?;
                    ok = false;
                }
            }
        }
        detect += usize::from(lemma.is_some());
        conserved += usize::from(ledger.conserved());
        colored += usize::from(ok);
        writeln!(
            body,
            "seed={s} n={} m={} lemma={} conserved={} nonneg={} colored={ok}",
            g.n(),
            g.m(),
            lemma.map_or("NONE".to_string(), |l| l.to_string()),
            ledger.conserved(),
            cert.all_nonnegative()
        )?;
    }
    writeln!(body, "detect={detect}/{count} conserved={conserved}/{count} colored={colored}/{count}")?;
    let all = count as usize;
    Ok(if detect == all && conserved == all && colored == all {
        Report::ok(body, "PASS")
    } else {
        Report::negative(body, "FAIL")
    })
}
