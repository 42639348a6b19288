//! Command-line front end: invariant tables, family construction, bound
//! verification, reduction traces, the minimum-Randic search, and exhaustive
//! certification.
//!
//! Exit codes: 0 = no refutation, 2 = a refutation certificate was found,
//! 1 = usage or IO error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use randic::bounds::{BoundChecker, BoundReport, VerdictRow, VERDICT_CSV_HEADER};
use randic::constructions::ConstructionSpec;
use randic::graph::Graph;
use randic::graph6::{from_graph6, to_graph6};
use randic::invariants::{excess, general_randic_index, randic_index};
use randic::matching::max_matching;
use randic::reduction::run_reduction;
use randic::search::{
    certify_all_bounds, min_randic_by_matching, search_records_csv, CertifyConfig, Scope,
    SearchConfig, SEARCH_CSV_HEADER,
};

#[derive(Parser)]
#[command(name = "randic", version, about = "Randic index and matching number toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, m, R, alpha', excess and degree extremes for each graph6
    /// input line
    Compute {
        /// graph6 files; stdin when omitted
        inputs: Vec<PathBuf>,
        /// also evaluate the general Randic index with this exponent
        #[arg(long, allow_negative_numbers = true)]
        exponent: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Build graph families like star(7), bw(3,2), gw(6,1),
    /// corona_k1(cycle(5)) and print them as graph6
    Construct {
        specs: Vec<String>,
        /// print the family's closed-form Randic value next to the computed
        /// one
        #[arg(long)]
        closed_form: bool,
    },
    /// Evaluate one bound (or all of them) on each input graph
    Verify {
        /// graph6 files; stdin when omitted
        inputs: Vec<PathBuf>,
        /// tree | small-excess | subcubic | o-shi | bollobas-erdos |
        /// high-low | hereditary | near-perfect | leaf-anchored-excess |
        /// star-min | half-order | all
        #[arg(long)]
        bound: String,
        /// degree split parameter for high-low and hereditary
        #[arg(long, default_value_t = 6)]
        r: usize,
        /// inequality tolerance, within [1e-12, 1e-6]
        #[arg(long)]
        tolerance: Option<f64>,
        /// self-test hook: replace the subcubic constant to confirm the
        /// harness reports violations
        #[arg(long, value_name = "CONSTANT")]
        mutate_subcubic: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the leaf reduction on each input graph and print its trace
    Reduce {
        /// graph6 files; stdin when omitted
        inputs: Vec<PathBuf>,
    },
    /// Tabulate the minimum Randic index per matching number over all small
    /// graphs in a scope
    Search {
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// all | connected | no-isolated | trees | subcubic |
        /// nearly-perfect | excess-le(E)
        #[arg(long, default_value = "connected")]
        scope: String,
        #[arg(long, default_value_t = 4)]
        shards: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run every bound check on every connected graph up to --nmax
    Certify {
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        shards: usize,
        /// inequality tolerance, within [1e-12, 1e-6]
        #[arg(long)]
        tolerance: Option<f64>,
        /// self-test hook: replace the subcubic constant to confirm the
        /// harness reports violations
        #[arg(long, value_name = "CONSTANT")]
        mutate_subcubic: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Compute {
            inputs,
            exponent,
            format,
        } => cmd_compute(&inputs, exponent, format),
        Command::Construct { specs, closed_form } => cmd_construct(&specs, closed_form),
        Command::Verify {
            inputs,
            bound,
            r,
            tolerance,
            mutate_subcubic,
            format,
        } => cmd_verify(&inputs, &bound, r, tolerance, mutate_subcubic, format),
        Command::Reduce { inputs } => cmd_reduce(&inputs),
        Command::Search {
            nmax,
            scope,
            shards,
            format,
        } => cmd_search(nmax, &scope, shards, format),
        Command::Certify {
            nmax,
            shards,
            tolerance,
            mutate_subcubic,
        } => cmd_certify(nmax, shards, tolerance, mutate_subcubic),
    }
}

fn checked_tolerance(tolerance: Option<f64>) -> anyhow::Result<f64> {
    let tol = tolerance.unwrap_or(randic::DEFAULT_TOLERANCE);
    if !(1e-12..=1e-6).contains(&tol) {
        bail!("tolerance {tol:e} outside [1e-12, 1e-6]");
    }
    Ok(tol)
}

/// Reads newline-separated graph6 from files (stdin when none). Malformed
/// lines are reported with their location and skipped; the count of bad
/// lines comes back so callers can set the exit code.
fn read_graphs(inputs: &[PathBuf]) -> anyhow::Result<(Vec<(String, Graph)>, usize)> {
    let mut sources: Vec<(String, String)> = Vec::new();
    if inputs.is_empty() || (inputs.len() == 1 && inputs[0].as_os_str() == "-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        sources.push(("<stdin>".into(), text));
    } else {
        for path in inputs {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            sources.push((path.display().to_string(), text));
        }
    }
    let mut graphs = Vec::new();
    let mut bad_lines = 0;
    for (name, text) in sources {
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match from_graph6(line) {
                Ok(g) => graphs.push((format!("{name}:{}", lineno + 1), g)),
                Err(e) => {
                    eprintln!("{name}:{}: {e}", lineno + 1);
                    bad_lines += 1;
                }
            }
        }
    }
    Ok((graphs, bad_lines))
}

fn cmd_compute(
    inputs: &[PathBuf],
    exponent: Option<f64>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let (graphs, bad_lines) = read_graphs(inputs)?;
    let mut json_rows = Vec::new();
    if format == Format::Csv {
        let extra = exponent.map(|_| ",R_a").unwrap_or_default();
        println!("graph6,n,m,R{extra},alpha,excess,min_degree,max_degree");
    }
    for (_, g) in &graphs {
        let g6 = to_graph6(g);
        let r = randic_index(g);
        let alpha = max_matching(g).size();
        let ex = excess(g);
        let (dmin, dmax) = (g.min_degree(), g.max_degree());
        let ra = exponent.map(|a| general_randic_index(g, a));
        match format {
            Format::Csv => {
                let extra = ra.map(|v| format!(",{v:.12}")).unwrap_or_default();
                println!(
                    "{g6},{},{},{r:.12}{extra},{alpha},{ex},{dmin},{dmax}",
                    g.n(),
                    g.m()
                );
            }
            Format::Json => {
                let mut row = serde_json::json!({
                    "graph6": g6, "n": g.n(), "m": g.m(), "R": r,
                    "alpha": alpha, "excess": ex,
                    "min_degree": dmin, "max_degree": dmax,
                });
                if let Some(v) = ra {
                    row["R_a"] = serde_json::json!(v);
                }
                json_rows.push(row);
            }
            Format::Text => {
                let extra = ra.map(|v| format!(" R_a={v:.6}")).unwrap_or_default();
                println!(
                    "{g6}: n={} m={} R={r:.6}{extra} alpha={alpha} excess={ex} degrees {dmin}..{dmax}",
                    g.n(),
                    g.m()
                );
            }
        }
    }
    if format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&json_rows)?);
    }
    Ok(if bad_lines > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_construct(specs: &[String], closed_form: bool) -> anyhow::Result<ExitCode> {
    if specs.is_empty() {
        bail!("no construction specs given");
    }
    for text in specs {
        let spec: ConstructionSpec = text
            .parse()
            .with_context(|| format!("parsing spec {text:?}"))?;
        let g = spec.build().with_context(|| format!("building {spec}"))?;
        if closed_form {
            let computed = randic_index(&g);
            match spec.closed_form_randic() {
                Some(cf) => println!(
                    "{spec} {} closed_form={cf:.12} computed={computed:.12}",
                    to_graph6(&g)
                ),
                None => println!(
                    "{spec} {} closed_form=n/a computed={computed:.12}",
                    to_graph6(&g)
                ),
            }
        } else {
            println!("{}", to_graph6(&g));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn evaluate_bound(
    checker: &BoundChecker,
    g: &Graph,
    bound: &str,
    r: usize,
) -> anyhow::Result<Vec<BoundReport>> {
    Ok(match bound {
        "tree" => vec![checker.check_tree_bound(g)],
        "small-excess" => vec![checker.check_small_excess(g)],
        "subcubic" => vec![checker.check_subcubic(g)],
        "o-shi" => vec![checker.check_o_shi(g)],
        "bollobas-erdos" => vec![checker.check_bollobas_erdos(g)],
        "high-low" => vec![checker.check_high_low(g, r).0],
        "hereditary" => vec![checker.check_hereditary_class(g, r)?],
        "near-perfect" => vec![checker.check_near_perfect(g)],
        "leaf-anchored-excess" => vec![checker.check_leaf_anchored_excess(g)],
        "star-min" => vec![checker.check_star_min(g)],
        "half-order" => vec![checker.check_half_order(g)],
        "all" => {
            let mut reports = vec![
                checker.check_tree_bound(g),
                checker.check_small_excess(g),
                checker.check_subcubic(g),
                checker.check_o_shi(g),
                checker.check_bollobas_erdos(g),
                checker.check_high_low(g, r).0,
            ];
            // hereditary membership brute-forces subsets; skip past its cap
            if g.n() <= randic::invariants::INDUCED_DENSITY_MAX_N {
                reports.push(checker.check_hereditary_class(g, r)?);
            }
            reports.extend([
                checker.check_near_perfect(g),
                checker.check_leaf_anchored_excess(g),
                checker.check_star_min(g),
                checker.check_half_order(g),
            ]);
            reports
        }
        other => bail!("unknown bound id {other:?}"),
    })
}

fn cmd_verify(
    inputs: &[PathBuf],
    bound: &str,
    r: usize,
    tolerance: Option<f64>,
    mutate_subcubic: Option<f64>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    if r == 0 {
        bail!("--r must be at least 1");
    }
    let mut checker = BoundChecker::with_tolerance(checked_tolerance(tolerance)?);
    if let Some(c) = mutate_subcubic {
        checker.subcubic_constant = c;
    }
    let (graphs, bad_lines) = read_graphs(inputs)?;
    let mut rows = Vec::new();
    let mut refuted = false;
    for (source, g) in &graphs {
        for report in evaluate_bound(&checker, g, bound, r)
            .with_context(|| format!("checking {source}"))?
        {
            refuted |= report.is_counterexample();
            rows.push(VerdictRow::from_report(g, &report));
        }
    }
    match format {
        Format::Csv => {
            println!("{VERDICT_CSV_HEADER}");
            for row in &rows {
                println!("{}", row.csv_line());
            }
        }
        Format::Json => println!("{}", randic::bounds::verdict_rows_to_json(&rows)),
        Format::Text => {
            for row in &rows {
                let status = if !row.hypothesis {
                    "hypothesis-not-met"
                } else if !row.holds {
                    "COUNTEREXAMPLE"
                } else if row.equality {
                    "equality"
                } else {
                    "holds"
                };
                println!(
                    "{} {}: lhs={:.9} rhs={:.9} {status}",
                    row.bound_id, row.graph6, row.lhs, row.rhs
                );
            }
        }
    }
    Ok(if refuted {
        ExitCode::from(2)
    } else if bad_lines > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_reduce(inputs: &[PathBuf]) -> anyhow::Result<ExitCode> {
    let (graphs, bad_lines) = read_graphs(inputs)?;
    let mut failures = bad_lines;
    for (source, g) in &graphs {
        match run_reduction(g) {
            Ok(trace) => {
                println!(
                    "graph {} n={} R={:.12} alpha={} steps={}",
                    to_graph6(g),
                    g.n(),
                    trace.initial_randic,
                    trace.initial_matching,
                    trace.step_count()
                );
                print!("{}", trace.log_lines());
                println!(
                    "final {} n={} R={:.12} alpha={}",
                    to_graph6(&trace.final_graph),
                    trace.final_graph.n(),
                    trace.final_randic,
                    trace.final_matching
                );
            }
            Err(e) => {
                eprintln!("{source}: {e}");
                failures += 1;
            }
        }
    }
    Ok(if failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_search(nmax: usize, scope: &str, shards: usize, format: Format) -> anyhow::Result<ExitCode> {
    let scope: Scope = scope.parse()?;
    let records = min_randic_by_matching(&SearchConfig {
        n_max: nmax,
        scope,
        shards,
        progress: true,
    })?;
    match format {
        Format::Csv => print!("{}", search_records_csv(&records)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&records)?),
        Format::Text => {
            println!("{SEARCH_CSV_HEADER}");
            for record in &records {
                println!(
                    "k={} best_R={:.12} ratio={:.12} witness={} ({})",
                    record.k, record.best_randic, record.ratio, record.witness, record.scope
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(
    nmax: usize,
    shards: usize,
    tolerance: Option<f64>,
    mutate_subcubic: Option<f64>,
) -> anyhow::Result<ExitCode> {
    let report = certify_all_bounds(&CertifyConfig {
        n_max: nmax,
        shards,
        tolerance: checked_tolerance(tolerance)?,
        subcubic_constant_override: mutate_subcubic,
        progress: true,
    })?;
    print!("{report}");
    if !report.certificates.is_empty() {
        println!("{VERDICT_CSV_HEADER}");
        for row in &report.certificates {
            println!("{}", row.csv_line());
        }
    }
    if !report.matcher_mismatch_examples.is_empty() {
        println!(
            "matcher mismatch examples: {}",
            report.matcher_mismatch_examples.join(" ")
        );
    }
    Ok(if report.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
