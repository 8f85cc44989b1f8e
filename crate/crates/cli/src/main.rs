//! Command-line front end: exact independence-polynomial computations,
//! removal scans, and the exhaustive verification suites.
//!
//! Exit codes: 0 = success / everything verified, 1 = a counterexample
//! was found (report emitted), 2 = usage or input error.

use std::io::IsTerminal;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use avi_core::engine;
use avi_core::exact::Rational;
use avi_core::graph::Graph;
use avi_core::lab;
use avi_core::path_analysis;
use avi_core::report::VerificationReport;
use avi_core::trees;

#[derive(Parser)]
#[command(
    name = "avi",
    version,
    about = "Exact independence polynomials, average independent-set sizes, and extremal verification suites",
    propagate_version = true
)]
struct Cli {
    /// Output format: aligned human tables or JSON with exact values as strings.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Cap the number of worker threads used by the exhaustive sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the independence polynomial of a graph.
    Poly {
        /// Graph spec: path:N, star:N, complete:N, empty:N or file:PATH.
        #[arg(long)]
        graph: String,
    },
    /// Print the average size of independent sets, optionally weighted
    /// by a fugacity.
    Avg {
        #[arg(long)]
        graph: String,
        /// Fugacity as an exact fraction p/q (default 1/1).
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Classify every single-vertex removal by its effect on the average.
    VertexScan {
        #[arg(long)]
        graph: String,
    },
    /// Classify every single-edge removal by its effect on the average.
    EdgeScan {
        #[arg(long)]
        graph: String,
    },
    /// Run one of the verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Table of the offsets c_n = avi(P_n) - a*n with decimal previews.
    Ctable {
        #[arg(long)]
        max_n: usize,
    },
    /// Enumerate free trees up to isomorphism.
    Trees {
        #[arg(long)]
        n: usize,
        /// Print only the number of isomorphism classes.
        #[arg(long)]
        count_only: bool,
    },
    /// Check whether the path minimises the weighted average among trees
    /// at the given fugacity.
    WeightedScan {
        #[arg(long)]
        n: usize,
        /// Fugacity as an exact fraction p/q.
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Strict bounds avi(K_n) < avi(G) < avi(E_n) over all labelled graphs.
    Bounds {
        #[arg(long)]
        max_n: usize,
    },
    /// The star maximises the average over all free trees of each order.
    StarMax {
        #[arg(long)]
        max_n: usize,
    },
    /// The path minimises the average, and non-paths clear the linear bound.
    PathMin {
        #[arg(long)]
        max_n: usize,
    },
    /// Deletion quotient I(T-v)/I(T) within [1/2, 1) for all trees/vertices.
    Quotient {
        #[arg(long)]
        max_n: usize,
    },
    /// Some vertex removal strictly decreases the average, for every
    /// labelled graph, via the set-family witness construction.
    VertexRemoval {
        #[arg(long)]
        max_n: usize,
    },
    /// The 105-case branch analysis for the non-path lower bound.
    Cases,
    /// Closed form for avi(P_n) against the recurrence, plus the offset
    /// behaviour (alternation, shrinking, minima).
    PathFormula {
        #[arg(long)]
        max_n: usize,
    },
    /// The auxiliary scalar inequalities in the quadratic field.
    Aux,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.jobs.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_alpha(s: &str) -> anyhow::Result<Rational> {
    let alpha = Rational::from_str(s)?;
    if alpha.signum() <= 0 {
        anyhow::bail!("alpha must be positive, got {alpha}");
    }
    Ok(alpha)
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let out = Output::new(cli.format);
    match &cli.command {
        Command::Poly { graph } => {
            let g = Graph::from_spec(graph)?;
            let poly = engine::indep_poly(&g);
            let summary = engine::summary_of_poly(&poly);
            match cli.format {
                Format::Human => {
                    println!("I(G,x) = {poly}");
                    println!("I(G)   = {}", summary.count);
                    println!("T(G)   = {}", summary.total);
                    println!("avi(G) = {}", summary.average);
                }
                Format::Json => out.json(&json!({
                    "graph": graph,
                    "coefficients": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "count": summary.count.to_string(),
                    "total": summary.total.to_string(),
                    "average": summary.average,
                })),
            }
            Ok(0)
        }
        Command::Avg { graph, alpha } => {
            let g = Graph::from_spec(graph)?;
            let alpha = match alpha {
                Some(s) => parse_alpha(s)?,
                None => Rational::one(),
            };
            let w = engine::weighted_summary(&g, &alpha)?;
            match cli.format {
                Format::Human => println!("{}", w.average),
                Format::Json => out.json(&json!({
                    "graph": graph,
                    "alpha": alpha,
                    "count": w.count,
                    "total": w.total,
                    "average": w.average,
                })),
            }
            Ok(0)
        }
        Command::VertexScan { graph } => {
            let g = Graph::from_spec(graph)?;
            let rows = lab::vertex_scan(&g)?;
            match cli.format {
                Format::Human => {
                    println!("avi(G) = {}", rows[0].before);
                    for r in &rows {
                        println!(
                            "vertex {:>2}: {} -> {}  [{}]",
                            r.vertex,
                            r.before,
                            r.after,
                            direction_str(r.direction)
                        );
                    }
                }
                Format::Json => out.json(&json!({ "graph": graph, "rows": rows })),
            }
            Ok(0)
        }
        Command::EdgeScan { graph } => {
            let g = Graph::from_spec(graph)?;
            let rows = lab::edge_scan(&g)?;
            match cli.format {
                Format::Human => {
                    println!("avi(G) = {}", rows[0].before);
                    for r in &rows {
                        println!(
                            "edge {}-{}: {} -> {}  [{}]",
                            r.edge.0,
                            r.edge.1,
                            r.before,
                            r.after,
                            direction_str(r.direction)
                        );
                    }
                }
                Format::Json => out.json(&json!({ "graph": graph, "rows": rows })),
            }
            Ok(0)
        }
        Command::Verify { what } => run_verify(what, &out),
        Command::Ctable { max_n } => {
            let mut rows = Vec::new();
            for n in 1..=*max_n {
                let v = path_analysis::path_closed_form(n)?;
                rows.push(v);
            }
            match cli.format {
                Format::Human => {
                    println!("{:>4}  {:>16}  {:<34}  c_n (decimal)", "n", "avi(P_n)", "c_n");
                    for v in &rows {
                        println!(
                            "{:>4}  {:>16}  {:<34}  {}",
                            v.n,
                            v.rational_value.to_string(),
                            v.offset.to_string(),
                            v.offset.decimal_approx(12)
                        );
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|v| {
                            json!({
                                "n": v.n,
                                "average": v.rational_value,
                                "offset": v.offset,
                                "offset_decimal": v.offset.decimal_approx(30),
                            })
                        })
                        .collect();
                    out.json(&json!({ "rows": rows }));
                }
            }
            Ok(0)
        }
        Command::Trees { n, count_only } => {
            let iter = trees::enumerate_trees(*n)?;
            if *count_only {
                let count = iter.count();
                match cli.format {
                    Format::Human => println!("{count}"),
                    Format::Json => out.json(&json!({ "n": n, "count": count })),
                }
                return Ok(0);
            }
            let all: Vec<Graph> = iter.collect();
            match cli.format {
                Format::Human => {
                    for (i, t) in all.iter().enumerate() {
                        let edges: Vec<String> = t
                            .edges()
                            .into_iter()
                            .map(|(u, v)| format!("{u}-{v}"))
                            .collect();
                        println!("{i:>6}: {}", edges.join(" "));
                    }
                }
                Format::Json => {
                    let list: Vec<_> = all.iter().map(|t| t.edges()).collect();
                    out.json(&json!({ "n": n, "count": all.len(), "trees": list }));
                }
            }
            Ok(0)
        }
        Command::WeightedScan { n, alpha } => {
            let alpha = parse_alpha(alpha)?;
            let report = lab::weighted_extremal_scan(*n, &alpha)?;
            out.reports(std::slice::from_ref(&report));
            Ok(if report.is_verified() { 0 } else { 1 })
        }
    }
}

fn run_verify(what: &VerifyWhat, out: &Output) -> anyhow::Result<u8> {
    let mut cases: Option<Vec<path_analysis::CaseBound>> = None;
    let reports: Vec<VerificationReport> = match what {
        VerifyWhat::Bounds { max_n } => collect_range(*max_n, lab::verify_global_bounds)?,
        VerifyWhat::StarMax { max_n } => collect_range(*max_n, lab::verify_star_maximal)?,
        VerifyWhat::PathMin { max_n } => collect_range(*max_n, lab::verify_path_minimal)?,
        VerifyWhat::Quotient { max_n } => collect_range(*max_n, lab::verify_quotient_bounds)?,
        VerifyWhat::VertexRemoval { max_n } => collect_range(*max_n, lab::verify_decreasing_vertex)?,
        VerifyWhat::Cases => {
            cases = Some(path_analysis::case_table());
            vec![path_analysis::verify_case_table()]
        }
        VerifyWhat::PathFormula { max_n } => {
            vec![
                path_analysis::verify_path_formula(*max_n)?,
                path_analysis::verify_error_term(*max_n)?,
            ]
        }
        VerifyWhat::Aux => vec![path_analysis::verify_auxiliary_inequalities()],
    };
    match out.format {
        Format::Json => {
            let mut doc = json!({ "reports": reports });
            if let Some(table) = &cases {
                doc["cases"] = serde_json::to_value(table).expect("case table serialises");
            }
            out.json(&doc);
        }
        Format::Human => {
            if let Some(table) = &cases {
                out.case_table(table);
            }
            out.print_reports(&reports);
        }
    }
    Ok(if reports.iter().all(|r| r.is_verified()) {
        0
    } else {
        1
    })
}

fn collect_range(
    max_n: usize,
    f: impl Fn(usize) -> avi_core::Result<VerificationReport>,
) -> anyhow::Result<Vec<VerificationReport>> {
    if max_n < 1 {
        anyhow::bail!("--max-n must be at least 1");
    }
    let mut reports = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        reports.push(f(n)?);
    }
    Ok(reports)
}

fn direction_str(d: lab::Direction) -> &'static str {
    match d {
        lab::Direction::Decrease => "decrease",
        lab::Direction::Equal => "equal",
        lab::Direction::Increase => "increase",
    }
}

struct Output {
    format: Format,
    color: bool,
}

impl Output {
    fn new(format: Format) -> Self {
        let color = format == Format::Human
            && std::env::var_os("NO_COLOR").is_none()
            && std::io::stdout().is_terminal();
        Output { format, color }
    }

    fn json(&self, value: &serde_json::Value) {
        println!("{}", serde_json::to_string_pretty(value).expect("valid json"));
    }

    fn status(&self, verified: bool) -> String {
        let (word, code) = if verified {
            ("VERIFIED", "32")
        } else {
            ("COUNTEREXAMPLE", "31")
        };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }

    fn reports(&self, reports: &[VerificationReport]) {
        match self.format {
            Format::Json => self.json(&json!({ "reports": reports })),
            Format::Human => self.print_reports(reports),
        }
    }

    fn print_reports(&self, reports: &[VerificationReport]) {
        for r in reports {
            println!("{} [{}]: {}", r.claim, r.range, self.status(r.is_verified()));
            for note in &r.notes {
                println!("    note: {note}");
            }
            if let Some(w) = &r.witness {
                let edges: Vec<String> = w
                    .edges
                    .iter()
                    .map(|(u, v)| format!("{u}-{v}"))
                    .collect();
                println!(
                    "    witness: {} vertices, edges {}",
                    w.vertex_count,
                    edges.join(" ")
                );
                for (k, v) in &w.values {
                    println!("    witness {k} = {v}");
                }
            }
        }
    }

    /// One row per case: branch counts, the feasible rho interval, and
    /// the exact margin over the non-path intercept.
    fn case_table(&self, table: &[path_analysis::CaseBound]) {
        match self.format {
            Format::Json => {
                let value = serde_json::to_value(table).expect("case table serialises");
                self.json(&json!({ "cases": value }));
            }
            Format::Human => {
                println!(
                    "{:>2} {:>2} {:>2} {:>2} {:>2} {:>2}  {:>8} {:>8}  margin",
                    "k", "x1", "x2", "x3", "x4", "x5", "rho_lo", "rho_hi"
                );
                for cb in table {
                    let s = &cb.spec;
                    println!(
                        "{:>2} {:>2} {:>2} {:>2} {:>2} {:>2}  {:>8} {:>8}  {} (~{})",
                        s.branch_count,
                        s.size1,
                        s.size2,
                        s.size3_center,
                        s.size3_leaf,
                        s.size4_plus,
                        cb.rho_interval.0.to_string(),
                        cb.rho_interval.1.to_string(),
                        cb.margin,
                        cb.margin.decimal_approx(6)
                    );
                }
            }
        }
    }
}
