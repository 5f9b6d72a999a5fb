use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itkit::apps::hypergraph::{cover_problems, hypergraph_match, is_perfect_matching, Hypergraph, MatchOutcome};
use itkit::apps::{clique_hitting_set_within, strong_colour, verify_strong_colouring};
use itkit::certify::DEFAULT_BUDGET;
use itkit::engine::EngineParams;
use itkit::format::{parse_hypergraph, print_hypergraph, print_instance, print_instance_json, read_instance};
use itkit::scalar::format_rational;
use itkit::{
    brute_force_it, brute_force_perfect_matching, gen, parse_rational, solve_with, verify_certificate, Cert, Certificate,
    Error, Params, PartitionedGraph, Rational, Scalar, SolveOptions,
};
use rayon::prelude::*;
use serde_json::json;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;

#[derive(Parser)]
#[command(name = "itkit", version, about = "Independent transversals or certified blocking sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an independent transversal or a blocking set
    Findit(FinditArgs),
    /// Perfect matching or Hall-violating cover in a bipartite hypergraph
    Match(MatchArgs),
    /// Strong colouring with 3*delta + 1 colours
    Strongcolour(AppArgs),
    /// Independent set meeting every maximum clique
    Cliquehit(AppArgs),
    /// Check a certificate against an instance
    Verify(VerifyArgs),
    /// Write a generated instance
    Gen(GenArgs),
}

#[derive(Args)]
struct FinditArgs {
    /// Instance files (`.json` or text)
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Claw size; defaults to delta + 1
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    r: Option<u64>,
    /// Slack as p/q; defaults to 1/delta
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long = "U")]
    cap: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    /// Check every loop invariant and report on stderr
    #[arg(long)]
    trace: bool,
    /// Reject inputs containing an r-claw
    #[arg(long)]
    check_claw_free: bool,
    /// Re-check the certificate before printing
    #[arg(long)]
    verify: bool,
    /// Cross-check against exhaustive search (budget from ITKIT_BUDGET)
    #[arg(long)]
    oracle: bool,
    /// Compact single-line output
    #[arg(long)]
    json: bool,
    /// Worker threads when several inputs are given
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct MatchArgs {
    /// Hypergraph file
    input: PathBuf,
    /// Slack as p/q
    #[arg(long, default_value = "1/2")]
    eps: String,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AppArgs {
    /// Instance file; class structure is read but only used by strongcolour
    input: PathBuf,
    /// Degree bound; defaults to the maximum degree
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    certificate: PathBuf,
    /// Also confirm a blocking set by exhaustive search
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    RandomPartitioned,
    CompleteBipartitePair,
    HypergraphRandom,
    CliquePlanted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GenArgs {
    kind: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    delta: usize,
    /// Number of classes
    #[arg(long, default_value_t = 5)]
    m: usize,
    /// Class size; defaults to 2*delta + 1
    #[arg(long)]
    class_size: Option<usize>,
    /// Hyperedge size
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 5)]
    na: usize,
    #[arg(long, default_value_t = 5)]
    nb: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, default_value_t = 2)]
    cliques: usize,
    /// Extra vertices outside the planted cliques
    #[arg(long, default_value_t = 4)]
    extra: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output file; stdout when absent
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    let res = match cli.command {
        Command::Findit(a) => findit(a),
        Command::Match(a) => cmd_match(a),
        Command::Strongcolour(a) => strongcolour(a),
        Command::Cliquehit(a) => cliquehit(a),
        Command::Verify(a) => verify(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn budget() -> itkit::Result<u64> {
    match std::env::var("ITKIT_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("ITKIT_BUDGET=`{s}` is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn rational(s: &str) -> itkit::Result<Rational> {
    parse_rational(s)
}

fn params_for(a: &FinditArgs, g: &PartitionedGraph) -> itkit::Result<Params> {
    let delta = g.max_degree().max(1);
    let r = a.r.map_or(delta + 1, |r| r as usize);
    let eps = match &a.eps {
        Some(s) => rational(s)?,
        None => Rational::ratio(1, delta as i64),
    };
    let base = Params::clamped(r, eps.clone())?;
    if a.mu.is_none() && a.cap.is_none() && a.rho.is_none() {
        return Ok(base);
    }
    let pick = |o: &Option<String>, d: &Rational| o.as_deref().map_or(Ok(d.clone()), rational);
    EngineParams::new(r, eps, pick(&a.mu, base.mu())?, pick(&a.cap, base.cap())?, pick(&a.rho, base.rho())?)
}

struct RunOutput {
    code: u8,
    stdout: String,
    stderr: String,
}

fn findit(a: FinditArgs) -> itkit::Result<u8> {
    let budget = budget()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {} workers: {e}", a.jobs)))?;
    let many = a.inputs.len() > 1;
    let outputs: Vec<RunOutput> = pool.install(|| {
        a.inputs
            .par_iter()
            .map(|path| match findit_one(&a, path, budget) {
                Ok(out) => out,
                Err(e) => RunOutput { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {e}\n") },
            })
            .collect()
    });
    let mut worst = EXIT_OK;
    for (path, out) in a.inputs.iter().zip(&outputs) {
        if many && !a.json {
            println!("# {}", path.display());
        }
        print!("{}", out.stdout);
        if !out.stderr.is_empty() {
            if many {
                eprint!("{}: ", path.display());
            }
            eprint!("{}", out.stderr);
        }
        worst = match (worst, out.code) {
            (EXIT_ERROR, _) | (_, EXIT_ERROR) => EXIT_ERROR,
            (EXIT_NEGATIVE, _) | (_, EXIT_NEGATIVE) => EXIT_NEGATIVE,
            _ => EXIT_OK,
        };
    }
    Ok(worst)
}

fn findit_one(a: &FinditArgs, path: &Path, budget: u64) -> itkit::Result<RunOutput> {
    let g = read_instance(path)?;
    let params = params_for(a, &g)?;
    let sol = solve_with(&g, &params, SolveOptions { check_claw_free: a.check_claw_free, trace: a.trace })?;
    let mut stderr = String::new();
    if let Some(t) = &sol.trace {
        stderr += &format!(
            "trace: {} iterations, max depth {}, {} calls, {} violations\n",
            t.iterations,
            t.max_depth,
            t.calls.len(),
            t.violations.len()
        );
        for v in &t.violations {
            stderr += &format!("trace violation: {v}\n");
        }
        if !t.is_clean() {
            return Err(Error::InternalInvariantViolation(stderr.trim_end().to_string()));
        }
    }
    if a.verify {
        let rep = verify_certificate(&g, &sol.certificate);
        if !rep.ok {
            return Err(Error::CertificateViolation(rep.messages()));
        }
    }
    if a.oracle {
        let found = brute_force_it(&g, budget)?;
        if found.is_some() != sol.certificate.is_it() {
            return Err(Error::InternalInvariantViolation(
                "exhaustive search disagrees with the certificate".to_string(),
            ));
        }
    }
    if sol.removed_intra_class_edges > 0 || !sol.extracted_classes.is_empty() {
        stderr += &format!(
            "normalized: intra-class edges removed {}, classes settled by isolated vertices {}\n",
            sol.removed_intra_class_edges,
            sol.extracted_classes.len()
        );
    }
    let mut stdout = if a.json {
        let mut v: serde_json::Value = serde_json::from_str(&sol.certificate.to_json())?;
        if a.inputs.len() > 1 {
            v = json!({ "input": path.display().to_string(), "certificate": v });
        }
        v.to_string()
    } else {
        sol.certificate.to_json_pretty()
    };
    stdout.push('\n');
    let code = if sol.certificate.is_it() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(RunOutput { code, stdout, stderr })
}

fn read_hypergraph(path: &Path) -> itkit::Result<Hypergraph> {
    parse_hypergraph(&fs::read_to_string(path)?)
}

fn list(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_match(a: MatchArgs) -> itkit::Result<u8> {
    let h = read_hypergraph(&a.input)?;
    let eps = rational(&a.eps)?;
    let outcome = hypergraph_match(&h, &eps)?;
    if a.verify {
        let problems = match &outcome {
            MatchOutcome::Matching(m) if !is_perfect_matching(&h, m) => vec!["not a perfect matching".to_string()],
            MatchOutcome::Matching(_) => Vec::new(),
            MatchOutcome::Cover { s, t } => {
                let s: BTreeSet<usize> = s.iter().copied().collect();
                let t: BTreeSet<usize> = t.iter().copied().collect();
                cover_problems(&h, &s, &t, &eps)
            }
        };
        if !problems.is_empty() {
            return Err(Error::CertificateViolation(problems));
        }
    }
    if a.oracle {
        let found = brute_force_perfect_matching(&h, budget()?)?;
        if found.is_some() != matches!(outcome, MatchOutcome::Matching(_)) {
            return Err(Error::InternalInvariantViolation(
                "exhaustive search disagrees with the outcome".to_string(),
            ));
        }
    }
    match outcome {
        MatchOutcome::Matching(m) => {
            if a.json {
                println!("{}", json!({ "outcome": "matching", "edges": m }));
            } else {
                println!("matching");
                for &i in &m {
                    let e = &h.edges[i];
                    println!("edge {i}: {} -> {}", e.a, list(&e.b));
                }
            }
            Ok(EXIT_OK)
        }
        MatchOutcome::Cover { s, t } => {
            if a.json {
                println!("{}", json!({ "outcome": "cover", "S": s, "T": t, "eps": format_rational(&eps) }));
            } else {
                println!("cover");
                println!("S {}", list(&s));
                println!("T {}", list(&t));
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn strongcolour(a: AppArgs) -> itkit::Result<u8> {
    let g = read_instance(&a.input)?;
    let delta = a.delta.unwrap_or_else(|| g.max_degree()).max(1);
    let col = strong_colour(&g, delta)?;
    let problems = verify_strong_colouring(&g, &col);
    if !problems.is_empty() {
        return Err(Error::CertificateViolation(problems));
    }
    if a.json {
        println!("{}", json!({ "colours": col.k, "colour_of": col.colour_of }));
    } else {
        println!("colours {}", col.k);
        for (v, c) in col.colour_of.iter().enumerate() {
            println!("{v} {c}");
        }
    }
    Ok(EXIT_OK)
}

fn cliquehit(a: AppArgs) -> itkit::Result<u8> {
    let g = read_instance(&a.input)?;
    let delta = a.delta.unwrap_or_else(|| g.max_degree());
    let res = clique_hitting_set_within(g.graph(), delta, budget()?)?;
    if a.json {
        println!("{}", json!({ "hitting": res.hitting, "cliques": res.cliques }));
    } else {
        println!("hitting {}", list(&res.hitting));
        for c in &res.cliques {
            println!("clique {}", list(c));
        }
    }
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs) -> itkit::Result<u8> {
    let g = read_instance(&a.instance)?;
    let cert = Cert::from_json(&fs::read_to_string(&a.certificate)?)?;
    let mut rep = verify_certificate(&g, &cert);
    if a.oracle && rep.ok {
        if let Certificate::Bd(_) = cert {
            if let Some(t) = brute_force_it(&g, budget()?)? {
                rep.ok = false;
                rep.violations.push(("oracle".to_string(), format!("exhaustive search found a transversal {t:?}")));
            }
        }
    }
    if a.json {
        let violations: Vec<_> = rep.violations.iter().map(|(k, m)| json!({ "name": k, "message": m })).collect();
        println!("{}", json!({ "ok": rep.ok, "violations": violations }));
    } else if rep.ok {
        println!("ok");
    } else {
        for (name, msg) in &rep.violations {
            println!("violation {name}: {msg}");
        }
    }
    Ok(if rep.ok { EXIT_OK } else { EXIT_ERROR })
}

fn cmd_gen(a: GenArgs) -> itkit::Result<u8> {
    let graph_out = |g: &PartitionedGraph| match a.format {
        Format::Text => print_instance(g),
        Format::Json => print_instance_json(g) + "\n",
    };
    let text = match a.kind {
        Kind::RandomPartitioned => {
            let size = a.class_size.unwrap_or(2 * a.delta + 1);
            graph_out(&gen::random_partitioned(a.m, size, a.delta, a.seed))
        }
        Kind::CompleteBipartitePair => graph_out(&gen::complete_bipartite_pair(a.delta)),
        Kind::HypergraphRandom => {
            let h = gen::hypergraph_random(a.r, a.na, a.nb, a.max_degree, a.seed)?;
            match a.format {
                Format::Text => print_hypergraph(&h),
                Format::Json => return Err(Error::InvalidParameter("hypergraphs only have a text form".to_string())),
            }
        }
        Kind::CliquePlanted => {
            let s = gen::clique_planted(a.delta, a.cliques, a.extra, a.seed);
            let g = PartitionedGraph::new(s.clone(), (0..s.n()).map(|v| (v, vec![v])).collect())?;
            graph_out(&g)
        }
    };
    match &a.output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}
