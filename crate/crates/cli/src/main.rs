//! specter: star-complement toolkit for strongly regular graph existence.
//!
//! Exit codes: 0 = assertion held / work complete, 1 = assertion failed /
//! witness found, 2 = usage or input error.

mod dump;
mod scenarios;
mod stream;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use specter_core::clique::{max_clique_bnb, CliqueVerdict};
use specter_core::feasibility::{
    check_edge_equation, enumerate_b_vectors, srg_spectrum, DegreeHistogram,
};
use specter_core::interlacing::Interlacer;
use specter_core::isomorph::{canonical_form, CanonicalForm};
use specter_core::search::{
    extend_level, pipeline_check_with, SearchContext, VerdictStatus,
};
use specter_core::starcomp::{comparability_graph, CompOutcome};
use specter_core::{write_graph6, Graph, SrgParams};

use stream::{make_pool, read_graph6_lines, Shard};

#[derive(Parser)]
#[command(
    name = "specter",
    about = "Star-complement toolkit for strongly regular graph existence",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    v: u64,
    k: u64,
    lambda: u64,
    mu: u64,
}

impl ParamArgs {
    fn build(&self) -> Result<SrgParams> {
        Ok(SrgParams::new(self.v, self.k, self.lambda, self.mu)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Feasibility report: edge equation, spectrum, multiplicities.
    Params(ParamArgs),
    /// Solutions of the three-equation counting lemma for a degree histogram.
    Bvec {
        #[command(flatten)]
        params: ParamArgs,
        /// Degree histogram d_0,d_1,...  (length = subgraph order)
        #[arg(long)]
        degrees: String,
        /// Upper bound per index, e.g. --cap 4=0 (repeatable)
        #[arg(long = "cap")]
        caps: Vec<String>,
    },
    /// Filter graph6 lines on stdin to those interlacing the host spectrum.
    Interlace {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        jobs: Option<usize>,
        /// Process only items with canonical hash i mod n (format i/n).
        #[arg(long)]
        shard: Option<Shard>,
    },
    /// One extension level: interlacing one-vertex extensions of each input.
    Extend {
        #[command(flatten)]
        params: ParamArgs,
        /// The chosen integral eigenvalue (must match the spectrum).
        #[arg(long)]
        r: i64,
        /// Star-complement order; reaching it applies the eigenvalue filter.
        #[arg(long)]
        target: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        shard: Option<Shard>,
    },
    /// Comparability graphs (adjacency dumps) of star complements on stdin.
    Compgraph {
        #[arg(long)]
        r: i64,
        /// Suppress graphs with fewer vertices than this.
        #[arg(long, default_value_t = 0)]
        min_order: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        shard: Option<Shard>,
    },
    /// Clique verdicts (exact or reached-cutoff) for adjacency dumps on stdin.
    Clique {
        /// Decision cutoff; omitted means compute the exact clique number.
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Full per-seed pipeline: scc -> extension -> comparability -> clique.
    Pipeline {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        r: i64,
        /// Persist extension levels per seed under this directory.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a built-in scenario reproducing a checkable fact.
    Scenario {
        name: String,
        /// Allow the hours-scale scenarios to run.
        #[arg(long)]
        heavy: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Seed for sampled scenarios (current built-ins are exhaustive).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Params(p) => cmd_params(p),
        Command::Bvec {
            params,
            degrees,
            caps,
        } => cmd_bvec(params, &degrees, &caps),
        Command::Interlace {
            params,
            jobs,
            shard,
        } => cmd_interlace(params, jobs, shard),
        Command::Extend {
            params,
            r,
            target,
            jobs,
            shard,
        } => cmd_extend(params, r, target, jobs, shard),
        Command::Compgraph {
            r,
            min_order,
            jobs,
            shard,
        } => cmd_compgraph(r, min_order, jobs, shard),
        Command::Clique { cutoff, jobs } => cmd_clique(cutoff, jobs),
        Command::Pipeline {
            params,
            r,
            checkpoint_dir,
            jobs,
        } => cmd_pipeline(params, r, checkpoint_dir, jobs),
        Command::Scenario {
            name,
            heavy,
            jobs,
            seed,
        } => cmd_scenario(&name, heavy, jobs, seed),
    }
}

fn cmd_params(args: ParamArgs) -> Result<ExitCode> {
    let p = args.build()?;
    let edge_ok = check_edge_equation(&p);
    println!("params ({},{},{},{})", p.v, p.k, p.lambda, p.mu);
    println!(
        "edge equation (v-k-1)mu = k(k-lambda-1): {}",
        if edge_ok { "holds" } else { "fails" }
    );
    let spec = srg_spectrum(&p)?;
    let fmt = |x: f64, exact: Option<i64>| match exact {
        Some(e) => e.to_string(),
        None => format!("{x:.6}"),
    };
    let fmt_mult = |x: f64, exact: Option<u64>| match exact {
        Some(e) => e.to_string(),
        None => format!("{x:.6}"),
    };
    println!(
        "spectrum: k={} r={} f={} s={} g={}",
        spec.k,
        fmt(spec.r, spec.r_exact),
        fmt_mult(spec.f, spec.f_exact),
        fmt(spec.s, spec.s_exact),
        fmt_mult(spec.g, spec.g_exact),
    );
    println!(
        "multiplicity integrality: {}{}",
        if spec.multiplicities_feasible() {
            "ok"
        } else {
            "fails"
        },
        if spec.conference { " (conference)" } else { "" }
    );
    if let Some(f) = spec.f_exact {
        println!("star complement order: {}", p.v - f);
    }
    let ok = edge_ok && spec.multiplicities_feasible();
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_bvec(args: ParamArgs, degrees: &str, caps: &[String]) -> Result<ExitCode> {
    let p = args.build()?;
    let d: Vec<u64> = degrees
        .split(',')
        .map(|t| t.trim().parse::<u64>().context("parsing --degrees"))
        .collect::<Result<_>>()?;
    let hist = DegreeHistogram::new(d)?;
    let mut cap_pairs = Vec::new();
    for c in caps {
        let (i, n) = c
            .split_once('=')
            .ok_or_else(|| anyhow!("--cap must be i=n, got {c:?}"))?;
        cap_pairs.push((
            i.trim().parse::<usize>().context("cap index")?,
            n.trim().parse::<u64>().context("cap bound")?,
        ));
    }
    let solutions = enumerate_b_vectors(&p, &hist, &cap_pairs);
    for b in &solutions {
        let entries: Vec<String> = b.0.iter().map(|x| x.to_string()).collect();
        println!("({})", entries.join(","));
    }
    eprintln!("{} solution(s)", solutions.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_interlace(args: ParamArgs, jobs: Option<usize>, shard: Option<Shard>) -> Result<ExitCode> {
    let p = args.build()?;
    let tester = Interlacer::new(&p)?;
    let inputs = read_graph6_lines(&mut std::io::stdin().lock())?;
    let pool = make_pool(jobs)?;
    let mut kept: Vec<(CanonicalForm, String)> = pool.install(|| {
        inputs
            .par_iter()
            .filter_map(|(line, g)| {
                let form = canonical_form(g);
                if let Some(s) = &shard {
                    if !s.keeps(&form) {
                        return None;
                    }
                }
                tester.interlaces(g).then(|| (form, line.clone()))
            })
            .collect()
    });
    kept.sort();
    let mut out = std::io::stdout().lock();
    for (_, line) in &kept {
        writeln!(out, "{line}")?;
    }
    eprintln!("{} of {} graphs interlace", kept.len(), inputs.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_extend(
    args: ParamArgs,
    r: i64,
    target: usize,
    jobs: Option<usize>,
    shard: Option<Shard>,
) -> Result<ExitCode> {
    let p = args.build()?;
    let ctx = SearchContext::new(p)?;
    if ctx.r != r {
        bail!("--r {r} does not match the integral eigenvalue {} of the spectrum", ctx.r);
    }
    if target != ctx.target_order {
        eprintln!(
            "note: --target {target} differs from the star-complement order {}",
            ctx.target_order
        );
    }
    let inputs = read_graph6_lines(&mut std::io::stdin().lock())?;
    let mut selected: Vec<Graph> = Vec::new();
    for (lineno, (_, g)) in inputs.iter().enumerate() {
        if g.n() >= target {
            bail!(
                "input {} has order {} >= target {target}; nothing to extend",
                lineno + 1,
                g.n()
            );
        }
        if let Some((_, first)) = inputs.first() {
            if g.n() != first.n() {
                bail!(
                    "input {} has order {}, but the level starts at order {}",
                    lineno + 1,
                    g.n(),
                    first.n()
                );
            }
        }
        if let Some(s) = &shard {
            if !s.keeps(&canonical_form(g)) {
                continue;
            }
        }
        selected.push(g.clone());
    }
    let pool = make_pool(jobs)?;
    let (mut extended, stats) = pool.install(|| extend_level(&selected, &ctx, true))?;
    if !extended.is_empty() && extended[0].n() == target {
        extended.retain(|g| {
            specter_core::spectra::eigenvalue_multiplicity_exact(g, ctx.r) == 0
        });
    }
    let mut out = std::io::stdout().lock();
    for g in &extended {
        writeln!(out, "{}", write_graph6(g)?)?;
    }
    eprintln!(
        "generated={} pruned={} emitted={}",
        stats.generated,
        stats.generated - extended.len() as u64,
        extended.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_compgraph(
    r: i64,
    min_order: usize,
    jobs: Option<usize>,
    shard: Option<Shard>,
) -> Result<ExitCode> {
    let inputs = read_graph6_lines(&mut std::io::stdin().lock())?;
    let pool = make_pool(jobs)?;
    let results: Vec<(CanonicalForm, Result<CompOutcome>)> = pool.install(|| {
        inputs
            .par_iter()
            .filter_map(|(_, g)| {
                let form = canonical_form(g);
                if let Some(s) = &shard {
                    if !s.keeps(&form) {
                        return None;
                    }
                }
                let outcome = comparability_graph(g, r, min_order)
                    .map_err(|e| anyhow!("star complement rejected: {e}"));
                Some((form, outcome))
            })
            .collect()
    });
    let mut sorted = results;
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let mut text = String::new();
    let mut skipped = 0usize;
    for (_, outcome) in sorted {
        match outcome? {
            CompOutcome::Built(comp) => dump::write_dump(&comp.graph, &mut text),
            CompOutcome::TooSmall { vertices } => {
                skipped += 1;
                eprintln!("comparability graph with {vertices} vertices below min-order {min_order}");
            }
        }
    }
    print!("{text}");
    if skipped > 0 {
        eprintln!("{skipped} graph(s) below min-order suppressed");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_clique(cutoff: Option<usize>, jobs: Option<usize>) -> Result<ExitCode> {
    let mut input = String::new();
    std::io::Read::read_to_string(&mut std::io::stdin().lock(), &mut input)?;
    let graphs = dump::read_dumps(&input)?;
    let pool = make_pool(jobs)?;
    let verdicts: Vec<CliqueVerdict> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| max_clique_bnb(g, cutoff.unwrap_or(g.n() + 1)).verdict)
            .collect()
    });
    let mut any_reached = false;
    let mut out = std::io::stdout().lock();
    for v in &verdicts {
        match v {
            CliqueVerdict::Exact(w) => writeln!(out, "exact {w}")?,
            CliqueVerdict::Reached(c) => {
                any_reached = true;
                writeln!(out, "reached {c}")?;
            }
        }
    }
    Ok(if any_reached {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_pipeline(
    args: ParamArgs,
    r: i64,
    checkpoint_dir: Option<PathBuf>,
    jobs: Option<usize>,
) -> Result<ExitCode> {
    let p = args.build()?;
    let ctx = SearchContext::new(p)?;
    if ctx.r != r {
        bail!("--r {r} does not match the integral eigenvalue {} of the spectrum", ctx.r);
    }
    let inputs = read_graph6_lines(&mut std::io::stdin().lock())?;
    let pool = make_pool(jobs)?;
    let mut any_witness = false;
    for (i, (line, seed)) in inputs.iter().enumerate() {
        let dir = checkpoint_dir.as_ref().map(|d| d.join(format!("seed{i}")));
        if let Some(d) = &dir {
            std::fs::create_dir_all(d).context("creating checkpoint dir")?;
        }
        let mut persist = |order: usize, graphs: &[Graph]| {
            if let Some(d) = &dir {
                let mut text = String::new();
                for g in graphs {
                    if let Ok(s) = write_graph6(g) {
                        text.push_str(&s);
                        text.push('\n');
                    }
                }
                let _ = std::fs::write(d.join(format!("level{order}.g6")), text);
            }
        };
        let verdict =
            pool.install(|| pipeline_check_with(seed, &ctx, None, &mut persist));
        if ctx.target_order > verdict.scc_order + 2 {
            eprintln!(
                "warning: seed {i}: scc order {} leaves a gap of {} to the target {}; extension may be infeasible",
                verdict.scc_order,
                ctx.target_order - verdict.scc_order,
                ctx.target_order
            );
        }
        if let Some(d) = &dir {
            let manifest = format!(
                "seed={line}\nparams={},{},{},{}\nr={}\ntarget_order={}\nclique_target={}\nstatus={}\n",
                p.v,
                p.k,
                p.lambda,
                p.mu,
                ctx.r,
                ctx.target_order,
                ctx.clique_target,
                status_name(verdict.status),
            );
            std::fs::write(d.join("manifest"), manifest).context("writing manifest")?;
        }
        println!(
            "seed {i}: {} (scc={} generated={} pruned={} passed={})",
            status_name(verdict.status),
            verdict.scc_order,
            verdict.generated,
            verdict.pruned,
            verdict.passed
        );
        eprintln!(
            "seed {i}: comparability graphs tested: {}",
            verdict.comparability_tested
        );
        any_witness |= verdict.status == VerdictStatus::WitnessFound;
    }
    Ok(if any_witness {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn status_name(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Refuted => "refuted",
        VerdictStatus::WitnessFound => "witness-found",
        VerdictStatus::ExhaustedInconclusive => "exhausted-inconclusive",
    }
}

fn cmd_scenario(name: &str, heavy: bool, jobs: Option<usize>, seed: u64) -> Result<ExitCode> {
    let spec = match scenarios::builtin(name) {
        Some(spec) => spec,
        None => {
            let path = std::path::Path::new(name);
            if path.is_file() {
                scenarios::from_file(path)?
            } else {
                let known = scenarios::builtin_names().join(", ");
                bail!("unknown scenario {name:?} (and no such file); built-ins: {known}");
            }
        }
    };
    if spec.heavy && !heavy {
        bail!("scenario {name} is hours-scale; pass --heavy to run it");
    }
    let pool = make_pool(jobs)?;
    let report = pool.install(|| scenarios::run(&spec, seed))?;
    for line in &report.lines {
        println!("{line}");
    }
    Ok(if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
