//! `flp`: evaluate facility-location mechanisms on the unit interval, check
//! fairness axioms, hunt for manipulations, run best-response dynamics, and
//! tabulate welfare approximation bounds.
//!
//! All randomized searches use a seeded ChaCha8 stream, so identical flags
//! and seeds reproduce identical output on any platform.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use flp_cli::io::{parse_n_range, read_profile};
use flp_cli::table::{generate_matrix, TABLE_PROPERTIES};
use flp_core::axioms::{check_instance, search_axiom, AxiomId, Holding, SearchVerdict};
use flp_core::equilibrium::verify_uniform_equivalence;
use flp_core::mechanisms::{evaluate, MechanismSpec};
use flp_core::sampling::Sampler;
use flp_core::strategy::{group_manipulation_search, strategyproofness_search};
use flp_core::welfare::{figure1_table, worst_case_binary, worst_case_search};
use flp_core::{LocationProfile, Tolerances};

#[derive(Parser)]
#[command(name = "flp", version, about = "Facility location mechanisms on [0,1]")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TolArgs {
    /// Slack granted on the satisfying side of axiom comparisons
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    /// Convergence tolerance for iterative solvers
    #[arg(long, default_value_t = 1e-10)]
    solver_tol: f64,
    /// Step of report/search grids
    #[arg(long, default_value_t = 0.01)]
    grid: f64,
}

impl TolArgs {
    fn build(&self) -> Result<Tolerances> {
        Tolerances::new(self.eps, self.solver_tol, self.grid)
            .map_err(|e| anyhow::anyhow!("invalid tolerances: {e}"))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one mechanism (or the whole catalogue) on a profile
    Run {
        /// Mechanism spec, e.g. `median`, `phantom:0.25,0.75`, `constant:0.5`
        #[arg(long, conflicts_with = "all")]
        mech: Option<String>,
        /// Evaluate every catalogue mechanism
        #[arg(long)]
        all: bool,
        #[arg(long)]
        profile: PathBuf,
        /// Write CSV here instead of printing a table
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Check axioms on an instance, search for counterexamples, or print the
    /// full mechanism-by-property matrix
    Axioms {
        #[arg(long, conflicts_with = "table")]
        mech: Option<String>,
        /// Comma-separated axiom ids: ifs,ufs,pf,spf,prop,unanimity,pareto,anon,mono,strictmono,uncomp
        #[arg(long)]
        axiom: Option<String>,
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Search profile space for a counterexample instead of checking one instance
        #[arg(long)]
        search: bool,
        /// Print the Yes/No matrix over the six named mechanisms
        #[arg(long)]
        table: bool,
        /// Agent-count range `lo..hi` (or a single count)
        #[arg(long, default_value = "2..6")]
        n: String,
        /// Random profiles per agent count, on top of the exhaustive binary scan
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Search for profitable misreports
    Manipulate {
        #[arg(long)]
        mech: String,
        /// Scan deviations from this specific profile
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Agent-count range for a profile-space search
        #[arg(long, default_value = "2..6")]
        n: String,
        /// Largest coalition to try (profile mode only)
        #[arg(long, default_value_t = 1)]
        coalition: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Best-response dynamics and equilibrium checks
    Equilibrium {
        #[arg(long, default_value = "average")]
        mech: String,
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Number of random true profiles to test instead of one file
        #[arg(long, conflicts_with = "profile")]
        random: Option<usize>,
        #[arg(long, default_value = "2..8")]
        n: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-7)]
        gain_tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// |facility - uniform phantom target| allowed for a match
        #[arg(long, default_value_t = 1e-6)]
        match_tol: f64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Welfare approximation ratios and bound tables
    Approx {
        /// Emit the bounds table (CSV columns n,ifs_bound,ufs_bound,cmedian_worst,uniform_worst)
        #[arg(long)]
        figure1: bool,
        #[arg(long, conflicts_with = "figure1")]
        mech: Option<String>,
        #[arg(long, default_value = "2..20")]
        n: String,
        /// Exact scan over binary profiles (default); turn off for random continuous search
        #[arg(long, default_value_t = false)]
        random: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
}

fn catalogue(n: usize) -> Vec<MechanismSpec> {
    let mut specs = vec![
        MechanismSpec::Median,
        MechanismSpec::ConstrainedMedian,
        MechanismSpec::Nash,
        MechanismSpec::Average,
        MechanismSpec::UniformPhantom,
        MechanismSpec::Midpoint,
    ];
    specs.retain(|s| s.validate_for(n).is_ok());
    specs
}

fn parse_mech(s: &str) -> Result<MechanismSpec> {
    s.parse::<MechanismSpec>()
        .map_err(|e| anyhow::anyhow!("bad mechanism spec {s:?}: {e}"))
}

fn parse_axioms(s: Option<&str>) -> Result<Vec<AxiomId>> {
    match s {
        None => Ok(vec![
            AxiomId::Ifs,
            AxiomId::Ufs,
            AxiomId::Pf,
            AxiomId::Spf,
            AxiomId::Proportionality,
            AxiomId::Unanimity,
            AxiomId::Pareto,
        ]),
        Some(list) => list
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<AxiomId>()
                    .map_err(|e| anyhow::anyhow!("unknown axiom {a:?}: {e}"))
            })
            .collect(),
    }
}

fn cmd_run(
    mech: Option<String>,
    all: bool,
    profile: PathBuf,
    out: Option<PathBuf>,
    tol: &Tolerances,
) -> Result<()> {
    let profile = read_profile(&profile)?;
    let specs = if all {
        catalogue(profile.n())
    } else {
        let spec = parse_mech(mech.as_deref().context("need --mech or --all")?)?;
        vec![spec]
    };
    let mut csv_text = String::from("mechanism,facility\n");
    for spec in &specs {
        let output = evaluate(spec, &profile, tol)?;
        let y = output.y.value();
        writeln!(csv_text, "{spec},{y}")?;
        if out.is_none() {
            match output.diagnostics {
                Some(d) => println!("{:<12} {y}  ({} solver iterations)", spec.to_string(), d.iterations),
                None => println!("{:<12} {y}", spec.to_string()),
            }
        }
    }
    if let Some(path) = out {
        std::fs::write(&path, csv_text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_axioms(
    mech: Option<String>,
    axiom: Option<String>,
    profile: Option<PathBuf>,
    search: bool,
    table: bool,
    n: &str,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<()> {
    if table {
        let n_range = parse_n_range(n)?;
        let rows = generate_matrix(n_range, samples, tol.grid_step, seed, tol)?;
        print!("{:<12}", "mechanism");
        for prop in TABLE_PROPERTIES {
            print!(" {:>9}", prop.label());
        }
        println!();
        let mut notes = Vec::new();
        for row in &rows {
            print!("{:<12}", row.mechanism.to_string());
            for (prop, expected, result) in &row.cells {
                let shown = if result.holds { "Yes" } else { "No" };
                let marker = if result.holds == *expected { "" } else { "!" };
                print!(" {:>9}", format!("{shown}{marker}"));
                if let Some(ce) = &result.counterexample {
                    notes.push(format!("{} / {}: {ce}", row.mechanism, prop.label()));
                }
            }
            println!();
        }
        if !notes.is_empty() {
            println!("\ncounterexamples:");
            for note in notes {
                println!("  {note}");
            }
        }
        return Ok(());
    }

    let spec = parse_mech(mech.as_deref().context("need --mech (or --table)")?)?;
    let axioms = parse_axioms(axiom.as_deref())?;
    if search {
        let n_range = parse_n_range(n)?;
        for axiom in axioms {
            let report = search_axiom(&spec, axiom, n_range, samples, seed, tol)?;
            match report.verdict {
                SearchVerdict::NoCounterexampleFound => println!(
                    "{spec} / {axiom}: no counterexample ({} instances, {})",
                    report.instances_checked, report.search_space
                ),
                SearchVerdict::Counterexample { profile, verdict } => println!(
                    "{spec} / {axiom}: counterexample {:?} (margin {:.6})",
                    profile.locations(),
                    verdict.margin
                ),
            }
        }
    } else {
        let path = profile.context("need --profile (or --search / --table)")?;
        let profile = read_profile(&path)?;
        spec.validate_for(profile.n())
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let y = evaluate(&spec, &profile, tol)?.y.value();
        println!("{spec} on {:?} -> {y}", profile.locations());
        for axiom in axioms {
            let Some(verdict) = check_instance(axiom, &profile, y, tol) else {
                bail!("axiom {axiom} needs --search mode (it quantifies over profiles)");
            };
            let word = match verdict.holding {
                Holding::Holds => "holds",
                Holding::HoldsVacuously => "holds (vacuously)",
                Holding::Fails => "FAILS",
            };
            println!("  {:<10} {word}  margin {:+.6}", axiom.to_string(), verdict.margin);
        }
    }
    Ok(())
}

fn cmd_manipulate(
    mech: &str,
    profile: Option<PathBuf>,
    n: &str,
    coalition: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<()> {
    let spec = parse_mech(mech)?;
    match profile {
        Some(path) => {
            let profile = read_profile(&path)?;
            let witness =
                group_manipulation_search(&spec, &profile, coalition, tol.grid_step, tol)?;
            match witness {
                None => println!(
                    "{spec}: no profitable misreport on {:?} (coalitions up to {coalition})",
                    profile.locations()
                ),
                Some(w) => println!(
                    "{spec}: agents {:?} report {:?}, distances {:.6} -> {:.6} (gain {:.6})",
                    w.agents, w.misreports, w.honest_distance, w.deviant_distance, w.gain
                ),
            }
        }
        None => {
            let n_range = parse_n_range(n)?;
            let report =
                strategyproofness_search(&spec, n_range, samples, tol.grid_step, seed, tol)?;
            match report.witness {
                None => println!(
                    "{spec}: no manipulation found ({} instances, {})",
                    report.instances_checked, report.search_space
                ),
                Some(w) => println!(
                    "{spec}: on {:?}, agent {} reports {} (distance {:.6} -> {:.6}, gain {:.6})",
                    w.true_profile.locations(),
                    w.agents[0],
                    w.misreports[0],
                    w.honest_distance,
                    w.deviant_distance,
                    w.gain
                ),
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_equilibrium(
    mech: &str,
    profile: Option<PathBuf>,
    random: Option<usize>,
    n: &str,
    seed: u64,
    gain_tol: f64,
    max_iters: usize,
    match_tol: f64,
    tol: &Tolerances,
) -> Result<()> {
    let spec = parse_mech(mech)?;
    let check = |profile: &LocationProfile| -> Result<bool> {
        let cmp = verify_uniform_equivalence(&spec, profile, max_iters, gain_tol, match_tol, tol)?;
        println!(
            "{:?}: facility {:.9}, target {:.9}, {} iterations, residual gain {:.2e} -> {}",
            profile.locations(),
            cmp.result.facility.value(),
            cmp.uniform_target,
            cmp.result.iterations,
            cmp.result.max_residual_gain,
            if cmp.matches { "match" } else { "MISMATCH" }
        );
        Ok(cmp.matches)
    };
    match (profile, random) {
        (Some(path), _) => {
            check(&read_profile(&path)?)?;
        }
        (None, Some(count)) => {
            let (n_lo, n_hi) = parse_n_range(n)?;
            let mut sampler = Sampler::new(seed);
            let mut matches = 0usize;
            for _ in 0..count {
                let size = n_lo + sampler.index(n_hi - n_lo + 1);
                if check(&sampler.random_profile(size))? {
                    matches += 1;
                }
            }
            println!("{matches}/{count} equilibria matched the uniform phantom outcome");
        }
        (None, None) => bail!("need --profile or --random"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_approx(
    figure1: bool,
    mech: Option<String>,
    n: &str,
    random: bool,
    samples: usize,
    seed: u64,
    out: Option<PathBuf>,
    tol: &Tolerances,
) -> Result<()> {
    if figure1 {
        let n_range = parse_n_range(n)?;
        let rows = figure1_table(n_range, tol)?;
        let mut text = String::from("n,ifs_bound,ufs_bound,cmedian_worst,uniform_worst\n");
        for r in &rows {
            writeln!(
                text,
                "{},{},{},{},{}",
                r.n, r.ifs_bound, r.ufs_bound, r.cmedian_worst, r.uniform_worst
            )?;
        }
        match out {
            Some(path) => std::fs::write(&path, text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        return Ok(());
    }
    let spec = parse_mech(mech.as_deref().context("need --mech or --figure1")?)?;
    let (n_lo, n_hi) = parse_n_range(n)?;
    for size in n_lo..=n_hi {
        let result = if random {
            worst_case_search(&spec, size, samples, seed, tol)?
        } else {
            worst_case_binary(&spec, size, tol)?
        };
        println!(
            "{spec} n={size}: worst ratio {:.9} at {:?} ({} profiles scanned)",
            result.worst_ratio,
            result.worst_profile.locations(),
            result.search_space
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run {
            mech,
            all,
            profile,
            out,
            tol,
        } => cmd_run(mech, all, profile, out, &tol.build()?),
        Cmd::Axioms {
            mech,
            axiom,
            profile,
            search,
            table,
            n,
            samples,
            seed,
            tol,
        } => cmd_axioms(
            mech,
            axiom,
            profile,
            search,
            table,
            &n,
            samples,
            seed,
            &tol.build()?,
        ),
        Cmd::Manipulate {
            mech,
            profile,
            n,
            coalition,
            samples,
            seed,
            tol,
        } => cmd_manipulate(&mech, profile, &n, coalition, samples, seed, &tol.build()?),
        Cmd::Equilibrium {
            mech,
            profile,
            random,
            n,
            seed,
            gain_tol,
            max_iters,
            match_tol,
            tol,
        } => cmd_equilibrium(
            &mech,
            profile,
            random,
            &n,
            seed,
            gain_tol,
            max_iters,
            match_tol,
            &tol.build()?,
        ),
        Cmd::Approx {
            figure1,
            mech,
            n,
            random,
            samples,
            seed,
            out,
            tol,
        } => cmd_approx(figure1, mech, &n, random, samples, seed, out, &tol.build()?),
    }
}
