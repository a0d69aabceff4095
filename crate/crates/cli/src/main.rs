//! `coevo`: run, check and sweep coevolutionary action/opinion scenarios.

mod config;
mod output;
mod stats;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use coevo::analysis::{check, contour, is_nash, potential, ContourFn, TheoremId, Verdict, NASH_TOL};
use coevo::dynamics::{simulate, trace_csv, trace_jsonl};
use coevo::genesis::{complement, sub_seed};
use coevo::netcore::io::format_network;
use coevo::netcore::{classify_state, validate_network, Classification, TwoLayerNetwork};
use coevo::oracle::{audit_thm6, cross_validate, enumerate_equilibria, equilibria_json, N_MAX};
use coevo::{AgentKind, Trace};
use rayon::prelude::*;
use serde_json::{json, Value};

use config::{NetworkSource, Scenario};
use output::write_atomic;
use stats::wilson95;

#[derive(Parser, Debug)]
#[command(name = "coevo", version, about = "Coevolutionary action/opinion dynamics on two-layer networks")]
struct Cli {
    /// Scenario file (INI sections [network] [params] [initial] [schedule] [stop] [output]).
    #[arg(long, global = true, conflicts_with = "reproduce")]
    config: Option<PathBuf>,
    /// Built-in scenario: example3, example4 or example5.
    #[arg(long, global = true)]
    reproduce: Option<String>,
    /// Master seed; replaces every seed in the scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for written artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the dynamics and write the trace.
    Simulate,
    /// Evaluate a theorem's conditions. Exit 0 holds, 2 fails, 3 not applicable.
    Check {
        /// thm2, thm3, thm5, thm6, thm7 or eq22.
        theorem: String,
    },
    /// List every pure equilibrium by exhaustive search.
    Enumerate {
        #[arg(long, default_value_t = N_MAX)]
        n_max: usize,
    },
    /// Tabulate a condition over the (beta, lambda) unit square.
    Contour {
        /// thm3_vp, thm3_vn, thm5_rhs, thm7_gap or coo_pol_rhs.
        function: String,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        /// CSV path; defaults to <out>/<function>.csv.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate the scenario's network and write it with a replayable scenario file.
    Generate,
    /// Estimate basins of attraction over seeded initial states.
    Montecarlo {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Draw a fresh network for every sample.
        #[arg(long)]
        resample_network: bool,
    },
}

struct Ctx {
    json: bool,
    out: Option<PathBuf>,
}

impl Ctx {
    fn out_dir(&self, sc: Option<&Scenario>) -> PathBuf {
        self.out.clone().or_else(|| sc.map(|s| s.out_dir.clone())).unwrap_or_else(|| PathBuf::from("out"))
    }

    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("json"));
        } else {
            print!("{}", text());
        }
    }
}

fn scenario(cli: &Cli) -> Result<Scenario> {
    let mut sc = match (&cli.config, &cli.reproduce) {
        (Some(path), _) => Scenario::load(path)?,
        (None, Some(name)) => Scenario::parse(config::preset(name)?, Path::new("."))?,
        (None, None) => bail!("this command needs --config <path> or --reproduce <preset>"),
    };
    if let Some(seed) = cli.seed {
        sc.force_seed(seed);
    }
    Ok(sc)
}

fn homogeneous_anti(params: &coevo::Params) -> bool {
    params.kinds().iter().all(|&k| k == AgentKind::AntiCoordinating)
}

fn cmd_simulate(sc: &Scenario, ctx: &Ctx) -> Result<ExitCode> {
    let b = sc.build()?;
    let tr = simulate(&b.z0, &b.net, &b.params, &b.schedule, &b.options)?;
    let last = tr.last();
    let class = classify_state(last);
    let nash = is_nash(last, &b.net, &b.params, NASH_TOL)?;
    let oracle = if tr.converged {
        match cross_validate(&tr, &b.net, &b.params, N_MAX) {
            Ok(cv) => json!({ "ok": true, "report": cv }),
            Err(e) => {
                eprintln!("warning: oracle cross-check failed: {e}");
                json!({ "ok": false, "error": e.to_string() })
            }
        }
    } else {
        json!({ "ok": false, "error": "run did not converge" })
    };

    let dir = ctx.out_dir(Some(sc));
    let path = |suffix: &str| dir.join(format!("{}{suffix}", sc.prefix));
    let mut files = vec![path(".jsonl"), path(".csv")];
    write_atomic(&files[0], trace_jsonl(&tr).as_bytes())?;
    write_atomic(&files[1], trace_csv(&tr).as_bytes())?;
    let mut potential_note = Value::Null;
    if homogeneous_anti(&b.params) {
        let mut csv = String::from("t,phi\n");
        let mut valid = true;
        for (t, z) in tr.states.iter().enumerate() {
            let phi = potential(z, &b.net, &b.params)?;
            valid &= phi.valid;
            csv.push_str(&format!("{t},{:e}\n", phi.value));
        }
        let p = path("_potential.csv");
        write_atomic(&p, csv.as_bytes())?;
        files.push(p);
        potential_note = json!({ "valid": valid });
    }

    let summary = json!({
        "n": b.net.n(),
        "seed": sc.seed,
        "schedule": b.schedule.label(),
        "steps": tr.steps(),
        "converged": tr.converged,
        "stop": tr.stop,
        "classification": class.label(),
        "partition": partition_json(&class),
        "nash": { "holds": nash.holds, "violators": nash.violators().iter().map(|i| i + 1).collect::<Vec<_>>() },
        "oracle": oracle,
        "potential": potential_note,
        "final": {
            "x": last.actions().iter().map(|a| a.sign()).collect::<Vec<_>>(),
            "y": last.opinions(),
        },
        "files": files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>(),
    });
    let summary_path = path("_summary.json");
    write_atomic(&summary_path, serde_json::to_string_pretty(&summary)?.as_bytes())?;
    ctx.emit(&summary, || {
        format!(
            "steps: {}\nconverged: {}\nclassification: {}\nnash: {}\nwrote: {}\n",
            tr.steps(),
            tr.converged,
            class.label(),
            nash.holds,
            files.iter().chain([&summary_path]).map(|f| f.display().to_string()).collect::<Vec<_>>().join(", ")
        )
    });
    Ok(ExitCode::SUCCESS)
}

fn partition_json(class: &Classification) -> Value {
    match class {
        Classification::Polarized { positive, negative } => json!({
            "positive": positive.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "negative": negative.iter().map(|i| i + 1).collect::<Vec<_>>(),
        }),
        _ => Value::Null,
    }
}

fn cmd_check(sc: &Scenario, theorem: &str, ctx: &Ctx) -> Result<ExitCode> {
    let id: TheoremId = theorem.parse()?;
    let b = sc.build()?;
    let n = b.net.n();
    let vn = b.positive.as_ref().map(|vp| complement(vp, n));
    let partition = b.positive.as_deref().zip(vn.as_deref());
    if id == TheoremId::Thm6 && partition.is_none() {
        bail!("thm6 needs a partition: set positive in [initial] or [network]");
    }
    let report = check(id, &b.z0, partition, &b.net, &b.params)?;
    let mut value = report.to_json();
    if let (TheoremId::Thm6, Some((vp, vn)), true) = (id, partition, report.applicable) {
        let audit = audit_thm6(vp, vn, &b.net, &b.params)?;
        value["audit"] = json!({ "oracle_equilibrium": audit.oracle_equilibrium, "finding": audit.finding });
    }
    ctx.emit(&value, || serde_json::to_string_pretty(&value).expect("json") + "\n");
    Ok(ExitCode::from(match report.verdict {
        Verdict::Holds => 0,
        Verdict::Fails => 2,
        Verdict::NotApplicable => 3,
    }))
}

fn cmd_enumerate(sc: &Scenario, n_max: usize, ctx: &Ctx) -> Result<ExitCode> {
    let n = sc.network_size()?;
    if n > n_max {
        bail!("n = {n} exceeds n_max = {n_max}; enumeration visits all 2^n action profiles");
    }
    let b = sc.build()?;
    let list = enumerate_equilibria(&b.net, &b.params, n_max)?;
    let value = json!({ "n": n, "count": list.len(), "equilibria": equilibria_json(&list) });
    ctx.emit(&value, || {
        let mut s = format!("{} equilibria over {} profiles\n", list.len(), 1u64 << n);
        for c in &list {
            s.push_str(&coevo::oracle::fmt_profile(&c.x));
            s.push_str(if c.marginal { " (marginal)\n" } else { "\n" });
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_contour(function: &str, resolution: usize, output: Option<PathBuf>, ctx: &Ctx) -> Result<ExitCode> {
    let f: ContourFn = function.parse()?;
    let grid = contour::<f64>(f, resolution)?;
    let path = output.unwrap_or_else(|| ctx.out_dir(None).join(format!("{}.csv", f.as_str())));
    write_atomic(&path, grid.to_csv().as_bytes())?;
    let finite: Vec<f64> = grid.values.iter().copied().filter(|v| v.is_finite()).collect();
    let min = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let max = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let value = json!({
        "function": f.as_str(),
        "resolution": resolution,
        "min": min,
        "max": max,
        "nan_cells": grid.values.len() - finite.len(),
        "file": path.display().to_string(),
    });
    ctx.emit(&value, || format!("{}: min {min:.6}, max {max:.6}; wrote {}\n", f.as_str(), path.display()));
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(sc: &Scenario, ctx: &Ctx) -> Result<ExitCode> {
    let net = sc.build_network()?;
    let dir = ctx.out_dir(Some(sc));
    let net_path = dir.join("network.net");
    let ini_path = dir.join("scenario.ini");
    write_atomic(&net_path, format_network(&net).as_bytes())?;
    write_atomic(&ini_path, sc.to_ini().as_bytes())?;
    let rep = validate_network(&net);
    let value = json!({
        "n": net.n(),
        "valid": rep.valid,
        "symmetric": net.is_symmetric(),
        "max_row_deviation": net.w().max_row_deviation(),
        "network": net_path.display().to_string(),
        "scenario": ini_path.display().to_string(),
    });
    ctx.emit(&value, || {
        format!(
            "n = {}, symmetric: {}, valid: {}\nwrote {} and {}\n",
            net.n(),
            net.is_symmetric(),
            rep.valid,
            net_path.display(),
            ini_path.display()
        )
    });
    Ok(ExitCode::SUCCESS)
}

struct Sample {
    label: &'static str,
    converged: bool,
    preserved: Option<bool>,
}

fn preserved_partition(tr: &Trace) -> Option<bool> {
    let first = classify_state(tr.initial());
    matches!(first, Classification::Polarized { .. }).then(|| tr.states.iter().all(|z| classify_state(z) == first))
}

fn cmd_montecarlo(sc: &Scenario, samples: usize, resample: bool, ctx: &Ctx) -> Result<ExitCode> {
    if samples == 0 {
        bail!("samples must be at least 1");
    }
    if resample && matches!(sc.network, NetworkSource::File(_)) {
        bail!("--resample-network needs a generated network");
    }
    let fixed = if resample { None } else { Some(sc.build_network()?) };
    let run = |k: usize| -> Result<Sample> {
        let net = match &fixed {
            Some(net) => net.clone(),
            None => {
                let mut spec = sc.gen_spec().expect("generated network");
                spec.seed = sub_seed(spec.seed, k as u64);
                let params = sc.agent_params(spec.n)?;
                TwoLayerNetwork::single(spec.generate(Some(&params))?)?
            }
        };
        let n = net.n();
        let params = sc.agent_params(n)?;
        let (z0, _) = sc.build_initial(n, sub_seed(sc.initial_seed(), k as u64))?;
        let schedule = sc.build_schedule(n, sub_seed(sc.schedule_seed(), k as u64))?;
        let tr = simulate(&z0, &net, &params, &schedule, &sc.options(n))?;
        Ok(Sample {
            label: classify_state(tr.last()).label(),
            converged: tr.converged,
            preserved: preserved_partition(&tr),
        })
    };
    let results = (0..samples).into_par_iter().map(run).collect::<Result<Vec<_>>>()?;

    let interval = |count: usize| {
        let (lo, hi) = wilson95(count, samples);
        json!({ "count": count, "fraction": count as f64 / samples as f64, "ci95": [lo, hi] })
    };
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &results {
        *counts.entry(r.label).or_default() += 1;
    }
    let outcomes: serde_json::Map<String, Value> = counts.iter().map(|(k, &c)| (k.to_string(), interval(c))).collect();
    let converged = results.iter().filter(|r| r.converged).count();
    let polarized_starts: Vec<bool> = results.iter().filter_map(|r| r.preserved).collect();
    let preserved = (!polarized_starts.is_empty()).then(|| {
        let kept = polarized_starts.iter().filter(|&&p| p).count();
        json!({ "starts": polarized_starts.len(), "kept": kept, "fraction": kept as f64 / polarized_starts.len() as f64 })
    });
    let value = json!({
        "samples": samples,
        "seed": sc.seed,
        "resample_network": resample,
        "outcomes": outcomes,
        "converged": interval(converged),
        "partition_preserved": preserved,
    });
    let path = ctx.out_dir(Some(sc)).join("montecarlo.json");
    write_atomic(&path, serde_json::to_string_pretty(&value)?.as_bytes())?;
    ctx.emit(&value, || {
        let mut s = format!("{samples} samples, {converged} converged\n");
        for (label, &c) in &counts {
            let (lo, hi) = wilson95(c, samples);
            s.push_str(&format!("{label:>16}: {:.3} [{lo:.3}, {hi:.3}]\n", c as f64 / samples as f64));
        }
        s.push_str(&format!("wrote {}\n", path.display()));
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let ctx = Ctx { json: cli.json, out: cli.out.clone() };
    match &cli.command {
        Command::Contour { function, resolution, output } => cmd_contour(function, *resolution, output.clone(), &ctx),
        Command::Simulate => cmd_simulate(&scenario(cli)?, &ctx),
        Command::Check { theorem } => cmd_check(&scenario(cli)?, theorem, &ctx),
        Command::Enumerate { n_max } => cmd_enumerate(&scenario(cli)?, *n_max, &ctx),
        Command::Generate => cmd_generate(&scenario(cli)?, &ctx),
        Command::Montecarlo { samples, resample_network } => {
            cmd_montecarlo(&scenario(cli)?, *samples, *resample_network, &ctx)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli).context("coevo") {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
