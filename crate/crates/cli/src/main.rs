//! pooling-lab: scenario-driven front end for the belief aggregation library.
//!
//! Exit codes: 0 success (and all checks pass), 1 at least one axiom check
//! found a violation, 2 parse/validation/io errors, 64 usage errors.

use clap::error::ErrorKind;
use pooling_cli::{demos, report, scenario};
use clap::{Args, Parser, Subcommand};
use pooling_core::axiom_lab::{run_check, sample, Axiom, CheckConfig, CheckVerdict};
use pooling_core::dynamics::conditional_ce;
use pooling_core::{Tolerance64};
use report::{num, render, vector, Line};
use scenario::{parse_scenario, QueryDoc, Scenario, ScenarioError};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pooling-lab", version, about = "Belief aggregation laboratory")]
struct Cli {
    /// Emit line-oriented machine output (section<TAB>key<TAB>value).
    #[arg(long, global = true)]
    machine: bool,

    /// Override the value-comparison tolerance.
    #[arg(long, global = true, value_name = "X")]
    eps_value: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Randomized-trial count for axiom checks.
    #[arg(long, value_name = "N")]
    trials: Option<usize>,

    /// RNG seed; defaults to $POOLING_LAB_SEED, then 0.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a scenario file and run its queries in order.
    Evaluate {
        file: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run one axiom check against a scenario's rule and experts.
    Check {
        file: String,
        #[arg(long, value_name = "ID")]
        axiom: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a built-in worked example (te1, te2, eq6_case1, eq6_case2,
    /// median_cases, dictatorship_cx).
    Demo { id: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let mut tol = Tolerance64::standard();
    if let Some(eps) = cli.eps_value {
        tol = match Tolerance64::new(tol.eps_simplex, eps, tol.eps_bisect) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: --eps-value: {e}");
                return ExitCode::from(2);
            }
        };
    }

    let result = match &cli.command {
        Command::Evaluate { file, run } => cmd_evaluate(file, run, &tol),
        Command::Check { file, axiom, run } => cmd_check(file, axiom, run, &tol),
        Command::Demo { id } => cmd_demo(id, &tol),
    };
    match result {
        Ok((lines, any_violated)) => {
            print!("{}", render(&lines, cli.machine));
            if any_violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn default_seed(run: &RunArgs) -> u64 {
    run.seed
        .or_else(|| {
            std::env::var("POOLING_LAB_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

fn load(file: &str, tol: &Tolerance64) -> Result<Scenario, String> {
    let text =
        std::fs::read_to_string(file).map_err(|e| format!("cannot read `{file}`: {e}"))?;
    parse_scenario(&text, tol).map_err(|e: ScenarioError| e.to_string())
}

fn cmd_evaluate(
    file: &str,
    run: &RunArgs,
    tol: &Tolerance64,
) -> Result<(Vec<Line>, bool), String> {
    let scn = load(file, tol)?;
    let config = CheckConfig::<f64> {
        seed: default_seed(run),
        trials: run.trials.unwrap_or(CheckConfig::<f64>::default().trials),
        ..CheckConfig::default()
    };
    run_queries(&scn, &config, tol)
}

fn cmd_check(
    file: &str,
    axiom: &str,
    run: &RunArgs,
    tol: &Tolerance64,
) -> Result<(Vec<Line>, bool), String> {
    let scn = load(file, tol)?;
    let axiom: Axiom = axiom.parse()?;
    let config = CheckConfig::<f64> {
        seed: default_seed(run),
        trials: run.trials.unwrap_or(CheckConfig::<f64>::default().trials),
        ..CheckConfig::default()
    };
    let mut lines = Vec::new();
    let violated = check_lines(&scn, axiom, &config, tol, &mut lines)?;
    Ok((lines, violated))
}

fn cmd_demo(id: &str, tol: &Tolerance64) -> Result<(Vec<Line>, bool), String> {
    let demo = demos::lookup(id)
        .ok_or_else(|| format!("unknown demo `{id}` (available: {})", demos::DEMO_IDS.join(", ")))?;
    Ok((demo(tol)?, false))
}

fn check_lines(
    scn: &Scenario,
    axiom: Axiom,
    config: &CheckConfig<f64>,
    tol: &Tolerance64,
    lines: &mut Vec<Line>,
) -> Result<bool, String> {
    let section = format!("check.{axiom}");
    let report = run_check(&scn.rule, axiom, Some(&scn.profile), config, tol)
        .map_err(|e| format!("check {axiom}: {e}"))?;
    lines.push(Line::new(&section, "trials", report.trials_run.to_string()));
    lines.push(Line::new(&section, "seed", report.seed.to_string()));
    match &report.verdict {
        CheckVerdict::Pass => {
            lines.push(Line::new(&section, "verdict", "pass"));
            Ok(false)
        }
        CheckVerdict::Violated(w) => {
            lines.push(Line::new(&section, "verdict", "violated"));
            lines.push(Line::new(&section, "witness.gap", num(w.gap)));
            lines.push(Line::new(&section, "witness.note", w.note.clone()));
            for (i, a) in w.acts.iter().enumerate() {
                lines.push(Line::new(&section, format!("witness.act{i}"), vector(a.utils())));
            }
            Ok(true)
        }
        CheckVerdict::Inapplicable(why) => {
            lines.push(Line::new(&section, "verdict", "inapplicable"));
            lines.push(Line::new(&section, "reason", why.clone()));
            Ok(false)
        }
    }
}

fn run_queries(
    scn: &Scenario,
    config: &CheckConfig<f64>,
    tol: &Tolerance64,
) -> Result<(Vec<Line>, bool), String> {
    let mut lines = Vec::new();
    let mut any_violated = false;
    for (i, q) in scn.queries.iter().enumerate() {
        let fail = |e: pooling_core::Error| format!("query {i}: {e}");
        match q {
            QueryDoc::Evaluate { act } => {
                let value = scn
                    .rule
                    .utility(&scn.profile, &scn.acts[act], tol)
                    .map_err(fail)?;
                lines.push(Line::new("evaluate", act, num(value)));
            }
            QueryDoc::Update { event } => {
                let cond = scn
                    .profile
                    .condition(&scn.events[event], tol)
                    .map_err(fail)?;
                for (name, b) in scn.expert_names.iter().zip(cond.beliefs()) {
                    lines.push(Line::new(
                        format!("update.{event}"),
                        name,
                        vector(b.probs()),
                    ));
                }
            }
            QueryDoc::ConditionalCe { act, event } => {
                let f = &scn.acts[act];
                let mut rng = sample::trial_rng(config.seed, i as u64);
                let hs = sample::h_samples(
                    &mut rng,
                    config.h_samples,
                    scn.states.size(),
                    config.act_range,
                    &[f],
                );
                let cc = conditional_ce(&scn.rule, &scn.profile, &scn.events[event], f, &hs, tol)
                    .map_err(fail)?;
                let section = format!("conditional_ce.{act}.{event}");
                for (j, (_, v)) in cc.value_by_h.iter().enumerate() {
                    lines.push(Line::new(&section, format!("value.h{j}"), num(*v)));
                }
                lines.push(Line::new(&section, "spread", num(cc.spread)));
            }
            QueryDoc::Check { axiom } => {
                let axiom: Axiom = axiom.parse()?;
                any_violated |= check_lines(scn, axiom, config, tol, &mut lines)?;
            }
            QueryDoc::Demo { id } => {
                let demo = demos::lookup(id).ok_or_else(|| format!("query {i}: unknown demo `{id}`"))?;
                lines.extend(demo(tol)?);
            }
        }
    }
    Ok((lines, any_violated))
}
