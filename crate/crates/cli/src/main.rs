//! `carnot`: root-system verification, horizontal curvature sampling and
//! heat-flow runs from the command line.
//!
//! ```text
//! carnot verify-roots [--group ID --p P --q Q]
//! carnot curvature MODEL [--samples N]
//! carnot flow CONFIG.json [OUT_DIR]
//! carnot checks geometry|flow-properties
//! ```
//!
//! Exit codes: 0 success; 1 a verification or check failed; 2 usage, config
//! or I/O error; 3 flow hit `max_steps`; 4 flow blew up.

mod record;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use carnot::checks::{self, Suite};
use carnot::flow::{self, FlowConfig, RunStatus};
use carnot::geometry::{self, check_nonpositive_horizontal};
use carnot::roots::{self, HodgeGroup};
use carnot::Exec;

use record::{unix_now, write_atomic, RunRecord};

#[derive(Parser, Debug)]
#[command(name = "carnot", version, about = "Chow-condition root checks and horizontal heat flow")]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = "carnot-out")]
    out: PathBuf,
    /// Seed for sampled quantities.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Only report through the exit code and files.
    #[arg(long, global = true)]
    quiet: bool,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the compact-root sum condition and bracket consistency.
    VerifyRoots {
        /// One group id (so_even, so_odd, sp, e6_2, e7_7, e7_m5, e8_8,
        /// e8_m24, f4_4, f4_m20, g2_2); all ten by default.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Sample horizontal sectional curvatures of a model.
    Curvature {
        /// heisenberg3 or sl2r.
        model: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Run the heat flow described by a JSON config.
    Flow {
        config: PathBuf,
        /// Defaults to `--out`.
        out_dir: Option<PathBuf>,
    },
    /// Run a fixed-seed property suite.
    Checks {
        /// geometry or flow-properties.
        suite: String,
    },
}

struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: 2, err: e.into() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let res = match &cli.cmd {
        Command::VerifyRoots { group, p, q } => verify_roots(&cli, group.as_deref(), *p, *q, exec),
        Command::Curvature { model, samples } => curvature(&cli, model, *samples, exec),
        Command::Flow { config, out_dir } => {
            run_flow(&cli, config, out_dir.as_deref().unwrap_or(&cli.out), exec)
        }
        Command::Checks { suite } => run_checks(&cli, suite, exec),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn say(cli: &Cli, text: impl AsRef<str>) {
    if !cli.quiet {
        println!("{}", text.as_ref());
    }
}

fn verify_roots(
    cli: &Cli,
    group: Option<&str>,
    p: Option<usize>,
    q: Option<usize>,
    exec: Exec,
) -> CmdResult {
    let started = unix_now();
    let groups = match group {
        Some(id) => vec![HodgeGroup::from_id(id, p, q)?],
        None => HodgeGroup::default_list(),
    };
    for g in &groups {
        if g.outside_listed_analysis() {
            eprintln!("note: {g} with p = 1 is accepted but lies outside the listed case analysis");
        }
    }
    let (rows, witnesses) = roots::verify_all(&groups, exec)?;
    let mut tsv = Vec::new();
    roots::write_tsv(&mut tsv, &rows)?;
    let tsv_path = cli.out.join("roots.tsv");
    write_atomic(&tsv_path, &tsv).with_context(|| format!("writing {}", tsv_path.display()))?;

    let doc = json!({
        "coordinates": "twice the Euclidean coordinates; g2 roots as (a, b) = a*alpha + b*beta",
        "groups": witnesses,
    });
    let wit_path = cli.out.join("witnesses.json");
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    write_atomic(&wit_path, text.as_bytes())
        .with_context(|| format!("writing {}", wit_path.display()))?;

    let all_ok = rows.iter().all(|r| r.passed());
    say(cli, String::from_utf8_lossy(&tsv).trim_end());
    let config = json!({ "group": group, "p": p, "q": q });
    let mut rec = RunRecord::new("verify-roots", config, cli.seed, started);
    rec.outputs = vec![tsv_path, wit_path];
    rec.finish(
        &cli.out.join("verify-roots.run.json"),
        if all_ok { "pass" } else { "fail" },
    )?;
    Ok(if all_ok { 0 } else { 1 })
}

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn curvature(cli: &Cli, model_id: &str, samples: usize, exec: Exec) -> CmdResult {
    let started = unix_now();
    let model = geometry::model(model_id)?;
    if let Some(note) = model.note() {
        eprintln!("note: {note}");
    }
    let rep = check_nonpositive_horizontal(&model, samples, cli.seed, exec);
    let d = model.total_dim();
    let mut csv = String::from("sample");
    for name in ["x", "y", "z"] {
        for a in 0..d {
            write!(csv, ",{name}{a}").unwrap();
        }
    }
    csv.push_str(",k_total,k_base,a_norm_sq\n");
    for (i, s) in rep.samples.iter().enumerate() {
        write!(csv, "{i}").unwrap();
        for v in [&s.point, &s.plane[0], &s.plane[1]] {
            for c in v.iter() {
                write!(csv, ",{}", sig17(*c)).unwrap();
            }
        }
        writeln!(
            csv,
            ",{},{},{}",
            sig17(s.k_total),
            sig17(s.k_base),
            sig17(s.a_norm_sq)
        )
        .unwrap();
    }
    let path = cli.out.join(format!("curvature_{model_id}.csv"));
    write_atomic(&path, csv.as_bytes()).with_context(|| format!("writing {}", path.display()))?;
    let ok = rep.max_k.is_none_or(|k| k <= rep.tol);
    say(
        cli,
        format!(
            "{model_id}: {samples} planes, K in [{}, {}], {} above {:.0e}",
            rep.min_k.map_or("-".into(), |k| format!("{k:.6}")),
            rep.max_k.map_or("-".into(), |k| format!("{k:.6}")),
            rep.violations,
            rep.tol
        ),
    );
    let config = json!({ "model": model_id, "samples": samples });
    let mut rec = RunRecord::new("curvature", config, cli.seed, started);
    rec.outputs = vec![path];
    rec.finish(
        &cli.out.join(format!("curvature_{model_id}.run.json")),
        if ok { "pass" } else { "fail" },
    )?;
    Ok(if ok { 0 } else { 1 })
}

fn run_flow(cli: &Cli, config_path: &Path, out_dir: &Path, exec: Exec) -> CmdResult {
    let started = unix_now();
    let text = fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let raw: Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", config_path.display()))?;
    let config = FlowConfig::from_json(&text)?;
    let run = flow::run_flow(&config, exec)?;

    let mut csv = Vec::new();
    run.diagnostics.write_csv(&mut csv)?;
    let diag_path = out_dir.join("diagnostics.csv");
    write_atomic(&diag_path, &csv).with_context(|| format!("writing {}", diag_path.display()))?;
    let mut state = Vec::new();
    flow::write_state_json(&run.state, &mut state)?;
    let state_path = out_dir.join("final_state.json");
    write_atomic(&state_path, &state)
        .with_context(|| format!("writing {}", state_path.display()))?;

    if let Some(last) = run.diagnostics.last() {
        say(
            cli,
            format!(
                "{}: {} steps, t = {:.6}, E = {:.9}, sup|H tau| = {:.3e}, sup|tau| = {:.3e}, defect = {:.3e}",
                run.status.as_str(),
                run.steps,
                last.t,
                last.energy,
                last.sup_tension,
                last.sup_full_tension,
                last.defect
            ),
        );
    } else {
        say(cli, format!("{}: {} steps", run.status.as_str(), run.steps));
    }
    let mut rec = RunRecord::new("flow", raw, config.seed, started);
    rec.outputs = vec![diag_path, state_path];
    rec.finish(&out_dir.join("run.json"), run.status.as_str())?;
    Ok(match run.status {
        RunStatus::Converged => 0,
        RunStatus::MaxSteps => 3,
        RunStatus::BlowUp => 4,
    })
}

fn run_checks(cli: &Cli, suite: &str, exec: Exec) -> CmdResult {
    let suite: Suite = suite.parse().map_err(anyhow::Error::msg)?;
    let outcomes = checks::run_suite(suite, exec)?;
    for o in &outcomes {
        say(cli, o.to_string());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    say(
        cli,
        format!("{suite}: {} passed, {failed} failed", outcomes.len() - failed),
    );
    Ok(if failed == 0 { 0 } else { 1 })
}
