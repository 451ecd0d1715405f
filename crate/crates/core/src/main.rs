use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use padiq::dynamics::{iterate, perturbed_iterate, DynSpec};
use padiq::error::PadiqError;
use padiq::evolution::{
    average, consciousness_measure, entropy, evolve, projective_measure_with_spectrum,
    rds_stream, records_to_jsonl, split_rng, PhaseSign, RdsConfig,
};
use padiq::grid::{omega, GridSpec, StateVector};
use padiq::io::{
    parse_config, parse_spike_csv, read_state, spikes_to_state, validate_keys, write_state,
};
use padiq::operators::{
    abs2_potential, hamiltonian_alpha, motivation_magnitude, neuron_activation,
    position_magnitude, spectrum, OperatorMatrix, ZeroMode,
};
use padiq::padic::{parse_padic, BaseConfig, PadicNumber};
use padiq::transform::{fast_fourier, fast_inverse_fourier, fourier, inverse_fourier};
use padiq::verify::run_checks;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 2;
const EXIT_SIZE: u8 = 3;

/// Numerical toolkit for ultrametric (p-adic) mental-space models.
#[derive(Parser)]
#[command(name = "padiq", version, about)]
struct Cli {
    /// Output directory; created if missing
    #[arg(long, default_value = "out", global = true)]
    out: PathBuf,
    /// Flat key=value config file; command-line flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigendecompose H = h^2 sum_j D_j^alpha + V and report degeneracies
    Spectrum(SpectrumArgs),
    /// Fourier-transform a state file
    Transform(TransformArgs),
    /// Evolve a state under H and track observables over a time grid
    Evolve(EvolveArgs),
    /// Repeated projective measurement of one observable
    Measure(MeasureArgs),
    /// Random-dynamical-selection measurement stream
    Rds(RdsArgs),
    /// Exact monomial orbit x -> x^n on Z_p
    Dynamics(DynamicsArgs),
    /// Turn a spike-train CSV into a state file plus summary statistics
    Ingest(IngestArgs),
    /// Run the acceptance checks and print a pass/fail table
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    p: Option<u64>,
    /// domain ball exponent N (support radius p^N)
    #[arg(long)]
    n: Option<u32>,
    /// resolution exponent M (cell radius p^-M)
    #[arg(long)]
    m: Option<u32>,
    /// number of axes
    #[arg(long)]
    d: Option<usize>,
    /// maximum number of grid cells
    #[arg(long)]
    cell_limit: Option<u64>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    alpha: Option<f64>,
    /// scale-constant exponent: h = p^-h_exp
    #[arg(long)]
    h_exp: Option<i64>,
    /// potential preset: none | abs2
    #[arg(long)]
    potential: Option<String>,
    /// zero-frequency convention: floor | ball-average
    #[arg(long)]
    zero_mode: Option<String>,
}

#[derive(Args)]
struct TransformArgs {
    /// input state file
    #[arg(long)]
    state: PathBuf,
    #[arg(long)]
    inverse: bool,
    /// use the radix-p fast transform instead of the dense kernel sum
    #[arg(long)]
    fast: bool,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// initial state file; default is the normalized indicator of Z_p
    #[arg(long)]
    state: Option<PathBuf>,
    #[arg(long)]
    h_exp: Option<i64>,
    #[arg(long)]
    potential: Option<String>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    time_steps: Option<usize>,
    /// phase convention: positive | conventional
    #[arg(long)]
    phase: Option<String>,
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    state: Option<PathBuf>,
    /// observable preset: position | motivation | activation
    #[arg(long)]
    observable: Option<String>,
    #[arg(long)]
    h_exp: Option<i64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RdsArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    state: Option<PathBuf>,
    /// comma-separated observable presets
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    h_exp: Option<i64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    memory_depth: Option<usize>,
}

#[derive(Args)]
struct DynamicsArgs {
    #[arg(long)]
    p: Option<u64>,
    /// digit precision K
    #[arg(long)]
    k: Option<u32>,
    /// monomial exponent n
    #[arg(long)]
    exponent: Option<u64>,
    /// start point in the textual format, e.g. "2^0 * (1 1 0)_2"
    #[arg(long)]
    x0: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    /// noise depth delta; 0 disables the perturbed run
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct IngestArgs {
    /// spike CSV with rows neuron_index,window_index,count
    spikes: PathBuf,
    #[arg(long)]
    p: Option<u64>,
    /// resolution exponent M of the target grid
    #[arg(long)]
    m: Option<u32>,
    /// mental-time window length in milliseconds (metadata only)
    #[arg(long)]
    window_ms: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// run only the fast closed-form checks
    #[arg(long)]
    quick: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                PadiqError::GridTooLarge { .. } => ExitCode::from(EXIT_SIZE),
                PadiqError::Io(_) => ExitCode::FAILURE,
                _ => ExitCode::from(EXIT_CONFIG),
            }
        }
    }
}

/// Settings resolved from the config file and overriding flags; the final
/// map is echoed into the output directory for provenance.
struct Resolved {
    map: BTreeMap<String, String>,
}

impl Resolved {
    fn new(
        config: &Option<PathBuf>,
        allowed: &[&str],
    ) -> Result<Self, PadiqError> {
        let map = match config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                let m = parse_config(&text)?;
                validate_keys(&m, allowed)?;
                m
            }
            None => BTreeMap::new(),
        };
        Ok(Resolved { map })
    }

    fn set_if<T: ToString>(&mut self, key: &str, flag: &Option<T>) {
        if let Some(v) = flag {
            self.map.insert(key.to_string(), v.to_string());
        }
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, PadiqError> {
        match self.map.get(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|_| PadiqError::Parse(format!("bad value `{raw}` for key `{key}`"))),
        }
    }

    fn get_string(&self, key: &str, default: &str) -> String {
        self.map.get(key).cloned().unwrap_or_else(|| default.to_string())
    }

    fn echo(&self, out_dir: &Path) -> Result<(), PadiqError> {
        let mut text = String::new();
        for (k, v) in &self.map {
            text.push_str(&format!("{k} = {v}\n"));
        }
        std::fs::write(out_dir.join("config.txt"), text)?;
        Ok(())
    }
}

fn ensure_out(dir: &Path) -> Result<(), PadiqError> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn grid_from(r: &Resolved) -> Result<GridSpec, PadiqError> {
    let p = r.get("p", 2u64)?;
    let n = r.get("n", 1u32)?;
    let m = r.get("m", 1u32)?;
    let d = r.get("d", 1usize)?;
    let limit = r.get("cell_limit", 4096u64)?;
    GridSpec::with_limit(p, n, m, d, limit)
}

fn fill_grid(r: &mut Resolved, g: &GridArgs) {
    r.set_if("p", &g.p);
    r.set_if("n", &g.n);
    r.set_if("m", &g.m);
    r.set_if("d", &g.d);
    r.set_if("cell_limit", &g.cell_limit);
}

fn zero_mode_from(name: &str) -> Result<ZeroMode, PadiqError> {
    match name {
        "floor" => Ok(ZeroMode::Floor),
        "ball-average" => Ok(ZeroMode::BallAverage),
        other => Err(PadiqError::Parse(format!(
            "zero_mode must be `floor` or `ball-average`, got `{other}`"
        ))),
    }
}

fn potential_from(grid: &GridSpec, name: &str) -> Result<Vec<f64>, PadiqError> {
    match name {
        "none" => Ok(vec![0.0; grid.total_cells()]),
        "abs2" => Ok(abs2_potential(grid)),
        other => Err(PadiqError::Parse(format!(
            "potential must be `none` or `abs2`, got `{other}`"
        ))),
    }
}

fn observable_from(
    grid: &GridSpec,
    name: &str,
    h_exp: i64,
) -> Result<OperatorMatrix, PadiqError> {
    match name {
        "position" => position_magnitude(grid),
        "motivation" => motivation_magnitude(grid, h_exp, ZeroMode::Floor),
        "activation" => neuron_activation(grid, None),
        other => Err(PadiqError::Parse(format!(
            "observable must be position | motivation | activation, got `{other}`"
        ))),
    }
}

fn default_state(grid: &GridSpec) -> Result<StateVector, PadiqError> {
    if grid.dim() == 1 {
        omega(grid, 0)?.normalized()
    } else {
        StateVector::constant(*grid, Complex64::new(1.0, 0.0)).normalized()
    }
}

fn load_state(path: &Option<PathBuf>, grid: &GridSpec) -> Result<StateVector, PadiqError> {
    match path {
        Some(p) => {
            let sv = read_state(p)?;
            if sv.grid() != *grid {
                return Err(PadiqError::GridMismatch(format!(
                    "state file {} does not match the requested grid",
                    p.display()
                )));
            }
            Ok(sv)
        }
        None => default_state(grid),
    }
}

fn run(cli: Cli) -> Result<ExitCode, PadiqError> {
    ensure_out(&cli.out)?;
    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(&cli, args),
        Command::Transform(args) => cmd_transform(&cli, args),
        Command::Evolve(args) => cmd_evolve(&cli, args),
        Command::Measure(args) => cmd_measure(&cli, args),
        Command::Rds(args) => cmd_rds(&cli, args),
        Command::Dynamics(args) => cmd_dynamics(&cli, args),
        Command::Ingest(args) => cmd_ingest(&cli, args),
        Command::Verify(args) => cmd_verify(args),
    }
}

const GRID_KEYS: [&str; 5] = ["p", "n", "m", "d", "cell_limit"];

fn cmd_spectrum(cli: &Cli, args: &SpectrumArgs) -> Result<ExitCode, PadiqError> {
    let allowed: Vec<&str> = [&GRID_KEYS[..], &["alpha", "h_exp", "potential", "zero_mode"]].concat();
    let mut r = Resolved::new(&cli.config, &allowed)?;
    fill_grid(&mut r, &args.grid);
    r.set_if("alpha", &args.alpha);
    r.set_if("h_exp", &args.h_exp);
    r.set_if("potential", &args.potential);
    r.set_if("zero_mode", &args.zero_mode);
    let grid = grid_from(&r)?;
    let alpha = r.get("alpha", 1.0f64)?;
    let h_exp = r.get("h_exp", 0i64)?;
    let potential = potential_from(&grid, &r.get_string("potential", "none"))?;
    let zero_mode = zero_mode_from(&r.get_string("zero_mode", "floor"))?;
    r.echo(&cli.out)?;

    let op = hamiltonian_alpha(&grid, h_exp, alpha, &potential, zero_mode)?;
    let spec = spectrum(&op, None)?;
    let mut csv = String::from("eigenvalue,multiplicity\n");
    for (value, mult) in spec.degeneracy_report() {
        csv.push_str(&format!("{value},{mult}\n"));
    }
    std::fs::write(cli.out.join("spectrum.csv"), csv)?;
    let report = serde_json::json!({
        "max_residual": spec.max_residual(&op)?,
        "orthonormality_defect": spec.max_orthonormality_defect()?,
        "hermiticity_defect": op.hermiticity_defect(),
        "levels": spec.degeneracy_report().len(),
        "cells": grid.total_cells(),
    });
    std::fs::write(cli.out.join("residuals.json"), serde_json::to_string_pretty(&report)?)?;
    println!("{} eigenvalues in {} levels -> {}", spec.eigenvalues.len(),
        spec.degeneracy_report().len(), cli.out.join("spectrum.csv").display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_transform(cli: &Cli, args: &TransformArgs) -> Result<ExitCode, PadiqError> {
    let sv = read_state(&args.state)?;
    let out = match (args.inverse, args.fast) {
        (false, false) => fourier(&sv)?,
        (true, false) => inverse_fourier(&sv)?,
        (false, true) => fast_fourier(&sv)?,
        (true, true) => fast_inverse_fourier(&sv)?,
    };
    let path = cli.out.join("transformed.state");
    write_state(&path, &out)?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_evolve(cli: &Cli, args: &EvolveArgs) -> Result<ExitCode, PadiqError> {
    let allowed: Vec<&str> =
        [&GRID_KEYS[..], &["h_exp", "potential", "t0", "t1", "time_steps", "phase"]].concat();
    let mut r = Resolved::new(&cli.config, &allowed)?;
    fill_grid(&mut r, &args.grid);
    r.set_if("h_exp", &args.h_exp);
    r.set_if("potential", &args.potential);
    r.set_if("t0", &args.t0);
    r.set_if("t1", &args.t1);
    r.set_if("time_steps", &args.time_steps);
    r.set_if("phase", &args.phase);
    let grid = grid_from(&r)?;
    let h_exp = r.get("h_exp", 0i64)?;
    let potential = potential_from(&grid, &r.get_string("potential", "abs2"))?;
    let t0 = r.get("t0", 0.0f64)?;
    let t1 = r.get("t1", 1.0f64)?;
    let steps = r.get("time_steps", 100usize)?;
    if steps < 2 {
        return Err(PadiqError::TooFewTimeSamples);
    }
    let phase = match r.get_string("phase", "positive").as_str() {
        "positive" => PhaseSign::Positive,
        "conventional" => PhaseSign::Conventional,
        other => {
            return Err(PadiqError::Parse(format!(
                "phase must be `positive` or `conventional`, got `{other}`"
            )))
        }
    };
    r.echo(&cli.out)?;

    let phi0 = load_state(&args.state, &grid)?.normalized()?;
    let h_op = hamiltonian_alpha(&grid, h_exp, 2.0, &potential, ZeroMode::Floor)?;
    let times: Vec<f64> = (0..steps)
        .map(|i| t0 + (t1 - t0) * i as f64 / (steps - 1) as f64)
        .collect();
    let evo = evolve(&phi0, &h_op, h_exp, &times, phase)?;
    let conscious = consciousness_measure(&evo, h_exp)?;

    let mut summary = String::from("time,norm,energy,entropy,consciousness\n");
    let mut density_csv = String::from("time,cell_digits,P\n");
    let cells = grid.cells();
    for ((t, state), m) in evo.times.iter().zip(&evo.states).zip(&conscious) {
        let energy = average(&h_op, &state.normalized()?)?;
        let density = state.density();
        let ent = entropy(&grid, &density)?;
        summary.push_str(&format!("{t},{},{energy},{ent},{m}\n", state.norm()));
        for (cell, p_val) in cells.iter().zip(&density) {
            density_csv.push_str(&format!("{t},{},{p_val}\n", cell.digit_label()));
        }
    }
    std::fs::write(cli.out.join("evolution.csv"), summary)?;
    std::fs::write(cli.out.join("density.csv"), density_csv)?;
    write_state(&cli.out.join("final.state"), evo.states.last().unwrap())?;
    println!("evolved {} samples -> {}", steps, cli.out.join("evolution.csv").display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_measure(cli: &Cli, args: &MeasureArgs) -> Result<ExitCode, PadiqError> {
    let allowed: Vec<&str> = [&GRID_KEYS[..], &["observable", "h_exp", "trials", "seed"]].concat();
    let mut r = Resolved::new(&cli.config, &allowed)?;
    fill_grid(&mut r, &args.grid);
    r.set_if("observable", &args.observable);
    r.set_if("h_exp", &args.h_exp);
    r.set_if("trials", &args.trials);
    r.set_if("seed", &args.seed);
    let grid = grid_from(&r)?;
    let h_exp = r.get("h_exp", 0i64)?;
    let trials = r.get("trials", 1000usize)?;
    let seed = r.get("seed", 0u64)?;
    let observable = r.get_string("observable", "position");
    r.echo(&cli.out)?;

    let op = observable_from(&grid, &observable, h_exp)?;
    let spec = spectrum(&op, None)?;
    let phi = load_state(&args.state, &grid)?.normalized()?;
    let weights = padiq::evolution::born_weights(&phi, &spec)?;
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for trial in 0..trials {
        // per-trial RNG: master seed with the trial index as stream number
        let mut rng = split_rng(seed, trial as u64);
        let out = projective_measure_with_spectrum(&phi, &spec, &mut rng)?;
        let key = weights
            .iter()
            .position(|(l, _)| (l - out.eigenvalue).abs() < 1e-9)
            .unwrap() as u64;
        *counts.entry(key).or_insert(0) += 1;
    }
    let mut csv = String::from("eigenvalue,count,frequency,born_weight\n");
    for (i, (lambda, w)) in weights.iter().enumerate() {
        let c = counts.get(&(i as u64)).copied().unwrap_or(0);
        csv.push_str(&format!("{lambda},{c},{},{w}\n", c as f64 / trials as f64));
    }
    std::fs::write(cli.out.join("histogram.csv"), csv)?;
    println!("{trials} trials of {observable} -> {}", cli.out.join("histogram.csv").display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_rds(cli: &Cli, args: &RdsArgs) -> Result<ExitCode, PadiqError> {
    let allowed: Vec<&str> =
        [&GRID_KEYS[..], &["family", "h_exp", "steps", "seed", "memory_depth"]].concat();
    let mut r = Resolved::new(&cli.config, &allowed)?;
    fill_grid(&mut r, &args.grid);
    r.set_if("family", &args.family);
    r.set_if("h_exp", &args.h_exp);
    r.set_if("steps", &args.steps);
    r.set_if("seed", &args.seed);
    r.set_if("memory_depth", &args.memory_depth);
    let grid = grid_from(&r)?;
    let h_exp = r.get("h_exp", 0i64)?;
    let steps = r.get("steps", 50usize)?;
    let seed = r.get("seed", 0u64)?;
    let memory_depth = r.get("memory_depth", 1usize)?;
    let family_names = r.get_string("family", "position,motivation");
    r.echo(&cli.out)?;

    let ops: Vec<OperatorMatrix> = family_names
        .split(',')
        .map(|name| observable_from(&grid, name.trim(), h_exp))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&OperatorMatrix> = ops.iter().collect();
    let phi = load_state(&args.state, &grid)?.normalized()?;
    let cfg = RdsConfig { seed, memory_depth, ..Default::default() };
    let records = rds_stream(&phi, &refs, &cfg, steps)?;
    std::fs::write(cli.out.join("records.jsonl"), records_to_jsonl(&records))?;
    println!("{} records -> {}", records.len(), cli.out.join("records.jsonl").display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_dynamics(cli: &Cli, args: &DynamicsArgs) -> Result<ExitCode, PadiqError> {
    let allowed = ["p", "k", "exponent", "x0", "steps", "delta", "seed"];
    let mut r = Resolved::new(&cli.config, &allowed)?;
    r.set_if("p", &args.p);
    r.set_if("k", &args.k);
    r.set_if("exponent", &args.exponent);
    r.set_if("x0", &args.x0);
    r.set_if("steps", &args.steps);
    r.set_if("delta", &args.delta);
    r.set_if("seed", &args.seed);
    let p = r.get("p", 2u64)?;
    let k = r.get("k", 32u32)?;
    let exponent = r.get("exponent", 2u64)?;
    let steps = r.get("steps", 20usize)?;
    let delta = r.get("delta", 0u32)?;
    let seed = r.get("seed", 0u64)?;
    let cfg = BaseConfig::new(p, k)?;
    let x0 = match r.map.get("x0") {
        Some(text) => {
            let x = parse_padic(text)?;
            if x.config() != cfg {
                return Err(PadiqError::Parse(format!(
                    "start point `{text}` does not use base {p}"
                )));
            }
            x
        }
        None => PadicNumber::from_integer(1 + p as i64, cfg),
    };
    r.echo(&cli.out)?;

    let spec = DynSpec::new(cfg, exponent, x0, steps)?;
    let report = if delta > 0 {
        let result = perturbed_iterate(&spec, delta, seed)?;
        println!("stability verdict: {:?}", result.verdict);
        let mut csv = String::from("step,distance_exponent,digits\n");
        for (step, (point, dist)) in
            result.perturbed.points.iter().zip(&result.perturbed.distance_exps).enumerate()
        {
            csv.push_str(&orbit_row(step, point, dist));
        }
        std::fs::write(cli.out.join("orbit_perturbed.csv"), csv)?;
        result.clean
    } else {
        iterate(&spec)?
    };
    let mut csv = String::from("step,distance_exponent,digits\n");
    for (step, (point, dist)) in report.points.iter().zip(&report.distance_exps).enumerate() {
        csv.push_str(&orbit_row(step, point, dist));
    }
    std::fs::write(cli.out.join("orbit.csv"), csv)?;
    println!(
        "{} steps, classification: {}{}",
        report.steps_completed(),
        report.classification,
        if report.precision_exhausted { " (precision exhausted)" } else { "" }
    );
    Ok(ExitCode::SUCCESS)
}

fn orbit_row(step: usize, point: &PadicNumber, dist: &Option<i64>) -> String {
    let digits = point
        .digits()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let d = dist.map(|e| e.to_string()).unwrap_or_else(|| "-inf".into());
    format!("{step},{d},{digits}\n")
}

fn cmd_ingest(cli: &Cli, args: &IngestArgs) -> Result<ExitCode, PadiqError> {
    let allowed = ["p", "m", "window_ms"];
    let mut r = Resolved::new(&cli.config, &allowed)?;
    r.set_if("p", &args.p);
    r.set_if("m", &args.m);
    r.set_if("window_ms", &args.window_ms);
    let p = r.get("p", 2u64)?;
    let window_ms = r.get("window_ms", 100.0f64)?;
    let text = std::fs::read_to_string(&args.spikes)?;
    let spikes = parse_spike_csv(&text)?;
    // default resolution: one level per recorded neuron
    let m = r.get("m", spikes.neuron_count as u32)?;
    r.echo(&cli.out)?;

    let grid = GridSpec::new(p, 0, m, 1)?;
    let sv = spikes_to_state(&grid, &spikes)?;
    let state_path = cli.out.join("ingested.state");
    write_state(&state_path, &sv)?;
    let density = sv.density();
    let a = neuron_activation(&grid, None)?;
    let summary = serde_json::json!({
        "windows": spikes.windows.len(),
        "neurons": spikes.neuron_count,
        "window_ms": window_ms,
        "p": p,
        "M": m,
        "entropy": entropy(&grid, &density)?,
        "mean_activation": average(&a, &sv)?,
    });
    std::fs::write(cli.out.join("summary.json"), serde_json::to_string_pretty(&summary)?)?;
    println!(
        "{} windows over {} neurons -> {}",
        spikes.windows.len(),
        spikes.neuron_count,
        state_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, PadiqError> {
    let results = run_checks(args.quick);
    let mut all_ok = true;
    for r in &results {
        println!("{}", r.line());
        all_ok &= r.passed;
    }
    if all_ok {
        println!("all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("some checks FAILED");
        Ok(ExitCode::FAILURE)
    }
}
