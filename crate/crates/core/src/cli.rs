//! Batch command line over the library.
//!
//! Every command prints one report to standard output, JSON by default or
//! CSV with `--format csv`. Exit codes: 0 on success, 1 when the report
//! carries an unstable or infeasible verdict, 2 on invalid input.

use std::ffi::OsString;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::chambers::{
    enumerate_walls, is_generic, moduli_dimension, parameter_interval, projectivity_flags,
    sigma_interval, small_tau_window,
};
use crate::error::{Error, Result};
use crate::invariants::{dual_invariants, dual_subtriple, RankDegree, SubtripleInvariants, TripleInvariants};
use crate::rational::Rational;
use crate::reduction::{check_slope_equivalence, dual_parameter, extension_invariants};
use crate::stability::{
    classify_line_pair, classify_phi_zero, evaluate_stability, mu_sigma, sigma_from_tau, slope_thresholds,
    tau_from_sigma, tau_prime, theta_tau, StabilityStatus,
};
use crate::vortex::{
    build_problem, integral_identity_check, moment_map_norm, solve_with, sweep_sigma, write_fields, PhiProfile,
    SolveOptions, SweepTemplate, VortexSummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "triples", version, about = "Stability arithmetic for holomorphic triples and a torus vortex solver")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

/// τ given directly or through σ.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Parameter {
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<Rational>,
}

impl Parameter {
    fn tau(&self, t: &TripleInvariants) -> Rational {
        match (self.tau, self.sigma) {
            (Some(tau), _) => tau,
            (None, Some(sigma)) => tau_from_sigma(t, sigma),
            (None, None) => unreachable!("clap enforces one of --tau, --sigma"),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// θ_τ of candidate subtriples and the resulting verdict.
    Theta {
        #[arg(long)]
        triple: TripleInvariants,
        /// Candidate subtriple `r1,r2,d1,d2`; repeatable.
        #[arg(long = "sub")]
        subs: Vec<SubtripleInvariants>,
        #[command(flatten)]
        parameter: Parameter,
        /// Classify `(E1, E2, 0)` instead of testing candidates.
        #[arg(long, conflicts_with = "line_pair")]
        phi_zero: bool,
        /// With `--phi-zero`: E1 is not semistable.
        #[arg(long, requires = "phi_zero")]
        e1_unstable: bool,
        /// With `--phi-zero`: E2 is not semistable.
        #[arg(long, requires = "phi_zero")]
        e2_unstable: bool,
        /// Complete classification for `r1 = r2 = 1` and `Φ ≠ 0`.
        #[arg(long)]
        line_pair: bool,
    },
    /// Converts between τ, σ and τ'.
    Convert {
        #[arg(long)]
        triple: TripleInvariants,
        #[command(flatten)]
        parameter: Parameter,
    },
    /// Admissible intervals, the small-τ window and, for a given τ, the
    /// slope bounds.
    Bounds {
        #[arg(long)]
        triple: TripleInvariants,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<Rational>,
    },
    /// Candidate walls inside the admissible interval.
    Walls {
        #[arg(long)]
        triple: TripleInvariants,
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
    /// Genericity and projectivity at τ.
    Generic {
        #[arg(long)]
        triple: TripleInvariants,
        #[arg(long, allow_hyphen_values = true)]
        tau: Rational,
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
    /// Expected dimension of the moduli space.
    Dimension {
        #[arg(long)]
        triple: TripleInvariants,
        #[arg(long)]
        genus: u32,
    },
    /// Dual triple, dual subtriple and dual parameter.
    Dual {
        #[arg(long)]
        triple: TripleInvariants,
        #[arg(long)]
        sub: Option<SubtripleInvariants>,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<Rational>,
    },
    /// Compares slope stability of the extension on `X × P¹` with
    /// σ-stability of the triple, for given or sampled subtriples.
    ReduceCheck {
        #[arg(long)]
        triple: TripleInvariants,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Rational,
        #[arg(long = "sub")]
        subs: Vec<SubtripleInvariants>,
        /// Number of random subtriples drawn with `--seed`.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Solves the vortex equations on an n × n torus grid.
    VortexSolve {
        #[command(flatten)]
        vortex: VortexArgs,
        #[arg(long, allow_hyphen_values = true, required_unless_present_all = ["tau", "tau_prime"])]
        sigma: Option<f64>,
        /// Explicit τ; must come with `--tau-prime` and satisfy τ + τ' = d1 + d2.
        #[arg(long, allow_hyphen_values = true, requires = "tau_prime", conflicts_with = "sigma")]
        tau: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "tau", conflicts_with = "sigma")]
        tau_prime: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Writes `x,y,u1,u2,res1,res2` to this CSV file.
        #[arg(long)]
        dump_fields: Option<PathBuf>,
    },
    /// Solves for each σ in a sorted list.
    VortexSweep {
        #[command(flatten)]
        vortex: VortexArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        sigmas: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VortexArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub d1: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub d2: i64,
    /// `constant:L`, `cosine:L:A` or `zero`.
    #[arg(long, default_value = "constant:3.141592653589793")]
    pub profile: PhiProfile,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Report { stdout: String::new(), stderr: text, exit_code: EXIT_INPUT }
            } else {
                Report { stdout: text, stderr: String::new(), exit_code: EXIT_OK }
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Report {
    match execute(config) {
        Ok(out) => {
            let stdout = match config.format {
                OutputFormat::Json => format!("{}\n", out.json),
                OutputFormat::Csv => render_csv(&out),
            };
            Report {
                stdout,
                stderr: String::new(),
                exit_code: if out.verdict_failed { EXIT_VERDICT } else { EXIT_OK },
            }
        }
        Err(e) => Report {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            exit_code: EXIT_INPUT,
        },
    }
}

struct Output {
    json: Value,
    /// Header and rows for CSV; `None` falls back to `key,value` lines.
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    verdict_failed: bool,
}

impl Output {
    fn plain(json: Value) -> Self {
        Output { json, table: None, verdict_failed: false }
    }
}

fn render_csv(out: &Output) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match &out.table {
        Some((header, rows)) => {
            w.write_record(header).expect("in-memory write");
            for row in rows {
                w.write_record(row).expect("in-memory write");
            }
        }
        None => {
            w.write_record(["key", "value"]).expect("in-memory write");
            match &out.json {
                Value::Object(map) => {
                    for (k, v) in map {
                        w.write_record([k.as_str(), &scalar(v)]).expect("in-memory write");
                    }
                }
                v => w.write_record(["value", &scalar(v)]).expect("in-memory write"),
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn execute(config: &RunConfig) -> Result<Output> {
    match &config.command {
        Command::Theta { triple, subs, parameter, phi_zero, e1_unstable, e2_unstable, line_pair } => {
            theta(triple, subs, parameter.tau(triple), *phi_zero, (!e1_unstable, !e2_unstable), *line_pair)
        }
        Command::Convert { triple, parameter } => Ok(convert(triple, parameter.tau(triple))),
        Command::Bounds { triple, tau } => bounds(triple, *tau),
        Command::Walls { triple, window } => walls(triple, *window),
        Command::Generic { triple, tau, window } => {
            let generic = is_generic(triple, *tau, *window)?;
            let flags = projectivity_flags(triple, *tau, *window)?;
            Ok(Output::plain(json!({
                "tau": tau,
                "generic": generic,
                "coprime": num_integer::gcd(triple.total_rank(), triple.total_degree()) == 1,
                "quasi_projective": flags.quasi_projective,
                "projective": flags.projective,
            })))
        }
        Command::Dimension { triple, genus } => Ok(Output::plain(json!(moduli_dimension(triple, *genus)))),
        Command::Dual { triple, sub, tau } => dual(triple, *sub, *tau),
        Command::ReduceCheck { triple, sigma, subs, samples } => {
            reduce_check(triple, *sigma, subs, *samples, config.seed)
        }
        Command::VortexSolve { vortex, sigma, tau, tau_prime, tol, max_iter, dump_fields } => {
            vortex_solve(vortex, *sigma, tau.zip(*tau_prime), SolveOptions { tol: *tol, max_iter: *max_iter }, dump_fields.as_ref())
        }
        Command::VortexSweep { vortex, sigmas, tol, max_iter } => {
            vortex_sweep(vortex, sigmas, SolveOptions { tol: *tol, max_iter: *max_iter })
        }
    }
}

fn theta(
    t: &TripleInvariants,
    subs: &[SubtripleInvariants],
    tau: Rational,
    phi_zero: bool,
    semistable: (bool, bool),
    line_pair: bool,
) -> Result<Output> {
    let verdict = if phi_zero {
        classify_phi_zero(t, tau, semistable.0, semistable.1)
    } else if line_pair {
        classify_line_pair(t, tau, true)?
    } else {
        if subs.is_empty() {
            return Err(Error::InvalidInput(
                "theta needs at least one --sub, or --phi-zero / --line-pair".into(),
            ));
        }
        for s in subs {
            s.check_within(t)?;
        }
        evaluate_stability(t, tau, subs)?
    };
    let sigma = sigma_from_tau(t, tau);
    let mut rows = Vec::new();
    let mut candidates = Vec::new();
    for s in subs {
        let th = theta_tau(t, s, tau)?;
        let ms = mu_sigma(s, sigma)?;
        rows.push(vec![s.to_string(), th.to_string(), ms.to_string()]);
        candidates.push(json!({ "sub": s, "theta": th, "mu_sigma": ms }));
    }
    let json = json!({
        "triple": t,
        "tau": tau,
        "sigma": sigma,
        "candidates": candidates,
        "verdict": verdict,
    });
    let table = (!subs.is_empty()).then(|| (vec!["sub", "theta", "mu_sigma"], rows));
    Ok(Output { json, table, verdict_failed: verdict.status == StabilityStatus::Unstable })
}

fn convert(t: &TripleInvariants, tau: Rational) -> Output {
    let th = slope_thresholds(t, tau);
    Output::plain(json!({
        "tau": tau,
        "sigma": sigma_from_tau(t, tau),
        "tau_prime": tau_prime(t, tau),
        "dual_parameter": dual_parameter(t, tau),
        "mu_sigma": t.mu(),
        "sub_e1_bound": th.sub_e1_bound,
        "sub_kernel_bound": th.sub_kernel_bound,
    }))
}

fn bounds(t: &TripleInvariants, tau: Option<Rational>) -> Result<Output> {
    let iv = parameter_interval(t);
    let mut map = Map::new();
    map.insert("interval".into(), json!(iv));
    map.insert("sigma_interval".into(), json!(sigma_interval(t)));
    map.insert("small_tau_window".into(), json!(small_tau_window(t)));
    if let Some(tau) = tau {
        if !iv.contains(tau) {
            let upper = iv.upper.map_or("inf".to_string(), |u| u.to_string());
            return Err(Error::OutOfRange(format!(
                "tau = {tau} is outside the admissible interval ({}, {upper}) of {t}",
                iv.lower
            )));
        }
        map.insert("tau".into(), json!(tau));
        map.insert("thresholds".into(), json!(slope_thresholds(t, tau)));
    }
    Ok(Output::plain(Value::Object(map)))
}

fn walls(t: &TripleInvariants, window: u32) -> Result<Output> {
    let dec = enumerate_walls(t, window)?;
    let rows = dec.walls.iter().map(|w| vec![w.to_string()]).collect();
    Ok(Output {
        json: json!({ "interval": dec.interval, "walls": dec.walls }),
        table: Some((vec!["wall"], rows)),
        verdict_failed: false,
    })
}

fn dual(t: &TripleInvariants, sub: Option<SubtripleInvariants>, tau: Option<Rational>) -> Result<Output> {
    let mut map = Map::new();
    map.insert("triple".into(), json!(t));
    map.insert("dual".into(), json!(dual_invariants(t)));
    if let Some(s) = sub {
        map.insert("sub".into(), json!(s));
        map.insert("dual_sub".into(), json!(dual_subtriple(t, &s)?));
    }
    if let Some(tau) = tau {
        map.insert("tau".into(), json!(tau));
        map.insert("dual_tau".into(), json!(dual_parameter(t, tau)));
    }
    Ok(Output::plain(Value::Object(map)))
}

/// A random admissible proper subtriple of `t`, degrees in `[-20, 20]`.
fn sample_subtriple(rng: &mut impl Rng, t: &TripleInvariants) -> SubtripleInvariants {
    loop {
        let (r1, r2) = (rng.gen_range(0..=t.r1()), rng.gen_range(0..=t.r2()));
        let mut degree = |r: i64, cap: i64, full: bool| {
            if r == 0 {
                0
            } else if full {
                rng.gen_range(-20..=cap.clamp(-20, 20))
            } else {
                rng.gen_range(-20..=20)
            }
        };
        let d1 = degree(r1, t.d1(), r1 == t.r1());
        let d2 = degree(r2, t.d2(), r2 == t.r2());
        if let Ok(s) = SubtripleInvariants::new(r1, r2, d1, d2) {
            if s.check_within(t).is_ok() && !s.is_full(t) {
                return s;
            }
        }
    }
}

fn reduce_check(
    t: &TripleInvariants,
    sigma: Rational,
    subs: &[SubtripleInvariants],
    samples: usize,
    seed: u64,
) -> Result<Output> {
    let ext = extension_invariants(t, sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut destabilized = false;
    let mut disagreements = 0;
    for s in subs {
        s.check_within(t)?;
        let e = check_slope_equivalence(t, s, sigma)?;
        destabilized |= !e.f_slope_test;
        disagreements += usize::from(!e.agree());
        rows.push(vec![
            s.to_string(),
            e.f_slope_test.to_string(),
            e.theta_test.to_string(),
            e.sigma_slope_test.to_string(),
        ]);
        checks.push(json!({
            "sub": s,
            "f_slope_test": e.f_slope_test,
            "theta_test": e.theta_test,
            "sigma_slope_test": e.sigma_slope_test,
        }));
    }
    for _ in 0..samples {
        let s = sample_subtriple(&mut rng, t);
        disagreements += usize::from(!check_slope_equivalence(t, &s, sigma)?.agree());
    }
    let json = json!({
        "triple": t,
        "sigma": sigma,
        "extension_rank": ext.rank,
        "extension_slope": ext.slope,
        "checks": checks,
        "samples": samples,
        "seed": seed,
        "disagreements": disagreements,
    });
    let table = (!subs.is_empty())
        .then(|| (vec!["sub", "f_slope_test", "theta_test", "sigma_slope_test"], rows));
    Ok(Output { json, table, verdict_failed: destabilized || disagreements > 0 })
}

fn vortex_solve(
    args: &VortexArgs,
    sigma: Option<f64>,
    taus: Option<(f64, f64)>,
    opts: SolveOptions,
    dump: Option<&PathBuf>,
) -> Result<Output> {
    let sigma = sigma.or(taus.map(|(t, tp)| t - tp)).expect("clap requires σ or τ, τ'");
    let mut p = build_problem(args.n, args.d1, args.d2, sigma, args.profile)?;
    if let Some((tau, tau_prime)) = taus {
        p.tau = tau;
        p.tau_prime = tau_prime;
    }
    let s = solve_with(&p, opts)?;
    if let Some(path) = dump {
        let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        write_fields(BufWriter::new(file), &p, &s)?;
    }
    let summary = VortexSummary::new(&p, &s);
    let mut json = serde_json::to_value(&summary).expect("summary serializes");
    json["moment_map_norm"] = json!(moment_map_norm(&p, &s.u1, &s.u2)?);
    if s.feasible {
        json["integral_identity_defect"] = json!(integral_identity_check(&p, &s)?);
    }
    Ok(Output { json, table: None, verdict_failed: !s.feasible })
}

fn vortex_sweep(args: &VortexArgs, sigmas: &[f64], opts: SolveOptions) -> Result<Output> {
    let template = SweepTemplate { n: args.n, d1: args.d1, d2: args.d2, profile: args.profile, options: opts };
    let table = sweep_sigma(&template, sigmas)?;
    let rows = table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.sigma.to_string(),
                r.status.to_string(),
                r.feasible.to_string(),
                r.residual_sup.to_string(),
                r.iterations.to_string(),
            ]
        })
        .collect();
    let consistent = table.monotone && table.threshold_consistent;
    Ok(Output {
        json: serde_json::to_value(&table).expect("table serializes"),
        table: Some((vec!["sigma", "status", "feasible", "residual_sup", "iterations"], rows)),
        verdict_failed: !consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(line: &str) -> Report {
        run_args(std::iter::once("triples").chain(line.split_whitespace()))
    }

    #[test]
    fn walls_example() {
        let r = run_line("walls --triple 2,1,2,0 --window 4 --format json");
        assert_eq!(r.exit_code, 0, "{}", r.stderr);
        assert_eq!(r.stdout.trim(), r#"{"interval":["1","2"],"walls":["3/2"]}"#);
    }

    #[test]
    fn dimension_example() {
        let r = run_line("dimension --triple 2,1,2,0 --genus 2");
        assert_eq!(r.stdout.trim(), "6");
    }

    #[test]
    fn decimal_rational_rejected() {
        let r = run_line("convert --triple 1,1,1,0 --tau 1.5");
        assert_eq!(r.exit_code, 2);
        assert!(!r.stderr.is_empty());
    }

    #[test]
    fn unstable_exit_code() {
        let r = run_line("theta --triple 1,1,1,0 --sub 1,0,1,0 --tau 1/2");
        assert_eq!(r.exit_code, 1, "{}", r.stdout);
        let r = run_line("theta --triple 1,1,1,0 --sub 1,0,1,0 --tau 2");
        assert_eq!(r.exit_code, 0);
    }

    #[test]
    fn out_of_interval_tau() {
        let r = run_line("generic --triple 2,1,2,0 --tau 3");
        assert_eq!(r.exit_code, 2);
        assert!(r.stderr.contains("outside the admissible interval"));
    }
}
