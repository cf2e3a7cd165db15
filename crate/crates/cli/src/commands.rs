//! Implementations of the five subcommands.

use std::fs;
use std::path::Path;

use mmdim_core::config::{parse_model_config, parse_requirements};
use mmdim_core::coverage::{snr_coverage_auto, CoverageQuery};
use mmdim_core::localization::{bounds, effective_bandwidth, EffectiveBandwidth, SpectrumModel};
use mmdim_core::misalignment::{mean_misalignment_bound, BoundVariant};
use mmdim_core::model::{db_to_linear, watt_to_dbm, NetworkModel, Objective};
use mmdim_core::numerics::QuadratureSpec;
use mmdim_core::planner::{evaluate_plan, plan, tradeoff_curve};
use mmdim_core::sim::{mc_misalignment, FadingModel, SimConfig};
use mmdim_core::validation;

use crate::output::{fmt_g, Csv};
use crate::sweep::{SweepSpec, SweepVariable};
use crate::{CliError, Command};

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::CoverageSweep {
            config,
            output,
            variable,
            start,
            stop,
            steps,
            lambdas_km,
            gamma_db,
        } => coverage_sweep(
            &config, &output, variable, start, stop, steps, &lambdas_km, gamma_db,
        ),
        Command::Tradeoff {
            config,
            output,
            steps,
            gamma_db,
            rate_mbps,
            pilot_hz,
        } => tradeoff(&config, &output, steps, gamma_db, rate_mbps, pilot_hz),
        Command::MisalignmentSweep {
            config,
            output,
            theta_start,
            theta_stop,
            theta_steps,
            trials,
            seed,
            pilot_hz,
        } => misalignment_sweep(
            &config,
            &output,
            theta_start,
            theta_stop,
            theta_steps,
            trials,
            seed,
            pilot_hz,
        ),
        Command::Plan {
            config,
            requirements,
            output,
            thetas_deg,
            variant,
            pilot_hz,
        } => run_plan(
            &config,
            &requirements,
            output.as_deref(),
            &thetas_deg,
            variant.into(),
            pilot_hz,
        ),
        Command::Validate {
            config,
            seed,
            trials,
        } => validate(&config, seed, trials),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_model(path: &Path) -> Result<NetworkModel, CliError> {
    Ok(parse_model_config(&read_file(path)?)?)
}

/// Effective bandwidth of the ranging waveform: the flat-spectrum rule by
/// default, or a single spectral line when a pilot frequency is given.
fn ranging_bandwidth(
    model: &NetworkModel,
    pilot_hz: Option<f64>,
) -> Result<EffectiveBandwidth, CliError> {
    let f2 = match pilot_hz {
        None => effective_bandwidth(&SpectrumModel::FlatNominal, model.bandwidth())?,
        Some(f) => effective_bandwidth(&SpectrumModel::Sampled(vec![(f, 1.0)]), 0.0)?,
    };
    Ok(f2)
}

#[allow(clippy::too_many_arguments)]
fn coverage_sweep(
    config: &Path,
    output: &Path,
    variable: SweepVariable,
    start: Option<f64>,
    stop: Option<f64>,
    steps: usize,
    lambdas_km: &[f64],
    gamma_db: f64,
) -> Result<(), CliError> {
    let model = load_model(config)?;
    let (d_start, d_stop) = variable.default_range();
    let sweep = SweepSpec::new(
        variable,
        start.unwrap_or(d_start),
        stop.unwrap_or(d_stop),
        steps,
    )?;
    let quad = QuadratureSpec::default();

    let lambdas: Vec<f64> = if lambdas_km.is_empty() {
        vec![model.lambda_bs() * 1e3]
    } else {
        if variable == SweepVariable::Lambda {
            return Err(CliError::Core(mmdim_core::Error::UnknownKey {
                key: "--lambdas-km cannot be combined with --variable lambda".to_string(),
            }));
        }
        lambdas_km.to_vec()
    };

    let mut csv = Csv::new(&[variable.column(), "lambda_km", "snr_coverage"]);
    for &lam in &lambdas {
        let series = model.with_lambda(lam * 1e-3)?;
        for v in sweep.values() {
            let point = sweep.apply(&series, v)?;
            let gamma = if variable == SweepVariable::Gamma {
                db_to_linear(v)
            } else {
                db_to_linear(gamma_db)
            };
            let cov = snr_coverage_auto(&CoverageQuery::new(point, gamma)?, &quad)?;
            csv.row(&[fmt_g(v), fmt_g(lam), fmt_g(cov)]);
        }
    }
    write_file(output, &csv.into_string())
}

fn tradeoff(
    config: &Path,
    output: &Path,
    steps: usize,
    gamma_db: f64,
    rate_mbps: f64,
    pilot_hz: Option<f64>,
) -> Result<(), CliError> {
    let model = load_model(config)?;
    let quad = QuadratureSpec::default();
    let f2 = ranging_bandwidth(&model, pilot_hz)?;
    let betas = SweepSpec::new(SweepVariable::Beta, 0.0, 1.0, steps)?.values();
    let points = tradeoff_curve(
        &model,
        &betas,
        &f2,
        db_to_linear(gamma_db),
        rate_mbps * 1e6,
        &quad,
    )?;

    let mut csv = Csv::new(&["beta", "jeffrey", "rmse", "rate_coverage", "status"]);
    for p in &points {
        let (jeffrey, rmse, status) = match (p.jeffrey, p.rmse) {
            (Some(j), Some(r)) => (fmt_g(j), fmt_g(r), "ok"),
            _ => (String::new(), String::new(), "no-information"),
        };
        csv.row(&[
            fmt_g(p.beta),
            jeffrey,
            rmse,
            fmt_g(p.rate_coverage),
            status.to_string(),
        ]);
    }
    write_file(output, &csv.into_string())
}

#[allow(clippy::too_many_arguments)]
fn misalignment_sweep(
    config: &Path,
    output: &Path,
    theta_start: f64,
    theta_stop: f64,
    theta_steps: usize,
    trials: usize,
    seed: u64,
    pilot_hz: Option<f64>,
) -> Result<(), CliError> {
    let model = load_model(config)?;
    let quad = QuadratureSpec::default();
    let f2 = ranging_bandwidth(&model, pilot_hz)?;
    let bcrlb = bounds(&model, &f2, &quad)?.bcrlb;
    let sweep = SweepSpec::new(SweepVariable::Theta, theta_start, theta_stop, theta_steps)?;
    let cfg = SimConfig::new(trials, seed, FadingModel::BinomialMixture)?;

    let mut csv = Csv::new(&[
        "theta_deg",
        "bound_paper",
        "bound_chebyshev",
        "mc_estimate",
        "mc_stderr",
    ]);
    for theta_deg in sweep.values() {
        let m = sweep.apply(&model, theta_deg)?;
        let markov = mean_misalignment_bound(&m, bcrlb, &quad, BoundVariant::Markov)?;
        let cheb = mean_misalignment_bound(&m, bcrlb, &quad, BoundVariant::Chebyshev)?;
        let (mc, se) = mc_misalignment(None, bcrlb, m.theta(), m.h_bs(), &m, &cfg)?;
        csv.row(&[
            fmt_g(theta_deg),
            fmt_g(markov),
            fmt_g(cheb),
            fmt_g(mc),
            fmt_g(se),
        ]);
    }
    write_file(output, &csv.into_string())
}

fn run_plan(
    config: &Path,
    requirements: &Path,
    output: Option<&Path>,
    thetas_deg: &[f64],
    variant: BoundVariant,
    pilot_hz: Option<f64>,
) -> Result<(), CliError> {
    let model = load_model(config)?;
    let req = parse_requirements(&read_file(requirements)?)?;
    let quad = QuadratureSpec::default();
    let f2 = ranging_bandwidth(&model, pilot_hz)?;
    let thetas: Vec<f64> = thetas_deg.iter().map(|d| d.to_radians()).collect();

    let evaluation = evaluate_plan(&model, &req, &thetas, &f2, variant, &quad)?;

    if let Some(path) = output {
        let mut csv = Csv::new(&[
            "theta_deg",
            "beta_min",
            "beta_max",
            "beta_selected",
            "p_loc_dbm",
            "p_data_dbm",
            "feasible",
        ]);
        for c in &evaluation.candidates {
            let opt = |v: Option<f64>| v.map(fmt_g).unwrap_or_default();
            let (p_loc, p_data) = match c.beta_selected {
                Some(beta) => {
                    let m = model.with_beta(beta)?;
                    let (pl, pd) = m.power_split();
                    (fmt_g(watt_to_dbm(pl)), fmt_g(watt_to_dbm(pd)))
                }
                None => (String::new(), String::new()),
            };
            csv.row(&[
                fmt_g(c.theta.to_degrees()),
                opt(c.beta_min),
                opt(c.beta_max),
                opt(c.beta_selected),
                p_loc,
                p_data,
                if c.feasible { "true" } else { "false" }.to_string(),
            ]);
        }
        write_file(path, &csv.into_string())?;
    }

    // The per-candidate CSV is written even when no plan exists; the error
    // path below still exits non-zero.
    let p = plan(&model, &req, &thetas, &f2, variant, &quad)?;

    let objective = match req.objective {
        Objective::MaximizePositioning => "maximize positioning efficiency",
        Objective::MaximizeRate => "maximize data rate",
    };
    println!("objective: {objective}");
    println!(
        "selected: theta = {} deg, beta = {}",
        fmt_g(p.theta.to_degrees()),
        fmt_g(p.beta_selected)
    );
    println!(
        "power split: P_L = {} dBm ({} W), P_D = {} dBm ({} W)",
        fmt_g(watt_to_dbm(p.p_loc)),
        fmt_g(p.p_loc),
        fmt_g(watt_to_dbm(p.p_data)),
        fmt_g(p.p_data)
    );
    println!(
        "beta window: [{}, {}]",
        fmt_g(p.beta_min),
        fmt_g(p.beta_max)
    );
    println!("constraints:");
    for c in &p.constraints_report {
        println!(
            "  {}: required <= {}, achieved {}, {}",
            c.name,
            fmt_g(c.required),
            fmt_g(c.achieved),
            if c.satisfied { "satisfied" } else { "VIOLATED" }
        );
    }
    Ok(())
}

fn validate(config: &Path, seed: u64, trials: usize) -> Result<(), CliError> {
    let model = load_model(config)?;
    let mut gates = vec![validation::gate_mc_coverage_at(
        &model,
        db_to_linear(-10.0),
        seed,
        trials,
    )?];
    gates.extend(validation::run_all_gates(seed, trials)?);

    let mut failed = 0usize;
    for g in &gates {
        let verdict = if g.passed { "PASS" } else { "FAIL" };
        println!(
            "gate {:<45} {}  ({}; achieved {})",
            g.name,
            verdict,
            g.criterion,
            fmt_g(g.achieved)
        );
        if !g.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::Validation(failed));
    }
    println!("all {} gates passed", gates.len());
    Ok(())
}
