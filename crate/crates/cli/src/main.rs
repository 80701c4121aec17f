//! `plasmon`: figures, scenario reports and design sweeps for plasmon-assisted
//! down-conversion.

mod config;
mod error;
mod output;
mod scenario;

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use plasmon_spdc::entangle::{
    chsh_value, coincidence_probability, emitted_state_with_phase, is_separable, Analyzer, ChshAngles,
};
use plasmon_spdc::scalar::Cx;
use plasmon_spdc::spp::{interface_mode, spp_mode};
use plasmon_spdc::stratified::{enhancement_spectrum, resonance_angle, LayerStack, Polarization};
use rayon::prelude::*;

use config::{MaterialSet, ScenarioConfig, ScenarioFlags};
use error::{CliError, StageExt, EXIT_DOMAIN};
use output::{Format, Provenance, Report, Table, Value};
use scenario::{evaluate, evaluation_report, push_grating, push_match, Setup};

#[derive(Debug, Parser)]
#[command(name = "plasmon", version, about = "Plasmon-assisted SPDC: field enhancement, SPP dispersion, pair yield and entanglement")]
struct Cli {
    /// Flat `key = value` scenario file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    scenario: ScenarioFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pol {
    P,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepParam {
    Thickness,
    Angle,
    PrismIndex,
}

impl SweepParam {
    fn column(self) -> &'static str {
        match self {
            SweepParam::Thickness => "film_thickness_nm",
            SweepParam::Angle => "angle_deg",
            SweepParam::PrismIndex => "prism_index",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enhancement spectrum eta(lambda) at the resonance angle of the pair wavelength
    Fig1 {
        #[arg(long, default_value_t = 0.4)]
        lambda_min_um: f64,
        #[arg(long, default_value_t = 1.6)]
        lambda_max_um: f64,
        #[arg(long, default_value_t = 121)]
        steps: usize,
        /// Prism index; repeat for several curves (adds an `n0` column)
        #[arg(long = "prism")]
        prisms: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Pol::P)]
        polarization: Pol,
    },
    /// SPP effective index of the film / exit-medium interface
    Fig2 {
        #[arg(long, default_value_t = 0.7)]
        lambda_min_um: f64,
        #[arg(long, default_value_t = 1.6)]
        lambda_max_um: f64,
        #[arg(long, default_value_t = 91)]
        steps: usize,
        /// Constant metal permittivity `RE,IM` instead of the film table
        #[arg(long, allow_hyphen_values = true)]
        metal_eps: Option<String>,
    },
    /// Full scenario report
    Evaluate,
    /// Scenario rows over one parameter
    Sweep {
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
    /// Phase-matching solution for the configured pump angle
    Match,
    /// Grating period that lets the pump excite an SPP directly
    Grating,
    /// Emitted polarisation state and CHSH statistics
    Bell {
        /// Analyser angles `a,a',b,b'` in degrees from y
        #[arg(long, allow_hyphen_values = true)]
        angles_deg: Option<String>,
    },
}

fn grid(lo_um: f64, hi_um: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps == 0 || !(lo_um > 0.0 && lo_um <= hi_um && hi_um.is_finite()) {
        return Err(CliError::Config(format!(
            "invalid grid [{lo_um}, {hi_um}] with {steps} steps"
        )));
    }
    Ok(linspace(lo_um, hi_um, steps).into_iter().map(|x| x * 1e-6).collect())
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps)
        .map(|i| if i == steps - 1 { hi } else { lo + h * i as f64 })
        .collect()
}

fn parse_list(s: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("{what}: cannot parse {s:?}")))?;
    if v.len() != n {
        return Err(CliError::Config(format!("{what}: expected {n} values, got {}", v.len())));
    }
    Ok(v)
}

fn provenance(cfg: &ScenarioConfig, tables: Vec<String>) -> Provenance {
    Provenance {
        config_hash: cfg.hash(),
        tables,
    }
}

fn cmd_fig1(
    cfg: &ScenarioConfig,
    set: &MaterialSet,
    (lo, hi, steps): (f64, f64, usize),
    prisms: &[f64],
    pol: Pol,
) -> Result<(Table, Provenance), CliError> {
    let lambdas = grid(lo, hi, steps)?;
    let polarization = match pol {
        Pol::P => Polarization::P,
        Pol::S => Polarization::S,
    };
    let multi = !prisms.is_empty();
    let indices = if multi { prisms.to_vec() } else { vec![cfg.prism_index] };
    let setup = Setup::new(cfg, set)?;
    let mut table = Table::new(if multi { &["n0", "lambda_um", "eta"] } else { &["lambda_um", "eta"] });
    for n0 in indices {
        let stack: LayerStack<f64> = setup.stack.with_entry_index(n0).stage("stack")?;
        let theta = match cfg.angle_deg {
            Some(phi) => FRAC_PI_2 - phi.to_radians(),
            None => resonance_angle(&stack, cfg.lambda_pair_um * 1e-6).stage("resonance angle")?,
        };
        let spectrum = enhancement_spectrum(&stack, polarization, theta, &lambdas).stage("enhancement")?;
        for (l, eta) in spectrum {
            let mut row = Vec::with_capacity(3);
            if multi {
                row.push(Value::Num(n0));
            }
            row.push(Value::Num(l * 1e6));
            row.push(Value::Num(eta));
            table.rows.push(row);
        }
    }
    Ok((table, provenance(cfg, setup.tables)))
}

fn cmd_fig2(
    cfg: &ScenarioConfig,
    set: &MaterialSet,
    (lo, hi, steps): (f64, f64, usize),
    metal_eps: Option<&str>,
) -> Result<(Table, Provenance), CliError> {
    let lambdas = grid(lo, hi, steps)?;
    let (exit, exit_src) = set.resolve(&cfg.exit_medium)?;
    let mut tables: Vec<String> = exit_src.into_iter().collect();
    let toy = metal_eps.map(|s| parse_list(s, 2, "metal_eps")).transpose()?;
    let film = match toy {
        Some(_) => None,
        None => {
            let (m, src) = set.resolve(&cfg.film_material)?;
            tables.extend(src);
            Some(m)
        }
    };
    let rows: Vec<Vec<Value>> = lambdas
        .par_iter()
        .map(|&l| {
            let mode = match (&toy, &film) {
                (Some(eps), _) => {
                    let d = exit.permittivity(l).stage("spp mode")?;
                    spp_mode(Cx::new(eps[0], eps[1]), d, l).stage("spp mode")?
                }
                (None, Some(m)) => interface_mode(m, &exit, l).stage("spp mode")?,
                (None, None) => unreachable!("film resolved when no toy permittivity is given"),
            };
            Ok(vec![Value::Num(l * 1e6), Value::Num(mode.n_sp.re), Value::Num(mode.n_sp.im)])
        })
        .collect::<Result<_, CliError>>()?;
    tables.dedup();
    let mut table = Table::new(&["lambda_um", "re_nsp", "im_nsp"]);
    table.rows = rows;
    Ok((table, provenance(cfg, tables)))
}

fn cmd_sweep(
    cfg: &ScenarioConfig,
    set: &MaterialSet,
    param: SweepParam,
    (from, to, steps): (f64, f64, usize),
) -> Result<(Table, Provenance), CliError> {
    if steps == 0 || !(from.is_finite() && to.is_finite() && from <= to) {
        return Err(CliError::Config(format!("invalid sweep range [{from}, {to}] with {steps} steps")));
    }
    let values = linspace(from, to, steps);
    let evaluated: Vec<_> = values
        .par_iter()
        .map(|&v| {
            let mut c = cfg.clone();
            match param {
                SweepParam::Thickness => c.film_thickness_nm = v,
                SweepParam::Angle => c.angle_deg = Some(v),
                SweepParam::PrismIndex => c.prism_index = v,
            }
            c.validate()?;
            let setup = Setup::new(&c, set)?;
            match evaluate(&c, &setup, false) {
                Ok(e) => Ok((v, Some(e), setup.tables)),
                // a geometry with no solution is a data point, not a failed sweep
                Err(err) if err.exit_code() == EXIT_DOMAIN => Ok((v, None, setup.tables)),
                Err(err) => Err(err),
            }
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = Table::new(&[param.column(), "pump_theta_deg", "eta0", "eta1", "kappa", "regime"]);
    let mut best_eta: Option<(f64, f64)> = None;
    let mut best_kappa: Option<(f64, f64)> = None;
    let mut tables = Vec::new();
    for (v, e, t) in &evaluated {
        for s in t {
            if !tables.contains(s) {
                tables.push(s.clone());
            }
        }
        let Some(e) = e else {
            let mut row = vec![Value::Num(*v)];
            row.extend(std::iter::repeat_n(Value::Missing, 4));
            row.push("no-solution".into());
            table.rows.push(row);
            continue;
        };
        let kappa = e.yield_report.as_ref().map(|y| y.kappa);
        table.rows.push(vec![
            Value::Num(*v),
            Value::Num(e.theta().to_degrees()),
            Value::Num(e.eta[0]),
            Value::Num(e.eta[1]),
            kappa.into(),
            e.regime.label().into(),
        ]);
        if best_eta.is_none_or(|(_, b)| e.eta[1] > b) {
            best_eta = Some((*v, e.eta[1]));
        }
        if let Some(k) = kappa {
            if best_kappa.is_none_or(|(_, b)| k > b) {
                best_kappa = Some((*v, k));
            }
        }
    }
    if let Some((v, eta)) = best_eta {
        table.footer.push(("argmax_eta1".into(), Value::Num(v)));
        table.footer.push(("eta1_max".into(), Value::Num(eta)));
    }
    table.footer.push(("argmax_kappa".into(), best_kappa.map(|b| b.0).into()));
    table.footer.push(("kappa_max".into(), best_kappa.map(|b| b.1).into()));
    Ok((table, provenance(cfg, tables)))
}

fn cmd_match(cfg: &ScenarioConfig, set: &MaterialSet) -> Result<(Report, Provenance), CliError> {
    let setup = Setup::new(cfg, set)?;
    let e = evaluate(cfg, &setup, false)?;
    let mut r = Report::default();
    r.push("prism_index", cfg.prism_index);
    r.push("lambda_pair_um", cfg.lambda_pair_um);
    r.push("phi0_deg", e.phi0.to_degrees());
    r.push("pump_phi_deg", e.phi.to_degrees());
    r.push("regime", e.regime.label());
    push_match(&mut r, &e);
    Ok((r, provenance(cfg, setup.tables)))
}

fn cmd_grating(cfg: &ScenarioConfig, set: &MaterialSet) -> Result<(Report, Provenance), CliError> {
    let setup = Setup::new(cfg, set)?;
    let e = evaluate(cfg, &setup, true)?;
    let mut r = Report::default();
    r.push("prism_index", cfg.prism_index);
    r.push("lambda_pair_um", cfg.lambda_pair_um);
    r.push("pump_phi_deg", e.phi.to_degrees());
    if let Some(g) = &e.grating {
        push_grating(&mut r, g);
    }
    if let Some(m) = e.given_grating_mismatch {
        r.push("given_grating_mismatch_per_m", m);
    }
    Ok((r, provenance(cfg, setup.tables)))
}

fn cmd_bell(cfg: &ScenarioConfig, angles: Option<&str>) -> Result<(Report, Provenance), CliError> {
    let state = emitted_state_with_phase(cfg.relative_phase_rad);
    let mut r = Report::default();
    r.push("relative_phase_rad", cfg.relative_phase_rad);
    for (name, a) in ["yy", "yz", "zy", "zz"].iter().zip(state.amplitudes()) {
        r.push(&format!("amp_{name}_re"), a.re);
        r.push(&format!("amp_{name}_im"), a.im);
    }
    r.push("determinant_abs", state.determinant().norm());
    r.push("separable", is_separable(&state, 1e-12));
    let (y, z) = (Analyzer::new(0.0), Analyzer::new(FRAC_PI_2));
    for (name, s, i) in [("yy", y, y), ("yz", y, z), ("zy", z, y), ("zz", z, z)] {
        r.push(&format!("coincidence_{name}"), coincidence_probability(&state, s, i));
    }
    let opt = plasmon_spdc::entangle::chsh_optimum(&state);
    r.push("chsh_optimum", opt.s);
    r.push("chsh_a_deg", opt.angles.a.to_degrees());
    r.push("chsh_a_prime_deg", opt.angles.a_prime.to_degrees());
    r.push("chsh_b_deg", opt.angles.b.to_degrees());
    r.push("chsh_b_prime_deg", opt.angles.b_prime.to_degrees());
    if let Some(s) = angles {
        let v = parse_list(s, 4, "angles_deg")?;
        let a = ChshAngles::new(v[0].to_radians(), v[1].to_radians(), v[2].to_radians(), v[3].to_radians());
        r.push("chsh_value", chsh_value(&state, a));
    }
    Ok((r, provenance(cfg, Vec::new())))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = ScenarioConfig::load(cli.config.as_deref(), &cli.scenario)?;
    let set = MaterialSet::load(&cfg)?;
    let table_format = cli.format.unwrap_or(Format::Csv);
    let report_format = cli.format.unwrap_or(Format::Text);
    let text = match &cli.command {
        Command::Fig1 {
            lambda_min_um,
            lambda_max_um,
            steps,
            prisms,
            polarization,
        } => {
            let (t, p) = cmd_fig1(&cfg, &set, (*lambda_min_um, *lambda_max_um, *steps), prisms, *polarization)?;
            t.render(table_format, &p)
        }
        Command::Fig2 {
            lambda_min_um,
            lambda_max_um,
            steps,
            metal_eps,
        } => {
            let (t, p) = cmd_fig2(&cfg, &set, (*lambda_min_um, *lambda_max_um, *steps), metal_eps.as_deref())?;
            t.render(table_format, &p)
        }
        Command::Evaluate => {
            let setup = Setup::new(&cfg, &set)?;
            let e = evaluate(&cfg, &setup, false)?;
            evaluation_report(&cfg, &e).render(report_format, &provenance(&cfg, setup.tables))
        }
        Command::Sweep { param, from, to, steps } => {
            let (t, p) = cmd_sweep(&cfg, &set, *param, (*from, *to, *steps))?;
            t.render(table_format, &p)
        }
        Command::Match => {
            let (r, p) = cmd_match(&cfg, &set)?;
            r.render(report_format, &p)
        }
        Command::Grating => {
            let (r, p) = cmd_grating(&cfg, &set)?;
            r.render(report_format, &p)
        }
        Command::Bell { angles_deg } => {
            let (r, p) = cmd_bell(&cfg, angles_deg.as_deref())?;
            r.render(report_format, &p)
        }
    };
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
