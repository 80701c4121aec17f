//! End-to-end scenario evaluation shared by `evaluate`, `sweep`, `match`
//! and `grating`.

use std::f64::consts::FRAC_PI_2;

use plasmon_spdc::constants::wavelength_from_omega;
use plasmon_spdc::entangle::{chsh_optimum, emitted_state_with_phase, ChshOptimum};
use plasmon_spdc::materials::Material;
use plasmon_spdc::phasematch::{
    classify_regime, degenerate_match, design_grating_period, nondegenerate_match, pump_k_parallel, GratingDesign,
    InterfaceDispersion, PhaseMatchSolution, Regime,
};
use plasmon_spdc::spdc::{pump_omega_for_pair, yield_kappa, SpdcScenario, YieldReport};
use plasmon_spdc::spp::{coherence_length_damping, interface_mode, GratingSpec, SppMode};
use plasmon_spdc::stratified::{resonance_angle, stack_response, LayerStack, PlaneWaveContext, Polarization};

use crate::config::{MaterialSet, ScenarioConfig};
use crate::error::{CliError, StageExt};
use crate::output::{Report, Value};

/// Resolved media of one configuration.
pub struct Setup {
    pub stack: LayerStack<f64>,
    pub film: Material<f64>,
    pub exit: Material<f64>,
    pub tables: Vec<String>,
}

impl Setup {
    pub fn new(cfg: &ScenarioConfig, set: &MaterialSet) -> Result<Self, CliError> {
        let (film, film_src) = set.resolve(&cfg.film_material)?;
        let (exit, exit_src) = set.resolve(&cfg.exit_medium)?;
        let stack = LayerStack::kretschmann(cfg.prism_index, film.clone(), cfg.film_thickness_nm * 1e-9, exit.clone())
            .stage("stack")?;
        let mut tables: Vec<String> = film_src.into_iter().chain(exit_src).collect();
        tables.dedup();
        Ok(Self {
            stack,
            film,
            exit,
            tables,
        })
    }

    pub fn dispersion(&self) -> InterfaceDispersion<f64> {
        InterfaceDispersion::new(self.film.clone(), self.exit.clone())
    }
}

/// p-polarised enhancement at one wavelength and angle from the normal.
pub fn eta_at(stack: &LayerStack<f64>, lambda: f64, theta: f64) -> Result<f64, CliError> {
    let ctx = PlaneWaveContext::new(lambda, Polarization::P, theta).stage("enhancement")?;
    Ok(stack_response(stack, &ctx).stage("enhancement")?.eta)
}

pub struct Evaluation {
    pub omega0: f64,
    /// Reflectance-dip angle at the pair wavelength, from the normal.
    pub theta_resonance: f64,
    /// Degenerate pump angle from the SPP index, from the plane.
    pub phi0: f64,
    /// Pump angle actually used, from the plane.
    pub phi: f64,
    pub regime: Regime,
    pub matched: Option<PhaseMatchSolution<f64>>,
    pub eta: [f64; 3],
    pub eta_overridden: [bool; 2],
    pub mode: SppMode<f64>,
    pub l_damping: f64,
    pub l_delta: f64,
    pub yield_report: Option<YieldReport<f64>>,
    pub grating: Option<GratingDesign<f64>>,
    pub given_grating_mismatch: Option<f64>,
    pub chsh: ChshOptimum<f64>,
}

impl Evaluation {
    pub fn theta(&self) -> f64 {
        FRAC_PI_2 - self.phi
    }

    /// `κ / κ(η = 1, l_Δ = 1 mm)`.
    pub fn gain_vs_reference(&self) -> Option<f64> {
        self.yield_report
            .as_ref()
            .map(|y| y.enhancement_gain * (self.l_delta / 1e-3).powi(2))
    }
}

pub fn evaluate(cfg: &ScenarioConfig, setup: &Setup, with_grating: bool) -> Result<Evaluation, CliError> {
    let lambda_pair = cfg.lambda_pair_um * 1e-6;
    let omega0 = pump_omega_for_pair(lambda_pair);
    let n0 = cfg.prism_index;
    let disp = setup.dispersion();

    let theta_resonance = resonance_angle(&setup.stack, lambda_pair).stage("resonance angle")?;
    let (angle0, degenerate) = degenerate_match(omega0, n0, &disp).stage("phase matching")?;
    let phi0 = angle0.phi_from_plane;

    let (phi, regime) = match cfg.angle_deg {
        Some(deg) => {
            let phi = deg.to_radians();
            (phi, classify_regime(phi, phi0))
        }
        None => (FRAC_PI_2 - theta_resonance, Regime::Degenerate),
    };
    let matched = match regime {
        Regime::Degenerate => Some(degenerate),
        Regime::Nondegenerate => Some(nondegenerate_match(omega0, n0, phi, &disp).stage("phase matching")?),
        Regime::SuperluminalNoSpdc => None,
    };
    let omega1 = matched.map_or(omega0 / 2.0, |m| m.omega1);
    let omega2 = omega0 - omega1;

    let theta = FRAC_PI_2 - phi;
    if !(theta >= 0.0 && theta < FRAC_PI_2) {
        return Err(CliError::Config(format!("pump angle {} deg from the plane is out of range", phi.to_degrees())));
    }
    let stack = &setup.stack;
    let eta0 = match cfg.eta0 {
        Some(v) => v,
        None => eta_at(stack, wavelength_from_omega(omega0), theta)?,
    };
    let (eta1, eta2) = match cfg.eta1 {
        Some(v) => (v, v),
        None if omega1 == omega2 => {
            let e = eta_at(stack, wavelength_from_omega(omega1), theta)?;
            (e, e)
        }
        None => (
            eta_at(stack, wavelength_from_omega(omega1), theta)?,
            eta_at(stack, wavelength_from_omega(omega2), theta)?,
        ),
    };

    let mode = interface_mode(&setup.film, &setup.exit, wavelength_from_omega(omega1)).stage("spp mode")?;
    let l_damping = coherence_length_damping(&mode);
    let l_delta = cfg.l_delta_mm.map_or(l_damping, |mm| mm * 1e-3);

    let yield_report = if regime == Regime::SuperluminalNoSpdc {
        None
    } else {
        let mut s = SpdcScenario::new(omega0, cfg.chi2_pm_per_v * 1e-12, l_delta)
            .ok_or_else(|| CliError::Config("invalid yield scenario".into()))?;
        s.omega1 = omega1;
        s.eta0 = eta0;
        s.eta1 = eta1;
        s.eta2 = eta2;
        s.alpha = cfg.alpha;
        s.loss_factor = cfg.loss_factor;
        s.pump_field = cfg.pump_field_v_per_m;
        s.idler_photons = cfg.idler_photons;
        Some(yield_kappa(&s))
    };

    let k_par = pump_k_parallel(omega0, n0, phi);
    let grating = if with_grating || cfg.grating_order.is_some() {
        let order = cfg.grating_order.unwrap_or(1);
        Some(design_grating_period(omega0, k_par, &disp, order).stage("grating")?)
    } else {
        None
    };
    let given_grating_mismatch = match cfg.grating_period_um {
        Some(p) => {
            let spec = GratingSpec::new(p * 1e-6, cfg.grating_order.unwrap_or(1) as i32).stage("grating")?;
            let k_spp = plasmon_spdc::phasematch::Dispersion::mode(&disp, omega0).stage("grating")?.k.re;
            Some(k_spp - spec.order() as f64 * spec.k_a() - k_par)
        }
        None => None,
    };

    let chsh = chsh_optimum(&emitted_state_with_phase(cfg.relative_phase_rad));

    Ok(Evaluation {
        omega0,
        theta_resonance,
        phi0,
        phi,
        regime,
        matched,
        eta: [eta0, eta1, eta2],
        eta_overridden: [cfg.eta0.is_some(), cfg.eta1.is_some()],
        mode,
        l_damping,
        l_delta,
        yield_report,
        grating,
        given_grating_mismatch,
        chsh,
    })
}

fn um(lambda_m: f64) -> f64 {
    lambda_m * 1e6
}

fn source(overridden: bool) -> &'static str {
    if overridden {
        "override"
    } else {
        "transfer-matrix"
    }
}

pub fn evaluation_report(cfg: &ScenarioConfig, e: &Evaluation) -> Report {
    let mut r = Report::default();
    r.push("prism_index", cfg.prism_index);
    r.push("film_material", cfg.film_material.as_str());
    r.push("film_thickness_nm", cfg.film_thickness_nm);
    r.push("exit_medium", cfg.exit_medium.as_str());
    r.push("lambda_pair_um", cfg.lambda_pair_um);
    r.push("pump_wavelength_um", um(wavelength_from_omega(e.omega0)));
    r.push("resonance_theta_deg", e.theta_resonance.to_degrees());
    r.push("resonance_phi_deg", (FRAC_PI_2 - e.theta_resonance).to_degrees());
    r.push("phi0_deg", e.phi0.to_degrees());
    r.push("pump_phi_deg", e.phi.to_degrees());
    r.push("pump_theta_deg", e.theta().to_degrees());
    r.push("regime", e.regime.label());
    push_match(&mut r, e);
    r.push("eta0", e.eta[0]);
    r.push("eta0_source", source(e.eta_overridden[0]));
    r.push("eta1", e.eta[1]);
    r.push("eta2", e.eta[2]);
    r.push("eta1_source", source(e.eta_overridden[1]));
    r.push("n_sp_re", e.mode.n_sp.re);
    r.push("n_sp_im", e.mode.n_sp.im);
    r.push("spp_damping_length_mm", e.l_damping * 1e3);
    r.push("l_delta_mm", e.l_delta * 1e3);
    r.push("l_delta_source", if cfg.l_delta_mm.is_some() { "override" } else { "spp-damping" });
    r.push("chi2_pm_per_v", cfg.chi2_pm_per_v);
    r.push("alpha", cfg.alpha);
    r.push("loss_factor", cfg.loss_factor);
    r.push("pump_field_v_per_m", cfg.pump_field_v_per_m);
    let y = e.yield_report.as_ref();
    r.push("f", y.and_then(|y| y.f));
    r.push("n1", y.and_then(|y| y.n1));
    r.push("kappa", y.map(|y| y.kappa));
    r.push("kappa_baseline", y.map(|y| y.kappa_baseline));
    r.push("enhancement_gain", y.map(|y| y.enhancement_gain));
    r.push("gain_vs_1mm_reference", e.gain_vs_reference());
    if let Some(g) = &e.grating {
        push_grating(&mut r, g);
    }
    if let Some(m) = e.given_grating_mismatch {
        r.push("given_grating_mismatch_per_m", m);
    }
    r.push("relative_phase_rad", cfg.relative_phase_rad);
    r.push("chsh_optimum", e.chsh.s);
    r.push("chsh_a_deg", e.chsh.angles.a.to_degrees());
    r.push("chsh_a_prime_deg", e.chsh.angles.a_prime.to_degrees());
    r.push("chsh_b_deg", e.chsh.angles.b.to_degrees());
    r.push("chsh_b_prime_deg", e.chsh.angles.b_prime.to_degrees());
    r
}

pub fn push_match(r: &mut Report, e: &Evaluation) {
    match &e.matched {
        Some(m) => {
            r.push("signal_wavelength_um", um(wavelength_from_omega(m.omega1)));
            r.push("idler_wavelength_um", um(wavelength_from_omega(m.omega2())));
            r.push("omega0_rad_per_s", m.omega0);
            r.push("omega1_rad_per_s", m.omega1);
            r.push("omega2_rad_per_s", m.omega2());
            r.push("k1_per_m", m.k1);
            r.push("k2_per_m", m.k2);
            r.push("k_par_pump_per_m", m.k_par_pump);
            r.push("match_residual_per_m", m.residual);
        }
        None => {
            r.push("signal_wavelength_um", Value::Missing);
            r.push("idler_wavelength_um", Value::Missing);
            r.push("omega0_rad_per_s", e.omega0);
            r.push("omega1_rad_per_s", Value::Missing);
            r.push("omega2_rad_per_s", Value::Missing);
            r.push("k1_per_m", Value::Missing);
            r.push("k2_per_m", Value::Missing);
            r.push("k_par_pump_per_m", Value::Missing);
            r.push("match_residual_per_m", Value::Missing);
        }
    }
}

pub fn push_grating(r: &mut Report, g: &GratingDesign<f64>) {
    r.push("grating_period_um", g.grating.period() * 1e6);
    r.push("grating_order", g.grating.order() as i64);
    r.push("grating_k_spp_per_m", g.k_spp);
    r.push("grating_k_par_pump_per_m", g.k_par_pump);
    r.push("grating_round_trip_residual", g.round_trip_residual);
}
