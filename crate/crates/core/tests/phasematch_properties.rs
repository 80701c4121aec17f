mod common;

use common::{rel, LinearDispersion};
use plasmon_spdc::constants::omega_from_wavelength;
use plasmon_spdc::materials::Material;
use plasmon_spdc::phasematch::{
    classify_regime, degenerate_match, design_grating_period, nondegenerate_match, pump_k_parallel,
    InterfaceDispersion, MatchError, Regime,
};
use proptest::prelude::*;

const OMEGA0: f64 = 3.767_303_134_6e15; // degenerate pairs at 1 µm

fn silver_air() -> InterfaceDispersion<f64> {
    InterfaceDispersion::new(Material::silver(), Material::vacuum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn linear_dispersion_matches_closed_form(
        a in 1.0f64..1.3,
        b in 5e-18f64..5e-17,
        omega0 in 2.0e15f64..5.0e15,
        detune in 1e-4f64..0.2,
        n0 in 1.5f64..2.2,
    ) {
        let toy = LinearDispersion { a, b };
        let disp = toy.as_fn();
        let (angle, _) = degenerate_match(omega0, n0, &disp).unwrap();
        let phi = angle.phi_from_plane * (1.0 - detune);
        prop_assume!(phi > 0.0);
        let target = pump_k_parallel(omega0, n0, phi);
        let expected = toy.signal_frequency(omega0, target);
        prop_assume!(expected.is_some_and(|w| w > 2e-3 * omega0));
        let expected = expected.unwrap();
        let sol = nondegenerate_match(omega0, n0, phi, &disp).unwrap();
        prop_assert_eq!(sol.regime, Regime::Nondegenerate);
        prop_assert!((sol.omega1 - expected).abs() <= 1e-9 * omega0, "{} vs {}", sol.omega1, expected);
        prop_assert!(sol.omega1 <= omega0 / 2.0);
        prop_assert!(rel(sol.k1 + sol.k2, target) < 1e-9);
    }

    #[test]
    fn superluminal_beyond_degenerate_angle(extra in 1e-6f64..0.3) {
        let disp = silver_air();
        let (angle, _) = degenerate_match(OMEGA0, 1.5, &disp).unwrap();
        let phi = angle.phi_from_plane + extra;
        prop_assert_eq!(classify_regime(phi, angle.phi_from_plane), Regime::SuperluminalNoSpdc);
        let is_regime_error = matches!(
            nondegenerate_match(OMEGA0, 1.5, phi, &disp),
            Err(MatchError::Regime { .. })
        );
        prop_assert!(is_regime_error);
    }

    #[test]
    fn grating_round_trip(lambda_um in 0.4f64..1.9, phi_deg in 5.0f64..85.0, order in 1u32..4) {
        let disp = silver_air();
        let omega = omega_from_wavelength(lambda_um * 1e-6);
        let k_par = pump_k_parallel(omega, 1.5, phi_deg.to_radians()) * 0.5;
        let design = design_grating_period(omega, k_par, &disp, order).unwrap();
        prop_assert!(design.round_trip_residual < 1e-12);
        prop_assert_eq!(design.grating.order(), order as i32);
    }
}

#[test]
fn degenerate_limit_of_nondegenerate_solver() {
    let disp = silver_air();
    let (angle, deg) = degenerate_match(OMEGA0, 1.5, &disp).unwrap();
    let sol = nondegenerate_match(OMEGA0, 1.5, angle.phi_from_plane, &disp).unwrap();
    assert!((sol.omega1 - OMEGA0 / 2.0).abs() <= 1e-10 * OMEGA0);
    assert_eq!(sol.regime, Regime::Degenerate);
    assert_eq!(sol, deg);
}

#[test]
fn silver_small_detuning_is_nondegenerate() {
    let disp = silver_air();
    let (angle, _) = degenerate_match(OMEGA0, 1.5, &disp).unwrap();
    let phi = angle.phi_from_plane - 1e-4;
    let sol = nondegenerate_match(OMEGA0, 1.5, phi, &disp).unwrap();
    assert_eq!(sol.regime, Regime::Nondegenerate);
    assert!(sol.omega1 < OMEGA0 / 2.0);
    assert!(rel(sol.k1 + sol.k2, sol.k_par_pump) < 1e-9);
}

#[test]
fn grating_not_needed_when_pump_is_fast_enough() {
    let disp = silver_air();
    let big = pump_k_parallel(OMEGA0, 3.0, 0.01);
    assert!(matches!(
        design_grating_period(OMEGA0, big, &disp, 1),
        Err(MatchError::GratingUnnecessary { .. })
    ));
}
