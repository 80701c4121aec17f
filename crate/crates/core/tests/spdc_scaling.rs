mod common;

use common::{rel, tagged_f, tagged_kappa, Quantity, DIMENSIONLESS, METRE, METRE_PER_VOLT, PER_SECOND, VOLT_PER_METRE};
use plasmon_spdc::spdc::{transformation_coefficient, yield_kappa, SpdcScenario};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
struct Inputs {
    lambda: f64,
    chi2: f64,
    l: f64,
    eta0: f64,
    eta1: f64,
    alpha: f64,
    e0: f64,
}

fn inputs() -> impl Strategy<Value = Inputs> {
    (
        0.5e-6f64..2.0e-6,
        1e-13f64..1e-10,
        1e-4f64..1e-2,
        0.1f64..10.0,
        1.0f64..60.0,
        1e-3f64..1.0,
        1e3f64..1e8,
    )
        .prop_map(|(lambda, chi2, l, eta0, eta1, alpha, e0)| Inputs {
            lambda,
            chi2,
            l,
            eta0,
            eta1,
            alpha,
            e0,
        })
}

fn evaluate(i: Inputs) -> (f64, f64) {
    let mut s = SpdcScenario::from_pair_wavelength(i.lambda, i.chi2, i.l)
        .unwrap()
        .with_degenerate_enhancement(i.eta0, i.eta1);
    s.alpha = i.alpha;
    s.pump_field = Some(i.e0);
    let r = yield_kappa(&s);
    (r.f.unwrap(), r.kappa)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quadratic_in_field(i in inputs(), m in 0.1f64..10.0) {
        let (f, k) = evaluate(i);
        let (f2, k2) = evaluate(Inputs { e0: i.e0 * m, ..i });
        prop_assert!(rel(f2, f * m * m) < TOL);
        prop_assert!(rel(k2, k) < TOL);
    }

    #[test]
    fn quadratic_in_chi2(i in inputs(), m in 0.1f64..10.0) {
        let (f, k) = evaluate(i);
        let (f2, k2) = evaluate(Inputs { chi2: i.chi2 * m, ..i });
        prop_assert!(rel(f2, f * m * m) < TOL);
        prop_assert!(rel(k2, k * m * m) < TOL);
    }

    #[test]
    fn quadratic_in_length(i in inputs(), m in 0.1f64..10.0) {
        let (f, k) = evaluate(i);
        let (f2, k2) = evaluate(Inputs { l: i.l * m, ..i });
        prop_assert!(rel(f2, f * m * m) < TOL);
        prop_assert!(rel(k2, k * m * m) < TOL);
    }

    #[test]
    fn quartic_in_pair_enhancement(i in inputs(), m in 0.1f64..10.0) {
        let (_, k) = evaluate(i);
        let (_, k2) = evaluate(Inputs { eta1: i.eta1 * m, ..i });
        prop_assert!(rel(k2, k * m.powi(4)) < TOL);
    }

    #[test]
    fn quadratic_in_pump_enhancement(i in inputs(), m in 0.1f64..10.0) {
        let (_, k) = evaluate(i);
        let (_, k2) = evaluate(Inputs { eta0: i.eta0 * m, ..i });
        prop_assert!(rel(k2, k * m * m) < TOL);
    }

    #[test]
    fn linear_in_alpha(i in inputs(), m in 0.1f64..10.0) {
        let (f, k) = evaluate(i);
        let (f2, k2) = evaluate(Inputs { alpha: i.alpha * m, ..i });
        prop_assert!(rel(k2, k * m) < TOL);
        prop_assert!(rel(f2, f) < TOL);
    }

    #[test]
    fn dimensionless_and_consistent(i in inputs()) {
        let s = SpdcScenario::from_pair_wavelength(i.lambda, i.chi2, i.l).unwrap();
        let w0 = s.omega0();
        let f = tagged_f(
            Quantity::new(w0 / 2.0, PER_SECOND),
            Quantity::new(w0 / 2.0, PER_SECOND),
            Quantity::new(i.chi2, METRE_PER_VOLT),
            Quantity::new(i.e0, VOLT_PER_METRE),
            Quantity::new(i.l, METRE),
        );
        prop_assert_eq!(f.dim, DIMENSIONLESS);
        let lib = transformation_coefficient(w0 / 2.0, w0 / 2.0, i.chi2, i.e0, i.l);
        prop_assert!(rel(f.value, lib) < TOL);

        let k = tagged_kappa(i.alpha, 1.0, Quantity::new(w0, PER_SECOND), Quantity::new(i.chi2, METRE_PER_VOLT), Quantity::new(i.l, METRE));
        prop_assert_eq!(k.dim, DIMENSIONLESS);
        let mut scen = s.clone();
        scen.alpha = i.alpha;
        prop_assert!(rel(k.value, yield_kappa(&scen).kappa) < TOL);
    }
}

#[test]
fn enhancement_and_length_ratio() {
    let base = SpdcScenario::from_pair_wavelength(1e-6, 1e-12, 1e-3).unwrap();
    let boosted = SpdcScenario::from_pair_wavelength(1e-6, 1e-12, 3e-3)
        .unwrap()
        .with_degenerate_enhancement(1.0, 35.0);
    let ratio = yield_kappa(&boosted).kappa / yield_kappa(&base).kappa;
    assert!(rel(ratio, 13_505_625.0) < 1e-9, "{ratio}");
}

#[test]
fn radiance_adds_seeded_photons() {
    let mut s = SpdcScenario::from_pair_wavelength(1e-6, 1e-12, 1e-3).unwrap();
    s.pump_field = Some(1e6);
    s.idler_photons = 3.0;
    let r = yield_kappa(&s);
    assert!(rel(r.n1.unwrap(), 4.0 * r.f.unwrap()) < 1e-15);
}
