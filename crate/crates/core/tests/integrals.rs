// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_PI_4, PI};

use cmc_simons::ambient::ModelParams;
use cmc_simons::hopf::*;
use cmc_simons::quadrature::{area, integrate, simons_functional, GridSpec};
use cmc_simons::Error;

#[test]
fn hopf_area_is_fibre_times_base() {
    // Riemannian submersion with fibres of equal length
    for (k, t, s) in [(4.0, 1.0, FRAC_PI_4), (4.0, 0.5, 0.4), (1.0, 0.8, 1.0), (9.0, -0.3, 0.7)] {
        let params = ModelParams::new(k, t).unwrap();
        let imm = hopf_torus(&HopfTorusSpec { params, s }).unwrap();
        let fibre = 2.0 * PI * 4.0 * f64::abs(t) / k;
        let base = 2.0 * PI / f64::sqrt(k) * (2.0 * s).sin();
        let a = area(&imm, &GridSpec::square(16).unwrap()).unwrap();
        assert!((a.value - fibre * base).abs() < 1e-9 * fibre * base, "{k} {t} {s}");
        assert!(a.error_estimate < 1e-10);
    }
}

#[test]
fn zero_integrand_and_positivity() {
    let p = ModelParams::new(4.0, 0.5).unwrap();
    let imm = perturbed_torus(&PerturbedTorusSpec { params: p, s: 0.6, amplitude: 0.1, frequency: (1, 2) })
        .unwrap();
    let g = GridSpec::square(16).unwrap();
    assert_eq!(integrate(&imm, &g, |_, _| Ok(0.0)).unwrap().value, 0.0);
    assert!(area(&imm, &g).unwrap().value > 0.0);
    assert!(matches!(simons_functional(&imm, &g), Err(Error::CmcRequired)));
}

#[test]
fn cylinder_is_not_compact() {
    let imm = hopf_cylinder_disk(ModelParams::new(0.0, 0.5).unwrap(), 0.8).unwrap();
    assert!(imm.is_cmc());
    assert!(matches!(
        simons_functional(&imm, &GridSpec::square(16).unwrap()),
        Err(Error::NonCompact)
    ));
}

#[test]
fn product_torus_is_an_equality_case() {
    // not a Hopf torus, but its second fundamental form is parallel
    let imm = product_torus(ModelParams::new(4.0, 1.0).unwrap(), 0.5).unwrap();
    let v = simons_functional(&imm, &GridSpec::square(32).unwrap()).unwrap();
    assert!(v.nonnegative && v.equality, "{v:?}");
    assert!(v.integral.error_estimate < 1e-8);
}
