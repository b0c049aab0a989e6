// SPDX-License-Identifier: Apache-2.0

//! Where the commuting relations live. Codazzi 1, `tau beta_2 = H beta_1`
//! and `beta_12 = beta_21` hold on cmc surfaces and break off the cmc
//! locus by amounts fixed by `H beta_1 - tau beta_2`.

use std::f64::consts::FRAC_PI_4;

use cmc_simons::ambient::ModelParams;
use cmc_simons::hopf::*;
use cmc_simons::identities::{check_codazzi1, resolve, run_checks, GridEvaluation, Verdict};
use cmc_simons::quadrature::GridSpec;
use cmc_simons::surface::{adapted_frame, ParametricImmersion};

const COMMUTING: [&str; 3] = ["codazzi1", "tau_beta2", "beta12_sym"];

fn verdicts(imm: &ParametricImmersion, names: &[&str], n: usize) -> Vec<(String, Verdict, f64)> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let eval = GridEvaluation::new(imm, &GridSpec::square(n).unwrap()).unwrap();
    run_checks(imm, &eval, &resolve(&names).unwrap(), |_| None)
        .unwrap()
        .into_iter()
        .map(|r| (r.name, r.verdict, r.max_residual))
        .collect()
}

fn assert_all_pass(imm: &ParametricImmersion, names: &[&str], n: usize) {
    for (name, v, r) in verdicts(imm, names, n) {
        assert_eq!(v, Verdict::Pass, "{} on {}: {r:e}", name, imm.label());
    }
}

#[test]
fn commuting_relations_on_cmc_surfaces() {
    let p = ModelParams::new(4.0, 0.5).unwrap();
    assert_all_pass(&hopf_torus(&HopfTorusSpec { params: p, s: 0.6 }).unwrap(), &COMMUTING, 12);
    // the coordinate torus in round S^3 is cmc but not Hopf, so beta varies
    let round = ModelParams::new(4.0, 1.0).unwrap();
    let pt = product_torus(round, 0.5).unwrap();
    assert!(pt.is_cmc());
    assert_all_pass(&pt, &["all"], 16);
    // the plane z = 0 in Nil_3 is minimal with nonconstant angle
    let plane = graph_patch(&GraphPatchSpec {
        params: ModelParams::new(0.0, 0.5).unwrap(),
        half_width: 0.5,
        linear: [0.0; 2],
        quadratic: [0.0; 3],
        cubic: [0.0; 4],
        wave: 0.0,
    })
    .unwrap();
    assert_all_pass(&plane, &COMMUTING, 12);
}

#[test]
fn failure_off_the_locus_is_the_cmc_defect() {
    let p = ModelParams::new(4.0, 0.5).unwrap();
    let imm = perturbed_torus(&PerturbedTorusSpec {
        params: p,
        s: 0.6,
        amplitude: 0.1,
        frequency: (1, 2),
    })
    .unwrap();
    let mut seen = 0.0_f64;
    for (u, v) in GridSpec::square(8).unwrap().sample_points(imm.domain()) {
        let d = adapted_frame(&imm, u, v).unwrap();
        let defect = d.mean_curvature * d.beta1 - d.tau * d.beta2;
        seen = seen.max(defect.abs());
        let scale = 1.0 + defect.abs();
        assert!((check_codazzi1(&d).abs() - 2.0 * defect.abs()).abs() < 1e-9 * scale);
        let tan_b = d.beta.tan();
        assert!((d.beta12 - d.beta21 + 2.0 * tan_b * defect).abs() < 1e-9 * scale);
    }
    assert!(seen > 1e-3);
}

#[test]
fn hopf_cylinder_is_parallel() {
    for (k, t, r) in [(0.0, 0.5, 0.8), (-1.0, 0.5, 0.6), (4.0, 0.5, 0.4)] {
        let imm = hopf_cylinder_disk(ModelParams::new(k, t).unwrap(), r).unwrap();
        for (u, v) in GridSpec::square(8).unwrap().sample_points(imm.domain()) {
            let d = adapted_frame(&imm, u, v).unwrap();
            assert!(d.c.abs() < 1e-12);
            assert!(d.h22.abs() < 1e-10);
            assert!(d.grad_a_sq.sqrt() < 1e-7);
            let kg = base_circle_curvature_disk(imm.params(), r);
            assert!((d.mean_curvature.abs() - 0.5 * kg.abs()).abs() < 1e-10);
        }
    }
}

#[test]
fn t_divergence_holds_without_cmc() {
    let imm = graph_patch(&GraphPatchSpec {
        params: ModelParams::new(-1.0, 0.5).unwrap(),
        half_width: 0.5,
        linear: [0.3, -0.2],
        quadratic: [0.4, 0.1, -0.3],
        cubic: [0.1, 0.0, 0.2, -0.1],
        wave: 0.05,
    })
    .unwrap();
    assert_all_pass(&imm, &["t_divergence", "t_nabla", "t_components"], 12);
}

#[test]
fn perturbation_examples() {
    let p = ModelParams::new(4.0, 0.5).unwrap();
    let flat = perturbed_torus(&PerturbedTorusSpec { params: p, s: 0.6, amplitude: 0.0, frequency: (2, 3) })
        .unwrap();
    let torus = hopf_torus(&HopfTorusSpec { params: p, s: 0.6 }).unwrap();
    for (u, v) in GridSpec::square(8).unwrap().sample_points(torus.domain()) {
        let (a, b) = (flat.eval(u, v).unwrap(), torus.eval(u, v).unwrap());
        for i in 0..4 {
            assert!((a.coords[i] - b.coords[i]).abs() < 1e-14);
        }
    }
    let rippled = perturbed_torus(&PerturbedTorusSpec { params: p, s: 0.6, amplitude: 0.05, frequency: (2, 3) })
        .unwrap();
    let eval = GridEvaluation::new(&rippled, &GridSpec::square(16).unwrap()).unwrap();
    assert!(eval.mean_curvature_spread() > 1e-3);
    assert!(perturbed_torus(&PerturbedTorusSpec { params: p, s: 0.6, amplitude: 0.7, frequency: (2, 3) })
        .is_err());
}

#[test]
fn hopf_mean_curvature_law() {
    let p = ModelParams::new(4.0, 1.0).unwrap();
    let mut hs = Vec::new();
    for i in 1..20 {
        let s = i as f64 * 0.075;
        let h = hopf_torus(&HopfTorusSpec { params: p, s }).unwrap().cmc_tag().unwrap();
        assert!((h.abs() - 0.5 * base_circle_curvature(&p, s).abs()).abs() < 1e-10);
        hs.push(h);
    }
    // H(s) is monotone across the family
    let steps: Vec<f64> = hs.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(steps.iter().all(|d| *d > 0.0) || steps.iter().all(|d| *d < 0.0), "{hs:?}");
    let clifford = hopf_torus(&HopfTorusSpec { params: p, s: FRAC_PI_4 }).unwrap();
    assert!(clifford.cmc_tag().unwrap().abs() < 1e-10);
}
