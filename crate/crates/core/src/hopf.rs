// SPDX-License-Identifier: Apache-2.0

//! Hopf tori and cylinders, and non-cmc test surfaces.
//!
//! Berger-sphere surfaces use `x = e^{it} (cos(sigma), sin(sigma) e^{i phi})`
//! with `t` the fibre parameter; `sigma = s` is the Hopf torus over the base
//! circle of latitude `s`.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::ambient::{Chart, ModelParams};
use crate::error::{Error, Result};
use crate::jet::{Jet, Real};
use crate::surface::{invariants, ParamDomain, ParametricImmersion};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfTorusSpec {
    pub params: ModelParams,
    /// Latitude `s` in `(0, pi/2)`.
    pub s: f64,
}

/// A Hopf torus with a `sin(p t + q phi)` ripple in the latitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbedTorusSpec {
    pub params: ModelParams,
    pub s: f64,
    pub amplitude: f64,
    pub frequency: (i32, i32),
}

/// `z = l.(u,v) + quadratic + cubic + wave sin(u v + u)` over a square in
/// the disk chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphPatchSpec {
    pub params: ModelParams,
    pub half_width: f64,
    pub linear: [f64; 2],
    pub quadratic: [f64; 3],
    pub cubic: [f64; 4],
    #[serde(default)]
    pub wave: f64,
}

/// Surface descriptions addressable from configs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestSurfaceSpec {
    HopfTorus {
        s: f64,
    },
    HopfCylinder {
        radius: f64,
        #[serde(default = "default_height")]
        height: f64,
    },
    PerturbedTorus {
        s: f64,
        amplitude: f64,
        frequency: (i32, i32),
    },
    GraphPatch {
        half_width: f64,
        linear: [f64; 2],
        quadratic: [f64; 3],
        cubic: [f64; 4],
        #[serde(default)]
        wave: f64,
    },
    ProductTorus {
        s: f64,
    },
}

fn default_height() -> f64 {
    1.0
}

impl TestSurfaceSpec {
    pub fn build(&self, params: ModelParams) -> Result<ParametricImmersion> {
        match *self {
            TestSurfaceSpec::HopfTorus { s } => hopf_torus(&HopfTorusSpec { params, s }),
            TestSurfaceSpec::HopfCylinder { radius, height } => {
                hopf_cylinder_disk_with_height(params, radius, height)
            }
            TestSurfaceSpec::PerturbedTorus {
                s,
                amplitude,
                frequency,
            } => perturbed_torus(&PerturbedTorusSpec {
                params,
                s,
                amplitude,
                frequency,
            }),
            TestSurfaceSpec::GraphPatch {
                half_width,
                linear,
                quadratic,
                cubic,
                wave,
            } => graph_patch(&GraphPatchSpec {
                params,
                half_width,
                linear,
                quadratic,
                cubic,
                wave,
            }),
            TestSurfaceSpec::ProductTorus { s } => product_torus(params, s),
        }
    }
}

fn check_latitude(s: f64) -> Result<()> {
    if !(s > 0.0 && s < FRAC_PI_2) {
        return Err(Error::InvalidSurface(format!(
            "latitude s = {s} outside (0, pi/2)"
        )));
    }
    Ok(())
}

/// Berger length of a Hopf fibre, measured from the metric at a point.
pub fn fiber_length(chart: &Chart) -> f64 {
    let x = [1.0, 0.0, 0.0, 0.0];
    let xi = [0.0, 1.0, 0.0, 0.0];
    let g = chart.metric(&x);
    TAU * crate::linalg::quad(&g, &xi, &xi).sqrt()
}

/// Geodesic curvature of the base circle of latitude `s` in `M^2(kappa)`.
pub fn base_circle_curvature(params: &ModelParams, s: f64) -> f64 {
    params.kappa.sqrt() / (2.0 * s).tan()
}

/// Geodesic curvature of the circle of coordinate radius `r` in the disk
/// model of `M^2(kappa)`.
pub fn base_circle_curvature_disk(params: &ModelParams, r: f64) -> f64 {
    1.0 / r - params.kappa * r / 4.0
}

fn sphere_map(fiber: f64, sigma: Jet, t: Jet, phi: Jet) -> Vec<Jet> {
    let t = t * (TAU / fiber);
    let (cs, ss) = (sigma.cos(), sigma.sin());
    let (ct, st) = (t.cos(), t.sin());
    let tp = t + phi;
    vec![ct * cs, st * cs, tp.cos() * ss, tp.sin() * ss]
}

/// Measured `H` at the parameter origin.
fn measured_h(imm: &ParametricImmersion, u: f64, v: f64) -> Result<f64> {
    Ok(invariants(imm, u, v)?.mean_curvature)
}

/// The Hopf torus over the latitude circle `s`; `u` is Berger arclength
/// along the fibre, `v` the base angle. Tagged with its measured `H`.
pub fn hopf_torus(spec: &HopfTorusSpec) -> Result<ParametricImmersion> {
    check_latitude(spec.s)?;
    let chart = Chart::berger(spec.params)?;
    let fiber = fiber_length(&chart);
    let dom = ParamDomain::new((0.0, fiber), (0.0, TAU), true, true)?;
    let s = spec.s;
    let imm = ParametricImmersion::new(chart, dom, format!("hopf torus s={s}"), move |u, v| {
        sphere_map(fiber, Jet::constant(s), u, v)
    })?;
    let h = measured_h(&imm, 0.0, 0.0)?;
    Ok(imm.with_cmc_tag(h))
}

pub fn perturbed_torus(spec: &PerturbedTorusSpec) -> Result<ParametricImmersion> {
    check_latitude(spec.s)?;
    let (s, a) = (spec.s, spec.amplitude);
    if s - a.abs() <= 0.0 || s + a.abs() >= FRAC_PI_2 {
        return Err(Error::ImmersionFailure {
            u: 0.0,
            v: 0.0,
            reason: format!("latitude {s} +- {a} leaves (0, pi/2); the torus collapses to a circle"),
        });
    }
    let chart = Chart::berger(spec.params)?;
    let fiber = fiber_length(&chart);
    let dom = ParamDomain::new((0.0, fiber), (0.0, TAU), true, true)?;
    let (p, q) = (spec.frequency.0 as f64, spec.frequency.1 as f64);
    let imm = ParametricImmersion::new(
        chart,
        dom,
        format!("perturbed torus s={s} a={a} freq=({p},{q})"),
        move |u, v| {
            let sigma = (u * (p * TAU / fiber) + v * q).sin() * a + s;
            sphere_map(fiber, sigma, u, v)
        },
    )?;
    let det = imm.min_area_density(16)?;
    if det < crate::surface::DEGENERACY_TOL {
        return Err(Error::ImmersionFailure {
            u: 0.0,
            v: 0.0,
            reason: format!("det I drops to {det:e}"),
        });
    }
    Ok(imm)
}

/// Vertical cylinder over the circle of coordinate radius `radius`, with
/// `z` in `[-1, 1]`.
pub fn hopf_cylinder_disk(params: ModelParams, radius: f64) -> Result<ParametricImmersion> {
    hopf_cylinder_disk_with_height(params, radius, 1.0)
}

pub fn hopf_cylinder_disk_with_height(
    params: ModelParams,
    radius: f64,
    height: f64,
) -> Result<ParametricImmersion> {
    if !(radius > 0.0) || 1.0 + params.kappa * radius * radius / 4.0 <= 0.0 {
        return Err(Error::OutsideChart(format!(
            "circle of radius {radius} is not inside the disk chart"
        )));
    }
    if !(height > 0.0) {
        return Err(Error::InvalidSurface(format!("height {height} must be positive")));
    }
    let chart = Chart::disk(params);
    let dom = ParamDomain::new((0.0, TAU), (-height, height), true, false)?;
    let imm = ParametricImmersion::new(chart, dom, format!("hopf cylinder r={radius}"), move |u, v| {
        vec![u.cos() * radius, u.sin() * radius, v]
    })?;
    let h = measured_h(&imm, 0.0, 0.0)?;
    Ok(imm.with_cmc_tag(h))
}

pub fn graph_patch(spec: &GraphPatchSpec) -> Result<ParametricImmersion> {
    let w = spec.half_width;
    if !(w > 0.0) {
        return Err(Error::InvalidSurface(format!("half width {w} must be positive")));
    }
    let chart = Chart::disk(spec.params);
    let dom = ParamDomain::new((-w, w), (-w, w), false, false)?;
    let GraphPatchSpec {
        linear: l,
        quadratic: q,
        cubic: c,
        wave,
        ..
    } = *spec;
    ParametricImmersion::new(chart, dom, "graph patch", move |u, v| {
        let z = u * l[0]
            + v * l[1]
            + u * u * q[0]
            + u * v * q[1]
            + v * v * q[2]
            + u * u * u * c[0]
            + u * u * v * c[1]
            + u * v * v * c[2]
            + v * v * v * c[3]
            + (u * v + u).sin() * wave;
        vec![u, v, z]
    })
}

/// The coordinate torus `x_0^2 + x_2^2 = cos^2 s`, which is not a union of
/// fibres. In the round case `kappa = 4 tau^2` it is a cmc surface (and is
/// tagged as one); otherwise it is a generic torus.
pub fn product_torus(params: ModelParams, s: f64) -> Result<ParametricImmersion> {
    check_latitude(s)?;
    let chart = Chart::berger(params)?;
    let dom = ParamDomain::new((0.0, TAU), (0.0, TAU), true, true)?;
    let (cs, ss) = (s.cos(), s.sin());
    let imm = ParametricImmersion::new(chart, dom, format!("product torus s={s}"), move |u, v| {
        vec![u.cos() * cs, v.cos() * ss, u.sin() * cs, v.sin() * ss]
    })?;
    if params.gap().abs() < 1e-14 {
        let h = measured_h(&imm, 0.3, 0.1)?;
        Ok(imm.with_cmc_tag(h))
    } else {
        Ok(imm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::adapted_frame;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn fiber_length_matches_metric_scale() {
        for (k, t) in [(4.0, 1.0), (4.0, 0.5), (1.0, 2.0)] {
            let chart = Chart::berger(ModelParams::new(k, t).unwrap()).unwrap();
            let want = TAU * 4.0 * t / k;
            assert!((fiber_length(&chart) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn clifford_torus_is_minimal() {
        let p = ModelParams::new(4.0, 1.0).unwrap();
        let t = hopf_torus(&HopfTorusSpec { params: p, s: FRAC_PI_4 }).unwrap();
        let d = adapted_frame(&t, 0.4, 2.0).unwrap();
        assert!(d.mean_curvature.abs() < 1e-10);
        assert!((d.a_norm_sq - 2.0).abs() < 1e-10);
    }

    #[test]
    fn latitude_is_validated() {
        let p = ModelParams::new(4.0, 1.0).unwrap();
        assert!(hopf_torus(&HopfTorusSpec { params: p, s: 0.0 }).is_err());
        assert!(hopf_torus(&HopfTorusSpec { params: p, s: 1.6 }).is_err());
        assert!(hopf_torus(&HopfTorusSpec {
            params: ModelParams::new(-1.0, 1.0).unwrap(),
            s: 0.5
        })
        .is_err());
    }

    #[test]
    fn mean_curvature_is_half_base_curvature() {
        for (k, t, s) in [(4.0, 0.5, 0.5), (2.0, 1.3, 1.1), (9.0, -0.4, 0.3)] {
            let p = ModelParams::new(k, t).unwrap();
            let imm = hopf_torus(&HopfTorusSpec { params: p, s }).unwrap();
            let h = imm.cmc_tag().unwrap();
            let kg = base_circle_curvature(&p, s);
            assert!((h.abs() - 0.5 * kg.abs()).abs() < 1e-10, "{h} {kg}");
        }
    }

    #[test]
    fn cylinder_mean_curvature() {
        for (k, t, r) in [(0.0, 1.0, 0.7), (-1.0, 0.5, 1.2), (1.0, 0.3, 0.9)] {
            let p = ModelParams::new(k, t).unwrap();
            let imm = hopf_cylinder_disk(p, r).unwrap();
            let kg = base_circle_curvature_disk(&p, r);
            assert!((imm.cmc_tag().unwrap().abs() - 0.5 * kg.abs()).abs() < 1e-10);
        }
        let p = ModelParams::new(-1.0, 0.5).unwrap();
        assert!(hopf_cylinder_disk(p, 2.5).is_err());
    }

    #[test]
    fn zero_amplitude_is_the_hopf_torus() {
        let p = ModelParams::new(4.0, 0.5).unwrap();
        let a = hopf_torus(&HopfTorusSpec { params: p, s: 0.6 }).unwrap();
        let b = perturbed_torus(&PerturbedTorusSpec {
            params: p,
            s: 0.6,
            amplitude: 0.0,
            frequency: (2, 3),
        })
        .unwrap();
        for (u, v) in a.domain().samples(5) {
            assert_eq!(a.eval(u, v).unwrap(), b.eval(u, v).unwrap());
        }
    }

    #[test]
    fn large_amplitude_is_rejected() {
        let p = ModelParams::new(4.0, 0.5).unwrap();
        let r = perturbed_torus(&PerturbedTorusSpec {
            params: p,
            s: 0.6,
            amplitude: 0.7,
            frequency: (2, 3),
        });
        assert!(matches!(r, Err(Error::ImmersionFailure { .. })));
    }
}
