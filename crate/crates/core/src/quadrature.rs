// SPDX-License-Identifier: Apache-2.0

//! Integrals over parametrized surfaces.
//!
//! Periodic axes use the equispaced trapezoid rule, the others composite
//! Simpson. Sums are pairwise so the reduction order is fixed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::simons_integrand;
use crate::surface::{invariants, ParamDomain, ParametricImmersion};

/// Number of sample intervals per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_u: usize,
    pub n_v: usize,
}

/// Smallest accepted resolution per axis.
pub const MIN_NODES: usize = 8;

/// Absolute slack on the sign of the Simons functional.
pub const SIMONS_TOL: f64 = 1e-7;

impl GridSpec {
    pub fn new(n_u: usize, n_v: usize) -> Result<Self> {
        let g = GridSpec { n_u, n_v };
        if n_u < MIN_NODES || n_v < MIN_NODES {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_NODES} nodes per axis, got {n_u} x {n_v}"
            )));
        }
        Ok(g)
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn doubled(&self) -> Self {
        GridSpec {
            n_u: 2 * self.n_u,
            n_v: 2 * self.n_v,
        }
    }

    fn validate_for(&self, d: &ParamDomain) -> Result<()> {
        for (n, periodic, axis) in [(self.n_u, d.periodic_u, "u"), (self.n_v, d.periodic_v, "v")] {
            if n < MIN_NODES {
                return Err(Error::InvalidGrid(format!("{axis}-axis has {n} < {MIN_NODES} nodes")));
            }
            if !periodic && n % 2 != 0 {
                return Err(Error::InvalidGrid(format!(
                    "Simpson needs an even number of intervals on the {axis}-axis, got {n}"
                )));
            }
        }
        Ok(())
    }

    /// Quadrature nodes in row-major `(u, v)` order.
    pub fn sample_points(&self, d: &ParamDomain) -> Vec<(f64, f64)> {
        let us = axis_rule(d.u, d.periodic_u, self.n_u);
        let vs = axis_rule(d.v, d.periodic_v, self.n_v);
        us.iter()
            .flat_map(|(u, _)| vs.iter().map(move |(v, _)| (*u, *v)))
            .collect()
    }
}

/// Nodes and weights along one axis.
fn axis_rule((a, b): (f64, f64), periodic: bool, n: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / n as f64;
    if periodic {
        (0..n).map(|i| (a + h * i as f64, h)).collect()
    } else {
        (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                (a + h * i as f64, w * h / 3.0)
            })
            .collect()
    }
}

/// Pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    /// The same integral on the doubled grid.
    pub doubled: f64,
    pub error_estimate: f64,
}

fn integrate_once(
    imm: &ParametricImmersion,
    grid: &GridSpec,
    field: &dyn Fn(f64, f64) -> Result<f64>,
) -> Result<f64> {
    let d = imm.domain();
    grid.validate_for(d)?;
    let us = axis_rule(d.u, d.periodic_u, grid.n_u);
    let vs = axis_rule(d.v, d.periodic_v, grid.n_v);
    let mut terms = Vec::with_capacity(us.len() * vs.len());
    for (u, wu) in &us {
        for (v, wv) in &vs {
            let f = field(*u, *v)?;
            if f == 0.0 {
                terms.push(0.0);
                continue;
            }
            terms.push(wu * wv * f * imm.area_element(*u, *v)?);
        }
    }
    Ok(pairwise_sum(&terms))
}

/// `int_M field d sigma`, with the doubled-grid value attached.
pub fn integrate(
    imm: &ParametricImmersion,
    grid: &GridSpec,
    field: impl Fn(f64, f64) -> Result<f64>,
) -> Result<Integral> {
    let value = integrate_once(imm, grid, &field)?;
    let doubled = integrate_once(imm, &grid.doubled(), &field)?;
    Ok(Integral {
        value,
        doubled,
        error_estimate: (doubled - value).abs(),
    })
}

pub fn area(imm: &ParametricImmersion, grid: &GridSpec) -> Result<Integral> {
    integrate(imm, grid, |_, _| Ok(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimonsValue {
    pub integral: Integral,
    pub mean_curvature: f64,
    /// `value >= -SIMONS_TOL`
    pub nonnegative: bool,
    /// `|value| < SIMONS_TOL`
    pub equality: bool,
}

/// The Simons functional of a compact cmc surface.
pub fn simons_functional(imm: &ParametricImmersion, grid: &GridSpec) -> Result<SimonsValue> {
    let h = imm.cmc_tag().ok_or(Error::CmcRequired)?;
    if !imm.domain().is_compact() {
        return Err(Error::NonCompact);
    }
    let params = *imm.params();
    let integral = integrate(imm, grid, |u, v| {
        let inv = invariants(imm, u, v)?;
        Ok(simons_integrand(inv.phi_norm_sq, inv.c, &params, h))
    })?;
    Ok(SimonsValue {
        integral,
        mean_curvature: h,
        nonnegative: integral.value >= -SIMONS_TOL,
        equality: integral.value.abs() < SIMONS_TOL,
    })
}

/// `int_M |A|^2 (|A|^2 - 2) d sigma`.
pub fn space_form_functional(imm: &ParametricImmersion, grid: &GridSpec) -> Result<Integral> {
    integrate(imm, grid, |u, v| {
        let a = invariants(imm, u, v)?.a_norm_sq;
        Ok(a * (a - 2.0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }

    #[test]
    fn simpson_weights_sum_to_length() {
        let r = axis_rule((1.0, 3.0), false, 10);
        let s: f64 = r.iter().map(|(_, w)| w).sum();
        assert!((s - 2.0).abs() < 1e-14);
        let p = axis_rule((0.0, 3.0), true, 9);
        let s: f64 = p.iter().map(|(_, w)| w).sum();
        assert!((s - 3.0).abs() < 1e-14);
    }

    #[test]
    fn small_grids_are_rejected() {
        assert!(GridSpec::new(4, 16).is_err());
    }
}
