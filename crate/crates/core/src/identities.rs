// SPDX-License-Identifier: Apache-2.0

//! Named residual checks over [`SurfaceFrameData`].
//!
//! `General` checks use the pointwise mean curvature and are expected to hold
//! on any immersion. `Cmc` checks use the tagged constant `H` and are only run
//! on cmc-tagged surfaces.

use serde::{Deserialize, Serialize};

use crate::ambient::ModelParams;
use crate::error::{Error, Result};
use crate::quadrature::GridSpec;
use crate::surface::{adapted_frame, ParametricImmersion, SurfaceFrameData};

pub const FIRST_ORDER_TOL: f64 = 1e-7;
pub const SECOND_ORDER_TOL: f64 = 1e-5;
/// Allowed spread of the measured `H` on a cmc-tagged surface.
pub const CMC_SPREAD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    General,
    Cmc,
}

/// Residual of one identity at one point; `h` is the mean curvature to use.
pub type ResidualFn = fn(&SurfaceFrameData, f64) -> f64;

#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub group: Group,
    pub tolerance: f64,
    pub description: &'static str,
    pub residual: ResidualFn,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// `(h11 - 2H - beta_2, h12 + tau + beta_1, h22 + beta_2)`
pub fn check_shape_entries(d: &SurfaceFrameData) -> [f64; 3] {
    [
        d.h11 - 2.0 * d.mean_curvature - d.beta2,
        d.h12 + d.tau + d.beta1,
        d.h22 + d.beta2,
    ]
}

/// `beta_1 w^1_2(e_1) cos(beta) - beta_2 (2 tau + beta_1)`
pub fn check_codazzi1(d: &SurfaceFrameData) -> f64 {
    d.beta1 * d.w12_e1 * d.cos_beta() - d.beta2 * (2.0 * d.tau + d.beta1)
}

pub fn check_codazzi2(d: &SurfaceFrameData) -> f64 {
    let (s, c) = (d.beta.sin(), d.beta.cos());
    let tau = d.tau;
    c * d.e2_w12_e1
        + s * c * d.w12_e1 * d.w12_e1
        + d.beta11
        + 2.0 * (tau + d.beta1) * (2.0 * tau + d.beta1) * d.beta.tan()
        + d.gap() * s * c
}

/// `|Phi|^2 - 2 (1 + (H/tau)^2) (tau + beta_1)^2`
pub fn check_phi_norm(d: &SurfaceFrameData, h: f64) -> f64 {
    let m = 1.0 + (h / d.tau).powi(2);
    d.phi_norm_sq - 2.0 * m * (d.tau + d.beta1).powi(2)
}

/// The three ways of obtaining `|nabla A|^2` on a cmc surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradA {
    /// Sum of squares of the covariant derivatives computed from the
    /// connection.
    pub direct: f64,
    /// `2 (2 h_{11|1}^2 + h_{11|2}^2 + h_{12|1}^2)` from the `beta` formulas.
    pub components: f64,
    /// `2 m^2 [beta_11^2 + 4 (tau+beta_1)^2 (2tau+beta_1)^2 tan^2 beta]`
    pub closed: f64,
    /// Largest mismatch between a directly computed `h_{ij|k}` and its
    /// formula in terms of `beta`.
    pub component_residual: f64,
}

impl GradA {
    pub fn residual(&self) -> f64 {
        (self.direct - self.closed)
            .abs()
            .max((self.components - self.closed).abs())
            .max(self.component_residual)
    }
}

/// `h_{ij|k}` predicted from the `beta` jets, indexed `[i][j][k]`.
pub fn predicted_h_cov(d: &SurfaceFrameData, h: f64) -> [[[f64; 2]; 2]; 2] {
    let k = h / d.tau;
    let x = (d.tau + d.beta1) * (2.0 * d.tau + d.beta1) * d.beta.tan();
    let h111 = k * (d.beta11 - 2.0 * x);
    let h112 = k * k * d.beta11 + 2.0 * x;
    let h121 = -d.beta11 - 2.0 * k * k * x;
    let h122 = -h111;
    [
        [[h111, h112], [h121, h122]],
        [[h121, h122], [-h111, -h112]],
    ]
}

pub fn check_grad_a(d: &SurfaceFrameData, h: f64) -> GradA {
    let m = 1.0 + (h / d.tau).powi(2);
    let p = predicted_h_cov(d, h);
    let tb = d.beta.tan();
    let tau = d.tau;
    let closed = 2.0
        * m
        * m
        * (d.beta11.powi(2)
            + 4.0 * (tau + d.beta1).powi(2) * (2.0 * tau + d.beta1).powi(2) * tb * tb);
    let components = 2.0 * (2.0 * p[0][0][0].powi(2) + p[0][0][1].powi(2) + p[0][1][0].powi(2));
    let mut component_residual = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                component_residual = component_residual.max((d.h_cov[i][j][k] - p[i][j][k]).abs());
            }
        }
    }
    GradA {
        direct: d.grad_a_sq,
        components,
        closed,
        component_residual,
    }
}

/// The integrand `|Phi|^4 - [2(H^2+tau^2) + (kappa-4tau^2)(5C^2-1)] |Phi|^2
/// + 2 (kappa-4tau^2)(H^2+tau^2)(3C^2-1)`.
pub fn simons_integrand(phi_sq: f64, c: f64, params: &ModelParams, h: f64) -> f64 {
    let s = h * h + params.tau * params.tau;
    let g = params.gap();
    let c2 = c * c;
    phi_sq * phi_sq - (2.0 * s + g * (5.0 * c2 - 1.0)) * phi_sq + 2.0 * g * s * (3.0 * c2 - 1.0)
}

/// Both sides of the pointwise Simons-type formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimonsSides {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn pointwise_simons(d: &SurfaceFrameData, h: f64) -> SimonsSides {
    let tau = d.tau;
    let g = d.gap();
    let m = 1.0 + (h / tau).powi(2);
    let s = h * h + tau * tau;
    let phi = d.phi_norm_sq;
    let c2 = d.c * d.c;
    let lhs = 0.5 * d.laplace_phi_sq - g * m * d.t_field.lhs;
    let rhs = d.grad_a_sq - phi * (phi - 2.0 * s)
        + g * (phi * (5.0 * c2 - 1.0) - 2.0 * s * (3.0 * c2 - 1.0));
    SimonsSides { lhs, rhs }
}

/// `Delta |Phi|^2` after substituting the second and third `beta` jets.
pub fn laplacian_closed_form(d: &SurfaceFrameData, h: f64) -> f64 {
    let tau = d.tau;
    let b1 = d.beta1;
    let m = 1.0 + (h / tau).powi(2);
    let g = d.gap();
    let (s, c) = (d.beta.sin(), d.beta.cos());
    let tb = d.beta.tan();
    4.0 * m
        * m
        * (d.beta11.powi(2)
            + 2.0
                * (tau + b1).powi(2)
                * (2.0 * tau + b1)
                * (2.0 * (2.0 * tau + b1) * tb * tb - b1))
        + 4.0 * m * g * (tau + b1) * (4.0 * (tau + b1) * s * s - b1 * c * c)
}

fn r_shape_entries(d: &SurfaceFrameData, _h: f64) -> f64 {
    max_abs(&check_shape_entries(d))
}
fn r_mean_w12(d: &SurfaceFrameData, _h: f64) -> f64 {
    d.cos_beta() * d.w12_e1 - (2.0 * d.mean_curvature + d.beta2)
}
fn r_w12_e2(d: &SurfaceFrameData, _h: f64) -> f64 {
    let s = d.beta.sin();
    d.cos_beta() * d.w12_e2 + d.beta1 + d.tau * (1.0 + s * s)
}
fn r_codazzi1(d: &SurfaceFrameData, _h: f64) -> f64 {
    check_codazzi1(d)
}
fn r_tau_beta2(d: &SurfaceFrameData, _h: f64) -> f64 {
    d.tau * d.beta2 - d.mean_curvature * d.beta1
}
fn r_codazzi2(d: &SurfaceFrameData, _h: f64) -> f64 {
    check_codazzi2(d)
}
fn r_gauss(d: &SurfaceFrameData, _h: f64) -> f64 {
    d.gauss_intrinsic - d.ambient_sectional - (d.h11 * d.h22 - d.h12 * d.h21)
}
fn r_gauss_closed(d: &SurfaceFrameData, _h: f64) -> f64 {
    d.ambient_sectional - (d.tau * d.tau + d.gap() * d.c * d.c)
}
fn r_beta_sym(d: &SurfaceFrameData, _h: f64) -> f64 {
    d.beta12 - d.beta21
}
fn r_connection(d: &SurfaceFrameData, _h: f64) -> f64 {
    let tb = d.beta.tan();
    let p = (2.0 * d.mean_curvature + d.beta2) * tb;
    let q = (2.0 * d.tau + d.beta1) * tb;
    // conn[i][j][k] = <nabla_{e_i} e_j, e_k>
    max_abs(&[
        d.conn[0][0][1] + p,
        d.conn[1][1][0] + q,
        d.conn[1][0][1] - q,
        d.conn[0][1][0] - p,
    ])
}
fn r_h_symmetry(d: &SurfaceFrameData, _h: f64) -> f64 {
    d.h12 - d.h21
}
fn r_t_nabla(d: &SurfaceFrameData, _h: f64) -> f64 {
    let t = &d.t_field;
    max_abs(&[
        t.nabla_tt[0] - t.nabla_tt_closed[0],
        t.nabla_tt[1] - t.nabla_tt_closed[1],
    ])
}
fn r_t_components(d: &SurfaceFrameData, _h: f64) -> f64 {
    let t = &d.t_field.t;
    max_abs(&[t.t1, t.t2 - d.cos_beta(), t.norm_sq() + d.c * d.c - 1.0])
}
fn r_t_divergence(d: &SurfaceFrameData, _h: f64) -> f64 {
    d.t_field.lhs - d.t_field.rhs
}
fn r_phi_norm(d: &SurfaceFrameData, h: f64) -> f64 {
    check_phi_norm(d, h)
}
fn r_grad_a(d: &SurfaceFrameData, h: f64) -> f64 {
    check_grad_a(d, h).residual()
}
fn r_laplacian(d: &SurfaceFrameData, h: f64) -> f64 {
    d.laplace_phi_sq - laplacian_closed_form(d, h)
}
fn r_simons(d: &SurfaceFrameData, h: f64) -> f64 {
    let s = pointwise_simons(d, h);
    s.lhs - s.rhs
}
fn r_commuting_beta(d: &SurfaceFrameData, h: f64) -> f64 {
    let k = h / d.tau;
    max_abs(&[
        d.beta12 - k * d.beta11,
        d.beta21 - k * d.beta11,
        d.beta22 - k * k * d.beta11,
        d.beta122 - k * k * d.beta111,
    ])
}

const REGISTRY: &[IdentityCheck] = &[
    IdentityCheck {
        name: "shape_entries",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "h11 = 2H + beta2, h12 = -tau - beta1, h22 = -beta2",
        residual: r_shape_entries,
    },
    IdentityCheck {
        name: "mean_w12",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "cos(beta) w12(e1) = 2H + beta2",
        residual: r_mean_w12,
    },
    IdentityCheck {
        name: "w12_e2",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "cos(beta) w12(e2) = -beta1 - tau (1 + sin^2 beta)",
        residual: r_w12_e2,
    },
    IdentityCheck {
        name: "codazzi1",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "beta1 w12(e1) cos(beta) = beta2 (2 tau + beta1)",
        residual: r_codazzi1,
    },
    IdentityCheck {
        name: "tau_beta2",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "tau beta2 = H beta1 (pointwise H)",
        residual: r_tau_beta2,
    },
    IdentityCheck {
        name: "codazzi2",
        group: Group::General,
        tolerance: SECOND_ORDER_TOL,
        description: "second Codazzi equation in the adapted frame",
        residual: r_codazzi2,
    },
    IdentityCheck {
        name: "gauss",
        group: Group::General,
        tolerance: SECOND_ORDER_TOL,
        description: "K = K_ambient(e1, e2) + det h",
        residual: r_gauss,
    },
    IdentityCheck {
        name: "gauss_ambient",
        group: Group::General,
        tolerance: SECOND_ORDER_TOL,
        description: "K_ambient(T_pM) = tau^2 + (kappa - 4 tau^2) C^2",
        residual: r_gauss_closed,
    },
    IdentityCheck {
        name: "beta12_sym",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "beta12 = beta21",
        residual: r_beta_sym,
    },
    IdentityCheck {
        name: "connection",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "Levi-Civita connection of M in the adapted frame",
        residual: r_connection,
    },
    IdentityCheck {
        name: "h_symmetry",
        group: Group::General,
        tolerance: 1e-9,
        description: "h12 = h21",
        residual: r_h_symmetry,
    },
    IdentityCheck {
        name: "t_nabla",
        group: Group::General,
        tolerance: FIRST_ORDER_TOL,
        description: "nabla_T T = -sin(2 beta)/2 (grad beta + 2 tau e1)",
        residual: r_t_nabla,
    },
    IdentityCheck {
        name: "t_components",
        group: Group::General,
        tolerance: 1e-10,
        description: "T = cos(beta) e2 and |T|^2 + C^2 = 1",
        residual: r_t_components,
    },
    IdentityCheck {
        name: "t_divergence",
        group: Group::General,
        tolerance: SECOND_ORDER_TOL,
        description: "Delta|T|^2/2 - div(nabla_T T) = 2 tau (beta1 cos^2 beta + 2 tau sin^2 beta)",
        residual: r_t_divergence,
    },
    IdentityCheck {
        name: "commuting_beta",
        group: Group::Cmc,
        tolerance: SECOND_ORDER_TOL,
        description: "beta12 = beta21 = (H/tau) beta11, beta22 = (H/tau)^2 beta11, beta122 = (H/tau)^2 beta111",
        residual: r_commuting_beta,
    },
    IdentityCheck {
        name: "phi_norm",
        group: Group::Cmc,
        tolerance: FIRST_ORDER_TOL,
        description: "|Phi|^2 = 2 (1 + (H/tau)^2) (tau + beta1)^2",
        residual: r_phi_norm,
    },
    IdentityCheck {
        name: "grad_a",
        group: Group::Cmc,
        tolerance: SECOND_ORDER_TOL,
        description: "|nabla A|^2 direct, componentwise and closed form agree",
        residual: r_grad_a,
    },
    IdentityCheck {
        name: "laplacian_phi",
        group: Group::Cmc,
        tolerance: SECOND_ORDER_TOL,
        description: "Delta |Phi|^2 against its substituted closed form",
        residual: r_laplacian,
    },
    IdentityCheck {
        name: "pointwise_simons",
        group: Group::Cmc,
        tolerance: SECOND_ORDER_TOL,
        description: "pointwise Simons-type formula",
        residual: r_simons,
    },
];

/// Name of the pseudo-check that scans `H` for constancy.
pub const CMC_CONSTANT_CHECK: &str = "cmc_constant_h";

pub fn registry() -> &'static [IdentityCheck] {
    REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static IdentityCheck> {
    REGISTRY.iter().find(|c| c.name == name)
}

pub fn group_checks(group: Group) -> Vec<&'static IdentityCheck> {
    REGISTRY.iter().filter(|c| c.group == group).collect()
}

/// Expands `all-general`, `all-cmc` and plain names.
pub fn resolve(names: &[String]) -> Result<Vec<&'static IdentityCheck>> {
    let mut out: Vec<&'static IdentityCheck> = Vec::new();
    for n in names {
        let add: Vec<&'static IdentityCheck> = match n.as_str() {
            "all-general" => group_checks(Group::General),
            "all-cmc" => group_checks(Group::Cmc),
            "all" => REGISTRY.iter().collect(),
            other => vec![lookup(other)
                .ok_or_else(|| Error::Config(format!("unknown check '{other}'")))?],
        };
        for c in add {
            if !out.iter().any(|o| o.name == c.name) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Where the largest residual of a check was attained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstPoint {
    pub grid_index: usize,
    pub u: f64,
    pub v: f64,
    pub beta: f64,
    pub data: SurfaceFrameData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub group: Group,
    pub tolerance: f64,
    pub max_residual: f64,
    pub evaluated: usize,
    pub skipped: usize,
    pub verdict: Verdict,
    pub worst: Option<WorstPoint>,
}

/// Evaluated grid: frame data at every point of the adapted-frame domain.
#[derive(Debug, Clone)]
pub struct GridEvaluation {
    pub points: Vec<(usize, f64, f64)>,
    pub data: Vec<Option<SurfaceFrameData>>,
}

impl GridEvaluation {
    pub fn new(imm: &ParametricImmersion, grid: &GridSpec) -> Result<Self> {
        let points: Vec<(usize, f64, f64)> = grid
            .sample_points(imm.domain())
            .into_iter()
            .enumerate()
            .map(|(i, (u, v))| (i, u, v))
            .collect();
        let mut data = Vec::with_capacity(points.len());
        for &(_, u, v) in &points {
            match adapted_frame(imm, u, v) {
                Ok(d) => data.push(Some(d)),
                Err(Error::AdaptedFrameUndefined { .. }) => data.push(None),
                Err(e) => return Err(e),
            }
        }
        Ok(GridEvaluation { points, data })
    }

    pub fn valid(&self) -> impl Iterator<Item = (usize, &SurfaceFrameData)> {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.as_ref().map(|d| (i, d)))
    }

    pub fn skipped(&self) -> usize {
        self.data.iter().filter(|d| d.is_none()).count()
    }

    /// `max H - min H` over the valid points.
    pub fn mean_curvature_spread(&self) -> f64 {
        let (lo, hi) = self.valid().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, d)| {
            (lo.min(d.mean_curvature), hi.max(d.mean_curvature))
        });
        if lo.is_finite() {
            hi - lo
        } else {
            0.0
        }
    }
}

/// Runs `checks` over an evaluated grid. `tolerance` maps a check name to an
/// override.
pub fn run_checks(
    imm: &ParametricImmersion,
    eval: &GridEvaluation,
    checks: &[&IdentityCheck],
    tolerance: impl Fn(&str) -> Option<f64>,
) -> Result<Vec<CheckRecord>> {
    let wants_cmc = checks.iter().any(|c| c.group == Group::Cmc);
    let h_tag = imm.cmc_tag();
    if wants_cmc && h_tag.is_none() {
        return Err(Error::CmcRequired);
    }
    let skipped = eval.skipped();
    let evaluated = eval.data.len() - skipped;
    let mut records = Vec::new();
    if wants_cmc {
        let tol = tolerance(CMC_CONSTANT_CHECK).unwrap_or(CMC_SPREAD_TOL);
        let h = h_tag.unwrap_or(0.0);
        let mut worst: Option<(f64, usize)> = None;
        for (i, d) in eval.valid() {
            let r = (d.mean_curvature - h).abs();
            if worst.map_or(true, |(w, _)| r > w) {
                worst = Some((r, i));
            }
        }
        let spread = eval.mean_curvature_spread();
        records.push(make_record(
            CMC_CONSTANT_CHECK,
            Group::Cmc,
            tol,
            worst.map(|(r, i)| (r.max(spread), i)),
            eval,
            evaluated,
            skipped,
        ));
    }
    for check in checks {
        let tol = tolerance(check.name).unwrap_or(check.tolerance);
        let h_of = |d: &SurfaceFrameData| match check.group {
            Group::General => d.mean_curvature,
            Group::Cmc => h_tag.unwrap_or(d.mean_curvature),
        };
        let mut worst: Option<(f64, usize)> = None;
        for (i, d) in eval.valid() {
            let r = (check.residual)(d, h_of(d)).abs();
            let r = if r.is_nan() { f64::INFINITY } else { r };
            if worst.map_or(true, |(w, _)| r > w) {
                worst = Some((r, i));
            }
        }
        records.push(make_record(
            check.name, check.group, tol, worst, eval, evaluated, skipped,
        ));
    }
    records.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(records)
}

fn make_record(
    name: &str,
    group: Group,
    tolerance: f64,
    worst: Option<(f64, usize)>,
    eval: &GridEvaluation,
    evaluated: usize,
    skipped: usize,
) -> CheckRecord {
    let (max_residual, verdict, worst) = match worst {
        None => (0.0, Verdict::Inconclusive, None),
        Some((r, i)) => {
            let (_, u, v) = eval.points[i];
            let data = eval.data[i].clone().expect("worst point is valid");
            (
                r,
                if r <= tolerance {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                Some(WorstPoint {
                    grid_index: i,
                    u,
                    v,
                    beta: data.beta,
                    data,
                }),
            )
        }
    };
    CheckRecord {
        name: name.to_string(),
        group,
        tolerance,
        max_residual,
        evaluated,
        skipped,
        verdict,
        worst,
    }
}
