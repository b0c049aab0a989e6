// SPDX-License-Identifier: Apache-2.0

//! Parametrized surfaces in a chart of `E(kappa, tau)` and their adapted
//! frame.
//!
//! Everything is evaluated from order-4 jets of the parametrization: the
//! normal and the contact angle carry three orders, the second fundamental
//! form two, its covariant derivative one. That is enough for `Delta |Phi|^2`
//! and the third `beta` derivatives on actual surfaces.
//!
//! Frame conventions: vectors are stored by their components in the
//! canonical frame `(f_1, f_2, f_3)`. The normal is `N = (x_u x x_v)/|...|`.
//! With `C = <N, f_3> = sin(beta)` and `cos(beta) = sqrt(1 - C^2) > 0` the
//! rotated horizontal frame is `f_2' = -(N - C f_3)/cos(beta)`,
//! `f_1' = f_2' x f_3`, and the adapted frame is
//! `e_1 = f_1'`, `e_2 = sin(beta) f_2' + cos(beta) f_3`, `e_3 = N`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ambient::{contract_sectional, AmbientPoint, Chart, ModelParams, TangentVec};
use crate::error::{Error, Result};
use crate::jet::{Jet, Real, MAX_ORDER};
use crate::linalg::{cross, dot3, scale3};

/// Below this `|cos beta|` the adapted frame is not built.
pub const FRAME_GATE: f64 = 1e-6;
/// Smallest accepted `det I`.
pub const DEGENERACY_TOL: f64 = 1e-12;

pub type MapFn = dyn Fn(Jet, Jet) -> Vec<Jet> + Send + Sync;

/// Rectangular parameter domain with per-axis periodicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamDomain {
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub periodic_u: bool,
    pub periodic_v: bool,
}

impl ParamDomain {
    pub fn new(u: (f64, f64), v: (f64, f64), periodic_u: bool, periodic_v: bool) -> Result<Self> {
        for (name, (a, b)) in [("u", u), ("v", v)] {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::InvalidSurface(format!(
                    "empty {name}-range [{a}, {b}]"
                )));
            }
        }
        Ok(ParamDomain {
            u,
            v,
            periodic_u,
            periodic_v,
        })
    }

    pub fn is_compact(&self) -> bool {
        self.periodic_u && self.periodic_v
    }

    /// Interior sample grid of `n x n` points (periodic axes include the
    /// left endpoint, others stay off the boundary).
    pub fn samples(&self, n: usize) -> Vec<(f64, f64)> {
        let axis = |(a, b): (f64, f64), periodic: bool| -> Vec<f64> {
            (0..n)
                .map(|i| {
                    if periodic {
                        a + (b - a) * i as f64 / n as f64
                    } else {
                        a + (b - a) * (i as f64 + 0.5) / n as f64
                    }
                })
                .collect()
        };
        let us = axis(self.u, self.periodic_u);
        let vs = axis(self.v, self.periodic_v);
        us.iter()
            .flat_map(|u| vs.iter().map(move |v| (*u, *v)))
            .collect()
    }
}

/// A map from a parameter rectangle into a chart.
#[derive(Clone)]
pub struct ParametricImmersion {
    chart: Chart,
    domain: ParamDomain,
    map: Arc<MapFn>,
    cmc_tag: Option<f64>,
    label: String,
}

impl fmt::Debug for ParametricImmersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricImmersion")
            .field("label", &self.label)
            .field("chart", &self.chart)
            .field("domain", &self.domain)
            .field("cmc_tag", &self.cmc_tag)
            .finish()
    }
}

impl ParametricImmersion {
    /// Wraps `map`. The map is probed on a coarse grid: every sample must land
    /// in the chart, and coordinates must match across periodic edges.
    pub fn new(
        chart: Chart,
        domain: ParamDomain,
        label: impl Into<String>,
        map: impl Fn(Jet, Jet) -> Vec<Jet> + Send + Sync + 'static,
    ) -> Result<Self> {
        let imm = ParametricImmersion {
            chart,
            domain,
            map: Arc::new(map),
            cmc_tag: None,
            label: label.into(),
        };
        for (u, v) in domain.samples(6) {
            imm.eval(u, v)?;
        }
        let gap = imm.periodicity_gap(12)?;
        if gap > 1e-10 {
            return Err(Error::InvalidSurface(format!(
                "periodic edges disagree by {gap:e}"
            )));
        }
        Ok(imm)
    }

    /// Marks the surface as having the constant mean curvature `h`.
    pub fn with_cmc_tag(mut self, h: f64) -> Self {
        self.cmc_tag = Some(h);
        self
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn params(&self) -> &ModelParams {
        self.chart.params()
    }

    pub fn domain(&self) -> &ParamDomain {
        &self.domain
    }

    pub fn cmc_tag(&self) -> Option<f64> {
        self.cmc_tag
    }

    pub fn is_cmc(&self) -> bool {
        self.cmc_tag.is_some()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Chart coordinates as jets of the given order at `(u, v)`.
    pub fn eval_jets(&self, u: f64, v: f64, order: u8) -> Result<Vec<Jet>> {
        let x = (self.map)(Jet::var_u(u, order), Jet::var_v(v, order));
        let vals: Vec<f64> = x.iter().map(|c| c.value()).collect();
        self.chart.check_coords(&vals)?;
        Ok(x)
    }

    pub fn eval(&self, u: f64, v: f64) -> Result<AmbientPoint> {
        let x = (self.map)(Jet::constant(u), Jet::constant(v));
        self.chart.point(x.iter().map(|c| c.value()).collect())
    }

    /// Largest coordinate mismatch across the identified edges.
    pub fn periodicity_gap(&self, n: usize) -> Result<f64> {
        let d = self.domain;
        let mut worst = 0.0f64;
        let mut cmp = |a: (f64, f64), b: (f64, f64)| -> Result<()> {
            let p = self.eval(a.0, a.1)?;
            let q = self.eval(b.0, b.1)?;
            for (x, y) in p.coords.iter().zip(&q.coords) {
                worst = worst.max((x - y).abs());
            }
            Ok(())
        };
        for k in 0..n {
            let s = (k as f64 + 0.5) / n as f64;
            if d.periodic_u {
                let v = d.v.0 + s * (d.v.1 - d.v.0);
                cmp((d.u.0, v), (d.u.1, v))?;
            }
            if d.periodic_v {
                let u = d.u.0 + s * (d.u.1 - d.u.0);
                cmp((u, d.v.0), (u, d.v.1))?;
            }
        }
        Ok(worst)
    }

    /// Smallest `det I` over an `n x n` sample grid.
    pub fn min_area_density(&self, n: usize) -> Result<f64> {
        let mut worst = f64::INFINITY;
        for (u, v) in self.domain.samples(n) {
            let (_, det) = self.first_form(u, v)?;
            worst = worst.min(det);
        }
        Ok(worst)
    }

    /// `(E, F, G)` and `det I` at a point.
    pub fn first_form(&self, u: f64, v: f64) -> Result<([f64; 3], f64)> {
        let x = self.eval_jets(u, v, 1)?;
        let xv: Vec<f64> = x.iter().map(|c| c.value()).collect();
        let xu: Vec<f64> = x.iter().map(|c| c.deriv(1, 0)).collect();
        let xw: Vec<f64> = x.iter().map(|c| c.deriv(0, 1)).collect();
        let pu = self.chart.frame_components(&xv, &xu);
        let pv = self.chart.frame_components(&xv, &xw);
        let (e, f, g) = (dot3(&pu, &pu), dot3(&pu, &pv), dot3(&pv, &pv));
        Ok(([e, f, g], e * g - f * f))
    }

    /// Area density `sqrt(det I)`.
    pub fn area_element(&self, u: f64, v: f64) -> Result<f64> {
        let (_, det) = self.first_form(u, v)?;
        if det < DEGENERACY_TOL {
            return Err(Error::Degenerate { u, v, det });
        }
        Ok(det.sqrt())
    }
}

/// Coordinate tangents and the unit normal.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentNormal {
    pub xu: TangentVec,
    pub xv: TangentVec,
    pub normal: TangentVec,
}

/// Shape-operator data in the adapted frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeData {
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
}

/// Components of `T = f_3 - <f_3, N> N` in `(e_1, e_2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TField {
    pub t1: f64,
    pub t2: f64,
}

impl TField {
    pub fn norm_sq(&self) -> f64 {
        self.t1 * self.t1 + self.t2 * self.t2
    }
}

/// `T`, `nabla_T T` and both sides of the divergence identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TFieldData {
    pub t: TField,
    /// `nabla_T T` in `(e_1, e_2)` computed from the connection.
    pub nabla_tt: [f64; 2],
    /// `-sin(2 beta)/2 (grad beta + 2 tau e_1)`.
    pub nabla_tt_closed: [f64; 2],
    /// `1/2 Delta |T|^2 - div(nabla_T T)`.
    pub lhs: f64,
    /// `2 tau (beta_1 cos^2 beta + 2 tau sin^2 beta)`.
    pub rhs: f64,
}

/// Everything the identity checks consume at one surface point.
///
/// `beta_ij = e_j e_i beta`; `conn_ijk = <nabla_{e_i} e_j, e_k>`;
/// `h_cov[i][j][k] = h_{ij|k}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceFrameData {
    pub u: f64,
    pub v: f64,
    pub kappa: f64,
    pub tau: f64,
    pub coords: Vec<f64>,
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub normal: [f64; 3],
    pub beta: f64,
    pub c: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta11: f64,
    pub beta12: f64,
    pub beta21: f64,
    pub beta22: f64,
    pub beta111: f64,
    pub beta122: f64,
    pub w12_e1: f64,
    pub w12_e2: f64,
    /// `e_2(w^1_2(e_1))`
    pub e2_w12_e1: f64,
    pub h11: f64,
    pub h12: f64,
    pub h21: f64,
    pub h22: f64,
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
    pub phi_norm_sq: f64,
    pub conn: [[[f64; 2]; 2]; 2],
    pub h_cov: [[[f64; 2]; 2]; 2],
    pub grad_a_sq: f64,
    pub laplace_phi_sq: f64,
    /// Gauss curvature of the induced metric from `E, F, G` alone.
    pub gauss_intrinsic: f64,
    /// Ambient sectional curvature of the tangent plane.
    pub ambient_sectional: f64,
    pub t_field: TFieldData,
}

impl SurfaceFrameData {
    pub fn shape(&self) -> ShapeData {
        ShapeData {
            h11: self.h11,
            h12: self.h12,
            h22: self.h22,
            mean_curvature: self.mean_curvature,
            a_norm_sq: self.a_norm_sq,
        }
    }

    pub fn cos_beta(&self) -> f64 {
        self.beta.cos()
    }

    /// `kappa - 4 tau^2`
    pub fn gap(&self) -> f64 {
        self.kappa - 4.0 * self.tau * self.tau
    }
}

pub fn tangent_normal(imm: &ParametricImmersion, u: f64, v: f64) -> Result<TangentNormal> {
    let x = imm.eval_jets(u, v, 1)?;
    let xv: Vec<f64> = x.iter().map(|c| c.value()).collect();
    let xu: Vec<f64> = x.iter().map(|c| c.deriv(1, 0)).collect();
    let xw: Vec<f64> = x.iter().map(|c| c.deriv(0, 1)).collect();
    let chart = imm.chart();
    let pu = chart.frame_components(&xv, &xu);
    let pv = chart.frame_components(&xv, &xw);
    let det = dot3(&pu, &pu) * dot3(&pv, &pv) - dot3(&pu, &pv).powi(2);
    if det < DEGENERACY_TOL {
        return Err(Error::Degenerate { u, v, det });
    }
    let n = scale3(&cross(&pu, &pv), 1.0 / det.sqrt());
    let base = chart.point(xv)?;
    let tv = |components| TangentVec {
        base: base.clone(),
        components,
    };
    Ok(TangentNormal {
        xu: tv(pu),
        xv: tv(pv),
        normal: tv(n),
    })
}

pub fn second_fundamental_form(imm: &ParametricImmersion, u: f64, v: f64) -> Result<ShapeData> {
    Ok(adapted_frame(imm, u, v)?.shape())
}

pub fn t_field(imm: &ParametricImmersion, u: f64, v: f64) -> Result<TFieldData> {
    Ok(adapted_frame(imm, u, v)?.t_field)
}

/// The adapted frame and all derived quantities at `(u, v)`.
pub fn adapted_frame(imm: &ParametricImmersion, u: f64, v: f64) -> Result<SurfaceFrameData> {
    let chart = imm.chart();
    let ModelParams { kappa, tau } = *chart.params();
    let x = imm.eval_jets(u, v, MAX_ORDER)?;
    let xu: Vec<Jet> = x.iter().map(Jet::du).collect();
    let xv: Vec<Jet> = x.iter().map(Jet::dv).collect();
    let pu = chart.frame_components(&x, &xu);
    let pv = chart.frame_components(&x, &xv);

    let ee = dot3(&pu, &pu);
    let ff = dot3(&pu, &pv);
    let gg = dot3(&pv, &pv);
    let det = ee * gg - ff * ff;
    if det.value() < DEGENERACY_TOL {
        return Err(Error::Degenerate {
            u,
            v,
            det: det.value(),
        });
    }
    let n = scale3(&cross(&pu, &pv), det.sqrt().recip());
    let c = n[2];
    let cos_sq = -(c * c) + 1.0;
    let cb_val = cos_sq.value().max(0.0).sqrt();
    if cb_val < FRAME_GATE {
        return Err(Error::AdaptedFrameUndefined {
            u,
            v,
            cos_beta: cb_val,
        });
    }
    let cos_b = cos_sq.sqrt();
    let beta = c.asin();
    let inv_cb = cos_b.recip();
    let zero = Jet::constant(0.0);
    let f2p = [-(n[0] * inv_cb), -(n[1] * inv_cb), zero];
    let f1p = [-(n[1] * inv_cb), n[0] * inv_cb, zero];
    let e = [
        f1p,
        [c * f2p[0], c * f2p[1], cos_b],
    ];

    // e_i = a_i x_u + b_i x_v
    let inv_det = det.recip();
    let coef: Vec<(Jet, Jet)> = e
        .iter()
        .map(|ei| {
            let ru = dot3(ei, &pu);
            let rv = dot3(ei, &pv);
            ((gg * ru - ff * rv) * inv_det, (ee * rv - ff * ru) * inv_det)
        })
        .collect();
    let d = |i: usize, phi: &Jet| coef[i].0 * phi.du() + coef[i].1 * phi.dv();

    let gam = chart.frame_connection(&x);
    let nabla = |i: usize, y: &[Jet; 3]| -> [Jet; 3] {
        let mut out = [zero; 3];
        for (a, slot) in out.iter_mut().enumerate() {
            let mut acc = d(i, &y[a]);
            for cc in 0..3 {
                for b in 0..3 {
                    acc += e[i][cc] * y[b] * gam[cc][b][a];
                }
            }
            *slot = acc;
        }
        out
    };

    let de: [[[Jet; 3]; 2]; 2] = [
        [nabla(0, &e[0]), nabla(0, &e[1])],
        [nabla(1, &e[0]), nabla(1, &e[1])],
    ];
    let mut h = [[zero; 2]; 2];
    let mut conn = [[[zero; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            h[i][j] = dot3(&de[i][j], &n);
            for k in 0..2 {
                conn[i][j][k] = dot3(&de[i][j], &e[k]);
            }
        }
    }
    let w12: Vec<Jet> = (0..2).map(|i| dot3(&nabla(i, &f2p), &f1p)).collect();

    let mean = (h[0][0] + h[1][1]) * 0.5;
    let a_sq = h[0][0].sq() + h[0][1] * h[0][1] + h[1][0] * h[1][0] + h[1][1].sq();
    let phi_sq = a_sq - mean.sq() * 2.0;

    let b1 = d(0, &beta);
    let b2 = d(1, &beta);
    let b11 = d(0, &b1);
    let b12 = d(1, &b1);
    let b21 = d(0, &b2);
    let b22 = d(1, &b2);

    // h_{ij|k} = e_k h_ij - h_lj conn_kil - h_il conn_kjl
    let hs = [[h[0][0], h[0][1]], [h[0][1], h[1][1]]];
    let mut h_cov = [[[0.0; 2]; 2]; 2];
    let mut grad_a_sq = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut val = d(k, &hs[i][j]);
                for l in 0..2 {
                    val = val - hs[l][j] * conn[k][i][l] - hs[i][l] * conn[k][j][l];
                }
                h_cov[i][j][k] = val.value();
                grad_a_sq += val.value().powi(2);
            }
        }
    }

    let lap = |phi: &Jet| -> Jet {
        let mut acc = zero;
        for i in 0..2 {
            acc += d(i, &d(i, phi));
            for k in 0..2 {
                acc -= conn[i][i][k] * d(k, phi);
            }
        }
        acc
    };

    // T = f_3 - C N
    let t = [-(c * n[0]), -(c * n[1]), -(c * n[2]) + 1.0];
    let tc = [dot3(&t, &e[0]), dot3(&t, &e[1])];
    let dt = [nabla(0, &t), nabla(1, &t)];
    let ntt: [Jet; 3] =
        std::array::from_fn(|a| tc[0] * dt[0][a] + tc[1] * dt[1][a]);
    let wk = [dot3(&ntt, &e[0]), dot3(&ntt, &e[1])];
    let mut div_w = zero;
    for i in 0..2 {
        div_w += d(i, &wk[i]);
        for k in 0..2 {
            div_w += wk[k] * conn[i][k][i];
        }
    }
    let t_sq = dot3(&t, &t);
    let t_lhs = lap(&t_sq) * 0.5 - div_w;
    let (sb, cbv) = (c.value(), cos_b.value());
    let s2b = 2.0 * sb * cbv;
    let t_field = TFieldData {
        t: TField {
            t1: tc[0].value(),
            t2: tc[1].value(),
        },
        nabla_tt: [wk[0].value(), wk[1].value()],
        nabla_tt_closed: [
            -0.5 * s2b * (b1.value() + 2.0 * tau),
            -0.5 * s2b * b2.value(),
        ],
        lhs: t_lhs.value(),
        rhs: 2.0 * tau * (b1.value() * cbv * cbv + 2.0 * tau * sb * sb),
    };

    let gauss_intrinsic = brioschi(&ee, &ff, &gg);
    let point = chart.point(x.iter().map(|j| j.value()).collect())?;
    let e1v = e[0].map(|j| j.value());
    let e2v = e[1].map(|j| j.value());
    let ambient_sectional = contract_sectional(&chart.curvature(&point)?, &e1v, &e2v);

    Ok(SurfaceFrameData {
        u,
        v,
        kappa,
        tau,
        coords: point.coords,
        e1: e1v,
        e2: e2v,
        normal: n.map(|j| j.value()),
        beta: beta.value(),
        c: c.value(),
        beta1: b1.value(),
        beta2: b2.value(),
        beta11: b11.value(),
        beta12: b12.value(),
        beta21: b21.value(),
        beta22: b22.value(),
        beta111: d(0, &b11).value(),
        beta122: d(1, &b12).value(),
        w12_e1: w12[0].value(),
        w12_e2: w12[1].value(),
        e2_w12_e1: d(1, &w12[0]).value(),
        h11: h[0][0].value(),
        h12: h[0][1].value(),
        h21: h[1][0].value(),
        h22: h[1][1].value(),
        mean_curvature: mean.value(),
        a_norm_sq: a_sq.value(),
        phi_norm_sq: phi_sq.value(),
        conn: conn.map(|r| r.map(|s| s.map(|j| j.value()))),
        h_cov,
        grad_a_sq,
        laplace_phi_sq: lap(&phi_sq).value(),
        gauss_intrinsic,
        ambient_sectional,
        t_field,
    })
}

/// Frame-independent scalars at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
    pub phi_norm_sq: f64,
    /// `C = <N, f_3>`
    pub c: f64,
}

/// `H`, `|A|^2`, `|Phi|^2` and `C` from a Gram-Schmidt tangent frame. Unlike
/// [`adapted_frame`] this is defined where `f_3` is normal.
pub fn invariants(imm: &ParametricImmersion, u: f64, v: f64) -> Result<Invariants> {
    let chart = imm.chart();
    let x = imm.eval_jets(u, v, 2)?;
    let xu: Vec<Jet> = x.iter().map(Jet::du).collect();
    let xv: Vec<Jet> = x.iter().map(Jet::dv).collect();
    let pu = chart.frame_components(&x, &xu);
    let pv = chart.frame_components(&x, &xv);
    let (ee, ff, gg) = (dot3(&pu, &pu), dot3(&pu, &pv), dot3(&pv, &pv));
    let det = ee * gg - ff * ff;
    if det.value() < DEGENERACY_TOL {
        return Err(Error::Degenerate {
            u,
            v,
            det: det.value(),
        });
    }
    let e1 = scale3(&pu, ee.sqrt().recip());
    let w = [
        pv[0] - e1[0] * dot3(&pv, &e1),
        pv[1] - e1[1] * dot3(&pv, &e1),
        pv[2] - e1[2] * dot3(&pv, &e1),
    ];
    let e2 = scale3(&w, dot3(&w, &w).sqrt().recip());
    let n = cross(&e1, &e2);
    let e = [e1, e2];
    let inv_det = det.recip();
    let coef: Vec<(Jet, Jet)> = e
        .iter()
        .map(|ei| {
            let ru = dot3(ei, &pu);
            let rv = dot3(ei, &pv);
            ((gg * ru - ff * rv) * inv_det, (ee * rv - ff * ru) * inv_det)
        })
        .collect();
    let gam = chart.frame_connection(&x);
    let mut h = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = 0.0;
            for a in 0..3 {
                let mut da = (coef[i].0 * e[j][a].du() + coef[i].1 * e[j][a].dv()).value();
                for c in 0..3 {
                    for b in 0..3 {
                        da += e[i][c].value() * e[j][b].value() * gam[c][b][a].value();
                    }
                }
                acc += da * n[a].value();
            }
            h[i][j] = acc;
        }
    }
    let mean = 0.5 * (h[0][0] + h[1][1]);
    let a_sq = h[0][0].powi(2) + h[0][1].powi(2) + h[1][0].powi(2) + h[1][1].powi(2);
    Ok(Invariants {
        mean_curvature: mean,
        a_norm_sq: a_sq,
        phi_norm_sq: a_sq - 2.0 * mean * mean,
        c: n[2].value(),
    })
}

/// Gauss curvature from the first fundamental form (Brioschi).
fn brioschi(e: &Jet, f: &Jet, g: &Jet) -> f64 {
    let [e0, f0, g0] = [e.value(), f.value(), g.value()];
    let (eu, ev) = (e.deriv(1, 0), e.deriv(0, 1));
    let (fu, fv) = (f.deriv(1, 0), f.deriv(0, 1));
    let (gu, gv) = (g.deriv(1, 0), g.deriv(0, 1));
    let evv = e.deriv(0, 2);
    let fuv = f.deriv(1, 1);
    let guu = g.deriv(2, 0);
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let m1 = [
        [-0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev],
        [fv - 0.5 * gu, e0, f0],
        [0.5 * gv, f0, g0],
    ];
    let m2 = [
        [0.0, 0.5 * ev, 0.5 * gu],
        [0.5 * ev, e0, f0],
        [0.5 * gu, f0, g0],
    ];
    (det3(m1) - det3(m2)) / (e0 * g0 - f0 * f0).powi(2)
}
