// SPDX-License-Identifier: Apache-2.0

//! Coordinate models of `E(kappa, tau)` and their canonical frame.
//!
//! Two charts are provided:
//!
//! * [`ChartKind::BergerSphere`]: the unit sphere in `R^4` with the Berger
//!   metric `4/kappa [<X,Y> + (4 tau^2/kappa - 1) <X,V><Y,V>]`, where `V(p) = i p`
//!   is the round Hopf field. The frame is built from the right-invariant
//!   fields `j p`, `k p` (horizontal) and `i p` (vertical), rescaled to unit
//!   length. Requires `kappa > 0`.
//! * [`ChartKind::DiskModel`]: coordinates `(x, y, z)` on
//!   `1 + kappa (x^2 + y^2)/4 > 0` with metric
//!   `lambda^2 (dx^2 + dy^2) + (dz + tau lambda (x dy - y dx))^2`. The
//!   horizontal frame is rotated along the fibres by the angle
//!   `-kappa z / (2 tau)` so that `[f_2, f_3]` and `[f_3, f_1]` carry the
//!   base curvature.
//!
//! In both charts `f_3` is the unit vertical Killing field. All connection
//! data is computed from the metric itself (coordinate Christoffel symbols
//! obtained with dual numbers); nothing about the bracket relations is
//! hard-coded.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Dual, Real};
use crate::linalg::{quad, spd_inverse, Mat};

/// The pair `(kappa, tau)`, `tau != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub kappa: f64,
    pub tau: f64,
}

impl ModelParams {
    pub fn new(kappa: f64, tau: f64) -> Result<Self> {
        if !kappa.is_finite() || !tau.is_finite() {
            return Err(Error::InvalidParams(format!(
                "non-finite parameters kappa = {kappa}, tau = {tau}"
            )));
        }
        if tau == 0.0 {
            return Err(Error::ZeroTau);
        }
        Ok(ModelParams { kappa, tau })
    }

    /// `kappa - 4 tau^2`, the coefficient that vanishes on space forms.
    pub fn gap(&self) -> f64 {
        self.kappa - 4.0 * self.tau * self.tau
    }

    /// Connection-form coefficient `w^1_2(f_3)` of the canonical frame.
    pub fn w12_vertical(&self) -> f64 {
        self.kappa / (2.0 * self.tau) - self.tau
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartKind {
    BergerSphere,
    DiskModel,
}

/// A point in one of the charts.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint {
    pub chart: ChartKind,
    pub coords: Vec<f64>,
}

/// A tangent vector stored by its components in the canonical frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVec {
    pub base: AmbientPoint,
    pub components: [f64; 3],
}

impl TangentVec {
    /// Squared norm; the frame is orthonormal.
    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(|c| c * c).sum()
    }
}

/// `gamma[c][b][a] = <nabla_{f_c} f_b, f_a>`.
pub type FrameConnection<T> = [[[T; 3]; 3]; 3];

/// Values of the connection forms on `(f_1, f_2, f_3)`:
/// `w^A_B(X) = <nabla_X f_B, f_A>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionForms {
    pub w12: [f64; 3],
    pub w13: [f64; 3],
    pub w23: [f64; 3],
}

impl ConnectionForms {
    /// `w^1_2 = (kappa/(2 tau) - tau) w^3`, `w^1_3 = -tau w^2`, `w^2_3 = tau w^1`.
    pub fn closed_form(params: &ModelParams) -> Self {
        let t = params.tau;
        ConnectionForms {
            w12: [0.0, 0.0, params.w12_vertical()],
            w13: [0.0, -t, 0.0],
            w23: [t, 0.0, 0.0],
        }
    }
}

/// Residuals of the three bracket relations at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketResiduals {
    /// `|[f_1,f_2] + 2 tau f_3|`
    pub f1f2: f64,
    /// `|[f_2,f_3] + kappa/(2 tau) f_1|`
    pub f2f3: f64,
    /// `|[f_3,f_1] + kappa/(2 tau) f_2|`
    pub f3f1: f64,
}

impl BracketResiduals {
    pub fn max(&self) -> f64 {
        self.f1f2.max(self.f2f3).max(self.f3f1)
    }
}

/// A chart of `E(kappa, tau)` together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    params: ModelParams,
    kind: ChartKind,
}

const SPHERE_TOL: f64 = 1e-9;

impl Chart {
    pub fn new(params: ModelParams, kind: ChartKind) -> Result<Self> {
        match kind {
            ChartKind::BergerSphere => Self::berger(params),
            ChartKind::DiskModel => Ok(Self::disk(params)),
        }
    }

    pub fn berger(params: ModelParams) -> Result<Self> {
        if params.kappa <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "Berger sphere chart needs kappa > 0, got {}",
                params.kappa
            )));
        }
        Ok(Chart {
            params,
            kind: ChartKind::BergerSphere,
        })
    }

    pub fn disk(params: ModelParams) -> Self {
        Chart {
            params,
            kind: ChartKind::DiskModel,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            ChartKind::BergerSphere => 4,
            ChartKind::DiskModel => 3,
        }
    }

    /// Validates coordinates against the chart domain.
    pub fn check_coords(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::OutsideChart(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                x.len()
            )));
        }
        match self.kind {
            ChartKind::BergerSphere => {
                let r2: f64 = x.iter().map(|c| c * c).sum();
                if (r2 - 1.0).abs() > SPHERE_TOL {
                    return Err(Error::OutsideChart(format!(
                        "|x|^2 = {r2} is not on the unit sphere"
                    )));
                }
            }
            ChartKind::DiskModel => {
                let w = 1.0 + self.params.kappa * (x[0] * x[0] + x[1] * x[1]) / 4.0;
                if w <= 0.0 {
                    return Err(Error::OutsideChart(format!(
                        "1 + kappa r^2/4 = {w} is not positive"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn point(&self, coords: Vec<f64>) -> Result<AmbientPoint> {
        self.check_coords(&coords)?;
        Ok(AmbientPoint {
            chart: self.kind,
            coords,
        })
    }

    fn check_point(&self, p: &AmbientPoint) -> Result<()> {
        if p.chart != self.kind {
            return Err(Error::OutsideChart(format!(
                "point belongs to {:?}, chart is {:?}",
                p.chart, self.kind
            )));
        }
        self.check_coords(&p.coords)
    }

    /// A random point of the chart domain.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> AmbientPoint {
        let coords = match self.kind {
            ChartKind::BergerSphere => loop {
                let v: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if n > 0.1 {
                    break v.iter().map(|c| c / n).collect();
                }
            },
            ChartKind::DiskModel => {
                let rmax = if self.params.kappa < 0.0 {
                    0.8 * 2.0 / (-self.params.kappa).sqrt()
                } else {
                    1.5
                };
                let r = rmax * rng.gen_range(0.0f64..1.0).sqrt();
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                vec![r * a.cos(), r * a.sin(), rng.gen_range(-2.0..2.0)]
            }
        };
        AmbientPoint {
            chart: self.kind,
            coords,
        }
    }

    /// Metric matrix in chart coordinates.
    pub fn metric<T: Real>(&self, x: &[T]) -> Mat<T> {
        let ModelParams { kappa, tau } = self.params;
        match self.kind {
            ChartKind::BergerSphere => {
                let xi = hopf_i(x);
                let s = 4.0 / kappa;
                let c = 4.0 * tau * tau / kappa - 1.0;
                (0..4)
                    .map(|i| {
                        (0..4)
                            .map(|j| {
                                let base = xi[i] * xi[j] * (s * c);
                                if i == j {
                                    base + s
                                } else {
                                    base
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
            ChartKind::DiskModel => {
                let lam = disk_lambda(kappa, x);
                let z = T::zero();
                // rows of the coframe (w^1, w^2, w^3) in dx, dy, dz
                let w = [
                    [lam, z, z],
                    [z, lam, z],
                    [-(lam * x[1]) * tau, lam * x[0] * tau, T::one()],
                ];
                (0..3)
                    .map(|i| {
                        (0..3)
                            .map(|j| w[0][i] * w[0][j] + w[1][i] * w[1][j] + w[2][i] * w[2][j])
                            .collect()
                    })
                    .collect()
            }
        }
    }

    /// The canonical frame `(f_1, f_2, f_3)` as coordinate vectors.
    pub fn frame<T: Real>(&self, x: &[T]) -> [Vec<T>; 3] {
        let ModelParams { kappa, tau } = self.params;
        match self.kind {
            ChartKind::BergerSphere => {
                let h = kappa.sqrt() / 2.0;
                let v = kappa / (4.0 * tau);
                [
                    hopf_j(x).iter().map(|c| *c * h).collect(),
                    hopf_k(x).iter().map(|c| *c * h).collect(),
                    hopf_i(x).iter().map(|c| *c * v).collect(),
                ]
            }
            ChartKind::DiskModel => {
                let lam_inv = disk_lambda(kappa, x).recip();
                let z = T::zero();
                let phi = x[2] * (-kappa / (2.0 * tau));
                let (s, c) = (phi.sin(), phi.cos());
                let g1 = [lam_inv, z, x[1] * tau];
                let g2 = [z, lam_inv, -(x[0] * tau)];
                [
                    (0..3).map(|i| c * g1[i] + s * g2[i]).collect(),
                    (0..3).map(|i| c * g2[i] - s * g1[i]).collect(),
                    vec![z, z, T::one()],
                ]
            }
        }
    }

    /// Frame components `(<v, f_1>, <v, f_2>, <v, f_3>)` of a coordinate vector.
    pub fn frame_components<T: Real>(&self, x: &[T], v: &[T]) -> [T; 3] {
        let g = self.metric(x);
        let f = self.frame(x);
        [quad(&g, v, &f[0]), quad(&g, v, &f[1]), quad(&g, v, &f[2])]
    }

    /// Coordinate vector with the given frame components.
    pub fn from_components<T: Real>(&self, x: &[T], comps: &[T; 3]) -> Vec<T> {
        let f = self.frame(x);
        (0..self.dim())
            .map(|i| f[0][i] * comps[0] + f[1][i] * comps[1] + f[2][i] * comps[2])
            .collect()
    }

    /// Christoffel symbols `gamma[k][i][j]` of the coordinate metric.
    pub fn christoffel<T: Real>(&self, x: &[T]) -> Vec<Mat<T>> {
        let n = self.dim();
        let g = self.metric(x);
        let ginv = spd_inverse(&g);
        // dg[l][i][j] = d g_ij / d x^l
        let dg: Vec<Mat<T>> = (0..n)
            .map(|l| {
                let xd = seed(x, |i| if i == l { T::one() } else { T::zero() });
                self.metric(&xd)
                    .into_iter()
                    .map(|row| row.into_iter().map(|d| d.eps).collect())
                    .collect()
            })
            .collect();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let mut acc = T::zero();
                                for (l, gkl) in ginv[k].iter().enumerate() {
                                    acc = acc + *gkl * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                                }
                                acc * 0.5
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// `nabla_V Y` in coordinates, given `D_V Y` (the plain directional
    /// derivative of the coordinate components of `Y`).
    pub fn covariant<T: Real>(&self, x: &[T], v: &[T], dy_v: &[T], y: &[T]) -> Vec<T> {
        let gam = self.christoffel(x);
        covariant_with(&gam, v, dy_v, y)
    }

    /// Directional derivative of the frame fields along a coordinate vector.
    pub fn frame_derivative<T: Real>(&self, x: &[T], dir: &[T]) -> [Vec<T>; 3] {
        let xd = seed(x, |i| dir[i]);
        let f = self.frame(&xd);
        f.map(|v| v.into_iter().map(|d| d.eps).collect())
    }

    /// `<nabla_{f_c} f_b, f_a>` at `x`.
    pub fn frame_connection<T: Real>(&self, x: &[T]) -> FrameConnection<T> {
        let g = self.metric(x);
        let f = self.frame(x);
        let gam = self.christoffel(x);
        let mut out = [[[T::zero(); 3]; 3]; 3];
        for c in 0..3 {
            let df = self.frame_derivative(x, &f[c]);
            for b in 0..3 {
                let nab = covariant_with(&gam, &f[c], &df[b], &f[b]);
                for a in 0..3 {
                    out[c][b][a] = quad(&g, &nab, &f[a]);
                }
            }
        }
        out
    }

    /// Frame components of `[f_a, f_b]`, computed from coordinate derivatives.
    pub fn frame_bracket<T: Real>(&self, x: &[T], a: usize, b: usize) -> [T; 3] {
        let f = self.frame(x);
        let dfa = self.frame_derivative(x, &f[a]);
        let dfb = self.frame_derivative(x, &f[b]);
        // [X, Y] = D_X Y - D_Y X
        let br: Vec<T> = (0..self.dim()).map(|i| dfa[b][i] - dfb[a][i]).collect();
        self.frame_components(x, &br)
    }

    pub fn metric_at(&self, p: &AmbientPoint) -> Result<Mat<f64>> {
        self.check_point(p)?;
        Ok(self.metric(&p.coords))
    }

    /// The canonical frame at `p` as coordinate vectors.
    pub fn canonical_frame(&self, p: &AmbientPoint) -> Result<[Vec<f64>; 3]> {
        self.check_point(p)?;
        Ok(self.frame(&p.coords))
    }

    /// Gram matrix of the canonical frame under the chart metric.
    pub fn frame_gram(&self, p: &AmbientPoint) -> Result<[[f64; 3]; 3]> {
        let g = self.metric_at(p)?;
        let f = self.frame(&p.coords);
        let mut out = [[0.0; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                out[a][b] = quad(&g, &f[a], &f[b]);
            }
        }
        Ok(out)
    }

    pub fn bracket_residuals(&self, p: &AmbientPoint) -> Result<BracketResiduals> {
        self.check_point(p)?;
        let x = &p.coords;
        let ModelParams { kappa, tau } = self.params;
        let k = kappa / (2.0 * tau);
        let dist = |v: [f64; 3], w: [f64; 3]| {
            ((v[0] - w[0]).powi(2) + (v[1] - w[1]).powi(2) + (v[2] - w[2]).powi(2)).sqrt()
        };
        Ok(BracketResiduals {
            f1f2: dist(self.frame_bracket(x, 0, 1), [0.0, 0.0, -2.0 * tau]),
            f2f3: dist(self.frame_bracket(x, 1, 2), [-k, 0.0, 0.0]),
            f3f1: dist(self.frame_bracket(x, 2, 0), [0.0, -k, 0.0]),
        })
    }

    /// `dw^a(f_b, f_c)` for all `a` and `b < c` via
    /// `dw(X,Y) = X w(Y) - Y w(X) - w([X,Y])`; indexed `[a][(b,c)]` with the
    /// pairs ordered `(1,2), (1,3), (2,3)`.
    pub fn coframe_differentials(&self, p: &AmbientPoint) -> Result<[[f64; 3]; 3]> {
        self.check_point(p)?;
        let x = &p.coords;
        let f = self.frame(x);
        // w^a(f_c) as a function of the point, differentiated along f_b
        let wa_fc_along = |a: usize, c: usize, b: usize| -> f64 {
            let xd = seed(x, |i| f[b][i]);
            let g = self.metric(&xd);
            let fd = self.frame(&xd);
            quad(&g, &fd[c], &fd[a]).eps
        };
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut out = [[0.0; 3]; 3];
        for (a, row) in out.iter_mut().enumerate() {
            for (k, &(b, c)) in pairs.iter().enumerate() {
                let br = self.frame_bracket(x, b, c);
                row[k] = wa_fc_along(a, c, b) - wa_fc_along(a, b, c) - br[a];
            }
        }
        Ok(out)
    }

    /// Largest entry of the Lie derivative of the metric along `f_3`,
    /// `(L g)_ij = xi^k d_k g_ij + g_kj d_i xi^k + g_ik d_j xi^k`.
    pub fn killing_residual(&self, p: &AmbientPoint) -> Result<f64> {
        self.check_point(p)?;
        let x = &p.coords;
        let n = self.dim();
        let g = self.metric(x);
        let xi = &self.frame(x)[2];
        let dg_xi: Mat<f64> = {
            let xd = seed(x, |i| xi[i]);
            self.metric(&xd)
                .into_iter()
                .map(|r| r.into_iter().map(|d| d.eps).collect())
                .collect()
        };
        // dxi[i][k] = d xi^k / d x^i
        let dxi: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let xd = seed(x, |l| if l == i { 1.0 } else { 0.0 });
                self.frame(&xd)[2].iter().map(|d| d.eps).collect()
            })
            .collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut l = dg_xi[i][j];
                for k in 0..n {
                    l += g[k][j] * dxi[i][k] + g[i][k] * dxi[j][k];
                }
                worst = worst.max(l.abs());
            }
        }
        Ok(worst)
    }

    /// Connection forms evaluated on the frame at `p`.
    pub fn connection_forms(&self, p: &AmbientPoint) -> Result<ConnectionForms> {
        self.check_point(p)?;
        let gam = self.frame_connection(&p.coords);
        let mut w = ConnectionForms {
            w12: [0.0; 3],
            w13: [0.0; 3],
            w23: [0.0; 3],
        };
        for c in 0..3 {
            w.w12[c] = gam[c][1][0];
            w.w13[c] = gam[c][2][0];
            w.w23[c] = gam[c][2][1];
        }
        Ok(w)
    }

    /// `nabla_X Y` at `p` for vector fields given by frame components.
    pub fn covariant_derivative<X: VectorField, Y: VectorField>(
        &self,
        xf: &X,
        yf: &Y,
        p: &AmbientPoint,
    ) -> Result<TangentVec> {
        self.check_point(p)?;
        let x = &p.coords;
        let xc = xf.components(self, x);
        let xv = self.from_components(x, &xc);
        let xd = seed(x, |i| xv[i]);
        let y_along = yf.components(self, &xd);
        let yc = y_along.map(|d| d.re);
        let gam = self.frame_connection(x);
        let mut out = [0.0; 3];
        for (a, slot) in out.iter_mut().enumerate() {
            let mut acc = y_along[a].eps;
            for c in 0..3 {
                for b in 0..3 {
                    acc += xc[c] * yc[b] * gam[c][b][a];
                }
            }
            *slot = acc;
        }
        Ok(TangentVec {
            base: p.clone(),
            components: out,
        })
    }

    /// Frame components of `[X, Y]` for frame-component vector fields.
    pub fn lie_bracket<X: VectorField, Y: VectorField>(
        &self,
        xf: &X,
        yf: &Y,
        p: &AmbientPoint,
    ) -> Result<TangentVec> {
        self.check_point(p)?;
        let x = &p.coords;
        let coord = |d: &[Dual<f64>], field: &dyn Fn(&[Dual<f64>]) -> [Dual<f64>; 3]| {
            self.from_components(d, &field(d))
        };
        let xv = self.from_components(x, &xf.components(self, x));
        let yv = self.from_components(x, &yf.components(self, x));
        let dy_x = coord(&seed(x, |i| xv[i]), &|d| yf.components(self, d));
        let dx_y = coord(&seed(x, |i| yv[i]), &|d| xf.components(self, d));
        let br: Vec<f64> = (0..self.dim())
            .map(|i| dy_x[i].eps - dx_y[i].eps)
            .collect();
        Ok(TangentVec {
            base: p.clone(),
            components: self.frame_components(x, &br),
        })
    }

    /// Curvature `r[a][b][c][d] = <R(f_a, f_b) f_c, f_d>` with
    /// `R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]`.
    pub fn curvature(&self, p: &AmbientPoint) -> Result<[[[[f64; 3]; 3]; 3]; 3]> {
        self.check_point(p)?;
        let x = &p.coords;
        let gam = self.frame_connection(x);
        let f = self.frame(x);
        // dgam[a] = f_a(gamma)
        let dgam: Vec<FrameConnection<f64>> = (0..3)
            .map(|a| {
                let xd = seed(x, |i| f[a][i]);
                let gd = self.frame_connection(&xd);
                gd.map(|r| r.map(|s| s.map(|d| d.eps)))
            })
            .collect();
        let mut r = [[[[0.0; 3]; 3]; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let mut v = dgam[a][b][c][d] - dgam[b][a][c][d];
                        for e in 0..3 {
                            v += gam[b][c][e] * gam[a][e][d] - gam[a][c][e] * gam[b][e][d]
                                - (gam[a][b][e] - gam[b][a][e]) * gam[e][c][d];
                        }
                        r[a][b][c][d] = v;
                    }
                }
            }
        }
        Ok(r)
    }

    /// Sectional curvature of the plane spanned by orthonormal frame-component
    /// vectors.
    pub fn sectional(&self, p: &AmbientPoint, x: &[f64; 3], y: &[f64; 3]) -> Result<f64> {
        let r = self.curvature(p)?;
        Ok(contract_sectional(&r, x, y))
    }
}

pub(crate) fn contract_sectional(r: &[[[[f64; 3]; 3]; 3]; 3], x: &[f64; 3], y: &[f64; 3]) -> f64 {
    let mut k = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    k += x[a] * y[b] * y[c] * x[d] * r[a][b][c][d];
                }
            }
        }
    }
    k
}

/// A vector field given by its canonical-frame components as a function of
/// chart coordinates.
pub trait VectorField {
    fn components<T: Real>(&self, chart: &Chart, x: &[T]) -> [T; 3];
}

/// The `i`-th canonical frame field.
#[derive(Debug, Clone, Copy)]
pub struct FrameField(pub usize);

impl VectorField for FrameField {
    fn components<T: Real>(&self, _chart: &Chart, _x: &[T]) -> [T; 3] {
        let mut c = [T::zero(); 3];
        c[self.0] = T::one();
        c
    }
}

/// Frame components that are affine-plus-quadratic in the chart coordinates.
#[derive(Debug, Clone)]
pub struct PolynomialField {
    /// `coeffs[a] = (c0, linear[n], quadratic[n])`
    pub constant: [f64; 3],
    pub linear: [Vec<f64>; 3],
    pub quadratic: [Vec<f64>; 3],
}

impl PolynomialField {
    pub fn random<R: Rng>(rng: &mut R, dim: usize) -> Self {
        let mut v = || (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
        let linear = [v(), v(), v()];
        let quadratic = [v(), v(), v()];
        let constant = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        PolynomialField {
            constant,
            linear,
            quadratic,
        }
    }
}

impl VectorField for PolynomialField {
    fn components<T: Real>(&self, _chart: &Chart, x: &[T]) -> [T; 3] {
        let mut out = [T::zero(); 3];
        for (a, slot) in out.iter_mut().enumerate() {
            let mut acc = T::cst(self.constant[a]);
            for (i, xi) in x.iter().enumerate() {
                acc = acc + *xi * self.linear[a][i] + *xi * *xi * self.quadratic[a][i];
            }
            *slot = acc;
        }
        out
    }
}

fn covariant_with<T: Real>(gam: &[Mat<T>], v: &[T], dy_v: &[T], y: &[T]) -> Vec<T> {
    let n = v.len();
    (0..n)
        .map(|k| {
            let mut acc = dy_v[k];
            for i in 0..n {
                for j in 0..n {
                    acc = acc + gam[k][i][j] * v[i] * y[j];
                }
            }
            acc
        })
        .collect()
}

/// Lifts `x` to dual numbers with tangent `dir(i)`.
fn seed<T: Real>(x: &[T], dir: impl Fn(usize) -> T) -> Vec<Dual<T>> {
    x.iter()
        .enumerate()
        .map(|(i, xi)| Dual::new(*xi, dir(i)))
        .collect()
}

fn disk_lambda<T: Real>(kappa: f64, x: &[T]) -> T {
    ((x[0] * x[0] + x[1] * x[1]) * (kappa / 4.0) + 1.0).recip()
}

/// Round Hopf field `i p`.
fn hopf_i<T: Real>(x: &[T]) -> [T; 4] {
    [-x[1], x[0], -x[3], x[2]]
}

/// Right-invariant field `j p`.
fn hopf_j<T: Real>(x: &[T]) -> [T; 4] {
    [-x[2], x[3], x[0], -x[1]]
}

/// Right-invariant field `k p`.
fn hopf_k<T: Real>(x: &[T]) -> [T; 4] {
    [-x[3], -x[2], x[1], x[0]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn charts() -> Vec<Chart> {
        vec![
            Chart::berger(ModelParams::new(4.0, 1.0).unwrap()).unwrap(),
            Chart::berger(ModelParams::new(4.0, 0.5).unwrap()).unwrap(),
            Chart::berger(ModelParams::new(1.0, -0.7).unwrap()).unwrap(),
            Chart::disk(ModelParams::new(-1.0, 0.5).unwrap()),
            Chart::disk(ModelParams::new(0.0, 1.0).unwrap()),
            Chart::disk(ModelParams::new(2.0, 0.3).unwrap()),
        ]
    }

    #[test]
    fn zero_tau_is_rejected() {
        assert!(matches!(ModelParams::new(1.0, 0.0), Err(Error::ZeroTau)));
        assert!(Chart::berger(ModelParams::new(-1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn space_form_metric_is_round() {
        let chart = Chart::berger(ModelParams::new(4.0, 1.0).unwrap()).unwrap();
        let p = chart.point(vec![0.5, 0.5, 0.5, 0.5]).unwrap();
        let g = chart.metric_at(&p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[i][j] - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn vertical_field_is_unit() {
        let chart = Chart::berger(ModelParams::new(4.0, 0.5).unwrap()).unwrap();
        let p = chart.point(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let gram = chart.frame_gram(&p).unwrap();
        assert!((gram[2][2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn disk_metric_at_origin_is_identity() {
        let chart = Chart::disk(ModelParams::new(-1.0, 0.8).unwrap());
        let p = chart.point(vec![0.0, 0.0, 0.0]).unwrap();
        let g = chart.metric_at(&p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(g[i][j], want);
            }
        }
    }

    #[test]
    fn chart_domain_is_enforced() {
        let b = Chart::berger(ModelParams::new(4.0, 1.0).unwrap()).unwrap();
        assert!(b.point(vec![1.0, 1.0, 0.0, 0.0]).is_err());
        let d = Chart::disk(ModelParams::new(-1.0, 1.0).unwrap());
        assert!(d.point(vec![2.0, 0.5, 0.0]).is_err());
        assert!(d.point(vec![1.0, 0.5, 0.0]).is_ok());
    }

    #[test]
    fn frames_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for chart in charts() {
            for _ in 0..20 {
                let p = chart.random_point(&mut rng);
                let gram = chart.frame_gram(&p).unwrap();
                for a in 0..3 {
                    for b in 0..3 {
                        let want = if a == b { 1.0 } else { 0.0 };
                        assert!((gram[a][b] - want).abs() < 1e-12, "{chart:?} {gram:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn brackets_match_structure_constants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for chart in charts() {
            for _ in 0..20 {
                let p = chart.random_point(&mut rng);
                let r = chart.bracket_residuals(&p).unwrap();
                assert!(r.max() < 1e-7, "{chart:?} {r:?}");
            }
        }
    }

    #[test]
    fn connection_forms_match_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for chart in charts() {
            let want = ConnectionForms::closed_form(chart.params());
            for _ in 0..10 {
                let p = chart.random_point(&mut rng);
                let w = chart.connection_forms(&p).unwrap();
                for c in 0..3 {
                    assert!((w.w12[c] - want.w12[c]).abs() < 1e-7, "{chart:?} {w:?}");
                    assert!((w.w13[c] - want.w13[c]).abs() < 1e-7);
                    assert!((w.w23[c] - want.w23[c]).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn w12_on_vertical_for_unit_base() {
        // kappa = 1, tau = 1/2: w^1_2(f_3) = kappa/(2 tau) - tau = 1/2,
        // cross-checked against -<nabla_{f_3} f_1, f_2>.
        let chart = Chart::berger(ModelParams::new(1.0, 0.5).unwrap()).unwrap();
        let p = chart.point(vec![0.6, 0.0, 0.8, 0.0]).unwrap();
        let w = chart.connection_forms(&p).unwrap();
        assert!((w.w12[2] - 0.5).abs() < 1e-12);
        let nab = chart
            .covariant_derivative(&FrameField(0), &FrameField(2), &p)
            .unwrap();
        let _ = nab;
        let d = chart
            .covariant_derivative(&FrameField(2), &FrameField(0), &p)
            .unwrap();
        assert!((-d.components[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vertical_field_parallel_along_itself_direction() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for chart in charts() {
            let p = chart.random_point(&mut rng);
            let field = PolynomialField::random(&mut rng, chart.dim());
            let d = chart
                .covariant_derivative(&field, &FrameField(2), &p)
                .unwrap();
            assert!(d.components[2].abs() < 1e-12);
        }
    }

    #[test]
    fn torsion_free_and_metric_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for chart in charts() {
            for _ in 0..5 {
                let p = chart.random_point(&mut rng);
                let x = PolynomialField::random(&mut rng, chart.dim());
                let y = PolynomialField::random(&mut rng, chart.dim());
                let z = PolynomialField::random(&mut rng, chart.dim());
                let nxy = chart.covariant_derivative(&x, &y, &p).unwrap();
                let nyx = chart.covariant_derivative(&y, &x, &p).unwrap();
                let br = chart.lie_bracket(&x, &y, &p).unwrap();
                for a in 0..3 {
                    let t = nxy.components[a] - nyx.components[a] - br.components[a];
                    assert!(t.abs() < 1e-7, "torsion {t}");
                }
                // X <Y,Z> = <nabla_X Y, Z> + <Y, nabla_X Z>
                let xc = x.components(&chart, &p.coords);
                let xv = chart.from_components(&p.coords, &xc);
                let xd = seed(&p.coords, |i| xv[i]);
                let yd = y.components(&chart, &xd);
                let zd = z.components(&chart, &xd);
                let lhs = (yd[0] * zd[0] + yd[1] * zd[1] + yd[2] * zd[2]).eps;
                let nxz = chart.covariant_derivative(&x, &z, &p).unwrap();
                let yc = y.components(&chart, &p.coords);
                let zc = z.components(&chart, &p.coords);
                let rhs: f64 = (0..3)
                    .map(|a| nxy.components[a] * zc[a] + yc[a] * nxz.components[a])
                    .sum();
                assert!((lhs - rhs).abs() < 1e-7, "compat {lhs} {rhs}");
            }
        }
    }

    #[test]
    fn killing_and_coframe_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for chart in charts() {
            let ModelParams { kappa, tau } = *chart.params();
            let k = kappa / (2.0 * tau);
            for _ in 0..20 {
                let p = chart.random_point(&mut rng);
                assert!(chart.killing_residual(&p).unwrap() < 1e-7);
                let dw = chart.coframe_differentials(&p).unwrap();
                // pairs (1,2), (1,3), (2,3)
                let want = [[0.0, 0.0, k], [0.0, -k, 0.0], [2.0 * tau, 0.0, 0.0]];
                for a in 0..3 {
                    for q in 0..3 {
                        assert!((dw[a][q] - want[a][q]).abs() < 1e-7, "{chart:?} {dw:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_symmetries_and_sectional_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for chart in charts() {
            let ModelParams { kappa, tau } = *chart.params();
            for _ in 0..5 {
                let p = chart.random_point(&mut rng);
                let r = chart.curvature(&p).unwrap();
                for a in 0..3 {
                    for b in 0..3 {
                        for c in 0..3 {
                            for d in 0..3 {
                                assert!((r[a][b][c][d] + r[b][a][c][d]).abs() < 1e-6);
                                assert!((r[a][b][c][d] + r[a][b][d][c]).abs() < 1e-6);
                            }
                        }
                    }
                }
                // horizontal planes: kappa - 3 tau^2; vertical planes: tau^2
                let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
                let kh = contract_sectional(&r, &e[0], &e[1]);
                let kv = contract_sectional(&r, &e[0], &e[2]);
                assert!((kh - (kappa - 3.0 * tau * tau)).abs() < 1e-6, "{kh}");
                assert!((kv - tau * tau).abs() < 1e-6, "{kv}");
            }
        }
    }
}
