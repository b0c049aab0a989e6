// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::jet::JetError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bundle curvature tau must be nonzero")]
    ZeroTau,

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("point outside chart domain: {0}")]
    OutsideChart(String),

    #[error("degenerate parametrization at ({u}, {v}): det I = {det:e}")]
    Degenerate { u: f64, v: f64, det: f64 },

    #[error("adapted frame undefined at ({u}, {v}): |cos beta| = {cos_beta:e}")]
    AdaptedFrameUndefined { u: f64, v: f64, cos_beta: f64 },

    #[error("operation requires a cmc-tagged surface")]
    CmcRequired,

    #[error("surface is not compact: the parameter domain must be doubly periodic")]
    NonCompact,

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("immersion condition fails at ({u}, {v}): {reason}")]
    ImmersionFailure { u: f64, v: f64, reason: String },

    #[error("discriminant rho = {0:e} is negative")]
    NegativeDiscriminant(f64),

    #[error("pinching corridor needs kappa > 4 tau^2 (kappa - 4 tau^2 = {0})")]
    WrongCurvatureRegime(f64),

    #[error("t^2 = 1 puts the point on the vertical set (cos beta = 0)")]
    VerticalPoint,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Jet(#[from] JetError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
