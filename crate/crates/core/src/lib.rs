// SPDX-License-Identifier: Apache-2.0

pub mod ambient;
pub mod error;
pub mod formal;
pub mod hopf;
pub mod jet;
pub mod identities;
pub mod linalg;
pub mod pinching;
pub mod quadrature;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
