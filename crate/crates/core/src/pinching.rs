// SPDX-License-Identifier: Apache-2.0

//! Roots of the Simons quadratic and the pinching corridor.
//!
//! The quadratic in `x = |Phi|^2` is
//! `x^2 - B x + P` with `B = 2S + D(5C^2 - 1)`, `P = 2 D S (3C^2 - 1)`,
//! `S = H^2 + tau^2` and `D = kappa - 4 tau^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PinchingInput {
    pub kappa: f64,
    pub tau: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

/// `kappa > 4 tau^2`, the regime with corridor semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Corridor,
    /// `kappa = 4 tau^2`
    SpaceForm,
    /// `kappa < 4 tau^2`, not covered by the pinching result.
    Open,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Corridor => "corridor",
            Regime::SpaceForm => "space_form",
            Regime::Open => "open regime",
        }
    }
}

impl PinchingInput {
    pub fn new(kappa: f64, tau: f64, h: f64, c: f64) -> Result<Self> {
        let inp = PinchingInput { kappa, tau, h, c };
        inp.validate()?;
        Ok(inp)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau == 0.0 {
            return Err(Error::ZeroTau);
        }
        let all = [self.kappa, self.tau, self.h, self.c];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("non-finite pinching input".into()));
        }
        if self.c.abs() > 1.0 {
            return Err(Error::InvalidParams(format!("|C| = {} exceeds 1", self.c.abs())));
        }
        Ok(())
    }

    /// `H^2 + tau^2`
    pub fn s(&self) -> f64 {
        self.h * self.h + self.tau * self.tau
    }

    /// `kappa - 4 tau^2`
    pub fn gap(&self) -> f64 {
        self.kappa - 4.0 * self.tau * self.tau
    }

    pub fn regime(&self) -> Regime {
        let d = self.gap();
        if d > 0.0 {
            Regime::Corridor
        } else if d == 0.0 {
            Regime::SpaceForm
        } else {
            Regime::Open
        }
    }

    /// Middle coefficient `B` (so the quadratic is `x^2 - B x + P`).
    pub fn linear_coeff(&self) -> f64 {
        let c2 = self.c * self.c;
        2.0 * self.s() + self.gap() * (5.0 * c2 - 1.0)
    }

    /// Constant term `P`.
    pub fn constant_coeff(&self) -> f64 {
        let c2 = self.c * self.c;
        2.0 * self.gap() * self.s() * (3.0 * c2 - 1.0)
    }

    /// Evaluates the quadratic.
    pub fn quadratic(&self, x: f64) -> f64 {
        x * x - self.linear_coeff() * x + self.constant_coeff()
    }
}

/// The discriminant in its three-term form.
pub fn rho(inp: &PinchingInput) -> f64 {
    let s = inp.s();
    let d = inp.gap();
    let c2 = inp.c * inp.c;
    let f = 5.0 * c2 - 1.0;
    4.0 * s * s + 4.0 * s * d * (1.0 - c2) + d * d * f * f
}

/// The roots `(a, b)` with `a <= b`.
pub fn pinching_interval(inp: &PinchingInput) -> Result<(f64, f64)> {
    let r = rho(inp);
    if r < 0.0 {
        return Err(Error::NegativeDiscriminant(r));
    }
    let b = inp.linear_coeff();
    let sq = r.sqrt();
    Ok(((b - sq) / 2.0, (b + sq) / 2.0))
}

/// Relative residual of a root in the quadratic.
fn relative_residual(inp: &PinchingInput, x: f64) -> f64 {
    let scale = (x * x)
        .max((inp.linear_coeff() * x).abs())
        .max(inp.constant_coeff().abs())
        .max(1.0);
    inp.quadratic(x).abs() / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticResiduals {
    pub root_a: f64,
    pub root_b: f64,
    /// `|a + b - B|`, relative.
    pub vieta_sum: f64,
    /// `|a b - P|`, relative.
    pub vieta_product: f64,
}

impl QuadraticResiduals {
    pub fn max(&self) -> f64 {
        self.root_a
            .max(self.root_b)
            .max(self.vieta_sum)
            .max(self.vieta_product)
    }
}

pub fn quadratic_consistency(inp: &PinchingInput) -> Result<QuadraticResiduals> {
    let (a, b) = pinching_interval(inp)?;
    let bb = inp.linear_coeff();
    let pp = inp.constant_coeff();
    Ok(QuadraticResiduals {
        root_a: relative_residual(inp, a),
        root_b: relative_residual(inp, b),
        vieta_sum: (a + b - bb).abs() / bb.abs().max(1.0),
        vieta_product: (a * b - pp).abs() / pp.abs().max(1.0).max((a * b).abs()),
    })
}

/// Number of broken links in `a <= S < 2S <= b`.
pub fn ordering_violations(inp: &PinchingInput) -> Result<usize> {
    let (a, b) = pinching_interval(inp)?;
    let s = inp.s();
    // rounding slack at the touching points (b = 2S at C = 0)
    let slack = 1e-12 * s.max(inp.gap().abs()).max(1.0);
    Ok([a <= s + slack, s < 2.0 * s, 2.0 * s <= b + slack]
        .iter()
        .filter(|ok| !**ok)
        .count())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorridorVerdict {
    pub a_norm_sq: f64,
    /// `a + 2H^2`
    pub lo: f64,
    /// `b + 2H^2`
    pub hi: f64,
    pub inside: bool,
    /// `3H^2 + tau^2`
    pub special_lo: f64,
    /// `2(2H^2 + tau^2)`
    pub special_hi: f64,
    pub inside_special: bool,
    pub special_contained: bool,
}

/// Tests `|A|^2` against both corridors; only meaningful for `kappa > 4 tau^2`.
pub fn corridor_check(a_norm_sq: f64, inp: &PinchingInput) -> Result<CorridorVerdict> {
    inp.validate()?;
    if inp.regime() != Regime::Corridor {
        return Err(Error::WrongCurvatureRegime(inp.gap()));
    }
    let (a, b) = pinching_interval(inp)?;
    let h2 = inp.h * inp.h;
    let t2 = inp.tau * inp.tau;
    let lo = a + 2.0 * h2;
    let hi = b + 2.0 * h2;
    let special_lo = 3.0 * h2 + t2;
    let special_hi = 2.0 * (2.0 * h2 + t2);
    let slack = 1e-12 * hi.abs().max(1.0);
    Ok(CorridorVerdict {
        a_norm_sq,
        lo,
        hi,
        inside: lo - slack <= a_norm_sq && a_norm_sq <= hi + slack,
        special_lo,
        special_hi,
        inside_special: special_lo - slack <= a_norm_sq && a_norm_sq <= special_hi + slack,
        special_contained: lo <= special_lo + slack && special_hi <= hi + slack,
    })
}

/// Where the general corridor endpoints come closest to the special ones,
/// as functions of `C` at fixed `(kappa, tau, H)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coincidence {
    /// Values of `C` where `a + 2H^2 = 3H^2 + tau^2`.
    pub lower_roots: Vec<f64>,
    /// Smallest `(H^2 + tau^2) - a` over `C` and where it occurs.
    pub lower_min_gap: f64,
    pub lower_argmin: f64,
    /// Values of `C` where `b + 2H^2 = 2(2H^2 + tau^2)`.
    pub upper_roots: Vec<f64>,
    pub upper_min_gap: f64,
    pub upper_argmin: f64,
}

/// Scans `C` in `[-1, 1]` for coincidences of the corridor endpoints.
/// Sign changes are refined by bisection, tangential zeros are detected
/// through the minimum of the gap.
pub fn coincidence(kappa: f64, tau: f64, h: f64, samples: usize) -> Result<Coincidence> {
    let probe = PinchingInput::new(kappa, tau, h, 0.0)?;
    if probe.regime() != Regime::Corridor {
        return Err(Error::WrongCurvatureRegime(probe.gap()));
    }
    let s = probe.s();
    let at = |c: f64| -> Result<(f64, f64)> {
        let (a, b) = pinching_interval(&PinchingInput { c, ..probe })?;
        Ok((s - a, b - 2.0 * s))
    };
    let n = samples.max(2);
    let cs: Vec<f64> = (0..=n).map(|i| -1.0 + 2.0 * i as f64 / n as f64).collect();
    let mut vals = Vec::with_capacity(cs.len());
    for &c in &cs {
        vals.push(at(c)?);
    }
    let tol = 1e-12 * s.max(1.0);
    let find = |pick: &dyn Fn((f64, f64)) -> f64| -> Result<(Vec<f64>, f64, f64)> {
        let mut roots: Vec<f64> = Vec::new();
        let (mut best, mut arg) = (f64::INFINITY, cs[0]);
        for i in 0..cs.len() {
            let g = pick(vals[i]);
            if g.abs() < best.abs() || (g.abs() == best.abs() && g < best) {
                best = g;
                arg = cs[i];
            }
            if g.abs() <= tol {
                roots.push(cs[i]);
                continue;
            }
            if i + 1 < cs.len() {
                let g1 = pick(vals[i + 1]);
                if g1.abs() > tol && g.signum() != g1.signum() {
                    let (mut lo, mut hi) = (cs[i], cs[i + 1]);
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if pick(at(mid)?).signum() == g.signum() {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    roots.push(0.5 * (lo + hi));
                }
            }
        }
        Ok((roots, best, arg))
    };
    let (lower_roots, lower_min_gap, lower_argmin) = find(&|p| p.0)?;
    let (upper_roots, upper_min_gap, upper_argmin) = find(&|p| p.1)?;
    Ok(Coincidence {
        lower_roots,
        lower_min_gap,
        lower_argmin,
        upper_roots,
        upper_min_gap,
        upper_argmin,
    })
}

/// One sweep output row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub kappa: f64,
    pub tau: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub rho: f64,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub corridor_lo: Option<f64>,
    pub corridor_hi: Option<f64>,
    pub regime: &'static str,
    /// Ordering-chain violations, only in the corridor regime.
    pub violations: Option<usize>,
}

pub fn sweep_row(inp: &PinchingInput) -> Result<SweepRow> {
    inp.validate()?;
    let r = rho(inp);
    let roots = pinching_interval(inp).ok();
    let regime = inp.regime();
    let h2 = inp.h * inp.h;
    let corridor = regime == Regime::Corridor;
    let (lo, hi) = match (roots, corridor) {
        (Some((a, b)), true) => (Some(a + 2.0 * h2), Some(b + 2.0 * h2)),
        _ => (None, None),
    };
    Ok(SweepRow {
        kappa: inp.kappa,
        tau: inp.tau,
        h: inp.h,
        c: inp.c,
        rho: r,
        a: roots.map(|p| p.0),
        b: roots.map(|p| p.1),
        corridor_lo: lo,
        corridor_hi: hi,
        regime: regime.label(),
        violations: if corridor { Some(ordering_violations(inp)?) } else { None },
    })
}

/// Inclusive evenly spaced range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub from: f64,
    pub to: f64,
    #[serde(default = "one")]
    pub steps: usize,
}

fn one() -> usize {
    1
}

impl Range {
    pub fn point(x: f64) -> Self {
        Range { from: x, to: x, steps: 1 }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if self.steps == 0 {
            return Err(Error::Config("empty range".into()));
        }
        if !self.from.is_finite() || !self.to.is_finite() {
            return Err(Error::Config("non-finite range bound".into()));
        }
        if self.steps == 1 {
            return Ok(vec![self.from]);
        }
        let n = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| self.from + (self.to - self.from) * i as f64 / n)
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRanges {
    pub kappa: Range,
    pub tau: Range,
    #[serde(rename = "H")]
    pub h: Range,
    #[serde(rename = "C")]
    pub c: Range,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Total ordering-chain violations over the corridor rows.
    pub violations: usize,
    /// Inputs rejected by validation (`tau = 0`, `|C| > 1`).
    pub rejected: usize,
}

pub fn sweep(r: &SweepRanges) -> Result<Sweep> {
    let (ks, ts, hs, cs) = (r.kappa.values()?, r.tau.values()?, r.h.values()?, r.c.values()?);
    let mut rows = Vec::new();
    let mut rejected = 0;
    for &kappa in &ks {
        for &tau in &ts {
            for &h in &hs {
                for &c in &cs {
                    match PinchingInput::new(kappa, tau, h, c) {
                        Ok(inp) => rows.push(sweep_row(&inp)?),
                        Err(_) => rejected += 1,
                    }
                }
            }
        }
    }
    let violations = rows.iter().filter_map(|r| r.violations).sum();
    Ok(Sweep { rows, violations, rejected })
}

pub const CSV_HEADER: [&str; 11] = [
    "kappa", "tau", "H", "C", "rho", "a", "b", "corridor_lo", "corridor_hi", "regime", "violations",
];

/// Writes rows as CSV; missing values are empty cells.
pub fn write_csv<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let opt = |x: Option<f64>| x.map(|v| format!("{v}")).unwrap_or_default();
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            format!("{}", r.kappa),
            format!("{}", r.tau),
            format!("{}", r.h),
            format!("{}", r.c),
            format!("{}", r.rho),
            opt(r.a),
            opt(r.b),
            opt(r.corridor_lo),
            opt(r.corridor_hi),
            r.regime.to_string(),
            r.violations.map(|v| v.to_string()).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(k: f64, t: f64, h: f64, c: f64) -> PinchingInput {
        PinchingInput::new(k, t, h, c).unwrap()
    }

    #[test]
    fn reference_point() {
        let p = inp(4.0, 0.5, 0.0, 0.0);
        // three terms added separately
        let t1 = 4.0 * 0.0625;
        let t2 = 4.0 * 0.25 * 3.0;
        let t3 = 9.0;
        assert_eq!(rho(&p), t1 + t2 + t3);
        let (a, b) = pinching_interval(&p).unwrap();
        assert!((a + 3.0).abs() < 1e-14 && (b - 0.5).abs() < 1e-14);
        assert!(p.quadratic(a).abs() < 1e-12);
    }

    #[test]
    fn space_form_roots() {
        let p = inp(4.0, 1.0, 0.7, 0.3);
        let (a, b) = pinching_interval(&p).unwrap();
        assert!(a.abs() < 1e-14);
        assert!((b - 2.0 * p.s()).abs() < 1e-14);
    }

    #[test]
    fn poles_drop_middle_term() {
        let p = inp(5.0, 0.5, 0.3, 1.0);
        let s = p.s();
        assert!((rho(&p) - (4.0 * s * s + 16.0 * 16.0)).abs() < 1e-12);
    }

    #[test]
    fn wrong_regime() {
        let p = inp(0.5, 0.5, 0.0, 0.0);
        assert!(matches!(corridor_check(1.0, &p), Err(Error::WrongCurvatureRegime(_))));
        let row = sweep_row(&p).unwrap();
        assert_eq!(row.regime, "open regime");
        assert!(row.corridor_lo.is_none() && row.violations.is_none());
    }

    #[test]
    fn hopf_value_on_upper_endpoint() {
        let p = inp(4.0, 0.5, 0.8, 0.0);
        let a2 = 2.0 * (2.0 * 0.64 + 0.25);
        let v = corridor_check(a2, &p).unwrap();
        assert!(v.inside && v.inside_special && v.special_contained);
        let umb = corridor_check(2.0 * 0.64, &p).unwrap();
        assert!(!umb.inside_special);
    }

    #[test]
    fn no_lower_coincidence() {
        let c = coincidence(4.0, 0.5, 0.3, 400).unwrap();
        assert!(c.lower_roots.is_empty());
        assert!(c.lower_min_gap > 0.0);
        assert_eq!(c.upper_roots, vec![0.0]);
    }

    #[test]
    fn csv_shape() {
        let rows = vec![sweep_row(&inp(4.0, 0.5, 0.0, 0.0)).unwrap()];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(lines.next().unwrap(), "4,0.5,0,0,12.25,-3,0.5,-3,0.5,corridor,0");
    }
}
