// SPDX-License-Identifier: Apache-2.0

//! Truncated Taylor jets in two parameters.
//!
//! A [`Jet`] stores the Taylor coefficients of a scalar function of `(u, v)`
//! around a base point, truncated at a runtime order of at most
//! [`MAX_ORDER`]. Arithmetic and the analytic primitives propagate the
//! truncation order (the minimum of the operands), so a quantity obtained by
//! differentiating a jet `k` times knows that it is only valid to order
//! `order - k`.
//!
//! [`Dual`] is a first-order companion used for directional derivatives of
//! ambient fields (`Dual<Jet>` differentiates a coordinate expression while
//! keeping the surface jet of every coefficient).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use thiserror::Error;

/// Highest truncation order a [`Jet`] can carry.
pub const MAX_ORDER: u8 = 4;

const N_COEFF: usize = 15;

/// Scalar types the geometry code is generic over.
///
/// Mirrors the subset of `f64` needed by the ambient models. Domain errors
/// behave like `f64` (they produce NaN); [`Jet`] additionally offers checked
/// variants.
pub trait Real:
    Copy
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(x: f64) -> Self;
    /// The plain value (constant Taylor coefficient).
    fn re(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn sqrt(self) -> Self;
    fn recip(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn asin(self) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }

    fn one() -> Self {
        Self::cst(1.0)
    }

    fn sq(self) -> Self {
        self * self
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn re(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn tan(self) -> Self {
        f64::tan(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn recip(self) -> Self {
        f64::recip(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn asin(self) -> Self {
        f64::asin(self)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("{primitive} is undefined at {value}")]
    Domain { primitive: &'static str, value: f64 },
    #[error("jet of order {have} cannot supply order {need}")]
    InsufficientOrder { have: u8, need: u8 },
}

/// Seeding direction of a jet variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    U,
    V,
}

#[inline]
const fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

const fn exponents() -> [(usize, usize); N_COEFF] {
    let mut out = [(0, 0); N_COEFF];
    let mut d = 0;
    while d <= MAX_ORDER as usize {
        let mut j = 0;
        while j <= d {
            out[idx(d - j, j)] = (d - j, j);
            j += 1;
        }
        d += 1;
    }
    out
}

const EXPONENTS: [(usize, usize); N_COEFF] = exponents();

const N_PRODUCTS: usize = 70;

/// Coefficient products `(a, b, out)` sorted by output degree.
const fn product_table() -> [(u8, u8, u8); N_PRODUCTS] {
    let mut out = [(0u8, 0u8, 0u8); N_PRODUCTS];
    let mut n = 0;
    let mut d = 0;
    while d <= MAX_ORDER as usize {
        let mut a = 0;
        while a < N_COEFF {
            let (ai, aj) = EXPONENTS[a];
            let mut b = 0;
            while b < N_COEFF {
                let (bi, bj) = EXPONENTS[b];
                if ai + aj + bi + bj == d {
                    out[n] = (a as u8, b as u8, idx(ai + bi, aj + bj) as u8);
                    n += 1;
                }
                b += 1;
            }
            a += 1;
        }
        d += 1;
    }
    out
}

const PRODUCTS: [(u8, u8, u8); N_PRODUCTS] = product_table();
/// Number of leading entries of `PRODUCTS` / coefficients used at each order.
const PRODUCTS_UPTO: [usize; 5] = [1, 5, 15, 35, 70];
const COEFFS_UPTO: [usize; 5] = [1, 3, 6, 10, 15];

/// Truncated bivariate Taylor expansion `sum c_ij u^i v^j`, `i + j <= order`.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; N_COEFF],
    order: u8,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = COEFFS_UPTO[self.order as usize];
        f.debug_struct("Jet")
            .field("order", &self.order)
            .field("coeffs", &&self.c[..n])
            .finish()
    }
}

impl Jet {
    /// A constant; valid to any order.
    pub fn constant(x: f64) -> Self {
        let mut c = [0.0; N_COEFF];
        c[0] = x;
        Jet { c, order: MAX_ORDER }
    }

    /// The coordinate function `u` (or `v`) seeded at `x0`.
    pub fn coordinate(dir: Direction, x0: f64, order: u8) -> Self {
        match dir {
            Direction::U => Self::seeded(x0, 1.0, 0.0, order),
            Direction::V => Self::seeded(x0, 0.0, 1.0, order),
        }
    }

    pub fn var_u(x0: f64, order: u8) -> Self {
        Self::coordinate(Direction::U, x0, order)
    }

    pub fn var_v(x0: f64, order: u8) -> Self {
        Self::coordinate(Direction::V, x0, order)
    }

    /// The affine function `x0 + a u + b v`.
    pub fn seeded(x0: f64, a: f64, b: f64, order: u8) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut c = [0.0; N_COEFF];
        c[0] = x0;
        if order >= 1 {
            c[idx(1, 0)] = a;
            c[idx(0, 1)] = b;
        }
        Jet { c, order }
    }

    /// Builds a jet from the partial derivatives `d^{i+j} f / du^i dv^j`,
    /// given as a closure over `(i, j)`.
    pub fn from_derivatives(order: u8, mut deriv: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(order <= MAX_ORDER);
        let mut c = [0.0; N_COEFF];
        for (k, slot) in c.iter_mut().enumerate().take(COEFFS_UPTO[order as usize]) {
            let (i, j) = EXPONENTS[k];
            *slot = deriv(i, j) / (factorial(i) * factorial(j));
        }
        Jet { c, order }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    /// Taylor coefficient of `u^i v^j`.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order as usize {
            return 0.0;
        }
        self.c[idx(i, j)]
    }

    /// Partial derivative `d^{i+j} f / du^i dv^j` at the base point.
    ///
    /// Panics if the jet is not valid to order `i + j`.
    pub fn deriv(&self, i: usize, j: usize) -> f64 {
        self.try_deriv(i, j).expect("insufficient jet order")
    }

    pub fn try_deriv(&self, i: usize, j: usize) -> Result<f64, JetError> {
        if i + j > self.order as usize {
            return Err(JetError::InsufficientOrder {
                have: self.order,
                need: (i + j) as u8,
            });
        }
        Ok(self.c[idx(i, j)] * factorial(i) * factorial(j))
    }

    /// The first partials `(f_u, f_v)`.
    pub fn gradient(&self) -> [f64; 2] {
        [self.deriv(1, 0), self.deriv(0, 1)]
    }

    /// Second partials `(f_uu, f_uv, f_vv)`.
    pub fn hessian(&self) -> [f64; 3] {
        [self.deriv(2, 0), self.deriv(1, 1), self.deriv(0, 2)]
    }

    /// Third partials `(f_uuu, f_uuv, f_uvv, f_vvv)`.
    pub fn third(&self) -> [f64; 4] {
        [
            self.deriv(3, 0),
            self.deriv(2, 1),
            self.deriv(1, 2),
            self.deriv(0, 3),
        ]
    }

    /// The jet of `df/du`, valid to one order less.
    pub fn du(&self) -> Jet {
        self.partial(Direction::U)
    }

    /// The jet of `df/dv`, valid to one order less.
    pub fn dv(&self) -> Jet {
        self.partial(Direction::V)
    }

    pub fn partial(&self, dir: Direction) -> Jet {
        self.try_partial(dir).expect("insufficient jet order")
    }

    pub fn try_partial(&self, dir: Direction) -> Result<Jet, JetError> {
        if self.order == 0 {
            return Err(JetError::InsufficientOrder { have: 0, need: 1 });
        }
        let order = self.order - 1;
        let mut c = [0.0; N_COEFF];
        for (k, slot) in c.iter_mut().enumerate().take(COEFFS_UPTO[order as usize]) {
            let (i, j) = EXPONENTS[k];
            *slot = match dir {
                Direction::U => (i + 1) as f64 * self.c[idx(i + 1, j)],
                Direction::V => (j + 1) as f64 * self.c[idx(i, j + 1)],
            };
        }
        Ok(Jet { c, order })
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: u8) -> Jet {
        let order = order.min(self.order);
        let mut c = [0.0; N_COEFF];
        let n = COEFFS_UPTO[order as usize];
        c[..n].copy_from_slice(&self.c[..n]);
        Jet { c, order }
    }

    /// Evaluates the truncated polynomial at the offset `(du, dv)`.
    pub fn eval_at(&self, du: f64, dv: f64) -> f64 {
        (0..COEFFS_UPTO[self.order as usize])
            .map(|k| {
                let (i, j) = EXPONENTS[k];
                self.c[k] * du.powi(i as i32) * dv.powi(j as i32)
            })
            .sum()
    }

    /// Applies a univariate analytic function given its derivatives
    /// `g(x0), g'(x0), ..., g''''(x0)` at the base value (Faa di Bruno).
    pub fn compose(&self, g: [f64; 5]) -> Jet {
        let order = self.order;
        let mut delta = *self;
        delta.c[0] = 0.0;
        let mut out = Jet::constant(g[0]);
        out.order = order;
        let mut power = delta;
        let mut fact = 1.0;
        for (k, gk) in g.iter().enumerate().skip(1).take(order as usize) {
            fact *= k as f64;
            out += power * (gk / fact);
            if k < order as usize {
                power = power * delta;
            }
        }
        out
    }

    pub fn try_sqrt(self) -> Result<Jet, JetError> {
        let x = self.value();
        if x < 0.0 || (x == 0.0 && self.order > 0) {
            return Err(JetError::Domain {
                primitive: "sqrt",
                value: x,
            });
        }
        Ok(self.sqrt())
    }

    pub fn try_ln(self) -> Result<Jet, JetError> {
        let x = self.value();
        if x <= 0.0 {
            return Err(JetError::Domain {
                primitive: "ln",
                value: x,
            });
        }
        Ok(self.ln())
    }

    pub fn try_asin(self) -> Result<Jet, JetError> {
        let x = self.value();
        if x.abs() >= 1.0 && self.order > 0 || x.abs() > 1.0 {
            return Err(JetError::Domain {
                primitive: "asin",
                value: x,
            });
        }
        Ok(self.asin())
    }

    pub fn try_recip(self) -> Result<Jet, JetError> {
        let x = self.value();
        if x == 0.0 {
            return Err(JetError::Domain {
                primitive: "recip",
                value: x,
            });
        }
        Ok(self.recip())
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl Real for Jet {
    fn cst(x: f64) -> Self {
        Jet::constant(x)
    }

    fn re(&self) -> f64 {
        self.c[0]
    }

    fn sin(self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    fn cos(self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    fn tan(self) -> Self {
        let t = self.value().tan();
        let t2 = 1.0 + t * t;
        self.compose([
            t,
            t2,
            2.0 * t * t2,
            2.0 * t2 * (1.0 + 3.0 * t * t),
            8.0 * t * t2 * (2.0 + 3.0 * t * t),
        ])
    }

    fn sqrt(self) -> Self {
        let x = self.value();
        let r = x.sqrt();
        self.compose([
            r,
            0.5 / r,
            -0.25 / (r * x),
            0.375 / (r * x * x),
            -0.9375 / (r * x * x * x),
        ])
    }

    fn recip(self) -> Self {
        let r = 1.0 / self.value();
        let r2 = r * r;
        self.compose([r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2, 24.0 * r2 * r2 * r])
    }

    fn exp(self) -> Self {
        let e = self.value().exp();
        self.compose([e; 5])
    }

    fn ln(self) -> Self {
        let x = self.value();
        let r = 1.0 / x;
        self.compose([x.ln(), r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    fn asin(self) -> Self {
        let x = self.value();
        let w = 1.0 - x * x;
        let s = w.sqrt();
        self.compose([
            x.asin(),
            1.0 / s,
            x / (w * s),
            (1.0 + 2.0 * x * x) / (w * w * s),
            (9.0 * x + 6.0 * x * x * x) / (w * w * w * s),
        ])
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        self += rhs;
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        self.order = self.order.min(rhs.order);
        for k in 0..COEFFS_UPTO[self.order as usize] {
            self.c[k] += rhs.c[k];
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        self -= rhs;
        self
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        self.order = self.order.min(rhs.order);
        for k in 0..COEFFS_UPTO[self.order as usize] {
            self.c[k] -= rhs.c[k];
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; N_COEFF];
        for &(a, b, o) in &PRODUCTS[..PRODUCTS_UPTO[order as usize]] {
            c[o as usize] += self.c[a as usize] * rhs.c[b as usize];
        }
        Jet { c, order }
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for k in 0..COEFFS_UPTO[self.order as usize] {
            self.c[k] = -self.c[k];
        }
        self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, rhs: f64) -> Jet {
        for k in 0..COEFFS_UPTO[self.order as usize] {
            self.c[k] *= rhs;
        }
        self
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: f64) -> Jet {
        self * (1.0 / rhs)
    }
}

/// First-order dual number `re + eps * e`, `e^2 = 0`, over any [`Real`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    pub fn constant(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }

    fn chain(self, f: T, df: T) -> Self {
        Dual {
            re: f,
            eps: self.eps * df,
        }
    }
}

impl<T: Real> Real for Dual<T> {
    fn cst(x: f64) -> Self {
        Dual::constant(T::cst(x))
    }
    fn re(&self) -> f64 {
        self.re.re()
    }
    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }
    fn tan(self) -> Self {
        let t = self.re.tan();
        self.chain(t, t * t + 1.0)
    }
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        self.chain(r, (r * 2.0).recip())
    }
    fn recip(self) -> Self {
        let r = self.re.recip();
        self.chain(r, -(r * r))
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.re.ln(), self.re.recip())
    }
    fn asin(self) -> Self {
        let w = (T::one() - self.re * self.re).sqrt();
        self.chain(self.re.asin(), w.recip())
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual::new(self.re * rhs.re, self.re * rhs.eps + self.eps * rhs.re)
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Real> Add<f64> for Dual<T> {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        Dual::new(self.re + rhs, self.eps)
    }
}

impl<T: Real> Sub<f64> for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: f64) -> Self {
        Dual::new(self.re - rhs, self.eps)
    }
}

impl<T: Real> Mul<f64> for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Dual::new(self.re * rhs, self.eps * rhs)
    }
}

impl<T: Real> Div<f64> for Dual<T> {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Dual::new(self.re / rhs, self.eps / rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn constants_have_no_derivatives() {
        let c = Jet::constant(3.5);
        assert_eq!(c.value(), 3.5);
        for (i, j) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 3), (2, 2)] {
            assert_eq!(c.deriv(i, j), 0.0);
        }
    }

    #[test]
    fn square_of_coordinate() {
        let u = Jet::var_u(0.7, 3);
        let sq = u * u;
        assert_eq!(sq.deriv(2, 0), 2.0);
        assert!(close(sq.deriv(1, 0), 1.4, 1e-15));
        assert_eq!(sq.deriv(3, 0), 0.0);
    }

    #[test]
    fn sine_series_at_zero() {
        let s = Jet::var_u(0.0, 3).sin();
        assert_eq!(s.value(), 0.0);
        assert_eq!(s.deriv(1, 0), 1.0);
        assert_eq!(s.deriv(2, 0), 0.0);
        assert_eq!(s.deriv(3, 0), -1.0);
    }

    #[test]
    fn tan_third_derivative_at_zero() {
        // tan''' = 2 sec^2 (1 + 3 tan^2) -> 2 at the origin
        let t = Jet::var_u(0.0, 3).tan();
        assert!(close(t.deriv(3, 0), 2.0, 1e-15));
        assert!(close(t.deriv(1, 0), 1.0, 1e-15));
    }

    #[test]
    fn exp_inverts_ln() {
        let x = Jet::seeded(1.7, 0.3, -1.1, 4) * Jet::var_v(0.4, 4) + 2.0;
        let y = x.ln().exp();
        for k in 0..15 {
            let (i, j) = EXPONENTS[k];
            assert!(close(y.coeff(i, j), x.coeff(i, j), 1e-13), "slot {k}");
        }
    }

    #[test]
    fn pythagorean_identity() {
        let x = Jet::seeded(0.3, 1.0, 2.0, 4) * Jet::var_u(1.2, 4);
        let one = x.sin().sq() + x.cos().sq();
        assert!(close(one.value(), 1.0, 1e-15));
        for k in 1..15 {
            let (i, j) = EXPONENTS[k];
            assert!(one.coeff(i, j).abs() < 1e-13);
        }
    }

    #[test]
    fn partial_drops_one_order() {
        let u = Jet::var_u(0.5, 3);
        let v = Jet::var_v(-0.25, 3);
        let f = u * u * v + v.sin();
        let fu = f.du();
        assert_eq!(fu.order(), 2);
        assert!(close(fu.value(), 2.0 * 0.5 * -0.25, 1e-15));
        assert!(close(fu.deriv(0, 1), 2.0 * 0.5, 1e-15));
        assert!(f.du().du().du().du_checked_fails());
    }

    impl Jet {
        fn du_checked_fails(&self) -> bool {
            self.try_partial(Direction::U).is_err()
        }
    }

    #[test]
    fn domain_errors_are_reported() {
        assert!(Jet::var_u(-1.0, 2).try_sqrt().is_err());
        assert!(Jet::var_u(0.0, 2).try_ln().is_err());
        assert!(Jet::var_u(1.0, 2).try_asin().is_err());
        assert!(Jet::var_u(0.5, 2).try_asin().is_ok());
    }

    #[test]
    fn dual_nested_second_derivative() {
        // d^2/dx^2 of x^3 sin x at 0.8 via Dual<Dual<f64>>.
        let x = Dual::new(Dual::new(0.8, 1.0), Dual::new(1.0, 0.0));
        let f = x * x * x * x.sin();
        let x0: f64 = 0.8;
        let d2 = 6.0 * x0 * x0.sin() + 6.0 * x0 * x0 * x0.cos() - x0.powi(3) * x0.sin();
        assert!(close(f.eps.eps, d2, 1e-14));
    }

    fn poly(c: &[f64; 10], u: Jet, v: Jet) -> Jet {
        let mons = [
            Jet::constant(1.0),
            u,
            v,
            u * u,
            u * v,
            v * v,
            u * u * u,
            u * u * v,
            u * v * v,
            v * v * v,
        ];
        mons.iter()
            .zip(c)
            .fold(Jet::constant(0.0), |acc, (m, k)| acc + *m * *k)
    }

    proptest! {
        #[test]
        fn cubic_polynomial_slots_are_exact(
            c in prop::array::uniform10(-3.0f64..3.0),
            u0 in -1.0f64..1.0,
            v0 in -1.0f64..1.0,
        ) {
            let f = poly(&c, Jet::var_u(u0, 3), Jet::var_v(v0, 3));
            // analytic partials of the cubic
            let fu = c[1] + 2.0*c[3]*u0 + c[4]*v0 + 3.0*c[6]*u0*u0 + 2.0*c[7]*u0*v0 + c[8]*v0*v0;
            let fv = c[2] + c[4]*u0 + 2.0*c[5]*v0 + c[7]*u0*u0 + 2.0*c[8]*u0*v0 + 3.0*c[9]*v0*v0;
            let fuu = 2.0*c[3] + 6.0*c[6]*u0 + 2.0*c[7]*v0;
            let fuv = c[4] + 2.0*c[7]*u0 + 2.0*c[8]*v0;
            let fvv = 2.0*c[5] + 2.0*c[8]*u0 + 6.0*c[9]*v0;
            let tol = 4.0 * f64::EPSILON * 64.0;
            prop_assert!(close(f.deriv(1,0), fu, tol));
            prop_assert!(close(f.deriv(0,1), fv, tol));
            prop_assert!(close(f.deriv(2,0), fuu, tol));
            prop_assert!(close(f.deriv(1,1), fuv, tol));
            prop_assert!(close(f.deriv(0,2), fvv, tol));
            prop_assert!(close(f.deriv(3,0), 6.0*c[6], tol));
            prop_assert!(close(f.deriv(2,1), 2.0*c[7], tol));
            prop_assert!(close(f.deriv(1,2), 2.0*c[8], tol));
            prop_assert!(close(f.deriv(0,3), 6.0*c[9], tol));
        }

        #[test]
        fn jets_agree_with_central_differences(
            u0 in -0.8f64..0.8,
            v0 in -0.8f64..0.8,
        ) {
            let f = |u: Jet, v: Jet| (u * v + 1.3).sin() * (u.sq() + 2.0).sqrt() + (v * 0.5).exp() / (u + 3.0);
            let j = f(Jet::var_u(u0, 3), Jet::var_v(v0, 3));
            let h = 1e-5;
            let at = |a: f64, b: f64| f(Jet::constant(a), Jet::constant(b)).value();
            let fu = (at(u0 + h, v0) - at(u0 - h, v0)) / (2.0 * h);
            let fv = (at(u0, v0 + h) - at(u0, v0 - h)) / (2.0 * h);
            let hh = 1e-4;
            let fuv = (at(u0 + hh, v0 + hh) - at(u0 + hh, v0 - hh) - at(u0 - hh, v0 + hh) + at(u0 - hh, v0 - hh)) / (4.0 * hh * hh);
            prop_assert!(close(j.deriv(1,0), fu, 1e-6));
            prop_assert!(close(j.deriv(0,1), fv, 1e-6));
            prop_assert!(close(j.deriv(1,1), fuv, 1e-6));
        }

        #[test]
        fn ring_axioms_hold(
            a in prop::array::uniform3(-2.0f64..2.0),
            b in prop::array::uniform3(-2.0f64..2.0),
            c in prop::array::uniform3(-2.0f64..2.0),
        ) {
            let mk = |p: [f64; 3]| Jet::seeded(p[0], p[1], p[2], 4) * Jet::seeded(p[1], p[2], p[0], 4);
            let (x, y, z) = (mk(a), mk(b), mk(c));
            let lhs = x * (y + z);
            let rhs = x * y + x * z;
            let comm = x * y - y * x;
            for k in 0..15 {
                let (i, j) = EXPONENTS[k];
                prop_assert!(close(lhs.coeff(i, j), rhs.coeff(i, j), 1e-13));
                prop_assert!(comm.coeff(i, j).abs() < 1e-12);
            }
        }
    }
}
