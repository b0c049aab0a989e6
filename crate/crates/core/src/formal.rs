// SPDX-License-Identifier: Apache-2.0

//! Exact replay of the cmc identity chain over `BigRational`.
//!
//! With `t = tan(beta/2)` every trigonometric factor is rational, so each
//! identity is checked with residual exactly zero. The free data are
//! `(t, beta_1, H, tau, kappa)`; all higher `beta` jets are eliminated
//! through the cmc constraints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Deliberate corruptions, used to show the checks are sensitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    #[default]
    None,
    /// Flips the sign of the `(kappa - 4 tau^2)` term in the `beta_11`
    /// constraint.
    FlipBeta11,
}

/// Exact jet data at one point of a cmc surface.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalJetState {
    pub t: Q,
    pub beta1: Q,
    pub h: Q,
    pub tau: Q,
    pub kappa: Q,
    pub sin_b: Q,
    pub cos_b: Q,
    pub tan_b: Q,
    pub beta2: Q,
    pub beta11: Q,
    pub beta12: Q,
    pub beta21: Q,
    pub beta22: Q,
    pub beta111: Q,
    pub beta122: Q,
}

impl FormalJetState {
    /// `H / tau`
    pub fn k(&self) -> Q {
        &self.h / &self.tau
    }

    /// `1 + (H/tau)^2`
    pub fn m(&self) -> Q {
        let k = self.k();
        Q::one() + &k * &k
    }

    /// `kappa - 4 tau^2`
    pub fn gap(&self) -> Q {
        &self.kappa - q(4) * &self.tau * &self.tau
    }

    /// `(tau + beta_1)(2 tau + beta_1)`
    fn x(&self) -> Q {
        (&self.tau + &self.beta1) * (q(2) * &self.tau + &self.beta1)
    }

    pub fn witness(&self) -> String {
        format!(
            "t = {}, beta1 = {}, H = {}, tau = {}, kappa = {}",
            self.t, self.beta1, self.h, self.tau, self.kappa
        )
    }

    /// Residuals of the defining relations; all exactly zero for an
    /// unmutated state.
    pub fn invariant_residuals(&self) -> Vec<(&'static str, Q)> {
        let k = self.k();
        let m = self.m();
        let d = self.gap();
        let (s, c, tb) = (&self.sin_b, &self.cos_b, &self.tan_b);
        let two_h_b2 = q(2) * &self.h + &self.beta2;
        let c2h = &self.beta11 + &self.beta22
            + tb * (&two_h_b2 * &self.beta2 + &two_h_b2 * &two_h_b2 + q(2) * self.x())
            + &d * s * c;
        vec![
            ("pythagoras", s * s + c * c - Q::one()),
            ("tau_beta2", &self.tau * &self.beta2 - &self.h * &self.beta1),
            ("beta12", &self.beta12 - &k * &self.beta11),
            ("beta21", &self.beta21 - &k * &self.beta11),
            ("beta22", &self.beta22 - &k * &k * &self.beta11),
            ("beta122", &self.beta122 - &k * &k * &self.beta111),
            (
                "beta11_constraint",
                &m * &self.beta11 + q(2) * &m * self.x() * tb + &d * s * c,
            ),
            ("codazzi2_trace_form", c2h),
            ("beta111_second_form", &m * &self.beta111 - self.beta111_expanded()),
        ]
    }

    /// The expanded right side of the `beta_111` relation (times `m`).
    fn beta111_expanded(&self) -> Q {
        let m = self.m();
        let d = self.gap();
        let (s, c, tb) = (&self.sin_b, &self.cos_b, &self.tan_b);
        let a = q(3) * &self.tau + q(2) * &self.beta1;
        let sec2 = Q::one() / (c * c);
        let cos2 = c * c - s * s;
        q(4) * &m * &a * self.x() * tb * tb + q(2) * &d * &a * s * s
            - q(2) * &m * self.x() * sec2 * &self.beta1
            - &d * cos2 * &self.beta1
    }
}

/// Builds the state from the free data, eliminating the higher jets.
pub fn build_state(t: Q, beta1: Q, h: Q, tau: Q, kappa: Q) -> Result<FormalJetState> {
    build_state_with(t, beta1, h, tau, kappa, Mutation::None)
}

pub fn build_state_with(
    t: Q,
    beta1: Q,
    h: Q,
    tau: Q,
    kappa: Q,
    mutation: Mutation,
) -> Result<FormalJetState> {
    if tau.is_zero() {
        return Err(Error::ZeroTau);
    }
    let t2 = &t * &t;
    if t2 == Q::one() {
        return Err(Error::VerticalPoint);
    }
    let den = Q::one() + &t2;
    let sin_b = q(2) * &t / &den;
    let cos_b = (Q::one() - &t2) / &den;
    let tan_b = &sin_b / &cos_b;
    let k = &h / &tau;
    let m = Q::one() + &k * &k;
    let d = &kappa - q(4) * &tau * &tau;
    let x = (&tau + &beta1) * (q(2) * &tau + &beta1);

    let beta2 = &k * &beta1;
    let trig_term = &d / &m * &sin_b * &cos_b;
    let beta11 = match mutation {
        Mutation::None => -(q(2) * &x * &tan_b) - &trig_term,
        Mutation::FlipBeta11 => -(q(2) * &x * &tan_b) + &trig_term,
    };
    let sec2 = Q::one() / (&cos_b * &cos_b);
    let cos2 = &cos_b * &cos_b - &sin_b * &sin_b;
    let a = q(3) * &tau + q(2) * &beta1;
    let beta111 = -(q(2) * (&a * &beta11 * &tan_b + &x * &sec2 * &beta1))
        - &d / &m * &cos2 * &beta1;
    Ok(FormalJetState {
        beta12: &k * &beta11,
        beta21: &k * &beta11,
        beta22: &k * &k * &beta11,
        beta122: &k * &k * &beta111,
        t,
        beta1,
        h,
        tau,
        kappa,
        sin_b,
        cos_b,
        tan_b,
        beta2,
        beta11,
        beta111,
    })
}

/// The three stages of `Delta |Phi|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianChain {
    /// Expansion of the Laplacian of `2 m (tau + beta_1)^2` in the frame.
    pub expansion: Q,
    /// After using the commuting relations.
    pub collapsed: Q,
    /// After substituting `beta_11` and `beta_111`.
    pub closed: Q,
}

impl LaplacianChain {
    pub fn residuals(&self) -> [Q; 2] {
        [
            &self.expansion - &self.collapsed,
            &self.collapsed - &self.closed,
        ]
    }
}

pub fn laplacian_chain(st: &FormalJetState) -> LaplacianChain {
    let m = st.m();
    let d = st.gap();
    let (s, c, tb) = (&st.sin_b, &st.cos_b, &st.tan_b);
    let tb1 = &st.tau + &st.beta1;
    let t2b1 = q(2) * &st.tau + &st.beta1;
    let two_h_b2 = q(2) * &st.h + &st.beta2;
    let expansion = q(4)
        * &m
        * (&st.beta11 * &st.beta11
            + &tb1 * &st.beta111
            + &st.beta12 * &st.beta12
            + &tb1 * &st.beta122
            + &two_h_b2 * &tb1 * tb * &st.beta12
            + &t2b1 * &tb1 * tb * &st.beta11);
    let collapsed = q(4)
        * &m
        * &m
        * (&st.beta11 * &st.beta11 + &tb1 * &st.beta111 + &t2b1 * &tb1 * tb * &st.beta11);
    let closed = q(4)
        * &m
        * &m
        * (&st.beta11 * &st.beta11
            + q(2) * &tb1 * &tb1 * &t2b1 * (q(2) * &t2b1 * tb * tb - &st.beta1))
        + q(4) * &m * &d * &tb1 * (q(4) * &tb1 * s * s - &st.beta1 * c * c);
    LaplacianChain {
        expansion,
        collapsed,
        closed,
    }
}

/// Largest absolute residual, as a rational.
fn worst(rs: &[Q]) -> Q {
    rs.iter()
        .map(|r| r.abs())
        .fold(Q::zero(), |a, b| if b > a { b } else { a })
}

pub fn verify_laplacian_chain(st: &FormalJetState) -> Q {
    worst(&laplacian_chain(st).residuals())
}

/// `h_{ij|k}` computed from the connection of the surface, `[i][j][k]`.
pub fn direct_h_cov(st: &FormalJetState) -> [[[Q; 2]; 2]; 2] {
    let tb = &st.tan_b;
    let p = (q(2) * &st.h + &st.beta2) * tb;
    let qq = (q(2) * &st.tau + &st.beta1) * tb;
    // conn[k][i][l] = <nabla_{e_k} e_i, e_l>
    let z = Q::zero();
    let conn = [
        [[z.clone(), -p.clone()], [p.clone(), z.clone()]],
        [[z.clone(), qq.clone()], [-qq.clone(), z.clone()]],
    ];
    let h = [
        [q(2) * &st.h + &st.beta2, -(&st.tau + &st.beta1)],
        [-(&st.tau + &st.beta1), -st.beta2.clone()],
    ];
    // e_k h_ij
    let dh = |i: usize, j: usize, k: usize| -> Q {
        match (i, j, k) {
            (0, 0, 0) => st.beta21.clone(),
            (0, 0, 1) => st.beta22.clone(),
            (1, 1, 0) => -st.beta21.clone(),
            (1, 1, 1) => -st.beta22.clone(),
            (_, _, 0) => -st.beta11.clone(),
            _ => -st.beta12.clone(),
        }
    };
    let mut out: [[[Q; 2]; 2]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut v = dh(i, j, k);
                for l in 0..2 {
                    v -= &h[l][j] * &conn[k][i][l];
                    v -= &h[i][l] * &conn[k][j][l];
                }
                out[i][j][k] = v;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradAChain {
    /// Residuals that must vanish: components against their `beta`
    /// formulas, the component relations, the assembly and the closed form.
    pub residuals: Vec<(&'static str, Q)>,
    /// `h_{12|1} + h_{22|2}` and `h_{11|1} - h_{22|1}` as literally stated
    /// alongside the component formulas; nonzero in general.
    pub stated_relations: [Q; 2],
}

pub fn grad_a_chain(st: &FormalJetState) -> GradAChain {
    let k = st.k();
    let m = st.m();
    let x = st.x();
    let tb = &st.tan_b;
    let hc = direct_h_cov(st);
    let h111 = &k * (&st.beta11 - q(2) * &x * tb);
    let h112 = &k * &k * &st.beta11 + q(2) * &x * tb;
    let h121 = -st.beta11.clone() - q(2) * &k * &k * &x * tb;
    let mut direct_sum = Q::zero();
    for i in 0..2 {
        for j in 0..2 {
            for kk in 0..2 {
                direct_sum += &hc[i][j][kk] * &hc[i][j][kk];
            }
        }
    }
    let assembled = q(2) * (q(2) * &h111 * &h111 + &h112 * &h112 + &h121 * &h121);
    let closed = q(2)
        * &m
        * &m
        * (&st.beta11 * &st.beta11
            + q(4)
                * (&st.tau + &st.beta1)
                * (&st.tau + &st.beta1)
                * (q(2) * &st.tau + &st.beta1)
                * (q(2) * &st.tau + &st.beta1)
                * tb
                * tb);
    // the first step of h_{11|1}: beta_21 - 2 (tau + beta_1)(2H + beta_2) tan(beta)
    let h111_step =
        &st.beta21 - q(2) * (&st.tau + &st.beta1) * (q(2) * &st.h + &st.beta2) * tb;
    GradAChain {
        residuals: vec![
            ("h11_1", &hc[0][0][0] - &h111),
            ("h11_1_step", &h111_step - &h111),
            ("h11_2", &hc[0][0][1] - &h112),
            ("h12_1", &hc[0][1][0] - &h121),
            ("h12_2", &hc[0][1][1] + &hc[0][0][0]),
            ("h22_1", &hc[1][1][0] + &hc[0][0][0]),
            ("h22_2", &hc[1][1][1] + &hc[0][0][1]),
            ("h21_sym", &hc[1][0][0] - &hc[0][1][0]),
            ("assembly", &direct_sum - &assembled),
            ("closed", &assembled - &closed),
        ],
        stated_relations: [
            &hc[0][1][0] + &hc[1][1][1],
            &hc[0][0][0] - &hc[1][1][0],
        ],
    }
}

pub fn verify_grad_a_chain(st: &FormalJetState) -> Q {
    let g = grad_a_chain(st);
    worst(&g.residuals.into_iter().map(|(_, r)| r).collect::<Vec<_>>())
}

/// `|Phi|^2 = 2 m (tau + beta_1)^2`
pub fn phi_norm_sq(st: &FormalJetState) -> Q {
    q(2) * st.m() * (&st.tau + &st.beta1) * (&st.tau + &st.beta1)
}

/// Right side of the `T` divergence identity, `2 tau (beta_1 cos^2 + 2 tau sin^2)`.
pub fn t_term(st: &FormalJetState) -> Q {
    let (s, c) = (&st.sin_b, &st.cos_b);
    q(2) * &st.tau * (&st.beta1 * c * c + q(2) * &st.tau * s * s)
}

/// Residuals of the pointwise Simons formula and its intermediate forms.
pub fn pointwise_simons_residuals(st: &FormalJetState) -> Vec<(&'static str, Q)> {
    let m = st.m();
    let d = st.gap();
    let (s, c) = (&st.sin_b, &st.cos_b);
    let phi = phi_norm_sq(st);
    let ss = &st.h * &st.h + &st.tau * &st.tau;
    let grad = {
        let tb = &st.tan_b;
        let a = &st.tau + &st.beta1;
        let b = q(2) * &st.tau + &st.beta1;
        q(2) * &m * &m * (&st.beta11 * &st.beta11 + q(4) * &a * &a * &b * &b * tb * tb)
    };
    // from the defining expansion, not the substituted closed form
    let half_lap = laplacian_chain(st).expansion / q(2);
    let base = &grad - &phi * (&phi - q(2) * &ss);
    let s2 = s * s;
    let c2 = c * c;
    let tail = q(2) * &d * &m * &st.tau * &st.beta1 * &c2;
    let ff1 = &base
        + &d * (q(4) * &phi * &s2 - q(2) * &m * (q(2) * &st.tau + &st.beta1) * &st.beta1 * &c2)
        + &tail;
    let ff2 = &base + &d * (q(4) * &phi * &s2 - (&phi - q(2) * &ss) * &c2) + &tail;
    let lhs = &half_lap - &d * &m * t_term(st);
    let mid = &base + &d * (q(4) * &phi * &s2 - (&phi - q(2) * &ss) * &c2)
        - q(4) * &d * &ss * &s2;
    let rhs = &base
        + &d * (&phi * (q(5) * &s2 - q(1)) - q(2) * &ss * (q(3) * &s2 - q(1)));
    vec![
        ("half_laplacian_form1", &half_lap - &ff1),
        ("half_laplacian_form2", &half_lap - &ff2),
        ("with_t_term", &lhs - &mid),
        ("final", &lhs - &rhs),
    ]
}

pub fn verify_pointwise_simons(st: &FormalJetState) -> Q {
    worst(
        &pointwise_simons_residuals(st)
            .into_iter()
            .map(|(_, r)| r)
            .collect::<Vec<_>>(),
    )
}

/// Bounded random rational with `|num|, |den| <= bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Q {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Draws a valid random state (rejecting `tau = 0` and `t^2 = 1`).
pub fn random_state<R: Rng>(rng: &mut R, mutation: Mutation) -> FormalJetState {
    loop {
        let t = random_rational(rng, 1000);
        let b1 = random_rational(rng, 1000);
        let h = random_rational(rng, 1000);
        let tau = random_rational(rng, 1000);
        let kappa = random_rational(rng, 1000);
        if let Ok(s) = build_state_with(t, b1, h, tau, kappa, mutation) {
            return s;
        }
    }
}

pub const IDENTITIES: [&str; 4] = [
    "state_invariants",
    "laplacian_chain",
    "grad_a_chain",
    "pointwise_simons",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalFailure {
    pub index: usize,
    pub identity: String,
    pub residual: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalReport {
    pub count: usize,
    pub seed: u64,
    pub mutation: Mutation,
    /// Number of states on which each identity held exactly.
    pub passed: Vec<(String, usize)>,
    /// States where the stated component relations held literally.
    pub stated_relations_exact: usize,
    pub failures: Vec<FormalFailure>,
}

impl FormalReport {
    pub fn all_exact(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_state(st: &FormalJetState) -> Vec<(&'static str, Q)> {
    let inv = worst(
        &st.invariant_residuals()
            .into_iter()
            .map(|(_, r)| r)
            .collect::<Vec<_>>(),
    );
    vec![
        (IDENTITIES[0], inv),
        (IDENTITIES[1], verify_laplacian_chain(st)),
        (IDENTITIES[2], verify_grad_a_chain(st)),
        (IDENTITIES[3], verify_pointwise_simons(st)),
    ]
}

/// Runs all identities on `count` random states drawn from `seed`.
pub fn run_formal(count: usize, seed: u64, mutation: Mutation) -> FormalReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<FormalJetState> = (0..count).map(|_| random_state(&mut rng, mutation)).collect();
    run_on_states(&states, seed, mutation)
}

pub fn run_on_states(states: &[FormalJetState], seed: u64, mutation: Mutation) -> FormalReport {
    let mut passed: Vec<(String, usize)> = IDENTITIES.iter().map(|n| (n.to_string(), 0)).collect();
    let mut failures = Vec::new();
    let mut stated = 0;
    for (index, st) in states.iter().enumerate() {
        for (slot, (name, r)) in check_state(st).into_iter().enumerate() {
            if r.is_zero() {
                passed[slot].1 += 1;
            } else {
                failures.push(FormalFailure {
                    index,
                    identity: name.to_string(),
                    residual: r.to_string(),
                    witness: st.witness(),
                });
            }
        }
        if grad_a_chain(st).stated_relations.iter().all(Q::is_zero) {
            stated += 1;
        }
    }
    FormalReport {
        count: states.len(),
        seed,
        mutation,
        passed,
        stated_relations_exact: stated,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trig_is_exact() {
        let st = build_state(r(1, 2), r(1, 1), r(0, 1), r(1, 1), r(1, 1)).unwrap();
        assert_eq!(st.sin_b, r(4, 5));
        assert_eq!(st.cos_b, r(3, 5));
        assert_eq!(st.beta2, Q::zero());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            build_state(r(1, 1), r(0, 1), r(0, 1), r(1, 1), r(1, 1)),
            Err(Error::VerticalPoint)
        ));
        assert!(matches!(
            build_state(r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(1, 1)),
            Err(Error::ZeroTau)
        ));
    }

    #[test]
    fn zero_angle_state() {
        let st = build_state(r(0, 1), r(3, 7), r(2, 3), r(1, 2), r(5, 1)).unwrap();
        assert!(st.beta11.is_zero());
        let ch = laplacian_chain(&st);
        let m = st.m();
        let want = q(4) * &m * &m * (&st.tau + &st.beta1) * &st.beta111;
        assert_eq!(ch.collapsed, want);
        assert_eq!(ch.closed, want);
    }

    #[test]
    fn hopf_jet_is_trivial() {
        let st = build_state(r(0, 1), r(0, 1), r(2, 3), r(1, 2), r(5, 1)).unwrap();
        for (_, v) in pointwise_simons_residuals(&st) {
            assert!(v.is_zero());
        }
        let lc = laplacian_chain(&st);
        assert!(lc.closed.is_zero());
    }

    #[test]
    fn random_states_are_exact() {
        let rep = run_formal(50, 11, Mutation::None);
        assert!(rep.all_exact(), "{:?}", rep.failures.first());
    }

    #[test]
    fn mutation_is_detected() {
        let rep = run_formal(20, 11, Mutation::FlipBeta11);
        assert!(!rep.all_exact());
    }
}
