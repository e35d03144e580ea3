//! Generalized Hermite functions
//!
//! `H_n^δ(x) = c_n (e^{x²} + δ)^{-1/2} H_n(x)`, `c_n = (2^{n+1} n! √π)^{-1/2}`,
//!
//! together with the operators built from the simple factorization
//! `B = (α⁻¹ d/dx + β)/√2`, `B* = (−α d/dx + β)/√2` and the self-adjoint
//! operator `L` whose eigenvalue equation `L H_n^δ + E_n ω H_n^δ = 0` they
//! satisfy with weight `ω = 2(1 + δ e^{-x²})`.
//!
//! Operators act on [`JetValue`]s (value and first two derivatives at a
//! point), so any source of derivatives can be fed through them.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::{grid_max_abs, ResidualReport, SimpleFactorization};
use crate::numerics::Grid;
use crate::special_fn::{log_norm_const, EnergyLevel, HermiteIndex, ScaledHermite};

/// Value, first and second derivative of a function at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct JetValue {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl JetValue {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }

    /// Jet of a product by the Leibniz rule.
    pub fn product(self, other: JetValue) -> JetValue {
        JetValue {
            value: self.value * other.value,
            d1: self.d1 * other.value + self.value * other.d1,
            d2: self.d2 * other.value + 2.0 * self.d1 * other.d1 + self.value * other.d2,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl Add for JetValue {
    type Output = JetValue;

    fn add(self, rhs: JetValue) -> JetValue {
        JetValue::new(self.value + rhs.value, self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl Sub for JetValue {
    type Output = JetValue;

    fn sub(self, rhs: JetValue) -> JetValue {
        JetValue::new(self.value - rhs.value, self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl Mul<JetValue> for f64 {
    type Output = JetValue;

    fn mul(self, rhs: JetValue) -> JetValue {
        JetValue::new(self * rhs.value, self * rhs.d1, self * rhs.d2)
    }
}

/// One member `H_n^δ` of the generalized Hermite family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenHermiteFunction {
    n: HermiteIndex,
    factorization: SimpleFactorization,
}

impl GenHermiteFunction {
    pub fn new(n: usize, delta: f64) -> Result<Self> {
        Ok(Self { n: HermiteIndex::new(n)?, factorization: SimpleFactorization::new(delta)? })
    }

    pub fn with_factorization(n: HermiteIndex, factorization: SimpleFactorization) -> Result<Self> {
        Ok(Self { n, factorization })
    }

    pub fn n(&self) -> HermiteIndex {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.factorization.delta()
    }

    pub fn factorization(&self) -> &SimpleFactorization {
        &self.factorization
    }

    pub fn energy(&self) -> EnergyLevel {
        self.n.energy()
    }

    /// `c_n`, the normalization constant.
    pub fn norm_const(&self) -> f64 {
        log_norm_const(self.n).exp()
    }

    /// The neighbour `H_{n+k}^δ` with the same `δ`.
    pub fn shifted(&self, k: isize) -> Option<Self> {
        let m = self.n.get().checked_add_signed(k)?;
        Some(Self { n: HermiteIndex::new(m).ok()?, factorization: self.factorization })
    }

    // ln of c_n H_n / p_n times the envelope e^{-x²/2} (1 + D)^{-1/2}
    fn log_envelope(&self, x: f64) -> f64 {
        -0.5 * x * x - 0.5 * self.factorization.deformation(x).ln_1p() - 0.5 * LN_2
    }

    /// `H_n^δ(x)`, evaluated as `c_n e^{-x²/2} (1 + δe^{-x²})^{-1/2} H_n(x)`
    /// so that neither `e^{x²}` nor `H_n` overflows.
    pub fn eval(&self, x: f64) -> f64 {
        self.enveloped(x, false)
    }

    /// `H_n^δ(x) e^{x²/2} = c_n (1 + δe^{-x²})^{-1/2} H_n(x)`.
    pub fn eval_scaled(&self, x: f64) -> f64 {
        self.enveloped(x, true)
    }

    fn enveloped(&self, x: f64, scaled: bool) -> f64 {
        let tail = ScaledHermite::eval(self.n.get(), x);
        // direct product is a few ulps more accurate than the log route
        if tail.log_scale == 0.0 && x.abs() < 30.0 {
            let gauss = if scaled { 1.0 } else { (-0.5 * x * x).exp() };
            let d = self.factorization.deformation(x);
            return tail.values[0] * gauss / (2.0 * (1.0 + d)).sqrt();
        }
        let extra = if scaled { 0.5 * x * x } else { 0.0 };
        tail.combine(0, self.log_envelope(x) + extra)
    }

    /// Value and analytic first and second derivatives.
    ///
    /// With `P = p_n` (orthonormal Hermite) and envelope `E`,
    /// `E'/E = g = −x/(1 + D)` where `D = δe^{-x²}`, so
    /// `(PE)' = (P' + gP)E` and `(PE)'' = (P'' + 2gP' + (g² + g')P)E`.
    pub fn jet(&self, x: f64) -> JetValue {
        let n = self.n.get();
        let tail = ScaledHermite::eval(n, x);
        let env = self.log_envelope(x);
        let p = tail.combine(0, env);
        let dp = if n >= 1 { (2.0 * n as f64).sqrt() * tail.combine(1, env) } else { 0.0 };
        let ddp = if n >= 2 {
            (4.0 * (n * (n - 1)) as f64).sqrt() * tail.combine(2, env)
        } else {
            0.0
        };
        let d = self.factorization.deformation(x);
        let inv = 1.0 / (1.0 + d);
        let g = -x * inv;
        let dg = -inv - 2.0 * x * x * d * inv * inv;
        JetValue { value: p, d1: dp + g * p, d2: ddp + 2.0 * g * dp + (g * g + dg) * p }
    }

    /// Residual of `L H_n^δ + E_n ω H_n^δ = 0`, relative to `max |ω H_n^δ|`.
    pub fn sl_residual(&self, grid: &Grid) -> ResidualReport {
        let f = &self.factorization;
        let e = self.energy().value();
        let scale = grid_max_abs(grid, |x| weight(f, x) * self.eval(x));
        ResidualReport::sample(grid, |x| {
            let jet = self.jet(x);
            apply_l(f, jet, x) + e * weight(f, x) * jet.value
        })
        .relative_to(scale)
    }

    /// Residual of `L̃ H_n^δ = E_n H_n^δ`, relative to `max |H_n^δ|`.
    pub fn l_tilde_residual(&self, grid: &Grid) -> ResidualReport {
        let f = &self.factorization;
        let e = self.energy().value();
        let scale = grid_max_abs(grid, |x| self.eval(x));
        ResidualReport::sample(grid, |x| {
            let jet = self.jet(x);
            apply_l_tilde(f, jet, x) - e * jet.value
        })
        .relative_to(scale)
    }
}

/// `ω(x) = 2(1 + δe^{-x²})`.
pub fn weight(f: &SimpleFactorization, x: f64) -> f64 {
    2.0 * (1.0 + f.deformation(x))
}

/// `B f = (f'/α + β f)/√2`.
pub fn apply_b(f: &SimpleFactorization, jet: JetValue, x: f64) -> f64 {
    FRAC_1_SQRT_2 * (jet.d1 / f.alpha(x) + f.beta(x) * jet.value)
}

/// `B* f = (−α f' + β f)/√2`.
pub fn apply_b_star(f: &SimpleFactorization, jet: JetValue, x: f64) -> f64 {
    FRAC_1_SQRT_2 * (-f.alpha(x) * jet.d1 + f.beta(x) * jet.value)
}

/// `L̃ = B*B + ½` in expanded second-order form.
pub fn apply_l_tilde(f: &SimpleFactorization, jet: JetValue, x: f64) -> f64 {
    let d = f.deformation(x);
    let one_d = 1.0 + d;
    -0.5 * jet.d2
        + x * d / one_d * jet.d1
        + 0.5 * (x * x / (one_d * one_d) - 1.0 / one_d + 1.0) * jet.value
}

/// `L = (1 + δe^{-x²}) d²/dx² − 2δx e^{-x²} d/dx − [x²/(1 + δe^{-x²}) + δe^{-x²}]`.
pub fn apply_l(f: &SimpleFactorization, jet: JetValue, x: f64) -> f64 {
    let d = f.deformation(x);
    let one_d = 1.0 + d;
    one_d * jet.d2 - 2.0 * x * d * jet.d1 - (x * x / one_d + d) * jet.value
}
