//! Raising and lowering operators `c* = α a* α⁻¹` and `c = α a α⁻¹`.
//!
//! Explicitly
//! `c* = (−d/dx + x(1 + 2D)/(1 + D))/√2`, `c = (d/dx + x/(1 + D))/√2` with
//! `D = δe^{-x²}`. They step through the `H_n^δ` family with the usual
//! oscillator coefficients and satisfy `[c, c*] = 1`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::{grid_max_abs, ResidualReport, SimpleFactorization};
use crate::genhermite::{GenHermiteFunction, JetValue};
use crate::numerics::Grid;
use crate::special_fn::HermiteIndex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderOperators {
    factorization: SimpleFactorization,
    #[serde(default)]
    injected_fault: bool,
}

impl LadderOperators {
    pub fn new(delta: f64) -> Result<Self> {
        Ok(Self { factorization: SimpleFactorization::new(delta)?, injected_fault: false })
    }

    /// Operators whose raising coefficient uses `1 − 2D` in place of
    /// `1 + 2D`. Only meant as a negative control for the verification suite.
    #[doc(hidden)]
    pub fn with_injected_fault(mut self) -> Self {
        self.injected_fault = true;
        self
    }

    pub fn delta(&self) -> f64 {
        self.factorization.delta()
    }

    /// Multiplier of `f` in `√2 c* f`: `x(1 + 2D)/(1 + D)`.
    pub fn raising_coefficient(&self, x: f64) -> f64 {
        let d = self.factorization.deformation(x);
        let two_d = if self.injected_fault { -2.0 * d } else { 2.0 * d };
        x * (1.0 + two_d) / (1.0 + d)
    }

    /// Multiplier of `f` in `√2 c f`: `x/(1 + D)`.
    pub fn lowering_coefficient(&self, x: f64) -> f64 {
        x / (1.0 + self.factorization.deformation(x))
    }

    pub fn apply_c_star(&self, f: JetValue, x: f64) -> f64 {
        FRAC_1_SQRT_2 * (-f.d1 + self.raising_coefficient(x) * f.value)
    }

    pub fn apply_c(&self, f: JetValue, x: f64) -> f64 {
        FRAC_1_SQRT_2 * (f.d1 + self.lowering_coefficient(x) * f.value)
    }

    fn member(&self, n: HermiteIndex) -> GenHermiteFunction {
        GenHermiteFunction::with_factorization(n, self.factorization)
            .expect("index already validated")
    }

    /// Residuals of `c* H_n^δ = √(n+1) H_{n+1}^δ` and `c H_n^δ = √n H_{n−1}^δ`.
    ///
    /// Each is relative to the largest magnitude of its target on the grid;
    /// the `n = 0` lowering target is identically zero and is reported in
    /// absolute terms.
    pub fn ladder_residuals(&self, n: HermiteIndex, grid: &Grid) -> (ResidualReport, ResidualReport) {
        let g = self.member(n);
        let k = n.get() as f64;
        let raising = match g.shifted(1) {
            Some(up) => {
                let scale = grid_max_abs(grid, |x| (k + 1.0).sqrt() * up.eval(x));
                ResidualReport::sample(grid, |x| {
                    self.apply_c_star(g.jet(x), x) - (k + 1.0).sqrt() * up.eval(x)
                })
                .relative_to(scale)
            }
            // no H_{n+1}^δ past the supported degree, nothing to compare against
            None => ResidualReport::sample(grid, |_| 0.0),
        };
        let lowering = match g.shifted(-1) {
            Some(down) => {
                let scale = grid_max_abs(grid, |x| k.sqrt() * down.eval(x));
                ResidualReport::sample(grid, |x| self.apply_c(g.jet(x), x) - k.sqrt() * down.eval(x))
                    .relative_to(scale)
            }
            None => ResidualReport::sample(grid, |x| self.apply_c(g.jet(x), x)),
        };
        (raising, lowering)
    }

    /// Residuals of `c c* H_n^δ = (n+1) H_n^δ` and `c* c H_n^δ = n H_n^δ`,
    /// relative to `max |H_n^δ|`.
    ///
    /// The inner operator is replaced by its exact image
    /// (`c* H_n^δ = √(n+1) H_{n+1}^δ`, `c H_n^δ = √n H_{n−1}^δ`) so that the
    /// outer operator sees an analytic jet.
    pub fn number_operator_residuals(
        &self,
        n: HermiteIndex,
        grid: &Grid,
    ) -> (ResidualReport, ResidualReport) {
        let g = self.member(n);
        let scale = grid_max_abs(grid, |x| g.eval(x));
        let cc_star = ResidualReport::sample(grid, |x| self.c_c_star(&g, x) - (n.get() as f64 + 1.0) * g.eval(x))
            .relative_to(scale);
        let c_star_c = ResidualReport::sample(grid, |x| self.c_star_c(&g, x) - n.get() as f64 * g.eval(x))
            .relative_to(scale);
        (cc_star, c_star_c)
    }

    /// Residual of `(c c* − c* c) H_n^δ = H_n^δ`, relative to `max |H_n^δ|`.
    pub fn commutator_residual(&self, n: HermiteIndex, grid: &Grid) -> ResidualReport {
        let g = self.member(n);
        let scale = grid_max_abs(grid, |x| g.eval(x));
        ResidualReport::sample(grid, |x| self.c_c_star(&g, x) - self.c_star_c(&g, x) - g.eval(x))
            .relative_to(scale)
    }

    fn c_c_star(&self, g: &GenHermiteFunction, x: f64) -> f64 {
        match g.shifted(1) {
            Some(up) => (g.n().get() as f64 + 1.0).sqrt() * self.apply_c(up.jet(x), x),
            None => f64::NAN,
        }
    }

    fn c_star_c(&self, g: &GenHermiteFunction, x: f64) -> f64 {
        match g.shifted(-1) {
            Some(down) => (g.n().get() as f64).sqrt() * self.apply_c_star(down.jet(x), x),
            None => 0.0,
        }
    }
}
