//! Closed-form factorization functions and residual certificates.
//!
//! Two families factorize `H + ½`:
//!
//! - [`SimpleFactorization`]: `α = (1 + δ e^{-x²})^{-1/2}`, `β = x α`, the
//!   solution of the coupled system with `β/α = x`.
//! - [`MielnikFactorization`]: `β = x + φ` with
//!   `φ = e^{-x²} / (γ + ∫₀ˣ e^{-t²} dt)`, the general solution of
//!   `β' + β² = 1 + x²`, producing the isospectral partner potential.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{central_diff, DiffOrder, Grid};
use crate::special_fn::{erf, erfc, qho_eigenfunction_with_deriv, HermiteIndex};

const SQRT_PI_2: f64 = 0.886_226_925_452_758;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Max-abs and RMS of a residual sampled over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub rms: f64,
    pub argmax_x: f64,
    pub grid: Grid,
}

impl ResidualReport {
    /// Samples `residual` at every grid point. A non-finite sample is
    /// reported as an infinite `max_abs` at that point.
    pub fn sample<F>(grid: &Grid, residual: F) -> Self
    where
        F: Fn(f64) -> f64,
    {
        let mut max_abs = 0.0f64;
        let mut argmax_x = grid.x_min();
        let mut sum_sq = 0.0;
        for x in grid.points() {
            let r = residual(x);
            let a = if r.is_finite() { r.abs() } else { f64::INFINITY };
            if a > max_abs {
                max_abs = a;
                argmax_x = x;
            }
            sum_sq += a * a;
        }
        Self { max_abs, rms: (sum_sq / grid.count() as f64).sqrt(), argmax_x, grid: *grid }
    }

    /// Divides both statistics by `scale` (no-op for a non-positive scale).
    pub fn relative_to(mut self, scale: f64) -> Self {
        if scale > 0.0 && scale.is_finite() {
            self.max_abs /= scale;
            self.rms /= scale;
        }
        self
    }
}

/// Largest `|f(x)|` over the grid.
pub(crate) fn grid_max_abs<F: Fn(f64) -> f64>(grid: &Grid, f: F) -> f64 {
    grid.points().map(|x| f(x).abs()).fold(0.0, f64::max)
}

/// Deformation parameter `δ ∈ [0, ∞)` of the simple factorization branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleFactorization {
    delta: f64,
}

impl SimpleFactorization {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::InvalidDelta(delta));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `δ e^{-x²}`, underflowing harmlessly to 0 for large `|x|`.
    #[inline]
    pub fn deformation(&self, x: f64) -> f64 {
        self.delta * (-x * x).exp()
    }

    pub fn alpha(&self, x: f64) -> f64 {
        (1.0 + self.deformation(x)).sqrt().recip()
    }

    /// `α' = x δ e^{-x²} α³`.
    pub fn alpha_deriv(&self, x: f64) -> f64 {
        let a = self.alpha(x);
        x * self.deformation(x) * a * a * a
    }

    pub fn beta(&self, x: f64) -> f64 {
        x * self.alpha(x)
    }

    pub fn beta_deriv(&self, x: f64) -> f64 {
        self.alpha(x) + x * self.alpha_deriv(x)
    }

    /// Residuals of `α' + βα² − β = 0` and `β' + αβ² − (1 + x²)α = 0`.
    pub fn coupled_residuals(&self, grid: &Grid) -> (ResidualReport, ResidualReport) {
        let first = ResidualReport::sample(grid, |x| {
            let (a, b) = (self.alpha(x), self.beta(x));
            self.alpha_deriv(x) + b * a * a - b
        });
        let second = ResidualReport::sample(grid, |x| {
            let (a, b) = (self.alpha(x), self.beta(x));
            self.beta_deriv(x) + a * b * b - (1.0 + x * x) * a
        });
        (first, second)
    }

    /// Residual of the Bernoulli equation `α' + xα³ − xα = 0`.
    pub fn bernoulli_residual(&self, grid: &Grid) -> ResidualReport {
        ResidualReport::sample(grid, |x| {
            let a = self.alpha(x);
            self.alpha_deriv(x) + x * a * a * a - x * a
        })
    }

    /// The ratio `β/α` viewed as a Riccati solution.
    pub fn ratio(&self) -> BetaOverAlpha {
        BetaOverAlpha(*self)
    }
}

/// SUSY parameter `γ > √π/2` of Mielnik's factorization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MielnikFactorization {
    gamma: f64,
}

impl MielnikFactorization {
    /// Lower bound on `γ`: `γ + ∫₀ˣ e^{-t²} dt` tends to `γ − √π/2` as
    /// `x → −∞`.
    pub const GAMMA_BOUND: f64 = SQRT_PI_2;

    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_nan() || gamma <= Self::GAMMA_BOUND {
            return Err(Error::InvalidGamma { gamma, bound: Self::GAMMA_BOUND });
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `γ + ∫₀ˣ e^{-t²} dt`, written through `erfc` on the negative axis so
    /// that the approach to `γ − √π/2` keeps full relative precision.
    fn denominator(&self, x: f64) -> f64 {
        if x >= 0.0 {
            self.gamma + SQRT_PI_2 * erf(x)
        } else {
            (self.gamma - SQRT_PI_2) + SQRT_PI_2 * erfc(-x)
        }
    }

    /// `φ(x) = e^{-x²} / (γ + ∫₀ˣ e^{-t²} dt)`.
    pub fn phi(&self, x: f64) -> f64 {
        if self.gamma.is_infinite() {
            return 0.0;
        }
        (-x * x).exp() / self.denominator(x)
    }

    /// `φ' = −2xφ − φ²`.
    pub fn phi_deriv(&self, x: f64) -> f64 {
        let p = self.phi(x);
        -2.0 * x * p - p * p
    }

    pub fn beta(&self, x: f64) -> f64 {
        x + self.phi(x)
    }

    pub fn beta_deriv(&self, x: f64) -> f64 {
        1.0 + self.phi_deriv(x)
    }

    /// `Ṽ(x) = x²/2 − φ'(x) = x²/2 + 2xφ + φ²`.
    pub fn partner_potential(&self, x: f64) -> f64 {
        let p = self.phi(x);
        0.5 * x * x + 2.0 * x * p + p * p
    }

    /// Unnormalized solution of `b ψ̃₀ = 0`:
    /// `ψ̃₀ = e^{-x²/2} / (γ + ∫₀ˣ e^{-t²} dt)`.
    pub fn partner_groundstate(&self, x: f64) -> f64 {
        if self.gamma.is_infinite() {
            return (-0.5 * x * x).exp();
        }
        (-0.5 * x * x).exp() / self.denominator(x)
    }

    /// Derivative of the closed form by the quotient rule.
    pub fn partner_groundstate_deriv(&self, x: f64) -> f64 {
        let num = (-0.5 * x * x).exp();
        let den = self.denominator(x);
        (-x * num * den - num * (-x * x).exp()) / (den * den)
    }

    /// `ψ̃_{n+1} = b* ψ_n = (−ψ_n' + β ψ_n)/√2`, left unnormalized.
    pub fn partner_excited(&self, n: HermiteIndex, x: f64) -> f64 {
        let (psi, dpsi) = qho_eigenfunction_with_deriv(n, x);
        FRAC_1_SQRT_2 * (-dpsi + self.beta(x) * psi)
    }

    /// `γ → ∞` member of the family, for which `β = x`.
    pub fn classical_limit() -> Self {
        Self { gamma: f64::INFINITY }
    }
}

/// A function `β` with its derivative, checked against `β' + β² = 1 + x²`.
pub trait BetaProvider {
    fn beta(&self, x: f64) -> f64;
    fn beta_deriv(&self, x: f64) -> f64;
}

/// `β = x`, the classical ladder factorization.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClassicalBeta;

impl BetaProvider for ClassicalBeta {
    fn beta(&self, x: f64) -> f64 {
        x
    }

    fn beta_deriv(&self, _x: f64) -> f64 {
        1.0
    }
}

impl BetaProvider for MielnikFactorization {
    fn beta(&self, x: f64) -> f64 {
        MielnikFactorization::beta(self, x)
    }

    fn beta_deriv(&self, x: f64) -> f64 {
        MielnikFactorization::beta_deriv(self, x)
    }
}

/// `β/α` for the simple branch, computed from the two closed forms.
#[derive(Debug, Clone, Copy)]
pub struct BetaOverAlpha(SimpleFactorization);

impl BetaProvider for BetaOverAlpha {
    fn beta(&self, x: f64) -> f64 {
        self.0.beta(x) / self.0.alpha(x)
    }

    fn beta_deriv(&self, x: f64) -> f64 {
        let (a, b) = (self.0.alpha(x), self.0.beta(x));
        (self.0.beta_deriv(x) * a - b * self.0.alpha_deriv(x)) / (a * a)
    }
}

/// Replaces the analytic derivative of `inner` by a central difference.
#[derive(Debug, Clone, Copy)]
pub struct FiniteDifferenceBeta<P> {
    pub inner: P,
    pub step: f64,
}

impl<P: BetaProvider> BetaProvider for FiniteDifferenceBeta<P> {
    fn beta(&self, x: f64) -> f64 {
        self.inner.beta(x)
    }

    fn beta_deriv(&self, x: f64) -> f64 {
        central_diff(|t| self.inner.beta(t), x, self.step, DiffOrder::First).unwrap_or(f64::NAN)
    }
}

/// Residual of the Riccati equation `β' + β² − (1 + x²)`.
pub fn riccati_residual<P: BetaProvider + ?Sized>(provider: &P, grid: &Grid) -> ResidualReport {
    ResidualReport::sample(grid, |x| {
        let b = provider.beta(x);
        provider.beta_deriv(x) + b * b - (1.0 + x * x)
    })
}
