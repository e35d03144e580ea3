//! Classical Hermite polynomials, oscillator eigenfunctions and the error
//! function.
//!
//! Raw `H_n(x)` grows like `(2x)^n` and overflows quickly, so everything that
//! ends up multiplied by a Gaussian is evaluated through the orthonormal
//! recurrence with a separately tracked logarithmic scale (see
//! [`ScaledHermite`]).

use std::f64::consts::{FRAC_2_SQRT_PI, LN_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported polynomial degree.
pub const MAX_DEGREE: usize = 400;

const SQRT_PI: f64 = 1.772_453_850_905_516;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Polynomial degree / oscillator quantum number, `0 <= n <= 400`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HermiteIndex(usize);

impl HermiteIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { n, max: MAX_DEGREE });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn energy(self) -> EnergyLevel {
        EnergyLevel::of(self)
    }
}

impl TryFrom<usize> for HermiteIndex {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

/// Oscillator energy `E_n = n + 1/2` in units of ħω.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct EnergyLevel(f64);

impl EnergyLevel {
    pub fn of(n: HermiteIndex) -> Self {
        Self(n.0 as f64 + 0.5)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `H_n(x)` by the three-term recurrence `H_{k+1} = 2x H_k - 2k H_{k-1}`.
///
/// Fails with the degree at which the unnormalized value stopped being finite.
pub fn hermite_poly(n: HermiteIndex, x: f64) -> Result<f64> {
    let n = n.get();
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    if !cur.is_finite() {
        return Err(Error::Overflow { degree: 1, x });
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        if !next.is_finite() {
            return Err(Error::Overflow { degree: k + 1, x });
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `H_n'(x) = 2n H_{n-1}(x)`.
pub fn hermite_poly_deriv(n: HermiteIndex, x: f64) -> Result<f64> {
    match n.get() {
        0 => Ok(0.0),
        k => {
            let lower = hermite_poly(HermiteIndex(k - 1), x)?;
            finite(2.0 * k as f64 * lower, k, x)
        }
    }
}

/// `H_n''(x) = 4n(n-1) H_{n-2}(x)`.
pub fn hermite_poly_second_deriv(n: HermiteIndex, x: f64) -> Result<f64> {
    match n.get() {
        0 | 1 => Ok(0.0),
        k => {
            let lower = hermite_poly(HermiteIndex(k - 2), x)?;
            finite(4.0 * (k * (k - 1)) as f64 * lower, k, x)
        }
    }
}

fn finite(v: f64, degree: usize, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { degree, x })
    }
}

/// Residual of Hermite's equation `H'' - 2x H' + 2n H` with analytic
/// derivatives. Pure rounding noise for every `n`.
pub fn hermite_equation_residual(n: HermiteIndex, x: f64) -> Result<f64> {
    let h = hermite_poly(n, x)?;
    let d1 = hermite_poly_deriv(n, x)?;
    let d2 = hermite_poly_second_deriv(n, x)?;
    Ok(d2 - 2.0 * x * d1 + 2.0 * n.get() as f64 * h)
}

/// `ln n!` by direct summation (`n <= 400` keeps this exact to rounding).
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `ln c_n` with `c_n = (2^{n+1} n! √π)^{-1/2}`, the normalization of the
/// deformed Hermite functions.
pub fn log_norm_const(n: HermiteIndex) -> f64 {
    let n = n.get();
    -0.5 * ((n + 1) as f64 * LN_2 + ln_factorial(n) + 0.5 * LN_PI)
}

/// Orthonormal Hermite polynomials `p_k = H_k / (2^k k! √π)^{1/2}` for
/// `k = n, n-1, n-2`, all sharing the factor `exp(log_scale)`.
///
/// Entries with negative index are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledHermite {
    pub values: [f64; 3],
    pub log_scale: f64,
}

impl ScaledHermite {
    pub fn eval(n: usize, x: f64) -> Self {
        const RESCALE_AT: f64 = 1e150;
        let mut values = [FRAC_1_PI_QUARTER, 0.0, 0.0];
        let mut log_scale = 0.0;
        for k in 0..n {
            let kf = k as f64;
            let next =
                (2.0 / (kf + 1.0)).sqrt() * x * values[0] - (kf / (kf + 1.0)).sqrt() * values[1];
            values = [next, values[0], values[1]];
            if next.abs() > RESCALE_AT {
                values.iter_mut().for_each(|v| *v /= RESCALE_AT);
                log_scale += RESCALE_AT.ln();
            }
        }
        Self { values, log_scale }
    }

    /// `p_{n-i}(x) · exp(extra_log)`.
    pub fn combine(&self, i: usize, extra_log: f64) -> f64 {
        let v = self.values[i];
        if v == 0.0 {
            return 0.0;
        }
        v.signum() * (v.abs().ln() + self.log_scale + extra_log).exp()
    }
}

const FRAC_1_PI_QUARTER: f64 = 0.751_125_544_464_942_5;

/// Unit-norm oscillator eigenfunction
/// `ψ_n(x) = π^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x²/2}`.
pub fn qho_eigenfunction(n: HermiteIndex, x: f64) -> f64 {
    ScaledHermite::eval(n.get(), x).combine(0, -0.5 * x * x)
}

/// `(ψ_n(x), ψ_n'(x))`, using `ψ_n' = √(2n) ψ_{n-1} - x ψ_n`.
pub fn qho_eigenfunction_with_deriv(n: HermiteIndex, x: f64) -> (f64, f64) {
    let k = n.get();
    let tail = ScaledHermite::eval(k, x);
    let gauss = -0.5 * x * x;
    let psi = tail.combine(0, gauss);
    let lower = tail.combine(1, gauss);
    (psi, (2.0 * k as f64).sqrt() * lower - x * psi)
}

/// Error function, absolute error below 1e-15 on the whole real line.
///
/// Series of `e^{x²} erf(x)` for `|x| <= 2`, continued fraction for `erfc`
/// beyond.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax <= 2.0 {
        erf_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    v.copysign(x)
}

/// Complementary error function `1 - erf(x)`, accurate in relative terms for
/// large positive `x`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x > 2.0 {
        erfc_continued_fraction(x)
    } else if x >= -2.0 {
        1.0 - erf(x)
    } else {
        2.0 - erfc_continued_fraction(-x)
    }
}

// erf(x) = (2/√π) e^{-x²} Σ 2^k x^{2k+1} / (1·3·…·(2k+1)); all terms positive.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= 2.0 * x2 / (2.0 * k + 1.0);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-x2).exp() * sum
}

// erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …)))), modified Lentz.
fn erfc_continued_fraction(x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (SQRT_PI * f)
}

/// `∫₀ˣ e^{-t²/2} dt = √(π/2) erf(x/√2)`.
pub fn gaussian_integral(x: f64) -> f64 {
    (PI / 2.0).sqrt() * erf(x / SQRT_2)
}

/// `∫₀ˣ e^{-t²} dt = (√π/2) erf(x)`.
pub fn half_gaussian_integral(x: f64) -> f64 {
    0.5 * SQRT_PI * erf(x)
}
