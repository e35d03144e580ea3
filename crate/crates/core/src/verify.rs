//! The identity suite behind `genhermite verify`.
//!
//! Every check evaluates an exact identity on a grid (or an exact quadrature,
//! or a converged discretization) and compares the worst residual with a
//! fixed tolerance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::{riccati_residual, ClassicalBeta, MielnikFactorization, SimpleFactorization};
use crate::genhermite::GenHermiteFunction;
use crate::ladder::LadderOperators;
use crate::numerics::{discretized_spectrum, gauss_hermite_rule, overlap_matrix, Grid};
use crate::special_fn::{hermite_equation_residual, hermite_poly_second_deriv, HermiteIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    HermiteEquation,
    Riccati,
    Coupled,
    Bernoulli,
    SturmLiouville,
    Ladder,
    NumberOperators,
    Commutator,
    Orthonormality,
    Isospectrality,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::HermiteEquation => "hermite-equation",
            Check::Riccati => "riccati",
            Check::Coupled => "coupled",
            Check::Bernoulli => "bernoulli",
            Check::SturmLiouville => "sturm-liouville",
            Check::Ladder => "ladder",
            Check::NumberOperators => "number-operators",
            Check::Commutator => "commutator",
            Check::Orthonormality => "orthonormality",
            Check::Isospectrality => "isospectrality",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pass thresholds for each check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub hermite_equation: f64,
    pub riccati: f64,
    pub coupled: f64,
    pub bernoulli: f64,
    pub sturm_liouville: f64,
    pub ladder: f64,
    pub commutator: f64,
    pub orthonormality: f64,
    pub isospectrality: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            hermite_equation: 1e-9,
            riccati: 1e-6,
            coupled: 1e-8,
            bernoulli: 1e-8,
            sturm_liouville: 1e-8,
            ladder: 1e-9,
            commutator: 1e-9,
            orthonormality: 1e-10,
            isospectrality: 2e-3,
        }
    }
}

impl ToleranceProfile {
    /// Every tolerance multiplied by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            hermite_equation: self.hermite_equation * factor,
            riccati: self.riccati * factor,
            coupled: self.coupled * factor,
            bernoulli: self.bernoulli * factor,
            sturm_liouville: self.sturm_liouville * factor,
            ladder: self.ladder * factor,
            commutator: self.commutator * factor,
            orthonormality: self.orthonormality * factor,
            isospectrality: self.isospectrality * factor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub deltas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub n_max: usize,
    pub grid: Grid,
    pub tolerances: ToleranceProfile,
    /// Run the ladder checks with a deliberately wrong raising operator.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            deltas: vec![0.0, 1.0, 100.0, 1e6],
            gammas: vec![2.0],
            n_max: 10,
            grid: Grid::default_residual(),
            tolerances: ToleranceProfile::default(),
            inject_fault: false,
        }
    }
}

/// Box used for the isospectrality check.
pub const SPECTRUM_HALF_WIDTH: f64 = 12.0;
pub const SPECTRUM_POINTS: usize = 2400;
/// Quadrature nodes for the orthonormality check.
pub const ORTHONORMALITY_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub detail: String,
    pub n: Option<usize>,
    pub delta: Option<f64>,
    pub gamma: Option<f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub argmax_x: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    /// Worst outcome (largest residual/tolerance ratio) of each check, in
    /// the order the checks were run.
    pub fn summary(&self) -> Vec<&CheckOutcome> {
        let mut out: Vec<&CheckOutcome> = Vec::new();
        for o in &self.outcomes {
            match out.iter_mut().find(|w| w.check == o.check) {
                Some(w) => {
                    if ratio(o) > ratio(w) {
                        *w = o;
                    }
                }
                None => out.push(o),
            }
        }
        out
    }
}

fn ratio(o: &CheckOutcome) -> f64 {
    if o.residual.is_nan() {
        f64::INFINITY
    } else {
        o.residual / o.tolerance
    }
}

struct Recorder {
    outcomes: Vec<CheckOutcome>,
}

impl Recorder {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        check: Check,
        detail: &str,
        n: Option<usize>,
        delta: Option<f64>,
        gamma: Option<f64>,
        residual: f64,
        tolerance: f64,
        argmax_x: Option<f64>,
    ) {
        self.outcomes.push(CheckOutcome {
            check,
            detail: detail.to_string(),
            n,
            delta,
            gamma,
            residual,
            tolerance,
            argmax_x,
            passed: residual <= tolerance,
        });
    }
}

/// Runs the full suite. Parameter errors (negative `δ`, `γ` below the bound,
/// `n_max` out of range) are returned before any check runs.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let factorizations =
        config.deltas.iter().map(|&d| SimpleFactorization::new(d)).collect::<Result<Vec<_>>>()?;
    let mielnik =
        config.gammas.iter().map(|&g| MielnikFactorization::new(g)).collect::<Result<Vec<_>>>()?;
    let n_max = HermiteIndex::new(config.n_max)?;
    // the raising relation at n_max needs H_{n_max+1}
    HermiteIndex::new(config.n_max + 1)?;
    let tol = &config.tolerances;
    let grid = &config.grid;
    let mut rec = Recorder { outcomes: Vec::new() };

    for n in 0..=n_max.get() {
        let idx = HermiteIndex::new(n)?;
        let mut worst = (0.0f64, grid.x_min());
        for x in grid.points() {
            let r = match (hermite_equation_residual(idx, x), hermite_poly_second_deriv(idx, x)) {
                (Ok(r), Ok(d2)) => r.abs() / (1.0 + d2.abs()),
                _ => f64::INFINITY,
            };
            if r.is_nan() || r > worst.0 {
                worst = (r, x);
            }
        }
        rec.push(Check::HermiteEquation, "H'' - 2xH' + 2nH", Some(n), None, None, worst.0, tol.hermite_equation, Some(worst.1));
    }

    let r = riccati_residual(&ClassicalBeta, grid);
    rec.push(Check::Riccati, "beta = x", None, None, None, r.max_abs, tol.riccati, Some(r.argmax_x));
    for m in &mielnik {
        let r = riccati_residual(m, grid);
        rec.push(Check::Riccati, "Mielnik beta", None, None, Some(m.gamma()), r.max_abs, tol.riccati, Some(r.argmax_x));
    }

    for f in &factorizations {
        let d = Some(f.delta());
        let r = riccati_residual(&f.ratio(), grid);
        rec.push(Check::Riccati, "beta/alpha", None, d, None, r.max_abs, tol.riccati, Some(r.argmax_x));
        let (a, b) = f.coupled_residuals(grid);
        rec.push(Check::Coupled, "alpha' + beta alpha^2 - beta", None, d, None, a.max_abs, tol.coupled, Some(a.argmax_x));
        rec.push(Check::Coupled, "beta' + alpha beta^2 - (1+x^2) alpha", None, d, None, b.max_abs, tol.coupled, Some(b.argmax_x));
        let r = f.bernoulli_residual(grid);
        rec.push(Check::Bernoulli, "alpha' + x alpha^3 - x alpha", None, d, None, r.max_abs, tol.bernoulli, Some(r.argmax_x));
    }

    for f in &factorizations {
        let d = Some(f.delta());
        let mut ladder = LadderOperators::new(f.delta())?;
        if config.inject_fault {
            ladder = ladder.with_injected_fault();
        }
        for n in 0..=n_max.get() {
            let idx = HermiteIndex::new(n)?;
            let g = GenHermiteFunction::with_factorization(idx, *f)?;
            let r = g.sl_residual(grid);
            rec.push(Check::SturmLiouville, "L H + E w H", Some(n), d, None, r.max_abs, tol.sturm_liouville, Some(r.argmax_x));

            let (up, down) = ladder.ladder_residuals(idx, grid);
            rec.push(Check::Ladder, "c* H_n - sqrt(n+1) H_{n+1}", Some(n), d, None, up.max_abs, tol.ladder, Some(up.argmax_x));
            rec.push(Check::Ladder, "c H_n - sqrt(n) H_{n-1}", Some(n), d, None, down.max_abs, tol.ladder, Some(down.argmax_x));
            let (a, b) = ladder.number_operator_residuals(idx, grid);
            rec.push(Check::NumberOperators, "c c* H_n - (n+1) H_n", Some(n), d, None, a.max_abs, tol.ladder, Some(a.argmax_x));
            rec.push(Check::NumberOperators, "c* c H_n - n H_n", Some(n), d, None, b.max_abs, tol.ladder, Some(b.argmax_x));
            let r = ladder.commutator_residual(idx, grid);
            rec.push(Check::Commutator, "[c, c*] H_n - H_n", Some(n), d, None, r.max_abs, tol.commutator, Some(r.argmax_x));
        }
    }

    let nodes = ORTHONORMALITY_NODES.max(n_max.get() + 1);
    let rule = gauss_hermite_rule(nodes)?;
    for f in &factorizations {
        let m = overlap_matrix(f, n_max, &rule)?;
        rec.push(Check::Orthonormality, "max |<H_n, H_m>_w - delta_nm|", Some(n_max.get()), Some(f.delta()), None, m.identity_deviation(), tol.orthonormality, None);
    }

    for m in &mielnik {
        let levels = discretized_spectrum(|x| m.partner_potential(x), SPECTRUM_HALF_WIDTH, SPECTRUM_POINTS, 4)?;
        let worst = levels.iter().enumerate().map(|(k, e)| (e - (k as f64 + 0.5)).abs()).fold(0.0, f64::max);
        rec.push(Check::Isospectrality, "lowest 4 levels vs n + 1/2", None, None, Some(m.gamma()), worst, tol.isospectrality, None);
    }

    Ok(VerifyReport { outcomes: rec.outcomes })
}
