//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use genhermite::factorization::{riccati_residual, ClassicalBeta};
use genhermite::genhermite::{apply_b, apply_b_star, apply_l, apply_l_tilde, weight};
use genhermite::numerics::{central_diff, discretized_spectrum, gauss_hermite_rule, overlap_matrix, DiffOrder};
use genhermite::{
    GenHermiteFunction, Grid, HermiteIndex, JetValue, LadderOperators, MielnikFactorization, ResidualReport,
    SimpleFactorization,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const OVERLAP_TOL: f64 = 1e-10;
const SL_TOL: f64 = 1e-8;
const CLASSICAL_TOL: f64 = 1e-12;
const HERMITE_LIMIT_TOL: f64 = 1e-6;
const LADDER_TOL: f64 = 1e-9;
const ANNIHILATION_TOL: f64 = 1e-10;
const RICCATI_TOL: f64 = 1e-6;
const COUPLED_TOL: f64 = 1e-8;
const SPECTRUM_EXACT_TOL: f64 = 2e-3;
const SPECTRUM_SHO_TOL: f64 = 1e-3;
const SPECTRUM_TIME_LIMIT: Duration = Duration::from_secs(10);
const GROUNDSTATE_TOL: f64 = 1e-8;
const EXCITED_FD_TOL: f64 = 1e-6;
const COMPOSITION_TOL: f64 = 1e-8;
const SCALING_TOL: f64 = 1e-9;
const FIGURE_TOL: f64 = 1e-12;

const DELTAS: [f64; 4] = [0.0, 1.0, 100.0, 1e6];

// Independent oracle: physicists' Hermite polynomial by its three-term
// recurrence and the oscillator normalization from an explicit factorial.
fn oracle_hermite(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn oracle_norm(n: usize) -> f64 {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    PI.powf(-0.25) / (2f64.powi(n as i32) * fact).sqrt()
}

fn oracle_psi(n: usize, x: f64) -> f64 {
    oracle_norm(n) * oracle_hermite(n, x) * (-0.5 * x * x).exp()
}

fn idx(n: usize) -> HermiteIndex {
    HermiteIndex::new(n).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn worst(reports: impl IntoIterator<Item = (String, f64)>) -> (String, f64) {
    reports
        .into_iter()
        .fold((String::new(), f64::NEG_INFINITY), |w, r| if r.1.is_nan() || r.1 > w.1 { r } else { w })
}

fn c1_overlap() -> Outcome {
    let rule = gauss_hermite_rule(64).map_err(|e| e.to_string())?;
    let (at, dev) = worst([0.0, 0.5, 1.0, 10.0, 1e6].iter().map(|&d| {
        let f = SimpleFactorization::new(d).unwrap();
        let m = overlap_matrix(&f, idx(20), &rule).unwrap();
        (format!("delta={d}"), m.identity_deviation())
    }));
    check(dev <= OVERLAP_TOL, format!("max |G - I| = {dev:.2e} at {at} (tol {OVERLAP_TOL:.0e})"))
}

fn c2_sturm_liouville() -> Outcome {
    let grid = Grid::default_residual();
    let (at, r) = worst(DELTAS.iter().flat_map(|&d| {
        let grid = &grid;
        (0..=10).map(move |n| {
            let rep = GenHermiteFunction::new(n, d).unwrap().sl_residual(grid);
            (format!("n={n} delta={d} x={:.3}", rep.argmax_x), rep.max_abs)
        })
    }));
    check(r <= SL_TOL, format!("max relative residual {r:.2e} at {at} (tol {SL_TOL:.0e})"))
}

fn c3_classical_limit() -> Outcome {
    let grid = Grid::default_residual();
    let (at, r) = worst((0..=20).map(|n| {
        let h = GenHermiteFunction::new(n, 0.0).unwrap();
        let rep = ResidualReport::sample(&grid, |x| h.eval(x) - FRAC_1_SQRT_2 * oracle_psi(n, x));
        (format!("n={n} x={:.3}", rep.argmax_x), rep.max_abs)
    }));
    check(r <= CLASSICAL_TOL, format!("max |H_n^0 - psi_n/sqrt2| = {r:.2e} at {at} (tol {CLASSICAL_TOL:.0e})"))
}

fn c4_hermite_limit() -> Outcome {
    let delta = 1e8;
    let grid = Grid::new(-2.0, 2.0, 401).unwrap();
    let (at, r) = worst((0..=5).map(|n| {
        let h = GenHermiteFunction::new(n, delta).unwrap();
        let c_n = FRAC_1_SQRT_2 * oracle_norm(n);
        let rep = ResidualReport::sample(&grid, |x| {
            let hn = oracle_hermite(n, x);
            (delta.sqrt() * h.eval(x) / c_n - hn) / (1.0 + hn.abs())
        });
        (format!("n={n} x={:.3}", rep.argmax_x), rep.max_abs)
    }));
    check(r <= HERMITE_LIMIT_TOL, format!("max scaled deviation {r:.2e} at {at} (tol {HERMITE_LIMIT_TOL:.0e})"))
}

fn c5_ladder() -> Outcome {
    let grid = Grid::default_residual();
    let mut rel = Vec::new();
    let mut annihilation = 0.0f64;
    for &d in &DELTAS {
        let ops = LadderOperators::new(d).unwrap();
        for n in 0..=10 {
            let (up, down) = ops.ladder_residuals(idx(n), &grid);
            rel.push((format!("raising n={n} delta={d}"), up.max_abs));
            if n == 0 {
                annihilation = annihilation.max(down.max_abs);
            } else {
                rel.push((format!("lowering n={n} delta={d}"), down.max_abs));
            }
            rel.push((format!("commutator n={n} delta={d}"), ops.commutator_residual(idx(n), &grid).max_abs));
        }
    }
    let (at, r) = worst(rel);
    check(
        r <= LADDER_TOL && annihilation <= ANNIHILATION_TOL,
        format!(
            "max relative residual {r:.2e} at {at} (tol {LADDER_TOL:.0e}), max |c H_0| = {annihilation:.2e} (tol {ANNIHILATION_TOL:.0e})"
        ),
    )
}

fn c6_riccati() -> Outcome {
    let grid = Grid::default_residual();
    let mut res = vec![("classical".to_string(), riccati_residual(&ClassicalBeta, &grid).max_abs)];
    let m = MielnikFactorization::new(2.0).unwrap();
    res.push(("mielnik gamma=2".to_string(), riccati_residual(&m, &grid).max_abs));
    let (rat, riccati) = worst(res);

    let mut coupled = Vec::new();
    let mut ulps = 0u64;
    for &d in &[0.0, 1.0, 1e6] {
        let f = SimpleFactorization::new(d).unwrap();
        let (a, b) = f.coupled_residuals(&grid);
        coupled.push((format!("coupled-1 delta={d}"), a.max_abs));
        coupled.push((format!("coupled-2 delta={d}"), b.max_abs));
        coupled.push((format!("bernoulli delta={d}"), f.bernoulli_residual(&grid).max_abs));
        for x in grid.points() {
            let ratio = f.beta(x) / f.alpha(x);
            let dist = if ratio == x { 0 } else { ratio.to_bits().abs_diff(x.to_bits()) };
            ulps = ulps.max(dist);
        }
    }
    let (cat, c) = worst(coupled);
    check(
        riccati <= RICCATI_TOL && c <= COUPLED_TOL && ulps <= 1,
        format!(
            "riccati {riccati:.2e} ({rat}, tol {RICCATI_TOL:.0e}), coupled/bernoulli {c:.2e} ({cat}, tol {COUPLED_TOL:.0e}), beta/alpha - x within {ulps} ulp"
        ),
    )
}

fn c7_isospectrality() -> Outcome {
    let start = Instant::now();
    let m = MielnikFactorization::new(2.0).unwrap();
    let partner = discretized_spectrum(|x| m.partner_potential(x), 12.0, 2400, 4).map_err(|e| e.to_string())?;
    let sho = discretized_spectrum(|x| 0.5 * x * x, 12.0, 2400, 4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let exact = (0..4).map(|n| (partner[n] - (n as f64 + 0.5)).abs()).fold(0.0, f64::max);
    let vs_sho = (0..4).map(|n| (partner[n] - sho[n]).abs()).fold(0.0, f64::max);
    check(
        exact <= SPECTRUM_EXACT_TOL && vs_sho <= SPECTRUM_SHO_TOL && elapsed < SPECTRUM_TIME_LIMIT,
        format!(
            "max |E_n - (n+1/2)| = {exact:.2e} (tol {SPECTRUM_EXACT_TOL:.0e}), vs oscillator discretization {vs_sho:.2e} (tol {SPECTRUM_SHO_TOL:.0e}), {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn c8_partner_states() -> Outcome {
    let m = MielnikFactorization::new(2.0).unwrap();
    let grid = Grid::new(-5.0, 5.0, 1001).unwrap();
    let ground =
        ResidualReport::sample(&grid, |x| m.partner_groundstate_deriv(x) + m.beta(x) * m.partner_groundstate(x))
            .max_abs;
    let positive = grid.points().all(|x| m.partner_groundstate(x) > 0.0);

    let psi = |x: f64| m.partner_excited(idx(0), x);
    let scale = grid.points().map(|x| psi(x).abs()).fold(0.0, f64::max);
    let excited = ResidualReport::sample(&grid, |x| {
        let d2 = central_diff(psi, x, 1e-3, DiffOrder::Second).unwrap();
        -0.5 * d2 + m.partner_potential(x) * psi(x) - 1.5 * psi(x)
    })
    .relative_to(scale)
    .max_abs;
    check(
        ground <= GROUNDSTATE_TOL && excited <= EXCITED_FD_TOL && positive,
        format!(
            "ground-state equation {ground:.2e} (tol {GROUNDSTATE_TOL:.0e}), positive: {positive}, first excited FD residual {excited:.2e} (tol {EXCITED_FD_TOL:.0e})"
        ),
    )
}

// f(x) = x³ e^{-x²} with derivatives by hand
fn test_jet(x: f64) -> JetValue {
    let e = (-x * x).exp();
    JetValue::new(
        x.powi(3) * e,
        (3.0 * x * x - 2.0 * x.powi(4)) * e,
        (6.0 * x - 14.0 * x.powi(3) + 4.0 * x.powi(5)) * e,
    )
}

fn c9_operator_identities() -> Outcome {
    let grid = Grid::new(-4.0, 4.0, 801).unwrap();
    let mut composition = 0.0f64;
    let mut scaling = 0.0f64;
    for &d in &DELTAS {
        let f = SimpleFactorization::new(d).unwrap();
        for x in grid.points() {
            let jet = test_jet(x);
            // jet of u = B f, differentiated by hand
            let a = f.alpha(x);
            let u_d1 = FRAC_1_SQRT_2
                * (jet.d2 / a - jet.d1 * f.alpha_deriv(x) / (a * a)
                    + f.beta_deriv(x) * jet.value
                    + f.beta(x) * jet.d1);
            let u = JetValue::new(apply_b(&f, jet, x), u_d1, 0.0);
            let composed = apply_b_star(&f, u, x) + 0.5 * jet.value;
            composition = composition.max((apply_l_tilde(&f, jet, x) - composed).abs());

            for &e in &[0.5, 2.0, -1.3] {
                let lhs = apply_l(&f, jet, x) + e * weight(&f, x) * jet.value;
                let rhs = -2.0 * (1.0 + f.deformation(x)) * (apply_l_tilde(&f, jet, x) - e * jet.value);
                scaling = scaling.max((lhs - rhs).abs() / (1.0 + lhs.abs()));
            }
        }
    }
    check(
        composition <= COMPOSITION_TOL && scaling <= SCALING_TOL,
        format!(
            "|L~ - (B*B + 1/2)| = {composition:.2e} (tol {COMPOSITION_TOL:.0e}), scaling identity {scaling:.2e} (tol {SCALING_TOL:.0e})"
        ),
    )
}

fn run_figure(out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_genhermite"))
        .args(["figure", "--out"])
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("figure exited with {status}"));
    }
    std::fs::read(out).map_err(|e| e.to_string())
}

fn c10_figure() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = run_figure(&dir.path().join("a.csv"))?;
    let second = run_figure(&dir.path().join("b.csv"))?;
    if first != second {
        return Err("two runs produced different bytes".into());
    }
    let text = String::from_utf8(first).map_err(|e| e.to_string())?;
    if text.contains('\r') {
        return Err("CRLF line ending".into());
    }
    let mut lines = text.lines();
    if lines.next() != Some("x,n,delta,value") {
        return Err("unexpected header".into());
    }
    let mut series: std::collections::BTreeMap<(u64, usize), Vec<(f64, f64)>> = Default::default();
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let parse = |s: &str| s.parse::<f64>().map_err(|e| format!("{line}: {e}"));
        let (x, n, d, v) = (parse(f[0])?, f[1].parse::<usize>().map_err(|e| e.to_string())?, parse(f[2])?, parse(f[3])?);
        series.entry((d.to_bits(), n)).or_default().push((x, v));
        rows += 1;
    }
    if rows != 4 * 4 * 501 || series.len() != 16 {
        return Err(format!("{rows} rows in {} series", series.len()));
    }

    let mut classical = 0.0f64;
    let mut parity = 0.0f64;
    for (&(bits, n), pts) in &series {
        let d = f64::from_bits(bits);
        if d == 0.0 {
            for &(x, v) in pts {
                classical = classical.max((v - FRAC_1_SQRT_2 * oracle_psi(n, x)).abs());
            }
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for i in 0..pts.len() {
            let j = pts.len() - 1 - i;
            parity = parity.max((pts[i].1 - sign * pts[j].1).abs());
        }
        let mut last = 0.0;
        let mut changes = 0;
        for &(_, v) in pts {
            if v != 0.0 && v.abs() > 1e-300 {
                if last != 0.0 && (v > 0.0) != (last > 0.0) {
                    changes += 1;
                }
                last = v;
            }
        }
        if changes != n {
            return Err(format!("n={n} delta={d}: {changes} sign changes"));
        }
    }
    check(
        classical <= FIGURE_TOL && parity <= FIGURE_TOL,
        format!(
            "byte-identical reruns, {rows} rows, delta=0 vs psi_n/sqrt2 {classical:.2e}, parity {parity:.2e} (tol {FIGURE_TOL:.0e}), n zeros per series"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("generalized Hermite functions are orthonormal", c1_overlap),
        ("Sturm-Liouville eigen-equation", c2_sturm_liouville),
        ("delta = 0 reduces to oscillator eigenfunctions", c3_classical_limit),
        ("large-delta Hermite polynomial limit", c4_hermite_limit),
        ("ladder relations and commutator", c5_ladder),
        ("Riccati, coupled and Bernoulli equations", c6_riccati),
        ("partner Hamiltonian is isospectral", c7_isospectrality),
        ("partner ground and excited states", c8_partner_states),
        ("operator composition and scaling", c9_operator_identities),
        ("figure export", c10_figure),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
