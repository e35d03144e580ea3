//! Cross-module checks through the public API only.

use genhermite::numerics::{gauss_hermite_rule, integrate_gaussian, overlap_matrix, symtridiag_eigen, symtridiag_eigen_ql};
use genhermite::special_fn::{erf, half_gaussian_integral, hermite_poly};
use genhermite::verify::{self, Check, VerifyConfig};
use genhermite::{GenHermiteFunction, Grid, HermiteIndex, MielnikFactorization, SimpleFactorization};

// trapezoid on a wide uniform grid: spectrally accurate for smooth,
// rapidly decaying integrands
fn trapezoid<F: Fn(f64) -> f64>(f: F, half_width: f64, count: usize) -> f64 {
    let grid = Grid::new(-half_width, half_width, count).unwrap();
    let h = grid.spacing();
    let n = grid.count();
    grid.points()
        .enumerate()
        .map(|(i, x)| if i == 0 || i + 1 == n { 0.5 * f(x) } else { f(x) })
        .sum::<f64>()
        * h
}

#[test]
fn weighted_inner_products_by_trapezoid() {
    for &delta in &[0.0, 0.7, 40.0] {
        let f = SimpleFactorization::new(delta).unwrap();
        for n in 0..6 {
            for m in n..6 {
                let a = GenHermiteFunction::new(n, delta).unwrap();
                let b = GenHermiteFunction::new(m, delta).unwrap();
                let g = trapezoid(
                    |x| 2.0 * (1.0 + f.deformation(x)) * a.eval(x) * b.eval(x),
                    14.0,
                    4001,
                );
                let want = if n == m { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-12, "delta={delta} n={n} m={m} g={g}");
            }
        }
    }
}

#[test]
fn quadrature_overlap_agrees_with_trapezoid() {
    let rule = gauss_hermite_rule(40).unwrap();
    let f = SimpleFactorization::new(3.0).unwrap();
    let m = overlap_matrix(&f, HermiteIndex::new(8).unwrap(), &rule).unwrap();
    assert!(m.identity_deviation() < 1e-12);

    // ∫ e^{-x²} cos x dx = √π e^{-1/4}
    let gh = integrate_gaussian(&rule, f64::cos).unwrap();
    let tr = trapezoid(|x| (-x * x).exp() * x.cos(), 10.0, 2001);
    assert!((gh - tr).abs() < 1e-13);
    assert!((gh - std::f64::consts::PI.sqrt() * (-0.25f64).exp()).abs() < 1e-13);
}

#[test]
fn large_delta_tracks_raw_polynomial() {
    let delta = 1e10;
    for n in 0..=6 {
        let g = GenHermiteFunction::new(n, delta).unwrap();
        let c = g.norm_const();
        for &x in &[-1.5, -0.2, 0.9] {
            let raw = hermite_poly(HermiteIndex::new(n).unwrap(), x).unwrap();
            let scaled = delta.sqrt() * g.eval(x) / c;
            assert!((scaled - raw).abs() < 1e-8 * (1.0 + raw.abs()), "n={n} x={x}");
        }
    }
}

#[test]
fn mielnik_denominator_uses_half_gaussian_integral() {
    let m = MielnikFactorization::new(1.2).unwrap();
    for &x in &[-3.0f64, -0.4, 0.0, 2.5] {
        let want = (-x * x).exp() / (1.2 + half_gaussian_integral(x));
        assert!((m.phi(x) - want).abs() < 1e-15 * (1.0 + want.abs()));
    }
    assert!((half_gaussian_integral(1.0) - 0.5 * std::f64::consts::PI.sqrt() * erf(1.0)).abs() < 3e-16);
}

#[test]
fn eigen_routes_agree_on_finite_difference_operator() {
    let n = 300;
    let h = 20.0 / (n + 1) as f64;
    let diag: Vec<f64> = (1..=n)
        .map(|i| {
            let x = -10.0 + i as f64 * h;
            1.0 / (h * h) + 0.5 * x * x
        })
        .collect();
    let off = vec![-0.5 / (h * h); n - 1];
    let bis = symtridiag_eigen(&diag, &off, 5).unwrap();
    let (ql, _) = symtridiag_eigen_ql(&diag, &off).unwrap();
    for k in 0..5 {
        assert!((bis[k] - ql[k]).abs() < 1e-10);
        // leading 3-point error is -(h²/24)<p⁴> = -h²(2k² + 2k + 1)/32
        let kf = k as f64;
        let corrected = kf + 0.5 - h * h * (2.0 * kf * kf + 2.0 * kf + 1.0) / 32.0;
        assert!((bis[k] - corrected).abs() < 1e-4, "k={k} {}", bis[k]);
    }
}

#[test]
fn narrowed_verify_suite() {
    let config = VerifyConfig {
        deltas: vec![0.25],
        gammas: vec![5.0],
        n_max: 4,
        grid: Grid::new(-5.0, 5.0, 501).unwrap(),
        ..VerifyConfig::default()
    };
    let report = verify::run(&config).unwrap();
    assert!(report.all_passed());
    let checks: Vec<Check> = report.summary().iter().map(|o| o.check).collect();
    assert_eq!(checks.len(), 10);

    let faulty = verify::run(&VerifyConfig { inject_fault: true, ..config }).unwrap();
    assert!(faulty.failures().all(|o| matches!(
        o.check,
        Check::Ladder | Check::NumberOperators | Check::Commutator
    )));
    assert!(!faulty.all_passed());
}
