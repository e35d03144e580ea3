use serde::{Deserialize, Serialize};

use super::eigen::symtridiag_eigen_ql;
use crate::error::{Error, Result};
use crate::factorization::SimpleFactorization;
use crate::genhermite::{weight, GenHermiteFunction};
use crate::special_fn::{HermiteIndex, ScaledHermite};

pub const MAX_NODES: usize = 200;

/// Gauss–Hermite nodes and weights for `∫ e^{-x²} g(x) dx`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest polynomial degree integrated exactly, `2K - 1`.
    pub fn exact_degree(&self) -> usize {
        2 * self.nodes.len() - 1
    }
}

fn jacobi_matrix(node_count: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = vec![0.0; node_count];
    let off = (1..node_count).map(|k| (k as f64 / 2.0).sqrt()).collect();
    (diag, off)
}

/// Plain Golub–Welsch: eigenvalues of the Jacobi matrix and `√π v₀²`.
fn golub_welsch(node_count: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (diag, off) = jacobi_matrix(node_count);
    let (nodes, first) = symtridiag_eigen_ql(&diag, &off)?;
    let mu0 = std::f64::consts::PI.sqrt();
    Ok((nodes, first.iter().map(|v| mu0 * v * v).collect()))
}

/// `K`-point Gauss–Hermite rule.
///
/// Nodes come from the Golub–Welsch eigenproblem and are polished by Newton
/// steps on the orthonormal recurrence. Eigenvector weights lose all relative
/// accuracy in the tails, so weights are taken from the Christoffel form
/// `w_i = 1 / (K p_{K-1}(x_i)²)` evaluated at the polished nodes.
pub fn gauss_hermite_rule(node_count: usize) -> Result<QuadratureRule> {
    if node_count == 0 || node_count > MAX_NODES {
        return Err(Error::NodeCount(node_count));
    }
    let k = node_count;
    let (mut nodes, _) = golub_welsch(k)?;
    let slope = (2.0 * k as f64).sqrt();
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let p = ScaledHermite::eval(k, *x);
            if p.values[1] == 0.0 {
                break;
            }
            *x -= p.values[0] / (slope * p.values[1]);
        }
    }
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let p = ScaledHermite::eval(k - 1, x);
            if p.log_scale == 0.0 {
                1.0 / (k as f64 * p.values[0] * p.values[0])
            } else {
                (-(k as f64).ln() - 2.0 * (p.values[0].abs().ln() + p.log_scale)).exp()
            }
        })
        .collect();

    for i in 0..k / 2 {
        let j = k - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if k % 2 == 1 {
        nodes[k / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// `Σ w_i g(x_i) ≈ ∫ e^{-x²} g(x) dx`.
pub fn integrate_gaussian<G>(rule: &QuadratureRule, g: G) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let mut sum = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = g(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { x, value: v });
        }
        sum += w * v;
    }
    Ok(sum)
}

/// Symmetric `(n_max+1)²` matrix of weighted inner products `∫ ω H_n^δ H_m^δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl OverlapMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.entries[n * self.size + m]
    }

    /// `max |M - I|` over all entries.
    pub fn identity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for n in 0..self.size {
            for m in 0..self.size {
                let target = if n == m { 1.0 } else { 0.0 };
                worst = worst.max((self.get(n, m) - target).abs());
            }
        }
        worst
    }
}

/// Gram matrix of `H_0^δ … H_{n_max}^δ` under the weight `ω`.
///
/// The integrand `ω H_n^δ H_m^δ e^{x²}` is the polynomial `2 c_n c_m H_n H_m`
/// for every `δ`, so a rule of exactness degree `≥ 2 n_max` integrates it
/// without error. Inexact rules are refused.
pub fn overlap_matrix(
    factorization: &SimpleFactorization,
    n_max: HermiteIndex,
    rule: &QuadratureRule,
) -> Result<OverlapMatrix> {
    let size = n_max.get() + 1;
    if rule.exact_degree() < 2 * n_max.get() {
        return Err(Error::InexactRule { nodes: rule.len(), degree: 2 * n_max.get() });
    }
    let funcs = (0..size)
        .map(|n| GenHermiteFunction::with_factorization(HermiteIndex::new(n)?, *factorization))
        .collect::<Result<Vec<_>>>()?;
    // rows: node, columns: H_n^δ(x_i) e^{x_i²/2}
    let samples: Vec<Vec<f64>> =
        rule.nodes.iter().map(|&x| funcs.iter().map(|g| g.eval_scaled(x)).collect()).collect();

    let mut entries = vec![0.0; size * size];
    for n in 0..size {
        for m in n..size {
            let sum: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .zip(&samples)
                .map(|((&x, &w), s)| w * weight(factorization, x) * s[n] * s[m])
                .sum();
            entries[n * size + m] = sum;
            entries[m * size + n] = sum;
        }
    }
    Ok(OverlapMatrix { size, entries })
}
