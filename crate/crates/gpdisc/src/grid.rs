//! Uniform radial grids on `[r_lo, 1]` with quadrature weights for
//! integrals `int f(r) 2 pi r dr` over the disc or an annulus.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadratureRule {
    Trapezoid,
    Simpson,
}

/// Uniform radial grid. Nodes are strictly increasing, the last node is
/// exactly 1, and weights carry the full `2 pi r dr` measure, so the node
/// at `r = 0` (when present) has weight zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    r_lo: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    rule: QuadratureRule,
}

impl RadialGrid {
    /// Trapezoid-weighted grid, the workhorse for the profile solvers.
    pub fn uniform(r_lo: f64, n: usize) -> Result<Self> {
        Self::build(r_lo, n, QuadratureRule::Trapezoid)
    }

    /// Composite-Simpson weights; `n` must be odd and at least 3.
    pub fn simpson(r_lo: f64, n: usize) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::GridMismatch(format!(
                "Simpson rule needs an odd node count >= 3, got {n}"
            )));
        }
        Self::build(r_lo, n, QuadratureRule::Simpson)
    }

    fn build(r_lo: f64, n: usize, rule: QuadratureRule) -> Result<Self> {
        if !(0.0..1.0).contains(&r_lo) {
            return Err(Error::GridMismatch(format!("r_lo = {r_lo} outside [0, 1)")));
        }
        if n < 2 {
            return Err(Error::GridMismatch(format!("need at least 2 nodes, got {n}")));
        }
        let h = (1.0 - r_lo) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| r_lo + i as f64 * h).collect();
        nodes[n - 1] = 1.0;
        let coeff = |i: usize| -> f64 {
            match rule {
                QuadratureRule::Trapezoid => {
                    if i == 0 || i == n - 1 {
                        0.5
                    } else {
                        1.0
                    }
                }
                QuadratureRule::Simpson => {
                    if i == 0 || i == n - 1 {
                        1.0 / 3.0
                    } else if i % 2 == 1 {
                        4.0 / 3.0
                    } else {
                        2.0 / 3.0
                    }
                }
            }
        };
        let weights = (0..n)
            .map(|i| 2.0 * PI * nodes[i] * coeff(i) * h)
            .collect();
        Ok(Self {
            r_lo,
            nodes,
            weights,
            rule,
        })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn r_lo(&self) -> f64 {
        self.r_lo
    }

    pub fn spacing(&self) -> f64 {
        (1.0 - self.r_lo) / (self.n() - 1) as f64
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    /// `int f 2 pi r dr` for nodal values `f`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.n());
        self.weights.iter().zip(f).map(|(w, v)| w * v).sum()
    }

    pub fn integrate_fn(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.weights
            .iter()
            .zip(&self.nodes)
            .map(|(w, &r)| w * f(r))
            .sum()
    }

    /// Index of the node closest to `r`.
    pub fn nearest(&self, r: f64) -> usize {
        let h = self.spacing();
        let i = ((r - self.r_lo) / h).round();
        (i.max(0.0) as usize).min(self.n() - 1)
    }

    /// Linear interpolation of nodal values at `r`; clamps to the grid range.
    pub fn interp(&self, values: &[f64], r: f64) -> f64 {
        debug_assert_eq!(values.len(), self.n());
        let h = self.spacing();
        let x = ((r - self.r_lo) / h).clamp(0.0, (self.n() - 1) as f64);
        let i = (x.floor() as usize).min(self.n() - 2);
        let t = x - i as f64;
        values[i] * (1.0 - t) + values[i + 1] * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_integrates_disc_area() {
        let g = RadialGrid::uniform(0.0, 2001).unwrap();
        let ones = vec![1.0; g.n()];
        assert!((g.integrate(&ones) - PI).abs() < 1e-12);
        assert_eq!(*g.nodes().last().unwrap(), 1.0);
    }

    #[test]
    fn simpson_exact_for_cubics() {
        // r * (r^2 - a) against 2 pi r dr is a quartic in r; Simpson is exact
        // for cubic integrands f(r), i.e. quartic after the r weight... check
        // against the closed form on an annulus.
        let a: f64 = 0.25;
        let g = RadialGrid::simpson(0.5, 9).unwrap();
        let vals: Vec<f64> = g.nodes().iter().map(|&r| r * r - a).collect();
        let exact = 2.0 * PI * (0.25 * (1.0 - 0.5f64.powi(4)) - a * 0.5 * (1.0 - 0.25));
        assert!((g.integrate(&vals) - exact).abs() < 1e-13);
    }

    #[test]
    fn zero_weight_at_origin() {
        let g = RadialGrid::uniform(0.0, 11).unwrap();
        assert_eq!(g.weights()[0], 0.0);
        assert!(g.weights()[1..].iter().all(|&w| w > 0.0));
    }

    #[test]
    fn interp_is_exact_on_linear_data() {
        let g = RadialGrid::uniform(0.3, 8).unwrap();
        let vals: Vec<f64> = g.nodes().iter().map(|&r| 2.0 * r - 0.1).collect();
        assert!((g.interp(&vals, 0.55) - 1.0).abs() < 1e-14);
        assert!((g.interp(&vals, 0.3) - 0.5).abs() < 1e-14);
        assert!((g.interp(&vals, 1.0) - 1.9).abs() < 1e-14);
    }
}
