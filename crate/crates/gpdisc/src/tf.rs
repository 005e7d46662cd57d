//! Closed-form Thomas-Fermi layer: the unique positive minimizer of the TF
//! functional, its explicit ground-state energy, the refined TF problem with
//! an integer phase, and the TF-level vortex cost function.

use crate::cost::CostProfile;
use crate::grid::RadialGrid;
use crate::params::PhysicalParams;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Closed-form TF minimizer data. The density is
/// `rho(r) = (eps^2 mu + eps^2 Omega^2 r^2)_+ / 2`; above the hole threshold
/// `Omega = 2/(sqrt(pi) eps)` the chemical potential is `-Omega^2 R_tf^2` and
/// the support is the annulus `[R_tf, 1]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TFSolution {
    pub params: PhysicalParams,
    pub mu_tf: f64,
    /// Hole radius; `None` when the support is the whole disc (including the
    /// threshold speed itself, where the hole radius degenerates to 0).
    pub r_tf: Option<f64>,
    pub energy: f64,
    pub has_hole: bool,
}

impl TFSolution {
    /// Pointwise density `rho_TF(r) >= 0`.
    pub fn density(&self, r: f64) -> f64 {
        let e2 = self.params.epsilon() * self.params.epsilon();
        let om = self.params.omega();
        (0.5 * (e2 * self.mu_tf + e2 * om * om * r * r)).max(0.0)
    }

    /// Inner radius of the support (0 without a hole).
    pub fn support_inner(&self) -> f64 {
        self.r_tf.unwrap_or(0.0)
    }

    /// Quadrature mass on a caller-supplied grid.
    pub fn mass_on(&self, grid: &RadialGrid) -> f64 {
        grid.integrate_fn(|r| self.density(r))
    }

    /// Mass on a kink-aware refined Simpson grid over the support. The
    /// integrand is polynomial there, so this is exact to roundoff.
    pub fn mass_refined(&self) -> f64 {
        let grid = RadialGrid::simpson(self.support_inner(), 4097).expect("valid support");
        self.mass_on(&grid)
    }
}

/// Unique positive TF minimizer with unit mass.
pub fn tf_solve(params: &PhysicalParams) -> TFSolution {
    let eps = params.epsilon();
    let om = params.omega();
    let has_hole = params.has_hole();
    let (mu_tf, r_tf) = if has_hole {
        let r2 = 1.0 - 2.0 / (PI.sqrt() * eps * om);
        (-om * om * r2, Some(r2.sqrt()))
    } else {
        (2.0 / (PI * eps * eps) - 0.5 * om * om, None)
    };
    TFSolution {
        params: *params,
        mu_tf,
        r_tf,
        energy: tf_energy(params),
        has_hole,
    }
}

/// Explicit TF ground-state energy.
///
/// Below the hole threshold: `1/(pi eps^2) - Omega^2/2 - pi eps^2 Omega^4/48`.
/// Above it: `-Omega^2 [1 - 4/(3 sqrt(pi) eps Omega)]`, the unique form
/// continuous with the first branch at the threshold.
pub fn tf_energy(params: &PhysicalParams) -> f64 {
    let eps = params.epsilon();
    let om = params.omega();
    if om <= params.critical_speeds().omega_c2 {
        1.0 / (PI * eps * eps) - 0.5 * om * om - PI * eps * eps * om.powi(4) / 48.0
    } else {
        -om * om * (1.0 - 4.0 / (3.0 * PI.sqrt() * eps * om))
    }
}

/// Result of the refined TF minimization with integer phase `omega`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RefinedTfEnergy {
    /// Numerical minimum of the discretized refined functional.
    pub energy: f64,
    /// Quadratic model `E_TF + [omega - 2/(3 sqrt(pi) eps)]^2 + 2/(9 pi eps^2)`,
    /// reported separately (the remainder of the model is not computable).
    pub quadratic_model: f64,
}

/// Minimize the refined TF functional
/// `int { ([Omega]-omega)^2 rho / r^2 + rho^2 / eps^2 } - 2 Omega ([Omega]-omega)`
/// over normalized nonnegative densities on the disc.
pub fn refined_tf_energy(params: &PhysicalParams, omega_phase: i64) -> Result<RefinedTfEnergy> {
    let window = params.phase_window();
    if (omega_phase.unsigned_abs() as f64) > window {
        return Err(Error::PhaseOutOfWindow {
            omega: omega_phase,
            window,
        });
    }
    let grid = RadialGrid::simpson(0.0, 4097).expect("disc grid");
    let eps = params.epsilon();
    let n = (params.omega_floor() - omega_phase) as f64;
    let potential: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&r| if r > 0.0 { n * n / (r * r) } else { f64::INFINITY })
        .collect();
    let rho = water_fill(&grid, &potential, eps);
    let mut energy = -2.0 * params.omega() * n;
    for i in 0..grid.n() {
        let w = grid.weights()[i];
        if w > 0.0 && rho[i] > 0.0 {
            energy += w * (potential[i] * rho[i] + rho[i] * rho[i] / (eps * eps));
        }
    }
    let shift = omega_phase as f64 - params.omega_tf();
    let quadratic_model = tf_energy(params) + shift * shift + 2.0 / (9.0 * PI * eps * eps);
    Ok(RefinedTfEnergy {
        energy,
        quadratic_model,
    })
}

/// Exact minimizer of `sum w (V rho + rho^2/eps^2)` over `rho >= 0`,
/// `sum w rho = 1`: water-filling `rho = eps^2 (lambda - V)_+ / 2` with the
/// level `lambda` fixed by the mass constraint.
fn water_fill(grid: &RadialGrid, potential: &[f64], eps: f64) -> Vec<f64> {
    let mass = |lambda: f64| -> f64 {
        let mut m = 0.0;
        for i in 0..grid.n() {
            let w = grid.weights()[i];
            if w > 0.0 && potential[i] < lambda {
                m += w * 0.5 * eps * eps * (lambda - potential[i]);
            }
        }
        m
    };
    let mut lo = potential
        .iter()
        .zip(grid.weights())
        .filter(|(_, &w)| w > 0.0)
        .map(|(&v, _)| v)
        .fold(f64::INFINITY, f64::min);
    let mut hi = lo + 1.0;
    while mass(hi) < 1.0 {
        hi = lo + 2.0 * (hi - lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mass(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    (0..grid.n())
        .map(|i| (0.5 * eps * eps * (lambda - potential[i])).max(0.0))
        .collect()
}

/// TF-level vortex cost function
/// `H_TF(r) = |log eps| rho_TF(r) / 2 - |F(r)|` with
/// `F(r) = 2 int_{R_tf}^r B(s) rho_TF(s) ds`, `B(s) = Omega s - ([Omega]-omega_TF)/s`
/// and `omega_TF = 2/(3 sqrt(pi) eps)`.
///
/// The returned profile lives on the part of `grid` with `r >= R_tf`
/// (`R_tf` treated as 0 without a hole); `min_h_bulk` is taken over
/// `r >= R_tf + eps/|log eps|`.
pub fn tf_cost_function(params: &PhysicalParams, grid: &RadialGrid) -> Result<CostProfile> {
    let tf = tf_solve(params);
    let r_in = tf.support_inner();
    let inside = grid.nodes().iter().filter(|&&r| r >= r_in).count();
    if inside < 16 {
        return Err(Error::GridTooCoarse {
            points: inside,
            r_lo: r_in,
            min: 16,
        });
    }
    // Sub-grid on [R_tf, 1] with the same resolution as the input grid.
    let sub = if (grid.r_lo() - r_in).abs() < 1e-15 {
        grid.clone()
    } else {
        RadialGrid::uniform(r_in, inside.max(2))?
    };
    let log_eps = params.abs_log_eps();
    let om = params.omega();
    let n_star = params.omega_floor() as f64 - params.omega_tf();
    let rho: Vec<f64> = sub.nodes().iter().map(|&r| tf.density(r)).collect();
    let integrand: Vec<f64> = sub
        .nodes()
        .iter()
        .zip(&rho)
        .map(|(&r, &p)| {
            if r > 0.0 {
                2.0 * (om * r - n_star / r) * p
            } else {
                0.0
            }
        })
        .collect();
    let f_total = cumulative_trapezoid(sub.nodes(), &integrand);
    let h: Vec<f64> = rho
        .iter()
        .zip(&f_total)
        .map(|(&p, &f)| 0.5 * log_eps * p - f.abs())
        .collect();
    let r_bulk = r_in + params.epsilon() / log_eps;
    let min_h_bulk = sub
        .nodes()
        .iter()
        .zip(&h)
        .filter(|(&r, _)| r >= r_bulk)
        .map(|(_, &v)| v)
        .fold(f64::INFINITY, f64::min);
    let min_h_bulk = if min_h_bulk.is_finite() {
        min_h_bulk
    } else {
        f64::NAN
    };
    Ok(CostProfile {
        grid: sub.clone(),
        f_total: f_total.clone(),
        f_out: vec![0.0; sub.n()],
        f_in: f_total,
        h,
        min_h_bulk,
        bulk: (r_bulk, 1.0),
    })
}

/// Cumulative trapezoid antiderivative starting at the first node.
pub(crate) fn cumulative_trapezoid(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; nodes.len()];
    for i in 1..nodes.len() {
        out[i] = out[i - 1]
            + 0.5 * (values[i] + values[i - 1]) * (nodes[i] - nodes[i - 1]);
    }
    out
}
