//! The potential function `F`, its Dirichlet-adapted split `F = F_in + F_out`,
//! the vortex cost function `H(r) = g^2 |log eps| / 2 - |F_in|`, and the
//! numerical location of the third critical speed.

use crate::grid::RadialGrid;
use crate::params::PhysicalParams;
use crate::profile::{
    giant_vortex_inner_radius, optimize_phase, GiantVortexProfile,
};
use crate::tf::{cumulative_trapezoid, tf_cost_function};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Target constant `2/(3 pi)` the threshold converges to.
pub const OMEGA0_STAR_LIMIT: f64 = 2.0 / (3.0 * std::f64::consts::PI);

/// Radial cost data on `[R_<, 1]` (or `[R_tf, 1]` for the TF-level version,
/// where no boundary split is defined and `f_out` is identically zero).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CostProfile {
    pub grid: RadialGrid,
    pub f_total: Vec<f64>,
    pub f_out: Vec<f64>,
    pub f_in: Vec<f64>,
    /// `H(r) = g^2(r) |log eps| / 2 - |F_in(r)|`.
    pub h: Vec<f64>,
    /// Minimum of `h` over the bulk window below (NaN when the window
    /// contains no grid node).
    pub min_h_bulk: f64,
    /// Bulk window `[R_tf + eps/|log eps|, 1 - eps^{3/2} |log eps|^2]`.
    pub bulk: (f64, f64),
}

/// `F(r) = 2 int_{R_<}^r g^2(s) (Omega s - ([Omega]-omega_0)/s) ds` by
/// cumulative trapezoid quadrature on the profile grid; `F(R_<) = 0` exactly.
pub fn compute_f(gv: &GiantVortexProfile) -> Vec<f64> {
    let grid = &gv.profile.grid;
    let integrand: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(&gv.profile.values)
        .map(|(&r, &g)| {
            if r > 0.0 {
                2.0 * g * g * gv.b_field(r)
            } else {
                0.0
            }
        })
        .collect();
    cumulative_trapezoid(grid.nodes(), &integrand)
}

/// Split `F = F_in + F_out` with
/// `F_out(r) = F(1) [int_{R_<}^1 g^2/s]^{-1} int_{R_<}^r g^2/s`, so that
/// `F_out(1) = F(1)`, `F_in(1) = 0` and `div(g^{-2} grad F_out) = 0`.
///
/// The weight integral uses the staggered product `g_i g_{i+1} / r_{i+1/2}`
/// per interval, which makes `F_out` satisfy the discrete harmonicity
/// identity exactly (the flux `r g^{-2} F_out'` is constant by construction).
pub fn split_f(gv: &GiantVortexProfile, f_total: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let grid = &gv.profile.grid;
    assert_eq!(f_total.len(), grid.n());
    let g = &gv.profile.values;
    let h = grid.spacing();
    let mut cumulative = vec![0.0; grid.n()];
    for i in 1..grid.n() {
        let rm = 0.5 * (grid.nodes()[i - 1] + grid.nodes()[i]);
        cumulative[i] = cumulative[i - 1] + h * g[i - 1] * g[i] / rm;
    }
    let total = *cumulative.last().unwrap();
    if total.abs() < 1e-14 {
        return Err(Error::DegenerateWeight(total));
    }
    let f1 = *f_total.last().unwrap();
    let f_out: Vec<f64> = cumulative.iter().map(|&c| f1 * c / total).collect();
    let f_in: Vec<f64> = f_total.iter().zip(&f_out).map(|(a, b)| a - b).collect();
    Ok((f_in, f_out))
}

/// Interior stencil residual of `div(g^{-2} grad F)` in radial form
/// `(1/r) d/dr (r g^{-2} dF/dr)`, used to verify the harmonicity of `F_out`.
/// Entries where the staggered density drops below `1e-12 max g^2` are NaN.
pub fn weighted_laplacian_residual(gv: &GiantVortexProfile, f: &[f64]) -> Vec<f64> {
    let grid = &gv.profile.grid;
    let g = &gv.profile.values;
    let h = grid.spacing();
    let n = grid.n();
    let gmax2 = g.iter().fold(0.0f64, |m, &v| m.max(v * v));
    let flux = |i: usize| -> f64 {
        // r g^{-2} F' at the midpoint of interval (i, i+1)
        let rm = 0.5 * (grid.nodes()[i] + grid.nodes()[i + 1]);
        let g2 = g[i] * g[i + 1];
        if g2 <= 1e-12 * gmax2 {
            return f64::NAN;
        }
        rm * (f[i + 1] - f[i]) / (h * g2)
    };
    let mut out = vec![f64::NAN; n];
    for i in 1..n - 1 {
        let r = grid.nodes()[i];
        if r > 0.0 {
            out[i] = (flux(i) - flux(i - 1)) / (h * r);
        }
    }
    out
}

/// Assemble the cost profile `H` from a converged giant-vortex profile and
/// its split; reports the minimum over the giant-vortex bulk annulus.
pub fn cost_function_h(
    gv: &GiantVortexProfile,
    f_in: &[f64],
    f_out: &[f64],
    params: &PhysicalParams,
) -> CostProfile {
    let grid = gv.profile.grid.clone();
    let log = params.abs_log_eps();
    let eps = params.epsilon();
    let f_total: Vec<f64> = f_in.iter().zip(f_out).map(|(a, b)| a + b).collect();
    let h: Vec<f64> = gv
        .profile
        .values
        .iter()
        .zip(f_in)
        .map(|(&g, &fi)| 0.5 * g * g * log - fi.abs())
        .collect();
    let r_tf = crate::tf::tf_solve(params).support_inner();
    let bulk = (r_tf + eps / log, 1.0 - eps.powf(1.5) * log * log);
    let min_h_bulk = grid
        .nodes()
        .iter()
        .zip(&h)
        .filter(|(&r, _)| r >= bulk.0 && r <= bulk.1)
        .map(|(_, &v)| v)
        .fold(f64::INFINITY, f64::min);
    let min_h_bulk = if min_h_bulk.is_finite() {
        min_h_bulk
    } else {
        f64::NAN
    };
    CostProfile {
        grid,
        f_total,
        f_out: f_out.to_vec(),
        f_in: f_in.to_vec(),
        h,
        min_h_bulk,
        bulk,
    }
}

/// Convenience: optimal-phase profile, `F`, split and `H` in one call.
pub fn giant_vortex_cost(
    params: &PhysicalParams,
    n_grid: usize,
    tol: f64,
) -> Result<(GiantVortexProfile, CostProfile)> {
    let r_lo = giant_vortex_inner_radius(params);
    let grid = RadialGrid::uniform(r_lo, n_grid)?;
    let search = optimize_phase(params, &grid, tol)?;
    let gv = search.profile;
    let f = compute_f(&gv);
    let (f_in, f_out) = split_f(&gv, &f)?;
    let cost = cost_function_h(&gv, &f_in, &f_out, params);
    Ok((gv, cost))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub epsilon: f64,
    pub omega0_star: f64,
    pub bisection_steps: usize,
}

/// Threshold curve `Omega0*(eps)` for the third critical speed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdCurve {
    /// TF-level thresholds from [`tf_cost_function`].
    pub tf_points: Vec<ThresholdPoint>,
    /// Profile-level thresholds (present when requested).
    pub gv_points: Vec<ThresholdPoint>,
    /// Richardson extrapolation of the TF-level points in `1/|log eps|`.
    pub extrapolated_tf: Option<f64>,
    pub target: f64,
}

pub struct ThirdSpeedOptions {
    /// `Omega0` bracket scanned for a sign change.
    pub bracket: (f64, f64),
    /// Absolute bisection tolerance in `Omega0`.
    pub tol_omega0: f64,
    /// Radial nodes for the cost grids.
    pub n_grid: usize,
    /// Also bisect on the full profile-level `H` (much slower).
    pub profile_level: bool,
    /// Residual tolerance for the profile solves, in absolute energy units.
    pub profile_tol: f64,
}

impl Default for ThirdSpeedOptions {
    fn default() -> Self {
        Self {
            bracket: (0.05, 1.0),
            tol_omega0: 1e-3,
            n_grid: 2048,
            profile_level: false,
            profile_tol: 1e-3,
        }
    }
}

fn bisect_threshold(
    eps: f64,
    opts: &ThirdSpeedOptions,
    mut min_h: impl FnMut(f64) -> Result<f64>,
) -> Result<ThresholdPoint> {
    let (mut lo, mut hi) = opts.bracket;
    let f_lo = min_h(lo)?;
    let f_hi = min_h(hi)?;
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::BisectionFailed {
            eps,
            lo,
            hi,
            context: "empty bulk window at a bracket endpoint".into(),
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::BisectionFailed {
            eps,
            lo,
            hi,
            context: format!("no sign change: H({lo}) = {f_lo:.3e}, H({hi}) = {f_hi:.3e}"),
        });
    }
    let mut steps = 0;
    while hi - lo > opts.tol_omega0 {
        let mid = 0.5 * (lo + hi);
        let f_mid = min_h(mid)?;
        if f_mid.is_nan() {
            return Err(Error::BisectionFailed {
                eps,
                lo,
                hi,
                context: format!("empty bulk window at Omega0 = {mid}"),
            });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    Ok(ThresholdPoint {
        epsilon: eps,
        omega0_star: 0.5 * (lo + hi),
        bisection_steps: steps,
    })
}

/// For each `eps` in a decreasing family, bisect `Omega0` for the zero of
/// `min H` over the bulk. Uses the TF-level cost as the primary route and the
/// converged profile cost as an optional cross-check. A refinement study on
/// two grids guards the TF quadrature before bisection.
pub fn estimate_third_speed(
    eps_family: &[f64],
    opts: &ThirdSpeedOptions,
) -> Result<ThresholdCurve> {
    let mut tf_points = Vec::new();
    let mut gv_points = Vec::new();
    for &eps in eps_family {
        let tf_min_h = |n_grid: usize| {
            move |omega0: f64| -> Result<f64> {
                let params = PhysicalParams::from_omega0(eps, omega0)?;
                let tf = crate::tf::tf_solve(&params);
                let grid = RadialGrid::uniform(tf.support_inner(), n_grid)?;
                // min over [R_bulk, 1]; NaN when the window is empty
                Ok(tf_cost_function(&params, &grid)?.min_h_bulk)
            }
        };
        let coarse = bisect_threshold(eps, opts, tf_min_h(opts.n_grid / 2))?;
        let fine = bisect_threshold(eps, opts, tf_min_h(opts.n_grid))?;
        if (coarse.omega0_star - fine.omega0_star).abs() > opts.tol_omega0 * 4.0 {
            return Err(Error::BisectionFailed {
                eps,
                lo: opts.bracket.0,
                hi: opts.bracket.1,
                context: format!(
                    "grid refinement moved the threshold from {} to {}",
                    coarse.omega0_star, fine.omega0_star
                ),
            });
        }
        tf_points.push(fine);

        if opts.profile_level {
            let point = bisect_threshold(eps, opts, |omega0: f64| -> Result<f64> {
                let params = PhysicalParams::from_omega0(eps, omega0)?;
                let (_, cost) = giant_vortex_cost(&params, opts.n_grid, opts.profile_tol)?;
                Ok(cost.min_h_bulk)
            })?;
            gv_points.push(point);
        }
    }

    let extrapolated_tf = if tf_points.len() >= 2 {
        let a = &tf_points[tf_points.len() - 2];
        let b = &tf_points[tf_points.len() - 1];
        let la = (1.0 / a.epsilon).ln();
        let lb = (1.0 / b.epsilon).ln();
        Some((b.omega0_star * lb - a.omega0_star * la) / (lb - la))
    } else {
        None
    };

    Ok(ThresholdCurve {
        tf_points,
        gv_points,
        extrapolated_tf,
        target: OMEGA0_STAR_LIMIT,
    })
}
