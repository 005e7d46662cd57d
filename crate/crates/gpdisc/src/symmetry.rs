//! Symmetric-vortex energies `E_n`, the integer optimization of the winding,
//! and the second-variation test that certifies rotational symmetry breaking.

use crate::field::{assemble_energy_unchecked, Wavefunction2D};
use crate::grid::RadialGrid;
use crate::params::PhysicalParams;
use crate::profile::{minimize_radial_potential, RadialProfile, SolveOptions};
use crate::tf::tf_energy;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Converged symmetric vortex `f_n(r) exp(i n theta)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricVortex {
    pub n: i64,
    pub energy: f64,
    pub profile: RadialProfile,
}

/// Minimize `int { |f'|^2 + n^2 f^2/r^2 - 2 n Omega f^2 + f^4/eps^2 }` over
/// normalized radial profiles with `f(1) = 0` (and `f(0) = 0` for `n != 0`).
pub fn symmetric_vortex_energy(
    params: &PhysicalParams,
    n: i64,
    grid: &RadialGrid,
    tol: f64,
) -> Result<SymmetricVortex> {
    if grid.r_lo() != 0.0 {
        return Err(Error::GridMismatch(
            "symmetric vortices live on the full disc".into(),
        ));
    }
    let om = params.omega();
    let nf = n as f64;
    let pin_inner = n != 0;
    let potential: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&r| {
            if r > 0.0 {
                nf * nf / (r * r) - 2.0 * nf * om
            } else {
                0.0 // pinned when n != 0
            }
        })
        .collect();
    let mut opts = SolveOptions::new(tol);
    opts.pin_inner = pin_inner;
    opts.init = Some(seed_with_winding(params, grid, n));
    let sol = minimize_radial_potential(grid, &potential, params.epsilon(), &opts)?;
    let i_max = sol
        .values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let profile = RadialProfile {
        grid: grid.clone(),
        r_max: grid.nodes()[i_max],
        values: sol.values,
        energy: sol.energy,
        mu_hat: sol.mu,
        residual: sol.residual,
        iterations: sol.iterations,
        tf_energy: tf_energy(params),
        regime_warning: None,
    };
    Ok(SymmetricVortex {
        n,
        energy: profile.energy,
        profile,
    })
}

fn seed_with_winding(params: &PhysicalParams, grid: &RadialGrid, n: i64) -> Vec<f64> {
    let tf = crate::tf::tf_solve(params);
    let eps = params.epsilon();
    let om = params.omega();
    let delta = if om * eps <= 1.0 { eps } else { (eps / om).sqrt() };
    let p = n.unsigned_abs().min(60) as i32;
    let r_peak = tf.support_inner().max(0.3);
    grid.nodes()
        .iter()
        .map(|&r| {
            let taper = ((1.0 - r) / delta).min(1.0);
            let mut v = crate::profile::regularized_tf_density(&tf, r).sqrt() * taper;
            if n != 0 && r < r_peak {
                v *= (r / r_peak).powi(p);
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindingSearch {
    pub n_bar: i64,
    pub vortex: SymmetricVortex,
    pub scanned: Vec<(i64, f64)>,
    pub used_fallback: bool,
}

/// Integer minimizer of `E_n`, seeded at `round(Omega)` and at
/// `round(Omega) - round(2/(3 sqrt(pi) eps))`, each verified against both
/// neighbors; a full scan over `[0, 2 Omega]` backs up non-unimodal flanks.
pub fn optimize_winding(
    params: &PhysicalParams,
    grid: &RadialGrid,
    tol: f64,
) -> Result<WindingSearch> {
    let mut cache: HashMap<i64, SymmetricVortex> = HashMap::new();
    let eval = |n: i64, cache: &mut HashMap<i64, SymmetricVortex>| -> Result<f64> {
        if let Some(s) = cache.get(&n) {
            return Ok(s.energy);
        }
        let s = symmetric_vortex_energy(params, n, grid, tol)?;
        let e = s.energy;
        cache.insert(n, s);
        Ok(e)
    };

    let seed_a = params.omega().round() as i64;
    let seed_b = (seed_a - params.omega_tf().round() as i64).max(0);
    let mut w = if eval(seed_a, &mut cache)? <= eval(seed_b, &mut cache)? {
        seed_a
    } else {
        seed_b
    };
    let mut e_w = eval(w, &mut cache)?;
    let mut used_fallback = false;
    let budget = 4 * (params.omega().ceil() as i64).max(8);
    for _ in 0..budget {
        let e_left = eval(w - 1, &mut cache)?;
        let e_right = eval(w + 1, &mut cache)?;
        if e_w <= e_left && e_w <= e_right {
            break;
        }
        if e_left < e_w && e_right < e_w {
            used_fallback = true;
            break;
        }
        if e_left < e_w {
            w -= 1;
            e_w = e_left;
        } else {
            w += 1;
            e_w = e_right;
        }
    }
    if used_fallback {
        let hi = (2.0 * params.omega()).ceil() as i64;
        let mut best = (0, f64::INFINITY);
        for n in 0..=hi {
            let e = eval(n, &mut cache)?;
            if e < best.1 {
                best = (n, e);
            }
        }
        w = best.0;
    }
    let mut scanned: Vec<(i64, f64)> = cache.iter().map(|(k, v)| (*k, v.energy)).collect();
    scanned.sort_by_key(|s| s.0);
    let vortex = cache.remove(&w).expect("winner evaluated");
    Ok(WindingSearch {
        n_bar: w,
        vortex,
        scanned,
        used_fallback,
    })
}

/// Central-difference derivative on the uniform grid.
fn derivative(grid: &RadialGrid, f: &[f64]) -> Vec<f64> {
    let h = grid.spacing();
    let n = f.len();
    let mut out = vec![0.0; n];
    out[0] = (f[1] - f[0]) / h;
    out[n - 1] = (f[n - 1] - f[n - 2]) / h;
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    out
}

fn plain_trapezoid(grid: &RadialGrid, values: &[f64], from: usize, to: usize) -> f64 {
    let h = grid.spacing();
    let mut s = 0.0;
    for i in from..to {
        s += 0.5 * (values[i] + values[i + 1]) * h;
    }
    s
}

/// Second variation of the GP energy at the symmetric vortex `f_n` along the
/// `d`-channel perturbation, in closed form:
/// `Q = 8 pi int_0^{r*} r^{2d+2} f f' [(d+1) mu - 2(d+1) f^2/eps^2 + 2 Omega n] dr
///    + 4 pi n^2 d^2 r*^{2d} int_{r*}^1 f^2/r dr`.
/// A negative value certifies instability of the symmetric vortex.
pub fn second_variation(params: &PhysicalParams, sym: &SymmetricVortex, d: i64) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidParams(format!(
            "second variation needs d >= 2, got {d}"
        )));
    }
    let grid = &sym.profile.grid;
    let f = &sym.profile.values;
    let i_star = f
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    if i_star == 0 || i_star == f.len() - 1 {
        return Err(Error::MaxNotFound(i_star));
    }
    let r_star = grid.nodes()[i_star];
    let fp = derivative(grid, f);
    let mu = sym.profile.mu_hat;
    let om = params.omega();
    let nf = sym.n as f64;
    let df = d as f64;
    let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());

    let inner: Vec<f64> = (0..f.len())
        .map(|i| {
            let r = grid.nodes()[i];
            r.powi(2 * d as i32 + 2)
                * f[i]
                * fp[i]
                * ((df + 1.0) * mu - 2.0 * (df + 1.0) * inv_eps2 * f[i] * f[i] + 2.0 * om * nf)
        })
        .collect();
    let i1 = plain_trapezoid(grid, &inner, 0, i_star);

    let tail: Vec<f64> = (0..f.len())
        .map(|i| {
            let r = grid.nodes()[i];
            if r > 0.0 {
                f[i] * f[i] / r
            } else {
                0.0
            }
        })
        .collect();
    let i2 = plain_trapezoid(grid, &tail, i_star, f.len() - 1);

    Ok(8.0 * PI * i1 + 4.0 * PI * nf * nf * df * df * r_star.powi(2 * d as i32) * i2)
}

/// The perturbation `Xi = (A+B) e^{i(n+d)theta} + (A-B) e^{i(n-d)theta}` with
/// the piecewise radial envelopes used in the closed form.
fn perturbation_profiles(sym: &SymmetricVortex, d: i64) -> (Vec<f64>, Vec<f64>, usize) {
    let grid = &sym.profile.grid;
    let f = &sym.profile.values;
    let fp = derivative(grid, f);
    let i_star = f
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .unwrap();
    let r_star = grid.nodes()[i_star];
    let nf = sym.n as f64;
    let mut a = vec![0.0; f.len()];
    let mut b = vec![0.0; f.len()];
    for i in 0..f.len() {
        let r = grid.nodes()[i];
        if i <= i_star {
            a[i] = r.powi(d as i32 + 1) * fp[i];
            b[i] = nf * r.powi(d as i32) * f[i];
        } else {
            a[i] = 0.0;
            b[i] = nf * r_star.powi(d as i32) * f[i];
        }
    }
    (a, b, i_star)
}

/// Exact quadratic form of the GP energy at the symmetric vortex along the
/// `d`-channel perturbation, reduced to 1D integrals: with
/// `Xi = u+ e^{i(n+d)theta} + u- e^{i(n-d)theta}`, `u+- = A +- B`,
/// `Q = sum_{+-} int { |u'|^2 + k^2 u^2/r^2 - 2 Omega k u^2 - mu u^2
///      + 4 f^2 u^2 / eps^2 } dA + 4 eps^{-2} int f^2 u+ u- dA`.
pub fn second_variation_quadratic_form(
    params: &PhysicalParams,
    sym: &SymmetricVortex,
    d: i64,
) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidParams(format!(
            "second variation needs d >= 2, got {d}"
        )));
    }
    let grid = &sym.profile.grid;
    let f = &sym.profile.values;
    let (a, b, _) = perturbation_profiles(sym, d);
    let u_plus: Vec<f64> = (0..f.len()).map(|i| a[i] + b[i]).collect();
    let u_minus: Vec<f64> = (0..f.len()).map(|i| a[i] - b[i]).collect();
    let h = grid.spacing();
    let kbar: Vec<f64> = (0..grid.n() - 1)
        .map(|i| 2.0 * PI * 0.5 * (grid.nodes()[i] + grid.nodes()[i + 1]) / h)
        .collect();
    let om = params.omega();
    let mu = sym.profile.mu_hat;
    let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());
    let mode = |u: &[f64], k: f64| -> f64 {
        let mut e = 0.0;
        for i in 0..u.len() - 1 {
            let du = u[i + 1] - u[i];
            e += kbar[i] * du * du;
        }
        for i in 0..u.len() {
            let w = grid.weights()[i];
            let r = grid.nodes()[i];
            if w > 0.0 {
                e += w
                    * (k * k / (r * r) - 2.0 * om * k - mu + 4.0 * inv_eps2 * f[i] * f[i])
                    * u[i]
                    * u[i];
            }
        }
        e
    };
    let nf = sym.n as f64;
    let mut q = mode(&u_plus, nf + d as f64) + mode(&u_minus, nf - d as f64);
    for i in 0..f.len() {
        q += grid.weights()[i] * 4.0 * inv_eps2 * f[i] * f[i] * u_plus[i] * u_minus[i];
    }
    Ok(q)
}

/// Independent check of `Q` as the quadratic form of the full (normalized)
/// GP energy: the perturbation is materialized as a 2D field and `Q` is read
/// off a Richardson-extrapolated symmetric second difference over the given
/// amplitudes (largest first). `Xi` is normalized internally so the stated
/// amplitudes are the true perturbation scale; the returned value is scaled
/// back to the unnormalized `Xi`.
pub fn second_variation_fd(
    params: &PhysicalParams,
    sym: &SymmetricVortex,
    d: i64,
    n_theta: usize,
    amplitudes: &[f64],
) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidParams(format!(
            "second variation needs d >= 2, got {d}"
        )));
    }
    let needed = 2 * (sym.n.unsigned_abs() as usize + d.unsigned_abs() as usize) + 2;
    if n_theta < needed {
        return Err(Error::GridMismatch(format!(
            "n_theta = {n_theta} cannot resolve modes up to {}",
            needed / 2
        )));
    }
    let grid = sym.profile.grid.clone();
    let (a, b, _) = perturbation_profiles(sym, d);
    let f = &sym.profile.values;
    let nf = sym.n as f64;
    let df = d as f64;
    // L^2 norm of Xi: the modes are orthogonal
    let xi_norm2: f64 = grid
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| w * ((a[i] + b[i]).powi(2) + (a[i] - b[i]).powi(2)))
        .sum();
    let scale = 1.0 / xi_norm2.sqrt();

    let build = |t: f64| -> Wavefunction2D {
        let mut psi = Wavefunction2D::zeros(grid.clone(), n_theta);
        for i in 0..grid.n() {
            for j in 0..n_theta {
                let theta = 2.0 * PI * j as f64 / n_theta as f64;
                let base = Complex64::from_polar(f[i], nf * theta);
                let plus = Complex64::from_polar(scale * (a[i] + b[i]), (nf + df) * theta);
                let minus = Complex64::from_polar(scale * (a[i] - b[i]), (nf - df) * theta);
                psi.values[i * n_theta + j] = base + t * (plus + minus);
            }
        }
        psi.enforce_constraints();
        psi
    };
    let energy_normalized = |t: f64| -> f64 {
        let mut psi = build(t);
        psi.project_mass();
        assemble_energy_unchecked(&psi, params).total
    };
    let e0 = energy_normalized(0.0);
    let q_of = |t: f64| (energy_normalized(t) + energy_normalized(-t) - 2.0 * e0) / (2.0 * t * t);
    let qs: Vec<f64> = amplitudes.iter().map(|&t| q_of(t)).collect();
    let q_hat = if qs.len() >= 2 {
        // one Richardson step: Q(t) = Q + c t^2
        let t0 = amplitudes[0];
        let t1 = amplitudes[1];
        let w = (t0 / t1).powi(2);
        (w * qs[1] - qs[0]) / (w - 1.0)
    } else {
        qs[0]
    };
    Ok(q_hat * xi_norm2)
}

/// Full symmetry-breaking report at one `(eps, Omega)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub n_bar: i64,
    pub e_n_bar: f64,
    pub mu_n_bar: f64,
    pub r_star: f64,
    /// `Q_{n_bar}[Xi_d]` per requested `d`.
    pub q_values: Vec<(i64, f64)>,
    /// Any `Q < 0` certifies that no symmetric vortex minimizes the energy.
    pub symmetry_broken: bool,
    /// Measured `L^2` tail mass of `f_{n_bar}` beyond its maximum (reported
    /// without a pass/fail threshold).
    pub tail_mass: f64,
    pub used_fallback_scan: bool,
}

pub fn symmetry_report(
    params: &PhysicalParams,
    grid: &RadialGrid,
    tol: f64,
    d_list: &[i64],
) -> Result<SymmetryReport> {
    let search = optimize_winding(params, grid, tol)?;
    let sym = &search.vortex;
    let mut q_values = Vec::new();
    for &d in d_list {
        q_values.push((d, second_variation(params, sym, d)?));
    }
    let symmetry_broken = q_values.iter().any(|&(_, q)| q < 0.0);
    let i_star = sym
        .profile
        .values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .unwrap();
    let tail_mass: f64 = sym
        .profile
        .grid
        .weights()
        .iter()
        .zip(&sym.profile.values)
        .skip(i_star)
        .map(|(w, v)| w * v * v)
        .sum();
    Ok(SymmetryReport {
        n_bar: search.n_bar,
        e_n_bar: sym.energy,
        mu_n_bar: sym.profile.mu_hat,
        r_star: sym.profile.r_max,
        q_values,
        symmetry_broken,
        tail_mass,
        used_fallback_scan: search.used_fallback,
    })
}
