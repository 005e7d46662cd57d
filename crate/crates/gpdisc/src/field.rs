//! Full 2D Gross-Pitaevskii problem on a polar grid over the disc (or an
//! annulus): energy assembly in both functional forms, projected
//! gradient-flow minimization, trial-state construction and the
//! `psi = g u exp(i([Omega]-omega) theta)` energy decoupling.
//!
//! Discretization: uniform theta sampling with spectral (Fourier-mode)
//! angular derivatives, second-order staggered differences in `r`. The
//! rotation operator `L = -i d/dtheta` is diagonal in angular modes. At
//! `r = 0` only the `m = 0` amplitude is kept; the Dirichlet ring at `r = 1`
//! is identically zero.

use crate::grid::RadialGrid;
use crate::params::PhysicalParams;
use crate::profile::{regularized_tf_density, GiantVortexProfile, RadialProfile};
use crate::tf::tf_solve;
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{Read, Write};
use std::sync::Arc;

/// Complex field on a polar grid, stored ring-major: `values[i*n_theta + j]`
/// is the amplitude at `(r_i, theta_j)`, `theta_j = 2 pi j / n_theta`.
#[derive(Debug, Clone)]
pub struct Wavefunction2D {
    pub grid: RadialGrid,
    pub n_theta: usize,
    pub values: Vec<Complex64>,
}

impl Wavefunction2D {
    pub fn zeros(grid: RadialGrid, n_theta: usize) -> Self {
        let n = grid.n() * n_theta;
        Self {
            grid,
            n_theta,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn(
        grid: RadialGrid,
        n_theta: usize,
        mut f: impl FnMut(f64, f64) -> Complex64,
    ) -> Self {
        let mut psi = Self::zeros(grid, n_theta);
        for i in 0..psi.grid.n() {
            let r = psi.grid.nodes()[i];
            for j in 0..n_theta {
                let theta = 2.0 * PI * j as f64 / n_theta as f64;
                psi.values[i * n_theta + j] = f(r, theta);
            }
        }
        psi.enforce_constraints();
        psi
    }

    pub fn n_r(&self) -> usize {
        self.grid.n()
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_theta as f64
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.n_theta + j]
    }

    pub fn ring(&self, i: usize) -> &[Complex64] {
        &self.values[i * self.n_theta..(i + 1) * self.n_theta]
    }

    /// `int |psi|^2` on the grid quadrature.
    pub fn mass(&self) -> f64 {
        let nt = self.n_theta as f64;
        let mut m = 0.0;
        for i in 0..self.n_r() {
            let w = self.grid.weights()[i] / nt;
            if w == 0.0 {
                continue;
            }
            m += w * self.ring(i).iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        m
    }

    pub fn project_mass(&mut self) {
        let s = 1.0 / self.mass().sqrt();
        for z in self.values.iter_mut() {
            *z *= s;
        }
    }

    /// Dirichlet ring at `r = 1` and, on disc grids, a theta-independent
    /// origin value (angular modes `m != 0` vanish at `r = 0`).
    pub fn enforce_constraints(&mut self) {
        let n_r = self.n_r();
        for j in 0..self.n_theta {
            self.values[(n_r - 1) * self.n_theta + j] = Complex64::new(0.0, 0.0);
        }
        if self.grid.r_lo() == 0.0 {
            let mean = self.ring(0).iter().sum::<Complex64>() / self.n_theta as f64;
            for j in 0..self.n_theta {
                self.values[j] = mean;
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// Mass inside the centered ball of radius `r`.
    pub fn mass_inside(&self, r: f64) -> f64 {
        let nt = self.n_theta as f64;
        let mut m = 0.0;
        for i in 0..self.n_r() {
            if self.grid.nodes()[i] > r {
                break;
            }
            let w = self.grid.weights()[i] / nt;
            m += w * self.ring(i).iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        m
    }

    /// Binary snapshot: header `n_r: u64, n_theta: u64, eps: f64, omega: f64`
    /// (little-endian), payload interleaved re/im`f64`, row-major over
    /// `(r, theta)`. Disc grids only.
    pub fn write_binary(&self, params: &PhysicalParams, mut w: impl Write) -> std::io::Result<()> {
        assert_eq!(self.grid.r_lo(), 0.0, "binary snapshots are disc fields");
        w.write_all(&(self.n_r() as u64).to_le_bytes())?;
        w.write_all(&(self.n_theta as u64).to_le_bytes())?;
        w.write_all(&params.epsilon().to_le_bytes())?;
        w.write_all(&params.omega().to_le_bytes())?;
        for z in &self.values {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary(mut r: impl Read) -> std::io::Result<(Self, PhysicalParams)> {
        let mut b8 = [0u8; 8];
        let mut next_u64 = |r: &mut dyn Read| -> std::io::Result<u64> {
            r.read_exact(&mut b8)?;
            Ok(u64::from_le_bytes(b8))
        };
        let n_r = next_u64(&mut r)? as usize;
        let n_theta = next_u64(&mut r)? as usize;
        let mut f8 = [0u8; 8];
        r.read_exact(&mut f8)?;
        let eps = f64::from_le_bytes(f8);
        r.read_exact(&mut f8)?;
        let omega = f64::from_le_bytes(f8);
        let params = PhysicalParams::new(eps, omega)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()))?;
        let grid = RadialGrid::uniform(0.0, n_r)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()))?;
        let mut values = Vec::with_capacity(n_r * n_theta);
        for _ in 0..n_r * n_theta {
            r.read_exact(&mut f8)?;
            let re = f64::from_le_bytes(f8);
            r.read_exact(&mut f8)?;
            let im = f64::from_le_bytes(f8);
            values.push(Complex64::new(re, im));
        }
        Ok((
            Self {
                grid,
                n_theta,
                values,
            },
            params,
        ))
    }
}

/// Energy split of a 2D state, in both functional forms.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    /// `int |grad psi|^2`.
    pub kinetic: f64,
    /// `-2 Omega int Im(psi* d_theta psi)`.
    pub rotation: f64,
    /// `eps^-2 int |psi|^4`.
    pub interaction: f64,
    pub total: f64,
    /// Chemical potential `mu = E + eps^-2 int |psi|^4`.
    pub mu: f64,
    /// Same energy assembled through the vector-potential form
    /// `int |(grad - iA) psi|^2 - Omega^2 r^2 |psi|^2 + eps^-2 |psi|^4`.
    pub magnetic_form_total: f64,
    pub mass: f64,
}

struct Spectral {
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    /// Signed mode number per FFT bin.
    modes: Vec<f64>,
    buf: Vec<Complex64>,
}

impl Spectral {
    fn new(n_theta: usize) -> Self {
        let mut planner = FftPlanner::new();
        let modes = (0..n_theta)
            .map(|k| {
                if k < n_theta / 2 {
                    k as f64
                } else {
                    k as f64 - n_theta as f64
                }
            })
            .collect();
        Self {
            fwd: planner.plan_fft_forward(n_theta),
            inv: planner.plan_fft_inverse(n_theta),
            modes,
            buf: vec![Complex64::new(0.0, 0.0); n_theta],
        }
    }

    /// Modes `psi_hat_k = (1/n) sum_j psi_j exp(-i m_k theta_j)` into `buf`.
    fn forward(&mut self, ring: &[Complex64]) {
        self.buf.copy_from_slice(ring);
        self.fwd.process(&mut self.buf);
        let scale = 1.0 / ring.len() as f64;
        for z in self.buf.iter_mut() {
            *z *= scale;
        }
    }

    /// Unnormalized inverse of `buf` into `out` (exact inverse of `forward`).
    fn backward(&mut self, out: &mut [Complex64]) {
        self.inv.process(&mut self.buf);
        out.copy_from_slice(&self.buf);
    }
}

fn staggered_stiffness(grid: &RadialGrid) -> Vec<f64> {
    let h = grid.spacing();
    let nodes = grid.nodes();
    (0..grid.n() - 1)
        .map(|i| 2.0 * PI * 0.5 * (nodes[i] + nodes[i + 1]) / h)
        .collect()
}

/// Evaluate both forms of the GP functional on `psi`.
/// Errors with `NotNormalized` when `|mass - 1| > 1e-6`.
pub fn assemble_energy(psi: &Wavefunction2D, params: &PhysicalParams) -> Result<EnergyBreakdown> {
    let mass = psi.mass();
    if (mass - 1.0).abs() > 1e-6 {
        return Err(Error::NotNormalized {
            deviation: (mass - 1.0).abs(),
        });
    }
    Ok(assemble_energy_unchecked(psi, params))
}

/// Same as [`assemble_energy`] without the normalization gate (used on
/// perturbed states during finite-difference checks).
pub fn assemble_energy_unchecked(psi: &Wavefunction2D, params: &PhysicalParams) -> EnergyBreakdown {
    let nt = psi.n_theta as f64;
    let om = params.omega();
    let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());
    let kbar = staggered_stiffness(&psi.grid);
    let mut spectral = Spectral::new(psi.n_theta);

    let mut kinetic_radial = 0.0;
    for i in 0..psi.n_r() - 1 {
        let k = kbar[i] / nt;
        let (a, b) = (psi.ring(i), psi.ring(i + 1));
        kinetic_radial += k * a
            .iter()
            .zip(b)
            .map(|(x, y)| (y - x).norm_sqr())
            .sum::<f64>();
    }

    let mut kinetic_angular = 0.0;
    let mut rotation = 0.0;
    let mut magnetic_angular = 0.0;
    let mut centrifugal = 0.0;
    let mut interaction = 0.0;
    for i in 0..psi.n_r() {
        let w = psi.grid.weights()[i];
        let r = psi.grid.nodes()[i];
        let ring = psi.ring(i);
        if w > 0.0 {
            interaction += inv_eps2 * (w / nt) * ring.iter().map(|z| z.norm_sqr().powi(2)).sum::<f64>();
            spectral.forward(ring);
            for (k, z) in spectral.buf.iter().enumerate() {
                let m = spectral.modes[k];
                let p = z.norm_sqr();
                kinetic_angular += w * m * m / (r * r) * p;
                rotation += -2.0 * om * w * m * p;
                let a = m / r - om * r;
                magnetic_angular += w * a * a * p;
                centrifugal += -om * om * r * r * w * p;
            }
        }
    }

    let kinetic = kinetic_radial + kinetic_angular;
    let total = kinetic + rotation + interaction;
    EnergyBreakdown {
        kinetic,
        rotation,
        interaction,
        total,
        mu: total + interaction,
        magnetic_form_total: kinetic_radial + magnetic_angular + centrifugal + interaction,
        mass: psi.mass(),
    }
}

/// Plain (unconstrained) energy, cheapest form, for line searches.
fn plain_energy(
    psi: &Wavefunction2D,
    params: &PhysicalParams,
    kbar: &[f64],
    spectral: &mut Spectral,
) -> f64 {
    let nt = psi.n_theta as f64;
    let om = params.omega();
    let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());
    let mut e = 0.0;
    for i in 0..psi.n_r() - 1 {
        let k = kbar[i] / nt;
        let (a, b) = (psi.ring(i), psi.ring(i + 1));
        e += k * a
            .iter()
            .zip(b)
            .map(|(x, y)| (y - x).norm_sqr())
            .sum::<f64>();
    }
    for i in 0..psi.n_r() {
        let w = psi.grid.weights()[i];
        if w == 0.0 {
            continue;
        }
        let r = psi.grid.nodes()[i];
        let ring = psi.ring(i);
        e += inv_eps2 * (w / nt) * ring.iter().map(|z| z.norm_sqr().powi(2)).sum::<f64>();
        spectral.forward(ring);
        for (k, z) in spectral.buf.iter().enumerate() {
            let m = spectral.modes[k];
            e += w * (m * m / (r * r) - 2.0 * om * m) * z.norm_sqr();
        }
    }
    e
}

/// Wirtinger gradient `G = dE/dpsi*`: the energy changes as
/// `dE = 2 Re sum conj(G) dpsi`.
fn gradient(
    psi: &Wavefunction2D,
    params: &PhysicalParams,
    kbar: &[f64],
    spectral: &mut Spectral,
    out: &mut [Complex64],
) {
    let nt = psi.n_theta as f64;
    let n_r = psi.n_r();
    let n_t = psi.n_theta;
    let om = params.omega();
    let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());
    // radial stiffness apply, column by column through the ring-major layout
    for j in 0..n_t {
        for i in 0..n_r {
            let c = psi.values[i * n_t + j];
            let mut k = Complex64::new(0.0, 0.0);
            if i > 0 {
                k += kbar[i - 1] * (c - psi.values[(i - 1) * n_t + j]);
            }
            if i + 1 < n_r {
                k += kbar[i] * (c - psi.values[(i + 1) * n_t + j]);
            }
            out[i * n_t + j] = k / nt;
        }
    }
    // angular + rotation (per-ring, diagonal in modes) and interaction
    let mut tmp = vec![Complex64::new(0.0, 0.0); n_t];
    for i in 0..n_r {
        let w = psi.grid.weights()[i];
        if w == 0.0 {
            continue;
        }
        let r = psi.grid.nodes()[i];
        spectral.forward(psi.ring(i));
        for (k, z) in spectral.buf.iter_mut().enumerate() {
            let m = spectral.modes[k];
            *z *= w * (m * m / (r * r) - 2.0 * om * m);
        }
        spectral.backward(&mut tmp);
        let row = &mut out[i * n_t..(i + 1) * n_t];
        for j in 0..n_t {
            let c = psi.values[i * n_t + j];
            row[j] += tmp[j] / nt + (w / nt) * 2.0 * inv_eps2 * c.norm_sqr() * c;
        }
    }
}

/// Descent controls for [`minimize`].
#[derive(Debug, Clone, Copy)]
pub struct DescentControls {
    pub max_iters: usize,
    /// Euler-Lagrange residual tolerance in quadrature norm.
    pub tol: f64,
    pub max_backtracks: usize,
}

impl DescentControls {
    pub fn new(params: &PhysicalParams) -> Self {
        Self {
            max_iters: 20_000,
            tol: 1e-6 / (params.epsilon() * params.epsilon()),
            max_backtracks: 40,
        }
    }
}

/// Outcome of a 2D minimization. When the residual tolerance was not reached
/// the best iterate is still returned with `converged = false`.
#[derive(Debug, Clone)]
pub struct MinimizeOutcome {
    pub psi: Wavefunction2D,
    pub breakdown: EnergyBreakdown,
    pub converged: bool,
    pub residual: f64,
    pub iterations: usize,
    pub accepted_steps: usize,
}

fn mask_direction(psi: &Wavefunction2D, d: &mut [Complex64]) {
    let n_t = psi.n_theta;
    let n_r = psi.n_r();
    for j in 0..n_t {
        d[(n_r - 1) * n_t + j] = Complex64::new(0.0, 0.0);
    }
    if psi.grid.r_lo() == 0.0 {
        let mean = d[0..n_t].iter().sum::<Complex64>() / n_t as f64;
        for z in d[0..n_t].iter_mut() {
            *z = mean;
        }
    }
}

fn thomas_complex(diag: &[f64], off: &[f64], rhs: &mut [Complex64]) {
    // solves the symmetric tridiagonal system in place; off[i] couples i,i+1
    let n = diag.len();
    let mut c = vec![0.0; n];
    c[0] = off[0] / diag[0];
    rhs[0] /= diag[0];
    for i in 1..n {
        let m = diag[i] - off[i - 1] * c[i - 1];
        if i < n - 1 {
            c[i] = off[i] / m;
        }
        let prev = rhs[i - 1];
        rhs[i] = (rhs[i] - off[i - 1] * prev) / m;
    }
    for i in (0..n - 1).rev() {
        let next = rhs[i + 1];
        rhs[i] = rhs[i] - c[i] * next;
    }
}

/// Constrained stationarity residual `grad E - mu W psi` (masked) and its
/// quadrature norm; `resid` receives the masked residual vector.
fn stationarity(
    psi: &Wavefunction2D,
    params: &PhysicalParams,
    kbar: &[f64],
    spectral: &mut Spectral,
    grad: &mut [Complex64],
    resid: &mut [Complex64],
) -> (f64, f64) {
    let n_r = psi.n_r();
    let n_t = psi.n_theta;
    let nt = n_t as f64;
    let h = psi.grid.spacing();
    let w_floor = PI * h * h / 4.0;
    gradient(psi, params, kbar, spectral, grad);
    let mu: f64 = grad
        .iter()
        .zip(&psi.values)
        .map(|(g, p)| (g.conj() * p).re)
        .sum();
    for i in 0..n_r {
        let wn = psi.grid.weights()[i] / nt;
        for j in 0..n_t {
            resid[i * n_t + j] = grad[i * n_t + j] - mu * wn * psi.values[i * n_t + j];
        }
    }
    mask_direction(psi, resid);
    let mut s = 0.0;
    for i in 0..n_r - 1 {
        let wn = (psi.grid.weights()[i].max(w_floor)) / nt;
        for j in 0..n_t {
            s += resid[i * n_t + j].norm_sqr() / (4.0 * wn);
        }
    }
    (mu, s.sqrt())
}

/// Projected, preconditioned gradient flow on the GP energy: steepest
/// descent in a per-mode Sobolev metric, mass renormalization after every
/// step, Dirichlet ring pinned, backtracking line search. Accepted steps
/// never increase the energy.
pub fn minimize(
    psi0: &Wavefunction2D,
    params: &PhysicalParams,
    controls: &DescentControls,
) -> MinimizeOutcome {
    let mut psi = psi0.clone();
    psi.enforce_constraints();
    psi.project_mass();

    let n_r = psi.n_r();
    let n_t = psi.n_theta;
    let kbar = staggered_stiffness(&psi.grid);
    let mut spectral = Spectral::new(n_t);
    let nt = n_t as f64;

    let mut energy = plain_energy(&psi, params, &kbar, &mut spectral);
    let mut grad = vec![Complex64::new(0.0, 0.0); n_r * n_t];
    let mut resid = vec![Complex64::new(0.0, 0.0); n_r * n_t];
    let mut dir = vec![Complex64::new(0.0, 0.0); n_r * n_t];
    let mut mode_cols = vec![Complex64::new(0.0, 0.0); n_r * n_t];
    let mut tgrad = vec![Complex64::new(0.0, 0.0); n_r * n_t];
    let mut tres = vec![Complex64::new(0.0, 0.0); n_r * n_t];
    let mut alpha0 = 1.0;
    let mut residual = f64::INFINITY;
    let mut accepted_steps = 0;
    let mut iterations = 0;

    for iter in 0..controls.max_iters {
        iterations = iter;
        let (mu, res_norm) =
            stationarity(&psi, params, &kbar, &mut spectral, &mut grad, &mut resid);
        residual = res_norm;
        if residual <= controls.tol {
            break;
        }

        // Metric P = A(psi) - mu W + floor, mode-diagonal (rotation included,
        // ring-mean density): a unit step is then one inverse-power iteration
        // shifted at the chemical potential, which keeps the soft vortex
        // modes moving. The elementwise floor keeps every mode matrix SPD.
        let om = params.omega();
        let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());
        let ring_density: Vec<f64> = (0..n_r)
            .map(|i| psi.ring(i).iter().map(|z| z.norm_sqr()).sum::<f64>() / nt)
            .collect();
        for i in 0..n_r {
            spectral.forward(&resid[i * n_t..(i + 1) * n_t]);
            // store modes (scaled by nt so the solve matches gradient scaling)
            for k in 0..n_t {
                mode_cols[i * n_t + k] = spectral.buf[k] * nt;
            }
        }
        let mut col = vec![Complex64::new(0.0, 0.0); n_r];
        let mut diag = vec![0.0; n_r];
        let mut off = vec![0.0; n_r - 1];
        for k in 0..n_t {
            let m = spectral.modes[k];
            for i in 0..n_r {
                let w = psi.grid.weights()[i];
                let r = psi.grid.nodes()[i];
                let mut local = 2.0 * inv_eps2 * ring_density[i] - mu;
                if r > 0.0 {
                    local += m * m / (r * r) - 2.0 * om * m;
                }
                let mut d = w * local.max(1.0);
                if i > 0 {
                    d += kbar[i - 1];
                }
                if i + 1 < n_r {
                    d += kbar[i];
                }
                diag[i] = d;
                if i + 1 < n_r {
                    off[i] = -kbar[i];
                }
                col[i] = mode_cols[i * n_t + k];
            }
            // Dirichlet row
            diag[n_r - 1] = 1.0;
            off[n_r - 2] = 0.0;
            col[n_r - 1] = Complex64::new(0.0, 0.0);
            thomas_complex(&diag, &off, &mut col);
            for i in 0..n_r {
                mode_cols[i * n_t + k] = col[i];
            }
        }
        for i in 0..n_r {
            spectral.buf.copy_from_slice(&mode_cols[i * n_t..(i + 1) * n_t]);
            spectral.backward(&mut dir[i * n_t..(i + 1) * n_t]);
            for z in dir[i * n_t..(i + 1) * n_t].iter_mut() {
                *z /= nt;
            }
        }
        mask_direction(&psi, &mut dir);

        // strict energy descent first; on a machine-flat landscape accept
        // steps that shrink the stationarity residual (as in the 1D solver)
        let flat = 1e-14 * energy.abs().max(1.0);
        let mut alpha = alpha0;
        let mut accepted = false;
        for _ in 0..controls.max_backtracks {
            let mut trial = psi.clone();
            for (t, d) in trial.values.iter_mut().zip(&dir) {
                *t -= alpha * d;
            }
            trial.enforce_constraints();
            trial.project_mass();
            let e_trial = plain_energy(&trial, params, &kbar, &mut spectral);
            let take = if e_trial < energy - flat {
                true
            } else if e_trial <= energy + flat {
                let (_, r_trial) =
                    stationarity(&trial, params, &kbar, &mut spectral, &mut tgrad, &mut tres);
                r_trial < residual * 0.999
            } else {
                false
            };
            if take {
                psi = trial;
                energy = e_trial.min(energy);
                accepted = true;
                accepted_steps += 1;
                break;
            }
            alpha *= 0.5;
        }
        if accepted {
            alpha0 = (alpha * 2.0).min(8.0);
        } else {
            alpha0 *= 0.25;
            if alpha0 < 1e-18 {
                break;
            }
        }
    }

    let breakdown = assemble_energy_unchecked(&psi, params);
    MinimizeOutcome {
        converged: residual <= controls.tol,
        residual,
        iterations,
        accepted_steps,
        psi,
        breakdown,
    }
}

/// Compare the analytic energy gradient with central finite differences of
/// the (unconstrained) energy along seeded random directions.
pub fn gradient_check(
    psi: &Wavefunction2D,
    params: &PhysicalParams,
    n_dirs: usize,
    step: f64,
    seed: u64,
) -> f64 {
    let kbar = staggered_stiffness(&psi.grid);
    let mut spectral = Spectral::new(psi.n_theta);
    let mut grad = vec![Complex64::new(0.0, 0.0); psi.values.len()];
    gradient(psi, params, &kbar, &mut spectral, &mut grad);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let nt = psi.n_theta as f64;
    for _ in 0..n_dirs {
        let mut d: Vec<Complex64> = (0..psi.values.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        mask_direction(psi, &mut d);
        // unit quadrature norm keeps the directional derivative at the
        // energy's own scale, away from the cancellation floor
        let mut norm2 = 0.0;
        for i in 0..psi.n_r() {
            let w = psi.grid.weights()[i] / nt;
            for j in 0..psi.n_theta {
                norm2 += w * d[i * psi.n_theta + j].norm_sqr();
            }
        }
        let norm = norm2.sqrt();
        for z in d.iter_mut() {
            *z /= norm;
        }
        let mut plus = psi.clone();
        let mut minus = psi.clone();
        for i in 0..d.len() {
            plus.values[i] += step * d[i];
            minus.values[i] -= step * d[i];
        }
        let e_plus = plain_energy(&plus, params, &kbar, &mut spectral);
        let e_minus = plain_energy(&minus, params, &kbar, &mut spectral);
        let fd = (e_plus - e_minus) / (2.0 * step);
        let an: f64 = grad.iter().zip(&d).map(|(g, x)| 2.0 * (g.conj() * x).re).sum();
        let err = (fd - an).abs() / an.abs().max(1e-12);
        worst = worst.max(err);
    }
    worst
}

/// Lattice geometry for the vortex-lattice trial state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeKind {
    Triangular,
    Rectangular,
}

/// Trial-state recipe.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum TrialKind {
    /// `c g(r) xi(r) prod (zeta - zeta_i)/|zeta - zeta_i|` over lattice points
    /// whose cells lie inside the disc, with a linear cutoff of radius `t`.
    VortexLattice { lattice: LatticeKind, cutoff: Option<f64> },
    /// `f(r) exp(i([Omega]-omega) theta)`.
    GiantVortex { omega_phase: i64 },
    /// `sqrt(rho_TF)` (regularized) with a seeded random smooth phase.
    TfSeed { seed: u64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrialSpec {
    pub kind: TrialKind,
    pub n_theta: usize,
}

/// A constructed trial state; `norm_const_sq` is the `c^2` restoring unit
/// mass, and `lattice_points` records the vortex positions actually used.
#[derive(Debug, Clone)]
pub struct TrialState {
    pub psi: Wavefunction2D,
    pub norm_const_sq: f64,
    pub lattice_points: Vec<(f64, f64)>,
}

/// Lattice points (as `(x, y)`) whose fundamental cell of area `pi/Omega`
/// lies inside the unit disc.
pub fn lattice_points(kind: LatticeKind, omega: f64) -> Vec<(f64, f64)> {
    if omega <= 0.0 {
        return Vec::new();
    }
    let mut pts = Vec::new();
    match kind {
        LatticeKind::Rectangular => {
            let ell = (PI / omega).sqrt();
            let reach = ell / 2.0f64.sqrt();
            let k_max = (1.0 / ell).ceil() as i64 + 1;
            for mx in -k_max..=k_max {
                for my in -k_max..=k_max {
                    let (x, y) = (mx as f64 * ell, my as f64 * ell);
                    if (x * x + y * y).sqrt() + reach <= 1.0 {
                        pts.push((x, y));
                    }
                }
            }
        }
        LatticeKind::Triangular => {
            let ell = (2.0 * PI / (3.0f64.sqrt() * omega)).sqrt();
            let reach = ell / 3.0f64.sqrt();
            let k_max = (2.0 / ell).ceil() as i64 + 1;
            for m in -k_max..=k_max {
                for n in -k_max..=k_max {
                    let x = ell * (m as f64 + 0.5 * n as f64);
                    let y = ell * 3.0f64.sqrt() / 2.0 * n as f64;
                    if (x * x + y * y).sqrt() + reach <= 1.0 {
                        pts.push((x, y));
                    }
                }
            }
        }
    }
    pts
}

/// Admissible cutoff window `[min(eps, sqrt(eps/Omega)), 0.5/sqrt(Omega))`.
pub fn cutoff_window(params: &PhysicalParams) -> (f64, f64) {
    let eps = params.epsilon();
    let om = params.omega();
    if om <= 0.0 {
        return (eps, 0.5);
    }
    (eps.min((eps / om).sqrt()), 0.5 / om.sqrt())
}

/// Build a trial state on the radial grid of `profile` (the converged
/// density profile for the lattice kind; any profile on the target grid for
/// `TfSeed`; the giant-vortex profile itself for `GiantVortex`).
pub fn make_trial(
    spec: &TrialSpec,
    params: &PhysicalParams,
    profile: &RadialProfile,
) -> Result<TrialState> {
    let grid = profile.grid.clone();
    let nt = spec.n_theta;
    match spec.kind {
        TrialKind::GiantVortex { omega_phase } => {
            let n_star = params.omega_floor() - omega_phase;
            let mut psi = Wavefunction2D::from_fn(grid.clone(), nt, |r, theta| {
                let f = grid.interp(&profile.values, r);
                Complex64::from_polar(f, n_star as f64 * theta)
            });
            let c2 = 1.0 / psi.mass();
            psi.project_mass();
            Ok(TrialState {
                psi,
                norm_const_sq: c2,
                lattice_points: Vec::new(),
            })
        }
        TrialKind::TfSeed { seed } => {
            let tf = tf_solve(params);
            let eps = params.epsilon();
            let om = params.omega();
            let delta = if om * eps <= 1.0 { eps } else { (eps / om).sqrt() };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let amps: Vec<(f64, f64)> = (0..6)
                .map(|_| (rng.gen_range(-0.5..0.5), rng.gen_range(0.0..2.0 * PI)))
                .collect();
            let mut psi = Wavefunction2D::from_fn(grid, nt, |r, theta| {
                let taper = ((1.0 - r) / delta).min(1.0);
                let amp = regularized_tf_density(&tf, r).sqrt() * taper;
                let mut phase = 0.0;
                for (k, &(a, b)) in amps.iter().enumerate() {
                    phase += a / (k + 1) as f64 * r * ((k + 1) as f64 * theta + b).cos();
                }
                Complex64::from_polar(amp, phase)
            });
            let c2 = 1.0 / psi.mass();
            psi.project_mass();
            Ok(TrialState {
                psi,
                norm_const_sq: c2,
                lattice_points: Vec::new(),
            })
        }
        TrialKind::VortexLattice { lattice, cutoff } => {
            let (lo, hi) = cutoff_window(params);
            let t = cutoff.unwrap_or((lo * hi).sqrt().clamp(lo, hi));
            if t < lo || t >= hi {
                return Err(Error::CutoffOutOfRange { t, lo, hi });
            }
            let pts = lattice_points(lattice, params.omega());
            Ok(trial_with_vortices(profile, nt, &pts, t))
        }
    }
}

/// Amplitude profile times the unit-modulus phase product over the given
/// vortex positions, with a linear cutoff of radius `t` at each one; used by
/// the lattice trial and as a seeding device for arbitrary configurations.
pub fn trial_with_vortices(
    profile: &RadialProfile,
    n_theta: usize,
    points: &[(f64, f64)],
    t: f64,
) -> TrialState {
    let grid = profile.grid.clone();
    let mut psi = Wavefunction2D::from_fn(grid.clone(), n_theta, |r, theta| {
        let g = grid.interp(&profile.values, r);
        let (x, y) = (r * theta.cos(), r * theta.sin());
        let mut phase = Complex64::new(1.0, 0.0);
        let mut dist_min = f64::INFINITY;
        for &(px, py) in points {
            let dz = Complex64::new(x - px, y - py);
            let d = dz.norm();
            dist_min = dist_min.min(d);
            if d > 1e-300 {
                phase *= dz / d;
            } else {
                phase = Complex64::new(0.0, 0.0);
            }
        }
        let xi = (dist_min / t).min(1.0);
        g * xi * phase
    });
    let c2 = 1.0 / psi.mass();
    psi.project_mass();
    TrialState {
        psi,
        norm_const_sq: c2,
        lattice_points: points.to_vec(),
    }
}

/// Embed a giant-vortex annulus profile on a disc grid, decaying as
/// `(r/R_<)^p` inside the annulus with `p = min(winding, 60)`.
pub fn embed_giant_vortex_on_disc(
    gv: &GiantVortexProfile,
    disc_grid: &RadialGrid,
    n_theta: usize,
) -> Result<TrialState> {
    if disc_grid.r_lo() != 0.0 {
        return Err(Error::GridMismatch("target grid must start at r = 0".into()));
    }
    let n_star = gv.winding();
    let p = n_star.unsigned_abs().min(60) as i32;
    let r_in = gv.r_inner.max(disc_grid.spacing());
    let f_in = gv.profile.values[0];
    let mut psi = Wavefunction2D::from_fn(disc_grid.clone(), n_theta, |r, theta| {
        let amp = if r >= r_in {
            gv.profile.grid.interp(&gv.profile.values, r)
        } else {
            f_in * (r / r_in).powi(p)
        };
        Complex64::from_polar(amp, n_star as f64 * theta)
    });
    let c2 = 1.0 / psi.mass();
    psi.project_mass();
    Ok(TrialState {
        psi,
        norm_const_sq: c2,
        lattice_points: Vec::new(),
    })
}

/// The reduced state `u = psi / (f_omega exp(i([Omega]-omega) theta))` and
/// its energies.
#[derive(Debug, Clone)]
pub struct DecoupledState {
    /// `u` on the annulus sub-grid (masked rings are zeroed).
    pub u: Wavefunction2D,
    /// First radial index of `psi` inside the annulus.
    pub i_start: usize,
    /// Rings of the sub-grid excluded by the density mask.
    pub masked: Vec<bool>,
    /// Reduced energy `E_omega[u]` (rotation-coupled).
    pub reduced_e: f64,
    /// Positive reduced energy `F[u]`.
    pub reduced_f: f64,
    /// `mu - mu_omega`.
    pub lambda: f64,
    /// GP energy of `psi` on its own grid.
    pub gp_energy: f64,
    /// `|E_GP - (E_omega_profile + E_omega[u])|`.
    pub identity_residual: f64,
    pub masked_fraction: f64,
}

/// Decouple `psi` against a converged giant-vortex profile. The density mask
/// removes rings with `f^2 <= threshold * max f^2` from the reduced
/// integrals; `DensityTooSmall` fires when that removes more than
/// `mask_limit` of the annulus area.
pub fn decouple_energy(
    psi: &Wavefunction2D,
    gv: &GiantVortexProfile,
    threshold: f64,
    mask_limit: f64,
) -> Result<DecoupledState> {
    let params = &gv.params;
    let n_t = psi.n_theta;
    let grid = &psi.grid;
    let i_start = grid
        .nodes()
        .iter()
        .position(|&r| r >= gv.r_inner - 0.5 * grid.spacing())
        .ok_or_else(|| Error::GridMismatch("field grid entirely inside the hole".into()))?;
    let n_sub = grid.n() - i_start;
    if n_sub < 8 {
        return Err(Error::GridTooCoarse {
            points: n_sub,
            r_lo: gv.r_inner,
            min: 8,
        });
    }

    // profile density sampled on the field's radial nodes
    let f_vals: Vec<f64> = grid.nodes()[i_start..]
        .iter()
        .map(|&r| gv.profile.grid.interp(&gv.profile.values, r))
        .collect();
    let f_max2 = f_vals.iter().fold(0.0f64, |m, &v| m.max(v * v));
    let masked: Vec<bool> = f_vals.iter().map(|&v| v * v <= threshold * f_max2).collect();
    let mut area = 0.0;
    let mut masked_area = 0.0;
    for (k, &m) in masked.iter().enumerate() {
        let w = grid.weights()[i_start + k];
        area += w;
        if m {
            masked_area += w;
        }
    }
    let masked_fraction = masked_area / area;
    if masked_fraction > mask_limit {
        return Err(Error::DensityTooSmall {
            removed_fraction: masked_fraction,
            limit: mask_limit,
        });
    }

    let n_star = gv.winding() as f64;
    let sub_grid = RadialGrid::uniform(grid.nodes()[i_start], n_sub)?;
    let mut u = Wavefunction2D::zeros(sub_grid, n_t);
    for k in 0..n_sub {
        let src = (i_start + k) * n_t;
        if masked[k] {
            // constant extension from the ring below keeps the staggered
            // kinetic exact (the f_i f_{i+1} weight vanishes there anyway)
            if k > 0 {
                let (lo, hi) = u.values.split_at_mut(k * n_t);
                hi[..n_t].copy_from_slice(&lo[(k - 1) * n_t..]);
            }
            continue;
        }
        for j in 0..n_t {
            let theta = 2.0 * PI * j as f64 / n_t as f64;
            let phase = Complex64::from_polar(1.0, -n_star * theta);
            u.values[k * n_t + j] = psi.values[src + j] * phase / f_vals[k];
        }
    }

    // reduced energies with the staggered density weight f_i f_{i+1}
    let om = params.omega();
    let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());
    let nt = n_t as f64;
    let h = u.grid.spacing();
    let mut spectral = Spectral::new(n_t);
    let mut kinetic_radial = 0.0;
    for k in 0..n_sub - 1 {
        let rm = 0.5 * (u.grid.nodes()[k] + u.grid.nodes()[k + 1]);
        let weight = 2.0 * PI * rm / h * f_vals[k] * f_vals[k + 1] / nt;
        let (a, b) = (u.ring(k), u.ring(k + 1));
        kinetic_radial += weight
            * a.iter()
                .zip(b)
                .map(|(x, y)| (y - x).norm_sqr())
                .sum::<f64>();
    }
    let mut angular = 0.0;
    let mut coupling = 0.0;
    let mut interaction = 0.0;
    for k in 0..n_sub {
        if masked[k] {
            continue;
        }
        let w = u.grid.weights()[k];
        if w == 0.0 {
            continue;
        }
        let r = u.grid.nodes()[k];
        let f2 = f_vals[k] * f_vals[k];
        interaction += inv_eps2 * (w / nt)
            * f2
            * f2
            * u.ring(k)
                .iter()
                .map(|z| (1.0 - z.norm_sqr()).powi(2))
                .sum::<f64>();
        spectral.forward(u.ring(k));
        for (ki, z) in spectral.buf.iter().enumerate() {
            let m = spectral.modes[ki];
            let p = z.norm_sqr();
            angular += w * f2 * m * m / (r * r) * p;
            // -2 B . (iu, grad u) with B = Omega r - n*/r
            coupling += w * f2 * 2.0 * m * (n_star / (r * r) - om) * p;
        }
    }
    let reduced_f = kinetic_radial + angular + interaction;
    let reduced_e = reduced_f + coupling;

    let gp = assemble_energy_unchecked(psi, params);
    let identity_residual = (gp.total - (gv.profile.energy + reduced_e)).abs();
    Ok(DecoupledState {
        u,
        i_start,
        masked,
        reduced_e,
        reduced_f,
        lambda: gp.mu - gv.profile.mu_hat,
        gp_energy: gp.total,
        identity_residual,
        masked_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{
        default_tolerance, giant_vortex_inner_radius, minimize_density_profile,
        minimize_giant_vortex_profile,
    };

    fn p(eps: f64, om: f64) -> PhysicalParams {
        PhysicalParams::new(eps, om).unwrap()
    }

    fn smooth_test_field(grid: RadialGrid, n_theta: usize) -> Wavefunction2D {
        let mut psi = Wavefunction2D::from_fn(grid, n_theta, |r, theta| {
            let amp = (1.0 - r * r) * (1.0 + 0.3 * r * (2.0 * theta).cos());
            Complex64::from_polar(amp, 3.0 * theta + 0.5 * r)
        });
        psi.project_mass();
        psi
    }

    #[test]
    fn real_field_has_zero_rotation() {
        let grid = RadialGrid::uniform(0.0, 65).unwrap();
        let mut psi = Wavefunction2D::from_fn(grid, 64, |r, theta| {
            Complex64::new((1.0 - r * r) * (1.0 + 0.2 * theta.cos()), 0.0)
        });
        psi.project_mass();
        let e = assemble_energy(&psi, &p(0.1, 5.0)).unwrap();
        assert!(e.rotation.abs() < 1e-10 * e.total.abs());
    }

    #[test]
    fn pure_winding_matches_radial_functional() {
        // psi = f(r) exp(i n theta): the 2D assembly must reproduce the 1D
        // giant-vortex functional value with n = [Omega] - omega.
        let params = p(0.1, 7.3);
        let n_star = 5i64; // omega = [Omega] - 5 = 2
        let grid = RadialGrid::uniform(0.0, 513).unwrap();
        let f: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&r| (1.0 - r) * r.powi(n_star.min(20) as i32))
            .collect();
        let mass: f64 = grid.weights().iter().zip(&f).map(|(w, v)| w * v * v).sum();
        let f: Vec<f64> = f.iter().map(|v| v / mass.sqrt()).collect();
        let gcl = grid.clone();
        let mut psi = Wavefunction2D::from_fn(grid.clone(), 64, |r, theta| {
            Complex64::from_polar(gcl.interp(&f, r), n_star as f64 * theta)
        });
        psi.project_mass();
        let e2d = assemble_energy(&psi, &params).unwrap();

        // 1D giant-vortex functional value with the same staggered stencil
        let kbar = staggered_stiffness(&grid);
        let om = params.omega();
        let inv_eps2 = 1.0 / (params.epsilon() * params.epsilon());
        let mut e1d = 0.0;
        for i in 0..grid.n() - 1 {
            let d = f[i + 1] - f[i];
            e1d += kbar[i] * d * d;
        }
        for i in 0..grid.n() {
            let w = grid.weights()[i];
            let r = grid.nodes()[i];
            if w > 0.0 {
                let nf = n_star as f64;
                let v = nf * nf / (r * r) - 2.0 * nf * om;
                e1d += w * (v * f[i] * f[i] + inv_eps2 * f[i].powi(4));
            }
        }
        let rel = (e2d.total - e1d).abs() / e1d.abs();
        assert!(rel < 1e-10, "2D vs 1D functional mismatch {rel:.3e}");
    }

    #[test]
    fn both_functional_forms_agree() {
        let psi = smooth_test_field(RadialGrid::uniform(0.0, 129).unwrap(), 64);
        let e = assemble_energy(&psi, &p(0.1, 6.0)).unwrap();
        let rel = (e.total - e.magnetic_form_total).abs() / e.total.abs();
        assert!(rel < 1e-8, "form equivalence violated: {rel:.3e}");
        assert!((e.total - (e.kinetic + e.rotation + e.interaction)).abs() < 1e-12 * e.total.abs());
    }

    #[test]
    fn conjugation_flips_rotation_only() {
        let psi = smooth_test_field(RadialGrid::uniform(0.0, 65).unwrap(), 32);
        let mut conj = psi.clone();
        for z in conj.values.iter_mut() {
            *z = z.conj();
        }
        let params = p(0.1, 4.0);
        let a = assemble_energy(&psi, &params).unwrap();
        let b = assemble_energy(&conj, &params).unwrap();
        assert!((a.kinetic - b.kinetic).abs() < 1e-10 * a.kinetic.abs());
        assert!((a.interaction - b.interaction).abs() < 1e-12 * a.interaction.abs());
        assert!((a.rotation + b.rotation).abs() < 1e-10 * a.rotation.abs().max(1.0));
    }

    #[test]
    fn unnormalized_field_rejected() {
        let grid = RadialGrid::uniform(0.0, 33).unwrap();
        let psi = Wavefunction2D::from_fn(grid, 16, |r, _| Complex64::new(1.0 - r, 0.0));
        assert!(matches!(
            assemble_energy(&psi, &p(0.1, 0.0)),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn gradient_check_on_smooth_field() {
        let psi = smooth_test_field(RadialGrid::uniform(0.0, 65).unwrap(), 32);
        let err = gradient_check(&psi, &p(0.1, 5.0), 10, 1e-6, 1234);
        assert!(err < 1e-5, "2D gradient error {err:.3e}");
        // determinism
        let err2 = gradient_check(&psi, &p(0.1, 5.0), 10, 1e-6, 1234);
        assert_eq!(err, err2);
        // truncation grows past the optimum
        let coarse = gradient_check(&psi, &p(0.1, 5.0), 10, 1e-1, 1234);
        assert!(coarse > err, "coarse {coarse:.3e} vs fine {err:.3e}");
    }

    #[test]
    fn minimize_still_matches_density_profile() {
        let params = p(0.1, 0.0);
        let grid = RadialGrid::uniform(0.0, 129).unwrap();
        let prof = minimize_density_profile(&params, &grid, default_tolerance(&params)).unwrap();
        let spec = TrialSpec {
            kind: TrialKind::TfSeed { seed: 3 },
            n_theta: 32,
        };
        let trial = make_trial(&spec, &params, &prof).unwrap();
        let mut controls = DescentControls::new(&params);
        controls.tol = 1e-5;
        let out = minimize(&trial.psi, &params, &controls);
        assert!(out.converged, "residual {}", out.residual);
        let rel = (out.breakdown.total - prof.energy).abs() / prof.energy.abs();
        assert!(rel < 1e-3, "2D ground state vs 1D profile {rel:.3e}");
        // restart from the converged state: no accepted steps, same energy
        // (up to the roundoff of one re-projection of the mass)
        let again = minimize(&out.psi, &params, &controls);
        assert_eq!(again.accepted_steps, 0);
        let drift = (again.breakdown.total - out.breakdown.total).abs();
        assert!(drift <= 1e-12 * out.breakdown.total.abs());
    }

    #[test]
    fn trial_norm_constant_window() {
        let params = p(0.05, 9.0);
        let grid = RadialGrid::uniform(0.0, 257).unwrap();
        let prof = minimize_density_profile(&params, &grid, 1e-3).unwrap();
        let (lo, hi) = cutoff_window(&params);
        let t = (lo * hi).sqrt();
        let spec = TrialSpec {
            kind: TrialKind::VortexLattice {
                lattice: LatticeKind::Triangular,
                cutoff: Some(t),
            },
            n_theta: 256,
        };
        let trial = make_trial(&spec, &params, &prof).unwrap();
        assert!(!trial.lattice_points.is_empty());
        let c2 = trial.norm_const_sq;
        assert!(c2 >= 1.0 - 1e-9, "c^2 = {c2}");
        assert!(
            c2 <= 1.0 + 10.0 * params.omega() * t * t,
            "c^2 = {c2} beyond 1 + 10 Omega t^2"
        );
        // cutoff window enforced
        let bad = TrialSpec {
            kind: TrialKind::VortexLattice {
                lattice: LatticeKind::Triangular,
                cutoff: Some(hi * 2.0),
            },
            n_theta: 64,
        };
        assert!(matches!(
            make_trial(&bad, &params, &prof),
            Err(Error::CutoffOutOfRange { .. })
        ));
    }

    #[test]
    fn decoupling_identity_on_gv_trial() {
        let params = PhysicalParams::from_omega0(0.05, 0.30).unwrap();
        let r_lo = giant_vortex_inner_radius(&params);
        let grid = RadialGrid::uniform(r_lo, 513).unwrap();
        let w = params.omega_tf().round() as i64;
        let gv =
            minimize_giant_vortex_profile(&params, w, &grid, default_tolerance(&params)).unwrap();
        // psi = the giant-vortex trial built from gv itself => u = 1, E[u] = 0
        let spec = TrialSpec {
            kind: TrialKind::GiantVortex { omega_phase: w },
            n_theta: 128,
        };
        let trial = make_trial(&spec, &params, &gv.profile).unwrap();
        let dec = decouple_energy(&trial.psi, &gv, 1e-6, 0.2).unwrap();
        let scale = dec.gp_energy.abs();
        assert!(
            dec.reduced_e.abs() < 1e-9 * scale,
            "E[u] = {} for u = 1",
            dec.reduced_e
        );
        assert!(dec.reduced_f.abs() < 1e-9 * scale);
        assert!(
            dec.identity_residual < 1e-8 * scale,
            "identity residual {:.3e}",
            dec.identity_residual
        );
    }

    #[test]
    fn binary_roundtrip() {
        let psi = smooth_test_field(RadialGrid::uniform(0.0, 33).unwrap(), 16);
        let params = p(0.07, 3.0);
        let mut buf = Vec::new();
        psi.write_binary(&params, &mut buf).unwrap();
        let (back, params_back) = Wavefunction2D::read_binary(buf.as_slice()).unwrap();
        assert_eq!(back.n_theta, psi.n_theta);
        assert_eq!(back.values, psi.values);
        assert_eq!(params_back.epsilon(), params.epsilon());
        assert_eq!(params_back.omega(), params.omega());
    }
}
