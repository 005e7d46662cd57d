// scratch diagnostics for solver behavior (not part of the deliverable API)
use gpdisc::field::Wavefunction2D;
use gpdisc::grid::RadialGrid;
use gpdisc::params::PhysicalParams;
use gpdisc::symmetry::{optimize_winding, second_variation, second_variation_fd};
use gpdisc::vortex::{degree_on_circle, detect_vortices, plaquette_circulation};
use num_complex::Complex64;
use std::f64::consts::PI;

fn vortex_debug() {
    let grid = RadialGrid::uniform(0.0, 65).unwrap();
    let mut psi = Wavefunction2D::from_fn(grid, 64, |r, theta| {
        Complex64::from_polar(r * (1.0 - r * r), theta)
    });
    psi.project_mass();
    let set = detect_vortices(&psi, 0.3).unwrap();
    for v in &set.items {
        println!(
            "vortex: r={:.4} theta={:.4} degree={} core={:.4}",
            v.r, v.theta, v.degree, v.core_scale
        );
    }
    let circ = plaquette_circulation(&psi);
    let i_out = psi.grid.nearest(0.7);
    let total: f64 = (0..i_out)
        .flat_map(|i| (0..psi.n_theta).map(move |j| (i, j)))
        .map(|(i, j)| circ[i * psi.n_theta + j])
        .sum();
    println!(
        "telescope: sum={:.6} winding={:?} 2pi={:.6}",
        total,
        degree_on_circle(&psi, 0.7),
        2.0 * PI
    );
    // largest per-cell circulations away from origin
    let mut cells: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..psi.n_r() - 1 {
        for j in 0..psi.n_theta {
            let c = circ[i * psi.n_theta + j];
            if c.abs() > 1.0 {
                cells.push((i, j, c));
            }
        }
    }
    for (i, j, c) in cells.iter().take(12) {
        println!("  cell i={i} j={j} circ={c:.4} r={:.4}", psi.grid.nodes()[*i]);
    }
}

fn q_routes() {
    let eps: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.05);
    let nodes: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2049);
    let params = PhysicalParams::new(eps, 2.0 * 2.0 / (PI.sqrt() * eps)).unwrap();
    let grid = RadialGrid::uniform(0.0, nodes).unwrap();
    let tol = 1e-8 / (eps * eps);
    let search = optimize_winding(&params, &grid, tol).unwrap();
    println!(
        "n_bar = {} E = {:.6} mu = {:.6} r* = {:.4}",
        search.n_bar, search.vortex.energy, search.vortex.profile.mu_hat, search.vortex.profile.r_max
    );
    let q_closed = second_variation(&params, &search.vortex, 2).unwrap();
    let q_fd = second_variation_fd(&params, &search.vortex, 2, 256, &[1e-3, 5e-4]).unwrap();
    // direct 1D quadratic form: Q = sum over modes n+-d of
    // int {|u'|^2 + k^2 u^2/r^2} - 2 Omega k int u^2 + 4/eps^2 int f^2 u^2
    // + 4/eps^2 int f^2 u+ u- - mu int u^2  (all with 2 pi r dr)
    let sym = &search.vortex;
    let f = &sym.profile.values;
    let n = grid.n();
    let h = grid.spacing();
    let d = 2i64;
    let nf = search.n_bar as f64;
    let i_star = f
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    let r_star = grid.nodes()[i_star];
    let mut fp = vec![0.0; n];
    fp[0] = (f[1] - f[0]) / h;
    fp[n - 1] = (f[n - 1] - f[n - 2]) / h;
    for i in 1..n - 1 {
        fp[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    for i in 0..n {
        let r = grid.nodes()[i];
        if i <= i_star {
            a[i] = r.powi(d as i32 + 1) * fp[i];
            b[i] = nf * r.powi(d as i32) * f[i];
        } else {
            b[i] = nf * r_star.powi(d as i32) * f[i];
        }
    }
    let u_plus: Vec<f64> = (0..n).map(|i| a[i] + b[i]).collect();
    let u_minus: Vec<f64> = (0..n).map(|i| a[i] - b[i]).collect();
    let kbar: Vec<f64> = (0..n - 1)
        .map(|i| 2.0 * PI * 0.5 * (grid.nodes()[i] + grid.nodes()[i + 1]) / h)
        .collect();
    let om = params.omega();
    let inv_eps2 = 1.0 / (eps * eps);
    let mu = sym.profile.mu_hat;
    let mode_energy = |u: &[f64], k: f64| -> f64 {
        let mut e = 0.0;
        for i in 0..n - 1 {
            let du = u[i + 1] - u[i];
            e += kbar[i] * du * du;
        }
        for i in 0..n {
            let w = grid.weights()[i];
            let r = grid.nodes()[i];
            if w > 0.0 {
                e += w * (k * k / (r * r) - 2.0 * om * k - mu + 4.0 * inv_eps2 * f[i] * f[i])
                    * u[i]
                    * u[i];
            }
        }
        e
    };
    // cross term from 2 eps^-2 Re (Psi*)^2 Xi^2: theta-average picks 2 u+ u-
    let mut q_direct = mode_energy(&u_plus, nf + d as f64) + mode_energy(&u_minus, nf - d as f64);
    for i in 0..n {
        let w = grid.weights()[i];
        q_direct += w * 4.0 * inv_eps2 * f[i] * f[i] * u_plus[i] * u_minus[i];
    }
    // swapped pairing: (A-B) on mode n+d, (A+B) on mode n-d
    let mut q_swapped = mode_energy(&u_minus, nf + d as f64) + mode_energy(&u_plus, nf - d as f64);
    for i in 0..n {
        let w = grid.weights()[i];
        q_swapped += w * 4.0 * inv_eps2 * f[i] * f[i] * u_plus[i] * u_minus[i];
    }
    println!("q_closed  = {q_closed:.6e}");
    println!("q_fd      = {q_fd:.6e}");
    println!("q_direct  = {q_direct:.6e}");
    println!("q_swapped = {q_swapped:.6e}");

    // variant scan: A-augmentation x B-tail x pairing
    let d32 = d as i32;
    for (a_label, a_fun) in [
        ("A=r^{d+1}f'", 0.0),
        ("A=r^{d+1}f'+d r^d f", d as f64),
        ("A=r^{d+1}f'+(d+1) r^d f", (d + 1) as f64),
    ] {
        for (t_label, harmonic_tail) in [("tail r*^d f", false), ("tail r*^{2d} r^-d f", true)] {
            let mut av = vec![0.0; n];
            let mut bv = vec![0.0; n];
            for i in 0..n {
                let r: f64 = grid.nodes()[i];
                if i <= i_star {
                    av[i] = r.powi(d32 + 1) * fp[i] + a_fun * r.powi(d32) * f[i];
                    bv[i] = nf * r.powi(d32) * f[i];
                } else {
                    bv[i] = if harmonic_tail && r > 0.0 {
                        nf * r_star.powi(2 * d32) * r.powi(-d32) * f[i]
                    } else {
                        nf * r_star.powi(d32) * f[i]
                    };
                }
            }
            let up: Vec<f64> = (0..n).map(|i| av[i] + bv[i]).collect();
            let um: Vec<f64> = (0..n).map(|i| av[i] - bv[i]).collect();
            let cross: f64 = (0..n)
                .map(|i| grid.weights()[i] * 4.0 * inv_eps2 * f[i] * f[i] * up[i] * um[i])
                .sum();
            let qn = mode_energy(&up, nf + d as f64) + mode_energy(&um, nf - d as f64) + cross;
            let qs = mode_energy(&um, nf + d as f64) + mode_energy(&up, nf - d as f64) + cross;
            println!("{a_label:28} {t_label:22} normal={qn:+.5e} swapped={qs:+.5e}");
        }
    }
}

fn bdg_min_eigenvalue() {
    // smallest generalized eigenvalue of the d-channel pair block
    // M = [[K + W a+, W c], [W c, K + W a-]], N = diag(W, W)
    let eps: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.05);
    let nodes: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2049);
    let d: f64 = std::env::args()
        .nth(3)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2.0);
    let params = PhysicalParams::new(eps, 2.0 * 2.0 / (PI.sqrt() * eps)).unwrap();
    let grid = RadialGrid::uniform(0.0, nodes).unwrap();
    let tol = 1e-8 / (eps * eps);
    let search = optimize_winding(&params, &grid, tol).unwrap();
    let f = &search.vortex.profile.values;
    let mu = search.vortex.profile.mu_hat;
    let nf = search.n_bar as f64;
    let om = params.omega();
    let inv_eps2 = 1.0 / (eps * eps);
    let n = grid.n();
    let h = grid.spacing();
    let kbar: Vec<f64> = (0..n - 1)
        .map(|i| 2.0 * PI * 0.5 * (grid.nodes()[i] + grid.nodes()[i + 1]) / h)
        .collect();
    let w: Vec<f64> = grid.weights().to_vec();
    let a = |i: usize, k: f64| -> f64 {
        let r = grid.nodes()[i];
        if r == 0.0 {
            return 0.0;
        }
        k * k / (r * r) - 2.0 * om * k - mu + 4.0 * inv_eps2 * f[i] * f[i]
    };
    let kp = nf + d;
    let km = nf - d;
    // shift to make M + sN positive definite
    let mut s = 1.0f64;
    for i in 0..n {
        s = s.max(1.0 - a(i, kp).min(a(i, km)) + 2.0 * inv_eps2 * f[i] * f[i]);
    }
    // block Thomas for (M + sN) x = N y with 2x2 blocks
    let solve = |y: &Vec<[f64; 2]>| -> Vec<[f64; 2]> {
        let mut diag: Vec<[[f64; 2]; 2]> = Vec::with_capacity(n);
        for i in 0..n {
            let mut k_diag = 0.0;
            if i > 0 {
                k_diag += kbar[i - 1];
            }
            if i + 1 < n {
                k_diag += kbar[i];
            }
            let c = 2.0 * inv_eps2 * f[i] * f[i] * w[i];
            diag.push([
                [k_diag + w[i] * (a(i, kp) + s), c],
                [c, k_diag + w[i] * (a(i, km) + s)],
            ]);
        }
        // pinned rows at i = 0 (n != 0) and i = n-1
        for &i in &[0usize, n - 1] {
            diag[i] = [[1.0, 0.0], [0.0, 1.0]];
        }
        let inv2 = |m: [[f64; 2]; 2]| -> [[f64; 2]; 2] {
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            [
                [m[1][1] / det, -m[0][1] / det],
                [-m[1][0] / det, m[0][0] / det],
            ]
        };
        let matv = |m: [[f64; 2]; 2], v: [f64; 2]| -> [f64; 2] {
            [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
        };
        let off = |i: usize| -> f64 {
            // coupling between node i and i+1 (zero into pinned rows)
            if i == 0 || i + 1 == n - 1 || i + 1 == 0 || i == n - 1 {
                0.0
            } else {
                -kbar[i]
            }
        };
        let mut c_fac: Vec<[[f64; 2]; 2]> = vec![[[0.0; 2]; 2]; n];
        let mut x: Vec<[f64; 2]> = vec![[0.0; 2]; n];
        let rhs =
            |i: usize| -> [f64; 2] { [w[i] * y[i][0], w[i] * y[i][1]] };
        let minv = inv2(diag[0]);
        c_fac[0] = [[minv[0][0] * off(0), minv[0][1] * off(0)], [minv[1][0] * off(0), minv[1][1] * off(0)]];
        x[0] = matv(minv, rhs(0));
        for i in 1..n {
            let o_prev = off(i - 1);
            let m = [
                [diag[i][0][0] - o_prev * c_fac[i - 1][0][0] * o_prev / 1.0, diag[i][0][1] - o_prev * c_fac[i - 1][0][1]],
                [diag[i][1][0] - o_prev * c_fac[i - 1][1][0], diag[i][1][1] - o_prev * c_fac[i - 1][1][1]],
            ];
            // note: off-diagonal blocks are scalar*I, so this simplifies
            let m = [
                [diag[i][0][0] - o_prev * c_fac[i - 1][0][0], m[0][1]],
                [m[1][0], m[1][1]],
            ];
            let minv = inv2(m);
            let o_cur = off(i);
            c_fac[i] = [
                [minv[0][0] * o_cur, minv[0][1] * o_cur],
                [minv[1][0] * o_cur, minv[1][1] * o_cur],
            ];
            let b = rhs(i);
            let b = [b[0] - o_prev * x[i - 1][0], b[1] - o_prev * x[i - 1][1]];
            x[i] = matv(minv, b);
        }
        for i in (0..n - 1).rev() {
            let xi1 = x[i + 1];
            x[i] = [
                x[i][0] - c_fac[i][0][0] * xi1[0] - c_fac[i][0][1] * xi1[1],
                x[i][1] - c_fac[i][1][0] * xi1[0] - c_fac[i][1][1] * xi1[1],
            ];
        }
        x
    };
    let mut y: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let r = grid.nodes()[i];
            [r * (1.0 - r) * (0.3 + r), r * (1.0 - r)]
        })
        .collect();
    y[0] = [0.0, 0.0];
    y[n - 1] = [0.0, 0.0];
    let norm = |v: &Vec<[f64; 2]>| -> f64 {
        (0..n).map(|i| w[i] * (v[i][0] * v[i][0] + v[i][1] * v[i][1])).sum::<f64>().sqrt()
    };
    let mut lambda = 0.0;
    for _ in 0..400 {
        let mut x = solve(&y);
        x[0] = [0.0, 0.0];
        x[n - 1] = [0.0, 0.0];
        let nx = norm(&x);
        for v in x.iter_mut() {
            v[0] /= nx;
            v[1] /= nx;
        }
        // Rayleigh quotient of the *shifted* operator via one more solve:
        // lambda_shifted ~ <x, N x> / <x, (M+sN)^{-1} N x>-ish; instead use
        // lambda = <x, M x>/<x, N x> directly
        let mut num = 0.0;
        for i in 0..n {
            let mut k_term = [0.0, 0.0];
            if i > 0 {
                k_term[0] += kbar[i - 1] * (x[i][0] - x[i - 1][0]);
                k_term[1] += kbar[i - 1] * (x[i][1] - x[i - 1][1]);
            }
            if i + 1 < n {
                k_term[0] += kbar[i] * (x[i][0] - x[i + 1][0]);
                k_term[1] += kbar[i] * (x[i][1] - x[i + 1][1]);
            }
            let c = 2.0 * inv_eps2 * f[i] * f[i] * w[i];
            num += x[i][0] * (k_term[0] + w[i] * a(i, kp) * x[i][0] + c * x[i][1]);
            num += x[i][1] * (k_term[1] + w[i] * a(i, km) * x[i][1] + c * x[i][0]);
        }
        lambda = num; // norm is 1 in N-metric
        y = x;
    }
    println!("bdg d={d} lambda_min = {lambda:.6e} (negative => unstable channel)");
}

fn main() {
    vortex_debug();
    q_routes();
    bdg_min_eigenvalue();
}
