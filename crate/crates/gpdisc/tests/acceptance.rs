//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).
//!
//! Criteria that measure asymptotic statements carry the tolerances they were
//! specified with; where a stated tolerance is not attainable at these
//! parameter scales the test fails honestly and prints the measured values.

use gpdisc::cost::{estimate_third_speed, ThirdSpeedOptions, OMEGA0_STAR_LIMIT};
use gpdisc::field::{
    assemble_energy, decouple_energy, embed_giant_vortex_on_disc, gradient_check, make_trial,
    minimize, DescentControls, LatticeKind, MinimizeOutcome, TrialKind, TrialSpec, Wavefunction2D,
};
use gpdisc::grid::RadialGrid;
use gpdisc::params::PhysicalParams;
use gpdisc::profile::{
    default_tolerance, giant_vortex_inner_radius, gradient_check_1d, minimize_density_profile,
    minimize_giant_vortex_profile, optimize_phase, RadialProfile,
};
use gpdisc::symmetry::{
    optimize_winding, second_variation, second_variation_fd, second_variation_quadratic_form,
};
use gpdisc::tf::{tf_energy, tf_solve};
use gpdisc::vortex::{
    bulk_region, degree_on_circle, detect_vortices, vorticity_uniformity, zero_free_check,
    BulkRegime,
};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;

fn report(n: usize, name: &str, pass: bool, detail: &str) -> bool {
    println!(
        "ACCEPTANCE {n} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn omega_c2(eps: f64) -> f64 {
    2.0 / (PI.sqrt() * eps)
}

/// Independent TF oracle: projected gradient on the discretized TF
/// functional with positivity and mass constraints (water-filling projection
/// in the quadrature metric).
fn tf_discrete_minimum(eps: f64, omega: f64, n: usize) -> f64 {
    let grid = RadialGrid::uniform(0.0, n).unwrap();
    let w = grid.weights();
    let q: Vec<f64> = grid.nodes().iter().map(|&r| -omega * omega * r * r).collect();
    let project = |rho: &mut Vec<f64>| {
        // water-filling: rho = (v + lambda)_+ with sum w rho = 1
        let mass = |lambda: f64, v: &Vec<f64>| -> f64 {
            v.iter()
                .zip(w)
                .map(|(&x, &wi)| wi * (x + lambda).max(0.0))
                .sum()
        };
        let v = rho.clone();
        let mut lo = -v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut hi = lo + 1.0;
        while mass(hi, &v) < 1.0 {
            hi = lo + 2.0 * (hi - lo);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mass(mid, &v) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let lambda = 0.5 * (lo + hi);
        for (x, &vi) in rho.iter_mut().zip(&v) {
            *x = (vi + lambda).max(0.0);
        }
    };
    let inv_eps2 = 1.0 / (eps * eps);
    let energy = |rho: &Vec<f64>| -> f64 {
        rho.iter()
            .zip(&q)
            .zip(w)
            .map(|((&x, &qi), &wi)| wi * inv_eps2 * (x * x + eps * eps * qi * x))
            .sum()
    };
    let mut rho: Vec<f64> = vec![1.0 / PI; n];
    project(&mut rho);
    let tau = 0.5 * eps * eps; // exact minimizer of the diagonal quadratic
    let mut last = f64::INFINITY;
    for _ in 0..200 {
        // gradient in the quadrature metric: 2 rho/eps^2 + q
        let step: Vec<f64> = rho
            .iter()
            .zip(&q)
            .map(|(&x, &qi)| x - tau * (2.0 * inv_eps2 * x + qi))
            .collect();
        rho = step;
        project(&mut rho);
        let e = energy(&rho);
        if (last - e).abs() < 1e-13 * e.abs().max(1.0) {
            break;
        }
        last = e;
    }
    energy(&rho)
}

#[test]
fn acceptance_1_tf_oracle_suite() {
    let started = Instant::now();
    let mut ok = true;

    // branch continuity at Omega_c2
    let mut worst_branch = 0.0f64;
    for &eps in &[0.1, 0.05, 0.02] {
        let oc2 = omega_c2(eps);
        let below = tf_energy(&PhysicalParams::new(eps, oc2 * (1.0 - 1e-13)).unwrap());
        let above = tf_energy(&PhysicalParams::new(eps, oc2 * (1.0 + 1e-13)).unwrap());
        worst_branch = worst_branch.max((below - above).abs() / above.abs());
    }
    ok &= report(
        1,
        "TF branch continuity",
        worst_branch < 1e-10,
        &format!("max relative jump at Omega_c2 = {worst_branch:.3e} (tol 1e-10)"),
    );

    // normalization of the closed-form density
    let mut worst_mass = 0.0f64;
    for &(eps, factor) in &[(0.1, 0.0), (0.05, 0.5), (0.05, 1.5), (0.02, 2.0)] {
        let params = PhysicalParams::new(eps, factor * omega_c2(eps)).unwrap();
        let tf = tf_solve(&params);
        worst_mass = worst_mass.max((tf.mass_refined() - 1.0).abs());
    }
    ok &= report(
        1,
        "TF normalization",
        worst_mass < 1e-10,
        &format!("max |mass - 1| = {worst_mass:.3e} (tol 1e-10)"),
    );

    // closed form vs direct discrete minimization at 4096 radial points
    let mut worst_rel = 0.0f64;
    for &(eps, factor) in &[(0.1, 0.0), (0.05, 0.5), (0.05, 1.5), (0.02, 2.0)] {
        let omega = factor * omega_c2(eps);
        let params = PhysicalParams::new(eps, omega).unwrap();
        let closed = tf_energy(&params);
        let direct = tf_discrete_minimum(eps, omega, 4096);
        worst_rel = worst_rel.max((closed - direct).abs() / closed.abs());
    }
    ok &= report(
        1,
        "TF closed form vs discrete minimization",
        worst_rel < 1e-6,
        &format!("max relative gap = {worst_rel:.3e} (tol 1e-6, 4096 points)"),
    );

    let elapsed = started.elapsed().as_secs_f64();
    ok &= report(1, "TF suite runtime", elapsed < 5.0, &format!("{elapsed:.2} s (< 5 s)"));
    assert!(ok, "criterion 1 failed");
}

#[test]
fn acceptance_2_gradient_checks() {
    let started = Instant::now();
    let mut ok = true;

    // 1D at 4096 nodes
    let params = PhysicalParams::new(0.05, 30.0).unwrap();
    let grid = RadialGrid::uniform(0.0, 4097).unwrap();
    let om = params.omega();
    let potential: Vec<f64> = grid.nodes().iter().map(|&r| -om * om * r * r).collect();
    let tf = tf_solve(&params);
    let g: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&r| gpdisc::profile::regularized_tf_density(&tf, r).sqrt() * (1.0 - r))
        .collect();
    let err_1d = gradient_check_1d(&grid, &potential, params.epsilon(), &g, 10, 1e-6, 42);
    ok &= report(
        2,
        "1D gradient vs finite differences",
        err_1d < 1e-5,
        &format!("max relative error {err_1d:.3e} over 10 directions (tol 1e-5)"),
    );

    // 2D at 256 x 512
    let grid2 = RadialGrid::uniform(0.0, 256).unwrap();
    let mut psi = Wavefunction2D::from_fn(grid2, 512, |r, theta| {
        Complex64::from_polar((1.0 - r * r) * (0.4 + r), 5.0 * theta + r)
    });
    psi.project_mass();
    let err_2d = gradient_check(&psi, &params, 10, 1e-6, 42);
    ok &= report(
        2,
        "2D gradient vs finite differences",
        err_2d < 1e-5,
        &format!("max relative error {err_2d:.3e} over 10 directions (tol 1e-5)"),
    );

    let elapsed = started.elapsed().as_secs_f64();
    ok &= report(2, "gradient runtime", elapsed < 30.0, &format!("{elapsed:.2} s (< 30 s)"));
    assert!(ok, "criterion 2 failed");
}

#[test]
fn acceptance_3_profile_sandwich() {
    let mut ok = true;
    let mut details = String::new();
    let mut worst_gap = 0.0f64;
    let mut lower_bound_ok = true;
    for &eps in &[0.05, 0.02] {
        for &factor in &[0.5, 1.0, 1.5, 2.0] {
            let params = PhysicalParams::new(eps, factor * omega_c2(eps)).unwrap();
            let grid = RadialGrid::uniform(0.0, 4097).unwrap();
            let prof =
                minimize_density_profile(&params, &grid, default_tolerance(&params)).unwrap();
            lower_bound_ok &= prof.energy >= prof.tf_energy;
            let gap = prof.normalized_gap(&params);
            worst_gap = worst_gap.max(gap);
            lower_bound_ok &= gap > 0.0;
            details.push_str(&format!("({eps},{factor}Oc2): {gap:.2}; "));
        }
    }
    ok &= report(
        3,
        "E_TF <= E_hat lower bound",
        lower_bound_ok,
        "all 8 parameter points",
    );
    ok &= report(
        3,
        "normalized Dirichlet gap bounded",
        worst_gap <= 12.0,
        &format!("max normalized gap {worst_gap:.3} (bound 12): {details}"),
    );
    assert!(ok, "criterion 3 failed");
}

fn minimize_multi_seed(
    params: &PhysicalParams,
    prof: &RadialProfile,
    n_theta: usize,
    seeds: &[u64],
    controls: &DescentControls,
    with_lattice: bool,
) -> MinimizeOutcome {
    let mut best: Option<MinimizeOutcome> = None;
    let mut consider = |out: MinimizeOutcome| {
        if best
            .as_ref()
            .map(|b| out.breakdown.total < b.breakdown.total)
            .unwrap_or(true)
        {
            best = Some(out);
        }
    };
    for &seed in seeds {
        let spec = TrialSpec {
            kind: TrialKind::TfSeed { seed },
            n_theta,
        };
        let trial = make_trial(&spec, params, prof).unwrap();
        consider(minimize(&trial.psi, params, controls));
    }
    if with_lattice {
        let spec = TrialSpec {
            kind: TrialKind::VortexLattice {
                lattice: LatticeKind::Triangular,
                cutoff: None,
            },
            n_theta,
        };
        if let Ok(trial) = make_trial(&spec, params, prof) {
            consider(minimize(&trial.psi, params, controls));
        }
    }
    best.expect("at least one seed")
}

#[test]
fn acceptance_4_second_speed_signature() {
    let eps = 0.05;
    let oc2 = omega_c2(eps);
    let factors = [0.5, 0.65, 0.8, 1.0, 1.2, 1.5, 2.0];
    // the fully developed hole at the top of the sweep defines the central
    // probe used on the low side (the literal per-point probe is empty there)
    let top = PhysicalParams::new(eps, 2.0 * oc2).unwrap();
    let central_probe = tf_solve(&top).support_inner() - 0.05;

    let grid = RadialGrid::uniform(0.0, 192).unwrap();
    let fine = RadialGrid::uniform(0.0, 2049).unwrap();
    let mut rows = Vec::new();
    for &f in &factors {
        let params = PhysicalParams::new(eps, f * oc2).unwrap();
        let prof = minimize_density_profile(&params, &grid, 1e-3).unwrap();
        let mut controls = DescentControls::new(&params);
        controls.tol = 2e-3;
        controls.max_iters = 5000;
        let out = minimize_multi_seed(&params, &prof, 384, &[3], &controls, f >= 0.8);
        let tf = tf_solve(&params);
        let hole_probe = (tf.support_inner() - 0.05).max(0.0);
        let hole_mass = out.psi.mass_inside(hole_probe);
        let central_mass = out.psi.mass_inside(central_probe);
        // converged reference for the same integral from the radial profile
        // (the hole is vortex-free, so |psi|^2 = g^2 there)
        let hole_mass_1d = if f >= 1.2 {
            let prof_fine =
                minimize_density_profile(&params, &fine, default_tolerance(&params)).unwrap();
            prof_fine
                .grid
                .weights()
                .iter()
                .zip(prof_fine.grid.nodes())
                .zip(&prof_fine.values)
                .filter(|((_, &r), _)| r <= hole_probe)
                .map(|((w, _), v)| w * v * v)
                .sum()
        } else {
            f64::NAN
        };
        rows.push((f, hole_mass, central_mass, hole_mass_1d));
    }
    let mut ok = true;
    let mut high_ok = true;
    let mut low_ok = true;
    let mut detail_high = String::new();
    let mut detail_low = String::new();
    for &(f, hole, central, hole_1d) in &rows {
        if f >= 1.2 {
            high_ok &= hole < 1e-3 && hole_1d < 1e-3;
            detail_high.push_str(&format!("{f}Oc2: {hole:.3e} (converged 1D: {hole_1d:.3e}); "));
        }
        if f <= 0.8 {
            low_ok &= central > 0.2;
            detail_low.push_str(&format!("{f}Oc2: {central:.3}; "));
        }
    }
    ok &= report(
        4,
        "hole mass < 1e-3 for Omega >= 1.2 Omega_c2",
        high_ok,
        &format!("per-point probe B(R_tf - 0.05): {detail_high}"),
    );
    ok &= report(
        4,
        "central mass > 0.2 for Omega <= 0.8 Omega_c2",
        low_ok,
        &format!("probe B({central_probe:.3}): {detail_low}"),
    );
    assert!(ok, "criterion 4 failed");
}

#[test]
fn acceptance_5_uniform_vorticity() {
    let eps = 0.05;
    let params = PhysicalParams::new(eps, 3.0 * (1.0f64 / eps).ln()).unwrap();
    let grid = RadialGrid::uniform(0.0, 256).unwrap();
    let prof = minimize_density_profile(&params, &grid, 1e-4).unwrap();
    let mut controls = DescentControls::new(&params);
    controls.tol = 5e-4;
    controls.max_iters = 8_000;
    // multiple initializers, best kept: seeded lattice, random-phase TF
    // seed, and vortex rings bracketing the expected total degree
    let mut out = minimize_multi_seed(&params, &prof, 512, &[2], &controls, true);
    for k in [3usize, 4, 5] {
        let pts: Vec<(f64, f64)> = (0..k)
            .map(|j| {
                let th = 2.0 * PI * j as f64 / k as f64 + 0.3;
                (0.45 * th.cos(), 0.45 * th.sin())
            })
            .collect();
        let trial = gpdisc::field::trial_with_vortices(&prof, 512, &pts, 0.07);
        let cand = minimize(&trial.psi, &params, &controls);
        if cand.breakdown.total < out.breakdown.total {
            out = cand;
        }
    }
    let set = detect_vortices(&out.psi, 0.3).unwrap();
    // bulk geometry from a fine profile: r_max sits on a flat density top
    // and needs resolution well beyond the 2D seeding grid
    let fine = RadialGrid::uniform(0.0, 2049).unwrap();
    let prof_fine = minimize_density_profile(&params, &fine, default_tolerance(&params)).unwrap();
    let region = bulk_region(&params, &prof_fine, BulkRegime::Moderate).unwrap();
    let uniformity = vorticity_uniformity(&set, &params, &region, 4);
    let mut ok = true;
    ok &= report(
        5,
        "global vorticity ratio in [0.75, 1.25]",
        (0.75..=1.25).contains(&uniformity.global_ratio),
        &format!(
            "nu(S)/|S| = {:.3} with {} vortices (total degree {}) on [{:.3}, {:.3}], E = {:.4}",
            uniformity.global_ratio,
            set.len(),
            set.total_degree(),
            region.r_in,
            region.r_out,
            out.breakdown.total
        ),
    );
    ok &= report(
        5,
        "per-quadrant dispersion < 0.35",
        uniformity.dispersion < 0.35,
        &format!(
            "dispersion = {:.3}, sector ratios {:?}",
            uniformity.dispersion,
            uniformity
                .sector_ratios
                .iter()
                .map(|x| (x * 100.0).round() / 100.0)
                .collect::<Vec<_>>()
        ),
    );
    assert!(ok, "criterion 5 failed");
}

#[test]
fn acceptance_6_optimal_phase_scaling() {
    let target = 2.0 / (3.0 * PI.sqrt());
    let mut ok = true;
    let mut deviations = Vec::new();
    let mut brute_ok = true;
    let mut detail = String::new();
    for &(eps, n) in &[(0.05, 1025), (0.02, 2049), (0.01, 2049)] {
        let params = PhysicalParams::from_omega0(eps, 0.30).unwrap();
        let r_lo = giant_vortex_inner_radius(&params);
        let grid = RadialGrid::uniform(r_lo, n).unwrap();
        let tol = default_tolerance(&params);
        let search = optimize_phase(&params, &grid, tol).unwrap();
        // brute-force integer scan as the oracle
        let hi = ((8.0 * params.omega_tf()) as i64).min(params.phase_window() as i64);
        let mut best = (i64::MIN, f64::INFINITY);
        for w in 0..=hi {
            let e = minimize_giant_vortex_profile(&params, w, &grid, tol)
                .unwrap()
                .profile
                .energy;
            if e < best.1 {
                best = (w, e);
            }
        }
        brute_ok &= best.0 == search.omega0;
        let scaled = search.omega0 as f64 * eps;
        deviations.push((scaled - target).abs());
        detail.push_str(&format!(
            "eps={eps}: omega0={} (brute {}), omega0*eps={scaled:.4}; ",
            search.omega0, best.0
        ));
    }
    let monotone = deviations.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let final_dev = deviations.last().unwrap() / target;
    ok &= report(
        6,
        "omega0*eps converges monotonically",
        monotone,
        &format!("deviations from 2/(3 sqrt(pi)) = {deviations:.3?}"),
    );
    ok &= report(
        6,
        "final deviation < 10%",
        final_dev < 0.10,
        &format!("relative deviation at eps=0.01 is {:.1}%; {detail}", final_dev * 100.0),
    );
    ok &= report(6, "brute-force scan agrees with unimodal search", brute_ok, &detail);
    assert!(ok, "criterion 6 failed");
}

#[test]
fn acceptance_7_third_speed_threshold() {
    let opts = ThirdSpeedOptions::default();
    let curve = estimate_third_speed(&[0.05, 0.02, 0.01, 0.005], &opts).unwrap();
    let stars: Vec<f64> = curve.tf_points.iter().map(|p| p.omega0_star).collect();
    let deviations: Vec<f64> = stars.iter().map(|s| (s - OMEGA0_STAR_LIMIT).abs()).collect();
    let monotone = deviations.windows(2).all(|w| w[1] <= w[0] + 1e-9);
    let final_rel = deviations.last().unwrap() / OMEGA0_STAR_LIMIT;
    let mut ok = true;
    ok &= report(
        7,
        "TF-level threshold monotone toward 2/(3 pi)",
        monotone,
        &format!("omega0* = {stars:.4?} vs target {OMEGA0_STAR_LIMIT:.4}"),
    );
    ok &= report(
        7,
        "final point within 25%",
        final_rel < 0.25,
        &format!("relative deviation at eps=0.005 is {:.1}%", final_rel * 100.0),
    );
    assert!(ok, "criterion 7 failed");
}

#[test]
fn acceptance_8_giant_vortex_zero_free() {
    let params = PhysicalParams::from_omega0(0.05, 0.30).unwrap();
    let eps = params.epsilon();
    let tol = default_tolerance(&params);
    let r_lo = giant_vortex_inner_radius(&params);
    let annulus = RadialGrid::uniform(r_lo, 1025).unwrap();
    let search = optimize_phase(&params, &annulus, tol).unwrap();
    let winding = search.profile.winding();

    let disc = RadialGrid::uniform(0.0, 256).unwrap();
    let trial = embed_giant_vortex_on_disc(&search.profile, &disc, 512).unwrap();
    let mut controls = DescentControls::new(&params);
    controls.tol = 1e-3;
    controls.max_iters = 12_000;
    let out = minimize(&trial.psi, &params, &controls);

    let prof = minimize_density_profile(&params, &disc, 1e-3).unwrap();
    let region = bulk_region(&params, &prof, BulkRegime::GiantVortex).unwrap();
    let tf = tf_solve(&params);
    let zero_free = zero_free_check(&out.psi, &region, &tf);

    let mut ok = true;
    ok &= report(
        8,
        "min |psi|^2 > 0 on the bulk annulus",
        zero_free.zero_free,
        &format!(
            "min density {:.3e} on [{:.3}, {:.3}] after re-minimization (E = {:.4}, residual {:.2e})",
            zero_free.min_density, region.r_in, region.r_out, out.breakdown.total, out.residual
        ),
    );
    let radii = [
        region.r_in + 0.25 * (region.r_out - region.r_in),
        region.r_in + 0.5 * (region.r_out - region.r_in),
        region.r_in + 0.75 * (region.r_out - region.r_in),
    ];
    let mut degree_ok = true;
    let mut detail = format!("expected [Omega]-omega0 = {winding} +- 2: ");
    for &r in &radii {
        match degree_on_circle(&out.psi, r) {
            Ok(d) => {
                degree_ok &= (d - winding).abs() <= 2;
                detail.push_str(&format!("deg({r:.3}) = {d}; "));
            }
            Err(e) => {
                degree_ok = false;
                detail.push_str(&format!("deg({r:.3}) failed: {e}; "));
            }
        }
    }
    ok &= report(8, "degree matches the optimal phase at three radii", degree_ok, &detail);
    let _ = eps;
    assert!(ok, "criterion 8 failed");
}

#[test]
fn acceptance_9_symmetry_breaking() {
    let eps = 0.02;
    let params = PhysicalParams::new(eps, 2.0 * omega_c2(eps)).unwrap();
    let grid = RadialGrid::uniform(0.0, 4097).unwrap();
    let search = optimize_winding(&params, &grid, default_tolerance(&params)).unwrap();
    let q_closed = second_variation(&params, &search.vortex, 2).unwrap();
    let q_fd = second_variation_fd(&params, &search.vortex, 2, 256, &[1e-3, 5e-4]).unwrap();
    let q_qf = second_variation_quadratic_form(&params, &search.vortex, 2).unwrap();

    let mut ok = true;
    ok &= report(
        9,
        "Q_nbar[Xi_{d=2}] < 0",
        q_closed < 0.0,
        &format!("closed form Q = {q_closed:.4e} at n_bar = {}", search.n_bar),
    );
    let rel = (q_closed - q_fd).abs() / q_fd.abs();
    let oracle_rel = (q_qf - q_fd).abs() / q_fd.abs();
    ok &= report(
        9,
        "closed form agrees with the FD oracle within 1e-4",
        rel <= 1e-4,
        &format!(
            "closed {q_closed:.4e} vs FD {q_fd:.4e} (rel {rel:.3e}); exact quadratic form {q_qf:.4e} \
             agrees with FD to {oracle_rel:.3e} — the printed closed form is not the exact second \
             variation of the printed perturbation at this scale"
        ),
    );
    assert!(ok, "criterion 9 failed");
}

#[test]
fn acceptance_10_decoupling_identity() {
    let params = PhysicalParams::from_omega0(0.05, 0.30).unwrap();
    let tol = default_tolerance(&params);
    let r_lo = giant_vortex_inner_radius(&params);
    let grid = RadialGrid::uniform(r_lo, 1025).unwrap();
    let w = params.omega_tf().round() as i64;
    let gv = minimize_giant_vortex_profile(&params, w, &grid, tol).unwrap();
    let n_star = gv.winding() as f64;

    // annulus-supported state psi = f * u0 * exp(i n theta), u0 smooth
    let gcl = grid.clone();
    let values = gv.profile.values.clone();
    let mut psi = Wavefunction2D::from_fn(grid.clone(), 128, |r, theta| {
        let f = gcl.interp(&values, r);
        let u0 = Complex64::new(
            1.0 + 0.05 * (2.0 * theta).cos() * (r - gcl.r_lo()),
            0.03 * theta.sin() * (1.0 - r),
        );
        Complex64::from_polar(f, n_star * theta) * u0
    });
    psi.project_mass();
    let gp = assemble_energy(&psi, &params).unwrap();
    let dec = decouple_energy(&psi, &gv, 1e-14, 0.5).unwrap();
    let rel = dec.identity_residual / gp.total.abs();
    let ok = report(
        10,
        "|E_GP - (E_omega + E_omega[u])| < 1e-6 relative",
        rel < 1e-6,
        &format!(
            "residual {:.3e} relative ({:.3e} absolute; E_GP = {:.4}, E_omega = {:.4}, E[u] = {:.4})",
            rel, dec.identity_residual, gp.total, gv.profile.energy, dec.reduced_e
        ),
    );
    assert!(ok, "criterion 10 failed");
}
