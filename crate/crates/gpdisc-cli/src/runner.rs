//! Experiment dispatch: one entry point per mode, sweeps with incremental
//! persistence, deterministic for a fixed config and seed.

use crate::config::{ExperimentConfig, Mode};
use crate::output::{io_err, Emitter, ResultRecord};
use gpdisc::cost::{
    compute_f, cost_function_h, estimate_third_speed, split_f, ThirdSpeedOptions,
};
use gpdisc::field::{
    embed_giant_vortex_on_disc, make_trial, minimize, DescentControls,
    LatticeKind, MinimizeOutcome, TrialKind, TrialSpec, Wavefunction2D,
};
use gpdisc::grid::RadialGrid;
use gpdisc::params::PhysicalParams;
use gpdisc::profile::{
    default_tolerance, giant_vortex_inner_radius, minimize_density_profile, optimize_phase,
    validate_profile, RadialProfile,
};
use gpdisc::symmetry::{second_variation_fd, second_variation_quadratic_form, symmetry_report};
use gpdisc::tf::{tf_cost_function, tf_solve};
use gpdisc::vortex::{
    bulk_region, degree_on_circle, detect_vortices, vorticity_uniformity, zero_free_check,
    BulkRegime, BulkRegion,
};
use rayon::prelude::*;
use serde_json::json;
use std::fs::OpenOptions;
use std::io::Write;
use std::sync::Mutex;
use std::time::Instant;

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultRecord, gpdisc::Error> {
    let started = Instant::now();
    let emitter = Emitter::new(&cfg.out_dir, &cfg.formats)?;
    let config_echo = serde_json::to_value(cfg).expect("config serializes");
    let mut record = ResultRecord::new(cfg.mode.name(), config_echo);

    match cfg.mode {
        Mode::Tf => run_tf(cfg, &emitter, &mut record)?,
        Mode::Profile => run_profile(cfg, &emitter, &mut record)?,
        Mode::GiantVortex => run_giant_vortex(cfg, &emitter, &mut record)?,
        Mode::Minimize2d => run_minimize2d(cfg, &emitter, &mut record)?,
        Mode::Vortices => run_vortices(cfg, &emitter, &mut record)?,
        Mode::ThirdSpeed => run_third_speed(cfg, &emitter, &mut record)?,
        Mode::Symmetry => run_symmetry(cfg, &emitter, &mut record)?,
        Mode::PhaseDiagram => run_phase_diagram(cfg, &emitter, &mut record)?,
    }

    record.wall_ms = started.elapsed().as_millis() as u64;
    let path = emitter.write_json("record.json", &record)?;
    record.artifacts.push(path);
    Ok(record)
}

fn params_at(cfg: &ExperimentConfig, omega_value: f64) -> Result<PhysicalParams, gpdisc::Error> {
    if cfg.omega_given_as_omega0 {
        PhysicalParams::from_omega0(cfg.epsilon, omega_value)
    } else {
        PhysicalParams::new(cfg.epsilon, omega_value)
    }
}

fn single_omega(cfg: &ExperimentConfig) -> Result<f64, gpdisc::Error> {
    cfg.omega.single().ok_or_else(|| {
        gpdisc::Error::InvalidParams(format!("mode {} expects a single omega, not a sweep", cfg.mode))
    })
}

fn tolerance(cfg: &ExperimentConfig, params: &PhysicalParams) -> f64 {
    cfg.tol.unwrap_or_else(|| default_tolerance(params))
}

fn run_tf(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let params = params_at(cfg, single_omega(cfg)?)?;
    let tf = tf_solve(&params);
    let speeds = params.critical_speeds();
    record.set("mu_tf", tf.mu_tf);
    record.set("r_tf", tf.support_inner());
    record.set("e_tf", tf.energy);
    record.set("has_hole", f64::from(u8::from(tf.has_hole)));
    record.set("mass_refined", tf.mass_refined());
    record.set("omega", params.omega());
    record.set("omega_c1", speeds.omega_c1);
    record.set("omega_c2", speeds.omega_c2);
    record.set("omega_c3", speeds.omega_c3);
    record
        .artifacts
        .push(emitter.write_json("tf.json", &json!({"solution": &tf, "speeds": &speeds}))?);

    let grid = RadialGrid::uniform(tf.support_inner(), cfg.profile_n.max(64))?;
    let cost = tf_cost_function(&params, &grid)?;
    record.set("min_h_tf_bulk", cost.min_h_bulk);
    let rows: Vec<Vec<f64>> = cost
        .grid
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &r)| vec![r, tf.density(r), cost.f_total[i], cost.h[i]])
        .collect();
    record
        .artifacts
        .push(emitter.write_csv("h_tf.csv", &["r", "rho_tf", "f", "h"], &rows)?);
    if emitter.wants("svg") {
        let pts: Vec<(f64, f64)> = cost
            .grid
            .nodes()
            .iter()
            .zip(&cost.h)
            .map(|(&r, &h)| (r, h))
            .collect();
        record.artifacts.push(emitter.write_svg_line(
            "h_tf.svg",
            "TF vortex cost H(r)",
            &[("H_TF", &pts)],
        )?);
    }
    Ok(())
}

fn profile_csv(
    emitter: &Emitter,
    name: &str,
    prof: &RadialProfile,
    params: &PhysicalParams,
) -> Result<String, gpdisc::Error> {
    let tf = tf_solve(params);
    let rows: Vec<Vec<f64>> = prof
        .grid
        .nodes()
        .iter()
        .zip(&prof.values)
        .map(|(&r, &g)| vec![r, g, g * g, tf.density(r)])
        .collect();
    emitter.write_csv(name, &["r", "g", "g_squared", "rho_tf"], &rows)
}

fn run_profile(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let params = params_at(cfg, single_omega(cfg)?)?;
    let grid = RadialGrid::uniform(0.0, cfg.profile_n)?;
    let tol = tolerance(cfg, &params);
    let prof = minimize_density_profile(&params, &grid, tol)?;
    let diag = validate_profile(&prof, &params);
    record.set("energy", prof.energy);
    record.set("e_tf", prof.tf_energy);
    record.set("mu_hat", prof.mu_hat);
    record.set("r_max", prof.r_max);
    record.set("residual", prof.residual);
    record.set("hole_mass", diag.hole_mass);
    record.set("maxima_count", diag.maxima_count as f64);
    record.set("mass_error", diag.mass_error);
    record.iterations = prof.iterations as u64;
    if let Some(w) = &prof.regime_warning {
        record.warnings.push(w.clone());
    }
    record.artifacts.push(profile_csv(emitter, "profile.csv", &prof, &params)?);
    record.artifacts.push(emitter.write_json("diagnostics.json", &diag)?);
    Ok(())
}

fn run_giant_vortex(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let params = params_at(cfg, single_omega(cfg)?)?;
    let tol = tolerance(cfg, &params);
    let r_lo = giant_vortex_inner_radius(&params);
    let grid = RadialGrid::uniform(r_lo, cfg.profile_n)?;
    let (gv, fallback, scanned) = match cfg.omega_phase {
        Some(w) => (
            gpdisc::profile::minimize_giant_vortex_profile(&params, w, &grid, tol)?,
            false,
            Vec::new(),
        ),
        None => {
            let search = optimize_phase(&params, &grid, tol)?;
            (search.profile, search.used_fallback, search.scanned)
        }
    };
    let f = compute_f(&gv);
    let (f_in, f_out) = split_f(&gv, &f)?;
    let cost = cost_function_h(&gv, &f_in, &f_out, &params);
    record.set("omega", params.omega());
    record.set("omega0", params.omega0());
    record.set("omega_phase", gv.omega_phase as f64);
    record.set("winding", gv.winding() as f64);
    record.set("energy", gv.profile.energy);
    record.set("e_tf", gv.profile.tf_energy);
    record.set("mu_hat", gv.profile.mu_hat);
    record.set("min_h_bulk", cost.min_h_bulk);
    record.set("f_at_wall", *f.last().unwrap());
    record.set("angular_momentum_mismatch", gv.angular_momentum_mismatch());
    record.set("used_fallback_scan", f64::from(u8::from(fallback)));
    record.iterations = gv.profile.iterations as u64;
    record
        .artifacts
        .push(profile_csv(emitter, "gv_profile.csv", &gv.profile, &params)?);
    let rows: Vec<Vec<f64>> = cost
        .grid
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &r)| vec![r, cost.f_total[i], cost.f_in[i], cost.f_out[i], cost.h[i]])
        .collect();
    record
        .artifacts
        .push(emitter.write_csv("cost.csv", &["r", "f", "f_in", "f_out", "h"], &rows)?);
    if !scanned.is_empty() {
        let rows: Vec<Vec<f64>> = scanned.iter().map(|&(w, e)| vec![w as f64, e]).collect();
        record
            .artifacts
            .push(emitter.write_csv("phase_scan.csv", &["omega_phase", "energy"], &rows)?);
    }
    if emitter.wants("svg") {
        let pts: Vec<(f64, f64)> = cost
            .grid
            .nodes()
            .iter()
            .zip(&cost.h)
            .map(|(&r, &h)| (r, h))
            .collect();
        record.artifacts.push(emitter.write_svg_line(
            "cost.svg",
            "giant-vortex cost H(r)",
            &[("H", &pts)],
        )?);
    }
    Ok(())
}

/// Best-of-several-initializers 2D minimization; seeds depend on the regime.
fn minimize_best(
    cfg: &ExperimentConfig,
    params: &PhysicalParams,
    seed: u64,
) -> Result<(MinimizeOutcome, RadialProfile), gpdisc::Error> {
    let profile_grid = RadialGrid::uniform(0.0, cfg.nr)?;
    let tol_1d = tolerance(cfg, params);
    let prof = minimize_density_profile(params, &profile_grid, tol_1d)?;
    let mut controls = DescentControls::new(params);
    if let Some(t) = cfg.tol {
        controls.tol = t;
    }
    controls.max_iters = cfg.max_iters;

    let mut trials: Vec<Wavefunction2D> = Vec::new();
    let spec = TrialSpec {
        kind: TrialKind::TfSeed { seed },
        n_theta: cfg.ntheta,
    };
    trials.push(make_trial(&spec, params, &prof)?.psi);
    if params.omega() > params.critical_speeds().omega_c1 {
        let spec = TrialSpec {
            kind: TrialKind::VortexLattice {
                lattice: LatticeKind::Triangular,
                cutoff: None,
            },
            n_theta: cfg.ntheta,
        };
        if let Ok(t) = make_trial(&spec, params, &prof) {
            trials.push(t.psi);
        }
    }
    if params.has_hole() {
        // giant-vortex seed from the optimal phase on a coarse annulus grid
        let r_lo = giant_vortex_inner_radius(params);
        let grid = RadialGrid::uniform(r_lo, (cfg.nr / 2).max(129))?;
        if let Ok(search) = optimize_phase(params, &grid, tol_1d.max(1e-3)) {
            if let Ok(t) = embed_giant_vortex_on_disc(&search.profile, &profile_grid, cfg.ntheta) {
                trials.push(t.psi);
            }
        }
    }

    let mut best: Option<MinimizeOutcome> = None;
    for psi0 in trials {
        let out = minimize(&psi0, params, &controls);
        if best
            .as_ref()
            .map(|b| out.breakdown.total < b.breakdown.total)
            .unwrap_or(true)
        {
            best = Some(out);
        }
    }
    Ok((best.expect("at least one trial"), prof))
}

fn run_minimize2d(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let params = params_at(cfg, single_omega(cfg)?)?;
    let (out, prof) = minimize_best(cfg, &params, cfg.seed)?;
    let b = &out.breakdown;
    record.set("energy", b.total);
    record.set("kinetic", b.kinetic);
    record.set("rotation", b.rotation);
    record.set("interaction", b.interaction);
    record.set("mu", b.mu);
    record.set("magnetic_form_total", b.magnetic_form_total);
    record.set("mass", b.mass);
    record.set("residual", out.residual);
    record.set("converged", f64::from(u8::from(out.converged)));
    record.set("e_profile_1d", prof.energy);
    record.iterations = out.iterations as u64;
    if !out.converged {
        record
            .warnings
            .push(format!("descent stopped at residual {:.3e}", out.residual));
    }
    let set = detect_vortices(&out.psi, cfg.amp_threshold)?;
    record.set("vortex_count", set.len() as f64);
    record.set("total_degree", set.total_degree() as f64);
    record.artifacts.push(emitter.write_field("field.bin", &out.psi, &params)?);
    record
        .artifacts
        .push(emitter.write_density_csv("density.csv", &out.psi)?);
    record.artifacts.push(emitter.write_json("breakdown.json", b)?);
    record.artifacts.push(emitter.write_vortex_csv("vortices.csv", &set)?);
    if emitter.wants("svg") {
        record
            .artifacts
            .push(emitter.write_svg_vortices("vortices.svg", "detected vortices", &set)?);
    }
    Ok(())
}

fn run_vortices(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let path = cfg.field_path.as_ref().expect("validated");
    let file = std::fs::File::open(path).map_err(|e| io_err(std::path::Path::new(path), e))?;
    let (psi, params) =
        Wavefunction2D::read_binary(std::io::BufReader::new(file)).map_err(|e| gpdisc::Error::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
    let set = detect_vortices(&psi, cfg.amp_threshold)?;
    let grid = RadialGrid::uniform(0.0, cfg.profile_n)?;
    let prof = minimize_density_profile(&params, &grid, tolerance(cfg, &params))?;
    let region = bulk_region(&params, &prof, BulkRegime::Moderate)?;
    let report = vorticity_uniformity(&set, &params, &region, 4);
    let tf = tf_solve(&params);
    let zero_free = zero_free_check(&psi, &region, &tf);
    record.set("epsilon", params.epsilon());
    record.set("omega", params.omega());
    record.set("vortex_count", set.len() as f64);
    record.set("total_degree", set.total_degree() as f64);
    record.set("uniformity_ratio", report.global_ratio);
    record.set("uniformity_dispersion", report.dispersion);
    record.set("min_density_bulk", zero_free.min_density);
    record.artifacts.push(emitter.write_vortex_csv("vortices.csv", &set)?);
    record
        .artifacts
        .push(emitter.write_json("uniformity.json", &report)?);
    record
        .artifacts
        .push(emitter.write_json("zero_free.json", &zero_free)?);
    if emitter.wants("svg") {
        record
            .artifacts
            .push(emitter.write_svg_vortices("vortices.svg", "detected vortices", &set)?);
    }
    Ok(())
}

fn run_third_speed(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let opts = ThirdSpeedOptions {
        bracket: cfg.omega0_bracket,
        n_grid: cfg.profile_n,
        ..Default::default()
    };
    let curve = estimate_third_speed(&cfg.eps_list, &opts)?;
    let rows: Vec<Vec<f64>> = curve
        .tf_points
        .iter()
        .map(|p| vec![p.epsilon, p.omega0_star])
        .collect();
    record
        .artifacts
        .push(emitter.write_csv("threshold.csv", &["epsilon", "omega0_star"], &rows)?);
    record.artifacts.push(emitter.write_json("threshold.json", &curve)?);
    if let Some(x) = curve.extrapolated_tf {
        record.set("extrapolated_omega0", x);
    }
    record.set("target", curve.target);
    if let Some(last) = curve.tf_points.last() {
        record.set("omega0_star_finest", last.omega0_star);
    }
    if emitter.wants("svg") {
        let pts: Vec<(f64, f64)> = curve
            .tf_points
            .iter()
            .map(|p| ((1.0 / p.epsilon).ln(), p.omega0_star))
            .collect();
        let target = [
            ((1.0 / cfg.eps_list[0]).ln(), curve.target),
            (
                (1.0 / cfg.eps_list[cfg.eps_list.len() - 1]).ln(),
                curve.target,
            ),
        ];
        record.artifacts.push(emitter.write_svg_line(
            "threshold.svg",
            "third-speed threshold vs |log eps|",
            &[("omega0*", &pts), ("2/(3 pi)", &target)],
        )?);
    }
    Ok(())
}

fn run_symmetry(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let params = params_at(cfg, single_omega(cfg)?)?;
    let grid = RadialGrid::uniform(0.0, cfg.profile_n)?;
    let tol = tolerance(cfg, &params);
    let report = symmetry_report(&params, &grid, tol, &cfg.d_list)?;
    record.set("n_bar", report.n_bar as f64);
    record.set("e_n_bar", report.e_n_bar);
    record.set("mu_n_bar", report.mu_n_bar);
    record.set("r_star", report.r_star);
    record.set("symmetry_broken", f64::from(u8::from(report.symmetry_broken)));
    record.set("tail_mass", report.tail_mass);
    // independent checks at the first requested d
    if let Some(&(d, q_closed)) = report.q_values.first() {
        let search = gpdisc::symmetry::optimize_winding(&params, &grid, tol)?;
        let n_theta = (2 * (report.n_bar.unsigned_abs() as usize + d.unsigned_abs() as usize) + 2)
            .next_power_of_two()
            .max(cfg.ntheta.min(1024));
        let q_fd = second_variation_fd(&params, &search.vortex, d, n_theta, &[1e-3, 5e-4])?;
        let q_qf = second_variation_quadratic_form(&params, &search.vortex, d)?;
        record.set("q_closed_first_d", q_closed);
        record.set("q_fd_first_d", q_fd);
        record.set("q_quadratic_form_first_d", q_qf);
    }
    record.artifacts.push(emitter.write_json("symmetry.json", &report)?);
    let rows: Vec<Vec<f64>> = report
        .q_values
        .iter()
        .map(|&(d, q)| vec![d as f64, q])
        .collect();
    record.artifacts.push(emitter.write_csv("q_vs_d.csv", &["d", "q"], &rows)?);
    if emitter.wants("svg") {
        let pts: Vec<(f64, f64)> = report
            .q_values
            .iter()
            .map(|&(d, q)| (d as f64, q))
            .collect();
        record.artifacts.push(emitter.write_svg_line(
            "q_vs_d.svg",
            "second variation Q vs d",
            &[("Q", &pts)],
        )?);
    }
    Ok(())
}

#[derive(Debug, Clone, serde::Serialize)]
struct SweepPoint {
    omega: f64,
    e2d: f64,
    e_profile: f64,
    e_tf: f64,
    converged: bool,
    vortex_count: usize,
    total_degree: i64,
    uniformity_ratio: f64,
    uniformity_dispersion: f64,
    hole_mass: f64,
    central_mass: f64,
    degree_mid_bulk: f64,
    r_tf: f64,
    iterations: usize,
}

fn run_phase_diagram(
    cfg: &ExperimentConfig,
    emitter: &Emitter,
    record: &mut ResultRecord,
) -> Result<(), gpdisc::Error> {
    let omegas = cfg.omega.points();
    // central probe: the fully developed hole at the top of the sweep
    let top = params_at(cfg, *omegas.last().unwrap())?;
    let central_probe =
        (tf_solve(&top).support_inner() - cfg.epsilon).max(0.0);

    let jsonl_path = std::path::Path::new(&cfg.out_dir).join("points.jsonl");
    let file = OpenOptions::new()
        .create(true)
        .write(true)
        .truncate(true)
        .open(&jsonl_path)
        .map_err(|e| io_err(&jsonl_path, e))?;
    let writer = Mutex::new(std::io::BufWriter::new(file));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| gpdisc::Error::InvalidParams(e.to_string()))?;

    let results: Vec<Result<SweepPoint, gpdisc::Error>> = pool.install(|| {
        omegas
            .par_iter()
            .enumerate()
            .map(|(k, &om)| {
                let point = sweep_point(cfg, om, cfg.seed + k as u64, central_probe)?;
                // persist incrementally so long sweeps survive interruption
                let line = serde_json::to_string(&point).expect("serializable");
                {
                    let mut w = writer.lock().expect("writer lock");
                    writeln!(w, "{line}").map_err(|e| io_err(&jsonl_path, e))?;
                    w.flush().map_err(|e| io_err(&jsonl_path, e))?;
                }
                Ok(point)
            })
            .collect()
    });
    let mut points = Vec::new();
    for r in results {
        points.push(r?);
    }
    points.sort_by(|a, b| a.omega.total_cmp(&b.omega));

    record.artifacts.push(jsonl_path.display().to_string());
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            vec![
                p.omega,
                p.e2d,
                p.e_profile,
                p.e_tf,
                p.vortex_count as f64,
                p.total_degree as f64,
                p.uniformity_ratio,
                p.uniformity_dispersion,
                p.hole_mass,
                p.central_mass,
                p.degree_mid_bulk,
                p.r_tf,
            ]
        })
        .collect();
    record.artifacts.push(emitter.write_csv(
        "phase_diagram.csv",
        &[
            "omega",
            "e2d",
            "e_profile",
            "e_tf",
            "vortex_count",
            "total_degree",
            "uniformity_ratio",
            "uniformity_dispersion",
            "hole_mass",
            "central_mass",
            "degree_mid_bulk",
            "r_tf",
        ],
        &rows,
    )?);
    if emitter.wants("svg") {
        let e_pts: Vec<(f64, f64)> = points.iter().map(|p| (p.omega, p.e2d)).collect();
        let h_pts: Vec<(f64, f64)> = points.iter().map(|p| (p.omega, p.hole_mass)).collect();
        let c_pts: Vec<(f64, f64)> = points.iter().map(|p| (p.omega, p.central_mass)).collect();
        record.artifacts.push(emitter.write_svg_line(
            "energy_vs_omega.svg",
            "GP energy vs Omega",
            &[("E", &e_pts)],
        )?);
        record.artifacts.push(emitter.write_svg_line(
            "hole_mass.svg",
            "hole and central mass vs Omega",
            &[("hole", &h_pts), ("central", &c_pts)],
        )?);
    }
    record.set("points", points.len() as f64);
    Ok(())
}

fn sweep_point(
    cfg: &ExperimentConfig,
    omega_value: f64,
    seed: u64,
    central_probe: f64,
) -> Result<SweepPoint, gpdisc::Error> {
    let params = params_at(cfg, omega_value)?;
    let (out, prof) = minimize_best(cfg, &params, seed)?;
    let tf = tf_solve(&params);
    let set = detect_vortices(&out.psi, cfg.amp_threshold)?;
    // bulk geometry from a fine profile (r_max sits on a flat density top)
    let fine_grid = RadialGrid::uniform(0.0, cfg.profile_n.max(cfg.nr))?;
    let prof_fine = minimize_density_profile(&params, &fine_grid, tolerance(cfg, &params))
        .unwrap_or_else(|_| prof.clone());
    let region = bulk_region(&params, &prof_fine, BulkRegime::Moderate).unwrap_or(BulkRegion {
        r_in: 0.0,
        r_out: prof_fine.r_max,
        regime: BulkRegime::Moderate,
    });
    let uniformity = vorticity_uniformity(&set, &params, &region, 4);
    let hole_probe = (tf.support_inner() - cfg.epsilon).max(0.0);
    let mid = 0.5 * (region.r_in + region.r_out);
    let degree_mid = degree_on_circle(&out.psi, mid)
        .map(|d| d as f64)
        .unwrap_or(f64::NAN);
    Ok(SweepPoint {
        omega: params.omega(),
        e2d: out.breakdown.total,
        e_profile: prof.energy,
        e_tf: tf.energy,
        converged: out.converged,
        vortex_count: set.len(),
        total_degree: set.total_degree(),
        uniformity_ratio: uniformity.global_ratio,
        uniformity_dispersion: uniformity.dispersion,
        hole_mass: out.psi.mass_inside(hole_probe),
        central_mass: out.psi.mass_inside(central_probe),
        degree_mid_bulk: degree_mid,
        r_tf: tf.support_inner(),
        iterations: out.iterations,
    })
}
