//! One table-producing function per subcommand.

use cslbounds_core::bounds::{
    exclusion_curve, lisa_lambda_bound, lisa_torque_dns, lisa_vibrational_bound, log_grid, scan_geometry, LabScenario,
    Scenario as BoundScenario,
};
use cslbounds_core::diffusion::{eta_cube, eta_cylinder, eta_numeric_oracle};
use cslbounds_core::environment::gas_damping;
use cslbounds_core::optomech::{
    dns, effective_params_with, excess_temperature, frequency_grid, solve_steady_state, DnsOptions, MechanicalMode,
    ModeKind,
};
use cslbounds_core::{Body, CslParams, CubeGeometry, CylinderGeometry, DiffusionKind, QuadratureConfig};
use rayon::prelude::*;

use crate::output::{Cell, Table};
use crate::scenario::Scenario;
use crate::{CliError, Command};

/// Largest closed-form vs oracle deviation `verify-oracle` accepts.
pub const ORACLE_TOLERANCE: f64 = 1e-3;

/// Aspect ratios R/L and sizes L/r_C of the verification grid.
pub const VERIFY_CYLINDER_ASPECTS: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];
pub const VERIFY_CYLINDER_SIZES: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];
pub const VERIFY_CUBE_SIZES: [f64; 4] = [0.1, 1.0, 10.0, 100.0];

/// The output table plus a verdict that turns into the exit status after the
/// table has been written.
pub fn execute(cmd: &Command, scn: &Scenario) -> Result<(Table, Result<(), CliError>), CliError> {
    let table = match cmd {
        Command::Eta { oracle, .. } => eta_table(scn, *oracle)?,
        Command::Damping(_) => damping_table(scn)?,
        Command::Dns(_) => dns_table(scn)?,
        Command::Temperature(_) => temperature_table(scn)?,
        Command::ScanGeometry(_) => scan_geometry_table(scn)?,
        Command::Exclusion(_) => exclusion_table(scn)?,
        Command::Lisa(_) => lisa_table(scn)?,
        Command::VerifyOracle(_) => {
            let (table, worst) = verify_oracle_table(scn)?;
            let verdict = if worst <= ORACLE_TOLERANCE {
                Ok(())
            } else {
                Err(CliError::Numerical(format!(
                    "closed forms deviate from the oracle by {worst:e}, above {ORACLE_TOLERANCE:e}"
                )))
            };
            return Ok((table, verdict));
        }
    };
    Ok((table, Ok(())))
}

fn kinds(body: &Body) -> &'static [DiffusionKind] {
    match body {
        Body::Cylinder(_) => &DiffusionKind::ALL,
        Body::Cube(_) => &[DiffusionKind::VibPerp, DiffusionKind::Rot],
    }
}

fn closed_form(body: &Body, kind: DiffusionKind, csl: &CslParams) -> cslbounds_core::Result<f64> {
    match body {
        Body::Cylinder(g) => eta_cylinder(g, kind, csl),
        Body::Cube(g) => eta_cube(g, kind, csl),
    }
}

fn quadrature(scn: &Scenario) -> Result<QuadratureConfig, CliError> {
    let cfg = QuadratureConfig { nodes_per_axis: scn.scan.oracle_nodes, ..QuadratureConfig::default() };
    cfg.validate()?;
    Ok(cfg)
}

pub fn eta_table(scn: &Scenario, with_oracle: bool) -> Result<Table, CliError> {
    let mut cols = vec!["kind", "eta"];
    if with_oracle {
        cols.extend(["eta_oracle", "oracle_rel_error_estimate", "rel_deviation"]);
    }
    let mut t = Table::new(cols);
    let cfg = quadrature(scn)?;
    for &kind in kinds(&scn.body) {
        let eta = closed_form(&scn.body, kind, &scn.csl)?;
        let mut row: Vec<Cell> = vec![kind.name().into(), eta.into()];
        if with_oracle {
            let o = eta_numeric_oracle(&scn.body, kind, &scn.csl, &cfg)?;
            row.extend([o.value.into(), o.rel_error_estimate.into(), (eta / o.value - 1.0).abs().into()]);
        }
        t.push(row)?;
    }
    Ok(t)
}

pub fn damping_table(scn: &Scenario) -> Result<Table, CliError> {
    let g = scn.cylinder("damping")?;
    let d = gas_damping(&g, &scn.gas("damping")?);
    let mut t = Table::new([
        "gamma_vib_s-1",
        "gamma_vib_sym_s-1",
        "d_phi_N_m_s",
        "epsilon_vib_kg_s-1",
        "epsilon_vib_sym_kg_s-1",
    ]);
    t.push(vec![
        d.gamma_vib.into(),
        d.gamma_vib_sym.into(),
        d.d_phi.into(),
        d.epsilon_vib.into(),
        d.epsilon_vib_sym.into(),
    ])?;
    Ok(t)
}

pub fn temperature_table(scn: &Scenario) -> Result<Table, CliError> {
    let g = scn.cylinder("temperature")?;
    let d = gas_damping(&g, &scn.gas("temperature")?);
    let mut t = Table::new(["kind", "eta", "epsilon", "delta_t_K"]);
    for kind in DiffusionKind::ALL {
        let eta = eta_cylinder(&g, kind, &scn.csl)?;
        let eps = d.epsilon(kind);
        t.push(vec![kind.name().into(), eta.into(), eps.into(), excess_temperature(eta, eps)?.into()])?;
    }
    Ok(t)
}

pub fn dns_table(scn: &Scenario) -> Result<Table, CliError> {
    let g = scn.cylinder("dns")?;
    let env = scn.gas("dns")?;
    let cavity = scn.cavity("dns")?;
    let trap = scn.trap("dns")?;
    let damping = gas_damping(&g, &env);
    let vib = MechanicalMode::vibration(&g, trap.omega_vib, &damping, &cavity)?;
    let rot = MechanicalMode::rotation(&g, trap.omega_rot, &damping, &cavity)?;
    let ss = solve_steady_state(&cavity, &vib, &rot)?;
    let opts = DnsOptions { photon_number: scn.photon_number, ..DnsOptions::default() };

    let mut t = Table::new(["mode", "omega_rad_s", "dns_two_sided", "dns_two_sided_no_csl"]);
    for (mode, kind) in [(vib, DiffusionKind::VibPerp), (rot, DiffusionKind::Rot)] {
        let name = match mode.kind() {
            ModeKind::Vibration => "vibration",
            ModeKind::Rotation => "rotation",
        };
        let (w_sq, gamma) = effective_params_with(&cavity, &mode, &ss, mode.resonance(), scn.photon_number);
        if !(w_sq > 0.0) || !(gamma > 0.0) {
            return Err(CliError::Numerical(format!(
                "{name} mode is unstable in the optical spring (omega_eff^2 = {w_sq:e}, gamma = {gamma:e})"
            )));
        }
        let grid = frequency_grid(w_sq.sqrt(), gamma, scn.scan.dns_span_linewidths, scn.scan.dns_points)?;
        let eta = eta_cylinder(&g, kind, &scn.csl)?;
        let with = dns(&mode, &cavity, &ss, &env, eta, &grid, &opts)?;
        let without = dns(&mode, &cavity, &ss, &env, 0.0, &grid, &opts)?;
        for ((w, s), s0) in grid.iter().zip(&with.values).zip(&without.values) {
            t.push(vec![name.into(), (*w).into(), (*s).into(), (*s0).into()])?;
        }
    }
    Ok(t)
}

pub fn scan_geometry_table(scn: &Scenario) -> Result<Table, CliError> {
    let g = scn.cylinder("scan-geometry")?;
    let env = scn.gas("scan-geometry")?;
    let s = &scn.scan;
    let aspects = log_grid(s.aspect_min, s.aspect_max, s.aspect_points)?;
    let rows = scan_geometry(g.mass(), &aspects, &env, &scn.csl, scn.density)?;
    let mut t = Table::new([
        "aspect_R_over_L",
        "radius_m",
        "length_m",
        "delta_t_vib_perp_K",
        "delta_t_vib_sym_K",
        "delta_t_rot_K",
    ]);
    for r in rows {
        t.push(vec![
            r.aspect.into(),
            r.radius.into(),
            r.length.into(),
            r.delta_t_vib_perp.into(),
            r.delta_t_vib_sym.into(),
            r.delta_t_rot.into(),
        ])?;
    }
    Ok(t)
}

fn r_c_grid(scn: &Scenario) -> Result<Vec<f64>, CliError> {
    Ok(log_grid(scn.scan.r_c_min, scn.scan.r_c_max, scn.scan.r_c_points)?)
}

/// The bound the `exclusion` subcommand maps for this scenario.
pub fn bound_scenario(scn: &Scenario) -> Result<BoundScenario, CliError> {
    match scn.body {
        Body::Cylinder(g) => {
            Ok(BoundScenario::Lab(LabScenario::new(g, scn.gas("exclusion")?, scn.delta_t, scn.readout_kind)?))
        }
        Body::Cube(_) => Ok(BoundScenario::Lisa(scn.lisa("exclusion")?)),
    }
}

pub fn exclusion_table(scn: &Scenario) -> Result<Table, CliError> {
    let curve = exclusion_curve(&bound_scenario(scn)?, &r_c_grid(scn)?, &scn.id)?;
    let mut t = Table::new(["r_c_m", "lambda_max_s-1"]);
    for &(r, l) in curve.points() {
        t.push(vec![r.into(), l.into()])?;
    }
    Ok(t)
}

pub fn lisa_table(scn: &Scenario) -> Result<Table, CliError> {
    let lisa = scn.lisa("lisa")?;
    let s_tau = lisa_torque_dns(&lisa);
    let grid = r_c_grid(scn)?;
    let rows = grid
        .par_iter()
        .map(|&r| Ok((r, lisa_lambda_bound(&lisa, r)?, lisa_vibrational_bound(&lisa, r)?)))
        .collect::<cslbounds_core::Result<Vec<_>>>()?;
    let mut t = Table::new(["r_c_m", "lambda_max_rot_s-1", "lambda_max_vib_s-1", "vib_over_rot", "torque_dns_N2m2_Hz"]);
    for (r, rot, vib) in rows {
        t.push(vec![r.into(), rot.into(), vib.into(), (vib / rot).into(), s_tau.into()])?;
    }
    Ok(t)
}

/// Closed forms against the oracle at the scenario's r_C; returns the table and
/// the worst relative deviation.
pub fn verify_oracle_table(scn: &Scenario) -> Result<(Table, f64), CliError> {
    let rc = scn.csl.r_c();
    let csl = CslParams::new(1.0, rc)?;
    let cfg = quadrature(scn)?;
    let mass = 1e-15;
    let mut cases: Vec<(Body, f64, f64, DiffusionKind)> = Vec::new();
    for &aspect in &VERIFY_CYLINDER_ASPECTS {
        for &size in &VERIFY_CYLINDER_SIZES {
            let l = size * rc;
            let body = Body::Cylinder(CylinderGeometry::new(aspect * l, l, mass)?);
            cases.extend(DiffusionKind::ALL.iter().map(|&k| (body, aspect, size, k)));
        }
    }
    for &size in &VERIFY_CUBE_SIZES {
        let body = Body::Cube(CubeGeometry::new(size * rc, mass)?);
        cases.extend([DiffusionKind::VibPerp, DiffusionKind::Rot].map(|k| (body, 1.0, size, k)));
    }
    let results = cases
        .par_iter()
        .map(|(body, _, _, kind)| {
            let closed = closed_form(body, *kind, &csl)?;
            let oracle = eta_numeric_oracle(body, *kind, &csl, &cfg)?;
            Ok((closed, oracle.value))
        })
        .collect::<cslbounds_core::Result<Vec<_>>>()?;

    let mut t = Table::new([
        "shape",
        "aspect_R_over_L",
        "size_L_over_r_c",
        "kind",
        "eta_closed",
        "eta_oracle",
        "rel_deviation",
    ]);
    let mut worst = 0.0_f64;
    for ((body, aspect, size, kind), (closed, oracle)) in cases.iter().zip(results) {
        let dev = (closed / oracle - 1.0).abs();
        worst = worst.max(dev);
        let shape = match body {
            Body::Cylinder(_) => "cylinder",
            Body::Cube(_) => "cube",
        };
        t.push(vec![
            shape.into(),
            (*aspect).into(),
            (*size).into(),
            kind.name().into(),
            closed.into(),
            oracle.into(),
            dev.into(),
        ])?;
    }
    Ok((t, worst))
}
