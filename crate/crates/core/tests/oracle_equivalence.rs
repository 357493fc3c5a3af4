use cslbounds_core::diffusion::{cube_rotation_oracle, eta_cube, eta_cylinder, eta_numeric_oracle};
use cslbounds_core::{Axis, Body, CslParams, CubeGeometry, CylinderGeometry, DiffusionKind, QuadratureConfig};

const TOL: f64 = 1e-3;

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

#[test]
fn cylinder_grid() {
    let rc = 1e-7;
    let csl = CslParams::new(1.0, rc).unwrap();
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0_f64;
    for &aspect in &[0.01, 0.1, 1.0, 10.0, 100.0] {
        for &l_over_rc in &[0.01, 0.1, 1.0, 10.0, 100.0] {
            let l = l_over_rc * rc;
            let g = CylinderGeometry::new(aspect * l, l, 1e-15).unwrap();
            for kind in DiffusionKind::ALL {
                let closed = eta_cylinder(&g, kind, &csl).unwrap();
                let oracle = eta_numeric_oracle(&Body::Cylinder(g), kind, &csl, &cfg).unwrap();
                let d = rel(closed, oracle.value);
                worst = worst.max(d);
                assert!(d <= TOL, "R/L={aspect} L/rc={l_over_rc} {kind}: {closed:e} vs {:e}", oracle.value);
            }
        }
    }
    println!("cylinder grid worst relative deviation {worst:e}");
}

#[test]
fn cube_grid() {
    let rc = 1e-7;
    let csl = CslParams::new(1.0, rc).unwrap();
    let cfg = QuadratureConfig::default();
    for &l_over_rc in &[0.1, 1.0, 10.0, 100.0] {
        let g = CubeGeometry::new(l_over_rc * rc, 1e-15).unwrap();
        for kind in [DiffusionKind::VibPerp, DiffusionKind::Rot] {
            let closed = eta_cube(&g, kind, &csl).unwrap();
            let oracle = eta_numeric_oracle(&Body::Cube(g), kind, &csl, &cfg).unwrap();
            assert!(rel(closed, oracle.value) <= TOL, "L/rc={l_over_rc} {kind}: {closed:e} vs {:e}", oracle.value);
        }
    }
}

#[test]
fn flat_silica_disc_rotation() {
    let csl = CslParams::new(1.0, 1e-7).unwrap();
    let g = CylinderGeometry::from_mass_and_aspect(1e-8, 100.0, 2200.0).unwrap();
    let closed = eta_cylinder(&g, DiffusionKind::Rot, &csl).unwrap();
    let oracle =
        eta_numeric_oracle(&Body::Cylinder(g), DiffusionKind::Rot, &csl, &QuadratureConfig::default()).unwrap();
    assert!(rel(closed, oracle.value) <= TOL, "{closed:e} vs {:e}", oracle.value);
}

#[test]
fn space_test_mass_rotation() {
    let csl = CslParams::new(1.0, 1e-7).unwrap();
    let g = CubeGeometry::new(0.046, 1.928).unwrap();
    let closed = eta_cube(&g, DiffusionKind::Rot, &csl).unwrap();
    let oracle = eta_numeric_oracle(&Body::Cube(g), DiffusionKind::Rot, &csl, &QuadratureConfig::default()).unwrap();
    assert!(rel(closed, oracle.value) <= TOL, "{closed:e} vs {:e}", oracle.value);
}

#[test]
fn cube_rotation_is_isotropic() {
    let csl = CslParams::new(1.0, 1e-7).unwrap();
    let cfg = QuadratureConfig::default();
    for &side in &[3e-8, 4e-7, 2e-6] {
        let g = CubeGeometry::new(side, 1e-15).unwrap();
        let x = cube_rotation_oracle(&g, Axis::X, &csl, &cfg).unwrap();
        for axis in [Axis::Y, Axis::Z] {
            let other = cube_rotation_oracle(&g, axis, &csl, &cfg).unwrap();
            assert!(rel(other.value, x.value) <= x.rel_error_estimate.max(1e-12), "{axis:?}");
        }
    }
}

#[test]
fn oracle_is_linear_in_rate() {
    let cfg = QuadratureConfig::default();
    let g = CylinderGeometry::new(2e-7, 3e-7, 1e-15).unwrap();
    let c1 = CslParams::new(1.0, 1e-7).unwrap();
    let c2 = CslParams::new(2.0, 1e-7).unwrap();
    for kind in DiffusionKind::ALL {
        let a = eta_numeric_oracle(&Body::Cylinder(g), kind, &c1, &cfg).unwrap().value;
        let b = eta_numeric_oracle(&Body::Cylinder(g), kind, &c2, &cfg).unwrap().value;
        assert_eq!(b, 2.0 * a);
    }
}

#[test]
fn cube_alpha_matches_oracle_ratio() {
    let rc = 1e-7;
    let g = CubeGeometry::new(rc, 1e-15).unwrap();
    let csl = CslParams::new(1.0, rc).unwrap();
    let cfg = QuadratureConfig::default();
    let rot = eta_numeric_oracle(&Body::Cube(g), DiffusionKind::Rot, &csl, &cfg).unwrap().value;
    let vib = eta_numeric_oracle(&Body::Cube(g), DiffusionKind::VibPerp, &csl, &cfg).unwrap().value;
    let alpha = cslbounds_core::bounds::alpha_csl(&g, rc).unwrap();
    assert!(rel(alpha, rot / (vib * rc * rc)) <= 2e-3);
}
