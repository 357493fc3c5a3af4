//! Direct numerical evaluation of the k-space integrals that define the
//! diffusion constants, used to cross-check the closed forms.
//!
//! With `κ = r_C k` the integrals become
//!
//! ```text
//! η_V = λ (m/m₀)² / (π^{3/2} r_C²) ∫ d³κ e^{−κ²} κ_x² |F(κ)|²
//! η_R = λ (m/m₀)² /  π^{3/2}       ∫ d³κ e^{−κ²} |κ_y ∂_z F − κ_z ∂_y F|²
//! ```
//!
//! where `F = μ̃/m` is the normalised form factor. Both bodies have form
//! factors that factorise over coordinates (cylindrical for the cylinder,
//! Cartesian for the cube), so the three-dimensional Gauss–Legendre sum is
//! accumulated as a product of one-dimensional sums. Each radial or axial
//! sum uses a composite rule with one panel per half-period of the
//! form-factor oscillation.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::quadrature::GaussLegendre;
use super::{CslParams, CubeGeometry, CylinderGeometry, DiffusionKind};
use crate::error::{Error, Result};
use crate::physcore::Constants;

/// Relative accuracy the refinement loop aims for.
pub const ORACLE_TARGET: f64 = 1e-4;
const MAX_LEVELS: usize = 3;
const MIN_PANEL_NODES: usize = 8;
const MIN_PANELS: usize = 4;

/// Above this argument the disc form factor is integrated along a deformed contour.
const DISC_CONTOUR_LIMIT: f64 = 30.0;

/// Resolution of the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Angular nodes; each composite panel gets a quarter of this (at least 8).
    pub nodes_per_axis: usize,
    /// Integration extends to `|k| ≤ k_cutoff_factor / r_C`.
    pub k_cutoff_factor: f64,
    /// Finite-difference step in the dimensionless form-factor argument.
    pub fd_step_factor: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { nodes_per_axis: 32, k_cutoff_factor: 8.0, fd_step_factor: 1e-3 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_axis < 32 {
            return Err(Error::InvalidConfig(format!(
                "nodes_per_axis must be at least 32, got {}",
                self.nodes_per_axis
            )));
        }
        if !(self.k_cutoff_factor >= 6.0 && self.k_cutoff_factor.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "k_cutoff_factor must be at least 6, got {}",
                self.k_cutoff_factor
            )));
        }
        if !(self.fd_step_factor > 0.0 && self.fd_step_factor <= 1e-3) {
            return Err(Error::InvalidConfig(format!(
                "fd_step_factor must lie in (0, 1e-3], got {}",
                self.fd_step_factor
            )));
        }
        Ok(())
    }
}

/// Shape handed to the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Body {
    Cylinder(CylinderGeometry<f64>),
    Cube(CubeGeometry<f64>),
}

impl From<CylinderGeometry<f64>> for Body {
    fn from(g: CylinderGeometry<f64>) -> Self {
        Body::Cylinder(g)
    }
}

impl From<CubeGeometry<f64>> for Body {
    fn from(g: CubeGeometry<f64>) -> Self {
        Body::Cube(g)
    }
}

/// Cartesian axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Oracle result with the relative change over the last refinement step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEstimate {
    pub value: f64,
    pub rel_error_estimate: f64,
}

/// Numerical value of the diffusion constant of `kind` for `body`.
pub fn eta_numeric_oracle(
    body: &Body,
    kind: DiffusionKind,
    csl: &CslParams<f64>,
    cfg: &QuadratureConfig,
) -> Result<OracleEstimate> {
    match body {
        Body::Cylinder(g) => {
            refine(cfg, csl, g.mass(), kind, |level| cylinder_integral(g, kind, csl.r_c(), cfg, level))
        }
        Body::Cube(g) => match kind {
            DiffusionKind::VibSym => Err(Error::UnsupportedKind { kind: "vib_sym", shape: "cube" }),
            DiffusionKind::VibPerp => refine(cfg, csl, g.mass(), kind, |level| {
                cuboid_integral([g.side(); 3], kind, Axis::X, csl.r_c(), cfg, level)
            }),
            DiffusionKind::Rot => cube_rotation_oracle(g, Axis::X, csl, cfg),
        },
    }
}

/// Rotational oracle for the cube about an arbitrary face normal.
pub fn cube_rotation_oracle(
    geom: &CubeGeometry<f64>,
    axis: Axis,
    csl: &CslParams<f64>,
    cfg: &QuadratureConfig,
) -> Result<OracleEstimate> {
    refine(cfg, csl, geom.mass(), DiffusionKind::Rot, |level| {
        cuboid_integral([geom.side(); 3], DiffusionKind::Rot, axis, csl.r_c(), cfg, level)
    })
}

fn refine<F>(
    cfg: &QuadratureConfig,
    csl: &CslParams<f64>,
    mass: f64,
    kind: DiffusionKind,
    mut integral: F,
) -> Result<OracleEstimate>
where
    F: FnMut(usize) -> Result<f64>,
{
    cfg.validate()?;
    if csl.lambda() == 0.0 {
        return Ok(OracleEstimate { value: 0.0, rel_error_estimate: 0.0 });
    }
    let ratio = mass / Constants::M0;
    let mut prefactor = csl.lambda() * ratio * ratio / std::f64::consts::PI.powf(1.5);
    if !kind.is_rotational() {
        prefactor /= csl.r_c() * csl.r_c();
    }

    let mut previous = integral(0)?;
    let mut rel = f64::INFINITY;
    for level in 1..MAX_LEVELS {
        let current = integral(level)?;
        rel = ((current - previous) / current).abs();
        previous = current;
        if rel <= ORACLE_TARGET {
            break;
        }
    }
    if !(rel <= 10.0 * ORACLE_TARGET) {
        let coarse = previous * (1.0 - rel);
        return Err(Error::OracleConvergence { coarse: coarse * prefactor, fine: previous * prefactor });
    }
    let value = previous * prefactor;
    if !value.is_finite() {
        return Err(Error::NonFinite("eta_numeric_oracle"));
    }
    Ok(OracleEstimate { value, rel_error_estimate: rel })
}

fn panel_nodes(cfg: &QuadratureConfig, level: usize) -> usize {
    (cfg.nodes_per_axis / 4).max(MIN_PANEL_NODES) << level
}

/// Composite rule on `[0, kmax]` with one panel per `π` of the argument `κ·scale`.
fn radial_rule(rule: &GaussLegendre, kmax: f64, scale: f64) -> Vec<(f64, f64)> {
    let panels = ((kmax * scale / std::f64::consts::PI).ceil() as usize).max(MIN_PANELS);
    rule.composite(0.0, kmax, panels)
}

/// Central difference with one Richardson step.
fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

fn sinc(v: f64) -> f64 {
    if v == 0.0 {
        1.0
    } else {
        v.sin() / v
    }
}

/// Normalised Fourier transform of a uniform unit disc, `(2/π)∫₋₁¹ √(1−t²) cos(ut) dt`.
pub fn disc_form_factor(u: f64) -> f64 {
    let u = u.abs();
    if u <= DISC_CONTOUR_LIMIT {
        disc_form_factor_trapezoid(u)
    } else {
        disc_form_factor_contour(u)
    }
}

/// `(1/π)∫₀^{2π} cos(u sin φ) cos²φ dφ`; the periodic trapezoid rule converges
/// geometrically once the node count exceeds `u`.
fn disc_form_factor_trapezoid(u: f64) -> f64 {
    let n = ((u + 12.0 * u.cbrt() + 64.0) / 4.0).ceil() as usize * 4;
    let quarter = n / 4;
    let step = std::f64::consts::TAU / n as f64;
    let interior: f64 = (1..quarter)
        .map(|j| {
            let (s, c) = (j as f64 * step).sin_cos();
            (u * s).cos() * c * c
        })
        .sum();
    // φ = 0 and φ = π contribute 1 each, φ = ±π/2 contribute 0.
    2.0 * (2.0 + 4.0 * interior) / n as f64
}

/// The same integral with both ends pushed up the imaginary axis:
/// `(4/π) u^{−3/2} Im(e^{iu} ∫₀^∞ 2w² e^{−w²} √(w²/u − 2i) dw)`.
fn disc_form_factor_contour(u: f64) -> f64 {
    let sum: Complex64 =
        contour_rule().iter().map(|&(w, weight)| weight * (Complex64::new(w * w / u, -2.0)).sqrt()).sum();
    let phase = Complex64::new(u.cos(), u.sin());
    4.0 / std::f64::consts::PI * (phase * sum).im / (u * u.sqrt())
}

fn contour_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let rule = GaussLegendre::new(12).expect("fixed rule");
        rule.composite(0.0, 8.0, 8).into_iter().map(|(w, weight)| (w, weight * 2.0 * w * w * (-w * w).exp())).collect()
    })
}

/// Cylinder integral in units where `r_C = 1` (without the prefactor).
fn cylinder_integral(
    geom: &CylinderGeometry<f64>,
    kind: DiffusionKind,
    r_c: f64,
    cfg: &QuadratureConfig,
    level: usize,
) -> Result<f64> {
    let rho = geom.radius() / r_c;
    let ell = geom.length() / (2.0 * r_c);
    let kmax = cfg.k_cutoff_factor;
    let h = cfg.fd_step_factor;
    let rule = GaussLegendre::new(panel_nodes(cfg, level))?;
    let angular = GaussLegendre::new(cfg.nodes_per_axis)?;
    let half_pi = std::f64::consts::FRAC_PI_2;

    let radial = radial_rule(&rule, kmax, rho);
    let axial = radial_rule(&rule, kmax, ell);

    let value = match kind {
        DiffusionKind::VibPerp => {
            let r: f64 =
                radial.iter().map(|&(k, w)| w * k * k * k * disc_form_factor(k * rho).powi(2) * (-k * k).exp()).sum();
            let t = angular.integrate(0.0, half_pi, |t| t.cos().powi(2));
            let z: f64 = axial.iter().map(|&(k, w)| w * sinc(k * ell).powi(2) * (-k * k).exp()).sum();
            8.0 * r * t * z
        }
        DiffusionKind::VibSym => {
            let r: f64 = radial.iter().map(|&(k, w)| w * k * disc_form_factor(k * rho).powi(2) * (-k * k).exp()).sum();
            let t = angular.integrate(0.0, half_pi, |_| 1.0);
            let z: f64 = axial.iter().map(|&(k, w)| w * k * k * sinc(k * ell).powi(2) * (-k * k).exp()).sum();
            8.0 * r * t * z
        }
        DiffusionKind::Rot => {
            // |κ_ρ F ℓ s' − κ_z ρ F' s|² sin²θ with F(κ_ρ ρ), s(κ_z ℓ).
            let (mut r3, mut r2, mut r1) = (0.0, 0.0, 0.0);
            for &(k, w) in &radial {
                let u = k * rho;
                let f = disc_form_factor(u);
                let fp = derivative(disc_form_factor, u, h);
                let g = w * (-k * k).exp();
                r3 += g * k * k * k * f * f;
                r2 += g * k * k * f * fp;
                r1 += g * k * fp * fp;
            }
            let (mut z0, mut z1, mut z2) = (0.0, 0.0, 0.0);
            for &(k, w) in &axial {
                let v = k * ell;
                let s = sinc(v);
                let sp = derivative(sinc, v, h);
                let g = w * (-k * k).exp();
                z0 += g * sp * sp;
                z1 += g * k * s * sp;
                z2 += g * k * k * s * s;
            }
            let t = angular.integrate(0.0, half_pi, |t| t.sin().powi(2));
            8.0 * t * (ell * ell * r3 * z0 - 2.0 * ell * rho * r2 * z1 + rho * rho * r1 * z2)
        }
    };
    Ok(value)
}

/// One-dimensional sums for a cuboid edge of half-length `ell` (in units of `r_C`).
struct EdgeSums {
    /// `Σ w s² G`
    x0: f64,
    /// `Σ w κ² s² G`
    x2: f64,
    /// `Σ w (ℓ s')² G`
    y: f64,
    /// `Σ w κ s ℓ s' G`
    z: f64,
}

fn edge_sums(rule: &GaussLegendre, kmax: f64, ell: f64, h: f64, with_derivative: bool) -> EdgeSums {
    let mut out = EdgeSums { x0: 0.0, x2: 0.0, y: 0.0, z: 0.0 };
    for (k, w) in radial_rule(rule, kmax, ell) {
        let v = k * ell;
        let s = sinc(v);
        let g = w * (-k * k).exp();
        out.x0 += g * s * s;
        out.x2 += g * k * k * s * s;
        if with_derivative {
            let sp = ell * derivative(sinc, v, h);
            out.y += g * sp * sp;
            out.z += g * k * s * sp;
        }
    }
    out
}

/// Cuboid with the given sides; vibration along `axis`, or rotation about it.
fn cuboid_integral(
    sides: [f64; 3],
    kind: DiffusionKind,
    axis: Axis,
    r_c: f64,
    cfg: &QuadratureConfig,
    level: usize,
) -> Result<f64> {
    let rule = GaussLegendre::new(panel_nodes(cfg, level))?;
    let rot = kind.is_rotational();
    let sums: Vec<EdgeSums> = sides
        .iter()
        .map(|&s| edge_sums(&rule, cfg.k_cutoff_factor, s / (2.0 * r_c), cfg.fd_step_factor, rot))
        .collect();
    let a = axis.index();
    let (b, c) = ((a + 1) % 3, (a + 2) % 3);
    let (sa, sb, sc) = (&sums[a], &sums[b], &sums[c]);
    Ok(if rot { 8.0 * sa.x0 * (sb.x2 * sc.y - 2.0 * sb.z * sc.z + sb.y * sc.x2) } else { 8.0 * sa.x2 * sb.x0 * sc.x0 })
}
