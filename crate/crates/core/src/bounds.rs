//! Upper bounds on the collapse rate λ as a function of r_C.
//!
//! Every CSL observable here is linear in λ, so bounds are evaluated once at
//! λ = 1 s⁻¹ and rescaled.

use rayon::prelude::*;

use crate::diffusion::{eta_cube, eta_cylinder, CslParams, CubeGeometry, CylinderGeometry, DiffusionKind};
use crate::environment::{gas_damping, GasEnvironment};
use crate::error::{Error, Result};
use crate::optomech::excess_temperature;
use crate::physcore::Constants;

/// Fused silica [kg/m³].
pub const SILICA_DENSITY: f64 = 2200.0;

/// Gas-noise torque-to-force ratio (per L²) for the space test mass.
pub const LISA_TORQUE_FACTOR: f64 = 0.04;

fn unit_rate(r_c: f64) -> Result<CslParams<f64>> {
    CslParams::new(1.0, r_c)
}

/// Cylinder in a gas, read out by bath temperature with accuracy δT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabScenario {
    pub geometry: CylinderGeometry<f64>,
    pub environment: GasEnvironment,
    pub delta_t_accuracy: f64,
    pub mode_kind: DiffusionKind,
}

impl LabScenario {
    pub fn new(
        geometry: CylinderGeometry<f64>,
        environment: GasEnvironment,
        delta_t_accuracy: f64,
        mode_kind: DiffusionKind,
    ) -> Result<Self> {
        if !(delta_t_accuracy > 0.0 && delta_t_accuracy.is_finite()) {
            return Err(Error::domain(format!("temperature accuracy must be positive, got {delta_t_accuracy} K")));
        }
        Ok(Self { geometry, environment, delta_t_accuracy, mode_kind })
    }

    /// ΔT_CSL at λ = 1 s⁻¹.
    pub fn excess_temperature_unit_rate(&self, r_c: f64) -> Result<f64> {
        let eta = eta_cylinder(&self.geometry, self.mode_kind, &unit_rate(r_c)?)?;
        let eps = gas_damping(&self.geometry, &self.environment).epsilon(self.mode_kind);
        excess_temperature(eta, eps)
    }
}

/// Cubic test mass with measured force noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LisaScenario {
    pub cube: CubeGeometry<f64>,
    /// Force noise S_F [N²/Hz].
    pub force_dns: f64,
    pub torque_factor: f64,
    /// Replaces `torque_factor · S_F · L²` when set [N²m²/Hz].
    pub torque_dns_override: Option<f64>,
    /// ½ for a differential measurement of two masses.
    pub differential_factor: f64,
    /// 2 for converting a two-sided spectrum to one-sided.
    pub sided_factor: f64,
    /// Distance between the two test masses [m]; informational.
    pub mass_separation: f64,
}

impl LisaScenario {
    pub fn new(cube: CubeGeometry<f64>, force_dns: f64) -> Result<Self> {
        let s = Self {
            cube,
            force_dns,
            torque_factor: LISA_TORQUE_FACTOR,
            torque_dns_override: None,
            differential_factor: 0.5,
            sided_factor: 2.0,
            mass_separation: 0.376,
        };
        s.validate()?;
        Ok(s)
    }

    /// The flight test mass: 4.6 cm, 1.928 kg cube with S_F = 3.15e-30 N²/Hz.
    pub fn pathfinder() -> Self {
        Self::new(CubeGeometry::new(0.046, 1.928).expect("valid cube"), 3.15e-30).expect("valid scenario")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.force_dns > 0.0 && self.force_dns.is_finite()) {
            return Err(Error::domain(format!("force noise must be positive, got {}", self.force_dns)));
        }
        for (name, v) in [("differential factor", self.differential_factor), ("sided factor", self.sided_factor)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.torque_factor >= 0.0 && self.torque_factor.is_finite()) {
            return Err(Error::domain(format!("torque factor must be non-negative, got {}", self.torque_factor)));
        }
        if let Some(s) = self.torque_dns_override {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::domain(format!("torque noise override must be positive, got {s}")));
            }
        }
        Ok(())
    }

    fn csl_noise_factor(&self) -> f64 {
        self.differential_factor * self.sided_factor * Constants::HBAR * Constants::HBAR
    }
}

/// Torque noise S_τ [N²m²/Hz]: the override if set, else `torque_factor · S_F · L²`.
pub fn lisa_torque_dns(scn: &LisaScenario) -> f64 {
    scn.torque_dns_override.unwrap_or_else(|| scn.torque_factor * scn.force_dns * scn.cube.side() * scn.cube.side())
}

/// λ_max from rotational (torque) noise.
pub fn lisa_lambda_bound(scn: &LisaScenario, r_c: f64) -> Result<f64> {
    scn.validate()?;
    let eta = eta_cube(&scn.cube, DiffusionKind::Rot, &unit_rate(r_c)?)?;
    Ok(lisa_torque_dns(scn) / (scn.csl_noise_factor() * eta))
}

/// λ_max from translational (force) noise.
pub fn lisa_vibrational_bound(scn: &LisaScenario, r_c: f64) -> Result<f64> {
    scn.validate()?;
    let eta = eta_cube(&scn.cube, DiffusionKind::VibPerp, &unit_rate(r_c)?)?;
    Ok(scn.force_dns / (scn.csl_noise_factor() * eta))
}

/// `δT / ΔT_CSL(λ = 1)`.
pub fn lambda_max_temperature(scn: &LabScenario, r_c: f64) -> Result<f64> {
    Ok(scn.delta_t_accuracy / scn.excess_temperature_unit_rate(r_c)?)
}

/// `η_R / (η_V L²)` for a cube.
pub fn alpha_csl(geom: &CubeGeometry<f64>, r_c: f64) -> Result<f64> {
    let csl = unit_rate(r_c)?;
    let rot = eta_cube(geom, DiffusionKind::Rot, &csl)?;
    let vib = eta_cube(geom, DiffusionKind::VibPerp, &csl)?;
    Ok(rot / (vib * geom.side() * geom.side()))
}

/// Source of an exclusion curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    Lab(LabScenario),
    /// Rotational bound from the torque noise.
    Lisa(LisaScenario),
    /// Translational bound from the force noise.
    LisaVibrational(LisaScenario),
}

impl Scenario {
    pub fn lambda_max(&self, r_c: f64) -> Result<f64> {
        match self {
            Scenario::Lab(s) => lambda_max_temperature(s, r_c),
            Scenario::Lisa(s) => lisa_lambda_bound(s, r_c),
            Scenario::LisaVibrational(s) => lisa_vibrational_bound(s, r_c),
        }
    }
}

/// `λ_max(r_C)`; parameters above the curve are excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionCurve {
    points: Vec<(f64, f64)>,
    scenario_id: String,
}

impl ExclusionCurve {
    pub fn new(points: Vec<(f64, f64)>, scenario_id: impl Into<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("exclusion curve needs at least one point".into()));
        }
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidGrid("r_C values must be strictly increasing".into()));
        }
        if let Some(&(r, l)) = points.iter().find(|&&(_, l)| !(l > 0.0 && l.is_finite())) {
            return Err(Error::InvalidGrid(format!("λ_max = {l} at r_C = {r} is not positive and finite")));
        }
        Ok(Self { points, scenario_id: scenario_id.into() })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn scenario_id(&self) -> &str {
        &self.scenario_id
    }

    /// Log-log interpolation; `None` outside the sampled range.
    pub fn lambda_max_at(&self, r_c: f64) -> Option<f64> {
        let pts = &self.points;
        let first = pts.first()?;
        let last = pts.last()?;
        if r_c < first.0 || r_c > last.0 {
            return None;
        }
        let i = pts.partition_point(|p| p.0 < r_c);
        if pts[i].0 == r_c {
            return Some(pts[i].1);
        }
        let (a, b) = (pts[i - 1], pts[i]);
        let t = (r_c.ln() - a.0.ln()) / (b.0.ln() - a.0.ln());
        Some((a.1.ln() + t * (b.1.ln() - a.1.ln())).exp())
    }

    /// Whether `(λ, r_C)` lies in the excluded region; `None` outside the sampled range.
    pub fn excludes(&self, lambda: f64, r_c: f64) -> Option<bool> {
        self.lambda_max_at(r_c).map(|l| lambda > l)
    }
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || n == 0 {
        return Err(Error::InvalidGrid(format!("bad log grid [{lo}, {hi}] with {n} points")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut g: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect();
    g[0] = lo;
    g[n - 1] = hi;
    Ok(g)
}

/// Maps the scenario's λ_max over a strictly increasing r_C grid.
pub fn exclusion_curve(scn: &Scenario, r_c_grid: &[f64], scenario_id: &str) -> Result<ExclusionCurve> {
    if r_c_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("r_C grid must be strictly increasing".into()));
    }
    let lambdas = r_c_grid.par_iter().map(|&r| scn.lambda_max(r)).collect::<Result<Vec<f64>>>()?;
    ExclusionCurve::new(r_c_grid.iter().copied().zip(lambdas).collect(), scenario_id)
}

/// One row of a fixed-mass aspect-ratio scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryScanRow {
    pub aspect: f64,
    pub radius: f64,
    pub length: f64,
    pub delta_t_vib_perp: f64,
    pub delta_t_vib_sym: f64,
    pub delta_t_rot: f64,
}

/// ΔT_CSL of all three modes for cylinders of fixed mass over a range of R/L.
pub fn scan_geometry(
    mass: f64,
    aspects: &[f64],
    env: &GasEnvironment,
    csl: &CslParams<f64>,
    density: f64,
) -> Result<Vec<GeometryScanRow>> {
    aspects
        .par_iter()
        .map(|&aspect| {
            let g = CylinderGeometry::from_mass_and_aspect(mass, aspect, density)?;
            let damping = gas_damping(&g, env);
            let dt = |kind| excess_temperature(eta_cylinder(&g, kind, csl)?, damping.epsilon(kind));
            Ok(GeometryScanRow {
                aspect,
                radius: g.radius(),
                length: g.length(),
                delta_t_vib_perp: dt(DiffusionKind::VibPerp)?,
                delta_t_vib_sym: dt(DiffusionKind::VibSym)?,
                delta_t_rot: dt(DiffusionKind::Rot)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn helium() -> GasEnvironment {
        GasEnvironment::new(1.0, 5e-11, 4.002_602 * Constants::AMU).unwrap()
    }

    fn coin(kind: DiffusionKind) -> LabScenario {
        let g = CylinderGeometry::from_density(1e-4, 1e-7, SILICA_DENSITY).unwrap();
        LabScenario::new(g, helium(), 0.1, kind).unwrap()
    }

    #[test]
    fn torque_noise_bookkeeping() {
        let s = LisaScenario::pathfinder();
        assert!((lisa_torque_dns(&s) / 2.66e-34 - 1.0).abs() < 0.01);
        let zero = LisaScenario { torque_factor: 0.0, ..s };
        assert_eq!(lisa_torque_dns(&zero), 0.0);
        let doubled = LisaScenario { force_dns: 2.0 * s.force_dns, ..s };
        assert_eq!(lisa_torque_dns(&doubled), 2.0 * lisa_torque_dns(&s));
    }

    #[test]
    fn factor_pairs_with_unit_product_agree() {
        let s = LisaScenario::pathfinder();
        let plain = LisaScenario { differential_factor: 1.0, sided_factor: 1.0, ..s };
        assert_eq!(lisa_lambda_bound(&s, 1e-7).unwrap(), lisa_lambda_bound(&plain, 1e-7).unwrap());
    }

    #[test]
    fn lab_bound_defining_relation() {
        let s = coin(DiffusionKind::Rot);
        for r in log_grid(1e-9, 1e-3, 13).unwrap() {
            let l = lambda_max_temperature(&s, r).unwrap();
            let dt = s.excess_temperature_unit_rate(r).unwrap();
            assert!((l * dt / 0.1 - 1.0).abs() < 1e-14);
        }
        let doubled = LabScenario { delta_t_accuracy: 0.2, ..s };
        assert_eq!(lambda_max_temperature(&doubled, 1e-7).unwrap(), 2.0 * lambda_max_temperature(&s, 1e-7).unwrap());
    }

    #[test]
    fn no_gas_no_temperature_bound() {
        let mut s = coin(DiffusionKind::Rot);
        s.environment = s.environment.with_pressure(0.0).unwrap();
        assert!(matches!(lambda_max_temperature(&s, 1e-7), Err(Error::Domain(_))));
    }

    #[test]
    fn curve_validation_and_interpolation() {
        assert!(ExclusionCurve::new(vec![(2.0, 1.0), (1.0, 1.0)], "x").is_err());
        assert!(ExclusionCurve::new(vec![(1.0, f64::NAN)], "x").is_err());
        assert!(ExclusionCurve::new(vec![], "x").is_err());
        let c = ExclusionCurve::new(vec![(1e-8, 1e-4), (1e-6, 1e-8)], "x").unwrap();
        assert!((c.lambda_max_at(1e-7).unwrap() / 1e-6 - 1.0).abs() < 1e-12);
        assert_eq!(c.lambda_max_at(1e-9), None);
        assert_eq!(c.excludes(1e-5, 1e-7), Some(true));
        assert_eq!(c.excludes(1e-7, 1e-7), Some(false));
    }

    #[test]
    fn single_point_curve_matches_scalar() {
        let scn = Scenario::Lisa(LisaScenario::pathfinder());
        let c = exclusion_curve(&scn, &[1e-7], "lisa").unwrap();
        assert_eq!(c.points()[0].1, scn.lambda_max(1e-7).unwrap());
        assert!(exclusion_curve(&scn, &[1e-6, 1e-7], "lisa").is_err());
    }

    #[test]
    fn alpha_independent_of_rate() {
        let g = CubeGeometry::new(0.046, 1.928).unwrap();
        let a = alpha_csl(&g, 0.046e-3).unwrap();
        assert!((a * 6.0 - 1.0).abs() < 0.01, "{a}");
    }

    #[test]
    fn coin_regression_values() {
        // Independent 30-digit evaluation of the closed forms and damping formulas.
        let rot = lambda_max_temperature(&coin(DiffusionKind::Rot), 1e-7).unwrap();
        let vib = lambda_max_temperature(&coin(DiffusionKind::VibPerp), 1e-7).unwrap();
        assert!((rot / COIN_LAMBDA_MAX_ROT - 1.0).abs() < 1e-10, "{rot:e}");
        assert!((vib / COIN_LAMBDA_MAX_VIB - 1.0).abs() < 1e-10, "{vib:e}");
    }

    const COIN_LAMBDA_MAX_ROT: f64 = 7.975_249_080_306_257_4e-15;
    const COIN_LAMBDA_MAX_VIB: f64 = 3.645_403_057_442_671_3e-12;
}
