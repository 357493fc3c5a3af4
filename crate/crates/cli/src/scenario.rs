//! Scenario files: JSON with `_`-prefixed comment keys, validated into core types.

use std::path::{Path, PathBuf};

use cslbounds_core::bounds::{LisaScenario, SILICA_DENSITY};
use cslbounds_core::environment::GasEnvironment;
use cslbounds_core::optomech::{CavityConfig, PhotonNumberPolicy};
use cslbounds_core::physcore::{gas_species_mass_amu, pressure_mbar_to_pa, Constants};
use cslbounds_core::{Body, CslParams, CubeGeometry, CylinderGeometry, DiffusionKind};
use serde::Deserialize;
use serde_json::Value;

use crate::output::Format;
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(default)]
    csl: CslSection,
    geometry: GeometrySection,
    gas: Option<GasSection>,
    cavity: Option<CavitySection>,
    trap: Option<TrapSection>,
    #[serde(default)]
    readout: ReadoutSection,
    lisa: Option<LisaSection>,
    #[serde(default)]
    scan: ScanSection,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CslSection {
    #[serde(default = "one")]
    lambda: f64,
    #[serde(default = "default_r_c")]
    r_c: f64,
}

impl Default for CslSection {
    fn default() -> Self {
        Self { lambda: 1.0, r_c: default_r_c() }
    }
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Shape {
    Cylinder,
    Cube,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometrySection {
    shape: Shape,
    radius_m: Option<f64>,
    length_m: Option<f64>,
    side_m: Option<f64>,
    mass_kg: Option<f64>,
    mass_ug: Option<f64>,
    /// R/L, used with a mass to size a cylinder.
    aspect: Option<f64>,
    density_kg_m3: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GasSection {
    species: Option<String>,
    mass_amu: Option<f64>,
    #[serde(rename = "temperature_K")]
    temperature_k: f64,
    pressure_mbar: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CavitySection {
    kappa: f64,
    delta0: f64,
    chi: f64,
    g_phi: f64,
    #[serde(rename = "input_power_W")]
    input_power_w: f64,
    wavelength_m: f64,
    #[serde(default)]
    photon_number: PhotonNumberChoice,
}

#[derive(Debug, Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "snake_case")]
enum PhotonNumberChoice {
    #[default]
    Intracavity,
    InputFlux,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrapSection {
    omega_vib: f64,
    omega_rot: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReadoutSection {
    #[serde(default = "default_delta_t", rename = "delta_t_K")]
    delta_t_k: f64,
    #[serde(default = "default_mode")]
    mode: String,
}

impl Default for ReadoutSection {
    fn default() -> Self {
        Self { delta_t_k: default_delta_t(), mode: default_mode() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LisaSection {
    force_dns: f64,
    torque_factor: Option<f64>,
    torque_dns: Option<f64>,
    differential_factor: Option<f64>,
    sided_factor: Option<f64>,
    mass_separation_m: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanSection {
    #[serde(default = "default_r_c_min")]
    r_c_min: f64,
    #[serde(default = "default_r_c_max")]
    r_c_max: f64,
    #[serde(default = "default_r_c_points")]
    r_c_points: usize,
    #[serde(default = "default_aspect_min")]
    aspect_min: f64,
    #[serde(default = "default_aspect_max")]
    aspect_max: f64,
    #[serde(default = "default_aspect_points")]
    aspect_points: usize,
    #[serde(default = "default_dns_points")]
    dns_points: usize,
    #[serde(default = "default_dns_span")]
    dns_span_linewidths: f64,
    #[serde(default = "default_oracle_nodes")]
    oracle_nodes: usize,
}

impl Default for ScanSection {
    fn default() -> Self {
        serde_json::from_value(Value::Object(Default::default())).expect("all scan fields have defaults")
    }
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    path: Option<PathBuf>,
    format: Option<Format>,
}

fn one() -> f64 {
    1.0
}
fn default_r_c() -> f64 {
    1e-7
}
fn default_delta_t() -> f64 {
    0.1
}
fn default_mode() -> String {
    "rot".into()
}
fn default_r_c_min() -> f64 {
    1e-9
}
fn default_r_c_max() -> f64 {
    1e-3
}
fn default_r_c_points() -> usize {
    200
}
fn default_aspect_min() -> f64 {
    1e-2
}
fn default_aspect_max() -> f64 {
    1e4
}
fn default_aspect_points() -> usize {
    121
}
fn default_dns_points() -> usize {
    4001
}
fn default_dns_span() -> f64 {
    20.0
}
fn default_oracle_nodes() -> usize {
    32
}

/// Mechanical trap frequencies [rad/s].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trap {
    pub omega_vib: f64,
    pub omega_rot: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scan {
    pub r_c_min: f64,
    pub r_c_max: f64,
    pub r_c_points: usize,
    pub aspect_min: f64,
    pub aspect_max: f64,
    pub aspect_points: usize,
    pub dns_points: usize,
    pub dns_span_linewidths: f64,
    pub oracle_nodes: usize,
}

/// A fully validated scenario in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub id: String,
    pub csl: CslParams,
    pub body: Body,
    /// Density used to resize the body in geometry scans [kg/m³].
    pub density: f64,
    pub gas: Option<GasEnvironment>,
    pub cavity: Option<CavityConfig>,
    pub photon_number: PhotonNumberPolicy,
    pub trap: Option<Trap>,
    pub delta_t: f64,
    pub readout_kind: DiffusionKind,
    pub lisa: Option<LisaScenario>,
    pub scan: Scan,
    pub output_path: Option<PathBuf>,
    pub output_format: Option<Format>,
}

impl Scenario {
    pub fn cylinder(&self, task: &str) -> Result<CylinderGeometry, CliError> {
        match self.body {
            Body::Cylinder(g) => Ok(g),
            Body::Cube(_) => Err(CliError::Config(format!("{task} needs geometry.shape = \"cylinder\""))),
        }
    }

    pub fn cube(&self, task: &str) -> Result<CubeGeometry, CliError> {
        match self.body {
            Body::Cube(g) => Ok(g),
            Body::Cylinder(_) => Err(CliError::Config(format!("{task} needs geometry.shape = \"cube\""))),
        }
    }

    pub fn gas(&self, task: &str) -> Result<GasEnvironment, CliError> {
        self.gas.ok_or_else(|| CliError::Config(format!("{task} needs a gas section")))
    }

    pub fn cavity(&self, task: &str) -> Result<CavityConfig, CliError> {
        self.cavity.ok_or_else(|| CliError::Config(format!("{task} needs a cavity section")))
    }

    pub fn trap(&self, task: &str) -> Result<Trap, CliError> {
        self.trap.ok_or_else(|| CliError::Config(format!("{task} needs a trap section")))
    }

    pub fn lisa(&self, task: &str) -> Result<LisaScenario, CliError> {
        self.lisa.ok_or_else(|| CliError::Config(format!("{task} needs a lisa section")))
    }
}

/// Reads, overrides and validates a scenario file.
pub fn load_scenario(path: &Path, overrides: &[String]) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_scenario(&text, &id, overrides)
}

pub fn parse_scenario(text: &str, id: &str, overrides: &[String]) -> Result<Scenario, CliError> {
    let mut value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("parse error at line {} column {}: {e}", e.line(), e.column())))?;
    strip_comments(&mut value);
    for o in overrides {
        apply_override(&mut value, o)?;
    }
    let file: ScenarioFile = serde_json::from_value(value).map_err(|e| CliError::Config(e.to_string()))?;
    validate(file, id)
}

fn strip_comments(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| !k.starts_with('_'));
            map.values_mut().for_each(strip_comments);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_comments),
        _ => {}
    }
}

/// `a.b.c=value`; the value is read as JSON, falling back to a plain string.
pub fn apply_override(root: &mut Value, spec: &str) -> Result<(), CliError> {
    let (key, raw) =
        spec.split_once('=').ok_or_else(|| CliError::Config(format!("override {spec:?} is not key=value")))?;
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("override key {key:?} has an empty segment")));
    }
    let new = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    for (i, part) in parts.iter().enumerate() {
        let map = node
            .as_object_mut()
            .ok_or_else(|| CliError::Config(format!("override {key:?}: {} is not a section", parts[..i].join("."))))?;
        if i + 1 == parts.len() {
            map.insert(part.to_string(), new);
            return Ok(());
        }
        node = map.entry(part.to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("split always yields at least one segment")
}

fn field<T>(key: &str, r: cslbounds_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Config(format!("{key}: {e}")))
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{key} must be positive and finite, got {v}")))
    }
}

fn validate(f: ScenarioFile, id: &str) -> Result<Scenario, CliError> {
    let csl = field("csl", CslParams::new(f.csl.lambda, f.csl.r_c))?;
    let (body, density) = body(&f.geometry)?;

    let gas = match &f.gas {
        None => None,
        Some(g) => {
            let amu = match (&g.species, g.mass_amu) {
                (Some(s), None) => gas_species_mass_amu(s)
                    .ok_or_else(|| CliError::Config(format!("gas.species: unknown species {s:?}")))?,
                (None, Some(m)) => positive("gas.mass_amu", m)?,
                _ => return Err(CliError::Config("gas: give exactly one of species and mass_amu".into())),
            };
            let pa = field("gas.pressure_mbar", pressure_mbar_to_pa(g.pressure_mbar))?;
            Some(field("gas", GasEnvironment::new(g.temperature_k, pa, amu * Constants::AMU))?)
        }
    };

    let (cavity, photon_number) = match &f.cavity {
        None => (None, PhotonNumberPolicy::default()),
        Some(c) => {
            let flux = field("cavity.input_power_W", CavityConfig::photon_flux(c.input_power_w, c.wavelength_m))?;
            let cfg = CavityConfig {
                kappa: c.kappa,
                delta0: c.delta0,
                chi: c.chi,
                g_phi: c.g_phi,
                input_photon_flux: flux,
                omega_c: std::f64::consts::TAU * Constants::SPEED_OF_LIGHT / c.wavelength_m,
            };
            field("cavity", cfg.validate())?;
            let policy = match c.photon_number {
                PhotonNumberChoice::Intracavity => PhotonNumberPolicy::Intracavity,
                PhotonNumberChoice::InputFlux => PhotonNumberPolicy::InputFlux,
            };
            (Some(cfg), policy)
        }
    };

    let trap = match &f.trap {
        None => None,
        Some(t) => Some(Trap {
            omega_vib: positive("trap.omega_vib", t.omega_vib)?,
            omega_rot: positive("trap.omega_rot", t.omega_rot)?,
        }),
    };

    let delta_t = positive("readout.delta_t_K", f.readout.delta_t_k)?;
    let readout_kind = DiffusionKind::parse(&f.readout.mode).ok_or_else(|| {
        CliError::Config(format!("readout.mode: expected vib_perp, vib_sym or rot, got {:?}", f.readout.mode))
    })?;

    let lisa = match (&f.lisa, body) {
        (None, _) => None,
        (Some(_), Body::Cylinder(_)) => {
            return Err(CliError::Config("lisa section needs geometry.shape = \"cube\"".into()))
        }
        (Some(l), Body::Cube(cube)) => {
            let mut s = field("lisa.force_dns", LisaScenario::new(cube, l.force_dns))?;
            if let Some(v) = l.torque_factor {
                s.torque_factor = v;
            }
            s.torque_dns_override = l.torque_dns;
            if let Some(v) = l.differential_factor {
                s.differential_factor = v;
            }
            if let Some(v) = l.sided_factor {
                s.sided_factor = v;
            }
            if let Some(v) = l.mass_separation_m {
                s.mass_separation = v;
            }
            field("lisa", s.validate())?;
            Some(s)
        }
    };

    let sc = &f.scan;
    for (key, v) in [
        ("scan.r_c_min", sc.r_c_min),
        ("scan.r_c_max", sc.r_c_max),
        ("scan.aspect_min", sc.aspect_min),
        ("scan.aspect_max", sc.aspect_max),
        ("scan.dns_span_linewidths", sc.dns_span_linewidths),
    ] {
        positive(key, v)?;
    }
    if sc.r_c_max <= sc.r_c_min || sc.aspect_max <= sc.aspect_min {
        return Err(CliError::Config("scan: each range needs max > min".into()));
    }
    if sc.r_c_points == 0 || sc.aspect_points == 0 {
        return Err(CliError::Config("scan: point counts must be positive".into()));
    }
    if sc.dns_points < 3 || sc.dns_points.is_multiple_of(2) {
        return Err(CliError::Config(format!("scan.dns_points must be odd and at least 3, got {}", sc.dns_points)));
    }
    if sc.oracle_nodes == 0 {
        return Err(CliError::Config("scan.oracle_nodes must be positive".into()));
    }
    let scan = Scan {
        r_c_min: sc.r_c_min,
        r_c_max: sc.r_c_max,
        r_c_points: sc.r_c_points,
        aspect_min: sc.aspect_min,
        aspect_max: sc.aspect_max,
        aspect_points: sc.aspect_points,
        dns_points: sc.dns_points,
        dns_span_linewidths: sc.dns_span_linewidths,
        oracle_nodes: sc.oracle_nodes,
    };

    Ok(Scenario {
        id: id.to_string(),
        csl,
        body,
        density,
        gas,
        cavity,
        photon_number,
        trap,
        delta_t,
        readout_kind,
        lisa,
        scan,
        output_path: f.output.path,
        output_format: f.output.format,
    })
}

fn body(g: &GeometrySection) -> Result<(Body, f64), CliError> {
    let mass = match (g.mass_kg, g.mass_ug) {
        (Some(_), Some(_)) => return Err(CliError::Config("geometry: give at most one of mass_kg and mass_ug".into())),
        (Some(m), None) => Some(positive("geometry.mass_kg", m)?),
        (None, Some(m)) => Some(positive("geometry.mass_ug", m)? * 1e-9),
        (None, None) => None,
    };
    let density = match g.density_kg_m3 {
        Some(d) => positive("geometry.density_kg_m3", d)?,
        None => SILICA_DENSITY,
    };
    let unexpected = |key: &str, present: bool| -> Result<(), CliError> {
        if present {
            Err(CliError::Config(format!("geometry.{key} does not apply to shape {:?}", g.shape)))
        } else {
            Ok(())
        }
    };
    match g.shape {
        Shape::Cylinder => {
            unexpected("side_m", g.side_m.is_some())?;
            let geom =
                match (g.radius_m, g.length_m, g.aspect, mass) {
                    (Some(r), Some(l), None, Some(m)) => CylinderGeometry::new(r, l, m),
                    (Some(r), Some(l), None, None) => CylinderGeometry::from_density(r, l, density),
                    (None, None, Some(a), Some(m)) => CylinderGeometry::from_mass_and_aspect(m, a, density),
                    _ => return Err(CliError::Config(
                        "geometry: a cylinder needs radius_m and length_m (with optional mass), or a mass and aspect"
                            .into(),
                    )),
                };
            let geom = field("geometry", geom)?;
            // A cylinder given by mass keeps that mass in scans even when its density differs.
            let density = if g.density_kg_m3.is_none() && mass.is_some() && g.radius_m.is_some() {
                geom.mass() / (std::f64::consts::PI * geom.radius() * geom.radius() * geom.length())
            } else {
                density
            };
            Ok((Body::Cylinder(geom), density))
        }
        Shape::Cube => {
            unexpected("radius_m", g.radius_m.is_some())?;
            unexpected("length_m", g.length_m.is_some())?;
            unexpected("aspect", g.aspect.is_some())?;
            let side = positive(
                "geometry.side_m",
                g.side_m.ok_or_else(|| CliError::Config("geometry.side_m is required for a cube".into()))?,
            )?;
            let m = mass.unwrap_or(density * side * side * side);
            Ok((Body::Cube(field("geometry", CubeGeometry::new(side, m))?), density))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COIN: &str = r#"{
        "_comment": "thin disc",
        "geometry": {"shape": "cylinder", "radius_m": 1e-4, "length_m": 1e-7},
        "gas": {"species": "He-4", "temperature_K": 1, "pressure_mbar": 5e-13}
    }"#;

    #[test]
    fn loads_with_defaults_and_converts_pressure() {
        let s = parse_scenario(COIN, "coin", &[]).unwrap();
        let g = s.cylinder("test").unwrap();
        assert_eq!((g.radius(), g.length()), (1e-4, 1e-7));
        assert!((s.gas.unwrap().pressure() / 5e-11 - 1.0).abs() < 1e-15);
        assert_eq!(s.delta_t, 0.1);
        assert_eq!(s.readout_kind, DiffusionKind::Rot);
        assert_eq!(s.scan.r_c_points, 200);
    }

    #[test]
    fn unknown_key_rejected() {
        let text = COIN.replace("\"shape\"", "\"shpae\": 1, \"shape\"");
        let err = parse_scenario(&text, "x", &[]).unwrap_err();
        assert!(matches!(err, CliError::Config(ref m) if m.contains("shpae")), "{err}");
    }

    #[test]
    fn parse_error_reports_position() {
        let err = parse_scenario("{\n  \"csl\": ,\n}", "x", &[]).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn negative_pressure_names_key() {
        let err = parse_scenario(COIN, "x", &["gas.pressure_mbar=-1".into()]).unwrap_err();
        assert!(err.to_string().contains("gas.pressure_mbar"), "{err}");
    }

    #[test]
    fn overrides_create_and_replace() {
        let s = parse_scenario(COIN, "x", &["csl.r_c=2e-6".into(), "readout.mode=vib_perp".into()]).unwrap();
        assert_eq!(s.csl.r_c(), 2e-6);
        assert_eq!(s.readout_kind, DiffusionKind::VibPerp);
        assert!(parse_scenario(COIN, "x", &["csl".into()]).is_err());
        assert!(parse_scenario(COIN, "x", &["geometry.shape.x=1".into()]).is_err());
    }

    #[test]
    fn missing_sections_reported_per_task() {
        let s = parse_scenario(r#"{"geometry": {"shape": "cylinder", "radius_m": 1e-4, "length_m": 1e-7}}"#, "x", &[])
            .unwrap();
        assert!(matches!(s.gas("temperature"), Err(CliError::Config(_))));
        assert!(s.cube("lisa").is_err());
    }

    #[test]
    fn cube_mass_from_density() {
        let s = parse_scenario(r#"{"geometry": {"shape": "cube", "side_m": 0.1, "density_kg_m3": 1000}}"#, "x", &[])
            .unwrap();
        assert!((s.cube("t").unwrap().mass() - 1.0).abs() < 1e-12);
    }
}
