//! Driven-cavity steady state, optical-spring parameters and the density noise
//! spectrum of a vibrational or rotational mode.

use crate::diffusion::CylinderGeometry;
use crate::environment::{thermal_psd_term, DampingSet, GasEnvironment};
use crate::error::{Error, Result};
use crate::physcore::Constants;

const RELAXATION: f64 = 0.5;
const STEADY_STATE_TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 1000;

/// Optical cavity and its couplings to the mechanical modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    /// Amplitude decay rate κ [s⁻¹].
    pub kappa: f64,
    /// Bare laser detuning Δ₀ [rad/s].
    pub delta0: f64,
    /// Translational coupling χ [rad s⁻¹ m⁻¹].
    pub chi: f64,
    /// Rotational coupling g_φ [rad s⁻¹ rad⁻¹].
    pub g_phi: f64,
    /// Input photon flux |α_in|² [s⁻¹].
    pub input_photon_flux: f64,
    /// Cavity resonance ω_c [rad/s].
    pub omega_c: f64,
}

impl CavityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return Err(Error::domain(format!("cavity decay rate must be positive, got {}", self.kappa)));
        }
        if !self.delta0.is_finite() {
            return Err(Error::domain("detuning must be finite"));
        }
        for (name, v) in [("chi", self.chi), ("g_phi", self.g_phi), ("input photon flux", self.input_photon_flux)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be non-negative, got {v}")));
            }
        }
        if !(self.omega_c > 0.0 && self.omega_c.is_finite()) {
            return Err(Error::domain(format!("cavity frequency must be positive, got {}", self.omega_c)));
        }
        Ok(())
    }

    /// Photon flux of a laser of power `power` [W] at wavelength `wavelength` [m].
    pub fn photon_flux(power: f64, wavelength: f64) -> Result<f64> {
        if !(power >= 0.0 && power.is_finite()) || !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(Error::domain(format!("need power ≥ 0 and wavelength > 0, got {power} W, {wavelength} m")));
        }
        let omega = std::f64::consts::TAU * Constants::SPEED_OF_LIGHT / wavelength;
        Ok(power / (Constants::HBAR * omega))
    }

    /// An undriven, uncoupled cavity.
    pub fn dark(kappa: f64, omega_c: f64) -> Self {
        Self { kappa, delta0: 0.0, chi: 0.0, g_phi: 0.0, input_photon_flux: 0.0, omega_c }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    Vibration,
    Rotation,
}

/// One mechanical degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanicalMode {
    kind: ModeKind,
    resonance: f64,
    inertia: f64,
    bare_damping: f64,
    coupling: f64,
    epsilon: f64,
}

impl MechanicalMode {
    /// `inertia` is the mass or moment of inertia, `bare_damping` the energy
    /// decay rate [s⁻¹], `epsilon` the bath coupling.
    pub fn new(
        kind: ModeKind,
        resonance: f64,
        inertia: f64,
        bare_damping: f64,
        coupling: f64,
        epsilon: f64,
    ) -> Result<Self> {
        if !(resonance > 0.0 && resonance.is_finite()) {
            return Err(Error::domain(format!("resonance must be positive, got {resonance} rad/s")));
        }
        if !(inertia > 0.0 && inertia.is_finite()) {
            return Err(Error::domain(format!("inertia must be positive, got {inertia}")));
        }
        for (name, v) in [("damping", bare_damping), ("coupling", coupling), ("bath coupling", epsilon)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be non-negative, got {v}")));
            }
        }
        Ok(Self { kind, resonance, inertia, bare_damping, coupling, epsilon })
    }

    /// Translation of the cylinder perpendicular to its axis.
    pub fn vibration(
        geom: &CylinderGeometry<f64>,
        omega_m: f64,
        damping: &DampingSet,
        cavity: &CavityConfig,
    ) -> Result<Self> {
        Self::new(ModeKind::Vibration, omega_m, geom.mass(), damping.gamma_vib, cavity.chi, damping.epsilon_vib)
    }

    /// Rotation of the cylinder about a transverse axis.
    pub fn rotation(
        geom: &CylinderGeometry<f64>,
        omega_phi: f64,
        damping: &DampingSet,
        cavity: &CavityConfig,
    ) -> Result<Self> {
        let inertia = geom.moment_of_inertia();
        Self::new(ModeKind::Rotation, omega_phi, inertia, damping.d_phi / inertia, cavity.g_phi, damping.epsilon_rot)
    }

    pub fn kind(&self) -> ModeKind {
        self.kind
    }

    pub fn resonance(&self) -> f64 {
        self.resonance
    }

    pub fn inertia(&self) -> f64 {
        self.inertia
    }

    pub fn bare_damping(&self) -> f64 {
        self.bare_damping
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Copy with the optomechanical coupling switched off.
    pub fn uncoupled(&self) -> Self {
        Self { coupling: 0.0, ..*self }
    }
}

/// Self-consistent static solution of the driven cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub n_cav: f64,
    pub delta_eff: f64,
    pub mean_x: f64,
    pub mean_phi: f64,
    pub iterations: usize,
}

/// Which photon number plays the role of `|α|²` in the optical-spring terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhotonNumberPolicy {
    /// Steady-state intracavity photon number.
    #[default]
    Intracavity,
    /// The input photon flux, used as a bare number.
    InputFlux,
}

impl PhotonNumberPolicy {
    fn photons(self, cavity: &CavityConfig, ss: &SteadyState) -> f64 {
        match self {
            PhotonNumberPolicy::Intracavity => ss.n_cav,
            PhotonNumberPolicy::InputFlux => cavity.input_photon_flux,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumConvention {
    OneSided,
    TwoSided,
}

/// Noise spectrum sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    pub values: Vec<f64>,
    pub kind: ModeKind,
    pub convention: SpectrumConvention,
}

impl Spectrum {
    pub fn to_one_sided(&self) -> Spectrum {
        match self.convention {
            SpectrumConvention::OneSided => self.clone(),
            SpectrumConvention::TwoSided => Spectrum {
                frequencies: self.frequencies.clone(),
                values: self.values.iter().map(|v| 2.0 * v).collect(),
                kind: self.kind,
                convention: SpectrumConvention::OneSided,
            },
        }
    }

    /// Trapezoid estimate of `∫ S dω/2π` over the sampled range.
    pub fn integrate(&self) -> f64 {
        self.frequencies
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(w, v)| 0.5 * (w[1] - w[0]) * (v[0] + v[1]))
            .sum::<f64>()
            / std::f64::consts::TAU
    }
}

/// Options for [`dns`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DnsOptions {
    /// Keep the radiation-pressure shot-noise term.
    pub radiation_pressure: bool,
    pub photon_number: PhotonNumberPolicy,
}

impl Default for DnsOptions {
    fn default() -> Self {
        Self { radiation_pressure: true, photon_number: PhotonNumberPolicy::Intracavity }
    }
}

fn intracavity_photons(cavity: &CavityConfig, delta: f64) -> f64 {
    2.0 * cavity.kappa * cavity.input_photon_flux / (cavity.kappa * cavity.kappa + delta * delta)
}

/// Damped fixed-point iteration of `Δ = Δ₀ − g_φ⟨φ⟩ − χ⟨x⟩`.
pub fn solve_steady_state(cavity: &CavityConfig, vib: &MechanicalMode, rot: &MechanicalMode) -> Result<SteadyState> {
    cavity.validate()?;
    if vib.kind != ModeKind::Vibration || rot.kind != ModeKind::Rotation {
        return Err(Error::domain("steady state needs one vibrational and one rotational mode"));
    }
    let hbar = Constants::HBAR;
    let x_per_photon = hbar * cavity.chi / (vib.inertia * vib.resonance * vib.resonance);
    let phi_per_photon = hbar * cavity.g_phi / (rot.inertia * rot.resonance * rot.resonance);
    let shift_per_photon = cavity.chi * x_per_photon + cavity.g_phi * phi_per_photon;
    let map = |delta: f64| cavity.delta0 - shift_per_photon * intracavity_photons(cavity, delta);
    let scale = cavity.delta0.abs().max(cavity.kappa);

    let mut delta = cavity.delta0;
    let mut previous = delta;
    for iteration in 0..MAX_ITERATIONS {
        let target = map(delta);
        if (target - delta).abs() <= STEADY_STATE_TOLERANCE * scale {
            let n = intracavity_photons(cavity, delta);
            return Ok(SteadyState {
                n_cav: n,
                delta_eff: delta,
                mean_x: x_per_photon * n,
                mean_phi: phi_per_photon * n,
                iterations: iteration,
            });
        }
        previous = delta;
        delta += RELAXATION * (target - delta);
        if !delta.is_finite() {
            break;
        }
    }
    Err(Error::Bistability { previous, last: delta })
}

/// `(ω_eff², Γ_eff)` at frequency `omega` with the intracavity photon number.
pub fn effective_params(cavity: &CavityConfig, mode: &MechanicalMode, ss: &SteadyState, omega: f64) -> (f64, f64) {
    effective_params_with(cavity, mode, ss, omega, PhotonNumberPolicy::Intracavity)
}

pub fn effective_params_with(
    cavity: &CavityConfig,
    mode: &MechanicalMode,
    ss: &SteadyState,
    omega: f64,
    policy: PhotonNumberPolicy,
) -> (f64, f64) {
    let k2 = cavity.kappa * cavity.kappa;
    let d = ss.delta_eff;
    let lorentz = (k2 + (d - omega).powi(2)) * (k2 + (d + omega).powi(2));
    let drive =
        Constants::HBAR * mode.coupling * mode.coupling * policy.photons(cavity, ss) * d / (mode.inertia * lorentz);
    let omega_eff_sq = mode.resonance * mode.resonance - 2.0 * drive * (k2 + d * d - omega * omega);
    let gamma_eff = mode.bare_damping + 4.0 * drive * cavity.kappa;
    (omega_eff_sq, gamma_eff)
}

/// Two-sided density noise spectrum of `mode` including a CSL heating term `eta`.
pub fn dns(
    mode: &MechanicalMode,
    cavity: &CavityConfig,
    ss: &SteadyState,
    env: &GasEnvironment,
    eta: f64,
    omegas: &[f64],
    opts: &DnsOptions,
) -> Result<Spectrum> {
    if !(eta >= 0.0 && eta.is_finite()) {
        return Err(Error::domain(format!("diffusion constant must be non-negative, got {eta}")));
    }
    let hbar = Constants::HBAR;
    let k2 = cavity.kappa * cavity.kappa;
    let photons = opts.photon_number.photons(cavity, ss);
    let shot = if opts.radiation_pressure {
        2.0 * hbar * hbar * photons * cavity.kappa * mode.coupling * mode.coupling
    } else {
        0.0
    };
    let mut values = Vec::with_capacity(omegas.len());
    for &w in omegas {
        if w == 0.0 || !w.is_finite() {
            return Err(Error::InvalidGrid(format!("frequency grid contains {w}; zero frequency is excluded")));
        }
        let (w_eff_sq, gamma) = effective_params_with(cavity, mode, ss, w, opts.photon_number);
        let cav = k2 + (ss.delta_eff - w).powi(2);
        let bath = thermal_psd_term(mode.epsilon, env.temperature(), w)?;
        let num = shot + cav * (bath + hbar * hbar * eta);
        let den = mode.inertia * mode.inertia * cav * ((w_eff_sq - w * w).powi(2) + gamma * gamma * w * w);
        let s = num / den;
        if !s.is_finite() {
            return Err(Error::NonFinite("dns"));
        }
        values.push(s);
    }
    Ok(Spectrum { frequencies: omegas.to_vec(), values, kind: mode.kind, convention: SpectrumConvention::TwoSided })
}

/// Excess bath temperature `ħ²η / (2 k_B ε)` equivalent to CSL heating.
pub fn excess_temperature(eta: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::domain(format!(
            "CSL temperature is measured against gas damping, which is zero here (ε = {epsilon})"
        )));
    }
    Ok(Constants::HBAR * Constants::HBAR * eta / (2.0 * Constants::K_B * epsilon))
}

pub fn delta_t_csl(mode: &MechanicalMode, eta: f64) -> Result<f64> {
    excess_temperature(eta, mode.epsilon)
}

/// Ascending grid around `center` with offsets log-spaced from `1e-4·span` out
/// to `span` on each side; the lower side is kept strictly positive.
pub fn frequency_grid(center: f64, linewidth: f64, span_linewidths: f64, points: usize) -> Result<Vec<f64>> {
    if !(center > 0.0 && linewidth > 0.0 && span_linewidths > 0.0) || !center.is_finite() || !linewidth.is_finite() {
        return Err(Error::InvalidGrid(format!(
            "need positive centre, linewidth and span, got {center}, {linewidth}, {span_linewidths}"
        )));
    }
    if points < 3 || points.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!("point count must be odd and at least 3, got {points}")));
    }
    let half = (points - 1) / 2;
    let span = span_linewidths * linewidth;
    let offsets = log_offsets(span * 1e-4, span, half);
    let low_span = span.min(center * (1.0 - 1e-9));
    let low_offsets = log_offsets(low_span * 1e-4, low_span, half);
    let mut grid: Vec<f64> = low_offsets.iter().rev().map(|d| center - d).collect();
    grid.push(center);
    grid.extend(offsets.iter().map(|d| center + d));
    Ok(grid)
}

fn log_offsets(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![hi];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::Temperature;

    fn modes(cavity: &CavityConfig) -> (MechanicalMode, MechanicalMode) {
        let vib = MechanicalMode::new(ModeKind::Vibration, 2.0e3, 1e-8, 1e-2, cavity.chi, 1e-10).unwrap();
        let rot = MechanicalMode::new(ModeKind::Rotation, 1.0e3, 1e-15, 1e-2, cavity.g_phi, 1e-17).unwrap();
        (vib, rot)
    }

    fn cavity(chi: f64, g_phi: f64, flux: f64) -> CavityConfig {
        CavityConfig { kappa: 1e6, delta0: 5e5, chi, g_phi, input_photon_flux: flux, omega_c: 1.77e15 }
    }

    #[test]
    fn decoupled_steady_state() {
        let c = cavity(0.0, 0.0, 1e15);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        assert_eq!(ss.delta_eff, c.delta0);
        assert_eq!(ss.n_cav, 2.0 * c.kappa * 1e15 / (c.kappa * c.kappa + c.delta0 * c.delta0));
        assert_eq!((ss.mean_x, ss.mean_phi), (0.0, 0.0));
    }

    #[test]
    fn undriven_cavity() {
        let c = cavity(1e16, 1e9, 0.0);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        assert_eq!(ss.n_cav, 0.0);
        assert_eq!(ss.delta_eff, c.delta0);
    }

    #[test]
    fn weak_coupling_matches_first_order_shift() {
        let c = cavity(1e12, 1e5, 1e14);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        let n0 = intracavity_photons(&c, c.delta0);
        let hbar = Constants::HBAR;
        let first = c.delta0
            - c.chi * hbar * c.chi * n0 / (v.inertia() * v.resonance().powi(2))
            - c.g_phi * hbar * c.g_phi * n0 / (r.inertia() * r.resonance().powi(2));
        assert!(((ss.delta_eff - first) / c.delta0).abs() < 1e-6, "{} vs {first}", ss.delta_eff);
        assert!(ss.delta_eff != c.delta0);
        let residual = ss.delta_eff - (c.delta0 - c.g_phi * ss.mean_phi - c.chi * ss.mean_x);
        assert!(residual.abs() <= 1e-12 * c.delta0.abs().max(c.kappa));
    }

    #[test]
    fn strong_drive_reports_bistability() {
        // Single fixed point near Δ = −1.09κ where the map has slope ≈ −4.5,
        // so the relaxed iteration settles into a two-cycle.
        let mut c = cavity(1e20, 0.0, 0.0);
        c.delta0 = 3.5e6;
        let (v, _) = modes(&c);
        let per_photon = Constants::HBAR * c.chi * c.chi / (v.inertia() * v.resonance().powi(2));
        c.input_photon_flux = 5.0 * c.kappa * c.kappa / per_photon;
        let (v, r) = modes(&c);
        assert!(matches!(solve_steady_state(&c, &v, &r), Err(Error::Bistability { .. })));
    }

    #[test]
    fn effective_parameters_limits() {
        let c = cavity(0.0, 0.0, 1e15);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        let (w2, g) = effective_params(&c, &v, &ss, 1.9e3);
        assert_eq!((w2, g), (v.resonance().powi(2), v.bare_damping()));

        let c = cavity(1e14, 1e7, 1e14);
        let (v, _) = modes(&c);
        let resonant = SteadyState { n_cav: 1e8, delta_eff: 0.0, mean_x: 0.0, mean_phi: 0.0, iterations: 0 };
        assert_eq!(effective_params(&c, &v, &resonant, 2e3), (v.resonance().powi(2), v.bare_damping()));

        let red = SteadyState { delta_eff: 5e5, ..resonant };
        let (_, g) = effective_params(&c, &v, &red, v.resonance());
        let k2 = c.kappa * c.kappa;
        let w = v.resonance();
        let extra = 4.0 * Constants::HBAR * c.chi * c.chi * 1e8 * c.kappa * 5e5
            / (v.inertia() * (k2 + (5e5 - w).powi(2)) * (k2 + (5e5 + w).powi(2)));
        assert!(g > v.bare_damping());
        assert!(((g - v.bare_damping()) / extra - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotational_damping_divides_by_inertia() {
        let c = cavity(0.0, 1e7, 1e14);
        let (_, r) = modes(&c);
        let ss = SteadyState { n_cav: 1e8, delta_eff: 5e5, mean_x: 0.0, mean_phi: 0.0, iterations: 0 };
        let w = r.resonance();
        let k2 = c.kappa * c.kappa;
        let d_phi_eff = r.bare_damping() * r.inertia()
            + 4.0 * Constants::HBAR * c.g_phi * c.g_phi * 1e8 * c.kappa * 5e5
                / ((k2 + (5e5 - w).powi(2)) * (k2 + (5e5 + w).powi(2)));
        let (_, g) = effective_params(&c, &r, &ss, w);
        assert!((g / (d_phi_eff / r.inertia()) - 1.0).abs() < 1e-12);
    }

    fn bath(t: f64) -> GasEnvironment {
        GasEnvironment::new(t, 5e-11, 4.0 * Constants::AMU).unwrap()
    }

    #[test]
    fn equipartition() {
        let c = CavityConfig::dark(1e6, 1.77e15);
        let omega_m = 2.0e3;
        let gamma = omega_m / 1e3;
        let m = 1e-8;
        let mode = MechanicalMode::new(ModeKind::Vibration, omega_m, m, gamma, 0.0, m * gamma).unwrap();
        let ss =
            solve_steady_state(&c, &mode, &MechanicalMode::new(ModeKind::Rotation, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap())
                .unwrap();
        let grid = frequency_grid(omega_m, gamma, 20.0, 4001).unwrap();
        let s = dns(&mode, &c, &ss, &bath(1.0), 0.0, &grid, &DnsOptions::default()).unwrap();
        // Both peaks at ±ω_m.
        let variance = 2.0 * s.integrate();
        let expected = Constants::K_B * 1.0 / (m * omega_m * omega_m);
        assert!((variance / expected - 1.0).abs() < 0.05, "{variance:e} vs {expected:e}");
    }

    #[test]
    fn csl_heating_is_a_temperature_shift() {
        let c = cavity(1e14, 1e7, 1e14);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        let eta = 1e40;
        let dt = delta_t_csl(&v, eta).unwrap();
        let grid = frequency_grid(v.resonance(), 10.0, 20.0, 401).unwrap();
        let opts = DnsOptions::default();
        let a = dns(&v, &c, &ss, &bath(1.0), eta, &grid, &opts).unwrap();
        let b = dns(&v, &c, &ss, &bath(1.0 + dt), 0.0, &grid, &opts).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x / y - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn csl_term_is_linear() {
        let c = cavity(1e14, 1e7, 1e14);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        let grid = frequency_grid(v.resonance(), 10.0, 20.0, 101).unwrap();
        let opts = DnsOptions::default();
        let s0 = dns(&v, &c, &ss, &bath(1.0), 0.0, &grid, &opts).unwrap();
        let s1 = dns(&v, &c, &ss, &bath(1.0), 1e40, &grid, &opts).unwrap();
        let s2 = dns(&v, &c, &ss, &bath(1.0), 2e40, &grid, &opts).unwrap();
        for i in 0..grid.len() {
            let d1 = s1.values[i] - s0.values[i];
            let d2 = s2.values[i] - s0.values[i];
            assert!((d2 / d1 - 2.0).abs() < 1e-6);
        }
    }

    #[test]
    fn vanishing_drive_recovers_bare_lorentzian() {
        let c = cavity(1e14, 1e7, 1e-300);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        let grid = frequency_grid(v.resonance(), 1.0, 20.0, 101).unwrap();
        let s = dns(&v, &c, &ss, &bath(3.0), 0.0, &grid, &DnsOptions::default()).unwrap();
        let t = Temperature::new(3.0).unwrap();
        for (w, val) in grid.iter().zip(&s.values) {
            let bare = thermal_psd_term(v.epsilon(), t, *w).unwrap()
                / (v.inertia().powi(2) * ((v.resonance().powi(2) - w * w).powi(2) + (v.bare_damping() * w).powi(2)));
            assert!((val / bare - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_frequency_rejected() {
        let c = CavityConfig::dark(1e6, 1.77e15);
        let (v, r) = modes(&c);
        let ss = solve_steady_state(&c, &v, &r).unwrap();
        assert!(matches!(
            dns(&v, &c, &ss, &bath(1.0), 0.0, &[0.0, 1.0], &DnsOptions::default()),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn excess_temperature_needs_damping() {
        assert!(excess_temperature(1.0, 0.0).is_err());
        assert_eq!(excess_temperature(0.0, 1.0).unwrap(), 0.0);
        let a = excess_temperature(1e30, 1e-10).unwrap();
        assert_eq!(excess_temperature(2e30, 1e-10).unwrap(), 2.0 * a);
    }

    #[test]
    fn grid_shape() {
        let g = frequency_grid(100.0, 1.0, 20.0, 4001).unwrap();
        assert_eq!(g.len(), 4001);
        assert_eq!(g[2000], 100.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!((g[0] - 80.0).abs() < 1e-9 && (g[4000] - 120.0).abs() < 1e-9);
        let clipped = frequency_grid(1.0, 1.0, 20.0, 11).unwrap();
        assert!(clipped[0] > 0.0);
        assert!(frequency_grid(1.0, 1.0, 20.0, 10).is_err());
    }
}
