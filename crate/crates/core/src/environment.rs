//! Residual-gas damping of a cylinder and the thermal bath term of the noise spectrum.

use crate::diffusion::{CylinderGeometry, DiffusionKind};
use crate::error::{Error, Result};
use crate::physcore::{inverse_thermal_beta, Constants, Temperature};

/// Below this value of `β|ω|` the bath term uses its classical limit.
pub const CLASSICAL_LIMIT_BETA_OMEGA: f64 = 1e-6;

/// Residual gas around the oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasEnvironment {
    temperature: Temperature<f64>,
    pressure: f64,
    gas_mass: f64,
}

impl GasEnvironment {
    /// `pressure` in Pa, `gas_mass` in kg.
    pub fn new(temperature: f64, pressure: f64, gas_mass: f64) -> Result<Self> {
        let temperature = Temperature::new(temperature)?;
        if !(pressure >= 0.0 && pressure.is_finite()) {
            return Err(Error::domain(format!("pressure must be non-negative, got {pressure} Pa")));
        }
        if !(gas_mass > 0.0 && gas_mass.is_finite()) {
            return Err(Error::domain(format!("gas particle mass must be positive, got {gas_mass} kg")));
        }
        Ok(Self { temperature, pressure, gas_mass })
    }

    pub fn temperature(&self) -> Temperature<f64> {
        self.temperature
    }

    pub fn pressure(&self) -> f64 {
        self.pressure
    }

    pub fn gas_mass(&self) -> f64 {
        self.gas_mass
    }

    pub fn with_temperature(&self, kelvin: f64) -> Result<Self> {
        Self::new(kelvin, self.pressure, self.gas_mass)
    }

    pub fn with_pressure(&self, pascal: f64) -> Result<Self> {
        Self::new(self.temperature.kelvin(), pascal, self.gas_mass)
    }
}

/// Gas damping coefficients of a cylinder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingSet {
    /// γ_m for motion perpendicular to the symmetry axis [s⁻¹].
    pub gamma_vib: f64,
    /// γ_m for motion along the symmetry axis [s⁻¹].
    pub gamma_vib_sym: f64,
    /// Rotational drag coefficient D_φ [N·m·s].
    pub d_phi: f64,
    /// m γ_m [kg/s].
    pub epsilon_vib: f64,
    /// m γ_m along the symmetry axis [kg/s].
    pub epsilon_vib_sym: f64,
    /// D_φ [N·m·s].
    pub epsilon_rot: f64,
}

impl DampingSet {
    /// Bath coupling ε for the mode that `kind` heats.
    pub fn epsilon(&self, kind: DiffusionKind) -> f64 {
        match kind {
            DiffusionKind::VibPerp => self.epsilon_vib,
            DiffusionKind::VibSym => self.epsilon_vib_sym,
            DiffusionKind::Rot => self.epsilon_rot,
        }
    }
}

/// Free-molecular damping of a cylinder in a dilute gas.
pub fn gas_damping(geom: &CylinderGeometry<f64>, env: &GasEnvironment) -> DampingSet {
    use std::f64::consts::PI;
    let p = env.pressure();
    let m = geom.mass();
    let r = geom.radius();
    let l_over_r = geom.length() / r;
    let kt = Constants::K_B * env.temperature().kelvin();
    let m_gas = env.gas_mass();

    let gamma_vib = p / m * (2.0 * PI * m_gas / kt).sqrt() * r * r * (1.0 + 1.5 * l_over_r * (1.0 + PI / 6.0));
    let d_phi = p
        * (PI * m_gas / (2.0 * kt)).sqrt()
        * r.powi(4)
        * (1.0 + PI / 4.0 + l_over_r + 0.5 * l_over_r.powi(2) + 0.25 * l_over_r.powi(3) * (1.0 + PI / 6.0));
    let gamma_vib_sym = p / m * (8.0 * PI * m_gas / kt).sqrt() * r * r * (1.0 + PI / 4.0 + 0.5 * l_over_r);

    DampingSet {
        gamma_vib,
        gamma_vib_sym,
        d_phi,
        epsilon_vib: m * gamma_vib,
        epsilon_vib_sym: m * gamma_vib_sym,
        epsilon_rot: d_phi,
    }
}

/// Bath contribution `ħ|ω| ε coth(β|ω|)` to the spectrum numerator.
pub fn thermal_psd_term(epsilon: f64, temperature: Temperature<f64>, omega: f64) -> Result<f64> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::domain(format!("thermal term needs a finite non-zero frequency, got {omega} rad/s")));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::domain(format!("bath coupling must be non-negative, got {epsilon}")));
    }
    let w = omega.abs();
    let x = inverse_thermal_beta(temperature) * w;
    if x < CLASSICAL_LIMIT_BETA_OMEGA {
        Ok(2.0 * Constants::K_B * temperature.kelvin() * epsilon)
    } else {
        Ok(Constants::HBAR * w * epsilon / x.tanh())
    }
}
