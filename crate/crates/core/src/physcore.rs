//! Physical constants, unit conversions and thermal helpers.

use crate::error::{Error, Result};
use crate::real::Real;

/// CODATA 2018 values in SI units.
#[derive(Debug, Clone, Copy)]
pub struct Constants;

impl Constants {
    /// Reduced Planck constant [J·s].
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Boltzmann constant [J/K].
    pub const K_B: f64 = 1.380_649e-23;
    /// Atomic mass unit [kg].
    pub const AMU: f64 = 1.660_539_066_60e-27;
    /// CSL reference mass m₀ [kg], one atomic mass unit.
    pub const M0: f64 = Self::AMU;
    /// Speed of light in vacuum [m/s].
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

    #[inline]
    pub fn hbar<T: Real>() -> T {
        T::lit(Self::HBAR)
    }

    #[inline]
    pub fn k_b<T: Real>() -> T {
        T::lit(Self::K_B)
    }

    #[inline]
    pub fn m0<T: Real>() -> T {
        T::lit(Self::M0)
    }

    #[inline]
    pub fn amu<T: Real>() -> T {
        T::lit(Self::AMU)
    }
}

/// Absolute temperature, strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature<T>(T);

impl<T: Real> Temperature<T> {
    pub fn new(kelvin: T) -> Result<Self> {
        if kelvin > T::zero() && kelvin.is_finite() {
            Ok(Self(kelvin))
        } else {
            Err(Error::domain(format!("temperature must be positive and finite, got {kelvin} K")))
        }
    }

    #[inline]
    pub fn kelvin(self) -> T {
        self.0
    }
}

/// Converts a pressure from mbar to Pa.
pub fn pressure_mbar_to_pa<T: Real>(p_mbar: T) -> Result<T> {
    if p_mbar >= T::zero() && p_mbar.is_finite() {
        Ok(p_mbar * T::lit(100.0))
    } else {
        Err(Error::domain(format!("pressure must be non-negative, got {p_mbar} mbar")))
    }
}

/// β = ħ / (2 k_B T) [s], the inverse thermal frequency of the bath.
pub fn inverse_thermal_beta<T: Real>(t: Temperature<T>) -> T {
    Constants::hbar::<T>() / (T::lit(2.0) * Constants::k_b::<T>() * t.kelvin())
}

/// Atomic mass of a named residual-gas species, in amu.
pub fn gas_species_mass_amu(species: &str) -> Option<f64> {
    match species {
        "He-4" | "He4" | "helium-4" => Some(4.002_602),
        "H2" => Some(2.015_88),
        "N2" => Some(28.013_4),
        "Ar" | "Ar-40" => Some(39.948),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pressure_conversion() {
        assert_eq!(pressure_mbar_to_pa(1.0_f64).unwrap(), 100.0);
        assert_eq!(pressure_mbar_to_pa(0.0_f64).unwrap(), 0.0);
        assert_eq!(pressure_mbar_to_pa(5e-13_f64).unwrap(), 5e-13 * 100.0);
        assert!((pressure_mbar_to_pa(5e-13_f64).unwrap() / 5e-11 - 1.0).abs() < 1e-15);
        assert!(matches!(pressure_mbar_to_pa(-1.0_f64), Err(Error::Domain(_))));
    }

    #[test]
    fn beta_at_one_kelvin() {
        // ħ/(2 k_B · 1 K) evaluated with 50-digit arithmetic.
        let beta = inverse_thermal_beta(Temperature::new(1.0_f64).unwrap());
        assert!((beta / 3.819_116_288_788_823e-12 - 1.0).abs() < 1e-14, "{beta:e}");
    }

    #[test]
    fn beta_scales_inversely_with_temperature() {
        let b1 = inverse_thermal_beta(Temperature::new(1.0_f64).unwrap());
        let b_half = inverse_thermal_beta(Temperature::new(0.5_f64).unwrap());
        assert_eq!(b_half, 2.0 * b1);
        for &t in &[1e-3, 0.1, 4.2, 300.0, 1e6] {
            let b = inverse_thermal_beta(Temperature::new(t).unwrap());
            assert!((b * t / b1 - 1.0).abs() < 4.0 * f64::EPSILON);
        }
        let hot = inverse_thermal_beta(Temperature::new(1e300_f64).unwrap());
        assert!((0.0..1e-311).contains(&hot));
    }

    #[test]
    fn temperature_rejects_non_positive() {
        assert!(Temperature::new(0.0_f64).is_err());
        assert!(Temperature::new(-2.0_f64).is_err());
        assert!(Temperature::new(f64::NAN).is_err());
    }

    #[test]
    fn constants_positive_and_m0_is_amu() {
        for c in [Constants::HBAR, Constants::K_B, Constants::AMU, Constants::M0] {
            assert!(c > 0.0);
        }
        assert_eq!(Constants::M0, Constants::AMU);
    }
}
