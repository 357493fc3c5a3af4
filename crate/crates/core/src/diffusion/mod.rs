//! CSL momentum and angular-momentum diffusion constants.
//!
//! Orientation convention used by both the closed forms and the quadrature
//! oracle: the cylinder's symmetry axis is `z`; vibration is measured along
//! `x` and rotation is about `x`.

mod closed;
pub mod oracle;
pub mod quadrature;
pub(crate) mod series;

pub use closed::{eta_cube, eta_cylinder};
pub use oracle::cube_rotation_oracle;
pub use oracle::{eta_numeric_oracle, Axis, Body, OracleEstimate, QuadratureConfig};

use crate::error::{Error, Result};
use crate::real::Real;

/// The two free parameters of the CSL model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CslParams<T> {
    lambda: T,
    r_c: T,
}

impl<T: Real> CslParams<T> {
    /// `lambda` is the collapse rate [s⁻¹] (zero is allowed), `r_c` the
    /// correlation length [m].
    pub fn new(lambda: T, r_c: T) -> Result<Self> {
        if !(lambda >= T::zero() && lambda.is_finite()) {
            return Err(Error::domain(format!("collapse rate must be non-negative, got {lambda}")));
        }
        if !(r_c > T::zero() && r_c.is_finite()) {
            return Err(Error::domain(format!("correlation length must be positive, got {r_c}")));
        }
        Ok(Self { lambda, r_c })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn r_c(&self) -> T {
        self.r_c
    }

    /// Same correlation length, different rate.
    pub fn with_lambda(&self, lambda: T) -> Result<Self> {
        Self::new(lambda, self.r_c)
    }
}

fn check_positive<T: Real>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Homogeneous cylinder of radius `R`, length `L` and mass `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderGeometry<T> {
    radius: T,
    length: T,
    mass: T,
}

impl<T: Real> CylinderGeometry<T> {
    pub fn new(radius: T, length: T, mass: T) -> Result<Self> {
        check_positive("cylinder radius", radius)?;
        check_positive("cylinder length", length)?;
        check_positive("cylinder mass", mass)?;
        Ok(Self { radius, length, mass })
    }

    /// Mass from a material density, `m = ρπR²L`.
    pub fn from_density(radius: T, length: T, density: T) -> Result<Self> {
        check_positive("density", density)?;
        Self::new(radius, length, density * T::PI() * radius * radius * length)
    }

    /// Fixed mass and density; the aspect ratio `R/L` picks the dimensions.
    pub fn from_mass_and_aspect(mass: T, aspect: T, density: T) -> Result<Self> {
        check_positive("aspect ratio R/L", aspect)?;
        check_positive("density", density)?;
        check_positive("cylinder mass", mass)?;
        let length = (mass / (density * T::PI() * aspect * aspect)).cbrt();
        Self::new(aspect * length, length, mass)
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// Moment of inertia about a transverse axis through the centre,
    /// `m(R²/4 + L²/12)`.
    pub fn moment_of_inertia(&self) -> T {
        self.mass * (self.radius * self.radius / T::lit(4.0) + self.length * self.length / T::lit(12.0))
    }
}

/// Homogeneous cube of side `L` and mass `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubeGeometry<T> {
    side: T,
    mass: T,
}

impl<T: Real> CubeGeometry<T> {
    pub fn new(side: T, mass: T) -> Result<Self> {
        check_positive("cube side", side)?;
        check_positive("cube mass", mass)?;
        Ok(Self { side, mass })
    }

    pub fn side(&self) -> T {
        self.side
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// `mL²/6`, the same about every axis through the centre.
    pub fn moment_of_inertia(&self) -> T {
        self.mass * self.side * self.side / T::lit(6.0)
    }
}

/// Which diffusion constant to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffusionKind {
    /// Translation along `x`, perpendicular to the symmetry axis.
    VibPerp,
    /// Translation along the symmetry axis `z`.
    VibSym,
    /// Rotation about `x`.
    Rot,
}

impl DiffusionKind {
    pub const ALL: [DiffusionKind; 3] = [DiffusionKind::VibPerp, DiffusionKind::VibSym, DiffusionKind::Rot];

    pub fn name(self) -> &'static str {
        match self {
            DiffusionKind::VibPerp => "vib_perp",
            DiffusionKind::VibSym => "vib_sym",
            DiffusionKind::Rot => "rot",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "vib_perp" | "vib" | "VIB_PERP" => Some(DiffusionKind::VibPerp),
            "vib_sym" | "VIB_SYM" => Some(DiffusionKind::VibSym),
            "rot" | "ROT" => Some(DiffusionKind::Rot),
            _ => None,
        }
    }

    pub fn is_rotational(self) -> bool {
        self == DiffusionKind::Rot
    }
}

impl std::fmt::Display for DiffusionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
