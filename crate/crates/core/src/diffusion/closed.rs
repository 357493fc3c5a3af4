//! Closed-form diffusion constants for the homogeneous cylinder and cube.
//!
//! Every expression is rewritten in the dimensionless arguments
//! `u = L²/4r_C²` and `b = R²/2r_C²` and split into factors that are each
//! evaluated without cancellation (see [`super::series`]).

use super::series::{self, horner, horner2, tables};
use super::{CslParams, CubeGeometry, CylinderGeometry, DiffusionKind};
use crate::error::{Error, Result};
use crate::physcore::Constants;
use crate::real::Real;
use crate::specfun::{bessel_i1_scaled_over_x, bessel_i_scaled, erf};

/// `A(u) = √π a erf(a) − 1 + e^{−u}` evaluated directly, `a = √u`.
fn a_direct<T: Real>(u: T) -> T {
    let a = u.sqrt();
    T::PI().sqrt() * a * erf(a) - T::one() + (-u).exp()
}

fn a_over_u<T: Real>(u: T) -> T {
    if u < T::lit(series::U_SERIES_LIMIT) {
        horner(&tables().a_over_u, u)
    } else {
        a_direct(u) / u
    }
}

fn b_over_u<T: Real>(u: T) -> T {
    if u < T::lit(series::U_SERIES_LIMIT) {
        horner(&tables().b_over_u, u)
    } else {
        -(-u).exp_m1() / u
    }
}

/// `(1 − e^{−b}(I₀ + I₁)) / b`
fn sym_over_b<T: Real>(b: T) -> Result<T> {
    if b < T::lit(series::B_SERIES_LIMIT) {
        Ok(horner(&tables().sym_over_b, b))
    } else {
        Ok((T::one() - bessel_i_scaled(0, b)? - bessel_i_scaled(1, b)?) / b)
    }
}

/// The three `u`-factors of the cylinder rotational bracket.
fn cyl_rot_f<T: Real>(u: T) -> [T; 3] {
    if u < T::lit(series::U_SERIES_LIMIT) {
        let t = tables();
        [horner(&t.cyl_f[0], u), horner(&t.cyl_f[1], u), horner(&t.cyl_f[2], u)]
    } else {
        let a = a_direct(u);
        let b = -(-u).exp_m1();
        [b - a, b, T::lit(8.0) * u - T::lit(20.0) * a - T::lit(4.0) * u * a]
    }
}

/// The three `b`-factors of the cylinder rotational bracket.
fn cyl_rot_g<T: Real>(b: T) -> Result<[T; 3]> {
    if b < T::lit(series::B_SERIES_LIMIT) {
        let t = tables();
        Ok([horner(&t.cyl_g[0], b), horner(&t.cyl_g[1], b), horner(&t.cyl_g[2], b)])
    } else {
        let i0 = bessel_i_scaled(0, b)?;
        let i1 = bessel_i_scaled(1, b)?;
        let third = T::one() / T::lit(3.0);
        Ok([
            T::lit(4.0) * (T::one() - i0 - i1 * third),
            T::lit(2.0) * b * (T::one() - T::lit(2.0) * i0 - T::lit(2.0) * i1),
            -i1 * third,
        ])
    }
}

/// Curly bracket of η_R^(cyl) divided by `u b`.
fn cyl_rot_bracket_over_ub<T: Real>(u: T, b: T) -> Result<T> {
    if u < T::lit(series::U_SERIES_LIMIT) && b < T::lit(series::B_SERIES_LIMIT) {
        return Ok(horner2(&tables().cyl_rot_over_ub, u, b));
    }
    let f = cyl_rot_f(u);
    let g = cyl_rot_g(b)?;
    Ok((f[0] * g[0] + f[1] * g[1] + f[2] * g[2]) / (u * b))
}

/// `λ (m/m₀)²`
fn rate_scale<T: Real>(mass: T, csl: &CslParams<T>) -> T {
    let ratio = mass / Constants::m0::<T>();
    csl.lambda() * ratio * ratio
}

fn finite<T: Real>(v: T, what: &'static str) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Diffusion constant of a homogeneous cylinder.
///
/// Units are m⁻² s⁻¹ for the vibrational kinds and s⁻¹ for [`DiffusionKind::Rot`].
pub fn eta_cylinder<T: Real>(geom: &CylinderGeometry<T>, kind: DiffusionKind, csl: &CslParams<T>) -> Result<T> {
    let rc = csl.r_c();
    let scale = rate_scale(geom.mass(), csl);
    let half_l = geom.length() / (T::lit(2.0) * rc);
    let u = half_l * half_l;
    let rr = geom.radius() / rc;
    let b = rr * rr * T::lit(0.5);
    let value = match kind {
        // 8m²r_C²λ/(L²m₀²R²) · e^{−b}I₁(b) · A(u)
        DiffusionKind::VibPerp => scale / (rc * rc) * a_over_u(u) * bessel_i1_scaled_over_x(b)?,
        // 8m²r_C²λ/(L²m₀²R²) · B(u) · (1 − e^{−b}(I₀ + I₁))
        DiffusionKind::VibSym => scale / (rc * rc) * b_over_u(u) * sym_over_b(b)?,
        // 2λr_C⁴m²/(L²R²m₀²) · {…} = λ(m/m₀)² {…} / (4ub)
        DiffusionKind::Rot => scale * cyl_rot_bracket_over_ub(u, b)? / T::lit(4.0),
    };
    finite(value, "eta_cylinder")
}

/// Diffusion constant of a homogeneous cube; rotation is about any face normal.
pub fn eta_cube<T: Real>(geom: &CubeGeometry<T>, kind: DiffusionKind, csl: &CslParams<T>) -> Result<T> {
    let rc = csl.r_c();
    let scale = rate_scale(geom.mass(), csl);
    let half_l = geom.side() / (T::lit(2.0) * rc);
    let u = half_l * half_l;
    let value = match kind {
        // 32λr_C⁴m²/(m₀²L⁶) · A² · B
        DiffusionKind::VibPerp => {
            let a = a_over_u(u);
            scale / (T::lit(2.0) * rc * rc) * a * a * b_over_u(u)
        }
        // (8λ/3)(m/m₀)²(r_C/L)⁶ · (−A) · {…}
        DiffusionKind::Rot => {
            let brace_scaled = if u < T::lit(series::CUBE_SERIES_LIMIT) {
                let u2 = u * u;
                horner(&tables().cube_rot_over_u6, u) * u2 * u2 * u2
            } else {
                let a = a_direct(u);
                let b = -(-u).exp_m1();
                let g = a + b;
                let inner = T::lit(8.0) * u * (T::lit(2.0) + b) + T::lit(32.0) * b
                    - T::lit(2.0) * g * (T::lit(24.0) + T::lit(4.0) * u);
                b * inner + T::lit(12.0) * g * g
            };
            // brace/u³ computed as (brace/u⁶)·u⁶/u³ in the series branch.
            scale / T::lit(24.0) * (-a_over_u(u)) * brace_scaled / (u * u)
        }
        DiffusionKind::VibSym => {
            return Err(Error::UnsupportedKind { kind: "vib_sym", shape: "cube" });
        }
    };
    finite(value, "eta_cube")
}
