//! Power-series forms of the bracket expressions in the closed-form diffusion
//! constants, with coefficients computed once in exact rational arithmetic.
//!
//! Two arguments appear everywhere:
//!
//! * `u = L²/4r_C²`, through `A(u) = √π a erf(a) − 1 + e^{−u}` (with `a = √u`)
//!   and `B(u) = 1 − e^{−u}`;
//! * `b = R²/2r_C²`, through `e^{−b} I₀(b)` and `e^{−b} I₁(b)`.
//!
//! The rotational brackets cancel to sixth order when the body is small
//! compared to r_C (the cylinder bracket starts at `u b (3b − 2u)² / 36`), so
//! inside [`U_SERIES_LIMIT`] × [`B_SERIES_LIMIT`] the bracket is summed from a
//! double series whose vanishing low-order coefficients are exactly zero.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::real::Real;

/// Below this value of `u` the single-variable series are used.
pub const U_SERIES_LIMIT: f64 = 2.0;
/// Below this value of `b` the single-variable series are used.
pub const B_SERIES_LIMIT: f64 = 2.0;
/// Below this value of `u` the cube rotational bracket is summed as a series.
pub const CUBE_SERIES_LIMIT: f64 = 3.0;

const ORDER: usize = 64;
const DOUBLE_ORDER: usize = 40;

type Poly = Vec<BigRational>;

fn zero_poly() -> Poly {
    vec![BigRational::zero(); ORDER]
}

fn monomial(k: usize) -> Poly {
    let mut p = zero_poly();
    p[k] = BigRational::one();
    p
}

fn ratio(num: i64, den: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(num), den.clone())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn add(p: &Poly, q: &Poly) -> Poly {
    p.iter().zip(q).map(|(a, b)| a + b).collect()
}

fn scale(c: BigRational, p: &Poly) -> Poly {
    p.iter().map(|a| a * &c).collect()
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = zero_poly();
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate().take(ORDER - i) {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    out
}

fn to_f64(p: &[BigRational]) -> Vec<f64> {
    p.iter().map(|c| c.to_f64().expect("finite coefficient")).collect()
}

/// `A(u) = Σ_{m≥0} (−1)^m u^{m+1} / ((m+1)! (2m+1))`.
fn poly_a() -> Poly {
    let mut p = zero_poly();
    for m in 0..ORDER - 1 {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        p[m + 1] = ratio(sign, &(factorial(m + 1) * BigInt::from(2 * m + 1)));
    }
    p
}

/// `B(u) = 1 − e^{−u}`.
fn poly_b() -> Poly {
    let mut p = zero_poly();
    for (n, c) in p.iter_mut().enumerate().skip(1) {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        *c = ratio(sign, &factorial(n));
    }
    p
}

fn poly_exp_neg() -> Poly {
    (0..ORDER).map(|j| ratio(if j % 2 == 0 { 1 } else { -1 }, &factorial(j))).collect()
}

/// `e^{−b} I₀(b)` and `e^{−b} I₁(b)`.
fn poly_scaled_bessel() -> (Poly, Poly) {
    let mut i0 = zero_poly();
    let mut i1 = zero_poly();
    for k in 0..ORDER {
        if 2 * k < ORDER {
            let den = BigInt::from(4).pow(k as u32) * factorial(k) * factorial(k);
            i0[2 * k] = ratio(1, &den);
        }
        if 2 * k + 1 < ORDER {
            let den = BigInt::from(2).pow(2 * k as u32 + 1) * factorial(k) * factorial(k + 1);
            i1[2 * k + 1] = ratio(1, &den);
        }
    }
    let e = poly_exp_neg();
    (mul(&e, &i0), mul(&e, &i1))
}

/// The cylinder rotational bracket is `Σᵢ fᵢ(u) gᵢ(b)` with these factors.
struct CylinderRotFactors {
    f: [Poly; 3],
    g: [Poly; 3],
}

fn cylinder_rot_factors(a: &Poly, b_u: &Poly, i0e: &Poly, i1e: &Poly) -> CylinderRotFactors {
    let one = monomial(0);
    let x = monomial(1);
    let d = add(b_u, &scale(int(-1), a));
    let f3 = add(&add(&scale(int(8), &x), &scale(int(-20), a)), &scale(int(-4), &mul(&x, a)));
    let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
    let g1 = scale(int(4), &add(&add(&one, &scale(int(-1), i0e)), &scale(third.clone(), i1e)));
    let g2 = scale(int(2), &mul(&x, &add(&add(&one, &scale(int(-2), i0e)), &scale(int(-2), i1e))));
    let g3 = scale(third, i1e);
    CylinderRotFactors { f: [d, b_u.clone(), f3], g: [g1, g2, g3] }
}

/// Coefficient tables, in `f64`.
pub(crate) struct Tables {
    /// `A(u)/u`
    pub a_over_u: Vec<f64>,
    /// `B(u)/u`
    pub b_over_u: Vec<f64>,
    /// `(B − A)(u)`, `B(u)`, `8u − 20A − 4uA` (the three `fᵢ`).
    pub cyl_f: [Vec<f64>; 3],
    /// `4(1 − I₀ₑ − I₁ₑ/3)`, `2b(1 − 2I₀ₑ − 2I₁ₑ)`, `−I₁ₑ/3` (the three `gᵢ`).
    pub cyl_g: [Vec<f64>; 3],
    /// `(1 − I₀ₑ − I₁ₑ)/b`
    pub sym_over_b: Vec<f64>,
    /// Cylinder rotational bracket divided by `u b`, indexed `[j][k]` for `u^j b^k`.
    pub cyl_rot_over_ub: Vec<Vec<f64>>,
    /// Cube rotational brace divided by `u⁶`.
    pub cube_rot_over_u6: Vec<f64>,
}

fn build_tables() -> Tables {
    let a = poly_a();
    let b_u = poly_b();
    let (i0e, i1e) = poly_scaled_bessel();
    let one = monomial(0);

    let shift_down = |p: &Poly, k: usize| -> Vec<f64> {
        debug_assert!(p[..k].iter().all(Zero::is_zero));
        to_f64(&p[k..])
    };

    let factors = cylinder_rot_factors(&a, &b_u, &i0e, &i1e);
    let mut double = vec![vec![BigRational::zero(); DOUBLE_ORDER]; DOUBLE_ORDER];
    for (f, g) in factors.f.iter().zip(&factors.g) {
        for (j, fj) in f.iter().enumerate().take(DOUBLE_ORDER) {
            if fj.is_zero() {
                continue;
            }
            for (k, gk) in g.iter().enumerate().take(DOUBLE_ORDER) {
                double[j][k] += fj * gk;
            }
        }
    }
    // The bracket vanishes on both axes; divide by u b.
    for (j, row) in double.iter().enumerate() {
        debug_assert!(row[0].is_zero() && double[0][j].is_zero());
    }
    let cyl_rot_over_ub = (1..DOUBLE_ORDER).map(|j| to_f64(&double[j][1..])).collect();

    // Cube brace: B[8u(2 + B) + 32B − 2(A + B)(24 + 4u)] + 12(A + B)².
    let x = monomial(1);
    let g = add(&a, &b_u);
    let inner = add(
        &add(&scale(int(8), &mul(&x, &add(&scale(int(2), &one), &b_u))), &scale(int(32), &b_u)),
        &scale(int(-2), &mul(&g, &add(&scale(int(24), &one), &scale(int(4), &x)))),
    );
    let brace = add(&mul(&b_u, &inner), &scale(int(12), &mul(&g, &g)));

    let sym = add(&add(&one, &scale(int(-1), &i0e)), &scale(int(-1), &i1e));

    Tables {
        a_over_u: shift_down(&a, 1),
        b_over_u: shift_down(&b_u, 1),
        cyl_f: [to_f64(&factors.f[0]), to_f64(&factors.f[1]), to_f64(&factors.f[2])],
        cyl_g: [to_f64(&factors.g[0]), to_f64(&factors.g[1]), to_f64(&factors.g[2])],
        sym_over_b: shift_down(&sym, 1),
        cyl_rot_over_ub,
        cube_rot_over_u6: shift_down(&brace, 6),
    }
}

pub(crate) fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

/// Horner evaluation of `Σ cₖ xᵏ`.
pub(crate) fn horner<T: Real>(coeffs: &[f64], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + T::lit(c))
}

/// Evaluates `Σ_{j,k} c[j][k] uʲ bᵏ`.
pub(crate) fn horner2<T: Real>(coeffs: &[Vec<f64>], u: T, b: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, row| acc * u + horner(row, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_bracket_leading_terms_are_a_perfect_square() {
        // u b (3b − 2u)² / 36 = u b³/4 − u² b²/3 + u³ b/9
        let c = &tables().cyl_rot_over_ub;
        assert_eq!(c[0][0], 0.0);
        assert_eq!(c[0][1], 0.0);
        assert_eq!(c[1][0], 0.0);
        assert_eq!(c[0][2], 0.25);
        assert_eq!(c[1][1], -1.0 / 3.0);
        assert_eq!(c[2][0], 1.0 / 9.0);
    }

    #[test]
    fn cube_brace_starts_at_sixth_order() {
        assert_eq!(tables().cube_rot_over_u6[0], -2.0 / 225.0);
    }

    #[test]
    fn simple_series_match_closed_forms() {
        let t = tables();
        for &u in &[1e-3_f64, 0.3, 1.0, 1.9] {
            let a = u.sqrt();
            let direct_a = std::f64::consts::PI.sqrt() * a * crate::specfun::erf(a) - 1.0 + (-u).exp();
            assert!((horner(&t.a_over_u, u) * u / direct_a - 1.0).abs() < 1e-12);
            assert!((horner(&t.b_over_u, u) * u / -(-u).exp_m1() - 1.0).abs() < 1e-14);
        }
    }
}
