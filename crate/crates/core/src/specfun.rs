//! Exponentially scaled modified Bessel functions of order 0 and 1, and the
//! error function.
//!
//! The diffusion constants only ever need `e^{-x} I_n(x)` with arguments
//! `R²/2r_C²` that span twenty orders of magnitude, so the scaled form is
//! computed directly: an ascending power series below [`BESSEL_SERIES_LIMIT`]
//! and the Hankel asymptotic expansion above it.

use crate::error::{Error, Result};
use crate::real::Real;

/// Crossover between the power series and the asymptotic expansion.
///
/// At x = 30 the smallest term of the asymptotic series is ~1e-26, and the
/// power series (all terms positive) is still well inside the range of `f32`.
pub const BESSEL_SERIES_LIMIT: f64 = 30.0;

/// Beyond this magnitude `erf` returns exactly ±1.
pub const ERF_SATURATION: f64 = 40.0;

const ERF_SERIES_LIMIT: f64 = 3.0;
const MAX_TERMS: usize = 500;

/// `e^{-x} I_n(x)` for `n ∈ {0, 1}` and `x ≥ 0`.
pub fn bessel_i_scaled<T: Real>(n: u32, x: T) -> Result<T> {
    if n > 1 {
        return Err(Error::UnsupportedOrder(n));
    }
    if x.is_nan() || x < T::zero() {
        return Err(Error::domain(format!("Bessel argument must be non-negative, got {x}")));
    }
    if x.is_infinite() {
        return Ok(T::zero());
    }
    if x < T::lit(BESSEL_SERIES_LIMIT) {
        Ok(bessel_i_series(n, x) * (-x).exp())
    } else {
        bessel_i_asymptotic(n, x)
    }
}

/// `I_n(x)` by its ascending series, `Σ (x/2)^{2k+n} / (k! (k+n)!)`.
fn bessel_i_series<T: Real>(n: u32, x: T) -> T {
    let half = x * T::lit(0.5);
    let q = half * half;
    let mut term = if n == 0 { T::one() } else { half };
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let kf = T::from_usize_lossy(k);
        term = term * q / (kf * (kf + T::lit(f64::from(n))));
        sum = sum + term;
        if term <= sum * T::epsilon() * T::lit(0.5) {
            break;
        }
    }
    sum
}

/// `e^{-x} I_n(x) ~ (2πx)^{-1/2} Σ_k (-1)^k Π_{j≤k}(4n² - (2j-1)²) / (k! (8x)^k)`.
fn bessel_i_asymptotic<T: Real>(n: u32, x: T) -> Result<T> {
    let mu = T::lit(f64::from(4 * n * n));
    let mut term = T::one();
    let mut sum = T::one();
    let mut prev_abs = T::infinity();
    for k in 1..MAX_TERMS {
        let kf = T::from_usize_lossy(k);
        let odd = T::lit(2.0) * kf - T::one();
        term = -term * (mu - odd * odd) / (T::lit(8.0) * kf * x);
        let abs = term.abs();
        if abs > prev_abs {
            // Series started to diverge before reaching working precision.
            return Err(Error::NonFinite("bessel_i_scaled asymptotic series"));
        }
        sum = sum + term;
        if abs <= sum.abs() * T::epsilon() * T::lit(0.5) {
            return Ok(sum / (T::TAU() * x).sqrt());
        }
        prev_abs = abs;
    }
    Err(Error::NonFinite("bessel_i_scaled asymptotic series"))
}

/// `e^{-x} I_1(x) / x`, finite at `x = 0` where it equals 1/2.
pub(crate) fn bessel_i1_scaled_over_x<T: Real>(x: T) -> Result<T> {
    if x < T::lit(1.0) {
        // I_1(x)/x = Σ (x/2)^{2k} / (2 k! (k+1)!)
        let q = x * x * T::lit(0.25);
        let mut term = T::lit(0.5);
        let mut sum = term;
        for k in 1..MAX_TERMS {
            let kf = T::from_usize_lossy(k);
            term = term * q / (kf * (kf + T::one()));
            sum = sum + term;
            if term <= sum * T::epsilon() * T::lit(0.5) {
                break;
            }
        }
        Ok(sum * (-x).exp())
    } else {
        Ok(bessel_i_scaled(1, x)? / x)
    }
}

/// The error function, accurate to a few ulp in relative terms.
///
/// Uses `erf(x) = 2/√π · e^{-x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!` (all terms positive)
/// for |x| < 3 and `1 - erfc(x)` with the Laplace continued fraction above.
pub fn erf<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let magnitude = if ax >= T::lit(ERF_SATURATION) {
        T::one()
    } else if ax < T::lit(ERF_SERIES_LIMIT) {
        erf_series(ax)
    } else {
        T::one() - erfc_continued_fraction(ax)
    };
    if x < T::zero() {
        -magnitude
    } else {
        magnitude
    }
}

fn erf_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for n in 0..MAX_TERMS {
        let denom = T::from_usize_lossy(2 * n + 3);
        term = term * T::lit(2.0) * x2 / denom;
        sum = sum + term;
        if term <= sum * T::epsilon() * T::lit(0.5) {
            break;
        }
    }
    T::lit(2.0) / T::PI().sqrt() * (-x2).exp() * sum
}

/// `erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))`, modified Lentz.
fn erfc_continued_fraction<T: Real>(x: T) -> T {
    let tiny = T::min_positive_value().sqrt();
    let mut f = x;
    let mut c = x;
    let mut d = T::zero();
    for k in 1..MAX_TERMS {
        let a = T::from_usize_lossy(k) * T::lit(0.5);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = c * d;
        f = f * delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    (-x * x).exp() / (T::PI().sqrt() * f)
}
