use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Below this argument the power series is used; above it the Hankel
/// asymptotic expansion. At 12 the series loses under 1e-12 to cancellation
/// and the smallest asymptotic term is below 1e-10.
const SERIES_CUTOFF: f64 = 12.0;

/// Bessel function of the first kind, order zero, for `x >= 0`.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("bessel_j0 argument"));
    }
    if x < 0.0 {
        return Err(Error::invalid(format!("bessel_j0 expects x >= 0, got {x}")));
    }
    Ok(if x <= SERIES_CUTOFF { j0_series(x) } else { j0_asymptotic(x) })
}

fn j0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) && term.abs() < 1e-20 {
            break;
        }
    }
    sum
}

// Hankel expansion: J0(x) = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4)),
// truncated at the smallest term.
fn j0_asymptotic(x: f64) -> f64 {
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    // b_k = prod_{j<=k} (-(2j-1)^2) / (k! (8x)^k);
    // P = b_0 - b_2 + b_4 - ..., Q = b_1 - b_3 + b_5 - ...
    let mut a = 1.0_f64;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = a * (-(odd * odd)) * inv8x / k as f64;
        if next.abs() >= last {
            break;
        }
        last = next.abs();
        a = next;
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let phase = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * phase.cos() - q * phase.sin())
}
