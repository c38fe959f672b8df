//! Modified Bessel functions of the second kind, orders zero and one.
//!
//! Two regimes:
//!
//! * `x <= 2`: ascending series, with the logarithmic part coupled to the
//!   `I0`/`I1` series.
//! * `x > 2`: Steed's continued fraction (Temme's CF2) for the scaled pair
//!   `e^x K0(x)`, `e^x K1(x)`, which converges quickly for all `x >= 2`.
//!
//! Both regimes reach close to machine precision. Results underflow to
//! `0.0` once `e^{-x}` does.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Constants shared by the special-function routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialConstants {
    pub euler_gamma: f64,
}

impl Default for SpecialConstants {
    fn default() -> Self {
        Self {
            euler_gamma: EULER_GAMMA,
        }
    }
}

const SERIES_CROSSOVER: f64 = 2.0;
const MAX_TERMS: usize = 500;

fn check_domain(x: f64, name: &'static str) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { function: name, x })
    }
}

/// `K0(x)` for `x > 0` (finite). Domain errors for anything else.
pub fn bessel_k0(x: f64) -> Result<f64> {
    check_domain(x, "bessel_k0")?;
    Ok(k0(x))
}

/// `K1(x)` for `x > 0` (finite).
pub fn bessel_k1(x: f64) -> Result<f64> {
    check_domain(x, "bessel_k1")?;
    Ok(k1(x))
}

/// The leading small-argument term `-ln(x/2)` of `K0`.
pub fn k0_leading(x: f64) -> Result<f64> {
    check_domain(x, "k0_leading")?;
    Ok(-(x / 2.0).ln())
}

/// Unchecked `K0`. Returns NaN for `x <= 0` or NaN, and `0.0` for `+inf`.
///
/// Intended for integrands and hot loops where the argument is known to be
/// positive.
pub fn k0(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    if x <= SERIES_CROSSOVER {
        k0_series(x)
    } else {
        let (k0s, _) = scaled_pair_cf2(x);
        scale_back(k0s, x)
    }
}

/// Unchecked `K1`, same conventions as [`k0`].
pub fn k1(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    if x <= SERIES_CROSSOVER {
        k1_series(x)
    } else {
        let (_, k1s) = scaled_pair_cf2(x);
        scale_back(k1s, x)
    }
}

/// `e^x K0(x)`; finite and slowly varying for large `x`.
pub fn k0_scaled(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    if x <= SERIES_CROSSOVER {
        k0_series(x) * x.exp()
    } else {
        scaled_pair_cf2(x).0
    }
}

/// `e^x K1(x)`.
pub fn k1_scaled(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    if x <= SERIES_CROSSOVER {
        k1_series(x) * x.exp()
    } else {
        scaled_pair_cf2(x).1
    }
}

fn scale_back(scaled: f64, x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    // Split the exponential so the product underflows gracefully instead of
    // overflowing in an intermediate.
    let half = (-0.5 * x).exp();
    scaled * half * half
}

// K0(x) = -(ln(x/2) + γ) I0(x) + Σ_{k>=1} H_k t^k / (k!)^2,  t = x²/4
fn k0_series(x: f64) -> f64 {
    let t = 0.25 * x * x;
    let mut term = 1.0; // t^k / (k!)^2
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= t / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        let add = harmonic * term;
        tail += add;
        if add < f64::EPSILON * 1e-3 * tail.abs() && term < f64::EPSILON * 1e-3 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

// K1(x) = 1/x + ln(x/2) I1(x) - (x/4) Σ_{k>=0} (ψ(k+1) + ψ(k+2)) t^k / (k!(k+1)!)
fn k1_series(x: f64) -> f64 {
    let t = 0.25 * x * x;
    let mut term = 1.0; // t^k / (k!(k+1)!)
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    let mut psi_k2 = 1.0 - EULER_GAMMA; // ψ(k+2)
    let mut i1_sum = 1.0; // I1(x) = (x/2) Σ t^k/(k!(k+1)!)
    let mut psi_sum = psi_k1 + psi_k2;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= t / (kf * (kf + 1.0));
        psi_k1 = psi_k2;
        psi_k2 += 1.0 / (kf + 1.0);
        i1_sum += term;
        let add = (psi_k1 + psi_k2) * term;
        psi_sum += add;
        if term < f64::EPSILON * 1e-3 * i1_sum && add.abs() < f64::EPSILON * 1e-3 * psi_sum.abs() {
            break;
        }
    }
    1.0 / x + (0.5 * x).ln() * (0.5 * x) * i1_sum - 0.25 * x * psi_sum
}

// Steed's method for CF2 at order zero; returns (e^x K0, e^x K1).
fn scaled_pair_cf2(x: f64) -> (f64, f64) {
    if x.is_infinite() {
        return (0.0, 0.0);
    }
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_TERMS * 20 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON * 0.5 {
            break;
        }
    }
    let h = a1 * h;
    let k0s = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
    let k1s = k0s * (x + 0.5 - h) / x;
    (k0s, k1s)
}
