//! Double-exponential quadrature for integrals over `(0, inf)`.
//!
//! Finite panels use the tanh–sinh map, the unbounded tail uses the
//! exp–sinh map. Both cluster nodes doubly-exponentially at the endpoints,
//! so integrable logarithmic singularities at a panel end and `e^{-s}`
//! decay at infinity converge at spectral rate. Each refinement level halves
//! the step and reuses all previous nodes; the reported error estimate is
//! the change between the last two levels.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-12;

const MIN_LEVEL: usize = 3;
const MAX_LEVEL: usize = 12;
const T_MAX: f64 = 6.5;
const NEGLIGIBLE_RUN: usize = 5;
/// Truncation is only considered once the map is in its doubly-exponential
/// regime; inside this window every node is summed.
const T_CORE: f64 = 3.0;
/// Exp–sinh abscissae stop this far past the lower limit. Integrands that
/// carry mass beyond it are out of scope, and polynomial prefactors such as
/// `s²` cannot overflow to `inf · 0` before the cut.
const TAIL_REACH: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    fn combine(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

/// One node of a double-exponential rule: abscissa and `dx/dt`.
type Node = (f64, f64);

trait DeMap {
    /// `None` once the abscissa has collapsed onto an endpoint or left the
    /// representable range.
    fn node(&self, t: f64) -> Option<Node>;
}

struct TanhSinh {
    a: f64,
    b: f64,
}

impl DeMap for TanhSinh {
    fn node(&self, t: f64) -> Option<Node> {
        let u = FRAC_PI_2 * t.sinh();
        let width = self.b - self.a;
        // distances to each endpoint, computed without cancellation
        let e = (2.0 * u).exp();
        let (x, dist) = if u >= 0.0 {
            let d = width / (1.0 + e);
            (self.b - d, d)
        } else {
            let d = width / (1.0 + 1.0 / e);
            (self.a + d, d)
        };
        if !(dist > 0.0) || x <= self.a || x >= self.b {
            return None;
        }
        let cu = u.cosh();
        let w = 0.5 * width * FRAC_PI_2 * t.cosh() / (cu * cu);
        if w == 0.0 || !w.is_finite() {
            return None;
        }
        Some((x, w))
    }
}

struct ExpSinh {
    a: f64,
}

impl DeMap for ExpSinh {
    fn node(&self, t: f64) -> Option<Node> {
        let g = (FRAC_PI_2 * t.sinh()).exp();
        let x = self.a + g;
        if g > TAIL_REACH || g == 0.0 || x <= self.a {
            return None;
        }
        let w = FRAC_PI_2 * t.cosh() * g;
        if !w.is_finite() {
            return None;
        }
        Some((x, w))
    }
}

struct Accumulator<'a, F> {
    f: &'a F,
    cutoff: f64,
    evaluations: usize,
}

impl<F: Fn(f64) -> f64> Accumulator<'_, F> {
    /// Sums `w f(x)` over `t = start, start ± stride, ...` in one direction.
    fn sweep(&mut self, map: &dyn DeMap, start: f64, stride: f64) -> Result<f64> {
        let mut sum = 0.0;
        let mut quiet = 0;
        let mut t = start;
        while t.abs() <= T_MAX {
            let Some((x, w)) = map.node(t) else { break };
            let fx = (self.f)(x);
            self.evaluations += 1;
            if fx.is_nan() {
                return Err(Error::IntegrandNan(x));
            }
            let contrib = w * fx;
            sum += contrib;
            if t.abs() >= T_CORE && (contrib * stride.abs()).abs() < self.cutoff {
                quiet += 1;
                if quiet >= NEGLIGIBLE_RUN {
                    break;
                }
            } else {
                quiet = 0;
            }
            t += stride;
        }
        Ok(sum)
    }
}

fn integrate_de<F: Fn(f64) -> f64>(f: &F, map: &dyn DeMap, abs_tol: f64) -> Result<QuadratureResult> {
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "abs_tol",
            value: abs_tol,
            reason: "must be positive",
        });
    }
    let mut acc = Accumulator {
        f,
        cutoff: abs_tol * 1e-2,
        evaluations: 0,
    };

    // level 0: h = 1, all integer nodes
    let mut h = 1.0;
    let mut raw = acc.sweep(map, 0.0, 1.0)? + acc.sweep(map, -1.0, -1.0)?;
    let mut estimate = raw * h;
    let mut err = f64::INFINITY;

    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        // new (odd) nodes only
        raw += acc.sweep(map, h, 2.0 * h)? + acc.sweep(map, -h, -2.0 * h)?;
        let next = raw * h;
        err = (next - estimate).abs();
        estimate = next;
        let target = abs_tol.max(10.0 * f64::EPSILON * estimate.abs());
        if level >= MIN_LEVEL && err <= target {
            return Ok(QuadratureResult {
                value: estimate,
                abs_error_estimate: err,
                evaluations: acc.evaluations,
            });
        }
    }
    Err(Error::QuadratureNonConvergence {
        value: estimate,
        estimate: err,
        tolerance: abs_tol,
    })
}

/// Tanh–sinh quadrature on a finite interval `(a, b)`.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: b - a,
            reason: "need finite a < b",
        });
    }
    integrate_de(&f, &TanhSinh { a, b }, abs_tol)
}

/// Exp–sinh quadrature on `(a, inf)`.
pub fn integrate_tail<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64) -> Result<QuadratureResult> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "tail start must be finite and non-negative",
        });
    }
    integrate_de(&f, &ExpSinh { a }, abs_tol)
}

/// `∫_0^∞ f(s) ds`, split at `s = 1`: tanh–sinh on `(0, 1)`, exp–sinh on
/// `(1, ∞)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, abs_tol: f64) -> Result<QuadratureResult> {
    integrate_split_log(f, 1.0, abs_tol)
}

/// `∫_0^∞ f(s) ds` with a kink at `s = r` (e.g. from `|ln(r/s)|`): the two
/// pieces `(0, r)` and `(r, ∞)` are integrated separately and summed.
pub fn integrate_split_log<F: Fn(f64) -> f64>(f: F, r: f64, abs_tol: f64) -> Result<QuadratureResult> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "split point must be positive and finite",
        });
    }
    let half_tol = 0.5 * abs_tol;
    let head = integrate_finite(&f, 0.0, r, half_tol)?;
    let tail = integrate_tail(&f, r, half_tol)?;
    Ok(head.combine(tail))
}

/// `∫_0^∞ f` over the partition `(0, p_0), (p_0, p_1), ..., (p_last, ∞)`.
pub fn integrate_partitioned<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], abs_tol: f64) -> Result<QuadratureResult> {
    if breakpoints.is_empty() || breakpoints[0] <= 0.0 || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter {
            name: "breakpoints",
            value: breakpoints.first().copied().unwrap_or(f64::NAN),
            reason: "need a non-empty, strictly increasing list of positive points",
        });
    }
    let panel_tol = abs_tol / (breakpoints.len() + 1) as f64;
    let mut total = integrate_finite(&f, 0.0, breakpoints[0], panel_tol)?;
    for w in breakpoints.windows(2) {
        total = total.combine(integrate_finite(&f, w[0], w[1], panel_tol)?);
    }
    let last = *breakpoints.last().unwrap();
    Ok(total.combine(integrate_tail(&f, last, panel_tol)?))
}
