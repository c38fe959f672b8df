//! Physical parameters, the dimensionless reduction and closed-form
//! spectral constants.
//!
//! The Hamiltonian is `H = -ħ²/(2μ) Δ - α K0(β|x|)` on the plane. With
//! `s = βr` and energies measured in units of `ħ²β²/(2μ)` the radial
//! problem depends on the single coupling `C = 2μα/(ħβ)²`. Every solver in
//! this crate works in that dimensionless frame; physical values only enter
//! through [`coupling_from_physical`] and leave through [`energy_scale`].

use crate::error::{Error, Result};
use crate::specfun;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be strictly positive and finite",
        })
    }
}

impl PhysicalParams {
    pub fn new(hbar: f64, mu: f64, alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            hbar: positive("hbar", hbar)?,
            mu: positive("mu", mu)?,
            alpha: positive("alpha", alpha)?,
            beta: positive("beta", beta)?,
        })
    }

    /// `ħ = μ = α = β = 1`.
    pub fn unit() -> Self {
        Self {
            hbar: 1.0,
            mu: 1.0,
            alpha: 1.0,
            beta: 1.0,
        }
    }

    /// `A = μ^{1/2} α / (4ħβ)`, the scale of the Kato constants.
    pub fn kato_scale(&self) -> f64 {
        self.mu.sqrt() * self.alpha / (4.0 * self.hbar * self.beta)
    }
}

/// Dimensionless coupling `C`. Zero is accepted and means the free particle.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(c: f64) -> Result<Self> {
        if c.is_finite() && c >= 0.0 {
            Ok(Self(c))
        } else {
            Err(Error::InvalidParameter {
                name: "C",
                value: c,
                reason: "coupling must be finite and non-negative",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `C = 2μα / (ħβ)²`.
pub fn coupling_from_physical(p: &PhysicalParams) -> Result<Coupling> {
    let hb = p.hbar * p.beta;
    let c = 2.0 * p.mu * p.alpha / (hb * hb);
    if !c.is_finite() || (c == 0.0 && p.alpha > 0.0) {
        return Err(Error::Overflow("coupling C = 2 mu alpha / (hbar beta)^2"));
    }
    Coupling::new(c)
}

/// `ħ²β²/(2μ)`: physical energy `E = ε · energy_scale`.
pub fn energy_scale(p: &PhysicalParams) -> Result<f64> {
    let hb = p.hbar * p.beta;
    let e = hb * hb / (2.0 * p.mu);
    if !e.is_finite() || e == 0.0 {
        return Err(Error::Overflow("energy scale hbar^2 beta^2 / (2 mu)"));
    }
    Ok(e)
}

/// Dimensionless effective potential `(m² - 1/4)/s² - C K0(s)`.
pub fn v_eff(s: f64, m: u32, c: Coupling) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain {
            function: "v_eff",
            x: s,
        });
    }
    let mf = m as f64;
    Ok((mf * mf - 0.25) / (s * s) - c.value() * specfun::k0(s))
}

/// Physical effective potential at radius `r`: `energy_scale · v_eff(βr)`.
pub fn v_eff_physical(r: f64, m: u32, p: &PhysicalParams) -> Result<f64> {
    let c = coupling_from_physical(p)?;
    Ok(energy_scale(p)? * v_eff(p.beta * r, m, c)?)
}

/// Relative-bound constants of the potential with respect to `H0` at a
/// given auxiliary parameter `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KatoReport {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub scale: f64,
    /// `b/(1-a)`; only meaningful because `a < 1` is enforced on construction.
    pub f: f64,
}

/// `a(λ) = A/λ`, `b(λ) = Aλ` with `A = μ^{1/2}α/(4ħβ)`, and `f = b/(1-a)`.
///
/// Fails with [`Error::KatoInvalid`] when `λ <= A`, where `a >= 1` and the
/// relative bound does not yield self-adjointness.
pub fn kato_constants(p: &PhysicalParams, lambda: f64) -> Result<KatoReport> {
    positive("lambda", lambda)?;
    let scale = p.kato_scale();
    let a = scale / lambda;
    let b = scale * lambda;
    if a >= 1.0 {
        return Err(Error::KatoInvalid { a });
    }
    Ok(KatoReport {
        lambda,
        a,
        b,
        scale,
        f: b / (1.0 - a),
    })
}

/// `f(λ) = Aλ²/(λ - A)` for `λ > A`.
pub fn kato_lower_bound_function(p: &PhysicalParams, lambda: f64) -> f64 {
    let a = p.kato_scale();
    a * lambda * lambda / (lambda - a)
}

/// Minimiser of `f(λ)`: `λ0 = 2A`, where `f(λ0) = 4A² = Cα/8`.
pub fn optimal_lambda(p: &PhysicalParams) -> f64 {
    2.0 * p.kato_scale()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConstants {
    /// `-Cα/8`
    pub lower_bound_physical: f64,
    /// `-C²/8`, the same bound in units of [`energy_scale`].
    pub lower_bound_dimensionless: f64,
    /// `Cα/8`
    pub gap_physical: f64,
}

pub fn spectral_constants(p: &PhysicalParams) -> Result<SpectralConstants> {
    let c = coupling_from_physical(p)?.value();
    let lower = -c * p.alpha / 8.0;
    Ok(SpectralConstants {
        lower_bound_physical: lower,
        lower_bound_dimensionless: lower / energy_scale(p)?,
        gap_physical: -lower,
    })
}

/// `-C²/8` straight from the coupling.
pub fn lower_bound_dimensionless(c: Coupling) -> f64 {
    -c.value() * c.value() / 8.0
}

/// One row of a spectral sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub coupling: f64,
    pub m: u32,
    pub count: usize,
    /// Ground-state energy of the channel, dimensionless.
    pub eps0: Option<f64>,
    /// Ground-state energy in physical units (physical-parameter runs only).
    pub e0_physical: Option<f64>,
    pub lower_bound_physical: Option<f64>,
    pub lower_bound_dimensionless: f64,
    pub gap_physical: Option<f64>,
    pub seto_closed: f64,
    pub seto_numeric: Option<f64>,
    pub flags: Vec<String>,
}
