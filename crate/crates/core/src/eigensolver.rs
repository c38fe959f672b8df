//! Negative spectrum of the dimensionless radial operator
//!
//! ```text
//! -Φ'' + [(m² - 1/4)/s² - C K0(s)] Φ = ε Φ,   s in (0, ∞).
//! ```
//!
//! All integration happens on a grid uniform in `x = ln s`. Writing
//! `Φ = s^{1/2} u` turns the equation into
//!
//! ```text
//! u_xx = [m² - s² (C K0(s) + ε)] u
//! ```
//!
//! which has no singular coefficient: the `-1/(4s²)` term of the s-wave
//! channel disappears and `u ~ s^m` near the origin. The Numerov recursion
//! is applied to this form. `u` and `Φ` share their zeros, so node counts
//! carry over unchanged.
//!
//! Eigenvalues are located by Sturm node counting of the outward solution
//! (which brackets each state) and refined by bisection on the sign of the
//! outward/inward Wronskian at a fixed matching point.

use crate::error::{Error, Result};
use crate::model::{lower_bound_dimensionless, Coupling};
use crate::specfun;
use crate::tridiag::SymTridiagonal;

pub const DEFAULT_S_MIN: f64 = 1e-6;
pub const DEFAULT_S_MAX: f64 = 40.0;
pub const DEFAULT_S_MAX_LIMIT: f64 = 400.0;
pub const DEFAULT_N_STEPS: usize = 20_000;
pub const DEFAULT_EIG_TOL: f64 = 1e-10;

/// Below this coupling the ground state is exponentially shallow.
pub const SHALLOW_COUPLING: f64 = 0.3;
/// Required decay length count `κ·s_max` for the inward seed.
pub const TAIL_DECAY_LENGTHS: f64 = 25.0;

const RESCALE_THRESHOLD: f64 = 1e100;
const MAX_RESCALES: usize = 64;
/// Potential considered switched off beyond this radius.
const POTENTIAL_RANGE: f64 = 60.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProblem {
    pub m: u32,
    pub coupling: Coupling,
    pub s_min: f64,
    /// Initial outer cutoff; [`find_eigenvalues`] extends it as needed.
    pub s_max: f64,
    /// Hard cap for the automatic extension of `s_max`.
    pub s_max_limit: f64,
    pub n_steps: usize,
    pub eig_tol: f64,
}

impl RadialProblem {
    pub fn new(m: u32, coupling: f64) -> Result<Self> {
        let p = Self {
            m,
            coupling: Coupling::new(coupling)?,
            s_min: DEFAULT_S_MIN,
            s_max: DEFAULT_S_MAX,
            s_max_limit: DEFAULT_S_MAX_LIMIT,
            n_steps: DEFAULT_N_STEPS,
            eig_tol: DEFAULT_EIG_TOL,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_s_max(mut self, s_max: f64) -> Result<Self> {
        self.s_max = s_max;
        self.s_max_limit = self.s_max_limit.max(s_max);
        self.validate()?;
        Ok(self)
    }

    pub fn with_s_max_limit(mut self, limit: f64) -> Result<Self> {
        self.s_max_limit = limit;
        self.validate()?;
        Ok(self)
    }

    pub fn with_n_steps(mut self, n_steps: usize) -> Result<Self> {
        self.n_steps = n_steps;
        self.validate()?;
        Ok(self)
    }

    pub fn with_eig_tol(mut self, eig_tol: f64) -> Result<Self> {
        self.eig_tol = eig_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(Error::InvalidParameter { name, value, reason });
        if !(self.s_min > 0.0 && self.s_min.is_finite()) {
            return bad("s_min", self.s_min, "must be positive");
        }
        if !(self.s_max > self.s_min && self.s_max.is_finite()) {
            return bad("s_max", self.s_max, "must exceed s_min");
        }
        if !(self.s_max_limit >= self.s_max && self.s_max_limit.is_finite()) {
            return bad("s_max_limit", self.s_max_limit, "must be at least s_max");
        }
        if self.n_steps < 1000 {
            return bad("n_steps", self.n_steps as f64, "need at least 1000 steps");
        }
        if !(self.eig_tol > 0.0) {
            return bad("eig_tol", self.eig_tol, "must be positive");
        }
        Ok(())
    }

    fn c(&self) -> f64 {
        self.coupling.value()
    }
}

/// A radial function `Φ` sampled on an ordered grid of `s` values.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub grid: Vec<f64>,
    pub phi: Vec<f64>,
    pub nodes: usize,
}

impl RadialSolution {
    fn from_u(grid: &LogGrid, u: &[f64]) -> Self {
        let phi: Vec<f64> = grid.s.iter().zip(u).map(|(s, u)| s.sqrt() * u).collect();
        let nodes = sign_changes(&phi);
        Self {
            grid: grid.s.clone(),
            phi,
            nodes,
        }
    }

    /// Sign changes of `Φ` restricted to `lo < s < hi`.
    pub fn nodes_in(&self, lo: f64, hi: f64) -> usize {
        let vals: Vec<f64> = self
            .grid
            .iter()
            .zip(&self.phi)
            .filter(|(s, _)| **s > lo && **s < hi)
            .map(|(_, p)| *p)
            .collect();
        sign_changes(&vals)
    }

    /// `Φ'/Φ` at the outer end, from the last two samples.
    pub fn outer_log_derivative(&self) -> f64 {
        let n = self.grid.len();
        (self.phi[n - 1].abs().ln() - self.phi[n - 2].abs().ln()) / (self.grid[n - 1] - self.grid[n - 2])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub node_counts: Vec<usize>,
    pub wavefunctions: Vec<RadialSolution>,
    /// `√(-ε_n)`
    pub kappa: Vec<f64>,
    /// Outer cutoff the eigenvalues were converged at.
    pub s_max: f64,
    /// Set for `C < 0.3` or when the tail could not be fully resolved
    /// within `s_max_limit`.
    pub shallow_regime: bool,
}

impl EigenResult {
    fn empty(s_max: f64, shallow_regime: bool) -> Self {
        Self {
            eigenvalues: Vec::new(),
            node_counts: Vec::new(),
            wavefunctions: Vec::new(),
            kappa: Vec::new(),
            s_max,
            shallow_regime,
        }
    }

    pub fn count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn ground_state(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }
}

fn sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut count = 0;
    for &v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

/// Uniform grid in `x = ln s` with the `ε`-independent parts of the
/// Numerov coefficient precomputed.
#[derive(Debug, Clone)]
struct LogGrid {
    h: f64,
    s: Vec<f64>,
    /// `m² - C s² K0(s)`
    base: Vec<f64>,
    /// `s²`
    weight: Vec<f64>,
}

impl LogGrid {
    fn new(m: u32, c: f64, s_min: f64, s_max: f64, n_steps: usize) -> Self {
        let h = (s_max.ln() - s_min.ln()) / n_steps as f64;
        Self::with_step(m, c, s_min, h, n_steps)
    }

    /// Grid with step `h` covering at least `[s_min, s_max]`; the outer end
    /// is rounded up to a whole number of steps.
    fn covering(m: u32, c: f64, s_min: f64, s_max: f64, h: f64) -> Self {
        let n_steps = ((s_max.ln() - s_min.ln()) / h - 1e-9).ceil() as usize;
        Self::with_step(m, c, s_min, h, n_steps)
    }

    fn with_step(m: u32, c: f64, s_min: f64, h: f64, n_steps: usize) -> Self {
        let x0 = s_min.ln();
        let m2 = (m as f64) * (m as f64);
        let s: Vec<f64> = (0..=n_steps).map(|i| (x0 + i as f64 * h).exp()).collect();
        let weight: Vec<f64> = s.iter().map(|s| s * s).collect();
        let base = s
            .iter()
            .zip(&weight)
            .map(|(s, w)| m2 - c * w * specfun::k0(*s))
            .collect();
        Self { h, s, base, weight }
    }

    fn last(&self) -> usize {
        self.s.len() - 1
    }

    #[inline]
    fn q(&self, i: usize, eps: f64) -> f64 {
        self.base[i] - eps * self.weight[i]
    }
}

/// Shooting machinery for one `(m, C, s_max)` grid.
struct Shooter {
    m: u32,
    grid: LogGrid,
    match_index: usize,
}

impl Shooter {
    /// Grid of `p` itself.
    fn new(p: &RadialProblem) -> Self {
        Self::from_grid(p, LogGrid::new(p.m, p.c(), p.s_min, p.s_max, p.n_steps))
    }

    /// Same step as the grid of `p`, extended out to `s_max`.
    fn extended(p: &RadialProblem, s_max: f64) -> Self {
        let h = (p.s_max.ln() - p.s_min.ln()) / p.n_steps as f64;
        Self::from_grid(p, LogGrid::covering(p.m, p.c(), p.s_min, s_max, h))
    }

    fn s_max(&self) -> f64 {
        self.grid.s[self.grid.last()]
    }

    fn from_grid(p: &RadialProblem, grid: LogGrid) -> Self {
        let match_index = matching_index(&grid, p.m, p.c());
        Self {
            m: p.m,
            grid,
            match_index,
        }
    }

    /// Numerov march from the two seeded values at `start` and its
    /// neighbour towards `end` (either direction), rescaling on growth.
    ///
    /// Works on `w = g u` with `g = 1 - h²q/12` and carries the first
    /// difference of `w` explicitly, so rounding grows like `n` rather than
    /// `n²` along the grid.
    fn march(&self, eps: f64, u: &mut [f64], start: usize, end: usize) -> Result<()> {
        let h2 = self.grid.h * self.grid.h;
        let g = |i: usize| 1.0 - h2 / 12.0 * self.grid.q(i, eps);
        let forward = end > start;
        let next = |i: usize| if forward { i + 1 } else { i - 1 };
        let mut i = next(start);
        let mut w = g(i) * u[i];
        let mut d = w - g(start) * u[start];
        let mut rescales = 0;
        while i != end {
            d += h2 * self.grid.q(i, eps) * u[i];
            w += d;
            let j = next(i);
            u[j] = w / g(j);
            if !u[j].is_finite() {
                return Err(Error::SolutionOverflow { rescales });
            }
            if u[j].abs() > RESCALE_THRESHOLD {
                rescales += 1;
                if rescales > MAX_RESCALES {
                    return Err(Error::SolutionOverflow { rescales });
                }
                let span = if forward { &mut u[..=j] } else { &mut u[j..] };
                span.iter_mut().for_each(|v| *v /= RESCALE_THRESHOLD);
                w /= RESCALE_THRESHOLD;
                d /= RESCALE_THRESHOLD;
            }
            i = j;
        }
        Ok(())
    }

    /// Outward solution on `0..=upto`, seeded by `u ∝ s^m`.
    fn outward(&self, eps: f64, upto: usize) -> Result<Vec<f64>> {
        let n = self.grid.last();
        let mut u = vec![0.0; n + 1];
        let m = self.m as i32;
        // relative seed; s_0^m itself may underflow for large m
        u[0] = 1.0;
        u[1] = (self.grid.s[1] / self.grid.s[0]).powi(m);
        if upto > 1 {
            self.march(eps, &mut u, 0, upto)?;
        }
        Ok(u)
    }

    /// Inward solution on `downto..=n`, seeded by `Φ ∝ e^{-κs}`.
    fn inward(&self, eps: f64, downto: usize) -> Result<Vec<f64>> {
        let n = self.grid.last();
        let kappa = (-eps).sqrt();
        let s = &self.grid.s;
        let mut u = vec![0.0; n + 1];
        // u = Φ / √s with e^{-κ s_n} factored out
        u[n] = 1.0 / s[n].sqrt();
        u[n - 1] = (kappa * (s[n] - s[n - 1])).exp() / s[n - 1].sqrt();
        if downto + 1 < n {
            self.march(eps, &mut u, n, downto)?;
        }
        Ok(u)
    }

    /// Sign changes of the outward solution over the whole grid: the
    /// number of Dirichlet eigenvalues of `[s_min, s_max]` below `eps`.
    fn box_count(&self, eps: f64) -> Result<usize> {
        let n = self.grid.last();
        Ok(sign_changes(&self.outward(eps, n)?))
    }

    /// Normalised outward/inward Wronskian at the matching point. Continuous
    /// in `eps`, zero exactly at eigenvalues.
    fn mismatch(&self, eps: f64) -> Result<f64> {
        let j = self.match_index;
        let out = self.outward(eps, j + 1)?;
        let inn = self.inward(eps, j)?;
        let no = out[j].hypot(out[j + 1]);
        let ni = inn[j].hypot(inn[j + 1]);
        Ok((out[j] / no) * (inn[j + 1] / ni) - (out[j + 1] / no) * (inn[j] / ni))
    }

    /// Smallest `eps` in `(lo, hi)` at which the box count exceeds `index`.
    fn bisect_box(&self, index: usize, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.box_count(mid)? > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn bisect_mismatch(&self, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
        let mut f_lo = self.mismatch(lo)?;
        let f_hi = self.mismatch(hi)?;
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if (f_lo > 0.0) == (f_hi > 0.0) {
            return Err(Error::BracketFailure(format!(
                "mismatch has no sign change on [{lo}, {hi}] although node counting places an eigenvalue there"
            )));
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = self.mismatch(mid)?;
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// An energy with no eigenvalue below it.
    fn floor(&self, c: f64) -> Result<f64> {
        let mut lo = lower_bound_dimensionless(Coupling::new(c)?) - 1.0;
        for _ in 0..60 {
            if self.box_count(lo)? == 0 {
                return Ok(lo);
            }
            lo *= 2.0;
        }
        Err(Error::BracketFailure("no energy floor found".into()))
    }

    /// `count` lowest eigenvalues (mismatch roots), ascending.
    fn eigenvalues(&self, c: f64, count: usize, tol: f64) -> Result<Vec<f64>> {
        let lo = self.floor(c)?;
        let box_tol = tol.min(1e-12);
        let mut dirichlet = Vec::with_capacity(count);
        for n in 0..count {
            let start = dirichlet.last().copied().unwrap_or(lo);
            dirichlet.push(self.bisect_box(n, start, 0.0, box_tol)?);
        }
        (0..count)
            .map(|n| {
                let left = if n == 0 {
                    lo
                } else {
                    0.5 * (dirichlet[n - 1] + dirichlet[n])
                };
                let right = if n + 1 < count {
                    0.5 * (dirichlet[n] + dirichlet[n + 1])
                } else {
                    0.5 * dirichlet[n]
                };
                self.bisect_mismatch(left, right, tol)
            })
            .collect()
    }

    /// Normalised eigenfunction at an eigenvalue.
    fn wavefunction(&self, eps: f64) -> Result<RadialSolution> {
        let j = self.match_index;
        let n = self.grid.last();
        let out = self.outward(eps, j + 1)?;
        let inn = self.inward(eps, j)?;
        let (k, ratio) = if inn[j].abs() > inn[j + 1].abs() * 1e-8 {
            (j, out[j] / inn[j])
        } else {
            (j + 1, out[j + 1] / inn[j + 1])
        };
        let mut u = out;
        for i in k..=n {
            u[i] = inn[i] * ratio;
        }
        let peak = u.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        u.iter_mut().for_each(|v| *v /= peak);
        let norm = simpson(
            self.grid.h,
            &u.iter()
                .zip(&self.grid.weight)
                .map(|(u, w)| u * u * w)
                .collect::<Vec<_>>(),
        );
        if !(norm > 0.0) {
            return Err(Error::DegenerateTrial);
        }
        let scale = 1.0 / norm.sqrt();
        u.iter_mut().for_each(|v| *v *= scale);
        Ok(RadialSolution::from_u(&self.grid, &u))
    }
}

/// Matching point: for `m = 0` the maximum of `s K0(s)`, otherwise the
/// minimum of `v_eff` (falling back to the `m = 0` rule when `v_eff` has no
/// interior minimum). Ties go to the smaller `s`.
fn matching_index(grid: &LogGrid, m: u32, c: f64) -> usize {
    let n = grid.last();
    let argmax_sk0 = || {
        let mut best = 1;
        let mut best_val = f64::NEG_INFINITY;
        for i in 1..n - 1 {
            let v = grid.s[i] * specfun::k0(grid.s[i]);
            if v > best_val {
                best_val = v;
                best = i;
            }
        }
        best
    };
    if m == 0 || c == 0.0 {
        return argmax_sk0();
    }
    // v_eff = (base - 1/4) / s²
    let mut best = 1;
    let mut best_val = f64::INFINITY;
    for i in 1..n - 1 {
        let v = (grid.base[i] - 0.25) / grid.weight[i];
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    if best >= n - 2 || best_val >= 0.0 {
        argmax_sk0()
    } else {
        best
    }
}

fn simpson(h: f64, f: &[f64]) -> f64 {
    let n = f.len() - 1;
    if n % 2 == 1 {
        // odd number of intervals: Simpson on all but the last, trapezoid on it
        return simpson(h, &f[..n]) + 0.5 * h * (f[n - 1] + f[n]);
    }
    let mut sum = f[0] + f[n];
    for (i, v) in f.iter().enumerate().take(n).skip(1) {
        sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}

fn require_negative(eps: f64) -> Result<()> {
    if eps < 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            reason: "shooting energy must be negative",
        })
    }
}

/// Outward Numerov solution over the whole grid of `p`, seeded by
/// `Φ ∝ s^{m+1/2}` at the first two points.
pub fn numerov_outward(p: &RadialProblem, eps: f64) -> Result<RadialSolution> {
    p.validate()?;
    require_negative(eps)?;
    let sh = Shooter::new(p);
    let u = sh.outward(eps, sh.grid.last())?;
    Ok(RadialSolution::from_u(&sh.grid, &u))
}

/// Inward Numerov solution over the whole grid of `p`, seeded by
/// `Φ ∝ e^{-κs}`, `κ = √(-ε)`.
pub fn numerov_inward(p: &RadialProblem, eps: f64) -> Result<RadialSolution> {
    p.validate()?;
    require_negative(eps)?;
    let sh = Shooter::new(p);
    let u = sh.inward(eps, 0)?;
    Ok(RadialSolution::from_u(&sh.grid, &u))
}

/// Normalised Wronskian of the outward and inward solutions at the matching
/// point, on the grid `[s_min, s_max]` of `p`.
pub fn mismatch(p: &RadialProblem, eps: f64) -> Result<f64> {
    p.validate()?;
    require_negative(eps)?;
    Shooter::new(p).mismatch(eps)
}

/// The matching radius used by [`mismatch`] for this problem.
pub fn matching_radius(p: &RadialProblem) -> f64 {
    let sh = Shooter::new(p);
    sh.grid.s[sh.match_index]
}

/// Number of bound states of channel `m`, by Sturm oscillation: the number
/// of nodes of the zero-energy regular solution on `(0, ∞)`.
///
/// The solution is integrated up to `max(s_max, 60)`, beyond which the
/// potential is negligible and the zero-energy solution is known in closed
/// form (`a + b ln s` for `m = 0`, `a s^m + b s^{-m}` otherwise); a final
/// node is added if that continuation still changes sign.
pub fn count_bound_states(p: &RadialProblem) -> Result<usize> {
    p.validate()?;
    if p.c() == 0.0 {
        return Ok(0);
    }
    let s_end = p.s_max.max(POTENTIAL_RANGE);
    let grid = LogGrid::new(p.m, p.c(), p.s_min, s_end, p.n_steps);
    for (i, q) in grid.base.iter().enumerate() {
        let advance = grid.h * (-q).max(0.0).sqrt();
        if advance > std::f64::consts::FRAC_PI_4 {
            return Err(Error::GridResolution { advance, s: grid.s[i] });
        }
    }
    let sh = Shooter {
        m: p.m,
        match_index: 1,
        grid,
    };
    let n = sh.grid.last();
    let u = sh.outward(0.0, n)?;
    let mut nodes = sign_changes(&u);

    let (x1, x0) = (sh.grid.s[n].ln(), sh.grid.s[n - 1].ln());
    let (u1, u0) = (u[n], u[n - 1]);
    let asymptotic_sign = if p.m == 0 {
        // u = a + b x
        (u1 - u0) / (x1 - x0)
    } else {
        // u = a e^{mx} + b e^{-mx}; sign of a
        let mf = p.m as f64;
        let det = (mf * (x1 - x0)).exp() - (mf * (x0 - x1)).exp();
        (u1 * (-mf * x0).exp() - u0 * (-mf * x1).exp()) / det
    };
    if asymptotic_sign != 0.0 && (asymptotic_sign > 0.0) != (u1 > 0.0) {
        nodes += 1;
    }
    Ok(nodes)
}

/// All negative eigenvalues of channel `m` with normalised eigenfunctions.
///
/// `s_max` starts at `p.s_max` and is extended (×1.5, capped by
/// `p.s_max_limit`) until every state fits in the box, the shallowest state
/// has `κ·s_max >= 30` where the cap allows, and the shallowest eigenvalue
/// is stable to `eig_tol` under one more extension.
pub fn find_eigenvalues(p: &RadialProblem) -> Result<EigenResult> {
    p.validate()?;
    let c = p.c();
    let flagged = c < SHALLOW_COUPLING;
    if c == 0.0 {
        return Ok(EigenResult::empty(p.s_max, false));
    }
    let total = count_bound_states(p)?;
    if total == 0 {
        return Ok(EigenResult::empty(p.s_max, flagged));
    }

    let mut target = p.s_max;
    let mut previous: Option<Vec<f64>> = None;
    let (shooter, eigenvalues) = loop {
        let sh = Shooter::extended(p, target);
        let at_limit = target >= p.s_max_limit;
        let in_box = sh.box_count(0.0)?;
        if in_box > total {
            return Err(Error::BracketFailure(format!(
                "box [s_min, {}] holds {in_box} states but zero-energy node count gives {total}",
                sh.s_max()
            )));
        }
        if in_box < total {
            if at_limit {
                return Err(Error::BracketFailure(format!(
                    "only {in_box} of {total} states fit inside s_max = {}; raise s_max_limit",
                    sh.s_max()
                )));
            }
            target = (target * 1.5).min(p.s_max_limit);
            previous = None;
            continue;
        }
        let eps = sh.eigenvalues(c, total, p.eig_tol)?;
        let kappa_min = (-eps[total - 1]).sqrt();
        let wanted = p.s_max.max(30.0 / kappa_min).min(p.s_max_limit);
        if wanted > target * (1.0 + 1e-12) {
            target = wanted;
            previous = Some(eps);
            continue;
        }
        let converged = previous
            .as_ref()
            .map(|prev| prev.iter().zip(&eps).all(|(a, b)| (a - b).abs() < p.eig_tol))
            .unwrap_or(false);
        if converged || at_limit {
            break (sh, eps);
        }
        previous = Some(eps);
        target = (target * 1.5).min(p.s_max_limit);
    };
    let s_max = shooter.s_max();

    let kappa: Vec<f64> = eigenvalues.iter().map(|e| (-e).sqrt()).collect();
    let short_tail = kappa.last().map(|k| k * s_max < TAIL_DECAY_LENGTHS).unwrap_or(false);
    let wavefunctions = eigenvalues
        .iter()
        .map(|&e| shooter.wavefunction(e))
        .collect::<Result<Vec<_>>>()?;
    let node_counts = wavefunctions.iter().map(|w| w.nodes).collect();
    Ok(EigenResult {
        eigenvalues,
        node_counts,
        wavefunctions,
        kappa,
        s_max,
        shallow_regime: flagged || short_tail,
    })
}

/// Finite-difference oracle on the grid step implied by `p.n_steps`.
pub fn fd_oracle(p: &RadialProblem) -> Result<Vec<f64>> {
    let h = (p.s_max.ln() - p.s_min.ln()) / p.n_steps as f64;
    fd_oracle_with_step(p, h)
}

/// Negative eigenvalues of a second-order finite-difference discretisation
/// of `-u_xx + (m² - C s² K0(s)) u = ε s² u` on `x in [ln s_min, ln s_max]`
/// with step `h`, solved as a symmetric tridiagonal pencil by Sturm
/// bisection. The outer end is Dirichlet; the inner end is Dirichlet for
/// `m >= 1` and Neumann (regular solution is flat in `x`) for `m = 0`.
pub fn fd_oracle_with_step(p: &RadialProblem, h: f64) -> Result<Vec<f64>> {
    p.validate()?;
    if !(h > 0.0) {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h,
            reason: "step must be positive",
        });
    }
    let c = p.c();
    let x0 = p.s_min.ln();
    let intervals = ((p.s_max.ln() - x0) / h).round() as usize;
    let m2 = (p.m as f64).powi(2);
    let inv_h2 = 1.0 / (h * h);
    // unknowns: i = 0..intervals-1 for m = 0, 1..intervals-1 otherwise
    let first = if p.m == 0 { 0 } else { 1 };
    let mut diag = Vec::with_capacity(intervals);
    let mut weight = Vec::with_capacity(intervals);
    for i in first..intervals {
        let s = (x0 + i as f64 * h).exp();
        let kinetic = if i == 0 { inv_h2 } else { 2.0 * inv_h2 };
        diag.push(kinetic + m2 - c * s * s * specfun::k0(s));
        weight.push(s * s);
    }
    let off = vec![-inv_h2; diag.len() - 1];
    let pencil = SymTridiagonal::with_weight(diag, off, weight)?;
    if pencil.count_below(0.0) == 0 {
        return Ok(Vec::new());
    }
    let mut lo = lower_bound_dimensionless(p.coupling) - 1.0;
    while pencil.count_below(lo) > 0 {
        lo *= 2.0;
    }
    pencil.eigenvalues_in(lo, 0.0, 1e-13)
}

/// Richardson extrapolation of [`fd_oracle_with_step`] over `h, h/2, h/4`,
/// eliminating the `h²` and `h⁴` error terms.
pub fn fd_oracle_extrapolated(p: &RadialProblem, h: f64) -> Result<Vec<f64>> {
    let e1 = fd_oracle_with_step(p, h)?;
    let e2 = fd_oracle_with_step(p, h / 2.0)?;
    let e4 = fd_oracle_with_step(p, h / 4.0)?;
    let n = e1.len().min(e2.len()).min(e4.len());
    Ok((0..n)
        .map(|k| {
            let r1 = (4.0 * e2[k] - e1[k]) / 3.0;
            let r2 = (4.0 * e4[k] - e2[k]) / 3.0;
            (16.0 * r2 - r1) / 15.0
        })
        .collect())
}

/// `⟨Φ, H_m Φ⟩ / ⟨Φ, Φ⟩` for a sampled trial function.
///
/// Evaluated through `u = Φ/√s` as `∫(u_x² + m² u² - C s² K0 u²) dx /
/// ∫ s² u² dx`, which avoids the cancelling `Φ'²` and `-Φ²/(4s²)`
/// divergences of the s-wave channel. Grids uniform in `ln s` get
/// fourth-order differences and Simpson's rule; anything else falls back to
/// second order.
pub fn rayleigh_quotient(p: &RadialProblem, trial: &RadialSolution) -> Result<f64> {
    let n = trial.grid.len();
    if n < 5 || trial.phi.len() != n {
        return Err(Error::DegenerateTrial);
    }
    if trial.grid.iter().any(|s| !(*s > 0.0)) {
        return Err(Error::Domain {
            function: "rayleigh_quotient",
            x: trial.grid.iter().copied().fold(f64::INFINITY, f64::min),
        });
    }
    let c = p.c();
    let m2 = (p.m as f64).powi(2);
    let x: Vec<f64> = trial.grid.iter().map(|s| s.ln()).collect();
    let u: Vec<f64> = trial
        .grid
        .iter()
        .zip(&trial.phi)
        .map(|(s, phi)| phi / s.sqrt())
        .collect();
    let potential: Vec<f64> = trial.grid.iter().map(|s| m2 - c * s * s * specfun::k0(*s)).collect();

    let h = (x[n - 1] - x[0]) / (n - 1) as f64;
    let uniform = x.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs());

    let (energy, norm) = if uniform {
        let mut du = vec![0.0; n];
        for i in 0..n {
            du[i] = if i >= 2 && i + 2 < n {
                (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * h)
            } else if i == 0 {
                (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h)
            } else if i == n - 1 {
                (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h)
            } else {
                (u[i + 1] - u[i - 1]) / (2.0 * h)
            };
        }
        let e: Vec<f64> = (0..n).map(|i| du[i] * du[i] + potential[i] * u[i] * u[i]).collect();
        let w: Vec<f64> = (0..n).map(|i| trial.grid[i].powi(2) * u[i] * u[i]).collect();
        (simpson(h, &e), simpson(h, &w))
    } else {
        let mut energy = 0.0;
        let mut norm = 0.0;
        for i in 0..n - 1 {
            let dx = x[i + 1] - x[i];
            let du = (u[i + 1] - u[i]) / dx;
            let vm = 0.5 * (potential[i] * u[i] * u[i] + potential[i + 1] * u[i + 1] * u[i + 1]);
            energy += (du * du) * dx + vm * dx;
            let wm = 0.5 * (trial.grid[i].powi(2) * u[i] * u[i] + trial.grid[i + 1].powi(2) * u[i + 1] * u[i + 1]);
            norm += wm * dx;
        }
        (energy, norm)
    };
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::DegenerateTrial);
    }
    Ok(energy / norm)
}

/// Samples `Φ(s)` on a grid uniform in `ln s` over `[s_min, s_max]`.
pub fn sample_trial<F: Fn(f64) -> f64>(p: &RadialProblem, phi: F) -> RadialSolution {
    let grid = LogGrid::new(p.m, p.c(), p.s_min, p.s_max, p.n_steps);
    let values: Vec<f64> = grid.s.iter().map(|&s| phi(s)).collect();
    let nodes = sign_changes(&values);
    RadialSolution {
        grid: grid.s,
        phi: values,
        nodes,
    }
}
