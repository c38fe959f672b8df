//! Browser bindings: potential curves, single-channel solves and the
//! bound-state table.

use k0spectrum::eigensolver::{find_eigenvalues, RadialProblem};
use k0spectrum::model::{v_eff, Coupling};
use k0spectrum::sweep::{run_sweep, to_csv, SweepConfig};
use wasm_bindgen::prelude::*;

/// Points kept per wavefunction when handing it to JS.
const PLOT_POINTS: usize = 400;

fn js_err(e: k0spectrum::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// `v_eff(s)` at `n` evenly spaced points of `[lo, hi]`.
#[wasm_bindgen]
pub fn effective_potential(m: u32, c: f64, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    let coupling = Coupling::new(c).map_err(js_err)?;
    if n < 2 || !(lo > 0.0 && hi > lo) {
        return Err(JsValue::from_str("need 0 < lo < hi and n >= 2"));
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| v_eff(lo + i as f64 * step, m, coupling).map_err(js_err))
        .collect()
}

#[wasm_bindgen]
pub struct Channel {
    eigenvalues: Vec<f64>,
    s_max: f64,
    shallow: bool,
    ground_s: Vec<f64>,
    ground_phi: Vec<f64>,
}

#[wasm_bindgen]
impl Channel {
    #[wasm_bindgen(getter)]
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn count(&self) -> usize {
        self.eigenvalues.len()
    }

    #[wasm_bindgen(getter)]
    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    #[wasm_bindgen(getter)]
    pub fn shallow(&self) -> bool {
        self.shallow
    }

    /// Sample radii of the ground state (empty without bound states).
    #[wasm_bindgen(getter)]
    pub fn ground_s(&self) -> Vec<f64> {
        self.ground_s.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ground_phi(&self) -> Vec<f64> {
        self.ground_phi.clone()
    }
}

/// Bound states of channel `m` at coupling `C`, with the ground state
/// thinned to a few hundred points inside `s <= s_plot`.
#[wasm_bindgen]
pub fn solve_channel(m: u32, c: f64, s_plot: f64) -> Result<Channel, JsValue> {
    let p = RadialProblem::new(m, c).map_err(js_err)?;
    let r = find_eigenvalues(&p).map_err(js_err)?;
    let (mut ground_s, mut ground_phi) = (Vec::new(), Vec::new());
    if let Some(w) = r.wavefunctions.first() {
        let inside = w.grid.iter().take_while(|s| **s <= s_plot).count().max(2);
        let stride = (inside / PLOT_POINTS).max(1);
        for i in (0..inside).step_by(stride) {
            ground_s.push(w.grid[i]);
            ground_phi.push(w.phi[i]);
        }
    }
    Ok(Channel {
        eigenvalues: r.eigenvalues,
        s_max: r.s_max,
        shallow: r.shallow_regime,
        ground_s,
        ground_phi,
    })
}

/// CSV table for one coupling and channels `0..=m_max`.
#[wasm_bindgen]
pub fn bound_state_table(c: f64, m_max: u32) -> Result<String, JsValue> {
    let rows = run_sweep(&SweepConfig::dimensionless(vec![c], m_max)).map_err(js_err)?;
    Ok(to_csv(&rows))
}
