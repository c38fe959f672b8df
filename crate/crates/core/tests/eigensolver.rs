use k0spectrum::bounds::seto_0_numeric;
use k0spectrum::eigensolver::{
    count_bound_states, fd_oracle, fd_oracle_extrapolated, fd_oracle_with_step, find_eigenvalues, matching_radius,
    mismatch, numerov_inward, numerov_outward, rayleigh_quotient, sample_trial, RadialProblem, RadialSolution,
};
use k0spectrum::model::{v_eff, Coupling};
use k0spectrum::Error;

fn problem(m: u32, c: f64) -> RadialProblem {
    RadialProblem::new(m, c).unwrap()
}

/// Extrapolated finite-difference eigenvalues on the box the shooting
/// solver settled on.
fn oracle(p: &RadialProblem, s_max: f64) -> Vec<f64> {
    fd_oracle_extrapolated(&p.clone().with_s_max(s_max).unwrap(), 2e-3).unwrap()
}

fn sign_changes_of(xs: &[f64]) -> usize {
    xs.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count()
}

fn trapezoid(sol: &RadialSolution, f: impl Fn(f64, f64) -> f64) -> f64 {
    sol.grid
        .windows(2)
        .zip(sol.phi.windows(2))
        .map(|(s, p)| 0.5 * (s[1] - s[0]) * (f(s[0], p[0]) + f(s[1], p[1])))
        .sum()
}

#[test]
fn free_particle_outward_has_no_nodes() {
    let p = problem(0, 0.0);
    let sol = numerov_outward(&p, -0.3).unwrap();
    assert_eq!(sol.nodes_in(p.s_min, p.s_max / 2.0), 0);
}

#[test]
fn outward_node_count_matches_fd_count() {
    let p = problem(0, 1.0);
    let eps = -1e-3;
    let sol = numerov_outward(&p, eps).unwrap();
    let fd_below = fd_oracle_with_step(&p, 1e-3)
        .unwrap()
        .iter()
        .filter(|e| **e < eps)
        .count();
    assert_eq!(fd_below, 1);
    assert_eq!(sol.nodes, fd_below);
}

#[test]
fn outward_seed_follows_boundary_series() {
    for m in 0..4 {
        let p = problem(m, 1.0);
        let sol = numerov_outward(&p, -0.1).unwrap();
        let expected = (sol.grid[1] / sol.grid[0]).powf(m as f64 + 0.5);
        let ratio = sol.phi[1] / sol.phi[0];
        assert!(((ratio - expected) / expected).abs() < 1e-12, "m={m}");
    }
}

#[test]
fn inward_seed_decays_at_kappa() {
    let p = problem(0, 1.0);
    for eps in [-0.25, -0.01, -2.0] {
        let sol = numerov_inward(&p, eps).unwrap();
        let kappa = (-eps).sqrt();
        let d = sol.outer_log_derivative();
        assert!(((d + kappa) / kappa).abs() < 1e-6, "eps={eps}: {d}");
    }
}

#[test]
fn inward_solution_positive_and_monotone_in_forbidden_tail() {
    let p = problem(0, 1.0);
    let sol = numerov_inward(&p, -0.01).unwrap();
    let tail: Vec<f64> = sol
        .grid
        .iter()
        .zip(&sol.phi)
        .filter(|(s, _)| **s >= 6.0)
        .map(|(_, v)| *v)
        .collect();
    assert!(tail.iter().all(|v| *v > 0.0));
    assert!(tail.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn negative_energy_required() {
    let p = problem(0, 1.0);
    assert!(numerov_outward(&p, 0.0).is_err());
    assert!(numerov_inward(&p, 0.1).is_err());
    assert!(mismatch(&p, 0.0).is_err());
}

#[test]
fn kappa_is_root_of_minus_eps() {
    let r = find_eigenvalues(&problem(0, 10.0)).unwrap();
    for (e, k) in r.eigenvalues.iter().zip(&r.kappa) {
        assert!((k * k + e).abs() < 1e-14);
    }
    let p = problem(0, 1.0);
    let sol = numerov_inward(&p, -0.25).unwrap();
    assert!((sol.outer_log_derivative() + 0.5).abs() < 5e-7);
}

fn mismatch_roots(p: &RadialProblem, lo: f64, hi: f64, n: usize) -> usize {
    let vals: Vec<f64> = (0..=n)
        .map(|i| mismatch(p, lo + (hi - lo) * i as f64 / n as f64).unwrap())
        .collect();
    sign_changes_of(&vals)
}

#[test]
fn mismatch_roots_per_channel() {
    assert_eq!(mismatch_roots(&problem(1, 1.0), -0.125, -1e-4, 400), 0);
    assert_eq!(mismatch_roots(&problem(0, 1.0), -0.125, -1e-3, 400), 1);
    assert_eq!(mismatch_roots(&problem(0, 1.0), -3.0, -0.125, 400), 0);
}

#[test]
fn matching_point_near_potential_well() {
    let r = matching_radius(&problem(0, 1.0));
    assert!((r - 0.595).abs() < 0.01, "{r}");
    // m >= 1: minimum of the effective potential
    let c = Coupling::new(10.0).unwrap();
    let r1 = matching_radius(&problem(1, 10.0));
    let v = |s: f64| v_eff(s, 1, c).unwrap();
    assert!(v(r1) < 0.0);
    assert!(v(r1) <= v(r1 * 1.01) && v(r1) <= v(r1 / 1.01), "{r1}");
}

#[test]
fn counts_by_node_theorem() {
    assert_eq!(count_bound_states(&problem(0, 0.5)).unwrap(), 1);
    assert_eq!(count_bound_states(&problem(1, 1.0)).unwrap(), 0);
    assert_eq!(count_bound_states(&problem(0, 0.0)).unwrap(), 0);
}

#[test]
fn strong_coupling_count_pinned_by_fd() {
    let c = 20.0;
    let p = problem(0, c);
    let n = count_bound_states(&p).unwrap();
    let fd = fd_oracle_with_step(&p.clone().with_s_max(60.0).unwrap(), 5e-4).unwrap();
    let cap = seto_0_numeric(Coupling::new(c).unwrap()).unwrap().bound.max_count();
    assert_eq!(n, fd.len());
    assert!(n >= 2 && n <= cap, "n={n} cap={cap}");
}

#[test]
fn coarse_grid_is_rejected() {
    let p = problem(0, 1e6).with_n_steps(1000).unwrap();
    assert!(matches!(count_bound_states(&p), Err(Error::GridResolution { .. })));
}

#[test]
fn s_wave_ground_state_at_unit_coupling() {
    let p = problem(0, 1.0);
    let r = find_eigenvalues(&p).unwrap();
    assert_eq!(r.count(), 1);
    let e0 = r.eigenvalues[0];
    assert!((-0.125..0.0).contains(&e0));
    let fd = oracle(&p, r.s_max);
    assert!((e0 - fd[0]).abs() < 1e-6, "{e0} vs {}", fd[0]);
    assert_eq!(r.node_counts, vec![0]);
}

#[test]
fn empty_spectra() {
    assert_eq!(find_eigenvalues(&problem(1, 1.0)).unwrap().count(), 0);
    assert_eq!(find_eigenvalues(&problem(0, 0.0)).unwrap().count(), 0);
    assert!(fd_oracle(&problem(1, 1.0)).unwrap().is_empty());
    assert!(fd_oracle(&problem(0, 0.0)).unwrap().is_empty());
    assert!(fd_oracle(&problem(2, 0.0)).unwrap().is_empty());
}

#[test]
fn shooting_and_fd_agree() {
    for m in [0, 1] {
        for c in [0.5, 1.0, 5.0] {
            let p = problem(m, c);
            let r = find_eigenvalues(&p).unwrap();
            let fd = oracle(&p, r.s_max);
            assert_eq!(r.count(), fd.len(), "m={m} C={c}");
            assert_eq!(r.count(), count_bound_states(&p).unwrap(), "m={m} C={c}");
            for (a, b) in r.eigenvalues.iter().zip(&fd) {
                assert!(
                    (a - b).abs() <= 1e-6_f64.max(10.0 * p.eig_tol),
                    "m={m} C={c}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn eigenfunctions_normalised_with_n_nodes() {
    let r = find_eigenvalues(&problem(0, 10.0)).unwrap();
    assert_eq!(r.count(), 2);
    assert_eq!(r.node_counts, vec![0, 1]);
    assert!(r.eigenvalues[0] < r.eigenvalues[1]);
    for w in &r.wavefunctions {
        let norm = trapezoid(w, |_, phi| phi * phi);
        assert!((norm - 1.0).abs() < 1e-6, "{norm}");
        assert!(w.phi.iter().all(|v| v.is_finite()));
    }
}

#[test]
fn grid_convergence() {
    for (m, c) in [(0, 1.0), (0, 5.0), (1, 10.0)] {
        let p = problem(m, c);
        let coarse = find_eigenvalues(&p).unwrap();
        let fine = find_eigenvalues(&p.clone().with_n_steps(2 * p.n_steps).unwrap()).unwrap();
        for (a, b) in coarse.eigenvalues.iter().zip(&fine.eigenvalues) {
            assert!((a - b).abs() <= 4.0 * p.eig_tol, "m={m} C={c}: {a} vs {b}");
        }
    }
}

#[test]
fn ground_state_deepens_with_coupling() {
    let mut last = 0.0;
    for c in [0.3, 0.5, 1.0, 1.9, 5.0, 10.0] {
        let e0 = find_eigenvalues(&problem(0, c)).unwrap().eigenvalues[0];
        assert!(e0 < last, "C={c}");
        last = e0;
    }
}

#[test]
fn weak_coupling_flagged_but_bound() {
    let r = find_eigenvalues(&problem(0, 0.2)).unwrap();
    assert_eq!(r.count(), 1);
    assert!(r.shallow_regime);
    assert!(r.eigenvalues[0] < 0.0);
}

#[test]
fn rayleigh_quotient_of_eigenfunction() {
    let p = problem(0, 1.0);
    let r = find_eigenvalues(&p).unwrap();
    let pe = p.clone().with_s_max(r.s_max).unwrap();
    let q = rayleigh_quotient(&pe, &r.wavefunctions[0]).unwrap();
    assert!(
        (q - r.eigenvalues[0]).abs() <= 10.0 * p.eig_tol,
        "{q} vs {}",
        r.eigenvalues[0]
    );
}

#[test]
fn rayleigh_quotient_is_an_upper_bound() {
    let p = problem(0, 1.0);
    let e0 = find_eigenvalues(&p).unwrap().eigenvalues[0];
    // narrow trial: too much kinetic energy to certify binding on its own
    let narrow = rayleigh_quotient(&p, &sample_trial(&p, |s| (-s * s / 4.0).exp() * s.sqrt())).unwrap();
    assert!(narrow > e0);
    // a wider trial is negative, which certifies a bound state
    let wide = rayleigh_quotient(&p, &sample_trial(&p, |s| (-s / 3.0).exp() * s.sqrt())).unwrap();
    assert!(wide > e0 && wide < 0.0, "{wide}");
}

#[test]
fn rayleigh_quotient_positive_without_potential() {
    let p = problem(1, 0.0);
    for width in [0.5, 2.0, 5.0] {
        let q = rayleigh_quotient(&p, &sample_trial(&p, |s| s.powf(1.5) * (-s / width).exp())).unwrap();
        assert!(q > 0.0);
    }
    let zero = sample_trial(&p, |_| 0.0);
    assert!(matches!(rayleigh_quotient(&p, &zero), Err(Error::DegenerateTrial)));
}
