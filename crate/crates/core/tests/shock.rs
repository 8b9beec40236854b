//! Shock structure: jump conditions, profile invariants and regime trends.

use polyshock_core::shock::{
    critical_mach, normalize_profile, rh_euler, rh_full, solve, solve_continuous, solve_subshock,
    Fluxes, ReducedSystem, ShockProblem, ShockProfile, ShockState,
};
use polyshock_core::Error;

fn problem(m0: f64, alpha: f64, s_star: f64, alpha_star: f64) -> ShockProblem {
    ShockProblem::new(m0, alpha, s_star, alpha_star).unwrap()
}

/// Fields recovered from the fluxes written out directly, including the
/// cancellation-prone `Π = A − ρT`.
fn direct_recovery(m0: f64, alpha: f64, u: f64) -> ShockState {
    let c = (5.0 + 2.0 * alpha) / (7.0 + 2.0 * alpha);
    let (j, p, q) = (m0, m0 * m0 + c, (0.5 * m0 * m0 + alpha + 2.5) * m0);
    let a = (p - j * u) / c;
    let b = q / u - 0.5 * j * u;
    let rho_t = (b - c * a) / (alpha + 2.5 - c);
    ShockState {
        rho: j / u,
        u,
        temperature: rho_t * u / j,
        pi: a - rho_t,
    }
}

/// Right-hand side of the reduced equation in the physical coordinate.
fn direct_rate(m0: f64, alpha: f64, s: f64, a_star: f64, u: f64) -> f64 {
    let c = (5.0 + 2.0 * alpha) / (7.0 + 2.0 * alpha);
    let st = direct_recovery(m0, alpha, u);
    let src = -3.0
        * c
        * st.rho
        * st.pi
        * (st.temperature + st.pi / st.rho).powf(s)
        * (st.temperature - 1.5 * st.pi / ((alpha + 1.0) * st.rho)).powf(-2.0 * a_star);
    src / (5.0 * (m0 * m0 + c) - 8.0 * m0 * u)
}

/// Thickness from a fixed-step RK4 march in `ξ` with finite-difference
/// slopes of the density.
fn rk4_thickness(m0: f64, alpha: f64, s: f64, a_star: f64) -> f64 {
    let (_, down) = rh_euler(&problem(m0, alpha, s, a_star));
    let h = 1e-3;
    let f = |u: f64| direct_rate(m0, alpha, s, a_star, u);
    let mut u = m0 - 1e-6 * (m0 - down.u);
    let mut best: f64 = 0.0;
    while u - down.u > 1e-6 * (m0 - down.u) {
        let k1 = f(u);
        let k2 = f(u + 0.5 * h * k1);
        let k3 = f(u + 0.5 * h * k2);
        let k4 = f(u + h * k3);
        let next = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        best = best.max((m0 / next - m0 / u).abs() / h);
        u = next;
    }
    (down.rho - 1.0) / best
}

#[test]
fn euler_jump_reference_values() {
    let (up, down) = rh_euler(&problem(1.1, 0.5, 1.0, 0.5));
    assert_eq!((up.rho, up.u, up.temperature, up.pi), (1.0, 1.1, 1.0, 0.0));
    assert!((down.rho - 1.174_757_281_553_398_1).abs() < 1e-14);
    assert!((down.u - 0.936_363_636_363_636_4).abs() < 1e-14);
    assert!((down.temperature - 1.055_537_190_082_644_6).abs() < 1e-14);
    assert_eq!(down.pi, 0.0);
}

#[test]
fn jump_states_conserve_fluxes() {
    for &alpha in &[-0.5, 0.0, 0.5, 1.5, 3.0] {
        for &m0 in &[1.05, 1.3, 2.0, 4.0] {
            let pb = problem(m0, alpha, 1.0, alpha);
            let (up, down) = rh_euler(&pb);
            let f0 = Fluxes::of(&up, alpha);
            assert!(Fluxes::of(&down, alpha).max_rel_deviation(&f0) < 1e-13);
            if m0 > critical_mach(alpha) {
                let jump = rh_full(&pb).unwrap();
                assert!(Fluxes::of(&jump, alpha).max_rel_deviation(&f0) < 1e-13);
                // The trace balance has no source at the upstream
                // equilibrium, so its flux is continuous across the jump.
                let t0 = polyshock_core::shock::reduced::trace_flux(&up, alpha);
                let t1 = polyshock_core::shock::reduced::trace_flux(&jump, alpha);
                assert!((t0 - t1).abs() < 1e-12 * t0.abs());
                assert!(jump.pi > 0.0);
            }
        }
    }
}

#[test]
fn subshock_state_reference() {
    let jump = rh_full(&problem(1.5, 0.5, 1.0, 0.5)).unwrap();
    assert!((jump.rho - 1.5).abs() < 1e-14);
    assert!((jump.u - 1.0).abs() < 1e-14);
    assert!((jump.temperature - 7.0 / 6.0).abs() < 1e-14);
    assert!((jump.pi - 0.25).abs() < 1e-14);
    let below = rh_full(&problem(1.1, 0.5, 1.0, 0.5));
    assert!(matches!(below, Err(Error::NoSubshock { .. })));
}

#[test]
fn critical_mach_reference() {
    assert!((critical_mach(0.5) - 1.118_033_988_749_895).abs() < 1e-15);
    // The jump degenerates to Π = 0 when approaching the threshold.
    let pb = problem(critical_mach(0.5) * (1.0 + 1e-9), 0.5, 1.0, 0.5);
    assert!(rh_full(&pb).unwrap().pi.abs() < 1e-8);
}

#[test]
fn recovery_matches_direct_formulas() {
    let pb = problem(1.4, 0.8, 1.0, 0.8);
    let sys = ReducedSystem::new(&pb);
    let (_, down) = rh_euler(&pb);
    for k in 0..=50 {
        let u = down.u + (1.4 - down.u) * k as f64 / 50.0;
        let a = sys.recover(u);
        let b = direct_recovery(1.4, 0.8, u);
        assert!((a.rho - b.rho).abs() < 1e-14);
        assert!((a.temperature - b.temperature).abs() < 1e-13);
        assert!((a.pi - b.pi).abs() < 1e-13);
        assert!(Fluxes::of(&a, 0.8).max_rel_deviation(&sys.fluxes()) < 1e-13);
        assert!(
            (sys.trace_flux(u) - polyshock_core::shock::reduced::trace_flux(&a, 0.8)).abs() < 1e-12
        );
    }
    let end = sys.recover(down.u);
    assert!(end.pi.abs() < 1e-15 && (end.temperature - down.temperature).abs() < 1e-13);
}

fn check_profile_invariants(profile: &ShockProfile) {
    let pb = profile.problem;
    let f0 = profile.fluxes;
    for s in &profile.samples {
        assert!(Fluxes::of(&s.state(), pb.alpha()).max_rel_deviation(&f0) < 1e-8);
    }
    let part = profile.continuous_part();
    for w in part.windows(2) {
        assert!(w[1].xi > w[0].xi);
        assert!(w[1].rho > w[0].rho, "density must increase");
        assert!(w[1].u < w[0].u);
    }
    assert!(part.iter().all(|s| s.pi >= 0.0));
    let last = part[part.len() - 1];
    let down = profile.downstream;
    let eps = pb.controls.eps_eq;
    assert!((last.rho - down.rho).abs() < eps);
    assert!((last.u - down.u).abs() < eps);
    assert!((last.temperature - down.temperature).abs() < eps);
    assert!(last.pi.abs() < eps);
    let first = profile.samples[0];
    assert!((first.rho - 1.0).abs() < eps && (first.temperature - 1.0).abs() < eps);
    assert!(first.pi.abs() < eps && (first.u - pb.mach0()).abs() < eps);
}

#[test]
fn continuous_profile_reference_case() {
    let profile = solve_continuous(&problem(1.1, 0.5, 1.0, 0.5)).unwrap();
    assert!(!profile.is_discontinuous());
    check_profile_invariants(&profile);
    let last = profile.samples.last().unwrap();
    assert!((last.rho - 1.174_757).abs() < 1e-5);
}

#[test]
fn profiles_satisfy_invariants_across_parameters() {
    for &(m0, alpha, s, a_star) in &[
        (1.05, -0.5, 1.0, -0.5),
        (1.05, 1.5, 1.0, 1.5),
        (1.1, 0.5, -1.0, 0.5),
        (1.1, 0.5, 2.0, 0.5),
        (1.5, 0.5, 1.0, 0.5),
        (3.0, 0.5, 1.0, 0.5),
        (2.0, 2.0, 0.5, 1.2),
    ] {
        check_profile_invariants(&solve(&problem(m0, alpha, s, a_star)).unwrap());
    }
}

#[test]
fn thickness_matches_time_marching_oracle() {
    for &(m0, alpha, s) in &[(1.1, 0.5, 1.0), (1.1, 0.5, -1.0), (1.05, 0.0, 1.0)] {
        let profile = solve(&problem(m0, alpha, s, alpha)).unwrap();
        let oracle = rk4_thickness(m0, alpha, s, alpha);
        assert!(
            (profile.thickness - oracle).abs() < 1e-3 * oracle,
            "{} vs {oracle}",
            profile.thickness
        );
    }
}

#[test]
fn state_at_inverts_profile_coordinate() {
    let profile = solve(&problem(1.1, 0.5, 1.0, 0.5)).unwrap();
    let part = profile.continuous_part();
    for w in part.windows(2).step_by(37) {
        let xi = 0.5 * (w[0].xi + w[1].xi);
        let st = profile.state_at(xi).unwrap();
        assert!(st.u < w[0].u && st.u > w[1].u);
    }
    let s = part[400];
    let st = profile.state_at(s.xi).unwrap();
    assert!((st.u - s.u).abs() < 1e-12);
}

#[test]
fn subshock_profile_layout() {
    let profile = solve_subshock(&problem(1.5, 0.5, 1.0, 0.5)).unwrap();
    check_profile_invariants(&profile);
    let jump = profile.subshock.unwrap();
    assert_eq!(jump.xi, 0.0);
    assert!(profile.samples[0].xi < 0.0);
    assert_eq!(profile.samples[1].xi, 0.0);
    assert_eq!(profile.samples[2].xi, 0.0);
    assert_eq!(profile.samples[1].state(), profile.upstream);
    let post = profile.samples[2];
    assert!((post.rho - jump.downstream.rho).abs() < 1e-14);
    assert!((post.pi - jump.downstream.pi).abs() < 1e-14);
}

#[test]
fn threshold_dichotomy() {
    for &alpha in &[0.0, 0.5, 2.0] {
        let critical = critical_mach(alpha);
        let below = problem(critical - 2e-6, alpha, 1.0, alpha);
        let above = problem(critical + 2e-6, alpha, 1.0, alpha);
        assert!(solve_continuous(&below).is_ok());
        assert!(matches!(
            solve_subshock(&below),
            Err(Error::NoSubshock { .. })
        ));
        assert!(solve_subshock(&above).is_ok());
        assert!(matches!(
            solve_continuous(&above),
            Err(Error::SonicSingularity { .. })
        ));
        for m0 in [critical - 5e-7, critical, critical + 5e-7] {
            let pb = problem(m0, alpha, 1.0, alpha);
            assert!(solve_continuous(&pb).is_err() && solve_subshock(&pb).is_err());
        }
    }
}

#[test]
fn normalization_conventions() {
    let profile = solve(&problem(1.1, 0.5, 1.0, 0.5)).unwrap();
    let norm = normalize_profile(&profile);
    let (first, last) = (norm.samples[0], *norm.samples.last().unwrap());
    for v in [first.rho, first.u, first.temperature] {
        assert!(v.abs() < 1e-4);
    }
    for v in [last.rho, last.u, last.temperature] {
        assert!((v - 1.0).abs() < 1e-4);
    }
    for (n, s) in norm.samples.iter().zip(&profile.samples) {
        assert_eq!(n.pi, s.pi);
    }
    let mid = profile.state_at(profile.midpoint_xi).unwrap();
    let (up, down) = (profile.upstream, profile.downstream);
    assert!(((mid.rho - up.rho) / (down.rho - up.rho) - 0.5).abs() < 1e-10);
    assert!(norm.samples.iter().any(|s| s.xi < 0.0) && norm.samples.iter().any(|s| s.xi > 0.0));

    let jumped = solve(&problem(2.0, 0.5, 1.0, 0.5)).unwrap();
    let norm = normalize_profile(&jumped);
    assert_eq!(norm.xi_origin, 0.0);
    assert_eq!(norm.samples[1].rho, 0.0);
    assert!(norm.samples[2].rho > 0.0);
}

#[test]
fn launch_offset_only_shifts_the_profile() {
    let base = problem(1.1, 0.5, 1.0, 0.5);
    let mut tight = base;
    tight.controls.eps_eq = 1e-8;
    let a = solve(&base).unwrap();
    let b = solve(&tight).unwrap();
    assert!((a.thickness - b.thickness).abs() < 1e-8 * a.thickness);
    // Same normalized state at the same normalized position.
    for xi in [-3.0, -1.0, 0.5, 2.0, 5.0] {
        let sa = a.state_at(a.midpoint_xi + xi).unwrap();
        let sb = b.state_at(b.midpoint_xi + xi).unwrap();
        assert!((sa.rho - sb.rho).abs() < 1e-8);
    }
}
