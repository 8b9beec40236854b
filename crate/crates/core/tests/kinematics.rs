//! Collision map: involution, conservation, Jacobian and cross sections.

use nalgebra::Vector3;
use polyshock_core::kinematics::{
    collision_invariant_residuals, collision_jacobian, collision_jacobian_velocity_form,
    collision_transform, cross_section, microreversibility_residual, CollisionState, CrossSection,
};
use polyshock_core::verification::jacobian_by_finite_differences;
use polyshock_core::GasParameters;
use proptest::prelude::*;

fn example() -> CollisionState {
    CollisionState::new(
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(-1.0, 0.0, 0.0),
        0.1,
        0.1,
        0.5,
        0.5,
        Vector3::new(1.0, 0.0, 0.0),
    )
    .unwrap()
}

fn vec3() -> impl Strategy<Value = Vector3<f64>> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| Vector3::new(x, y, z))
}

fn collision() -> impl Strategy<Value = (GasParameters, CollisionState)> {
    (
        -0.9..3.0f64,
        0.3..3.0f64,
        vec3(),
        vec3(),
        0.01..3.0f64,
        0.01..3.0f64,
        0.01..0.99f64,
        0.01..0.99f64,
        vec3(),
    )
        .prop_filter_map("degenerate direction", |(a, m, v, w, i, is, r, rr, om)| {
            let n = om.norm();
            if n < 0.1 || (v - w).norm() < 1e-3 {
                return None;
            }
            let c = CollisionState::new(v, w, i, is, r, rr, om / n).ok()?;
            Some((GasParameters::new(a, m, 1.0).ok()?, c))
        })
}

proptest! {
    #[test]
    fn transform_is_an_involution((g, c) in collision()) {
        let back = collision_transform(&collision_transform(&c, &g).unwrap(), &g).unwrap();
        prop_assert!((back.v - c.v).amax() < 1e-10);
        prop_assert!((back.v_star - c.v_star).amax() < 1e-10);
        prop_assert!((back.i - c.i).abs() < 1e-10 && (back.i_star - c.i_star).abs() < 1e-10);
        prop_assert!((back.internal_share - c.internal_share).abs() < 1e-10);
        prop_assert!((back.energy_share - c.energy_share).abs() < 1e-10);
    }

    #[test]
    fn momentum_and_energy_are_conserved((g, c) in collision()) {
        let (dp, de) = collision_invariant_residuals(&c, &g).unwrap();
        prop_assert!(dp.norm() < 1e-10 * (1.0 + c.v.norm() + c.v_star.norm()) * g.mass());
        prop_assert!(de.abs() < 1e-10 * c.lab_energy(&g));
    }

    #[test]
    fn jacobian_forms_agree((g, c) in collision()) {
        let a = collision_jacobian(&c, &g).unwrap();
        let b = collision_jacobian_velocity_form(&c, &g).unwrap();
        prop_assert!((a - b).abs() < 1e-10 * a);
        // The inverse map has the reciprocal Jacobian.
        let post = collision_transform(&c, &g).unwrap();
        let back = collision_jacobian(&post, &g).unwrap();
        prop_assert!((a * back - 1.0).abs() < 1e-10);
    }

    #[test]
    fn generalized_with_zero_exponents_is_standard((_g, c) in collision(), s in -1.4..3.0f64, bulk in vec3()) {
        let std = cross_section(&CrossSection::standard(1.3, s).unwrap(), &c, &bulk).unwrap();
        let gen = cross_section(&CrossSection::generalized(1.3, s, 0.0, 0.0).unwrap(), &c, &bulk).unwrap();
        prop_assert!((std - gen).abs() <= 1e-13 * std.abs());
    }

    #[test]
    fn cross_sections_are_microreversible((g, c) in collision(), bulk in vec3(), beta in -1.5..3.0f64, q in -1.0..2.0f64) {
        for spec in [CrossSection::standard(0.9, 0.6).unwrap(), CrossSection::generalized(1.1, 0.2, beta, q).unwrap()] {
            let scale = cross_section(&spec, &c, &bulk).unwrap();
            prop_assert!(microreversibility_residual(&spec, &c, &bulk, &g).unwrap() <= 1e-10 * scale);
        }
    }
}

#[test]
fn example_state_jacobian_against_finite_differences() {
    let g = GasParameters::kinetic(0.5).unwrap();
    let c = example();
    let closed = collision_jacobian(&c, &g).unwrap();
    assert!((closed - 3.0 * 0.6f64.sqrt()).abs() < 1e-12);
    let fd = jacobian_by_finite_differences(&c, &g).unwrap();
    assert!((fd - closed).abs() < 1e-6 * closed, "{fd} vs {closed}");
}

#[test]
fn symmetric_collision_has_unit_jacobian() {
    // R' = R when (m/4)|g|² = R E: pick |g| accordingly.
    let g = GasParameters::kinetic(0.5).unwrap();
    let (i, i_star, r_share): (f64, f64, f64) = (0.3, 0.5, 0.4);
    // (m/4)|g|²(1 − R) = R (I + I*) with |g| = 2·speed.
    let speed: f64 = (r_share * (i + i_star) / (1.0 - r_share)).sqrt();
    let c = CollisionState::new(
        Vector3::new(speed, 0.0, 0.0),
        Vector3::new(-speed, 0.0, 0.0),
        i,
        i_star,
        0.7,
        r_share,
        Vector3::new(0.0, 0.6, 0.8),
    )
    .unwrap();
    assert!((collision_jacobian(&c, &g).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn jacobian_vanishes_as_energy_share_approaches_one() {
    let g = GasParameters::kinetic(0.5).unwrap();
    let mut c = example();
    let mut previous = f64::INFINITY;
    for k in 2..8 {
        c.energy_share = 1.0 - 10f64.powi(-k);
        let j = collision_jacobian(&c, &g).unwrap();
        assert!(j < previous);
        previous = j;
    }
    assert!(previous < 1e-6);
}

#[test]
fn standard_cross_section_reference_values() {
    let c = example();
    let bulk = Vector3::zeros();
    let s1 = CrossSection::standard(1.0, 1.0).unwrap();
    assert!((cross_section(&s1, &c, &bulk).unwrap() - 2.0).abs() < 1e-14);
    let s0 = CrossSection::standard(2.5, 0.0).unwrap();
    assert_eq!(cross_section(&s0, &c, &bulk).unwrap(), 2.5);
    let g = GasParameters::kinetic(0.5).unwrap();
    let post = collision_transform(&c, &g).unwrap();
    assert!((cross_section(&s1, &post, &bulk).unwrap() - 2.0).abs() < 1e-14);
}
