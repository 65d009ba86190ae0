use dirac_spin::clifford::gamma;
use dirac_spin::lorentz::{
    adjoint_action_residual, bispinor_rep, boost_from_velocity, covariance_residual, inverse_relation_residual,
    polar_decomposition, rotation_matrix, su2_from_so3, wigner_closed, wigner_numeric, BoostVelocity,
};
use dirac_spin::types::{expm4, max_abs_diff, Mat4C};
use dirac_spin::{on_shell, LorentzMatrix, Real3, C64};
use proptest::prelude::*;

fn velocity() -> impl Strategy<Value = BoostVelocity> {
    prop::array::uniform3(-0.57f64..0.57).prop_map(|v| BoostVelocity::new(Real3::from(v)).unwrap())
}

fn rotation() -> impl Strategy<Value = LorentzMatrix> {
    prop::array::uniform3(-3.1f64..3.1)
        .prop_map(|t| LorentzMatrix::from_rotation(&rotation_matrix(&Real3::from(t))).unwrap())
}

fn lorentz() -> impl Strategy<Value = LorentzMatrix> {
    (velocity(), rotation()).prop_map(|(v, r)| boost_from_velocity(&v).compose(&r))
}

fn momentum3() -> impl Strategy<Value = Real3> {
    prop::array::uniform3(-5.7f64..5.7).prop_map(Real3::from)
}

fn mass() -> impl Strategy<Value = f64> {
    0.2f64..4.0
}

proptest! {
    #[test]
    fn lorentz_image_stays_on_shell(l in lorentz(), p3 in momentum3(), m in mass()) {
        let p = on_shell(m, &(p3 * m)).unwrap();
        let q = l.apply(&p);
        prop_assert!((q.dot(&q) - m * m).abs() < 1e-10 * q.t * q.t);
        prop_assert!(q.t > 0.0);
    }

    #[test]
    fn covariance_condition(l in lorentz()) {
        let s = bispinor_rep(&l).unwrap();
        prop_assert!(covariance_residual(&s, &l) < 1e-10);
        prop_assert!(inverse_relation_residual(&s) < 1e-10);
    }

    #[test]
    fn wigner_closed_matches_brute_force(v in velocity(), p3 in momentum3(), m in mass()) {
        let p = on_shell(m, &(p3 * m)).unwrap();
        let (r, full) = wigner_numeric(&boost_from_velocity(&v), &p, m).unwrap();
        let closed = wigner_closed(&v, &p, m).unwrap();
        prop_assert!((closed - r).amax() < 1e-10);
        prop_assert!((r.transpose() * r - dirac_spin::R3x3::identity()).amax() < 1e-10);
        prop_assert!((full.get(0, 0) - 1.0).abs() < 1e-10);
        for k in 1..4 {
            prop_assert!(full.get(0, k).abs() < 1e-10 && full.get(k, 0).abs() < 1e-10);
        }
    }

    #[test]
    fn wigner_cocycle(l1 in lorentz(), l2 in lorentz(), p3 in momentum3(), m in mass()) {
        let p = on_shell(m, &(p3 * m)).unwrap();
        let (r21, _) = wigner_numeric(&l2.compose(&l1), &p, m).unwrap();
        let (r1, _) = wigner_numeric(&l1, &p, m).unwrap();
        let (r2, _) = wigner_numeric(&l2, &l1.apply(&p), m).unwrap();
        prop_assert!((r21 - r2 * r1).amax() < 1e-10);
    }

    #[test]
    fn bispinor_rep_is_a_projective_homomorphism(l1 in lorentz(), l2 in lorentz()) {
        let s12 = bispinor_rep(&l2.compose(&l1)).unwrap();
        let prod = bispinor_rep(&l2).unwrap() * bispinor_rep(&l1).unwrap();
        let inv12 = s12.try_inverse().unwrap();
        let inv = prod.try_inverse().unwrap();
        for mu in 0..4 {
            prop_assert!(max_abs_diff(&(inv12 * gamma(mu) * s12), &(inv * gamma(mu) * prod)) < 1e-10);
        }
    }

    #[test]
    fn polar_decomposition_reconstructs(l in lorentz(), extra in velocity()) {
        let l = l.compose(&boost_from_velocity(&extra));
        let (v, r) = polar_decomposition(&l).unwrap();
        let rebuilt = boost_from_velocity(&v).compose(&LorentzMatrix::from_rotation(&r).unwrap());
        prop_assert!((rebuilt.matrix() - l.matrix()).amax() < 1e-11 * l.matrix().amax().max(1.0));
    }

    #[test]
    fn su2_lift_is_special_unitary(l in rotation()) {
        let r = l.spatial_block();
        let d = su2_from_so3(&r).unwrap();
        prop_assert!(max_abs_diff(&(d * d.adjoint()), &dirac_spin::Mat2C::identity()) < 1e-12);
        prop_assert!((d.determinant() - C64::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(adjoint_action_residual(&d, &r) < 1e-10);
        prop_assert!(d.trace().re >= -1e-12);
    }

    #[test]
    fn exp_of_anti_hermitian_is_unitary(entries in prop::array::uniform16(-2.0f64..2.0)) {
        let a = Mat4C::from_fn(|i, j| C64::new(entries[4 * i + j], entries[4 * j + i]));
        let h = (a + a.adjoint()) * C64::new(0.5, 0.0);
        let u = expm4(&(h * C64::new(0.0, 1.0)));
        prop_assert!(max_abs_diff(&(u * u.adjoint()), &Mat4C::identity()) < 1e-11);
        let back = expm4(&(-(h * C64::new(0.0, 1.0))));
        prop_assert!(max_abs_diff(&(u * back), &Mat4C::identity()) < 1e-12);
    }
}

#[test]
fn boost_along_momentum_has_no_wigner_rotation() {
    let m = 1.0;
    let p = on_shell(m, &Real3::new(0.3, 0.6, -0.9)).unwrap();
    for s in [-0.9, -0.3, 0.5, 0.95] {
        let v = BoostVelocity::new(p.spatial().normalize() * s).unwrap();
        let r = wigner_closed(&v, &p, m).unwrap();
        assert!((r - dirac_spin::R3x3::identity()).amax() < 1e-12);
    }
}
