use dirac_spin::amplitudes::{
    algebraic_residual, amplitude, amplitude_via_boost, parity_relation_residual, sandwich_formula_residual, spin_lift,
    weinberg_residual,
};
use dirac_spin::lorentz::{bispinor_rep, boost_from_velocity, rotation_matrix, standard_boost, BoostVelocity};
use dirac_spin::types::max_abs_diff;
use dirac_spin::{on_shell, EnergySign, LorentzMatrix, Real3};
use proptest::prelude::*;

fn sign() -> impl Strategy<Value = EnergySign> {
    prop_oneof![Just(EnergySign::Positive), Just(EnergySign::Negative)]
}

fn lorentz() -> impl Strategy<Value = LorentzMatrix> {
    (prop::array::uniform3(-0.57f64..0.57), prop::array::uniform3(-3.1f64..3.1)).prop_map(|(v, t)| {
        let r = LorentzMatrix::from_rotation(&rotation_matrix(&Real3::from(t))).unwrap();
        boost_from_velocity(&BoostVelocity::new(Real3::from(v)).unwrap()).compose(&r)
    })
}

fn kinematics() -> impl Strategy<Value = (f64, Real3)> {
    (0.2f64..4.0, prop::array::uniform3(-5.7f64..5.7)).prop_map(|(m, u)| (m, Real3::from(u) * m))
}

proptest! {
    #[test]
    fn amplitude_algebra((m, p3) in kinematics()) {
        let p = on_shell(m, &p3).unwrap();
        prop_assert!(algebraic_residual(&p, m).unwrap() < 1e-12);
    }

    #[test]
    fn sandwich_formulas_and_parity((m, p3) in kinematics(), e in sign()) {
        let p = on_shell(m, &p3).unwrap();
        prop_assert!(sandwich_formula_residual(e, &p, m).unwrap() < 1e-12);
        prop_assert!(parity_relation_residual(e, &p, m).unwrap() < 1e-12);
    }

    #[test]
    fn boost_generation((m, p3) in kinematics(), e in sign()) {
        let p = on_shell(m, &p3).unwrap();
        let a = amplitude(e, &p, m).unwrap();
        let b = amplitude_via_boost(e, &p, m).unwrap();
        prop_assert!(max_abs_diff(&a.matrix, &b.matrix) < 1e-10);
    }

    #[test]
    fn weinberg_condition(l in lorentz(), (m, p3) in kinematics(), e in sign()) {
        let p = on_shell(m, &p3).unwrap();
        prop_assert!(weinberg_residual(&l, e, &p, m).unwrap() < 1e-9);
    }

    #[test]
    fn sandwiches_are_covariant(l in lorentz(), (m, p3) in kinematics(), e in sign(), e2 in sign()) {
        let p = on_shell(m, &p3).unwrap();
        let lp = l.apply(&p);
        let d = spin_lift(&l, e, &p, m).unwrap();
        let (v, w) = (amplitude(e, &p, m).unwrap(), amplitude(e2, &p, m).unwrap());
        let (vl, wl) = (amplitude(e, &lp, m).unwrap(), amplitude(e2, &lp, m).unwrap());
        // 𝒟*(v̄^{ε′}v^ε)(p)𝒟ᵀ = (v̄^{ε′}v^ε)(Λp)
        let lhs = d.conjugate() * (w.bar() * v.matrix) * d.transpose();
        prop_assert!(max_abs_diff(&lhs, &(wl.bar() * vl.matrix)) < 1e-10);
        // S(v^ε v̄^{ε′})(p)S⁻¹ = (v^ε v̄^{ε′})(Λp)
        let s = bispinor_rep(&l).unwrap();
        let lhs = s * v.matrix * w.bar() * s.try_inverse().unwrap();
        let scale = (lp.t / m).max(1.0);
        prop_assert!(max_abs_diff(&lhs, &(vl.matrix * wl.bar())) < 1e-10 * scale);
    }
}

#[test]
fn weinberg_from_rest_reduces_to_boost_generation() {
    let m = 0.8;
    let p = on_shell(m, &Real3::new(1.0, -3.0, 2.0)).unwrap();
    let lp = standard_boost(&p, m).unwrap();
    for e in EnergySign::ALL {
        assert!(weinberg_residual(&lp, e, &on_shell(m, &Real3::zeros()).unwrap(), m).unwrap() < 1e-10);
    }
}
