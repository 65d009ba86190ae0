use dirac_spin::clifford::gamma;
use dirac_spin::position::{parseval_check, plane_wave_kernel, synthesize, ParsevalGrids};
use dirac_spin::states::{
    to_covariant, CovariantWaveFunction, GaussianProfile, MomentumGrid, MomentumWaveFunction, Profile,
};
use dirac_spin::types::{re, Spinor, I, ONE};
use dirac_spin::{on_shell, EnergySign, FourVector, Real3, C64};

fn wave(m: f64, w: f64) -> CovariantWaveFunction {
    let g = GaussianProfile::normalized(
        Real3::new(0.2, -0.1, 0.1),
        w,
        Spinor::new(ONE, C64::new(0.0, 0.5)),
        Real3::zeros(),
    )
    .unwrap();
    to_covariant(&MomentumWaveFunction::gaussian(m, EnergySign::Positive, g).unwrap())
}

#[test]
fn parseval_default_and_refined() {
    let a = wave(1.0, 1.0);
    let d = parseval_check(&a, &a, &ParsevalGrids::default_for(&a, &a)).unwrap();
    let r = parseval_check(&a, &a, &ParsevalGrids::refined_for(&a, &a)).unwrap();
    assert!(d.relerr < 1e-3, "default {}", d.relerr);
    assert!(r.relerr < d.relerr, "refined {} vs default {}", r.relerr, d.relerr);
}

#[test]
fn parseval_cross_product_with_negative_sector() {
    let m = 1.0;
    let gp =
        GaussianProfile::normalized(Real3::new(0.1, 0.0, 0.0), 0.5, Spinor::new(ONE, ONE), Real3::zeros()).unwrap();
    let gn = GaussianProfile::normalized(Real3::new(0.0, 0.2, 0.0), 0.5, Spinor::new(ONE, -I), Real3::zeros()).unwrap();
    let a = to_covariant(
        &MomentumWaveFunction::new(m)
            .unwrap()
            .with_sector(EnergySign::Positive, Profile::gaussian(gp.clone()))
            .with_sector(EnergySign::Negative, Profile::gaussian(gn.clone())),
    );
    let b = to_covariant(&MomentumWaveFunction::gaussian(m, EnergySign::Negative, gn).unwrap());
    let rep = parseval_check(&a, &b, &ParsevalGrids::default_for(&a, &b)).unwrap();
    assert!(rep.relerr < 1e-3, "{rep:?}");
}

#[test]
fn synthesized_field_solves_free_dirac_equation() {
    let m = 1.0;
    for e in EnergySign::ALL {
        let g =
            GaussianProfile::normalized(Real3::new(0.3, 0.0, -0.2), 0.5, Spinor::new(ONE, I), Real3::zeros()).unwrap();
        let w = to_covariant(&MomentumWaveFunction::gaussian(m, e, g).unwrap());
        let grid = MomentumGrid { n: 48, ..MomentumGrid::for_support(&w.support()) };
        let x = FourVector::new(0.4, 0.5, -0.3, 0.2);
        let h = 1e-3;
        let mut lhs = synthesize(&w, &x, &grid).unwrap().psi * re(-m);
        for mu in 0..4 {
            let mut dx = nalgebra::Vector4::zeros();
            dx[mu] = h;
            let at = |v| synthesize(&w, &FourVector::from_vector4(&v), &grid).unwrap().psi;
            let d = (at(x.to_vector4() + dx) - at(x.to_vector4() - dx)) / re(2.0 * h);
            lhs += gamma(mu) * d * I;
        }
        let psi = synthesize(&w, &x, &grid).unwrap().psi;
        assert!(lhs.camax() < 1e-6 * psi.camax().max(1e-3), "{e:?}: {}", lhs.camax());
    }
}

#[test]
fn plane_wave_kernel_properties() {
    let m = 1.3;
    let p3 = Real3::new(0.4, -0.7, 0.2);
    let p = on_shell(m, &p3).unwrap();
    let x = FourVector::new(0.3, -1.0, 0.5, 2.0);
    for e in EnergySign::ALL {
        let k = plane_wave_kernel(e, &p3, &x, m).unwrap();
        // each column solves (iγ^μ∂_μ − m)K = 0 with ∂_μ → −iεp_μ
        let mut op = dirac_spin::Mat4C::identity() * re(-m);
        for mu in 0..4 {
            let lowered = p.lower(mu);
            op += gamma(mu) * re(e.value() * lowered);
        }
        assert!((op * k).camax() < 1e-13);
        let at_origin = plane_wave_kernel(e, &p3, &FourVector::new(0.0, 0.0, 0.0, 0.0), m).unwrap();
        let phase = (I * (-e.value() * p.dot(&x))).exp();
        assert!((k - at_origin * phase).camax() < 1e-14);
    }
}
