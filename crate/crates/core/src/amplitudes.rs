//! Bispinor amplitudes v^ε(p) linking the spin basis to the covariant basis.
//!
//! Columns are spin labels σ = +½, −½ (indices 0, 1); rows are bispinor
//! indices. The closed form is
//!
//! ```text
//! v^ε(p) = 1/(2√(1 + p⁰/m)) · [ I + (p⁰ + p⃗·σ⃗)/m ; ε(I + (p⁰ − p⃗·σ⃗)/m) ] · σ₂
//! ```

use nalgebra::Matrix4x2;

use crate::clifford::{gamma, pauli, slash};
use crate::error::Result;
use crate::lorentz::{bispinor_rep, rest_momentum, standard_boost, su2_from_so3, wigner_numeric};
use crate::types::{check_mass, max_abs_diff, re, EnergySign, FourVector, LorentzMatrix, Mat2C, Mat4C, C64};

pub type AmplitudeMatrix = Matrix4x2<C64>;
pub type AdjointMatrix = nalgebra::Matrix2x4<C64>;

/// The amplitude v^ε(p) at a fixed on-shell momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitude {
    pub e: EnergySign,
    pub p: FourVector,
    pub m: f64,
    pub matrix: AmplitudeMatrix,
}

impl Amplitude {
    /// v̄ = v†γ⁰
    pub fn bar(&self) -> AdjointMatrix {
        self.matrix.adjoint() * gamma(0)
    }

    pub fn column(&self, sigma: usize) -> crate::types::Bispinor {
        self.matrix.column(sigma).into_owned()
    }

    /// v v̄
    pub fn outer(&self) -> Mat4C {
        self.matrix * self.bar()
    }
}

fn sigma_dot(p: &FourVector) -> Mat2C {
    pauli(1) * re(p.x) + pauli(2) * re(p.y) + pauli(3) * re(p.z)
}

/// Closed-form amplitude.
pub fn amplitude(e: EnergySign, p: &FourVector, m: f64) -> Result<Amplitude> {
    check_mass(m)?;
    p.check_on_shell(m)?;
    let id = pauli(0);
    let pd = sigma_dot(p);
    let upper = id + (id * re(p.t) + pd) / re(m);
    let lower = (id + (id * re(p.t) - pd) / re(m)) * re(e.value());
    let pref = re(1.0 / (2.0 * (1.0 + p.t / m).sqrt()));
    let s2 = pauli(2);
    let mut matrix = AmplitudeMatrix::zeros();
    matrix.fixed_view_mut::<2, 2>(0, 0).copy_from(&(upper * s2 * pref));
    matrix.fixed_view_mut::<2, 2>(2, 0).copy_from(&(lower * s2 * pref));
    Ok(Amplitude { e, p: *p, m, matrix })
}

/// v^ε(p) = S(L_p) v^ε(q) with q the rest momentum.
pub fn amplitude_via_boost(e: EnergySign, p: &FourVector, m: f64) -> Result<Amplitude> {
    let rest = amplitude(e, &rest_momentum(m), m)?;
    p.check_on_shell(m)?;
    let s = bispinor_rep(&standard_boost(p, m)?)?;
    Ok(Amplitude { e, p: *p, m, matrix: s * rest.matrix })
}

/// v̄^ε(p) M v^ε(p)
pub fn sandwich(e: EnergySign, p: &FourVector, m: f64, op: &Mat4C) -> Result<Mat2C> {
    let v = amplitude(e, p, m)?;
    Ok(v.bar() * op * v.matrix)
}

/// Residual of S(Λ) v^ε(p) 𝒟ᵀ(R) = v^ε(Λp) for both signs of 𝒟, and the
/// sign-matched lift itself.
fn weinberg_fit(l: &LorentzMatrix, e: EnergySign, p: &FourVector, m: f64) -> Result<(f64, Mat2C)> {
    let (r, _) = wigner_numeric(l, p, m)?;
    let d = su2_from_so3(&r)?;
    let s = bispinor_rep(l)?;
    let lhs = s * amplitude(e, p, m)?.matrix;
    let rhs = amplitude(e, &l.apply(p), m)?.matrix;
    let plus = max_abs_diff(&(lhs * d.transpose()), &rhs);
    let minus = max_abs_diff(&(-lhs * d.transpose()), &rhs);
    Ok(if plus <= minus { (plus, d) } else { (minus, -d) })
}

/// Weinberg-condition residual, minimized over the sign of the SU(2) lift.
pub fn weinberg_residual(l: &LorentzMatrix, e: EnergySign, p: &FourVector, m: f64) -> Result<f64> {
    Ok(weinberg_fit(l, e, p, m)?.0)
}

/// SU(2) matrix 𝒟(R(Λ, p)) with its sign matched to S(Λ) so that the
/// Weinberg condition holds.
pub fn spin_lift(l: &LorentzMatrix, e: EnergySign, p: &FourVector, m: f64) -> Result<Mat2C> {
    Ok(weinberg_fit(l, e, p, m)?.1)
}

/// max |ε v^ε(p) − γ⁰ v^ε(p^π)|, with parity phase 1.
pub fn parity_relation_residual(e: EnergySign, p: &FourVector, m: f64) -> Result<f64> {
    let v = amplitude(e, p, m)?;
    let vp = amplitude(e, &p.parity(), m)?;
    Ok(max_abs_diff(&(v.matrix * re(e.value())), &(gamma(0) * vp.matrix)))
}

/// Largest residual among v̄^ε′v^ε = εδI₂, v v̄ = εΛ_ε, Σ_ε ε v v̄ = I and
/// p̸ v = εm v at one momentum.
pub fn algebraic_residual(p: &FourVector, m: f64) -> Result<f64> {
    let mut worst = 0.0_f64;
    let mut completeness = Mat4C::zeros();
    for e in EnergySign::ALL {
        let v = amplitude(e, p, m)?;
        for e2 in EnergySign::ALL {
            let w = amplitude(e2, p, m)?;
            let expected = if e == e2 { Mat2C::identity() * re(e.value()) } else { Mat2C::zeros() };
            worst = worst.max(max_abs_diff(&(w.bar() * v.matrix), &expected));
        }
        let proj = crate::clifford::projector(e, p, m)?;
        worst = worst.max(max_abs_diff(&v.outer(), &(proj * re(e.value()))));
        completeness += v.outer() * re(e.value());
        let dirac = slash(p) * v.matrix - v.matrix * re(e.value() * m);
        worst = worst.max(crate::types::max_abs(&dirac));
    }
    Ok(worst.max(max_abs_diff(&completeness, &Mat4C::identity())))
}

/// The five closed-form sandwiches:
/// v̄γ^μv = (p^μ/m)I, v̄γ⁵v = 0, v̄γ⁰(p⃗·γ⃗)v = 0, v̄γ⁰γ⁵v = −(p⃗·σᵀ)/m,
/// v̄γ⃗γ⁵v = −(mσᵀ + p⃗(p⃗·σᵀ)/(m + p⁰))/m.
/// Returns the largest residual over all of them.
pub fn sandwich_formula_residual(e: EnergySign, p: &FourVector, m: f64) -> Result<f64> {
    let v = amplitude(e, p, m)?;
    let bar = v.bar();
    let sw = |op: &Mat4C| bar * op * v.matrix;
    let id = Mat2C::identity();
    let g5 = crate::clifford::gamma5();
    let p3 = p.spatial();
    let sigma_t: [Mat2C; 3] = [pauli(1).transpose(), pauli(2).transpose(), pauli(3).transpose()];
    let p_sigma_t = (0..3).fold(Mat2C::zeros(), |acc, k| acc + sigma_t[k] * re(p3[k]));
    let mut worst = 0.0_f64;
    for mu in 0..4 {
        worst = worst.max(max_abs_diff(&sw(&gamma(mu)), &(id * re(p.component(mu) / m))));
    }
    worst = worst.max(crate::types::max_abs(&sw(&g5)));
    let p_gamma = (1..4).fold(Mat4C::zeros(), |acc, k| acc + gamma(k) * re(p3[k - 1]));
    worst = worst.max(crate::types::max_abs(&sw(&(gamma(0) * p_gamma))));
    worst = worst.max(max_abs_diff(&sw(&(gamma(0) * g5)), &(-p_sigma_t / re(m))));
    for k in 0..3 {
        let expected = -(sigma_t[k] * re(m) + p_sigma_t * re(p3[k] / (m + p.t))) / re(m);
        worst = worst.max(max_abs_diff(&sw(&(gamma(k + 1) * g5)), &expected));
    }
    Ok(worst)
}

/// Rest-frame amplitude (1/√2)(σ₂ ; εσ₂).
pub fn rest_amplitude(e: EnergySign) -> AmplitudeMatrix {
    let s2 = pauli(2) * re(std::f64::consts::FRAC_1_SQRT_2);
    let mut matrix = AmplitudeMatrix::zeros();
    matrix.fixed_view_mut::<2, 2>(0, 0).copy_from(&s2);
    matrix.fixed_view_mut::<2, 2>(2, 0).copy_from(&(s2 * re(e.value())));
    matrix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{gamma5, projector};
    use crate::lorentz::{boost_from_velocity, rotation_matrix, BoostVelocity};
    use crate::types::{max_abs, on_shell, Real3};

    fn p_of(m: f64, x: f64, y: f64, z: f64) -> FourVector {
        on_shell(m, &Real3::new(x, y, z)).unwrap()
    }

    #[test]
    fn rest_frame_matches_hand_evaluation() {
        for e in EnergySign::ALL {
            for m in [0.3, 1.0, 4.0] {
                let v = amplitude(e, &rest_momentum(m), m).unwrap();
                assert!(max_abs_diff(&v.matrix, &rest_amplitude(e)) < 1e-15);
            }
        }
    }

    #[test]
    fn opposite_signs_are_orthogonal() {
        let p = p_of(1.2, 0.3, -2.0, 0.9);
        let plus = amplitude(EnergySign::Positive, &p, 1.2).unwrap();
        let minus = amplitude(EnergySign::Negative, &p, 1.2).unwrap();
        assert!(max_abs(&(plus.bar() * minus.matrix)) < 1e-13);
        assert!(max_abs_diff(&plus.outer(), &projector(EnergySign::Positive, &p, 1.2).unwrap()) < 1e-13);
    }

    #[test]
    fn algebra_at_fixed_momenta() {
        for (m, p3) in [(1.0, [0.0, 0.0, 0.0]), (0.5, [1.2, 0.0, 0.0]), (2.0, [3.0, -7.0, 11.0])] {
            let p = p_of(m, p3[0], p3[1], p3[2]);
            assert!(algebraic_residual(&p, m).unwrap() < 1e-12);
            for e in EnergySign::ALL {
                assert!(sandwich_formula_residual(e, &p, m).unwrap() < 1e-12);
                assert!(parity_relation_residual(e, &p, m).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn sandwich_examples() {
        let m = 1.0;
        let s = sandwich(EnergySign::Positive, &rest_momentum(m), m, &gamma(0)).unwrap();
        assert!(max_abs_diff(&s, &Mat2C::identity()) < 1e-15);
        let p = p_of(m, 0.0, 0.0, 0.0);
        assert!(max_abs(&sandwich(EnergySign::Negative, &p, m, &gamma5()).unwrap()) < 1e-15);
        let k = 2.5;
        let p = p_of(m, 0.0, 0.0, k);
        for e in EnergySign::ALL {
            let s = sandwich(e, &p, m, &(gamma(0) * gamma5())).unwrap();
            assert!(max_abs_diff(&s, &(-pauli(3).transpose() * re(k))) < 1e-13);
        }
    }

    #[test]
    fn boost_generation_matches_closed_form() {
        let m = 1.0;
        for p in [rest_momentum(m), p_of(m, 0.0, 0.0, 1.0), p_of(m, -4.0, 2.0, 0.5)] {
            for e in EnergySign::ALL {
                let a = amplitude(e, &p, m).unwrap();
                let b = amplitude_via_boost(e, &p, m).unwrap();
                assert!(max_abs_diff(&a.matrix, &b.matrix) < 1e-12);
            }
        }
    }

    #[test]
    fn weinberg_examples() {
        let m = 1.3;
        let p = p_of(m, 0.4, 1.0, -0.2);
        for e in EnergySign::ALL {
            assert!(weinberg_residual(&LorentzMatrix::identity(), e, &p, m).unwrap() < 1e-13);
            let lp = standard_boost(&p, m).unwrap();
            assert!(weinberg_residual(&lp, e, &rest_momentum(m), m).unwrap() < 1e-12);
        }
        let r = LorentzMatrix::from_rotation(&rotation_matrix(&Real3::new(0.4, -1.0, 2.0))).unwrap();
        let l = boost_from_velocity(&BoostVelocity::new(Real3::new(0.5, 0.3, -0.6)).unwrap()).compose(&r);
        for e in EnergySign::ALL {
            assert!(weinberg_residual(&l, e, &p, m).unwrap() < 1e-11);
        }
    }

    #[test]
    fn off_shell_rejected() {
        assert!(amplitude(EnergySign::Positive, &FourVector::new(1.0, 1.0, 0.0, 0.0), 1.0).is_err());
        assert!(amplitude(EnergySign::Positive, &rest_momentum(1.0), 0.0).is_err());
    }
}
