//! Momentum-space actions of the Pauli-Lubanski vector, the Dirac
//! Hamiltonian and the mean-spin operator, in both bases.
//!
//! # Matrix convention
//!
//! Every operator is stored as its ket matrix: Ô|a⟩ = Σ_b A_{ab}|b⟩, with `a`
//! the bispinor index α (covariant basis) or the spin label σ (spin basis).
//! Wavefunctions are bra components ψ_a = ⟨ψ|a⟩, so A acts on them directly as
//! a matrix on a column, and the product ÔÔ′ has ket matrix A′A. Expansion
//! coefficients c_a of |ψ⟩ = Σ c_a|a⟩ transform with Aᵀ instead.
//! [`OperatorAction`] is the one place where these rules are encoded.
//!
//! On the ε sector the four-momentum operator has eigenvalue εp^μ where p is
//! the physical on-shell momentum carried by the basis label.

use nalgebra::SMatrix;

use crate::amplitudes::{amplitude, Amplitude};
use crate::clifford::{gamma, gamma5, pauli};
use crate::error::Result;
use crate::lorentz::{wigner_closed, BoostVelocity};
use crate::types::{max_abs_diff, re, EnergySign, FourVector, Mat2C, Mat4C, R3x3, C64, METRIC};

/// Which momentum-space basis a matrix refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Covariant,
    Spin,
}

/// An operator at fixed (ε, p) given by its ket matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorAction<const N: usize> {
    pub e: EnergySign,
    pub p: FourVector,
    pub matrix: SMatrix<C64, N, N>,
}

pub type SpinAction = OperatorAction<2>;
pub type CovariantAction = OperatorAction<4>;

impl<const N: usize> OperatorAction<N> {
    pub fn new(e: EnergySign, p: FourVector, matrix: SMatrix<C64, N, N>) -> Self {
        Self { e, p, matrix }
    }

    pub fn basis(&self) -> Basis {
        if N == 2 {
            Basis::Spin
        } else {
            Basis::Covariant
        }
    }

    /// The product Ô·Ô′ (Ô′ applied first).
    pub fn compose(&self, inner: &Self) -> Self {
        Self { matrix: inner.matrix * self.matrix, ..self.clone() }
    }

    /// [Ô, Ô′]
    pub fn commutator(&self, other: &Self) -> Self {
        Self { matrix: other.matrix * self.matrix - self.matrix * other.matrix, ..self.clone() }
    }

    /// Matrix acting on bra-component wavefunction columns.
    pub fn on_wavefunction(&self) -> SMatrix<C64, N, N> {
        self.matrix
    }

    /// Matrix acting on ket expansion coefficients.
    pub fn column_action(&self) -> SMatrix<C64, N, N> {
        self.matrix.transpose()
    }

    /// Tr(ρ̂Ô) for a density operator ρ̂ = Σ ρ_{ab}|a⟩⟨b|.
    pub fn expectation(&self, rho: &SMatrix<C64, N, N>) -> C64 {
        (rho * self.column_action()).trace()
    }
}

fn check_index(i: usize) {
    assert!((1..=3).contains(&i), "spatial index {i} out of range 1..=3");
}

fn check_mu(mu: usize) {
    assert!(mu < 4, "Lorentz index {mu} out of range 0..=3");
}

fn sigma_t(i: usize) -> Mat2C {
    pauli(i).transpose()
}

fn p_dot_sigma_t(p: &FourVector) -> Mat2C {
    (1..4).fold(Mat2C::zeros(), |acc, k| acc + sigma_t(k) * re(p.component(k)))
}

/// Basis change of a covariant ket matrix to the spin basis: A = ε v̄ M v.
pub fn to_spin_basis(v: &Amplitude, cov: &Mat4C) -> Mat2C {
    v.bar() * cov * v.matrix * re(v.e.value())
}

/// Ŵ^μ in the covariant basis: −(ε/2)(εmγ^μ + p^μ)γ⁵.
pub fn pl_covariant(mu: usize, e: EnergySign, p: &FourVector, m: f64) -> Mat4C {
    check_mu(mu);
    let eps = e.value();
    (gamma(mu) * re(eps * m) + Mat4C::identity() * re(p.component(mu))) * gamma5() * re(-0.5 * eps)
}

/// Ŵ^μ in the spin basis:
/// Ŵ⁰ → (ε/2) p⃗·σᵀ and Ŵ⃗ → (ε/2)(mσᵀ + p⃗(p⃗·σᵀ)/(m + p⁰)).
pub fn pl_spin(mu: usize, e: EnergySign, p: &FourVector, m: f64) -> Mat2C {
    check_mu(mu);
    let eps = e.value();
    let ps = p_dot_sigma_t(p);
    if mu == 0 {
        ps * re(0.5 * eps)
    } else {
        (sigma_t(mu) * re(m) + ps * re(p.component(mu) / (m + p.t))) * re(0.5 * eps)
    }
}

/// Ŵ^μ in the spin basis obtained as −(m/2) ε v̄γ^μγ⁵v.
pub fn pl_spin_from_sandwich(mu: usize, e: EnergySign, p: &FourVector, m: f64) -> Result<Mat2C> {
    check_mu(mu);
    let v = amplitude(e, p, m)?;
    Ok(v.bar() * gamma(mu) * gamma5() * v.matrix * re(-0.5 * m * e.value()))
}

/// Ŝ^i in the spin basis: σᵢᵀ/2.
pub fn spin_spin_basis(i: usize) -> Mat2C {
    check_index(i);
    sigma_t(i) * re(0.5)
}

/// Ŝ = (1/m)(ÊŴ⃗ − Ŵ⁰P⃗/(ÊP̂⁰ + m)) evaluated on the ε sector, where the
/// momentum operators take the eigenvalues εp^μ.
pub fn spin_from_pauli_lubanski(i: usize, e: EnergySign, p: &FourVector, m: f64) -> Mat2C {
    check_index(i);
    let eps = e.value();
    let w0 = pl_spin(0, e, p, m);
    let wi = pl_spin(i, e, p, m);
    let (p0_op, pi_op) = (eps * p.t, eps * p.component(i));
    (wi * re(eps) - w0 * re(pi_op / (eps * p0_op + m))) / re(m)
}

/// Positive-energy form Ŝ = (1/m)(Ŵ⃗ − Ŵ⁰P⃗/(P̂⁰ + m)).
pub fn spin_positive_energy(i: usize, p: &FourVector, m: f64) -> Mat2C {
    check_index(i);
    let e = EnergySign::Positive;
    (pl_spin(i, e, p, m) - pl_spin(0, e, p, m) * re(p.component(i) / (p.t + m))) / re(m)
}

/// Ŝ^i in the covariant basis: −½[(εγ^i + p^i(I − εγ⁰)/(p⁰ + m))γ⁵].
pub fn spin_covariant(i: usize, e: EnergySign, p: &FourVector, m: f64) -> Mat4C {
    check_index(i);
    let eps = e.value();
    let id = Mat4C::identity();
    let inner = gamma(i) * re(eps) + (id - gamma(0) * re(eps)) * re(p.component(i) / (p.t + m));
    inner * gamma5() * re(-0.5)
}

/// H_D^ε = γ⁰(ε p⃗·γ⃗ + m)
pub fn hamiltonian_cov(e: EnergySign, p: &FourVector, m: f64) -> Mat4C {
    let p_gamma = (1..4).fold(Mat4C::zeros(), |acc, k| acc + gamma(k) * re(p.component(k)));
    gamma(0) * (p_gamma * re(e.value()) + Mat4C::identity() * re(m))
}

/// Spin-basis Hamiltonian ε v̄ H_D^ε v, which should equal εp⁰ I₂.
pub fn fw_spin_hamiltonian(e: EnergySign, p: &FourVector, m: f64) -> Result<Mat2C> {
    let v = amplitude(e, p, m)?;
    Ok(to_spin_basis(&v, &hamiltonian_cov(e, p, m)))
}

pub fn fw_diagonalization_residual(e: EnergySign, p: &FourVector, m: f64) -> Result<f64> {
    let h = fw_spin_hamiltonian(e, p, m)?;
    Ok(max_abs_diff(&h, &(Mat2C::identity() * re(e.value() * p.t))))
}

/// −(1/m²) Ŵ^μŴ_μ in the spin basis; equals s(s+1) = 3/4 times I₂.
pub fn casimir(e: EnergySign, p: &FourVector, m: f64) -> Mat2C {
    let mut acc = Mat2C::zeros();
    for mu in 0..4 {
        let w = pl_spin(mu, e, p, m);
        acc += w * w * re(METRIC[mu]);
    }
    acc * re(-1.0 / (m * m))
}

/// The same Casimir built from covariant matrices and then sandwiched.
pub fn casimir_covariant(e: EnergySign, p: &FourVector, m: f64) -> Result<Mat2C> {
    let mut acc = Mat4C::zeros();
    for mu in 0..4 {
        let w = pl_covariant(mu, e, p, m);
        acc += w * w * re(METRIC[mu]);
    }
    let v = amplitude(e, p, m)?;
    Ok(to_spin_basis(&v, &acc) * re(-1.0 / (m * m)))
}

fn spin_triple() -> [Mat2C; 3] {
    [spin_spin_basis(1), spin_spin_basis(2), spin_spin_basis(3)]
}

/// Spin in the frame boosted by v⃗, written in terms of Ŝ, P̂ and v⃗ with P̂
/// replaced by the numeric momentum (ε = +1).
pub fn spin_transform_closed(v: &BoostVelocity, p: &FourVector, m: f64) -> [Mat2C; 3] {
    let s = spin_triple();
    let g = v.gamma();
    let vv = v.vector();
    let p3 = p.spatial();
    let ps = (0..3).fold(Mat2C::zeros(), |acc, k| acc + s[k] * re(p3[k]));
    let vs = (0..3).fold(Mat2C::zeros(), |acc, k| acc + s[k] * re(vv[k]));
    let a = m + p.t;
    let vp = vv.dot(&p3);
    let b = m + g * (p.t - vp);
    let along_p = (ps * re(1.0 - g) + vs * re(g * a)) / re(a * b);
    let along_v = (vs * re(g * (m - p.t) / (1.0 + g)) + ps * re(2.0 * g * vp / (a * (1.0 + g))) - ps) * re(g / b);
    std::array::from_fn(|i| s[i] + along_p * re(p3[i]) + along_v * re(vv[i]))
}

/// Ŝ′ = R Ŝ for a rotation matrix R.
pub fn spin_transform_rotation(r: &R3x3) -> [Mat2C; 3] {
    let s = spin_triple();
    std::array::from_fn(|i| (0..3).fold(Mat2C::zeros(), |acc, j| acc + s[j] * re(r[(i, j)])))
}

/// Ŝ′ = R(v⃗, p)Ŝ with the closed-form Wigner rotation.
pub fn spin_transform_wigner(v: &BoostVelocity, p: &FourVector, m: f64) -> Result<[Mat2C; 3]> {
    Ok(spin_transform_rotation(&wigner_closed(v, p, m)?))
}

/// Largest entrywise difference between two operator triples.
pub fn triple_residual(a: &[Mat2C; 3], b: &[Mat2C; 3]) -> f64 {
    (0..3).map(|i| max_abs_diff(&a[i], &b[i])).fold(0.0, f64::max)
}

/// Residual of Ŵ⁰ = P̂·Ŝ and Ŵ⃗ = mŜ + (P̂·Ŝ)P̂/(m + P̂⁰) at ε = +1.
pub fn pl_from_spin_residual(p: &FourVector, m: f64) -> f64 {
    let e = EnergySign::Positive;
    let s = spin_triple();
    let p3 = p.spatial();
    let ps = (0..3).fold(Mat2C::zeros(), |acc, k| acc + s[k] * re(p3[k]));
    let mut worst = max_abs_diff(&pl_spin(0, e, p, m), &ps);
    for i in 0..3 {
        let expected = s[i] * re(m) + ps * re(p3[i] / (m + p.t));
        worst = worst.max(max_abs_diff(&pl_spin(i + 1, e, p, m), &expected));
    }
    worst
}

/// Largest entry of Σ_μ p_μ Ŵ^μ v^ε(p), the transversality residual.
pub fn transversality_residual(e: EnergySign, p: &FourVector, m: f64) -> Result<f64> {
    let v = amplitude(e, p, m)?;
    let contracted = (0..4).fold(Mat4C::zeros(), |acc, mu| acc + pl_covariant(mu, e, p, m) * re(p.lower(mu)));
    Ok(crate::types::max_abs(&(contracted * v.matrix)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{max_abs, on_shell, Real3, I};

    fn p_of(m: f64, x: f64, y: f64, z: f64) -> FourVector {
        on_shell(m, &Real3::new(x, y, z)).unwrap()
    }

    const SIGNS: [EnergySign; 2] = EnergySign::ALL;

    #[test]
    fn spin_basis_matrices() {
        let s3 = spin_spin_basis(3);
        assert_eq!(s3, Mat2C::new(re(0.5), re(0.0), re(0.0), re(-0.5)));
        let p = p_of(1.0, 0.0, 0.0, 0.0);
        let a = |i| SpinAction::new(EnergySign::Positive, p, spin_spin_basis(i));
        let comm = a(1).commutator(&a(2));
        assert!(max_abs_diff(&comm.matrix, &(spin_spin_basis(3) * I)) < 1e-15);
        let comm = a(2).commutator(&a(3));
        assert!(max_abs_diff(&comm.matrix, &(spin_spin_basis(1) * I)) < 1e-15);
    }

    #[test]
    fn reconstruction_both_signs() {
        for (m, p3) in [(1.0, [3.0, 2.0, 1.0]), (0.4, [-1.0, 0.0, 2.0]), (2.0, [0.0, 0.0, 0.0])] {
            let p = p_of(m, p3[0], p3[1], p3[2]);
            for e in SIGNS {
                for i in 1..4 {
                    let s = spin_from_pauli_lubanski(i, e, &p, m);
                    assert!(max_abs_diff(&s, &spin_spin_basis(i)) < 1e-12, "e={e} i={i}");
                }
            }
            for i in 1..4 {
                assert_eq!(spin_positive_energy(i, &p, m), spin_from_pauli_lubanski(i, EnergySign::Positive, &p, m));
            }
        }
    }

    #[test]
    fn pl_spin_examples() {
        let m = 1.0;
        let rest = p_of(m, 0.0, 0.0, 0.0);
        assert!(max_abs_diff(&pl_spin(3, EnergySign::Positive, &rest, m), &(pauli(3) * re(0.5))) < 1e-15);
        assert!(max_abs(&pl_spin(0, EnergySign::Negative, &rest, m)) < 1e-15);
        let k = 1.7;
        let p = p_of(m, 0.0, 0.0, k);
        for e in SIGNS {
            let expected = pauli(3).transpose() * re(e.value() * k / 2.0);
            assert!(max_abs_diff(&pl_spin(0, e, &p, m), &expected) < 1e-15);
        }
    }

    #[test]
    fn pl_spin_matches_both_sandwich_routes() {
        let m = 1.4;
        let p = p_of(m, 0.5, -2.5, 1.0);
        for e in SIGNS {
            let v = amplitude(e, &p, m).unwrap();
            for mu in 0..4 {
                let direct = pl_spin(mu, e, &p, m);
                assert!(max_abs_diff(&direct, &pl_spin_from_sandwich(mu, e, &p, m).unwrap()) < 1e-12);
                assert!(max_abs_diff(&direct, &to_spin_basis(&v, &pl_covariant(mu, e, &p, m))) < 1e-12);
            }
            assert!(transversality_residual(e, &p, m).unwrap() < 1e-12);
        }
    }

    #[test]
    fn pl_covariant_rest_example() {
        let m = 1.0;
        let rest = p_of(m, 0.0, 0.0, 0.0);
        let expected = (gamma(0) * re(m) + Mat4C::identity() * re(m)) * gamma5() * re(-0.5);
        assert!(max_abs_diff(&pl_covariant(0, EnergySign::Positive, &rest, m), &expected) < 1e-15);
    }

    #[test]
    fn covariant_spin_sandwiches_to_spin_basis() {
        for (m, p3) in [(2.0, [1.0, 1.0, 1.0]), (1.0, [0.0, -4.0, 0.3]), (0.7, [0.0, 0.0, 0.0])] {
            let p = p_of(m, p3[0], p3[1], p3[2]);
            for e in SIGNS {
                let v = amplitude(e, &p, m).unwrap();
                for i in 1..4 {
                    let s = to_spin_basis(&v, &spin_covariant(i, e, &p, m));
                    assert!(max_abs_diff(&s, &spin_spin_basis(i)) < 1e-12, "e={e} i={i}");
                }
            }
        }
        let rest = p_of(1.0, 0.0, 0.0, 0.0);
        let expected = gamma(2) * gamma5() * re(-0.5);
        assert!(max_abs_diff(&spin_covariant(2, EnergySign::Positive, &rest, 1.0), &expected) < 1e-15);
    }

    #[test]
    fn hamiltonian_properties() {
        let m = 1.0;
        let rest = p_of(m, 0.0, 0.0, 0.0);
        assert!(max_abs_diff(&hamiltonian_cov(EnergySign::Positive, &rest, m), &(gamma(0) * re(m))) < 1e-15);
        let p = p_of(m, 0.3, 2.0, -1.0);
        for e in SIGNS {
            let h = hamiltonian_cov(e, &p, m);
            assert!(max_abs_diff(&(h * h), &(Mat4C::identity() * re(p.t * p.t))) < 1e-12);
            assert!(h.trace().norm() < 1e-15);
            assert!(fw_diagonalization_residual(e, &p, m).unwrap() < 1e-11);
        }
        let p = p_of(m, 0.0, 0.0, 5.0);
        assert!(fw_diagonalization_residual(EnergySign::Negative, &p, m).unwrap() < 1e-11);
    }

    #[test]
    fn casimir_is_three_quarters() {
        let m = 0.9;
        let p = p_of(m, 2.0, -1.0, 3.0);
        for e in SIGNS {
            let target = Mat2C::identity() * re(0.75);
            assert!(max_abs_diff(&casimir(e, &p, m), &target) < 1e-12);
            assert!(max_abs_diff(&casimir_covariant(e, &p, m).unwrap(), &target) < 1e-12);
        }
    }

    #[test]
    fn spin_transform_cases() {
        let m = 1.0;
        let p = p_of(m, 0.0, 1.0, 0.0);
        let s = spin_triple();
        let zero = BoostVelocity::zero();
        assert!(triple_residual(&spin_transform_closed(&zero, &p, m), &s) < 1e-15);
        let par = BoostVelocity::new(Real3::new(0.0, -0.6, 0.0)).unwrap();
        assert!(triple_residual(&spin_transform_closed(&par, &p, m), &s) < 1e-14);
        let perp = BoostVelocity::new(Real3::new(0.5, 0.0, 0.0)).unwrap();
        let closed = spin_transform_closed(&perp, &p, m);
        let wig = spin_transform_wigner(&perp, &p, m).unwrap();
        assert!(triple_residual(&closed, &wig) < 1e-14);
        assert!(triple_residual(&closed, &s) > 1e-3);
        assert!(pl_from_spin_residual(&p, m) < 1e-14);
    }

    #[test]
    fn density_expectation_uses_transpose() {
        let xi = Real3::new(0.3, -0.4, 0.5);
        let rho = (pauli(0) + pauli(1) * re(xi.x) + pauli(2) * re(xi.y) + pauli(3) * re(xi.z)) * re(0.5);
        let p = p_of(1.0, 0.0, 0.0, 0.0);
        for i in 1..4 {
            let a = SpinAction::new(EnergySign::Positive, p, spin_spin_basis(i));
            let ev = a.expectation(&rho);
            assert!((ev - re(xi[i - 1] / 2.0)).norm() < 1e-15);
        }
    }
}
