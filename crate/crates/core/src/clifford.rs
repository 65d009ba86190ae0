//! Gamma matrices in the chiral representation
//!
//! ```text
//! γ⁰ = [[0, I], [I, 0]],  γᵏ = [[0, −σₖ], [σₖ, 0]],  γ⁵ = [[I, 0], [0, −I]]
//! ```
//!
//! together with Σ^{μν} = (i/4)[γ^μ, γ^ν], the Feynman slash and the energy
//! projectors Λ_ε(p) = (m + ε p̸)/2m.

use std::sync::OnceLock;

use crate::error::Result;
use crate::types::{check_mass, EnergySign, FourVector, Mat2C, Mat4C, I, ONE, ZERO};

/// σ₀ = I₂ followed by the three Pauli matrices.
pub fn pauli(i: usize) -> Mat2C {
    match i {
        0 => Mat2C::new(ONE, ZERO, ZERO, ONE),
        1 => Mat2C::new(ZERO, ONE, ONE, ZERO),
        2 => Mat2C::new(ZERO, -I, I, ZERO),
        3 => Mat2C::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {i} out of range"),
    }
}

fn blocks(a: &Mat2C, b: &Mat2C, c: &Mat2C, d: &Mat2C) -> Mat4C {
    let mut m = Mat4C::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

/// The full set of Clifford objects in the fixed representation.
#[derive(Clone, Debug)]
pub struct GammaSet {
    pub gamma: [Mat4C; 4],
    pub gamma5: Mat4C,
    /// Σ^{μν} = (i/4)[γ^μ, γ^ν]
    pub sigma: [[Mat4C; 4]; 4],
}

impl GammaSet {
    fn build() -> Self {
        let id = pauli(0);
        let zero = Mat2C::zeros();
        let g0 = blocks(&zero, &id, &id, &zero);
        let gk = |k: usize| blocks(&zero, &(-pauli(k)), &pauli(k), &zero);
        let gamma = [g0, gk(1), gk(2), gk(3)];
        let gamma5 = blocks(&id, &zero, &zero, &(-id));
        let mut sigma = [[Mat4C::zeros(); 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let comm = gamma[mu] * gamma[nu] - gamma[nu] * gamma[mu];
                sigma[mu][nu] = comm * (I * 0.25);
            }
        }
        Self { gamma, gamma5, sigma }
    }
}

pub fn gammas() -> &'static GammaSet {
    static SET: OnceLock<GammaSet> = OnceLock::new();
    SET.get_or_init(GammaSet::build)
}

pub fn gamma(mu: usize) -> Mat4C {
    gammas().gamma[mu]
}

pub fn gamma5() -> Mat4C {
    gammas().gamma5
}

/// p̸ = p_μγ^μ = p⁰γ⁰ − p⃗·γ⃗
pub fn slash(p: &FourVector) -> Mat4C {
    let g = &gammas().gamma;
    (0..4).fold(Mat4C::zeros(), |acc, mu| acc + g[mu] * crate::types::re(p.lower(mu)))
}

/// p⃗·γ⃗
pub fn spatial_slash(p: &FourVector) -> Mat4C {
    let g = &gammas().gamma;
    (1..4).fold(Mat4C::zeros(), |acc, k| acc + g[k] * crate::types::re(p.component(k)))
}

/// Λ_ε(p) = (mI + ε p̸)/2m
pub fn projector(e: EnergySign, p: &FourVector, m: f64) -> Result<Mat4C> {
    check_mass(m)?;
    Ok((Mat4C::identity() * crate::types::re(m) + slash(p) * crate::types::re(e.value())) / crate::types::re(2.0 * m))
}

/// S(ℙ) = ξγ⁰ with the phase fixed to ξ = 1.
pub fn parity_bispinor() -> Mat4C {
    gamma(0)
}

/// Largest entry of γ^μγ^ν + γ^νγ^μ − 2g^{μν}I over all index pairs.
pub fn anticommutator_residual() -> f64 {
    let g = &gammas().gamma;
    let mut worst = 0.0_f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let expected = if mu == nu { crate::types::METRIC[mu] * 2.0 } else { 0.0 };
            let ac = g[mu] * g[nu] + g[nu] * g[mu] - Mat4C::identity() * crate::types::re(expected);
            worst = worst.max(crate::types::max_abs(&ac));
        }
    }
    worst
}

/// Largest entry of {γ⁵, γ^μ} over μ, together with |(γ⁵)² − I|.
pub fn gamma5_residual() -> f64 {
    let g = &gammas().gamma;
    let g5 = gamma5();
    let mut worst = crate::types::max_abs(&(g5 * g5 - Mat4C::identity()));
    for gm in g {
        worst = worst.max(crate::types::max_abs(&(g5 * gm + gm * g5)));
    }
    worst
}

/// Largest entry of Λ_ε² − Λ_ε, Λ₊Λ₋ and Λ₊ + Λ₋ − I at one momentum.
pub fn projector_residual(p: &FourVector, m: f64) -> Result<f64> {
    let plus = projector(EnergySign::Positive, p, m)?;
    let minus = projector(EnergySign::Negative, p, m)?;
    let checks =
        [plus * plus - plus, minus * minus - minus, plus * minus, minus * plus, plus + minus - Mat4C::identity()];
    Ok(checks.iter().map(crate::types::max_abs).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{max_abs, max_abs_diff, on_shell, re, Real3, METRIC};

    #[test]
    fn clifford_relations_are_exact() {
        assert_eq!(anticommutator_residual(), 0.0);
        assert_eq!(gamma5_residual(), 0.0);
        let s = &gammas().sigma;
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(max_abs(&(s[mu][nu] + s[nu][mu])), 0.0);
            }
        }
    }

    #[test]
    fn gamma5_matches_levi_civita_convention() {
        // With ε^{0123} = 1 the chiral γ⁵ here equals iγ⁰γ¹γ²γ³.
        let g = &gammas().gamma;
        let prod = g[0] * g[1] * g[2] * g[3] * I;
        assert_eq!(max_abs_diff(&prod, &gamma5()), 0.0);
    }

    #[test]
    fn rotation_generators_are_block_diagonal() {
        let s = &gammas().sigma;
        // Σ^{12} = σ₃/2 ⊕ σ₃/2
        for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
            let expected = {
                let mut m = Mat4C::zeros();
                let half = pauli(k) * re(0.5);
                m.fixed_view_mut::<2, 2>(0, 0).copy_from(&half);
                m.fixed_view_mut::<2, 2>(2, 2).copy_from(&half);
                m
            };
            assert_eq!(max_abs_diff(&s[i][j], &expected), 0.0);
        }
    }

    #[test]
    fn slash_examples() {
        assert_eq!(slash(&FourVector::new(1.0, 0.0, 0.0, 0.0)), gamma(0));
        assert_eq!(slash(&FourVector::new(0.0, 0.0, 0.0, 1.0)), -gamma(3));
        let p = on_shell(1.0, &Real3::new(0.3, -1.2, 2.0)).unwrap();
        let sq = slash(&p) * slash(&p);
        assert!(max_abs_diff(&sq, &(Mat4C::identity() * re(p.dot(&p)))) < 1e-12);
        assert!(max_abs_diff(&sq, &Mat4C::identity()) < 1e-12);
    }

    #[test]
    fn projector_properties() {
        let m = 1.7;
        let q = FourVector::new(m, 0.0, 0.0, 0.0);
        let rest = projector(EnergySign::Positive, &q, m).unwrap();
        assert!(max_abs_diff(&rest, &((Mat4C::identity() + gamma(0)) * re(0.5))) < 1e-15);
        let p = on_shell(m, &Real3::new(2.0, -0.5, 4.0)).unwrap();
        let lp = projector(EnergySign::Positive, &p, m).unwrap();
        let lm = projector(EnergySign::Negative, &p, m).unwrap();
        assert!((lp.trace() - re(2.0)).norm() < 1e-14);
        assert!((lm.trace() - re(2.0)).norm() < 1e-14);
        assert!(max_abs_diff(&(lp * lp), &lp) < 1e-12);
        assert!(max_abs_diff(&(lm * lm), &lm) < 1e-12);
        assert!(max_abs(&(lp * lm)) < 1e-12);
        assert!(max_abs_diff(&(lp + lm), &Mat4C::identity()) < 1e-15);
        assert!(projector(EnergySign::Positive, &p, 0.0).is_err());
    }

    #[test]
    fn parity_conjugation() {
        let s = parity_bispinor();
        assert_eq!(s * s, Mat4C::identity());
        for mu in 0..4 {
            let conj = s * gamma(mu) * s;
            assert_eq!(conj, gamma(mu) * re(METRIC[mu]));
        }
    }
}
