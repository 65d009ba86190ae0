//! Sharp-momentum, positive-energy spin states ρ = (1 + ξ⃗·σ⃗)/2.

use crate::clifford::pauli;
use crate::error::{Error, Result};
use crate::lorentz::{su2_from_so3, wigner_numeric};
use crate::spin::{pl_spin, spin_spin_basis, SpinAction};
use crate::types::{check_mass, on_shell, re, EnergySign, FourVector, LorentzMatrix, Mat2C, Real3};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    pub q: FourVector,
    pub xi: Real3,
    pub m: f64,
}

/// Expectation values of Ŵ⁰, Ŵ⃗ and Ŝ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Expectations {
    pub w0: f64,
    pub w: Real3,
    pub s: Real3,
}

impl DensityState {
    pub fn new(m: f64, q3: &Real3, xi: Real3) -> Result<Self> {
        check_mass(m)?;
        let len = xi.norm();
        if len > 1.0 + 1e-12 || !len.is_finite() {
            return Err(Error::BlochVectorTooLong(len));
        }
        Ok(Self { q: on_shell(m, q3)?, xi, m })
    }

    /// (1 + ξ⃗·σ⃗)/2 in the ket basis.
    pub fn matrix(&self) -> Mat2C {
        (pauli(0) + pauli(1) * re(self.xi.x) + pauli(2) * re(self.xi.y) + pauli(3) * re(self.xi.z)) * re(0.5)
    }

    fn expect(&self, a: Mat2C) -> f64 {
        SpinAction::new(EnergySign::Positive, self.q, a).expectation(&self.matrix()).re
    }

    pub fn expectations(&self) -> Expectations {
        let e = EnergySign::Positive;
        Expectations {
            w0: self.expect(pl_spin(0, e, &self.q, self.m)),
            w: Real3::from_fn(|i, _| self.expect(pl_spin(i + 1, e, &self.q, self.m))),
            s: Real3::from_fn(|i, _| self.expect(spin_spin_basis(i + 1))),
        }
    }

    /// Closed forms ⟨Ŵ⁰⟩ = q⃗·ξ⃗/2, ⟨Ŵ⃗⟩ = (mξ⃗ + q⃗(q⃗·ξ⃗)/(q⁰ + m))/2, ⟨Ŝ⟩ = ξ⃗/2.
    pub fn expectations_closed(&self) -> Expectations {
        let q3 = self.q.spatial();
        let qx = q3.dot(&self.xi);
        Expectations { w0: qx / 2.0, w: (self.xi * self.m + q3 * (qx / (self.q.t + self.m))) / 2.0, s: self.xi / 2.0 }
    }

    /// Momentum Λq and Bloch vector R(Λ, q)ξ⃗.
    pub fn bloch_transform(&self, l: &LorentzMatrix) -> Result<Self> {
        l.check_proper_orthochronous()?;
        let (r, _) = wigner_numeric(l, &self.q, self.m)?;
        Ok(Self { q: l.apply(&self.q), xi: r * self.xi, m: self.m })
    }

    /// The same transformation as ρ′ = 𝒟ρ𝒟† with ξ′_k = Tr(ρ′σ_k).
    pub fn bloch_transform_adjoint(&self, l: &LorentzMatrix) -> Result<Self> {
        l.check_proper_orthochronous()?;
        let (r, _) = wigner_numeric(l, &self.q, self.m)?;
        let d = su2_from_so3(&r)?;
        let rho = d * self.matrix() * d.adjoint();
        let xi = Real3::from_fn(|k, _| (rho * pauli(k + 1)).trace().re);
        Ok(Self { q: l.apply(&self.q), xi, m: self.m })
    }
}
