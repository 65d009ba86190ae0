//! Shared numeric types and Minkowski conventions.
//!
//! Natural units (ħ = c = 1) throughout. The metric is g = diag(1, −1, −1, −1)
//! and ε^{0123} = +1.

use std::fmt;
use std::ops::Neg;

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector2, Vector3, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Real3 = Vector3<f64>;
pub type R3x3 = Matrix3<f64>;
pub type Mat2C = Matrix2<C64>;
pub type Mat4C = Matrix4<C64>;
pub type Spinor = Vector2<C64>;
pub type Bispinor = Vector4<C64>;

/// Diagonal of the Minkowski metric.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Absolute tolerance for entrywise complex equality.
pub const ENTRY_TOL: f64 = 1e-12;

/// Tolerance used when validating Lorentz matrices, relative to the squared
/// largest entry.
pub const LORENTZ_TOL: f64 = 1e-10;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// A real Minkowski four-vector (t, x, y, z).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn from_parts(t: f64, spatial: &Real3) -> Self {
        Self::new(t, spatial.x, spatial.y, spatial.z)
    }

    pub fn from_vector4(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_vector4(&self) -> Vector4<f64> {
        Vector4::new(self.t, self.x, self.y, self.z)
    }

    pub fn spatial(&self) -> Real3 {
        Real3::new(self.x, self.y, self.z)
    }

    /// Contravariant component `mu` (0 = time).
    pub fn component(&self, mu: usize) -> f64 {
        match mu {
            0 => self.t,
            1 => self.x,
            2 => self.y,
            3 => self.z,
            _ => panic!("four-vector index {mu} out of range"),
        }
    }

    /// Covariant component p_mu = g_{mu mu} p^mu.
    pub fn lower(&self, mu: usize) -> f64 {
        METRIC[mu] * self.component(mu)
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    /// The parity image (t, −x⃗).
    pub fn parity(&self) -> Self {
        Self::new(self.t, -self.x, -self.y, -self.z)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.t, s * self.x, s * self.y, s * self.z)
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Checks p·p = m² with a tolerance relative to (p⁰)².
    pub fn check_on_shell(&self, m: f64) -> Result<()> {
        check_mass(m)?;
        let residual = (self.dot(self) - m * m).abs();
        if self.t > 0.0 && residual <= 1e-10 * self.t * self.t {
            Ok(())
        } else {
            Err(Error::OffShell { p: self.to_array(), m, residual })
        }
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self.scale(-1.0)
    }
}

impl fmt::Display for FourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.t, self.x, self.y, self.z)
    }
}

/// a⁰b⁰ − a⃗·b⃗
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z
}

/// ω(p⃗) = √(m² + p⃗²)
pub fn energy(m: f64, p3: &Real3) -> f64 {
    (m * m + p3.norm_squared()).sqrt()
}

/// The positive-energy on-shell vector (ω(p⃗), p⃗).
pub fn on_shell(m: f64, p3: &Real3) -> Result<FourVector> {
    check_mass(m)?;
    Ok(FourVector::from_parts(energy(m, p3), p3))
}

pub(crate) fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveMass(m))
    }
}

/// Sign of the energy, ε = ±1. Also the eigenvalue of Ê = P̂⁰/ω(p⃗), which
/// is diagonal in every momentum-space representation used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub const ALL: [EnergySign; 2] = [EnergySign::Positive, EnergySign::Negative];

    pub fn value(self) -> f64 {
        match self {
            EnergySign::Positive => 1.0,
            EnergySign::Negative => -1.0,
        }
    }

    pub fn from_i32(e: i32) -> Result<Self> {
        match e {
            1 => Ok(EnergySign::Positive),
            -1 => Ok(EnergySign::Negative),
            other => Err(Error::InvalidArgument(format!("energy sign must be ±1, got {other}"))),
        }
    }

    /// Eigenvalue of Ê for a momentum eigenvalue with time component `p0`.
    pub fn of_energy(p0: f64) -> Self {
        if p0 < 0.0 {
            EnergySign::Negative
        } else {
            EnergySign::Positive
        }
    }

    pub fn flip(self) -> Self {
        match self {
            EnergySign::Positive => EnergySign::Negative,
            EnergySign::Negative => EnergySign::Positive,
        }
    }

    /// Position of this sector in `[Positive, Negative]` arrays.
    pub fn index(self) -> usize {
        match self {
            EnergySign::Positive => 0,
            EnergySign::Negative => 1,
        }
    }
}

impl fmt::Display for EnergySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergySign::Positive => "+1",
            EnergySign::Negative => "-1",
        })
    }
}

/// A real 4×4 matrix preserving the Minkowski metric, ΛᵀgΛ = g.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(Matrix4<f64>);

impl LorentzMatrix {
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let residual = metric_residual(&m);
        let scale = m.amax().max(1.0);
        if residual.is_finite() && residual < LORENTZ_TOL * scale * scale {
            Ok(Self(m))
        } else {
            Err(Error::NotLorentz(residual))
        }
    }

    /// Wraps `m` without validation; only for matrices that are Lorentz by
    /// construction (products, exact formulas).
    pub(crate) fn new_unchecked(m: Matrix4<f64>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Spatial inversion ℙ = diag(1, −1, −1, −1).
    pub fn parity() -> Self {
        Self(Matrix4::from_diagonal(&Vector4::from(METRIC)))
    }

    /// The pure rotation Λ(R) = diag(1, R).
    pub fn from_rotation(r: &R3x3) -> Result<Self> {
        crate::lorentz::check_rotation(r)?;
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(r);
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.0[(mu, nu)]
    }

    pub fn spatial_block(&self) -> R3x3 {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }

    /// Λ⁻¹ = g Λᵀ g.
    pub fn inverse(&self) -> Self {
        let g = Matrix4::from_diagonal(&Vector4::from(METRIC));
        Self(g * self.0.transpose() * g)
    }

    /// The product `self · other` (apply `other` first).
    pub fn compose(&self, other: &LorentzMatrix) -> Self {
        Self(self.0 * other.0)
    }

    pub fn apply(&self, p: &FourVector) -> FourVector {
        FourVector::from_vector4(&(self.0 * p.to_vector4()))
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    pub fn is_proper_orthochronous(&self) -> bool {
        self.0[(0, 0)] >= 1.0 - 1e-12 && self.determinant() > 0.0
    }

    pub fn check_proper_orthochronous(&self) -> Result<()> {
        if self.is_proper_orthochronous() {
            Ok(())
        } else {
            Err(Error::NotProperOrthochronous { det: self.determinant(), l00: self.0[(0, 0)] })
        }
    }

    /// |ΛᵀgΛ − g|_max
    pub fn metric_residual(&self) -> f64 {
        metric_residual(&self.0)
    }
}

fn metric_residual(m: &Matrix4<f64>) -> f64 {
    let g = Matrix4::from_diagonal(&Vector4::from(METRIC));
    (m.transpose() * g * m - g).amax()
}

/// Largest entry modulus of a complex matrix.
pub fn max_abs<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<C64, R, C>>(
    m: &nalgebra::Matrix<C64, R, C, S>,
) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest entrywise difference |a − b|, the residual metric used throughout.
pub fn max_abs_diff<R, C, S1, S2>(a: &nalgebra::Matrix<C64, R, C, S1>, b: &nalgebra::Matrix<C64, R, C, S2>) -> f64
where
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    S1: nalgebra::RawStorage<C64, R, C>,
    S2: nalgebra::RawStorage<C64, R, C>,
{
    a.iter().zip(b.iter()).fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Promotes a real matrix to complex entries.
pub fn complexify4(m: &Matrix4<f64>) -> Mat4C {
    m.map(re)
}

/// Matrix exponential by scaling and squaring with a Padé approximant.
pub fn expm2(a: &Mat2C) -> Mat2C {
    a.exp()
}

/// Matrix exponential by scaling and squaring with a Padé approximant.
pub fn expm4(a: &Mat4C) -> Mat4C {
    a.exp()
}
