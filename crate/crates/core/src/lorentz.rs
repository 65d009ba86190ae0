//! Vector, SU(2) and bispinor realizations of Lorentz transformations.
//!
//! Generator convention: for antisymmetric parameters ω_{μν} the vector
//! realization is Λ = exp(K) with K^μ_ν = −g^{μμ}ω_{μν}, and the bispinor
//! realization is S = exp((i/2) ω_{μν} Σ^{μν}). With these two maps the
//! covariance condition S⁻¹γ^μS = Λ^μ_ν γ^ν holds exactly.
//!
//! The boost Λ(v⃗) is passive: v⃗ is the velocity of the primed frame, so
//! Λ(v⃗)(m, 0⃗) = (γm, −γm v⃗). The standard boost L_p therefore equals
//! Λ(−p⃗/p⁰).

use nalgebra::Matrix4;

use crate::clifford::{gamma, gammas, pauli};
use crate::error::{Error, Result};
use crate::types::{check_mass, max_abs_diff, re, FourVector, LorentzMatrix, Mat2C, Mat4C, R3x3, Real3, I, METRIC};

/// A frame velocity with |v⃗| < 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostVelocity(Real3);

impl BoostVelocity {
    pub fn new(v: Real3) -> Result<Self> {
        let speed = v.norm();
        if speed < 1.0 && speed.is_finite() {
            Ok(Self(v))
        } else {
            Err(Error::Superluminal(speed))
        }
    }

    pub fn zero() -> Self {
        Self(Real3::zeros())
    }

    pub fn vector(&self) -> &Real3 {
        &self.0
    }

    pub fn speed(&self) -> f64 {
        self.0.norm()
    }

    /// γ = (1 − |v⃗|²)^{−1/2}
    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.0.norm_squared()).sqrt()
    }

    pub fn rapidity(&self) -> f64 {
        self.speed().atanh()
    }

    pub fn reversed(&self) -> Self {
        Self(-self.0)
    }
}

/// Antisymmetric Lorentz-group parameters ω_{μν} (lower indices).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    omega: [[f64; 4]; 4],
}

impl GeneratorParams {
    pub fn new(omega: [[f64; 4]; 4]) -> Result<Self> {
        let mut worst = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = worst.max((omega[mu][nu] + omega[nu][mu]).abs());
            }
        }
        if worst == 0.0 {
            Ok(Self { omega })
        } else {
            Err(Error::NotAntisymmetric(worst))
        }
    }

    pub fn zero() -> Self {
        Self { omega: [[0.0; 4]; 4] }
    }

    /// Parameters of the pure boost Λ(v⃗): ω_{0i} = η v̂_i with η the rapidity.
    pub fn boost(v: &BoostVelocity) -> Self {
        let mut omega = [[0.0; 4]; 4];
        let speed = v.speed();
        if speed > 0.0 {
            let eta = v.rapidity();
            for i in 0..3 {
                let w = eta * v.vector()[i] / speed;
                omega[0][i + 1] = w;
                omega[i + 1][0] = -w;
            }
        }
        Self { omega }
    }

    /// Parameters of the rotation by |θ⃗| about θ̂: ω_{ij} = −ε_{ijk} θ_k.
    pub fn rotation(axis_angle: &Real3) -> Self {
        let t = axis_angle;
        let mut omega = [[0.0; 4]; 4];
        omega[1][2] = -t.z;
        omega[2][1] = t.z;
        omega[2][3] = -t.x;
        omega[3][2] = t.x;
        omega[3][1] = -t.y;
        omega[1][3] = t.y;
        Self { omega }
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.omega[mu][nu]
    }

    /// K^μ_ν = −g^{μμ}ω_{μν}
    pub fn vector_generator(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|mu, nu| -METRIC[mu] * self.omega[mu][nu])
    }

    /// (i/2) ω_{μν} Σ^{μν}
    pub fn bispinor_generator(&self) -> Mat4C {
        let sigma = &gammas().sigma;
        let mut acc = Mat4C::zeros();
        for mu in 0..4 {
            for nu in 0..4 {
                if self.omega[mu][nu] != 0.0 {
                    acc += sigma[mu][nu] * re(self.omega[mu][nu]);
                }
            }
        }
        acc * (I * 0.5)
    }
}

/// Λ(v⃗) = [[γ, −γv⃗ᵀ], [−γv⃗, I + γ²/(1+γ) v⃗v⃗ᵀ]]
pub fn boost_from_velocity(v: &BoostVelocity) -> LorentzMatrix {
    let g = v.gamma();
    let vv = v.vector();
    let mut m = Matrix4::identity();
    m[(0, 0)] = g;
    for i in 0..3 {
        m[(0, i + 1)] = -g * vv[i];
        m[(i + 1, 0)] = -g * vv[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] += g * g / (1.0 + g) * vv[i] * vv[j];
        }
    }
    LorentzMatrix::new_unchecked(m)
}

/// L_p = [[p⁰/m, p⃗ᵀ/m], [p⃗/m, I + p⃗p⃗ᵀ/(m(m+p⁰))]], the pure boost with
/// L_p(m, 0⃗) = p.
pub fn standard_boost(p: &FourVector, m: f64) -> Result<LorentzMatrix> {
    check_mass(m)?;
    let p3 = p.spatial();
    let mut l = Matrix4::identity();
    l[(0, 0)] = p.t / m;
    for i in 0..3 {
        l[(0, i + 1)] = p3[i] / m;
        l[(i + 1, 0)] = p3[i] / m;
        for j in 0..3 {
            l[(i + 1, j + 1)] += p3[i] * p3[j] / (m * (m + p.t));
        }
    }
    Ok(LorentzMatrix::new_unchecked(l))
}

/// Wigner rotation L⁻¹_{Λp} Λ L_p evaluated from its definition, returned as
/// the spatial block and the full 4×4 product.
///
/// The full product loses about |L_{Λp}|·|Λ|·|L_p| ulps to cancellation. The
/// spatial block is instead built column by column: w_j = ΛL_p e_j is a unit
/// spacelike vector orthogonal to k = Λp, and for such vectors the spatial
/// part of L⁻¹_k w is w⃗ − k⃗w⁰/(k⁰ + m), which has no large cancellation.
pub fn wigner_numeric(l: &LorentzMatrix, p: &FourVector, m: f64) -> Result<(R3x3, LorentzMatrix)> {
    let lp = standard_boost(p, m)?;
    let k = l.apply(p);
    let lap = standard_boost(&k, m)?;
    let full = lap.inverse().compose(l).compose(&lp);
    let k3 = k.spatial();
    let mut r = R3x3::zeros();
    for j in 0..3 {
        let w = l.matrix() * lp.matrix().column(j + 1);
        let col = Real3::new(w[1], w[2], w[3]) - k3 * (w[0] / (k.t + m));
        r.set_column(j, &col);
    }
    Ok((r, full))
}

/// Closed-form Wigner rotation R(v⃗, p) for the pure boost Λ(v⃗), with
/// a = m + p⁰ and b = m + γ(p⁰ − v⃗·p⃗).
pub fn wigner_closed(v: &BoostVelocity, p: &FourVector, m: f64) -> Result<R3x3> {
    check_mass(m)?;
    let g = v.gamma();
    let vv = *v.vector();
    let p3 = p.spatial();
    let a = m + p.t;
    let b = m + g * (p.t - vv.dot(&p3));
    let vp = vv.dot(&p3);
    let r = R3x3::identity()
        + p3 * p3.transpose() * ((1.0 - g) / (a * b))
        + vv * vv.transpose() * (g * g * (m - p.t) / (b * (1.0 + g)))
        + p3 * vv.transpose() * (g / b)
        + vv * p3.transpose() * (g / b * (2.0 * g * vp / (a * (1.0 + g)) - 1.0));
    Ok(r)
}

pub(crate) fn check_rotation(r: &R3x3) -> Result<()> {
    let orth = (r.transpose() * r - R3x3::identity()).amax();
    let det = r.determinant();
    let residual = orth.max((det - 1.0).abs());
    if residual < 1e-10 {
        Ok(())
    } else {
        Err(Error::NotRotation(residual))
    }
}

/// Unit quaternion (w, x⃗) with w ≥ 0 representing the rotation `r`.
fn rotation_quaternion(r: &R3x3) -> (f64, Real3) {
    let tr = r.trace();
    let (w, x, y, z);
    if tr >= r[(0, 0)] && tr >= r[(1, 1)] && tr >= r[(2, 2)] {
        w = 0.5 * (1.0 + tr).max(0.0).sqrt();
        let s = 0.25 / w;
        x = (r[(2, 1)] - r[(1, 2)]) * s;
        y = (r[(0, 2)] - r[(2, 0)]) * s;
        z = (r[(1, 0)] - r[(0, 1)]) * s;
    } else if r[(0, 0)] >= r[(1, 1)] && r[(0, 0)] >= r[(2, 2)] {
        x = 0.5 * (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).max(0.0).sqrt();
        let s = 0.25 / x;
        w = (r[(2, 1)] - r[(1, 2)]) * s;
        y = (r[(0, 1)] + r[(1, 0)]) * s;
        z = (r[(0, 2)] + r[(2, 0)]) * s;
    } else if r[(1, 1)] >= r[(2, 2)] {
        y = 0.5 * (1.0 - r[(0, 0)] + r[(1, 1)] - r[(2, 2)]).max(0.0).sqrt();
        let s = 0.25 / y;
        w = (r[(0, 2)] - r[(2, 0)]) * s;
        x = (r[(0, 1)] + r[(1, 0)]) * s;
        z = (r[(1, 2)] + r[(2, 1)]) * s;
    } else {
        z = 0.5 * (1.0 - r[(0, 0)] - r[(1, 1)] + r[(2, 2)]).max(0.0).sqrt();
        let s = 0.25 / z;
        w = (r[(1, 0)] - r[(0, 1)]) * s;
        x = (r[(0, 2)] + r[(2, 0)]) * s;
        y = (r[(1, 2)] + r[(2, 1)]) * s;
    }
    let norm = (w * w + x * x + y * y + z * z).sqrt();
    let (mut w, mut v) = (w / norm, Real3::new(x, y, z) / norm);
    if w < 0.0 {
        w = -w;
        v = -v;
    }
    (w, v)
}

/// Rotation axis (unit vector, or zero for the identity) and angle in [0, π].
pub fn axis_angle(r: &R3x3) -> Result<(Real3, f64)> {
    check_rotation(r)?;
    let (w, v) = rotation_quaternion(r);
    let s = v.norm();
    let angle = 2.0 * s.atan2(w);
    if s == 0.0 {
        Ok((Real3::zeros(), 0.0))
    } else {
        Ok((v / s, angle))
    }
}

/// Rotation by |θ⃗| about θ̂ (Rodrigues).
pub fn rotation_matrix(axis_angle: &Real3) -> R3x3 {
    let angle = axis_angle.norm();
    if angle == 0.0 {
        return R3x3::identity();
    }
    let n = axis_angle / angle;
    let k = n.cross_matrix();
    R3x3::identity() + k * angle.sin() + k * k * (1.0 - angle.cos())
}

/// The SU(2) element 𝒟 with 𝒟(ξ⃗·σ⃗)𝒟† = (Rξ⃗)·σ⃗.
///
/// The sign is fixed by tr 𝒟 ≥ 0; for rotations by π (tr 𝒟 = 0) the first
/// non-negligible axis component is taken positive.
pub fn su2_from_so3(r: &R3x3) -> Result<Mat2C> {
    check_rotation(r)?;
    let (w, mut v) = rotation_quaternion(r);
    if w <= 1e-12 {
        if let Some(first) = v.iter().copied().find(|c| c.abs() > 1e-12) {
            if first < 0.0 {
                v = -v;
            }
        }
    }
    let mut d = pauli(0) * re(w);
    for k in 0..3 {
        d -= pauli(k + 1) * (I * v[k]);
    }
    Ok(d)
}

/// Largest entry of 𝒟(e⃗_k·σ⃗)𝒟† − (R e⃗_k)·σ⃗ over the three basis vectors.
pub fn adjoint_action_residual(d: &Mat2C, r: &R3x3) -> f64 {
    let mut worst = 0.0_f64;
    for k in 0..3 {
        let lhs = d * pauli(k + 1) * d.adjoint();
        let col = r.column(k);
        let rhs = (0..3).fold(Mat2C::zeros(), |acc, j| acc + pauli(j + 1) * re(col[j]));
        worst = worst.max(max_abs_diff(&lhs, &rhs));
    }
    worst
}

/// Λ = exp(K) with K^μ_ν = −g^{μμ}ω_{μν}.
pub fn lorentz_from_params(w: &GeneratorParams) -> LorentzMatrix {
    LorentzMatrix::new_unchecked(w.vector_generator().exp())
}

/// S = exp((i/2) ω_{μν} Σ^{μν}).
pub fn bispinor_from_params(w: &GeneratorParams) -> Mat4C {
    w.bispinor_generator().exp()
}

/// Polar decomposition L = Λ(v⃗)·Λ(R) of a proper orthochronous matrix, with
/// v_i = −L^i₀/L⁰₀.
pub fn polar_decomposition(l: &LorentzMatrix) -> Result<(BoostVelocity, R3x3)> {
    l.check_proper_orthochronous()?;
    let l00 = l.get(0, 0);
    let v = BoostVelocity::new(Real3::new(-l.get(1, 0) / l00, -l.get(2, 0) / l00, -l.get(3, 0) / l00))?;
    let rest = boost_from_velocity(&v.reversed()).compose(l);
    Ok((v, rest.spatial_block()))
}

/// Bispinor representation S(Λ) assembled as S(boost)·S(rotation) from the
/// polar decomposition. The identity maps to +I.
pub fn bispinor_rep(l: &LorentzMatrix) -> Result<Mat4C> {
    let (v, r) = polar_decomposition(l)?;
    let (axis, angle) = axis_angle(&r)?;
    let s_boost = bispinor_from_params(&GeneratorParams::boost(&v));
    let s_rot = bispinor_from_params(&GeneratorParams::rotation(&(axis * angle)));
    Ok(s_boost * s_rot)
}

/// max_μ |S⁻¹γ^μS − Λ^μ_ν γ^ν|
pub fn covariance_residual(s: &Mat4C, l: &LorentzMatrix) -> f64 {
    let Some(s_inv) = s.try_inverse() else {
        return f64::INFINITY;
    };
    let mut worst = 0.0_f64;
    for mu in 0..4 {
        let lhs = s_inv * gamma(mu) * s;
        let rhs = (0..4).fold(Mat4C::zeros(), |acc, nu| acc + gamma(nu) * re(l.get(mu, nu)));
        worst = worst.max(max_abs_diff(&lhs, &rhs));
    }
    worst
}

/// |S⁻¹ − γ⁰S†γ⁰|_max
pub fn inverse_relation_residual(s: &Mat4C) -> f64 {
    match s.try_inverse() {
        Some(s_inv) => max_abs_diff(&s_inv, &(gamma(0) * s.adjoint() * gamma(0))),
        None => f64::INFINITY,
    }
}

/// Promotes the rotation block to the SU(2) lift acting on both chiral halves.
pub fn bispinor_rotation(d: &Mat2C) -> Mat4C {
    let mut m = Mat4C::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(d);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

/// The rest-frame four-momentum q = (m, 0⃗).
pub fn rest_momentum(m: f64) -> FourVector {
    FourVector::new(m, 0.0, 0.0, 0.0)
}
