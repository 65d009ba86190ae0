//! Momentum-space profiles p⃗ ↦ ψ̃(p⃗) on one energy sector.
//!
//! Profiles are expression trees over an analytic Gaussian family. Values are
//! evaluated directly; derivatives come from [`Jet`] arithmetic so that
//! Newton-Wigner and momentum actions stay free of discretization error.

use std::fmt;
use std::sync::Arc;

use crate::amplitudes::amplitude;
use crate::clifford::pauli;
use crate::error::{Error, Result};
use crate::states::jet::Jet;
use crate::types::{energy, on_shell, re, Bispinor, EnergySign, LorentzMatrix, Mat2C, Mat4C, Real3, Spinor, C64, I};

/// The (mass, energy sign) pair a profile is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sector {
    pub mass: f64,
    pub sign: EnergySign,
}

impl Sector {
    pub fn new(mass: f64, sign: EnergySign) -> Self {
        Self { mass, sign }
    }

    fn eps(&self) -> f64 {
        self.sign.value()
    }
}

/// Rough location of a profile: it is negligible outside center ± 8·width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Support {
    pub center: Real3,
    pub width: f64,
}

impl Support {
    /// Smallest support of this form that contains every input.
    pub fn union(items: &[Support]) -> Option<Support> {
        let first = items.first()?;
        let mut lo = first.center;
        let mut hi = first.center;
        for s in items {
            lo = lo.inf(&s.center);
            hi = hi.sup(&s.center);
        }
        let center = (lo + hi) * 0.5;
        let width = items.iter().map(|s| s.width + (s.center - center).amax() / 8.0).fold(0.0, f64::max);
        Some(Support { center, width })
    }
}

/// ψ̃(p⃗) = A·√(2ω(p⃗))·exp(−|p⃗ − c⃗|²/(2w²) + i t⃗·p⃗)·χ
///
/// The √(2ω) factor cancels the invariant measure, so the norm is
/// |A|²|χ|²(πw²)^{3/2} in closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianProfile {
    pub center: Real3,
    pub width: f64,
    pub amplitude: C64,
    pub spinor: Spinor,
    pub tilt: Real3,
}

impl GaussianProfile {
    /// Unit-norm member of the family.
    pub fn normalized(center: Real3, width: f64, spinor: Spinor, tilt: Real3) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidArgument(format!("Gaussian width must be positive, got {width}")));
        }
        let norm = spinor.norm();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("Gaussian spinor must be nonzero".into()));
        }
        let amplitude = re((std::f64::consts::PI * width * width).powf(-0.75) / norm);
        Ok(Self { center, width, amplitude, spinor, tilt })
    }

    /// Closed-form ∫ d³p/(2ω) |ψ̃|².
    pub fn norm_squared(&self) -> f64 {
        self.amplitude.norm_sqr()
            * self.spinor.norm_squared()
            * (std::f64::consts::PI * self.width * self.width).powf(1.5)
    }

    fn scalar(&self, p: &Real3, m: f64) -> C64 {
        let d2 = (p - self.center).norm_squared();
        let arg = C64::new(-d2 / (2.0 * self.width * self.width), self.tilt.dot(p));
        self.amplitude * (2.0 * energy(m, p)).sqrt() * arg.exp()
    }

    fn scalar_jet(&self, coords: &[Jet; 3], m: f64) -> Jet {
        let order = coords[0].order();
        let mut arg = Jet::zero(order);
        let mut omega2 = Jet::constant(order, re(m * m));
        for k in 0..3 {
            let d = &coords[k] - &Jet::constant(order, re(self.center[k]));
            arg = &arg + &(&d * &d).scale(re(-0.5 / (self.width * self.width)));
            arg = &arg + &coords[k].scale(I * self.tilt[k]);
            omega2 = &omega2 + &(&coords[k] * &coords[k]);
        }
        (&arg.exp() * &omega2.scale(re(4.0)).powf(0.25)).scale(self.amplitude)
    }
}

type CustomFn = dyn Fn(&Real3, Sector) -> Spinor + Send + Sync;
type CustomCovFn = dyn Fn(&Real3, Sector) -> Bispinor + Send + Sync;

/// A user-supplied profile with a declared support. Not differentiable.
#[derive(Clone)]
pub struct CustomProfile {
    pub func: Arc<CustomFn>,
    pub support: Support,
}

impl fmt::Debug for CustomProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomProfile").field("support", &self.support).finish_non_exhaustive()
    }
}

/// Precomputed data for the spin-basis image of a Lorentz transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzAction {
    pub lambda: LorentzMatrix,
    pub inverse: LorentzMatrix,
    /// Upper chiral block of S(Λ); S(Λ) is block diagonal in this representation.
    pub chiral_block: Mat2C,
}

impl LorentzAction {
    pub fn new(l: &LorentzMatrix) -> Result<Self> {
        let s = crate::lorentz::bispinor_rep(l)?;
        Ok(Self { lambda: *l, inverse: l.inverse(), chiral_block: s.fixed_view::<2, 2>(0, 0).into_owned() })
    }

    /// Upper chiral block of S(L_p): (p⁰ + m + p⃗·σ⃗)/√(2m(p⁰ + m)).
    fn boost_block(p: &Real3, m: f64, inverse: bool) -> Mat2C {
        let p0 = energy(m, p);
        let sign = if inverse { -1.0 } else { 1.0 };
        let ps = pauli(1) * re(p.x) + pauli(2) * re(p.y) + pauli(3) * re(p.z);
        (pauli(0) * re(p0 + m) + ps * re(sign)) / re((2.0 * m * (p0 + m)).sqrt())
    }

    /// Source momentum Λ⁻¹p′ and the SU(2) matrix 𝒟(R(Λ, Λ⁻¹p′)).
    pub fn wigner_lift(&self, p_prime: &Real3, m: f64) -> Result<(Real3, Mat2C)> {
        let source = self.inverse.apply(&on_shell(m, p_prime)?).spatial();
        let d = Self::boost_block(p_prime, m, true) * self.chiral_block * Self::boost_block(&source, m, false);
        Ok((source, d))
    }
}

/// Spin-basis profile expression.
#[derive(Clone, Debug)]
pub enum Profile {
    Gaussian(GaussianProfile),
    Sum(Vec<Arc<Profile>>),
    /// p⃗ ↦ N(p⃗, εa⃗)·base(p⃗ + εa⃗) with N = (ω(p⃗)/ω(p⃗ + εa⃗))^{1/2}
    Shifted {
        base: Arc<Profile>,
        shift: Real3,
    },
    /// p⃗ ↦ M·base(p⃗)
    Matrix {
        base: Arc<Profile>,
        matrix: Mat2C,
    },
    /// p⃗ ↦ iε(∂_axis − p_axis/(2ω²))base(p⃗), axis in 1..=3
    NewtonWigner {
        base: Arc<Profile>,
        axis: usize,
    },
    /// Same with a central difference of the given step.
    NewtonWignerFd {
        base: Arc<Profile>,
        axis: usize,
        step: f64,
    },
    /// p⃗ ↦ εp_axis·base(p⃗), axis in 1..=3
    Momentum {
        base: Arc<Profile>,
        axis: usize,
    },
    /// p⃗′ ↦ 𝒟*(R(Λ, p))·base(p⃗) with p = Λ⁻¹p′
    Lorentz {
        base: Arc<Profile>,
        action: Arc<LorentzAction>,
    },
    /// p⃗ ↦ ε v̄^ε(p) ψ^ε(p)
    FromCovariant(Arc<CovProfile>),
    Custom(CustomProfile),
}

fn check_axis(axis: usize) -> Result<()> {
    if (1..=3).contains(&axis) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("spatial index {axis} out of range 1..=3")))
    }
}

fn coordinate_jets(p: &Real3, order: usize) -> [Jet; 3] {
    [Jet::variable(order, p.x, 0), Jet::variable(order, p.y, 1), Jet::variable(order, p.z, 2)]
}

fn omega_squared_jet(coords: &[Jet; 3], m: f64) -> Jet {
    let order = coords[0].order();
    coords.iter().fold(Jet::constant(order, re(m * m)), |acc, c| &acc + &(c * c))
}

fn unit(axis: usize) -> Real3 {
    let mut e = Real3::zeros();
    e[axis - 1] = 1.0;
    e
}

impl Profile {
    pub fn gaussian(g: GaussianProfile) -> Arc<Self> {
        Arc::new(Self::Gaussian(g))
    }

    /// Shift that merges nested shifts, so composition is exact.
    pub fn shifted(base: &Arc<Profile>, shift: Real3) -> Arc<Self> {
        match base.as_ref() {
            Profile::Shifted { base: inner, shift: s } => {
                Arc::new(Profile::Shifted { base: inner.clone(), shift: s + shift })
            }
            _ => Arc::new(Profile::Shifted { base: base.clone(), shift }),
        }
    }

    pub fn value(&self, p: &Real3, sector: Sector) -> Result<Spinor> {
        let eps = sector.eps();
        let m = sector.mass;
        Ok(match self {
            Profile::Gaussian(g) => g.spinor * g.scalar(p, m),
            Profile::Sum(items) => {
                let mut acc = Spinor::zeros();
                for item in items {
                    acc += item.value(p, sector)?;
                }
                acc
            }
            Profile::Shifted { base, shift } => {
                let q = p + shift * eps;
                base.value(&q, sector)? * re((energy(m, p) / energy(m, &q)).sqrt())
            }
            Profile::Matrix { base, matrix } => matrix * base.value(p, sector)?,
            Profile::NewtonWigner { .. } => {
                let jets = self.jet(p, 0, sector)?;
                Spinor::new(jets[0].value(), jets[1].value())
            }
            Profile::NewtonWignerFd { base, axis, step } => {
                check_axis(*axis)?;
                let e = unit(*axis) * *step;
                let diff = (base.value(&(p + e), sector)? - base.value(&(p - e), sector)?) / re(2.0 * step);
                let w2 = m * m + p.norm_squared();
                (diff - base.value(p, sector)? * re(p[axis - 1] / (2.0 * w2))) * (I * eps)
            }
            Profile::Momentum { base, axis } => {
                check_axis(*axis)?;
                base.value(p, sector)? * re(eps * p[axis - 1])
            }
            Profile::Lorentz { base, action } => {
                let (source, d) = action.wigner_lift(p, m)?;
                d.conjugate() * base.value(&source, sector)?
            }
            Profile::FromCovariant(cov) => {
                let v = amplitude(sector.sign, &on_shell(m, p)?, m)?;
                v.bar() * cov.value(p, sector)? * re(eps)
            }
            Profile::Custom(c) => (c.func)(p, sector),
        })
    }

    /// Taylor jets of both spinor components at `p` up to total degree `order`.
    pub fn jet(&self, p: &Real3, order: usize, sector: Sector) -> Result<[Jet; 2]> {
        let eps = sector.eps();
        let m = sector.mass;
        match self {
            Profile::Gaussian(g) => {
                let s = g.scalar_jet(&coordinate_jets(p, order), m);
                Ok([s.scale(g.spinor[0]), s.scale(g.spinor[1])])
            }
            Profile::Sum(items) => {
                let mut acc = [Jet::zero(order), Jet::zero(order)];
                for item in items {
                    let j = item.jet(p, order, sector)?;
                    acc = [&acc[0] + &j[0], &acc[1] + &j[1]];
                }
                Ok(acc)
            }
            Profile::Shifted { base, shift } => {
                let q = p + shift * eps;
                let inner = base.jet(&q, order, sector)?;
                let num = omega_squared_jet(&coordinate_jets(p, order), m).powf(0.25);
                let den = omega_squared_jet(&coordinate_jets(&q, order), m).powf(-0.25);
                let n = &num * &den;
                Ok([&inner[0] * &n, &inner[1] * &n])
            }
            Profile::Matrix { base, matrix } => {
                let j = base.jet(p, order, sector)?;
                let row = |r: usize| &j[0].scale(matrix[(r, 0)]) + &j[1].scale(matrix[(r, 1)]);
                Ok([row(0), row(1)])
            }
            Profile::NewtonWigner { base, axis } => {
                check_axis(*axis)?;
                let j = base.jet(p, order + 1, sector)?;
                let coords = coordinate_jets(p, order);
                let factor = &coords[axis - 1] * &omega_squared_jet(&coords, m).powf(-1.0).scale(re(0.5));
                let comp = |k: usize| (&j[k].derivative(axis - 1) - &(&factor * &j[k].truncate(order))).scale(I * eps);
                Ok([comp(0), comp(1)])
            }
            Profile::NewtonWignerFd { base, axis, step } => {
                check_axis(*axis)?;
                let e = unit(*axis) * *step;
                let plus = base.jet(&(p + e), order, sector)?;
                let minus = base.jet(&(p - e), order, sector)?;
                let center = base.jet(p, order, sector)?;
                let coords = coordinate_jets(p, order);
                let factor = &coords[axis - 1] * &omega_squared_jet(&coords, m).powf(-1.0).scale(re(0.5));
                let comp = |k: usize| {
                    let diff = (&plus[k] - &minus[k]).scale(re(0.5 / step));
                    (&diff - &(&factor * &center[k])).scale(I * eps)
                };
                Ok([comp(0), comp(1)])
            }
            Profile::Momentum { base, axis } => {
                check_axis(*axis)?;
                let j = base.jet(p, order, sector)?;
                let c = coordinate_jets(p, order)[axis - 1].scale(re(eps));
                Ok([&j[0] * &c, &j[1] * &c])
            }
            Profile::Lorentz { .. } | Profile::FromCovariant(_) | Profile::Custom(_) => {
                if order > 0 {
                    return Err(Error::NotDifferentiable);
                }
                let v = self.value(p, sector)?;
                Ok([Jet::constant(0, v[0]), Jet::constant(0, v[1])])
            }
        }
    }

    /// Whether jets of positive order are available.
    pub fn is_differentiable(&self) -> bool {
        match self {
            Profile::Gaussian(_) => true,
            Profile::Sum(items) => items.iter().all(|i| i.is_differentiable()),
            Profile::Shifted { base, .. }
            | Profile::Matrix { base, .. }
            | Profile::NewtonWigner { base, .. }
            | Profile::NewtonWignerFd { base, .. }
            | Profile::Momentum { base, .. } => base.is_differentiable(),
            Profile::Lorentz { .. } | Profile::FromCovariant(_) | Profile::Custom(_) => false,
        }
    }

    pub fn support(&self, sign: EnergySign) -> Support {
        match self {
            Profile::Gaussian(g) => Support { center: g.center, width: g.width },
            Profile::Sum(items) => {
                let all: Vec<_> = items.iter().map(|i| i.support(sign)).collect();
                Support::union(&all).unwrap_or(Support { center: Real3::zeros(), width: 1.0 })
            }
            Profile::Shifted { base, shift } => {
                let s = base.support(sign);
                Support { center: s.center - shift * sign.value(), width: s.width }
            }
            Profile::Matrix { base, .. }
            | Profile::NewtonWigner { base, .. }
            | Profile::NewtonWignerFd { base, .. }
            | Profile::Momentum { base, .. } => base.support(sign),
            Profile::Lorentz { base, action } => boosted_support(base.support(sign), &action.lambda),
            Profile::FromCovariant(cov) => cov.support(sign),
            Profile::Custom(c) => c.support,
        }
    }
}

/// Support of p′ = Λp for p in the given support: the center is mapped with
/// the on-shell vector at unit mass and the width grows by the largest
/// stretch factor Λ⁰₀ + √((Λ⁰₀)² − 1).
fn boosted_support(s: Support, l: &LorentzMatrix) -> Support {
    let c = energy(1.0, &s.center);
    let center = l.apply(&crate::types::FourVector::from_parts(c, &s.center)).spatial();
    let g = l.get(0, 0);
    Support { center, width: s.width * (g + (g * g - 1.0).max(0.0).sqrt()) }
}

/// Covariant-basis profile expression.
// Always held behind an Arc, so the inline matrices cost nothing per clone.
#[allow(clippy::large_enum_variant)]
#[derive(Clone)]
pub enum CovProfile {
    /// ψ^ε(p) = v^ε(p)ψ̃^ε(p⃗)
    FromSpin(Arc<Profile>),
    /// ψ′(p′) = S(Λ)ψ(Λ⁻¹p′)
    Lorentz {
        base: Arc<CovProfile>,
        s: Mat4C,
        inverse: LorentzMatrix,
        lambda: LorentzMatrix,
    },
    Custom {
        func: Arc<CustomCovFn>,
        support: Support,
    },
}

impl fmt::Debug for CovProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CovProfile::FromSpin(p) => f.debug_tuple("FromSpin").field(p).finish(),
            CovProfile::Lorentz { base, lambda, .. } => {
                f.debug_struct("Lorentz").field("base", base).field("lambda", lambda).finish_non_exhaustive()
            }
            CovProfile::Custom { support, .. } => {
                f.debug_struct("Custom").field("support", support).finish_non_exhaustive()
            }
        }
    }
}

impl CovProfile {
    pub fn value(&self, p: &Real3, sector: Sector) -> Result<Bispinor> {
        let m = sector.mass;
        match self {
            CovProfile::FromSpin(spin) => {
                let v = amplitude(sector.sign, &on_shell(m, p)?, m)?;
                Ok(v.matrix * spin.value(p, sector)?)
            }
            CovProfile::Lorentz { base, s, inverse, .. } => {
                let source = inverse.apply(&on_shell(m, p)?).spatial();
                Ok(s * base.value(&source, sector)?)
            }
            CovProfile::Custom { func, .. } => Ok(func(p, sector)),
        }
    }

    pub fn support(&self, sign: EnergySign) -> Support {
        match self {
            CovProfile::FromSpin(spin) => spin.support(sign),
            CovProfile::Lorentz { base, lambda, .. } => boosted_support(base.support(sign), lambda),
            CovProfile::Custom { support, .. } => *support,
        }
    }
}
