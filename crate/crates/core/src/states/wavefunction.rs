//! Momentum-space wavefunctions in the spin and covariant bases.
//!
//! Each energy sector holds an optional profile. Wavefunctions are bra
//! components ψ̃^ε_σ(p) = ⟨ψ|εp, σ⟩ (conjugate-linear in the state); the
//! profiles store ψ̃ itself and operator ket matrices act on them directly.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::gamma;
use crate::error::{Error, Result};
use crate::lorentz::bispinor_rep;
use crate::spin::spin_spin_basis;
use crate::states::profile::{CovProfile, GaussianProfile, LorentzAction, Profile, Sector, Support};
use crate::types::{check_mass, energy, re, Bispinor, EnergySign, LorentzMatrix, Mat2C, Real3, Spinor, C64, ZERO};

/// Default half-extent of momentum grids, in profile widths.
pub const GRID_WIDTHS: f64 = 8.0;
/// Default number of points per axis.
pub const GRID_POINTS: usize = 64;

/// Uniform grid on the cube center ± half_extent with n points per axis,
/// endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumGrid {
    pub center: Real3,
    pub half_extent: f64,
    pub n: usize,
}

impl MomentumGrid {
    pub fn new(center: Real3, half_extent: f64, n: usize) -> Result<Self> {
        if n < 2 || !(half_extent > 0.0 && half_extent.is_finite()) {
            return Err(Error::InvalidArgument(format!("invalid grid: half extent {half_extent}, {n} points")));
        }
        Ok(Self { center, half_extent, n })
    }

    /// Grid covering GRID_WIDTHS widths with GRID_POINTS points per axis.
    pub fn for_support(s: &Support) -> Self {
        Self { center: s.center, half_extent: GRID_WIDTHS * s.width, n: GRID_POINTS }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_extent / (self.n - 1) as f64
    }

    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        self.center[axis] - self.half_extent + i as f64 * self.spacing()
    }

    /// Trapezoid weight of index i along one axis.
    pub fn weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 || i == self.n - 1 {
            0.5 * h
        } else {
            h
        }
    }

    /// Whether center ± GRID_WIDTHS·width lies inside the grid.
    pub fn covers(&self, s: &Support) -> bool {
        let reach = (s.center - self.center).amax() + GRID_WIDTHS * s.width;
        reach <= self.half_extent * (1.0 + 1e-12)
    }

    /// Tensor trapezoid rule for f over the cube. Slabs of constant first
    /// coordinate run in parallel; partial sums are combined in order.
    pub fn integrate<F>(&self, f: F) -> Result<C64>
    where
        F: Fn(&Real3) -> Result<C64> + Sync,
    {
        let slabs: Vec<Result<C64>> = (0..self.n)
            .into_par_iter()
            .map(|i| {
                let mut acc = CompensatedSum::default();
                let x = self.coordinate(0, i);
                for j in 0..self.n {
                    let y = self.coordinate(1, j);
                    let wy = self.weight(j);
                    for k in 0..self.n {
                        let p = Real3::new(x, y, self.coordinate(2, k));
                        acc.add(f(&p)? * (wy * self.weight(k)));
                    }
                }
                Ok(acc.total() * self.weight(i))
            })
            .collect();
        let mut total = CompensatedSum::default();
        for s in slabs {
            total.add(s?);
        }
        Ok(total.total())
    }
}

/// Neumaier compensated summation of complex values.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: C64,
    comp: C64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: C64) {
        let (re, cr) = neumaier(self.sum.re, self.comp.re, x.re);
        let (im, ci) = neumaier(self.sum.im, self.comp.im, x.im);
        self.sum = C64::new(re, im);
        self.comp = C64::new(cr, ci);
    }

    pub fn total(&self) -> C64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    (t, comp + c)
}

/// Spin-basis wavefunction: one optional profile per energy sector.
#[derive(Clone, Debug)]
pub struct MomentumWaveFunction {
    pub mass: f64,
    sectors: [Option<Arc<Profile>>; 2],
    pub grid: Option<MomentumGrid>,
}

/// Covariant-basis wavefunction ψ^ε_α(p).
#[derive(Clone, Debug)]
pub struct CovariantWaveFunction {
    pub mass: f64,
    sectors: [Option<Arc<CovProfile>>; 2],
    pub grid: Option<MomentumGrid>,
}

fn sector_support<T>(sectors: &[Option<T>; 2], f: impl Fn(&T, EnergySign) -> Support) -> Support {
    let items: Vec<_> = EnergySign::ALL.iter().filter_map(|&e| sectors[e.index()].as_ref().map(|p| f(p, e))).collect();
    Support::union(&items).unwrap_or(Support { center: Real3::zeros(), width: 1.0 })
}

impl MomentumWaveFunction {
    pub fn new(mass: f64) -> Result<Self> {
        check_mass(mass)?;
        Ok(Self { mass, sectors: [None, None], grid: None })
    }

    /// Single-sector normalized Gaussian.
    pub fn gaussian(mass: f64, sign: EnergySign, g: GaussianProfile) -> Result<Self> {
        Ok(Self::new(mass)?.with_sector(sign, Profile::gaussian(g)))
    }

    pub fn with_sector(mut self, sign: EnergySign, profile: Arc<Profile>) -> Self {
        self.sectors[sign.index()] = Some(profile);
        self
    }

    pub fn with_grid(mut self, grid: MomentumGrid) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn sector(&self, sign: EnergySign) -> Option<&Arc<Profile>> {
        self.sectors[sign.index()].as_ref()
    }

    pub fn value(&self, sign: EnergySign, p: &Real3) -> Result<Spinor> {
        match self.sector(sign) {
            Some(prof) => prof.value(p, Sector::new(self.mass, sign)),
            None => Ok(Spinor::zeros()),
        }
    }

    pub fn support(&self) -> Support {
        sector_support(&self.sectors, |p, e| p.support(e))
    }

    /// Applies `f` to every populated sector.
    pub fn map_sectors(&self, f: impl Fn(&Arc<Profile>, EnergySign) -> Arc<Profile>) -> Self {
        let mut out = self.clone();
        for e in EnergySign::ALL {
            out.sectors[e.index()] = self.sector(e).map(|p| f(p, e));
        }
        out
    }
}

impl CovariantWaveFunction {
    pub fn new(mass: f64) -> Result<Self> {
        check_mass(mass)?;
        Ok(Self { mass, sectors: [None, None], grid: None })
    }

    pub fn with_sector(mut self, sign: EnergySign, profile: Arc<CovProfile>) -> Self {
        self.sectors[sign.index()] = Some(profile);
        self
    }

    pub fn with_grid(mut self, grid: MomentumGrid) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn sector(&self, sign: EnergySign) -> Option<&Arc<CovProfile>> {
        self.sectors[sign.index()].as_ref()
    }

    pub fn value(&self, sign: EnergySign, p: &Real3) -> Result<Bispinor> {
        match self.sector(sign) {
            Some(prof) => prof.value(p, Sector::new(self.mass, sign)),
            None => Ok(Bispinor::zeros()),
        }
    }

    pub fn support(&self) -> Support {
        sector_support(&self.sectors, |p, e| p.support(e))
    }

    /// Largest |Λ_{−ε}(p)ψ^ε(p)| over the given momenta.
    pub fn dirac_residual(&self, points: &[Real3]) -> Result<f64> {
        let mut worst = 0.0_f64;
        for e in EnergySign::ALL {
            for p in points {
                let p4 = crate::types::on_shell(self.mass, p)?;
                let proj = crate::clifford::projector(e.flip(), &p4, self.mass)?;
                worst = worst.max(crate::types::max_abs(&(proj * self.value(e, p)?)));
            }
        }
        Ok(worst)
    }
}

/// ψ^ε_α(p) = Σ_σ v^ε_{ασ}(p) ψ̃^ε_σ(p)
pub fn to_covariant(w: &MomentumWaveFunction) -> CovariantWaveFunction {
    let mut out = CovariantWaveFunction { mass: w.mass, sectors: [None, None], grid: w.grid };
    for e in EnergySign::ALL {
        out.sectors[e.index()] = w.sector(e).map(|p| Arc::new(CovProfile::FromSpin(p.clone())));
    }
    out
}

/// ψ̃^ε(p) = ε v̄^ε(p) ψ^ε(p)
pub fn to_spin(w: &CovariantWaveFunction) -> MomentumWaveFunction {
    let mut out = MomentumWaveFunction { mass: w.mass, sectors: [None, None], grid: w.grid };
    for e in EnergySign::ALL {
        out.sectors[e.index()] = w.sector(e).map(|p| match p.as_ref() {
            CovProfile::FromSpin(spin) => spin.clone(),
            _ => Arc::new(Profile::FromCovariant(p.clone())),
        });
    }
    out
}

fn resolve_grid(
    mass_a: f64,
    mass_b: f64,
    grid_a: Option<MomentumGrid>,
    grid_b: Option<MomentumGrid>,
    support: impl FnOnce() -> Support,
) -> Result<MomentumGrid> {
    if mass_a != mass_b {
        return Err(Error::IncompatibleDiscretization(format!("masses differ: {mass_a} vs {mass_b}")));
    }
    match (grid_a, grid_b) {
        (Some(a), Some(b)) if a != b => Err(Error::IncompatibleDiscretization(format!("grids differ: {a:?} vs {b:?}"))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(MomentumGrid::for_support(&support())),
    }
}

/// Σ_ε ∫ d³p/(2ω) ψ̃^ε(p)†φ̃^ε(p) on the shared grid (or a default one
/// covering both supports).
pub fn scalar_product(a: &MomentumWaveFunction, b: &MomentumWaveFunction) -> Result<C64> {
    let grid = resolve_grid(a.mass, b.mass, a.grid, b.grid, || {
        Support::union(&[a.support(), b.support()]).expect("two supports")
    })?;
    scalar_product_on(a, b, &grid)
}

pub fn scalar_product_on(a: &MomentumWaveFunction, b: &MomentumWaveFunction, grid: &MomentumGrid) -> Result<C64> {
    let m = a.mass;
    let signs: Vec<_> =
        EnergySign::ALL.into_iter().filter(|&e| a.sector(e).is_some() && b.sector(e).is_some()).collect();
    if signs.is_empty() {
        return Ok(ZERO);
    }
    grid.integrate(|p| {
        let mut acc = ZERO;
        for &e in &signs {
            acc += a.value(e, p)?.dotc(&b.value(e, p)?);
        }
        Ok(acc / (2.0 * energy(m, p)))
    })
}

/// Σ_ε ∫ d³p/(2ω) ε ψ̄^ε(p)φ^ε(p)
pub fn covariant_scalar_product(a: &CovariantWaveFunction, b: &CovariantWaveFunction) -> Result<C64> {
    let grid = resolve_grid(a.mass, b.mass, a.grid, b.grid, || {
        Support::union(&[a.support(), b.support()]).expect("two supports")
    })?;
    covariant_scalar_product_on(a, b, &grid)
}

pub fn covariant_scalar_product_on(
    a: &CovariantWaveFunction,
    b: &CovariantWaveFunction,
    grid: &MomentumGrid,
) -> Result<C64> {
    let m = a.mass;
    let g0 = gamma(0);
    let signs: Vec<_> =
        EnergySign::ALL.into_iter().filter(|&e| a.sector(e).is_some() && b.sector(e).is_some()).collect();
    if signs.is_empty() {
        return Ok(ZERO);
    }
    grid.integrate(|p| {
        let mut acc = ZERO;
        for &e in &signs {
            let bar = a.value(e, p)?.adjoint() * g0;
            acc += (bar * b.value(e, p)?)[(0, 0)] * e.value();
        }
        Ok(acc / (2.0 * energy(m, p)))
    })
}

/// Spin-basis image of a Lorentz transformation:
/// ψ̃′^ε(p′) = 𝒟*(R(Λ, p))ψ̃^ε(p) with p = Λ⁻¹p′.
pub fn lorentz_transform(w: &MomentumWaveFunction, l: &LorentzMatrix) -> Result<MomentumWaveFunction> {
    let action = Arc::new(LorentzAction::new(l)?);
    let mut out = w.map_sectors(|p, _| Arc::new(Profile::Lorentz { base: p.clone(), action: action.clone() }));
    out.grid = None;
    Ok(out)
}

/// ψ′^ε(p′) = S(Λ)ψ^ε(Λ⁻¹p′)
pub fn lorentz_transform_covariant(w: &CovariantWaveFunction, l: &LorentzMatrix) -> Result<CovariantWaveFunction> {
    let s = bispinor_rep(l)?;
    let mut out = w.clone();
    for e in EnergySign::ALL {
        out.sectors[e.index()] =
            w.sector(e).map(|p| Arc::new(CovProfile::Lorentz { base: p.clone(), s, inverse: l.inverse(), lambda: *l }));
    }
    out.grid = None;
    Ok(out)
}

/// Newton-Wigner translation: p⃗ ↦ N(p⃗, εa⃗)ψ̃^ε(p⃗ + εa⃗). Nested shifts merge,
/// so shift(a)∘shift(b) = shift(a + b) exactly. Equals exp(−i a⃗·X̂).
pub fn nw_shift(a: &Real3, w: &MomentumWaveFunction) -> MomentumWaveFunction {
    let mut out = w.map_sectors(|p, _| Profile::shifted(p, *a));
    let populated: Vec<_> = EnergySign::ALL.into_iter().filter(|&e| w.sector(e).is_some()).collect();
    out.grid = match (w.grid, populated.as_slice()) {
        // the profile moves by −εa⃗; with both sectors present the default grid covers both
        (Some(g), [e]) => Some(MomentumGrid { center: g.center - a * e.value(), ..g }),
        _ => None,
    };
    out
}

/// X̂^i ψ̃ = iε(∂_i − p_i/(2ω²))ψ̃ with exact derivatives.
pub fn nw_apply(w: &MomentumWaveFunction, i: usize) -> Result<MomentumWaveFunction> {
    check_index(i)?;
    for e in EnergySign::ALL {
        if let Some(p) = w.sector(e) {
            if !p.is_differentiable() {
                return Err(Error::NotDifferentiable);
            }
        }
    }
    Ok(w.map_sectors(|p, _| Arc::new(Profile::NewtonWigner { base: p.clone(), axis: i })))
}

/// X̂^i with a central difference of step h in place of ∂_i.
pub fn nw_apply_fd(w: &MomentumWaveFunction, i: usize, h: f64) -> Result<MomentumWaveFunction> {
    check_index(i)?;
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(format!("difference step must be positive, got {h}")));
    }
    Ok(w.map_sectors(|p, _| Arc::new(Profile::NewtonWignerFd { base: p.clone(), axis: i, step: h })))
}

/// P̂^j ψ̃^ε = εp^j ψ̃^ε
pub fn momentum_apply(w: &MomentumWaveFunction, j: usize) -> Result<MomentumWaveFunction> {
    check_index(j)?;
    Ok(w.map_sectors(|p, _| Arc::new(Profile::Momentum { base: p.clone(), axis: j })))
}

/// Ŝ^i ψ̃ = (σᵢᵀ/2)ψ̃
pub fn spin_apply(w: &MomentumWaveFunction, i: usize) -> Result<MomentumWaveFunction> {
    check_index(i)?;
    Ok(matrix_apply(w, &spin_spin_basis(i)))
}

pub fn matrix_apply(w: &MomentumWaveFunction, m: &Mat2C) -> MomentumWaveFunction {
    w.map_sectors(|p, _| Arc::new(Profile::Matrix { base: p.clone(), matrix: *m }))
}

fn check_index(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("spatial index {i} out of range 1..=3")))
    }
}

/// Difference of two wavefunctions at one momentum, both sectors.
pub fn pointwise_difference(a: &MomentumWaveFunction, b: &MomentumWaveFunction, p: &Real3) -> Result<f64> {
    let mut worst = 0.0_f64;
    for e in EnergySign::ALL {
        worst = worst.max((a.value(e, p)? - b.value(e, p)?).camax());
    }
    Ok(worst)
}

/// Structured description of a Gaussian profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Gaussian {
        center: [f64; 3],
        width: f64,
        /// Two complex components as [re, im] pairs.
        #[serde(default = "default_spinor")]
        spinor: [[f64; 2]; 2],
        #[serde(default)]
        tilt: [f64; 3],
    },
}

fn default_spinor() -> [[f64; 2]; 2] {
    [[1.0, 0.0], [0.0, 0.0]]
}

impl ProfileSpec {
    pub fn build(&self) -> Result<Arc<Profile>> {
        match self {
            ProfileSpec::Gaussian { center, width, spinor, tilt } => {
                let chi = Spinor::new(C64::new(spinor[0][0], spinor[0][1]), C64::new(spinor[1][0], spinor[1][1]));
                let g = GaussianProfile::normalized(Real3::from(*center), *width, chi, Real3::from(*tilt))?;
                Ok(Profile::gaussian(g))
            }
        }
    }
}

/// One energy sector of a [`WavefunctionSpec`]; entries sharing a sign add up.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorSpec {
    pub sign: i32,
    #[serde(default = "one")]
    pub weight: f64,
    pub profile: ProfileSpec,
}

fn one() -> f64 {
    1.0
}

/// Wavefunction description ingestible from configuration files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavefunctionSpec {
    pub mass: f64,
    pub sectors: Vec<SectorSpec>,
}

impl WavefunctionSpec {
    pub fn build(&self) -> Result<MomentumWaveFunction> {
        let mut w = MomentumWaveFunction::new(self.mass)?;
        if self.sectors.is_empty() {
            return Err(Error::InvalidArgument("wavefunction needs at least one sector".into()));
        }
        for e in EnergySign::ALL {
            let mut parts = Vec::new();
            for s in &self.sectors {
                if EnergySign::from_i32(s.sign)? == e {
                    let base = s.profile.build()?;
                    parts.push(if s.weight == 1.0 {
                        base
                    } else {
                        Arc::new(Profile::Matrix { base, matrix: Mat2C::identity() * re(s.weight) })
                    });
                }
            }
            match parts.len() {
                0 => {}
                1 => w = w.with_sector(e, parts.pop().expect("one part")),
                _ => w = w.with_sector(e, Arc::new(Profile::Sum(parts))),
            }
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitudes::amplitude;
    use crate::types::{on_shell, ONE};

    fn gauss(center: Real3, width: f64, chi: Spinor) -> GaussianProfile {
        GaussianProfile::normalized(center, width, chi, Real3::zeros()).unwrap()
    }

    #[test]
    fn normalized_gaussian_has_unit_norm() {
        let g = gauss(Real3::new(0.5, -0.2, 0.1), 0.7, Spinor::new(ONE, C64::new(0.0, 2.0)));
        assert!((g.norm_squared() - 1.0).abs() < 1e-14);
        let w = MomentumWaveFunction::gaussian(1.0, EnergySign::Positive, g).unwrap();
        let n = scalar_product(&w, &w).unwrap();
        assert!((n.re - 1.0).abs() < 1e-8 && n.im.abs() < 1e-12);
    }

    #[test]
    fn separable_oracle_agrees() {
        // Π_k Σ_i h e^{−(p_i − c_k)²/w²} on the default grid
        let (c, w) = (Real3::new(0.3, 0.0, -0.4), 0.6);
        let grid = MomentumGrid::for_support(&Support { center: c, width: w });
        let mut prod = 1.0;
        for k in 0..3 {
            let s: f64 =
                (0..grid.n).map(|i| grid.weight(i) * (-(grid.coordinate(k, i) - c[k]).powi(2) / (w * w)).exp()).sum();
            prod *= s;
        }
        let closed = (std::f64::consts::PI * w * w).powf(1.5);
        assert!((prod / closed - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_spinors() {
        let c = Real3::zeros();
        let a =
            MomentumWaveFunction::gaussian(1.0, EnergySign::Positive, gauss(c, 1.0, Spinor::new(ONE, ZERO))).unwrap();
        let b =
            MomentumWaveFunction::gaussian(1.0, EnergySign::Positive, gauss(c, 1.0, Spinor::new(ZERO, ONE))).unwrap();
        assert!(scalar_product(&a, &b).unwrap().norm() < 1e-15);
    }

    #[test]
    fn covariant_roundtrip_and_dirac_equation() {
        let g = gauss(Real3::new(0.5, 1.0, 0.0), 0.8, Spinor::new(ONE, C64::new(0.2, 0.3)));
        let w = MomentumWaveFunction::new(1.5)
            .unwrap()
            .with_sector(EnergySign::Positive, Profile::gaussian(g.clone()))
            .with_sector(EnergySign::Negative, Profile::shifted(&Profile::gaussian(g), Real3::new(0.1, 0.0, 0.2)));
        let cov = to_covariant(&w);
        let pts = [Real3::new(0.1, 0.2, 0.3), Real3::new(-1.0, 2.0, 0.5), Real3::zeros()];
        assert!(cov.dirac_residual(&pts).unwrap() < 1e-12);
        for e in EnergySign::ALL {
            let cov_profile = cov.sector(e).unwrap().clone();
            let back = Profile::FromCovariant(cov_profile);
            for p in &pts {
                let sector = Sector::new(1.5, e);
                assert!((back.value(p, sector).unwrap() - w.value(e, p).unwrap()).camax() < 1e-12);
            }
        }
        // rest-frame basis column
        let rest = MomentumWaveFunction::new(1.0).unwrap().with_sector(
            EnergySign::Negative,
            Arc::new(Profile::Custom(crate::states::profile::CustomProfile {
                func: Arc::new(|_, _| Spinor::new(ONE, ZERO)),
                support: Support { center: Real3::zeros(), width: 1.0 },
            })),
        );
        let col = to_covariant(&rest).value(EnergySign::Negative, &Real3::zeros()).unwrap();
        let v = amplitude(EnergySign::Negative, &on_shell(1.0, &Real3::zeros()).unwrap(), 1.0).unwrap();
        assert!((col - v.column(0)).camax() < 1e-15);
    }

    #[test]
    fn incompatible_inputs_rejected() {
        let g = gauss(Real3::zeros(), 1.0, Spinor::new(ONE, ZERO));
        let a = MomentumWaveFunction::gaussian(1.0, EnergySign::Positive, g.clone()).unwrap();
        let b = MomentumWaveFunction::gaussian(2.0, EnergySign::Positive, g.clone()).unwrap();
        assert!(matches!(scalar_product(&a, &b), Err(Error::IncompatibleDiscretization(_))));
        let g1 = MomentumGrid::new(Real3::zeros(), 8.0, 32).unwrap();
        let g2 = MomentumGrid::new(Real3::zeros(), 8.0, 48).unwrap();
        let a = a.with_grid(g1);
        let c = MomentumWaveFunction::gaussian(1.0, EnergySign::Positive, g).unwrap().with_grid(g2);
        assert!(matches!(scalar_product(&a, &c), Err(Error::IncompatibleDiscretization(_))));
    }

    #[test]
    fn spec_roundtrip() {
        let text =
            r#"{"mass":1.0,"sectors":[{"sign":1,"profile":{"family":"gaussian","center":[0,0,0],"width":0.5}}]}"#;
        let spec: WavefunctionSpec = serde_json::from_str(text).unwrap();
        let w = spec.build().unwrap();
        let n = scalar_product(&w, &w).unwrap();
        assert!((n.re - 1.0).abs() < 1e-8);
        let bad = r#"{"mass":1.0,"sectors":[{"sign":2,"profile":{"family":"gaussian","center":[0,0,0],"width":0.5}}]}"#;
        let spec: WavefunctionSpec = serde_json::from_str(bad).unwrap();
        assert!(spec.build().is_err());
    }
}
