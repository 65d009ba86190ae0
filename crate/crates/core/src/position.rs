//! Position-space bispinors synthesized from momentum-space wavefunctions
//!
//! ```text
//! Ψ(x) = (2π)^{−3/2} Σ_ε ∫ d³p/(2ω) ψ^ε(p) e^{−iε p·x}
//! ```
//!
//! and the consistency of the position and momentum scalar products.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::clifford::projector;
use crate::error::{Error, Result};
use crate::states::wavefunction::{
    covariant_scalar_product_on, CompensatedSum, CovariantWaveFunction, MomentumGrid, GRID_POINTS,
};
use crate::states::Support;
use crate::types::{energy, on_shell, re, Bispinor, EnergySign, FourVector, Mat4C, Real3, C64, I};

/// Default position half-extent in units of 1/w_min.
pub const POSITION_WIDTHS: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositionSample {
    pub x: FourVector,
    pub psi: Bispinor,
}

/// Uniform grid on the fixed-time slice x⁰ = time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositionGrid {
    pub center: Real3,
    pub half_extent: f64,
    pub n: usize,
    pub time: f64,
}

impl PositionGrid {
    fn as_cube(&self) -> MomentumGrid {
        MomentumGrid { center: self.center, half_extent: self.half_extent, n: self.n }
    }

    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        self.as_cube().coordinate(axis, i)
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.as_cube().weight(i)
    }
}

/// Ψ sampled on every node of a position grid, stored x-major.
#[derive(Clone, Debug)]
pub struct PositionField {
    pub grid: PositionGrid,
    pub values: Vec<Bispinor>,
}

impl PositionField {
    pub fn at(&self, i: usize, j: usize, k: usize) -> Bispinor {
        let n = self.grid.n;
        self.values[(i * n + j) * n + k]
    }
}

fn check_coverage(w: &CovariantWaveFunction, grid: &MomentumGrid) -> Result<()> {
    for e in EnergySign::ALL {
        if let Some(p) = w.sector(e) {
            let s = p.support(e);
            if !grid.covers(&s) {
                return Err(Error::InsufficientGrid(format!(
                    "momentum grid {:?} ± {} does not cover {} widths around {:?} (width {})",
                    grid.center.as_slice(),
                    grid.half_extent,
                    crate::states::wavefunction::GRID_WIDTHS,
                    s.center.as_slice(),
                    s.width
                )));
            }
        }
    }
    Ok(())
}

/// Direct quadrature of Ψ at one space-time point.
pub fn synthesize(w: &CovariantWaveFunction, x: &FourVector, grid: &MomentumGrid) -> Result<PositionSample> {
    check_coverage(w, grid)?;
    let m = w.mass;
    let x3 = x.spatial();
    let mut psi = Bispinor::zeros();
    for e in EnergySign::ALL {
        if w.sector(e).is_none() {
            continue;
        }
        for a in 0..4 {
            let total = grid.integrate(|p| {
                let omega = energy(m, p);
                let phase = (I * (-e.value() * (omega * x.t - p.dot(&x3)))).exp();
                Ok(w.value(e, p)?[a] * phase / (2.0 * omega))
            })?;
            psi[a] += total;
        }
    }
    Ok(PositionSample { x: *x, psi: psi * re((2.0 * PI).powf(-1.5)) })
}

/// Ψ on a whole position grid by three successive one-dimensional sums.
pub fn synthesize_grid(w: &CovariantWaveFunction, mgrid: &MomentumGrid, pgrid: &PositionGrid) -> Result<PositionField> {
    check_coverage(w, mgrid)?;
    let m = w.mass;
    let (np, nx) = (mgrid.n, pgrid.n);
    let mut values = vec![Bispinor::zeros(); nx * nx * nx];
    for e in EnergySign::ALL {
        if w.sector(e).is_none() {
            continue;
        }
        let eps = e.value();
        // F(p) = weight·ψ(p)/(2ω)·e^{−iεωt}
        let table: Vec<Bispinor> = (0..np * np * np)
            .into_par_iter()
            .map(|idx| {
                let (i, j, k) = (idx / (np * np), (idx / np) % np, idx % np);
                let p = Real3::new(mgrid.coordinate(0, i), mgrid.coordinate(1, j), mgrid.coordinate(2, k));
                let omega = energy(m, &p);
                let weight = mgrid.weight(i) * mgrid.weight(j) * mgrid.weight(k);
                let phase = (I * (-eps * omega * pgrid.time)).exp() * (weight / (2.0 * omega));
                w.value(e, &p).map(|v| v * phase)
            })
            .collect::<Result<_>>()?;
        // kernels E_axis[x index][p index] = e^{iε p x}
        let kernel = |axis: usize| -> Vec<C64> {
            let mut out = Vec::with_capacity(nx * np);
            for xi in 0..nx {
                let xc = pgrid.coordinate(axis, xi);
                for pi in 0..np {
                    out.push((I * (eps * mgrid.coordinate(axis, pi) * xc)).exp());
                }
            }
            out
        };
        let (e1, e2, e3) = (kernel(0), kernel(1), kernel(2));
        // stage 1: sum over p₃ → (p₁, p₂, x₃)
        let g1: Vec<Bispinor> = (0..np * np * nx)
            .into_par_iter()
            .map(|idx| {
                let (ab, k) = (idx / nx, idx % nx);
                let row = &table[ab * np..(ab + 1) * np];
                row.iter().zip(&e3[k * np..(k + 1) * np]).fold(Bispinor::zeros(), |acc, (v, c)| acc + v * *c)
            })
            .collect();
        // stage 2: sum over p₂ → (p₁, x₂, x₃)
        let g2: Vec<Bispinor> = (0..np * nx * nx)
            .into_par_iter()
            .map(|idx| {
                let (a, j, k) = (idx / (nx * nx), (idx / nx) % nx, idx % nx);
                (0..np).fold(Bispinor::zeros(), |acc, b| acc + g1[(a * np + b) * nx + k] * e2[j * np + b])
            })
            .collect();
        // stage 3: sum over p₁ → (x₁, x₂, x₃)
        let g3: Vec<Bispinor> = (0..nx * nx * nx)
            .into_par_iter()
            .map(|idx| {
                let (l, jk) = (idx / (nx * nx), idx % (nx * nx));
                (0..np).fold(Bispinor::zeros(), |acc, a| acc + g2[a * nx * nx + jk] * e1[l * np + a])
            })
            .collect();
        for (v, g) in values.iter_mut().zip(g3) {
            *v += g;
        }
    }
    let norm = re((2.0 * PI).powf(-1.5));
    for v in &mut values {
        *v *= norm;
    }
    Ok(PositionField { grid: *pgrid, values })
}

/// 2m ∫ d³x Ψ̄γ⁰Φ = 2m ∫ d³x Ψ†Φ over the grid (trapezoid rule).
///
/// With the (2π)^{−3/2}∫d³p/(2ω) synthesis the bare position integral equals
/// the momentum scalar product divided by 2m; the factor restores equality.
pub fn position_scalar_product(a: &PositionField, b: &PositionField, m: f64) -> Result<C64> {
    if a.grid != b.grid {
        return Err(Error::IncompatibleDiscretization("position grids differ".into()));
    }
    let g = &a.grid;
    let n = g.n;
    let slabs: Vec<C64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = CompensatedSum::default();
            for j in 0..n {
                for k in 0..n {
                    let idx = (i * n + j) * n + k;
                    acc.add(a.values[idx].dotc(&b.values[idx]) * (g.weight(j) * g.weight(k)));
                }
            }
            acc.total() * g.weight(i)
        })
        .collect();
    let mut total = CompensatedSum::default();
    for s in slabs {
        total.add(s);
    }
    Ok(total.total() * (2.0 * m))
}

/// Momentum and position grids used by [`parseval_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParsevalGrids {
    pub momentum: MomentumGrid,
    pub position: PositionGrid,
}

impl ParsevalGrids {
    /// Momentum grid covering 8 widths of both wavefunctions with 64 points;
    /// position grid of half-extent 8/w_min with 64 points at x⁰ = 0.
    pub fn default_for(a: &CovariantWaveFunction, b: &CovariantWaveFunction) -> Self {
        Self::scaled(a, b, 1.0)
    }

    /// Default grids with extents and point counts multiplied by 1.5.
    pub fn refined_for(a: &CovariantWaveFunction, b: &CovariantWaveFunction) -> Self {
        Self::scaled(a, b, 1.5)
    }

    fn scaled(a: &CovariantWaveFunction, b: &CovariantWaveFunction, factor: f64) -> Self {
        let mut supports = Vec::new();
        for w in [a, b] {
            for e in EnergySign::ALL {
                if let Some(p) = w.sector(e) {
                    supports.push(p.support(e));
                }
            }
        }
        let all = Support::union(&supports).unwrap_or(Support { center: Real3::zeros(), width: 1.0 });
        let w_min = supports.iter().map(|s| s.width).fold(f64::INFINITY, f64::min).min(all.width);
        let n = (GRID_POINTS as f64 * factor).round() as usize;
        let mut momentum = MomentumGrid::for_support(&all);
        momentum.n = n;
        let position =
            PositionGrid { center: Real3::zeros(), half_extent: POSITION_WIDTHS * factor / w_min, n, time: 0.0 };
        Self { momentum, position }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParsevalReport {
    /// Position-space product.
    pub lhs: C64,
    /// Momentum-space product.
    pub rhs: C64,
    pub relerr: f64,
}

/// Compares the position-space scalar product against Σ_ε ∫ d³p/(2ω) εψ̄φ.
pub fn parseval_check(
    a: &CovariantWaveFunction,
    b: &CovariantWaveFunction,
    grids: &ParsevalGrids,
) -> Result<ParsevalReport> {
    if a.mass != b.mass {
        return Err(Error::IncompatibleDiscretization(format!("masses differ: {} vs {}", a.mass, b.mass)));
    }
    let fa = synthesize_grid(a, &grids.momentum, &grids.position)?;
    let lhs = if std::ptr::eq(a, b) {
        position_scalar_product(&fa, &fa, a.mass)?
    } else {
        position_scalar_product(&fa, &synthesize_grid(b, &grids.momentum, &grids.position)?, a.mass)?
    };
    let rhs = covariant_scalar_product_on(a, b, &grids.momentum)?;
    let scale = rhs.norm().max(lhs.norm());
    let relerr = if scale == 0.0 { 0.0 } else { (lhs - rhs).norm() / scale };
    Ok(ParsevalReport { lhs, rhs, relerr })
}

/// Plane-wave overlap kernel (ε/(2π)^{3/2}) e^{−iε p·x} Λ_ε(p), indexed
/// (β, α).
pub fn plane_wave_kernel(e: EnergySign, p3: &Real3, x: &FourVector, m: f64) -> Result<Mat4C> {
    let p = on_shell(m, p3)?;
    let phase = (I * (-e.value() * p.dot(x))).exp();
    Ok(projector(e, &p, m)? * (phase * e.value() * (2.0 * PI).powf(-1.5)))
}
