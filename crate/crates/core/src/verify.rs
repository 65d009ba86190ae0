//! Seeded residual sweeps over the algebraic identities of the library.
//!
//! Each identity draws its own ChaCha stream from the seed, so results do
//! not depend on which other identities run or on thread scheduling.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::amplitudes::{algebraic_residual, parity_relation_residual, sandwich_formula_residual, weinberg_residual};
use crate::clifford::{anticommutator_residual, gamma5_residual, projector_residual};
use crate::error::{Error, Result};
use crate::lorentz::{bispinor_rep, covariance_residual, inverse_relation_residual, wigner_closed, wigner_numeric};
use crate::sampling;
use crate::spin::{
    casimir, fw_diagonalization_residual, spin_from_pauli_lubanski, spin_spin_basis, spin_transform_closed,
    spin_transform_wigner, triple_residual,
};
use crate::types::{max_abs_diff, re, EnergySign, Mat2C};

/// Parameters shared by every sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub samples: usize,
    pub mass: f64,
    pub pmax_over_m: f64,
    pub vmax: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 1000, mass: 1.0, pmax_over_m: 10.0, vmax: 0.99 }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidArgument(format!("mass must be positive and finite, got {}", self.mass)));
        }
        if !(self.pmax_over_m >= 0.0 && self.pmax_over_m.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "pmax must be non-negative and finite, got {}",
                self.pmax_over_m
            )));
        }
        if !(self.vmax > 0.0 && self.vmax < 1.0) {
            return Err(Error::InvalidArgument(format!("vmax must lie in (0, 1), got {}", self.vmax)));
        }
        Ok(())
    }
}

/// Name and default tolerance of every identity, sorted by name.
pub const IDENTITIES: [(&str, f64); 15] = [
    ("amplitude_algebra", 1e-12),
    ("casimir", 1e-12),
    ("clifford_anticommutator", 1e-14),
    ("clifford_gamma5", 1e-14),
    ("clifford_projectors", 1e-14),
    ("covariance_gamma", 1e-10),
    ("fw_diagonalization", 1e-11),
    ("parity_relation", 1e-12),
    ("sandwich_formulas", 1e-12),
    ("spin_reconstruction", 1e-12),
    ("spin_transform", 1e-10),
    ("weinberg", 1e-9),
    ("wigner_closed_form", 1e-10),
    ("wigner_cocycle", 1e-10),
    ("wigner_rotation_orthogonal", 1e-10),
];

pub fn default_tolerance(name: &str) -> Option<f64> {
    IDENTITIES.iter().find(|(n, _)| *n == name).map(|&(_, t)| t)
}

/// Outcome of one sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    /// Index of the first sample attaining the maximum.
    pub worst_sample: usize,
    pub tolerance: f64,
    pub passed: bool,
}

/// Resolved tolerance table: defaults with overrides applied. Unknown names
/// and non-positive values are rejected.
pub fn resolve_tolerances(overrides: &BTreeMap<String, f64>) -> Result<BTreeMap<String, f64>> {
    let mut table: BTreeMap<String, f64> = IDENTITIES.iter().map(|&(n, t)| (n.to_string(), t)).collect();
    for (name, &value) in overrides {
        let Some(slot) = table.get_mut(name) else {
            return Err(Error::InvalidArgument(format!("unknown identity '{name}'")));
        };
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance for '{name}' must be finite and non-negative, got {value}"
            )));
        }
        *slot = value;
    }
    Ok(table)
}

/// Residual of one sample of the named identity.
fn sample_residual(name: &str, index: usize, cfg: &SweepConfig) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream_id(name));
    // disjoint windows of 2¹⁶ words; rejection sampling never gets near the end
    rng.set_word_pos(index as u128 * (1 << 16));
    let m = cfg.mass;
    let p = sampling::momentum(&mut rng, m, cfg.pmax_over_m);
    let both = |f: &dyn Fn(EnergySign) -> Result<f64>| -> Result<f64> {
        Ok(f(EnergySign::Positive)?.max(f(EnergySign::Negative)?))
    };
    match name {
        "amplitude_algebra" => algebraic_residual(&p, m),
        "casimir" => both(&|e| Ok(max_abs_diff(&casimir(e, &p, m), &(Mat2C::identity() * re(0.75))))),
        "clifford_anticommutator" => Ok(anticommutator_residual()),
        "clifford_gamma5" => Ok(gamma5_residual()),
        "clifford_projectors" => projector_residual(&p, m),
        "covariance_gamma" => {
            let l = sampling::lorentz(&mut rng, cfg.vmax);
            let s = bispinor_rep(&l)?;
            Ok(covariance_residual(&s, &l).max(inverse_relation_residual(&s)))
        }
        "fw_diagonalization" => both(&|e| fw_diagonalization_residual(e, &p, m)),
        "parity_relation" => both(&|e| parity_relation_residual(e, &p, m)),
        "sandwich_formulas" => both(&|e| sandwich_formula_residual(e, &p, m)),
        "spin_reconstruction" => both(&|e| {
            Ok((1..4)
                .map(|i| max_abs_diff(&spin_from_pauli_lubanski(i, e, &p, m), &spin_spin_basis(i)))
                .fold(0.0, f64::max))
        }),
        "spin_transform" => {
            let v = sampling::velocity(&mut rng, cfg.vmax);
            Ok(triple_residual(&spin_transform_closed(&v, &p, m), &spin_transform_wigner(&v, &p, m)?))
        }
        "weinberg" => {
            let l = sampling::lorentz(&mut rng, cfg.vmax);
            both(&|e| weinberg_residual(&l, e, &p, m))
        }
        "wigner_closed_form" => {
            let v = sampling::velocity(&mut rng, cfg.vmax);
            let (r, _) = wigner_numeric(&crate::lorentz::boost_from_velocity(&v), &p, m)?;
            Ok((wigner_closed(&v, &p, m)? - r).amax())
        }
        "wigner_cocycle" => {
            let (l1, l2) = (sampling::lorentz(&mut rng, cfg.vmax), sampling::lorentz(&mut rng, cfg.vmax));
            let (r21, _) = wigner_numeric(&l2.compose(&l1), &p, m)?;
            let (r1, _) = wigner_numeric(&l1, &p, m)?;
            let (r2, _) = wigner_numeric(&l2, &l1.apply(&p), m)?;
            Ok((r21 - r2 * r1).amax())
        }
        "wigner_rotation_orthogonal" => {
            let l = sampling::lorentz(&mut rng, cfg.vmax);
            let (r, full) = wigner_numeric(&l, &p, m)?;
            let mut worst = (r.transpose() * r - crate::types::R3x3::identity()).amax();
            worst = worst.max((full.get(0, 0) - 1.0).abs());
            for k in 1..4 {
                worst = worst.max(full.get(0, k).abs()).max(full.get(k, 0).abs());
            }
            Ok(worst)
        }
        _ => Err(Error::InvalidArgument(format!("unknown identity '{name}'"))),
    }
}

fn stream_id(name: &str) -> u64 {
    IDENTITIES.iter().position(|(n, _)| *n == name).map_or(u64::MAX, |i| i as u64)
}

/// Sweep one identity over `cfg.samples` random draws.
pub fn run_identity(name: &str, cfg: &SweepConfig, tolerance: f64) -> Result<IdentityCheck> {
    cfg.validate()?;
    if default_tolerance(name).is_none() {
        return Err(Error::InvalidArgument(format!("unknown identity '{name}'")));
    }
    let residuals: Vec<f64> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| sample_residual(name, i, cfg).map(|r| if r.is_nan() { f64::INFINITY } else { r }))
        .collect::<Result<_>>()?;
    let (worst_sample, max_residual) =
        residuals.iter().copied().enumerate().fold((0, 0.0_f64), |best, (i, r)| if r > best.1 { (i, r) } else { best });
    Ok(IdentityCheck {
        name: name.to_string(),
        samples: cfg.samples,
        max_residual,
        worst_sample,
        tolerance,
        passed: max_residual <= tolerance,
    })
}

/// Every identity, sorted by name.
pub fn run_all(cfg: &SweepConfig, tolerances: &BTreeMap<String, f64>) -> Result<Vec<IdentityCheck>> {
    cfg.validate()?;
    tolerances.iter().map(|(name, &tol)| run_identity(name, cfg, tol)).collect()
}
