//! Numerics for massive spin-½ particles: Lorentz and bispinor
//! representations, Wigner rotations, bispinor amplitudes, spin and
//! Pauli-Lubanski operators in momentum space, Newton-Wigner shifts,
//! polarization dynamics and the position-space bridge.
//!
//! Conventions: ħ = c = 1, metric diag(1, −1, −1, −1), chiral gamma
//! matrices with γ⁵ = diag(I, −I).

// Index loops mirror tensor notation throughout.
#![allow(clippy::needless_range_loop)]

pub mod amplitudes;
pub mod clifford;
pub mod dynamics;
pub mod error;
pub mod lorentz;
pub mod position;
pub mod sampling;
pub mod spin;
pub mod states;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use types::{
    energy, minkowski_dot, on_shell, EnergySign, FourVector, LorentzMatrix, Mat2C, Mat4C, R3x3, Real3, C64,
};
