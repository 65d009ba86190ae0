//! Momentum-space states: wavefunctions in both bases, Newton-Wigner
//! operations and sharp-momentum density states.

pub mod density;
pub mod jet;
pub mod profile;
pub mod wavefunction;

pub use density::DensityState;
pub use profile::{CovProfile, GaussianProfile, Profile, Sector, Support};
pub use wavefunction::{
    covariant_scalar_product, covariant_scalar_product_on, lorentz_transform, lorentz_transform_covariant,
    matrix_apply, momentum_apply, nw_apply, nw_apply_fd, nw_shift, pointwise_difference, scalar_product,
    scalar_product_on, spin_apply, to_covariant, to_spin, CovariantWaveFunction, MomentumGrid, MomentumWaveFunction,
    ProfileSpec, SectorSpec, WavefunctionSpec,
};
