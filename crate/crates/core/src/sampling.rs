//! Random kinematics for property sweeps.

use rand::Rng;

use crate::lorentz::{boost_from_velocity, BoostVelocity};
use crate::types::{on_shell, FourVector, LorentzMatrix, R3x3, Real3};

/// Uniform point in the ball of the given radius (rejection from the cube).
pub fn in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Real3 {
    loop {
        let u = Real3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if u.norm_squared() <= 1.0 {
            return u * radius;
        }
    }
}

/// On-shell momentum with p⃗ = m·u⃗, u⃗ uniform in the ball of radius `pmax_over_m`.
pub fn momentum<R: Rng + ?Sized>(rng: &mut R, m: f64, pmax_over_m: f64) -> FourVector {
    on_shell(m, &(in_ball(rng, pmax_over_m) * m)).expect("positive mass")
}

/// Velocity uniform in the ball of radius `vmax` < 1.
pub fn velocity<R: Rng + ?Sized>(rng: &mut R, vmax: f64) -> BoostVelocity {
    BoostVelocity::new(in_ball(rng, vmax)).expect("vmax below 1")
}

/// Haar-random rotation from a uniform unit quaternion.
pub fn rotation<R: Rng + ?Sized>(rng: &mut R) -> R3x3 {
    let (w, x, y, z) = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n2: f64 = q.iter().map(|c| c * c).sum();
        if n2 <= 1.0 && n2 > 1e-6 {
            let n = n2.sqrt();
            break (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
        }
    };
    R3x3::new(
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - z * w),
        2.0 * (x * z + y * w),
        2.0 * (x * y + z * w),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - x * w),
        2.0 * (x * z - y * w),
        2.0 * (y * z + x * w),
        1.0 - 2.0 * (x * x + y * y),
    )
}

/// Proper orthochronous Λ = Λ(v⃗)·Λ(R) with random v⃗ and R.
pub fn lorentz<R: Rng + ?Sized>(rng: &mut R, vmax: f64) -> LorentzMatrix {
    let r = LorentzMatrix::from_rotation(&rotation(rng)).expect("orthogonal by construction");
    boost_from_velocity(&velocity(rng, vmax)).compose(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(momentum(&mut rng, 2.0, 10.0).spatial().norm() <= 20.0);
            assert!(velocity(&mut rng, 0.99).speed() <= 0.99);
            let r = rotation(&mut rng);
            assert!((r.transpose() * r - R3x3::identity()).amax() < 1e-14);
            assert!((r.determinant() - 1.0).abs() < 1e-14);
            assert!(lorentz(&mut rng, 0.99).is_proper_orthochronous());
        }
    }
}
