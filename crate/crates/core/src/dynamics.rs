//! Slow-motion momentum and polarization dynamics in a static magnetic field
//! with g = 2:
//!
//! ```text
//! dq⃗/dt = (e/m) q⃗×B⃗ + (e/2m) F⃗(ξ⃗),   dξ⃗/dt = (e/m) ξ⃗×B⃗,   dx⃗/dt = q⃗/m
//! ```
//!
//! where F⃗ is the gradient force ξ⃗·∇B⃗ in one of two index readings.

use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::types::{check_mass, R3x3, Real3};

/// Gyromagnetic ratio assumed by the equations of motion.
pub const G_FACTOR: f64 = 2.0;

type FieldFn = dyn Fn(&Real3) -> Real3 + Send + Sync;
type GradientFn = dyn Fn(&Real3) -> R3x3 + Send + Sync;

/// Static magnetic field with its gradient G_{ij} = ∂_i B_j.
#[derive(Clone)]
pub enum FieldConfig {
    Uniform(Real3),
    /// B_j(x⃗) = b0_j + Σ_i x_i G_{ij}
    Linear {
        b0: Real3,
        gradient: R3x3,
    },
    Custom {
        field: Arc<FieldFn>,
        gradient: Arc<GradientFn>,
    },
}

impl fmt::Debug for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Uniform(b) => f.debug_tuple("Uniform").field(b).finish(),
            FieldConfig::Linear { b0, gradient } => {
                f.debug_struct("Linear").field("b0", b0).field("gradient", gradient).finish()
            }
            FieldConfig::Custom { .. } => f.write_str("Custom"),
        }
    }
}

impl FieldConfig {
    /// B⃗ = G(y, x, 0): curl-free and divergence-free.
    pub fn quadrupole(g: f64) -> Self {
        let mut gradient = R3x3::zeros();
        gradient[(0, 1)] = g;
        gradient[(1, 0)] = g;
        FieldConfig::Linear { b0: Real3::zeros(), gradient }
    }

    pub fn field(&self, x: &Real3) -> Real3 {
        match self {
            FieldConfig::Uniform(b) => *b,
            FieldConfig::Linear { b0, gradient } => b0 + gradient.transpose() * x,
            FieldConfig::Custom { field, .. } => field(x),
        }
    }

    pub fn gradient(&self, x: &Real3) -> R3x3 {
        match self {
            FieldConfig::Uniform(_) => R3x3::zeros(),
            FieldConfig::Linear { gradient, .. } => *gradient,
            FieldConfig::Custom { gradient, .. } => gradient(x),
        }
    }

    pub fn is_uniform(&self) -> bool {
        match self {
            FieldConfig::Uniform(_) => true,
            FieldConfig::Linear { gradient, .. } => gradient.iter().all(|g| *g == 0.0),
            FieldConfig::Custom { .. } => false,
        }
    }

    /// Largest difference between the analytic gradient and central
    /// differences of the field at x⃗.
    pub fn gradient_self_check(&self, x: &Real3, h: f64) -> f64 {
        let analytic = self.gradient(x);
        let mut worst = 0.0_f64;
        for i in 0..3 {
            let mut e = Real3::zeros();
            e[i] = h;
            let d = (self.field(&(x + e)) - self.field(&(x - e))) / (2.0 * h);
            for j in 0..3 {
                worst = worst.max((d[j] - analytic[(i, j)]).abs());
            }
        }
        worst
    }
}

/// Index reading of ξ⃗·∇B⃗.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GradientReading {
    /// F_i = Σ_j ξ_j ∂_i B_j
    #[default]
    SternGerlach,
    /// F_i = Σ_j ξ_j ∂_j B_i
    Transposed,
}

impl GradientReading {
    pub fn force(self, gradient: &R3x3, xi: &Real3) -> Real3 {
        match self {
            GradientReading::SternGerlach => gradient * xi,
            GradientReading::Transposed => gradient.transpose() * xi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChargedState {
    pub q: Real3,
    pub xi: Real3,
    pub x: Real3,
    pub charge: f64,
    pub m: f64,
}

/// Time derivatives of (q⃗, ξ⃗, x⃗).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateRate {
    pub q: Real3,
    pub xi: Real3,
    pub x: Real3,
}

impl ChargedState {
    pub fn new(q: Real3, xi: Real3, x: Real3, charge: f64, m: f64) -> Result<Self> {
        check_mass(m)?;
        Ok(Self { q, xi, x, charge, m })
    }

    fn advance(&self, r: &StateRate, h: f64) -> Self {
        Self { q: self.q + r.q * h, xi: self.xi + r.xi * h, x: self.x + r.x * h, ..*self }
    }

    fn is_finite(&self) -> bool {
        self.q.iter().chain(self.xi.iter()).chain(self.x.iter()).all(|v| v.is_finite())
    }
}

pub fn rhs(s: &ChargedState, f: &FieldConfig, reading: GradientReading) -> StateRate {
    let b = f.field(&s.x);
    let k = s.charge / s.m;
    let force = reading.force(&f.gradient(&s.x), &s.xi);
    StateRate {
        q: s.q.cross(&b) * k + force * (G_FACTOR * s.charge / (4.0 * s.m)),
        xi: s.xi.cross(&b) * k,
        x: s.q / s.m,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub q: Real3,
    pub xi: Real3,
    pub x: Real3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// Whether the position columns are part of the exported data.
    pub track_position: bool,
}

/// Largest deviations of conserved or rigid quantities from their initial
/// values along a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservationSummary {
    pub xi_norm_drift: f64,
    pub q_norm_drift: f64,
    pub xi_dot_q_drift: f64,
    /// Drift of q⃗·B̂ at the initial position.
    pub q_along_field_drift: f64,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectories hold at least one sample")
    }

    pub fn summary(&self, f: &FieldConfig) -> ConservationSummary {
        let s0 = self.samples[0];
        let b = f.field(&s0.x);
        let bhat = if b.norm() > 0.0 { b / b.norm() } else { Real3::zeros() };
        let mut out = ConservationSummary {
            xi_norm_drift: 0.0,
            q_norm_drift: 0.0,
            xi_dot_q_drift: 0.0,
            q_along_field_drift: 0.0,
        };
        for s in &self.samples {
            out.xi_norm_drift = out.xi_norm_drift.max((s.xi.norm() - s0.xi.norm()).abs());
            out.q_norm_drift = out.q_norm_drift.max((s.q.norm() - s0.q.norm()).abs());
            out.xi_dot_q_drift = out.xi_dot_q_drift.max((s.xi.dot(&s.q) - s0.xi.dot(&s0.q)).abs());
            out.q_along_field_drift = out.q_along_field_drift.max((s.q.dot(&bhat) - s0.q.dot(&bhat)).abs());
        }
        out
    }

    pub fn csv_header(&self) -> &'static str {
        if self.track_position {
            "t,qx,qy,qz,xix,xiy,xiz,x,y,z"
        } else {
            "t,qx,qy,qz,xix,xiy,xiz"
        }
    }

    /// One header line and steps + 1 rows, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.csv_header())?;
        for s in &self.samples {
            let mut row = vec![s.t, s.q.x, s.q.y, s.q.z, s.xi.x, s.xi.y, s.xi.z];
            if self.track_position {
                row.extend([s.x.x, s.x.y, s.x.z]);
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Classical fourth-order Runge-Kutta over [0, T] with `steps` equal steps.
pub fn integrate(
    s0: &ChargedState,
    f: &FieldConfig,
    t_end: f64,
    steps: usize,
    reading: GradientReading,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::InvalidArgument("at least one integration step is required".into()));
    }
    if !t_end.is_finite() {
        return Err(Error::InvalidArgument(format!("final time must be finite, got {t_end}")));
    }
    let h = t_end / steps as f64;
    let mut s = *s0;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(Sample { t: 0.0, q: s.q, xi: s.xi, x: s.x });
    for n in 1..=steps {
        let k1 = rhs(&s, f, reading);
        let k2 = rhs(&s.advance(&k1, h / 2.0), f, reading);
        let k3 = rhs(&s.advance(&k2, h / 2.0), f, reading);
        let k4 = rhs(&s.advance(&k3, h), f, reading);
        let slope = StateRate {
            q: (k1.q + (k2.q + k3.q) * 2.0 + k4.q) / 6.0,
            xi: (k1.xi + (k2.xi + k3.xi) * 2.0 + k4.xi) / 6.0,
            x: (k1.x + (k2.x + k3.x) * 2.0 + k4.x) / 6.0,
        };
        s = s.advance(&slope, h);
        let t = n as f64 * h;
        if !s.is_finite() {
            return Err(Error::NonFinite { step: n, t });
        }
        samples.push(Sample { t, q: s.q, xi: s.xi, x: s.x });
    }
    Ok(Trajectory { samples, track_position: !f.is_uniform() })
}

/// Analytic polarization in a uniform field: rigid rotation of ξ⃗₀ about B̂
/// by the angle −(e|B|/m)t.
pub fn larmor_solution(xi0: &Real3, b: &Real3, charge: f64, m: f64, t: f64) -> Real3 {
    let bn = b.norm();
    if bn == 0.0 {
        return *xi0;
    }
    let n = b / bn;
    let angle = -charge * bn / m * t;
    let par = n * n.dot(xi0);
    let perp = xi0 - par;
    par + perp * angle.cos() + n.cross(&perp) * angle.sin()
}

/// Angle between the integrated and analytic polarization after time T.
pub fn precession_angle_error(b: &Real3, xi0: &Real3, charge: f64, m: f64, t_end: f64, steps: usize) -> Result<f64> {
    let s0 = ChargedState::new(Real3::zeros(), *xi0, Real3::zeros(), charge, m)?;
    let traj = integrate(&s0, &FieldConfig::Uniform(*b), t_end, steps, GradientReading::SternGerlach)?;
    let got = traj.last().xi;
    let exact = larmor_solution(xi0, b, charge, m, t_end);
    Ok(got.cross(&exact).norm().atan2(got.dot(&exact)))
}

/// Observed convergence order log₂(err(n)/err(2n)) of the precession angle.
pub fn convergence_order(b: &Real3, xi0: &Real3, charge: f64, m: f64, t_end: f64, steps: usize) -> Result<f64> {
    let coarse = precession_angle_error(b, xi0, charge, m, t_end, steps)?;
    let fine = precession_angle_error(b, xi0, charge, m, t_end, 2 * steps)?;
    Ok((coarse / fine).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(q: Real3, xi: Real3) -> ChargedState {
        ChargedState::new(q, xi, Real3::zeros(), 1.0, 1.0).unwrap()
    }

    #[test]
    fn rhs_examples() {
        let (e, m, b) = (0.7, 1.3, 2.0);
        let s = ChargedState::new(Real3::zeros(), Real3::x(), Real3::zeros(), e, m).unwrap();
        let r = rhs(&s, &FieldConfig::Uniform(Real3::new(0.0, 0.0, b)), GradientReading::SternGerlach);
        assert!((r.xi - Real3::new(0.0, -e * b / m, 0.0)).amax() < 1e-15);
        let r = rhs(
            &state(Real3::new(1.0, 2.0, 3.0), Real3::x()),
            &FieldConfig::Uniform(Real3::zeros()),
            GradientReading::SternGerlach,
        );
        assert_eq!(r.q, Real3::zeros());
        assert_eq!(r.xi, Real3::zeros());
        let r = rhs(
            &state(Real3::zeros(), Real3::z()),
            &FieldConfig::Uniform(Real3::new(0.0, 0.0, 3.0)),
            GradientReading::SternGerlach,
        );
        assert_eq!(r.xi, Real3::zeros());
    }

    #[test]
    fn gradient_force_readings_agree_for_quadrupole() {
        let f = FieldConfig::quadrupole(0.8);
        assert!(f.gradient_self_check(&Real3::new(0.3, -0.2, 1.0), 1e-4) < 1e-8);
        let s = state(Real3::new(0.1, 0.0, 0.0), Real3::new(0.6, 0.8, 0.0));
        let a = rhs(&s, &f, GradientReading::SternGerlach);
        let b = rhs(&s, &f, GradientReading::Transposed);
        assert_eq!(a, b);
        assert!(
            (a.q - (Real3::new(0.1, 0.0, 0.0).cross(&f.field(&s.x)) + Real3::new(0.8, 0.6, 0.0) * 0.8 * 0.5)).amax()
                < 1e-15
        );
    }

    #[test]
    fn quarter_period() {
        let b = Real3::new(0.0, 0.0, 1.5);
        let (e, m) = (1.0, 0.75);
        let omega = e * 1.5 / m;
        let s0 = ChargedState::new(Real3::new(0.3, 0.0, 0.2), Real3::x(), Real3::zeros(), e, m).unwrap();
        let f = FieldConfig::Uniform(b);
        let traj =
            integrate(&s0, &f, std::f64::consts::FRAC_PI_2 / omega, 1000, GradientReading::SternGerlach).unwrap();
        assert_eq!(traj.samples.len(), 1001);
        let last = traj.last();
        assert!((last.xi - Real3::new(0.0, -1.0, 0.0)).amax() < 1e-6);
        let sum = traj.summary(&f);
        assert!(sum.xi_norm_drift < 1e-9 && sum.q_norm_drift < 1e-8 && sum.q_along_field_drift < 1e-8);
        assert!(sum.xi_dot_q_drift < 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        let order =
            convergence_order(&Real3::new(0.0, 0.0, 1.0), &Real3::x(), 1.0, 1.0, 2.0 * std::f64::consts::PI, 50)
                .unwrap();
        assert!((3.8..=4.2).contains(&order), "order {order}");
    }

    #[test]
    fn csv_layout() {
        let f = FieldConfig::quadrupole(0.1);
        let traj = integrate(&state(Real3::zeros(), Real3::x()), &f, 1.0, 4, GradientReading::SternGerlach).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "t,qx,qy,qz,xix,xiy,xiz,x,y,z");
        assert_eq!(lines[1].split(',').count(), 10);
    }

    #[test]
    fn non_finite_aborts() {
        let f = FieldConfig::Custom {
            field: Arc::new(|_| Real3::new(f64::NAN, 0.0, 0.0)),
            gradient: Arc::new(|_| R3x3::zeros()),
        };
        let err = integrate(&state(Real3::zeros(), Real3::z()), &f, 1.0, 3, GradientReading::SternGerlach).unwrap_err();
        assert!(matches!(err, Error::NonFinite { step: 1, .. }));
        assert!(integrate(&state(Real3::zeros(), Real3::z()), &f, 1.0, 0, GradientReading::SternGerlach).is_err());
    }
}
