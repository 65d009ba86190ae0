//! Truncated Taylor polynomials in three variables.
//!
//! A jet of order d at a base point p₀ stores the coefficients c_α of
//! f(p₀ + δ) = Σ_{|α|≤d} c_α δ^α. Arithmetic on jets propagates exact partial
//! derivatives through profile expressions.

use std::ops::{Add, Mul, Neg, Sub};

use crate::types::{C64, ONE, ZERO};

/// Number of monomials of total degree ≤ d in three variables.
pub const fn jet_len(order: usize) -> usize {
    (order + 1) * (order + 2) * (order + 3) / 6
}

/// Position of the monomial δ₁^a δ₂^b δ₃^c.
pub fn monomial_index(a: usize, b: usize, c: usize) -> usize {
    let d = a + b + c;
    let k = b + c;
    jet_len(d) - (d + 1) * (d + 2) / 2 + k * (k + 1) / 2 + c
}

fn exponents(order: usize) -> Vec<[usize; 3]> {
    let mut out = vec![[0; 3]; jet_len(order)];
    for d in 0..=order {
        for a in (0..=d).rev() {
            for c in 0..=(d - a) {
                let b = d - a - c;
                out[monomial_index(a, b, c)] = [a, b, c];
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    coeffs: Vec<C64>,
}

impl Jet {
    pub fn constant(order: usize, c: C64) -> Self {
        let mut coeffs = vec![ZERO; jet_len(order)];
        coeffs[0] = c;
        Self { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(order, ZERO)
    }

    /// The coordinate p₀[axis] + δ_axis.
    pub fn variable(order: usize, base: f64, axis: usize) -> Self {
        let mut j = Self::constant(order, C64::new(base, 0.0));
        if order > 0 {
            let e = match axis {
                0 => monomial_index(1, 0, 0),
                1 => monomial_index(0, 1, 0),
                2 => monomial_index(0, 0, 1),
                _ => panic!("axis {axis} out of range"),
            };
            j.coeffs[e] = ONE;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> C64 {
        self.coeffs[0]
    }

    pub fn coeff(&self, a: usize, b: usize, c: usize) -> C64 {
        if a + b + c > self.order {
            ZERO
        } else {
            self.coeffs[monomial_index(a, b, c)]
        }
    }

    /// ∂^a₁∂^b₂∂^c₃ f(p₀)
    pub fn partial(&self, a: usize, b: usize, c: usize) -> C64 {
        let fact = |n: usize| (1..=n).product::<usize>() as f64;
        self.coeff(a, b, c) * (fact(a) * fact(b) * fact(c))
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order);
        Self { order, coeffs: self.coeffs[..jet_len(order)].to_vec() }
    }

    /// Partial derivative along `axis`; the result has order one less.
    pub fn derivative(&self, axis: usize) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let mut coeffs = vec![ZERO; jet_len(order)];
        for (idx, [a, b, c]) in exponents(order).into_iter().enumerate() {
            let mut up = [a, b, c];
            up[axis] += 1;
            coeffs[idx] = self.coeffs[monomial_index(up[0], up[1], up[2])] * (up[axis] as f64);
        }
        Self { order, coeffs }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    fn map_series(&self, series: &[C64]) -> Self {
        // Σ_k series[k] h^k with h = self − value
        let mut h = self.clone();
        h.coeffs[0] = ZERO;
        let mut acc = Self::constant(self.order, series[0]);
        let mut power = Self::constant(self.order, ONE);
        for s in series.iter().skip(1) {
            power = &power * &h;
            acc = &acc + &power.scale(*s);
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let e0 = self.value().exp();
        let mut series = Vec::with_capacity(self.order + 1);
        let mut term = e0;
        for k in 0..=self.order {
            if k > 0 {
                term /= k as f64;
            }
            series.push(term);
        }
        self.map_series(&series)
    }

    /// Principal power f^α; the base value must be nonzero.
    pub fn powf(&self, alpha: f64) -> Self {
        let a0 = self.value();
        let mut series = Vec::with_capacity(self.order + 1);
        let mut binom = 1.0;
        let mut inv = ONE;
        for k in 0..=self.order {
            if k > 0 {
                binom *= (alpha - (k as f64 - 1.0)) / k as f64;
                inv /= a0;
            }
            series.push(a0.powf(alpha) * inv * binom);
        }
        self.map_series(&series)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        assert_eq!(self.order, rhs.order);
        Jet { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        assert_eq!(self.order, rhs.order);
        Jet { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-ONE)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        assert_eq!(self.order, rhs.order);
        let order = self.order;
        let exps = exponents(order);
        let mut coeffs = vec![ZERO; jet_len(order)];
        for (i, ei) in exps.iter().enumerate() {
            let ci = self.coeffs[i];
            if ci == ZERO {
                continue;
            }
            let di = ei[0] + ei[1] + ei[2];
            for (j, ej) in exps.iter().enumerate().take(jet_len(order - di)) {
                let idx = monomial_index(ei[0] + ej[0], ei[1] + ej[1], ei[2] + ej[2]);
                coeffs[idx] += ci * rhs.coeffs[j];
            }
        }
        Jet { order, coeffs }
    }
}
