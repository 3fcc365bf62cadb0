//! Scalar abstraction for the matrix-assembly maps.
//!
//! Every coefficient assembly in this crate (equations of state, the symmetric
//! Euler matrices, the straightened boundary matrix) is written once, generic
//! over [`VfScalar`]. Instantiated at `f64` it evaluates coefficients, at
//! `Complex64` it yields complex-step directional derivatives, and at [`Jet`]
//! it propagates truncated Taylor series in time for the compatibility
//! recursion.

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait VfScalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_re(x: f64) -> Self;
    /// Value part (real part / zeroth Taylor coefficient).
    fn re(&self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn powf(self, q: f64) -> Self;
    fn zero() -> Self {
        Self::from_re(0.0)
    }
    fn one() -> Self {
        Self::from_re(1.0)
    }
    fn scale(self, c: f64) -> Self {
        self * Self::from_re(c)
    }
}

impl VfScalar for f64 {
    fn from_re(x: f64) -> Self {
        x
    }
    fn re(&self) -> f64 {
        *self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powf(self, q: f64) -> Self {
        f64::powf(self, q)
    }
}

impl VfScalar for Complex64 {
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn ln(self) -> Self {
        Complex64::ln(self)
    }
    fn sqrt(self) -> Self {
        Complex64::sqrt(self)
    }
    fn powf(self, q: f64) -> Self {
        Complex64::powf(self, q)
    }
}

/// Maximum number of stored time-derivative coefficients in a [`Jet`].
pub const JET_CAP: usize = 8;

/// Truncated Taylor expansion in time at a point: `d[k]` holds the k-th time
/// derivative (not the Taylor coefficient, so products use the Leibniz rule
/// with binomial weights).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub d: [f64; JET_CAP],
}

impl Jet {
    pub fn constant(x: f64) -> Self {
        let mut d = [0.0; JET_CAP];
        d[0] = x;
        Jet { d }
    }

    /// Jet of the identity-in-time variable shifted to der(1) = 1 is not
    /// needed; jets are built from field values and their time derivatives.
    pub fn from_derivatives(vals: &[f64]) -> Self {
        let mut d = [0.0; JET_CAP];
        for (k, v) in vals.iter().take(JET_CAP).enumerate() {
            d[k] = *v;
        }
        Jet { d }
    }

    pub fn deriv(&self, k: usize) -> f64 {
        self.d[k]
    }
}

const BINOM: [[f64; JET_CAP]; JET_CAP] = {
    let mut c = [[0.0; JET_CAP]; JET_CAP];
    let mut n = 0;
    while n < JET_CAP {
        c[n][0] = 1.0;
        let mut k = 1;
        while k <= n {
            c[n][k] = c[n - 1][k - 1] + if k <= n - 1 { c[n - 1][k] } else { 0.0 };
            k += 1;
        }
        n += 1;
    }
    c
};

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut d = [0.0; JET_CAP];
        for k in 0..JET_CAP {
            d[k] = self.d[k] + rhs.d[k];
        }
        Jet { d }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let mut d = [0.0; JET_CAP];
        for k in 0..JET_CAP {
            d[k] = self.d[k] - rhs.d[k];
        }
        Jet { d }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut d = [0.0; JET_CAP];
        for k in 0..JET_CAP {
            d[k] = -self.d[k];
        }
        Jet { d }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut d = [0.0; JET_CAP];
        for k in 0..JET_CAP {
            let mut acc = 0.0;
            for i in 0..=k {
                acc += BINOM[k][i] * self.d[i] * rhs.d[k - i];
            }
            d[k] = acc;
        }
        Jet { d }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        // (u/v): solve u = w*v level by level.
        let mut w = [0.0; JET_CAP];
        let v0 = rhs.d[0];
        for k in 0..JET_CAP {
            let mut acc = self.d[k];
            for i in 0..k {
                acc -= BINOM[k][i] * w[i] * rhs.d[k - i];
            }
            w[k] = acc / v0;
        }
        Jet { d: w }
    }
}

impl VfScalar for Jet {
    fn from_re(x: f64) -> Self {
        Jet::constant(x)
    }
    fn re(&self) -> f64 {
        self.d[0]
    }

    fn exp(self) -> Self {
        // w' = w u'  =>  w^(k) = sum_{i<k} C(k-1,i) w^(i) u^(k-i)
        let mut w = [0.0; JET_CAP];
        w[0] = self.d[0].exp();
        for k in 1..JET_CAP {
            let mut acc = 0.0;
            for i in 0..k {
                acc += BINOM[k - 1][i] * w[i] * self.d[k - i];
            }
            w[k] = acc;
        }
        Jet { d: w }
    }

    fn ln(self) -> Self {
        // w = ln u  =>  u' = u w'  =>  u^(k) = sum_{i<k} C(k-1,i) u^(i) w^(k-i)
        let mut w = [0.0; JET_CAP];
        w[0] = self.d[0].ln();
        for k in 1..JET_CAP {
            let mut acc = self.d[k];
            for i in 1..k {
                acc -= BINOM[k - 1][i] * self.d[i] * w[k - i];
            }
            w[k] = acc / self.d[0];
        }
        Jet { d: w }
    }

    fn sqrt(self) -> Self {
        // w*w = u: 2 w0 w_k = u_k - sum_{0<i<k} C(k,i) w_i w_{k-i}
        let mut w = [0.0; JET_CAP];
        w[0] = self.d[0].sqrt();
        for k in 1..JET_CAP {
            let mut acc = self.d[k];
            for i in 1..k {
                acc -= BINOM[k][i] * w[i] * w[k - i];
            }
            w[k] = acc / (2.0 * w[0]);
        }
        Jet { d: w }
    }

    fn powf(self, q: f64) -> Self {
        // u^q = exp(q ln u); adequate since all powf call sites have u > 0.
        (self.ln().scale(q)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_jet(c0: f64, c1: f64, c2: f64) -> Jet {
        // u(t) = c0 + c1 t + c2 t^2: derivatives (c0, c1, 2 c2, 0, ...)
        Jet::from_derivatives(&[c0, c1, 2.0 * c2])
    }

    #[test]
    fn jet_product_matches_polynomial_product() {
        let u = poly_jet(1.0, 2.0, 3.0);
        let v = poly_jet(-0.5, 1.5, 0.25);
        let w = u * v;
        // (1 + 2t + 3t^2)(-0.5 + 1.5t + 0.25t^2):
        // t^0: -0.5; t^1: 1.5 - 1.0 = 0.5; t^2: 0.25 + 3 - 1.5 = 1.75
        assert!((w.deriv(0) - -0.5).abs() < 1e-14);
        assert!((w.deriv(1) - 0.5).abs() < 1e-14);
        assert!((w.deriv(2) - 2.0 * 1.75).abs() < 1e-13);
    }

    #[test]
    fn jet_div_roundtrip() {
        let u = Jet::from_derivatives(&[2.0, -1.0, 0.5, 3.0, -0.25]);
        let v = Jet::from_derivatives(&[1.5, 0.7, -0.2, 0.1, 2.0]);
        let w = (u / v) * v;
        for k in 0..JET_CAP {
            assert!((w.deriv(k) - u.deriv(k)).abs() < 1e-11 * (1.0 + u.deriv(k).abs()));
        }
    }

    #[test]
    fn jet_exp_ln_sqrt_against_finite_differences() {
        // f(t) = exp(0.3 + 0.7 t - 0.2 t^2); check first three derivatives.
        let u = poly_jet(0.3, 0.7, -0.2);
        let w = u.exp();
        let f = |t: f64| (0.3 + 0.7 * t - 0.2 * t * t).exp();
        let h = 1e-5;
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        assert!((w.deriv(0) - f(0.0)).abs() < 1e-14);
        assert!((w.deriv(1) - d1).abs() < 1e-8);
        assert!((w.deriv(2) - d2).abs() < 1e-5);

        let s = u.exp().sqrt();
        let g = |t: f64| (0.3 + 0.7 * t - 0.2 * t * t).exp().sqrt();
        let e1 = (g(h) - g(-h)) / (2.0 * h);
        assert!((s.deriv(1) - e1).abs() < 1e-8);

        let l = u.exp().ln();
        for k in 0..4 {
            assert!((l.deriv(k) - u.deriv(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_step_derivative_of_assembly_scalar() {
        // d/dx (x * exp(x)) at x=0.8 via complex step.
        let h = 1e-150;
        let z = Complex64::new(0.8, h);
        let f = z * z.exp();
        let exact = (1.0f64 + 0.8) * 0.8f64.exp();
        assert!((f.im / h - exact).abs() < 1e-13 * exact.abs());
    }
}
