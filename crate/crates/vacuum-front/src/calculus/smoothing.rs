//! The mollifier family S_theta acting on fields that vanish in the past.
//!
//! Tensor construction: a smooth low-pass symbol psi(|k'| / theta) in the
//! tangential frequencies, the matching cosine-basis symbol in x1 (even
//! reflection about both walls), and a causal kernel in time whose support
//! shrinks like 1/theta. Causality in time keeps two properties exact that a
//! truncated time-Fourier cutoff would only approximate: outputs of
//! past-vanishing inputs vanish in the past sample-by-sample, and the family
//! commutes with itself (one-sided shifts compose additively; diagonal
//! symbols commute).

use crate::error::{Result, VfError};
use crate::field::{BoundaryField, ScalarField, StateField, NCOMP};
use crate::grid::Grid;

use super::ops;

/// Smooth transition 1 -> 0 on [0, 1] built from exp(-1/x) bumps.
fn smooth_step_down(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x >= 1.0 {
        return 0.0;
    }
    let b = |y: f64| (-1.0 / y).exp();
    b(1.0 - x) / (b(x) + b(1.0 - x))
}

/// Low-pass symbol: identically 1 on [0, 1], identically 0 beyond 2.
pub fn lowpass_symbol(x: f64) -> f64 {
    smooth_step_down(x - 1.0)
}

/// Half-bump time-kernel profile on [0, 1): kappa(0) = 1 and all derivatives
/// vanish at the right endpoint.
fn time_profile(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x >= 1.0 {
        0.0
    } else {
        (-x * x / (1.0 - x * x)).exp()
    }
}

#[derive(Clone, Debug)]
pub struct SmoothingFamily {
    pub grid: Grid,
    /// Time-kernel width at theta = 1, in units of time steps.
    pub time_width_steps: f64,
}

impl SmoothingFamily {
    pub fn new(grid: Grid) -> Self {
        SmoothingFamily { grid, time_width_steps: 6.0 }
    }

    fn check_theta(&self, theta: f64) -> Result<()> {
        if theta < 1.0 {
            Err(VfError::Parameter(format!("smoothing requires theta >= 1, got {theta}")))
        } else {
            Ok(())
        }
    }

    /// Causal time kernel at scale theta; length 1 (identity) once the
    /// support drops below one step.
    pub fn time_kernel(&self, theta: f64) -> Vec<f64> {
        let w = self.time_width_steps * self.grid.ht() / theta;
        let l = (w / self.grid.ht()).ceil() as usize;
        if l <= 1 {
            return vec![1.0];
        }
        let mut k: Vec<f64> = (0..l).map(|i| time_profile(i as f64 * self.grid.ht() / w)).collect();
        let sum: f64 = k.iter().sum();
        for v in k.iter_mut() {
            *v /= sum;
        }
        k
    }

    pub fn apply(&self, u: &ScalarField, theta: f64) -> Result<ScalarField> {
        self.check_theta(theta)?;
        let g = &self.grid;
        // time
        let kernel = self.time_kernel(theta);
        let data = ops::causal_convolve_t4(&u.data, &kernel, u.past_vanishing);
        // tangential
        let data = ops::tangential_map4(&data, g, |k2, k3| {
            let kn = (k2 * k2 + k3 * k3).sqrt();
            num_complex::Complex64::new(lowpass_symbol(kn / theta), 0.0)
        });
        // x1 (cosine basis = even reflection + mollification)
        let mut out = ScalarField { grid: *g, data, past_vanishing: u.past_vanishing };
        for it in 0..g.nt {
            let frame = out.data.index_axis(ndarray::Axis(0), it).to_owned();
            let sm = ops::cosine_map_x1(&frame, g, |kappa| lowpass_symbol(kappa / theta));
            out.data.index_axis_mut(ndarray::Axis(0), it).assign(&sm);
        }
        if out.past_vanishing {
            // The construction is causal; pin the t = 0 samples exactly.
            out.data.index_axis_mut(ndarray::Axis(0), 0).map_inplace(|v| *v = 0.0);
        }
        Ok(out)
    }

    pub fn apply_state(&self, u: &StateField, theta: f64) -> Result<StateField> {
        self.check_theta(theta)?;
        let mut out = u.clone();
        for c in 0..NCOMP {
            let sc = self.apply(&u.component(c), theta)?;
            out.set_component(c, &sc);
        }
        Ok(out)
    }

    pub fn apply_boundary(&self, g_field: &BoundaryField, theta: f64) -> Result<BoundaryField> {
        self.check_theta(theta)?;
        let g = &self.grid;
        let kernel = self.time_kernel(theta);
        let data = ops::causal_convolve_t3(&g_field.data, &kernel, g_field.past_vanishing);
        let data = ops::tangential_map3(&data, g, |k2, k3| {
            let kn = (k2 * k2 + k3 * k3).sqrt();
            num_complex::Complex64::new(lowpass_symbol(kn / theta), 0.0)
        });
        let mut out = BoundaryField { grid: *g, data, past_vanishing: g_field.past_vanishing };
        if out.past_vanishing {
            out.data.index_axis_mut(ndarray::Axis(0), 0).map_inplace(|v| *v = 0.0);
        }
        Ok(out)
    }

    /// d/dtheta S_theta u by a centered difference in theta.
    pub fn theta_derivative(&self, u: &ScalarField, theta: f64) -> Result<ScalarField> {
        let d = 1e-3 * theta;
        let hi = self.apply(u, theta + d)?;
        let lo = self.apply(u, theta - d)?;
        let mut out = hi;
        out.axpy(-1.0, &lo);
        Ok(out.scaled(1.0 / (2.0 * d)))
    }
}

/// Empirical constants for the three mollifier properties, fitted over a
/// corpus and a theta sweep.
#[derive(Clone, Debug)]
pub struct SmoothingReport {
    pub alpha: usize,
    pub beta: usize,
    pub thetas: Vec<f64>,
    /// max-over-corpus ratios per theta, before dividing the theta power out.
    pub raw_bound: Vec<f64>,
    pub raw_error: Vec<f64>,
    pub raw_deriv: Vec<f64>,
    /// Fitted constants (theta power divided out).
    pub c_bound: Vec<f64>,
    pub c_error: Vec<f64>,
    pub c_deriv: Vec<f64>,
    /// Log-log slopes of the raw quantities against theta.
    pub slope_bound: f64,
    pub slope_error: f64,
    pub slope_deriv: f64,
}

pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys.iter())
        .filter(|(_, y)| **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Measure properties of the family over a corpus: the boundedness ratio
/// ||S u||_beta <= C theta^{(beta-alpha)+} ||u||_alpha, the approximation
/// error ||S u - u||_beta <= C theta^{beta-alpha} ||u||_alpha (beta <= alpha),
/// and the theta-derivative bound with exponent beta - alpha - 1.
pub fn measure_smoothing_properties(
    family: &SmoothingFamily,
    corpus: &[ScalarField],
    thetas: &[f64],
    alpha: usize,
    beta: usize,
) -> Result<SmoothingReport> {
    if corpus.is_empty() {
        return Err(VfError::Parameter("empty smoothing corpus".into()));
    }
    super::norms::sobolev_norm(&corpus[0], alpha.max(beta))?;
    let mut raw_bound = Vec::new();
    let mut raw_error = Vec::new();
    let mut raw_deriv = Vec::new();
    for &theta in thetas {
        let mut rb: f64 = 0.0;
        let mut re: f64 = 0.0;
        let mut rd: f64 = 0.0;
        for u in corpus {
            let na = super::norms::sobolev_norm(u, alpha)?;
            if na == 0.0 {
                continue;
            }
            let su = family.apply(u, theta)?;
            rb = rb.max(super::norms::sobolev_norm(&su, beta)? / na);
            if beta <= alpha {
                let mut diff = su.clone();
                diff.axpy(-1.0, u);
                re = re.max(super::norms::sobolev_norm(&diff, beta)? / na);
            }
            let du = family.theta_derivative(u, theta)?;
            rd = rd.max(super::norms::sobolev_norm(&du, beta)? / na);
        }
        raw_bound.push(rb);
        raw_error.push(re);
        raw_deriv.push(rd);
    }
    let bp = (beta as f64 - alpha as f64).max(0.0);
    let c_bound: Vec<f64> = thetas.iter().zip(&raw_bound).map(|(t, r)| r / t.powf(bp)).collect();
    let c_error: Vec<f64> = thetas
        .iter()
        .zip(&raw_error)
        .map(|(t, r)| r / t.powf(beta as f64 - alpha as f64))
        .collect();
    let c_deriv: Vec<f64> = thetas
        .iter()
        .zip(&raw_deriv)
        .map(|(t, r)| r / t.powf(beta as f64 - alpha as f64 - 1.0))
        .collect();
    Ok(SmoothingReport {
        alpha,
        beta,
        thetas: thetas.to_vec(),
        slope_bound: loglog_slope(thetas, &raw_bound),
        slope_error: loglog_slope(thetas, &raw_error),
        slope_deriv: loglog_slope(thetas, &raw_deriv),
        raw_bound,
        raw_error,
        raw_deriv,
        c_bound,
        c_error,
        c_deriv,
    })
}
