//! The slowly-growing regularization schedule theta_n = sqrt(theta0 + n).

use crate::error::{Result, VfError};

#[derive(Clone, Debug)]
pub struct ThetaSchedule {
    pub theta0: f64,
    thetas: Vec<f64>,
    deltas: Vec<f64>,
}

impl ThetaSchedule {
    pub fn theta(&self, n: usize) -> f64 {
        self.thetas[n]
    }
    pub fn delta(&self, n: usize) -> f64 {
        self.deltas[n]
    }
    pub fn len(&self) -> usize {
        self.deltas.len()
    }
    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// Materialize theta_n = sqrt(theta0 + n) and the differences
/// Delta_n = theta_{n+1} - theta_n for n <= n_max, verifying the bracket
/// 1/(3 theta_n) <= Delta_n <= 1/(2 theta_n) at every index.
pub fn theta_schedule(theta0: f64, n_max: usize) -> Result<ThetaSchedule> {
    if theta0 < 1.0 {
        return Err(VfError::Parameter(format!("theta0 must be >= 1, got {theta0}")));
    }
    let mut thetas = Vec::with_capacity(n_max + 2);
    for n in 0..=n_max + 1 {
        thetas.push((theta0 + n as f64).sqrt());
    }
    let mut deltas = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let d = thetas[n + 1] - thetas[n];
        let th = thetas[n];
        if !(1.0 / (3.0 * th) <= d && d <= 1.0 / (2.0 * th)) {
            return Err(VfError::Parameter(format!(
                "schedule bracket violated at n = {n}: theta = {th}, delta = {d}"
            )));
        }
        if n > 0 && d >= deltas[n - 1] {
            return Err(VfError::Parameter(format!("delta not strictly decreasing at n = {n}")));
        }
        deltas.push(d);
    }
    Ok(ThetaSchedule { theta0, thetas, deltas })
}
