//! Discrete Sobolev norms on the space-time slab and its boundary.
//!
//! Derivative counting is mixed: finite differences along the bounded axes
//! (t, x1) and the spectral multiplier (1 + |k'|^2)^(s/2) along the periodic
//! tangential axes. The squared H^s norm sums, over all splits j + m <= s,
//!
//!   || D_t^j D_1^m Lambda'^(s-j-m) u ||^2_{L2},
//!
//! which reduces to the plain L2 norm at s = 0 and is monotone in s.

use ndarray::{Array3, Array4};

use super::ops::{self, FdScheme, LeftEnd};
use crate::error::{Result, VfError};
use crate::field::{BoundaryField, ScalarField, SlabScalar, StateField};
use crate::grid::Grid;

/// Hard resolution cap: higher orders are rejected rather than aliased.
pub const S_CAP: usize = 8;

fn check_s(s: usize) -> Result<()> {
    if s > S_CAP {
        Err(VfError::Resolution(format!("Sobolev order s = {s} exceeds the resolvable cap {S_CAP}")))
    } else {
        Ok(())
    }
}

/// Weighted tangential-Parseval sum of |u_hat|^2 (1+|k'|^2)^r with leading
/// weights supplied per leading index.
fn spectral_weighted_sq(block_flat: &[f64], lead_w: &[f64], grid: &Grid, r: usize) -> f64 {
    let m = lead_w.len();
    let spec = ops_forward(block_flat, m, grid);
    let norm = grid.w_tan() / (grid.n2 as f64 * if grid.d == 2 { grid.n3 as f64 } else { 1.0 });
    let mut acc = 0.0;
    for (li, &w) in lead_w.iter().enumerate() {
        for j2 in 0..grid.n2 {
            let k2 = grid.k2(j2);
            for j3 in 0..grid.n3 {
                let k3 = grid.k3(j3);
                let mult = (1.0 + k2 * k2 + k3 * k3).powi(r as i32);
                acc += w * norm * spec[[li, j2, j3]].norm_sqr() * mult;
            }
        }
    }
    acc
}

fn ops_forward(flat: &[f64], m: usize, grid: &Grid) -> Array3<num_complex::Complex64> {
    ops::forward_spectrum(flat, m, grid)
}

fn lead_weights_interior(grid: &Grid) -> Vec<f64> {
    let mut w = Vec::with_capacity(grid.nt * grid.n1);
    for it in 0..grid.nt {
        for i in 0..grid.n1 {
            w.push(grid.wt(it) * grid.w1(i));
        }
    }
    w
}

fn lead_weights_boundary(grid: &Grid) -> Vec<f64> {
    (0..grid.nt).map(|it| grid.wt(it)).collect()
}

fn lead_weights_slab(grid: &Grid) -> Vec<f64> {
    (0..grid.n1).map(|i| grid.w1(i)).collect()
}

fn dt4(a: &Array4<f64>, grid: &Grid, past_vanishing: bool) -> Array4<f64> {
    let left = if past_vanishing { LeftEnd::ZeroGhost } else { LeftEnd::OneSided };
    ops::fd_axis4(a, 0, grid.ht(), FdScheme::Order4, left)
}

fn d1_4(a: &Array4<f64>, grid: &Grid) -> Array4<f64> {
    ops::fd_axis4(a, 1, grid.h1(), FdScheme::Order4, LeftEnd::OneSided)
}

fn dt3(a: &Array3<f64>, grid: &Grid, past_vanishing: bool) -> Array3<f64> {
    let left = if past_vanishing { LeftEnd::ZeroGhost } else { LeftEnd::OneSided };
    ops::fd_axis3(a, 0, grid.ht(), FdScheme::Order4, left)
}

/// Squared interior H^s norm of a scalar space-time field.
fn sobolev_sq_interior(u: &ScalarField, s: usize) -> f64 {
    let grid = &u.grid;
    let lead = lead_weights_interior(grid);
    let mut total = 0.0;
    let mut dtj = u.data.clone();
    for j in 0..=s {
        if j > 0 {
            dtj = dt4(&dtj, grid, u.past_vanishing);
        }
        let mut d1m = dtj.clone();
        for m in 0..=(s - j) {
            if m > 0 {
                d1m = d1_4(&d1m, grid);
            }
            let r = s - j - m;
            let std = d1m.as_standard_layout();
            total += spectral_weighted_sq(std.as_slice().unwrap(), &lead, grid, r);
        }
    }
    total
}

/// Interior H^s norm of a scalar field.
pub fn sobolev_norm(u: &ScalarField, s: usize) -> Result<f64> {
    check_s(s)?;
    Ok(sobolev_sq_interior(u, s).sqrt())
}

/// Interior H^s norm of a 5-component field (root of the component sum).
pub fn sobolev_norm_state(u: &StateField, s: usize) -> Result<f64> {
    check_s(s)?;
    let mut acc = 0.0;
    for c in 0..crate::field::NCOMP {
        acc += sobolev_sq_interior(&u.component(c), s);
    }
    Ok(acc.sqrt())
}

/// Boundary H^s norm on [0,T] x torus.
pub fn sobolev_norm_boundary(g: &BoundaryField, s: usize) -> Result<f64> {
    check_s(s)?;
    let grid = &g.grid;
    let lead = lead_weights_boundary(grid);
    let mut total = 0.0;
    let mut dtj = g.data.clone();
    for j in 0..=s {
        if j > 0 {
            dtj = dt3(&dtj, grid, g.past_vanishing);
        }
        let r = s - j;
        let std = dtj.as_standard_layout();
        total += spectral_weighted_sq(std.as_slice().unwrap(), &lead, grid, r);
    }
    Ok(total.sqrt())
}

/// Tangential norm: only time and tangential derivatives, |alpha| <= s.
pub fn tangential_norm(u: &ScalarField, s: usize) -> Result<f64> {
    check_s(s)?;
    let grid = &u.grid;
    let lead = lead_weights_interior(grid);
    let mut total = 0.0;
    let mut dtj = u.data.clone();
    for j in 0..=s {
        if j > 0 {
            dtj = dt4(&dtj, grid, u.past_vanishing);
        }
        let r = s - j;
        let std = dtj.as_standard_layout();
        total += spectral_weighted_sq(std.as_slice().unwrap(), &lead, grid, r);
    }
    Ok(total.sqrt())
}

/// Layerwise norm at a fixed time index: sum_{j<=s} ||d_t^j u(t)||^2_{H^s(slab)}.
pub fn layerwise_norm(u: &ScalarField, it: usize, s: usize) -> Result<f64> {
    check_s(s)?;
    let grid = &u.grid;
    if it >= grid.nt {
        return Err(VfError::Parameter(format!("time index {it} out of range")));
    }
    let lead = lead_weights_slab(grid);
    let mut total = 0.0;
    let mut dtj = u.data.clone();
    for j in 0..=s {
        if j > 0 {
            dtj = dt4(&dtj, grid, u.past_vanishing);
        }
        // spatial H^s of the slice at time `it`
        let slice = dtj.index_axis(ndarray::Axis(0), it).to_owned();
        let mut d1m = slice;
        for m in 0..=s {
            if m > 0 {
                d1m = ops::fd_axis3(&d1m, 0, grid.h1(), FdScheme::Order4, LeftEnd::OneSided);
            }
            let r = s - m;
            let std = d1m.as_standard_layout();
            total += spectral_weighted_sq(std.as_slice().unwrap(), &lead, grid, r);
        }
    }
    Ok(total.sqrt())
}

/// Spatial H^s norm of a slab field (no time axis).
pub fn slab_sobolev_norm(u: &SlabScalar, s: usize) -> Result<f64> {
    check_s(s)?;
    let grid = &u.grid;
    let lead = lead_weights_slab(grid);
    let mut total = 0.0;
    let mut d1m = u.data.clone();
    for m in 0..=s {
        if m > 0 {
            d1m = ops::fd_axis3(&d1m, 0, grid.h1(), FdScheme::Order4, LeftEnd::OneSided);
        }
        let r = s - m;
        let std = d1m.as_standard_layout();
        total += spectral_weighted_sq(std.as_slice().unwrap(), &lead, grid, r);
    }
    Ok(total.sqrt())
}

/// Plain space-time L2 norm.
pub fn l2_norm(u: &ScalarField) -> f64 {
    sobolev_sq_interior(u, 0).sqrt()
}

pub fn l2_norm_state(u: &StateField) -> f64 {
    sobolev_norm_state(u, 0).expect("s = 0 is always resolvable")
}

pub fn l2_norm_boundary(g: &BoundaryField) -> f64 {
    sobolev_norm_boundary(g, 0).expect("s = 0 is always resolvable")
}

/// Smallest constant C with ||uv||_s <= C (||u||_s ||v||_inf + ||u||_inf ||v||_s)
/// for the given pair; 0 when both sides vanish.
pub fn moser_check(u: &ScalarField, v: &ScalarField, s: usize) -> Result<f64> {
    check_s(s)?;
    let mut prod = u.clone();
    prod.data.zip_mut_with(&v.data, |a, b| *a *= *b);
    prod.past_vanishing = u.past_vanishing || v.past_vanishing;
    let lhs = sobolev_norm(&prod, s)?;
    let rhs = sobolev_norm(u, s)? * v.max_abs() + u.max_abs() * sobolev_norm(v, s)?;
    if rhs == 0.0 {
        return Ok(0.0);
    }
    Ok(lhs / rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ScalarField;

    fn grid() -> Grid {
        Grid::slab_1d(9, 16, 9, 1.0, 2.0 * std::f64::consts::PI, 1.0).unwrap()
    }

    #[test]
    fn zero_field_has_zero_norm() {
        let u = ScalarField::zeros(grid());
        for s in 0..=4 {
            assert_eq!(sobolev_norm(&u, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn single_tangential_mode_ratio() {
        // f = sin(x2): ||f||_{H^1}^2 / ||f||_{L2}^2 = (1 + 1) / 1 = 2.
        let g = grid();
        let u = ScalarField::from_fn(g, false, |_, _, x2, _| x2.sin());
        let n0 = sobolev_norm(&u, 0).unwrap();
        let n1 = sobolev_norm(&u, 1).unwrap();
        assert!(((n1 / n0).powi(2) - 2.0).abs() < 1e-10, "ratio^2 = {}", (n1 / n0).powi(2));
    }

    #[test]
    fn monotone_in_s_on_random_fields() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = grid();
        for _ in 0..20 {
            let a: f64 = rng.gen_range(0.2..2.0);
            let k: usize = rng.gen_range(1..4);
            let u = ScalarField::from_fn(g, false, |t, x1, x2, _| {
                a * (k as f64 * x2).cos() * (1.0 + t) * (x1 - 0.3).powi(2)
            });
            let n2 = sobolev_norm(&u, 2).unwrap();
            let n3 = sobolev_norm(&u, 3).unwrap();
            assert!(n3 >= n2);
        }
    }

    #[test]
    fn tangential_norm_ignores_x1_variation() {
        let g = grid();
        let u = ScalarField::from_fn(g, false, |_, x1, _, _| (2.0 * x1).exp());
        for s in 0..=3 {
            let tn = tangential_norm(&u, s).unwrap();
            let l2 = l2_norm(&u);
            assert!((tn - l2).abs() < 1e-10 * l2);
        }
    }

    #[test]
    fn tangential_norm_sees_time_variation() {
        let g = grid();
        let u = ScalarField::from_fn(g, false, |t, x1, _, _| x1 * t.sin());
        let t0 = tangential_norm(&u, 0).unwrap();
        let t1 = tangential_norm(&u, 1).unwrap();
        assert!(t1 > t0 * 1.05);
    }

    #[test]
    fn moser_constant_with_unit_v() {
        let g = grid();
        let u = ScalarField::from_fn(g, false, |t, x1, x2, _| (x2.sin() + 0.3 * t) * (1.0 - x1));
        let v = ScalarField::from_fn(g, false, |_, _, _, _| 1.0);
        let c = moser_check(&u, &v, 2).unwrap();
        assert!(c > 0.0 && c <= 1.0, "C = {c}");
        let z = ScalarField::zeros(g);
        assert_eq!(moser_check(&z, &z, 2).unwrap(), 0.0);
    }

    #[test]
    fn resolution_cap_enforced() {
        let u = ScalarField::zeros(grid());
        assert!(matches!(sobolev_norm(&u, 9), Err(VfError::Resolution(_))));
    }

    #[test]
    fn norm_converges_under_refinement() {
        // For an analytic field the discrete H^3 norm moves by well under 1%
        // when the grid is refined 2x.
        let g1 = grid();
        let g2 = g1.refined(2);
        let f = |t: f64, x1: f64, x2: f64, _: f64| (x2.sin() + 0.5 * (t - 0.4).powi(2)) * (1.0 + 0.5 * x1).ln();
        let u1 = ScalarField::from_fn(g1, false, f);
        let u2 = ScalarField::from_fn(g2, false, f);
        let n1 = sobolev_norm(&u1, 3).unwrap();
        let n2 = sobolev_norm(&u2, 3).unwrap();
        assert!((n2 - n1).abs() / n1 < 0.01, "relative drift {}", (n2 - n1).abs() / n1);
    }
}
