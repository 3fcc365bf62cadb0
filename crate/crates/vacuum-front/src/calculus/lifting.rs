//! Boundary-to-interior lifting: trace-exact extension of boundary data with
//! per-mode exponential decay in x1, cut off by the same bump used for the
//! front lift so the far field stays clean.

use num_complex::Complex64;

use crate::error::Result;
use crate::field::{BoundaryField, ScalarField};
use crate::geometry::CutoffChi;

use super::ops;

/// Lift boundary data g(t, x') to the interior: per tangential mode k',
/// u(t, x1, k') = g_hat(t, k') exp(-<k'> x1) chi(x1), so the trace at x1 = 0
/// is exact and high modes decay on the scale 1/|k'|. Time is untouched,
/// hence past-vanishing data lifts to past-vanishing fields sample-exactly.
pub fn lifting_operator(g: &BoundaryField, chi: &CutoffChi) -> Result<ScalarField> {
    let grid = g.grid;
    let mut out = ScalarField::zeros(grid);
    out.past_vanishing = g.past_vanishing;
    for i in 0..grid.n1 {
        let x1 = grid.x1(i);
        let chix = chi.eval(x1);
        if chix == 0.0 {
            continue;
        }
        let lifted = ops::tangential_map3(&g.data, &grid, |k2, k3| {
            let kn = (1.0 + k2 * k2 + k3 * k3).sqrt();
            Complex64::new((-kn * x1).exp() * chix, 0.0)
        });
        out.data.index_axis_mut(ndarray::Axis(1), i).assign(&lifted);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::norms;
    use crate::geometry::make_cutoff;
    use crate::grid::Grid;

    fn onset(t: f64) -> f64 {
        let x = (t - 0.05) / 0.3;
        if x <= 0.0 {
            0.0
        } else if x >= 1.0 {
            1.0
        } else {
            let b = |y: f64| (-1.0 / y).exp();
            b(x) / (b(x) + b(1.0 - x))
        }
    }

    #[test]
    fn zero_data_lifts_to_zero() {
        let grid = Grid::slab_1d(17, 16, 17, 2.0, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let chi = make_cutoff(4.0, 2000).unwrap();
        let g = BoundaryField::zeros(grid);
        let u = lifting_operator(&g, &chi).unwrap();
        assert_eq!(u.max_abs(), 0.0);
    }

    #[test]
    fn trace_is_exact_and_past_vanishing_preserved() {
        let grid = Grid::slab_1d(17, 16, 17, 2.0, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let chi = make_cutoff(4.0, 2000).unwrap();
        let g = BoundaryField::from_fn(grid, true, |t, x2, _| onset(t) * x2.sin());
        let u = lifting_operator(&g, &chi).unwrap();
        assert!(u.past_vanishing);
        let mut err: f64 = 0.0;
        for it in 0..grid.nt {
            for j in 0..grid.n2 {
                err = err.max((u.data[[it, 0, j, 0]] - g.data[[it, j, 0]]).abs());
            }
        }
        assert!(err < 1e-12, "trace error {err}");
        for j in 0..grid.n2 {
            assert_eq!(u.data[[0, 5, j, 0]], 0.0);
        }
    }

    #[test]
    fn norm_gain_is_mode_uniform() {
        // H^{s+1}(interior) / H^s(boundary) stays bounded across mode numbers
        // because the decay scale tracks 1/|k|.
        let grid = Grid::slab_1d(33, 32, 17, 2.0, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let chi = make_cutoff(4.0, 2000).unwrap();
        let s = 2;
        let mut ratios = Vec::new();
        for k in [1usize, 2, 4, 8, 12] {
            let g = BoundaryField::from_fn(grid, true, |t, x2, _| onset(t) * (k as f64 * x2).sin());
            let u = lifting_operator(&g, &chi).unwrap();
            let hi = norms::sobolev_norm(&u, s + 1).unwrap();
            let lo = norms::sobolev_norm_boundary(&g, s).unwrap();
            ratios.push(hi / lo);
        }
        let max = ratios.iter().cloned().fold(0.0f64, f64::max);
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min < 8.0, "ratios {ratios:?}");
    }
}
