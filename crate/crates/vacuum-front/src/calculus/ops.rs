//! Discrete derivative machinery: finite differences along the bounded axes
//! (t and x1) and Fourier multipliers along the periodic tangential axes.
//!
//! Every array layout in this crate keeps (x2, x3) as the trailing axes, so
//! all tangential transforms funnel through one routine on an (m, n2, n3)
//! reshape.

use ndarray::{Array3, Array4, ArrayViewMut3, Axis};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::grid::Grid;

/// Finite-difference scheme selector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FdScheme {
    /// Second order centered, first-order one-sided closures (SBP pair with
    /// the trapezoidal weights).
    Order2,
    /// Fourth order centered with fourth-order one-sided closures.
    Order4,
}

/// Boundary handling on the *left* end of a lane. The right end always uses
/// one-sided closures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LeftEnd {
    OneSided,
    /// Read zeros beyond the left end: the zero-extension convention for
    /// fields vanishing in the past.
    ZeroGhost,
}

pub fn fd_lane(input: &[f64], out: &mut [f64], h: f64, scheme: FdScheme, left: LeftEnd) {
    let n = input.len();
    let at = |i: isize| -> f64 {
        if i < 0 {
            match left {
                LeftEnd::ZeroGhost => 0.0,
                LeftEnd::OneSided => unreachable!(),
            }
        } else {
            input[i as usize]
        }
    };
    match scheme {
        FdScheme::Order2 => {
            for i in 0..n {
                out[i] = if i == 0 {
                    match left {
                        LeftEnd::OneSided => (input[1] - input[0]) / h,
                        LeftEnd::ZeroGhost => (input[1] - 0.0) / (2.0 * h),
                    }
                } else if i == n - 1 {
                    (input[n - 1] - input[n - 2]) / h
                } else {
                    (input[i + 1] - input[i - 1]) / (2.0 * h)
                };
            }
        }
        FdScheme::Order4 => {
            let c = 1.0 / (12.0 * h);
            for i in 0..n {
                let ii = i as isize;
                out[i] = if (2..n - 2).contains(&i) || (left == LeftEnd::ZeroGhost && i < n - 2) {
                    c * (-at(ii + 2) + 8.0 * at(ii + 1) - 8.0 * at(ii - 1) + at(ii - 2))
                } else if i == 0 {
                    c * (-25.0 * input[0] + 48.0 * input[1] - 36.0 * input[2] + 16.0 * input[3]
                        - 3.0 * input[4])
                } else if i == 1 {
                    c * (-3.0 * input[0] - 10.0 * input[1] + 18.0 * input[2] - 6.0 * input[3]
                        + input[4])
                } else if i == n - 2 {
                    -c * (-3.0 * input[n - 1] - 10.0 * input[n - 2] + 18.0 * input[n - 3]
                        - 6.0 * input[n - 4]
                        + input[n - 5])
                } else {
                    -c * (-25.0 * input[n - 1] + 48.0 * input[n - 2] - 36.0 * input[n - 3]
                        + 16.0 * input[n - 4]
                        - 3.0 * input[n - 5])
                };
            }
        }
    }
}

/// Derivative of a 4-d array along `axis`.
pub fn fd_axis4(a: &Array4<f64>, axis: usize, h: f64, scheme: FdScheme, left: LeftEnd) -> Array4<f64> {
    let mut out = a.clone();
    let mut buf_in = Vec::new();
    let mut buf_out = Vec::new();
    for (lane, mut lane_out) in a.lanes(Axis(axis)).into_iter().zip(out.lanes_mut(Axis(axis))) {
        buf_in.clear();
        buf_in.extend(lane.iter());
        buf_out.resize(buf_in.len(), 0.0);
        fd_lane(&buf_in, &mut buf_out, h, scheme, left);
        for (o, v) in lane_out.iter_mut().zip(buf_out.iter()) {
            *o = *v;
        }
    }
    out
}

pub fn fd_axis3(a: &Array3<f64>, axis: usize, h: f64, scheme: FdScheme, left: LeftEnd) -> Array3<f64> {
    let mut out = a.clone();
    let mut buf_in = Vec::new();
    let mut buf_out = Vec::new();
    for (lane, mut lane_out) in a.lanes(Axis(axis)).into_iter().zip(out.lanes_mut(Axis(axis))) {
        buf_in.clear();
        buf_in.extend(lane.iter());
        buf_out.resize(buf_in.len(), 0.0);
        fd_lane(&buf_in, &mut buf_out, h, scheme, left);
        for (o, v) in lane_out.iter_mut().zip(buf_out.iter()) {
            *o = *v;
        }
    }
    out
}

fn fft_plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

fn fft_axis(buf: &mut ArrayViewMut3<Complex64>, axis: usize, inverse: bool) {
    let n = buf.shape()[axis];
    if n == 1 {
        return;
    }
    let plan = fft_plan(n, inverse);
    let mut scratch = vec![Complex64::default(); n];
    for mut lane in buf.lanes_mut(Axis(axis)) {
        for (s, v) in scratch.iter_mut().zip(lane.iter()) {
            *s = *v;
        }
        plan.process(&mut scratch);
        for (v, s) in lane.iter_mut().zip(scratch.iter()) {
            *v = *s;
        }
    }
}

/// Apply a tangential Fourier multiplier `f(k2, k3)` to an (m, n2, n3) block.
fn tangential_apply_inner(
    block: &mut Array3<Complex64>,
    grid: &Grid,
    f: &dyn Fn(f64, f64) -> Complex64,
) {
    let (_, n2, n3) = block.dim();
    fft_axis(&mut block.view_mut(), 1, false);
    if grid.d == 2 {
        fft_axis(&mut block.view_mut(), 2, false);
    }
    for j2 in 0..n2 {
        let k2 = grid.k2(j2);
        for j3 in 0..n3 {
            let k3 = grid.k3(j3);
            let m = f(k2, k3);
            for v in block.slice_mut(ndarray::s![.., j2, j3]).iter_mut() {
                *v *= m;
            }
        }
    }
    fft_axis(&mut block.view_mut(), 1, true);
    if grid.d == 2 {
        fft_axis(&mut block.view_mut(), 2, true);
    }
    let scale = 1.0 / (n2 as f64 * if grid.d == 2 { n3 as f64 } else { 1.0 });
    block.mapv_inplace(|v| v * scale);
}

/// Forward tangential FFT of a flat standard-layout block with `m` leading
/// rows; used by the norm machinery (Parseval sums).
pub fn forward_spectrum(flat: &[f64], m: usize, grid: &Grid) -> Array3<Complex64> {
    let mut block = Array3::from_shape_vec(
        (m, grid.n2, grid.n3),
        flat.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
    )
    .unwrap();
    fft_axis(&mut block.view_mut(), 1, false);
    if grid.d == 2 {
        fft_axis(&mut block.view_mut(), 2, false);
    }
    block
}

macro_rules! tangential_map_impl {
    ($name:ident, $arr:ty) => {
        /// Tangential multiplier on an array whose trailing axes are (x2, x3).
        pub fn $name(a: &$arr, grid: &Grid, f: impl Fn(f64, f64) -> Complex64) -> $arr {
            let dims = a.raw_dim();
            let n2 = grid.n2;
            let n3 = grid.n3;
            let m: usize = a.len() / (n2 * n3);
            let std = a.as_standard_layout();
            let flat: Vec<Complex64> = std.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let mut block = Array3::from_shape_vec((m, n2, n3), flat).unwrap();
            tangential_apply_inner(&mut block, grid, &f);
            let out: Vec<f64> = block.iter().map(|z| z.re).collect();
            <$arr>::from_shape_vec(dims, out).unwrap()
        }
    };
}

tangential_map_impl!(tangential_map4, ndarray::Array4<f64>);
tangential_map_impl!(tangential_map3, ndarray::Array3<f64>);
tangential_map_impl!(tangential_map2, ndarray::Array2<f64>);

/// Spectral x2-derivative (trailing-axes layout).
pub fn d_x2_4(a: &Array4<f64>, grid: &Grid) -> Array4<f64> {
    tangential_map4(a, grid, |k2, _| Complex64::new(0.0, k2))
}
pub fn d_x3_4(a: &Array4<f64>, grid: &Grid) -> Array4<f64> {
    if grid.d == 1 {
        Array4::zeros(a.raw_dim())
    } else {
        tangential_map4(a, grid, |_, k3| Complex64::new(0.0, k3))
    }
}
pub fn d_x2_3(a: &Array3<f64>, grid: &Grid) -> Array3<f64> {
    tangential_map3(a, grid, |k2, _| Complex64::new(0.0, k2))
}
pub fn d_x3_3(a: &Array3<f64>, grid: &Grid) -> Array3<f64> {
    if grid.d == 1 {
        Array3::zeros(a.raw_dim())
    } else {
        tangential_map3(a, grid, |_, k3| Complex64::new(0.0, k3))
    }
}
pub fn d_x2_2(a: &ndarray::Array2<f64>, grid: &Grid) -> ndarray::Array2<f64> {
    tangential_map2(a, grid, |k2, _| Complex64::new(0.0, k2))
}
pub fn d_x3_2(a: &ndarray::Array2<f64>, grid: &Grid) -> ndarray::Array2<f64> {
    if grid.d == 1 {
        ndarray::Array2::zeros(a.raw_dim())
    } else {
        tangential_map2(a, grid, |_, k3| Complex64::new(0.0, k3))
    }
}

/// Cosine-basis multiplier in x1 (even reflection about both walls), with
/// `f(kappa)` evaluated at the cosine wavenumbers kappa_m = pi m / X1.
/// Axis 0 must be x1; trailing axes are untouched.
pub fn cosine_map_x1(a: &Array3<f64>, grid: &Grid, f: impl Fn(f64) -> f64) -> Array3<f64> {
    let (n1, n2, n3) = a.dim();
    let next = 2 * (n1 - 1);
    let plan_f = fft_plan(next, false);
    let plan_i = fft_plan(next, true);
    let mut out = a.clone();
    let mut buf = vec![Complex64::default(); next];
    for j2 in 0..n2 {
        for j3 in 0..n3 {
            for i in 0..n1 {
                buf[i] = Complex64::new(a[[i, j2, j3]], 0.0);
            }
            for i in n1..next {
                buf[i] = Complex64::new(a[[next - i, j2, j3]], 0.0);
            }
            plan_f.process(&mut buf);
            for (m, v) in buf.iter_mut().enumerate() {
                let mm = if m <= next / 2 { m } else { next - m };
                let kappa = std::f64::consts::PI * mm as f64 / grid.x1_max;
                *v *= f(kappa);
            }
            plan_i.process(&mut buf);
            for i in 0..n1 {
                out[[i, j2, j3]] = buf[i].re / next as f64;
            }
        }
    }
    out
}

/// Causal discrete convolution along axis 0 (time). `kernel[0]` multiplies the
/// current sample, `kernel[l]` the sample l steps in the past. Samples before
/// t = 0 read zero when `zero_past` and clamp to the first frame otherwise.
pub fn causal_convolve_t4(a: &Array4<f64>, kernel: &[f64], zero_past: bool) -> Array4<f64> {
    let (nt, n1, n2, n3) = a.dim();
    let mut out = Array4::zeros((nt, n1, n2, n3));
    for it in 0..nt {
        for (l, &w) in kernel.iter().enumerate() {
            let src = it as isize - l as isize;
            if src >= 0 {
                let frame = a.index_axis(Axis(0), src as usize);
                out.index_axis_mut(Axis(0), it).zip_mut_with(&frame, |o, v| *o += w * v);
            } else if !zero_past {
                let frame = a.index_axis(Axis(0), 0);
                out.index_axis_mut(Axis(0), it).zip_mut_with(&frame, |o, v| *o += w * v);
            }
        }
    }
    out
}

pub fn causal_convolve_t3(a: &Array3<f64>, kernel: &[f64], zero_past: bool) -> Array3<f64> {
    let (nt, n2, n3) = a.dim();
    let mut out = Array3::zeros((nt, n2, n3));
    for it in 0..nt {
        for (l, &w) in kernel.iter().enumerate() {
            let src = it as isize - l as isize;
            if src >= 0 {
                let frame = a.index_axis(Axis(0), src as usize);
                out.index_axis_mut(Axis(0), it).zip_mut_with(&frame, |o, v| *o += w * v);
            } else if !zero_past {
                let frame = a.index_axis(Axis(0), 0);
                out.index_axis_mut(Axis(0), it).zip_mut_with(&frame, |o, v| *o += w * v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array1;

    #[test]
    fn fd4_differentiates_quartics_exactly() {
        let n = 12;
        let h = 0.1;
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let f: Vec<f64> = xs.iter().map(|x| 1.0 + x + x.powi(2) - 0.5 * x.powi(3) + 0.25 * x.powi(4)).collect();
        let df: Vec<f64> = xs.iter().map(|x| 1.0 + 2.0 * x - 1.5 * x.powi(2) + x.powi(3)).collect();
        let mut out = vec![0.0; n];
        fd_lane(&f, &mut out, h, FdScheme::Order4, LeftEnd::OneSided);
        for i in 0..n {
            assert!((out[i] - df[i]).abs() < 1e-10, "i={i}: {} vs {}", out[i], df[i]);
        }
    }

    #[test]
    fn spectral_x2_derivative_is_exact_on_modes() {
        let g = Grid::slab_1d(5, 16, 5, 1.0, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let mut a = Array3::zeros((g.nt, g.n2, g.n3));
        for it in 0..g.nt {
            for j in 0..g.n2 {
                a[[it, j, 0]] = (3.0 * g.x2(j)).sin();
            }
        }
        let d = d_x2_3(&a, &g);
        for it in 0..g.nt {
            for j in 0..g.n2 {
                let expect = 3.0 * (3.0 * g.x2(j)).cos();
                assert!((d[[it, j, 0]] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cosine_map_identity_and_kill() {
        let g = Grid::slab_1d(17, 4, 5, 2.0, 1.0, 1.0).unwrap();
        let mut a = Array3::zeros((g.n1, g.n2, 1));
        for i in 0..g.n1 {
            let x = g.x1(i);
            for j in 0..g.n2 {
                a[[i, j, 0]] = (std::f64::consts::PI * 3.0 * x / g.x1_max).cos() + 0.5;
            }
        }
        let id = cosine_map_x1(&a, &g, |_| 1.0);
        for (u, v) in id.iter().zip(a.iter()) {
            assert!((u - v).abs() < 1e-12);
        }
        // Killing every nonzero mode leaves the mean of the even extension.
        let lo = cosine_map_x1(&a, &g, |k| if k == 0.0 { 1.0 } else { 0.0 });
        for v in lo.iter() {
            assert!((v - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn causal_convolution_preserves_past_vanishing() {
        let a = {
            let mut a = Array3::zeros((8, 2, 1));
            for it in 4..8 {
                a[[it, 0, 0]] = it as f64;
                a[[it, 1, 0]] = 1.0;
            }
            a
        };
        let k = [0.5, 0.3, 0.2];
        let out = causal_convolve_t3(&a, &k, true);
        for it in 0..4 {
            assert_eq!(out[[it, 0, 0]], 0.0);
        }
        // And a constant-in-time field is reproduced with clamped reads.
        let ones = Array3::from_elem((8, 2, 1), 2.5);
        let rep = causal_convolve_t3(&ones, &k, false);
        for v in rep.iter() {
            assert!((v - 2.5).abs() < 1e-15);
        }
        let _ = Array1::<f64>::zeros(1);
    }
}
