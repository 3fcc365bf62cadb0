//! Grid fields: fixed-time slabs, space-time fields over the slab, and
//! fields on the boundary x1 = 0. Space-time fields carry the
//! "vanishes in the past" flag (zero-extension for t < 0).

use ndarray::{Array2, Array3, Array4, Array5, Axis};

use crate::grid::Grid;

pub const NCOMP: usize = 5;

/// Scalar field on the spatial slab at a fixed time.
#[derive(Clone, Debug)]
pub struct SlabScalar {
    pub grid: Grid,
    /// [x1, x2, x3]
    pub data: Array3<f64>,
}

/// Five-component state on the spatial slab at a fixed time.
#[derive(Clone, Debug)]
pub struct SlabState {
    pub grid: Grid,
    /// [component, x1, x2, x3]
    pub data: Array4<f64>,
}

/// Scalar field on the space-time slab.
#[derive(Clone, Debug)]
pub struct ScalarField {
    pub grid: Grid,
    /// [t, x1, x2, x3]
    pub data: Array4<f64>,
    pub past_vanishing: bool,
}

/// Five-component field on the space-time slab.
#[derive(Clone, Debug)]
pub struct StateField {
    pub grid: Grid,
    /// [t, component, x1, x2, x3]
    pub data: Array5<f64>,
    pub past_vanishing: bool,
}

/// Scalar field on the space-time boundary (x1 = 0).
#[derive(Clone, Debug)]
pub struct BoundaryField {
    pub grid: Grid,
    /// [t, x2, x3]
    pub data: Array3<f64>,
    pub past_vanishing: bool,
}

/// Scalar field on the boundary at a fixed time.
#[derive(Clone, Debug)]
pub struct BoundarySlab {
    pub grid: Grid,
    /// [x2, x3]
    pub data: Array2<f64>,
}

impl SlabScalar {
    pub fn zeros(grid: Grid) -> Self {
        SlabScalar { grid, data: Array3::zeros((grid.n1, grid.n2, grid.n3)) }
    }
    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64, f64, f64) -> f64) -> Self {
        let mut s = Self::zeros(grid);
        for i in 0..grid.n1 {
            for j in 0..grid.n2 {
                for k in 0..grid.n3 {
                    s.data[[i, j, k]] = f(grid.x1(i), grid.x2(j), grid.x3(k));
                }
            }
        }
        s
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
    pub fn l2(&self) -> f64 {
        let g = &self.grid;
        let mut acc = 0.0;
        for i in 0..g.n1 {
            let w = g.w1(i) * g.w_tan();
            for j in 0..g.n2 {
                for k in 0..g.n3 {
                    acc += w * self.data[[i, j, k]].powi(2);
                }
            }
        }
        acc.sqrt()
    }
}

impl SlabState {
    pub fn zeros(grid: Grid) -> Self {
        SlabState { grid, data: Array4::zeros((NCOMP, grid.n1, grid.n2, grid.n3)) }
    }
    pub fn component(&self, c: usize) -> SlabScalar {
        SlabScalar { grid: self.grid, data: self.data.index_axis(Axis(0), c).to_owned() }
    }
    pub fn set_component(&mut self, c: usize, s: &SlabScalar) {
        self.data.index_axis_mut(Axis(0), c).assign(&s.data);
    }
    pub fn point(&self, i: usize, j: usize, k: usize) -> [f64; NCOMP] {
        let mut u = [0.0; NCOMP];
        for (c, uc) in u.iter_mut().enumerate() {
            *uc = self.data[[c, i, j, k]];
        }
        u
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
    pub fn l2(&self) -> f64 {
        let g = &self.grid;
        let mut acc = 0.0;
        for c in 0..NCOMP {
            for i in 0..g.n1 {
                let w = g.w1(i) * g.w_tan();
                for j in 0..g.n2 {
                    for k in 0..g.n3 {
                        acc += w * self.data[[c, i, j, k]].powi(2);
                    }
                }
            }
        }
        acc.sqrt()
    }
    pub fn axpy(&mut self, a: f64, x: &SlabState) {
        self.data.zip_mut_with(&x.data, |u, v| *u += a * v);
    }
}

impl ScalarField {
    pub fn zeros(grid: Grid) -> Self {
        ScalarField {
            grid,
            data: Array4::zeros((grid.nt, grid.n1, grid.n2, grid.n3)),
            past_vanishing: true,
        }
    }
    pub fn from_fn(grid: Grid, past_vanishing: bool, mut f: impl FnMut(f64, f64, f64, f64) -> f64) -> Self {
        let mut s = Self::zeros(grid);
        s.past_vanishing = past_vanishing;
        for it in 0..grid.nt {
            for i in 0..grid.n1 {
                for j in 0..grid.n2 {
                    for k in 0..grid.n3 {
                        s.data[[it, i, j, k]] = f(grid.t(it), grid.x1(i), grid.x2(j), grid.x3(k));
                    }
                }
            }
        }
        s
    }
    pub fn frame(&self, it: usize) -> SlabScalar {
        SlabScalar { grid: self.grid, data: self.data.index_axis(Axis(0), it).to_owned() }
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
    pub fn axpy(&mut self, a: f64, x: &ScalarField) {
        self.data.zip_mut_with(&x.data, |u, v| *u += a * v);
    }
    pub fn scaled(&self, a: f64) -> ScalarField {
        let mut out = self.clone();
        out.data.mapv_inplace(|v| a * v);
        out
    }
}

impl StateField {
    pub fn zeros(grid: Grid) -> Self {
        StateField {
            grid,
            data: Array5::zeros((grid.nt, NCOMP, grid.n1, grid.n2, grid.n3)),
            past_vanishing: true,
        }
    }
    pub fn frame(&self, it: usize) -> SlabState {
        SlabState { grid: self.grid, data: self.data.index_axis(Axis(0), it).to_owned() }
    }
    pub fn set_frame(&mut self, it: usize, s: &SlabState) {
        self.data.index_axis_mut(Axis(0), it).assign(&s.data);
    }
    pub fn component(&self, c: usize) -> ScalarField {
        ScalarField {
            grid: self.grid,
            data: self.data.index_axis(Axis(1), c).to_owned(),
            past_vanishing: self.past_vanishing,
        }
    }
    pub fn set_component(&mut self, c: usize, s: &ScalarField) {
        self.data.index_axis_mut(Axis(1), c).assign(&s.data);
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
    pub fn axpy(&mut self, a: f64, x: &StateField) {
        self.data.zip_mut_with(&x.data, |u, v| *u += a * v);
    }
    pub fn scaled(&self, a: f64) -> StateField {
        let mut out = self.clone();
        out.data.mapv_inplace(|v| a * v);
        out
    }
    /// Boundary trace (x1 = 0) of one component.
    pub fn trace(&self, c: usize) -> BoundaryField {
        let g = self.grid;
        let mut out = BoundaryField::zeros(g);
        out.past_vanishing = self.past_vanishing;
        for it in 0..g.nt {
            for j in 0..g.n2 {
                for k in 0..g.n3 {
                    out.data[[it, j, k]] = self.data[[it, c, 0, j, k]];
                }
            }
        }
        out
    }
}

impl BoundaryField {
    pub fn zeros(grid: Grid) -> Self {
        BoundaryField { grid, data: Array3::zeros((grid.nt, grid.n2, grid.n3)), past_vanishing: true }
    }
    pub fn from_fn(grid: Grid, past_vanishing: bool, mut f: impl FnMut(f64, f64, f64) -> f64) -> Self {
        let mut s = Self::zeros(grid);
        s.past_vanishing = past_vanishing;
        for it in 0..grid.nt {
            for j in 0..grid.n2 {
                for k in 0..grid.n3 {
                    s.data[[it, j, k]] = f(grid.t(it), grid.x2(j), grid.x3(k));
                }
            }
        }
        s
    }
    pub fn frame(&self, it: usize) -> BoundarySlab {
        BoundarySlab { grid: self.grid, data: self.data.index_axis(Axis(0), it).to_owned() }
    }
    pub fn set_frame(&mut self, it: usize, s: &BoundarySlab) {
        self.data.index_axis_mut(Axis(0), it).assign(&s.data);
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
    pub fn axpy(&mut self, a: f64, x: &BoundaryField) {
        self.data.zip_mut_with(&x.data, |u, v| *u += a * v);
    }
    pub fn scaled(&self, a: f64) -> BoundaryField {
        let mut out = self.clone();
        out.data.mapv_inplace(|v| a * v);
        out
    }
}

impl BoundarySlab {
    pub fn zeros(grid: Grid) -> Self {
        BoundarySlab { grid, data: Array2::zeros((grid.n2, grid.n3)) }
    }
    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut s = Self::zeros(grid);
        for j in 0..grid.n2 {
            for k in 0..grid.n3 {
                s.data[[j, k]] = f(grid.x2(j), grid.x3(k));
            }
        }
        s
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
    pub fn l2(&self) -> f64 {
        let w = self.grid.w_tan();
        (self.data.iter().map(|v| w * v * v).sum::<f64>()).sqrt()
    }
}

/// Two-component boundary data (interior forcing pairs with this in the
/// linearized boundary conditions).
#[derive(Clone, Debug)]
pub struct BoundaryPair {
    pub g1: BoundaryField,
    pub g2: BoundaryField,
}

impl BoundaryPair {
    pub fn zeros(grid: Grid) -> Self {
        BoundaryPair { g1: BoundaryField::zeros(grid), g2: BoundaryField::zeros(grid) }
    }
}
