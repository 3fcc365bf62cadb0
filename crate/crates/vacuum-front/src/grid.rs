//! Computational grid: a truncated slab `[0, X1] x T^d` in space (periodic
//! tangential directions, `d` in {1, 2}) and a uniform time axis `[0, T]`.
//! Fields that "vanish in the past" are extended by zero for t < 0.

use serde::{Deserialize, Serialize};

use crate::error::{Result, VfError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    /// Number of tangential dimensions (1 or 2). With `d = 1` the x3 axis
    /// collapses to a single point and all x3-derivatives vanish.
    pub d: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub nt: usize,
    /// Slab depth: x1 in [0, x1_max].
    pub x1_max: f64,
    /// Tangential periods.
    pub len2: f64,
    pub len3: f64,
    /// Time horizon: t in [0, t_max].
    pub t_max: f64,
}

impl Grid {
    pub fn new(d: usize, n1: usize, n2: usize, n3: usize, nt: usize, x1_max: f64, len2: f64, len3: f64, t_max: f64) -> Result<Self> {
        if d != 1 && d != 2 {
            return Err(VfError::Parameter(format!("tangential dimension d must be 1 or 2, got {d}")));
        }
        if d == 1 && n3 != 1 {
            return Err(VfError::Parameter("n3 must be 1 when d = 1".into()));
        }
        if n1 < 5 || n2 < 4 || nt < 5 || (d == 2 && n3 < 4) {
            return Err(VfError::Parameter("grid too small (need n1 >= 5, n2 >= 4, nt >= 5)".into()));
        }
        if x1_max <= 0.0 || len2 <= 0.0 || len3 <= 0.0 || t_max <= 0.0 {
            return Err(VfError::Parameter("grid extents must be positive".into()));
        }
        Ok(Grid { d, n1, n2, n3, nt, x1_max, len2, len3, t_max })
    }

    /// Convenience constructor for the common d = 1 case.
    pub fn slab_1d(n1: usize, n2: usize, nt: usize, x1_max: f64, len2: f64, t_max: f64) -> Result<Self> {
        Grid::new(1, n1, n2, 1, nt, x1_max, len2, 1.0, t_max)
    }

    pub fn h1(&self) -> f64 {
        self.x1_max / (self.n1 - 1) as f64
    }
    pub fn h2(&self) -> f64 {
        self.len2 / self.n2 as f64
    }
    pub fn h3(&self) -> f64 {
        if self.d == 2 { self.len3 / self.n3 as f64 } else { 1.0 }
    }
    pub fn ht(&self) -> f64 {
        self.t_max / (self.nt - 1) as f64
    }

    pub fn x1(&self, i: usize) -> f64 {
        i as f64 * self.h1()
    }
    pub fn x2(&self, j: usize) -> f64 {
        j as f64 * self.h2()
    }
    pub fn x3(&self, k: usize) -> f64 {
        if self.d == 2 { k as f64 * self.h3() } else { 0.0 }
    }
    pub fn t(&self, it: usize) -> f64 {
        it as f64 * self.ht()
    }

    /// Tangential wavenumber for FFT bin `j` along x2.
    pub fn k2(&self, j: usize) -> f64 {
        let n = self.n2 as i64;
        let j = j as i64;
        let m = if j <= n / 2 { j } else { j - n };
        2.0 * std::f64::consts::PI * m as f64 / self.len2
    }
    pub fn k3(&self, j: usize) -> f64 {
        if self.d == 1 {
            return 0.0;
        }
        let n = self.n3 as i64;
        let j = j as i64;
        let m = if j <= n / 2 { j } else { j - n };
        2.0 * std::f64::consts::PI * m as f64 / self.len3
    }

    /// Trapezoidal quadrature weight along x1 (1/2 at the two walls).
    pub fn w1(&self, i: usize) -> f64 {
        if i == 0 || i == self.n1 - 1 { 0.5 * self.h1() } else { self.h1() }
    }
    /// Trapezoidal quadrature weight along t.
    pub fn wt(&self, it: usize) -> f64 {
        if it == 0 || it == self.nt - 1 { 0.5 * self.ht() } else { self.ht() }
    }
    /// Periodic quadrature weight in the tangential plane.
    pub fn w_tan(&self) -> f64 {
        self.h2() * self.h3()
    }

    /// Volume of one full tangential torus slice.
    pub fn tangential_measure(&self) -> f64 {
        self.len2 * if self.d == 2 { self.len3 } else { 1.0 }
    }

    pub fn n_space(&self) -> usize {
        self.n1 * self.n2 * self.n3
    }

    /// Grid refined by an integer factor in every resolved direction
    /// (point counts scale as n -> f*(n-1)+1 on bounded axes, f*n on periodic).
    pub fn refined(&self, f: usize) -> Grid {
        Grid {
            d: self.d,
            n1: f * (self.n1 - 1) + 1,
            n2: f * self.n2,
            n3: if self.d == 2 { f * self.n3 } else { 1 },
            nt: f * (self.nt - 1) + 1,
            ..*self
        }
    }

    /// Nyquist-scale frequency: used as the "theta at Nyquist" surrogate for
    /// smoothing-operator identity checks.
    pub fn nyquist_theta(&self) -> f64 {
        let k2 = std::f64::consts::PI * self.n2 as f64 / self.len2;
        let k1 = std::f64::consts::PI / self.h1();
        let kt = std::f64::consts::PI / self.ht();
        let k3 = if self.d == 2 { std::f64::consts::PI * self.n3 as f64 / self.len3 } else { 0.0 };
        2.0 * k2.max(k1).max(kt).max(k3)
    }
}
