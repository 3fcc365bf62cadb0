//! Front representation and the straightening of the moving boundary:
//! the cutoff-based lift Psi = chi(x1) phi, the diffeomorphism
//! Phi = x1 + Psi, the straightened boundary matrix, the characteristic
//! V-transform, and the background shift (2 eps x1, 0, 0, 0, 0).

use serde::{Deserialize, Serialize};

use crate::calculus::ops::{self, FdScheme, LeftEnd};
use crate::error::{Result, VfError};
use crate::field::{BoundaryField, ScalarField, SlabState, StateField};
use crate::grid::Grid;
use crate::mat5::{identity, scale, zero_mat, Mat5};
use crate::scalar::VfScalar;
use crate::thermo::SymSystem;

/// Sampled C-infinity cutoff: identically 1 on [0, 1], supported in
/// [0, support_radius], with the measured slope bound needed by the lift
/// (max |chi'| < 1/2 with margin).
#[derive(Clone, Debug)]
pub struct CutoffChi {
    pub support_radius: f64,
    step: f64,
    chi: Vec<f64>,
    dchi: Vec<f64>,
    d2chi: Vec<f64>,
    pub max_slope: f64,
}

const SLOPE_LIMIT: f64 = 0.45; // 1/2 minus the required 0.05 margin

/// Build the cutoff profile. The transition from 1 to 0 over [1, R] is a
/// linear ramp convolved with a narrow bump, which keeps the peak slope near
/// the theoretical minimum 1/(R-1); construction fails rather than returning
/// a profile whose measured slope reaches 1/2.
pub fn make_cutoff(support_radius: f64, samples: usize) -> Result<CutoffChi> {
    if support_radius <= 1.0 {
        return Err(VfError::Parameter(format!(
            "cutoff support radius must exceed 1, got {support_radius}"
        )));
    }
    if samples < 100 {
        return Err(VfError::Parameter(format!("too few cutoff samples ({samples} < 100)")));
    }
    let w = 0.05; // mollifier half-width on the normalized transition
    let bump = |t: f64| -> f64 {
        let y = t / w;
        if y.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - y * y)).exp()
        }
    };
    let nq = 400;
    let dq = 2.0 * w / nq as f64;
    let mut bnorm = 0.0;
    for q in 0..=nq {
        let t = -w + q as f64 * dq;
        let wq = if q == 0 || q == nq { 0.5 } else { 1.0 };
        bnorm += wq * bump(t) * dq;
    }
    // Ramp 1 -> 0 over [w, 1-w] in normalized coordinates.
    let ramp = |x: f64| -> f64 { ((1.0 - w - x) / (1.0 - 2.0 * w)).clamp(0.0, 1.0) };
    let in_ramp = |x: f64| -> f64 {
        if x > w && x < 1.0 - w {
            1.0 / (1.0 - 2.0 * w)
        } else {
            0.0
        }
    };
    let transition = |x: f64| -> (f64, f64) {
        // (S, S') at normalized coordinate x.
        let mut s = 0.0;
        let mut sd = 0.0;
        for q in 0..=nq {
            let t = -w + q as f64 * dq;
            let wq = if q == 0 || q == nq { 0.5 } else { 1.0 };
            let b = wq * bump(t) * dq / bnorm;
            s += b * ramp(x - t);
            sd -= b * in_ramp(x - t);
        }
        (s, sd)
    };

    let r = support_radius;
    let step = r / samples as f64;
    let mut chi = vec![0.0; samples + 1];
    let mut dchi = vec![0.0; samples + 1];
    for i in 0..=samples {
        let x = i as f64 * step;
        if x <= 1.0 {
            chi[i] = 1.0;
            dchi[i] = 0.0;
        } else {
            let xi = (x - 1.0) / (r - 1.0);
            let (s, sd) = transition(xi);
            chi[i] = s;
            dchi[i] = sd / (r - 1.0);
        }
    }
    let mut d2chi = vec![0.0; samples + 1];
    for i in 1..samples {
        d2chi[i] = (dchi[i + 1] - dchi[i - 1]) / (2.0 * step);
    }
    let max_slope = dchi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_slope > SLOPE_LIMIT {
        return Err(VfError::Parameter(format!(
            "cutoff slope bound unattainable: measured max |chi'| = {max_slope:.4} > {SLOPE_LIMIT} \
             at support radius {r}"
        )));
    }
    Ok(CutoffChi { support_radius, step, chi, dchi, d2chi, max_slope })
}

impl CutoffChi {
    fn interp(&self, table: &[f64], x: f64) -> f64 {
        // 4-point Lagrange interpolation on the uniform sample grid.
        let n = table.len();
        let u = x / self.step;
        let i1 = (u.floor() as usize).clamp(1, n - 3);
        let t = u - i1 as f64;
        let (f0, f1, f2, f3) = (table[i1 - 1], table[i1], table[i1 + 1], table[i1 + 2]);
        let c0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
        let c1 = (t * t - 1.0) * (t - 2.0) / 2.0;
        let c2 = -t * (t + 1.0) * (t - 2.0) / 2.0;
        let c3 = t * (t * t - 1.0) / 6.0;
        c0 * f0 + c1 * f1 + c2 * f2 + c3 * f3
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 1.0 {
            1.0
        } else if x >= self.support_radius {
            0.0
        } else {
            self.interp(&self.chi, x)
        }
    }
    pub fn eval_d(&self, x: f64) -> f64 {
        if x <= 1.0 || x >= self.support_radius {
            0.0
        } else {
            self.interp(&self.dchi, x)
        }
    }
    pub fn eval_d2(&self, x: f64) -> f64 {
        if x <= 1.0 || x >= self.support_radius {
            0.0
        } else {
            self.interp(&self.d2chi, x)
        }
    }
}

/// The straightened geometry: Psi = chi(x1) phi and the derivative fields
/// entering the boundary matrix, all sampled on the space-time grid.
#[derive(Clone, Debug)]
pub struct StraightenedGeometry {
    pub grid: Grid,
    pub psi: ScalarField,
    /// d1 Phi = 1 + chi'(x1) phi.
    pub d1_phi: ScalarField,
    pub d2_psi: ScalarField,
    pub d3_psi: ScalarField,
    pub dt_psi: ScalarField,
    pub min_d1_phi: f64,
}

/// Lift a front to the straightened geometry. Tangential derivatives are
/// spectral; the time derivative uses the same finite-difference stencils as
/// the norms (ghost zeros in the past when the front vanishes there).
pub fn lift_front(front: &BoundaryField, chi: &CutoffChi, grid: &Grid) -> Result<StraightenedGeometry> {
    let linf = front.max_abs();
    if linf > 1.0 {
        return Err(VfError::Lift(format!("front is not lift-admissible: ||phi||_inf = {linf:.4} > 1")));
    }
    let left = if front.past_vanishing { LeftEnd::ZeroGhost } else { LeftEnd::OneSided };
    let dt_phi = ops::fd_axis3(&front.data, 0, grid.ht(), FdScheme::Order4, left);
    let d2_phi = ops::d_x2_3(&front.data, grid);
    let d3_phi = ops::d_x3_3(&front.data, grid);

    let mut psi = ScalarField::zeros(*grid);
    let mut d1_phi = ScalarField::zeros(*grid);
    let mut d2_psi = ScalarField::zeros(*grid);
    let mut d3_psi = ScalarField::zeros(*grid);
    let mut dt_psi = ScalarField::zeros(*grid);
    psi.past_vanishing = front.past_vanishing;
    d2_psi.past_vanishing = front.past_vanishing;
    d3_psi.past_vanishing = front.past_vanishing;
    dt_psi.past_vanishing = front.past_vanishing;
    d1_phi.past_vanishing = false;

    let mut min_d1 = f64::INFINITY;
    let mut min_loc = (0usize, 0usize, 0usize, 0usize);
    for it in 0..grid.nt {
        for i in 0..grid.n1 {
            let x1 = grid.x1(i);
            let c = chi.eval(x1);
            let dc = chi.eval_d(x1);
            for j in 0..grid.n2 {
                for k in 0..grid.n3 {
                    let phi = front.data[[it, j, k]];
                    psi.data[[it, i, j, k]] = c * phi;
                    let d1 = 1.0 + dc * phi;
                    d1_phi.data[[it, i, j, k]] = d1;
                    d2_psi.data[[it, i, j, k]] = c * d2_phi[[it, j, k]];
                    d3_psi.data[[it, i, j, k]] = c * d3_phi[[it, j, k]];
                    dt_psi.data[[it, i, j, k]] = c * dt_phi[[it, j, k]];
                    if d1 < min_d1 {
                        min_d1 = d1;
                        min_loc = (it, i, j, k);
                    }
                }
            }
        }
    }
    if min_d1 < 0.5 {
        return Err(VfError::Lift(format!(
            "d1 Phi = {min_d1:.4} < 1/2 at (t, x1, x2, x3) index {min_loc:?}"
        )));
    }
    Ok(StraightenedGeometry { grid: *grid, psi, d1_phi, d2_psi, d3_psi, dt_psi, min_d1_phi: min_d1 })
}

/// Pointwise geometry values entering the straightened boundary matrix.
#[derive(Clone, Copy, Debug)]
pub struct GeomPoint<T: VfScalar> {
    pub dt_psi: T,
    pub d2_psi: T,
    pub d3_psi: T,
    pub d1_phi: T,
}

impl GeomPoint<f64> {
    pub fn flat() -> Self {
        GeomPoint { dt_psi: 0.0, d2_psi: 0.0, d3_psi: 0.0, d1_phi: 1.0 }
    }
}

impl StraightenedGeometry {
    pub fn point(&self, it: usize, i: usize, j: usize, k: usize) -> GeomPoint<f64> {
        GeomPoint {
            dt_psi: self.dt_psi.data[[it, i, j, k]],
            d2_psi: self.d2_psi.data[[it, i, j, k]],
            d3_psi: self.d3_psi.data[[it, i, j, k]],
            d1_phi: self.d1_phi.data[[it, i, j, k]],
        }
    }
}

/// The straightened boundary matrix
/// (A1 - A0 dt_Psi - A2 d2_Psi - A3 d3_Psi) / d1_Phi.
pub fn boundary_matrix<T: VfScalar>(sys: &SymSystem<T>, gp: &GeomPoint<T>) -> Mat5<T> {
    let mut m = sys.a[0];
    for i in 0..5 {
        for j in 0..5 {
            m[i][j] = m[i][j]
                - sys.a0[i][j] * gp.dt_psi
                - sys.a[1][i][j] * gp.d2_psi
                - sys.a[2][i][j] * gp.d3_psi;
        }
    }
    scale(&m, T::one() / gp.d1_phi)
}

/// Transform between the good unknown and the characteristic split
/// V = (p, v_n, v2, v3, S): returns (J, J^{ -1}) with U = J V. In the
/// relativistic variant V carries u_n = Gamma v_n and the rows follow from
/// u = Gamma v + Gamma u (u, v).
pub fn v_transform<T: VfScalar>(gp: &GeomPoint<T>, u_hat: Option<[T; 3]>) -> (Mat5<T>, Mat5<T>) {
    let mut j = identity::<T>();
    let mut jinv = identity::<T>();
    match u_hat {
        None => {
            j[1][2] = gp.d2_psi;
            j[1][3] = gp.d3_psi;
            jinv[1][2] = -gp.d2_psi;
            jinv[1][3] = -gp.d3_psi;
        }
        Some(u) => {
            let gamma2 = T::one() + u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
            let nhat = [T::one(), -gp.d2_psi, -gp.d3_psi];
            let nu = nhat[0] * u[0] + nhat[1] * u[1] + nhat[2] * u[2];
            let c = [
                nhat[0] - nu * u[0] / gamma2,
                nhat[1] - nu * u[1] / gamma2,
                nhat[2] - nu * u[2] / gamma2,
            ];
            jinv[1][1] = c[0];
            jinv[1][2] = c[1];
            jinv[1][3] = c[2];
            j[1][1] = T::one() / c[0];
            j[1][2] = -c[1] / c[0];
            j[1][3] = -c[2] / c[0];
        }
    }
    (j, jinv)
}

/// The background profile (2 eps x1, 0, 0, 0, 0) and the balance density
/// eps1 = 2 eps / G.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftProfile {
    pub epsilon: f64,
    pub gravity: f64,
}

impl ShiftProfile {
    pub fn eps1(&self) -> f64 {
        2.0 * self.epsilon / self.gravity
    }
    pub fn pressure(&self, x1: f64) -> f64 {
        2.0 * self.epsilon * x1
    }
    /// d1 of the profile: constant (2 eps, 0, 0, 0, 0).
    pub fn slope(&self) -> f64 {
        2.0 * self.epsilon
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ShiftDirection {
    ToShifted,
    FromShifted,
}

/// Add or subtract the background profile in the pressure component.
pub fn shift_unknown(u: &StateField, profile: &ShiftProfile, dir: ShiftDirection) -> StateField {
    let mut out = u.clone();
    let sgn = match dir {
        ShiftDirection::ToShifted => -1.0,
        ShiftDirection::FromShifted => 1.0,
    };
    let g = u.grid;
    for it in 0..g.nt {
        for i in 0..g.n1 {
            let dp = sgn * profile.pressure(g.x1(i));
            for j in 0..g.n2 {
                for k in 0..g.n3 {
                    out.data[[it, 0, i, j, k]] += dp;
                }
            }
        }
    }
    out
}

pub fn shift_unknown_slab(u: &SlabState, profile: &ShiftProfile, dir: ShiftDirection) -> SlabState {
    let mut out = u.clone();
    let sgn = match dir {
        ShiftDirection::ToShifted => -1.0,
        ShiftDirection::FromShifted => 1.0,
    };
    let g = u.grid;
    for i in 0..g.n1 {
        let dp = sgn * profile.pressure(g.x1(i));
        for j in 0..g.n2 {
            for k in 0..g.n3 {
                out.data[[0, i, j, k]] += dp;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat5::{matmul, matvec, max_asymmetry, singular_values};
    use crate::thermo::{euler_matrices, Physics};

    #[test]
    fn cutoff_plateau_support_and_slope() {
        let chi = make_cutoff(4.0, 2000).unwrap();
        assert_eq!(chi.eval(0.0), 1.0);
        assert_eq!(chi.eval(0.5), 1.0);
        assert_eq!(chi.eval(5.0), 0.0);
        assert!(chi.max_slope < 0.45, "max slope {}", chi.max_slope);
        assert_eq!(chi.eval_d(0.0), 0.0);
        // Interpolated values stay within [0, 1] on the transition.
        for i in 0..200 {
            let x = 1.0 + 3.0 * i as f64 / 199.0;
            let v = chi.eval(x);
            assert!((-1e-9..=1.0 + 1e-9).contains(&v));
        }
    }

    #[test]
    fn narrow_cutoff_is_rejected() {
        // A drop of 1 over width 0.05 forces max |chi'| >= 20.
        assert!(make_cutoff(1.05, 2000).is_err());
        assert!(make_cutoff(4.0, 10).is_err());
    }

    #[test]
    fn lift_of_zero_and_constant_fronts() {
        let grid = Grid::slab_1d(17, 8, 9, 3.0, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let chi = make_cutoff(4.0, 2000).unwrap();
        let zero = BoundaryField::zeros(grid);
        let g0 = lift_front(&zero, &chi, &grid).unwrap();
        assert_eq!(g0.psi.max_abs(), 0.0);
        assert_eq!(g0.min_d1_phi, 1.0);

        let one = BoundaryField::from_fn(grid, false, |_, _, _| 1.0);
        let g1 = lift_front(&one, &chi, &grid).unwrap();
        // Psi(x1) = chi(x1): equals 1 at the boundary.
        for it in 0..grid.nt {
            assert!((g1.psi.data[[it, 0, 0, 0]] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lift_reproduces_front_at_the_wall() {
        let grid = Grid::slab_1d(17, 16, 9, 3.0, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let chi = make_cutoff(4.0, 2000).unwrap();
        let front = BoundaryField::from_fn(grid, false, |t, x2, _| 0.5 * (x2).cos() * (1.0 + 0.3 * t));
        let geom = lift_front(&front, &chi, &grid).unwrap();
        for it in 0..grid.nt {
            for j in 0..grid.n2 {
                assert!((geom.psi.data[[it, 0, j, 0]] - front.data[[it, j, 0]]).abs() < 1e-14);
            }
        }
        // phi = 0.5 cos(x2): min d1 Phi >= 1 - 0.5 max|chi'| > 3/4.
        assert!(geom.min_d1_phi > 0.75);
    }

    #[test]
    fn oversized_front_is_rejected() {
        let grid = Grid::slab_1d(9, 8, 9, 3.0, 1.0, 1.0).unwrap();
        let chi = make_cutoff(4.0, 2000).unwrap();
        let front = BoundaryField::from_fn(grid, false, |_, _, _| 2.0);
        assert!(matches!(lift_front(&front, &chi, &grid), Err(VfError::Lift(_))));
    }

    #[test]
    fn boundary_matrix_reduces_to_a1_for_flat_geometry() {
        let phys = Physics::default();
        let u = [0.4, 0.2, -0.1, 0.3, 0.1];
        let sys = euler_matrices(&u, &phys);
        let m = boundary_matrix(&sys, &GeomPoint::flat());
        for i in 0..5 {
            for j in 0..5 {
                assert!((m[i][j] - sys.a[0][i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn kinematic_constraint_gives_rank_two() {
        // f = v1 - v2 d2Psi - v3 d3Psi - dtPsi = 0 collapses the rho f blocks;
        // the matrix has exactly rank 2.
        let phys = Physics::default();
        let gp = GeomPoint { dt_psi: 1.0, d2_psi: 0.0, d3_psi: 0.0, d1_phi: 1.0 };
        let u = [0.4, 1.0, 0.0, 0.0, 0.0];
        let sys = euler_matrices(&u, &phys);
        let m = boundary_matrix(&sys, &gp);
        for i in 1..4 {
            assert!(m[i][i].abs() < 1e-15);
        }
        let sv = singular_values(&m);
        assert!(sv[2] / sv[0] < 1e-12);
        assert!(sv[1] > 1e-3);
    }

    #[test]
    fn v_transform_inverse_and_congruence() {
        let gp = GeomPoint { dt_psi: 0.0, d2_psi: 0.7, d3_psi: -0.4, d1_phi: 1.3 };
        let (j, jinv) = v_transform::<f64>(&gp, None);
        let prod = matmul(&j, &jinv);
        for a in 0..5 {
            for b in 0..5 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((prod[a][b] - expect).abs() < 1e-14);
            }
        }
        // J e2 has second entry 1; Jinv row 2 = (0, 1, -a, -b, 0).
        let e2 = [0.0, 1.0, 0.0, 0.0, 0.0];
        assert!((matvec(&j, &e2)[1] - 1.0).abs() < 1e-15);
        assert!((jinv[1][2] + 0.7).abs() < 1e-15);
        assert!((jinv[1][3] - 0.4).abs() < 1e-15);

        // Congruence: J^T Atilde1 J at a kinematically-consistent boundary
        // point equals (1 / d1Phi) times the antidiagonal pair matrix.
        let phys = Physics::default();
        let v2 = 0.3;
        let v3 = -0.2;
        let dt_psi = 0.0;
        let v1 = v2 * gp.d2_psi + v3 * gp.d3_psi + dt_psi;
        let u = [0.5, v1, v2, v3, 0.0];
        let sys = euler_matrices(&u, &phys);
        let m = boundary_matrix(&sys, &gp);
        let jt = crate::mat5::transpose(&j);
        let cong = matmul(&jt, &matmul(&m, &j));
        for a in 0..5 {
            for b in 0..5 {
                let expect = if (a, b) == (0, 1) || (a, b) == (1, 0) { 1.0 / gp.d1_phi } else { 0.0 };
                assert!((cong[a][b] - expect).abs() < 1e-13, "({a},{b}): {}", cong[a][b]);
            }
        }
        assert!(max_asymmetry(&cong) < 1e-14);
    }

    #[test]
    fn relativistic_v_transform_matches_classical_limit() {
        let gp = GeomPoint { dt_psi: 0.0, d2_psi: 0.5, d3_psi: 0.1, d1_phi: 1.0 };
        let (jc, _) = v_transform::<f64>(&gp, None);
        let (jr, jrinv) = v_transform::<f64>(&gp, Some([1e-9, 0.0, 0.0]));
        for a in 0..5 {
            for b in 0..5 {
                assert!((jc[a][b] - jr[a][b]).abs() < 1e-8);
            }
        }
        let prod = matmul(&jr, &jrinv);
        for a in 0..5 {
            for b in 0..5 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((prod[a][b] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn shift_round_trip_and_values() {
        let grid = Grid::slab_1d(9, 4, 5, 3.0, 1.0, 1.0).unwrap();
        let profile = ShiftProfile { epsilon: 0.5, gravity: 1.0 };
        assert!((profile.pressure(3.0) - 3.0).abs() < 1e-15);
        assert!((profile.eps1() - 1.0).abs() < 1e-15);

        let mut u = StateField::zeros(grid);
        for it in 0..grid.nt {
            for i in 0..grid.n1 {
                for j in 0..grid.n2 {
                    u.data[[it, 0, i, j, 0]] = 2.0 * profile.epsilon * grid.x1(i);
                    u.data[[it, 2, i, j, 0]] = 0.3;
                }
            }
        }
        let shifted = shift_unknown(&u, &profile, ShiftDirection::ToShifted);
        assert!(shifted.component(0).max_abs() < 1e-14);
        let back = shift_unknown(&shifted, &profile, ShiftDirection::FromShifted);
        let mut diff = back.clone();
        diff.axpy(-1.0, &u);
        assert!(diff.max_abs() < 1e-14);
    }

    #[test]
    fn gravity_balance_identity() {
        // With rho = eps1 and Psi = 0: 2 eps / d1Phi - G rho = 0 exactly.
        let profile = ShiftProfile { epsilon: 0.37, gravity: 1.9 };
        let d1_phi = 1.0;
        let residual = 2.0 * profile.epsilon / d1_phi - profile.gravity * profile.eps1();
        assert_eq!(residual, 0.0);
    }
}
