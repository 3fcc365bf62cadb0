//! Equations of state and assembly of the symmetric-hyperbolic Euler systems,
//! non-relativistic and special-relativistic, with admissibility checks.
//!
//! The unknown is U = (p, v, S) (classical) or U = (p, u, S) with the spatial
//! 4-velocity u (relativistic). All assembly maps are generic over
//! [`VfScalar`] so the same code path serves evaluation, complex-step
//! differentiation and Taylor propagation in time.

use serde::{Deserialize, Serialize};

use crate::error::{Result, VfError};
use crate::mat5::{zero_mat, zero_vec, Mat5, Vec5};
use crate::scalar::VfScalar;

/// Equation of state. The affine law stays admissible at p = 0 (the vacuum
/// boundary value); the polytrope does not and is flagged accordingly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Eos {
    /// rho(p, S) = rho_ref * exp(-S / c_v) + p / c0^2.
    StiffenedAffine { rho_ref: f64, c0: f64, c_v: f64 },
    /// p = a * rho^gamma * exp(S / c_v), i.e. rho = (p e^{-S/c_v} / a)^{1/gamma}.
    Polytropic { a: f64, gamma: f64, c_v: f64 },
}

impl Default for Eos {
    fn default() -> Self {
        Eos::StiffenedAffine { rho_ref: 1.0, c0: 1.0, c_v: 1.0 }
    }
}

impl Eos {
    pub fn rho<T: VfScalar>(&self, p: T, s: T) -> T {
        match *self {
            Eos::StiffenedAffine { rho_ref, c0, c_v } => {
                (-s.scale(1.0 / c_v)).exp().scale(rho_ref) + p.scale(1.0 / (c0 * c0))
            }
            Eos::Polytropic { a, gamma, c_v } => {
                (p * (-s.scale(1.0 / c_v)).exp().scale(1.0 / a)).powf(1.0 / gamma)
            }
        }
    }

    /// d rho / d p = 1 / c^2.
    pub fn rho_p<T: VfScalar>(&self, p: T, s: T) -> T {
        match *self {
            Eos::StiffenedAffine { c0, .. } => T::from_re(1.0 / (c0 * c0)),
            Eos::Polytropic { gamma, .. } => self.rho(p, s) / (p.scale(gamma)),
        }
    }

    /// d rho / d S.
    pub fn rho_s<T: VfScalar>(&self, p: T, s: T) -> T {
        match *self {
            Eos::StiffenedAffine { rho_ref, c_v, .. } => {
                -(-s.scale(1.0 / c_v)).exp().scale(rho_ref / c_v)
            }
            Eos::Polytropic { gamma, c_v, .. } => -self.rho(p, s).scale(1.0 / (gamma * c_v)),
        }
    }

    /// Squared sound speed c^2 = 1 / rho_p.
    pub fn sound_speed_sq<T: VfScalar>(&self, p: T, s: T) -> T {
        T::one() / self.rho_p(p, s)
    }

    /// Specific internal energy, vanishing on the p = 0 isobar for the affine
    /// law so the non-relativistic limit h -> 1 is reachable.
    pub fn internal_energy<T: VfScalar>(&self, p: T, s: T) -> T {
        match *self {
            Eos::StiffenedAffine { rho_ref, c0, c_v } => {
                let b = (-s.scale(1.0 / c_v)).exp().scale(rho_ref);
                let rho = self.rho(p, s);
                ((rho / b).ln() + b / rho - T::one()).scale(c0 * c0)
            }
            Eos::Polytropic { gamma, .. } => p / self.rho(p, s).scale(gamma - 1.0),
        }
    }

    /// Relativistic specific enthalpy h = 1 + e + p / rho.
    pub fn enthalpy<T: VfScalar>(&self, p: T, s: T) -> T {
        T::one() + self.internal_energy(p, s) + p / self.rho(p, s)
    }

    /// True when (p, S) lies in the declared admissible set of this law.
    pub fn admissible(&self, p: f64, s: f64) -> bool {
        match *self {
            Eos::StiffenedAffine { .. } => {
                self.rho(p, s) > 0.0 && self.rho_p(p, s) > 0.0
            }
            // A polytrope does not formally allow the p = 0 boundary value.
            Eos::Polytropic { .. } => p > 0.0,
        }
    }
}

/// Physics constants shared by the assembly maps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Physics {
    pub eos: Eos,
    /// Gravitational constant G; the field is (G, 0, 0).
    pub gravity: f64,
    /// Shift slope: the background profile is (2 eps x1, 0, 0, 0, 0).
    pub epsilon: f64,
    pub relativistic: bool,
    /// Sign switch for the relativistic source term: the default keeps the
    /// classical convention Q = (0, -rho G, 0, 0, 0) for both variants.
    pub rel_q_flip: bool,
}

impl Default for Physics {
    fn default() -> Self {
        Physics { eos: Eos::default(), gravity: 1.0, epsilon: 0.1, relativistic: false, rel_q_flip: false }
    }
}

impl Physics {
    /// eps1 = 2 eps / G: the density at which gravity balances the shift.
    pub fn eps1(&self) -> f64 {
        2.0 * self.epsilon / self.gravity
    }
}

/// The symmetric system at one grid point: matrices A0..A3 and source Q.
#[derive(Clone, Debug)]
pub struct SymSystem<T: VfScalar> {
    pub a0: Mat5<T>,
    pub a: [Mat5<T>; 3],
    pub q: Vec5<T>,
}

/// Lorentz factor from the spatial 4-velocity: Gamma = sqrt(1 + |u|^2).
pub fn lorentz_factor<T: VfScalar>(u: [T; 3]) -> T {
    (T::one() + u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt()
}

/// Hyperbolicity predicate rho > 0, rho_p > 0 with margin min(rho, rho_p).
pub fn check_hyperbolicity(p: f64, s: f64, eos: &Eos) -> (bool, f64) {
    let rho = eos.rho(p, s);
    let rho_p = eos.rho_p(p, s);
    let margin = rho.min(rho_p);
    (rho > 0.0 && rho_p > 0.0, margin)
}

/// Relativistic causality 0 < c_s^2 = c^2 / h < 1 with margin
/// min(c_s^2, 1 - c_s^2).
pub fn check_causality(p: f64, s: f64, eos: &Eos) -> (bool, f64) {
    let cs2 = eos.sound_speed_sq(p, s) / eos.enthalpy(p, s);
    (cs2 > 0.0 && cs2 < 1.0, cs2.min(1.0 - cs2))
}

fn admissibility_message(p: f64, s: f64, eos: &Eos) -> String {
    let rho = eos.rho(p, s);
    let rho_p = eos.rho_p(p, s);
    if rho <= 0.0 {
        format!("rho(p={p:.6e}, S={s:.6e}) = {rho:.6e} <= 0")
    } else if rho_p <= 0.0 {
        format!("rho_p(p={p:.6e}, S={s:.6e}) = {rho_p:.6e} <= 0")
    } else {
        format!("state (p={p:.6e}, S={s:.6e}) outside the admissible set")
    }
}

/// Non-relativistic symmetric matrices for U = (p, v, S):
/// A0 = diag(1/(rho c^2), rho, rho, rho, 1) and A1..A3 with the
/// pressure-velocity coupling rows, Q = (0, -rho G, 0, 0, 0).
pub fn euler_matrices<T: VfScalar>(u: &Vec5<T>, phys: &Physics) -> SymSystem<T> {
    let (p, s) = (u[0], u[4]);
    let v = [u[1], u[2], u[3]];
    let eos = &phys.eos;
    let rho = eos.rho(p, s);
    let c2 = eos.sound_speed_sq(p, s);
    let irc2 = T::one() / (rho * c2);

    let mut a0 = zero_mat::<T>();
    a0[0][0] = irc2;
    a0[1][1] = rho;
    a0[2][2] = rho;
    a0[3][3] = rho;
    a0[4][4] = T::one();

    let mut a = [zero_mat::<T>(), zero_mat::<T>(), zero_mat::<T>()];
    for j in 0..3 {
        let aj = &mut a[j];
        aj[0][0] = v[j] * irc2;
        aj[0][j + 1] = T::one();
        aj[j + 1][0] = T::one();
        for i in 0..3 {
            aj[i + 1][i + 1] = rho * v[j];
        }
        aj[4][4] = v[j];
    }

    let mut q = zero_vec::<T>();
    q[1] = -rho.scale(phys.gravity);

    SymSystem { a0, a, q }
}

/// Relativistic symmetric matrices for U = (p, u, S) with
/// B_ij = delta_ij - v^i v^j and u^j = Gamma v^j.
pub fn relativistic_matrices<T: VfScalar>(uvec: &Vec5<T>, phys: &Physics) -> SymSystem<T> {
    let (p, s) = (uvec[0], uvec[4]);
    let u = [uvec[1], uvec[2], uvec[3]];
    let eos = &phys.eos;
    let rho = eos.rho(p, s);
    let c2 = eos.sound_speed_sq(p, s);
    let h = eos.enthalpy(p, s);
    let gamma = lorentz_factor(u);
    let v = [u[0] / gamma, u[1] / gamma, u[2] / gamma];
    let irc2 = T::one() / (rho * c2);

    let mut b = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = if i == j { T::one() - v[i] * v[j] } else { -(v[i] * v[j]) };
        }
    }

    let mut a0 = zero_mat::<T>();
    a0[0][0] = gamma * irc2;
    for i in 0..3 {
        a0[0][i + 1] = v[i];
        a0[i + 1][0] = v[i];
        for j in 0..3 {
            a0[i + 1][j + 1] = rho * h * gamma * b[i][j];
        }
    }
    a0[4][4] = T::one();

    let mut a = [zero_mat::<T>(), zero_mat::<T>(), zero_mat::<T>()];
    for jdir in 0..3 {
        let aj = &mut a[jdir];
        aj[0][0] = u[jdir] * irc2;
        aj[0][jdir + 1] = aj[0][jdir + 1] + T::one();
        aj[jdir + 1][0] = aj[jdir + 1][0] + T::one();
        for i in 0..3 {
            for j in 0..3 {
                aj[i + 1][j + 1] = rho * h * u[jdir] * b[i][j];
            }
        }
        aj[4][4] = v[jdir];
    }

    let sign = if phys.rel_q_flip { 1.0 } else { -1.0 };
    let mut q = zero_vec::<T>();
    q[1] = rho.scale(sign * phys.gravity);

    SymSystem { a0, a, q }
}

/// Variant-dispatching assembly.
pub fn assemble_matrices<T: VfScalar>(u: &Vec5<T>, phys: &Physics) -> SymSystem<T> {
    if phys.relativistic {
        relativistic_matrices(u, phys)
    } else {
        euler_matrices(u, phys)
    }
}

/// Checked f64 assembly: errors on inadmissible states (and, in the
/// relativistic case, on causality violations |v| >= 1).
pub fn assemble_checked(u: &Vec5<f64>, phys: &Physics) -> Result<SymSystem<f64>> {
    if !phys.eos.admissible(u[0], u[4]) {
        return Err(VfError::Admissibility(admissibility_message(u[0], u[4], &phys.eos)));
    }
    if phys.relativistic {
        let gamma = lorentz_factor([u[1], u[2], u[3]]);
        let vv = (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / (gamma * gamma);
        if vv >= 1.0 {
            return Err(VfError::Causality(format!("|v| = {} >= 1", vv.sqrt())));
        }
        let (ok, cs2m) = check_causality(u[0], u[4], &phys.eos);
        if !ok {
            return Err(VfError::Causality(format!("c_s^2 margin {cs2m:.6e} not in (0, 1)")));
        }
    }
    Ok(assemble_matrices(u, phys))
}
