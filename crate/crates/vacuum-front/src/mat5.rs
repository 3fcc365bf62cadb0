//! Plain 5x5 matrix helpers over the generic assembly scalar. Dense f64
//! factorizations go through nalgebra; everything generic stays on arrays so
//! jets and complex-step scalars pass through the same assembly code.

use crate::scalar::VfScalar;

pub type Vec5<T> = [T; 5];
pub type Mat5<T> = [[T; 5]; 5];

pub fn zero_mat<T: VfScalar>() -> Mat5<T> {
    [[T::zero(); 5]; 5]
}

pub fn zero_vec<T: VfScalar>() -> Vec5<T> {
    [T::zero(); 5]
}

pub fn matvec<T: VfScalar>(a: &Mat5<T>, x: &Vec5<T>) -> Vec5<T> {
    let mut y = zero_vec();
    for i in 0..5 {
        let mut acc = T::zero();
        for j in 0..5 {
            acc = acc + a[i][j] * x[j];
        }
        y[i] = acc;
    }
    y
}

pub fn matmul<T: VfScalar>(a: &Mat5<T>, b: &Mat5<T>) -> Mat5<T> {
    let mut c = zero_mat();
    for i in 0..5 {
        for j in 0..5 {
            let mut acc = T::zero();
            for k in 0..5 {
                acc = acc + a[i][k] * b[k][j];
            }
            c[i][j] = acc;
        }
    }
    c
}

pub fn transpose<T: VfScalar>(a: &Mat5<T>) -> Mat5<T> {
    let mut c = zero_mat();
    for i in 0..5 {
        for j in 0..5 {
            c[i][j] = a[j][i];
        }
    }
    c
}

pub fn add<T: VfScalar>(a: &Mat5<T>, b: &Mat5<T>) -> Mat5<T> {
    let mut c = *a;
    for i in 0..5 {
        for j in 0..5 {
            c[i][j] = c[i][j] + b[i][j];
        }
    }
    c
}

pub fn scale<T: VfScalar>(a: &Mat5<T>, s: T) -> Mat5<T> {
    let mut c = *a;
    for row in c.iter_mut() {
        for v in row.iter_mut() {
            *v = *v * s;
        }
    }
    c
}

pub fn identity<T: VfScalar>() -> Mat5<T> {
    let mut c = zero_mat();
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = T::one();
    }
    c
}

pub fn max_asymmetry(a: &Mat5<f64>) -> f64 {
    let mut m = 0.0f64;
    for i in 0..5 {
        for j in 0..5 {
            m = m.max((a[i][j] - a[j][i]).abs());
        }
    }
    m
}

/// Solve a x = b for f64 by LU with partial pivoting (tiny fixed size).
pub fn solve(a: &Mat5<f64>, b: &Vec5<f64>) -> Vec5<f64> {
    let mut m = *a;
    let mut x = *b;
    let mut perm = [0usize, 1, 2, 3, 4];
    for col in 0..5 {
        let mut piv = col;
        for r in col + 1..5 {
            if m[perm[r]][col].abs() > m[perm[piv]][col].abs() {
                piv = r;
            }
        }
        perm.swap(col, piv);
        let prow = perm[col];
        let d = m[prow][col];
        for r in col + 1..5 {
            let row = perm[r];
            let f = m[row][col] / d;
            m[row][col] = 0.0;
            for c in col + 1..5 {
                m[row][c] -= f * m[prow][c];
            }
            x[row] -= f * x[prow];
        }
    }
    let mut out = [0.0; 5];
    for col in (0..5).rev() {
        let prow = perm[col];
        let mut acc = x[prow];
        for c in col + 1..5 {
            acc -= m[prow][c] * out[c];
        }
        out[col] = acc / m[prow][col];
    }
    out
}

/// Generic Taylor/complex-capable inverse via block-free Gauss-Jordan without
/// pivoting. Callers must guarantee the value-part of the pivots is nonzero
/// (true for the positive-definite symmetrizers this is used on).
pub fn invert<T: VfScalar>(a: &Mat5<T>) -> Mat5<T> {
    let mut m = *a;
    let mut inv = identity::<T>();
    for col in 0..5 {
        let d = m[col][col];
        let dinv = T::one() / d;
        for c in 0..5 {
            m[col][c] = m[col][c] * dinv;
            inv[col][c] = inv[col][c] * dinv;
        }
        for r in 0..5 {
            if r == col {
                continue;
            }
            let f = m[r][col];
            for c in 0..5 {
                m[r][c] = m[r][c] - f * m[col][c];
                inv[r][c] = inv[r][c] - f * inv[col][c];
            }
        }
    }
    inv
}

pub fn to_nalgebra(a: &Mat5<f64>) -> nalgebra::SMatrix<f64, 5, 5> {
    nalgebra::SMatrix::<f64, 5, 5>::from_fn(|i, j| a[i][j])
}

/// Eigenvalues of a symmetric 5x5.
pub fn sym_eigenvalues(a: &Mat5<f64>) -> [f64; 5] {
    let m = to_nalgebra(a);
    let es = m.symmetric_eigen();
    let mut ev = [0.0; 5];
    for i in 0..5 {
        ev[i] = es.eigenvalues[i];
    }
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Singular values, descending.
pub fn singular_values(a: &Mat5<f64>) -> [f64; 5] {
    let m = to_nalgebra(a);
    let sv = m.singular_values();
    let mut s = [0.0; 5];
    for i in 0..5 {
        s[i] = sv[i];
    }
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_invert_agree() {
        let a: Mat5<f64> = [
            [4.0, 1.0, 0.0, 0.5, 0.0],
            [1.0, 3.0, 0.2, 0.0, 0.0],
            [0.0, 0.2, 5.0, 1.0, 0.3],
            [0.5, 0.0, 1.0, 2.5, 0.0],
            [0.0, 0.0, 0.3, 0.0, 1.5],
        ];
        let b = [1.0, -2.0, 0.5, 3.0, -1.0];
        let x = solve(&a, &b);
        let inv = invert(&a);
        let y = matvec(&inv, &b);
        for i in 0..5 {
            assert!((x[i] - y[i]).abs() < 1e-12);
        }
        let r = matvec(&a, &x);
        for i in 0..5 {
            assert!((r[i] - b[i]).abs() < 1e-12);
        }
    }
}
