//! Dense complex helpers: null spaces by row reduction and orthonormal bases
//! with a fixed phase.

use num_complex::Complex64;

use crate::roots::CMatrix;

pub type CVector = Vec<Complex64>;

pub fn inf_norm(a: &CMatrix) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn mat_vec(a: &CMatrix, v: &[Complex64]) -> CVector {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Basis of `{x : A x = 0}` from the reduced row echelon form of `A`.
/// Columns whose best pivot is at most `threshold` are treated as free.
pub fn nullspace(a: &CMatrix, threshold: f64) -> Vec<CVector> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = a.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (best, size) = (row..rows)
            .map(|i| (i, r[i][col].norm()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if size <= threshold {
            for x in r.iter_mut().skip(row) {
                x[col] = Complex64::new(0.0, 0.0);
            }
            continue;
        }
        r.swap(row, best);
        let inv = r[row][col].inv();
        for x in r[row].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != row {
                let factor = r[i][col];
                if factor != Complex64::new(0.0, 0.0) {
                    for j in 0..cols {
                        let sub = factor * r[row][j];
                        r[i][j] -= sub;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Complex64::new(0.0, 0.0); cols];
            x[free] = Complex64::new(1.0, 0.0);
            for (k, &p) in pivots.iter().enumerate() {
                x[p] = -r[k][free];
            }
            x
        })
        .collect()
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Vectors that
/// collapse below `1e-10` of their original length are dropped.
pub fn orthonormalize(vectors: &[CVector]) -> Vec<CVector> {
    let mut out: Vec<CVector> = Vec::new();
    for v in vectors {
        let original = norm(v);
        if original == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = dot(q, &w);
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let len = norm(&w);
        if len > 1e-10 * original {
            out.push(w.into_iter().map(|x| x / len).collect());
        }
    }
    out
}

/// Rotates `v` so its first entry of non-negligible size is real positive.
pub fn fix_phase(v: &mut [Complex64]) {
    let scale = max_abs(v);
    if scale == 0.0 {
        return;
    }
    if let Some(first) = v.iter().find(|x| x.norm() > 1e-9 * scale).copied() {
        let rot = first.conj() / first.norm();
        for x in v.iter_mut() {
            *x *= rot;
        }
    }
}
