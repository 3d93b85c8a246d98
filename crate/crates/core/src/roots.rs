//! Eigenvalues of small complex matrices as roots of the characteristic
//! polynomial.
//!
//! Orders 1 and 2 use closed forms. Larger orders run Aberth's simultaneous
//! iteration followed by Newton polishing. Roots of one polynomial that end
//! up within [`MERGE_RADIUS`] (relative) of each other are treated as one
//! multiple root. A `k`-fold root comes back scattered by roughly
//! `eps^(1/k)`; the group mean is refined by Newton steps on the `(k-1)`-th
//! derivative, where the root is simple.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = Vec<Vec<Complex64>>;

pub const MERGE_RADIUS: f64 = 1e-4;

const MAX_ITER: usize = 2000;

/// Coefficients of `det(x I - A)`, highest degree first (monic), by the
/// Faddeev-LeVerrier recursion.
pub fn charpoly(a: &CMatrix) -> Vec<Complex64> {
    let m = a.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut coeffs = vec![zero; m + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    let mut mk = vec![vec![zero; m]; m];
    for k in 1..=m {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += coeffs[k - 1];
        }
        mk = next;
        let am = mat_mul(a, &mk);
        let trace: Complex64 = (0..m).map(|i| am[i][i]).sum();
        coeffs[k] = -trace / k as f64;
    }
    coeffs
}

fn mat_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let m = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for k in 0..m {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Value and derivative by Horner's rule; coefficients highest first.
fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in p {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

/// `sum |c_k| |z|^k`, the scale of rounding errors in `p(z)`.
fn horner_bound(p: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    p.iter().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All roots of a monic polynomial (highest coefficient first), with
/// multiplicity.
pub fn poly_roots(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = p.len().saturating_sub(1);
    let roots = match deg {
        0 => Vec::new(),
        1 => vec![-p[1] / p[0]],
        2 => quadratic(p[0], p[1], p[2]),
        _ => aberth(p)?,
    };
    let mut merged = merge_multiple(roots);
    // a k-fold root is a simple root of the (k-1)-th derivative
    let mut done = vec![false; merged.len()];
    for i in 0..merged.len() {
        if done[i] {
            continue;
        }
        let members: Vec<usize> = (i..merged.len())
            .filter(|&j| merged[j] == merged[i])
            .collect();
        let mut refined = merged[i];
        if members.len() > 1 {
            polish(&derivative(p, members.len() - 1), &mut refined);
        }
        for &j in &members {
            merged[j] = refined;
            done[j] = true;
        }
    }
    Ok(merged)
}

fn derivative(p: &[Complex64], times: usize) -> Vec<Complex64> {
    let mut q = p.to_vec();
    for _ in 0..times {
        let deg = q.len() - 1;
        q = q[..deg]
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (deg - k) as f64)
            .collect();
    }
    q
}

fn quadratic(a: Complex64, b: Complex64, c: Complex64) -> Vec<Complex64> {
    let disc = (b * b - a * c * 4.0).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q == Complex64::new(0.0, 0.0) {
        return vec![q, q];
    }
    vec![q / a, c / q]
}

fn aberth(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = p.len() - 1;
    let lead = p[0];
    let p: Vec<Complex64> = p.iter().map(|&c| c / lead).collect();
    // Fujiwara bound on the root moduli
    let radius = (1..=deg)
        .map(|k| {
            let scale = if k == deg { 0.5 } else { 1.0 };
            (p[k].norm() * scale).powf(1.0 / k as f64)
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut biggest = 0.0f64;
        for k in 0..deg {
            let (v, dv) = horner(&p, z[k]);
            if v.norm() <= f64::EPSILON * horner_bound(&p, z[k]) {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if biggest <= 4.0 * f64::EPSILON {
            converged = true;
            break;
        }
    }
    for root in z.iter_mut() {
        polish(&p, root);
    }
    if !converged {
        // stagnation at a multiple root is fine as long as the residual is
        // at rounding level
        let ok = z.iter().all(|&r| {
            let (v, _) = horner(&p, r);
            v.norm() <= 1e3 * f64::EPSILON * horner_bound(&p, r).max(1.0)
        });
        if !ok {
            return Err(Error::SolverFailure(format!(
                "Aberth iteration did not converge for degree {deg}"
            )));
        }
    }
    Ok(z)
}

/// Newton steps, kept only while they reduce the residual.
fn polish(p: &[Complex64], root: &mut Complex64) {
    for _ in 0..20 {
        let (v, dv) = horner(p, *root);
        if v == Complex64::new(0.0, 0.0) || dv == Complex64::new(0.0, 0.0) {
            return;
        }
        let candidate = *root - v / dv;
        if horner(p, candidate).0.norm() < v.norm() {
            *root = candidate;
        } else {
            return;
        }
    }
}

/// Replaces each group of roots within `MERGE_RADIUS * max(1, max|root|)`
/// of one another (transitively) by copies of the group mean.
pub fn merge_multiple(roots: Vec<Complex64>) -> Vec<Complex64> {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0f64, f64::max);
    let groups = cluster(&roots, MERGE_RADIUS * scale);
    let mut out = roots.clone();
    for g in groups {
        let mean = g.iter().map(|&i| roots[i]).sum::<Complex64>() / g.len() as f64;
        for &i in &g {
            out[i] = mean;
        }
    }
    out
}

/// Single-linkage clusters at absolute radius `eps`, as index lists in
/// order of first member.
pub fn cluster(values: &[Complex64], eps: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= eps {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Eigenvalues of a square complex matrix, with algebraic multiplicity.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    match a.len() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![a[0][0]]),
        2 => {
            let half_trace = (a[0][0] + a[1][1]) * 0.5;
            let half_gap = (a[0][0] - a[1][1]) * 0.5;
            let disc = (half_gap * half_gap + a[0][1] * a[1][0]).sqrt();
            Ok(merge_multiple(vec![half_trace + disc, half_trace - disc]))
        }
        _ => poly_roots(&charpoly(a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> CMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect()
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        v
    }

    fn close(a: &[Complex64], b: &[Complex64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= eps)
    }

    #[test]
    fn charpoly_of_companion_shape() {
        let p = charpoly(&real(&[&[2.0, 1.0], &[1.0, 2.0]]));
        assert!(close(&p, &[c(1.0, 0.0), c(-4.0, 0.0), c(3.0, 0.0)], 1e-14));
        let p = charpoly(&real(&[
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
            &[6.0, -11.0, 6.0],
        ]));
        assert!(close(
            &p,
            &[c(1.0, 0.0), c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0)],
            1e-12
        ));
    }

    #[test]
    fn closed_forms() {
        let ev = sorted(eigenvalues(&real(&[&[-2.0, 1.0], &[1.0, -2.0]])).unwrap());
        assert!(close(&ev, &[c(-1.0, 0.0), c(-3.0, 0.0)], 1e-14));
        let rot = sorted(eigenvalues(&real(&[&[0.0, -1.0], &[1.0, 0.0]])).unwrap());
        assert!(close(&rot, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-14));
        let jordan = eigenvalues(&real(&[&[1.0, 1.0], &[0.0, 1.0]])).unwrap();
        assert!(close(&jordan, &[c(1.0, 0.0), c(1.0, 0.0)], 0.0));
    }

    #[test]
    fn aberth_simple_roots() {
        let ev = sorted(
            eigenvalues(&real(&[
                &[0.0, 1.0, 0.0],
                &[0.0, 0.0, 1.0],
                &[6.0, -11.0, 6.0],
            ]))
            .unwrap(),
        );
        assert!(close(&ev, &[c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)], 1e-12));
        // x^5 - 1
        let p = [
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(-1.0, 0.0),
        ];
        let roots = poly_roots(&p).unwrap();
        for r in &roots {
            assert!((r.powu(5) - 1.0).norm() < 1e-13);
        }
        assert_eq!(cluster(&roots, 1e-6).len(), 5);
    }

    #[test]
    fn multiple_roots_are_merged_to_their_mean() {
        // 3x3 Jordan block at 2: roots scatter by about eps^(1/3)
        let j = real(&[&[2.0, 1.0, 0.0], &[0.0, 2.0, 1.0], &[0.0, 0.0, 2.0]]);
        let ev = eigenvalues(&j).unwrap();
        assert!(close(&ev, &[c(2.0, 0.0); 3], 1e-12));
        // (x - 1)^2 (x + 4)
        let p = [c(1.0, 0.0), c(2.0, 0.0), c(-7.0, 0.0), c(4.0, 0.0)];
        let r = sorted(poly_roots(&p).unwrap());
        assert!(close(&r, &[c(1.0, 0.0), c(1.0, 0.0), c(-4.0, 0.0)], 1e-12));
    }

    #[test]
    fn complex_coefficients() {
        // (x - i)(x + 2)(x - 1 - i)
        let roots = [c(0.0, 1.0), c(-2.0, 0.0), c(1.0, 1.0)];
        let mut p = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (k, &a) in p.iter().enumerate() {
                next[k] += a;
                next[k + 1] -= a * r;
            }
            p = next;
        }
        let found = sorted(poly_roots(&p).unwrap());
        assert!(close(&found, &sorted(roots.to_vec()), 1e-12));
    }

    #[test]
    fn clusters_follow_chains() {
        let v = [c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0), c(3.0, 0.0)];
        assert_eq!(cluster(&v, 0.6), vec![vec![0, 1, 2], vec![3]]);
    }
}
