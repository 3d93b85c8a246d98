//! Spectra of invariant digraphs through their character matrices.
//!
//! For a symbol `S` over `H` and a character `chi`, `chi(S)` is the `m x m`
//! matrix of character sums `chi(S_ij)`. The digraph's spectrum is the union
//! of the spectra of all `chi(S)`, and the `lambda`-eigenspace is spanned by
//! the vectors `u (x) v_chi` with `u` a `lambda`-eigenvector of `chi(S)` and
//! `v_chi = (chi(h))_h / sqrt(n)`.

use num_complex::Complex64;

use crate::abelian::{char_sum, char_value, Character};
use crate::error::{Error, Result};
use crate::linalg::{fix_phase, inf_norm, nullspace, orthonormalize, CVector};
use crate::roots::{cluster, eigenvalues, CMatrix};
use crate::symbol::Symbol;

pub const DEFAULT_TOL: f64 = 1e-8;

/// Pairs of distinct eigenvalues closer than this many clustering radii
/// are reported.
const WARN_FACTOR: f64 = 100.0;

#[derive(Clone, Debug, PartialEq)]
pub struct CharMatrix {
    pub chi: Character,
    pub entries: CMatrix,
}

pub fn char_matrix(chi: Character, s: &Symbol) -> CharMatrix {
    let h = s.group();
    let entries = s
        .entries()
        .iter()
        .map(|row| row.iter().map(|set| char_sum(h, chi, set)).collect())
        .collect();
    CharMatrix { chi, entries }
}

/// One eigenvalue of the digraph with its character set `K_{S,lambda}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub lambda: Complex64,
    pub characters: Vec<Character>,
    /// Algebraic multiplicity as an eigenvalue of `A_S`.
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    /// Eigenvalues of each `chi(S)`, indexed by character.
    pub roots: Vec<Vec<Complex64>>,
    /// Near-coincidences that were kept apart.
    pub warnings: Vec<String>,
    /// Absolute clustering radius that was used.
    pub radius: f64,
}

impl Spectrum {
    /// Index of the entry within `tol * max(1, scale)` of `lambda`.
    pub fn locate(&self, lambda: Complex64, tol: f64) -> Option<usize> {
        let scale = self
            .entries
            .iter()
            .map(|e| e.lambda.norm())
            .fold(1.0f64, f64::max);
        let eps = (tol * scale).max(self.radius);
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| (i, (e.lambda - lambda).norm()))
            .filter(|&(_, d)| d <= eps)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }

    pub fn entry(&self, lambda: Complex64, tol: f64) -> Result<&SpectrumEntry> {
        self.locate(lambda, tol)
            .map(|i| &self.entries[i])
            .ok_or_else(|| Error::NotAnEigenvalue(format_complex(lambda)))
    }
}

/// Descending real part, then descending imaginary part.
pub(crate) fn report_order(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{}{}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

/// Pools the eigenvalues of every `chi(S)` and clusters them at radius
/// `tol * max(1, max |lambda|)`; a cluster's value is its mean.
pub fn spectrum(s: &Symbol, tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let h = s.group();
    let roots: Vec<Vec<Complex64>> = h
        .characters()
        .map(|chi| eigenvalues(&char_matrix(chi, s).entries))
        .collect::<Result<_>>()?;
    let pooled: Vec<(Character, Complex64)> = roots
        .iter()
        .enumerate()
        .flat_map(|(k, rs)| rs.iter().map(move |&r| (Character(k), r)))
        .collect();
    let values: Vec<Complex64> = pooled.iter().map(|p| p.1).collect();
    let scale = values.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let radius = tol * scale;

    let mut entries: Vec<SpectrumEntry> = cluster(&values, radius)
        .into_iter()
        .map(|members| {
            let lambda =
                members.iter().map(|&i| values[i]).sum::<Complex64>() / members.len() as f64;
            let mut characters: Vec<Character> = members.iter().map(|&i| pooled[i].0).collect();
            characters.sort();
            characters.dedup();
            SpectrumEntry {
                lambda,
                characters,
                multiplicity: members.len(),
            }
        })
        .collect();
    entries.sort_by(|a, b| report_order(&a.lambda, &b.lambda));

    let mut warnings = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let d = (entries[i].lambda - entries[j].lambda).norm();
            if d <= WARN_FACTOR * radius {
                warnings.push(format!(
                    "eigenvalues {} and {} differ by {d:.3e}, within {WARN_FACTOR} clustering radii; kept apart",
                    format_complex(entries[i].lambda),
                    format_complex(entries[j].lambda)
                ));
            }
        }
    }
    Ok(Spectrum {
        entries,
        roots,
        warnings,
        radius,
    })
}

/// Orthonormal basis of the `lambda`-eigenspace of `chi(S)`, each vector
/// with its first non-negligible coordinate real positive. `lambda` is first
/// snapped to the nearest eigenvalue of `chi(S)`.
pub fn eigenspace_v(
    chi: Character,
    s: &Symbol,
    lambda: Complex64,
    tol: f64,
) -> Result<Vec<CVector>> {
    let m = char_matrix(chi, s).entries;
    let roots = eigenvalues(&m)?;
    let scale = roots.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let root = roots
        .iter()
        .copied()
        .min_by(|a, b| (a - lambda).norm().total_cmp(&(b - lambda).norm()))
        .filter(|r| (r - lambda).norm() <= tol * scale)
        .ok_or_else(|| Error::NotAnEigenvalue(format!("{} for {chi}", format_complex(lambda))))?;

    let mut shifted = m.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= root;
    }
    let mut threshold = tol * inf_norm(&m).max(1.0);
    let mut basis = nullspace(&shifted, threshold);
    // a well-separated root can still leave a pivot just above the
    // threshold; relax a few times before giving up
    while basis.is_empty() && threshold < 1e-4 * scale {
        threshold *= 100.0;
        basis = nullspace(&shifted, threshold);
    }
    if basis.is_empty() {
        return Err(Error::SolverFailure(format!(
            "no null vector for {} at {chi}",
            format_complex(root)
        )));
    }
    let mut basis = orthonormalize(&basis);
    for v in basis.iter_mut() {
        fix_phase(v);
    }
    Ok(basis)
}

/// `v_chi` normalized to unit length.
pub fn character_vector(s: &Symbol, chi: Character) -> CVector {
    let h = s.group();
    let scale = 1.0 / (h.order() as f64).sqrt();
    h.elements()
        .map(|x| char_value(h, chi, x) * scale)
        .collect()
}

/// `u (x) v`: coordinate `i * n + h` is `u_i v_h`.
pub fn tensor(u: &[Complex64], v: &[Complex64]) -> CVector {
    u.iter()
        .flat_map(|&a| v.iter().map(move |&b| a * b))
        .collect()
}

/// Everything known about one eigenvalue.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub lambda: Complex64,
    pub characters: Vec<Character>,
    pub v_spaces: Vec<(Character, Vec<CVector>)>,
    /// Orthonormal basis of `W_lambda`, coordinates in the frame order.
    pub w_basis: Vec<CVector>,
}

impl EigenData {
    pub fn dim(&self) -> usize {
        self.w_basis.len()
    }
}

fn eigen_data_for(s: &Symbol, entry: &SpectrumEntry, tol: f64) -> Result<EigenData> {
    let mut v_spaces = Vec::new();
    let mut w_basis = Vec::new();
    for &chi in &entry.characters {
        let v = eigenspace_v(chi, s, entry.lambda, tol)?;
        let vchi = character_vector(s, chi);
        w_basis.extend(v.iter().map(|u| tensor(u, &vchi)));
        v_spaces.push((chi, v));
    }
    Ok(EigenData {
        lambda: entry.lambda,
        characters: entry.characters.clone(),
        v_spaces,
        w_basis,
    })
}

/// Basis of `W_lambda` as the union of `V_{lambda,chi} (x) <v_chi>` over
/// `chi` in `K_{S,lambda}`.
pub fn eigenspace_w(s: &Symbol, lambda: Complex64, tol: f64) -> Result<Vec<CVector>> {
    let spec = spectrum(s, tol)?;
    let entry = spec.entry(lambda, tol)?;
    Ok(eigen_data_for(s, entry, tol)?.w_basis)
}

/// Eigen data for every eigenvalue, in reporting order.
pub fn eigen_decomposition(s: &Symbol, tol: f64) -> Result<(Spectrum, Vec<EigenData>)> {
    let spec = spectrum(s, tol)?;
    let data = spec
        .entries
        .iter()
        .map(|e| eigen_data_for(s, e, tol))
        .collect::<Result<_>>()?;
    Ok((spec, data))
}

/// Eigen data for a single eigenvalue.
pub fn eigen_data(s: &Symbol, lambda: Complex64, tol: f64) -> Result<EigenData> {
    let spec = spectrum(s, tol)?;
    let entry = spec.entry(lambda, tol)?;
    eigen_data_for(s, entry, tol)
}
