//! G-triples and the partitions they describe, the spectral block systems
//! `B_{S,lambda}`, the auxiliary partitions `Delta_{lambda,chi}`, and checks
//! of the extremal cases.
//!
//! A G-triple `(x, Delta, K)` has a base vector `x` (one point per orbit of
//! `H`), a partition `Delta` of the orbit indices, and a subgroup `K` of `H`.
//! It describes the partition whose cells are `U_{i in T} x_i^{hK}` for `T`
//! in `Delta` and `h` in `H`.

use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::abelian::{char_eval, is_subgroup, subgroup_generated_by_chars, Character};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, CVector};
use crate::perm::{
    enumerate_group, fixes_every_cell, is_invariant_partition, minimal_block, Partition, Perm,
    PermGroup,
};
use crate::spectral::{eigen_data, eigenspace_v, format_complex, spectrum};
use crate::symbol::{ElementJson, SemiregularFrame, Symbol};

/// A partition of the orbit indices `0..m`.
pub type IndexPartition = Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTriple {
    pub base: Vec<usize>,
    pub delta: IndexPartition,
    /// Sorted element indices of `K`.
    pub k: Vec<usize>,
}

fn check_base(base: &[usize], f: &SemiregularFrame) -> Result<()> {
    if base.len() != f.m() {
        return Err(Error::BaseVectorMismatch);
    }
    for (i, &x) in base.iter().enumerate() {
        if x >= f.degree() || f.orbit_index(x) != i {
            return Err(Error::BaseVectorMismatch);
        }
    }
    Ok(())
}

/// The partition `Pi(x, Delta, K)`.
pub fn build_partition(t: &GTriple, f: &SemiregularFrame) -> Result<Partition> {
    check_base(&t.base, f)?;
    if t.delta.degree() != f.m() {
        return Err(Error::InvalidInput(format!(
            "Delta is on {} indices, expected {}",
            t.delta.degree(),
            f.m()
        )));
    }
    let h = f.group();
    if !is_subgroup(h, &t.k) {
        return Err(Error::NotASubgroup);
    }
    let offsets: Vec<usize> = t.base.iter().map(|&x| f.coords(x).1).collect();
    let mut label = vec![usize::MAX; f.degree()];
    let mut cells = 0;
    for cell in t.delta.cells() {
        for shift in h.elements() {
            if label[f.point(cell[0], h.add(offsets[cell[0]], shift))] != usize::MAX {
                continue;
            }
            for &i in cell {
                for &k in &t.k {
                    label[f.point(i, h.add(h.add(offsets[i], shift), k))] = cells;
                }
            }
            cells += 1;
        }
    }
    Ok(Partition::from_labels(&label))
}

/// Moves the base vector so it contains `x`, without changing the partition:
/// the coordinates in the `Delta`-cell of `x`'s orbit are all shifted by the
/// element taking the old base point to `x`.
pub fn rebase(t: &GTriple, f: &SemiregularFrame, x: usize) -> Result<GTriple> {
    check_base(&t.base, f)?;
    let h = f.group();
    let (j, target) = f.coords(x);
    let shift = h.sub(target, f.coords(t.base[j]).1);
    let base = t
        .base
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            if t.delta.same_cell(i, j) {
                let (_, a) = f.coords(y);
                f.point(i, h.add(a, shift))
            } else {
                y
            }
        })
        .collect();
    Ok(GTriple {
        base,
        delta: t.delta.clone(),
        k: t.k.clone(),
    })
}

/// A G-triple of an invariant partition: `i ~ j` when some block meets both
/// `X_i` and `X_j`, and `K` is the part of `H` fixing every block. The base
/// vector contains `anchor`.
pub fn recover_g_triple(
    b: &Partition,
    g: &PermGroup,
    f: &SemiregularFrame,
    anchor: usize,
) -> Result<GTriple> {
    if b.degree() != f.degree() || g.degree() != f.degree() {
        return Err(Error::DegreeMismatch {
            expected: f.degree(),
            found: b.degree(),
        });
    }
    if anchor >= f.degree() {
        return Err(Error::PointOutOfRange {
            point: anchor,
            degree: f.degree(),
        });
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if !is_invariant_partition(g, b) {
        return Err(Error::NotInvariant);
    }
    let m = f.m();
    let mut label: Vec<usize> = (0..m).collect();
    for cell in b.cells() {
        let orbits: Vec<usize> = cell.iter().map(|&x| f.orbit_index(x)).collect();
        let low = orbits
            .iter()
            .map(|&i| label[i])
            .min()
            .expect("cells are nonempty");
        let touched: HashSet<usize> = orbits.iter().map(|&i| label[i]).collect();
        for l in label.iter_mut() {
            if touched.contains(l) {
                *l = low;
            }
        }
    }
    let delta = Partition::from_labels(&label);
    if !delta.is_uniform() {
        return Err(Error::InvalidInput("recovered Delta is not uniform".into()));
    }
    let k: Vec<usize> = f
        .group()
        .elements()
        .filter(|&h| fixes_every_cell(f.element_perm(h), b))
        .collect();

    let anchor_orbit = f.orbit_index(anchor);
    let mut base = vec![usize::MAX; m];
    for cell in delta.cells() {
        let block = if cell.contains(&anchor_orbit) {
            b.cell_of(anchor)
        } else {
            b.cell_of(f.base()[cell[0]])
        };
        for &x in block {
            let i = f.orbit_index(x);
            if base[i] == usize::MAX {
                base[i] = x;
            }
        }
    }
    base[anchor_orbit] = anchor;
    let triple = GTriple { base, delta, k };
    if &build_partition(&triple, f)? != b {
        return Err(Error::InvalidInput(
            "recovered G-triple does not rebuild the partition".into(),
        ));
    }
    Ok(triple)
}

/// `(v^g)_x = v_{x^g}` on vectors indexed in frame order.
pub fn act_on_vector(g: &Perm, f: &SemiregularFrame, v: &[Complex64]) -> CVector {
    (0..v.len())
        .map(|pos| v[f.position(g.apply(f.point_at(pos)))])
        .collect()
}

fn fixes_vector(g: &Perm, f: &SemiregularFrame, w: &[Complex64], tol: f64) -> bool {
    let bound = tol * max_abs(w);
    (0..w.len()).all(|pos| (w[f.position(g.apply(f.point_at(pos)))] - w[pos]).norm() <= bound)
}

#[derive(Clone, Debug)]
pub struct SpectralBlocks {
    pub lambda: Complex64,
    pub partition: Partition,
    pub triple: GTriple,
    /// `K_lambda`, with its element list cached.
    pub kernel: PermGroup,
    /// `K_lambda` intersected with `H`, as sorted element indices.
    pub kernel_in_h: Vec<usize>,
}

/// `B_{S,lambda}`: the orbits of the kernel of the action of `g` on
/// `W_lambda`. Kernel membership is a max-norm residual test; the elements
/// that pass are checked to form a subgroup.
pub fn spectral_block_system(
    g: &PermGroup,
    s: &Symbol,
    f: &SemiregularFrame,
    lambda: Complex64,
    tol: f64,
    cap: usize,
) -> Result<SpectralBlocks> {
    let data = eigen_data(s, lambda, tol)?;
    let elements = enumerate_group(g, cap)?;
    let kernel_elements: Vec<Perm> = elements
        .into_iter()
        .filter(|p| data.w_basis.iter().all(|w| fixes_vector(p, f, w, tol)))
        .collect();
    let kernel = PermGroup::from_elements(g.degree(), kernel_elements)?;
    let members: HashSet<&Perm> = kernel.cached_elements().expect("cached").iter().collect();
    let closure = enumerate_group(
        &PermGroup::new(g.degree(), kernel.generators().to_vec())?,
        cap,
    )?;
    if closure.len() != members.len() || !closure.iter().all(|p| members.contains(p)) {
        return Err(Error::SolverFailure(format!(
            "kernel on W_{} is not closed at tolerance {tol:e}",
            format_complex(data.lambda)
        )));
    }
    let partition = Partition::new(g.degree(), kernel.orbits())?;
    let triple = recover_g_triple(&partition, g, f, 0)?;
    let kernel_in_h = f
        .group()
        .elements()
        .filter(|&h| members.contains(f.element_perm(h)))
        .collect();
    Ok(SpectralBlocks {
        lambda: data.lambda,
        partition,
        triple,
        kernel,
        kernel_in_h,
    })
}

/// `Delta_{lambda,chi}`: `i ~ j` when row `i` of an orthonormal basis of
/// `V_{lambda,chi}` equals `chi(h)` times row `j` for some `h`.
pub fn delta_lambda_chi(
    s: &Symbol,
    lambda: Complex64,
    chi: Character,
    tol: f64,
) -> Result<IndexPartition> {
    let basis = eigenspace_v(chi, s, lambda, tol)?;
    delta_from_basis(s, &basis, chi, tol)
}

/// `Delta_{lambda,chi}` for a given basis of `V_{lambda,chi}`.
pub fn delta_from_basis(
    s: &Symbol,
    basis: &[CVector],
    chi: Character,
    tol: f64,
) -> Result<IndexPartition> {
    let m = s.m();
    let h = s.group();
    let mut scalars: Vec<Complex64> = Vec::new();
    let mut seen = HashSet::new();
    for x in h.elements() {
        let r = char_eval(h, chi, x);
        if seen.insert(r) {
            scalars.push(r.to_complex());
        }
    }
    let rows: Vec<Vec<Complex64>> = (0..m)
        .map(|i| basis.iter().map(|u| u[i]).collect())
        .collect();
    let scale = rows.iter().map(|r| max_abs(r)).fold(0.0, f64::max);
    let related = |i: usize, j: usize| {
        scalars.iter().any(|&c| {
            rows[i]
                .iter()
                .zip(&rows[j])
                .all(|(a, b)| (a - c * b).norm() <= tol * scale)
        })
    };
    let mut label: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            if label[i] != label[j] && related(i, j) {
                let (keep, drop) = (label[i].min(label[j]), label[i].max(label[j]));
                for l in label.iter_mut() {
                    if *l == drop {
                        *l = keep;
                    }
                }
            }
        }
    }
    Ok(Partition::from_labels(&label))
}

pub fn check_refinement(fine: &IndexPartition, coarse: &IndexPartition) -> bool {
    fine.degree() == coarse.degree() && fine.refines(coarse)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremeCase {
    /// `<K_{S,lambda}> = H*` and `K_lambda` is nontrivial.
    GeneratesDual,
    /// `lambda != val` and `K_{S,lambda} = {chi_0}`.
    PrincipalOnly,
    Neither,
}

#[derive(Clone, Debug)]
pub struct ExtremeReport {
    pub lambda: Complex64,
    pub case: ExtremeCase,
    pub blocks: SpectralBlocks,
    /// Structural claims that failed; empty when everything checks out.
    pub violations: Vec<String>,
}

impl ExtremeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_prime(m: usize) -> bool {
    m >= 2
        && (2..m)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}

/// Which extremal case `lambda` falls into, with its structural consequences
/// checked on the computed block system.
pub fn classify_extreme(
    g: &PermGroup,
    s: &Symbol,
    f: &SemiregularFrame,
    lambda: Complex64,
    tol: f64,
    cap: usize,
) -> Result<ExtremeReport> {
    let spec = spectrum(s, tol)?;
    let entry = spec.entry(lambda, tol)?.clone();
    let blocks = spectral_block_system(g, s, f, lambda, tol, cap)?;
    let h = f.group();
    let generates = subgroup_generated_by_chars(h, &entry.characters).len() == h.order();
    let val = s.row_valency(0) as f64;
    let scale = spec
        .entries
        .iter()
        .map(|e| e.lambda.norm())
        .fold(1.0f64, f64::max);
    let is_val = (entry.lambda - Complex64::new(val, 0.0)).norm() <= tol * scale;
    let kernel_order = blocks.kernel.cached_elements().map_or(1, <[Perm]>::len);
    let m = f.m();
    let delta = &blocks.triple.delta;
    let mut violations = Vec::new();

    let case = if generates && kernel_order > 1 {
        for cell in blocks.partition.cells() {
            let mut hits = vec![0usize; m];
            for &x in cell {
                hits[f.orbit_index(x)] += 1;
            }
            if hits.iter().any(|&c| c > 1) {
                violations.push(format!("block {cell:?} meets an orbit of H twice"));
            }
            if delta.is_universal() && hits.iter().any(|&c| c != 1) {
                violations.push(format!("block {cell:?} misses an orbit of H"));
            }
        }
        if delta.is_singletons() {
            violations.push("Delta_lambda is trivial although the kernel is not".into());
        }
        if is_prime(m) && !delta.is_universal() {
            violations.push("prime number of orbits but Delta_lambda is not universal".into());
        }
        ExtremeCase::GeneratesDual
    } else if !is_val && entry.characters == [Character::PRINCIPAL] {
        if blocks.kernel_in_h.len() != h.order() {
            violations.push("K_lambda does not contain H".into());
        }
        if blocks.partition.is_universal() {
            violations.push("K_lambda is transitive".into());
        }
        for cell in blocks.partition.cells() {
            let orbits: HashSet<usize> = cell.iter().map(|&x| f.orbit_index(x)).collect();
            if orbits.len() * f.n() != cell.len() {
                violations.push(format!("block {cell:?} is not a union of H-orbits"));
            }
        }
        let members: HashSet<&Perm> = blocks
            .kernel
            .cached_elements()
            .expect("cached")
            .iter()
            .collect();
        for x in g.generators() {
            for k in blocks.kernel.generators() {
                if !members.contains(&x.inverse().then(k).then(x)) {
                    violations.push("K_lambda is not normal".into());
                }
            }
        }
        if delta.is_singletons() {
            let orbit_partition = Partition::new(f.degree(), f.orbits().to_vec())?;
            if blocks.partition != orbit_partition {
                violations
                    .push("Delta_lambda is trivial but the blocks are not the H-orbits".into());
            }
        }
        if is_prime(m) && !delta.is_singletons() {
            violations.push("prime number of orbits but Delta_lambda is not trivial".into());
        }
        ExtremeCase::PrincipalOnly
    } else {
        ExtremeCase::Neither
    };
    Ok(ExtremeReport {
        lambda: entry.lambda,
        case,
        blocks,
        violations,
    })
}

#[derive(Clone, Debug)]
pub struct PrimitiveCheck {
    pub lambda: Complex64,
    pub characters: Vec<Character>,
    pub generates_dual: bool,
}

/// For a primitive `g`, checks that `K_{S,lambda}` generates the dual group
/// for every eigenvalue other than the valency. For `m = 1` the character
/// set is also compared with `{chi : chi(S) = lambda}`.
pub fn check_primitive_theorem(
    g: &PermGroup,
    s: &Symbol,
    f: &SemiregularFrame,
    tol: f64,
) -> Result<Vec<PrimitiveCheck>> {
    if !g.is_transitive() {
        return Err(Error::NotPrimitive);
    }
    for y in 1..g.degree() {
        if !minimal_block(g, (0, y))?.is_universal() {
            return Err(Error::NotPrimitive);
        }
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: f.degree(),
        });
    }
    let spec = spectrum(s, tol)?;
    let h = s.group();
    let val = Complex64::new(s.row_valency(0) as f64, 0.0);
    let scale = spec
        .entries
        .iter()
        .map(|e| e.lambda.norm())
        .fold(1.0f64, f64::max);
    let mut out = Vec::new();
    for e in &spec.entries {
        if (e.lambda - val).norm() <= tol * scale {
            continue;
        }
        let mut generates = subgroup_generated_by_chars(h, &e.characters).len() == h.order();
        if s.m() == 1 {
            let direct: Vec<Character> = h
                .characters()
                .filter(|&chi| {
                    (crate::abelian::char_sum(h, chi, s.entry(0, 0)) - e.lambda).norm()
                        <= tol * scale
                })
                .collect();
            generates &= direct == e.characters;
        }
        out.push(PrimitiveCheck {
            lambda: e.lambda,
            characters: e.characters.clone(),
            generates_dual: generates,
        });
    }
    Ok(out)
}

/// `{"cells": [[points...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub cells: Vec<Vec<usize>>,
}

impl From<&Partition> for PartitionJson {
    fn from(p: &Partition) -> Self {
        PartitionJson {
            cells: p.cells().to_vec(),
        }
    }
}

impl PartitionJson {
    pub fn to_partition(&self) -> Result<Partition> {
        let n = self.cells.iter().map(Vec::len).sum();
        Partition::new(n, self.cells.clone())
    }
}

/// `{"base": [...], "delta": [[...], ...], "k": [h, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTripleJson {
    pub base: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
    pub k: Vec<ElementJson>,
}

impl GTripleJson {
    pub fn from_triple(t: &GTriple, f: &SemiregularFrame) -> Self {
        GTripleJson {
            base: t.base.clone(),
            delta: t.delta.cells().to_vec(),
            k: t.k
                .iter()
                .map(|&x| ElementJson::from_index(f.group(), x))
                .collect(),
        }
    }

    pub fn to_triple(&self, f: &SemiregularFrame) -> Result<GTriple> {
        let mut k = self
            .k
            .iter()
            .map(|e| e.to_index(f.group()))
            .collect::<Result<Vec<_>>>()?;
        k.sort_unstable();
        k.dedup();
        Ok(GTriple {
            base: self.base.clone(),
            delta: Partition::new(self.base.len(), self.delta.clone())?,
            k,
        })
    }
}
