//! Brute-force cross-checks behind `--oracle`.

use std::collections::HashSet;

use nalgebra::{DMatrix, Schur};
use specblock::abelian::perp_of_characters;
use specblock::digraph::Digraph;
use specblock::partition::SpectralBlocks;
use specblock::perm::{all_block_systems_oracle, kernel_of_partition_action, Perm, PermGroup};
use specblock::spectral::{format_complex, Spectrum, SpectrumEntry};
use specblock::symbol::SemiregularFrame;

use crate::failure::Failure;

/// Eigenvalues of the full adjacency matrix by a real Schur decomposition,
/// retried on fixed orthogonal similarities when the iteration stalls.
pub fn dense_eigenvalues(d: &Digraph) -> Result<Vec<num_complex::Complex64>, Failure> {
    let n = d.order();
    let rows = d.adjacency_rows();
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64);
    let mut m = a.clone();
    for attempt in 1..=8 {
        if let Some(schur) = Schur::try_new(m.clone(), f64::EPSILON, 10_000) {
            return Ok(schur
                .complex_eigenvalues()
                .iter()
                .map(|z| num_complex::Complex64::new(z.re, z.im))
                .collect());
        }
        let q = DMatrix::from_fn(n, n, |i, j| ((7 * i + 13 * j + attempt) as f64).sin())
            .qr()
            .q();
        m = q.transpose() * &a * q;
    }
    Err(Failure::Internal(
        "dense Schur iteration did not converge".into(),
    ))
}

/// Every dense eigenvalue lies near exactly one reported value and the
/// counts match the reported multiplicities.
pub fn check_spectrum(d: &Digraph, spec: &Spectrum) -> Result<(), Failure> {
    let dense = dense_eigenvalues(d)?;
    let scale = dense.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let eps = 1e-5 * scale;
    let mut counts = vec![0usize; spec.entries.len()];
    for z in &dense {
        let near: Vec<usize> = (0..spec.entries.len())
            .filter(|&i| (spec.entries[i].lambda - z).norm() <= eps)
            .collect();
        match near.as_slice() {
            [i] => counts[*i] += 1,
            _ => {
                return Err(Failure::Oracle(format!(
                    "dense eigenvalue {} matches {} reported values",
                    format_complex(*z),
                    near.len()
                )))
            }
        }
    }
    for (e, c) in spec.entries.iter().zip(counts) {
        if c != e.multiplicity {
            return Err(Failure::Oracle(format!(
                "{} has multiplicity {} but the dense solver finds {c}",
                format_complex(e.lambda),
                e.multiplicity
            )));
        }
    }
    Ok(())
}

/// Blocks among all block systems, `K` equal to `H` meeting the kernel on
/// blocks, and the kernel in `H` equal to the annihilator of the characters.
pub fn check_blocks(
    g: &PermGroup,
    f: &SemiregularFrame,
    entry: &SpectrumEntry,
    b: &SpectralBlocks,
    systems: &[Vec<Vec<usize>>],
    cap: usize,
) -> Result<(), Failure> {
    let at = format_complex(entry.lambda);
    if !systems.iter().any(|s| s.as_slice() == b.partition.cells()) {
        return Err(Failure::Oracle(format!(
            "blocks for {at} are not a block system"
        )));
    }
    let kernel = kernel_of_partition_action(g, &b.partition, cap)?;
    let members: HashSet<&Perm> = kernel
        .cached_elements()
        .unwrap_or_default()
        .iter()
        .collect();
    let k: Vec<usize> = f
        .group()
        .elements()
        .filter(|&x| members.contains(f.element_perm(x)))
        .collect();
    if k != b.triple.k {
        return Err(Failure::Oracle(format!(
            "K for {at} differs from H meeting the block kernel"
        )));
    }
    let perp = perp_of_characters(f.group(), &entry.characters).elements;
    if perp != b.kernel_in_h {
        return Err(Failure::Oracle(format!(
            "kernel in H for {at} is not the annihilator of its characters"
        )));
    }
    Ok(())
}

pub fn block_systems(g: &PermGroup) -> Result<Vec<Vec<Vec<usize>>>, Failure> {
    Ok(all_block_systems_oracle(g)?
        .into_iter()
        .map(|p| p.cells().to_vec())
        .collect())
}
