#![allow(dead_code)]

use std::collections::BTreeSet;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specblock::abelian::AbelianGroup;
use specblock::automorphism::all_automorphisms;
use specblock::digraph::Digraph;
use specblock::perm::{Perm, PermGroup};
use specblock::roots::cluster;
use specblock::symbol::{digraph_from_symbol, SemiregularFrame, Symbol};

pub const SHAPES: &[&[usize]] = &[
    &[1],
    &[2],
    &[3],
    &[4],
    &[5],
    &[6],
    &[7],
    &[8],
    &[9],
    &[10],
    &[2, 2],
    &[2, 4],
    &[3, 3],
    &[2, 2, 2],
];

pub fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn random_group(rng: &mut ChaCha8Rng) -> AbelianGroup {
    AbelianGroup::new(SHAPES.choose(rng).unwrap().to_vec()).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

pub fn random_symbol(rng: &mut ChaCha8Rng, h: &AbelianGroup, m: usize) -> Symbol {
    let p = rng.gen_range(0.15..0.6);
    let entries = (0..m)
        .map(|_| (0..m).map(|_| random_subset(rng, h.order(), p)).collect())
        .collect();
    Symbol::new(h.clone(), entries).unwrap()
}

/// A digraph together with a transitive group of automorphisms containing
/// the semiregular group of the frame.
pub struct Instance {
    pub symbol: Symbol,
    pub digraph: Digraph,
    pub frame: SemiregularFrame,
    pub group: PermGroup,
}

/// The regular group `H x Z_m` on the canonical frame.
pub fn regular_group(f: &SemiregularFrame) -> PermGroup {
    let m = f.m();
    let shift = Perm::new(
        (0..f.degree())
            .map(|x| {
                let (i, h) = f.coords(x);
                f.point((i + 1) % m, h)
            })
            .collect(),
    )
    .unwrap();
    let mut gens: Vec<Perm> = f.h().generators().to_vec();
    gens.push(shift);
    PermGroup::new(f.degree(), gens).unwrap()
}

const AUT_BUDGET: usize = 200_000;
const MAX_GROUP: usize = 5_000;

fn small_aut(d: &Digraph) -> Option<PermGroup> {
    let all = all_automorphisms(d, AUT_BUDGET).ok()?;
    if all.len() > MAX_GROUP {
        return None;
    }
    PermGroup::from_elements(d.order(), all).ok()
}

/// Either a random symbol whose digraph has a small transitive automorphism
/// group, or a Cayley digraph of `H x Z_m` with its automorphism group (or
/// the regular group when that is too large).
pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let h = random_group(rng);
        let m = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            let symbol = random_symbol(rng, &h, m);
            let (digraph, frame) = digraph_from_symbol(&symbol);
            if let Some(group) = small_aut(&digraph).filter(|g| g.is_transitive()) {
                return Instance {
                    symbol,
                    digraph,
                    frame,
                    group,
                };
            }
            continue;
        }
        let p = rng.gen_range(0.15..0.6);
        let c: Vec<BTreeSet<usize>> = (0..m).map(|_| random_subset(rng, h.order(), p)).collect();
        let entries = (0..m)
            .map(|i| (0..m).map(|j| c[(j + m - i) % m].clone()).collect())
            .collect();
        let symbol = Symbol::new(h, entries).unwrap();
        let (digraph, frame) = digraph_from_symbol(&symbol);
        let group = if rng.gen_bool(0.5) {
            small_aut(&digraph).unwrap_or_else(|| regular_group(&frame))
        } else {
            regular_group(&frame)
        };
        return Instance {
            symbol,
            digraph,
            frame,
            group,
        };
    }
}

/// Eigenvalues of the 0/1 adjacency matrix by nalgebra's real Schur form.
/// When the iteration stalls on the exact matrix it is retried on a seeded
/// random orthogonal similarity of it.
pub fn oracle_eigenvalues(d: &Digraph) -> Vec<Complex64> {
    let n = d.order();
    let rows = d.adjacency_rows();
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let mut m = a.clone();
    for _ in 0..8 {
        if let Some(schur) = Schur::try_new(m.clone(), f64::EPSILON, 10_000) {
            return schur.complex_eigenvalues().iter().copied().collect();
        }
        let q = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
            .qr()
            .q();
        m = q.transpose() * &a * q;
    }
    panic!("Schur iteration did not converge");
}

/// Groups values within `radius` and returns (mean, count), sorted.
pub fn cluster_means(values: &[(Complex64, usize)], radius: f64) -> Vec<(Complex64, usize)> {
    let points: Vec<Complex64> = values.iter().map(|v| v.0).collect();
    let mut out: Vec<(Complex64, usize)> = cluster(&points, radius)
        .into_iter()
        .map(|members| {
            let count: usize = members.iter().map(|&i| values[i].1).sum();
            let total: Complex64 = members
                .iter()
                .map(|&i| values[i].0 * values[i].1 as f64)
                .sum();
            (total / count as f64, count)
        })
        .collect();
    out.sort_by(|a, b| b.0.re.total_cmp(&a.0.re).then(b.0.im.total_cmp(&a.0.im)));
    out
}
