mod common;

use std::collections::HashSet;

use common::random_instance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use specblock::abelian::is_subgroup;
use specblock::partition::{
    build_partition, rebase, recover_g_triple, spectral_block_system, GTriple,
};
use specblock::perm::{
    all_block_systems_oracle, enumerate_group, is_invariant_partition, kernel_of_partition_action,
    Partition, Perm, DEFAULT_CAP,
};
use specblock::spectral::{spectrum, DEFAULT_TOL};

/// Every set partition of `0..n` by restricted growth strings.
fn all_partitions(n: usize) -> Vec<Partition> {
    fn grow(labels: &mut Vec<usize>, n: usize, out: &mut Vec<Partition>) {
        if labels.len() == n {
            out.push(Partition::from_labels(labels));
            return;
        }
        let next = labels.iter().copied().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            grow(labels, n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

fn small_instances(count: usize, seed: u64) -> Vec<common::Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let inst = random_instance(&mut rng);
        if inst.frame.degree() <= 8 {
            out.push(inst);
        }
    }
    out
}

#[test]
fn bell_numbers() {
    let counts: Vec<usize> = (1..=8).map(|n| all_partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 15, 52, 203, 877, 4140]);
}

#[test]
fn invariant_partitions_match_brute_force() {
    for inst in small_instances(40, 11) {
        let n = inst.frame.degree();
        let brute: HashSet<Vec<Vec<usize>>> = all_partitions(n)
            .into_iter()
            .filter(|p| is_invariant_partition(&inst.group, p))
            .map(|p| p.cells().to_vec())
            .collect();
        let blocks: HashSet<Vec<Vec<usize>>> = all_block_systems_oracle(&inst.group)
            .unwrap()
            .into_iter()
            .map(|p| p.cells().to_vec())
            .collect();
        assert_eq!(brute, blocks);
    }
}

#[test]
fn every_invariant_partition_is_a_g_triple() {
    for inst in small_instances(40, 12) {
        let (g, f) = (&inst.group, &inst.frame);
        let h = f.group();
        for b in all_block_systems_oracle(g).unwrap() {
            let kernel = kernel_of_partition_action(g, &b, DEFAULT_CAP).unwrap();
            let members: HashSet<Perm> = enumerate_group(&kernel, DEFAULT_CAP)
                .unwrap()
                .into_iter()
                .collect();
            let k_expected: Vec<usize> = h
                .elements()
                .filter(|&x| members.contains(f.element_perm(x)))
                .collect();
            for anchor in 0..f.degree() {
                let t = recover_g_triple(&b, g, f, anchor).unwrap();
                assert!(t.base.contains(&anchor));
                assert!(t.delta.is_uniform());
                assert_eq!(t.k, k_expected);
                assert!(is_subgroup(h, &t.k));
                assert_eq!(build_partition(&t, f).unwrap(), b);
            }
        }
    }
}

#[test]
fn delta_and_k_do_not_depend_on_the_anchor() {
    for inst in small_instances(30, 13) {
        let (g, f) = (&inst.group, &inst.frame);
        let systems = all_block_systems_oracle(g).unwrap();
        let triples: Vec<GTriple> = systems
            .iter()
            .map(|b| recover_g_triple(b, g, f, 0).unwrap())
            .collect();
        for (i, a) in triples.iter().enumerate() {
            for x in 0..f.degree() {
                let moved = rebase(a, f, x).unwrap();
                assert!(moved.base.contains(&x));
                assert_eq!(build_partition(&moved, f).unwrap(), systems[i]);
                assert_eq!(
                    recover_g_triple(&systems[i], g, f, x).unwrap().delta,
                    a.delta
                );
            }
        }
    }
}

#[test]
fn spectral_systems_are_block_systems() {
    for inst in small_instances(40, 14) {
        let (g, f) = (&inst.group, &inst.frame);
        let systems: HashSet<Vec<Vec<usize>>> = all_block_systems_oracle(g)
            .unwrap()
            .into_iter()
            .map(|p| p.cells().to_vec())
            .collect();
        let elements = enumerate_group(g, DEFAULT_CAP).unwrap();
        for e in spectrum(&inst.symbol, DEFAULT_TOL).unwrap().entries {
            let b = spectral_block_system(g, &inst.symbol, f, e.lambda, DEFAULT_TOL, DEFAULT_CAP)
                .unwrap();
            assert!(systems.contains(&b.partition.cells().to_vec()));
            assert!(b.partition.is_uniform());
            let kernel: HashSet<&Perm> = b.kernel.cached_elements().unwrap().iter().collect();
            for x in &elements {
                for k in b.kernel.generators() {
                    assert!(kernel.contains(&x.inverse().then(k).then(x)));
                }
            }
        }
    }
}
