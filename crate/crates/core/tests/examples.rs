use std::collections::BTreeSet;

use num_complex::Complex64;
use specblock::abelian::{AbelianGroup, Character};
use specblock::automorphism::{automorphism_group_oracle, DEFAULT_NODE_BUDGET};
use specblock::error::Error;
use specblock::gp::gp_graph;
use specblock::partition::{
    check_primitive_theorem, check_refinement, classify_extreme, delta_lambda_chi, rebase,
    recover_g_triple, spectral_block_system, ExtremeCase, GTriple,
};
use specblock::perm::{Partition, Perm, PermGroup, DEFAULT_CAP};
use specblock::spectral::{eigen_data, spectrum, DEFAULT_TOL};
use specblock::symbol::{build_frame, digraph_from_symbol, Symbol};

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn cube(first: bool) -> Symbol {
    let (diag, off): (&[usize], &[usize]) = if first {
        (&[1, 3], &[0])
    } else {
        (&[], &[1, 2, 3])
    };
    let back: Vec<usize> = off.iter().map(|&x| (4 - x) % 4).collect();
    Symbol::new(
        AbelianGroup::cyclic(4),
        vec![vec![set(diag), set(off)], vec![set(&back), set(diag)]],
    )
    .unwrap()
}

#[test]
fn recovered_triples_of_the_bipartition() {
    for (first, k) in [(true, vec![0, 2]), (false, vec![0, 1, 2, 3])] {
        let s = cube(first);
        let (d, f) = digraph_from_symbol(&s);
        let g = automorphism_group_oracle(&d, DEFAULT_NODE_BUDGET).unwrap();
        let b = spectral_block_system(&g, &s, &f, re(-3.0), DEFAULT_TOL, DEFAULT_CAP).unwrap();
        let t = recover_g_triple(&b.partition, &g, &f, 0).unwrap();
        assert_eq!(t.k, k);
        assert_eq!(t.delta.is_universal(), first);
        assert_eq!(t.delta.is_singletons(), !first);
    }
}

#[test]
fn second_cube_blocks() {
    let s = cube(false);
    let (d, f) = digraph_from_symbol(&s);
    let g = automorphism_group_oracle(&d, DEFAULT_NODE_BUDGET).unwrap();
    let b = spectral_block_system(&g, &s, &f, re(-1.0), DEFAULT_TOL, DEFAULT_CAP).unwrap();
    assert_eq!(
        b.partition.cells(),
        &[vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]]
    );
    let b = spectral_block_system(&g, &s, &f, re(1.0), DEFAULT_TOL, DEFAULT_CAP).unwrap();
    assert!(b.partition.is_singletons());
    assert_eq!(b.kernel.cached_elements().unwrap().len(), 1);
    let r = classify_extreme(&g, &s, &f, re(-3.0), DEFAULT_TOL, DEFAULT_CAP).unwrap();
    assert_eq!(r.case, ExtremeCase::PrincipalOnly);
    assert!(r.holds(), "{:?}", r.violations);
    assert_eq!(r.blocks.partition.cells(), f.orbits());
}

#[test]
fn delta_refines_on_the_cube() {
    let s = cube(true);
    let (d, f) = digraph_from_symbol(&s);
    let g = automorphism_group_oracle(&d, DEFAULT_NODE_BUDGET).unwrap();
    let b = spectral_block_system(&g, &s, &f, re(-1.0), DEFAULT_TOL, DEFAULT_CAP).unwrap();
    let d1 = delta_lambda_chi(&s, re(-1.0), Character(1), DEFAULT_TOL).unwrap();
    assert!(check_refinement(&b.triple.delta, &d1));
    assert!(!check_refinement(
        &Partition::universal(2),
        &Partition::singletons(2)
    ));
}

#[test]
fn cube_eigenspaces() {
    let s = cube(true);
    let w = eigen_data(&s, re(-3.0), DEFAULT_TOL).unwrap();
    assert_eq!(w.dim(), 1);
    let v = &w.w_basis[0];
    let pattern = [1.0, -1.0, 1.0, -1.0, -1.0, 1.0, -1.0, 1.0];
    let ratio = v[0] / re(pattern[0]);
    for (x, p) in v.iter().zip(pattern) {
        assert!((x - ratio * p).norm() < 1e-12);
    }
    assert_eq!(eigen_data(&s, re(-1.0), DEFAULT_TOL).unwrap().dim(), 3);
    assert!(matches!(
        eigen_data(&s, re(2.0), DEFAULT_TOL),
        Err(Error::NotAnEigenvalue(_))
    ));
}

#[test]
fn rebased_example_triple() {
    let h = Perm::from_cycles(12, &[&[0, 1, 2, 3], &[4, 5, 6, 7], &[8, 9, 10, 11]]).unwrap();
    let f = build_frame(&PermGroup::new(12, vec![h]).unwrap(), None).unwrap();
    let t = GTriple {
        base: vec![0, 4, 8],
        delta: Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap(),
        k: vec![0, 2],
    };
    assert_eq!(rebase(&t, &f, 5).unwrap().base, vec![1, 5, 8]);
}

#[test]
fn petersen_spectrum_closed_form() {
    let (_, _, bs) = gp_graph(5, 2).unwrap();
    let spec = spectrum(&bs.to_symbol().unwrap(), DEFAULT_TOL).unwrap();
    let mut expected = Vec::new();
    for j in 0..5 {
        let c = |k: usize| 2.0 * (2.0 * std::f64::consts::PI * (j * k) as f64 / 5.0).cos();
        let (a, b) = (c(1), c(2));
        let disc = ((a - b) * (a - b) + 4.0).sqrt();
        expected.push((a + b + disc) / 2.0);
        expected.push((a + b - disc) / 2.0);
    }
    for e in &spec.entries {
        let count = expected
            .iter()
            .filter(|&&x| (x - e.lambda.re).abs() < 1e-9)
            .count();
        assert_eq!(count, e.multiplicity);
    }
    let values: Vec<f64> = spec.entries.iter().map(|e| e.lambda.re).collect();
    assert!(values
        .iter()
        .zip([3.0, 1.0, -2.0])
        .all(|(x, y)| (x - y).abs() < 1e-9));
}

#[test]
fn empty_symbol() {
    let s = Symbol::new(AbelianGroup::cyclic(3), vec![vec![BTreeSet::new()]]).unwrap();
    let spec = spectrum(&s, DEFAULT_TOL).unwrap();
    assert_eq!(spec.entries.len(), 1);
    assert!(spec.entries[0].lambda.norm() < 1e-12);
    assert_eq!(spec.entries[0].multiplicity, 3);
}

#[test]
fn complete_graph_on_five() {
    let s = Symbol::new(AbelianGroup::cyclic(5), vec![vec![set(&[1, 2, 3, 4])]]).unwrap();
    let (_, f) = digraph_from_symbol(&s);
    let g = PermGroup::symmetric(5);
    let checks = check_primitive_theorem(&g, &s, &f, DEFAULT_TOL).unwrap();
    assert_eq!(checks.len(), 1);
    assert!((checks[0].lambda - re(-1.0)).norm() < 1e-9);
    assert_eq!(
        checks[0].characters,
        (1..5).map(Character).collect::<Vec<_>>()
    );
    assert!(checks[0].generates_dual);
}

#[test]
fn imprimitive_group_is_rejected() {
    let s = cube(true);
    let (d, f) = digraph_from_symbol(&s);
    let g = automorphism_group_oracle(&d, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(
        check_primitive_theorem(&g, &s, &f, DEFAULT_TOL).unwrap_err(),
        Error::NotPrimitive
    );
}

#[test]
fn faithful_petersen_eigenspaces() {
    let (d, f, bs) = gp_graph(5, 2).unwrap();
    let s = bs.to_symbol().unwrap();
    let g = automorphism_group_oracle(&d, DEFAULT_NODE_BUDGET).unwrap();
    for lambda in [1.0, -2.0] {
        let r = classify_extreme(&g, &s, &f, re(lambda), DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert_eq!(r.case, ExtremeCase::Neither);
        assert!(r.blocks.partition.is_singletons());
        assert!(r.holds());
    }
}
