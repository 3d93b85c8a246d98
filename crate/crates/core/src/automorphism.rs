//! Exact automorphism and isomorphism search for desk-scale digraphs.
//!
//! Individualization-refinement: both sides are colour-refined in lockstep
//! (colour, sorted out-neighbour colours, sorted in-neighbour colours); a
//! vertex of the first smallest non-singleton class on the left is
//! individualized against every vertex of the matching class on the right.
//! Each leaf of the tree is a candidate bijection that is verified arc by
//! arc, and with a fixed left path every automorphism appears at exactly one
//! leaf.

use std::collections::{HashSet, VecDeque};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

struct Search<'a> {
    left: &'a Digraph,
    right: &'a Digraph,
    budget: usize,
    nodes: usize,
    find_all: bool,
    found: Vec<Perm>,
}

fn signatures(d: &Digraph, colors: &[u32]) -> Vec<Vec<u32>> {
    (0..d.order())
        .map(|v| {
            let mut sig =
                Vec::with_capacity(2 + d.out_neighbors(v).len() + d.in_neighbors(v).len());
            sig.push(colors[v]);
            let start = sig.len();
            sig.extend(d.out_neighbors(v).iter().map(|&u| colors[u]));
            sig[start..].sort_unstable();
            sig.push(u32::MAX);
            let start = sig.len();
            sig.extend(d.in_neighbors(v).iter().map(|&u| colors[u]));
            sig[start..].sort_unstable();
            sig
        })
        .collect()
}

fn class_count(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&c| c as usize + 1)
}

impl<'a> Search<'a> {
    /// Refines both colourings to the coarsest equitable ones. Returns false
    /// as soon as the two sides stop corresponding.
    fn refine(&self, ca: &mut [u32], cb: &mut [u32]) -> bool {
        let mut classes = class_count(ca);
        loop {
            let sa = signatures(self.left, ca);
            let sb = signatures(self.right, cb);
            let mut sorted_a = sa.clone();
            sorted_a.sort_unstable();
            let mut sorted_b = sb;
            sorted_b.sort_unstable();
            if sorted_a != sorted_b {
                return false;
            }
            let sb = signatures(self.right, cb);
            sorted_a.dedup();
            for (v, sig) in sa.iter().enumerate() {
                ca[v] = sorted_a.binary_search(sig).expect("present") as u32;
            }
            for (v, sig) in sb.iter().enumerate() {
                cb[v] = sorted_a.binary_search(sig).expect("multisets agree") as u32;
            }
            if sorted_a.len() == classes {
                return true;
            }
            classes = sorted_a.len();
        }
    }

    fn leaf(&mut self, ca: &[u32], cb: &[u32]) -> bool {
        let n = self.left.order();
        let mut by_color = vec![0usize; n];
        for (w, &c) in cb.iter().enumerate() {
            by_color[c as usize] = w;
        }
        let images: Vec<usize> = ca.iter().map(|&c| by_color[c as usize]).collect();
        let ok = self
            .left
            .arcs()
            .all(|(u, v)| self.right.has_arc(images[u], images[v]));
        if ok {
            self.found
                .push(Perm::new(images).expect("discrete colourings give a bijection"));
        }
        ok
    }

    /// Returns `Ok(true)` when the search should stop.
    fn search(&mut self, mut ca: Vec<u32>, mut cb: Vec<u32>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::CapExceeded { cap: self.budget });
        }
        if !self.refine(&mut ca, &mut cb) {
            return Ok(false);
        }
        let n = self.left.order();
        let k = class_count(&ca);
        if k == n {
            let ok = self.leaf(&ca, &cb);
            return Ok(ok && !self.find_all);
        }
        let mut sizes = vec![0usize; k];
        for &c in &ca {
            sizes[c as usize] += 1;
        }
        let target = (0..k)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("non-discrete colouring has a nontrivial class") as u32;
        let v = ca
            .iter()
            .position(|&c| c == target)
            .expect("class nonempty");
        let candidates: Vec<usize> = (0..n).filter(|&w| cb[w] == target).collect();
        for w in candidates {
            let mut na = ca.clone();
            let mut nb = cb.clone();
            na[v] = k as u32;
            nb[w] = k as u32;
            if self.search(na, nb)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Every automorphism of `d`, identity included.
pub fn all_automorphisms(d: &Digraph, budget: usize) -> Result<Vec<Perm>> {
    let mut s = Search {
        left: d,
        right: d,
        budget,
        nodes: 0,
        find_all: true,
        found: Vec::new(),
    };
    let n = d.order();
    s.search(vec![0; n], vec![0; n])?;
    let mut found = s.found;
    found.sort();
    Ok(found)
}

/// The full automorphism group, with its element list cached.
pub fn automorphism_group_oracle(d: &Digraph, budget: usize) -> Result<PermGroup> {
    PermGroup::from_elements(d.order(), all_automorphisms(d, budget)?)
}

/// An isomorphism `a -> b` if one exists.
pub fn isomorphism_oracle(a: &Digraph, b: &Digraph, budget: usize) -> Result<Option<Perm>> {
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return Ok(None);
    }
    let mut s = Search {
        left: a,
        right: b,
        budget,
        nodes: 0,
        find_all: false,
        found: Vec::new(),
    };
    let n = a.order();
    s.search(vec![0; n], vec![0; n])?;
    Ok(s.found.pop())
}

/// Orbits of a group on the undirected edges of a graph.
pub fn edge_orbits(d: &Digraph, gens: &[Perm]) -> Vec<Vec<(usize, usize)>> {
    let norm = |u: usize, v: usize| if u <= v { (u, v) } else { (v, u) };
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Vec::new();
    for e in d.edges() {
        if !seen.insert(e) {
            continue;
        }
        let mut orbit = vec![e];
        let mut queue = VecDeque::from([e]);
        while let Some((u, v)) = queue.pop_front() {
            for g in gens {
                let img = norm(g.apply(u), g.apply(v));
                if seen.insert(img) {
                    orbit.push(img);
                    queue.push_back(img);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Whether the automorphism group of a graph acts transitively on its edges.
pub fn is_edge_transitive_oracle(d: &Digraph) -> Result<bool> {
    if !d.is_symmetric() {
        return Err(Error::InvalidInput(
            "edge-transitivity needs a graph".into(),
        ));
    }
    let aut = automorphism_group_oracle(d, DEFAULT_NODE_BUDGET)?;
    Ok(edge_orbits(d, aut.generators()).len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_group;

    fn directed_cycle(n: usize) -> Digraph {
        Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn cube() -> Digraph {
        Digraph::from_edges(8, (0..8).flat_map(|v| [0, 1, 2].map(|b| (v, v ^ (1 << b))))).unwrap()
    }

    fn petersen() -> Digraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Digraph::from_edges(10, edges).unwrap()
    }

    #[test]
    fn directed_cycle_has_rotations_only() {
        let aut = all_automorphisms(&directed_cycle(4), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(aut.len(), 4);
    }

    #[test]
    fn cube_and_petersen_orders() {
        let q3 = automorphism_group_oracle(&cube(), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(q3.cached_elements().unwrap().len(), 48);
        // the greedy generators regenerate the whole group
        let regenerated = PermGroup::new(8, q3.generators().to_vec()).unwrap();
        assert_eq!(enumerate_group(&regenerated, 1000).unwrap().len(), 48);
        let p = automorphism_group_oracle(&petersen(), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(p.cached_elements().unwrap().len(), 120);
    }

    #[test]
    fn found_automorphisms_preserve_arcs() {
        let d = petersen();
        for g in all_automorphisms(&d, DEFAULT_NODE_BUDGET).unwrap() {
            assert!(d.is_preserved_by(&g));
        }
        let swap = Perm::from_cycles(10, &[&[0, 1]]).unwrap();
        assert!(!d.is_preserved_by(&swap));
    }

    #[test]
    fn edge_transitivity() {
        assert!(is_edge_transitive_oracle(&cube()).unwrap());
        assert!(is_edge_transitive_oracle(&petersen()).unwrap());
        // the 3-prism is vertex- but not edge-transitive
        let prism = Digraph::from_edges(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap();
        assert!(!is_edge_transitive_oracle(&prism).unwrap());
        assert!(is_edge_transitive_oracle(&directed_cycle(3)).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let relabel = Perm::from_cycles(8, &[&[0, 5, 3], &[1, 7]]).unwrap();
        let c = cube();
        let moved = Digraph::new(
            8,
            c.arcs().map(|(u, v)| (relabel.apply(u), relabel.apply(v))),
        )
        .unwrap();
        let iso = isomorphism_oracle(&c, &moved, DEFAULT_NODE_BUDGET)
            .unwrap()
            .unwrap();
        assert!(c
            .arcs()
            .all(|(u, v)| moved.has_arc(iso.apply(u), iso.apply(v))));
        assert!(isomorphism_oracle(
            &directed_cycle(4),
            &Digraph::new(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap(),
            1000
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            all_automorphisms(&cube(), 3),
            Err(Error::CapExceeded { cap: 3 })
        );
    }
}
