//! Finite digraphs, orbital closures and Cayley digraphs of abelian groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// A digraph on `0..n`. A graph is a digraph whose arc set is symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    /// Duplicate arcs are collapsed.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::PointOutOfRange {
                        point: x,
                        degree: n,
                    });
                }
            }
            set.insert((u, v));
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &set {
            out[u].push(v);
            inn[v].push(u);
        }
        for l in inn.iter_mut() {
            l.sort_unstable();
        }
        Ok(Digraph {
            n,
            out,
            inn,
            arc_count: set.len(),
        })
    }

    /// Graph from undirected edges; each edge becomes two arcs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Digraph::new(n, edges.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    /// Undirected edges `{u, v}` with `u <= v` of a symmetric digraph.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.arcs().filter(|&(u, v)| u <= v).collect()
    }

    pub fn is_preserved_by(&self, p: &Perm) -> bool {
        p.degree() == self.n
            && self
                .arcs()
                .all(|(u, v)| self.has_arc(p.apply(u), p.apply(v)))
    }

    /// Uniform out-valency, if all vertices share one.
    pub fn out_valency(&self) -> Option<usize> {
        let first = self.out.first().map_or(0, Vec::len);
        self.out.iter().all(|l| l.len() == first).then_some(first)
    }

    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        let mut rows = vec![vec![0u8; self.n]; self.n];
        for (u, v) in self.arcs() {
            rows[u][v] = 1;
        }
        rows
    }
}

/// Wire format `{"n": int, "arcs": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl From<&Digraph> for DigraphJson {
    fn from(d: &Digraph) -> Self {
        DigraphJson {
            n: d.order(),
            arcs: d.arcs().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<DigraphJson> for Digraph {
    type Error = Error;

    fn try_from(j: DigraphJson) -> Result<Self> {
        Digraph::new(j.n, j.arcs.into_iter().map(|[u, v]| (u, v)))
    }
}

/// Union of the orbits of `g` on ordered pairs through the seed arcs.
pub fn orbital_closure(g: &PermGroup, seeds: &[(usize, usize)]) -> Result<Digraph> {
    let n = g.degree();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = VecDeque::new();
    for &(u, v) in seeds {
        for x in [u, v] {
            if x >= n {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
        }
        if seen.insert((u, v)) {
            queue.push_back((u, v));
        }
    }
    while let Some((u, v)) = queue.pop_front() {
        for p in g.generators() {
            let arc = (p.apply(u), p.apply(v));
            if seen.insert(arc) {
                queue.push_back(arc);
            }
        }
    }
    Digraph::new(n, seen)
}

/// `Cay(H, S)`: vertices are the elements of `H` in index order, with an arc
/// `x -> y` whenever `y - x` lies in `S`.
pub fn cayley_digraph(h: &AbelianGroup, s: &BTreeSet<usize>) -> Digraph {
    let arcs = h
        .elements()
        .flat_map(|x| s.iter().map(move |&d| (x, h.add(x, d))))
        .collect::<Vec<_>>();
    Digraph::new(h.order(), arcs).expect("elements are in range")
}
