//! Generalized Petersen graphs: construction, the character filter for
//! mixers, lifting of the cube and Petersen automorphisms along cyclic
//! voltage covers, and the classification of the edge-transitive ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::automorphism::{is_edge_transitive_oracle, isomorphism_oracle, DEFAULT_NODE_BUDGET};
use crate::bicayley::BiSymbol;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::perm::{gcd, Perm};
use crate::symbol::{digraph_from_symbol, SemiregularFrame};

/// Pairs with `2n` at most this size are cross-checked by exact search.
pub const ORACLE_MAX_ORDER: usize = 64;

fn check_params(n: usize, s: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::BadParameters(format!("n = {n} is below 3")));
    }
    let s = s % n;
    if s == 0 || (2 * s).is_multiple_of(n) {
        return Err(Error::BadParameters(format!(
            "s = {s} is degenerate modulo {n}"
        )));
    }
    Ok(s.min(n - s))
}

/// `GP(n, s)` as the bicirculant over `Z_n` with symbol
/// `[[{1,-1}, {0}], [{0}, {s,-s}]]`. Outer vertex `i` is point `i`, inner
/// vertex `i` is point `n + i`.
pub fn gp_graph(n: usize, s: usize) -> Result<(Digraph, SemiregularFrame, BiSymbol)> {
    let s = check_params(n, s)?;
    let h = AbelianGroup::cyclic(n);
    let bs = BiSymbol::new(
        h,
        BTreeSet::from([1, n - 1]),
        BTreeSet::from([0]),
        BTreeSet::from([0]),
        BTreeSet::from([s, n - s]),
    )?;
    let (d, f) = digraph_from_symbol(&bs.to_symbol()?);
    Ok((d, f, bs))
}

fn inverse_mod(s: usize, n: usize) -> Option<usize> {
    (1..n).find(|&t| (s * t) % n == 1)
}

/// Least of `s`, `-s`, `s^-1`, `-s^-1` modulo `n`, where the inverse exists.
pub fn gp_canonical(n: usize, s: usize) -> usize {
    let s = s % n;
    let mut best = s.min(n - s);
    if let Some(t) = inverse_mod(s, n) {
        best = best.min(t.min(n - t));
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseGraph {
    Cube,
    Petersen,
}

impl BaseGraph {
    /// Number of outer vertices of the base graph.
    pub fn outer(self) -> usize {
        match self {
            BaseGraph::Cube => 4,
            BaseGraph::Petersen => 5,
        }
    }
}

impl fmt::Display for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseGraph::Cube => "cube",
            BaseGraph::Petersen => "petersen",
        })
    }
}

impl std::str::FromStr for BaseGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(BaseGraph::Cube),
            "petersen" => Ok(BaseGraph::Petersen),
            other => Err(Error::BadParameters(format!(
                "unknown base graph {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub n: usize,
    pub s: usize,
    /// `4 | n` and `s = +-1 (mod 4)`.
    pub cube: bool,
    /// `5 | n` and `s = +-2 (mod 5)`.
    pub petersen: bool,
    /// Indices `j` of the non-principal characters `chi_j(x) = e^{2 pi i jx/n}`
    /// that have `1` as an eigenvalue of `chi_j(S)`.
    pub characters: Vec<usize>,
}

impl FilterReport {
    pub fn passes(&self) -> bool {
        self.cube || self.petersen
    }

    pub fn quotients(&self) -> Vec<BaseGraph> {
        let mut out = Vec::new();
        if self.cube {
            out.push(BaseGraph::Cube);
        }
        if self.petersen {
            out.push(BaseGraph::Petersen);
        }
        out
    }
}

/// Exact solution of `(chi(1) + chi(-1) - 1)(chi(s) + chi(-s) - 1) = 1` over
/// the non-principal characters of `Z_n`. A negative report means `GP(n, s)`
/// has no mixer and is not edge-transitive.
pub fn gp_character_filter(n: usize, s: usize) -> Result<FilterReport> {
    let s = check_params(n, s)?;
    let cube = n.is_multiple_of(4) && s % 2 == 1;
    let petersen = n.is_multiple_of(5) && matches!(s % 5, 2 | 3);
    let mut characters = BTreeSet::new();
    if cube {
        let m = n / 4;
        characters.extend([m, n - m]);
    }
    if petersen {
        let m = n / 5;
        characters.extend([m, 2 * m, n - 2 * m, n - m]);
    }
    Ok(FilterReport {
        n,
        s,
        cube,
        petersen,
        characters: characters.into_iter().collect(),
    })
}

/// `c0 + c1 a` with integer coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Affine {
    pub c0: i64,
    pub c1: i64,
}

impl Affine {
    pub const fn new(c0: i64, c1: i64) -> Self {
        Affine { c0, c1 }
    }

    pub fn eval(self, a: i64, m: i64) -> i64 {
        (self.c0 + self.c1 * a).rem_euclid(m)
    }
}

impl std::ops::Add for Affine {
    type Output = Affine;

    fn add(self, o: Affine) -> Affine {
        Affine::new(self.c0 + o.c0, self.c1 + o.c1)
    }
}

impl std::ops::Neg for Affine {
    type Output = Affine;

    fn neg(self) -> Affine {
        Affine::new(-self.c0, -self.c1)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let linear = match self.c1 {
            0 => String::new(),
            1 => "a".into(),
            -1 => "-a".into(),
            c => format!("{c}a"),
        };
        match (linear.is_empty(), self.c0) {
            (true, c) => write!(f, "{c}"),
            (false, 0) => f.write_str(&linear),
            (false, c) if c > 0 => write!(f, "{linear} + {c}"),
            (false, c) => write!(f, "{linear} - {}", -c),
        }
    }
}

/// One equation `lambda * zeta(C) = zeta(C^alpha)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equation {
    pub cycle: Affine,
    pub image: Affine,
}

impl Equation {
    pub fn holds(&self, lambda: i64, a: i64, m: i64) -> bool {
        (lambda * self.cycle.eval(a, m)).rem_euclid(m) == self.image.eval(a, m)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = match (self.cycle.c0, self.cycle.c1) {
            (1, 0) => "\u{3bb}".to_string(),
            (0, 1) => "\u{3bb}a".to_string(),
            _ => format!("\u{3bb}({})", self.cycle),
        };
        write!(f, "{lhs} = {}", self.image)
    }
}

/// A base graph with a spanning tree, voltages in `Z_m` affine in a
/// parameter `a` on the cotree arcs, a fundamental cycle basis, and the
/// automorphism `alpha` whose lift is tested.
#[derive(Clone, Debug)]
pub struct VoltageBase {
    pub kind: BaseGraph,
    pub graph: Digraph,
    pub tree: Vec<(usize, usize)>,
    pub cotree: Vec<(usize, usize, Affine)>,
    pub cycles: Vec<Vec<usize>>,
    pub alpha: Perm,
}

impl VoltageBase {
    pub fn new(kind: BaseGraph) -> Self {
        match kind {
            BaseGraph::Cube => {
                let edges = [
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 0),
                    (4, 5),
                    (5, 6),
                    (6, 7),
                    (7, 4),
                    (0, 4),
                    (1, 5),
                    (2, 6),
                    (3, 7),
                ];
                VoltageBase {
                    kind,
                    graph: Digraph::from_edges(8, edges).expect("valid"),
                    tree: vec![(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)],
                    cotree: vec![
                        (3, 0, Affine::new(1, 0)),
                        (4, 5, Affine::new(0, 1)),
                        (5, 6, Affine::new(0, 1)),
                        (6, 7, Affine::new(0, 1)),
                        (7, 4, Affine::new(1, 1)),
                    ],
                    cycles: vec![
                        vec![3, 0, 1, 2, 3],
                        vec![4, 5, 1, 0, 4],
                        vec![5, 6, 2, 1, 5],
                        vec![6, 7, 3, 2, 6],
                        vec![7, 4, 0, 1, 2, 3, 7],
                    ],
                    alpha: Perm::from_cycles(8, &[&[1, 3, 4], &[5, 2, 7]]).expect("valid"),
                }
            }
            BaseGraph::Petersen => {
                let edges = [
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 0),
                    (5, 7),
                    (6, 8),
                    (7, 9),
                    (8, 5),
                    (9, 6),
                    (0, 5),
                    (1, 6),
                    (2, 7),
                    (3, 8),
                    (4, 9),
                ];
                VoltageBase {
                    kind,
                    graph: Digraph::from_edges(10, edges).expect("valid"),
                    tree: vec![
                        (0, 1),
                        (1, 2),
                        (2, 3),
                        (3, 4),
                        (0, 5),
                        (1, 6),
                        (2, 7),
                        (3, 8),
                        (4, 9),
                    ],
                    cotree: vec![
                        (4, 0, Affine::new(1, 0)),
                        (5, 7, Affine::new(0, 1)),
                        (6, 8, Affine::new(0, 1)),
                        (7, 9, Affine::new(0, 1)),
                        (8, 5, Affine::new(1, 1)),
                        (9, 6, Affine::new(1, 1)),
                    ],
                    cycles: vec![
                        vec![4, 0, 1, 2, 3, 4],
                        vec![5, 7, 2, 1, 0, 5],
                        vec![6, 8, 3, 2, 1, 6],
                        vec![7, 9, 4, 3, 2, 7],
                        vec![8, 5, 0, 1, 2, 3, 8],
                        vec![9, 6, 1, 2, 3, 4, 9],
                    ],
                    alpha: Perm::from_cycles(10, &[&[1, 5, 4], &[2, 8, 9], &[3, 6, 7]])
                        .expect("valid"),
                }
            }
        }
    }

    /// Voltage of the arc `(u, v)`; zero on the tree, negated on reversed
    /// cotree arcs.
    pub fn voltage(&self, u: usize, v: usize) -> Result<Affine> {
        if !self.graph.has_arc(u, v) {
            return Err(Error::InvalidInput(format!("({u}, {v}) is not an arc")));
        }
        for &(x, y, z) in &self.cotree {
            if (x, y) == (u, v) {
                return Ok(z);
            }
            if (y, x) == (u, v) {
                return Ok(-z);
            }
        }
        Ok(Affine::default())
    }

    pub fn walk_voltage(&self, walk: &[usize]) -> Result<Affine> {
        walk.windows(2).try_fold(Affine::default(), |acc, w| {
            Ok(acc + self.voltage(w[0], w[1])?)
        })
    }

    /// The system `lambda * zeta(C_j) = zeta(C_j^alpha)`, regenerated by
    /// walking the image of each cycle.
    pub fn system(&self) -> Result<Vec<Equation>> {
        self.cycles
            .iter()
            .map(|c| {
                let image: Vec<usize> = c.iter().map(|&x| self.alpha.apply(x)).collect();
                Ok(Equation {
                    cycle: self.walk_voltage(c)?,
                    image: self.walk_voltage(&image)?,
                })
            })
            .collect()
    }

    /// The derived regular `Z_m`-cover for parameter `a`: vertex `(v, t)` is
    /// `v * m + t`, and `(u, t) ~ (v, t + zeta(u, v))`.
    pub fn derived_cover(&self, m: usize, a: usize) -> Result<Digraph> {
        let mut arcs = Vec::new();
        for (u, v) in self.graph.arcs() {
            let z = self.voltage(u, v)?.eval(a as i64, m as i64) as usize;
            for t in 0..m {
                arcs.push((u * m + t, v * m + (t + z) % m));
            }
        }
        Digraph::new(self.graph.order() * m, arcs)
    }

    /// Label `(n, s)` of the derived cover as a generalized Petersen graph.
    pub fn cover_label(&self, m: usize, a: usize) -> (usize, usize) {
        let k = self.kind.outer();
        let n = k * m;
        let step = match self.kind {
            BaseGraph::Cube => 4 * a + 1,
            BaseGraph::Petersen => 5 * a + 2,
        };
        (n, step % n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSolution {
    pub lambda: usize,
    pub a: usize,
    /// The cover as `GP(n, s)` before and after canonicalization.
    pub cover: (usize, usize),
    pub canonical: (usize, usize),
}

/// All `(lambda, a)` with `lambda` a unit of `Z_m` solving the voltage
/// system of `base`.
pub fn gp_cover_lift(base: BaseGraph, m: usize) -> Result<Vec<LiftSolution>> {
    if m == 0 {
        return Err(Error::BadParameters("m must be positive".into()));
    }
    let vb = VoltageBase::new(base);
    let system = vb.system()?;
    let mi = m as i64;
    let mut out = Vec::new();
    for lambda in (0..m).filter(|&l| gcd(l, m) == 1) {
        for a in 0..m {
            if system.iter().all(|e| e.holds(lambda as i64, a as i64, mi)) {
                let cover = vb.cover_label(m, a);
                out.push(LiftSolution {
                    lambda,
                    a,
                    cover,
                    canonical: (cover.0, gp_canonical(cover.0, cover.1)),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifiedPair {
    pub n: usize,
    pub s: usize,
    pub canonical_s: usize,
    pub filter: FilterReport,
    /// Whether some lifted cover is this graph.
    pub edge_transitive: bool,
    /// Exact search result, when `2n <= ORACLE_MAX_ORDER`.
    pub oracle: Option<bool>,
}

impl ClassifiedPair {
    pub fn agrees(&self) -> bool {
        self.oracle.is_none_or(|o| o == self.edge_transitive)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    /// Edge-transitive pairs in canonical form, sorted.
    pub edge_transitive: Vec<(usize, usize)>,
    pub pairs: Vec<ClassifiedPair>,
    /// Canonical labels whose isomorphism with a raw label was confirmed by
    /// exact search.
    pub isomorphisms_checked: Vec<((usize, usize), (usize, usize))>,
}

impl Classification {
    pub fn oracle_agrees(&self) -> bool {
        self.pairs.iter().all(ClassifiedPair::agrees)
    }
}

/// Character filter, then lifting along every admissible cover, then exact
/// cross-checks for all pairs with `2n <= ORACLE_MAX_ORDER` when `oracle`
/// is set.
pub fn gp_classify(n_max: usize, oracle: bool) -> Result<Classification> {
    if n_max < 3 {
        return Err(Error::BadParameters(format!("n_max = {n_max} is below 3")));
    }
    let mut lifts: BTreeMap<(BaseGraph, usize), Vec<LiftSolution>> = BTreeMap::new();
    let mut pairs = Vec::new();
    let mut found = BTreeSet::new();
    let mut isomorphisms_checked = Vec::new();
    for n in 3..=n_max {
        for s in (1..n).take_while(|&s| 2 * s < n) {
            let filter = gp_character_filter(n, s)?;
            let canonical_s = gp_canonical(n, s);
            let mut edge_transitive = false;
            for base in filter.quotients() {
                let m = n / base.outer();
                if let std::collections::btree_map::Entry::Vacant(e) = lifts.entry((base, m)) {
                    e.insert(gp_cover_lift(base, m)?);
                }
                let sols = &lifts[&(base, m)];
                edge_transitive |= sols.iter().any(|x| x.canonical == (n, canonical_s));
            }
            let needs_check = oracle && 2 * n <= ORACLE_MAX_ORDER;
            if edge_transitive {
                found.insert((n, canonical_s));
                if needs_check && canonical_s != s {
                    let (a, _, _) = gp_graph(n, s)?;
                    let (b, _, _) = gp_graph(n, canonical_s)?;
                    if isomorphism_oracle(&a, &b, DEFAULT_NODE_BUDGET)?.is_none() {
                        return Err(Error::InvalidInput(format!(
                            "GP({n},{s}) and GP({n},{canonical_s}) are not isomorphic"
                        )));
                    }
                    isomorphisms_checked.push(((n, s), (n, canonical_s)));
                }
            }
            let oracle = if needs_check {
                Some(is_edge_transitive_oracle(&gp_graph(n, s)?.0)?)
            } else {
                None
            };
            pairs.push(ClassifiedPair {
                n,
                s,
                canonical_s,
                filter,
                edge_transitive,
                oracle,
            });
        }
    }
    Ok(Classification {
        edge_transitive: found.into_iter().collect(),
        pairs,
        isomorphisms_checked,
    })
}
