//! Permutations, finitely generated permutation groups, and set partitions of
//! the point set.
//!
//! Points are `0..n`. Products follow the right-action convention used
//! throughout the crate: `a.then(&b)` maps `x` to `b(a(x))`, so `x^(ab) =
//! (x^a)^b`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_CAP: usize = 2_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::PointOutOfRange {
                        point: x,
                        degree: n,
                    });
                }
                if touched[x] {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} repeated in cycles"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Product `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut result = Perm::identity(self.degree());
        for _ in 0..k {
            result = result.then(self);
        }
        result
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Image of a point set, sorted.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = set.iter().map(|&x| self.images[x]).collect();
        img.sort_unstable();
        img
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::new(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A permutation group given by generators. The element list is only stored
/// when the group was produced by an enumeration (kernels, automorphism
/// searches); it is never filled lazily.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Option<Arc<Vec<Perm>>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        check_degrees(degree, &generators)?;
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
        })
    }

    /// Group with a known full element list. The list must be closed; the
    /// generators are picked greedily from it.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        check_degrees(degree, &elements)?;
        let generators = greedy_generators(degree, &elements);
        let mut elements = elements;
        let id = Perm::identity(degree);
        if !elements.contains(&id) {
            elements.insert(0, id);
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: Some(Arc::new(elements)),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: Some(Arc::new(vec![Perm::identity(degree)])),
        }
    }

    /// Symmetric group on `n` points, generated by an `n`-cycle and a transposition.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]).expect("valid cycle"));
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).expect("valid transposition"));
        }
        PermGroup {
            degree: n,
            generators: gens,
            elements: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn cached_elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref().map(|v| v.as_slice())
    }

    /// Orbits ordered by their minimal point, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g[i].then(&g[j]) != g[j].then(&g[i]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(enumerate_group(self, cap)?.len())
    }
}

fn check_degrees(degree: usize, perms: &[Perm]) -> Result<()> {
    for p in perms {
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
    }
    Ok(())
}

/// Picks a small generating set from a closed element list: an element is
/// kept when it is not already in the subgroup generated so far.
pub(crate) fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut closure: HashSet<Perm> = HashSet::new();
    closure.insert(Perm::identity(degree));
    for e in elements {
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        closure = bfs_closure(degree, &gens, usize::MAX)
            .expect("uncapped closure")
            .into_iter()
            .collect();
    }
    gens
}

fn bfs_closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id);
    let mut head = 0;
    while head < order.len() {
        let current = order[head].clone();
        head += 1;
        for g in gens {
            let next = current.then(g);
            if !seen.contains(&next) {
                if order.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                seen.insert(next.clone());
                order.push(next);
            }
        }
    }
    Ok(order)
}

/// The orbit of `seed` under the group generated by `gens`, sorted.
pub fn orbit(gens: &[Perm], seed: usize) -> Result<Vec<usize>> {
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => return Ok(vec![seed]),
    };
    check_degrees(degree, gens)?;
    if seed >= degree {
        return Err(Error::PointOutOfRange {
            point: seed,
            degree,
        });
    }
    let mut seen = vec![false; degree];
    seen[seed] = true;
    let mut queue = VecDeque::from([seed]);
    let mut out = vec![seed];
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub(crate) fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let orb = if gens.is_empty() {
            vec![start]
        } else {
            orbit(gens, start).expect("degrees checked at construction")
        };
        for &x in &orb {
            seen[x] = true;
        }
        out.push(orb);
    }
    out
}

/// All elements of the group, breadth-first over words in the generators
/// (generator order breaks ties), identity first.
pub fn enumerate_group(g: &PermGroup, cap: usize) -> Result<Vec<Perm>> {
    if cap == 0 {
        return Err(Error::CapExceeded { cap });
    }
    if let Some(elements) = g.cached_elements() {
        if elements.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        return Ok(elements.to_vec());
    }
    bfs_closure(g.degree, &g.generators, cap)
}

/// Whether every orbit of `h` has size `|h|`. Orbits are returned ordered by
/// minimal point.
pub fn is_semiregular(h: &PermGroup, on_points: usize) -> (bool, Vec<Vec<usize>>) {
    let orbits = h.orbits();
    if h.degree() != on_points {
        return (false, orbits);
    }
    // a semiregular group has order at most the degree
    let order = match enumerate_group(h, on_points.max(1)) {
        Ok(elements) => elements.len(),
        Err(_) => return (false, orbits),
    };
    let ok = orbits.iter().all(|o| o.len() == order);
    (ok, orbits)
}

/// A partition of `0..n` into nonempty cells. Cells are stored sorted and
/// ordered by their minimal point, so structural equality is cell-set
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut cell_seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::InvalidInput("empty cell".into()));
            }
            for &x in cell {
                if x >= n {
                    return Err(Error::PointOutOfRange {
                        point: x,
                        degree: n,
                    });
                }
                if cell_seen[x] {
                    return Err(Error::InvalidInput(format!("point {x} in two cells")));
                }
                cell_seen[x] = true;
            }
        }
        if let Some(x) = cell_seen.iter().position(|s| !s) {
            return Err(Error::InvalidInput(format!("point {x} not covered")));
        }
        Ok(Self::normalized(n, cells))
    }

    fn normalized(n: usize, mut cells: Vec<Vec<usize>>) -> Self {
        for c in cells.iter_mut() {
            c.sort_unstable();
        }
        cells.sort_unstable_by_key(|c| c[0]);
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &x in c {
                cell_of[x] = i;
            }
        }
        Partition { cells, cell_of }
    }

    /// Partition whose cells are the classes of equal labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(x);
        }
        Self::normalized(labels.len(), groups.into_values().collect())
    }

    pub fn singletons(n: usize) -> Self {
        Self::normalized(n, (0..n).map(|x| vec![x]).collect())
    }

    pub fn universal(n: usize) -> Self {
        if n == 0 {
            return Self::normalized(0, Vec::new());
        }
        Self::normalized(n, vec![(0..n).collect()])
    }

    pub fn degree(&self) -> usize {
        self.cell_of.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_index(&self, x: usize) -> usize {
        self.cell_of[x]
    }

    pub fn cell_of(&self, x: usize) -> &[usize] {
        &self.cells[self.cell_of[x]]
    }

    pub fn same_cell(&self, x: usize, y: usize) -> bool {
        self.cell_of[x] == self.cell_of[y]
    }

    pub fn is_singletons(&self) -> bool {
        self.cells.len() == self.degree()
    }

    pub fn is_universal(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn is_uniform(&self) -> bool {
        self.cells.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Every cell of `self` lies inside a cell of `coarse`.
    pub fn refines(&self, coarse: &Partition) -> bool {
        self.degree() == coarse.degree()
            && self
                .cells
                .iter()
                .all(|c| c.iter().all(|&x| coarse.same_cell(x, c[0])))
    }
}

/// Whether each generator maps cells of `b` onto cells of `b`.
pub fn is_invariant_partition(g: &PermGroup, b: &Partition) -> bool {
    if g.degree() != b.degree() {
        return false;
    }
    g.generators()
        .iter()
        .all(|p| perm_preserves_partition(p, b))
}

pub(crate) fn perm_preserves_partition(p: &Perm, b: &Partition) -> bool {
    b.cells().iter().all(|cell| {
        let target = b.cell_index(p.apply(cell[0]));
        let img = &b.cells()[target];
        img.len() == cell.len() && cell.iter().all(|&x| b.cell_index(p.apply(x)) == target)
    })
}

pub(crate) fn fixes_every_cell(p: &Perm, b: &Partition) -> bool {
    (0..b.degree()).all(|x| b.same_cell(x, p.apply(x)))
}

/// The subgroup of elements fixing every cell of `b` setwise.
pub fn kernel_of_partition_action(g: &PermGroup, b: &Partition, cap: usize) -> Result<PermGroup> {
    if !is_invariant_partition(g, b) {
        return Err(Error::NotInvariant);
    }
    let kernel: Vec<Perm> = enumerate_group(g, cap)?
        .into_iter()
        .filter(|p| fixes_every_cell(p, b))
        .collect();
    PermGroup::from_elements(g.degree(), kernel)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    /// Returns the pair of former roots when a merge happened.
    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        Some((lo, hi))
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// Finest invariant partition coarsening `start` in which all `pairs` are
/// joined (Atkinson's closure).
fn invariant_closure(g: &PermGroup, start: &Partition, pairs: &[(usize, usize)]) -> Partition {
    let n = g.degree();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for cell in start.cells() {
        for &x in &cell[1..] {
            if let Some(p) = uf.union(cell[0], x) {
                queue.push_back(p);
            }
        }
    }
    for &(a, b) in pairs {
        if let Some(p) = uf.union(a, b) {
            queue.push_back(p);
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        for gen in g.generators() {
            if let Some(p) = uf.union(gen.apply(a), gen.apply(b)) {
                queue.push_back(p);
            }
        }
    }
    Partition::from_labels(&uf.labels())
}

/// The finest invariant partition with `pair.0` and `pair.1` in one cell.
pub fn minimal_block(g: &PermGroup, pair: (usize, usize)) -> Result<Partition> {
    let n = g.degree();
    for x in [pair.0, pair.1] {
        if x >= n {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: n,
            });
        }
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(invariant_closure(g, &Partition::singletons(n), &[pair]))
}

/// Every invariant partition of a transitive group, from the singletons to
/// the universal partition. Each block system is the join of the minimal
/// block systems of the pairs `(0, j)` with `j` in the block of 0, so closing
/// the singletons under such joins reaches all of them.
pub fn all_block_systems_oracle(g: &PermGroup) -> Result<Vec<Partition>> {
    let n = g.degree();
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut found: Vec<Partition> = vec![Partition::singletons(n)];
    let mut seen: HashSet<Partition> = found.iter().cloned().collect();
    let mut head = 0;
    while head < found.len() {
        let current = found[head].clone();
        head += 1;
        for j in 1..n {
            if current.same_cell(0, j) {
                continue;
            }
            let next = invariant_closure(g, &current, &[(0, j)]);
            if seen.insert(next.clone()) {
                found.push(next);
            }
        }
    }
    found.sort_by(|a, b| {
        b.num_cells()
            .cmp(&a.num_cells())
            .then_with(|| a.cells().cmp(b.cells()))
    });
    Ok(found)
}
