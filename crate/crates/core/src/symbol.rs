//! Frames of a semiregular abelian subgroup and the symbol of an invariant
//! digraph relative to them.
//!
//! A frame fixes the orbit order (by minimal point), a base vector, and an
//! isomorphism of `H` with `Z_{d1} x ... x Z_{dr}`. The vertex at position
//! `i * n + h` is `x_i^h`, so every matrix and vector in the crate is indexed
//! the same way.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::perm::{enumerate_group, is_semiregular, Perm, PermGroup};

#[derive(Clone, Debug)]
pub struct SemiregularFrame {
    h: PermGroup,
    group: AbelianGroup,
    elem_perms: Vec<Perm>,
    orbits: Vec<Vec<usize>>,
    base: Vec<usize>,
    position: Vec<usize>,
    point_at: Vec<usize>,
}

impl SemiregularFrame {
    /// Frame from an explicit labelling of `H`: `elem_perms[k]` realizes the
    /// element of index `k`, and `base` lists one point per orbit.
    fn from_parts(group: AbelianGroup, elem_perms: Vec<Perm>, base: Vec<usize>) -> Result<Self> {
        let degree = elem_perms[0].degree();
        let n = group.order();
        let mut position = vec![usize::MAX; degree];
        let mut point_at = Vec::with_capacity(degree);
        for (i, &b) in base.iter().enumerate() {
            for (k, p) in elem_perms.iter().enumerate() {
                let x = p.apply(b);
                if position[x] != usize::MAX {
                    return Err(Error::BadBaseChoice(format!("point {x} reached twice")));
                }
                position[x] = i * n + k;
                point_at.push(x);
            }
        }
        if point_at.len() != degree {
            return Err(Error::BadBaseChoice(
                "base does not cover every orbit".into(),
            ));
        }
        let orbits = base
            .iter()
            .map(|&b| {
                let mut o: Vec<usize> = elem_perms.iter().map(|p| p.apply(b)).collect();
                o.sort_unstable();
                o
            })
            .collect();
        let gens = generator_perms(&group, &elem_perms);
        Ok(SemiregularFrame {
            h: PermGroup::new(degree, gens)?,
            group,
            elem_perms,
            orbits,
            base,
            position,
            point_at,
        })
    }

    /// The frame of `digraph_from_symbol`: point `i * n + h` is `x_i^h` and
    /// `H` acts by translation inside each block.
    pub fn canonical(group: &AbelianGroup, m: usize) -> Self {
        let n = group.order();
        let elem_perms: Vec<Perm> = group
            .elements()
            .map(|x| {
                let images = (0..m * n)
                    .map(|p| (p / n) * n + group.add(p % n, x))
                    .collect();
                Perm::new(images).expect("translation is a bijection")
            })
            .collect();
        let base = (0..m).map(|i| i * n).collect();
        SemiregularFrame::from_parts(group.clone(), elem_perms, base)
            .expect("canonical frame is valid")
    }

    pub fn h(&self) -> &PermGroup {
        &self.h
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.base.len()
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn degree(&self) -> usize {
        self.point_at.len()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// The permutation realizing element `h` of the abelian group.
    pub fn element_perm(&self, h: usize) -> &Perm {
        &self.elem_perms[h]
    }

    /// `x_i^h`.
    pub fn point(&self, i: usize, h: usize) -> usize {
        self.point_at[i * self.n() + h]
    }

    /// Position of a point in the frame's vertex order.
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    /// Point at a position of the vertex order.
    pub fn point_at(&self, pos: usize) -> usize {
        self.point_at[pos]
    }

    /// `(i, h)` with `x = x_i^h`.
    pub fn coords(&self, x: usize) -> (usize, usize) {
        let p = self.position[x];
        (p / self.n(), p % self.n())
    }

    /// Index of the orbit containing `x`.
    pub fn orbit_index(&self, x: usize) -> usize {
        self.coords(x).0
    }

    /// Same frame with another base vector (one point per orbit, in orbit order).
    pub fn with_base(&self, base: &[usize]) -> Result<Self> {
        if base.len() != self.m() {
            return Err(Error::BaseVectorMismatch);
        }
        for (i, &b) in base.iter().enumerate() {
            if b >= self.degree() || self.orbit_index(b) != i {
                return Err(Error::BaseVectorMismatch);
            }
        }
        SemiregularFrame::from_parts(self.group.clone(), self.elem_perms.clone(), base.to_vec())
    }
}

/// Unit-vector elements of each factor, as permutations.
fn generator_perms(group: &AbelianGroup, elem_perms: &[Perm]) -> Vec<Perm> {
    let r = group.rank();
    (0..r)
        .filter(|&k| group.factors()[k] > 1)
        .map(|k| {
            let mut e = vec![0; r];
            e[k] = 1;
            elem_perms[group.index_of(&e).expect("unit vector")].clone()
        })
        .collect()
}

/// Frame of a concrete semiregular abelian group. The isomorphism with a
/// product of cyclic groups is found by peeling: repeatedly take an element
/// of largest order modulo the subgroup `C` built so far and replace it by
/// a coset representative whose order equals that relative order.
pub fn build_frame(h: &PermGroup, base_choice: Option<&[usize]>) -> Result<SemiregularFrame> {
    if !h.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let degree = h.degree();
    let (semiregular, orbits) = is_semiregular(h, degree);
    if !semiregular {
        return Err(Error::NotSemiregular);
    }
    let elements = enumerate_group(h, degree.max(1))?;
    let id = Perm::identity(degree);

    let mut factors = Vec::new();
    let mut cyclic_gens: Vec<Perm> = Vec::new();
    let mut sub: HashSet<Perm> = HashSet::from([id.clone()]);
    while sub.len() < elements.len() {
        let relative_order = |g: &Perm| {
            let mut k = 1;
            let mut p = g.clone();
            while !sub.contains(&p) {
                p = p.then(g);
                k += 1;
            }
            k
        };
        let (g, d) = elements
            .iter()
            .map(|g| (g, relative_order(g)))
            .fold(None::<(&Perm, usize)>, |best, (g, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((g, d)),
            })
            .expect("nonempty");
        let lifted = sub
            .iter()
            .map(|c| g.then(c))
            .filter(|x| x.order() == d)
            .min()
            .ok_or_else(|| Error::InvalidInput("cyclic decomposition failed".into()))?;
        let mut next = HashSet::new();
        let mut power = id.clone();
        for _ in 0..d {
            for c in &sub {
                next.insert(c.then(&power));
            }
            power = power.then(&lifted);
        }
        sub = next;
        factors.push(d);
        cyclic_gens.push(lifted);
    }
    if factors.is_empty() {
        factors.push(1);
        cyclic_gens.push(id.clone());
    }
    let group = AbelianGroup::new(factors)?;
    let elem_perms: Vec<Perm> = group
        .elements()
        .map(|x| {
            group
                .exponents(x)
                .iter()
                .zip(&cyclic_gens)
                .fold(id.clone(), |acc, (&e, g)| acc.then(&g.pow(e)))
        })
        .collect();

    let base = match base_choice {
        None => orbits.iter().map(|o| o[0]).collect(),
        Some(points) => {
            if points.len() != orbits.len() {
                return Err(Error::BadBaseChoice(format!(
                    "expected {} points, got {}",
                    orbits.len(),
                    points.len()
                )));
            }
            let mut base = vec![usize::MAX; orbits.len()];
            for &p in points {
                let i = orbits
                    .iter()
                    .position(|o| o.binary_search(&p).is_ok())
                    .ok_or_else(|| Error::BadBaseChoice(format!("point {p} out of range")))?;
                if base[i] != usize::MAX {
                    return Err(Error::BadBaseChoice(format!("two points in orbit {i}")));
                }
                base[i] = p;
            }
            base
        }
    };
    SemiregularFrame::from_parts(group, elem_perms, base)
}

/// The `m x m` array of subsets `S_ij` of `H`, elements by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    group: AbelianGroup,
    entries: Vec<Vec<BTreeSet<usize>>>,
}

impl Symbol {
    pub fn new(group: AbelianGroup, entries: Vec<Vec<BTreeSet<usize>>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(Error::InvalidInput("symbol needs m >= 1".into()));
        }
        for row in &entries {
            if row.len() != m {
                return Err(Error::InvalidInput("symbol must be square".into()));
            }
            for s in row {
                if let Some(&x) = s.iter().find(|&&x| x >= group.order()) {
                    return Err(Error::InvalidInput(format!("element {x} not in H")));
                }
            }
        }
        Ok(Symbol { group, entries })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BTreeSet<usize> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<BTreeSet<usize>>] {
        &self.entries
    }

    /// Out-valency of the vertices in orbit `i`.
    pub fn row_valency(&self, i: usize) -> usize {
        self.entries[i].iter().map(BTreeSet::len).sum()
    }
}

/// `S_ij = { h : x_i -> x_j^h }`.
pub fn extract_symbol(d: &Digraph, f: &SemiregularFrame) -> Result<Symbol> {
    if d.order() != f.degree() {
        return Err(Error::DegreeMismatch {
            expected: f.degree(),
            found: d.order(),
        });
    }
    if !f.h().generators().iter().all(|g| d.is_preserved_by(g)) {
        return Err(Error::NotInvariantUnderH);
    }
    let m = f.m();
    let mut entries = vec![vec![BTreeSet::new(); m]; m];
    for (i, row) in entries.iter_mut().enumerate() {
        for &y in d.out_neighbors(f.base()[i]) {
            let (j, h) = f.coords(y);
            row[j].insert(h);
        }
    }
    Symbol::new(f.group().clone(), entries)
}

/// `A_S`: block `(i, j)` is the adjacency matrix of `Cay(H, S_ij)` in the
/// element order of `H`.
pub fn assemble_adjacency(s: &Symbol) -> Vec<Vec<u8>> {
    let (m, n) = (s.m(), s.group.order());
    let mut a = vec![vec![0u8; m * n]; m * n];
    for i in 0..m {
        for j in 0..m {
            for x in 0..n {
                for &d in s.entry(i, j) {
                    a[i * n + x][j * n + s.group.add(x, d)] = 1;
                }
            }
        }
    }
    a
}

/// The digraph with symbol `s` on the canonical frame.
pub fn digraph_from_symbol(s: &Symbol) -> (Digraph, SemiregularFrame) {
    let (m, n) = (s.m(), s.group.order());
    let mut arcs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for x in 0..n {
                for &d in s.entry(i, j) {
                    arcs.push((i * n + x, j * n + s.group.add(x, d)));
                }
            }
        }
    }
    let d = Digraph::new(m * n, arcs).expect("arcs are in range");
    (d, SemiregularFrame::canonical(&s.group, m))
}

/// An element of `H` on the wire: a bare integer for cyclic groups, an
/// exponent tuple otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Int(usize),
    Tuple(Vec<usize>),
}

impl ElementJson {
    pub fn to_index(&self, h: &AbelianGroup) -> Result<usize> {
        match self {
            ElementJson::Int(x) if h.rank() == 1 => {
                if *x < h.order() {
                    Ok(*x)
                } else {
                    Err(Error::InvalidInput(format!(
                        "element {x} not in Z_{}",
                        h.order()
                    )))
                }
            }
            ElementJson::Int(x) => Err(Error::InvalidInput(format!(
                "element {x} needs an exponent tuple of length {}",
                h.rank()
            ))),
            ElementJson::Tuple(t) => h.index_of(t),
        }
    }

    pub fn from_index(h: &AbelianGroup, x: usize) -> Self {
        if h.rank() == 1 {
            ElementJson::Int(x)
        } else {
            ElementJson::Tuple(h.exponents(x))
        }
    }
}

/// `{"m": int, "factors": [d1, ...], "entries": [[[h, ...], ...], ...]}`.
/// `factors` may be omitted when the group is known from context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<usize>>,
    pub entries: Vec<Vec<Vec<ElementJson>>>,
}

impl SymbolJson {
    pub fn from_symbol(s: &Symbol) -> Self {
        SymbolJson {
            m: s.m(),
            factors: Some(s.group.factors().to_vec()),
            entries: s
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|set| {
                            set.iter()
                                .map(|&x| ElementJson::from_index(&s.group, x))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Resolves elements against `factors`, or against `group` when the
    /// factors are absent.
    pub fn to_symbol(&self, group: Option<&AbelianGroup>) -> Result<Symbol> {
        let group = match (&self.factors, group) {
            (Some(f), _) => AbelianGroup::new(f.clone())?,
            (None, Some(g)) => g.clone(),
            (None, None) => return Err(Error::InvalidInput("symbol needs \"factors\"".into())),
        };
        if self.entries.len() != self.m {
            return Err(Error::InvalidInput(format!(
                "m = {} but {} rows given",
                self.m,
                self.entries.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|set| {
                        set.iter()
                            .map(|e| e.to_index(&group))
                            .collect::<Result<BTreeSet<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Symbol::new(group, entries)
    }
}
