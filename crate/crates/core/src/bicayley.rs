//! Two-orbit specializations: the sets `M_g`, `N_g`, swaps and mixers, and
//! the vanishing of character sums over `M_g` and `N_g`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;

use crate::abelian::{char_sum, AbelianGroup, Character};
use crate::error::{Error, Result};
use crate::perm::{enumerate_group, perm_preserves_partition, Partition, Perm, PermGroup};
use crate::spectral::spectrum;
use crate::symbol::{SemiregularFrame, Symbol};

/// The symbol `[[S, T], [Q, R]]` of a digraph with two orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSymbol {
    group: AbelianGroup,
    pub s: BTreeSet<usize>,
    pub t: BTreeSet<usize>,
    pub q: BTreeSet<usize>,
    pub r: BTreeSet<usize>,
}

impl BiSymbol {
    pub fn new(
        group: AbelianGroup,
        s: BTreeSet<usize>,
        t: BTreeSet<usize>,
        q: BTreeSet<usize>,
        r: BTreeSet<usize>,
    ) -> Result<Self> {
        if s.len() != r.len() || t.len() != q.len() {
            return Err(Error::InvalidInput("need |S| = |R| and |T| = |Q|".into()));
        }
        let bs = BiSymbol { group, s, t, q, r };
        bs.to_symbol()?;
        Ok(bs)
    }

    pub fn from_symbol(sym: &Symbol) -> Result<Self> {
        if sym.m() != 2 {
            return Err(Error::WrongOrbitCount(sym.m()));
        }
        BiSymbol::new(
            sym.group().clone(),
            sym.entry(0, 0).clone(),
            sym.entry(0, 1).clone(),
            sym.entry(1, 0).clone(),
            sym.entry(1, 1).clone(),
        )
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn to_symbol(&self) -> Result<Symbol> {
        Symbol::new(
            self.group.clone(),
            vec![
                vec![self.s.clone(), self.t.clone()],
                vec![self.q.clone(), self.r.clone()],
            ],
        )
    }

    /// `val = |S| + |T|`.
    pub fn val(&self) -> usize {
        self.s.len() + self.t.len()
    }

    /// `d = |S| - |T|`.
    pub fn d(&self) -> i64 {
        self.s.len() as i64 - self.t.len() as i64
    }
}

fn two_orbits(f: &SemiregularFrame) -> Result<()> {
    if f.m() != 2 {
        return Err(Error::WrongOrbitCount(f.m()));
    }
    Ok(())
}

/// `M_g = {h : (x_1^h)^g in X_1}` and `N_g = {h : (x_2^h)^g in X_1}`.
pub fn mn_sets(g: &Perm, f: &SemiregularFrame) -> Result<(Vec<usize>, Vec<usize>)> {
    two_orbits(f)?;
    let lands_in_first = |i: usize| {
        f.group()
            .elements()
            .filter(|&h| f.orbit_index(g.apply(f.point(i, h))) == 0)
            .collect::<Vec<_>>()
    };
    Ok((lands_in_first(0), lands_in_first(1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    OrbitPreserving,
    Swap,
    Mixer,
}

pub fn classify_element(g: &Perm, f: &SemiregularFrame) -> Result<ElementClass> {
    let (m, _) = mn_sets(g, f)?;
    Ok(if m.len() == f.n() {
        ElementClass::OrbitPreserving
    } else if m.is_empty() {
        ElementClass::Swap
    } else {
        ElementClass::Mixer
    })
}

/// Whether some element of `g` does not permute the orbits of `H`.
pub fn has_mixer(g: &PermGroup, f: &SemiregularFrame, cap: usize) -> Result<bool> {
    let orbits = Partition::new(f.degree(), f.orbits().to_vec())?;
    if g.generators()
        .iter()
        .all(|x| perm_preserves_partition(x, &orbits))
    {
        return Ok(false);
    }
    Ok(enumerate_group(g, cap)?
        .iter()
        .any(|x| !perm_preserves_partition(x, &orbits)))
}

#[derive(Clone, Debug)]
pub struct MnViolation {
    pub chi: Character,
    pub on_m: Complex64,
    pub on_n: Complex64,
}

#[derive(Clone, Debug)]
pub struct MnReport {
    pub m_set: Vec<usize>,
    pub n_set: Vec<usize>,
    /// `K_{S,d}`.
    pub k_d: Vec<Character>,
    /// Largest `|chi(M_g)|` or `|chi(N_g)|` over characters outside `K_{S,d}`.
    pub max_residual: f64,
    pub violations: Vec<MnViolation>,
}

impl MnReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `chi(M_g) = chi(N_g) = 0` for every `chi` outside `K_{S,d}`.
pub fn thm_mn_check(g: &Perm, bs: &BiSymbol, f: &SemiregularFrame, tol: f64) -> Result<MnReport> {
    let (m_set, n_set) = mn_sets(g, f)?;
    let spec = spectrum(&bs.to_symbol()?, tol)?;
    let d = Complex64::new(bs.d() as f64, 0.0);
    let k_d = spec
        .entry(d, tol)
        .map(|e| e.characters.clone())
        .unwrap_or_default();
    let h = bs.group();
    let mut max_residual = 0.0f64;
    let mut violations = Vec::new();
    for chi in h.characters().filter(|c| !k_d.contains(c)) {
        let on_m = char_sum(h, chi, &m_set);
        let on_n = char_sum(h, chi, &n_set);
        max_residual = max_residual.max(on_m.norm()).max(on_n.norm());
        if on_m.norm() > tol || on_n.norm() > tol {
            violations.push(MnViolation { chi, on_m, on_n });
        }
    }
    Ok(MnReport {
        m_set,
        n_set,
        k_d,
        max_residual,
        violations,
    })
}
