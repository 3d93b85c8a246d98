//! Finite abelian groups `Z_{d1} x ... x Z_{dr}`, their characters, and the
//! Dirichlet correspondence between subgroups of `H` and of its dual.
//!
//! Elements are addressed by their index in the lexicographic order of
//! exponent tuples (first factor most significant). The dual group is
//! indexed the same way: `Character(i)` has the exponent tuple of element
//! `i`, and `chi_a(h) = exp(2 pi i sum_k a_k h_k / d_k)`.

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{gcd, lcm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<usize>,
}

/// A character, identified by the index of its exponent tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub usize);

impl Character {
    pub const PRINCIPAL: Character = Character(0);

    pub fn is_principal(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{}", self.0)
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput(
                "abelian group needs at least one factor".into(),
            ));
        }
        if factors.contains(&0) {
            return Err(Error::InvalidInput("factor orders must be >= 1".into()));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn cyclic(n: usize) -> Self {
        AbelianGroup::new(vec![n]).expect("n >= 1")
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    /// Exponent of the group, the common order `N` of all character values.
    pub fn exponent(&self) -> usize {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> {
        (0..self.order()).map(Character)
    }

    pub fn exponents(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        let mut rest = index;
        for (k, &d) in self.factors.iter().enumerate().rev() {
            out[k] = rest % d;
            rest /= d;
        }
        out
    }

    pub fn index_of(&self, exps: &[usize]) -> Result<usize> {
        if exps.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "tuple {exps:?} has wrong length for factors {:?}",
                self.factors
            )));
        }
        Ok(self
            .factors
            .iter()
            .zip(exps)
            .fold(0, |acc, (&d, &e)| acc * d + e % d))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ea, eb) = (self.exponents(a), self.exponents(b));
        let sum: Vec<usize> = self
            .factors
            .iter()
            .zip(ea.iter().zip(&eb))
            .map(|(&d, (&x, &y))| (x + y) % d)
            .collect();
        self.index_of(&sum).expect("same rank")
    }

    pub fn neg(&self, a: usize) -> usize {
        let e = self.exponents(a);
        let neg: Vec<usize> = self
            .factors
            .iter()
            .zip(&e)
            .map(|(&d, &x)| (d - x) % d)
            .collect();
        self.index_of(&neg).expect("same rank")
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k * a`.
    pub fn scale(&self, a: usize, k: usize) -> usize {
        let e = self.exponents(a);
        let out: Vec<usize> = self
            .factors
            .iter()
            .zip(&e)
            .map(|(&d, &x)| (x * (k % d)) % d)
            .collect();
        self.index_of(&out).expect("same rank")
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.factors
            .iter()
            .zip(self.exponents(a))
            .fold(1, |acc, (&d, x)| lcm(acc, d / gcd(d, x)))
    }

    /// Product of two characters; the dual is isomorphic to `H` through the
    /// shared tuple encoding.
    pub fn char_mul(&self, a: Character, b: Character) -> Character {
        Character(self.add(a.0, b.0))
    }

    pub fn char_inv(&self, a: Character) -> Character {
        Character(self.neg(a.0))
    }

    /// Exponent `k` mod `N` with `chi(h) = exp(2 pi i k / N)`.
    fn pairing(&self, chi: Character, h: usize) -> (usize, usize) {
        let n = self.exponent();
        let (ea, eh) = (self.exponents(chi.0), self.exponents(h));
        let k = self
            .factors
            .iter()
            .zip(ea.iter().zip(&eh))
            .fold(0, |acc, (&d, (&a, &x))| (acc + a * x % d * (n / d)) % n);
        (k, n)
    }
}

/// An exact root of unity `exp(2 pi i k / n)`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    k: usize,
    n: usize,
}

impl RootOfUnity {
    pub fn new(k: usize, n: usize) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        let k = k % n;
        let g = gcd(k, n);
        if k == 0 {
            RootOfUnity { k: 0, n: 1 }
        } else {
            RootOfUnity { k: k / g, n: n / g }
        }
    }

    pub fn numerator(&self) -> usize {
        self.k
    }

    /// Multiplicative order of the root.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn to_complex(self) -> Complex64 {
        root_to_complex(self.k, self.n)
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let n = lcm(self.n, rhs.n);
        RootOfUnity::new(self.k * (n / self.n) + rhs.k * (n / rhs.n), n)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "1")
        } else {
            write!(f, "e(2pi i {}/{})", self.k, self.n)
        }
    }
}

/// `exp(2 pi i k / n)`, snapping the quarter turns to exact values.
pub(crate) fn root_to_complex(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * PI * (k as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

pub fn char_eval(h: &AbelianGroup, chi: Character, x: usize) -> RootOfUnity {
    let (k, n) = h.pairing(chi, x);
    RootOfUnity::new(k, n)
}

pub fn char_value(h: &AbelianGroup, chi: Character, x: usize) -> Complex64 {
    let (k, n) = h.pairing(chi, x);
    root_to_complex(k, n)
}

/// `chi(S)`, zero for the empty set. Equal roots are counted first so the
/// sum touches each distinct value once.
pub fn char_sum<'a, I>(h: &AbelianGroup, chi: Character, s: I) -> Complex64
where
    I: IntoIterator<Item = &'a usize>,
{
    let n = h.exponent();
    let mut counts = vec![0usize; n];
    for &x in s {
        counts[h.pairing(chi, x).0] += 1;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| root_to_complex(k, n) * c as f64)
        .sum()
}

/// A subgroup of `H` as its sorted element list plus a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Subgroup of `H` generated by `gens`, sorted.
pub fn subgroup_closure(h: &AbelianGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = h.add(x, g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn is_subgroup(h: &AbelianGroup, elems: &[usize]) -> bool {
    let set: HashSet<usize> = elems.iter().copied().collect();
    set.contains(&0)
        && elems.iter().all(|&x| x < h.order())
        && elems
            .iter()
            .all(|&a| elems.iter().all(|&b| set.contains(&h.sub(a, b))))
}

fn greedy_subgroup_generators(h: &AbelianGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure: BTreeSet<usize> = BTreeSet::from([0]);
    for &x in elements {
        if !closure.contains(&x) {
            gens.push(x);
            closure = subgroup_closure(h, &gens).into_iter().collect();
        }
    }
    gens
}

/// `{h in H : chi(h) = 1 for all chi in chars}`; membership is decided on
/// the exact exponent pairing.
pub fn perp_of_characters(h: &AbelianGroup, chars: &[Character]) -> Subgroup {
    let elements: Vec<usize> = h
        .elements()
        .filter(|&x| chars.iter().all(|&chi| h.pairing(chi, x).0 == 0))
        .collect();
    let generators = greedy_subgroup_generators(h, &elements);
    Subgroup {
        elements,
        generators,
    }
}

/// Characters trivial on `l`.
pub fn perp_of_subgroup(h: &AbelianGroup, l: &[usize]) -> Result<Vec<Character>> {
    if !is_subgroup(h, l) {
        return Err(Error::NotASubgroup);
    }
    let out: Vec<Character> = h
        .characters()
        .filter(|&chi| l.iter().all(|&x| h.pairing(chi, x).0 == 0))
        .collect();
    let distinct: HashSet<usize> = l.iter().copied().collect();
    debug_assert_eq!(out.len() * distinct.len(), h.order());
    Ok(out)
}

/// Closure of `chars` in the dual group, sorted.
pub fn subgroup_generated_by_chars(h: &AbelianGroup, chars: &[Character]) -> Vec<Character> {
    let gens: Vec<usize> = chars.iter().map(|c| c.0).collect();
    subgroup_closure(h, &gens)
        .into_iter()
        .map(Character)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> Vec<usize> {
        xs.to_vec()
    }

    #[test]
    fn tuple_encoding_roundtrip() {
        let h = AbelianGroup::new(vec![2, 3]).unwrap();
        for x in h.elements() {
            assert_eq!(h.index_of(&h.exponents(x)).unwrap(), x);
        }
        assert_eq!(h.exponents(4), vec![1, 1]);
        assert_eq!(h.add(4, 4), h.index_of(&[0, 2]).unwrap());
        assert_eq!(h.element_order(h.index_of(&[1, 1]).unwrap()), 6);
    }

    #[test]
    fn char_eval_examples() {
        let z4 = AbelianGroup::cyclic(4);
        let v = char_eval(&z4, Character(1), 1);
        assert_eq!((v.numerator(), v.order()), (1, 4));
        assert_eq!(v.to_complex(), Complex64::new(0.0, 1.0));
        for x in z4.elements() {
            assert!(char_eval(&z4, Character::PRINCIPAL, x).is_one());
        }
        let klein = AbelianGroup::new(vec![2, 2]).unwrap();
        let one_one = klein.index_of(&[1, 1]).unwrap();
        assert!(char_eval(&klein, Character(one_one), one_one).is_one());
    }

    #[test]
    fn roots_multiply_exactly() {
        let a = RootOfUnity::new(1, 4);
        let b = RootOfUnity::new(1, 6);
        // 1/4 + 1/6 = 5/12
        assert_eq!(a * b, RootOfUnity::new(5, 12));
        assert!((RootOfUnity::new(3, 4) * a).is_one());
    }

    #[test]
    fn char_sum_examples() {
        let z4 = AbelianGroup::cyclic(4);
        assert!(char_sum(&z4, Character(1), &[1, 3]).norm() < 1e-12);
        assert!(
            (char_sum(&z4, Character(2), &[1, 2, 3]) - Complex64::new(-1.0, 0.0)).norm() < 1e-12
        );
        assert_eq!(char_sum(&z4, Character(3), &[]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn perp_of_characters_examples() {
        let z4 = AbelianGroup::cyclic(4);
        let p = perp_of_characters(&z4, &[Character(0), Character(1), Character(3)]);
        assert_eq!(p.elements, set(&[0]));
        assert_eq!(
            perp_of_characters(&z4, &[Character(2)]).elements,
            set(&[0, 2])
        );
        let all = perp_of_characters(&z4, &[Character::PRINCIPAL]);
        assert_eq!(all.elements, set(&[0, 1, 2, 3]));
        assert_eq!(subgroup_closure(&z4, &all.generators), all.elements);
    }

    #[test]
    fn perp_of_subgroup_examples() {
        let z4 = AbelianGroup::cyclic(4);
        assert_eq!(
            perp_of_subgroup(&z4, &[0, 2]).unwrap(),
            vec![Character(0), Character(2)]
        );
        assert_eq!(
            perp_of_subgroup(&z4, &[0, 1, 2, 3]).unwrap(),
            vec![Character(0)]
        );
        assert_eq!(perp_of_subgroup(&z4, &[0]).unwrap().len(), 4);
        assert_eq!(perp_of_subgroup(&z4, &[0, 1]), Err(Error::NotASubgroup));
    }

    #[test]
    fn generated_characters() {
        let z4 = AbelianGroup::cyclic(4);
        assert_eq!(subgroup_generated_by_chars(&z4, &[Character(1)]).len(), 4);
        assert_eq!(
            subgroup_generated_by_chars(&z4, &[Character(2)]),
            vec![Character(0), Character(2)]
        );
        let z5 = AbelianGroup::cyclic(5);
        assert_eq!(
            subgroup_generated_by_chars(&z5, &[Character(1), Character(2)]).len(),
            5
        );
    }

    #[test]
    fn rejects_zero_factor() {
        assert!(AbelianGroup::new(vec![3, 0]).is_err());
        assert!(AbelianGroup::new(vec![]).is_err());
    }
}
