//! The problem specification file and its resolution into a digraph, a
//! frame, a symbol, and a group.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use specblock::abelian::AbelianGroup;
use specblock::automorphism::{automorphism_group_oracle, DEFAULT_NODE_BUDGET};
use specblock::digraph::{orbital_closure, Digraph, DigraphJson};
use specblock::gp::gp_graph;
use specblock::perm::{enumerate_group, Perm, PermGroup};
use specblock::symbol::{
    build_frame, digraph_from_symbol, extract_symbol, SemiregularFrame, Symbol, SymbolJson,
};

use crate::failure::Failure;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub digraph: DigraphSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<HSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DigraphSource {
    Arcs(DigraphJson),
    OrbitalSeeds(Vec<[usize; 2]>),
    Symbol(SymbolJson),
    Gp { n: usize, s: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HSource {
    Generators(Vec<Vec<usize>>),
    Factors(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSource {
    Generators(Vec<Vec<usize>>),
    Named(NamedGroup),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedGroup {
    #[serde(rename = "aut-of-digraph")]
    AutOfDigraph,
}

pub fn parse(text: &str, origin: &str) -> Result<ProblemSpec, Failure> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let message = message
            .rsplit_once(" at line ")
            .map_or(message.as_str(), |(m, _)| m);
        Failure::Validation(format!("{origin}:{}:{}: {message}", e.line(), e.column()))
    })
}

pub struct Problem {
    pub digraph: Digraph,
    pub frame: SemiregularFrame,
    pub symbol: Symbol,
    given_group: Option<PermGroup>,
}

fn perms(degree: usize, images: &[Vec<usize>], what: &str) -> Result<Vec<Perm>, Failure> {
    images
        .iter()
        .enumerate()
        .map(|(k, p)| {
            if p.len() != degree {
                return Err(Failure::Validation(format!(
                    "{what} generator {k} has degree {}, expected {degree}",
                    p.len()
                )));
            }
            Perm::new(p.clone())
                .map_err(|e| Failure::Validation(format!("{what} generator {k}: {e}")))
        })
        .collect()
}

fn reject<T>(value: &Option<T>, message: &str) -> Result<(), Failure> {
    match value {
        Some(_) => Err(Failure::Validation(message.into())),
        None => Ok(()),
    }
}

impl Problem {
    pub fn resolve(spec: &ProblemSpec) -> Result<Problem, Failure> {
        let given = |degree: usize| -> Result<Option<PermGroup>, Failure> {
            match &spec.group {
                Some(GroupSource::Generators(g)) => {
                    Ok(Some(PermGroup::new(degree, perms(degree, g, "group")?)?))
                }
                Some(GroupSource::Named(NamedGroup::AutOfDigraph)) | None => Ok(None),
            }
        };
        let (digraph, frame, given_group) = match &spec.digraph {
            DigraphSource::Symbol(sj) => {
                reject(&spec.base, "\"base\" needs \"h\" given by generators")?;
                let group = match &spec.h {
                    Some(HSource::Factors(f)) => Some(AbelianGroup::new(f.clone())?),
                    Some(HSource::Generators(_)) => {
                        return Err(Failure::Validation(
                            "a symbol source takes \"h\" as factors".into(),
                        ))
                    }
                    None => None,
                };
                if let (Some(g), Some(f)) = (&group, &sj.factors) {
                    if g.factors() != f.as_slice() {
                        return Err(Failure::Validation(
                            "\"h\" factors differ from the symbol factors".into(),
                        ));
                    }
                }
                let symbol = sj.to_symbol(group.as_ref())?;
                let (d, f) = digraph_from_symbol(&symbol);
                let g = given(d.order())?;
                (d, f, g)
            }
            DigraphSource::Gp { n, s } => {
                reject(&spec.h, "a gp source fixes \"h\"")?;
                reject(&spec.base, "a gp source fixes the base vector")?;
                let (d, f, _) = gp_graph(*n, *s)?;
                let g = given(d.order())?;
                (d, f, g)
            }
            DigraphSource::Arcs(dj) => {
                let d = Digraph::try_from(dj.clone())?;
                let f = Self::frame_from_generators(spec, d.order())?;
                let g = given(d.order())?;
                (d, f, g)
            }
            DigraphSource::OrbitalSeeds(seeds) => {
                let f = Self::frame_from_generators(spec, f_degree(spec)?)?;
                let g = given(f.degree())?.ok_or_else(|| {
                    Failure::Validation("orbital seeds need \"group\" generators".into())
                })?;
                let pairs: Vec<(usize, usize)> = seeds.iter().map(|&[u, v]| (u, v)).collect();
                (orbital_closure(&g, &pairs)?, f, Some(g))
            }
        };
        let symbol = extract_symbol(&digraph, &frame)?;
        if let Some(g) = &given_group {
            for (k, x) in g.generators().iter().enumerate() {
                if !digraph.is_preserved_by(x) {
                    return Err(Failure::Validation(format!(
                        "group generator {k} does not preserve the digraph"
                    )));
                }
            }
        }
        Ok(Problem {
            digraph,
            frame,
            symbol,
            given_group,
        })
    }

    fn frame_from_generators(
        spec: &ProblemSpec,
        degree: usize,
    ) -> Result<SemiregularFrame, Failure> {
        let gens = match &spec.h {
            Some(HSource::Generators(g)) => g,
            _ => {
                return Err(Failure::Validation(
                    "this digraph source needs \"h\" generators".into(),
                ))
            }
        };
        let h = PermGroup::new(degree, perms(degree, gens, "h")?)?;
        Ok(build_frame(&h, spec.base.as_deref())?)
    }

    /// The given group, checked to contain `H`, or the full automorphism
    /// group of the digraph.
    pub fn group(&self, cap: usize) -> Result<PermGroup, Failure> {
        match &self.given_group {
            Some(g) => {
                let members: HashSet<Perm> = enumerate_group(g, cap)?.into_iter().collect();
                if !self
                    .frame
                    .h()
                    .generators()
                    .iter()
                    .all(|x| members.contains(x))
                {
                    return Err(Failure::Validation(
                        "\"group\" does not contain \"h\"".into(),
                    ));
                }
                Ok(PermGroup::from_elements(
                    g.degree(),
                    members.into_iter().collect(),
                )?)
            }
            None => Ok(automorphism_group_oracle(
                &self.digraph,
                DEFAULT_NODE_BUDGET,
            )?),
        }
    }
}

fn f_degree(spec: &ProblemSpec) -> Result<usize, Failure> {
    match (&spec.h, &spec.group) {
        (Some(HSource::Generators(g)), _) if !g.is_empty() => Ok(g[0].len()),
        (_, Some(GroupSource::Generators(g))) if !g.is_empty() => Ok(g[0].len()),
        _ => Err(Failure::Validation(
            "cannot infer the degree for orbital seeds".into(),
        )),
    }
}
