//! JSON reports and their text rendering.

use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use specblock::abelian::{AbelianGroup, Character};
use specblock::gp::{Classification, FilterReport, LiftSolution};
use specblock::partition::{ExtremeCase, GTripleJson, PartitionJson};
use specblock::spectral::format_complex;
use specblock::symbol::{ElementJson, SymbolJson};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
        ComplexJson {
            re: clean(z.re),
            im: clean(z.im),
        }
    }
}

impl ComplexJson {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

pub fn characters_json(h: &AbelianGroup, chars: &[Character]) -> Vec<ElementJson> {
    chars
        .iter()
        .map(|c| ElementJson::from_index(h, c.0))
        .collect()
}

pub fn elements_json(h: &AbelianGroup, xs: &[usize]) -> Vec<ElementJson> {
    xs.iter().map(|&x| ElementJson::from_index(h, x)).collect()
}

fn element_text(e: &ElementJson) -> String {
    match e {
        ElementJson::Int(x) => x.to_string(),
        ElementJson::Tuple(t) => format!(
            "({})",
            t.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        ),
    }
}

fn list_text(xs: &[ElementJson]) -> String {
    format!(
        "{{{}}}",
        xs.iter().map(element_text).collect::<Vec<_>>().join(",")
    )
}

fn cells_text(cells: &[Vec<usize>]) -> String {
    cells
        .iter()
        .map(|c| {
            format!(
                "{{{}}}",
                c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub lambda: ComplexJson,
    pub multiplicity: usize,
    pub dimension: usize,
    pub characters: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub vertices: usize,
    pub symbol: SymbolJson,
    pub spectrum: Vec<SpectrumRow>,
    pub warnings: Vec<String>,
}

impl SpectrumReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<24} {:>5} {:>5}  characters",
            "lambda", "mult", "dim"
        )
        .unwrap();
        for r in &self.spectrum {
            writeln!(
                out,
                "{:<24} {:>5} {:>5}  {}",
                format_complex(r.lambda.to_complex()),
                r.multiplicity,
                r.dimension,
                list_text(&r.characters)
            )
            .unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockRow {
    pub lambda: ComplexJson,
    pub characters: Vec<ElementJson>,
    pub case: ExtremeCase,
    pub blocks: PartitionJson,
    pub triple: GTripleJson,
    pub kernel_order: usize,
    pub kernel_in_h: Vec<ElementJson>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlocksReport {
    pub vertices: usize,
    pub group_order: usize,
    pub oracle_checked: bool,
    pub systems: Vec<BlockRow>,
}

impl BlocksReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "vertices {}, |G| = {}",
            self.vertices, self.group_order
        )
        .unwrap();
        for r in &self.systems {
            writeln!(
                out,
                "lambda = {}  case: {}",
                format_complex(r.lambda.to_complex()),
                case_text(r.case)
            )
            .unwrap();
            writeln!(out, "  characters: {}", list_text(&r.characters)).unwrap();
            writeln!(out, "  blocks: {}", cells_text(&r.blocks.cells)).unwrap();
            writeln!(
                out,
                "  triple: base ({})  delta {}  K {}",
                r.triple
                    .base
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                cells_text(&r.triple.delta),
                list_text(&r.triple.k)
            )
            .unwrap();
            writeln!(
                out,
                "  kernel order {}, kernel in H {}",
                r.kernel_order,
                list_text(&r.kernel_in_h)
            )
            .unwrap();
            for v in &r.violations {
                writeln!(out, "  violation: {v}").unwrap();
            }
        }
        if self.oracle_checked {
            writeln!(out, "oracle: agrees").unwrap();
        }
        out
    }
}

fn case_text(c: ExtremeCase) -> &'static str {
    match c {
        ExtremeCase::GeneratesDual => "generates_dual",
        ExtremeCase::PrincipalOnly => "principal_only",
        ExtremeCase::Neither => "neither",
    }
}

pub fn classify_text(c: &Classification) -> String {
    let mut out = String::new();
    for p in &c.pairs {
        let quotients: Vec<String> = p.filter.quotients().iter().map(|b| b.to_string()).collect();
        writeln!(
            out,
            "GP({},{})  filter {:<14} edge-transitive {}{}",
            p.n,
            p.s,
            if quotients.is_empty() {
                "-".to_string()
            } else {
                quotients.join(",")
            },
            if p.edge_transitive { "yes" } else { "no" },
            match p.oracle {
                Some(o) => format!(
                    "  oracle {} {}",
                    if o { "yes" } else { "no" },
                    if p.agrees() { "agrees" } else { "DISAGREES" }
                ),
                None => String::new(),
            }
        )
        .unwrap();
    }
    let labels: Vec<String> = c
        .edge_transitive
        .iter()
        .map(|(n, s)| format!("GP({n},{s})"))
        .collect();
    writeln!(out, "edge-transitive: {}", labels.join(" ")).unwrap();
    out
}

pub fn filter_text(r: &FilterReport) -> String {
    let chars: Vec<String> = r.characters.iter().map(usize::to_string).collect();
    let quotients: Vec<String> = r.quotients().iter().map(|b| b.to_string()).collect();
    format!(
        "GP({},{})  characters {{{}}}  quotients {}  {}\n",
        r.n,
        r.s,
        chars.join(","),
        if quotients.is_empty() {
            "-".to_string()
        } else {
            quotients.join(",")
        },
        if r.passes() { "passes" } else { "rejected" }
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftReport {
    pub base: String,
    pub m: usize,
    pub system: Vec<String>,
    pub solutions: Vec<LiftSolution>,
}

impl LiftReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "base {}, m = {}", self.base, self.m).unwrap();
        for e in &self.system {
            writeln!(out, "  {e}").unwrap();
        }
        for s in &self.solutions {
            writeln!(
                out,
                "lambda = {}, a = {}: GP({},{}) = GP({},{})",
                s.lambda, s.a, s.cover.0, s.cover.1, s.canonical.0, s.canonical.1
            )
            .unwrap();
        }
        if self.solutions.is_empty() {
            writeln!(out, "no solutions").unwrap();
        }
        out
    }
}
