//! Atlases of `A(L)`-charts: transition formulas with overlap domains,
//! cocycle verification and finite point counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lifting::{format_signs, Pseudoreflection};
use crate::loops::{AffineValue, LoopModel};
use crate::term::{evaluate, normalize, Assignment, Term};

mod builders;
mod check;

pub use builders::{
    build_blowup_x1, build_from_lifting, build_from_mock, build_hirzebruch, build_p1, build_p2, x1_toric_coordinates,
};
pub use check::{
    check_cocycles, enumerate_points, CocycleMode, CocycleReport, PointCensus, Spanning, TripleResult,
};

pub const VARS: [&str; 2] = ["x", "y"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Terms,
    Pseudoreflection(Pseudoreflection),
    Chain(Vec<Pseudoreflection>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub map: Vec<Term>,
    /// `nonzero[k]`: coordinate `k` must be nonzero on the overlap.
    pub nonzero: Vec<bool>,
    pub formula: Formula,
}

impl Transition {
    pub fn contains<E: Clone>(&self, pt: &[AffineValue<E>]) -> bool {
        self.nonzero.iter().zip(pt).all(|(&need, v)| !need || !v.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    ProjectiveLine,
    ProjectivePlane,
    Hirzebruch { a: i64 },
    BlowupX1,
    NiceCycle { a: Vec<i64>, eps: String },
    MockLifting { a: Vec<i64>, eps: String },
    Relabeled { perm: Vec<usize>, of: Box<Provenance> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ProjectiveLine => write!(f, "P1"),
            Provenance::ProjectivePlane => write!(f, "P2"),
            Provenance::Hirzebruch { a } => write!(f, "hirzebruch({a})"),
            Provenance::BlowupX1 => write!(f, "blowup-x1"),
            Provenance::NiceCycle { a, eps } => write!(f, "lifting({}; {eps})", crate::toric::format_cycle(a)),
            Provenance::MockLifting { a, eps } => write!(f, "mock({}; {eps})", crate::toric::format_cycle(a)),
            Provenance::Relabeled { perm, of } => write!(f, "{of} relabeled by {perm:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    pub provenance: Provenance,
    pub charts: usize,
    pub dim: usize,
    transitions: BTreeMap<(usize, usize), Transition>,
}

/// Variables read under an inversion, as a domain mask.
pub fn domain_from_terms(map: &[Term], dim: usize) -> Vec<bool> {
    let inverted: std::collections::BTreeSet<String> = map.iter().flat_map(Term::inverted_vars).collect();
    VARS[..dim].iter().map(|v| inverted.contains(*v)).collect()
}

impl Atlas {
    pub fn new(provenance: Provenance, charts: usize, dim: usize) -> Self {
        assert!(dim == 1 || dim == 2, "charts are A(L) or A(L)²");
        Atlas {
            provenance,
            charts,
            dim,
            transitions: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, from: usize, to: usize, map: Vec<Term>, nonzero: Vec<bool>, formula: Formula) {
        assert_eq!(map.len(), self.dim);
        assert_eq!(nonzero.len(), self.dim);
        self.transitions.insert(
            (from, to),
            Transition {
                from,
                to,
                map,
                nonzero,
                formula,
            },
        );
    }

    /// Inserts a term transition whose domain is read off the formula.
    pub fn insert_terms(&mut self, from: usize, to: usize, map: Vec<Term>) {
        let nonzero = domain_from_terms(&map, self.dim);
        self.insert(from, to, map, nonzero, Formula::Terms);
    }

    pub fn get(&self, from: usize, to: usize) -> Option<&Transition> {
        self.transitions.get(&(from, to))
    }

    pub fn transitions(&self) -> impl Iterator<Item = &Transition> {
        self.transitions.values()
    }

    /// `φ_ij(p)`.
    pub fn transition<M: LoopModel>(
        &self,
        i: usize,
        j: usize,
        pt: &[AffineValue<M::Elem>],
        model: &M,
    ) -> Result<Vec<AffineValue<M::Elem>>> {
        if i >= self.charts || j >= self.charts {
            return Err(Error::NoOverlap(i, j));
        }
        if pt.len() != self.dim {
            return Err(Error::Length(pt.len()));
        }
        if i == j {
            return Ok(pt.to_vec());
        }
        let t = self.get(i, j).ok_or(Error::NoOverlap(i, j))?;
        for (k, (&need, v)) in t.nonzero.iter().zip(pt).enumerate() {
            if need && v.is_zero() {
                return Err(Error::Domain(format!("{} = 0 lies outside U_{i}{j}", VARS[k])));
            }
        }
        let assignment: Assignment<M::Elem> = VARS[..self.dim]
            .iter()
            .zip(pt)
            .map(|(v, p)| (v.to_string(), p.clone()))
            .collect();
        t.map.iter().map(|term| evaluate(term, &assignment, model)).collect()
    }

    /// Renames chart `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Atlas {
        assert_eq!(perm.len(), self.charts);
        let mut out = Atlas::new(
            Provenance::Relabeled {
                perm: perm.to_vec(),
                of: Box::new(self.provenance.clone()),
            },
            self.charts,
            self.dim,
        );
        for t in self.transitions() {
            out.insert(perm[t.from], perm[t.to], t.map.clone(), t.nonzero.clone(), t.formula.clone());
        }
        out
    }

    /// Keeps only transitions `i → j` with `i < j`.
    pub fn forward_only(&self) -> Atlas {
        let mut out = self.clone();
        out.transitions.retain(|&(i, j), _| i < j);
        out
    }
}

#[derive(Serialize)]
struct TransitionJson<'a> {
    i: usize,
    j: usize,
    map: Vec<String>,
    nonzero: Vec<&'static str>,
    formula: &'a Formula,
}

impl Serialize for Atlas {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct AtlasJson<'a> {
            provenance: &'a Provenance,
            name: String,
            charts: usize,
            dim: usize,
            transitions: Vec<TransitionJson<'a>>,
        }
        AtlasJson {
            provenance: &self.provenance,
            name: self.provenance.to_string(),
            charts: self.charts,
            dim: self.dim,
            transitions: self
                .transitions()
                .map(|t| TransitionJson {
                    i: t.from,
                    j: t.to,
                    map: t.map.iter().map(|m| normalize(m).to_string()).collect(),
                    nonzero: t.nonzero.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| VARS[k]).collect(),
                    formula: &t.formula,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for Atlas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "atlas {} ({} charts of A(L)^{})", self.provenance, self.charts, self.dim)?;
        for t in self.transitions() {
            let dom: Vec<String> = t
                .nonzero
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(k, _)| format!("{} != 0", VARS[k]))
                .collect();
            let dom = if dom.is_empty() { "everywhere".to_string() } else { dom.join(", ") };
            let map: Vec<String> = t.map.iter().map(|m| normalize(m).to_string()).collect();
            write!(f, "  phi_{}{} = ({})   on {}", t.from, t.to, map.join(", "), dom)?;
            match &t.formula {
                Formula::Pseudoreflection(p) => writeln!(f, "   [{p}]")?,
                _ => writeln!(f)?,
            }
        }
        Ok(())
    }
}

pub(crate) fn signs_label(eps: &[crate::lifting::Sign]) -> String {
    format_signs(eps)
}

pub(crate) type PointIndex<E> = HashMap<Vec<AffineValue<E>>, usize>;
