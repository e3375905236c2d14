use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{
    apply_map, classify_map, compose_maps, normalize_map, random_points, ComposeOutcome, Level, LiftConfig,
    PairMap, Pseudoreflection, Sign,
};
use crate::loops::OctonionModel;
use crate::toric::{check_triangular, is_fulton_cycle, partial_product, FultonCycle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceArc {
    pub i: usize,
    pub j: usize,
    #[serde(flatten)]
    pub map: Pseudoreflection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<Level>,
}

/// A Fulton cycle with signs `ε` such that every arc composite `M_ij` is a
/// pseudoreflection and the full turn is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceCycle {
    pub n: usize,
    pub a: Vec<i64>,
    pub eps: Vec<Sign>,
    pub arcs: Vec<NiceArc>,
}

impl NiceCycle {
    pub fn arc(&self, i: usize, j: usize) -> Option<&NiceArc> {
        self.arcs.iter().find(|r| r.i == i && r.j == j)
    }

    /// Arc maps only, for comparing liftings that differ in ignorable signs.
    pub fn arc_maps(&self) -> Vec<(usize, usize, Pseudoreflection)> {
        self.arcs.iter().map(|r| (r.i, r.j, r.map)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftFailure {
    pub cycle: Vec<i64>,
    pub explanation: String,
    /// Sign vector that classified the most arcs.
    pub best_eps: Option<Vec<Sign>>,
    pub best_arcs: Vec<NiceArc>,
    pub arcs_total: usize,
}

fn arc_chain(n: usize, i: usize, j: usize) -> Vec<usize> {
    let len = (j + n - i) % n;
    let len = if len == 0 { n } else { len };
    (0..len).map(|k| (i + k) % n).collect()
}

struct Searcher<'a> {
    a: &'a [i64],
    n: usize,
    config: &'a LiftConfig,
    memo: HashMap<(usize, usize, u64), ComposeOutcome>,
    cycle: FultonCycle,
}

impl Searcher<'_> {
    fn composite(&self, chain: &[usize], eps: &[Sign]) -> PairMap {
        let mut acc: Option<PairMap> = None;
        for &k in chain {
            let step = Pseudoreflection::a(eps[k], self.a[k]).terms();
            acc = Some(match acc {
                None => step,
                Some(inner) => normalize_map(&compose_maps(&step, &inner)),
            });
        }
        normalize_map(&acc.expect("non-empty chain"))
    }

    fn outcome(&mut self, i: usize, j: usize, eps: &[Sign]) -> ComposeOutcome {
        let chain = arc_chain(self.n, i, j);
        let bits = chain
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &p)| acc | (u64::from(eps[p] == Sign::Minus) << k));
        let key = (i, chain.len(), bits);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let map = self.composite(&chain, eps);
        let matrix = if chain.len() == self.n {
            crate::toric::Mat2::identity()
        } else {
            partial_product(&self.cycle, i, j)
        };
        let out = classify_map(&map, &matrix, self.config);
        self.memo.insert(key, out.clone());
        out
    }

    fn cocycles_hold(&self, arcs: &[NiceArc]) -> bool {
        let n = self.n;
        let get = |i: usize, j: usize| arcs.iter().find(|r| r.i == i && r.j == j).map(|r| r.map);
        let model = OctonionModel::default();
        let pts = random_points(8, self.config.seed ^ 0x5eed);
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    if j == i || j == k {
                        continue;
                    }
                    let on_arc = k == i || (j + n - i) % n < (k + n - i) % n;
                    if !on_arc {
                        continue;
                    }
                    let (Some(ij), Some(jk)) = (get(i, j), get(j, k)) else { return false };
                    let direct = if k == i { None } else { get(i, k) };
                    for pt in &pts {
                        let Ok(mid) = apply_map(&ij.terms(), pt, &model) else { return false };
                        let Ok(two) = apply_map(&jk.terms(), &mid, &model) else { return false };
                        let want = match direct {
                            Some(ik) => match apply_map(&ik.terms(), pt, &model) {
                                Ok(w) => w,
                                Err(_) => return false,
                            },
                            None => pt.clone(),
                        };
                        if two != want {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn gray_signs(n: usize, step: u64) -> Vec<Sign> {
    let g = step ^ (step >> 1);
    (0..n)
        .map(|k| if g >> k & 1 == 1 { Sign::Minus } else { Sign::Plus })
        .collect()
}

/// Every sign vector (in Gray-code order) that makes `a` a nice cycle.
pub fn search_liftings(a: &[i64], config: &LiftConfig) -> Result<Vec<NiceCycle>, LiftFailure> {
    let n = a.len();
    let fail = |explanation: String| LiftFailure {
        cycle: a.to_vec(),
        explanation,
        best_eps: None,
        best_arcs: Vec::new(),
        arcs_total: n * n.saturating_sub(1),
    };
    match is_fulton_cycle(a) {
        Ok(true) => {}
        Ok(false) => return Err(fail("the product of the A matrices is not the identity".into())),
        Err(e) => return Err(fail(e.to_string())),
    }
    if n > 16 {
        return Err(fail(format!("{n} signs are too many to search exhaustively")));
    }
    let cycle = FultonCycle::new(a.to_vec()).expect("checked above");
    let tri = check_triangular(&cycle);
    if let Some(bad) = tri.counterexamples().next() {
        return Err(fail(format!(
            "A_{}{} = {} is not elementary, so no sign choice can lift it",
            bad.i, bad.j, bad.matrix
        )));
    }

    let mut s = Searcher {
        a,
        n,
        config,
        memo: HashMap::new(),
        cycle,
    };
    let mut found = Vec::new();
    let mut best: (usize, Option<Vec<Sign>>, Vec<NiceArc>) = (0, None, Vec::new());
    let mut last_reason = String::new();
    for step in 0..(1u64 << n) {
        let eps = gray_signs(n, step);
        let mut arcs = Vec::new();
        let mut reason = None;
        'arcs: for i in 0..n {
            for d in 1..n {
                let j = (i + d) % n;
                match s.outcome(i, j, &eps) {
                    ComposeOutcome::Pseudoreflection { primary, level, .. } => arcs.push(NiceArc {
                        i,
                        j,
                        map: primary,
                        level: Some(level),
                    }),
                    ComposeOutcome::Identity { .. } => {
                        reason = Some(format!("M_{i}{j} is the identity but A_{i}{j} is not"));
                        break 'arcs;
                    }
                    ComposeOutcome::NotPseudoreflection { map, .. } => {
                        reason = Some(format!(
                            "M_{i}{j} = ({}, {}) is not a pseudoreflection",
                            map[0], map[1]
                        ));
                        break 'arcs;
                    }
                }
            }
        }
        if reason.is_none() && !matches!(s.outcome(0, 0, &eps), ComposeOutcome::Identity { .. }) {
            reason = Some("the full turn is not the identity map".into());
        }
        if reason.is_none() && !s.cocycles_hold(&arcs) {
            reason = Some("sampled cocycle check failed".into());
        }
        match reason {
            None => found.push(NiceCycle {
                n,
                a: a.to_vec(),
                eps,
                arcs,
            }),
            Some(r) => {
                if arcs.len() > best.0 || best.1.is_none() {
                    best = (arcs.len(), Some(eps.clone()), arcs);
                }
                last_reason = r;
            }
        }
    }
    if found.is_empty() {
        Err(LiftFailure {
            cycle: a.to_vec(),
            explanation: format!("no sign vector works; last obstruction: {last_reason}"),
            best_eps: best.1,
            best_arcs: best.2,
            arcs_total: n * (n - 1),
        })
    } else {
        Ok(found)
    }
}

/// First nice-cycle structure in Gray-code order.
pub fn search_lifting(a: &[i64], config: &LiftConfig) -> Result<NiceCycle, LiftFailure> {
    search_liftings(a, config).map(|mut v| v.swap_remove(0))
}
