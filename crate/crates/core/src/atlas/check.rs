use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Atlas, PointIndex, VARS};
use crate::error::{Error, Result};
use crate::loops::{AffineValue, LoopModel};
use crate::term::{decide_equal, DecideConfig, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CocycleMode {
    Symbolic,
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleResult {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub passed: bool,
    /// Verdict labels (symbolic) or number of points compared (sampled).
    pub evidence: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub atlas: String,
    pub mode: CocycleMode,
    pub triples: Vec<TripleResult>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.triples.iter().all(|t| t.passed)
    }

    pub fn first_failure(&self) -> Option<&TripleResult> {
        self.triples.iter().find(|t| !t.passed)
    }
}

fn compose(outer: &[Term], inner: &[Term]) -> Vec<Term> {
    let sub: HashMap<String, Term> = VARS.iter().zip(inner).map(|(v, t)| (v.to_string(), t.clone())).collect();
    outer.iter().map(|t| t.substitute(&sub)).collect()
}

/// Triples `i < j < k` with all three transitions present.
fn triples(atlas: &Atlas) -> Vec<(usize, usize, usize)> {
    let n = atlas.charts;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if atlas.get(i, j).is_some() && atlas.get(j, k).is_some() && atlas.get(i, k).is_some() {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn random_point<M: LoopModel>(dim: usize, rng: &mut ChaCha8Rng, model: &M) -> Vec<AffineValue<M::Elem>> {
    (0..dim)
        .map(|_| {
            if rng.gen_ratio(1, 5) {
                AffineValue::Zero
            } else {
                AffineValue::Loop(model.random_element(rng))
            }
        })
        .collect()
}

/// Checks `φ_jk ∘ φ_ij = φ_ik` for every `i < j < k`.
///
/// Symbolic mode asks the term engine for a proof of each coordinate; sampled
/// mode evaluates both sides on `samples` random points of the triple
/// overlap, zero coordinates included.
pub fn check_cocycles<M: LoopModel>(
    atlas: &Atlas,
    mode: CocycleMode,
    model: &M,
    samples: usize,
    seed: u64,
) -> CocycleReport {
    let mut results = Vec::new();
    for (i, j, k) in triples(atlas) {
        let (ij, jk, ik) = (atlas.get(i, j).unwrap(), atlas.get(j, k).unwrap(), atlas.get(i, k).unwrap());
        let r = match mode {
            CocycleMode::Symbolic => {
                let lhs = compose(&jk.map, &ij.map);
                let cfg = DecideConfig {
                    seed,
                    ..DecideConfig::default()
                };
                let verdicts: Vec<_> = lhs.iter().zip(&ik.map).map(|(l, r)| decide_equal(l, r, &cfg)).collect();
                let witness = verdicts.iter().find(|v| v.is_refuted()).map(|v| serde_json::to_string(v).unwrap_or_default());
                TripleResult {
                    i,
                    j,
                    k,
                    passed: verdicts.iter().all(|v| v.is_proved()),
                    evidence: verdicts.iter().map(|v| v.label()).collect::<Vec<_>>().join(","),
                    witness,
                }
            }
            CocycleMode::Sampled => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i * 100 + j * 10 + k) as u64));
                let (mut checked, mut attempts) = (0, 0);
                let mut witness = None;
                while checked < samples && attempts < samples * 50 {
                    attempts += 1;
                    let p = random_point(atlas.dim, &mut rng, model);
                    if !ij.contains(&p) || !ik.contains(&p) {
                        continue;
                    }
                    let Ok(q) = atlas.transition(i, j, &p, model) else { continue };
                    if !jk.contains(&q) {
                        continue;
                    }
                    checked += 1;
                    let two = atlas.transition(j, k, &q, model);
                    let one = atlas.transition(i, k, &p, model);
                    match (two, one) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (a, b) => {
                            witness = Some(format!("p = {}: via U_{j} {:?}, direct {:?}", fmt_pt(&p), a.map(|v| fmt_pt(&v)), b.map(|v| fmt_pt(&v))));
                            break;
                        }
                    }
                }
                TripleResult {
                    i,
                    j,
                    k,
                    passed: witness.is_none() && checked > 0,
                    evidence: format!("{checked} points"),
                    witness,
                }
            }
        };
        results.push(r);
    }
    CocycleReport {
        atlas: atlas.provenance.to_string(),
        mode,
        triples: results,
    }
}

pub(crate) fn fmt_pt<E: std::fmt::Display>(p: &[AffineValue<E>]) -> String {
    let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spanning {
    All,
    /// Only `φ_ij` with `i < j`.
    Forward,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PointCensus {
    pub atlas: String,
    pub model: String,
    pub total: usize,
    /// `cells[k]`: classes whose lowest chart is `k`.
    pub cells: Vec<usize>,
    /// No class holds two distinct points of one chart.
    pub consistent: bool,
    pub collision: Option<String>,
}

/// Glues `charts × A(L)^dim` along every transition and counts classes.
pub fn enumerate_points<M: LoopModel>(atlas: &Atlas, model: &M, spanning: Spanning) -> Result<PointCensus> {
    let elems = model
        .elements()
        .ok_or_else(|| Error::Domain(format!("model {} is infinite", model.name())))?;
    let affine: Vec<AffineValue<M::Elem>> = std::iter::once(AffineValue::Zero)
        .chain(elems.into_iter().map(AffineValue::Loop))
        .collect();
    let mut local: Vec<Vec<AffineValue<M::Elem>>> = vec![Vec::new()];
    for _ in 0..atlas.dim {
        local = local
            .into_iter()
            .flat_map(|p| {
                affine.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    let per = local.len();
    let index: PointIndex<M::Elem> = local.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    let mut uf = UnionFind::<usize>::new(per * atlas.charts);
    for t in atlas.transitions() {
        if spanning == Spanning::Forward && t.from > t.to {
            continue;
        }
        for (k, p) in local.iter().enumerate() {
            if !t.contains(p) {
                continue;
            }
            let q = atlas.transition(t.from, t.to, p, model)?;
            let target = index[&q];
            uf.union(t.from * per + k, t.to * per + target);
        }
    }
    let mut lowest: HashMap<usize, usize> = HashMap::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut collision = None;
    for chart in 0..atlas.charts {
        for k in 0..per {
            let root = uf.find(chart * per + k);
            lowest.entry(root).or_insert(chart);
            if let Some(&other) = seen.get(&(root, chart)) {
                if collision.is_none() {
                    collision = Some(format!(
                        "chart {chart}: {} and {} are identified",
                        fmt_pt(&local[other]),
                        fmt_pt(&local[k])
                    ));
                }
            } else {
                seen.insert((root, chart), k);
            }
        }
    }
    let mut cells = vec![0; atlas.charts];
    for &c in lowest.values() {
        cells[c] += 1;
    }
    Ok(PointCensus {
        atlas: atlas.provenance.to_string(),
        model: model.name().to_string(),
        total: lowest.len(),
        cells,
        consistent: collision.is_none(),
        collision,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{build_blowup_x1, build_hirzebruch, build_p1, build_p2, Formula};
    use crate::loops::{Finite16, OctonionModel};

    #[test]
    fn p1_and_p2_counts() {
        let f = Finite16::new();
        let p1 = enumerate_points(&build_p1(), &f, Spanning::All).unwrap();
        assert_eq!(p1.total, 18);
        let p2 = enumerate_points(&build_p2(), &f, Spanning::All).unwrap();
        assert_eq!(p2.total, 307);
        assert_eq!(p2.cells, vec![289, 17, 1]);
        assert!(p2.consistent);
    }

    #[test]
    fn surfaces_have_324_points() {
        let f = Finite16::new();
        for at in [build_blowup_x1(), build_hirzebruch(1), build_hirzebruch(-2)] {
            let c = enumerate_points(&at, &f, Spanning::All).unwrap();
            assert_eq!(c.total, 324, "{}", at.provenance);
            assert!(c.consistent);
            assert_eq!(enumerate_points(&at, &f, Spanning::Forward).unwrap().total, 324);
        }
    }

    #[test]
    fn relabeling_keeps_count() {
        let f = Finite16::new();
        let at = build_hirzebruch(2);
        let r = at.relabel(&[2, 0, 3, 1]);
        assert_eq!(enumerate_points(&r, &f, Spanning::All).unwrap().total, 324);
    }

    #[test]
    fn symbolic_cocycles() {
        let m = OctonionModel::default();
        for at in [build_p2(), build_blowup_x1(), build_hirzebruch(0), build_hirzebruch(2)] {
            let r = check_cocycles(&at, CocycleMode::Symbolic, &m, 0, 0);
            assert!(r.passed(), "{}: {:?}", at.provenance, r.first_failure());
            assert_eq!(r.triples.len(), if at.charts == 3 { 1 } else { 4 });
        }
    }

    #[test]
    fn sampled_cocycles() {
        let m = OctonionModel::default();
        let r = check_cocycles(&build_hirzebruch(3), CocycleMode::Sampled, &m, 200, 1);
        assert!(r.passed(), "{:?}", r.first_failure());
        let r = check_cocycles(&build_p2(), CocycleMode::Sampled, &Finite16::new(), 200, 1);
        assert!(r.passed());
    }

    #[test]
    fn perturbed_transition_is_caught() {
        let mut at = build_hirzebruch(1);
        let t = at.get(1, 2).unwrap().clone();
        // swap the product order in φ_12
        let swapped = match &t.map[1] {
            Term::Mul(l, r) => Term::mul((**r).clone(), (**l).clone()),
            other => panic!("{other}"),
        };
        at.insert(1, 2, vec![t.map[0].clone(), swapped], t.nonzero.clone(), Formula::Terms);
        let r = check_cocycles(&at, CocycleMode::Sampled, &OctonionModel::default(), 200, 0);
        assert!(!r.passed());
        assert!(r.first_failure().unwrap().witness.is_some());
        let s = check_cocycles(&at, CocycleMode::Symbolic, &OctonionModel::default(), 0, 0);
        assert!(!s.passed());
    }
}
