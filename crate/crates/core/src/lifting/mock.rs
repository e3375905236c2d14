use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{apply_map, compose_maps, format_signs, normalize_map, PairMap, Pseudoreflection, Sign};
use crate::error::{Error, Result};
use crate::loops::checks::{check_moufang, Samples};
use crate::loops::{AffineValue, LoopModel};
use crate::toric::{FultonCycle, Mat2};

#[derive(Clone, Debug, Serialize)]
pub struct MockArc {
    pub i: usize,
    pub j: usize,
    /// Applied first to last.
    pub chain: Vec<Pseudoreflection>,
    #[serde(serialize_with = "ser_map")]
    pub map: PairMap,
    pub matrix: Mat2,
    /// Points where stepwise application and both bracketings of the
    /// composite formula were compared.
    pub bracket_points: usize,
    pub bracket_failures: usize,
}

fn ser_map<S: serde::Serializer>(m: &PairMap, s: S) -> std::result::Result<S::Ok, S::Error> {
    [m[0].to_string(), m[1].to_string()].serialize(s)
}

/// `M_i = A_{ε_i}(a_i)` for `i < n - 1`; the last map is forced to close the
/// loop, and arcs running backwards are inverses of forward ones.
#[derive(Clone, Debug, Serialize)]
pub struct MockLifting {
    pub n: usize,
    pub a: Vec<i64>,
    pub eps: String,
    pub model: String,
    pub arcs: Vec<MockArc>,
}

impl MockLifting {
    pub fn arc(&self, i: usize, j: usize) -> Option<&MockArc> {
        self.arcs.iter().find(|r| r.i == i && r.j == j)
    }

    pub fn bracket_failures(&self) -> usize {
        self.arcs.iter().map(|a| a.bracket_failures).sum()
    }

    /// Normalised arc formulas, for deduplicating liftings as maps.
    pub fn signature(&self) -> Vec<String> {
        self.arcs.iter().map(|a| format!("{}{}:{},{}", a.i, a.j, a.map[0], a.map[1])).collect()
    }
}

fn compose_chain(chain: &[Pseudoreflection], left_grouped: bool) -> PairMap {
    let terms: Vec<PairMap> = chain.iter().map(Pseudoreflection::terms).collect();
    if left_grouped {
        // ((m_k ∘ m_{k-1}) ∘ ...) ∘ m_1
        let mut outer = normalize_map(terms.last().expect("non-empty"));
        for t in terms.iter().rev().skip(1) {
            outer = normalize_map(&compose_maps(&outer, t));
        }
        outer
    } else {
        // m_k ∘ (... ∘ (m_2 ∘ m_1))
        let mut inner = normalize_map(&terms[0]);
        for t in &terms[1..] {
            inner = normalize_map(&compose_maps(t, &inner));
        }
        inner
    }
}

fn bracket_check<M: LoopModel>(chain: &[Pseudoreflection], points: usize, rng: &mut ChaCha8Rng, model: &M) -> Result<(usize, usize)> {
    let left = compose_chain(chain, true);
    let right = compose_chain(chain, false);
    let (mut checked, mut failed) = (0, 0);
    for _ in 0..points {
        let pt = [
            AffineValue::Loop(model.random_element(rng)),
            AffineValue::Loop(model.random_element(rng)),
        ];
        let mut step = pt.clone();
        for p in chain {
            step = p.apply(&step, model)?;
        }
        let l = apply_map(&left, &pt, model)?;
        let r = apply_map(&right, &pt, model)?;
        checked += 1;
        if l != step || r != step {
            failed += 1;
        }
    }
    Ok((checked, failed))
}

pub fn mock_lifting<M: LoopModel>(
    c: &FultonCycle,
    eps: &[Sign],
    model: &M,
    moufang: Samples,
    points: usize,
    seed: u64,
) -> Result<MockLifting> {
    let n = c.len();
    if eps.len() + 1 != n {
        return Err(Error::Length(eps.len()));
    }
    let report = check_moufang(model, moufang);
    if !report.passed() {
        let bad = report.checks.iter().find(|k| !k.informational && !k.passed()).expect("a failing check");
        return Err(Error::ModelNotMoufang(format!(
            "{}: {} fails at {}",
            model.name(),
            bad.name,
            bad.counterexample.clone().unwrap_or_default()
        )));
    }
    let a = c.entries();
    let base: Vec<Pseudoreflection> = (0..n - 1).map(|i| Pseudoreflection::a(eps[i], a[i])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let chain: Vec<Pseudoreflection> = if i < j {
                base[i..j].to_vec()
            } else {
                base[j..i].iter().rev().map(Pseudoreflection::inverse).collect()
            };
            let map = compose_chain(&chain, false);
            let matrix = chain.iter().fold(Mat2::identity(), |m, p| p.matrix().mul(&m));
            let (bracket_points, bracket_failures) = if chain.len() >= 2 {
                bracket_check(&chain, points, &mut rng, model)?
            } else {
                (0, 0)
            };
            arcs.push(MockArc {
                i,
                j,
                chain,
                map,
                matrix,
                bracket_points,
                bracket_failures,
            });
        }
    }
    Ok(MockLifting {
        n,
        a: a.to_vec(),
        eps: format_signs(eps),
        model: model.name().to_string(),
        arcs,
    })
}

/// All `2^(n-1)` mock liftings of `c`.
pub fn all_mock_liftings<M: LoopModel>(
    c: &FultonCycle,
    model: &M,
    moufang: Samples,
    points: usize,
    seed: u64,
) -> Result<Vec<MockLifting>> {
    let k = c.len().saturating_sub(1);
    (0..1u64 << k)
        .map(|bits| {
            let eps: Vec<Sign> = (0..k).map(|b| if bits >> b & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
            mock_lifting(c, &eps, model, moufang, points, seed.wrapping_add(bits))
        })
        .collect()
}
