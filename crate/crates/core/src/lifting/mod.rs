//! Pseudoreflections: sign-decorated liftings of elementary matrices to maps
//! `L × L → L × L`, and the classification of their composites.

use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::loops::{AffineValue, LoopModel, OctonionModel};
use crate::term::{decide_equal, evaluate, normalize, Assignment, DecideConfig, Term};
use crate::toric::{classify_elementary, elem_matrix, Classification, ElementaryKind, Mat2};

mod mock;
mod search;

pub use mock::{all_mock_liftings, mock_lifting, MockArc, MockLifting};
pub use search::{search_lifting, search_liftings, LiftFailure, NiceArc, NiceCycle};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn parse_vector(text: &str) -> Result<Vec<Sign>> {
        text.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(crate::Error::Parse(format!("sign must be + or -, got `{c}`"))),
            })
            .collect()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub fn format_signs(signs: &[Sign]) -> String {
    signs.iter().map(Sign::to_string).collect()
}

/// `X_ε(a)` for `X ∈ {A, A', B, B'}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pseudoreflection {
    pub kind: ElementaryKind,
    pub sign: Sign,
    pub param: i64,
}

fn x() -> Term {
    Term::var("x")
}

fn y() -> Term {
    Term::var("y")
}

/// Coordinates of a map on `A(L)²`, written in the source variables `x, y`.
pub type PairMap = [Term; 2];

impl Pseudoreflection {
    pub fn new(kind: ElementaryKind, sign: Sign, param: i64) -> Self {
        Pseudoreflection { kind, sign, param }
    }

    pub fn a(sign: Sign, param: i64) -> Self {
        Pseudoreflection::new(ElementaryKind::A, sign, param)
    }

    pub fn matrix(&self) -> Mat2 {
        elem_matrix(self.kind, self.param)
    }

    /// ```text
    /// A_+(a)  = (y⁻¹, x·yᵃ)      A_-(a)  = (y⁻¹, yᵃ·x)
    /// A'_+(a) = (xᵃ·y, x⁻¹)      A'_-(a) = (y·xᵃ, x⁻¹)
    /// B_+(a)  = (x⁻¹, xᵃ·y⁻¹)    B_-(a)  = (x⁻¹, y⁻¹·xᵃ)
    /// B'_+(a) = (x⁻¹·yᵃ, y⁻¹)    B'_-(a) = (yᵃ·x⁻¹, y⁻¹)
    /// ```
    pub fn terms(&self) -> PairMap {
        let a = self.param;
        let plus = self.sign == Sign::Plus;
        let ordered = |l: Term, r: Term| if plus { Term::mul(l, r) } else { Term::mul(r, l) };
        match self.kind {
            ElementaryKind::A => [Term::inv(y()), ordered(x(), Term::pow(y(), a))],
            ElementaryKind::APrime => [ordered(Term::pow(x(), a), y()), Term::inv(x())],
            ElementaryKind::B => [Term::inv(x()), ordered(Term::pow(x(), a), Term::inv(y()))],
            ElementaryKind::BPrime => [ordered(Term::inv(x()), Term::pow(y(), a)), Term::inv(y())],
        }
    }

    /// Which of `(x, y)` must be nonzero.
    pub fn domain(&self) -> [bool; 2] {
        match self.kind {
            ElementaryKind::A => [false, true],
            ElementaryKind::APrime => [true, false],
            ElementaryKind::B | ElementaryKind::BPrime => [true, true],
        }
    }

    /// `A_±(a)⁻¹ = A'_∓(a)`, `B_±(a)⁻¹ = B_∓(-a)`, `B'_±(a)⁻¹ = B'_∓(-a)`.
    pub fn inverse(&self) -> Pseudoreflection {
        let sign = self.sign.flip();
        match self.kind {
            ElementaryKind::A => Pseudoreflection::new(ElementaryKind::APrime, sign, self.param),
            ElementaryKind::APrime => Pseudoreflection::new(ElementaryKind::A, sign, self.param),
            ElementaryKind::B => Pseudoreflection::new(ElementaryKind::B, sign, -self.param),
            ElementaryKind::BPrime => Pseudoreflection::new(ElementaryKind::BPrime, sign, -self.param),
        }
    }

    pub fn apply<M: LoopModel>(
        &self,
        pt: &[AffineValue<M::Elem>; 2],
        model: &M,
    ) -> Result<[AffineValue<M::Elem>; 2]> {
        for (k, name) in ["x", "y"].iter().enumerate() {
            if self.domain()[k] && pt[k].is_zero() {
                return Err(crate::Error::Domain(format!("{name} = 0 is outside the domain of {self}")));
            }
        }
        apply_map(&self.terms(), pt, model)
    }
}

impl fmt::Display for Pseudoreflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.kind, self.sign, self.param)
    }
}

pub fn invert_pseudoreflection(p: &Pseudoreflection) -> Pseudoreflection {
    p.inverse()
}

pub fn identity_map() -> PairMap {
    [x(), y()]
}

/// `outer ∘ inner` by substitution, without normalising.
pub fn compose_maps(outer: &PairMap, inner: &PairMap) -> PairMap {
    let sub: HashMap<String, Term> = HashMap::from([("x".to_string(), inner[0].clone()), ("y".to_string(), inner[1].clone())]);
    [outer[0].substitute(&sub), outer[1].substitute(&sub)]
}

pub fn normalize_map(m: &PairMap) -> PairMap {
    [normalize(&m[0]), normalize(&m[1])]
}

pub fn apply_map<M: LoopModel>(
    map: &PairMap,
    pt: &[AffineValue<M::Elem>; 2],
    model: &M,
) -> Result<[AffineValue<M::Elem>; 2]> {
    let a: Assignment<M::Elem> = HashMap::from([("x".to_string(), pt[0].clone()), ("y".to_string(), pt[1].clone())]);
    Ok([evaluate(&map[0], &a, model)?, evaluate(&map[1], &a, model)?])
}

/// How a map identity was established.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Proved from the inversion-loop rules; holds in every loop with inversion.
    Symbolic,
    /// Exact agreement on random octonion points only.
    Sampled,
}

#[derive(Clone, Copy, Debug)]
pub struct LiftConfig {
    pub search_budget: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for LiftConfig {
    fn default() -> Self {
        LiftConfig {
            search_budget: 200,
            samples: 64,
            seed: 0,
        }
    }
}

pub(crate) fn random_points(n: usize, seed: u64) -> Vec<[AffineValue<crate::loops::Octonion>; 2]> {
    let model = OctonionModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            [
                AffineValue::Loop(model.random_element(&mut rng)),
                AffineValue::Loop(model.random_element(&mut rng)),
            ]
        })
        .collect()
}

/// Equality of two maps on `L × L`: normal forms, then exact octonion
/// sampling, then a bounded rewriting search for a proof.
pub fn maps_equal(f: &PairMap, g: &PairMap, config: &LiftConfig) -> Option<Level> {
    let (nf, ng) = (normalize_map(f), normalize_map(g));
    if nf == ng {
        return Some(Level::Symbolic);
    }
    let model = OctonionModel::default();
    for pt in random_points(config.samples, config.seed) {
        let l = apply_map(&nf, &pt, &model).ok()?;
        let r = apply_map(&ng, &pt, &model).ok()?;
        if l != r {
            return None;
        }
    }
    let cfg = DecideConfig {
        budget: config.search_budget,
        samples: 0,
        seed: config.seed,
    };
    let proved = (0..2).all(|k| decide_equal(&nf[k], &ng[k], &cfg).is_proved());
    Some(if proved { Level::Symbolic } else { Level::Sampled })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComposeOutcome {
    Identity {
        level: Level,
    },
    Pseudoreflection {
        /// First match in kind/sign order.
        primary: Pseudoreflection,
        /// Every matching pseudoreflection, `primary` included.
        equivalents: Vec<Pseudoreflection>,
        level: Level,
    },
    NotPseudoreflection {
        matrix: Mat2,
        map: PairMap,
    },
}

impl ComposeOutcome {
    pub fn pseudoreflection(&self) -> Option<Pseudoreflection> {
        match self {
            ComposeOutcome::Pseudoreflection { primary, .. } => Some(*primary),
            _ => None,
        }
    }
}

/// Decides whether `map`, whose matrix is `matrix`, is a pseudoreflection
/// (or the identity). Only candidates with the right matrix are tried.
pub fn classify_map(map: &PairMap, matrix: &Mat2, config: &LiftConfig) -> ComposeOutcome {
    let not = || ComposeOutcome::NotPseudoreflection {
        matrix: matrix.clone(),
        map: normalize_map(map),
    };
    match classify_elementary(matrix) {
        Classification::Identity => match maps_equal(map, &identity_map(), config) {
            Some(level) => ComposeOutcome::Identity { level },
            None => not(),
        },
        Classification::Elementary(cands) => {
            let mut equivalents = Vec::new();
            let mut best = None;
            for (kind, a) in cands {
                let Ok(a) = i64::try_from(&a) else { continue };
                for sign in [Sign::Plus, Sign::Minus] {
                    let p = Pseudoreflection::new(kind, sign, a);
                    if let Some(level) = maps_equal(map, &p.terms(), config) {
                        equivalents.push(p);
                        best = match best {
                            Some(Level::Symbolic) => Some(Level::Symbolic),
                            _ if level == Level::Symbolic => Some(Level::Symbolic),
                            _ => Some(level),
                        };
                    }
                }
            }
            match (equivalents.first(), best) {
                (Some(&primary), Some(level)) => ComposeOutcome::Pseudoreflection {
                    primary,
                    equivalents,
                    level,
                },
                _ => not(),
            }
        }
    }
}

/// Classifies `q ∘ p` (apply `p` first).
pub fn compose_classify(q: &Pseudoreflection, p: &Pseudoreflection, config: &LiftConfig) -> ComposeOutcome {
    let map = compose_maps(&q.terms(), &p.terms());
    classify_map(&map, &q.matrix().mul(&p.matrix()), config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{Finite16, Octonion};
    use num_rational::BigRational;

    fn all_pseudoreflections(range: std::ops::RangeInclusive<i64>) -> Vec<Pseudoreflection> {
        let mut out = Vec::new();
        for kind in ElementaryKind::ALL {
            for sign in [Sign::Plus, Sign::Minus] {
                for a in range.clone() {
                    out.push(Pseudoreflection::new(kind, sign, a));
                }
            }
        }
        out
    }

    #[test]
    fn a_zero_has_one_lift() {
        let p = Pseudoreflection::a(Sign::Plus, 0);
        assert_eq!(normalize_map(&p.terms()), [Term::inv(y()), x()]);
        assert_eq!(normalize_map(&p.terms()), normalize_map(&Pseudoreflection::a(Sign::Minus, 0).terms()));
    }

    #[test]
    fn b_plus_formula() {
        let p = Pseudoreflection::new(ElementaryKind::B, Sign::Plus, -2);
        assert_eq!(p.terms()[0].to_string(), "inv(x)");
        assert_eq!(p.terms()[1].to_string(), "mul(pow(x,-2),inv(y))");
    }

    #[test]
    fn inverse_rules() {
        assert_eq!(
            Pseudoreflection::a(Sign::Plus, 2).inverse(),
            Pseudoreflection::new(ElementaryKind::APrime, Sign::Minus, 2)
        );
        assert_eq!(
            Pseudoreflection::new(ElementaryKind::B, Sign::Minus, 3).inverse(),
            Pseudoreflection::new(ElementaryKind::B, Sign::Plus, -3)
        );
        for p in all_pseudoreflections(-5..=5) {
            assert_eq!(p.inverse().inverse(), p);
            assert!(p.matrix().mul(&p.inverse().matrix()).is_identity());
        }
    }

    #[test]
    fn inverse_round_trip_on_octonions() {
        let model = OctonionModel::default();
        let pts = random_points(100, 9);
        for p in all_pseudoreflections(-3..=3) {
            let inv = p.inverse();
            for pt in &pts {
                let there = p.apply(pt, &model).unwrap();
                assert_eq!(&inv.apply(&there, &model).unwrap(), pt, "{p}");
            }
        }
    }

    #[test]
    fn commutative_model_gives_monomial_action() {
        let model = OctonionModel::scalars(4);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pow = |q: &BigRational, e: &num_bigint::BigInt| {
            let e = i32::try_from(e).unwrap();
            num_traits::pow::Pow::pow(q, e)
        };
        for p in all_pseudoreflections(-3..=3) {
            let m = p.matrix();
            for _ in 0..10 {
                let (u, v) = (model.random_element(&mut rng), model.random_element(&mut rng));
                let (s, t) = (u.coords()[0].clone(), v.coords()[0].clone());
                let want = [
                    pow(&s, &m.m00) * pow(&t, &m.m01),
                    pow(&s, &m.m10) * pow(&t, &m.m11),
                ];
                let got = p.apply(&[AffineValue::Loop(u), AffineValue::Loop(v)], &model).unwrap();
                for k in 0..2 {
                    assert_eq!(got[k], AffineValue::Loop(Octonion::scalar(want[k].clone())), "{p}");
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        let m = Finite16::new();
        let e1 = AffineValue::Loop(crate::loops::SignedBasis::basis(1));
        let a = Pseudoreflection::a(Sign::Plus, 2);
        assert!(a.apply(&[e1.clone(), AffineValue::Zero], &m).is_err());
        assert_eq!(
            a.apply(&[AffineValue::Zero, e1.clone()], &m).unwrap()[1],
            AffineValue::Zero
        );
        let b = Pseudoreflection::new(ElementaryKind::B, Sign::Minus, 1);
        assert!(b.apply(&[AffineValue::Zero, e1], &m).is_err());
    }

    #[test]
    fn hirzebruch_composite() {
        let cfg = LiftConfig::default();
        for a in -3..=3 {
            let out = compose_classify(&Pseudoreflection::a(Sign::Minus, -a), &Pseudoreflection::a(Sign::Plus, 0), &cfg);
            let expected = Pseudoreflection::new(ElementaryKind::B, Sign::Plus, -a);
            match out {
                ComposeOutcome::Pseudoreflection { equivalents, .. } => assert!(equivalents.contains(&expected), "a={a}"),
                other => panic!("a={a}: {other:?}"),
            }
        }
    }

    #[test]
    fn square_of_a_zero() {
        let a0 = Pseudoreflection::a(Sign::Plus, 0);
        match compose_classify(&a0, &a0, &LiftConfig::default()) {
            ComposeOutcome::Pseudoreflection { primary, equivalents, level } => {
                assert_eq!(primary, Pseudoreflection::new(ElementaryKind::B, Sign::Plus, 0));
                assert_eq!(equivalents.len(), 4);
                assert_eq!(level, Level::Symbolic);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverse_composite_is_identity() {
        let p = Pseudoreflection::new(ElementaryKind::BPrime, Sign::Plus, 2);
        assert_eq!(
            compose_classify(&p.inverse(), &p, &LiftConfig::default()),
            ComposeOutcome::Identity { level: Level::Symbolic }
        );
    }

    #[test]
    fn composites_respect_matrices() {
        let cfg = LiftConfig { samples: 16, search_budget: 0, seed: 4 };
        let ps = all_pseudoreflections(-1..=1);
        for q in &ps {
            for p in ps.iter().step_by(5) {
                if let ComposeOutcome::Pseudoreflection { equivalents, .. } = compose_classify(q, p, &cfg) {
                    for e in equivalents {
                        assert_eq!(e.matrix(), q.matrix().mul(&p.matrix()));
                    }
                }
            }
        }
    }

    #[test]
    fn some_composites_are_not_pseudoreflections() {
        // A(1)·A(1) = -A'(1) is not elementary
        let a1 = Pseudoreflection::a(Sign::Plus, 1);
        assert!(matches!(
            compose_classify(&a1, &a1, &LiftConfig::default()),
            ComposeOutcome::NotPseudoreflection { .. }
        ));
    }
}
