//! Elementary `SL2(Z)` matrices, Fulton cycles and the partial-product
//! (triangular) check.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A 2×2 integer matrix `[[m00, m01], [m10, m11]]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub m00: BigInt,
    pub m01: BigInt,
    pub m10: BigInt,
    pub m11: BigInt,
}

impl Mat2 {
    pub fn new(m00: i64, m01: i64, m10: i64, m11: i64) -> Self {
        Mat2 {
            m00: m00.into(),
            m01: m01.into(),
            m10: m10.into(),
            m11: m11.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.m00.is_one() && self.m01.is_zero() && self.m10.is_zero() && self.m11.is_one()
    }

    pub fn det(&self) -> BigInt {
        &self.m00 * &self.m11 - &self.m01 * &self.m10
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            m00: &self.m00 * &o.m00 + &self.m01 * &o.m10,
            m01: &self.m00 * &o.m01 + &self.m01 * &o.m11,
            m10: &self.m10 * &o.m00 + &self.m11 * &o.m10,
            m11: &self.m10 * &o.m01 + &self.m11 * &o.m11,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Mat2 {
        Mat2 {
            m00: self.m11.clone(),
            m01: -&self.m01,
            m10: -&self.m10,
            m11: self.m00.clone(),
        }
    }

    fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.m00, &self.m01], [&self.m10, &self.m11]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.m00, self.m01, self.m10, self.m11)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entry = |b: &BigInt| -> serde_json::Value {
            match i64::try_from(b) {
                Ok(v) => v.into(),
                Err(_) => b.to_string().into(),
            }
        };
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|b| entry(b)).collect())
            .collect();
        rows.serialize(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, serde::Deserialize)]
pub enum ElementaryKind {
    A,
    #[serde(rename = "A'")]
    APrime,
    B,
    #[serde(rename = "B'")]
    BPrime,
}

impl ElementaryKind {
    pub const ALL: [ElementaryKind; 4] = [
        ElementaryKind::A,
        ElementaryKind::APrime,
        ElementaryKind::B,
        ElementaryKind::BPrime,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(ElementaryKind::A),
            "A'" => Ok(ElementaryKind::APrime),
            "B" => Ok(ElementaryKind::B),
            "B'" => Ok(ElementaryKind::BPrime),
            _ => Err(Error::Parse(format!("unknown elementary kind `{s}`"))),
        }
    }
}

impl fmt::Display for ElementaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementaryKind::A => "A",
            ElementaryKind::APrime => "A'",
            ElementaryKind::B => "B",
            ElementaryKind::BPrime => "B'",
        })
    }
}

/// `A(a) = [[0,-1],[1,a]]`, `A'(a) = [[a,1],[-1,0]]`,
/// `B(a) = [[-1,0],[a,-1]]`, `B'(a) = [[-1,a],[0,-1]]`.
pub fn elem_matrix(kind: ElementaryKind, a: i64) -> Mat2 {
    match kind {
        ElementaryKind::A => Mat2::new(0, -1, 1, a),
        ElementaryKind::APrime => Mat2::new(a, 1, -1, 0),
        ElementaryKind::B => Mat2::new(-1, 0, a, -1),
        ElementaryKind::BPrime => Mat2::new(-1, a, 0, -1),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    Identity,
    /// Every matching template; empty when the matrix is not elementary.
    Elementary(Vec<(ElementaryKind, BigInt)>),
}

impl Classification {
    pub fn is_elementary(&self) -> bool {
        matches!(self, Classification::Elementary(v) if !v.is_empty())
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Identity => f.write_str("identity"),
            Classification::Elementary(v) if v.is_empty() => f.write_str("none"),
            Classification::Elementary(v) => {
                let parts: Vec<String> = v.iter().map(|(k, a)| format!("{k}({a})")).collect();
                f.write_str(&parts.join("|"))
            }
        }
    }
}

pub fn classify_elementary(m: &Mat2) -> Classification {
    if m.is_identity() {
        return Classification::Identity;
    }
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    let mut out = Vec::new();
    if m.m00.is_zero() && m.m01 == minus_one && m.m10 == one {
        out.push((ElementaryKind::A, m.m11.clone()));
    }
    if m.m11.is_zero() && m.m01 == one && m.m10 == minus_one {
        out.push((ElementaryKind::APrime, m.m00.clone()));
    }
    if m.m00 == minus_one && m.m11 == minus_one && m.m01.is_zero() {
        out.push((ElementaryKind::B, m.m10.clone()));
    }
    if m.m00 == minus_one && m.m11 == minus_one && m.m10.is_zero() {
        out.push((ElementaryKind::BPrime, m.m01.clone()));
    }
    Classification::Elementary(out)
}

fn a_matrix(a: i64) -> Mat2 {
    elem_matrix(ElementaryKind::A, a)
}

/// `A(a_0)·A(a_1)·…·A(a_{n-1})`, left to right.
pub fn cycle_product(a: &[i64]) -> Mat2 {
    a.iter().fold(Mat2::identity(), |acc, &x| acc.mul(&a_matrix(x)))
}

pub fn is_fulton_cycle(a: &[i64]) -> Result<bool> {
    if a.len() < 3 {
        return Err(Error::Length(a.len()));
    }
    Ok(cycle_product(a).is_identity())
}

/// A cyclic integer sequence whose product of `A`-matrices is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FultonCycle {
    a: Vec<i64>,
}

impl FultonCycle {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if is_fulton_cycle(&a)? {
            Ok(FultonCycle { a })
        } else {
            Err(Error::NotFultonCycle(format_cycle(&a)))
        }
    }

    /// Parses the comma-separated text form, e.g. `-1,-1,-1`.
    pub fn parse(text: &str) -> Result<Self> {
        FultonCycle::new(parse_sequence(text)?)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    pub fn rotate(&self, by: usize) -> FultonCycle {
        let mut a = self.a.clone();
        let n = a.len();
        a.rotate_left(by % n);
        FultonCycle { a }
    }
}

impl fmt::Display for FultonCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cycle(&self.a))
    }
}

pub fn format_cycle(a: &[i64]) -> String {
    a.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_sequence(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad cycle entry `{}`", p.trim())))
        })
        .collect()
}

/// All sequences of length `n` with entries in `-bound..=bound` whose product
/// is the identity, in lexicographic order.
pub fn enumerate_cycles(n: usize, bound: i64) -> Vec<FultonCycle> {
    assert!(n >= 3, "cycles have length at least 3");
    let firsts: Vec<i64> = (-bound..=bound).collect();
    firsts
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut prefix = vec![first];
            extend_prefix(n, bound, &mut prefix, &a_matrix(first), &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn extend_prefix(n: usize, bound: i64, prefix: &mut Vec<i64>, product: &Mat2, out: &mut Vec<FultonCycle>) {
    if prefix.len() == n - 1 {
        // the last factor is forced: A(a_{n-1}) = product⁻¹
        if let Classification::Elementary(v) = classify_elementary(&product.inverse_sl2()) {
            for (kind, a) in v {
                if kind != ElementaryKind::A {
                    continue;
                }
                if let Ok(a) = i64::try_from(&a) {
                    if a.abs() <= bound {
                        let mut seq = prefix.clone();
                        seq.push(a);
                        out.push(FultonCycle { a: seq });
                    }
                }
            }
        }
        return;
    }
    for x in -bound..=bound {
        prefix.push(x);
        extend_prefix(n, bound, prefix, &product.mul(&a_matrix(x)), out);
        prefix.pop();
    }
}

/// Inserts `1` after position `i` (cyclically) and increments both neighbours.
pub fn blow_up(c: &FultonCycle, i: usize) -> FultonCycle {
    let n = c.a.len();
    let i = i % n;
    let mut a = c.a.clone();
    a[i] += 1;
    a[(i + 1) % n] += 1;
    a.insert(i + 1, 1);
    debug_assert!(cycle_product(&a).is_identity());
    FultonCycle { a }
}

/// Every cycle reachable from `start` by repeated blow-ups, up to length
/// `max_len`, including `start`; sorted by length then lexicographically.
pub fn blowup_descendants(start: &FultonCycle, max_len: usize) -> Vec<FultonCycle> {
    let mut seen: BTreeSet<FultonCycle> = BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            if c.len() >= max_len {
                continue;
            }
            for i in 0..c.len() {
                let b = blow_up(c, i);
                if seen.insert(b.clone()) {
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<FultonCycle> = seen.into_iter().collect();
    all.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    all
}

/// `A_ij = A(a_{j-1})·A(a_{j-2})·…·A(a_i)` along the clockwise arc from `i`
/// to `j`; `A_ii = I`.
pub fn partial_product(c: &FultonCycle, i: usize, j: usize) -> Mat2 {
    let n = c.a.len();
    let (mut k, j) = (i % n, j % n);
    let mut m = Mat2::identity();
    while k != j {
        m = a_matrix(c.a[k]).mul(&m);
        k = (k + 1) % n;
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcRecord {
    pub cycle: String,
    pub i: usize,
    pub j: usize,
    pub matrix: Mat2,
    pub classification: String,
    #[serde(skip)]
    pub elementary: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangularReport {
    pub cycle: String,
    pub arcs: Vec<ArcRecord>,
}

impl TriangularReport {
    pub fn holds(&self) -> bool {
        self.arcs.iter().all(|r| r.elementary)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &ArcRecord> {
        self.arcs.iter().filter(|r| !r.elementary)
    }
}

/// Classifies all `n(n-1)` proper partial products.
pub fn check_triangular(c: &FultonCycle) -> TriangularReport {
    let n = c.len();
    let cycle = c.to_string();
    let mut arcs = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let matrix = partial_product(c, i, j);
            let class = classify_elementary(&matrix);
            arcs.push(ArcRecord {
                cycle: cycle.clone(),
                i,
                j,
                elementary: class.is_elementary(),
                classification: class.to_string(),
                matrix,
            });
        }
    }
    TriangularReport { cycle, arcs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(a: i64) -> BigInt {
        BigInt::from(a)
    }

    /// Independent brute force over every sequence.
    fn brute_force(n: usize, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let width = (2 * bound + 1) as usize;
        for code in 0..width.pow(n as u32) {
            let mut c = code;
            let seq: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (c % width) as i64 - bound;
                    c /= width;
                    d
                })
                .rev()
                .collect();
            let mut m = [[1i64, 0], [0, 1]];
            for &a in &seq {
                m = [
                    [m[0][1], -m[0][0] + a * m[0][1]],
                    [m[1][1], -m[1][0] + a * m[1][1]],
                ];
            }
            if m == [[1, 0], [0, 1]] {
                out.push(seq);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn templates() {
        assert_eq!(elem_matrix(ElementaryKind::A, 0), Mat2::new(0, -1, 1, 0));
        assert_eq!(elem_matrix(ElementaryKind::B, 3), Mat2::new(-1, 0, 3, -1));
        for a in -100..=100 {
            for k in ElementaryKind::ALL {
                assert_eq!(elem_matrix(k, a).det(), big(1));
            }
            let a_mat = elem_matrix(ElementaryKind::A, a);
            assert!(a_mat.mul(&elem_matrix(ElementaryKind::APrime, a)).is_identity());
            assert!(elem_matrix(ElementaryKind::B, a).mul(&elem_matrix(ElementaryKind::B, -a)).is_identity());
            assert!(elem_matrix(ElementaryKind::BPrime, a).mul(&elem_matrix(ElementaryKind::BPrime, -a)).is_identity());
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_elementary(&Mat2::new(0, -1, 1, 5)),
            Classification::Elementary(vec![(ElementaryKind::A, big(5))])
        );
        assert_eq!(
            classify_elementary(&Mat2::new(-1, 0, 0, -1)),
            Classification::Elementary(vec![(ElementaryKind::B, big(0)), (ElementaryKind::BPrime, big(0))])
        );
        assert_eq!(classify_elementary(&Mat2::identity()), Classification::Identity);
        assert!(!classify_elementary(&Mat2::new(2, 1, 1, 1)).is_elementary());
    }

    #[test]
    fn fulton_examples() {
        assert!(is_fulton_cycle(&[-1, -1, -1]).unwrap());
        assert!(!is_fulton_cycle(&[0, 0, 0]).unwrap());
        assert_eq!(cycle_product(&[0, 0, 0]), Mat2::new(0, 1, -1, 0));
        for a in -10..=10 {
            assert!(is_fulton_cycle(&[a, 0, -a, 0]).unwrap());
        }
        assert_eq!(is_fulton_cycle(&[1, 2]), Err(Error::Length(2)));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (n, bound) in [(3, 3), (4, 2), (5, 1), (3, 0)] {
            let fast: Vec<Vec<i64>> = enumerate_cycles(n, bound).into_iter().map(|c| c.a).collect();
            assert_eq!(fast, brute_force(n, bound), "n={n} bound={bound}");
        }
        assert_eq!(brute_force(3, 3), vec![vec![-1, -1, -1]]);
        let four = brute_force(4, 2);
        assert!(four.contains(&vec![0, 1, 0, -1]));
        for a in -2..=2 {
            assert!(four.contains(&vec![a, 0, -a, 0]));
        }
        assert!(enumerate_cycles(3, 0).is_empty());
    }

    #[test]
    fn blow_up_of_projective_plane() {
        let p2 = FultonCycle::parse("-1,-1,-1").unwrap();
        assert_eq!(blow_up(&p2, 0).entries(), &[0, 1, 0, -1]);
        assert_eq!(blow_up(&p2, 2).entries(), &[0, -1, 0, 1]);
    }

    #[test]
    fn blow_ups_commute_up_to_relabeling() {
        for c in enumerate_cycles(4, 2).into_iter().chain(enumerate_cycles(5, 1)) {
            let n = c.len();
            for i in 0..n {
                for j in (i + 2)..n {
                    if (j + 1) % n == i {
                        continue;
                    }
                    // blowing up at i shifts later positions by one
                    let a = blow_up(&blow_up(&c, i), j + 1);
                    let b = blow_up(&blow_up(&c, j), i);
                    assert_eq!(a, b, "cycle {c}, positions {i} {j}");
                }
            }
        }
    }

    #[test]
    fn partial_products() {
        let h = FultonCycle::new(vec![2, 0, -2, 0]).unwrap();
        assert_eq!(partial_product(&h, 1, 2), a_matrix(0));
        assert_eq!(partial_product(&h, 0, 2), a_matrix(0).mul(&a_matrix(2)));
        assert!(partial_product(&h, 3, 3).is_identity());
        let n = h.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // j on the clockwise arc from i to k
                    let on_arc = (j + n - i) % n <= (k + n - i) % n;
                    if on_arc {
                        assert_eq!(
                            partial_product(&h, i, k),
                            partial_product(&h, j, k).mul(&partial_product(&h, i, j))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn full_turn_is_identity() {
        for c in enumerate_cycles(5, 2) {
            // the full turn from i back to i, as the product of all n factors
            for i in 0..c.len() {
                let m = partial_product(&c, (i + 1) % c.len(), i).mul(&partial_product(&c, i, i + 1));
                assert!(m.is_identity());
            }
        }
    }

    #[test]
    fn triangular_small_cases() {
        let r = check_triangular(&FultonCycle::parse("-1,-1,-1").unwrap());
        assert_eq!(r.arcs.len(), 6);
        assert!(r.holds());
        for a in -10..=10 {
            let r = check_triangular(&FultonCycle::new(vec![a, 0, -a, 0]).unwrap());
            assert_eq!(r.arcs.len(), 12);
            assert!(r.holds(), "a={a}");
        }
    }

    #[test]
    fn triangular_fails_on_a_blown_up_surface() {
        // two blow-ups of P²: A_02 = A(1)A(1) = -A'(1) is not elementary
        let c = blow_up(&FultonCycle::parse("0,1,0,-1").unwrap(), 0);
        assert_eq!(c.entries(), &[1, 1, 2, 0, -1]);
        let r = check_triangular(&c);
        assert!(!r.holds());
        let first = r.counterexamples().next().unwrap();
        assert_eq!((first.i, first.j), (0, 2));
        assert_eq!(first.matrix, Mat2::new(-1, -1, 1, 0));
    }

    proptest! {
        #[test]
        fn rotation_invariance(seq in prop::collection::vec(-3i64..=3, 3..7), r in 0usize..7) {
            let mut rotated = seq.clone();
            rotated.rotate_left(r % seq.len());
            prop_assert_eq!(is_fulton_cycle(&seq).unwrap(), is_fulton_cycle(&rotated).unwrap());
        }

        #[test]
        fn blow_up_stays_fulton(idx in 0usize..40, pos in 0usize..8) {
            let cycles = enumerate_cycles(4, 2).into_iter().chain(enumerate_cycles(5, 1)).collect::<Vec<_>>();
            let c = &cycles[idx % cycles.len()];
            let b = blow_up(c, pos);
            prop_assert!(is_fulton_cycle(b.entries()).unwrap());
            prop_assert_eq!(b.len(), c.len() + 1);
        }
    }
}
