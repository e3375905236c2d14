//! Identity checkers for loop models. Failures are reported as data with a
//! concrete counterexample; all arithmetic is exact.

use std::collections::HashSet;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{LoopModel, Octonion, OctonionModel};

/// Which inputs a check runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Samples {
    /// Every tuple of a finite model. Infinite models fall back to
    /// `Random { count: 500, seed: 0 }`.
    Exhaustive,
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
    /// Reported but not counted towards `CheckReport::passed`.
    pub informational: bool,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub model: String,
    pub checks: Vec<IdentityCheck>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.informational)
            .all(IdentityCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn tuples<M: LoopModel>(model: &M, samples: Samples, arity: usize) -> Vec<Vec<M::Elem>> {
    match (samples, model.elements()) {
        (Samples::Exhaustive, Some(all)) => {
            let mut out: Vec<Vec<M::Elem>> = vec![vec![]];
            for _ in 0..arity {
                out = out
                    .into_iter()
                    .flat_map(|t| {
                        all.iter().map(move |e| {
                            let mut t = t.clone();
                            t.push(e.clone());
                            t
                        })
                    })
                    .collect();
            }
            out
        }
        (Samples::Exhaustive, None) => tuples(model, Samples::Random { count: 500, seed: 0 }, arity),
        (Samples::Random { count, seed }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| (0..arity).map(|_| model.random_element(&mut rng)).collect())
                .collect()
        }
    }
}

fn run_identity<M, F>(
    model: &M,
    name: &str,
    vars: &[&str],
    inputs: &[Vec<M::Elem>],
    identity: F,
) -> IdentityCheck
where
    M: LoopModel,
    F: Fn(&[M::Elem]) -> (M::Elem, M::Elem) + Sync,
{
    let _ = model;
    let results: Vec<Option<String>> = inputs
        .par_iter()
        .map(|t| {
            let (lhs, rhs) = identity(t);
            if lhs == rhs {
                None
            } else {
                let binding: Vec<String> = vars
                    .iter()
                    .zip(t)
                    .map(|(v, e)| format!("{v}={e}"))
                    .collect();
                Some(format!("{}: lhs={lhs}, rhs={rhs}", binding.join(", ")))
            }
        })
        .collect();
    let failures = results.iter().filter(|r| r.is_some()).count();
    IdentityCheck {
        name: name.to_string(),
        cases: inputs.len(),
        failures,
        counterexample: results.into_iter().flatten().next(),
        informational: false,
    }
}

/// Unit laws, two-sided inverses, `(x⁻¹)⁻¹ = x`, both cancellation laws,
/// the anti-automorphism law `(xy)⁻¹ = y⁻¹x⁻¹`, and flexibility `(yx)y = y(xy)`.
pub fn check_inversion_axioms<M: LoopModel>(model: &M, samples: Samples) -> CheckReport {
    let singles = tuples(model, samples, 1);
    let pairs = tuples(model, shift(samples, 1), 2);
    let one = model.one();
    let m = |a: &M::Elem, b: &M::Elem| model.mul(a, b);
    let i = |a: &M::Elem| model.inv(a);

    let checks = vec![
        run_identity(model, "x·1 = x", &["x"], &singles, |t| (m(&t[0], &one), t[0].clone())),
        run_identity(model, "1·x = x", &["x"], &singles, |t| (m(&one, &t[0]), t[0].clone())),
        run_identity(model, "x⁻¹·x = 1", &["x"], &singles, |t| (m(&i(&t[0]), &t[0]), one.clone())),
        run_identity(model, "x·x⁻¹ = 1", &["x"], &singles, |t| (m(&t[0], &i(&t[0])), one.clone())),
        run_identity(model, "(x⁻¹)⁻¹ = x", &["x"], &singles, |t| (i(&i(&t[0])), t[0].clone())),
        run_identity(model, "x⁻¹(xy) = y", &["x", "y"], &pairs, |t| {
            (m(&i(&t[0]), &m(&t[0], &t[1])), t[1].clone())
        }),
        run_identity(model, "(yx)x⁻¹ = y", &["x", "y"], &pairs, |t| {
            (m(&m(&t[1], &t[0]), &i(&t[0])), t[1].clone())
        }),
        run_identity(model, "(xy)⁻¹ = y⁻¹x⁻¹", &["x", "y"], &pairs, |t| {
            (i(&m(&t[0], &t[1])), m(&i(&t[1]), &i(&t[0])))
        }),
        run_identity(model, "(yx)y = y(xy)", &["x", "y"], &pairs, |t| {
            (m(&m(&t[1], &t[0]), &t[1]), m(&t[1], &m(&t[0], &t[1])))
        }),
    ];
    CheckReport {
        model: model.name().to_string(),
        checks,
    }
}

fn shift(samples: Samples, by: u64) -> Samples {
    match samples {
        Samples::Random { count, seed } => Samples::Random {
            count,
            seed: seed.wrapping_add(by),
        },
        s => s,
    }
}

/// Moufang identities over triples `(x, y, z)`.
///
/// Two of the three identities are checked twice. `z(xy)z = zx·zy` and the
/// unbalanced `(xy)z = z⁻¹(zyz)` are reported as informational; the
/// balanced forms `z(xy)z = zx·yz` and `(xy)z = (xz⁻¹)(zyz)` decide the verdict.
pub fn check_moufang<M: LoopModel>(model: &M, samples: Samples) -> CheckReport {
    let triples = tuples(model, shift(samples, 2), 3);
    let m = |a: &M::Elem, b: &M::Elem| model.mul(a, b);
    let i = |a: &M::Elem| model.inv(a);
    let sandwich = |z: &M::Elem, x: &M::Elem| m(&m(z, x), z);

    let mut variant_c = run_identity(model, "(xy)z = z⁻¹(zyz) [non-law variant]", &["x", "y", "z"], &triples, |t| {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        (m(&m(x, y), z), m(&i(z), &sandwich(z, y)))
    });
    variant_c.informational = true;

    let mut variant_a = run_identity(model, "z(xy)z = zx·zy [non-law variant]", &["x", "y", "z"], &triples, |t| {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        (sandwich(z, &m(x, y)), m(&m(z, x), &m(z, y)))
    });
    variant_a.informational = true;

    let checks = vec![
        variant_a,
        run_identity(model, "z(xy)z = zx·yz", &["x", "y", "z"], &triples, |t| {
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            (sandwich(z, &m(x, y)), m(&m(z, x), &m(y, z)))
        }),
        run_identity(model, "z(xy) = (zxz)(z⁻¹y)", &["x", "y", "z"], &triples, |t| {
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            (m(z, &m(x, y)), m(&sandwich(z, x), &m(&i(z), y)))
        }),
        variant_c,
        run_identity(model, "(xy)z = (xz⁻¹)(zyz)", &["x", "y", "z"], &triples, |t| {
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            (m(&m(x, y), z), m(&m(x, &i(z)), &sandwich(z, y)))
        }),
    ];
    CheckReport {
        model: model.name().to_string(),
        checks,
    }
}

/// Distinct values of left-nested words of length `1..=depth` in `x, y, x⁻¹, y⁻¹`.
fn word_values<M: LoopModel>(model: &M, x: &M::Elem, y: &M::Elem, depth: usize) -> Vec<M::Elem> {
    let gens = [x.clone(), y.clone(), model.inv(x), model.inv(y)];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut layer: Vec<M::Elem> = vec![model.one()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for g in &gens {
                let v = model.mul(w, g);
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

/// For sampled pairs `(x, y)`, every triple `(u, v, w)` of words of length at
/// most `depth` in `x, y` and their inverses must satisfy `(uv)w = u(vw)`.
pub fn check_diassociativity<M: LoopModel>(model: &M, samples: Samples, depth: usize) -> CheckReport {
    assert!(depth >= 1, "depth must be at least 1");
    let pairs = tuples(model, shift(samples, 3), 2);
    let mut cases = 0;
    let mut failures = 0;
    let mut counterexample = None;
    for pair in &pairs {
        let words = word_values(model, &pair[0], &pair[1], depth);
        let products: Vec<Vec<M::Elem>> = words
            .iter()
            .map(|u| words.iter().map(|v| model.mul(u, v)).collect())
            .collect();
        let bad: Vec<(usize, usize, usize)> = (0..words.len())
            .into_par_iter()
            .flat_map_iter(|a| {
                let words = &words;
                let products = &products;
                (0..words.len()).flat_map(move |b| {
                    (0..words.len()).filter_map(move |c| {
                        let left = model.mul(&products[a][b], &words[c]);
                        let right = model.mul(&words[a], &products[b][c]);
                        (left != right).then_some((a, b, c))
                    })
                })
            })
            .collect();
        cases += words.len().pow(3);
        failures += bad.len();
        if counterexample.is_none() {
            if let Some(&(a, b, c)) = bad.first() {
                counterexample = Some(format!(
                    "x={}, y={}: u={}, v={}, w={}",
                    pair[0], pair[1], words[a], words[b], words[c]
                ));
            }
        }
    }
    CheckReport {
        model: model.name().to_string(),
        checks: vec![IdentityCheck {
            name: format!("(uv)w = u(vw), words of length ≤ {depth}"),
            cases,
            failures,
            counterexample,
            informational: false,
        }],
    }
}

/// Integer octonion used for fast associator tests. Associativity of a
/// triple is unchanged by nonzero rational rescaling, so words may use the
/// conjugate in place of the inverse and denominators may be cleared.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct IntOct([i128; 8]);

fn qmul(a: &[i128], b: &[i128]) -> Option<[i128; 4]> {
    let t = |x: i128, y: i128| x.checked_mul(y);
    let s4 = |v: [Option<i128>; 4]| -> Option<i128> {
        v[0]?.checked_add(v[1]?)?.checked_add(v[2]?)?.checked_add(v[3]?)
    };
    let neg = |x: Option<i128>| x.and_then(i128::checked_neg);
    Some([
        s4([t(a[0], b[0]), neg(t(a[1], b[1])), neg(t(a[2], b[2])), neg(t(a[3], b[3]))])?,
        s4([t(a[0], b[1]), t(a[1], b[0]), t(a[2], b[3]), neg(t(a[3], b[2]))])?,
        s4([t(a[0], b[2]), neg(t(a[1], b[3])), t(a[2], b[0]), t(a[3], b[1])])?,
        s4([t(a[0], b[3]), t(a[1], b[2]), neg(t(a[2], b[1])), t(a[3], b[0])])?,
    ])
}

impl IntOct {
    fn from_octonion(o: &Octonion) -> Option<IntOct> {
        let lcm = o
            .coords()
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let mut out = [0i128; 8];
        for (slot, c) in out.iter_mut().zip(o.coords()) {
            let v = c.numer() * (&lcm / c.denom());
            *slot = i128::try_from(v).ok()?;
        }
        Some(IntOct(out))
    }

    fn to_octonion(self) -> Octonion {
        Octonion::new(self.0.map(|c| num_rational::BigRational::from_integer(c.into())))
    }

    fn conj(self) -> IntOct {
        let mut c = self.0;
        for v in c.iter_mut().skip(1) {
            *v = -*v;
        }
        IntOct(c)
    }

    fn mul(&self, other: &IntOct) -> Option<IntOct> {
        let (p, q) = self.0.split_at(4);
        let (r, s) = other.0.split_at(4);
        let s_bar = [s[0], -s[1], -s[2], -s[3]];
        let r_bar = [r[0], -r[1], -r[2], -r[3]];
        let pr = qmul(p, r)?;
        let sq = qmul(&s_bar, q)?;
        let sp = qmul(s, p)?;
        let qr = qmul(q, &r_bar)?;
        let mut out = [0i128; 8];
        for k in 0..4 {
            out[k] = pr[k].checked_sub(sq[k])?;
            out[k + 4] = sp[k].checked_add(qr[k])?;
        }
        Some(IntOct(out))
    }

    /// Primitive representative of the rational line through `self`.
    fn projective(self) -> IntOct {
        let g = self.0.iter().fold(0i128, |g, c| g.gcd(c));
        if g == 0 {
            return self;
        }
        let sign = self.0.iter().find(|c| **c != 0).map_or(1, |c| c.signum());
        IntOct(self.0.map(|c| c / g * sign))
    }
}

fn int_word_values(x: IntOct, y: IntOct, depth: usize) -> Vec<IntOct> {
    let gens = [x, y, x.conj(), y.conj()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut layer = vec![IntOct::from_octonion(&Octonion::one()).unwrap()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for g in &gens {
                let v = w.mul(g).expect("short words fit in i128").projective();
                if seen.insert(v) {
                    out.push(v);
                }
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

fn associates_exact(u: IntOct, v: IntOct, w: IntOct) -> bool {
    let (u, v, w) = (u.to_octonion(), v.to_octonion(), w.to_octonion());
    u.mul(&v).mul(&w) == u.mul(&v.mul(&w))
}

/// Octonion specialisation of [`check_diassociativity`] on `pairs` random
/// pairs. Words are evaluated in scaled integer form; any overflow falls back
/// to rational arithmetic for that triple.
pub fn check_diassociativity_octonion(
    model: &OctonionModel,
    pairs: usize,
    seed: u64,
    depth: usize,
) -> CheckReport {
    assert!(depth >= 1, "depth must be at least 1");
    let sampled = tuples(model, Samples::Random { count: pairs, seed }, 2);
    let mut cases = 0;
    let mut failures = 0;
    let mut counterexample = None;
    for pair in &sampled {
        let x = IntOct::from_octonion(&pair[0]).expect("sampled coordinates fit in i128");
        let y = IntOct::from_octonion(&pair[1]).expect("sampled coordinates fit in i128");
        let words = int_word_values(x, y, depth);
        let n = words.len();
        let products: Vec<Vec<Option<IntOct>>> = words
            .iter()
            .map(|u| words.iter().map(|v| u.mul(v)).collect())
            .collect();
        let bad: Vec<(usize, usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let words = &words;
                let products = &products;
                (0..n).flat_map(move |b| {
                    (0..n).filter_map(move |c| {
                        let fast = products[a][b]
                            .and_then(|uv| uv.mul(&words[c]))
                            .zip(products[b][c].and_then(|vw| words[a].mul(&vw)));
                        let ok = match fast {
                            Some((l, r)) => l == r,
                            None => associates_exact(words[a], words[b], words[c]),
                        };
                        (!ok).then_some((a, b, c))
                    })
                })
            })
            .collect();
        cases += n * n * n;
        failures += bad.len();
        if counterexample.is_none() {
            if let Some(&(a, b, c)) = bad.first() {
                counterexample = Some(format!(
                    "x={}, y={}: u∝{}, v∝{}, w∝{}",
                    pair[0],
                    pair[1],
                    words[a].to_octonion(),
                    words[b].to_octonion(),
                    words[c].to_octonion()
                ));
            }
        }
    }
    CheckReport {
        model: model.name().to_string(),
        checks: vec![IdentityCheck {
            name: format!("(uv)w = u(vw), words of length ≤ {depth}"),
            cases,
            failures,
            counterexample,
            informational: false,
        }],
    }
}

/// First sampled triple of independent elements with `(xy)z ≠ x(yz)`.
pub fn find_nonassociative_triple<M: LoopModel>(
    model: &M,
    samples: Samples,
) -> Option<(M::Elem, M::Elem, M::Elem)> {
    tuples(model, shift(samples, 4), 3).into_iter().find_map(|t| {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        let l = model.mul(&model.mul(x, y), z);
        let r = model.mul(x, &model.mul(y, z));
        (l != r).then(|| (x.clone(), y.clone(), z.clone()))
    })
}
