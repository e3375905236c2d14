//! Oriented rewriting to normal form.
//!
//! Rules (`t̄` is the formal inverse of `t`):
//!
//! | name        | rule                                   |
//! |-------------|----------------------------------------|
//! | `unit-l`    | `1·t → t`                              |
//! | `unit-r`    | `t·1 → t`                              |
//! | `inv-one`   | `inv(1) → 1`                           |
//! | `inv-inv`   | `inv(inv(t)) → t`                      |
//! | `cancel`    | `t̄·t → 1`, `t·t̄ → 1`                   |
//! | `cancel-l`  | `t̄·(t·u) → u`, `t·(t̄·u) → u`           |
//! | `cancel-r`  | `(u·t)·t̄ → u`, `(u·t̄)·t → u`           |
//! | `anti`      | `inv(t·u) → inv(u)·inv(t)`             |
//! | `pow`       | `pow(t, a)` expanded left-nested       |
//!
//! Terms are rebuilt bottom-up with every constructor applying the rules at
//! the root, so the result is a fixed point and inversions sit on variables.

use super::Term;

/// `pow(t, 0) = 1`, `pow(t, a) = pow(t, a-1)·t`, `pow(t, -a) = inv(pow(t, a))`.
pub fn expand_pow(t: &Term, a: i64) -> Term {
    let mut acc: Option<Term> = None;
    for _ in 0..a.unsigned_abs() {
        acc = Some(match acc {
            None => t.clone(),
            Some(p) => Term::mul(p, t.clone()),
        });
    }
    let positive = acc.unwrap_or(Term::One);
    if a < 0 {
        Term::inv(positive)
    } else {
        positive
    }
}

/// Formal inverse of a normal form: mirror the product tree and toggle
/// inversion on the leaves.
pub fn inverse_of(t: &Term) -> Term {
    match t {
        Term::One => Term::One,
        Term::Var(_) => Term::inv(t.clone()),
        Term::Inv(s) if matches!(**s, Term::Var(_)) => (**s).clone(),
        Term::Mul(a, b) => Term::mul(inverse_of(b), inverse_of(a)),
        other => Term::inv(other.clone()),
    }
}

/// Termination measure: node count where an inversion weighs three times
/// its argument. Every rule strictly decreases it.
pub fn weight(t: &Term) -> u64 {
    match t {
        Term::One | Term::Var(_) => 1,
        Term::Inv(s) => 1 + 3 * weight(s),
        Term::Mul(a, b) => 1 + weight(a) + weight(b),
        Term::Pow(s, a) => 1 + weight(&expand_pow(s, *a)),
    }
}

struct Normalizer {
    trace: Option<Vec<String>>,
}

impl Normalizer {
    fn note(&mut self, rule: &str, result: &Term) {
        if let Some(tr) = self.trace.as_mut() {
            tr.push(format!("{rule} ⇒ {result}"));
        }
    }

    fn nf(&mut self, t: &Term) -> Term {
        match t {
            Term::One | Term::Var(_) => t.clone(),
            Term::Inv(s) => {
                let s = self.nf(s);
                self.mk_inv(s)
            }
            Term::Mul(a, b) => {
                let a = self.nf(a);
                let b = self.nf(b);
                self.mk_mul(a, b)
            }
            Term::Pow(s, a) => {
                let e = expand_pow(s, *a);
                self.note("pow", &e);
                self.nf(&e)
            }
        }
    }

    fn mk_inv(&mut self, s: Term) -> Term {
        match s {
            Term::One => {
                self.note("inv-one", &Term::One);
                Term::One
            }
            Term::Var(_) => Term::inv(s),
            Term::Inv(inner) => {
                self.note("inv-inv", &inner);
                *inner
            }
            Term::Mul(a, b) => {
                let ib = self.mk_inv(*b);
                let ia = self.mk_inv(*a);
                let r = self.mk_mul(ib, ia);
                self.note("anti", &r);
                r
            }
            Term::Pow(..) => unreachable!("normal forms contain no powers"),
        }
    }

    fn mk_mul(&mut self, a: Term, b: Term) -> Term {
        if a == Term::One {
            self.note("unit-l", &b);
            return b;
        }
        if b == Term::One {
            self.note("unit-r", &a);
            return a;
        }
        if b == inverse_of(&a) {
            self.note("cancel", &Term::One);
            return Term::One;
        }
        if let Term::Mul(c, u) = &b {
            if a == inverse_of(c) {
                let u = (**u).clone();
                self.note("cancel-l", &u);
                return u;
            }
        }
        if let Term::Mul(u, c) = &a {
            if b == inverse_of(c) {
                let u = (**u).clone();
                self.note("cancel-r", &u);
                return u;
            }
        }
        Term::mul(a, b)
    }
}

pub fn normalize(t: &Term) -> Term {
    Normalizer { trace: None }.nf(t)
}

/// Normal form together with the rules fired, innermost first.
pub fn normalize_traced(t: &Term) -> (Term, Vec<String>) {
    let mut n = Normalizer {
        trace: Some(Vec::new()),
    };
    let r = n.nf(t);
    (r, n.trace.unwrap_or_default())
}
