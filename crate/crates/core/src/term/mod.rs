//! Words in the free loop with inversion.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! term  := "1" | ident | "inv(" term ")" | "mul(" term "," term ")" | "pow(" term "," int ")"
//! ident := [a-z][a-z0-9_]*
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

mod eval;
mod normalize;
mod parse;
mod prove;

pub use eval::{evaluate, Assignment};
pub use normalize::{expand_pow, inverse_of, normalize, normalize_traced, weight};
pub use parse::parse_term;
pub use prove::{decide_equal, DecideConfig, Verdict};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Term {
    One,
    Var(String),
    Inv(Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Pow(Box<Term>, i64),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn inv(t: Term) -> Term {
        Term::Inv(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(t: Term, a: i64) -> Term {
        Term::Pow(Box::new(t), a)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::One => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Inv(t) | Term::Pow(t, _) => t.collect_vars(out),
            Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, map: &HashMap<String, Term>) -> Term {
        match self {
            Term::One => Term::One,
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Inv(t) => Term::inv(t.substitute(map)),
            Term::Mul(a, b) => Term::mul(a.substitute(map), b.substitute(map)),
            Term::Pow(t, a) => Term::pow(t.substitute(map), *a),
        }
    }

    /// Variables that occur under an inversion or a negative power, i.e.
    /// those that must be nonzero for the term to be defined on `A(L)`.
    pub fn inverted_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_inverted(false, &mut out);
        out
    }

    fn collect_inverted(&self, under_inv: bool, out: &mut BTreeSet<String>) {
        match self {
            Term::One => {}
            Term::Var(v) => {
                if under_inv {
                    out.insert(v.clone());
                }
            }
            Term::Inv(t) => t.collect_inverted(true, out),
            Term::Pow(t, a) => t.collect_inverted(under_inv || *a < 0, out),
            Term::Mul(a, b) => {
                a.collect_inverted(under_inv, out);
                b.collect_inverted(under_inv, out);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::One => f.write_str("1"),
            Term::Var(v) => f.write_str(v),
            Term::Inv(t) => write!(f, "inv({t})"),
            Term::Mul(a, b) => write!(f, "mul({a},{b})"),
            Term::Pow(t, a) => write!(f, "pow({t},{a})"),
        }
    }
}
