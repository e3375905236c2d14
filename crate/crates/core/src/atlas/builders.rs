use super::{signs_label, Atlas, Formula, Provenance};
use crate::lifting::{MockLifting, NiceCycle};
use crate::term::Term;

fn x() -> Term {
    Term::var("x")
}

fn y() -> Term {
    Term::var("y")
}

fn inv(t: Term) -> Term {
    Term::inv(t)
}

fn mul(a: Term, b: Term) -> Term {
    Term::mul(a, b)
}

fn pow(t: Term, a: i64) -> Term {
    Term::pow(t, a)
}

/// Two charts of `A(L)`, glued by `x ↦ x⁻¹` on `L`.
pub fn build_p1() -> Atlas {
    let mut at = Atlas::new(Provenance::ProjectiveLine, 2, 1);
    at.insert_terms(0, 1, vec![inv(x())]);
    at.insert_terms(1, 0, vec![inv(x())]);
    at
}

pub fn build_p2() -> Atlas {
    let mut at = Atlas::new(Provenance::ProjectivePlane, 3, 2);
    at.insert_terms(0, 1, vec![inv(x()), mul(inv(x()), y())]);
    at.insert_terms(1, 0, vec![inv(x()), mul(inv(x()), y())]);
    at.insert_terms(1, 2, vec![mul(inv(y()), x()), inv(y())]);
    at.insert_terms(2, 1, vec![mul(inv(y()), x()), inv(y())]);
    at.insert_terms(0, 2, vec![inv(y()), mul(inv(y()), x())]);
    at.insert_terms(2, 0, vec![mul(inv(x()), y()), inv(x())]);
    at
}

/// Four charts; `a` is the twisting parameter.
pub fn build_hirzebruch(a: i64) -> Atlas {
    let mut at = Atlas::new(Provenance::Hirzebruch { a }, 4, 2);
    at.insert_terms(0, 1, vec![inv(y()), x()]);
    at.insert_terms(1, 0, vec![y(), inv(x())]);
    at.insert_terms(1, 2, vec![inv(y()), mul(pow(y(), -a), x())]);
    at.insert_terms(2, 1, vec![mul(pow(inv(x()), a), y()), inv(x())]);
    at.insert_terms(2, 3, vec![inv(y()), x()]);
    at.insert_terms(3, 2, vec![y(), inv(x())]);
    at.insert_terms(0, 2, vec![inv(x()), mul(pow(x(), -a), inv(y()))]);
    at.insert_terms(2, 0, vec![inv(x()), mul(inv(y()), pow(inv(x()), -a))]);
    at.insert_terms(1, 3, vec![mul(inv(x()), pow(y(), a)), inv(y())]);
    at.insert_terms(3, 1, vec![mul(pow(inv(y()), a), inv(x())), inv(y())]);
    // the domain of φ_03 needs x ≠ 0: x⁻¹ appears in it
    at.insert_terms(0, 3, vec![mul(y(), pow(x(), a)), inv(x())]);
    at.insert_terms(3, 0, vec![inv(y()), mul(x(), pow(inv(y()), -a))]);
    at
}

/// Toric coordinates of the four charts of the blow-up of `A(L)²` at the
/// origin, written in the coordinates `(x, y)` of the base plane.
pub fn x1_toric_coordinates() -> [[Term; 2]; 4] {
    [
        [x(), mul(inv(x()), y())],
        [mul(inv(y()), x()), y()],
        [inv(y()), mul(inv(y()), x())],
        [mul(inv(x()), y()), inv(x())],
    ]
}

pub fn build_blowup_x1() -> Atlas {
    let mut at = Atlas::new(Provenance::BlowupX1, 4, 2);
    at.insert_terms(0, 1, vec![inv(y()), mul(x(), y())]);
    at.insert_terms(1, 0, vec![mul(y(), x()), inv(x())]);
    at.insert_terms(1, 2, vec![inv(y()), x()]);
    at.insert_terms(2, 1, vec![y(), inv(x())]);
    at.insert_terms(2, 3, vec![inv(y()), mul(inv(y()), x())]);
    at.insert_terms(3, 2, vec![mul(inv(x()), y()), inv(x())]);
    at.insert_terms(0, 2, vec![mul(inv(y()), inv(x())), inv(y())]);
    at.insert_terms(2, 0, vec![mul(inv(x()), y()), inv(y())]);
    at.insert_terms(1, 3, vec![inv(x()), mul(inv(x()), inv(y()))]);
    at.insert_terms(3, 1, vec![inv(x()), mul(inv(y()), x())]);
    at.insert_terms(0, 3, vec![y(), inv(x())]);
    at.insert_terms(3, 0, vec![inv(y()), x()]);
    at
}

/// One chart per cycle entry; `φ_ij = M_ij` on the domain of its kind.
pub fn build_from_lifting(nice: &NiceCycle) -> Atlas {
    let mut at = Atlas::new(
        Provenance::NiceCycle {
            a: nice.a.clone(),
            eps: signs_label(&nice.eps),
        },
        nice.n,
        2,
    );
    for arc in &nice.arcs {
        at.insert(
            arc.i,
            arc.j,
            arc.map.terms().to_vec(),
            arc.map.domain().to_vec(),
            Formula::Pseudoreflection(arc.map),
        );
    }
    at
}

/// Like [`build_from_lifting`], with domains read off the composite formulas.
pub fn build_from_mock(mock: &MockLifting) -> Atlas {
    let mut at = Atlas::new(
        Provenance::MockLifting {
            a: mock.a.clone(),
            eps: mock.eps.clone(),
        },
        mock.n,
        2,
    );
    for arc in &mock.arcs {
        let map = arc.map.to_vec();
        let nonzero = super::domain_from_terms(&map, 2);
        at.insert(arc.i, arc.j, map, nonzero, Formula::Chain(arc.chain.clone()));
    }
    at
}
