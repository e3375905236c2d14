use std::collections::HashMap;

use super::Term;
use crate::error::{Error, Result};
use crate::loops::{AffineValue, LoopModel};

/// Values for the free variables of a term.
pub type Assignment<E> = HashMap<String, AffineValue<E>>;

/// Structural evaluation on `A(L)`: zero absorbs products, powers go through
/// [`LoopModel::power`], and inverting zero is a domain error.
pub fn evaluate<M: LoopModel>(
    t: &Term,
    assignment: &Assignment<M::Elem>,
    model: &M,
) -> Result<AffineValue<M::Elem>> {
    match t {
        Term::One => Ok(AffineValue::Loop(model.one())),
        Term::Var(v) => assignment
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(v.clone())),
        Term::Inv(s) => evaluate(s, assignment, model)?
            .inv(model)
            .map_err(|_| Error::Domain(format!("inverse of zero in {t}"))),
        Term::Mul(a, b) => {
            let a = evaluate(a, assignment, model)?;
            let b = evaluate(b, assignment, model)?;
            Ok(a.mul(&b, model))
        }
        Term::Pow(s, a) => evaluate(s, assignment, model)?
            .power(*a, model)
            .map_err(|_| Error::Domain(format!("negative power of zero in {t}"))),
    }
}
