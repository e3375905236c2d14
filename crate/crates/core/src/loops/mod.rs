//! Loops with inversion: the abstract interface, the affine line `A(L) = L ⊔ {0}`,
//! and two concrete models (rational octonions and the 16-element sign-basis loop).

use std::fmt;
use std::hash::Hash;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};

pub mod checks;
mod finite;
mod octonion;

pub use finite::{Finite16, SignedBasis};
pub use octonion::Octonion;

/// A set with unit, product and a two-sided inversion.
///
/// Nothing about associativity is assumed; `checks` verifies what a model
/// actually satisfies.
pub trait LoopModel: Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn name(&self) -> &str;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Every element, for finite models.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn parse_element(&self, text: &str) -> Result<Self::Elem>;

    /// `x^0 = 1`, `x^a = (x^(a-1)) x`, `x^(-a) = (x^a)^(-1)`.
    fn power(&self, x: &Self::Elem, a: i64) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..a.unsigned_abs() {
            acc = self.mul(&acc, x);
        }
        if a < 0 {
            self.inv(&acc)
        } else {
            acc
        }
    }
}

/// A point of the affine line over a loop.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AffineValue<E> {
    Zero,
    Loop(E),
}

impl<E: Clone> AffineValue<E> {
    pub fn is_zero(&self) -> bool {
        matches!(self, AffineValue::Zero)
    }

    pub fn as_loop(&self) -> Option<&E> {
        match self {
            AffineValue::Zero => None,
            AffineValue::Loop(e) => Some(e),
        }
    }

    pub fn mul<M: LoopModel<Elem = E>>(&self, other: &Self, model: &M) -> Self {
        match (self, other) {
            (AffineValue::Loop(a), AffineValue::Loop(b)) => AffineValue::Loop(model.mul(a, b)),
            _ => AffineValue::Zero,
        }
    }

    pub fn inv<M: LoopModel<Elem = E>>(&self, model: &M) -> Result<Self> {
        match self {
            AffineValue::Zero => Err(Error::Domain("inverse of zero".into())),
            AffineValue::Loop(a) => Ok(AffineValue::Loop(model.inv(a))),
        }
    }

    /// `0^0 = 1`, `0^a = 0` for `a > 0`; negative powers of zero are undefined.
    pub fn power<M: LoopModel<Elem = E>>(&self, a: i64, model: &M) -> Result<Self> {
        match self {
            AffineValue::Loop(x) => Ok(AffineValue::Loop(model.power(x, a))),
            AffineValue::Zero if a == 0 => Ok(AffineValue::Loop(model.one())),
            AffineValue::Zero if a > 0 => Ok(AffineValue::Zero),
            AffineValue::Zero => Err(Error::Domain("negative power of zero".into())),
        }
    }
}

impl<E: fmt::Display> fmt::Display for AffineValue<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineValue::Zero => f.write_str("0"),
            AffineValue::Loop(e) => write!(f, "{e}"),
        }
    }
}

/// Parses `0` as zero, anything else through the model.
pub fn parse_affine<M: LoopModel>(model: &M, text: &str) -> Result<AffineValue<M::Elem>> {
    let t = text.trim();
    if t == "0" {
        Ok(AffineValue::Zero)
    } else {
        model.parse_element(t).map(AffineValue::Loop)
    }
}

/// Nonzero rational octonions.
///
/// Random elements have integer coordinates drawn uniformly from
/// `-range..=range`, rejecting zero. With `scalar_only` only `c0` is drawn,
/// which gives the commutative-associative submodel `Q*`.
#[derive(Clone, Debug)]
pub struct OctonionModel {
    pub range: i64,
    pub scalar_only: bool,
}

impl Default for OctonionModel {
    fn default() -> Self {
        OctonionModel {
            range: 3,
            scalar_only: false,
        }
    }
}

impl OctonionModel {
    pub fn scalars(range: i64) -> Self {
        OctonionModel {
            range,
            scalar_only: true,
        }
    }
}

impl LoopModel for OctonionModel {
    type Elem = Octonion;

    fn name(&self) -> &str {
        if self.scalar_only {
            "rational-scalars"
        } else {
            "oct-rational"
        }
    }

    fn one(&self) -> Octonion {
        Octonion::one()
    }

    fn mul(&self, a: &Octonion, b: &Octonion) -> Octonion {
        a.mul(b)
    }

    fn inv(&self, a: &Octonion) -> Octonion {
        a.inv().expect("loop elements of the octonion model are nonzero")
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Octonion {
        loop {
            let mut c = [0i64; 8];
            let live = if self.scalar_only { 1 } else { 8 };
            for slot in c.iter_mut().take(live) {
                *slot = rng.gen_range(-self.range..=self.range);
            }
            let o = Octonion::from_ints(c);
            if !o.is_zero() {
                return o;
            }
        }
    }

    fn parse_element(&self, text: &str) -> Result<Octonion> {
        let o: Octonion = text.parse()?;
        if o.is_zero() {
            return Err(Error::Parse("zero is not a loop element".into()));
        }
        Ok(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn power_values() {
        let m = OctonionModel::default();
        let x = Octonion::from_ints([1, 2, 0, -1, 0, 0, 3, 1]);
        assert_eq!(m.power(&x, 0), Octonion::one());
        assert_eq!(m.power(&Octonion::basis(1), 2), Octonion::one().neg());
        assert_eq!(m.power(&x, -1), x.inv().unwrap());
    }

    #[test]
    fn power_recursion_both_orders() {
        let m = OctonionModel::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x = m.random_element(&mut rng);
            for a in -5..=5 {
                let p = m.power(&x, a);
                let next = m.power(&x, a + 1);
                assert_eq!(m.mul(&p, &x), next);
                assert_eq!(m.mul(&x, &p), next);
            }
        }
    }

    #[test]
    fn power_addition_law() {
        let m = OctonionModel::default();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let x = m.random_element(&mut rng);
            for a in -5..=5 {
                for b in -5..=5 {
                    assert_eq!(m.power(&x, a + b), m.mul(&m.power(&x, a), &m.power(&x, b)));
                }
            }
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let m = OctonionModel::default();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let x = m.random_element(&mut rng);
            let y = m.random_element(&mut rng);
            assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        }
    }

    #[test]
    fn affine_zero_rules() {
        let m = Finite16::new();
        let e3 = AffineValue::Loop(SignedBasis::basis(3));
        assert_eq!(AffineValue::Zero.mul(&e3, &m), AffineValue::Zero);
        assert_eq!(e3.mul(&AffineValue::Zero, &m), AffineValue::Zero);
        assert!(AffineValue::<SignedBasis>::Zero.inv(&m).is_err());
        assert_eq!(AffineValue::Zero.power(0, &m).unwrap(), AffineValue::Loop(m.one()));
        assert_eq!(AffineValue::Zero.power(3, &m).unwrap(), AffineValue::<SignedBasis>::Zero);
        assert!(AffineValue::<SignedBasis>::Zero.power(-1, &m).is_err());
    }

    #[test]
    fn scalar_submodel_commutes() {
        let m = OctonionModel::scalars(5);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let x = m.random_element(&mut rng);
            let y = m.random_element(&mut rng);
            assert!(x.is_scalar());
            assert_eq!(m.mul(&x, &y), m.mul(&y, &x));
        }
    }
}
