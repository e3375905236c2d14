//! Rational octonions built by Cayley–Dickson doubling of the quaternions.
//!
//! A value is `(p, q)` with `p = c0 + c1 i + c2 j + c3 k` and
//! `q = c4 + c5 i + c6 j + c7 k`; the product is
//! `(p, q)(r, s) = (pr - s̄q, sp + q r̄)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Octonion {
    coords: [BigRational; 8],
}

type Quat<'a> = [&'a BigRational; 4];

fn quat_mul(a: Quat<'_>, b: Quat<'_>) -> [BigRational; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

impl Octonion {
    pub fn new(coords: [BigRational; 8]) -> Self {
        Octonion { coords }
    }

    pub fn from_ints(coords: [i64; 8]) -> Self {
        Octonion {
            coords: coords.map(|c| BigRational::from_integer(BigInt::from(c))),
        }
    }

    pub fn zero() -> Self {
        Octonion::from_ints([0; 8])
    }

    pub fn one() -> Self {
        Octonion::basis(0)
    }

    /// The basis vector `e_index`, `index` in `0..8`.
    pub fn basis(index: usize) -> Self {
        let mut c = [0i64; 8];
        c[index] = 1;
        Octonion::from_ints(c)
    }

    /// Rational scalar `r · e0`.
    pub fn scalar(r: BigRational) -> Self {
        let mut o = Octonion::zero();
        o.coords[0] = r;
        o
    }

    pub fn coords(&self) -> &[BigRational; 8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when only the real coordinate may be nonzero.
    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let mut coords = self.coords.clone();
        for c in coords.iter_mut().skip(1) {
            *c = -c.clone();
        }
        Octonion { coords }
    }

    /// Sum of squared coordinates.
    pub fn norm(&self) -> BigRational {
        self.coords
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c * c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Octonion {
            coords: self.coords.clone().map(|c| c * k),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Octonion {
            coords: self.coords.clone().map(|c| -c),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Octonion) -> Octonion {
        let c = &self.coords;
        let d = &other.coords;
        let p = [&c[0], &c[1], &c[2], &c[3]];
        let q = [&c[4], &c[5], &c[6], &c[7]];
        let r = [&d[0], &d[1], &d[2], &d[3]];
        let s = [&d[4], &d[5], &d[6], &d[7]];
        let s_bar_owned = [d[4].clone(), -d[5].clone(), -d[6].clone(), -d[7].clone()];
        let r_bar_owned = [d[0].clone(), -d[1].clone(), -d[2].clone(), -d[3].clone()];
        let s_bar = [&s_bar_owned[0], &s_bar_owned[1], &s_bar_owned[2], &s_bar_owned[3]];
        let r_bar = [&r_bar_owned[0], &r_bar_owned[1], &r_bar_owned[2], &r_bar_owned[3]];

        let pr = quat_mul(p, r);
        let sq = quat_mul(s_bar, q);
        let sp = quat_mul(s, p);
        let qr = quat_mul(q, r_bar);

        let [a0, a1, a2, a3] = pr;
        let [b0, b1, b2, b3] = sq;
        let [c0, c1, c2, c3] = sp;
        let [d0, d1, d2, d3] = qr;
        Octonion {
            coords: [
                a0 - b0,
                a1 - b1,
                a2 - b2,
                a3 - b3,
                c0 + d0,
                c1 + d1,
                c2 + d2,
                c3 + d3,
            ],
        }
    }

    /// `x̄ / N(x)`.
    pub fn inv(&self) -> Result<Octonion> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    /// Returns `Some((sign, index))` when this is `±e_index`.
    pub fn as_signed_basis(&self) -> Option<(bool, usize)> {
        let mut found = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || c.abs() != BigRational::one() {
                return None;
            }
            found = Some((c.is_negative(), i));
        }
        found
    }
}

impl std::ops::Mul for &Octonion {
    type Output = Octonion;

    fn mul(self, other: &Octonion) -> Octonion {
        Octonion::mul(self, other)
    }
}

impl std::ops::Neg for &Octonion {
    type Output = Octonion;

    fn neg(self) -> Octonion {
        Octonion::neg(self)
    }
}

/// Comma-separated coordinates `c0,...,c7`, each an integer or `p/q`.
impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Octonion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 8 {
            return Err(Error::Parse(format!(
                "octonion needs 8 coordinates, got {}",
                parts.len()
            )));
        }
        let mut coords: [BigRational; 8] = Default::default();
        for (slot, p) in coords.iter_mut().zip(&parts) {
            *slot = p
                .parse::<BigRational>()
                .map_err(|_| Error::Parse(format!("bad rational `{p}`")))?;
        }
        Ok(Octonion { coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    #[test]
    fn unit_law() {
        let x = Octonion::from_ints([1, -2, 3, 0, 5, -1, 2, 2]);
        assert_eq!(Octonion::one().mul(&x), x);
        assert_eq!(x.mul(&Octonion::one()), x);
    }

    #[test]
    fn doubling_hand_values() {
        // (0,1)(0,1) = (-1,0)
        assert_eq!(e(4).mul(&e(4)), Octonion::one().neg());
        // (i,0)(0,1) = (0,i)
        assert_eq!(e(1).mul(&e(4)), e(5));
        assert_eq!(e(1).mul(&e(1)), Octonion::one().neg());
    }

    #[test]
    fn inverses() {
        assert_eq!(Octonion::one().inv().unwrap(), Octonion::one());
        assert_eq!(e(1).inv().unwrap(), e(1).neg());
        let two = Octonion::from_ints([2, 0, 0, 0, 0, 0, 0, 0]);
        let half: Octonion = "1/2,0,0,0,0,0,0,0".parse().unwrap();
        assert_eq!(two.inv().unwrap(), half);
        assert_eq!(Octonion::zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn basis_is_closed_up_to_sign() {
        for i in 0..8 {
            for j in 0..8 {
                assert!(e(i).mul(&e(j)).as_signed_basis().is_some());
            }
        }
    }

    #[test]
    fn display_round_trip() {
        let x: Octonion = "1/2,-3,0,0,7/5,0,0,1".parse().unwrap();
        assert_eq!(x.to_string().parse::<Octonion>().unwrap(), x);
        assert!("1,2".parse::<Octonion>().is_err());
    }
}
