use std::fmt;

use rand::{Rng, RngCore};

use super::{LoopModel, Octonion};
use crate::error::{Error, Result};

/// `±e_index` inside the octonion table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedBasis {
    pub negative: bool,
    pub index: u8,
}

impl SignedBasis {
    pub fn basis(index: u8) -> Self {
        SignedBasis {
            negative: false,
            index,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        SignedBasis {
            negative: !self.negative,
            ..self
        }
    }

    fn slot(self) -> usize {
        self.index as usize + if self.negative { 8 } else { 0 }
    }

    fn from_slot(slot: usize) -> Self {
        SignedBasis {
            negative: slot >= 8,
            index: (slot % 8) as u8,
        }
    }

    pub fn to_octonion(self) -> Octonion {
        let e = Octonion::basis(self.index as usize);
        if self.negative {
            e.neg()
        } else {
            e
        }
    }
}

impl fmt::Display for SignedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        write!(f, "e{}", self.index)
    }
}

/// The 16-element Moufang loop `{±e0, …, ±e7}` with its Cayley table
/// read off the octonion product.
#[derive(Clone, Debug)]
pub struct Finite16 {
    name: String,
    table: Vec<u8>,
}

impl Default for Finite16 {
    fn default() -> Self {
        Self::new()
    }
}

impl Finite16 {
    pub fn new() -> Self {
        let mut table = vec![0u8; 256];
        for a in 0..16 {
            for b in 0..16 {
                let p = SignedBasis::from_slot(a)
                    .to_octonion()
                    .mul(&SignedBasis::from_slot(b).to_octonion());
                let (negative, index) = p
                    .as_signed_basis()
                    .expect("basis products are signed basis elements");
                table[a * 16 + b] = SignedBasis {
                    negative,
                    index: index as u8,
                }
                .slot() as u8;
            }
        }
        Finite16 {
            name: "finite16".into(),
            table,
        }
    }

    /// A copy whose Cayley table has the entries at `a·b` and `c·d` exchanged.
    pub fn with_swapped_entries(
        &self,
        (a, b): (SignedBasis, SignedBasis),
        (c, d): (SignedBasis, SignedBasis),
    ) -> Self {
        let mut table = self.table.clone();
        table.swap(a.slot() * 16 + b.slot(), c.slot() * 16 + d.slot());
        Finite16 {
            name: "finite16-corrupted".into(),
            table,
        }
    }
}

impl LoopModel for Finite16 {
    type Elem = SignedBasis;

    fn name(&self) -> &str {
        &self.name
    }

    fn one(&self) -> SignedBasis {
        SignedBasis::basis(0)
    }

    fn mul(&self, a: &SignedBasis, b: &SignedBasis) -> SignedBasis {
        SignedBasis::from_slot(self.table[a.slot() * 16 + b.slot()] as usize)
    }

    fn inv(&self, a: &SignedBasis) -> SignedBasis {
        if a.index == 0 {
            *a
        } else {
            a.neg()
        }
    }

    fn elements(&self) -> Option<Vec<SignedBasis>> {
        Some((0..16).map(SignedBasis::from_slot).collect())
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> SignedBasis {
        SignedBasis::from_slot(rng.gen_range(0..16))
    }

    fn parse_element(&self, text: &str) -> Result<SignedBasis> {
        let t = text.trim();
        let (negative, rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let index = rest
            .strip_prefix('e')
            .and_then(|d| d.parse::<u8>().ok())
            .filter(|i| *i < 8)
            .ok_or_else(|| Error::Parse(format!("expected ±e0..±e7, got `{t}`")))?;
        Ok(SignedBasis { negative, index })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_and_unital() {
        let m = Finite16::new();
        let all = m.elements().unwrap();
        assert_eq!(all.len(), 16);
        for x in &all {
            assert_eq!(m.mul(&m.one(), x), *x);
            assert_eq!(m.mul(x, &m.one()), *x);
            assert_eq!(m.mul(x, &m.inv(x)), m.one());
            for y in &all {
                assert!(all.contains(&m.mul(x, y)));
            }
        }
    }

    #[test]
    fn agrees_with_octonions() {
        let m = Finite16::new();
        for x in m.elements().unwrap() {
            for y in m.elements().unwrap() {
                assert_eq!(m.mul(&x, &y).to_octonion(), x.to_octonion().mul(&y.to_octonion()));
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let m = Finite16::new();
        assert_eq!(m.parse_element("-e3").unwrap(), SignedBasis::basis(3).neg());
        assert_eq!(m.parse_element("e0").unwrap().to_string(), "e0");
        assert!(m.parse_element("e8").is_err());
        assert!(m.parse_element("x").is_err());
    }
}
