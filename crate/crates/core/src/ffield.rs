//! Arithmetic in the prime field `F_q` for an odd prime `q`.
//!
//! Residues are plain `u8` values in `[0, q)`. Addition and multiplication
//! are computed directly; inverses, multiplicative orders and the index of
//! each unit in the ordered unit list are tabulated once at construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted. Residues must fit in a `u8`.
pub const MAX_MODULUS: u32 = 251;

/// A prime field `F_q` with `q` odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    q: u8,
    units: Vec<u8>,
    inverse: Vec<u8>,
    unit_index: Vec<u8>,
    mult_order: Vec<u8>,
    primitive_root: u8,
}

impl PrimeField {
    /// Builds the field tables for the odd prime `q`.
    pub fn new(q: u32) -> Result<Self> {
        if q == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if q < 3 {
            return Err(Error::TooSmall(q));
        }
        if q > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(q));
        }
        if !is_prime(q) {
            return Err(Error::NonPrimeModulus(q));
        }
        let qq = q as usize;
        let units: Vec<u8> = (1..q).map(|a| a as u8).collect();
        let mut inverse = vec![0u8; qq];
        let mut unit_index = vec![0u8; qq];
        let mut mult_order = vec![0u8; qq];
        for (i, &a) in units.iter().enumerate() {
            unit_index[a as usize] = i as u8;
            let mut x = a as u32;
            let mut k = 1u32;
            while x != 1 {
                x = x * a as u32 % q;
                k += 1;
            }
            mult_order[a as usize] = k as u8;
            // a^(k-1) is the inverse of a
            let mut inv = 1u32;
            for _ in 0..k - 1 {
                inv = inv * a as u32 % q;
            }
            inverse[a as usize] = inv as u8;
        }
        let primitive_root = units
            .iter()
            .copied()
            .find(|&a| mult_order[a as usize] as u32 == q - 1)
            .expect("multiplicative group of a prime field is cyclic");
        Ok(PrimeField {
            q: q as u8,
            units,
            inverse,
            unit_index,
            mult_order,
            primitive_root,
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q as u32
    }

    /// The `q - 1` nonzero residues in increasing order.
    pub fn units(&self) -> &[u8] {
        &self.units
    }

    /// Position of the unit `a` in [`units`](Self::units).
    #[inline]
    pub fn unit_index(&self, a: u8) -> usize {
        self.unit_index[a as usize] as usize
    }

    #[inline]
    pub fn unit_at(&self, index: usize) -> u8 {
        self.units[index]
    }

    /// Smallest generator of `F_q^*`.
    pub fn primitive_root(&self) -> u8 {
        self.primitive_root
    }

    /// Multiplicative order of a nonzero residue.
    #[inline]
    pub fn mult_order(&self, a: u8) -> u32 {
        self.mult_order[a as usize] as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q as u16 - b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 || a >= self.q {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inverse[a as usize])
    }

    /// Table lookup without the zero check; callers guarantee `a != 0`.
    #[inline]
    pub(crate) fn inv_unchecked(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inverse[a as usize]
    }

    /// Reduces an arbitrary integer into `[0, q)`.
    pub fn reduce(&self, a: i64) -> u8 {
        a.rem_euclid(self.q as i64) as u8
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        PrimeField::new(q)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.q()
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
