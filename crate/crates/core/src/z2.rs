use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of the two-element group, serialized as `0` or `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Z2(bool);

impl Z2 {
    pub const ZERO: Z2 = Z2(false);
    pub const ONE: Z2 = Z2(true);

    pub fn from_parity(n: usize) -> Self {
        Z2(n % 2 == 1)
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }

    pub fn bit(self) -> u8 {
        self.0 as u8
    }
}

impl Add for Z2 {
    type Output = Z2;
    fn add(self, rhs: Z2) -> Z2 {
        Z2(self.0 ^ rhs.0)
    }
}

impl AddAssign for Z2 {
    fn add_assign(&mut self, rhs: Z2) {
        self.0 ^= rhs.0;
    }
}

// In characteristic two subtraction is addition.
impl Sub for Z2 {
    type Output = Z2;
    fn sub(self, rhs: Z2) -> Z2 {
        self + rhs
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

impl Serialize for Z2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for Z2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(Z2::ZERO),
            1 => Ok(Z2::ONE),
            other => Err(serde::de::Error::custom(format!("expected 0 or 1, got {other}"))),
        }
    }
}
