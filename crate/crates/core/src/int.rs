//! Signed multi-limb integers, used by the binary-splitting series.

use std::cmp::Ordering;

use crate::nat::Nat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Int {
    neg: bool,
    mag: Nat,
}

impl Int {
    pub fn zero() -> Self {
        Int::default()
    }

    pub fn new(neg: bool, mag: Nat) -> Self {
        let neg = neg && !mag.is_zero();
        Int { neg, mag }
    }

    pub fn from_i64(v: i64) -> Self {
        Int::new(v < 0, Nat::from(v.unsigned_abs()))
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn magnitude(&self) -> &Nat {
        &self.mag
    }

    pub fn neg(&self) -> Int {
        Int::new(!self.neg, self.mag.clone())
    }

    pub fn add(&self, other: &Int) -> Int {
        if self.neg == other.neg {
            return Int::new(self.neg, self.mag.add(&other.mag));
        }
        match self.mag.cmp(&other.mag) {
            Ordering::Less => Int::new(other.neg, other.mag.sub(&self.mag)),
            _ => Int::new(self.neg, self.mag.sub(&other.mag)),
        }
    }

    pub fn sub(&self, other: &Int) -> Int {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Int) -> Int {
        Int::new(self.neg != other.neg, self.mag.mul(&other.mag))
    }

    pub fn mul_nat(&self, other: &Nat) -> Int {
        Int::new(self.neg, self.mag.mul(other))
    }
}

impl From<Nat> for Int {
    fn from(mag: Nat) -> Self {
        Int::new(false, mag)
    }
}
