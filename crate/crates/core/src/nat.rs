//! Unsigned multi-limb integers.
//!
//! Limbs are 64-bit words stored least significant first. A `Nat` is always
//! trimmed: the most significant limb is nonzero, and zero is the empty vector.

use std::cmp::Ordering;

use crate::mulkernel;

pub type Limb = u64;
pub const LIMB_BITS: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Nat {
    limbs: Vec<Limb>,
}

impl std::fmt::Debug for Nat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Nat[")?;
        for (i, l) in self.limbs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "_")?;
            }
            write!(f, "{l:016x}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn trim(v: &mut Vec<Limb>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Nat {
    pub fn zero() -> Self {
        Nat { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Nat::from(1u64)
    }

    pub fn from_limbs(mut limbs: Vec<Limb>) -> Self {
        trim(&mut limbs);
        Nat { limbs }
    }

    pub fn limbs(&self) -> &[Limb] {
        &self.limbs
    }

    pub fn into_limbs(self) -> Vec<Limb> {
        self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// Number of significant bits; zero has length 0.
    pub fn bit_len(&self) -> usize {
        match self.limbs.last() {
            None => 0,
            Some(&top) => (self.limbs.len() - 1) * LIMB_BITS + (LIMB_BITS - top.leading_zeros() as usize),
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        let (w, b) = (i / LIMB_BITS, i % LIMB_BITS);
        w < self.limbs.len() && (self.limbs[w] >> b) & 1 == 1
    }

    /// Number of trailing zero bits; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<usize> {
        let idx = self.limbs.iter().position(|&l| l != 0)?;
        Some(idx * LIMB_BITS + self.limbs[idx].trailing_zeros() as usize)
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn pow2(k: usize) -> Self {
        let mut limbs = vec![0; k / LIMB_BITS + 1];
        limbs[k / LIMB_BITS] = 1 << (k % LIMB_BITS);
        Nat { limbs }
    }

    pub fn add(&self, other: &Nat) -> Nat {
        Nat::from_limbs(add_slices(&self.limbs, &other.limbs))
    }

    /// `self - other`; panics if the result would be negative.
    pub fn sub(&self, other: &Nat) -> Nat {
        assert!(self >= other, "Nat subtraction underflow");
        let mut out = self.limbs.clone();
        sub_assign_slices(&mut out, &other.limbs);
        Nat::from_limbs(out)
    }

    pub fn mul(&self, other: &Nat) -> Nat {
        Nat::from_limbs(mulkernel::mul_limbs(&self.limbs, &other.limbs))
    }

    pub fn square(&self) -> Nat {
        self.mul(self)
    }

    pub fn mul_word(&self, w: Limb) -> Nat {
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut carry: u128 = 0;
        for &l in &self.limbs {
            let t = l as u128 * w as u128 + carry;
            out.push(t as u64);
            carry = t >> 64;
        }
        out.push(carry as u64);
        Nat::from_limbs(out)
    }

    pub fn add_word(&self, w: Limb) -> Nat {
        self.add(&Nat::from(w))
    }

    /// Quotient and remainder by a single nonzero word.
    pub fn divrem_word(&self, d: Limb) -> (Nat, Limb) {
        assert!(d != 0, "division by zero");
        let mut q = vec![0; self.limbs.len()];
        let mut rem: u128 = 0;
        for i in (0..self.limbs.len()).rev() {
            let cur = (rem << 64) | self.limbs[i] as u128;
            q[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        (Nat::from_limbs(q), rem as u64)
    }

    pub fn shl(&self, k: usize) -> Nat {
        if self.is_zero() {
            return Nat::zero();
        }
        let (words, bits) = (k / LIMB_BITS, k % LIMB_BITS);
        let mut out = vec![0; words];
        if bits == 0 {
            out.extend_from_slice(&self.limbs);
        } else {
            let mut carry = 0;
            for &l in &self.limbs {
                out.push((l << bits) | carry);
                carry = l >> (LIMB_BITS - bits);
            }
            out.push(carry);
        }
        Nat::from_limbs(out)
    }

    /// Floor division by `2^k`.
    pub fn shr(&self, k: usize) -> Nat {
        let (words, bits) = (k / LIMB_BITS, k % LIMB_BITS);
        if words >= self.limbs.len() {
            return Nat::zero();
        }
        let src = &self.limbs[words..];
        if bits == 0 {
            return Nat::from_limbs(src.to_vec());
        }
        let mut out = Vec::with_capacity(src.len());
        for i in 0..src.len() {
            let hi = if i + 1 < src.len() { src[i + 1] << (LIMB_BITS - bits) } else { 0 };
            out.push((src[i] >> bits) | hi);
        }
        Nat::from_limbs(out)
    }

    /// Keeps only the low `k` bits.
    pub fn low_bits(&self, k: usize) -> Nat {
        let words = k.div_ceil(LIMB_BITS);
        let mut out: Vec<Limb> = self.limbs.iter().take(words).copied().collect();
        if k % LIMB_BITS != 0 && out.len() == words {
            let last = out.len() - 1;
            out[last] &= (1u64 << (k % LIMB_BITS)) - 1;
        }
        Nat::from_limbs(out)
    }

    pub fn pow(&self, mut e: u32) -> Nat {
        let mut base = self.clone();
        let mut acc = Nat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Top 64 bits as an `f64` mantissa together with the binary exponent:
    /// value ≈ m · 2^e with m in [2^63, 2^64).
    pub(crate) fn top_f64(&self) -> (f64, i64) {
        let bl = self.bit_len();
        if bl == 0 {
            return (0.0, 0);
        }
        let shift = bl.saturating_sub(64);
        let top = self.shr(shift).to_u64().unwrap_or(0);
        (top as f64, shift as i64)
    }

    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.top_f64();
        m * 2f64.powi(e.min(2000) as i32)
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat::from_limbs(vec![v])
    }
}

impl From<u128> for Nat {
    fn from(v: u128) -> Self {
        Nat::from_limbs(vec![v as u64, (v >> 64) as u64])
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_slices(&self.limbs, &other.limbs)
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two trimmed-or-untrimmed limb slices by value.
pub(crate) fn cmp_slices(a: &[Limb], b: &[Limb]) -> Ordering {
    let la = a.iter().rposition(|&l| l != 0).map_or(0, |i| i + 1);
    let lb = b.iter().rposition(|&l| l != 0).map_or(0, |i| i + 1);
    if la != lb {
        return la.cmp(&lb);
    }
    for i in (0..la).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub(crate) fn add_slices(a: &[Limb], b: &[Limb]) -> Vec<Limb> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = Vec::with_capacity(long.len() + 1);
    let mut carry = false;
    for i in 0..long.len() {
        let s = if i < short.len() { short[i] } else { 0 };
        let (t, c1) = long[i].overflowing_add(s);
        let (t, c2) = t.overflowing_add(carry as u64);
        out.push(t);
        carry = c1 || c2;
    }
    out.push(carry as u64);
    out
}

/// `acc += src`, with `acc` long enough to absorb the final carry.
pub(crate) fn add_assign_slices(acc: &mut [Limb], src: &[Limb]) {
    let mut carry = false;
    let mut i = 0;
    while i < src.len() || carry {
        let s = if i < src.len() { src[i] } else { 0 };
        let (t, c1) = acc[i].overflowing_add(s);
        let (t, c2) = t.overflowing_add(carry as u64);
        acc[i] = t;
        carry = c1 || c2;
        i += 1;
    }
}

/// `acc -= src`; requires `acc >= src`.
pub(crate) fn sub_assign_slices(acc: &mut [Limb], src: &[Limb]) {
    let mut borrow = false;
    let mut i = 0;
    while i < src.len() || borrow {
        let s = if i < src.len() { src[i] } else { 0 };
        let (t, b1) = acc[i].overflowing_sub(s);
        let (t, b2) = t.overflowing_sub(borrow as u64);
        acc[i] = t;
        borrow = b1 || b2;
        i += 1;
    }
}
