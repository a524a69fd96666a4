//! Precision-n binary floating fractions and their linear-time operations.
//!
//! A nonzero value is `sign · 0.f · 2^exponent` where the fraction `f` is held
//! in `ceil(prec/64)` limbs with the top bit set and all bits below `prec`
//! cleared. Every operation truncates toward zero.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::nat::{Limb, Nat, LIMB_BITS};

pub const DEFAULT_GUARD_BITS: usize = 8;
pub const EXP_MIN: i64 = i32::MIN as i64;
pub const EXP_MAX: i64 = i32::MAX as i64;

/// Requested accuracy `n` plus working guard bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub n: usize,
    pub guard: usize,
}

impl Precision {
    pub fn new(n: usize) -> Self {
        Self::with_guard(n, DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(n: usize, guard: usize) -> Self {
        assert!(n >= 1, "precision must be at least one bit");
        assert!(guard >= 2, "at least two guard bits are required");
        Precision { n, guard }
    }

    pub fn working(&self) -> usize {
        self.n + self.guard
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    sign: i8,
    exp: i64,
    frac: Vec<Limb>,
    prec: usize,
}

impl std::fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BigFloat({:e}, exp={}, prec={})", self.to_f64_lossy(), self.exp, self.prec)
    }
}

fn limbs_for(prec: usize) -> usize {
    prec.div_ceil(LIMB_BITS)
}

impl BigFloat {
    pub fn zero(prec: usize) -> Self {
        BigFloat { sign: 0, exp: 0, frac: Vec::new(), prec: prec.max(1) }
    }

    /// Builds `sign · m · 2^e2`, truncating `m` to `prec` bits.
    pub fn from_parts(sign: i8, m: Nat, e2: i64, prec: usize) -> Result<Self> {
        let prec = prec.max(1);
        if sign == 0 || m.is_zero() {
            return Ok(Self::zero(prec));
        }
        let bl = m.bit_len();
        let (m, e2) = if bl > prec { (m.shr(bl - prec), e2 + (bl - prec) as i64) } else { (m, e2) };
        let bl = m.bit_len();
        let l = limbs_for(prec);
        let placed = m.shl(l * LIMB_BITS - bl);
        let mut frac = placed.into_limbs();
        frac.resize(l, 0);
        let exp = e2 + bl as i64;
        if !(EXP_MIN..=EXP_MAX).contains(&exp) {
            return Err(Error::Range);
        }
        Ok(BigFloat { sign: sign.signum(), exp, frac, prec })
    }

    pub fn from_nat(m: &Nat, prec: usize) -> Result<Self> {
        Self::from_parts(1, m.clone(), 0, prec)
    }

    pub fn from_u64(v: u64, prec: usize) -> Self {
        Self::from_parts(1, Nat::from(v), 0, prec).expect("small integer in range")
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        let x = Self::from_u64(v.unsigned_abs(), prec);
        if v < 0 {
            x.neg()
        } else {
            x
        }
    }

    /// Exact conversion of a finite `f64`, truncated to `prec` bits.
    pub fn from_f64(v: f64, prec: usize) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain(format!("non-finite value {v}")));
        }
        if v == 0.0 {
            return Ok(Self::zero(prec));
        }
        let bits = v.abs().to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let (m, e2) = if raw_exp == 0 {
            (bits & ((1 << 52) - 1), -1074)
        } else {
            ((bits & ((1 << 52) - 1)) | (1 << 52), raw_exp - 1075)
        };
        Self::from_parts(if v < 0.0 { -1 } else { 1 }, Nat::from(m), e2, prec)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn fraction_limbs(&self) -> &[Limb] {
        &self.frac
    }

    /// `(sign, m, e2)` with `x = sign · m · 2^e2` and `m` an integer.
    pub fn to_parts(&self) -> (i8, Nat, i64) {
        if self.is_zero() {
            return (0, Nat::zero(), 0);
        }
        let m = Nat::from_limbs(self.frac.clone());
        (self.sign, m, self.exp - (self.frac.len() * LIMB_BITS) as i64)
    }

    /// Like `to_parts` but with trailing zero bits stripped from `m`.
    pub fn to_parts_compact(&self) -> (i8, Nat, i64) {
        let (s, m, e2) = self.to_parts();
        match m.trailing_zeros() {
            Some(tz) => (s, m.shr(tz), e2 + tz as i64),
            None => (s, m, e2),
        }
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.sign = r.sign.abs();
        r
    }

    /// Same value carried at a new precision (truncating if smaller).
    pub fn with_prec(&self, prec: usize) -> Self {
        self.round_to(prec)
    }

    /// Truncates the fraction to `prec` bits.
    pub fn round_to(&self, prec: usize) -> Self {
        let (s, m, e2) = self.to_parts();
        Self::from_parts(s, m, e2, prec).expect("truncation keeps the exponent")
    }

    pub fn normalize(&self) -> Self {
        self.round_to(self.prec)
    }

    /// Exact multiplication by `2^k`.
    pub fn shift2(&self, k: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let exp = self.exp.checked_add(k).ok_or(Error::Range)?;
        if !(EXP_MIN..=EXP_MAX).contains(&exp) {
            return Err(Error::Range);
        }
        let mut r = self.clone();
        r.exp = exp;
        Ok(r)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        if self.exp != other.exp {
            return self.exp.cmp(&other.exp);
        }
        let n = self.frac.len().max(other.frac.len());
        for i in 0..n {
            let a = top_limb(&self.frac, i);
            let b = top_limb(&other.frac, i);
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }

    pub fn add(&self, other: &Self, prec: usize) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.round_to(prec));
        }
        if self.is_zero() {
            return Ok(other.round_to(prec));
        }
        // Order so that |x| >= |y| by exponent.
        let (x, y) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let (xs, xm, xe2) = x.to_parts();
        let lowest = (x.exp - prec as i64).min(xe2) - 2;
        let (ys, ym, ye2) = if y.exp <= lowest {
            // Far below the last kept bit: only its sign matters for truncation.
            (y.sign, Nat::one(), lowest - 1)
        } else {
            y.to_parts()
        };
        let e2 = xe2.min(ye2);
        let xm = xm.shl((xe2 - e2) as usize);
        let ym = ym.shl((ye2 - e2) as usize);
        if xs == ys {
            return Self::from_parts(xs, xm.add(&ym), e2, prec);
        }
        match xm.cmp(&ym) {
            Ordering::Equal => Ok(Self::zero(prec)),
            Ordering::Greater => Self::from_parts(xs, xm.sub(&ym), e2, prec),
            Ordering::Less => Self::from_parts(ys, ym.sub(&xm), e2, prec),
        }
    }

    pub fn sub(&self, other: &Self, prec: usize) -> Result<Self> {
        self.add(&other.neg(), prec)
    }

    pub fn mul_word(&self, s: u64, prec: usize) -> Result<Self> {
        if s == 0 {
            return Ok(Self::zero(prec));
        }
        let (sg, m, e2) = self.to_parts();
        Self::from_parts(sg, m.mul_word(s), e2, prec)
    }

    pub fn div_word(&self, s: u64, prec: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(prec));
        }
        let (sg, m, e2) = self.to_parts();
        let extra = (prec + LIMB_BITS + 2).saturating_sub(m.bit_len()) + LIMB_BITS;
        let (q, _) = m.shl(extra).divrem_word(s);
        Self::from_parts(sg, q, e2 - extra as i64, prec)
    }

    /// Nearest `f64` (may overflow to infinity or flush to zero).
    pub fn to_f64_lossy(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let top = self.frac[self.frac.len() - 1];
        let next = if self.frac.len() > 1 { self.frac[self.frac.len() - 2] } else { 0 };
        let v = (top as f64 + next as f64 / 18446744073709551616.0) / 18446744073709551616.0;
        let scaled = ldexp(v, self.exp);
        if self.sign < 0 {
            -scaled
        } else {
            scaled
        }
    }

    /// Fraction in `[0.5, 1)` as `f64` together with the exponent.
    pub fn frexp(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let top = self.frac[self.frac.len() - 1];
        let f = top as f64 / 18446744073709551616.0;
        (if self.sign < 0 { -f } else { f }, self.exp)
    }

    /// Truncation toward zero to an integer; `None` if too large for `i64`.
    pub fn trunc_i64(&self) -> Option<i64> {
        if self.is_zero() || self.exp <= 0 {
            return Some(0);
        }
        if self.exp > 63 {
            return None;
        }
        let (s, m, e2) = self.to_parts();
        let v = m.shr((-e2) as usize).to_u64()? as i64;
        Some(if s < 0 { -v } else { v })
    }

    /// Integer part of `|x|` as a natural number.
    pub fn trunc_nat(&self) -> Nat {
        let (_, m, e2) = self.to_parts();
        if e2 >= 0 {
            m.shl(e2 as usize)
        } else {
            m.shr((-e2) as usize)
        }
    }

    /// Bits of `|x - y|` measured as `-log2|x - y|`, or `f64::INFINITY` if equal.
    pub fn agreement_bits(&self, other: &Self) -> f64 {
        let p = self.prec.max(other.prec) + 64;
        let d = self.sub(other, p).expect("difference in range");
        if d.is_zero() {
            return f64::INFINITY;
        }
        let (f, e) = d.frexp();
        -(f.abs().log2() + e as f64)
    }

    /// Relative agreement `-log2(|x - y| / |y|)`.
    pub fn rel_agreement_bits(&self, reference: &Self) -> f64 {
        if reference.is_zero() {
            return self.agreement_bits(reference);
        }
        let (f, e) = reference.frexp();
        self.agreement_bits(reference) + f.abs().log2() + e as f64
    }
}

fn top_limb(frac: &[Limb], i: usize) -> Limb {
    if i < frac.len() {
        frac[frac.len() - 1 - i]
    } else {
        0
    }
}

/// `v · 2^e` without intermediate overflow or premature flush to zero.
pub(crate) fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(cmp(self, other))
    }
}

/// Total order consistent with the real values (precision is ignored).
pub fn cmp(x: &BigFloat, y: &BigFloat) -> Ordering {
    match x.sign.cmp(&y.sign) {
        Ordering::Equal => {}
        o => return o,
    }
    match x.sign {
        0 => Ordering::Equal,
        1 => x.cmp_abs(y),
        _ => y.cmp_abs(x),
    }
}

pub fn add(x: &BigFloat, y: &BigFloat, p: Precision) -> Result<BigFloat> {
    x.add(y, p.n)
}

pub fn sub(x: &BigFloat, y: &BigFloat, p: Precision) -> Result<BigFloat> {
    x.sub(y, p.n)
}

pub fn mul_word(x: &BigFloat, s: u64, p: Precision) -> Result<BigFloat> {
    x.mul_word(s, p.n)
}

pub fn div_word(x: &BigFloat, s: u64, p: Precision) -> Result<BigFloat> {
    x.div_word(s, p.n)
}

pub fn shift2(x: &BigFloat, k: i64) -> Result<BigFloat> {
    x.shift2(k)
}

pub fn round_to(x: &BigFloat, p: Precision) -> BigFloat {
    x.round_to(p.n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigFloat {
        BigFloat::from_i64(v, 64)
    }

    #[test]
    fn small_integer_arithmetic() {
        assert_eq!(int(1).add(&int(1), 64).unwrap(), int(2));
        assert_eq!(int(3).sub(&int(1), 64).unwrap(), int(2));
        assert!(int(5).sub(&int(5), 64).unwrap().is_zero());
        let half = BigFloat::from_f64(0.5, 64).unwrap();
        assert_eq!(half.mul_word(6, 64).unwrap(), int(3));
        assert_eq!(int(1).shift2(3).unwrap(), int(8));
        assert_eq!(cmp(&int(1), &int(2)), Ordering::Less);
        assert_eq!(cmp(&int(-3), &int(2)), Ordering::Less);
        assert_eq!(cmp(&int(-3), &int(-2)), Ordering::Less);
    }

    #[test]
    fn zero_is_unique() {
        let z = int(7).sub(&int(7), 128).unwrap();
        assert_eq!(z.sign(), 0);
        assert!(z.fraction_limbs().is_empty());
    }

    #[test]
    fn tiny_operand_is_absorbed() {
        let tiny = BigFloat::from_parts(1, Nat::one(), -80, 64).unwrap();
        assert_eq!(int(1).add(&tiny, 64).unwrap(), int(1));
        // Opposite sign drops one unit at the 64th bit.
        let r = int(1).sub(&tiny, 64).unwrap();
        assert!(r < int(1));
        assert_eq!(r.exponent(), 0);
        assert_eq!(r.fraction_limbs(), &[u64::MAX]);
    }

    #[test]
    fn huge_gap_absorbed_without_allocation() {
        let tiny = BigFloat::from_parts(1, Nat::one(), -1_000_000_000, 64).unwrap();
        assert_eq!(int(1).add(&tiny, 64).unwrap(), int(1));
    }

    #[test]
    fn div_word_third() {
        let t = int(1).div_word(3, 64).unwrap();
        assert_eq!(t.exponent(), -1);
        assert_eq!(t.fraction_limbs(), &[0xAAAA_AAAA_AAAA_AAAA]);
        assert_eq!(int(1).div_word(0, 64), Err(Error::DivisionByZero));
    }

    #[test]
    fn exponent_overflow_errors() {
        let big = int(1).shift2(EXP_MAX - 1).unwrap();
        assert_eq!(big.shift2(10), Err(Error::Range));
        assert_eq!(big.mul_word(1 << 20, 64), Err(Error::Range));
    }

    #[test]
    fn round_to_bits() {
        let x = BigFloat::from_parts(1, Nat::from(0b1011_0111u64), 0, 8).unwrap();
        assert_eq!(x.round_to(8), x);
        assert_eq!(x.round_to(4), BigFloat::from_u64(0b1011_0000, 4));
        assert_eq!(x.round_to(4).prec(), 4);
    }

    #[test]
    fn f64_roundtrip() {
        for v in [1.0, -2.5, 1e-300, 3.141592653589793, 5e-324] {
            let x = BigFloat::from_f64(v, 64).unwrap();
            assert_eq!(x.to_f64_lossy(), v);
        }
        assert_eq!(BigFloat::from_i64(-42, 64).trunc_i64(), Some(-42));
    }
}
