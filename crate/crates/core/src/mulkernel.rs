//! Full-precision multiplication: schoolbook, Karatsuba, and a dispatcher.
//!
//! Both algorithms form the exact double-length product and then truncate, so
//! they agree bit for bit. Limb work (single-word multiplications) can be
//! counted through an explicit counter for growth-rate measurements.

use crate::bigfrac::{BigFloat, Precision};
use crate::costs::{CostLedger, OpClass};
use crate::error::Result;
use crate::nat::{add_assign_slices, add_slices, sub_assign_slices, trim, Limb, Nat};

/// Digit count at or below which Karatsuba falls back to schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Schoolbook product of two limb slices; `work` accumulates word products.
pub fn school_limbs(a: &[Limb], b: &[Limb], work: &mut u64) -> Vec<Limb> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut carry: u128 = 0;
        for (j, &bj) in b.iter().enumerate() {
            let t = ai as u128 * bj as u128 + out[i + j] as u128 + carry;
            out[i + j] = t as u64;
            carry = t >> 64;
        }
        out[i + b.len()] = carry as u64;
    }
    *work += (a.len() * b.len()) as u64;
    out
}

/// Karatsuba product with schoolbook leaves at `threshold` digits.
pub fn karatsuba_limbs(a: &[Limb], b: &[Limb], threshold: usize, work: &mut u64) -> Vec<Limb> {
    let threshold = threshold.max(1);
    let mut out = vec![0; a.len() + b.len()];
    kara_into(a, b, threshold, work, &mut out);
    out
}

fn kara_into(a: &[Limb], b: &[Limb], t: usize, work: &mut u64, out: &mut [Limb]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if b.len() <= t {
        let p = school_limbs(a, b, work);
        add_assign_slices(out, &p);
        return;
    }
    if 2 * b.len() <= a.len() {
        // Unbalanced: multiply b against a in chunks of b's size.
        let mut off = 0;
        while off < a.len() {
            let end = (off + b.len()).min(a.len());
            let mut part = vec![0; end - off + b.len()];
            kara_into(&a[off..end], b, t, work, &mut part);
            trim(&mut part);
            add_assign_slices(&mut out[off..], &part);
            off = end;
        }
        return;
    }
    let h = a.len().div_ceil(2);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h.min(b.len()));

    let mut z0 = vec![0; a0.len() + b0.len()];
    kara_into(a0, b0, t, work, &mut z0);
    let mut z2 = vec![0; a1.len() + b1.len()];
    kara_into(a1, b1, t, work, &mut z2);
    trim(&mut z0);
    trim(&mut z2);

    // One extra digit absorbs the carry out of each half-sum.
    let sa = add_slices(a0, a1);
    let sb = add_slices(b0, b1);
    let sa = &sa[..sa.iter().rposition(|&l| l != 0).map_or(0, |i| i + 1)];
    let sb = &sb[..sb.iter().rposition(|&l| l != 0).map_or(0, |i| i + 1)];
    let mut z1 = vec![0; sa.len() + sb.len() + 1];
    kara_into(sa, sb, t, work, &mut z1);
    sub_assign_slices(&mut z1, &z0);
    sub_assign_slices(&mut z1, &z2);
    trim(&mut z1);

    add_assign_slices(out, &z0);
    add_assign_slices(&mut out[h..], &z1);
    add_assign_slices(&mut out[2 * h..], &z2);
}

/// Exact product used by `Nat`; dispatches on size without counting.
pub fn mul_limbs(a: &[Limb], b: &[Limb]) -> Vec<Limb> {
    let mut work = 0;
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        school_limbs(a, b, &mut work)
    } else {
        karatsuba_limbs(a, b, KARATSUBA_THRESHOLD, &mut work)
    }
}

fn product(x: &BigFloat, y: &BigFloat, prec: usize, m: impl FnOnce(&[Limb], &[Limb]) -> Vec<Limb>) -> Result<BigFloat> {
    if x.is_zero() || y.is_zero() {
        return Ok(BigFloat::zero(prec));
    }
    let (xs, xm, xe) = x.to_parts();
    let (ys, ym, ye) = y.to_parts();
    let p = Nat::from_limbs(m(xm.limbs(), ym.limbs()));
    BigFloat::from_parts(xs * ys, p, xe + ye, prec)
}

pub fn mul_school_bits(x: &BigFloat, y: &BigFloat, prec: usize, work: &mut u64) -> Result<BigFloat> {
    product(x, y, prec, |a, b| school_limbs(a, b, work))
}

pub fn mul_karatsuba_bits(x: &BigFloat, y: &BigFloat, prec: usize, threshold: usize, work: &mut u64) -> Result<BigFloat> {
    product(x, y, prec, |a, b| karatsuba_limbs(a, b, threshold, work))
}

/// Product truncated to `prec` bits, dispatching on operand size.
pub fn mul_bits(x: &BigFloat, y: &BigFloat, prec: usize) -> Result<BigFloat> {
    product(x, y, prec, mul_limbs)
}

pub fn square_bits(x: &BigFloat, prec: usize) -> Result<BigFloat> {
    mul_bits(x, x, prec)
}

pub fn mul_school(x: &BigFloat, y: &BigFloat, p: Precision) -> Result<BigFloat> {
    mul_school_bits(x, y, p.n, &mut 0)
}

pub fn mul_karatsuba(x: &BigFloat, y: &BigFloat, p: Precision) -> Result<BigFloat> {
    mul_karatsuba_bits(x, y, p.n, KARATSUBA_THRESHOLD, &mut 0)
}

pub fn mul(x: &BigFloat, y: &BigFloat, p: Precision) -> Result<BigFloat> {
    mul_bits(x, y, p.n)
}

pub fn square(x: &BigFloat, p: Precision) -> Result<BigFloat> {
    square_bits(x, p.n)
}

/// `x·y` from two squarings: `4λxy = (x+λy)² − (x−λy)²` with `λ` a power of
/// two bringing `λy` within a factor of two of `x`. Charges two squarings at
/// `n` and the additions to `ledger` when given.
pub fn mul_via_squares(x: &BigFloat, y: &BigFloat, p: Precision, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    let n = p.n;
    if let Some(l) = ledger.as_deref_mut() {
        l.charge(OpClass::Add, n);
        l.charge(OpClass::Add, n);
        l.charge(OpClass::Square, n);
        l.charge(OpClass::Square, n);
        l.charge(OpClass::Add, n);
    }
    if x.is_zero() || y.is_zero() {
        return Ok(BigFloat::zero(n));
    }
    let k = x.exponent() - y.exponent();
    let wp = n + p.guard + 4;
    let ly = y.shift2(k)?;
    let s = x.add(&ly, wp)?;
    let d = x.sub(&ly, wp)?;
    let s2 = square_bits(&s, wp)?;
    let d2 = square_bits(&d, wp)?;
    Ok(s2.sub(&d2, wp)?.shift2(-k - 2)?.round_to(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn karatsuba_digit_example() {
        // Two-digit numbers in base 2^64: (1 + 2B)(3 + 4B).
        let a = [1u64, 2];
        let b = [3u64, 4];
        let mut w = 0;
        let k = karatsuba_limbs(&a, &b, 1, &mut w);
        // m1 = 3, m2 = 8, m3 = 21 so the middle digit is 10.
        assert_eq!(k, vec![3, 10, 8, 0]);
        assert_eq!(w, 3);
        let mut ws = 0;
        assert_eq!(school_limbs(&a, &b, &mut ws), k);
        assert_eq!(ws, 4);
    }

    #[test]
    fn karatsuba_matches_schoolbook_carries() {
        let a = vec![u64::MAX; 77];
        let b = vec![u64::MAX; 41];
        let mut w = 0;
        assert_eq!(karatsuba_limbs(&a, &b, 4, &mut w), school_limbs(&a, &b, &mut w));
        assert_eq!(karatsuba_limbs(&a, &a, 2, &mut w), school_limbs(&a, &a, &mut w));
    }

    #[test]
    fn float_products() {
        let p = Precision::new(64);
        let a = BigFloat::from_f64(1.5, 64).unwrap();
        let two = BigFloat::from_u64(2, 64);
        assert_eq!(mul_school(&a, &two, p).unwrap(), BigFloat::from_u64(3, 64));
        assert!(mul(&BigFloat::zero(64), &a, p).unwrap().is_zero());
        assert_eq!(square(&BigFloat::from_u64(3, 64), p).unwrap(), BigFloat::from_u64(9, 64));
        assert_eq!(mul_karatsuba(&a, &BigFloat::from_u64(1, 64), p).unwrap(), a);
    }

    #[test]
    fn via_squares_small() {
        let p = Precision::new(64);
        let a = BigFloat::from_i64(-7, 64);
        let b = BigFloat::from_u64(1000, 64);
        let mut l = CostLedger::new();
        let r = mul_via_squares(&a, &b, p, Some(&mut l)).unwrap();
        assert_eq!(r, BigFloat::from_i64(-7000, 64));
        assert_eq!(l.count(OpClass::Square), 2);
    }
}
