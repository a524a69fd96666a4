//! exp by argument halving and squaring, plus the binary-splitting variant.

use super::series::exp_rational_bits;
use super::{check_range, clog2, isqrt, Domain};
use crate::bigfrac::{BigFloat, Precision};
use crate::error::{Error, Result};
use crate::mulkernel::{mul_bits, square_bits};
use crate::nat::Nat;
use crate::newton::recip_bits;

/// `exp(x)` with the default domain.
pub fn exp(x: &BigFloat, p: Precision) -> Result<BigFloat> {
    exp_on(x, p, &Domain::default())
}

pub fn exp_on(x: &BigFloat, p: Precision, dom: &Domain) -> Result<BigFloat> {
    check_range("exp", x, dom.exp)?;
    Ok(exp_core(x, p.working())?.round_to(p.n))
}

/// `exp(x)` to about `n` bits, returned at a few more.
pub(crate) fn exp_core(x: &BigFloat, n: usize) -> Result<BigFloat> {
    if x.is_zero() {
        return Ok(BigFloat::from_u64(1, n));
    }
    let q = isqrt(n);
    // The last few squarings of a large ε lose up to four bits.
    let wp = n + clog2(q) + 12;
    let y = x.abs().shift2(-(q as i64))?.round_to(wp);

    // ε = exp(y) − 1 = y + y²/2! + ...
    let mut term = y.clone();
    let mut eps = y.clone();
    let mut j: u64 = 1;
    loop {
        j += 1;
        term = mul_bits(&term, &y, wp)?.div_word(j, wp)?;
        if term.is_zero() || term.exponent() < eps.exponent() - wp as i64 - 2 {
            break;
        }
        eps = eps.add(&term, wp)?;
    }
    // (1+ε)² − 1 = 2ε + ε².
    for _ in 0..q {
        eps = eps.shift2(1)?.add(&square_bits(&eps, wp)?, wp)?;
    }
    let e = eps.add(&BigFloat::from_u64(1, wp), wp)?;
    if x.sign() < 0 {
        recip_bits(&e, wp)
    } else {
        Ok(e)
    }
}

/// `exp(pnum/qden)` by binary splitting; requires `pnum² ≤ qden ≤ 2^n`.
pub fn exp_rational(pnum: &Nat, qden: &Nat, p: Precision) -> Result<BigFloat> {
    if qden.is_zero() {
        return Err(Error::Domain("exp_rational denominator is zero".into()));
    }
    if pnum.square() > *qden {
        return Err(Error::Domain("exp_rational needs p^2 <= q".into()));
    }
    if *qden > Nat::pow2(p.n) {
        return Err(Error::Domain(format!("exp_rational needs q <= 2^{}", p.n)));
    }
    Ok(exp_rational_bits(pnum, qden, p.working())?.round_to(p.n))
}

/// `x = Σ p_i / 2^(2^i)` with `p_i < 2^(2^(i-1))`; term `i` holds fraction
/// bits `2^(i-1)+1 ..= 2^i` (term 0 holds the first bit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicDecomposition {
    /// `(p_i, i)` for nonzero `p_i`; the denominator is `2^(2^i)`.
    pub terms: Vec<(Nat, usize)>,
}

impl DyadicDecomposition {
    /// Splits `x ∈ [0, 1)`.
    pub fn new(x: &BigFloat) -> Result<Self> {
        if x.sign() < 0 || x.exponent() > 0 {
            return Err(Error::Domain("exp_fast needs x in [0, 1)".into()));
        }
        if x.is_zero() {
            return Ok(DyadicDecomposition { terms: Vec::new() });
        }
        let (_, m, e2) = x.to_parts_compact();
        let f = (-e2) as usize;
        let k = clog2(f);
        let top = 1usize << k;
        let xx = m.shl(top - f);
        let mut terms = Vec::new();
        for i in 0..=k {
            let (hi, width) = if i == 0 { (1, 1) } else { (1usize << i, 1usize << (i - 1)) };
            let pi = xx.shr(top - hi).low_bits(width);
            if !pi.is_zero() {
                terms.push((pi, i));
            }
        }
        Ok(DyadicDecomposition { terms })
    }

    /// `2^(2^i)`.
    pub fn denominator(i: usize) -> Nat {
        Nat::pow2(1 << i)
    }

    /// The exact sum of the terms.
    pub fn reconstruct(&self) -> Result<BigFloat> {
        let k = self.terms.iter().map(|t| t.1).max().unwrap_or(0);
        let top = 1usize << k;
        let mut acc = Nat::zero();
        for (pi, i) in &self.terms {
            acc = acc.add(&pi.shl(top - (1 << i)));
        }
        BigFloat::from_parts(1, acc, -(top as i64), top + 1)
    }
}

/// `exp(x)` for `x ∈ [0, 1)` as a product of `exp(p_i/q_i)`.
pub fn exp_fast(x: &BigFloat, p: Precision) -> Result<BigFloat> {
    let d = DyadicDecomposition::new(x)?;
    let wp = p.working() + clog2(d.terms.len() + 2) + 4;
    let mut acc = BigFloat::from_u64(1, wp);
    for (pi, i) in &d.terms {
        let t = exp_rational_bits(pi, &DyadicDecomposition::denominator(*i), wp)?;
        acc = mul_bits(&acc, &t, wp)?;
    }
    Ok(acc.round_to(p.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_basics() {
        let p = Precision::new(64);
        assert_eq!(exp(&BigFloat::zero(64), p).unwrap(), BigFloat::from_u64(1, 64));
        for v in [1.0, -1.0, 0.3, 7.5, -8.0] {
            let e = exp(&BigFloat::from_f64(v, 64).unwrap(), p).unwrap();
            assert!((e.to_f64_lossy() / v.exp() - 1.0).abs() < 1e-15, "{v}");
        }
        assert!(matches!(exp(&BigFloat::from_u64(9, 64), p), Err(Error::Domain(_))));
    }

    #[test]
    fn decomposition_of_0_1101() {
        let x = BigFloat::from_f64(0.8125, 8).unwrap();
        let d = DyadicDecomposition::new(&x).unwrap();
        // 1/2 + 1/4 + 1/16: bits 1, 2 and the pair 3..4 = 01.
        assert_eq!(d.terms, vec![(Nat::one(), 0), (Nat::one(), 1), (Nat::one(), 2)]);
        assert_eq!(d.reconstruct().unwrap(), x.round_to(5));
        for (pi, i) in &d.terms {
            assert!(pi.square() <= DyadicDecomposition::denominator(*i));
        }
    }

    #[test]
    fn rational_preconditions() {
        let p = Precision::new(16);
        assert!(exp_rational(&Nat::from(3u64), &Nat::from(8u64), p).is_err());
        assert!(exp_rational(&Nat::one(), &Nat::pow2(17), p).is_err());
        assert_eq!(exp_rational(&Nat::zero(), &Nat::one(), p).unwrap(), BigFloat::from_u64(1, 16));
    }
}
