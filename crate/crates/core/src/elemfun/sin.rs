//! sin by argument halving, and arctangents of reciprocal integers.

use super::series::atan_recip_bits;
use super::{check_range, clog2, isqrt, Domain};
use crate::bigfrac::{BigFloat, Precision};
use crate::error::Result;
use crate::mulkernel::{mul_bits, square_bits};

/// `sin(x)` with the default domain.
pub fn sin(x: &BigFloat, p: Precision) -> Result<BigFloat> {
    sin_on(x, p, &Domain::default())
}

/// Evaluates `s = sin(x/2^q)` and `v = 1 − cos(x/2^q)` by series, then
/// doubles `q` times with `sin 2t = 2s(1 − v)`, `1 − cos 2t = 2s²`. Carrying
/// the versine keeps the sign of the cosine without a square root.
pub fn sin_on(x: &BigFloat, p: Precision, dom: &Domain) -> Result<BigFloat> {
    check_range("sin", x, dom.sin)?;
    if x.is_zero() {
        return Ok(BigFloat::zero(p.n));
    }
    let n = p.working();
    let q = isqrt(n);
    let wp = n + 2 * clog2(q) + 16;
    let t = x.shift2(-(q as i64))?.round_to(wp);
    let t2 = square_bits(&t, wp)?;

    let mut s = t.clone();
    let mut v = BigFloat::zero(wp);
    // term = t^j / j!, alternately feeding v (even j) and s (odd j).
    let mut term = t.clone();
    let mut j: u64 = 1;
    loop {
        j += 1;
        term = mul_bits(&term, &t, wp)?.div_word(j, wp)?;
        let positive = ((j / 2) % 2 == 1) == (j % 2 == 0);
        let signed = if positive { term.clone() } else { term.neg() };
        if j % 2 == 0 {
            v = v.add(&signed, wp)?;
        } else {
            s = s.add(&signed, wp)?;
        }
        if term.is_zero() || term.exponent() < t2.exponent().min(t.exponent()) - wp as i64 - 4 {
            break;
        }
    }
    for _ in 0..q {
        let sv = mul_bits(&s, &v, wp)?;
        v = square_bits(&s, wp)?.shift2(1)?;
        s = s.sub(&sv, wp)?.shift2(1)?;
    }
    Ok(s.round_to(p.n))
}

/// `atan(1/j)` for integer `j ≥ 2` by binary splitting.
pub fn atan_recip(j: u64, p: Precision) -> Result<BigFloat> {
    Ok(atan_recip_bits(j, p.working())?.round_to(p.n))
}
