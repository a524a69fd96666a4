//! The constants e and π.

use super::isqrt;
use super::series::{atan_recip_bits, e_factorial_bits};
use crate::bigfrac::{BigFloat, Precision};
use crate::error::{Error, Result};
use crate::mulkernel::square_bits;

/// `e` by the factorial series.
pub fn const_e(p: Precision) -> Result<BigFloat> {
    const_e_direct(p)
}

/// `Σ 1/j!` by binary splitting.
pub fn const_e_direct(p: Precision) -> Result<BigFloat> {
    Ok(e_factorial_bits(p.working())?.round_to(p.n))
}

/// `(Σ 1/(j! 2^(mj)))^(2^m)` with `m = ⌊√n⌋`: every series term costs only a
/// short division and the `m` squarings cost `m` multiplications.
pub fn const_e_scaled(p: Precision) -> Result<BigFloat> {
    let n = p.working();
    let m = isqrt(n);
    // Each squaring doubles the relative error.
    let wp = n + m + 8;
    let mut term = BigFloat::from_u64(1, wp);
    let mut sum = term.clone();
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = term.div_word(j, wp)?.shift2(-(m as i64))?;
        if term.exponent() < -(wp as i64) - 2 {
            break;
        }
        sum = sum.add(&term, wp)?;
    }
    for _ in 0..m {
        sum = square_bits(&sum, wp)?;
    }
    Ok(sum.round_to(p.n))
}

/// `e` both ways; disagreement beyond `2^-(n-2)` is a cross-check error.
pub fn const_e_checked(p: Precision) -> Result<BigFloat> {
    let a = const_e_direct(p)?;
    let b = const_e_scaled(p)?;
    agree("e", &a, &b, p.n)?;
    Ok(a)
}

/// `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn const_pi(p: Precision) -> Result<BigFloat> {
    let wp = p.working() + 6;
    let a = atan_recip_bits(5, wp)?.shift2(4)?;
    let b = atan_recip_bits(239, wp)?.shift2(2)?;
    Ok(a.sub(&b, wp)?.round_to(p.n))
}

/// `π = 4 (atan(1/2) + atan(1/3))`.
pub fn const_pi_alt(p: Precision) -> Result<BigFloat> {
    let wp = p.working() + 4;
    let a = atan_recip_bits(2, wp)?;
    let b = atan_recip_bits(3, wp)?;
    Ok(a.add(&b, wp)?.shift2(2)?.round_to(p.n))
}

pub fn const_pi_checked(p: Precision) -> Result<BigFloat> {
    let a = const_pi(p)?;
    let b = const_pi_alt(p)?;
    agree("pi", &a, &b, p.n)?;
    Ok(a)
}

fn agree(name: &str, a: &BigFloat, b: &BigFloat, n: usize) -> Result<()> {
    let bits = a.rel_agreement_bits(b);
    if bits < n as f64 - 2.0 {
        return Err(Error::CrossCheck(format!("{name}: two methods agree to only {bits:.1} bits")));
    }
    Ok(())
}

pub fn log10_factorial(r: u64) -> f64 {
    (2..=r).map(|i| (i as f64).log10()).sum()
}

/// Smallest `r` with `r! ≥ 10^decimals`: terms of `Σ_{j<r} 1/j!` needed for
/// `e` to `decimals` places.
pub fn e_terms_direct(decimals: u64) -> u64 {
    e_terms_scaled(decimals, 0)
}

/// Smallest `r` with `r! · 2^(m(r-1)) ≥ 10^decimals`: terms of
/// `Σ_{j<r} 1/(j! 2^(mj))` needed before raising to the `2^m`-th power,
/// which multiplies the series' relative error by `2^m`.
pub fn e_terms_scaled(decimals: u64, m: u64) -> u64 {
    let l2 = 2f64.log10();
    let mut lf = 0.0;
    let mut r: u64 = 1;
    while lf + (m * (r - 1)) as f64 * l2 < decimals as f64 {
        r += 1;
        lf += (r as f64).log10();
    }
    r
}
