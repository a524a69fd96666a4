//! ln as the inverse of exp by a discrete Newton iteration.

use super::exp::exp_core;
use super::{check_range, Domain};
use crate::bigfrac::{BigFloat, Precision};
use crate::error::{Error, Result};
use crate::newton::{div_bits, schedule_to};

const START_BITS: usize = 32;

/// `ln(x)` with the default domain.
pub fn ln(x: &BigFloat, p: Precision) -> Result<BigFloat> {
    ln_on(x, p, &Domain::default())
}

/// Solves `exp(z) − x = 0`. At a level of `m` bits the derivative is replaced
/// by the difference quotient with step `h = 2^-⌈m/2⌉`, which is accurate to
/// about `m/2` bits; that suffices because the correction is itself of size
/// `2^-(m/2)`. The error is absolute, which matters only near `x = 1`.
pub fn ln_on(x: &BigFloat, p: Precision, dom: &Domain) -> Result<BigFloat> {
    if x.sign() <= 0 {
        return Err(Error::Domain("ln needs x > 0".into()));
    }
    check_range("ln", x, dom.ln)?;
    let one = BigFloat::from_u64(1, 1);
    if x.cmp_abs(&one).is_eq() {
        return Ok(BigFloat::zero(p.n));
    }
    let n = p.working() + 4;
    let mut z = BigFloat::from_f64(x.to_f64_lossy().ln(), START_BITS)?;
    let sched = schedule_to(n, 2, START_BITS);
    for &m in &sched.levels[1..] {
        let wm = m + 8;
        let k = m.div_ceil(2) as i64;
        let h = BigFloat::from_u64(1, 1).shift2(-k)?;
        let zh = z.add(&h, wm + k as usize + 8)?;
        let e0 = exp_core(&z, wm)?;
        let e1 = exp_core(&zh, wm)?;
        let psi = e0.sub(x, wm)?;
        if psi.is_zero() {
            continue;
        }
        let mu = e1.sub(&e0, wm)?.shift2(k)?;
        z = z.sub(&div_bits(&psi, &mu, wm)?, wm)?;
    }
    Ok(z.round_to(p.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_small_values() {
        let p = Precision::new(64);
        assert!(ln(&BigFloat::from_u64(1, 64), p).unwrap().is_zero());
        for v in [2.0, 0.5, 1.0001, 200.0, 0.004] {
            let l = ln(&BigFloat::from_f64(v, 64).unwrap(), p).unwrap();
            assert!((l.to_f64_lossy() - v.ln()).abs() < 1e-15, "{v}");
        }
        assert!(matches!(ln(&BigFloat::from_i64(-1, 64), p), Err(Error::Domain(_))));
        assert!(ln(&BigFloat::from_u64(1000, 64), p).is_err());
    }
}
