//! Elementary functions, the constants e and π, and decimal conversion.

mod consts;
mod exp;
mod ln;
mod radix;
pub mod series;
mod sin;

pub use consts::{
    const_e, const_e_checked, const_e_direct, const_e_scaled, const_pi, const_pi_alt, const_pi_checked,
    e_terms_direct, e_terms_scaled, log10_factorial,
};
pub use exp::{exp, exp_fast, exp_on, exp_rational, DyadicDecomposition};
pub use ln::{ln, ln_on};
pub use radix::{decimal_to_nat, from_decimal, nat_to_decimal, to_decimal, to_fixed};
pub use sin::{atan_recip, sin, sin_on};

use crate::bigfrac::BigFloat;
use crate::error::{Error, Result};

/// Accepted argument ranges. `exp` and `sin` take `x` in `exp`/`sin`,
/// `ln` takes `x` in `ln`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub exp: (f64, f64),
    pub sin: (f64, f64),
    pub ln: (f64, f64),
}

impl Default for Domain {
    fn default() -> Self {
        Domain { exp: (-8.0, 8.0), sin: (-8.0, 8.0), ln: (1.0 / 256.0, 256.0) }
    }
}

fn check_range(name: &str, x: &BigFloat, (lo, hi): (f64, f64)) -> Result<()> {
    let v = x.to_f64_lossy();
    if !(lo..=hi).contains(&v) {
        return Err(Error::Domain(format!("{name} argument {v:e} outside [{lo}, {hi}]")));
    }
    Ok(())
}

/// `⌊√n⌋`, at least 1.
fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r.max(1)
}

/// `⌈log2 n⌉` for `n ≥ 1`.
fn clog2(n: usize) -> usize {
    (usize::BITS - n.max(1).saturating_sub(1).leading_zeros()) as usize
}
