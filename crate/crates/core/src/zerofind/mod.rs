//! Zero finders whose function evaluations run at varying precision, and the
//! analytic constants that predict their total evaluation cost.

pub mod constants;
mod solvers;

pub use constants::*;
pub use solvers::*;

use crate::bigfrac::{BigFloat, Precision};
use crate::costs::{CostLedger, OpClass};
use crate::elemfun;
use crate::error::{Error, Result};
use crate::mulkernel::{mul_bits, square_bits};
use crate::newton;

/// A real function evaluated to a requested absolute accuracy.
pub trait MpFunction {
    fn name(&self) -> &str;

    /// `f(x)` with absolute error at most `2^-n`.
    fn eval(&self, x: &BigFloat, n: usize) -> Result<BigFloat>;

    /// Cost exponent `α` assumed for one evaluation.
    fn alpha(&self) -> f64 {
        1.0
    }

    /// Machine-float value, used only to find a starting point.
    fn eval_f64(&self, x: f64) -> f64 {
        BigFloat::from_f64(x, 64)
            .and_then(|b| self.eval(&b, 60))
            .map(|v| v.to_f64_lossy())
            .unwrap_or(f64::NAN)
    }

    /// A point from which the machine-float search converges, if known.
    fn start_hint(&self) -> Option<f64> {
        None
    }
}

/// Evaluates `f` at `n` bits and records an `eval` event.
pub fn charged_eval(f: &dyn MpFunction, x: &BigFloat, n: usize, ledger: &mut Option<&mut CostLedger>) -> Result<BigFloat> {
    if let Some(l) = ledger.as_deref_mut() {
        l.charge(OpClass::Eval, n);
    }
    f.eval(x, n)
}

/// Built-in test functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Catalog {
    /// `x² − 2`
    Sq2,
    /// `x³ − 2`
    Cube2,
    /// `exp(x) − 2`
    Exp2,
    /// `sin(x) − 1/2`
    SinHalf,
}

impl Catalog {
    pub const ALL: [Catalog; 4] = [Catalog::Sq2, Catalog::Cube2, Catalog::Exp2, Catalog::SinHalf];

    pub fn parse(s: &str) -> Result<Self> {
        Catalog::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown function {s:?}")))
    }

    /// The zero to `p.n` bits, computed without any zero finder.
    pub fn reference_root(self, p: Precision) -> Result<BigFloat> {
        let wp = Precision::new(p.working() + 8);
        let two = BigFloat::from_u64(2, 2);
        let r = match self {
            Catalog::Sq2 => newton::sqrt(&two, wp, newton::Variant::Rsqrt3)?,
            Catalog::Cube2 => elemfun::exp(&elemfun::ln(&two, wp)?.div_word(3, wp.working())?, wp)?,
            Catalog::Exp2 => elemfun::ln(&two, wp)?,
            Catalog::SinHalf => elemfun::const_pi(wp)?.div_word(6, wp.working())?,
        };
        Ok(r.round_to(p.n))
    }
}

/// Bits of `x` above the binary point, at least zero.
fn int_bits(x: &BigFloat) -> usize {
    x.exponent().max(0) as usize
}

impl MpFunction for Catalog {
    fn name(&self) -> &str {
        match self {
            Catalog::Sq2 => "sq2",
            Catalog::Cube2 => "cube2",
            Catalog::Exp2 => "exp2",
            Catalog::SinHalf => "sinhalf",
        }
    }

    fn eval(&self, x: &BigFloat, n: usize) -> Result<BigFloat> {
        let e = int_bits(x);
        match self {
            Catalog::Sq2 => {
                let wp = n + 2 * e + 8;
                let xr = x.round_to(wp);
                square_bits(&xr, wp)?.sub(&BigFloat::from_u64(2, 2), wp)
            }
            Catalog::Cube2 => {
                let wp = n + 3 * e + 8;
                let xr = x.round_to(wp);
                mul_bits(&square_bits(&xr, wp)?, &xr, wp)?.sub(&BigFloat::from_u64(2, 2), wp)
            }
            Catalog::Exp2 => {
                // |exp(x)| < 2^12 on the default domain.
                let xr = x.round_to(n + e + 20);
                elemfun::exp(&xr, Precision::new(n + 16))?.sub(&BigFloat::from_u64(2, 2), n + 16)
            }
            Catalog::SinHalf => {
                let xr = x.round_to(n + e + 8);
                elemfun::sin(&xr, Precision::new(n + 8))?.sub(&BigFloat::from_f64(0.5, 1)?, n + 8)
            }
        }
    }

    fn eval_f64(&self, x: f64) -> f64 {
        match self {
            Catalog::Sq2 => x * x - 2.0,
            Catalog::Cube2 => x * x * x - 2.0,
            Catalog::Exp2 => x.exp() - 2.0,
            Catalog::SinHalf => x.sin() - 0.5,
        }
    }

    fn start_hint(&self) -> Option<f64> {
        Some(match self {
            Catalog::Sq2 => 1.5,
            Catalog::Cube2 => 1.25,
            Catalog::Exp2 => 0.7,
            Catalog::SinHalf => 0.5,
        })
    }
}
