//! Reciprocal, division, square root and inverse square root by Newton-type
//! iterations whose working precision grows geometrically.
//!
//! Every kernel normalises its operand to an exponent near zero, runs the
//! iteration on the normalised value and shifts the result back, so scaling
//! the input by a power of two scales the output bit for bit.

use crate::bigfrac::{BigFloat, Precision};
use crate::costs::{CostLedger, OpClass};
use crate::error::{Error, Result};
use crate::mulkernel::{mul_bits, square_bits};

/// Extra bits carried at every level beyond the scheduled precision.
pub const LEVEL_GUARD: usize = 3;
/// Guard for the short correction products. The residual can be twice the
/// iterate's relative error and the iterate up to 2, so these need two bits
/// more than the level itself.
const CORR_GUARD: usize = LEVEL_GUARD + 2;
/// Precision of the first schedule level.
pub const START_BITS: usize = 32;
/// The machine-float start keeps all its bits. Truncated to the first level it
/// can fall a bit short, and an order-3 schedule triples that shortfall.
const FLOAT_BITS: usize = 53;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Recip2,
    Recip3,
    Rsqrt3,
    Rsqrt2,
    SqrtNewton,
    DivKm,
    SqrtKm,
}

impl Variant {
    pub const ALL: [Variant; 7] =
        [Variant::Recip2, Variant::Recip3, Variant::Rsqrt3, Variant::Rsqrt2, Variant::SqrtNewton, Variant::DivKm, Variant::SqrtKm];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Recip2 => "recip2",
            Variant::Recip3 => "recip3",
            Variant::Rsqrt3 => "rsqrt3",
            Variant::Rsqrt2 => "rsqrt2",
            Variant::SqrtNewton => "sqrt_newton",
            Variant::DivKm => "div_km",
            Variant::SqrtKm => "sqrt_km",
        }
    }

    /// Convergence order of the underlying iteration.
    pub fn order(self) -> usize {
        match self {
            Variant::Recip3 | Variant::Rsqrt3 => 3,
            _ => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown iteration variant {s:?}")))
    }
}

fn unsupported(op: &str, v: Variant) -> Error {
    Error::Config(format!("variant {} does not apply to {op}", v.name()))
}

/// Ascending working precisions for an iteration of the given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionSchedule {
    pub levels: Vec<usize>,
    pub order: usize,
}

/// Schedule ending at `target` bits: divide by `order` (rounding up) until at
/// or below `start`, then reverse.
pub fn schedule_to(target: usize, order: usize, start: usize) -> PrecisionSchedule {
    assert!(order >= 2, "order must be at least 2");
    let start = start.max(1);
    let mut levels = Vec::new();
    let mut cur = target.max(1);
    while cur > start {
        levels.push(cur);
        cur = cur.div_ceil(order);
    }
    levels.push(start.min(target.max(1)));
    levels.reverse();
    PrecisionSchedule { levels, order }
}

/// Schedule for a result of `p.n` bits; the last level includes the guard bits.
pub fn precision_schedule(p: Precision, order: usize, start: usize) -> PrecisionSchedule {
    schedule_to(p.working(), order, start)
}

fn charge(ledger: &mut Option<&mut CostLedger>, class: OpClass, bits: usize) {
    if let Some(l) = ledger.as_deref_mut() {
        l.charge(class, bits);
    }
}

fn one() -> BigFloat {
    BigFloat::from_u64(1, 1)
}

/// Reciprocal of `a` in `[1/2, 1)` to about `target` bits. Returns the
/// iterate at `target + LEVEL_GUARD` bits.
fn recip_core(
    a: &BigFloat,
    target: usize,
    order: usize,
    ledger: &mut Option<&mut CostLedger>,
    mut iters: Option<&mut Vec<BigFloat>>,
) -> Result<BigFloat> {
    let sched = schedule_to(target, order, START_BITS.min(target));
    let lv = &sched.levels;
    let mut x = BigFloat::from_f64(1.0 / a.to_f64_lossy(), FLOAT_BITS.max(lv[0]))?;
    if let Some(v) = iters.as_deref_mut() {
        v.push(x.clone());
    }
    for w in lv.windows(2) {
        let (prev, m) = (w[0], w[1]);
        let wp = m + LEVEL_GUARD;
        charge(ledger, OpClass::Mul, wp);
        let eps = mul_bits(&a.round_to(wp), &x, wp)?.sub(&one(), wp)?;
        let h2 = m - prev + CORR_GUARD;
        let u = if order == 2 {
            eps.round_to(h2)
        } else {
            // x(ε − ε²): ε² only needs the bits that survive its small size.
            let h1 = m.saturating_sub(2 * prev) + CORR_GUARD;
            charge(ledger, OpClass::Square, h1);
            let e2 = square_bits(&eps.round_to(h1), h1)?;
            eps.sub(&e2, h2)?
        };
        charge(ledger, OpClass::Mul, h2);
        let c = mul_bits(&x.round_to(h2), &u, h2)?;
        x = x.sub(&c, wp)?;
        if let Some(v) = iters.as_deref_mut() {
            v.push(x.clone());
        }
    }
    Ok(x)
}

/// Inverse square root of `a` in `[1/4, 1)`.
fn rsqrt_core(
    a: &BigFloat,
    target: usize,
    order: usize,
    ledger: &mut Option<&mut CostLedger>,
    mut iters: Option<&mut Vec<BigFloat>>,
) -> Result<BigFloat> {
    let sched = schedule_to(target, order, START_BITS.min(target));
    let lv = &sched.levels;
    let mut x = BigFloat::from_f64(1.0 / a.to_f64_lossy().sqrt(), FLOAT_BITS.max(lv[0]))?;
    if let Some(v) = iters.as_deref_mut() {
        v.push(x.clone());
    }
    for w in lv.windows(2) {
        let (prev, m) = (w[0], w[1]);
        let wp = m + LEVEL_GUARD;
        charge(ledger, OpClass::Square, wp);
        let x2 = square_bits(&x, wp)?;
        charge(ledger, OpClass::Mul, wp);
        let eps = mul_bits(&a.round_to(wp), &x2, wp)?.sub(&one(), wp)?;
        let h2 = m - prev + CORR_GUARD;
        let u = if order == 2 {
            eps.round_to(h2)
        } else {
            // ε − ¾ε²
            let h1 = m.saturating_sub(2 * prev) + CORR_GUARD;
            charge(ledger, OpClass::Square, h1);
            let e2 = square_bits(&eps.round_to(h1), h1)?;
            let t = e2.mul_word(3, h1 + 2)?.shift2(-2)?;
            eps.sub(&t, h2)?
        };
        charge(ledger, OpClass::Mul, h2);
        let c = mul_bits(&x.round_to(h2), &u, h2)?.shift2(-1)?;
        x = x.sub(&c, wp)?;
        if let Some(v) = iters.as_deref_mut() {
            v.push(x.clone());
        }
    }
    Ok(x)
}

/// Square root of `a` in `[1/4, 1)` by `x ← (x + a/x)/2`, one division per level.
fn sqrt_newton_core(a: &BigFloat, target: usize, ledger: &mut Option<&mut CostLedger>) -> Result<BigFloat> {
    let sched = schedule_to(target, 2, START_BITS.min(target));
    let lv = &sched.levels;
    let mut x = BigFloat::from_f64(a.to_f64_lossy().sqrt(), FLOAT_BITS.max(lv[0]))?;
    for &m in &lv[1..] {
        let wp = m + LEVEL_GUARD;
        charge(ledger, OpClass::Div, wp);
        let q = div_bits(&a.round_to(wp), &x, wp)?;
        x = x.add(&q, wp)?.shift2(-1)?;
    }
    Ok(x)
}

/// `b / a` to about `bits` bits without instrumentation.
pub(crate) fn div_bits(b: &BigFloat, a: &BigFloat, bits: usize) -> Result<BigFloat> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if b.is_zero() {
        return Ok(BigFloat::zero(bits));
    }
    let e = a.exponent();
    let an = a.abs().shift2(-e)?;
    let x = recip_core(&an, bits, 2, &mut None, None)?;
    let y = mul_bits(b, &x, bits + LEVEL_GUARD)?.shift2(-e)?;
    Ok(if a.sign() < 0 { y.neg() } else { y })
}

/// `1 / a` to about `bits` bits without instrumentation.
pub(crate) fn recip_bits(a: &BigFloat, bits: usize) -> Result<BigFloat> {
    div_bits(&BigFloat::from_u64(1, 1), a, bits)
}

fn check_recip_variant(v: Variant) -> Result<usize> {
    match v {
        Variant::Recip2 => Ok(2),
        Variant::Recip3 => Ok(3),
        _ => Err(unsupported("reciprocal", v)),
    }
}

pub fn recip(a: &BigFloat, p: Precision, v: Variant) -> Result<BigFloat> {
    recip_with(a, p, v, None)
}

pub fn recip_with(a: &BigFloat, p: Precision, v: Variant, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    let order = check_recip_variant(v)?;
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let e = a.exponent();
    let an = a.abs().shift2(-e)?;
    let x = recip_core(&an, p.working(), order, &mut ledger, None)?.shift2(-e)?;
    let x = if a.sign() < 0 { x.neg() } else { x };
    Ok(x.round_to(p.n))
}

/// Iterates of the reciprocal iteration, one per schedule level.
pub fn recip_iterates(a: &BigFloat, p: Precision, v: Variant) -> Result<Vec<BigFloat>> {
    let order = check_recip_variant(v)?;
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let e = a.exponent();
    let an = a.abs().shift2(-e)?;
    let mut iters = Vec::new();
    recip_core(&an, p.working(), order, &mut None, Some(&mut iters))?;
    iters
        .into_iter()
        .map(|x| {
            let x = x.shift2(-e)?;
            Ok(if a.sign() < 0 { x.neg() } else { x })
        })
        .collect()
}

pub fn div(b: &BigFloat, a: &BigFloat, p: Precision, v: Variant) -> Result<BigFloat> {
    div_with(b, a, p, v, None)
}

pub fn div_with(b: &BigFloat, a: &BigFloat, p: Precision, v: Variant, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let w = p.working();
    let e = a.exponent();
    let an = a.abs().shift2(-e)?;
    let y = match v {
        Variant::Recip2 | Variant::Recip3 => {
            let x = recip_core(&an, w, v.order(), &mut ledger, None)?;
            let wp = w + LEVEL_GUARD;
            charge(&mut ledger, OpClass::Mul, wp);
            mul_bits(&b.round_to(wp), &x, wp)?
        }
        Variant::DivKm => {
            let h = w.div_ceil(2);
            let hp = h + LEVEL_GUARD;
            let wp = w + LEVEL_GUARD;
            let x = recip_core(&an, h, 2, &mut ledger, None)?;
            charge(&mut ledger, OpClass::Mul, hp);
            let y = mul_bits(&b.round_to(hp), &x, hp)?;
            // Residual a·y − b at full precision, correction at half.
            charge(&mut ledger, OpClass::Mul, wp);
            let r = mul_bits(&an.round_to(wp), &y, wp)?.sub(&b.round_to(wp), wp)?;
            charge(&mut ledger, OpClass::Mul, hp);
            let c = mul_bits(&x, &r.round_to(hp), hp)?;
            y.sub(&c, wp)?
        }
        _ => return Err(unsupported("division", v)),
    };
    if b.is_zero() {
        return Ok(BigFloat::zero(p.n));
    }
    let y = y.shift2(-e)?;
    let y = if a.sign() < 0 { y.neg() } else { y };
    Ok(y.round_to(p.n))
}

/// Splits `a > 0` as `an · 2^(2k)` with `an` in `[1/4, 1)`.
fn even_normalize(a: &BigFloat) -> Result<(BigFloat, i64)> {
    let e = a.exponent();
    let e2 = if e.rem_euclid(2) == 0 { e } else { e + 1 };
    Ok((a.shift2(-e2)?, e2 / 2))
}

pub fn sqrt(a: &BigFloat, p: Precision, v: Variant) -> Result<BigFloat> {
    sqrt_with(a, p, v, None)
}

pub fn sqrt_with(a: &BigFloat, p: Precision, v: Variant, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    if a.sign() < 0 {
        return Err(Error::Domain("square root of a negative number".into()));
    }
    if !matches!(v, Variant::Rsqrt3 | Variant::Rsqrt2 | Variant::SqrtNewton | Variant::SqrtKm) {
        return Err(unsupported("square root", v));
    }
    if a.is_zero() {
        return Ok(BigFloat::zero(p.n));
    }
    let w = p.working();
    let wp = w + LEVEL_GUARD;
    let (an, k) = even_normalize(a)?;
    let y = match v {
        Variant::Rsqrt3 | Variant::Rsqrt2 => {
            let x = rsqrt_core(&an, w, v.order(), &mut ledger, None)?;
            charge(&mut ledger, OpClass::Mul, wp);
            mul_bits(&an.round_to(wp), &x, wp)?
        }
        Variant::SqrtNewton => sqrt_newton_core(&an, w, &mut ledger)?,
        _ => {
            let h = w.div_ceil(2);
            let hp = h + LEVEL_GUARD;
            let x = rsqrt_core(&an, h, 3, &mut ledger, None)?;
            charge(&mut ledger, OpClass::Mul, hp);
            let y = mul_bits(&an.round_to(hp), &x, hp)?;
            // y − x(y² − a)/2
            charge(&mut ledger, OpClass::Square, wp);
            let r = square_bits(&y, wp)?.sub(&an.round_to(wp), wp)?;
            charge(&mut ledger, OpClass::Mul, hp);
            let c = mul_bits(&x, &r.round_to(hp), hp)?.shift2(-1)?;
            y.sub(&c, wp)?
        }
    };
    Ok(y.shift2(k)?.round_to(p.n))
}

pub fn rsqrt(a: &BigFloat, p: Precision, v: Variant) -> Result<BigFloat> {
    rsqrt_with(a, p, v, None)
}

pub fn rsqrt_with(a: &BigFloat, p: Precision, v: Variant, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    if a.sign() <= 0 {
        return Err(Error::Domain("inverse square root needs a positive argument".into()));
    }
    let w = p.working();
    let (an, k) = even_normalize(a)?;
    let x = match v {
        Variant::Rsqrt3 | Variant::Rsqrt2 => rsqrt_core(&an, w, v.order(), &mut ledger, None)?,
        Variant::SqrtNewton => {
            let s = sqrt_newton_core(&an, w, &mut ledger)?;
            let wp = w + LEVEL_GUARD;
            charge(&mut ledger, OpClass::Div, wp);
            recip_bits(&s, wp)?
        }
        _ => return Err(unsupported("inverse square root", v)),
    };
    Ok(x.shift2(-k)?.round_to(p.n))
}

/// Iterates of the inverse square root iteration, one per schedule level.
pub fn rsqrt_iterates(a: &BigFloat, p: Precision, v: Variant) -> Result<Vec<BigFloat>> {
    if a.sign() <= 0 {
        return Err(Error::Domain("inverse square root needs a positive argument".into()));
    }
    let order = match v {
        Variant::Rsqrt3 | Variant::Rsqrt2 => v.order(),
        _ => return Err(unsupported("inverse square root iterates", v)),
    };
    let (an, k) = even_normalize(a)?;
    let mut iters = Vec::new();
    rsqrt_core(&an, p.working(), order, &mut None, Some(&mut iters))?;
    iters.into_iter().map(|x| x.shift2(-k)).collect()
}

/// Power of two `λ = 2^k` with `|λ·a|` in `[2^(-t-2), 2^(-t-1))`.
fn small_scale(a: &BigFloat, t: usize) -> i64 {
    -(t as i64) - 1 - a.exponent()
}

/// `a²` to about `p.n/3` bits using one reciprocal at `p.n` bits:
/// `a²/(1−λa) = λ⁻²[(1−λa)⁻¹ − (1+λa)]`.
pub fn square_via_recip(a: &BigFloat, p: Precision) -> Result<BigFloat> {
    square_via_recip_with(a, p, None)
}

pub fn square_via_recip_with(a: &BigFloat, p: Precision, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    let n = p.n;
    let out = n.div_ceil(3);
    charge(&mut ledger, OpClass::Recip, n);
    if a.is_zero() {
        return Ok(BigFloat::zero(out));
    }
    let k = small_scale(a, out);
    let u = a.shift2(k)?;
    let wp = p.working();
    let r = recip(&one().sub(&u, wp)?, Precision::with_guard(wp, LEVEL_GUARD), Variant::Recip2)?;
    let br = r.sub(&one(), wp)?.sub(&u, wp)?;
    Ok(br.shift2(-2 * k)?.round_to(out))
}

/// `a²` from one square root: `2λ⁻²[1 + λa − (1+2λa)^½]`.
pub fn square_via_sqrt_with(a: &BigFloat, p: Precision, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    let n = p.n;
    let out = n.div_ceil(3);
    charge(&mut ledger, OpClass::Sqrt, n);
    if a.is_zero() {
        return Ok(BigFloat::zero(out));
    }
    let k = small_scale(a, out);
    let u = a.shift2(k)?;
    let wp = p.working();
    let s = sqrt(&one().add(&u.shift2(1)?, wp)?, Precision::with_guard(wp, LEVEL_GUARD), Variant::Rsqrt3)?;
    let br = one().add(&u, wp)?.sub(&s, wp)?;
    Ok(br.shift2(1 - 2 * k)?.round_to(out))
}

/// `a²` from one inverse square root: `(2/3)λ⁻²[(1+2λa)^-½ − 1 + λa]`.
pub fn square_via_rsqrt_with(a: &BigFloat, p: Precision, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    let n = p.n;
    let out = n.div_ceil(3);
    charge(&mut ledger, OpClass::Rsqrt, n);
    if a.is_zero() {
        return Ok(BigFloat::zero(out));
    }
    let k = small_scale(a, out);
    let u = a.shift2(k)?;
    let wp = p.working();
    let q = rsqrt(&one().add(&u.shift2(1)?, wp)?, Precision::with_guard(wp, LEVEL_GUARD), Variant::Rsqrt3)?;
    let br = q.sub(&one(), wp)?.add(&u, wp)?;
    Ok(br.mul_word(2, wp)?.div_word(3, wp)?.shift2(-2 * k)?.round_to(out))
}

/// `a^-½` to about `2p.n/3` bits from two square roots:
/// `(√(a+λ) − √(a−λ))/λ` with `λ/a` near `2^(-p.n/3)`.
pub fn rsqrt_via_sqrts(a: &BigFloat, p: Precision) -> Result<BigFloat> {
    rsqrt_via_sqrts_with(a, p, None)
}

pub fn rsqrt_via_sqrts_with(a: &BigFloat, p: Precision, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    if a.sign() <= 0 {
        return Err(Error::Domain("inverse square root needs a positive argument".into()));
    }
    let n = p.n;
    let out = (2 * n).div_ceil(3);
    let wp = p.working();
    let lam = BigFloat::from_u64(1, 1).shift2(a.exponent() - (n / 3) as i64 - 2)?;
    let sp = Precision::with_guard(wp, LEVEL_GUARD);
    charge(&mut ledger, OpClass::Sqrt, n);
    let s1 = sqrt(&a.add(&lam, wp)?, sp, Variant::Rsqrt3)?;
    charge(&mut ledger, OpClass::Sqrt, n);
    let s2 = sqrt(&a.sub(&lam, wp)?, sp, Variant::Rsqrt3)?;
    let d = s1.sub(&s2, wp)?;
    Ok(d.shift2(-(lam.exponent() - 1))?.round_to(out))
}

/// `b/a` to about `2p.n/3` bits from one squaring and two square roots:
/// `(√(a²+λb) − √(a²−λb))/λ`.
pub fn div_via_sqrts(b: &BigFloat, a: &BigFloat, p: Precision) -> Result<BigFloat> {
    div_via_sqrts_with(b, a, p, None)
}

pub fn div_via_sqrts_with(b: &BigFloat, a: &BigFloat, p: Precision, mut ledger: Option<&mut CostLedger>) -> Result<BigFloat> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = p.n;
    let out = (2 * n).div_ceil(3);
    let wp = p.working();
    charge(&mut ledger, OpClass::Square, n);
    if b.is_zero() {
        return Ok(BigFloat::zero(out));
    }
    let a2 = square_bits(a, wp)?;
    let bb = b.abs();
    // λ|b|/a² near 2^(-n/3-2)
    let k = a2.exponent() - bb.exponent() - (n / 3) as i64 - 2;
    let lb = bb.shift2(k)?;
    let sp = Precision::with_guard(wp, LEVEL_GUARD);
    charge(&mut ledger, OpClass::Sqrt, n);
    let s1 = sqrt(&a2.add(&lb, wp)?, sp, Variant::Rsqrt3)?;
    charge(&mut ledger, OpClass::Sqrt, n);
    let s2 = sqrt(&a2.sub(&lb, wp)?, sp, Variant::Rsqrt3)?;
    let d = s1.sub(&s2, wp)?.shift2(-k)?.round_to(out);
    Ok(if (a.sign() < 0) != (b.sign() < 0) { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64, prec: usize) -> BigFloat {
        BigFloat::from_f64(v, prec).unwrap()
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(precision_schedule(Precision::new(64), 2, 4).levels, vec![4, 5, 9, 18, 36, 72]);
        assert_eq!(schedule_to(10, 2, 10).levels, vec![10]);
        let s = schedule_to(89, 3, 4);
        for w in s.levels.windows(2) {
            assert!(w[0] >= w[1].div_ceil(3));
        }
        assert_eq!(*s.levels.last().unwrap(), 89);
    }

    #[test]
    fn exact_small_results() {
        let p = Precision::new(64);
        assert_eq!(recip(&f(2.0, 64), p, Variant::Recip2).unwrap(), f(0.5, 64));
        assert_eq!(sqrt(&f(4.0, 64), p, Variant::Rsqrt3).unwrap(), f(2.0, 64));
        assert_eq!(rsqrt(&f(4.0, 64), p, Variant::Rsqrt3).unwrap(), f(0.5, 64));
        assert_eq!(div(&f(7.0, 64), &f(1.0, 64), p, Variant::Recip2).unwrap(), f(7.0, 64));
        assert!(sqrt(&BigFloat::zero(64), p, Variant::SqrtKm).unwrap().is_zero());
    }

    #[test]
    fn error_cases() {
        let p = Precision::new(64);
        assert_eq!(recip(&BigFloat::zero(64), p, Variant::Recip2), Err(Error::DivisionByZero));
        assert!(matches!(sqrt(&f(-1.0, 64), p, Variant::Rsqrt3), Err(Error::Domain(_))));
        assert!(matches!(rsqrt(&BigFloat::zero(64), p, Variant::Rsqrt3), Err(Error::Domain(_))));
        assert!(matches!(recip(&f(3.0, 64), p, Variant::SqrtKm), Err(Error::Config(_))));
    }

    #[test]
    fn all_variants_agree_on_three() {
        let p = Precision::new(300);
        let three = f(3.0, 300);
        let r2 = recip(&three, p, Variant::Recip2).unwrap();
        let r3 = recip(&three, p, Variant::Recip3).unwrap();
        let third = BigFloat::from_u64(1, 310).div_word(3, 310).unwrap();
        assert!(r2.rel_agreement_bits(&third) >= 298.0);
        assert!(r3.rel_agreement_bits(&third) >= 298.0);
        let s: Vec<_> = [Variant::Rsqrt3, Variant::Rsqrt2, Variant::SqrtNewton, Variant::SqrtKm]
            .into_iter()
            .map(|v| sqrt(&three, p, v).unwrap())
            .collect();
        for x in &s[1..] {
            assert!(x.rel_agreement_bits(&s[0]) >= 297.0);
        }
        let d = div(&f(1.0, 300), &three, p, Variant::DivKm).unwrap();
        assert!(d.rel_agreement_bits(&third) >= 298.0);
    }

    #[test]
    fn identity_paths() {
        let sq = square_via_recip(&f(3.0, 192), Precision::new(192)).unwrap();
        assert!(sq.rel_agreement_bits(&f(9.0, 64)) >= 64.0, "{}", sq.rel_agreement_bits(&f(9.0, 64)));
        let d = div_via_sqrts(&f(1.0, 96), &f(4.0, 96), Precision::new(96)).unwrap();
        assert!(d.rel_agreement_bits(&f(0.25, 64)) >= 64.0);
        let q = rsqrt_via_sqrts(&f(4.0, 96), Precision::new(96)).unwrap();
        assert!(q.rel_agreement_bits(&f(0.5, 64)) >= 64.0);
        let s = square_via_sqrt_with(&f(-3.0, 192), Precision::new(192), None).unwrap();
        assert!(s.rel_agreement_bits(&f(9.0, 64)) >= 63.0);
        let s = square_via_rsqrt_with(&f(3.0, 192), Precision::new(192), None).unwrap();
        assert!(s.rel_agreement_bits(&f(9.0, 64)) >= 62.0);
    }
}
