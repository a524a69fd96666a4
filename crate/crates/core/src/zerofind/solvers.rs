//! Zero finders driven by a precision ladder.
//!
//! A machine-float search supplies a root `r` good to about 50 bits. The
//! target accuracy `B_T = n + GUARD` is divided back by the method's order
//! into rungs `B_0 < B_1 < ... < B_T`; the seeds are `x_j = r + 2^-B_j` for
//! the first few rungs, and each step produces an iterate accurate to the
//! next rung. Every evaluation of `f` is requested at the smallest
//! precision its roles in later steps need.

use std::collections::BTreeMap;

use super::constants::{
    const_invinterp, const_invquad, const_newton, const_secant, order_invquad, order_secant, role_requirement, sigma,
    MethodId,
};
use super::{int_bits, MpFunction};
use crate::bigfrac::{BigFloat, Precision};
use crate::costs::{CostLedger, OpClass};
use crate::error::{Error, Result};
use crate::newton::div_bits;

/// Extra bits carried on the final rung and on each evaluation.
pub const GUARD: usize = 8;
/// Seeds are built from a machine-float root, so no seed rung may exceed this.
const SEED_BITS: usize = 40;
const MIN_EVAL: usize = 16;
/// Bits each rung carries beyond what the next one needs when the early
/// steps interpolate through fewer points than the ladder ratio assumes.
const SLACK: usize = 2;
/// Most older points inverse interpolation will use.
pub const MAX_INTERP: u32 = 12;
const MAX_STEPS: usize = 200;

impl MethodId {
    /// `newton1`, `secant2`, `invquad`, `invinterp0.55`, ...
    pub fn name(&self) -> String {
        match *self {
            MethodId::Newton { p } => format!("newton{p}"),
            MethodId::Secant { k } => format!("secant{k}"),
            MethodId::InvQuad => "invquad".into(),
            MethodId::InvInterp { mu } => format!("invinterp{mu}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unknown method {s:?}"));
        let num = |rest: &str| rest.parse::<u32>().ok().filter(|&v| (1..=16).contains(&v));
        if let Some(rest) = s.strip_prefix("newton") {
            return num(rest).map(|p| MethodId::Newton { p }).ok_or_else(bad);
        }
        if let Some(rest) = s.strip_prefix("secant") {
            return num(rest).map(|k| MethodId::Secant { k }).ok_or_else(bad);
        }
        if s == "invquad" {
            return Ok(MethodId::InvQuad);
        }
        if let Some(rest) = s.strip_prefix("invinterp") {
            let mu: f64 = rest.trim_start_matches(':').parse().map_err(|_| bad())?;
            if !(0.5..1.0).contains(&mu) {
                return Err(Error::Domain(format!("inverse interpolation needs 1/2 <= mu < 1, got {mu}")));
            }
            return Ok(MethodId::InvInterp { mu });
        }
        Err(bad())
    }

    /// Ratio between consecutive rungs of the ladder.
    pub fn ladder_ratio(&self) -> f64 {
        match *self {
            MethodId::Newton { .. } => 0.5,
            MethodId::Secant { k } => 1.0 / order_secant(k),
            MethodId::InvQuad => sigma(),
            MethodId::InvInterp { mu } => mu,
        }
    }

    pub fn order(&self) -> f64 {
        match *self {
            MethodId::Newton { .. } => 2.0,
            MethodId::Secant { k } => order_secant(k),
            MethodId::InvQuad => order_invquad(),
            MethodId::InvInterp { mu } => 1.0 / mu,
        }
    }

    /// Older points used by one step.
    pub fn lookback(&self) -> u32 {
        match *self {
            MethodId::Newton { .. } => 0,
            MethodId::Secant { k } => k,
            MethodId::InvQuad => 2,
            MethodId::InvInterp { mu } => interp_lookback(mu),
        }
    }

    /// Analytic constant `C(α)`.
    pub fn constant(&self, alpha: f64) -> Result<f64> {
        Ok(match *self {
            MethodId::Newton { p } => const_newton(p, alpha).value,
            MethodId::Secant { k } => const_secant(k, alpha).value,
            MethodId::InvQuad => const_invquad(alpha).value,
            MethodId::InvInterp { mu } => const_invinterp(mu, alpha)?.value,
        })
    }
}

/// Number of older points whose role strictly raises their precision:
/// the largest `m` with `r_j(μ) > μ·r_{j-1}(μ)` for all `j ≤ m`.
pub fn interp_lookback(mu: f64) -> u32 {
    let mut k = 0;
    while k < MAX_INTERP {
        let m = k + 1;
        if role_requirement(mu, m) <= mu * role_requirement(mu, m - 1) + 1e-12 {
            break;
        }
        k = m;
    }
    k.max(1)
}

/// One evaluation of `f`, attributed to the point it was made around.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalRecord {
    pub point: usize,
    pub bits: usize,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub method: MethodId,
    pub root: BigFloat,
    /// Seeds followed by the computed iterates.
    pub iterates: Vec<BigFloat>,
    /// Accuracy targets `B_0..B_T` in bits.
    pub ladder: Vec<usize>,
    pub seeds: usize,
    pub evals: Vec<EvalRecord>,
}

impl SolveReport {
    pub fn steps(&self) -> usize {
        self.iterates.len() - self.seeds
    }

    /// Evaluation precisions, sorted.
    pub fn precision_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.evals.iter().map(|e| e.bits).collect();
        v.sort_unstable();
        v
    }

    /// `Σ bits^α` per point.
    pub fn cost_per_point(&self, alpha: f64) -> Vec<f64> {
        let mut c = vec![0.0; self.iterates.len()];
        for e in &self.evals {
            c[e.point] += (e.bits as f64).powf(alpha);
        }
        c
    }
}

/// Root of `f` near `start` in machine floats, by the secant method.
/// The last two steps before convergence must both reduce `|f|`.
pub fn float_root(f: &dyn MpFunction, start: f64) -> Result<f64> {
    let fail = |why: &str| Error::Convergence(format!("starting search for {}: {why}", f.name()));
    let mut x0 = start;
    let mut x1 = start + start.abs().max(1.0) * 1e-4;
    let (mut f0, mut f1) = (f.eval_f64(x0), f.eval_f64(x1));
    let (mut run, mut reductions) = (0, 0);
    for _ in 0..100 {
        if !f1.is_finite() || !x1.is_finite() {
            return Err(fail("left the domain"));
        }
        if f1 == 0.0 {
            return Ok(x1);
        }
        if f1 == f0 {
            return if reductions >= 2 && (x1 - x0).abs() <= 1e-13 * x1.abs().max(1.0) {
                Ok(x1)
            } else {
                Err(fail("flat secant"))
            };
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        let f2 = f.eval_f64(x2);
        run = if f2.abs() < f1.abs() { run + 1 } else { 0 };
        reductions = reductions.max(run);
        let done = (x2 - x1).abs() <= 4.0 * f64::EPSILON * x2.abs().max(1e-300);
        (x0, f0, x1, f1) = (x1, f1, x2, f2);
        if done {
            return if reductions >= 2 || f1 == 0.0 { Ok(x1) } else { Err(fail("no steady decrease")) };
        }
    }
    Err(fail("iteration cap"))
}

/// Rungs `B_0 < ... < B_T = target`, each the ceiling of the next times
/// `ratio` plus `slack`, long enough that the first `seeds` rungs are at
/// most `cap`.
pub fn ladder(target: usize, ratio: f64, seeds: usize, cap: usize, slack: usize) -> Vec<usize> {
    let mut down = vec![target];
    loop {
        let len = down.len();
        if len >= seeds && down[len - seeds] <= cap {
            break;
        }
        let b = *down.last().unwrap();
        let next = (b as f64 * ratio).ceil() as usize + slack;
        if next >= b || next < 4 {
            break;
        }
        down.push(next);
    }
    down.reverse();
    down
}

/// Absolute precision, in bits, that step `t` of a method with `look` older
/// points requires of the point `m` places behind the newest.
fn interp_requirement(l: &[usize], t: usize, m: usize) -> i64 {
    let mut req = l[t + 1] as i64 + (m * l[t - m]) as i64;
    for j in 0..m {
        req -= l[t - j] as i64;
    }
    req
}

struct Engine<'a, 'l> {
    f: &'a dyn MpFunction,
    ledger: Option<&'l mut CostLedger>,
    evals: Vec<EvalRecord>,
}

impl Engine<'_, '_> {
    fn eval(&mut self, x: &BigFloat, point: usize, bits: usize) -> Result<BigFloat> {
        let bits = bits.max(MIN_EVAL);
        if let Some(l) = self.ledger.as_deref_mut() {
            l.charge(OpClass::Eval, bits);
        }
        self.evals.push(EvalRecord { point, bits });
        self.f.eval(x, bits)
    }
}

/// Lagrange weights for `d/dx` at 0 through the nodes `lo..=hi` (which
/// include 0), scaled to integers `c_j` over a common denominator `D`.
pub fn derivative_weights(lo: i64, hi: i64) -> (Vec<(i64, i64)>, i64) {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let nodes: Vec<i128> = (lo..=hi).map(|v| v as i128).collect();
    let mut fr: Vec<(i128, i128)> = Vec::new();
    for &tj in &nodes {
        let (mut num, mut den): (i128, i128) = (0, 1);
        if tj == 0 {
            for &tm in nodes.iter().filter(|&&t| t != 0) {
                // -1/tm
                num = num * tm - den;
                den *= tm;
            }
        } else {
            num = 1;
            den = tj;
            for &tl in nodes.iter().filter(|&&t| t != 0 && t != tj) {
                num *= -tl;
                den *= tj - tl;
            }
        }
        let g = gcd(num, den).max(1);
        let (num, den) = if den < 0 { (-num / g, -den / g) } else { (num / g, den / g) };
        fr.push((num, den));
    }
    let d = fr.iter().fold(1i128, |acc, &(_, den)| acc / gcd(acc, den) * den);
    let out = nodes.iter().zip(&fr).map(|(&t, &(num, den))| (t as i64, (num * (d / den)) as i64)).collect();
    (out, d as i64)
}

fn scaled(v: &BigFloat, c: i64, prec: usize) -> Result<BigFloat> {
    let r = v.mul_word(c.unsigned_abs(), prec)?;
    Ok(if c < 0 { r.neg() } else { r })
}

fn check_step(delta: &BigFloat, b: usize) -> Result<()> {
    if !delta.is_zero() && delta.exponent() > 16 - b as i64 {
        return Err(Error::Convergence(format!(
            "correction 2^{} is far above the expected error 2^-{b}",
            delta.exponent()
        )));
    }
    Ok(())
}

/// Runs `method` on `f` to `p.n` bits from machine-float starting points.
pub fn solve(
    method: MethodId,
    f: &dyn MpFunction,
    starts: &[f64],
    p: Precision,
    ledger: Option<&mut CostLedger>,
) -> Result<SolveReport> {
    let start = *starts.first().ok_or_else(|| Error::Config("no starting point".into()))?;
    let r = float_root(f, start)?;
    solve_from_root(method, f, r, p, ledger)
}

/// As [`solve`], with the machine-float root already known.
pub fn solve_from_root(
    method: MethodId,
    f: &dyn MpFunction,
    r: f64,
    p: Precision,
    ledger: Option<&mut CostLedger>,
) -> Result<SolveReport> {
    if let MethodId::Newton { p: 0 } | MethodId::Secant { k: 0 } = method {
        return Err(Error::Config("method parameter must be at least 1".into()));
    }
    let look = method.lookback() as usize;
    // Interpolation starts from three points and widens as iterates accrue.
    let nseed = match method {
        MethodId::InvQuad | MethodId::InvInterp { .. } => look.min(2) + 1,
        _ => look + 1,
    };
    let rb = BigFloat::from_f64(r, 64)?;
    let cap = SEED_BITS.saturating_sub(int_bits(&rb)).max(8);
    let slack = if look + 1 > nseed { SLACK } else { 0 };
    let l = ladder(p.n + GUARD, method.ladder_ratio(), nseed, cap, slack);
    let t_last = l.len() - 1;
    if t_last < nseed || t_last > MAX_STEPS {
        return Err(Error::Config(format!("precision {} too small or too large for {}", p.n, method.name())));
    }
    let mut xs: Vec<BigFloat> = Vec::with_capacity(l.len());
    for &b in &l[..nseed] {
        let d = BigFloat::from_u64(1, 1).shift2(-(b as i64))?;
        xs.push(rb.add(&d, b + 64 + int_bits(&rb))?);
    }
    let mut eng = Engine { f, ledger, evals: Vec::new() };
    let first = nseed - 1;

    // Evaluation precision of each point over all its roles.
    let need = |i: usize| -> usize {
        let mut req: i64 = 0;
        match method {
            MethodId::Newton { .. } => req = l[i + 1] as i64,
            MethodId::Secant { k } => {
                let k = k as usize;
                if i >= first {
                    req = l[i + 1] as i64;
                }
                let t = i + k;
                if t >= first && t < t_last {
                    req = req.max(l[t + 1] as i64 - l[t] as i64 + l[i] as i64);
                }
            }
            MethodId::InvQuad | MethodId::InvInterp { .. } => {
                for m in 0..=look {
                    let t = i + m;
                    // Point i holds role m in step t.
                    if t >= first && t < t_last {
                        req = req.max(interp_requirement(&l, t, m));
                    }
                }
            }
        }
        req.max(0) as usize + GUARD
    };

    let mut ys: Vec<Option<BigFloat>> = Vec::new();
    let mut t = first;
    while t < t_last {
        let wp = l[t + 1] + 2 * GUARD + 16 + 4 * look;
        while ys.len() <= t {
            let i = ys.len();
            let y = eng.eval(&xs[i], i, need(i))?;
            ys.push(Some(y));
        }
        let ft = ys[t].clone().unwrap();
        if ft.is_zero() {
            break;
        }
        let delta = match method {
            MethodId::Newton { p: pts } => newton_step(&mut eng, &xs[t], &ft, t, &l, pts as i64, wp)?,
            MethodId::Secant { k } => {
                let o = t - k as usize;
                secant_step(&mut eng, &xs, &mut ys, t, o, need(t), need(o), wp)?
            }
            MethodId::InvQuad | MethodId::InvInterp { .. } => {
                let idx: Vec<usize> = (0..=look.min(t)).map(|m| t - m).collect();
                interp_step(&mut eng, &xs, &mut ys, &idx, &need, wp)?
            }
        };
        check_step(&delta, l[t])?;
        let abs = l[t + 1] + 2 * GUARD + int_bits(&xs[t]);
        xs.push(xs[t].add(&delta, abs)?);
        t += 1;
    }
    let root = xs.last().unwrap().round_to(p.n + GUARD + int_bits(xs.last().unwrap()));
    Ok(SolveReport { method, root, iterates: xs, ladder: l, seeds: nseed, evals: eng.evals })
}

fn newton_step(
    eng: &mut Engine,
    x: &BigFloat,
    ft: &BigFloat,
    t: usize,
    l: &[usize],
    pts: i64,
    wp: usize,
) -> Result<BigFloat> {
    let lo = -(pts / 2);
    let hi = pts - pts / 2;
    let (w, d) = derivative_weights(lo, hi);
    let hb = l[t].div_ceil(pts as usize);
    let sb = (l[t + 1] * (pts as usize + 1)).div_ceil(2 * pts as usize) + GUARD;
    let xp = x.prec() + hb + 64;
    let mut s = BigFloat::zero(wp);
    let mut noise = 0u64;
    for &(j, c) in &w {
        if c == 0 {
            continue;
        }
        let fj = if j == 0 {
            ft.clone()
        } else {
            let off = BigFloat::from_i64(j, 64).shift2(-(hb as i64))?;
            eng.eval(&x.add(&off, xp)?, t, sb)?
        };
        s = s.add(&scaled(&fj, c, wp)?, wp)?;
        noise += c.unsigned_abs();
    }
    // Each stencil value carries error up to 2^-sb.
    let floor = 64 - noise.leading_zeros() as i64 - sb.max(MIN_EVAL) as i64 + 4;
    if s.is_zero() || s.exponent() <= floor {
        return Err(Error::Derivative);
    }
    // g = s / (D h), so the correction is -f·D·h / s.
    let num = ft.mul_word(d as u64, wp)?.shift2(-(hb as i64))?;
    Ok(div_bits(&num, &s, wp)?.neg())
}

#[allow(clippy::too_many_arguments)]
fn secant_step(
    eng: &mut Engine,
    xs: &[BigFloat],
    ys: &mut [Option<BigFloat>],
    t: usize,
    o: usize,
    need_t: usize,
    need_o: usize,
    wp: usize,
) -> Result<BigFloat> {
    let mut df = ys[t].as_ref().unwrap().sub(ys[o].as_ref().unwrap(), wp)?;
    if df.is_zero() {
        ys[t] = Some(eng.eval(&xs[t], t, 2 * need_t)?);
        ys[o] = Some(eng.eval(&xs[o], o, 2 * need_o)?);
        df = ys[t].as_ref().unwrap().sub(ys[o].as_ref().unwrap(), wp)?;
        if df.is_zero() {
            return Err(Error::Degenerate(format!("f(x_{t}) = f(x_{o}) after a precision bump")));
        }
    }
    let dx = xs[t].sub(&xs[o], wp)?;
    let num = dx.mul_word(1, wp)?;
    let q = div_bits(&num, &df, wp)?;
    let ft = ys[t].as_ref().unwrap();
    Ok(crate::mulkernel::mul_bits(ft, &q, wp)?.neg())
}

/// Newton-form inverse interpolation through `idx` (newest first) at `y = 0`.
fn interp_step(
    eng: &mut Engine,
    xs: &[BigFloat],
    ys: &mut [Option<BigFloat>],
    idx: &[usize],
    need: &dyn Fn(usize) -> usize,
    wp: usize,
) -> Result<BigFloat> {
    let collide = |ys: &[Option<BigFloat>]| {
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let (ya, yb) = (ys[idx[a]].as_ref().unwrap(), ys[idx[b]].as_ref().unwrap());
                if ya.sub(yb, wp).map(|d| d.is_zero()).unwrap_or(true) {
                    return true;
                }
            }
        }
        false
    };
    if collide(ys) {
        for &i in idx {
            ys[i] = Some(eng.eval(&xs[i], i, 2 * need(i))?);
        }
        if collide(ys) {
            return Err(Error::Degenerate("coincident ordinates after a precision bump".into()));
        }
    }
    let y: Vec<BigFloat> = idx.iter().map(|&i| ys[i].clone().unwrap()).collect();
    // Differences relative to the newest abscissa keep the table small.
    let x0 = &xs[idx[0]];
    let mut dd: Vec<BigFloat> = idx.iter().map(|&i| xs[i].sub(x0, wp)).collect::<Result<_>>()?;
    let k = idx.len();
    for m in 1..k {
        for i in (m..k).rev() {
            let num = dd[i].sub(&dd[i - 1], wp)?;
            let den = y[i].sub(&y[i - m], wp)?;
            dd[i] = div_bits(&num, &den, wp)?;
        }
    }
    let mut delta = BigFloat::zero(wp);
    let mut prod = BigFloat::from_u64(1, wp);
    for m in 1..k {
        prod = crate::mulkernel::mul_bits(&prod, &y[m - 1].neg(), wp)?;
        delta = delta.add(&crate::mulkernel::mul_bits(&dd[m], &prod, wp)?, wp)?;
    }
    Ok(delta)
}

/// Median of `log e_{i+1} / log e_i` over the last four computed iterates,
/// where `e_i = |x_i − ζ|`. Iterates correct to fewer than 16 bits or
/// beyond the reference are skipped.
pub fn measured_order(report: &SolveReport, reference: &BigFloat) -> f64 {
    let limit = reference.prec() as f64 - 4.0;
    let bits: Vec<f64> = report
        .iterates
        .iter()
        .map(|x| {
            let d = x.sub(reference, reference.prec() + 64).expect("finite difference");
            if d.is_zero() {
                f64::INFINITY
            } else {
                let (m, e) = d.frexp();
                -(m.abs().log2() + e as f64)
            }
        })
        .collect();
    let mut ratios: Vec<f64> = Vec::new();
    for i in report.seeds.saturating_sub(1)..bits.len().saturating_sub(1) {
        let (a, b) = (bits[i], bits[i + 1]);
        if a >= 16.0 && b.is_finite() && b < limit {
            ratios.push(b / a);
        }
    }
    let tail: Vec<f64> = ratios.iter().rev().take(4).copied().collect();
    median(tail)
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Total cost `Σ n_i^α / n^α` from one run, using the last five points as
/// measured and replacing everything older by the geometric tail fitted to
/// the two oldest points of that window.
pub fn measure_constant_from(report: &SolveReport, alpha: f64, n: usize) -> f64 {
    let c: Vec<f64> = report.cost_per_point(alpha).into_iter().filter(|&v| v > 0.0).collect();
    let w = c.len().min(5);
    let win = &c[c.len() - w..];
    let mut total: f64 = win.iter().sum();
    if w >= 2 && c.len() > w {
        let rho = win[0] / win[1];
        if rho < 1.0 {
            total += win[0] * rho / (1.0 - rho);
        }
    }
    total / (n as f64).powf(alpha)
}

/// Measured `C(α)` for `method` on `f` at `n` bits, with evaluations
/// priced `bits^α`.
pub fn measure_constant(method: MethodId, f: &dyn MpFunction, alpha: f64, n: usize) -> Result<f64> {
    let start = f.start_hint().ok_or_else(|| Error::Config(format!("{} has no starting point", f.name())))?;
    let report = solve(method, f, &[start], Precision::new(n), None)?;
    Ok(measure_constant_from(&report, alpha, n))
}

/// Discrete Newton with a `points`-point derivative.
pub fn solve_newton(f: &dyn MpFunction, x0: &BigFloat, p: Precision, points: u32) -> Result<BigFloat> {
    Ok(solve(MethodId::Newton { p: points }, f, &[x0.to_f64_lossy()], p, None)?.root)
}

pub fn solve_secant(f: &dyn MpFunction, x0: &BigFloat, x1: &BigFloat, p: Precision, k: u32) -> Result<BigFloat> {
    let starts = [x0.to_f64_lossy(), x1.to_f64_lossy()];
    Ok(solve(MethodId::Secant { k }, f, &starts, p, None)?.root)
}

pub fn solve_invquad(f: &dyn MpFunction, x0: &BigFloat, x1: &BigFloat, x2: &BigFloat, p: Precision) -> Result<BigFloat> {
    let starts = [x0.to_f64_lossy(), x1.to_f64_lossy(), x2.to_f64_lossy()];
    Ok(solve(MethodId::InvQuad, f, &starts, p, None)?.root)
}

pub fn solve_invinterp(f: &dyn MpFunction, starts: &[BigFloat], p: Precision, mu: f64) -> Result<BigFloat> {
    if !(0.5..1.0).contains(&mu) {
        return Err(Error::Domain(format!("inverse interpolation needs 1/2 <= mu < 1, got {mu}")));
    }
    let s: Vec<f64> = starts.iter().map(|x| x.to_f64_lossy()).collect();
    Ok(solve(MethodId::InvInterp { mu }, f, &s, p, None)?.root)
}

/// Counts of evaluations at each precision.
pub fn precision_histogram(report: &SolveReport) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for e in &report.evals {
        *h.entry(e.bits).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zerofind::Catalog;

    #[test]
    fn derivative_weight_tables() {
        assert_eq!(derivative_weights(0, 1), (vec![(0, -1), (1, 1)], 1));
        assert_eq!(derivative_weights(-1, 1), (vec![(-1, -1), (0, 0), (1, 1)], 2));
        // -1/3, -1/2, 1, -1/6 ... for nodes -1..=2
        let (w, d) = derivative_weights(-1, 2);
        assert_eq!(d, 6);
        assert_eq!(w, vec![(-1, -2), (0, -3), (1, 6), (2, -1)]);
    }

    #[test]
    fn ladder_shape() {
        let l = ladder(72, 0.5, 1, 40, 0);
        assert_eq!(l, vec![36, 72]);
        let l = ladder(1032, sigma(), 3, 40, 2);
        assert!(l[..3].iter().all(|&b| b <= 40));
        assert!(l.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn lookbacks() {
        assert_eq!(interp_lookback(sigma()), 2);
        assert_eq!(interp_lookback(0.5), MAX_INTERP);
        assert_eq!(MethodId::parse("secant2").unwrap(), MethodId::Secant { k: 2 });
        assert!(MethodId::parse("secant0").is_err());
        assert_eq!(MethodId::parse("invinterp0.6").unwrap(), MethodId::InvInterp { mu: 0.6 });
    }

    #[test]
    fn float_root_finds_sqrt2() {
        let r = float_root(&Catalog::Sq2, 1.5).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }
}
