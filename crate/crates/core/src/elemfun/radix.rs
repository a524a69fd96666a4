//! Divide-and-conquer conversion between binary and decimal.
//!
//! Integers are split in halves against cached powers `10^(19·2^i)`, so the
//! cost is dominated by a few multiplications and divisions at each size.

use crate::bigfrac::{BigFloat, Precision, EXP_MAX};
use crate::error::{Error, Result};
use crate::mulkernel::mul_bits;
use crate::nat::Nat;
use crate::newton::div_bits;

/// Decimal digits held by one `u64` chunk.
const CHUNK: usize = 19;
const CHUNK_POW: u64 = 10_000_000_000_000_000_000;

/// `10^(19·2^i)` for `i = 0, 1, ...`, grown on demand.
struct Powers(Vec<Nat>);

impl Powers {
    fn new() -> Self {
        Powers(vec![Nat::from(CHUNK_POW)])
    }

    fn get(&mut self, i: usize) -> &Nat {
        while self.0.len() <= i {
            let next = self.0.last().unwrap().square();
            self.0.push(next);
        }
        &self.0[i]
    }
}

/// `⌊n/d⌋` and `n mod d` through a Newton reciprocal plus a final correction.
fn divrem(n: &Nat, d: &Nat) -> (Nat, Nat) {
    if n < d {
        return (Nat::zero(), n.clone());
    }
    let wp = n.bit_len() - d.bit_len() + 32;
    let nf = BigFloat::from_nat(n, wp).expect("integer fits the exponent range");
    let df = BigFloat::from_nat(d, wp).expect("integer fits the exponent range");
    let mut q = div_bits(&nf, &df, wp).expect("nonzero divisor").trunc_nat();
    let mut qd = q.mul(d);
    while qd > *n {
        q = q.sub(&Nat::one());
        qd = qd.sub(d);
    }
    let mut r = n.sub(&qd);
    while r >= *d {
        q = q.add_word(1);
        r = r.sub(d);
    }
    (q, r)
}

/// Decimal digits of `n`, no leading zeros ("0" for zero).
pub fn nat_to_decimal(n: &Nat) -> String {
    let mut pw = Powers::new();
    let mut i = 0;
    while n >= pw.get(i) {
        i += 1;
    }
    let mut out = String::new();
    digits_into(n, i, &mut pw, &mut out);
    let s = out.trim_start_matches('0');
    if s.is_empty() {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Appends `n < 10^(19·2^i)` padded to exactly `19·2^i` digits.
fn digits_into(n: &Nat, i: usize, pw: &mut Powers, out: &mut String) {
    if i == 0 {
        out.push_str(&format!("{:019}", n.to_u64().unwrap_or(0)));
        return;
    }
    let (hi, lo) = divrem(n, pw.get(i - 1));
    digits_into(&hi, i - 1, pw, out);
    digits_into(&lo, i - 1, pw, out);
}

/// Parses a nonempty string of ASCII digits.
pub fn decimal_to_nat(digits: &str) -> Result<Nat> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a digit string: {digits:?}")));
    }
    let mut pw = Powers::new();
    Ok(nat_from_digits(digits.as_bytes(), &mut pw))
}

fn nat_from_digits(d: &[u8], pw: &mut Powers) -> Nat {
    if d.len() <= CHUNK {
        let v = d.iter().fold(0u64, |acc, &b| acc * 10 + (b - b'0') as u64);
        return Nat::from(v);
    }
    let mut i = 0;
    while CHUNK << (i + 1) < d.len() {
        i += 1;
    }
    let (hi, lo) = d.split_at(d.len() - (CHUNK << i));
    let h = nat_from_digits(hi, pw);
    let l = nat_from_digits(lo, pw);
    h.mul(pw.get(i)).add(&l)
}

fn pow10(k: u64) -> Nat {
    Nat::from(10u64).pow(k as u32)
}

/// `⌊z⌋`, nudged up by one when `z` sits below the next integer by less
/// than three quarters of `u`, the input's last-place unit at the same scale.
/// Inputs that were rounded to nearest are then recovered exactly, while an
/// exact input a full unit below an integer is left alone.
fn floor_snap(z: &BigFloat, u: &BigFloat, wp: usize) -> Result<Nat> {
    let n = z.trunc_nat();
    let up = n.add_word(1);
    let gap = BigFloat::from_nat(&up, wp + 64)?.sub(z, wp + 64)?;
    let three_quarters = u.mul_word(3, wp)?.shift2(-2)?;
    if gap.cmp_abs(&three_quarters).is_lt() {
        Ok(up)
    } else {
        Ok(n)
    }
}

/// One unit in the last place of `x`.
fn ulp(x: &BigFloat) -> Result<BigFloat> {
    BigFloat::from_u64(1, 1).shift2(x.exponent() - x.prec() as i64)
}

/// Rounds `r` to `n` bits, to nearest with ties away from zero.
fn round_nearest(r: &BigFloat, n: usize) -> Result<BigFloat> {
    let t = r.round_to(n);
    if t.is_zero() {
        return Ok(t);
    }
    let u = ulp(&t)?;
    let rem = r.sub(&t, r.prec() + 64)?;
    if rem.shift2(1)?.cmp_abs(&u).is_lt() {
        return Ok(t);
    }
    let step = if t.sign() < 0 { u.neg() } else { u };
    t.add(&step, n)
}

/// `|x| · 10^k` at `wp` bits.
fn scale10(y: &BigFloat, k: i64, wp: usize) -> Result<BigFloat> {
    let t = BigFloat::from_nat(&pow10(k.unsigned_abs()), wp)?;
    if k >= 0 {
        mul_bits(y, &t, wp)
    } else {
        div_bits(y, &t, wp)
    }
}

/// `x` to `digits` significant decimal digits, truncated. Exponents in
/// `0 ≤ E < digits` print positionally, `−6 ≤ E < 0` as `0.000ddd`, anything
/// else as `d.ddde±E`.
pub fn to_decimal(x: &BigFloat, digits: usize) -> Result<String> {
    if digits == 0 {
        return Err(Error::Domain("to_decimal needs at least one digit".into()));
    }
    let d = digits as i64;
    if x.is_zero() {
        return Ok(place_point("0".repeat(digits), 0, d));
    }
    let y = x.abs();
    let (f, e) = y.frexp();
    let mut ex = ((f.log2() + e as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let wp = x.prec().max((digits as f64 * std::f64::consts::LOG2_10).ceil() as usize) + 16;
    let u = ulp(&y)?;
    let lo = pow10(digits as u64 - 1);
    let hi = pow10(digits as u64);
    let mut n;
    let mut tries = 0;
    loop {
        tries += 1;
        let z = scale10(&y, d - 1 - ex, wp)?;
        n = floor_snap(&z, &scale10(&u, d - 1 - ex, wp)?, wp)?;
        if n == hi {
            n = lo.clone();
            ex += 1;
            break;
        }
        if n > hi {
            ex += 1;
        } else if n < lo {
            ex -= 1;
        } else {
            break;
        }
        if tries > 8 {
            return Err(Error::Convergence("decimal exponent estimate did not settle".into()));
        }
    }
    let s = place_point(nat_to_decimal(&n), ex, d);
    Ok(if x.sign() < 0 { format!("-{s}") } else { s })
}

fn place_point(s: String, ex: i64, d: i64) -> String {
    if (0..d).contains(&ex) {
        let (a, b) = s.split_at(ex as usize + 1);
        if b.is_empty() {
            a.to_string()
        } else {
            format!("{a}.{b}")
        }
    } else if (-6..0).contains(&ex) {
        format!("0.{}{}", "0".repeat((-ex - 1) as usize), s)
    } else {
        let (a, b) = s.split_at(1);
        if b.is_empty() {
            format!("{a}e{ex}")
        } else {
            format!("{a}.{b}e{ex}")
        }
    }
}

/// `x` with exactly `decimals` digits after the point, truncated.
pub fn to_fixed(x: &BigFloat, decimals: usize) -> Result<String> {
    let y = x.abs();
    let int_bits = y.exponent().max(0) as usize;
    let wp = x.prec().max(int_bits + (decimals as f64 * std::f64::consts::LOG2_10).ceil() as usize) + 16;
    let n = if y.is_zero() {
        Nat::zero()
    } else {
        let k = decimals as i64;
        floor_snap(&scale10(&y, k, wp)?, &scale10(&ulp(&y)?, k, wp)?, wp)?
    };
    let mut s = nat_to_decimal(&n);
    if s.len() <= decimals {
        s = format!("{}{}", "0".repeat(decimals + 1 - s.len()), s);
    }
    if decimals > 0 {
        s.insert(s.len() - decimals, '.');
    }
    Ok(if x.sign() < 0 && !n.is_zero() { format!("-{s}") } else { s })
}

/// Parses `['-'] digits ['.' digits] ['e' ['-'] digits]` to `p.n` bits,
/// rounded to nearest.
pub fn from_decimal(text: &str, p: Precision) -> Result<BigFloat> {
    let bad = || Error::Parse(format!("malformed decimal: {text:?}"));
    let (neg, rest) = match text.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, text),
    };
    let (mant, exp) = match rest.split_once('e') {
        Some((m, e)) => (m, Some(e)),
        None => (rest, None),
    };
    let (ip, fp) = match mant.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (mant, None),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(ip) || fp.is_some_and(|f| !all_digits(f)) {
        return Err(bad());
    }
    let e10: i64 = match exp {
        None => 0,
        Some(e) => {
            let (en, ed) = match e.strip_prefix('-') {
                Some(d) => (true, d),
                None => (false, e),
            };
            if !all_digits(ed) {
                return Err(bad());
            }
            let v: i64 = ed.parse().map_err(|_| Error::Range)?;
            if en {
                -v
            } else {
                v
            }
        }
    };
    let fp = fp.unwrap_or("");
    let all = format!("{ip}{fp}");
    let all = all.trim_start_matches('0');
    if all.is_empty() {
        return Ok(BigFloat::zero(p.n));
    }
    let e10 = e10.checked_sub(fp.len() as i64).ok_or(Error::Range)?;
    // Reject before building an astronomically large power of ten.
    let mag = all.len() as f64 + e10 as f64;
    if mag.abs() * std::f64::consts::LOG2_10 > EXP_MAX as f64 + 64.0 {
        return Err(Error::Range);
    }
    let n = decimal_to_nat(all)?;
    let sign = if neg { -1 } else { 1 };
    let wp = p.working() + 16;
    let r = if e10 >= 0 {
        let m = n.mul(&pow10(e10 as u64));
        BigFloat::from_parts(sign, m.clone(), 0, m.bit_len().max(1))?
    } else {
        let nb = n.bit_len();
        let num = BigFloat::from_parts(sign, n, 0, wp.max(nb))?;
        let den = BigFloat::from_nat(&pow10((-e10) as u64), wp)?;
        div_bits(&num, &den, wp)?
    };
    round_nearest(&r, p.n)
}
