//! Exact-integer binary splitting for the rational-argument series.

use crate::bigfrac::BigFloat;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::nat::Nat;
use crate::newton::div_bits;

/// `log2(j!)` by summing logarithms (exact enough for term-count decisions).
pub fn log2_factorial(j: u64) -> f64 {
    (2..=j).map(|i| (i as f64).log2()).sum()
}

/// Largest `k` such that the terms `0..=k` of `Σ (p/q)^j/j!` are needed for
/// absolute accuracy `2^-n`: the first `k` with `(p/q)^(k+1)/(k+1)! ≤ 2^-n`.
pub fn exp_series_terms(p: &Nat, q: &Nat, n: usize) -> u64 {
    if p.is_zero() {
        return 0;
    }
    let lr = log2_nat(p) - log2_nat(q);
    let mut k: u64 = 0;
    loop {
        let next = (k + 1) as f64 * lr - log2_factorial(k + 1);
        if next <= -(n as f64) {
            return k;
        }
        k += 1;
    }
}

/// `log2` of a natural number through its top bits.
pub fn log2_nat(x: &Nat) -> f64 {
    let (m, e) = x.top_f64();
    m.log2() + e as f64
}

struct Pqt {
    p: Nat,
    q: Nat,
    t: Nat,
}

/// Splitting for `Σ_{j=a}^{b-1} Π_{i=a}^{j} p/(q·i)`.
fn exp_split(p: &Nat, q: &Nat, a: u64, b: u64) -> Pqt {
    if b - a == 1 {
        return Pqt { p: p.clone(), q: q.mul_word(a), t: p.clone() };
    }
    let m = a + (b - a) / 2;
    let l = exp_split(p, q, a, m);
    let r = exp_split(p, q, m, b);
    Pqt { t: l.t.mul(&r.q).add(&l.p.mul(&r.t)), p: l.p.mul(&r.p), q: l.q.mul(&r.q) }
}

/// `exp(p/q)` to `bits` working bits with no precondition check.
pub(crate) fn exp_rational_bits(p: &Nat, q: &Nat, bits: usize) -> Result<BigFloat> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let k = exp_series_terms(p, q, bits + 2);
    if k == 0 {
        return Ok(BigFloat::from_u64(1, bits));
    }
    let s = exp_split(p, q, 1, k + 1);
    let wp = bits + 4;
    let num = BigFloat::from_nat(&s.q.add(&s.t), wp)?;
    let den = BigFloat::from_nat(&s.q, wp)?;
    div_bits(&num, &den, wp)
}

struct Pqbt {
    p: Int,
    q: Nat,
    b: Nat,
    t: Int,
}

/// Generalised splitting for `Σ_i a(i)/b(i) · Π_{l≤i} p(l)/q(l)` with
/// `a = 1`, `b(i) = 2i+1`, `p(l) = -1`, `q(l) = j²` (and `p(0) = q(0) = 1`).
fn atan_split(j2: &Nat, a: u64, b: u64) -> Pqbt {
    if b - a == 1 {
        let (p, q) = if a == 0 { (Int::from_i64(1), Nat::one()) } else { (Int::from_i64(-1), j2.clone()) };
        return Pqbt { t: p.clone(), p, q, b: Nat::from(2 * a + 1) };
    }
    let m = a + (b - a) / 2;
    let l = atan_split(j2, a, m);
    let r = atan_split(j2, m, b);
    let t = l.t.mul_nat(&r.b.mul(&r.q)).add(&r.t.mul(&l.p).mul_nat(&l.b));
    Pqbt { p: l.p.mul(&r.p), q: l.q.mul(&r.q), b: l.b.mul(&r.b), t }
}

/// Number of terms of the arctangent series needed for `2^-bits`.
pub fn atan_terms(j: u64, bits: usize) -> u64 {
    let lj = (j as f64).log2();
    let mut t: u64 = 1;
    // Term t (zero-based) has magnitude 1 / ((2t+1) j^(2t+1)).
    while ((2 * t + 1) as f64) * lj + ((2 * t + 1) as f64).log2() <= bits as f64 {
        t += 1;
    }
    t
}

/// `atan(1/j)` to `bits` working bits.
pub(crate) fn atan_recip_bits(j: u64, bits: usize) -> Result<BigFloat> {
    if j < 2 {
        return Err(Error::Domain(format!("atan_recip needs j >= 2, got {j}")));
    }
    let wp = bits + 4;
    let nterms = atan_terms(j, wp);
    // The first omitted term bounds the alternating-series remainder.
    let omitted = ((2 * nterms + 1) as f64) * (j as f64).log2() + ((2 * nterms + 1) as f64).log2();
    assert!(omitted > wp as f64, "arctangent remainder exceeds 2^-{wp}");
    let j2 = Nat::from(j).square();
    let s = atan_split(&j2, 0, nterms);
    assert!(!s.t.is_negative(), "alternating sum of decreasing terms is positive");
    let num = BigFloat::from_nat(s.t.magnitude(), wp)?;
    let den = BigFloat::from_nat(&s.b.mul(&s.q).mul_word(j), wp)?;
    div_bits(&num, &den, wp)
}

struct Qt {
    q: Nat,
    t: Nat,
}

/// Splitting for `Σ_{j=a}^{b-1} 1/(a·(a+1)···j)`.
fn fact_split(a: u64, b: u64) -> Qt {
    if b - a == 1 {
        return Qt { q: Nat::from(a), t: Nat::one() };
    }
    let m = a + (b - a) / 2;
    let l = fact_split(a, m);
    let r = fact_split(m, b);
    Qt { t: l.t.mul(&r.q).add(&r.t), q: l.q.mul(&r.q) }
}

/// Smallest `N` with `N! > 2^bits`, so the sum of `1/j!` for `j < N` is
/// within `2^-bits` of `e`.
pub fn e_factorial_terms(bits: usize) -> u64 {
    let mut n: u64 = 1;
    while log2_factorial(n) <= bits as f64 + 1.0 {
        n += 1;
    }
    n
}

/// `e = Σ 1/j!` summed by binary splitting to `bits` working bits.
pub(crate) fn e_factorial_bits(bits: usize) -> Result<BigFloat> {
    let wp = bits + 4;
    let n = e_factorial_terms(wp);
    let s = fact_split(1, n);
    let num = BigFloat::from_nat(&s.q.add(&s.t), wp)?;
    let den = BigFloat::from_nat(&s.q, wp)?;
    div_bits(&num, &den, wp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_counts() {
        // (1/256)^10/10! is just below 2^-100.
        assert_eq!(exp_series_terms(&Nat::one(), &Nat::from(256u64), 100), 9);
        assert_eq!(exp_series_terms(&Nat::zero(), &Nat::one(), 100), 0);
        // 1/(41·5^41) is the first term below 2^-100.
        assert_eq!(atan_terms(5, 100), 20);
    }

    #[test]
    fn small_exactness() {
        let e = e_factorial_bits(64).unwrap();
        assert!((e.to_f64_lossy() - std::f64::consts::E).abs() < 1e-15);
        let a = atan_recip_bits(2, 64).unwrap();
        assert!((a.to_f64_lossy() - 0.5f64.atan()).abs() < 1e-15);
        let x = exp_rational_bits(&Nat::one(), &Nat::from(4u64), 64).unwrap();
        assert!((x.to_f64_lossy() - 0.25f64.exp()).abs() < 1e-15);
    }
}
