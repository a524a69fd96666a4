//! Independent integer oracles shared by the integration tests.
#![allow(dead_code)]

use mparith::{BigFloat, Nat};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::Rng;

pub fn to_biguint(n: &Nat) -> BigUint {
    let mut words = Vec::new();
    for &l in n.limbs() {
        words.push(l as u32);
        words.push((l >> 32) as u32);
    }
    BigUint::new(words)
}

pub fn from_biguint(b: &BigUint) -> Nat {
    Nat::from_limbs(b.to_u64_digits())
}

/// `x` as `num / 2^shift` in lowest terms.
pub fn exact(x: &BigFloat) -> (BigInt, i64) {
    let (s, m, e2) = x.to_parts();
    let mut v = BigInt::from(to_biguint(&m));
    if s < 0 {
        v = -v;
    }
    if e2 >= 0 {
        return (v << e2 as usize, 0);
    }
    let mut shift = -e2;
    while shift > 0 && !v.is_zero() && (&v % 2u32).is_zero() {
        v >>= 1;
        shift -= 1;
    }
    if v.is_zero() {
        shift = 0;
    }
    (v, shift)
}

/// `⌊10^digits · e⌋` from `Σ 1/k!` in fixed point with ten guard digits.
pub fn e_scaled(digits: u32) -> BigUint {
    let scale = BigUint::from(10u32).pow(digits + 10);
    let mut term = scale.clone();
    let mut sum = BigUint::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term;
        term /= k;
        k += 1;
    }
    sum / BigUint::from(10u32).pow(10)
}

fn atan_fixed(j: u32, scale: &BigInt) -> BigInt {
    let j2 = BigInt::from(j) * BigInt::from(j);
    let mut power = scale / BigInt::from(j);
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &j2;
        k += 1;
    }
    sum
}

/// `⌊10^digits · π⌋` from `π/4 = atan(1/2) + atan(1/3)` in fixed point.
pub fn pi_scaled(digits: u32) -> BigUint {
    let scale = BigInt::from(10u32).pow(digits + 10);
    let v = (atan_fixed(2, &scale) + atan_fixed(3, &scale)) * 4;
    let d: BigInt = v / BigInt::from(10u32).pow(10);
    d.to_biguint().unwrap()
}

/// Leading digits of a scaled constant with a point after the first.
pub fn with_point(v: &BigUint) -> String {
    let s = v.to_string();
    format!("{}.{}", &s[..1], &s[1..])
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k: u32| a * k)
}

/// Uniform `m · 2^(e2)` with an `n`-bit mantissa `m`, scaled into `[0, 2^top)`.
pub fn rand_unit<R: Rng>(rng: &mut R, n: usize, top: i64) -> BigFloat {
    let words: Vec<u64> = (0..n.div_ceil(64)).map(|_| rng.gen()).collect();
    let m = Nat::from_limbs(words).low_bits(n);
    BigFloat::from_parts(1, m, top - n as i64, n).unwrap()
}

pub fn rand_nat<R: Rng>(rng: &mut R, bits: usize) -> Nat {
    let words: Vec<u64> = (0..bits.div_ceil(64)).map(|_| rng.gen()).collect();
    Nat::from_limbs(words).low_bits(bits)
}
