mod common;

use common::{exact, rand_unit, to_biguint};
use mparith::mulkernel::{self, karatsuba_limbs, school_limbs, KARATSUBA_THRESHOLD};
use mparith::{BigFloat, Precision};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `v / 2^shift` with the common powers of two removed.
fn reduce(mut v: BigInt, mut shift: i64) -> (BigInt, i64) {
    if v.is_zero() {
        return (v, 0);
    }
    let tz = v.trailing_zeros().unwrap() as i64;
    let k = if shift > 0 { tz.min(shift) } else { 0 };
    v >>= k as usize;
    shift -= k;
    if shift < 0 {
        v <<= (-shift) as usize;
        shift = 0;
    }
    (v, shift)
}

/// Exact product truncated to its leading `n` bits.
fn oracle(x: &BigFloat, y: &BigFloat, n: usize) -> (BigInt, i64) {
    if x.is_zero() || y.is_zero() {
        return (BigInt::zero(), 0);
    }
    let (sx, mx, ex) = x.to_parts();
    let (sy, my, ey) = y.to_parts();
    let mut p: BigUint = to_biguint(&mx) * to_biguint(&my);
    let mut e = ex + ey;
    let bits = p.bits() as usize;
    if bits > n {
        p >>= bits - n;
        e += (bits - n) as i64;
    }
    let v = if sx * sy < 0 { -BigInt::from(p) } else { BigInt::from(p) };
    reduce(v, -e)
}

fn operand(rng: &mut ChaCha8Rng, bits: usize) -> BigFloat {
    let top = rng.gen_range(-20..20);
    let x = rand_unit(rng, bits, top);
    if rng.gen() {
        x.neg()
    } else {
        x
    }
}

#[test]
fn small_products() {
    let p = Precision::new(64);
    let x = BigFloat::from_f64(1.5, 64).unwrap();
    assert_eq!(mulkernel::mul_school(&x, &BigFloat::from_u64(2, 64), p).unwrap(), BigFloat::from_u64(3, 64));
    assert!(mulkernel::mul_school(&BigFloat::zero(64), &x, p).unwrap().is_zero());
    assert!(mulkernel::mul(&x, &BigFloat::zero(64), p).unwrap().is_zero());
    assert_eq!(mulkernel::square(&BigFloat::from_u64(3, 64), p).unwrap(), BigFloat::from_u64(9, 64));
    assert!(mulkernel::square(&BigFloat::zero(64), p).unwrap().is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let y = operand(&mut rng, 4000);
    let q = Precision::new(4000);
    assert_eq!(mulkernel::mul_karatsuba(&y, &BigFloat::from_u64(1, 1), q).unwrap(), y);
}

#[test]
fn products_match_integer_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for bits in [64, 512, 3000, 9000] {
        for _ in 0..40 {
            let x = operand(&mut rng, bits);
            let y = operand(&mut rng, bits);
            let n = rng.gen_range(1..=2 * bits);
            let p = Precision::new(n);
            assert_eq!(exact(&mulkernel::mul_school(&x, &y, p).unwrap()), oracle(&x, &y, n));
            assert_eq!(exact(&mulkernel::mul(&x, &y, p).unwrap()), oracle(&x, &y, n));
        }
    }
}

#[test]
fn karatsuba_equals_schoolbook_1000_pairs_per_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bits = 128;
    while bits <= 8192 {
        let p = Precision::new(bits);
        for _ in 0..1000 {
            let x = operand(&mut rng, bits);
            let yb = rng.gen_range(bits / 2..=bits);
            let y = operand(&mut rng, yb);
            let s = mulkernel::mul_school(&x, &y, p).unwrap();
            assert_eq!(mulkernel::mul_karatsuba(&x, &y, p).unwrap(), s);
            assert_eq!(mulkernel::mul(&x, &y, p).unwrap(), s);
        }
        bits *= 2;
    }
}

#[test]
fn square_is_mul_with_itself() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for bits in [100, 2048, 5000] {
        let x = operand(&mut rng, bits);
        let p = Precision::new(bits);
        assert_eq!(mulkernel::square(&x, p).unwrap(), mulkernel::mul(&x, &x, p).unwrap());
    }
}

#[test]
fn product_from_two_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for bits in [64, 256, 1024, 4096] {
        let p = Precision::new(bits);
        for _ in 0..50 {
            let x = operand(&mut rng, bits);
            let y = operand(&mut rng, bits);
            let m = mulkernel::mul(&x, &y, Precision::new(bits + 64)).unwrap();
            let v = mulkernel::mul_via_squares(&x, &y, p, None).unwrap();
            assert!(v.rel_agreement_bits(&m) >= (bits - 3) as f64, "{bits}: {}", v.rel_agreement_bits(&m));
        }
    }
}

fn work(limbs: usize, karatsuba: bool) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(limbs as u64);
    let a: Vec<u64> = (0..limbs).map(|_| rng.gen()).collect();
    let b: Vec<u64> = (0..limbs).map(|_| rng.gen()).collect();
    let mut w = 0;
    if karatsuba {
        karatsuba_limbs(&a, &b, KARATSUBA_THRESHOLD, &mut w);
    } else {
        school_limbs(&a, &b, &mut w);
    }
    w
}

#[test]
fn limb_work_growth() {
    // 2^14 bits and up: doubling costs about 4x schoolbook, 3x Karatsuba.
    for limbs in [256usize, 512, 1024] {
        let s = work(2 * limbs, false) as f64 / work(limbs, false) as f64;
        let k = work(2 * limbs, true) as f64 / work(limbs, true) as f64;
        assert!((s / 4.0 - 1.0).abs() <= 0.1, "schoolbook {s}");
        assert!((k / 3.0 - 1.0).abs() <= 0.1, "karatsuba {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn limb_products_agree(a in proptest::collection::vec(any::<u64>(), 1..120),
                           b in proptest::collection::vec(any::<u64>(), 1..120),
                           t in 1usize..40) {
        let mut w = 0;
        let k = karatsuba_limbs(&a, &b, t, &mut w);
        let s = school_limbs(&a, &b, &mut w);
        prop_assert_eq!(&k, &s);
        let big = |v: &[u64]| BigUint::from_slice(&v.iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect::<Vec<_>>());
        prop_assert_eq!(big(&s), big(&a) * big(&b));
    }

    #[test]
    fn product_sign_and_magnitude(seed in any::<u64>(), bits in 1usize..600) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = operand(&mut rng, bits);
        let y = operand(&mut rng, bits);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let p = Precision::new(bits);
        let m = mulkernel::mul(&x, &y, p).unwrap();
        prop_assert_eq!(m.sign(), x.sign() * y.sign());
        prop_assert!(exact(&m).0.abs() > BigInt::zero());
    }
}
