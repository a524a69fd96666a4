mod common;

use common::rand_unit;
use mparith::mulkernel;
use mparith::newton::{self, precision_schedule, Variant, START_BITS};
use mparith::{BigFloat, Error, Precision};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact product.
fn prod(x: &BigFloat, y: &BigFloat) -> BigFloat {
    mulkernel::mul(x, y, Precision::with_guard(x.prec() + y.prec() + 64, 2)).unwrap()
}

/// `-log2 |u − v|` computed without rounding.
fn err_bits(u: &BigFloat, v: &BigFloat) -> f64 {
    u.agreement_bits(v)
}

fn one() -> BigFloat {
    BigFloat::from_u64(1, 1)
}

/// Operand with a set leading bit, magnitude in `[2^(top-1), 2^top)`.
fn operand(rng: &mut ChaCha8Rng, bits: usize, top: i64) -> BigFloat {
    let lead = BigFloat::from_u64(1, 1).shift2(top - 1).unwrap();
    let x = rand_unit(rng, bits, top - 1);
    x.add(&lead, bits + 1).unwrap()
}

#[test]
fn reciprocal_and_quotient_accuracy() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [64usize, 200, 1024, 5000] {
        let p = Precision::new(n);
        for top in [-20i64, -3, 0, 1, 7, 20] {
            let a = operand(&mut rng, n, top);
            for v in [Variant::Recip2, Variant::Recip3] {
                let x = newton::recip(&a, p, v).unwrap();
                // |x·a − 1| ≤ 2^(2−n)
                assert!(err_bits(&prod(&x, &a), &one()) >= n as f64 - 2.0, "{} n={n} top={top}", v.name());
                let neg = newton::recip(&a.neg(), p, v).unwrap();
                assert_eq!(neg, x.neg());
            }
            let tb = rng.gen_range(-5..5);
            let b = operand(&mut rng, n, tb);
            for v in [Variant::Recip2, Variant::Recip3, Variant::DivKm] {
                let q = newton::div(&b, &a, p, v).unwrap();
                assert!(prod(&q, &a).rel_agreement_bits(&b) >= n as f64 - 3.0, "{} n={n} top={top}", v.name());
            }
        }
    }
}

#[test]
fn roots_accuracy() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [64usize, 300, 1024, 4096] {
        let p = Precision::new(n);
        for top in [-20i64, -1, 0, 1, 2, 19] {
            let a = operand(&mut rng, n, top);
            for v in [Variant::Rsqrt3, Variant::Rsqrt2, Variant::SqrtNewton, Variant::SqrtKm] {
                let y = newton::sqrt(&a, p, v).unwrap();
                assert!(prod(&y, &y).rel_agreement_bits(&a) >= n as f64 - 3.0, "sqrt {} n={n} top={top}", v.name());
            }
            for v in [Variant::Rsqrt3, Variant::Rsqrt2, Variant::SqrtNewton] {
                let x = newton::rsqrt(&a, p, v).unwrap();
                let x2a = prod(&prod(&x, &x), &a);
                assert!(err_bits(&x2a, &one()) >= n as f64 - 3.0, "rsqrt {} n={n} top={top}", v.name());
            }
        }
    }
}

#[test]
fn known_values() {
    let p = Precision::new(128);
    let two = BigFloat::from_u64(2, 64);
    let s = newton::sqrt(&two, p, Variant::SqrtKm).unwrap();
    assert!((s.to_f64_lossy() - std::f64::consts::SQRT_2).abs() < 1e-15);
    let r = newton::rsqrt(&two, p, Variant::Rsqrt2).unwrap();
    assert!((r.to_f64_lossy() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    let t = newton::recip(&BigFloat::from_u64(3, 64), p, Variant::Recip3).unwrap();
    assert!((t.to_f64_lossy() - 1.0 / 3.0).abs() < 1e-16);
    let s = newton::sqrt(&BigFloat::from_u64(1 << 40, 64), p, Variant::SqrtNewton).unwrap();
    assert_eq!(s.agreement_bits(&BigFloat::from_u64(1 << 20, 64)), f64::INFINITY);
}

/// Correct bits of each iterate against an accurate reference.
fn iterate_bits(iters: &[BigFloat], reference: &BigFloat) -> Vec<f64> {
    iters.iter().map(|x| x.rel_agreement_bits(reference)).collect()
}

#[test]
fn iterates_follow_schedule_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let n = 1 << 14;
    let p = Precision::new(n);
    let a = operand(&mut rng, n, 1);
    for (v, recip) in [(Variant::Recip2, true), (Variant::Recip3, true), (Variant::Rsqrt2, false), (Variant::Rsqrt3, false)] {
        let (iters, reference) = if recip {
            (newton::recip_iterates(&a, p, v).unwrap(), newton::recip(&a, Precision::new(n + 64), v).unwrap())
        } else {
            (newton::rsqrt_iterates(&a, p, v).unwrap(), newton::rsqrt(&a, Precision::new(n + 64), v).unwrap())
        };
        let levels = precision_schedule(p, v.order(), START_BITS).levels;
        assert_eq!(iters.len(), levels.len(), "{}", v.name());
        let bits = iterate_bits(&iters, &reference);
        for (b, &l) in bits.iter().zip(&levels) {
            assert!(*b >= l as f64 - 4.0, "{}: {b} bits at level {l}", v.name());
        }
        // Each step loses a few bits to rounding, which only washes out of
        // the ratio once the iterate is long.
        for w in bits.windows(2).filter(|w| w[0] >= 256.0) {
            let ratio = w[1].min(n as f64) / w[0];
            assert!((ratio - v.order() as f64).abs() <= 0.1, "{}: ratio {ratio} ({w:?})", v.name());
        }
    }
}

#[test]
fn power_of_two_scaling_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in [64usize, 777, 3000] {
        let p = Precision::new(n);
        let a = operand(&mut rng, n, 0);
        for k in [-40i64, -1, 1, 13] {
            let ak = a.shift2(2 * k).unwrap();
            for v in [Variant::Recip2, Variant::Recip3] {
                assert_eq!(newton::recip(&ak, p, v).unwrap(), newton::recip(&a, p, v).unwrap().shift2(-2 * k).unwrap());
            }
            for v in [Variant::Rsqrt3, Variant::Rsqrt2, Variant::SqrtNewton, Variant::SqrtKm] {
                assert_eq!(newton::sqrt(&ak, p, v).unwrap(), newton::sqrt(&a, p, v).unwrap().shift2(k).unwrap());
            }
            assert_eq!(
                newton::rsqrt(&ak, p, Variant::Rsqrt3).unwrap(),
                newton::rsqrt(&a, p, Variant::Rsqrt3).unwrap().shift2(-k).unwrap()
            );
        }
    }
}

#[test]
fn identity_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in [96usize, 600, 3000] {
        let p = Precision::new(n);
        for top in [-9i64, 0, 5] {
            let a = operand(&mut rng, n, top);
            let b = operand(&mut rng, n, -top);
            let sq = prod(&a, &a);
            let third = n.div_ceil(3) as f64;
            for (name, s) in [
                ("recip", newton::square_via_recip(&a, p).unwrap()),
                ("sqrt", newton::square_via_sqrt_with(&a, p, None).unwrap()),
                ("rsqrt", newton::square_via_rsqrt_with(&a, p, None).unwrap()),
            ] {
                assert!(s.rel_agreement_bits(&sq) >= third - 4.0, "square via {name}, n={n}: {}", s.rel_agreement_bits(&sq));
            }
            let two_thirds = (2 * n).div_ceil(3) as f64;
            let r = newton::rsqrt_via_sqrts(&a, p).unwrap();
            let want = newton::rsqrt(&a, Precision::new(n + 64), Variant::Rsqrt3).unwrap();
            assert!(r.rel_agreement_bits(&want) >= two_thirds - 4.0, "rsqrt via sqrts, n={n}");
            let q = newton::div_via_sqrts(&b, &a.neg(), p).unwrap();
            let want = newton::div(&b, &a.neg(), Precision::new(n + 64), Variant::Recip2).unwrap();
            assert!(q.rel_agreement_bits(&want) >= two_thirds - 4.0, "div via sqrts, n={n}");
        }
    }
}

#[test]
fn bad_arguments() {
    let p = Precision::new(64);
    let z = BigFloat::zero(64);
    let m = BigFloat::from_f64(-2.0, 64).unwrap();
    assert_eq!(newton::div(&one(), &z, p, Variant::DivKm), Err(Error::DivisionByZero));
    assert_eq!(newton::div_via_sqrts(&one(), &z, p), Err(Error::DivisionByZero));
    assert!(matches!(newton::rsqrt(&m, p, Variant::Rsqrt2), Err(Error::Domain(_))));
    assert!(matches!(newton::rsqrt_via_sqrts(&z, p), Err(Error::Domain(_))));
    assert!(matches!(newton::sqrt(&m, p, Variant::SqrtKm), Err(Error::Domain(_))));
    assert!(matches!(newton::rsqrt(&one(), p, Variant::Recip2), Err(Error::Config(_))));
    assert!(matches!(Variant::parse("recip4"), Err(Error::Config(_))));
    assert!(newton::square_via_recip(&z, p).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recip_of_recip_returns(seed in any::<u64>(), n in 40usize..1500, top in -60i64..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = operand(&mut rng, n, top);
        let p = Precision::new(n);
        let back = newton::recip(&newton::recip(&a, p, Variant::Recip2).unwrap(), p, Variant::Recip3).unwrap();
        prop_assert!(back.rel_agreement_bits(&a) >= n as f64 - 4.0);
    }

    #[test]
    fn sqrt_times_rsqrt_is_one(seed in any::<u64>(), n in 40usize..1500, top in -60i64..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = operand(&mut rng, n, top);
        let p = Precision::new(n);
        let s = newton::sqrt(&a, p, Variant::SqrtKm).unwrap();
        let r = newton::rsqrt(&a, p, Variant::Rsqrt3).unwrap();
        prop_assert!(err_bits(&prod(&s, &r), &one()) >= n as f64 - 4.0);
    }
}
