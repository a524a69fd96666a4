use mparith::costs::{
    self, composed_table, evaluate_trace, evaluate_weighted, ratio_table, run_reduction, table_bound, CostModel, REDUCTIONS,
    TABLE_OPS,
};
use mparith::{CostLedger, Error, OpClass};
use proptest::prelude::*;

const N: usize = 1 << 16;

fn ratio(name: &str) -> f64 {
    ratio_table(&[N], &[name]).unwrap()[0].ratio
}

#[test]
fn asymptotic_ratios_under_linear_model() {
    for (name, want) in [("recip2", 3.0), ("rsqrt3", 4.5), ("div_km", 3.5), ("sqrt_km", 4.25), ("mul_via_squares", 2.0)] {
        let r = ratio(name);
        assert!((r / want - 1.0).abs() <= 0.05, "{name}: {r} against {want}");
    }
}

#[test]
fn every_cell_within_its_bound() {
    for c in ratio_table(&[4096, N], &[]).unwrap() {
        assert!(c.ratio <= c.bound * 1.1, "{} at {}: {} > {}", c.reduction, c.n, c.ratio, c.bound);
        assert!(c.ratio > 0.0);
    }
}

#[test]
fn recip2_ratio_under_power_models() {
    // Levels halve, each costing one full and one half-length product:
    // (1 + 2^-a) / (1 - 2^-a).
    let l = run_reduction("recip2", N).unwrap();
    for a in [1.0, CostModel::karatsuba_exponent(), 2.0] {
        let m = CostModel::Power(a);
        let got = evaluate_trace(&l, &m, Some(&[OpClass::Mul, OpClass::Square])) / m.cost(N);
        let h = 0.5f64.powf(a);
        let want = (1.0 + h) / (1.0 - h);
        assert!((got / want - 1.0).abs() <= 0.05, "alpha {a}: {got} against {want}");
    }
    let k = evaluate_trace(&l, &CostModel::Karatsuba, None) / CostModel::Karatsuba.cost(N);
    assert!(k < ratio("recip2"));
}

#[test]
fn reductions_are_deterministic() {
    for r in REDUCTIONS {
        let a = run_reduction(r.name, 3000).unwrap();
        let b = run_reduction(r.name, 3000).unwrap();
        assert_eq!(a, b, "{}", r.name);
        assert!(!a.is_empty());
    }
    assert!(matches!(run_reduction("cube", 64), Err(Error::Config(_))));
    assert!(matches!(ratio_table(&[64], &["cube"]), Err(Error::Config(_))));
}

#[test]
fn ledger_csv_roundtrip() {
    let l = run_reduction("sqrt_km", 5000).unwrap();
    let back = CostLedger::from_csv(&l.to_csv()).unwrap();
    assert_eq!(back, l);
    assert!(CostLedger::from_csv("class,bits\nmul,abc\n").is_err());
}

#[test]
fn composed_table_respects_measured_cells() {
    let cells = ratio_table(&[N], &[]).unwrap();
    let t = composed_table(&cells);
    for c in &cells {
        let best = cells.iter().filter(|d| d.x == c.x && d.y == c.y).map(|d| d.ratio).fold(f64::INFINITY, f64::min);
        let v = t.get(c.x, c.y).unwrap();
        // A cell keeps its measured mark unless some chain is cheaper.
        if t.is_measured(c.x, c.y) {
            assert_eq!(v, best);
        } else {
            assert!(v < best);
        }
    }
    for &y in &TABLE_OPS {
        assert_eq!(t.get(y, y), Some(1.0));
        for &x in &TABLE_OPS {
            for &z in &TABLE_OPS {
                if let (Some(xy), Some(xz), Some(zy)) = (t.get(x, y), t.get(x, z), t.get(z, y)) {
                    assert!(xy <= xz * zy * (1.0 + 1e-12), "{x:?} from {y:?} via {z:?}");
                }
            }
        }
    }
    assert!(table_bound(OpClass::Recip, OpClass::Mul) >= 3.0);
    assert!(costs::bounds_csv().lines().count() > TABLE_OPS.len());
}

#[test]
fn weighted_evaluation_needs_every_class() {
    let mut l = CostLedger::new();
    l.charge(OpClass::Mul, 100);
    l.charge(OpClass::Sqrt, 100);
    assert!(matches!(evaluate_weighted(&l, &CostModel::Linear, &[(OpClass::Mul, 1.0)]), Err(Error::Config(_))));
    let w = evaluate_weighted(&l, &CostModel::Linear, &[(OpClass::Mul, 1.0), (OpClass::Sqrt, 3.0)]).unwrap();
    assert_eq!(w, 400.0);
}

#[test]
fn tabulated_model() {
    assert!(CostModel::tabulated(vec![]).is_err());
    assert!(CostModel::tabulated(vec![(10, 5.0), (20, 4.0)]).is_err());
    let m = CostModel::tabulated(vec![(200, 50.0), (100, 10.0)]).unwrap();
    assert_eq!(m.cost(50), 5.0);
    assert_eq!(m.cost(150), 30.0);
    assert_eq!(m.cost(300), 90.0);
}

fn class() -> impl Strategy<Value = OpClass> {
    prop::sample::select(vec![OpClass::Mul, OpClass::Square, OpClass::Div, OpClass::Recip, OpClass::Sqrt, OpClass::Rsqrt, OpClass::Add])
}

proptest! {
    #[test]
    fn trace_cost_is_additive(a in prop::collection::vec((class(), 1usize..100_000), 0..40),
                              b in prop::collection::vec((class(), 1usize..100_000), 0..40),
                              alpha in 1.0f64..2.5) {
        let (mut la, mut lb) = (CostLedger::new(), CostLedger::new());
        for &(c, n) in &a { la.charge(c, n); }
        for &(c, n) in &b { lb.charge(c, n); }
        let m = CostModel::Power(alpha);
        let (ca, cb) = (evaluate_trace(&la, &m, None), evaluate_trace(&lb, &m, None));
        la.extend(&lb);
        let both = evaluate_trace(&la, &m, None);
        prop_assert!((both - ca - cb).abs() <= 1e-9 * both.max(1.0));
        let total: f64 = la.totals(&m).values().sum();
        prop_assert!((total - both).abs() <= 1e-9 * both.max(1.0));
        prop_assert_eq!(la.len(), a.len() + b.len());
    }

    #[test]
    fn models_are_monotone(n in 1usize..1_000_000, d in 1usize..1000) {
        for m in [CostModel::Linear, CostModel::Karatsuba, CostModel::Power(2.0)] {
            prop_assert!(m.cost(n + d) > m.cost(n));
        }
    }
}
