//! Cost ledgers, synthetic cost models, and the operation-ratio table.
//!
//! Kernels record `(class, precision)` events in a ledger that the caller
//! passes explicitly. Totals come from replaying the events under a model,
//! so measured constants are deterministic and independent of the machine.
//!
//! The multiplication kernels compute the full double-length product before
//! truncating, so an `M` event here prices a full product (the `M*` flavour),
//! while the ratio bounds being checked are stated for a leading-half product.
//! Under the synthetic models both are priced identically.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::bigfrac::{BigFloat, Precision};
use crate::error::{Error, Result};
use crate::mulkernel;
use crate::newton::{self, Variant};

/// Operation classes recorded in a ledger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpClass {
    Mul,
    Square,
    Div,
    Recip,
    Sqrt,
    Rsqrt,
    Add,
    Eval,
}

impl OpClass {
    pub const ALL: [OpClass; 8] = [
        OpClass::Mul,
        OpClass::Square,
        OpClass::Div,
        OpClass::Recip,
        OpClass::Sqrt,
        OpClass::Rsqrt,
        OpClass::Add,
        OpClass::Eval,
    ];

    pub fn code(self) -> &'static str {
        match self {
            OpClass::Mul => "M",
            OpClass::Square => "S",
            OpClass::Div => "D",
            OpClass::Recip => "I",
            OpClass::Sqrt => "R",
            OpClass::Rsqrt => "Q",
            OpClass::Add => "A",
            OpClass::Eval => "eval",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        OpClass::ALL
            .into_iter()
            .find(|c| c.code() == s)
            .ok_or_else(|| Error::Config(format!("unknown operation class {s:?}")))
    }
}

/// Append-only list of `(class, precision_bits)` events.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostLedger {
    events: Vec<(OpClass, usize)>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, class: OpClass, bits: usize) {
        self.events.push((class, bits));
    }

    pub fn events(&self) -> &[(OpClass, usize)] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn count(&self, class: OpClass) -> usize {
        self.events.iter().filter(|e| e.0 == class).count()
    }

    pub fn extend(&mut self, other: &CostLedger) {
        self.events.extend_from_slice(&other.events);
    }

    /// Per-class totals under `model`.
    pub fn totals(&self, model: &CostModel) -> BTreeMap<OpClass, f64> {
        let mut t = BTreeMap::new();
        for &(c, n) in &self.events {
            *t.entry(c).or_insert(0.0) += model.cost(n);
        }
        t
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("class,precision_bits\n");
        for (c, n) in &self.events {
            let _ = writeln!(s, "{},{}", c.code(), n);
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut ledger = CostLedger::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 && line.trim() == "class,precision_bits" {
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let (c, n) = line.split_once(',').ok_or_else(|| Error::Parse(format!("bad ledger row {line:?}")))?;
            let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad precision in {line:?}")))?;
            ledger.charge(OpClass::parse(c.trim())?, n);
        }
        Ok(ledger)
    }
}

/// Cost of one operation as a function of its precision.
#[derive(Clone, Debug, PartialEq)]
pub enum CostModel {
    Linear,
    Power(f64),
    Karatsuba,
    /// Piecewise-linear through `(bits, cost)` points, extended linearly
    /// through the origin below the first point and at the last slope above.
    Tabulated(Vec<(usize, f64)>),
}

impl CostModel {
    pub fn karatsuba_exponent() -> f64 {
        3f64.log2()
    }

    pub fn tabulated(mut points: Vec<(usize, f64)>) -> Result<Self> {
        points.sort_by_key(|p| p.0);
        if points.is_empty() || points[0].0 == 0 {
            return Err(Error::Config("tabulated model needs points with positive sizes".into()));
        }
        if points.windows(2).any(|w| w[1].1 < w[0].1 || w[1].0 == w[0].0) || points[0].1 <= 0.0 {
            return Err(Error::Config("tabulated costs must be positive and nondecreasing".into()));
        }
        Ok(CostModel::Tabulated(points))
    }

    pub fn cost(&self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            CostModel::Linear => x,
            CostModel::Power(a) => x.powf(*a),
            CostModel::Karatsuba => x.powf(Self::karatsuba_exponent()),
            CostModel::Tabulated(pts) => {
                let (n0, c0) = pts[0];
                if n <= n0 {
                    return c0 * x / n0 as f64;
                }
                for w in pts.windows(2) {
                    let ((a, ca), (b, cb)) = (w[0], w[1]);
                    if n <= b {
                        let t = (x - a as f64) / (b - a) as f64;
                        return ca + t * (cb - ca);
                    }
                }
                let k = pts.len();
                if k == 1 {
                    return c0 * x / n0 as f64;
                }
                let ((a, ca), (b, cb)) = (pts[k - 2], pts[k - 1]);
                cb + (x - b as f64) * (cb - ca) / (b - a) as f64
            }
        }
    }
}

/// Total cost of the ledger's events, optionally restricted to some classes.
pub fn evaluate_trace(ledger: &CostLedger, model: &CostModel, filter: Option<&[OpClass]>) -> f64 {
    ledger
        .events()
        .iter()
        .filter(|(c, _)| filter.is_none_or(|f| f.contains(c)))
        .map(|&(_, n)| model.cost(n))
        .sum()
}

/// Total cost with a weight per class (events of unlisted classes are an error).
pub fn evaluate_weighted(ledger: &CostLedger, model: &CostModel, weights: &[(OpClass, f64)]) -> Result<f64> {
    let mut total = 0.0;
    for &(c, n) in ledger.events() {
        let w = weights
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, w)| *w)
            .ok_or_else(|| Error::Config(format!("no weight for class {} in this row", c.code())))?;
        total += w * model.cost(n);
    }
    Ok(total)
}

pub fn charge(ledger: &mut CostLedger, class: OpClass, n: usize) {
    ledger.charge(class, n);
}

/// Operations forming the rows and columns of the ratio table.
pub const TABLE_OPS: [OpClass; 6] = [OpClass::Div, OpClass::Recip, OpClass::Mul, OpClass::Rsqrt, OpClass::Sqrt, OpClass::Square];

/// Published upper bounds, indexed `[row Y][column X]` in `TABLE_OPS` order.
pub const TABLE_BOUNDS: [[f64; 6]; 6] = [
    [1.0, 1.0, 2.0, 3.0, 2.0, 2.0],
    [7.0, 1.0, 6.0, 15.0, 14.0, 3.0],
    [4.0, 3.0, 1.0, 4.5, 5.5, 1.0],
    [10.0, 4.0, 6.0, 1.0, 5.0, 3.0],
    [7.5, 6.0, 6.0, 3.0, 1.0, 3.0],
    [7.5, 5.5, 2.0, 7.0, 9.0, 1.0],
];

/// Bounds improved by the final-residual (Karp–Markstein) steps.
pub const KM_BOUND_DM: f64 = 3.5;
pub const KM_BOUND_RM: f64 = 4.25;
/// Bound for the second-order inverse square root iteration.
pub const RSQRT2_BOUND_QM: f64 = 5.0;

fn table_index(c: OpClass) -> usize {
    TABLE_OPS.iter().position(|&k| k == c).expect("table operation")
}

pub fn table_bound(x: OpClass, y: OpClass) -> f64 {
    TABLE_BOUNDS[table_index(y)][table_index(x)]
}

/// A measured way of performing operation `x` using operation `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub name: &'static str,
    pub x: OpClass,
    pub y: OpClass,
}

pub const REDUCTIONS: &[Reduction] = &[
    Reduction { name: "recip2", x: OpClass::Recip, y: OpClass::Mul },
    Reduction { name: "recip3", x: OpClass::Recip, y: OpClass::Mul },
    Reduction { name: "rsqrt3", x: OpClass::Rsqrt, y: OpClass::Mul },
    Reduction { name: "rsqrt2", x: OpClass::Rsqrt, y: OpClass::Mul },
    Reduction { name: "div", x: OpClass::Div, y: OpClass::Mul },
    Reduction { name: "div_km", x: OpClass::Div, y: OpClass::Mul },
    Reduction { name: "sqrt_rsqrt3", x: OpClass::Sqrt, y: OpClass::Mul },
    Reduction { name: "sqrt_km", x: OpClass::Sqrt, y: OpClass::Mul },
    Reduction { name: "square", x: OpClass::Square, y: OpClass::Mul },
    Reduction { name: "mul_via_squares", x: OpClass::Mul, y: OpClass::Square },
    Reduction { name: "recip3", x: OpClass::Recip, y: OpClass::Square },
    Reduction { name: "rsqrt3", x: OpClass::Rsqrt, y: OpClass::Square },
    Reduction { name: "div_recip3", x: OpClass::Div, y: OpClass::Square },
    Reduction { name: "sqrt_rsqrt3", x: OpClass::Sqrt, y: OpClass::Square },
    Reduction { name: "recip_by_div", x: OpClass::Recip, y: OpClass::Div },
    Reduction { name: "mul_by_div", x: OpClass::Mul, y: OpClass::Div },
    Reduction { name: "square_by_div", x: OpClass::Square, y: OpClass::Div },
    Reduction { name: "sqrt_newton", x: OpClass::Sqrt, y: OpClass::Div },
    Reduction { name: "rsqrt_by_div", x: OpClass::Rsqrt, y: OpClass::Div },
    Reduction { name: "square_via_recip", x: OpClass::Square, y: OpClass::Recip },
    Reduction { name: "square_via_sqrt", x: OpClass::Square, y: OpClass::Sqrt },
    Reduction { name: "rsqrt_via_sqrts", x: OpClass::Rsqrt, y: OpClass::Sqrt },
    Reduction { name: "square_via_rsqrt", x: OpClass::Square, y: OpClass::Rsqrt },
];

/// Class weights expressing every event of a row in units of `y`.
fn row_weights(y: OpClass) -> Vec<(OpClass, f64)> {
    let mut w = vec![(y, 1.0), (OpClass::Add, 0.0)];
    match y {
        OpClass::Mul => w.push((OpClass::Square, 1.0)),
        // A product costs two squarings.
        OpClass::Square => w.push((OpClass::Mul, 2.0)),
        _ => {}
    }
    w
}

/// Runs reduction `name` producing an `n`-bit result and returns its trace.
pub fn run_reduction(name: &str, n: usize) -> Result<CostLedger> {
    let mut l = CostLedger::new();
    let p = Precision::new(n);
    let a = reference_operand(n);
    let b = reference_operand(n + 1).neg();
    match name {
        "recip2" | "recip3" => {
            newton::recip_with(&a, p, Variant::parse(name)?, Some(&mut l))?;
        }
        "rsqrt3" | "rsqrt2" => {
            newton::rsqrt_with(&a, p, Variant::parse(name)?, Some(&mut l))?;
        }
        "div" => {
            newton::div_with(&b, &a, p, Variant::Recip2, Some(&mut l))?;
        }
        "div_recip3" => {
            newton::div_with(&b, &a, p, Variant::Recip3, Some(&mut l))?;
        }
        "div_km" => {
            newton::div_with(&b, &a, p, Variant::DivKm, Some(&mut l))?;
        }
        "sqrt_rsqrt3" => {
            newton::sqrt_with(&a, p, Variant::Rsqrt3, Some(&mut l))?;
        }
        "sqrt_km" => {
            newton::sqrt_with(&a, p, Variant::SqrtKm, Some(&mut l))?;
        }
        "sqrt_newton" => {
            newton::sqrt_with(&a, p, Variant::SqrtNewton, Some(&mut l))?;
        }
        "rsqrt_by_div" => {
            newton::rsqrt_with(&a, p, Variant::SqrtNewton, Some(&mut l))?;
        }
        "square" => {
            l.charge(OpClass::Square, n);
            mulkernel::square(&a, p)?;
        }
        "mul_via_squares" => {
            mulkernel::mul_via_squares(&a, &b, p, Some(&mut l))?;
        }
        "recip_by_div" => {
            l.charge(OpClass::Div, n);
            newton::div(&BigFloat::from_u64(1, n), &a, p, Variant::Recip2)?;
        }
        "mul_by_div" => {
            // a·b = a / (1/b)
            l.charge(OpClass::Div, n);
            let inv = newton::div(&BigFloat::from_u64(1, n), &b, p, Variant::Recip2)?;
            l.charge(OpClass::Div, n);
            newton::div(&a, &inv, p, Variant::Recip2)?;
        }
        "square_by_div" => {
            l.charge(OpClass::Div, n);
            let inv = newton::div(&BigFloat::from_u64(1, n), &a, p, Variant::Recip2)?;
            l.charge(OpClass::Div, n);
            newton::div(&a, &inv, p, Variant::Recip2)?;
        }
        "square_via_recip" => {
            newton::square_via_recip_with(&a, Precision::new(3 * n), Some(&mut l))?;
        }
        "square_via_sqrt" => {
            newton::square_via_sqrt_with(&a, Precision::new(3 * n), Some(&mut l))?;
        }
        "square_via_rsqrt" => {
            newton::square_via_rsqrt_with(&a, Precision::new(3 * n), Some(&mut l))?;
        }
        "rsqrt_via_sqrts" => {
            newton::rsqrt_via_sqrts_with(&a, Precision::new(3 * n / 2), Some(&mut l))?;
        }
        _ => return Err(Error::Config(format!("unknown reduction {name:?}"))),
    }
    Ok(l)
}

/// Fixed operand in `[1/2, 1)` whose bits are irregular at every precision.
pub fn reference_operand(n: usize) -> BigFloat {
    // Digits of sqrt(2) - 1 scaled, generated by a simple word recurrence.
    let words = n.div_ceil(64) + 1;
    let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut limbs = Vec::with_capacity(words);
    for _ in 0..words {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        limbs.push(s);
    }
    let last = words - 1;
    limbs[last] |= 1 << 63;
    let m = crate::nat::Nat::from_limbs(limbs);
    BigFloat::from_parts(1, m, -((words * 64) as i64), n).expect("operand in range")
}

/// One measured cell: `x` from `y` via `reduction`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioCell {
    pub reduction: &'static str,
    pub x: OpClass,
    pub y: OpClass,
    pub n: usize,
    pub ratio: f64,
    pub bound: f64,
}

/// Measures each requested reduction at each precision under the linear model.
/// An empty `variants` slice means every known reduction.
pub fn ratio_table(n_list: &[usize], variants: &[&str]) -> Result<Vec<RatioCell>> {
    let chosen: Vec<&Reduction> = if variants.is_empty() {
        REDUCTIONS.iter().collect()
    } else {
        let mut v = Vec::new();
        for name in variants {
            let found: Vec<&Reduction> = REDUCTIONS.iter().filter(|r| r.name == *name).collect();
            if found.is_empty() {
                return Err(Error::Config(format!("unknown reduction {name:?}")));
            }
            v.extend(found);
        }
        v
    };
    let model = CostModel::Linear;
    let mut out = Vec::new();
    for &n in n_list {
        for r in &chosen {
            let ledger = run_reduction(r.name, n)?;
            let total = evaluate_weighted(&ledger, &model, &row_weights(r.y))?;
            let bound = match (r.x, r.y, r.name) {
                (_, _, "div_km") => KM_BOUND_DM,
                (_, _, "sqrt_km") => KM_BOUND_RM,
                (_, _, "rsqrt2") => RSQRT2_BOUND_QM,
                _ => table_bound(r.x, r.y),
            };
            out.push(RatioCell { reduction: r.name, x: r.x, y: r.y, n, ratio: total / model.cost(n), bound });
        }
    }
    Ok(out)
}

/// A full 6×6 table: measured cells where a reduction exists, the rest
/// composed through `C_XY ≤ C_XZ · C_ZY`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComposedTable {
    /// `[row Y][column X]`; `None` when no chain of reductions connects them.
    pub value: [[Option<f64>; 6]; 6],
    pub measured: [[bool; 6]; 6],
}

pub fn composed_table(cells: &[RatioCell]) -> ComposedTable {
    let mut value = [[None; 6]; 6];
    let mut measured = [[false; 6]; 6];
    for (i, row) in value.iter_mut().enumerate() {
        row[i] = Some(1.0);
        measured[i][i] = true;
    }
    for c in cells {
        let (y, x) = (table_index(c.y), table_index(c.x));
        if value[y][x].is_none_or(|v| c.ratio < v) {
            value[y][x] = Some(c.ratio);
        }
        measured[y][x] = true;
    }
    // Multiplicative closure: X from Y via Z costs C_XZ · C_ZY.
    let direct = value;
    let mut best = value;
    for z in 0..6 {
        for y in 0..6 {
            for x in 0..6 {
                if let (Some(zy), Some(xz)) = (best[y][z], best[z][x]) {
                    let v = xz * zy;
                    if best[y][x].is_none_or(|cur| v < cur - 1e-12) {
                        best[y][x] = Some(v);
                    }
                }
            }
        }
    }
    for y in 0..6 {
        for x in 0..6 {
            measured[y][x] &= best[y][x] == direct[y][x];
        }
    }
    ComposedTable { value: best, measured }
}

impl ComposedTable {
    pub fn get(&self, x: OpClass, y: OpClass) -> Option<f64> {
        self.value[table_index(y)][table_index(x)]
    }

    pub fn is_measured(&self, x: OpClass, y: OpClass) -> bool {
        self.measured[table_index(y)][table_index(x)]
    }

    /// CSV with one row per `Y`; composed cells carry a `~` prefix.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("Y");
        for c in TABLE_OPS {
            let _ = write!(s, ",{}", c.code());
        }
        s.push('\n');
        for (yi, y) in TABLE_OPS.iter().enumerate() {
            s.push_str(y.code());
            for xi in 0..6 {
                match self.value[yi][xi] {
                    None => s.push_str(",-"),
                    Some(v) if self.measured[yi][xi] => {
                        let _ = write!(s, ",{v:.4}");
                    }
                    Some(v) => {
                        let _ = write!(s, ",~{v:.4}");
                    }
                }
            }
            s.push('\n');
        }
        s
    }
}

/// The published bounds in the same CSV layout.
pub fn bounds_csv() -> String {
    let mut s = String::from("Y");
    for c in TABLE_OPS {
        let _ = write!(s, ",{}", c.code());
    }
    s.push('\n');
    for (yi, y) in TABLE_OPS.iter().enumerate() {
        s.push_str(y.code());
        for v in TABLE_BOUNDS[yi] {
            let _ = write!(s, ",{v:.1}");
        }
        s.push('\n');
    }
    s
}
