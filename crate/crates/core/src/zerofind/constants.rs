//! Orders and asymptotic constants of the zero finders, in closed form.
//!
//! `C(α)` is the limit of (total evaluation cost)/(cost of one evaluation at
//! the final precision) when evaluating to `n` bits costs `n^α`.

use crate::error::{Error, Result};

/// Method and its parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MethodId {
    /// Discrete Newton with a `p`-point Lagrange derivative.
    Newton { p: u32 },
    /// Secant through `x_i` and `x_{i-k}`.
    Secant { k: u32 },
    InvQuad,
    /// Inverse interpolation of order `1/μ`.
    InvInterp { mu: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MethodConstant {
    pub method: MethodId,
    pub alpha: f64,
    pub value: f64,
}

impl MethodConstant {
    fn new(method: MethodId, alpha: f64, value: f64) -> Self {
        assert!(value > 1.0, "asymptotic constant {value} of {method:?} at alpha {alpha} is not above 1");
        MethodConstant { method, alpha, value }
    }
}

/// Positive root of `g` on `[1, 2]` by Newton from 2, polished past 1e-12.
fn root_1_2(g: impl Fn(f64) -> (f64, f64)) -> f64 {
    let mut x = 2.0f64;
    for _ in 0..100 {
        let (v, d) = g(x);
        let step = v / d;
        x -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    x
}

/// Order `p_k` of the secant method `S_k`: positive root of `x^(k+1) = 1 + x^k`.
pub fn order_secant(k: u32) -> f64 {
    assert!(k >= 1, "secant lag must be at least 1");
    let k = k as i32;
    root_1_2(|x| (x.powi(k + 1) - x.powi(k) - 1.0, (k + 1) as f64 * x.powi(k) - k as f64 * x.powi(k - 1)))
}

/// Order of inverse quadratic interpolation: root of `x³ = 1 + x + x²`.
pub fn order_invquad() -> f64 {
    root_1_2(|x| (x * x * x - 1.0 - x - x * x, 3.0 * x * x - 1.0 - 2.0 * x))
}

/// `σ = 1/p_Q`.
pub fn sigma() -> f64 {
    1.0 / order_invquad()
}

pub fn const_newton(p: u32, alpha: f64) -> MethodConstant {
    let pf = p as f64;
    let v = (1.0 + pf * ((pf + 1.0) / (2.0 * pf)).powf(alpha)) / (1.0 - 2f64.powf(-alpha));
    MethodConstant::new(MethodId::Newton { p }, alpha, v)
}

/// Best `N_p`; the minimiser lies at `⌊α−1⌋` or `⌈α−1⌉`, so `p ≤ ⌈α⌉+2` is enough.
pub fn const_newton_opt(alpha: f64) -> MethodConstant {
    let top = alpha.ceil().max(1.0) as u32 + 2;
    (1..=top).map(|p| const_newton(p, alpha)).min_by(|a, b| a.value.total_cmp(&b.value)).unwrap()
}

pub fn const_secant(k: u32, alpha: f64) -> MethodConstant {
    let p = order_secant(k);
    let kf = k as f64;
    let v = (1.0 - p.powf(-kf * alpha) + (2.0 * p.powf(-(kf + 1.0))).powf(alpha)) / (1.0 - p.powf(-alpha));
    MethodConstant::new(MethodId::Secant { k }, alpha, v)
}

/// Best of `S_1` and `S_2` (larger lags never win).
pub fn const_secant_opt(alpha: f64) -> MethodConstant {
    let a = const_secant(1, alpha);
    let b = const_secant(2, alpha);
    if b.value < a.value {
        b
    } else {
        a
    }
}

pub fn const_invquad(alpha: f64) -> MethodConstant {
    let s = sigma();
    let v = 1.0 + (1.0 - s + s * s).powf(alpha) + (3.0 * s * s * s).powf(alpha) / (1.0 - s.powf(alpha));
    MethodConstant::new(MethodId::InvQuad, alpha, v)
}

/// Relative precision `r_m(μ) = 1 + mμ^(m+1) − μ(1−μ^m)/(1−μ)` demanded of
/// the point `m` places behind the newest one in the final step.
pub fn role_requirement(mu: f64, m: u32) -> f64 {
    1.0 + m as f64 * mu.powi(m as i32 + 1) - mu * (1.0 - mu.powi(m as i32)) / (1.0 - mu)
}

/// Relative precisions `s_0 = 1, s_1, ...` of the evaluations of `I_μ`,
/// listed back from the last, up to `count` entries.
pub fn invinterp_weights(mu: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut s = 1.0;
    out.push(s);
    for j in 1..count {
        s = f64::max(mu * s, role_requirement(mu, j as u32));
        out.push(s);
    }
    out
}

const TAIL_TOL: f64 = 1e-8;

/// `Σ s_j(μ)^α`, truncated once a geometric bound on the rest drops below
/// `1e-8`. The terms eventually shrink at least like `ρ = (1+μ)/2` per step
/// (the max-recurrence contributes `μ`, the explicit term tends to ratio `μ`).
pub fn const_invinterp(mu: f64, alpha: f64) -> Result<MethodConstant> {
    if !(0.5..1.0).contains(&mu) {
        return Err(Error::Domain(format!("inverse interpolation needs 1/2 <= mu < 1, got {mu}")));
    }
    let rho = ((1.0 + mu) / 2.0).powf(alpha);
    let mut total = 1.0;
    let mut s: f64 = 1.0;
    let mut j: u32 = 1;
    loop {
        let r = role_requirement(mu, j);
        s = s.max(0.0) * mu;
        s = s.max(r);
        let term = s.max(0.0).powf(alpha);
        total += term;
        let shrinking = r <= 0.0 || role_requirement(mu, j + 1) <= r * (1.0 + mu) / 2.0;
        if j > 2 && shrinking && term * rho / (1.0 - rho) < TAIL_TOL {
            break;
        }
        j += 1;
        if j > 1_000_000 {
            break;
        }
    }
    Ok(MethodConstant::new(MethodId::InvInterp { mu }, alpha, total))
}

/// `C_I(½, α) = Σ_{j≥2} (j 2^(1−j))^α`.
pub fn const_invinterp_half(alpha: f64) -> MethodConstant {
    let mut total = 0.0;
    let mut j = 2.0f64;
    loop {
        let t = (j * 2f64.powf(1.0 - j)).powf(alpha);
        total += t;
        // Ratios of successive terms are ((j+1)/(2j))^α ≤ (3/4)^α here.
        let rho = ((j + 1.0) / (2.0 * j)).powf(alpha);
        if j > 2.0 && t * rho / (1.0 - rho) < TAIL_TOL {
            break;
        }
        j += 1.0;
    }
    MethodConstant::new(MethodId::InvInterp { mu: 0.5 }, alpha, total)
}

const MU_LO: f64 = 0.5;
const MU_HI: f64 = 0.9;

/// `min_μ C_I(μ, α)`: an 801-point scan of `[½, 0.9]`, then golden section
/// on the bracketing cell down to `1e-7` in `μ`. The scan includes `σ`,
/// where the minimiser sits for small `α`.
pub fn const_invinterp_opt(alpha: f64) -> MethodConstant {
    let c = |mu: f64| const_invinterp(mu, alpha).expect("mu in range").value;
    let step = (MU_HI - MU_LO) / 800.0;
    let mut best = (c(sigma()), sigma());
    for i in 0..=800 {
        let mu = MU_LO + i as f64 * step;
        let v = c(mu);
        if v < best.0 {
            best = (v, mu);
        }
    }
    let (mut lo, mut hi) = ((best.1 - step).max(MU_LO), (best.1 + step).min(MU_HI));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-7 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if c(a) < c(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let mid = (lo + hi) / 2.0;
    let v = c(mid);
    if v < best.0 {
        best = (v, mid);
    }
    MethodConstant::new(MethodId::InvInterp { mu: best.1 }, alpha, best.0)
}

/// Bisection for a sign change of `g` on `[a, b]` down to `tol`.
pub fn bisect(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let ga = g(a);
    if ga.signum() == g(b).signum() {
        return Err(Error::Convergence(format!("no sign change on [{a}, {b}]")));
    }
    while b - a > tol {
        let m = (a + b) / 2.0;
        if g(m).signum() == ga.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Ok((a + b) / 2.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Crossover {
    pub label: &'static str,
    pub alpha: f64,
}

/// The `α` values where the preferred method changes.
pub fn crossovers() -> Result<Vec<Crossover>> {
    let tol = 1e-7;
    let sn = |a: f64| const_secant_opt(a).value;
    let nn = |a: f64| const_newton_opt(a).value;
    let q = |a: f64| const_invquad(a).value;
    let s = sigma();
    let ci = |mu: f64, a: f64| const_invinterp(mu, a).expect("mu in range").value;
    // Left derivative in μ at σ: the optimum leaves σ when it turns positive.
    let d = 1e-7;
    let left_slope = |a: f64| (ci(s, a) - ci(s - d, a)) / d;
    Ok(vec![
        Crossover { label: "C_S(1)=C_S(2)", alpha: bisect(|a| const_secant(1, a).value - const_secant(2, a).value, 2.0, 8.0, tol)? },
        Crossover { label: "C_S=C_N", alpha: bisect(|a| sn(a) - nn(a), 6.0, 12.0, tol)? },
        Crossover { label: "C_Q=C_S", alpha: bisect(|a| q(a) - sn(a), 4.6, 6.0, tol)? },
        Crossover { label: "C_Q=C_N", alpha: bisect(|a| q(a) - nn(a), 5.0, 9.0, tol)? },
        Crossover { label: "C_I=C_S", alpha: bisect(|a| const_invinterp_opt(a).value - sn(a), 4.6, 6.0, tol)? },
        Crossover { label: "mu=sigma", alpha: bisect(left_slope, 3.0, 6.0, tol)? },
    ])
}

/// Column names of the constants table, in order.
pub const TABLE81_COLUMNS: [&str; 6] = ["C_N", "C_S1", "C_S2", "C_Q", "C_I", "C_Ihalf"];
/// The fourteen exponents tabulated in the literature.
pub const TABLE81_ALPHAS: [f64; 14] = [1.0, 1.1, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 15.0, 20.0];

#[derive(Clone, Debug, PartialEq)]
pub struct Table81Row {
    pub alpha: f64,
    pub values: [f64; 6],
    /// Columns equal to the row minimum after rounding to 4 decimals.
    pub smallest: [bool; 6],
}

impl Table81Row {
    /// First smallest column; ties (C_Q and C_I for small α) go to the left.
    pub fn best(&self) -> &'static str {
        TABLE81_COLUMNS[self.smallest.iter().position(|&b| b).expect("some column is smallest")]
    }
}

fn round4(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

pub fn table81(alphas: &[f64]) -> Vec<Table81Row> {
    alphas
        .iter()
        .map(|&a| {
            let values = [
                const_newton_opt(a).value,
                const_secant(1, a).value,
                const_secant(2, a).value,
                const_invquad(a).value,
                const_invinterp_opt(a).value,
                const_invinterp_half(a).value,
            ];
            let min = values.iter().map(|&v| round4(v)).fold(f64::INFINITY, f64::min);
            let smallest = values.map(|v| round4(v) == min);
            Table81Row { alpha: a, values, smallest }
        })
        .collect()
}

/// `1.0`, `2.5`, `1.25`: at least one decimal, no trailing noise.
pub fn format_alpha(a: f64) -> String {
    if a.fract() == 0.0 {
        format!("{a:.1}")
    } else {
        format!("{a}")
    }
}

pub fn table81_csv(rows: &[Table81Row]) -> String {
    let mut out = String::from("alpha,C_N,C_S1,C_S2,C_Q,C_I,C_Ihalf,best\n");
    for r in rows {
        out.push_str(&format_alpha(r.alpha));
        for v in r.values {
            out.push_str(&format!(",{v:.4}"));
        }
        out.push(',');
        out.push_str(r.best());
        out.push('\n');
    }
    out
}
