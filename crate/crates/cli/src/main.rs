//! `mparith` command-line front end.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mparith::costs::{self, composed_table, ratio_table, CostModel};
use mparith::elemfun;
use mparith::mulkernel::{self, KARATSUBA_THRESHOLD};
use mparith::newton::{self, Variant};
use mparith::zerofind::{self, Catalog, MethodId, MpFunction};
use mparith::{CostLedger, Error, OpClass, Precision};

#[derive(Parser)]
#[command(name = "mparith", version, about = "Multiple-precision arithmetic and zero-finding constants")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Decimal digits of output (overrides the positional value).
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Working precision in bits (default: from the digit count).
    #[arg(long, global = true)]
    bits: Option<usize>,
    /// Cost exponent(s), comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    alpha: Vec<f64>,
    /// Write the cost trace as CSV to this file.
    #[arg(long, global = true)]
    ledger: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate exp, ln, sin or atan_recip at a decimal argument.
    #[command(allow_negative_numbers = true)]
    Eval {
        function: String,
        x: String,
        #[arg(value_name = "DIGITS")]
        places: Option<usize>,
    },
    /// Digits of e or pi, each checked against a second method.
    Const {
        name: String,
        #[arg(value_name = "DIGITS")]
        places: Option<usize>,
    },
    /// Measured operation ratios against their published bounds.
    Table7 {
        /// Print the bounds table only.
        #[arg(long)]
        bounds: bool,
    },
    /// Asymptotic constants of the zero finders as CSV.
    Table8,
    /// Run a zero finder on a catalog function.
    Solve {
        /// newton1, newton2, secant1, secant2, invquad, invinterp0.55, ...
        method: String,
        /// sq2, cube2, exp2 or sinhalf.
        function: String,
        /// Target accuracy in bits.
        #[arg(value_name = "BITS")]
        n: Option<usize>,
        /// Starting point (default: the catalog's).
        #[arg(long, allow_hyphen_values = true)]
        start: Option<f64>,
    },
    /// Limb work of the multiplication kernels and model cost of the
    /// Newton operations per size.
    Bench { sizes: Vec<usize> },
}

/// Usage errors exit with 2 like clap's own.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 2,
        Error::Range | Error::DivisionByZero | Error::Domain(_) | Error::Parse(_) => 3,
        Error::Convergence(_) | Error::Derivative | Error::Degenerate(_) => 4,
        Error::CrossCheck(_) => 5,
    }
}

fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 16
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ledger = CostLedger::new();
    let result = run(&cli, &mut ledger).and_then(|out| {
        if let Some(path) = &cli.ledger {
            std::fs::write(path, ledger.to_csv())
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mparith: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli, ledger: &mut CostLedger) -> Result<String, Error> {
    match &cli.cmd {
        Cmd::Eval { function, x, places } => {
            let digits = cli.digits.or(*places).unwrap_or(30);
            cmd_eval(function, x, digits, cli.bits, ledger)
        }
        Cmd::Const { name, places } => {
            let digits = cli.digits.or(*places).unwrap_or(30);
            cmd_const(name, digits, cli.bits, ledger)
        }
        Cmd::Table7 { bounds } => {
            if *bounds {
                Ok(costs::bounds_csv())
            } else {
                cmd_table7(cli.bits.unwrap_or(1 << 16), ledger)
            }
        }
        Cmd::Table8 => {
            let alphas = if cli.alpha.is_empty() { zerofind::TABLE81_ALPHAS.to_vec() } else { cli.alpha.clone() };
            if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a >= 1.0)) {
                return Err(Error::Config(format!("alpha must be at least 1, got {a}")));
            }
            Ok(zerofind::table81_csv(&zerofind::table81(&alphas)))
        }
        Cmd::Solve { method, function, n, start } => {
            let n = cli.bits.or(*n).unwrap_or(256);
            let alpha = cli.alpha.first().copied().unwrap_or(1.0);
            cmd_solve(method, function, n, *start, alpha, ledger)
        }
        Cmd::Bench { sizes } => {
            let sizes = if sizes.is_empty() { vec![1024, 4096, 16384, 65536] } else { sizes.clone() };
            cmd_bench(&sizes, ledger)
        }
    }
}

fn cmd_eval(function: &str, x: &str, digits: usize, bits: Option<usize>, ledger: &mut CostLedger) -> Result<String, Error> {
    // Room for the integer part of exp(8) and the truncated last digit.
    let n = bits.unwrap_or_else(|| bits_for_digits(digits) + 16);
    let p = Precision::new(n);
    let v = match function {
        "exp" => elemfun::exp(&elemfun::from_decimal(x, p)?, p)?,
        "ln" => elemfun::ln(&elemfun::from_decimal(x, p)?, p)?,
        "sin" => elemfun::sin(&elemfun::from_decimal(x, p)?, p)?,
        "atan_recip" => {
            let j: u64 = x.parse().map_err(|_| Error::Parse(format!("atan_recip needs an integer, got {x:?}")))?;
            elemfun::atan_recip(j, p)?
        }
        _ => return Err(Error::Config(format!("unknown function {function:?}"))),
    };
    ledger.charge(OpClass::Eval, n);
    Ok(format!("{}\n", elemfun::to_fixed(&v, digits)?))
}

fn cmd_const(name: &str, digits: usize, bits: Option<usize>, ledger: &mut CostLedger) -> Result<String, Error> {
    if digits == 0 {
        return Err(Error::Config("at least one digit is needed".into()));
    }
    let n = bits.unwrap_or_else(|| bits_for_digits(digits));
    let p = Precision::new(n);
    let v = match name {
        "e" => elemfun::const_e_checked(p)?,
        "pi" => elemfun::const_pi_checked(p)?,
        _ => return Err(Error::Config(format!("unknown constant {name:?}"))),
    };
    // Both methods ran at n bits.
    ledger.charge(OpClass::Eval, n);
    ledger.charge(OpClass::Eval, n);
    Ok(format!("{}\n", elemfun::to_decimal(&v, digits)?))
}

fn cmd_table7(n: usize, ledger: &mut CostLedger) -> Result<String, Error> {
    let cells = ratio_table(&[n], &[])?;
    for c in &cells {
        ledger.extend(&costs::run_reduction(c.reduction, n)?);
    }
    let mut out = String::from("reduction,X,Y,n,measured,bound,within\n");
    for c in &cells {
        let ok = c.ratio <= c.bound * 1.1;
        let _ = writeln!(out, "{},{},{},{},{:.4},{:.2},{}", c.reduction, c.x.code(), c.y.code(), c.n, c.ratio, c.bound, ok);
    }
    out.push('\n');
    out.push_str(&composed_table(&cells).to_csv());
    Ok(out)
}

fn cmd_solve(
    method: &str,
    function: &str,
    n: usize,
    start: Option<f64>,
    alpha: f64,
    ledger: &mut CostLedger,
) -> Result<String, Error> {
    let m = MethodId::parse(method)?;
    let f = Catalog::parse(function)?;
    if n < 16 {
        return Err(Error::Config(format!("target of {n} bits is too small")));
    }
    let x0 = start.or(f.start_hint()).expect("catalog functions have starting points");
    let p = Precision::new(n);
    let r = zerofind::solve(m, &f, &[x0], p, Some(ledger))?;
    let reference = f.reference_root(Precision::new(n + 64))?;
    let digits = ((n as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize;
    let mut out = String::new();
    let _ = writeln!(out, "method,{}", m.name());
    let _ = writeln!(out, "function,{}", f.name());
    let _ = writeln!(out, "root,{}", elemfun::to_decimal(&r.root, digits)?);
    let _ = writeln!(out, "correct_bits,{:.1}", r.root.agreement_bits(&reference).min(n as f64 + 64.0));
    out.push_str("iterate,target_bits,correct_bits,evaluations\n");
    for (i, x) in r.iterates.iter().enumerate() {
        let evals: Vec<String> = r.evals.iter().filter(|e| e.point == i).map(|e| e.bits.to_string()).collect();
        let correct = x.agreement_bits(&reference).min(n as f64 + 64.0);
        let _ = writeln!(out, "{i},{},{correct:.1},{}", r.ladder[i], evals.join(" "));
    }
    let _ = writeln!(out, "order,{:.4},{:.4}", zerofind::measured_order(&r, &reference), m.order());
    let measured = zerofind::measure_constant_from(&r, alpha, n);
    let _ = writeln!(out, "constant,{},{measured:.4},{:.4}", zerofind::format_alpha(alpha), m.constant(alpha)?);
    Ok(out)
}

fn cmd_bench(sizes: &[usize], ledger: &mut CostLedger) -> Result<String, Error> {
    let mut out = String::from("op,bits,limb_work,karatsuba_model_cost\n");
    let model = CostModel::Karatsuba;
    for &n in sizes {
        if n < 64 {
            return Err(Error::Config(format!("size {n} is below one limb pair")));
        }
        let a = costs::reference_operand(n);
        let b = costs::reference_operand(n + 1);
        let mut w = 0u64;
        mulkernel::mul_school_bits(&a, &b, n, &mut w)?;
        let _ = writeln!(out, "mul_school,{n},{w},{:.0}", model.cost(n));
        let mut w = 0u64;
        mulkernel::mul_karatsuba_bits(&a, &b, n, KARATSUBA_THRESHOLD, &mut w)?;
        let _ = writeln!(out, "mul_karatsuba,{n},{w},{:.0}", model.cost(n));
        let p = Precision::new(n);
        for (name, v) in [("recip2", Variant::Recip2), ("rsqrt3", Variant::Rsqrt3)] {
            let mut l = CostLedger::new();
            match name {
                "recip2" => newton::recip_with(&a, p, v, Some(&mut l))?,
                _ => newton::rsqrt_with(&a, p, v, Some(&mut l))?,
            };
            let cost = costs::evaluate_trace(&l, &model, None);
            let _ = writeln!(out, "{name},{n},-,{cost:.0}");
            ledger.extend(&l);
        }
    }
    Ok(out)
}
