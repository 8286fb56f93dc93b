mod output;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gdiv::bell::{default_truncation, factorization_report};
use gdiv::champions::{champion_scan, extremal_construction};
use gdiv::constants::{compute_constant, default_cutoff, ConstantKind, ProductConfig};
use gdiv::primes::{factor_gauss, factor_rational, gaussian_primes_up_to, PrimeClass};
use gdiv::summing::{lattice_summatory_oracle, residual_analysis, summatory, SummatoryReport};
use gdiv::{verify, Argument, Error, FamilyKind, FunctionFamily, GaussInt};

use output::{emit, Format, OutputEnvelope, Table};

#[derive(Parser)]
#[command(name = "gdiv", version, about = "Exponential divisor functions over Z and Z[i]")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "GDIV_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a family at an integer or Gaussian integer
    Eval {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        k: u32,
        /// Positive integer, or a+bi for Gaussian families
        #[arg(long, allow_hyphen_values = true)]
        arg: String,
    },
    /// Factor over Z[i] (or over Z with --rational)
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        arg: String,
        #[arg(long)]
        rational: bool,
    },
    /// List Gaussian primes by norm
    Primes {
        #[arg(long, value_parser = parse_count)]
        max_norm: u64,
    },
    /// Bell series and its zeta factorization
    Bell {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Summatory function against its main term
    Sum {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_count, required_unless_present = "xs")]
        x: Option<u64>,
        /// Comma-separated grid, e.g. 1e4,1e5,1e6
        #[arg(long, value_delimiter = ',', value_parser = parse_count, conflicts_with = "x")]
        xs: Vec<u64>,
        /// Cross-check against lattice enumeration
        #[arg(long)]
        oracle: bool,
    },
    /// Euler-product constants
    Constants {
        #[arg(long)]
        which: ConstantKind,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_count)]
        cutoff: Option<u64>,
        #[arg(long, default_value_t = 64)]
        truncation: usize,
    },
    /// Running maxima of log f · log log N / log N
    Champions {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_count)]
        max: u64,
    },
    /// Order ratio of the product of all primes up to X, each to the l-th power
    Extremal {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long = "X", value_parser = parse_count)]
        max_norm: u64,
    },
    /// Run the acceptance suite
    VerifyAll,
}

/// Accepts `1000000` as well as `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !(0.0..=9.007_199_254_740_992e15).contains(&f) || f.fract() != 0.0 {
        return Err(format!("not a nonnegative integer: {s}"));
    }
    Ok(f as u64)
}

struct Run {
    parameters: BTreeMap<String, Value>,
    table: Table,
    cutoffs: BTreeMap<String, u64>,
    /// Verification outcome; `false` exits with status 2.
    passed: bool,
}

impl Run {
    fn new(table: Table) -> Self {
        Self {
            parameters: BTreeMap::new(),
            table,
            cutoffs: BTreeMap::new(),
            passed: true,
        }
    }

    fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }
}

fn class_name(c: PrimeClass) -> &'static str {
    match c {
        PrimeClass::Ramified => "ramified",
        PrimeClass::Split => "split",
        PrimeClass::Inert => "inert",
    }
}

fn argument(family: &FunctionFamily, s: &str) -> gdiv::Result<Argument> {
    if family.is_gaussian() {
        Ok(Argument::Gaussian(s.parse()?))
    } else {
        s.trim().parse().map(Argument::Rational).map_err(|_| Error::Parse {
            input: s.to_string(),
            reason: "expected a positive integer".into(),
        })
    }
}

fn summary_row(r: &SummatoryReport) -> Vec<Value> {
    vec![
        json!(r.x),
        json!(r.exact_sum),
        json!(r.main_term),
        json!(r.residual),
        json!(r.normalized_residual),
    ]
}

fn execute(command: &Command) -> gdiv::Result<(&'static str, Run)> {
    Ok(match command {
        Command::Eval { family, k, arg } => {
            let fam = FunctionFamily::new(*family, *k)?;
            let a = argument(&fam, arg)?;
            let mut t = Table::new(&["argument", "value"]);
            t.push(vec![json!(a.to_string()), json!(gdiv::divisors::eval(&fam, &a)?)]);
            let run = Run::new(t).param("family", family.name()).param("k", *k).param("arg", arg.as_str());
            ("eval", run)
        }
        Command::Factor { arg, rational } => {
            let mut t = Table::new(&["factor", "exponent", "norm", "class"]);
            if *rational {
                let n: u64 = arg.trim().parse().map_err(|_| Error::Parse {
                    input: arg.clone(),
                    reason: "expected a positive integer".into(),
                })?;
                for (p, e) in factor_rational(n)?.iter() {
                    t.push(vec![json!(p.to_string()), json!(e), json!(p), json!(null)]);
                }
            } else {
                let z: GaussInt = arg.parse()?;
                let f = factor_gauss(&z)?;
                t.push(vec![json!(f.unit.to_string()), json!(1), json!(1), json!("unit")]);
                for (p, e) in &f.factors {
                    let n = p.norm()?;
                    let class = if p.im == 0 {
                        PrimeClass::Inert
                    } else if n == 2 {
                        PrimeClass::Ramified
                    } else {
                        PrimeClass::Split
                    };
                    t.push(vec![json!(p.to_string()), json!(e), json!(n), json!(class_name(class))]);
                }
            }
            ("factor", Run::new(t).param("arg", arg.as_str()).param("rational", *rational))
        }
        Command::Primes { max_norm } => {
            let mut t = Table::new(&["re", "im", "norm", "class"]);
            for p in gaussian_primes_up_to(*max_norm) {
                let n = p.norm()?;
                let class = match (p.im, n) {
                    (0, _) => PrimeClass::Inert,
                    (_, 2) => PrimeClass::Ramified,
                    _ => PrimeClass::Split,
                };
                t.push(vec![json!(p.re), json!(p.im), json!(n), json!(class_name(class))]);
            }
            ("primes", Run::new(t).param("max_norm", *max_norm))
        }
        Command::Bell { family, k, truncation } => {
            let fam = FunctionFamily::new(*family, *k)?;
            let trunc = truncation.unwrap_or(default_truncation(*family));
            let r = factorization_report::<i128>(&fam, trunc)?;
            let mut t = Table::new(&["j", "coefficient", "closed_form_exponent", "derived_exponent", "residual"]);
            for j in 0..=trunc {
                let find = |v: &[(usize, i64)]| v.iter().find(|e| e.0 == j).map(|e| e.1);
                t.push(vec![
                    json!(j),
                    json!(r.coefficients[j]),
                    json!(find(&r.closed_form)),
                    json!(find(&r.derived)),
                    json!(r.residual[j]),
                ]);
            }
            let mut run = Run::new(t)
                .param("family", family.name())
                .param("k", *k)
                .param("truncation", trunc as u64)
                .param("base", format!("{:?}", r.base));
            run.cutoffs.insert("series_truncation".into(), trunc as u64);
            run.passed = r.passed();
            if let Some((j, c)) = &r.first_bad {
                eprintln!("verification failed: residual coefficient of x^{j} is {c}");
            }
            if let Some(j) = r.exponent_mismatch {
                eprintln!("verification failed: derived exponent at shift {j} differs from the closed form");
            }
            ("bell", run)
        }
        Command::Sum { family, k, x, xs, oracle } => {
            let fam = FunctionFamily::new(*family, *k)?;
            let grid: Vec<u64> = match x {
                Some(x) => vec![*x],
                None => xs.clone(),
            };
            let reports = if grid.len() == 1 {
                vec![summatory(&fam, grid[0])?]
            } else {
                residual_analysis(&fam, &grid)?.rows
            };
            let mut t = if *oracle {
                Table::new(&["x", "exact", "main", "residual", "normalized_residual", "oracle"])
            } else {
                Table::new(&["x", "exact", "main", "residual", "normalized_residual"])
            };
            let mut passed = true;
            for r in &reports {
                let mut row = summary_row(r);
                if *oracle {
                    let o = lattice_summatory_oracle(&fam, r.x)?;
                    if o != r.exact_sum {
                        eprintln!("verification failed: x={} sieve {} lattice {o}", r.x, r.exact_sum);
                        passed = false;
                    }
                    row.push(json!(o));
                }
                t.push(row);
            }
            let mut run = Run::new(t)
                .param("family", family.name())
                .param("k", *k)
                .param("xs", grid.clone())
                .param("oracle", *oracle);
            if let Some(r) = reports.first() {
                run.cutoffs.insert("prime_cutoff".into(), r.constant_cutoff);
            }
            run.passed = passed;
            ("sum", run)
        }
        Command::Constants { which, k, cutoff, truncation } => {
            let cutoff = match cutoff {
                Some(c) => *c,
                None => default_cutoff(*which, *k)?,
            };
            let config = ProductConfig {
                truncation: *truncation,
                ..ProductConfig::with_cutoff(cutoff)
            };
            let r = compute_constant::<f64>(*which, *k, &config)?;
            let mut t = Table::new(&["which", "k", "value", "cutoff", "tail_estimate"]);
            t.push(vec![
                json!(which.name()),
                json!(k),
                json!(r.value),
                json!(r.prime_cutoff),
                json!(r.tail_estimate),
            ]);
            let mut run = Run::new(t)
                .param("which", which.name())
                .param("k", *k)
                .param("cutoff", cutoff)
                .param("truncation", *truncation as u64);
            run.cutoffs.insert("prime_cutoff".into(), r.prime_cutoff);
            run.cutoffs.insert("series_truncation".into(), r.series_truncation as u64);
            ("constants", run)
        }
        Command::Champions { family, k, max } => {
            let fam = FunctionFamily::new(*family, *k)?;
            let mut t = Table::new(&["argument", "n_or_norm", "value", "ratio"]);
            for r in champion_scan(&fam, *max)? {
                t.push(vec![
                    json!(r.argument.to_string()),
                    json!(r.n_or_norm),
                    json!(r.value),
                    json!(r.ratio),
                ]);
            }
            let mut run = Run::new(t).param("family", family.name()).param("k", *k).param("max", *max);
            run.cutoffs.insert("x_max".into(), *max);
            ("champions", run)
        }
        Command::Extremal { family, k, l, max_norm } => {
            let fam = FunctionFamily::new(*family, *k)?;
            let r = extremal_construction(&fam, *l, *max_norm)?;
            let mut t = Table::new(&["l", "X", "primes", "f_l", "log_norm", "ratio"]);
            t.push(vec![
                json!(r.l),
                json!(r.max_norm),
                json!(r.primes),
                json!(r.f_l),
                json!(r.log_norm),
                json!(r.ratio),
            ]);
            let mut run = Run::new(t)
                .param("family", family.name())
                .param("k", *k)
                .param("l", *l)
                .param("X", *max_norm);
            run.cutoffs.insert("max_norm".into(), *max_norm);
            ("extremal", run)
        }
        Command::VerifyAll => {
            let report = verify::run_all();
            let mut t = Table::new(&["id", "name", "passed", "detail"]);
            for r in &report.rows {
                eprintln!("{}", r.line());
                t.push(vec![json!(r.id), json!(r.name), json!(r.passed), json!(r.detail)]);
            }
            let mut run = Run::new(t);
            run.passed = report.passed();
            ("verify-all", run)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let (name, run) = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if matches!(e, Error::Verification(_)) { 2 } else { 1 });
        }
    };
    let timing_ms = start.elapsed().as_millis() as u64;
    let env = OutputEnvelope::new(name, run.parameters, &run.table, run.cutoffs, timing_ms);
    if let Err(e) = emit(&env, &run.table, cli.format) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if run.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
