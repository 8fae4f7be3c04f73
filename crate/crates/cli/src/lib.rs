//! Command-line front end: derives the Einstein systems, runs the Gröbner
//! pipeline, isolates and refines roots, verifies solutions and evaluates
//! the Einstein-Randers metrics.
//!
//! Exit codes: 0 success, 1 usage, 2 parse, 3 pipeline failure,
//! 4 verification failure.

pub mod report;

use std::fmt::Write as _;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use einstein_randers::{
    block_inner, buchberger_with_budget, einstein_randers_family, eval_randers, format_polynomial,
    is_riemannian, parse_ideal_source, solve_space_detailed, verify_solution, EinsteinError,
    GroebnerError, IdealBasis, MetricParams, MonomialOrder, Rational, RandersError, Ring, Space,
    TangentVector, UnivariatePoly, DEFAULT_PAIR_BUDGET,
};
use einstein_randers::{isolate_roots, refine_root};

/// Environment variable overriding the Buchberger pair-reduction budget.
pub const GB_BUDGET_ENV: &str = "EINSTEIN_RANDERS_GB_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    fn parse(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: msg.into(),
        }
    }

    fn pipeline(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PIPELINE,
            message: msg.into(),
        }
    }

    fn verification(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VERIFICATION,
            message: msg.into(),
        }
    }
}

impl From<EinsteinError> for CliError {
    fn from(e: EinsteinError) -> Self {
        CliError::pipeline(e.to_string())
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        CliError::pipeline(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "einstein-randers",
    about = "Invariant Einstein metrics on two E6 coset spaces and the Einstein-Randers metrics built from them",
    version,
    disable_help_subcommand = true,
    after_help = "The EINSTEIN_RANDERS_GB_BUDGET environment variable overrides the Buchberger \
                  pair-reduction budget (default 1000000)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print the positive Einstein solutions.
    Solve(SolveArgs),
    /// Print the derived generator system f1, f2, f3.
    DeriveSystem(DeriveArgs),
    /// Reduced Gröbner basis of an ideal read from a file.
    Groebner(GroebnerArgs),
    /// Isolate and refine the real roots of a univariate polynomial file.
    Roots(RootsArgs),
    /// Check the Einstein condition at explicit parameter values.
    Verify(VerifyArgs),
    /// Build and evaluate an Einstein-Randers metric from navigation data.
    Randers(RandersArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Coset space: e6-a4 or e6-a1.
    space: String,
    /// Significant digits in printed values.
    #[arg(long, default_value_t = 12)]
    digits: usize,
    /// Refinement tolerance (exact rational or decimal, e.g. 1e-15).
    #[arg(long)]
    eps: Option<String>,
    /// Emit the JSON run report instead of text.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings in the JSON report (breaks byte-for-byte
    /// reproducibility between runs).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct DeriveArgs {
    /// Coset space: e6-a4 or e6-a1.
    space: String,
}

#[derive(Args)]
struct GroebnerArgs {
    /// Ideal file: one polynomial per line, `#` comments.
    file: std::path::PathBuf,
    /// Monomial order, e.g. `lex:z,u2,x1,x2` (highest first); declares the ring.
    #[arg(long)]
    order: String,
}

#[derive(Args)]
struct RootsArgs {
    /// File holding one univariate polynomial.
    file: std::path::PathBuf,
    #[arg(long, default_value_t = 12)]
    digits: usize,
    /// Refinement tolerance (default 10^-(digits+3)).
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Coset space: e6-a4 or e6-a1.
    space: String,
    /// Fiber coefficient (u2 for e6-a4, u1 for e6-a1).
    #[arg(long)]
    u: String,
    #[arg(long)]
    x1: String,
    #[arg(long)]
    x2: String,
    /// Residual tolerance.
    #[arg(long, default_value = "1e-8")]
    tol: String,
    #[arg(long, default_value_t = 12)]
    digits: usize,
}

#[derive(Args)]
struct RandersArgs {
    /// Coset space: e6-a4 or e6-a1.
    space: String,
    /// Index into the solve output (ascending x2, from 0).
    #[arg(long)]
    solution: usize,
    /// Navigation coefficient along the h0 block.
    #[arg(long)]
    w0: String,
    /// Tangent vector, e.g. `h0:1` or `m1[3]:1/2,m2[0]:-2`.
    #[arg(long)]
    y: Option<String>,
    #[arg(long, default_value_t = 12)]
    digits: usize,
}

/// Entry point returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::DeriveSystem(args) => cmd_derive_system(args),
        Command::Groebner(args) => cmd_groebner(args),
        Command::Roots(args) => cmd_roots(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Randers(args) => cmd_randers(args),
    };
    match result {
        Ok(stdout) => {
            print!("{stdout}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn parse_space(key: &str) -> Result<Space, CliError> {
    Space::from_key(key).ok_or_else(|| {
        CliError::usage(format!(
            "unknown space `{key}`; expected `e6-a4` or `e6-a1`"
        ))
    })
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|_| CliError::usage(format!("invalid {what} `{text}`")))
}

fn budget_from_env() -> Result<usize, CliError> {
    match std::env::var(GB_BUDGET_ENV) {
        Ok(v) => v.parse().map_err(|_| {
            CliError::usage(format!("{GB_BUDGET_ENV} must be a positive integer, got `{v}`"))
        }),
        Err(_) => Ok(DEFAULT_PAIR_BUDGET),
    }
}

fn validate_digits(digits: usize) -> Result<(), CliError> {
    if digits == 0 {
        return Err(CliError::usage("--digits must be at least 1"));
    }
    if digits > 50 {
        return Err(CliError::usage("--digits must be at most 50"));
    }
    Ok(())
}

fn default_eps(digits: usize) -> Rational {
    Rational::new(1, 10).unwrap().pow((digits as i64) + 3).unwrap()
}

fn resolve_eps(digits: usize, eps: &Option<String>) -> Result<Rational, CliError> {
    validate_digits(digits)?;
    let eps = match eps {
        Some(text) => parse_rational(text, "--eps")?,
        None => default_eps(digits),
    };
    if !eps.is_positive() {
        return Err(CliError::usage("--eps must be positive"));
    }
    Ok(eps)
}

fn cmd_solve(args: SolveArgs) -> Result<String, CliError> {
    let space = parse_space(&args.space)?;
    let eps = resolve_eps(args.digits, &args.eps)?;
    let budget = budget_from_env()?;

    let t0 = Instant::now();
    let pipe = solve_space_detailed(space, &eps, budget)?;
    let total = t0.elapsed().as_millis();

    let mut out = String::new();
    if args.json {
        let timings = args.timings.then_some(report::Timings { total });
        let rep = report::build_report(&pipe, args.digits, &eps, timings);
        let json = serde_json::to_string_pretty(&rep).expect("serializable report");
        out.push_str(&json);
        out.push('\n');
    } else {
        let fiber = space.fiber_param();
        writeln!(out, "space: {space}").unwrap();
        writeln!(
            out,
            "positive einstein metrics (u0 = 1): {}",
            pipe.solutions.len()
        )
        .unwrap();
        for (i, sol) in pipe.solutions.iter().enumerate() {
            writeln!(
                out,
                "[{i}] {fiber} = {}  x1 = {}  x2 = {}  K = {}",
                sol.params.fiber().to_decimal(args.digits),
                sol.params.x1().to_decimal(args.digits),
                sol.params.x2().to_decimal(args.digits),
                sol.einstein_constant.to_decimal(args.digits),
            )
            .unwrap();
        }
    }

    let expected = space.expected_solutions();
    if pipe.solutions.len() != expected {
        print!("{out}");
        return Err(CliError::verification(format!(
            "expected {expected} positive tuples for {space}, found {}",
            pipe.solutions.len()
        )));
    }
    Ok(out)
}

fn cmd_derive_system(args: DeriveArgs) -> Result<String, CliError> {
    let space = parse_space(&args.space)?;
    let (_, order) = space.system_ring();
    let system = einstein_randers::derive_einstein_system(space);
    let mut out = String::new();
    for (i, f) in system.iter().enumerate() {
        writeln!(out, "f{} = {}", i + 1, format_polynomial(f, &order)).unwrap();
    }
    Ok(out)
}

/// Parses an order spec like `lex:z,u2,x1,x2` into a ring and its order.
fn parse_order_spec(spec: &str) -> Result<(Ring, MonomialOrder), CliError> {
    let (kind, vars) = spec
        .split_once(':')
        .ok_or_else(|| CliError::usage("order spec must look like `lex:x,y,z`"))?;
    if kind != "lex" {
        return Err(CliError::usage(format!(
            "unsupported order kind `{kind}`; only `lex` is available"
        )));
    }
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    let ring = Ring::new(names.clone())
        .map_err(|e| CliError::usage(format!("bad order variables: {e}")))?;
    let order = MonomialOrder::lex(&ring, &names)
        .map_err(|e| CliError::usage(format!("bad order: {e}")))?;
    Ok((ring, order))
}

fn cmd_groebner(args: GroebnerArgs) -> Result<String, CliError> {
    let (ring, order) = parse_order_spec(&args.order)?;
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.file.display())))?;
    let polys = parse_ideal_source(&ring, &text).map_err(|e| CliError::parse(e.to_string()))?;
    if polys.is_empty() {
        return Err(CliError::usage("the ideal file contains no polynomials"));
    }
    let basis = IdealBasis::new(polys, order.clone())
        .map_err(|e| CliError::parse(e.to_string()))?;
    let budget = budget_from_env()?;
    let gb = buchberger_with_budget(&basis, budget)?;
    let mut out = String::new();
    writeln!(
        out,
        "# reduced groebner basis, {}, {} elements",
        order.describe(&ring),
        gb.elements.len()
    )
    .unwrap();
    for el in &gb.elements {
        writeln!(out, "{}", format_polynomial(el, &order)).unwrap();
    }
    Ok(out)
}

fn cmd_roots(args: RootsArgs) -> Result<String, CliError> {
    let eps = resolve_eps(args.digits, &args.eps)?;
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.file.display())))?;

    // The single variable of the file defines the ring.
    let var = detect_single_variable(&text)?;
    let ring = Ring::new([var.as_str()]).map_err(|e| CliError::parse(e.to_string()))?;
    let polys = parse_ideal_source(&ring, &text).map_err(|e| CliError::parse(e.to_string()))?;
    let poly = match polys.as_slice() {
        [p] => p,
        [] => return Err(CliError::usage("the file contains no polynomial")),
        _ => return Err(CliError::usage("expected exactly one polynomial")),
    };
    let uni = UnivariatePoly::from_polynomial(poly, 0)
        .map_err(|e| CliError::parse(e.to_string()))?;
    if uni.is_zero() {
        return Err(CliError::usage("the zero polynomial has no isolated roots"));
    }

    let mut out = String::new();
    writeln!(out, "polynomial: {}", uni.format_with_var(&var)).unwrap();
    let squarefree = uni
        .squarefree_part()
        .map_err(|e| CliError::pipeline(e.to_string()))?;
    if squarefree != uni {
        writeln!(out, "note: repeated factors removed before isolation").unwrap();
    }
    let boxes = isolate_roots(&squarefree).map_err(|e| CliError::pipeline(e.to_string()))?;
    writeln!(out, "distinct real roots: {}", boxes.len()).unwrap();
    for (i, b) in boxes.iter().enumerate() {
        let tight = refine_root(&squarefree, b, &eps)
            .map_err(|e| CliError::pipeline(e.to_string()))?;
        writeln!(
            out,
            "[{i}] {}  (error <= {})",
            tight.value_estimate.to_decimal(args.digits),
            tight.error_bound.to_decimal(3)
        )
        .unwrap();
    }
    Ok(out)
}

fn detect_single_variable(text: &str) -> Result<String, CliError> {
    let mut vars: Vec<String> = Vec::new();
    for line in text.lines() {
        let line = line.split_once('#').map_or(line, |(a, _)| a);
        let mut chars = line.char_indices().peekable();
        while let Some((_, c)) = chars.next() {
            if c.is_ascii_alphabetic() {
                let mut name = c.to_string();
                while let Some(&(_, n)) = chars.peek() {
                    if n.is_ascii_alphanumeric() {
                        name.push(n);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if !vars.contains(&name) {
                    vars.push(name);
                }
            }
        }
    }
    match vars.as_slice() {
        [v] => Ok(v.clone()),
        [] => Err(CliError::usage("no variable found in the polynomial file")),
        _ => Err(CliError::usage(format!(
            "expected a univariate polynomial, found variables {}",
            vars.join(", ")
        ))),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<String, CliError> {
    let space = parse_space(&args.space)?;
    validate_digits(args.digits)?;
    let u = parse_rational(&args.u, "--u")?;
    let x1 = parse_rational(&args.x1, "--x1")?;
    let x2 = parse_rational(&args.x2, "--x2")?;
    let tol = parse_rational(&args.tol, "--tol")?;
    if !tol.is_positive() {
        return Err(CliError::usage("--tol must be positive"));
    }
    let params = MetricParams::with_unit_u0(space, u, x1, x2)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let report = verify_solution(&params, &tol);

    let d = args.digits;
    let labels = space.blocks().map(|(name, _)| name);
    let mut out = String::new();
    writeln!(out, "space: {space}").unwrap();
    let names = space.parameter_names();
    let vals = params.values();
    writeln!(
        out,
        "parameters: {} = {}, {} = {}, {} = {}, {} = {}",
        names[0],
        vals[0].to_decimal(d),
        names[1],
        vals[1].to_decimal(d),
        names[2],
        vals[2].to_decimal(d),
        names[3],
        vals[3].to_decimal(d),
    )
    .unwrap();
    let r = report.components.values();
    writeln!(
        out,
        "ricci components: r_{} = {}, r_{} = {}, r_{} = {}, r_{} = {}",
        labels[0],
        r[0].to_decimal(d),
        labels[1],
        r[1].to_decimal(d),
        labels[2],
        r[2].to_decimal(d),
        labels[3],
        r[3].to_decimal(d),
    )
    .unwrap();
    writeln!(out, "einstein constant K = {}", report.einstein_constant.to_decimal(d)).unwrap();
    writeln!(out, "max pairwise residual = {}", report.max_residual.to_decimal(3)).unwrap();
    writeln!(out, "tolerance = {}", report.tol.to_decimal(3)).unwrap();
    writeln!(out, "verdict: {}", if report.pass { "PASS" } else { "FAIL" }).unwrap();
    if !report.pass {
        print!("{out}");
        return Err(CliError::verification(format!(
            "residual {} exceeds tolerance {}",
            report.max_residual.to_decimal(3),
            report.tol.to_decimal(3)
        )));
    }
    Ok(out)
}

/// Parses `--y` specs like `h0:1` or `m1[3]:1/2,m2[0]:-0.25`.
fn parse_tangent(space: Space, spec: &str) -> Result<TangentVector, CliError> {
    let mut y = TangentVector::zero(space);
    let blocks = space.blocks();
    for item in spec.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (target, value) = item
            .split_once(':')
            .ok_or_else(|| CliError::usage(format!("bad component `{item}`; want block:value")))?;
        let (name, index) = match target.split_once('[') {
            Some((name, rest)) => {
                let idx = rest
                    .strip_suffix(']')
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| {
                        CliError::usage(format!("bad component index in `{item}`"))
                    })?;
                (name.trim(), idx)
            }
            None => (target.trim(), 0),
        };
        let block = blocks
            .iter()
            .position(|&(label, _)| label == name)
            .ok_or_else(|| {
                CliError::usage(format!(
                    "unknown block `{name}`; expected one of {}",
                    blocks.map(|(l, _)| l).join(", ")
                ))
            })?;
        let dim = blocks[block].1 as usize;
        if index >= dim {
            return Err(CliError::usage(format!(
                "component {index} out of range for block `{name}` (dimension {dim})"
            )));
        }
        let value = parse_rational(value, "tangent component")?;
        y.set_component(block, index, value);
    }
    Ok(y)
}

fn cmd_randers(args: RandersArgs) -> Result<String, CliError> {
    let space = parse_space(&args.space)?;
    validate_digits(args.digits)?;
    let w0 = parse_rational(&args.w0, "--w0")?;
    let eps = default_eps(args.digits);
    let budget = budget_from_env()?;
    let pipe = solve_space_detailed(space, &eps, budget)?;

    let family = match einstein_randers_family(space, &pipe.solutions, args.solution, w0) {
        Ok(f) => f,
        Err(RandersError::Inadmissible { lambda }) => {
            return Err(CliError::verification(format!(
                "inadmissible navigation data: 1 - h(W,W) = {} is not positive",
                lambda.to_decimal(6)
            )))
        }
        Err(RandersError::BadSolutionIndex { index, count }) => {
            return Err(CliError::usage(format!(
                "solution index {index} out of range; {space} has {count} solutions"
            )))
        }
        Err(e) => return Err(CliError::pipeline(e.to_string())),
    };

    let d = args.digits;
    let sol = &pipe.solutions[args.solution];
    let fiber = space.fiber_param();
    let mut out = String::new();
    writeln!(out, "space: {space}").unwrap();
    writeln!(
        out,
        "solution {}: {fiber} = {}, x1 = {}, x2 = {}",
        args.solution,
        sol.params.fiber().to_decimal(d),
        sol.params.x1().to_decimal(d),
        sol.params.x2().to_decimal(d),
    )
    .unwrap();
    writeln!(out, "w0 = {}", family.nav.w0().to_decimal(d)).unwrap();
    writeln!(out, "lambda = {}", family.nav.lambda().to_decimal(d)).unwrap();
    writeln!(out, "admissible: yes").unwrap();
    writeln!(
        out,
        "riemannian: {}",
        if family.riemannian { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(
        out,
        "einstein constant K = {}",
        family.einstein_constant.to_decimal(d)
    )
    .unwrap();

    if let Some(spec) = &args.y {
        let y = parse_tangent(space, spec)?;
        if y.is_zero() {
            return Err(CliError::usage("--y must be a nonzero tangent vector"));
        }
        let fwd = eval_randers(&family.nav, &y)
            .map_err(|e| CliError::pipeline(e.to_string()))?;
        let bwd = eval_randers(&family.nav, &y.negated())
            .map_err(|e| CliError::pipeline(e.to_string()))?;
        let hyy = block_inner(family.nav.h(), &y, &y)
            .map_err(|e| CliError::pipeline(e.to_string()))?;
        writeln!(out, "h(y,y) = {}", hyy.to_decimal(d)).unwrap();
        writeln!(out, "F(y) = {}", fwd.f_value.to_decimal(d)).unwrap();
        writeln!(out, "F(-y) = {}", bwd.f_value.to_decimal(d)).unwrap();
        let riem_check = is_riemannian(&family.nav);
        debug_assert_eq!(riem_check, family.riemannian);
    }
    Ok(out)
}
