//! `korenblum`: norm estimates, membership classification, operator
//! application, radial profiles and the verification suite from the shell.
//!
//! Exit codes: 0 success (or all checks pass), 1 a check failed, 2 the worst
//! check outcome is inconclusive, 64 usage or parse error, 65 evaluation error.

mod config;
mod render;
mod spec;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use korenblum_core::function::DiscFunction;
use korenblum_core::operators::{path_integral_volterra, BACKSHIFT_ORIGIN_TOL};
use korenblum_core::radial::{
    classify_membership, odomain_norm_estimate, radial_profile, weighted_sup_estimate, Classification,
    NormMethod, RadialProfile,
};
use korenblum_core::{suite, AnalyticExpr, Function, Membership, OperatorSpec, RadialGrid, Variant, Weight};
use num_complex::Complex64;
use serde_json::{json, Value};

use config::{Format, Overrides, RunConfig};
use render::num;
use spec::Space;

const EXIT_USAGE: u8 = 64;
const EXIT_EVAL: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "korenblum", version, about = "Numerics for Korenblum growth spaces and Volterra-type operators")]
struct Cli {
    /// JSON configuration file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Truncation degree for Taylor expansions.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Number of dyadic radii 1 - 2^-k.
    #[arg(long = "grid-depth", global = true)]
    grid_depth: Option<u32>,
    /// Angular samples per circle.
    #[arg(long, global = true)]
    angles: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate a norm: korenblum:γ, bloch, or odomain:γ:<g>.
    Norm {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        space: String,
        /// How to estimate optimal-domain norms.
        #[arg(long, value_enum, default_value = "path")]
        method: MethodArg,
    },
    /// Classify membership in A^{-γ}, or in the optimal domain of V_g with --symbol.
    Classify {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        /// Symbol g; classifies f g' at order γ + 1.
        #[arg(long)]
        symbol: Option<String>,
    },
    /// Apply an operator and print coefficients, or the value at --at.
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long = "fn")]
        function: String,
        /// Evaluation point, e.g. 0.5 or 0.3+0.4i.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Radial profile r, max |f| on |z| = r, weighted value.
    Profile {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        gamma: f64,
        /// Sample a single ray at this angle (e.g. pi, pi/2, 0.3) instead of full circles.
        #[arg(long, allow_hyphen_values = true)]
        ray: Option<String>,
    },
    /// Run verification checks by name, or all of them.
    Verify {
        checks: Vec<String>,
        /// Random polynomials per sampled check.
        #[arg(long)]
        samples: Option<usize>,
        /// Include per-check runtimes (makes output machine dependent).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Path,
    Proxy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    LittleOh,
}

enum Failure {
    Usage(String),
    Eval(String),
}

impl From<korenblum_core::Error> for Failure {
    fn from(e: korenblum_core::Error) -> Self {
        Failure::Eval(e.to_string())
    }
}

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(output) => {
            let written = match &out_path {
                Some(p) => std::fs::write(p, &output.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => std::io::stdout().write_all(output.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::from(output.code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_EVAL)
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Eval(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_EVAL)
        }
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let overrides = Overrides {
        seed: cli.seed,
        degree: cli.degree,
        depth: cli.grid_depth,
        angles: cli.angles,
        format: cli.format,
    };
    let cfg = usage(RunConfig::load(cli.config.as_deref(), &overrides))?;
    let grid = cfg.suite.grid()?;
    let text = match cli.command {
        Command::Norm { function, space, method } => {
            let f = usage(spec::parse_function(&function))?;
            let space = usage(spec::parse_space(&space))?;
            norm(&f, &space, method, &grid, cfg.format.unwrap_or(Format::Json))?
        }
        Command::Classify { function, gamma, variant, symbol } => {
            let f = usage(spec::parse_function(&function))?;
            let gprime = match symbol {
                Some(s) => Some(usage(spec::parse_function(&s))?.derivative()),
                None => None,
            };
            if !(gamma > 0.0 && gamma.is_finite()) {
                return Err(Failure::Usage(format!("γ must be positive, got {gamma}")));
            }
            classify(&f, gamma, variant, gprime.as_ref(), &grid, &cfg)?
        }
        Command::Apply { op, function, at } => {
            let op = usage(spec::parse_operator(&op))?;
            let f = usage(spec::parse_function(&function))?;
            let at = match at {
                Some(z) => Some(usage(spec::parse_complex(&z))?),
                None => None,
            };
            apply(&op, &f, at, cfg.suite.degree, cfg.format.unwrap_or(Format::Json))?
        }
        Command::Profile { function, gamma, ray } => {
            let f = usage(spec::parse_function(&function))?;
            let weight = usage(Weight::power(gamma).map_err(|e| e.to_string()))?;
            let grid = match ray {
                Some(r) => grid.with_ray(usage(spec::parse_angle(&r))?),
                None => grid,
            };
            profile(&f, weight, &grid, cfg.format.unwrap_or(Format::Csv))?
        }
        Command::Verify { checks, samples, timings } => {
            let mut suite_cfg = cfg.suite.clone();
            if let Some(n) = samples {
                suite_cfg.samples = n;
            }
            return verify(&checks, &suite_cfg, timings, cfg.format.unwrap_or(Format::Table));
        }
    };
    Ok(Output { text, code: 0 })
}

fn grid_meta(grid: &RadialGrid) -> Value {
    json!({ "depth": grid.depth(), "angles": grid.angle_count(), "radii": grid.radii().len() })
}

fn norm(f: &Function, space: &Space, method: MethodArg, grid: &RadialGrid, format: Format) -> Result<String, Failure> {
    let (name, gamma, estimate) = match space {
        Space::Korenblum { gamma } => ("korenblum", Some(*gamma), weighted_sup_estimate(f, Weight::power(*gamma)?, grid)?),
        Space::Bloch => {
            let origin = f.value(Complex64::new(0.0, 0.0))?.norm();
            ("bloch", None, origin + weighted_sup_estimate(&f.derivative(), Weight::power(1.0)?, grid)?)
        }
        Space::OptimalDomain { gamma, gprime } => {
            let method = match method {
                MethodArg::Path => NormMethod::PathIntegral,
                MethodArg::Proxy => NormMethod::Proxy,
            };
            ("odomain", Some(*gamma), odomain_norm_estimate(gprime, f, *gamma, grid, method)?)
        }
    };
    Ok(match format {
        Format::Json => {
            let v = json!({
                "space": name,
                "gamma": gamma.map(num),
                "estimate": num(estimate),
                "grid": grid_meta(grid),
            });
            format!("{v}\n")
        }
        Format::Csv => format!(
            "space,gamma,estimate,depth,angles\n{name},{},{estimate:.16e},{},{}\n",
            gamma.map(|g| g.to_string()).unwrap_or_default(),
            grid.depth(),
            grid.angle_count()
        ),
        Format::Table => format!(
            "space     {name}{}\nestimate  {estimate:.12}\ngrid      depth {} angles {}\n",
            gamma.map(|g| format!(" γ = {g}")).unwrap_or_default(),
            grid.depth(),
            grid.angle_count()
        ),
    })
}

fn classify(
    f: &Function,
    gamma: f64,
    variant: VariantArg,
    gprime: Option<&Function>,
    grid: &RadialGrid,
    cfg: &RunConfig,
) -> Result<String, Failure> {
    let tol = &cfg.suite.classify;
    let (order, c): (f64, Classification) = match gprime {
        Some(g) => {
            let fg = korenblum_core::function::ProductOf(f, g);
            (gamma + 1.0, classify_membership(&fg, gamma + 1.0, grid, tol)?)
        }
        None => (gamma, classify_membership(f, gamma, grid, tol)?),
    };
    let variant = match variant {
        VariantArg::Full => Variant::Full,
        VariantArg::LittleOh => Variant::LittleOh,
    };
    let member = match (c.membership, variant) {
        (Membership::Inconclusive, _) => None,
        (Membership::InA0, _) | (Membership::InANotA0, Variant::Full) => Some(true),
        _ => Some(false),
    };
    let variant_name = if variant == Variant::Full { "full" } else { "little_oh" };
    Ok(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let v = json!({
                "membership": c.membership.to_string(),
                "member": member,
                "variant": variant_name,
                "gamma": num(gamma),
                "order": num(order),
                "optimal_domain": gprime.is_some(),
                "slope": c.slope.map(num),
                "tail": c.tail.iter().map(|(r, w)| json!({ "r": num(*r), "weighted": num(*w) })).collect::<Vec<_>>(),
            });
            format!("{v}\n")
        }
        Format::Csv => {
            let mut s = String::from("membership,member,slope,r,weighted\n");
            let member = member.map(|m| m.to_string()).unwrap_or_default();
            let slope = c.slope.map(|x| format!("{x:.16e}")).unwrap_or_default();
            for (r, w) in &c.tail {
                let _ = writeln!(s, "{},{member},{slope},{r:.16e},{w:.16e}", c.membership);
            }
            s
        }
        Format::Table => {
            let mut s = format!("{}\n", c.membership);
            if let Some(slope) = c.slope {
                let _ = writeln!(s, "tail slope {slope:.6} at order {order}");
            }
            for (r, w) in &c.tail {
                let _ = writeln!(s, "  r = {r:<22} weighted = {w:.12}");
            }
            s
        }
    })
}

/// Value of `op f` at `z`, computed from closed forms or quadrature rather
/// than from the truncated series.
fn apply_at(op: &OperatorSpec, f: &Function, z: Complex64) -> Result<Complex64, korenblum_core::Error> {
    use korenblum_core::Error;
    if z.norm() >= 1.0 {
        return Err(Error::Domain { re: z.re, im: z.im });
    }
    let zero = Complex64::new(0.0, 0.0);
    let one = AnalyticExpr::constant(1.0);
    let averaged = |g: &dyn DiscFunction| -> Result<Complex64, Error> {
        if z == zero {
            Ok(f.value(zero)? * g.value(zero)?)
        } else {
            Ok(path_integral_volterra(g, f, z)? / z)
        }
    };
    match op {
        OperatorSpec::Volterra { gprime } => path_integral_volterra(gprime, f, z),
        OperatorSpec::Averaged { gprime } => averaged(gprime),
        OperatorSpec::Cesaro => averaged(&korenblum_core::expr::g0_prime()),
        OperatorSpec::CesaroInverse => Ok((1.0 - z) * (f.value(z)? + z * f.derivative().value(z)?)),
        OperatorSpec::Differentiate => f.derivative().value(z),
        OperatorSpec::Integrate => path_integral_volterra(&one, f, z),
        OperatorSpec::MultiplyBy { h } => Ok(h.value(z)? * f.value(z)?),
        OperatorSpec::Shift => Ok(z * f.value(z)?),
        OperatorSpec::BackShift => {
            let f0 = f.value(zero)?;
            if f0.norm() > BACKSHIFT_ORIGIN_TOL {
                return Err(Error::Precondition(format!("backshift needs f(0) = 0, got |f(0)| = {}", f0.norm())));
            }
            if z == zero {
                f.derivative().value(zero)
            } else {
                Ok(f.value(z)? / z)
            }
        }
    }
}

fn apply(op: &OperatorSpec, f: &Function, at: Option<Complex64>, degree: usize, format: Format) -> Result<String, Failure> {
    if let Some(z) = at {
        let w = apply_at(op, f, z)?;
        return Ok(match format {
            Format::Json => format!("{}\n", render::complex(w)),
            Format::Csv => format!("re,im\n{:.16e},{:.16e}\n", w.re, w.im),
            Format::Table => format!("{w}\n"),
        });
    }
    let series = match f.exact_series() {
        Some(s) => s,
        None => f.taylor(degree)?,
    };
    let result = op.apply(&series, degree)?;
    if let Some(origin) = op.origin_values(&series, degree)? {
        if origin.differ() {
            eprintln!(
                "note: value at 0 is the analytic limit f(0)g'(0) = {}; the convention T_g f(0) = f(0) would give {}",
                origin.analytic, origin.convention
            );
        }
    }
    Ok(match format {
        Format::Json => format!("{}\n", render::series(&result)),
        Format::Csv => {
            let mut s = String::from("n,re,im\n");
            for (n, c) in result.coeffs().iter().enumerate() {
                let _ = writeln!(s, "{n},{:.16e},{:.16e}", c.re, c.im);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for (n, c) in result.coeffs().iter().enumerate() {
                let _ = writeln!(s, "{n:>5}  {:>24.16e}  {:>24.16e}", c.re, c.im);
            }
            s
        }
    })
}

fn profile(f: &Function, weight: Weight, grid: &RadialGrid, format: Format) -> Result<String, Failure> {
    let p: RadialProfile = radial_profile(f, weight, grid)?;
    Ok(match format {
        Format::Csv => p.to_csv(),
        Format::Json => {
            let rows: Vec<Value> = p
                .points
                .iter()
                .zip(p.weighted())
                .map(|(pt, w)| json!({ "r": num(pt.r), "maxmod": num(pt.maxmod), "weighted": num(w) }))
                .collect();
            format!("{}\n", Value::Array(rows))
        }
        Format::Table => {
            let mut s = format!("{:<24} {:<24} {:<24}\n", "r", "maxmod", "weighted");
            for (pt, w) in p.points.iter().zip(p.weighted()) {
                let _ = writeln!(s, "{:<24.16e} {:<24.16e} {:<24.16e}", pt.r, pt.maxmod, w);
            }
            s
        }
    })
}

fn verify(checks: &[String], cfg: &korenblum_core::SuiteConfig, timings: bool, format: Format) -> Result<Output, Failure> {
    let names: Vec<&str> = checks.iter().map(String::as_str).filter(|n| *n != "all").collect();
    if let Some(unknown) = names.iter().find(|n| suite::find_check(n).is_none()) {
        let known: Vec<&str> = suite::CHECKS.iter().map(|c| c.name).collect();
        return Err(Failure::Usage(format!("unknown check {unknown:?}; known checks: all, {}", known.join(", "))));
    }
    let mut verdicts = suite::run_checks(&names, cfg)?;
    if !timings {
        verdicts.iter_mut().for_each(|v| v.runtime_ms = None);
    }
    let text = match format {
        Format::Table => suite::render_table(&verdicts),
        Format::Json => verdicts
            .iter()
            .map(|v| serde_json::to_string(v).map(|s| s + "\n"))
            .collect::<Result<String, _>>()
            .map_err(|e| Failure::Eval(e.to_string()))?,
        Format::Csv => {
            let mut s = String::from("name,params,status,diagnostic\n");
            for v in &verdicts {
                let params: Vec<String> = v.params.iter().map(|(k, x)| format!("{k}={x}")).collect();
                let _ = writeln!(s, "{},{},{:?},{}", v.name, params.join(" "), v.status, v.diagnostic);
            }
            s
        }
    };
    Ok(Output { text, code: suite::exit_code(&verdicts) as u8 })
}
