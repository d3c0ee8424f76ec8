//! `abelab` — exact computations around the center conditions of the
//! Abel equation and the polynomial moment problem.
//!
//! Every subcommand prints one JSON document to stdout. Exit codes:
//! 0 for success / a mathematically positive answer, 1 for a negative
//! answer (nonvanishing moments, no witness, failed lemma), 2 for bad
//! input.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use abelab::acceptance::{self, Scale};
use abelab::format::{
    parse_endpoints, parse_nonzero_rat, parse_poly, parse_rat_arg, poly_to_json, InputError,
};
use abelab::report::*;
use abelab_core::abel::{center_verdict, return_map};
use abelab_core::algebraic::{
    eq_azx, eq_azxx, eq_azxx_plus, eq_kon, eq_ur, eq_xza, is_algebraic_integer, minimal_polynomial,
    AlgebraicNumberSpec,
};
use abelab_core::cheb::{cheb_t, cheb_u, to_cheb};
use abelab_core::decompose::{
    common_right_factor, detect_cheb_conjugate, reduce_pair, right_factor,
};
use abelab_core::moment::{
    classify_with_bound, default_bound, find_composition_condition, mixed_moments,
    MomentSolutionClass,
};
use abelab_core::poly::{Endpoints, LinearMap, Poly};
use abelab_core::verify::{
    kon_root_bounds, verify_a_plus_b, verify_all, verify_l2, verify_l4, verify_ll3, verify_skun,
    verify_tgv, verify_xyi, L2Case, L4Case, Ll3Case,
};

#[derive(Parser)]
#[command(
    name = "abelab",
    version,
    about = "Exact center conditions for the Abel equation and the polynomial moment problem"
)]
struct Cli {
    /// Print compact single-line JSON instead of pretty-printed
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized batches
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Moment truncation order (defaults to deg P·deg Q + deg P + deg Q)
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Series truncation order for the return map
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact polynomial arithmetic on JSON coefficient arrays
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Chebyshev polynomials and basis expansion
    #[command(subcommand)]
    Cheb(ChebCmd),
    /// Functional decomposition
    #[command(subcommand)]
    Decompose(DecomposeCmd),
    /// Moment functionals, witnesses, and classification
    #[command(subcommand)]
    Moments(MomentsCmd),
    /// Return map of y' = p y² + ε q y³
    #[command(subcommand)]
    Abel(AbelCmd),
    /// Algebraic-number predicates and named constraint equations
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Lemma verification suite
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Run the acceptance criteria
    Accept {
        /// Reduced ranges for a quick pass
        #[arg(long, value_enum, default_value_t = ScaleArg::Full)]
        scale: ScaleArg,
        /// Corrupt one criterion to prove the harness fails
        #[arg(long)]
        negative_control: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Smoke,
    Full,
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Evaluate at a rational point
    Eval {
        poly: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Composition outer(inner(x))
    Compose { outer: String, inner: String },
    /// Formal derivative
    Derive { poly: String },
    /// Antiderivative vanishing at 0
    Antiderive { poly: String },
    /// Exact definite integral over [a, b]
    Integrate {
        poly: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Coefficient of x^(deg - i)
    TopCoeff { poly: String, i: usize },
}

#[derive(Subcommand)]
enum ChebCmd {
    /// First-kind polynomial
    #[command(name = "T")]
    T { n: usize },
    /// Second-kind polynomial
    #[command(name = "U")]
    U { n: usize },
    /// Expand a polynomial in the T-basis
    Expand { poly: String },
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// Right factor with a prescribed inner degree
    RightFactor { poly: String, d: usize },
    /// Maximal common right factor
    Common { p: String, q: String },
    /// Strip the maximal common right factor
    Reduce { p: String, q: String },
}

#[derive(Subcommand)]
enum MomentsCmd {
    /// Evaluate both moment directions
    Check {
        p: String,
        q: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Search for a composition witness
    Witness {
        p: String,
        q: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Classify a vanishing pair into the known solution shapes
    Classify {
        p: String,
        q: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand)]
enum AbelCmd {
    /// Truncated return-map coefficients w[k][j]
    ReturnMap {
        p: String,
        q: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Center verdicts up to the truncation order
    Center {
        p: String,
        q: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// ε samples (repeatable)
        #[arg(long = "eps", allow_hyphen_values = true)]
        eps: Vec<String>,
    },
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Minimal polynomial(s) of the selected root(s)
    Minpoly {
        poly: String,
        /// Isolating interval lower endpoint
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        /// Isolating interval upper endpoint
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// Algebraic-integer test
    IsInteger {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// Print a named constraint equation for a given n
    PaperEq { name: String, n: usize },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run the whole verification grid
    All {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Endpoint lemma, two moduli
    Skun {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Endpoint corollary, coprime moduli
    Xyi {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Shifted-even elimination
    L2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        case: String,
    },
    /// Conjugated-Chebyshev elimination
    L4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        case: String,
    },
    /// Pure-scaling elimination
    Ll3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        case: String,
    },
    /// Root bounds of the scaling quadratic
    Kon {
        #[arg(long)]
        n: usize,
    },
    /// The sextic composition system
    Tgv,
    /// Endpoint-sum relation of a degree-one conjugation
    APlusB {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

fn emit<T: Serialize>(value: &T, compact: bool) {
    let text = if compact {
        serde_json::to_string(value).expect("serializable")
    } else {
        serde_json::to_string_pretty(value).expect("serializable")
    };
    println!("{}", text);
}

fn usage_error(message: String) -> InputError {
    InputError(message)
}

/// Shape diagnostics attached to an unclassified verdict: report when
/// the polynomial carries a Chebyshev structure whose endpoint relations
/// simply have no rational solution here.
fn unclassified_note(p: &Poly) -> Option<String> {
    let n = p.degree()?;
    for m in (3..=n).rev() {
        if n % m != 0 {
            continue;
        }
        if let Ok(Some(conj)) = detect_cheb_conjugate(p, m) {
            return Some(format!(
                "P factors through a degree-{} Chebyshev polynomial (outer degree {}); \
                 the matching endpoint relations have no rational solution at these endpoints",
                m,
                conj.outer.degree().unwrap_or(0)
            ));
        }
    }
    None
}

fn run(cli: &Cli) -> Result<u8, InputError> {
    let compact = cli.json;
    match &cli.command {
        Command::Poly(cmd) => run_poly(cmd, compact),
        Command::Cheb(cmd) => run_cheb(cmd, compact),
        Command::Decompose(cmd) => run_decompose(cmd, compact),
        Command::Moments(cmd) => run_moments(cmd, cli.bound, compact),
        Command::Abel(cmd) => run_abel(cmd, cli.order, compact),
        Command::Alg(cmd) => run_alg(cmd, compact),
        Command::Verify(cmd) => run_verify(cmd, compact),
        Command::Accept {
            scale,
            negative_control,
        } => {
            let scale = match scale {
                ScaleArg::Smoke => Scale::Smoke,
                ScaleArg::Full => Scale::Full,
            };
            let started = Instant::now();
            let report =
                acceptance::run_all_with(cli.seed, scale, *negative_control, |c, elapsed| {
                    eprintln!(
                        "criterion {:2} {:32} {} ({:.2?})",
                        c.id,
                        c.name,
                        if c.passed { "pass" } else { "FAIL" },
                        elapsed
                    );
                });
            eprintln!("total wall time: {:.1?}", started.elapsed());
            emit(&report, compact);
            Ok(if report.all_passed { 0 } else { 1 })
        }
    }
}

fn run_poly(cmd: &PolyCmd, compact: bool) -> Result<u8, InputError> {
    match cmd {
        PolyCmd::Eval { poly, x } => {
            let p = parse_poly(poly)?;
            let x = parse_rat_arg(x, "x")?;
            emit(&json!({ "value": p.eval(&x).to_string() }), compact);
            Ok(0)
        }
        PolyCmd::Compose { outer, inner } => {
            let outer = parse_poly(outer)?;
            let inner = parse_poly(inner)?;
            emit(
                &json!({ "poly": poly_to_json(&outer.compose(&inner)) }),
                compact,
            );
            Ok(0)
        }
        PolyCmd::Derive { poly } => {
            let p = parse_poly(poly)?;
            emit(&json!({ "poly": poly_to_json(&p.derivative()) }), compact);
            Ok(0)
        }
        PolyCmd::Antiderive { poly } => {
            let p = parse_poly(poly)?;
            emit(
                &json!({ "poly": poly_to_json(&p.antiderivative()) }),
                compact,
            );
            Ok(0)
        }
        PolyCmd::Integrate { poly, a, b } => {
            let p = parse_poly(poly)?;
            let e = parse_endpoints(a, b)?;
            emit(
                &json!({ "value": p.definite_integral(&e).to_string() }),
                compact,
            );
            Ok(0)
        }
        PolyCmd::TopCoeff { poly, i } => {
            let p = parse_poly(poly)?;
            match p.coeff_from_top(*i) {
                Some(value) => {
                    emit(&json!({ "value": value.to_string() }), compact);
                    Ok(0)
                }
                None => Err(usage_error(format!(
                    "index {} out of range for degree {:?}",
                    i,
                    p.degree()
                ))),
            }
        }
    }
}

fn run_cheb(cmd: &ChebCmd, compact: bool) -> Result<u8, InputError> {
    match cmd {
        ChebCmd::T { n } => {
            emit(&json!({ "poly": poly_to_json(&cheb_t(*n)) }), compact);
            Ok(0)
        }
        ChebCmd::U { n } => {
            emit(&json!({ "poly": poly_to_json(&cheb_u(*n)) }), compact);
            Ok(0)
        }
        ChebCmd::Expand { poly } => {
            let p = parse_poly(poly)?;
            emit(&ChebSeriesJson::from_series(&to_cheb(&p)), compact);
            Ok(0)
        }
    }
}

fn run_decompose(cmd: &DecomposeCmd, compact: bool) -> Result<u8, InputError> {
    match cmd {
        DecomposeCmd::RightFactor { poly, d } => {
            let p = parse_poly(poly)?;
            match right_factor(&p, *d) {
                Ok(Some(pair)) => {
                    emit(
                        &DecompositionJson {
                            outer: poly_to_json(&pair.outer),
                            inner: poly_to_json(&pair.inner),
                        },
                        compact,
                    );
                    Ok(0)
                }
                Ok(None) => {
                    emit(&json!({ "result": null }), compact);
                    Ok(1)
                }
                Err(e) => Err(usage_error(e.to_string())),
            }
        }
        DecomposeCmd::Common { p, q } => {
            let p = parse_poly(p)?;
            let q = parse_poly(q)?;
            match common_right_factor(&p, &q) {
                Some(w) => {
                    emit(&json!({ "result": poly_to_json(&w) }), compact);
                    Ok(0)
                }
                None => {
                    emit(&json!({ "result": null }), compact);
                    Ok(1)
                }
            }
        }
        DecomposeCmd::Reduce { p, q } => {
            let p = parse_poly(p)?;
            let q = parse_poly(q)?;
            let (pt, qt, w) = reduce_pair(&p, &q);
            emit(
                &json!({
                    "p": poly_to_json(&pt),
                    "q": poly_to_json(&qt),
                    "w": poly_to_json(&w),
                }),
                compact,
            );
            Ok(0)
        }
    }
}

fn run_moments(cmd: &MomentsCmd, bound: Option<usize>, compact: bool) -> Result<u8, InputError> {
    match cmd {
        MomentsCmd::Check { p, q, a, b } => {
            let p = parse_poly(p)?;
            let q = parse_poly(q)?;
            let e = parse_endpoints(a, b)?;
            let n = bound.unwrap_or_else(|| default_bound(&p, &q));
            let (pdq, qdp) = mixed_moments(&p, &q, &e, n);
            let all_zero = pdq.all_zero && qdp.all_zero;
            emit(
                &json!({
                    "pdq": MomentReportJson::from_report(&pdq),
                    "qdp": MomentReportJson::from_report(&qdp),
                }),
                compact,
            );
            Ok(if all_zero { 0 } else { 1 })
        }
        MomentsCmd::Witness { p, q, a, b } => {
            let p = parse_poly(p)?;
            let q = parse_poly(q)?;
            let e = parse_endpoints(a, b)?;
            match find_composition_condition(&p, &q, &e) {
                Some(witness) => {
                    emit(&WitnessJson::from_witness(&witness), compact);
                    Ok(0)
                }
                None => {
                    emit(&serde_json::Value::Null, compact);
                    Ok(1)
                }
            }
        }
        MomentsCmd::Classify { p, q, a, b } => {
            let p = parse_poly(p)?;
            let q = parse_poly(q)?;
            let e = parse_endpoints(a, b)?;
            if p.degree().map_or(true, |d| d < 1) || q.degree().map_or(true, |d| d < 1) {
                return Err(usage_error(
                    "classification needs nonconstant P and Q".into(),
                ));
            }
            // strip the maximal common right factor first; a factor whose
            // endpoint values collapse is already a witness
            let verdict;
            let mut reduced_by = None;
            if let Some(witness) = find_composition_condition(&p, &q, &e) {
                verdict = MomentSolutionClass::Reducible(witness);
            } else {
                let (pt, qt, w) = reduce_pair(&p, &q);
                if w.degree() == Some(1) {
                    let n = bound.unwrap_or_else(|| default_bound(&p, &q));
                    verdict = classify_with_bound(&p, &q, &e, n);
                } else {
                    // no witness, so the stripped factor separates a and b
                    let e2 =
                        Endpoints::new(w.eval(e.a()), w.eval(e.b())).expect("separated endpoints");
                    reduced_by = Some(w.clone());
                    let n = bound.unwrap_or_else(|| default_bound(&pt, &qt));
                    verdict = classify_with_bound(&pt, &qt, &e2, n);
                }
            }
            let mut class_json = ClassJson::from_class(&verdict);
            if matches!(verdict, MomentSolutionClass::Unclassified { .. }) {
                class_json.note = unclassified_note(&p);
            }
            let classified = !matches!(verdict, MomentSolutionClass::Unclassified { .. });
            emit(
                &json!({
                    "reduced_by": reduced_by.as_ref().map(poly_to_json),
                    "class": class_json,
                }),
                compact,
            );
            Ok(if classified { 0 } else { 1 })
        }
    }
}

fn run_abel(cmd: &AbelCmd, order: usize, compact: bool) -> Result<u8, InputError> {
    if order < 2 {
        return Err(usage_error("order must be at least 2".into()));
    }
    match cmd {
        AbelCmd::ReturnMap { p, q, a, b } => {
            let p = parse_poly(p)?;
            let q = parse_poly(q)?;
            let e = parse_endpoints(a, b)?;
            let rm = return_map(&p, &q, &e, order);
            emit(&ReturnMapJson::from_map(&rm), compact);
            Ok(0)
        }
        AbelCmd::Center { p, q, a, b, eps } => {
            let p = parse_poly(p)?;
            let q = parse_poly(q)?;
            let e = parse_endpoints(a, b)?;
            let samples = eps
                .iter()
                .map(|s| parse_rat_arg(s, "eps"))
                .collect::<Result<Vec<_>, _>>()?;
            let rm = return_map(&p, &q, &e, order);
            let verdict = center_verdict(&rm, &samples);
            let is_center = verdict.is_parametric_center;
            emit(&CenterVerdictJson::from_verdict(&verdict), compact);
            Ok(if is_center { 0 } else { 1 })
        }
    }
}

fn parse_spec(
    poly: &str,
    lo: &Option<String>,
    hi: &Option<String>,
) -> Result<AlgebraicNumberSpec, InputError> {
    let p = parse_poly(poly)?;
    let spec = match (lo, hi) {
        (Some(lo), Some(hi)) => {
            AlgebraicNumberSpec::in_interval(p, parse_rat_arg(lo, "lo")?, parse_rat_arg(hi, "hi")?)
        }
        (None, None) => AlgebraicNumberSpec::any_root(p),
        _ => return Err(usage_error("--lo and --hi must be given together".into())),
    };
    spec.map_err(|e| usage_error(e.to_string()))
}

fn run_alg(cmd: &AlgCmd, compact: bool) -> Result<u8, InputError> {
    match cmd {
        AlgCmd::Minpoly { poly, lo, hi } => {
            let spec = parse_spec(poly, lo, hi)?;
            let factors = minimal_polynomial(&spec).map_err(|e| usage_error(e.to_string()))?;
            emit(
                &json!({
                    "factors": factors.iter().map(poly_to_json).collect::<Vec<_>>()
                }),
                compact,
            );
            Ok(0)
        }
        AlgCmd::IsInteger { poly, lo, hi } => {
            let spec = parse_spec(poly, lo, hi)?;
            let result = is_algebraic_integer(&spec).map_err(|e| usage_error(e.to_string()))?;
            emit(&json!({ "is_algebraic_integer": result }), compact);
            Ok(if result { 0 } else { 1 })
        }
        AlgCmd::PaperEq { name, n } => {
            let n = *n;
            let value = match name.as_str() {
                "azx" => {
                    let v = eq_azx(n).map_err(|e| usage_error(e.to_string()))?;
                    json!({ "name": "azx", "n": n, "value": v.to_string() })
                }
                "xza" => {
                    let p = eq_xza(n).map_err(|e| usage_error(e.to_string()))?;
                    json!({ "name": "xza", "n": n, "poly": poly_to_json(&p) })
                }
                "ur" => {
                    let p = eq_ur(n).map_err(|e| usage_error(e.to_string()))?;
                    json!({ "name": "ur", "n": n, "poly": poly_to_json(&p) })
                }
                "azxx" => {
                    let (b, a) = eq_azxx(n).map_err(|e| usage_error(e.to_string()))?;
                    json!({
                        "name": "azxx", "n": n,
                        "four_beta_sq": b.to_string(), "alpha_sq": a.to_string()
                    })
                }
                "azxx+" => {
                    let (b, a) = eq_azxx_plus(n).map_err(|e| usage_error(e.to_string()))?;
                    json!({
                        "name": "azxx+", "n": n,
                        "four_beta_sq": b.to_string(), "alpha_sq": a.to_string()
                    })
                }
                "kon" => {
                    let p = eq_kon(n).map_err(|e| usage_error(e.to_string()))?;
                    json!({ "name": "kon", "n": n, "poly": poly_to_json(&p) })
                }
                other => {
                    return Err(usage_error(format!(
                        "unknown equation {:?}; expected azx, xza, ur, azxx, azxx+, kon",
                        other
                    )))
                }
            };
            emit(&value, compact);
            Ok(0)
        }
    }
}

fn run_verify(cmd: &VerifyCmd, compact: bool) -> Result<u8, InputError> {
    let results = match cmd {
        VerifyCmd::All { samples } => verify_all(*samples),
        VerifyCmd::Skun { m1, m2, samples } => {
            vec![verify_skun(*m1, *m2, *samples).map_err(|e| usage_error(e.to_string()))?]
        }
        VerifyCmd::Xyi { m1, m2, samples } => {
            vec![verify_xyi(*m1, *m2, *samples).map_err(|e| usage_error(e.to_string()))?]
        }
        VerifyCmd::L2 { n, case } => {
            let case = match case.as_str() {
                "azx" => L2Case::Azx,
                "xza" => L2Case::Xza,
                other => return Err(usage_error(format!("unknown case {:?}", other))),
            };
            vec![verify_l2(*n, case).map_err(|e| usage_error(e.to_string()))?]
        }
        VerifyCmd::L4 { n, case } => {
            let case = match case.as_str() {
                "c3" => L4Case::C3,
                "c4" => L4Case::C4,
                other => return Err(usage_error(format!("unknown case {:?}", other))),
            };
            vec![verify_l4(*n, case).map_err(|e| usage_error(e.to_string()))?]
        }
        VerifyCmd::Ll3 { n, case } => {
            let case = match case.as_str() {
                "c2" => Ll3Case::C2,
                "c4" => Ll3Case::C4,
                "c6" => Ll3Case::C6,
                other => return Err(usage_error(format!("unknown case {:?}", other))),
            };
            vec![verify_ll3(*n, case).map_err(|e| usage_error(e.to_string()))?]
        }
        VerifyCmd::Kon { n } => {
            vec![kon_root_bounds(*n).map_err(|e| usage_error(e.to_string()))?]
        }
        VerifyCmd::Tgv => vec![verify_tgv()],
        VerifyCmd::APlusB { alpha, beta, a, b } => {
            let alpha = parse_nonzero_rat(alpha, "alpha")?;
            let beta = parse_rat_arg(beta, "beta")?;
            let mu = LinearMap::new(alpha, beta).expect("nonzero alpha");
            let e = parse_endpoints(a, b)?;
            vec![verify_a_plus_b(&mu, &e)]
        }
    };
    let all_passed = results.iter().all(|r| r.passed);
    let rendered: Vec<LemmaResultJson> = results.iter().map(LemmaResultJson::from_result).collect();
    emit(&rendered, compact);
    Ok(if all_passed { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
