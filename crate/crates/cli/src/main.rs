//! `dalattice` — command-line front end for discrete analytic function
//! computations with JSON/CSV input and output.
//!
//! Exit codes: 0 success, 1 domain error (reported as `{"error": ...}` on
//! stdout), 2 usage error (diagnostics on stderr).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dalattice::basis::{
    basis_poly, coefficients_from_lattice, generating_function, generating_function_eval,
};
use dalattice::exact::AlphaSign;
use dalattice::formats::{
    gram_to_docs, CertificateDoc, CoefficientPolyDoc, EitherFunction, EvalBoundDoc,
    LatticeFunctionDoc, ProblemDoc, RationalElementDoc,
};
use dalattice::hardy::{
    evaluate_at_lattice, kernel_eval, kernel_gram, psd_check, EvalBound, HardyElement,
};
use dalattice::lattice::LatticePath;
use dalattice::schur::{
    blaschke_lambda, blaschke_pm, ideal_membership, polynomial_generator, schur_check,
    solve_basic_interpolation, InterpolationProblem, SchurCandidate,
};
use dalattice::{Error, LatticePoint, Window};

#[derive(Parser)]
#[command(
    name = "dalattice",
    about = "Discrete analytic functions on the integer lattice: basis polynomials, \
             Hardy-space kernels, Schur multipliers and lattice interpolation",
    version
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

/// Input source shared by the file-consuming verbs.
#[derive(Args)]
struct Input {
    /// Path to a JSON input document
    #[arg(long, conflicts_with = "json")]
    file: Option<PathBuf>,
    /// Inline JSON input document
    #[arg(long)]
    json: Option<String>,
}

impl Input {
    fn read(&self) -> Result<String, Error> {
        match (&self.file, &self.json) {
            (Some(path), None) => fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display()))),
            (None, Some(inline)) => Ok(inline.clone()),
            _ => unreachable!("clap enforces exactly one input source"),
        }
    }

    fn is_given(&self) -> bool {
        self.file.is_some() || self.json.is_some()
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Evaluate the basis polynomial z^(n), exactly
    #[command(group = clap::ArgGroup::new("basis_target").required(true).args(["eval", "window"]))]
    Basis {
        /// Basis index n
        #[arg(long)]
        n: u32,
        /// Lattice point "x+yi" to evaluate at
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
        /// Window "x_min,x_max,y_min,y_max" to tabulate over
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Test a sampled lattice function for discrete analyticity
    CheckDa {
        #[command(flatten)]
        input: Input,
    },
    /// Discrete trapezoid integral of a lattice function along a path
    Integrate {
        #[command(flatten)]
        input: Input,
        /// Path vertices "x+yi,x+yi,..."
        #[arg(long, allow_hyphen_values = true)]
        path: String,
    },
    /// Apply the discrete antiderivative operator Z
    ZOp {
        #[command(flatten)]
        input: Input,
    },
    /// Basis coefficients of an exact discrete analytic function
    Coeffs {
        #[command(flatten)]
        input: Input,
        /// Highest coefficient index
        #[arg(long)]
        n: usize,
    },
    /// Convolution product of two coefficient polynomials
    Convolve {
        #[command(flatten)]
        input: Input,
        /// Path to the second coefficient polynomial
        #[arg(long)]
        with: PathBuf,
    },
    /// Generating function G_z(t) of the basis values at z
    Genfun {
        /// Lattice point "x+yi"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Evaluate at t = "re,im" as well
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Reproducing kernel value K_w(z) with certified error
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Truncation order
        #[arg(long)]
        n: usize,
    },
    /// Gram matrix of kernel sections at the given points
    Gram {
        /// Points "x+yi,x+yi,..."
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Truncation order
        #[arg(long)]
        n: usize,
        /// Also run the positivity check at this tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Certified evaluation of a Hardy element at a lattice point
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Truncation order
        #[arg(long)]
        n: usize,
    },
    /// Boundary certification of a Schur candidate
    SchurCheck {
        #[command(flatten)]
        input: Input,
    },
    /// Blaschke factor: B_lambda for --lambda, or B+/B- for --sign
    #[command(group = clap::ArgGroup::new("blaschke_source").required(true).args(["lambda", "sign"]))]
    Blaschke {
        /// Lattice point "x+yi" in the closed right half-plane
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// "+" or "-" for the elementary factors
        #[arg(long)]
        sign: Option<String>,
        /// Evaluate on the rectangle R_lambda and report residuals
        #[arg(long)]
        verify: bool,
        /// Truncation order for --verify
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Solve the homogeneous interpolation problem on R_lambda
    Interpolate {
        #[command(flatten)]
        input: Input,
    },
    /// Principal-ideal membership of a polynomial for a given lambda
    Member {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Export a CSV table
    Export {
        /// One of basis-table, kernel-heatmap, boundary-modulus
        #[arg(long)]
        what: String,
        /// basis-table: highest basis index
        #[arg(long)]
        max_n: Option<u32>,
        /// basis-table / kernel-heatmap: window "x_min,x_max,y_min,y_max"
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// kernel-heatmap: kernel base point "x+yi"
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// kernel-heatmap: truncation order
        #[arg(long)]
        n: Option<usize>,
        /// boundary-modulus: "+" or "-" for B+/B-
        #[arg(long)]
        sign: Option<String>,
        /// boundary-modulus: rational-element JSON file
        #[arg(long)]
        file: Option<PathBuf>,
        /// boundary-modulus: number of circle samples
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
}

fn parse_point(s: &str) -> Result<LatticePoint, Error> {
    s.parse()
}

fn parse_points(s: &str) -> Result<Vec<LatticePoint>, Error> {
    s.split(',').map(|p| parse_point(p.trim())).collect()
}

fn parse_window(s: &str) -> Result<Window, Error> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse { kind: "window bound", input: p.to_string() })
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 4 {
        return Err(Error::InvalidInput(
            "window must be \"x_min,x_max,y_min,y_max\"".into(),
        ));
    }
    Window::new(parts[0], parts[1], parts[2], parts[3])
}

fn parse_complex(s: &str) -> Result<dalattice::ComplexFloat, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidInput("complex value must be \"re,im\"".into()));
    }
    let re = parts[0].trim().parse::<f64>().map_err(|_| Error::Parse {
        kind: "float",
        input: parts[0].to_string(),
    })?;
    let im = parts[1].trim().parse::<f64>().map_err(|_| Error::Parse {
        kind: "float",
        input: parts[1].to_string(),
    })?;
    Ok(dalattice::ComplexFloat::new(re, im))
}

fn parse_sign(s: &str) -> Result<AlphaSign, Error> {
    match s {
        "+" | "plus" => Ok(AlphaSign::Plus),
        "-" | "minus" => Ok(AlphaSign::Minus),
        other => Err(Error::InvalidInput(format!(
            "sign must be \"+\" or \"-\", got {other:?}"
        ))),
    }
}

fn parse_doc<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Error> {
    serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed {what} document: {e}")))
}

/// A Hardy element document: coefficient-poly (has "basis") or
/// rational-element (has "num"/"den").
fn parse_hardy(text: &str) -> Result<HardyElement, Error> {
    let value: Value = parse_doc(text, "Hardy element")?;
    if value.get("basis").is_some() {
        let doc: CoefficientPolyDoc = parse_doc(text, "coefficient polynomial")?;
        Ok(HardyElement::Polynomial(doc.decode()?))
    } else if value.get("num").is_some() {
        let doc: RationalElementDoc = parse_doc(text, "rational element")?;
        Ok(HardyElement::Rational(doc.decode()?))
    } else {
        Err(Error::InvalidInput(
            "expected a coefficient-poly ({\"basis\", \"coeffs\"}) or \
             rational-element ({\"num\", \"den\"}) document"
                .into(),
        ))
    }
}

fn point_json(p: LatticePoint) -> Value {
    json!({ "x": p.x, "y": p.y })
}

fn bound_json(b: &EvalBound) -> Value {
    serde_json::to_value(EvalBoundDoc::from_bound(b)).unwrap()
}

fn schur_from_input(input: &Input) -> Result<SchurCandidate, Error> {
    let doc: RationalElementDoc = parse_doc(&input.read()?, "rational element")?;
    Ok(SchurCandidate::new(doc.decode()?))
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.verb {
        Verb::Basis { n, eval, window } => {
            let p = basis_poly(*n);
            match (eval, window) {
                (Some(pt), None) => {
                    let v = p.eval(parse_point(pt)?);
                    Ok(json!({ "value": v.to_string() }).to_string())
                }
                (None, Some(w)) => {
                    let f = p.to_lattice_function(parse_window(w)?);
                    let doc = LatticeFunctionDoc::from_exact(&f);
                    Ok(serde_json::to_string(&doc).unwrap())
                }
                _ => Err(Error::InvalidInput(
                    "basis needs exactly one of --eval or --window".into(),
                )),
            }
        }
        Verb::CheckDa { input } => {
            let doc: LatticeFunctionDoc = parse_doc(&input.read()?, "lattice function")?;
            let report = match doc.decode()? {
                EitherFunction::Exact(f) => f.is_discrete_analytic()?,
                EitherFunction::Float(f) => f.is_discrete_analytic()?,
            };
            Ok(json!({
                "analytic": report.analytic,
                "violations": report.violations.iter().map(|&p| point_json(p)).collect::<Vec<_>>(),
            })
            .to_string())
        }
        Verb::Integrate { input, path } => {
            let doc: LatticeFunctionDoc = parse_doc(&input.read()?, "lattice function")?;
            let gamma = LatticePath::new(parse_points(path)?)?;
            let value = match doc.decode()? {
                EitherFunction::Exact(f) => {
                    Value::String(f.discrete_integral(&gamma)?.to_string())
                }
                EitherFunction::Float(f) => {
                    let v = f.discrete_integral(&gamma)?;
                    json!([v.re, v.im])
                }
            };
            Ok(json!({ "value": value }).to_string())
        }
        Verb::ZOp { input } => {
            let doc: LatticeFunctionDoc = parse_doc(&input.read()?, "lattice function")?;
            let out = match doc.decode()? {
                EitherFunction::Exact(f) => LatticeFunctionDoc::from_exact(&f.z_operator()?),
                EitherFunction::Float(f) => LatticeFunctionDoc::from_float(&f.z_operator()?),
            };
            Ok(serde_json::to_string(&out).unwrap())
        }
        Verb::Coeffs { input, n } => {
            let doc: LatticeFunctionDoc = parse_doc(&input.read()?, "lattice function")?;
            let f = match doc.decode()? {
                EitherFunction::Exact(f) => f,
                EitherFunction::Float(_) => {
                    return Err(Error::InvalidInput(
                        "coefficient extraction needs an exact-mode document".into(),
                    ))
                }
            };
            let p = coefficients_from_lattice(&f, *n)?;
            Ok(serde_json::to_string(&CoefficientPolyDoc::from_poly(&p)).unwrap())
        }
        Verb::Convolve { input, with } => {
            let a: CoefficientPolyDoc = parse_doc(&input.read()?, "coefficient polynomial")?;
            let b_text = fs::read_to_string(with).map_err(|e| {
                Error::InvalidInput(format!("cannot read {}: {e}", with.display()))
            })?;
            let b: CoefficientPolyDoc = parse_doc(&b_text, "coefficient polynomial")?;
            let out = a.decode()?.convolve(&b.decode()?);
            Ok(serde_json::to_string(&CoefficientPolyDoc::from_poly(&out)).unwrap())
        }
        Verb::Genfun { z, t } => {
            let z = parse_point(z)?;
            let g = generating_function(z);
            let mut out = json!({
                "num": g.num.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "den": g.den.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            if let Some(t) = t {
                let v = generating_function_eval(z, parse_complex(t)?)?;
                out["value"] = json!([v.re, v.im]);
            }
            Ok(out.to_string())
        }
        Verb::Kernel { w, z, n } => {
            let b = kernel_eval(parse_point(w)?, parse_point(z)?, *n)?;
            Ok(bound_json(&b).to_string())
        }
        Verb::Gram { points, n, tol } => {
            let pts = parse_points(points)?;
            let g = kernel_gram(&pts, *n)?;
            let mut out = json!({ "entries": gram_to_docs(&g) });
            if let Some(tol) = tol {
                let report = psd_check(&g, *tol)?;
                out["psd"] = json!({
                    "psd": report.psd,
                    "min_eigenvalue": report.min_eigenvalue,
                    "tolerance": report.tolerance,
                });
            }
            Ok(out.to_string())
        }
        Verb::Eval { input, z, n } => {
            let f = parse_hardy(&input.read()?)?;
            let b = evaluate_at_lattice(&f, parse_point(z)?, *n)?;
            Ok(bound_json(&b).to_string())
        }
        Verb::SchurCheck { input } => {
            let s = schur_from_input(input)?;
            let cert = schur_check(&s)?;
            Ok(serde_json::to_string(&CertificateDoc::from_certificate(&cert)).unwrap())
        }
        Verb::Blaschke { lambda, sign, verify, n } => {
            let (b, rectangle) = match (lambda, sign) {
                (Some(l), None) => {
                    let prob = InterpolationProblem::new(parse_point(l)?)?;
                    let rect = prob.rectangle().to_vec();
                    (blaschke_lambda(&prob), rect)
                }
                (None, Some(s)) => (blaschke_pm(parse_sign(s)?), vec![]),
                _ => {
                    return Err(Error::InvalidInput(
                        "blaschke needs exactly one of --lambda or --sign".into(),
                    ))
                }
            };
            let mut out = serde_json::to_value(RationalElementDoc::from_element(b.element()))
                .unwrap();
            if *verify {
                let h = HardyElement::Rational(b.element().clone());
                let mut residuals = Vec::with_capacity(rectangle.len());
                for p in &rectangle {
                    let v = evaluate_at_lattice(&h, *p, *n)?;
                    let mut r = point_json(*p);
                    r["re"] = json!(v.value.re);
                    r["im"] = json!(v.value.im);
                    r["err"] = json!(v.abs_error);
                    residuals.push(r);
                }
                out["residuals"] = Value::Array(residuals);
            }
            Ok(out.to_string())
        }
        Verb::Interpolate { input } => {
            let doc: ProblemDoc = parse_doc(&input.read()?, "interpolation problem")?;
            let (prob, n) = doc.decode()?;
            let generator = polynomial_generator(&prob);
            let basis = solve_basic_interpolation(&prob, n);
            Ok(json!({
                "degree": prob.generator_degree(),
                "generator": CoefficientPolyDoc::from_poly(&generator),
                "basis": basis.iter().map(CoefficientPolyDoc::from_poly).collect::<Vec<_>>(),
            })
            .to_string())
        }
        Verb::Member { input, lambda } => {
            let doc: CoefficientPolyDoc = parse_doc(&input.read()?, "coefficient polynomial")?;
            let prob = InterpolationProblem::new(parse_point(lambda)?)?;
            let q = ideal_membership(&doc.decode()?, &prob)?;
            Ok(match q {
                Some(q) => json!({
                    "member": true,
                    "quotient": CoefficientPolyDoc::from_poly(&q),
                }),
                None => json!({ "member": false, "quotient": null }),
            }
            .to_string())
        }
        Verb::Export { what, max_n, window, w, n, sign, file, samples } => match what.as_str() {
            "basis-table" => {
                let max_n = max_n
                    .ok_or_else(|| Error::InvalidInput("basis-table needs --max-n".into()))?;
                let win = parse_window(window.as_deref().ok_or_else(|| {
                    Error::InvalidInput("basis-table needs --window".into())
                })?)?;
                let mut out = String::from("n,x,y,re,im\n");
                for k in 0..=max_n {
                    let p = basis_poly(k);
                    for pt in win.points() {
                        let v = p.eval(pt).to_float()?;
                        out.push_str(&format!("{},{},{},{},{}\n", k, pt.x, pt.y, v.re, v.im));
                    }
                }
                Ok(out)
            }
            "kernel-heatmap" => {
                let w = parse_point(w.as_deref().ok_or_else(|| {
                    Error::InvalidInput("kernel-heatmap needs --w".into())
                })?)?;
                let win = parse_window(window.as_deref().ok_or_else(|| {
                    Error::InvalidInput("kernel-heatmap needs --window".into())
                })?)?;
                let n = n.ok_or_else(|| Error::InvalidInput("kernel-heatmap needs --n".into()))?;
                let mut out = String::from("zx,zy,wx,wy,re,im,err\n");
                for z in win.points() {
                    let b = kernel_eval(w, z, n)?;
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        z.x, z.y, w.x, w.y, b.value.re, b.value.im, b.abs_error
                    ));
                }
                Ok(out)
            }
            "boundary-modulus" => {
                let element = match (sign, file) {
                    (Some(s), None) => blaschke_pm(parse_sign(s)?).element().clone(),
                    (None, Some(path)) => {
                        let text = fs::read_to_string(path).map_err(|e| {
                            Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                        })?;
                        let doc: RationalElementDoc = parse_doc(&text, "rational element")?;
                        doc.decode()?
                    }
                    _ => {
                        return Err(Error::InvalidInput(
                            "boundary-modulus needs exactly one of --sign or --file".into(),
                        ))
                    }
                };
                let rf = element.as_rational_function();
                let mut out = String::from("theta,modulus\n");
                for j in 0..*samples {
                    let theta = 2.0 * std::f64::consts::PI * j as f64 / *samples as f64;
                    let t = dalattice::ComplexFloat::from_polar(1.0, theta);
                    let v = rf.eval_f64(t)?;
                    out.push_str(&format!("{},{}\n", theta, v.norm()));
                }
                Ok(out)
            }
            other => Err(Error::InvalidInput(format!(
                "unknown export table {other:?}; expected basis-table, kernel-heatmap \
                 or boundary-modulus"
            ))),
        },
    }
}

/// Missing-input checks that are usage errors (exit 2), not domain errors.
fn usage_check(cli: &Cli) -> Result<(), String> {
    let input = match &cli.verb {
        Verb::CheckDa { input }
        | Verb::Integrate { input, .. }
        | Verb::ZOp { input }
        | Verb::Coeffs { input, .. }
        | Verb::Convolve { input, .. }
        | Verb::Eval { input, .. }
        | Verb::SchurCheck { input }
        | Verb::Interpolate { input }
        | Verb::Member { input, .. } => Some(input),
        _ => None,
    };
    if let Some(input) = input {
        if !input.is_given() {
            return Err("an input is required: pass --file PATH or --json TEXT".into());
        }
    }
    if let Verb::Export { what, max_n, window, w, n, sign, file, .. } = &cli.verb {
        let missing: &[(&str, bool)] = match what.as_str() {
            "basis-table" => &[("--max-n", max_n.is_none()), ("--window", window.is_none())],
            "kernel-heatmap" => &[
                ("--w", w.is_none()),
                ("--window", window.is_none()),
                ("--n", n.is_none()),
            ],
            "boundary-modulus" => {
                if sign.is_some() == file.is_some() {
                    return Err(
                        "boundary-modulus needs exactly one of --sign or --file".into()
                    );
                }
                &[]
            }
            other => {
                return Err(format!(
                    "unknown export table {other:?}; expected basis-table, \
                     kernel-heatmap or boundary-modulus"
                ))
            }
        };
        for (flag, is_missing) in missing {
            if *is_missing {
                return Err(format!("{what} needs {flag}"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = usage_check(&cli) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let (text, code) = match run(&cli) {
        Ok(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            (text, ExitCode::SUCCESS)
        }
        Err(e) => (
            format!("{}\n", json!({ "error": e.to_string() })),
            ExitCode::from(1),
        ),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    code
}
