//! JSON document types for the on-disk interchange formats: lattice
//! functions (exact or float mode), coefficient polynomials in the basis
//! `z^(n)`, rational Hardy elements, certified evaluations, interpolation
//! problems and Schur certificates.
//!
//! Exact scalars travel as `"p/q+r/si"` strings, float scalars as
//! `[re, im]` pairs; serde_json prints floats shortest-roundtrip, so a
//! document re-emitted unchanged is byte-identical.

use serde::{Deserialize, Serialize};

use crate::basis::CoefficientPoly;
use crate::error::{Error, Result};
use crate::exact::{ComplexFloat, GaussianRational};
use crate::hardy::{EvalBound, GramMatrix, RationalElement};
use crate::lattice::{LatticeFunction, LatticePoint, Window};
use crate::poly::Poly;
use crate::schur::{InnerCertificate, InterpolationProblem};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// One sampled value: exact `"p/q+r/si"` or float `[re, im]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueRepr {
    Exact(String),
    Float([f64; 2]),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValueEntry {
    pub x: i64,
    pub y: i64,
    pub v: ValueRepr,
}

/// `{ "window": [x_min, x_max, y_min, y_max], "mode": ..., "values": [...] }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFunctionDoc {
    pub window: [i64; 4],
    pub mode: String,
    pub values: Vec<ValueEntry>,
}

/// A decoded lattice function in whichever scalar mode the document declared.
#[derive(Debug, Clone)]
pub enum EitherFunction {
    Exact(LatticeFunction<GaussianRational>),
    Float(LatticeFunction<ComplexFloat>),
}

impl LatticeFunctionDoc {
    pub fn from_exact(f: &LatticeFunction<GaussianRational>) -> Self {
        let w = f.window();
        LatticeFunctionDoc {
            window: [w.x_min, w.x_max, w.y_min, w.y_max],
            mode: "exact".into(),
            values: f
                .values()
                .map(|(p, v)| ValueEntry {
                    x: p.x,
                    y: p.y,
                    v: ValueRepr::Exact(v.to_string()),
                })
                .collect(),
        }
    }

    pub fn from_float(f: &LatticeFunction<ComplexFloat>) -> Self {
        let w = f.window();
        LatticeFunctionDoc {
            window: [w.x_min, w.x_max, w.y_min, w.y_max],
            mode: "float".into(),
            values: f
                .values()
                .map(|(p, v)| ValueEntry {
                    x: p.x,
                    y: p.y,
                    v: ValueRepr::Float([v.re, v.im]),
                })
                .collect(),
        }
    }

    fn window(&self) -> Result<Window> {
        Window::new(self.window[0], self.window[1], self.window[2], self.window[3])
    }

    /// Collect the declared values in row-major window order; every window
    /// point must be covered exactly once.
    fn ordered<T>(&self, decode: impl Fn(&ValueRepr) -> Result<T>) -> Result<(Window, Vec<T>)> {
        let w = self.window()?;
        let mut slots: Vec<Option<T>> = (0..w.len()).map(|_| None).collect();
        for e in &self.values {
            let p = LatticePoint::new(e.x, e.y);
            if !w.contains(p) {
                return Err(invalid(format!("value at {p} lies outside the window")));
            }
            let idx = ((e.y - w.y_min) * w.width() + (e.x - w.x_min)) as usize;
            if slots[idx].is_some() {
                return Err(invalid(format!("duplicate value at {p}")));
            }
            slots[idx] = Some(decode(&e.v)?);
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    let x = w.x_min + (i as i64 % w.width());
                    let y = w.y_min + (i as i64 / w.width());
                    invalid(format!("missing value at {}", LatticePoint::new(x, y)))
                })
            })
            .collect::<Result<Vec<T>>>()?;
        Ok((w, values))
    }

    pub fn decode(&self) -> Result<EitherFunction> {
        match self.mode.as_str() {
            "exact" => {
                let (w, values) = self.ordered(|v| match v {
                    ValueRepr::Exact(s) => s.parse(),
                    ValueRepr::Float(_) => {
                        Err(invalid("float value in an exact-mode document"))
                    }
                })?;
                Ok(EitherFunction::Exact(LatticeFunction::from_values(w, values)?))
            }
            "float" => {
                let (w, values) = self.ordered(|v| match v {
                    ValueRepr::Float([re, im]) => Ok(ComplexFloat::new(*re, *im)),
                    ValueRepr::Exact(s) => {
                        s.parse::<GaussianRational>().and_then(|g| g.to_float())
                    }
                })?;
                Ok(EitherFunction::Float(LatticeFunction::from_values(w, values)?))
            }
            other => Err(invalid(format!("unknown mode {other:?}"))),
        }
    }
}

/// `{ "basis": "z^(n)", "coeffs": ["p/q+r/si", ...] }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientPolyDoc {
    pub basis: String,
    pub coeffs: Vec<String>,
}

impl CoefficientPolyDoc {
    pub fn from_poly(p: &CoefficientPoly) -> Self {
        CoefficientPolyDoc {
            basis: "z^(n)".into(),
            coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn decode(&self) -> Result<CoefficientPoly> {
        if self.basis != "z^(n)" {
            return Err(invalid(format!(
                "unsupported basis {:?}; expected \"z^(n)\"",
                self.basis
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<GaussianRational>>>()?;
        Ok(CoefficientPoly::new(coeffs))
    }
}

/// `{ "num": [...], "den": [...], "pole_radius": float }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalElementDoc {
    pub num: Vec<String>,
    pub den: Vec<String>,
    pub pole_radius: f64,
}

fn parse_poly(coeffs: &[String]) -> Result<Poly> {
    Ok(Poly::new(
        coeffs
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<GaussianRational>>>()?,
    ))
}

impl RationalElementDoc {
    pub fn from_element(e: &RationalElement) -> Self {
        RationalElementDoc {
            num: e.num().coeffs().iter().map(|c| c.to_string()).collect(),
            den: e.den().coeffs().iter().map(|c| c.to_string()).collect(),
            pole_radius: e.pole_radius(),
        }
    }

    /// Decode and re-certify: the stored radius is advisory, the returned
    /// element carries a freshly certified one.
    pub fn decode(&self) -> Result<RationalElement> {
        RationalElement::new(parse_poly(&self.num)?, parse_poly(&self.den)?)
    }
}

/// `{ "re": float, "im": float, "err": float }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalBoundDoc {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl EvalBoundDoc {
    pub fn from_bound(b: &EvalBound) -> Self {
        EvalBoundDoc {
            re: b.value.re,
            im: b.value.im,
            err: b.abs_error,
        }
    }
}

pub fn gram_to_docs(g: &GramMatrix) -> Vec<Vec<EvalBoundDoc>> {
    g.entries
        .iter()
        .map(|row| row.iter().map(EvalBoundDoc::from_bound).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LambdaDoc {
    pub x: i64,
    pub y: i64,
}

/// `{ "lambda": {"x": int, "y": int}, "N": int }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub lambda: LambdaDoc,
    #[serde(rename = "N")]
    pub n: usize,
}

impl ProblemDoc {
    pub fn decode(&self) -> Result<(InterpolationProblem, usize)> {
        let prob = InterpolationProblem::new(LatticePoint::new(self.lambda.x, self.lambda.y))?;
        Ok((prob, self.n))
    }
}

/// Serialized Schur certificate: kind, witness, sampling parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<f64>,
}

impl CertificateDoc {
    pub fn from_certificate(c: &InnerCertificate) -> Self {
        match c {
            InnerCertificate::ExactInner => CertificateDoc {
                kind: "exact-inner".into(),
                witness: None,
                modulus: None,
                samples: None,
                lipschitz: None,
            },
            InnerCertificate::SchurCertified { samples, lipschitz } => CertificateDoc {
                kind: "schur-certified".into(),
                witness: None,
                modulus: None,
                samples: Some(*samples),
                lipschitz: Some(*lipschitz),
            },
            InnerCertificate::NotSchur { witness, modulus } => CertificateDoc {
                kind: "not-schur".into(),
                witness: Some([witness.re, witness.im]),
                modulus: Some(*modulus),
                samples: None,
                lipschitz: None,
            },
            InnerCertificate::Indeterminate { samples } => CertificateDoc {
                kind: "indeterminate".into(),
                witness: None,
                modulus: None,
                samples: Some(*samples),
                lipschitz: None,
            },
        }
    }
}
