//! The Schur class of discrete analytic functions: boundary certification
//! of contractive multipliers, the Schur kernel Gram matrix, the Blaschke
//! factors `B±` and the generators solving the homogeneous interpolation
//! problem on the rectangle `R_λ`.
//!
//! A candidate is carried by its rational T-image; it is Schur exactly when
//! that T-image is a classical Schur function on the disk. Certification
//! works on the self-adjoint Laurent polynomial `P = |den|^2 − |num|^2` on
//! the unit circle, whose coefficients are exact in `Q(i)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;

use crate::basis::{basis_values_at, CoefficientPoly};
use crate::error::{Error, Result};
use crate::exact::{alpha, AlphaSign, ComplexFloat, GaussianRational, Rational};
use crate::hardy::{
    circle_min_lower_bound, growth_bound,EvalBound, GramMatrix, HardyElement,
    RationalElement, TruncatedSeries, DEFAULT_BASIS_RADIUS,
};
use crate::lattice::LatticePoint;
use crate::poly::Poly;

/// A candidate Schur-class element, carried by its rational T-image.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurCandidate {
    element: RationalElement,
}

impl SchurCandidate {
    pub fn new(element: RationalElement) -> Self {
        SchurCandidate { element }
    }

    pub fn from_t_image(num: Poly, den: Poly) -> Result<Self> {
        Ok(SchurCandidate::new(RationalElement::new(num, den)?))
    }

    pub fn element(&self) -> &RationalElement {
        &self.element
    }

    pub fn into_hardy(self) -> HardyElement {
        HardyElement::Rational(self.element)
    }
}

fn sqrt_rational(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// The elementary Schur function `s = (1 − |α|) G_z(α)`, with T-image
/// `(1 − |α|)/(1 − α t)`. Requires `|α| < 1` and `|α|` rational so the
/// element stays exact.
pub fn elementary_schur(a: &GaussianRational) -> Result<SchurCandidate> {
    let modulus = sqrt_rational(&a.norm_sq()).ok_or_else(|| {
        Error::InvalidInput("elementary Schur function needs |alpha| rational".into())
    })?;
    if modulus >= Rational::from_integer(BigInt::from(1)) {
        return Err(Error::InvalidInput("alpha must lie in the open unit disk".into()));
    }
    let one_minus = GaussianRational::from_rational(
        Rational::from_integer(BigInt::from(1)) - modulus,
    );
    let num = Poly::constant(one_minus);
    let den = Poly::new(vec![GaussianRational::one(), -a.clone()]);
    SchurCandidate::from_t_image(num, den)
}

/// Outcome of Schur certification on the boundary circle.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerCertificate {
    /// `|num|^2 = |den|^2` holds coefficientwise over `Q(i)`.
    ExactInner,
    /// `P >= 0` certified by squarefree reduction plus Lipschitz-bounded
    /// uniform sampling.
    SchurCertified { samples: usize, lipschitz: f64 },
    /// A boundary point with `|s(t)| > 1`.
    NotSchur { witness: ComplexFloat, modulus: f64 },
    /// Neither certified nor refuted at the maximum sampling density.
    Indeterminate { samples: usize },
}

impl InnerCertificate {
    pub fn is_schur(&self) -> bool {
        matches!(
            self,
            InnerCertificate::ExactInner | InnerCertificate::SchurCertified { .. }
        )
    }
}

/// Exact Laurent coefficients `c_k`, `k = 0..d`, of
/// `P = |den|^2 − |num|^2` on the circle (with `c_{−k} = c_k*`).
pub fn laurent_defect(s: &SchurCandidate) -> Vec<GaussianRational> {
    let num = s.element.num();
    let den = s.element.den();
    let d = num.coeffs().len().max(den.coeffs().len());
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let mut c = GaussianRational::zero();
        for j in 0..d {
            c += &(&den.coeff(j + k) * &den.coeff(j).conj());
            c -= &(&num.coeff(j + k) * &num.coeff(j).conj());
        }
        out.push(c);
    }
    out
}

/// `t^d P(t)` as an ordinary polynomial, `d` being the top nonzero Laurent
/// index; `P` is recovered on the circle as `t^{-d} F(t)`.
fn laurent_as_poly(coeffs: &[GaussianRational]) -> (Poly, usize) {
    let d = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .unwrap_or(0);
    let mut f = vec![GaussianRational::zero(); 2 * d + 1];
    f[d] = coeffs[0].clone();
    for k in 1..=d {
        f[d + k] = coeffs[k].clone();
        f[d - k] = coeffs[k].conj();
    }
    (Poly::new(f), d)
}

fn eval_defect(coeffs: &[Complex64], theta: f64) -> f64 {
    let mut acc = coeffs[0].re;
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        let t = Complex64::from_polar(1.0, k as f64 * theta);
        acc += 2.0 * (c * t).re;
    }
    acc
}

const SCHUR_SAMPLES_START: usize = 4096;
const SCHUR_SAMPLES_MAX: usize = 1 << 20;

/// Boundary certification of a Schur candidate.
///
/// Exact-inner is decided coefficientwise. Otherwise `P >= 0` is certified
/// in two steps: the odd-multiplicity part of `t^d P(t)` (by exact
/// squarefree decomposition over `Q(i)`) is shown zero-free on the circle
/// by Lipschitz-bounded sampling — so `P` cannot change sign — and one
/// sample is shown strictly positive. A strictly negative sample refutes
/// with a boundary witness. Boundary zeros of even multiplicity (moduli
/// peaking at 1) are therefore certifiable.
pub fn schur_check(s: &SchurCandidate) -> Result<InnerCertificate> {
    let laurent = laurent_defect(s);
    if laurent.iter().all(|c| c.is_zero()) {
        return Ok(InnerCertificate::ExactInner);
    }
    let floats: Vec<Complex64> = laurent
        .iter()
        .map(|c| c.to_float())
        .collect::<Result<_>>()?;
    let scale: f64 = floats.iter().map(|c| c.norm()).sum();
    let slack = 1e-12 * (1.0 + scale);
    let lipschitz: f64 = 2.0
        * floats
            .iter()
            .enumerate()
            .map(|(k, c)| k as f64 * c.norm())
            .sum::<f64>();

    // Odd-multiplicity part of t^d P(t); zero-free on the circle iff P
    // never changes sign there.
    let (f, _) = laurent_as_poly(&laurent);
    let odd_part: Poly = f
        .squarefree_decomposition()
        .into_iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0) // index i holds F_{i+1}
        .map(|(_, fi)| fi)
        .fold(Poly::one(), |acc, fi| acc.mul(&fi));

    let mut m = SCHUR_SAMPLES_START;
    loop {
        let mut min_val = f64::INFINITY;
        let mut max_val = f64::NEG_INFINITY;
        let mut argmin = 0.0;
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let v = eval_defect(&floats, theta);
            if v < min_val {
                min_val = v;
                argmin = theta;
            }
            max_val = max_val.max(v);
        }
        if min_val < -slack {
            let witness = Complex64::from_polar(1.0, argmin);
            let s0 = s.element.as_rational_function().eval_f64(witness)?;
            return Ok(InnerCertificate::NotSchur {
                witness,
                modulus: s0.norm(),
            });
        }
        let margin = lipschitz * std::f64::consts::PI / m as f64;
        if min_val >= margin + slack {
            return Ok(InnerCertificate::SchurCertified {
                samples: m,
                lipschitz,
            });
        }
        // P touches zero (or nearly so): fall back to the sign-change
        // criterion on the odd part.
        if max_val > slack && odd_part.degree() == Some(0) {
            return Ok(InnerCertificate::SchurCertified {
                samples: m,
                lipschitz,
            });
        }
        if max_val > slack {
            let odd_min = circle_min_lower_bound(&odd_part, 1.0)?;
            if odd_min > 0.0 {
                return Ok(InnerCertificate::SchurCertified {
                    samples: m,
                    lipschitz,
                });
            }
        }
        if m >= SCHUR_SAMPLES_MAX {
            return Ok(InnerCertificate::Indeterminate { samples: m });
        }
        m *= 2;
    }
}

/// The convolution multiplier `s ⊙ f`; exact (rational output) whenever `f`
/// is polynomial or rational, certified-truncated otherwise.
pub fn multiplier_apply(s: &SchurCandidate, f: &HardyElement, n: usize) -> Result<HardyElement> {
    let se = &s.element;
    match f {
        HardyElement::Polynomial(p) => {
            let num = se.num().mul(&p.to_disk_poly());
            Ok(HardyElement::Rational(RationalElement::with_certified_radius(
                num,
                se.den().clone(),
                se.pole_radius(),
            )?))
        }
        HardyElement::Rational(g) => {
            let num = se.num().mul(g.num());
            let den = se.den().mul(g.den());
            let radius = se.pole_radius().min(g.pole_radius());
            Ok(HardyElement::Rational(RationalElement::with_certified_radius(
                num, den, radius,
            )?))
        }
        HardyElement::Truncated(_) => {
            let hs = HardyElement::Rational(se.clone());
            let (cs, rs) = hs.decay()?;
            let (cf, rf) = f.decay()?;
            let a = hs.float_prefix(n)?;
            let b = f.float_prefix(n)?;
            let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    if i + j <= n {
                        out[i + j] += ai * bj;
                    }
                }
            }
            // |(s ⊙ f)^(k)| <= C_s C_f (k+1) rmax^k <= C' r''^k
            let rmax = rs.max(rf);
            let r2 = (1.0 + rmax) / 2.0;
            let q = if r2 > 0.0 { rmax / r2 } else { 0.0 };
            let mut peak = 1.0f64;
            let mut qk = 1.0;
            for k in 0..2000usize {
                peak = peak.max((k as f64 + 1.0) * qk);
                qk *= q;
            }
            Ok(HardyElement::Truncated(TruncatedSeries::new(
                out,
                cs * cf * peak,
                r2,
            )?))
        }
    }
}

/// Gram matrix of the Schur kernel
/// `K^s_w(z) = Σ z^(n) w^(n)* − (Z^n s)(z)(Z^n s)(w)*`,
/// truncated at total coefficient degree `n`. The truncation compresses the
/// multiplication operator, so the matrix stays positive semidefinite for
/// genuine Schur candidates.
pub fn schur_kernel_gram(
    s: &SchurCandidate,
    points: &[LatticePoint],
    n: usize,
) -> Result<GramMatrix> {
    for p in points {
        if !p.in_half_plane() {
            return Err(Error::OutsideHalfPlane(*p));
        }
    }
    let coeffs = s.element.coefficients(n);
    let rho = DEFAULT_BASIS_RADIUS;
    // decay bound valid for every coefficient index, including the stored ones
    let (c_s, r_s) = {
        let (c, r) = s.element.decay_certificate()?;
        if r > 0.0 {
            (c, r)
        } else {
            let mut c = 0.0f64;
            let mut pow = 1.0;
            for a in &coeffs {
                c = c.max(a.abs_f64()? * pow);
                pow *= 2.0;
            }
            (c, 0.5)
        }
    };
    let q = r_s / rho;
    if q >= 1.0 {
        return Err(Error::DivergentTail(q));
    }

    // Exact per-point data: basis values and the shifted streams
    // v_k(p) = Σ_{m=k}^n âs(m−k) z^(m)(p).
    let mut basis_vals = Vec::with_capacity(points.len());
    let mut shifted = Vec::with_capacity(points.len());
    for &p in points {
        let bv = basis_values_at(p, n);
        let mut vs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = GaussianRational::zero();
            for m in k..=n {
                acc += &(&coeffs[m - k] * &bv[m]);
            }
            vs.push(acc);
        }
        basis_vals.push(bv);
        shifted.push(vs);
    }

    // Conservative truncation bounds per point.
    let mut m_bound = Vec::with_capacity(points.len());
    for &p in points {
        m_bound.push(growth_bound(p, rho)?);
    }
    let b_bound: Vec<f64> = m_bound.iter().map(|m| c_s * m / (1.0 - q)).collect();
    let geo: f64 = (0..=n).map(|k| (r_s * rho).powi(-(k as i32))).sum();
    let cross_scale = q.powi(n as i32 + 1) / (1.0 - q) * c_s * geo;
    let rho_tail = rho.powi(-2 * (n as i32 + 1)) / (1.0 - rho.powi(-2));

    let mut entries = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        let mut row = Vec::with_capacity(points.len());
        for j in 0..points.len() {
            let mut acc = GaussianRational::zero();
            for m in 0..=n {
                acc += &(&basis_vals[i][m] * &basis_vals[j][m].conj());
                acc -= &(&shifted[i][m] * &shifted[j][m].conj());
            }
            let mut e = EvalBound::from_gaussian(&acc)?;
            // kernel tail + mixed truncation terms + shifted-stream tail
            let kt = m_bound[i] * m_bound[j] * rho_tail;
            let cross = 2.0 * cross_scale * (m_bound[i] * b_bound[j] + m_bound[j] * b_bound[i]);
            let vt = b_bound[i] * b_bound[j] * rho_tail;
            e.abs_error += kt + cross + vt;
            row.push(e);
        }
        entries.push(row);
    }
    GramMatrix::from_entries(entries)
}

/// The Blaschke factor `B± = α∓ + α± z ⊙ (1 + α± z)^{−⊙} α∓`, with exact
/// T-image `α∓ (1 + 2 α± t)/(1 + α± t)`.
pub fn blaschke_pm(sign: AlphaSign) -> SchurCandidate {
    let ap = alpha(sign);
    let am = alpha(sign.flipped());
    // α∓ (1 + 2 α± t) = α∓ + t, since 2 α+ α− = 1
    let num = Poly::new(vec![am, GaussianRational::one()]);
    let den = Poly::new(vec![GaussianRational::one(), ap]);
    SchurCandidate::from_t_image(num, den).expect("B± denominator roots at modulus sqrt 2")
}

/// The homogeneous interpolation problem at `λ`: prescribe vanishing on the
/// rectangle `R_λ = {0 <= Re z <= Re λ, |Im z| <= |Im λ|, Im z · Im λ >= 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationProblem {
    lambda: LatticePoint,
    sign: AlphaSign,
    rectangle: Vec<LatticePoint>,
}

impl InterpolationProblem {
    pub fn new(lambda: LatticePoint) -> Result<Self> {
        if !lambda.in_half_plane() {
            return Err(Error::OutsideHalfPlane(lambda));
        }
        let sign = if lambda.y >= 0 {
            AlphaSign::Plus
        } else {
            AlphaSign::Minus
        };
        let (y_lo, y_hi) = if lambda.y >= 0 {
            (0, lambda.y)
        } else {
            (lambda.y, 0)
        };
        let mut rectangle = Vec::new();
        for y in y_lo..=y_hi {
            for x in 0..=lambda.x {
                rectangle.push(LatticePoint::new(x, y));
            }
        }
        Ok(InterpolationProblem {
            lambda,
            sign,
            rectangle,
        })
    }

    pub fn lambda(&self) -> LatticePoint {
        self.lambda
    }

    pub fn sign(&self) -> AlphaSign {
        self.sign
    }

    pub fn rectangle(&self) -> &[LatticePoint] {
        &self.rectangle
    }

    /// Degree of the generators: `Re λ + |Im λ| + 1`.
    pub fn generator_degree(&self) -> usize {
        (self.lambda.x + self.lambda.y.abs() + 1) as usize
    }

    /// T-image of the polynomial generator: `t^{Re λ + 1} (t + α∓)^{|Im λ|}`.
    fn divisor(&self) -> Poly {
        let am = alpha(self.sign.flipped());
        let linear = Poly::new(vec![am, GaussianRational::one()]);
        Poly::monomial(GaussianRational::one(), (self.lambda.x + 1) as usize)
            .mul(&linear.pow(self.lambda.y.unsigned_abs() as u32))
    }
}

/// The Blaschke generator `B_λ = z^{(Re λ + 1)} ⊙ B±^{⊙|Im λ|}`, normalized
/// to the product formula (unimodular constant fixed to 1).
pub fn blaschke_lambda(prob: &InterpolationProblem) -> SchurCandidate {
    let b = blaschke_pm(prob.sign());
    let m = prob.lambda().y.unsigned_abs() as u32;
    let num = Poly::monomial(GaussianRational::one(), (prob.lambda().x + 1) as usize)
        .mul(&b.element().num().pow(m));
    let den = b.element().den().pow(m);
    SchurCandidate::from_t_image(num, den)
        .expect("B_λ denominator roots at modulus sqrt 2")
}

/// The minimal-degree polynomial generator of the solution ideal,
/// `z^{(Re λ + 1)} ⊙ (z + α∓)^{⊙|Im λ|}`; vanishes exactly on `R_λ`.
pub fn polynomial_generator(prob: &InterpolationProblem) -> CoefficientPoly {
    CoefficientPoly::from_disk_poly(&prob.divisor())
}

/// Membership in the principal ideal of polynomial solutions: true iff the
/// T-image of `p` is exactly divisible by `t^{Re λ + 1} (t + α∓)^{|Im λ|}`;
/// the quotient is returned on success.
pub fn ideal_membership(
    p: &CoefficientPoly,
    prob: &InterpolationProblem,
) -> Result<Option<CoefficientPoly>> {
    let (q, r) = p.to_disk_poly().div_rem(&prob.divisor())?;
    if r.is_zero() {
        Ok(Some(CoefficientPoly::from_disk_poly(&q)))
    } else {
        Ok(None)
    }
}

/// Basis of the polynomial solutions of degree at most `n`:
/// `{ generator ⊙ z^(k) : 0 <= k <= n − d }`, empty when `n < d`.
pub fn solve_basic_interpolation(
    prob: &InterpolationProblem,
    n: usize,
) -> Vec<CoefficientPoly> {
    let d = prob.generator_degree();
    if n < d {
        return Vec::new();
    }
    let divisor = prob.divisor();
    (0..=(n - d))
        .map(|k| {
            CoefficientPoly::from_disk_poly(
                &divisor.mul(&Poly::monomial(GaussianRational::one(), k)),
            )
        })
        .collect()
}
