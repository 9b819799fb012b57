//! The Hardy space of the right half-lattice: inner products in the `z^(n)`
//! coefficient basis, the reproducing kernel `K_w(z) = Σ z^(n)(z) w^(n)(w)*`,
//! the unitary coefficient map `T` onto the disk Hardy space, and certified
//! series evaluation at lattice points.
//!
//! Elements are carried by their T-images. Rational elements (poles outside
//! the closed unit disk) keep exact `Q(i)` coefficient streams through long
//! division; every floating-point output is an [`EvalBound`] whose true
//! value lies within `abs_error` of `value`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::{basis_values_at, CoefficientPoly};
use crate::error::{Error, Result};
use crate::exact::{ComplexFloat, GaussianRational};
use crate::lattice::LatticePoint;
use crate::poly::{Poly, RationalFunction};

/// Default radius for Cauchy estimates of `|z^(n)(z)|`; must stay below
/// `sqrt(2)`.
pub const DEFAULT_BASIS_RADIUS: f64 = 1.2;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// A float value paired with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalBound {
    pub value: ComplexFloat,
    pub abs_error: f64,
}

impl EvalBound {
    pub fn exact(value: ComplexFloat) -> Self {
        EvalBound {
            value,
            abs_error: 0.0,
        }
    }

    /// Certified conversion of an exact scalar: zero error when the
    /// components are exactly representable.
    pub fn from_gaussian(q: &GaussianRational) -> Result<Self> {
        let value = q.to_float()?;
        let abs_error = if q.to_float_is_exact() {
            0.0
        } else {
            value.norm() * 1e-15 + 1e-300
        };
        Ok(EvalBound { value, abs_error })
    }
}

/// Hardy-space element represented by its rational T-image `num(t)/den(t)`
/// with all denominator roots certified outside the closed unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalElement {
    num: Poly,
    den: Poly,
    pole_radius: f64,
}

impl RationalElement {
    /// Builds the element, certifying a root-free disk `|t| <= pole_radius`
    /// with `pole_radius > 1` for the denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() || den.coeff(0).is_zero() {
            return Err(Error::DenominatorVanishesAtOrigin);
        }
        let pole_radius = certified_pole_radius(&den)?;
        Ok(RationalElement {
            num,
            den,
            pole_radius,
        })
    }

    /// Constructor for products of already-certified elements: a disk of
    /// radius `pole_radius` known root-free for `den` by construction.
    pub(crate) fn with_certified_radius(
        num: Poly,
        den: Poly,
        pole_radius: f64,
    ) -> Result<Self> {
        if den.is_zero() || den.coeff(0).is_zero() {
            return Err(Error::DenominatorVanishesAtOrigin);
        }
        if pole_radius <= 1.0 {
            return Err(Error::PoleRadiusNotCertified);
        }
        Ok(RationalElement {
            num,
            den,
            pole_radius,
        })
    }

    pub fn from_polynomial(p: &CoefficientPoly) -> Self {
        RationalElement {
            num: p.to_disk_poly(),
            den: Poly::one(),
            pole_radius: f64::INFINITY,
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn pole_radius(&self) -> f64 {
        self.pole_radius
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.num.clone(), self.den.clone()).unwrap()
    }

    /// Exact coefficients `âf(0..n)` by long division.
    pub fn coefficients(&self, n: usize) -> Vec<GaussianRational> {
        self.as_rational_function()
            .series_prefix(n)
            .expect("den(0) != 0 by construction")
    }

    /// Cauchy-estimate certificate `(C, r)` with `|âf(n)| <= C r^n`, `r < 1`.
    /// For a polynomial T-image the tail is zero and `(0, 0)` is returned
    /// together with the exact coefficients.
    pub fn decay_certificate(&self) -> Result<(f64, f64)> {
        if self.is_polynomial() {
            return Ok((0.0, 0.0));
        }
        // Estimate on a circle strictly between 1 and the certified
        // pole-free radius; retreat toward 1 if the circle lower bound is
        // numerically too weak.
        let mut rc = if self.pole_radius.is_finite() {
            (1.0 + self.pole_radius) / 2.0
        } else {
            2.0
        };
        for _ in 0..40 {
            if rc <= 1.0 + 1e-9 {
                break;
            }
            let den_min = circle_min_lower_bound(&self.den, rc)?;
            if den_min > 0.0 {
                let c = self.num.abs_sum_at(rc)? / den_min;
                return Ok((c, 1.0 / rc));
            }
            rc = (1.0 + rc) / 2.0;
        }
        Err(Error::PoleRadiusNotCertified)
    }
}

/// Certified lower bound for `min |p(t)|` on the circle `|t| = r`.
/// Nonpositive results mean "not certified", not "has a zero".
pub fn circle_min_lower_bound(p: &Poly, r: f64) -> Result<f64> {
    if p.is_zero() {
        return Ok(0.0);
    }
    // Coefficient bound: |p(t)| >= |c0| - sum_{k>=1} |c_k| r^k on |t| <= r.
    let c0 = p.coeff(0).abs_f64()?;
    let rest = p.abs_sum_at(r)? - c0;
    let coeff_bound = c0 - rest;
    let mut best = coeff_bound;
    let lipschitz = p.derivative_abs_sum_at(r)?;
    let slack = 1e-12 * p.abs_sum_at(r)?.max(1.0);
    for m in [4096usize, 16384, 65536] {
        let mut min_sample = f64::INFINITY;
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let t = Complex64::from_polar(r, theta);
            min_sample = min_sample.min(p.eval_f64(t)?.norm());
        }
        let arc = std::f64::consts::PI * r / m as f64;
        best = best.max(min_sample - lipschitz * arc - slack);
        if best > 0.0 {
            break;
        }
    }
    Ok(best)
}

/// True when `p` is certified to have no roots in the closed disk of
/// radius `r`: either by the coefficient bound, or by a positive circle
/// minimum combined with a zero winding number.
fn disk_root_free(p: &Poly, r: f64) -> Result<bool> {
    let deg = match p.degree() {
        None => return Ok(false),
        Some(0) => return Ok(true),
        Some(d) => d,
    };
    let c0 = p.coeff(0).abs_f64()?;
    if c0 - (p.abs_sum_at(r)? - c0) > 0.0 {
        return Ok(true);
    }
    let lipschitz = p.derivative_abs_sum_at(r)?;
    let slack = 1e-12 * p.abs_sum_at(r)?.max(1.0);
    let _ = deg;
    for m in [4096usize, 16384, 65536, 262144] {
        let step = 2.0 * std::f64::consts::PI * r / m as f64;
        let mut min_sample = f64::INFINITY;
        let mut samples = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let theta = 2.0 * std::f64::consts::PI * (j % m) as f64 / m as f64;
            let v = p.eval_f64(Complex64::from_polar(r, theta))?;
            min_sample = min_sample.min(v.norm());
            samples.push(v);
        }
        let lower = min_sample - lipschitz * step / 2.0 - slack;
        // Winding is reliable only when consecutive samples move by less
        // than the certified modulus.
        if lower <= 0.0 || lipschitz * step >= lower {
            continue;
        }
        let mut total = 0.0;
        for pair in samples.windows(2) {
            total += (pair[1] / pair[0]).arg();
        }
        let winding = (total / (2.0 * std::f64::consts::PI)).round() as i64;
        return Ok(winding == 0);
    }
    Ok(false)
}

/// Largest certified root-free disk radius `> 1` for `den`; infinite for
/// constants.
fn certified_pole_radius(den: &Poly) -> Result<f64> {
    let deg = den.degree().ok_or(Error::DenominatorVanishesAtOrigin)?;
    if deg == 0 {
        return Ok(f64::INFINITY);
    }
    let mut lo = 1.0 + 1e-6;
    if !disk_root_free(den, lo)? {
        return Err(Error::PoleRadiusNotCertified);
    }
    // Cauchy bound: every root has modulus <= 1 + max |c_k| / |c_deg|.
    let lead = den.coeff(deg).abs_f64()?;
    let mut hi: f64 = 0.0;
    for c in den.coeffs() {
        hi = hi.max(c.abs_f64()? / lead);
    }
    let mut hi = 1.0 + hi + 1.0;
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if disk_root_free(den, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-9 * lo {
            break;
        }
    }
    Ok(lo)
}

/// Series with explicitly stored float coefficients and a geometric bound
/// `|âf(n)| <= C r^n` covering the unstored tail.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<ComplexFloat>,
    tail_c: f64,
    tail_r: f64,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<ComplexFloat>, tail_c: f64, tail_r: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&tail_r) || tail_c < 0.0 {
            return Err(Error::InvalidInput(
                "truncated series needs tail_c >= 0 and 0 <= tail_r < 1".into(),
            ));
        }
        // Enforce the bound on the stored prefix as well.
        let mut c = tail_c;
        let mut rn = 1.0;
        for v in &coeffs {
            if rn > 0.0 {
                c = c.max(v.norm() / rn);
            } else if v.norm() > 0.0 {
                return Err(Error::InvalidInput(
                    "nonzero coefficient with zero decay ratio".into(),
                ));
            }
            rn *= tail_r;
        }
        Ok(TruncatedSeries {
            coeffs,
            tail_c: c,
            tail_r,
        })
    }

    pub fn coeffs(&self) -> &[ComplexFloat] {
        &self.coeffs
    }
}

/// An element of the Hardy space, in one of three concrete carriers.
#[derive(Debug, Clone, PartialEq)]
pub enum HardyElement {
    Polynomial(CoefficientPoly),
    Rational(RationalElement),
    Truncated(TruncatedSeries),
}

impl HardyElement {
    /// Number of coefficients that are explicitly computable; unlimited for
    /// exact carriers.
    fn known_len(&self) -> usize {
        match self {
            HardyElement::Polynomial(_) | HardyElement::Rational(_) => usize::MAX,
            HardyElement::Truncated(s) => s.coeffs.len(),
        }
    }

    /// Exact coefficient prefix, when the carrier is exact.
    pub fn exact_prefix(&self, n: usize) -> Option<Vec<GaussianRational>> {
        match self {
            HardyElement::Polynomial(p) => {
                Some((0..=n).map(|k| p.coeff(k)).collect())
            }
            HardyElement::Rational(r) => Some(r.coefficients(n)),
            HardyElement::Truncated(_) => None,
        }
    }

    pub fn float_prefix(&self, n: usize) -> Result<Vec<ComplexFloat>> {
        match self {
            HardyElement::Truncated(s) => Ok((0..=n)
                .map(|k| s.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0)))
                .collect()),
            _ => self
                .exact_prefix(n)
                .unwrap()
                .iter()
                .map(|q| q.to_float())
                .collect(),
        }
    }

    /// Geometric coefficient bound `(C, r)`, valid for every index.
    pub fn decay(&self) -> Result<(f64, f64)> {
        match self {
            HardyElement::Polynomial(p) => {
                let mut c = 0.0f64;
                let mut pow = 1.0;
                for a in p.coeffs() {
                    c = c.max(a.abs_f64()? * pow);
                    pow *= 2.0;
                }
                Ok((c, 0.5))
            }
            HardyElement::Rational(r) => r.decay_certificate(),
            HardyElement::Truncated(s) => Ok((s.tail_c, s.tail_r)),
        }
    }
}

/// The unitary map `T`: reinterprets `Σ a_n z^(n)` as the disk polynomial
/// `Σ a_n t^n`.
pub fn t_transform(p: &CoefficientPoly) -> Poly {
    p.to_disk_poly()
}

/// Inverse of [`t_transform`].
pub fn t_inverse(p: &Poly) -> CoefficientPoly {
    CoefficientPoly::from_disk_poly(p)
}

/// Exact inner product `Σ âf(n) âg(n)*` of two coefficient polynomials
/// (conjugate-linear in the second slot).
pub fn inner_product_exact(f: &CoefficientPoly, g: &CoefficientPoly) -> GaussianRational {
    let n = f.coeffs().len().min(g.coeffs().len());
    let mut acc = GaussianRational::zero();
    for k in 0..n {
        acc += &(&f.coeff(k) * &g.coeff(k).conj());
    }
    acc
}

fn geometric_tail(c: f64, q: f64, first_index: usize) -> Result<f64> {
    if c == 0.0 {
        return Ok(0.0);
    }
    if q >= 1.0 {
        return Err(Error::NonConvergentBound(q));
    }
    Ok(c * q.powi(first_index as i32) / (1.0 - q))
}

/// Inner product with a certified tail bound, truncated at `n` terms
/// (fewer if a truncated carrier stores fewer).
pub fn inner_product_n(f: &HardyElement, g: &HardyElement, n: usize) -> Result<EvalBound> {
    if let (HardyElement::Polynomial(p), HardyElement::Polynomial(q)) = (f, g) {
        return EvalBound::from_gaussian(&inner_product_exact(p, q));
    }
    let n = n.min(f.known_len().saturating_sub(1)).min(g.known_len().saturating_sub(1));
    let (cf, rf) = f.decay()?;
    let (cg, rg) = g.decay()?;
    let tail = geometric_tail(cf * cg, rf * rg, n + 1)?;
    match (f.exact_prefix(n), g.exact_prefix(n)) {
        (Some(af), Some(ag)) => {
            let mut acc = GaussianRational::zero();
            for (a, b) in af.iter().zip(&ag) {
                acc += &(a * &b.conj());
            }
            let mut out = EvalBound::from_gaussian(&acc)?;
            out.abs_error += tail;
            Ok(out)
        }
        _ => {
            let af = f.float_prefix(n)?;
            let ag = g.float_prefix(n)?;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for (a, b) in af.iter().zip(&ag) {
                acc += a * b.conj();
                mag += a.norm() * b.norm();
            }
            Ok(EvalBound {
                value: acc,
                abs_error: tail + 1e-14 * mag * (n as f64 + 1.0),
            })
        }
    }
}

/// Inner product with automatic truncation: the term count grows until the
/// certified tail drops below `1e-13` (or a hard cap is hit; the bound
/// stays honest either way).
pub fn inner_product(f: &HardyElement, g: &HardyElement) -> Result<EvalBound> {
    let (cf, rf) = f.decay()?;
    let (cg, rg) = g.decay()?;
    let q = rf * rg;
    let c = cf * cg;
    let mut n = 32usize;
    if c > 0.0 {
        if q >= 1.0 {
            return Err(Error::NonConvergentBound(q));
        }
        while geometric_tail(c, q, n + 1)? > 1e-13 && n < 8192 {
            n *= 2;
        }
    }
    inner_product_n(f, g, n)
}

/// `max_{|t| = rho} |G_z(t)|` for `z` in the right half-lattice: the Cauchy
/// bound `(1+rho)^x ((1+rho/sqrt 2)/(1-rho/sqrt 2))^|y|`, so that
/// `|z^(n)(z)| <= growth_bound(z, rho) * rho^(-n)`.
pub fn growth_bound(z: LatticePoint, rho: f64) -> Result<f64> {
    if !z.in_half_plane() {
        return Err(Error::OutsideHalfPlane(z));
    }
    if !(0.0 < rho && rho < SQRT2) {
        return Err(Error::InvalidInput(format!(
            "basis radius must lie in (0, sqrt 2), got {rho}"
        )));
    }
    let ratio = (1.0 + rho / SQRT2) / (1.0 - rho / SQRT2);
    Ok((1.0 + rho).powi(z.x as i32) * ratio.powi(z.y.unsigned_abs() as i32))
}

/// Certified tail bound `Σ_{n>N} |z^(n)(z)| |w^(n)(w)|`, optimized over a
/// grid of Cauchy radii.
fn kernel_tail(z: LatticePoint, w: LatticePoint, n: usize) -> Result<f64> {
    let mut best = f64::INFINITY;
    let mut rho = 0.25;
    while rho < SQRT2 - 0.01 {
        let q = 1.0 / (rho * rho);
        if q < 1.0 {
            let bound = geometric_tail(growth_bound(z, rho)? * growth_bound(w, rho)?, q, n + 1)?;
            best = best.min(bound);
        }
        rho += 0.05;
    }
    Ok(best)
}

/// Reproducing kernel value `K_w(z) = Σ z^(n)(z) w^(n)(w)*`, truncated at
/// `N` with a certified tail bound.
pub fn kernel_eval(w: LatticePoint, z: LatticePoint, n: usize) -> Result<EvalBound> {
    if !w.in_half_plane() {
        return Err(Error::OutsideHalfPlane(w));
    }
    if !z.in_half_plane() {
        return Err(Error::OutsideHalfPlane(z));
    }
    let zs = basis_values_at(z, n);
    let ws = basis_values_at(w, n);
    let mut acc = GaussianRational::zero();
    for (a, b) in zs.iter().zip(&ws) {
        acc += &(a * &b.conj());
    }
    let mut out = EvalBound::from_gaussian(&acc)?;
    out.abs_error += kernel_tail(z, w, n)?;
    Ok(out)
}

/// Hermitian matrix of certified kernel evaluations `G[i][j] = K_{p_j}(p_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<EvalBound>>,
}

impl GramMatrix {
    pub fn from_entries(entries: Vec<Vec<EvalBound>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("Gram matrix must be square".into()));
        }
        Ok(GramMatrix { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn trace_re(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[i][i].value.re).sum()
    }
}

/// Kernel Gram matrix over a point set, `G[i][j] = K_{p_j}(p_i)`.
pub fn kernel_gram(points: &[LatticePoint], n: usize) -> Result<GramMatrix> {
    let mut entries = Vec::with_capacity(points.len());
    for &zi in points {
        let mut row = Vec::with_capacity(points.len());
        for &wj in points {
            row.push(kernel_eval(wj, zi, n)?);
        }
        entries.push(row);
    }
    GramMatrix::from_entries(entries)
}

/// Certified evaluation `f(z) = Σ âf(n) z^(n)(z)` truncated at `n`, with
/// the Cauchy tail bound at basis radius `rho`.
pub fn evaluate_at_lattice_with_radius(
    f: &HardyElement,
    z: LatticePoint,
    n: usize,
    rho: f64,
) -> Result<EvalBound> {
    if !z.in_half_plane() {
        return Err(Error::OutsideHalfPlane(z));
    }
    if let HardyElement::Polynomial(p) = f {
        return EvalBound::from_gaussian(&p.eval_at(z));
    }
    let n = n.min(f.known_len().saturating_sub(1));
    let (c, r) = f.decay()?;
    let tail = if c == 0.0 {
        0.0
    } else {
        let q = r / rho;
        if q >= 1.0 {
            return Err(Error::DivergentTail(q));
        }
        growth_bound(z, rho)? * geometric_tail(c, q, n + 1)?
    };
    let basis = basis_values_at(z, n);
    match f.exact_prefix(n) {
        Some(coeffs) => {
            let mut acc = GaussianRational::zero();
            for (a, b) in coeffs.iter().zip(&basis) {
                acc += &(a * b);
            }
            let mut out = EvalBound::from_gaussian(&acc)?;
            out.abs_error += tail;
            Ok(out)
        }
        None => {
            let coeffs = f.float_prefix(n)?;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for (a, b) in coeffs.iter().zip(&basis) {
                let bf = b.to_float()?;
                acc += a * bf;
                mag += a.norm() * bf.norm();
            }
            Ok(EvalBound {
                value: acc,
                abs_error: tail + 1e-14 * mag * (n as f64 + 1.0),
            })
        }
    }
}

/// [`evaluate_at_lattice_with_radius`] at the default basis radius.
pub fn evaluate_at_lattice(f: &HardyElement, z: LatticePoint, n: usize) -> Result<EvalBound> {
    evaluate_at_lattice_with_radius(f, z, n, DEFAULT_BASIS_RADIUS)
}

/// Result of the positive-semidefiniteness check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
}

/// Checks `min eig >= -tol * max(1, trace)` using the deterministic
/// symmetric eigensolver on the `2n x 2n` real embedding of the
/// (symmetrized) Hermitian matrix.
pub fn psd_check(gram: &GramMatrix, tol: f64) -> Result<PsdReport> {
    let n = gram.dim();
    if n == 0 {
        return Ok(PsdReport {
            psd: true,
            min_eigenvalue: 0.0,
            tolerance: 0.0,
        });
    }
    let mut scale = 0.0f64;
    for row in &gram.entries {
        for e in row {
            scale = scale.max(e.value.norm());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let dev = (gram.entries[i][j].value - gram.entries[j][i].value.conj()).norm();
            let allowed = gram.entries[i][j].abs_error
                + gram.entries[j][i].abs_error
                + 1e-12 * (1.0 + scale);
            if dev > allowed {
                return Err(Error::NonHermitian(dev));
            }
        }
    }
    // Real embedding of H = (G + G^dagger)/2: [[X, -Y], [Y, X]].
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let h = (gram.entries[i][j].value + gram.entries[j][i].value.conj()) / 2.0;
            m[(i, j)] = h.re;
            m[(n + i, n + j)] = h.re;
            m[(i, n + j)] = -h.im;
            m[(n + i, j)] = h.im;
        }
    }
    let eigen = m.symmetric_eigenvalues();
    let min_eigenvalue = eigen.iter().cloned().fold(f64::INFINITY, f64::min);
    let tolerance = tol * gram.trace_re().max(1.0);
    Ok(PsdReport {
        psd: min_eigenvalue >= -tolerance,
        min_eigenvalue,
        tolerance,
    })
}
