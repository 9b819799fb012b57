//! The basis polynomials `z^(n) = Z^n 1`, their generating function
//! `G_z(t) = (1+t)^Re(z) ((1+a+t)/(1+a-t))^Im(z)`, coefficient extraction
//! via iterated `δx` at the origin, and the convolution ring with
//! `z^(m) ⊙ z^(n) = z^(m+n)`.
//!
//! Two independent constructions of `z^(n)` are provided: the symbolic
//! expansion of the generating function (a bivariate polynomial in
//! `x = Re z`, `y = Im z`) and the lattice recursion `Z^n 1`. They are
//! cross-checked in the test suites. A third route, exact long division of
//! `G_z`, evaluates the whole sequence `z^(0..N)(z)` at a fixed point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{alpha, AlphaSign, ComplexFloat, GaussianRational, Rational};
use crate::lattice::{LatticeFunction, LatticePoint, Window};
use crate::poly::{Poly, RationalFunction};

/// Polynomial in the two integer variables `x = Re z`, `y = Im z` with
/// coefficients in `Q(i)`; the symbolic carrier of `z^(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    /// (x-degree, y-degree) -> coefficient; zero coefficients absent.
    coeffs: BTreeMap<(u32, u32), GaussianRational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        BivariatePolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((0, 0), c);
        }
        BivariatePolynomial { coeffs }
    }

    fn insert_add(&mut self, key: (u32, u32), c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(key)
            .or_insert_with(GaussianRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = BivariatePolynomial::zero();
        for ((ax, ay), a) in &self.coeffs {
            for ((bx, by), b) in &rhs.coeffs {
                out.insert_add((ax + bx, ay + by), a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return BivariatePolynomial::zero();
        }
        BivariatePolynomial {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Polynomial in `x` alone, from univariate coefficients.
    pub fn from_x_poly(cs: &[GaussianRational]) -> Self {
        let mut out = BivariatePolynomial::zero();
        for (k, c) in cs.iter().enumerate() {
            out.insert_add((k as u32, 0), c.clone());
        }
        out
    }

    /// Polynomial in `y` alone, from univariate coefficients.
    pub fn from_y_poly(cs: &[GaussianRational]) -> Self {
        let mut out = BivariatePolynomial::zero();
        for (k, c) in cs.iter().enumerate() {
            out.insert_add((0, k as u32), c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.coeffs.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.coeffs.iter()
    }

    /// Exact evaluation at the lattice point `x + iy`.
    pub fn eval(&self, p: LatticePoint) -> GaussianRational {
        let x = GaussianRational::from_integers(p.x, 0);
        let y = GaussianRational::from_integers(p.y, 0);
        // Horner in x per y-degree would be fussier; windows are small and
        // coefficients sparse, so direct powers are fine.
        let mut x_pows = vec![GaussianRational::one()];
        let mut y_pows = vec![GaussianRational::one()];
        for ((dx, dy), _) in &self.coeffs {
            while x_pows.len() <= *dx as usize {
                let next = x_pows.last().unwrap() * &x;
                x_pows.push(next);
            }
            while y_pows.len() <= *dy as usize {
                let next = y_pows.last().unwrap() * &y;
                y_pows.push(next);
            }
        }
        let mut acc = GaussianRational::zero();
        for ((dx, dy), c) in &self.coeffs {
            acc += &(&(&x_pows[*dx as usize] * &y_pows[*dy as usize]) * c);
        }
        acc
    }

    pub fn to_lattice_function(&self, window: Window) -> LatticeFunction<GaussianRational> {
        LatticeFunction::from_fn(window, |p| self.eval(p))
    }
}

/// Coefficients of the binomial polynomial `C(v, k)` in the variable `v`:
/// `v (v-1) ... (v-k+1) / k!`.
fn binomial_poly(k: u32) -> Vec<GaussianRational> {
    // product of (v - j), then divide by k!
    let mut cs = vec![GaussianRational::one()];
    for j in 0..k {
        let shift = GaussianRational::from_integers(-(j as i64), 0);
        let mut next = vec![GaussianRational::zero(); cs.len() + 1];
        for (d, c) in cs.iter().enumerate() {
            next[d + 1] += c;
            next[d] += &(c * &shift);
        }
        cs = next;
    }
    let mut fact = BigInt::one();
    for j in 1..=k {
        fact *= BigInt::from(j);
    }
    let inv = GaussianRational::from_rational(Rational::new(BigInt::one(), fact));
    cs.iter().map(|c| c * &inv).collect()
}

/// Coefficients of `C(-v, k)` in the variable `v`.
fn neg_binomial_poly(k: u32) -> Vec<GaussianRational> {
    binomial_poly(k)
        .into_iter()
        .enumerate()
        .map(|(d, c)| {
            if d % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Symbolic `z^(n)`: the coefficient of `t^n` in
/// `(1+t)^x (1+a+t)^y (1+a-t)^(-y)`, expanded with binomial-coefficient
/// polynomials `C(x,a) C(y,b) C(-y,c)` in exact arithmetic.
pub fn basis_poly(n: u32) -> BivariatePolynomial {
    let ap = alpha(AlphaSign::Plus);
    let am = alpha(AlphaSign::Minus);
    let cx: Vec<_> = (0..=n).map(binomial_poly).collect();
    let cy: Vec<_> = (0..=n).map(binomial_poly).collect();
    let cny: Vec<_> = (0..=n).map(neg_binomial_poly).collect();
    let mut out = BivariatePolynomial::zero();
    for b in 0..=n {
        for c in 0..=(n - b) {
            let a = n - b - c;
            let scalar = ap.pow(b) * am.pow(c);
            if scalar.is_zero() {
                continue;
            }
            // C(y,b) * C(-y,c), univariate in y
            let mut y_poly = vec![GaussianRational::zero(); cy[b as usize].len() + cny[c as usize].len() - 1];
            for (i, u) in cy[b as usize].iter().enumerate() {
                for (j, v) in cny[c as usize].iter().enumerate() {
                    y_poly[i + j] += &(u * v);
                }
            }
            let term = BivariatePolynomial::from_x_poly(&cx[a as usize])
                .mul(&BivariatePolynomial::from_y_poly(&y_poly))
                .scale(&scalar);
            out = out.add(&term);
        }
    }
    out
}

/// Table of the symbolic `z^(0) .. z^(max_n)`.
#[derive(Debug, Clone)]
pub struct BasisTable {
    pub max_n: u32,
    pub polys: Vec<BivariatePolynomial>,
}

impl BasisTable {
    pub fn new(max_n: u32) -> Self {
        BasisTable {
            max_n,
            polys: (0..=max_n).map(basis_poly).collect(),
        }
    }
}

/// `z^(n)` as a lattice function by the recursion `Z^n 1`; the independent
/// oracle for [`basis_poly`]. The window must contain the origin.
pub fn basis_poly_recursive(
    n: u32,
    window: Window,
) -> Result<LatticeFunction<GaussianRational>> {
    if !window.contains_origin() {
        return Err(Error::OriginMissing);
    }
    let mut f = LatticeFunction::constant(window, GaussianRational::one());
    for _ in 0..n {
        f = f.z_operator()?;
    }
    Ok(f)
}

/// Exact generating function `G_z(t)` as a rational function of `t`;
/// negative exponents fold into the denominator.
pub fn generating_function(z: LatticePoint) -> RationalFunction {
    let one_plus_t = Poly::new(vec![GaussianRational::one(), GaussianRational::one()]);
    let plus_factor = Poly::new(vec![GaussianRational::one(), alpha(AlphaSign::Plus)]);
    let minus_factor = Poly::new(vec![GaussianRational::one(), alpha(AlphaSign::Minus)]);
    let mut num = Poly::one();
    let mut den = Poly::one();
    if z.x >= 0 {
        num = num.mul(&one_plus_t.pow(z.x as u32));
    } else {
        den = den.mul(&one_plus_t.pow((-z.x) as u32));
    }
    if z.y >= 0 {
        num = num.mul(&plus_factor.pow(z.y as u32));
        den = den.mul(&minus_factor.pow(z.y as u32));
    } else {
        num = num.mul(&minus_factor.pow((-z.y) as u32));
        den = den.mul(&plus_factor.pow((-z.y) as u32));
    }
    RationalFunction::new(num, den).unwrap()
}

/// Numerical evaluation of `G_z(t)`; errors at (or numerically on top of) a
/// pole of the exact rational form.
pub fn generating_function_eval(z: LatticePoint, t: ComplexFloat) -> Result<ComplexFloat> {
    let g = generating_function(z);
    let d = g.den.eval_f64(t)?;
    if d.norm() <= 1e-14 {
        return Err(Error::EvaluationAtPole(d.norm()));
    }
    Ok(g.num.eval_f64(t)? / d)
}

/// The exact values `z^(0)(z), ..., z^(n)(z)` at a fixed lattice point, via
/// long division of `G_z`.
pub fn basis_values_at(z: LatticePoint, n: usize) -> Vec<GaussianRational> {
    generating_function(z)
        .series_prefix(n)
        .expect("G_z has denominator 1 at t = 0")
}

/// Element of the convolution ring: finite coefficient vector in the
/// `z^(n)` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientPoly {
    coeffs: Vec<GaussianRational>,
}

impl CoefficientPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CoefficientPoly { coeffs }
    }

    pub fn zero() -> Self {
        CoefficientPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        CoefficientPoly::new(vec![GaussianRational::one()])
    }

    /// `z^(n)` as a ring element.
    pub fn basis_element(n: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[n] = GaussianRational::one();
        CoefficientPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> GaussianRational {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CoefficientPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        CoefficientPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The convolution product `⊙`: Cauchy product of coefficient vectors,
    /// so that `z^(m) ⊙ z^(n) = z^(m+n)`.
    pub fn convolve(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return CoefficientPoly::zero();
        }
        let mut out =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        CoefficientPoly::new(out)
    }

    /// Exact evaluation `Σ a_n z^(n)(z)` at a lattice point.
    pub fn eval_at(&self, z: LatticePoint) -> GaussianRational {
        if self.is_zero() {
            return GaussianRational::zero();
        }
        let basis = basis_values_at(z, self.coeffs.len() - 1);
        let mut acc = GaussianRational::zero();
        for (a, b) in self.coeffs.iter().zip(&basis) {
            acc += &(a * b);
        }
        acc
    }

    pub fn to_lattice_function(&self, window: Window) -> LatticeFunction<GaussianRational> {
        LatticeFunction::from_fn(window, |p| self.eval_at(p))
    }

    /// The T-image: the same coefficients read as an ordinary polynomial
    /// in `t` (`T z^(n) = t^n`).
    pub fn to_disk_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn from_disk_poly(p: &Poly) -> Self {
        CoefficientPoly::new(p.coeffs().to_vec())
    }
}

/// Coefficients `âf(0..N)` of a discrete analytic function by the inversion
/// formula `âf(n) = (δx^n f)(0)`.
pub fn coefficients_from_lattice(
    f: &LatticeFunction<GaussianRational>,
    n: usize,
) -> Result<CoefficientPoly> {
    let w = f.window();
    if !w.contains_origin() {
        return Err(Error::OriginMissing);
    }
    if w.x_max < n as i64 {
        return Err(Error::WindowTooSmall(
            "window not wide enough for the requested number of differences at 0",
        ));
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut cur = f.clone();
    coeffs.push(cur.e0()?);
    for _ in 0..n {
        cur = cur.delta_x()?;
        coeffs.push(cur.e0()?);
    }
    Ok(CoefficientPoly::new(coeffs))
}

/// Verifies `conj(z^(n)(conj z)) = z^(n)(z)` exactly on the window, which
/// must be symmetric under conjugation.
pub fn conjugate_basis_identity_check(n: u32, window: Window) -> bool {
    if window.y_min != -window.y_max {
        return false;
    }
    let p = basis_poly(n);
    window
        .points()
        .all(|z| p.eval(z.conj()).conj() == p.eval(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn half_of(q: GaussianRational) -> GaussianRational {
        q.checked_div(&GaussianRational::from_integers(2, 0)).unwrap()
    }

    #[test]
    fn basis_poly_small_n() {
        // n = 0 -> 1
        let p0 = basis_poly(0);
        assert_eq!(p0, BivariatePolynomial::constant(GaussianRational::one()));
        // n = 1 -> z = x + iy
        let p1 = basis_poly(1);
        for z in Window::new(-3, 3, -3, 3).unwrap().points() {
            assert_eq!(p1.eval(z), z.to_gaussian());
        }
        // n = 2 -> (z^2 - z)/2
        let p2 = basis_poly(2);
        for z in Window::new(-3, 3, -3, 3).unwrap().points() {
            let g = z.to_gaussian();
            assert_eq!(p2.eval(z), half_of(&(&g * &g) - &g));
        }
        // z^(2)(i) = (-1-i)/2
        assert_eq!(
            p2.eval(LatticePoint::new(0, 1)),
            half_of(GaussianRational::from_integers(-1, -1))
        );
    }

    #[test]
    fn recursive_matches_symbolic() {
        let w = Window::new(-2, 4, -3, 3).unwrap();
        for n in 0..=8u32 {
            let rec = basis_poly_recursive(n, w).unwrap();
            let sym = basis_poly(n);
            for (p, v) in rec.values() {
                assert_eq!(*v, sym.eval(p), "n = {n}, z = {p}");
            }
        }
    }

    #[test]
    fn basis_ladder_and_degree() {
        let table = BasisTable::new(8);
        let w = Window::new(-3, 4, -3, 3).unwrap();
        for n in 0..8usize {
            // delta_x z^(n+1) = z^(n)
            let f = table.polys[n + 1].to_lattice_function(w);
            let df = f.delta_x().unwrap();
            for (p, v) in df.values() {
                assert_eq!(*v, table.polys[n].eval(p));
            }
            assert_eq!(table.polys[n].total_degree(), n as u32);
        }
        for n in 1..=8usize {
            assert!(table.polys[n].eval(LatticePoint::ORIGIN).is_zero());
        }
    }

    #[test]
    fn basis_is_analytic_but_z_cubed_is_not() {
        let w = Window::new(-2, 3, -2, 3).unwrap();
        for n in 0..=6u32 {
            let f = basis_poly(n).to_lattice_function(w);
            assert!(f.is_discrete_analytic().unwrap().analytic, "n = {n}");
        }
        let cube = LatticeFunction::from_fn(w, |p| p.to_gaussian().pow(3));
        assert!(!cube.is_discrete_analytic().unwrap().analytic);
    }

    #[test]
    fn real_axis_values_are_real() {
        for n in 0..=10u32 {
            let p = basis_poly(n);
            for x in -4..=6 {
                assert!(p.eval(LatticePoint::new(x, 0)).im.is_zero());
            }
        }
    }

    #[test]
    fn generating_function_small_cases() {
        // G_1(t) = 1 + t
        let g1 = generating_function(LatticePoint::new(1, 0));
        assert_eq!(
            g1.num,
            Poly::new(vec![GaussianRational::one(), GaussianRational::one()])
        );
        assert_eq!(g1.den, Poly::one());
        // G_i(t) = (1 + a+ t)/(1 + a- t)
        let gi = generating_function(LatticePoint::new(0, 1));
        assert_eq!(
            gi.num,
            Poly::new(vec![GaussianRational::one(), alpha(AlphaSign::Plus)])
        );
        assert_eq!(
            gi.den,
            Poly::new(vec![GaussianRational::one(), alpha(AlphaSign::Minus)])
        );
        // G_z(0) = 1 for all z
        for z in Window::new(-2, 2, -2, 2).unwrap().points() {
            let v = generating_function_eval(z, ComplexFloat::new(0.0, 0.0)).unwrap();
            assert!((v - ComplexFloat::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn generating_function_matches_partial_sums() {
        let t = ComplexFloat::new(0.31, -0.4);
        for z in [
            LatticePoint::new(0, 1),
            LatticePoint::new(2, 1),
            LatticePoint::new(1, -2),
            LatticePoint::new(3, 3),
        ] {
            let direct = generating_function_eval(z, t).unwrap();
            let coeffs = basis_values_at(z, 80);
            let mut sum = ComplexFloat::new(0.0, 0.0);
            let mut tk = ComplexFloat::new(1.0, 0.0);
            for c in &coeffs {
                sum += c.to_float().unwrap() * tk;
                tk *= t;
            }
            assert!((direct - sum).norm() < 1e-9, "z = {z}");
        }
    }

    #[test]
    fn generating_function_pole() {
        // G_i has a pole at t = -1/a- = -(1+i)
        let t = ComplexFloat::new(-1.0, -1.0);
        assert!(matches!(
            generating_function_eval(LatticePoint::new(0, 1), t),
            Err(Error::EvaluationAtPole(_))
        ));
    }

    #[test]
    fn basis_values_match_symbolic() {
        for z in Window::new(-2, 3, -2, 3).unwrap().points() {
            let vals = basis_values_at(z, 10);
            for (n, v) in vals.iter().enumerate() {
                assert_eq!(*v, basis_poly(n as u32).eval(z), "n = {n}, z = {z}");
            }
        }
    }

    #[test]
    fn convolution_ring() {
        let z1 = CoefficientPoly::basis_element(1);
        let z2 = CoefficientPoly::basis_element(2);
        assert_eq!(z1.convolve(&z1), z2);
        // 1 is the unit
        let p = CoefficientPoly::new(vec![
            GaussianRational::from_integers(2, 1),
            GaussianRational::from_integers(0, -3),
        ]);
        assert_eq!(CoefficientPoly::one().convolve(&p), p);
        // (1 + z^(1)) ⊙ (1 − z^(1)) = 1 − z^(2)
        let plus = CoefficientPoly::one().add(&z1);
        let minus = CoefficientPoly::one().add(&z1.scale(&-GaussianRational::one()));
        let expect = CoefficientPoly::one().add(&z2.scale(&-GaussianRational::one()));
        assert_eq!(plus.convolve(&minus), expect);
    }

    #[test]
    fn coefficient_extraction() {
        let w = Window::new(0, 8, -2, 2).unwrap();
        // f = z^(2) -> (0, 0, 1)
        let f = basis_poly(2).to_lattice_function(w);
        assert_eq!(
            coefficients_from_lattice(&f, 4).unwrap(),
            CoefficientPoly::basis_element(2)
        );
        // constant 5 -> (5)
        let c = LatticeFunction::constant(w, GaussianRational::from_integers(5, 0));
        assert_eq!(
            coefficients_from_lattice(&c, 3).unwrap(),
            CoefficientPoly::new(vec![GaussianRational::from_integers(5, 0)])
        );
        // z^2 = z^(1) + 2 z^(2)
        let sq = LatticeFunction::from_fn(w, |p| p.to_gaussian().pow(2));
        let got = coefficients_from_lattice(&sq, 5).unwrap();
        let expect = CoefficientPoly::new(vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::from_integers(2, 0),
        ]);
        assert_eq!(got, expect);
        // too narrow
        let narrow = Window::new(0, 2, 0, 2).unwrap();
        let g = basis_poly(1).to_lattice_function(narrow);
        assert!(matches!(
            coefficients_from_lattice(&g, 5),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn eval_at_matches_lattice_function() {
        let p = CoefficientPoly::new(vec![
            GaussianRational::from_integers(1, -1),
            GaussianRational::new(
                Rational::new(BigInt::from(2), BigInt::from(3)),
                Rational::from_integer(BigInt::from(0)),
            ),
            GaussianRational::from_integers(0, 2),
        ]);
        let w = Window::new(0, 5, -2, 2).unwrap();
        let f = p.to_lattice_function(w);
        assert!(f.is_discrete_analytic().unwrap().analytic);
        assert_eq!(coefficients_from_lattice(&f, 4).unwrap(), p);
    }

    #[test]
    fn conjugation_symmetry() {
        let w = Window::new(-2, 2, -2, 2).unwrap();
        for n in 0..=12u32 {
            assert!(conjugate_basis_identity_check(n, w), "n = {n}");
        }
        // asymmetric window is rejected
        assert!(!conjugate_basis_identity_check(1, Window::new(0, 2, 0, 2).unwrap()));
    }
}
