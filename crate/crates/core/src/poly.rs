//! Univariate polynomials over `Q(i)` in the formal variable `t`, and
//! rational functions `num/den`. These carry the T-images of discrete
//! analytic objects: generating functions, kernels and Blaschke factors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{ComplexFloat, GaussianRational};

/// Polynomial `c_0 + c_1 t + ... + c_d t^d`; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(out)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj_coeffs(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn eval(&self, t: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: ComplexFloat) -> Result<ComplexFloat> {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_float()?;
        }
        Ok(acc)
    }

    /// Exact Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Poly) -> Result<(Poly, Poly)> {
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = div.degree().unwrap();
        let lead_inv = div.coeffs[d].inverse()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            GaussianRational::zero();
            self.coeffs.len().saturating_sub(d)
        ];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            if !factor.is_zero() {
                for (j, b) in div.coeffs.iter().enumerate() {
                    let sub = &factor * b;
                    rem[k + j] -= &sub;
                }
                quot[k] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) && rem.len() > d {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact division; errors unless the remainder vanishes.
    pub fn divide_exact(&self, div: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(div)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(
                "polynomial division left a nonzero remainder".into(),
            ));
        }
        Ok(q)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_integers(k as i64, 0))
                .collect(),
        )
    }

    /// Monic normalization (identity for the zero polynomial).
    pub fn monic(&self) -> Poly {
        match self.degree() {
            None => Poly::zero(),
            Some(d) => {
                let inv = self.coeffs[d].inverse().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd over `Q(i)` by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = rhs.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r.monic();
        }
        a
    }

    /// Yun's squarefree decomposition: returns `(F_1, F_2, ...)` with
    /// `self = lc * Π F_i^i`, the `F_i` monic, squarefree and pairwise
    /// coprime.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        match self.degree() {
            None | Some(0) => return vec![],
            _ => {}
        }
        let f = self.monic();
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut c = f.divide_exact(&g).unwrap();
        let mut d = df.divide_exact(&g).unwrap().sub(&c.derivative());
        let mut out = Vec::new();
        loop {
            if c.degree() == Some(0) {
                break;
            }
            let fi = c.gcd(&d);
            c = c.divide_exact(&fi).unwrap();
            d = d.divide_exact(&fi).unwrap().sub(&c.derivative());
            out.push(fi);
        }
        out
    }

    /// `Σ |c_k| r^k`, an upper bound for `|p(t)|` on `|t| = r`.
    pub fn abs_sum_at(&self, r: f64) -> Result<f64> {
        let mut acc = 0.0;
        let mut rk = 1.0;
        for c in &self.coeffs {
            acc += c.abs_f64()? * rk;
            rk *= r;
        }
        Ok(acc)
    }

    /// `Σ k |c_k| r^(k-1)`, an upper bound for `|p'(t)|` on `|t| = r`.
    pub fn derivative_abs_sum_at(&self, r: f64) -> Result<f64> {
        let mut acc = 0.0;
        let mut rk = 1.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                acc += k as f64 * c.abs_f64()? * rk;
                rk *= r;
            }
        }
        Ok(acc)
    }
}

/// Exact rational function `num(t)/den(t)` over `Q(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn eval_f64(&self, t: ComplexFloat) -> Result<ComplexFloat> {
        let d = self.den.eval_f64(t)?;
        if d.norm() < 1e-300 {
            return Err(Error::EvaluationAtPole(d.norm()));
        }
        Ok(self.num.eval_f64(t)? / d)
    }

    /// First `n + 1` power-series coefficients at `t = 0` by exact long
    /// division; requires `den(0) != 0`.
    pub fn series_prefix(&self, n: usize) -> Result<Vec<GaussianRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::DenominatorVanishesAtOrigin);
        }
        let d0_inv = d0.inverse()?;
        let mut out: Vec<GaussianRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.coeffs().len().saturating_sub(1)) {
                acc -= &(&self.den.coeff(j) * &out[k - j]);
            }
            out.push(&acc * &d0_inv);
        }
        Ok(out)
    }
}
