//! Exact arithmetic in the field `Q(i)` of Gaussian rationals.
//!
//! All lattice values, the constants `alpha(±) = (1 ± i)/2` and every
//! polynomial coefficient in the crate live here. Arithmetic never rounds;
//! conversion to floating point is explicit and fallible.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator
/// (maintained by `num_rational`).
pub type Rational = BigRational;

/// Double-precision complex value; used only on certified-numeric paths.
pub type ComplexFloat = Complex64;

/// An element of `Q(i)`: exact complex number with rational real and
/// imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Sign selecting one of the two constants `alpha(±) = (1 ± i)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaSign {
    Plus,
    Minus,
}

impl AlphaSign {
    /// The opposite sign, used for the `alpha(∓)` companion constant.
    pub fn flipped(self) -> AlphaSign {
        match self {
            AlphaSign::Plus => AlphaSign::Minus,
            AlphaSign::Minus => AlphaSign::Plus,
        }
    }
}

/// `alpha(+) = (1+i)/2`, `alpha(−) = (1−i)/2`.
pub fn alpha(sign: AlphaSign) -> GaussianRational {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    match sign {
        AlphaSign::Plus => GaussianRational::new(half.clone(), half),
        AlphaSign::Minus => GaussianRational::new(half.clone(), -half),
    }
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        GaussianRational::new(
            Rational::from_integer(BigInt::from(re)),
            Rational::from_integer(BigInt::from(im)),
        )
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|q|^2 = q * conj(q)`; exact and nonnegative.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &GaussianRational) -> Result<GaussianRational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = rhs.norm_sq();
        let num = self * &rhs.conj();
        Ok(GaussianRational::new(num.re / &d, num.im / &d))
    }

    pub fn inverse(&self) -> Result<GaussianRational> {
        GaussianRational::one().checked_div(self)
    }

    pub fn pow(&self, n: u32) -> GaussianRational {
        let mut acc = GaussianRational::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest-float conversion of each component. Inexact; flags values
    /// outside the finite range of `f64`.
    pub fn to_float(&self) -> Result<ComplexFloat> {
        let re = rational_to_f64(&self.re)?;
        let im = rational_to_f64(&self.im)?;
        Ok(Complex64::new(re, im))
    }

    /// `|q|` as a float; same overflow rules as [`to_float`](Self::to_float).
    pub fn abs_f64(&self) -> Result<f64> {
        let v = self.to_float()?;
        Ok(v.norm())
    }

    /// True when both components convert to `f64` without rounding.
    pub fn to_float_is_exact(&self) -> bool {
        let round_trips = |r: &Rational| match rational_to_f64(r) {
            Ok(x) => match Rational::from_float(x) {
                Some(back) => back == *r,
                None => false,
            },
            Err(_) => false,
        };
        round_trips(&self.re) && round_trips(&self.im)
    }
}

pub fn rational_to_f64(r: &Rational) -> Result<f64> {
    match r.to_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(Error::FloatOverflow),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_binop!(Add, add);

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_binop!(Mul, mul);

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Textual encoding `"p/q+r/si"`, e.g. `1/2+1/2i`, `-3+0i`, `0-1/3i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i",
            fmt_rational(&self.re),
            sign,
            fmt_rational(&self.im.abs())
        )
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse {
        kind: "rational",
        input: s.to_string(),
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| err())?;
            let q = BigInt::from_str(q).map_err(|_| err())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s).map_err(|_| err())?;
            Ok(Rational::from_integer(p))
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Parses the `"p/q+r/si"` encoding. A bare rational (no trailing `i`)
    /// is accepted as a real value.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse {
            kind: "gaussian rational",
            input: s.to_string(),
        };
        if let Some(body) = s.strip_suffix('i') {
            // The separating sign is the last '+' or '-' at position > 0;
            // denominators are positive, so an inner '-' can only open the
            // imaginary part.
            let sep = body
                .char_indices()
                .rev()
                .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
                .map(|(idx, _)| idx)
                .ok_or_else(err)?;
            let (re_s, im_s) = body.split_at(sep);
            let re = parse_rational(re_s)?;
            let sign_char = im_s.chars().next().unwrap();
            let im_mag = parse_rational(&im_s[1..])?;
            let im = if sign_char == '-' { -im_mag } else { im_mag };
            Ok(GaussianRational::new(re, im))
        } else {
            Ok(GaussianRational::from_rational(parse_rational(s)?))
        }
    }
}
