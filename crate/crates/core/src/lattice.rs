//! Lattice points, windows, paths and finitely supported lattice functions,
//! together with the difference operators, the Ferrand analyticity test,
//! the discrete path integral and the antiderivative operator `Z`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{ComplexFloat, GaussianRational};

/// A point `x + iy` of the lattice `Z + iZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// Membership in the right half-lattice `Re z >= 0`.
    pub fn in_half_plane(&self) -> bool {
        self.x >= 0
    }

    pub fn conj(&self) -> LatticePoint {
        LatticePoint::new(self.x, -self.y)
    }

    pub fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::from_integers(self.x, self.y)
    }

    pub fn to_complex(&self) -> ComplexFloat {
        Complex64::new(self.x as f64, self.y as f64)
    }
}

impl fmt::Display for LatticePoint {
    /// Integer-coordinate encoding `x+yi`, e.g. `2+1i`, `0-3i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y < 0 { "-" } else { "+" };
        write!(f, "{}{}{}i", self.x, sign, self.y.abs())
    }
}

impl FromStr for LatticePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse {
            kind: "lattice point",
            input: s.to_string(),
        };
        if let Some(body) = s.strip_suffix('i') {
            let sep = body
                .char_indices()
                .rev()
                .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
                .map(|(idx, _)| idx)
                .ok_or_else(err)?;
            let (x_s, y_s) = body.split_at(sep);
            let x: i64 = x_s.parse().map_err(|_| err())?;
            let mag: i64 = y_s[1..].parse().map_err(|_| err())?;
            let y = if y_s.starts_with('-') { -mag } else { mag };
            Ok(LatticePoint::new(x, y))
        } else {
            let x: i64 = s.parse().map_err(|_| err())?;
            Ok(LatticePoint::new(x, 0))
        }
    }
}

/// Axis-aligned rectangular window, the finite carrier of lattice functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Window {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Result<Self> {
        if x_min > x_max || y_min > y_max {
            return Err(Error::InvalidWindow);
        }
        Ok(Window {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// Square window `[0, n] x [0, n]`.
    pub fn square(n: i64) -> Self {
        Window::new(0, n, 0, n).unwrap()
    }

    pub fn width(&self) -> i64 {
        self.x_max - self.x_min + 1
    }

    pub fn height(&self) -> i64 {
        self.y_max - self.y_min + 1
    }

    pub fn len(&self) -> usize {
        (self.width() * self.height()) as usize
    }

    pub fn is_empty(&self) -> bool {
        false // construction enforces nonemptiness
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(LatticePoint::ORIGIN)
    }

    /// Row-major iteration, y outer, x inner, both ascending.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        let w = *self;
        (w.y_min..=w.y_max)
            .flat_map(move |y| (w.x_min..=w.x_max).map(move |x| LatticePoint::new(x, y)))
    }

    /// Shrinks by `dx` columns on the right and `dy` rows on the top.
    pub fn shrink(&self, dx: i64, dy: i64) -> Result<Window> {
        if self.x_max - dx < self.x_min || self.y_max - dy < self.y_min {
            return Err(Error::EmptyWindow);
        }
        Window::new(self.x_min, self.x_max - dx, self.y_min, self.y_max - dy)
    }
}

/// A unit-step path in the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    vertices: Vec<LatticePoint>,
}

impl LatticePath {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("path has no vertices"));
        }
        for pair in vertices.windows(2) {
            let dx = pair[1].x - pair[0].x;
            let dy = pair[1].y - pair[0].y;
            if dx.abs() + dy.abs() != 1 {
                return Err(Error::InvalidPath(
                    "consecutive vertices must differ by one unit step",
                ));
            }
        }
        Ok(LatticePath { vertices })
    }

    /// Horizontal run then vertical run from `a` to `b`; the canonical
    /// integration path.
    pub fn staircase(a: LatticePoint, b: LatticePoint) -> Self {
        let mut vertices = vec![a];
        let sx = (b.x - a.x).signum();
        let mut cur = a;
        while cur.x != b.x {
            cur.x += sx;
            vertices.push(cur);
        }
        let sy = (b.y - a.y).signum();
        while cur.y != b.y {
            cur.y += sy;
            vertices.push(cur);
        }
        LatticePath { vertices }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn start(&self) -> LatticePoint {
        self.vertices[0]
    }

    pub fn end(&self) -> LatticePoint {
        *self.vertices.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }
}

/// Scalar field a lattice function takes values in: exact `Q(i)` or
/// double-precision complex. Equality is exact in the first case and
/// tolerance-based in the second.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_gaussian(q: &GaussianRational) -> Self;
    fn from_point(p: LatticePoint) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn conj(&self) -> Self;
    /// Approximate modulus, used only to scale tolerances.
    fn abs_estimate(&self) -> f64;
    /// Equality at the given scale: exact for `GaussianRational`,
    /// `|a - b| <= 1e-9 * (1 + scale)` for floats.
    fn eq_at_scale(a: &Self, b: &Self, scale: f64) -> bool;
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn from_gaussian(q: &GaussianRational) -> Self {
        q.clone()
    }
    fn from_point(p: LatticePoint) -> Self {
        p.to_gaussian()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn abs_estimate(&self) -> f64 {
        self.abs_f64().unwrap_or(f64::INFINITY)
    }
    fn eq_at_scale(a: &Self, b: &Self, _scale: f64) -> bool {
        a == b
    }
}

pub const NUMERIC_ANALYTICITY_TOL: f64 = 1e-9;

impl Scalar for ComplexFloat {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_gaussian(q: &GaussianRational) -> Self {
        q.to_float().unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
    fn from_point(p: LatticePoint) -> Self {
        p.to_complex()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.norm() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn abs_estimate(&self) -> f64 {
        self.norm()
    }
    fn eq_at_scale(a: &Self, b: &Self, scale: f64) -> bool {
        (a - b).norm() <= NUMERIC_ANALYTICITY_TOL * (1.0 + scale)
    }
}

/// A function on a rectangular window of the lattice; the concrete carrier
/// of `f : Λ -> C`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeFunction<S: Scalar> {
    window: Window,
    values: Vec<S>,
}

/// Outcome of the Ferrand test: violating squares are reported by the
/// lower-left corner of the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticityReport {
    pub analytic: bool,
    pub violations: Vec<LatticePoint>,
}

impl<S: Scalar> LatticeFunction<S> {
    pub fn from_fn(window: Window, mut f: impl FnMut(LatticePoint) -> S) -> Self {
        let values = window.points().map(&mut f).collect();
        LatticeFunction { window, values }
    }

    pub fn from_values(window: Window, values: Vec<S>) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} values for the window, got {}",
                window.len(),
                values.len()
            )));
        }
        Ok(LatticeFunction { window, values })
    }

    pub fn constant(window: Window, k: S) -> Self {
        LatticeFunction::from_fn(window, |_| k.clone())
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn index(&self, p: LatticePoint) -> usize {
        ((p.y - self.window.y_min) * self.window.width() + (p.x - self.window.x_min)) as usize
    }

    pub fn get(&self, p: LatticePoint) -> Option<&S> {
        if self.window.contains(p) {
            Some(&self.values[self.index(p)])
        } else {
            None
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (LatticePoint, &S)> + '_ {
        self.window.points().map(move |p| (p, &self.values[self.index(p)]))
    }

    /// `δx f(z) = f(z+1) − f(z)` on the window shrunk by one column.
    pub fn delta_x(&self) -> Result<LatticeFunction<S>> {
        let w = self.window.shrink(1, 0)?;
        Ok(LatticeFunction::from_fn(w, |p| {
            let right = self.get(LatticePoint::new(p.x + 1, p.y)).unwrap();
            right.sub(self.get(p).unwrap())
        }))
    }

    /// `δy f(z) = f(z+i) − f(z)` on the window shrunk by one row.
    pub fn delta_y(&self) -> Result<LatticeFunction<S>> {
        let w = self.window.shrink(0, 1)?;
        Ok(LatticeFunction::from_fn(w, |p| {
            let up = self.get(LatticePoint::new(p.x, p.y + 1)).unwrap();
            up.sub(self.get(p).unwrap())
        }))
    }

    /// Ferrand test on every unit square of the window:
    /// `(f(z+1+i) − f(z))/(1+i) = (f(z+1) − f(z+i))/(1−i)`.
    pub fn is_discrete_analytic(&self) -> Result<AnalyticityReport> {
        if self.window.width() < 2 || self.window.height() < 2 {
            return Err(Error::WindowTooSmall(
                "the Ferrand test needs at least one unit square",
            ));
        }
        let one_plus_i = S::from_gaussian(&GaussianRational::from_integers(1, 1));
        let one_minus_i = S::from_gaussian(&GaussianRational::from_integers(1, -1));
        let mut violations = Vec::new();
        for y in self.window.y_min..self.window.y_max {
            for x in self.window.x_min..self.window.x_max {
                let f00 = self.get(LatticePoint::new(x, y)).unwrap();
                let f10 = self.get(LatticePoint::new(x + 1, y)).unwrap();
                let f01 = self.get(LatticePoint::new(x, y + 1)).unwrap();
                let f11 = self.get(LatticePoint::new(x + 1, y + 1)).unwrap();
                let lhs = f11.sub(f00).div(&one_plus_i)?;
                let rhs = f10.sub(f01).div(&one_minus_i)?;
                let scale = [f00, f10, f01, f11]
                    .iter()
                    .map(|v| v.abs_estimate())
                    .fold(0.0f64, f64::max);
                if !S::eq_at_scale(&lhs, &rhs, scale) {
                    violations.push(LatticePoint::new(x, y));
                }
            }
        }
        Ok(AnalyticityReport {
            analytic: violations.is_empty(),
            violations,
        })
    }

    /// Trapezoid-rule discrete integral along a unit-step path:
    /// `Σ (f(z_{k−1}) + f(z_k))/2 · (z_k − z_{k−1})`.
    pub fn discrete_integral(&self, path: &LatticePath) -> Result<S> {
        for &v in path.vertices() {
            if !self.window.contains(v) {
                return Err(Error::PathOutsideWindow(v));
            }
        }
        let two = S::from_gaussian(&GaussianRational::from_integers(2, 0));
        let mut acc = S::zero();
        for pair in path.vertices().windows(2) {
            let step = S::from_point(LatticePoint::new(
                pair[1].x - pair[0].x,
                pair[1].y - pair[0].y,
            ));
            let avg = self
                .get(pair[0])
                .unwrap()
                .add(self.get(pair[1]).unwrap())
                .div(&two)?;
            acc = acc.add(&avg.mul(&step));
        }
        Ok(acc)
    }

    /// The antiderivative `Zf(z) = (f(0) − f(z))/2 + ∫_0^z f δz`, integrated
    /// along the staircase path; well defined (path independent) because the
    /// input is required to be discrete analytic.
    pub fn z_operator(&self) -> Result<LatticeFunction<S>> {
        if !self.window.contains_origin() {
            return Err(Error::OriginMissing);
        }
        let report = self.is_discrete_analytic()?;
        if !report.analytic {
            return Err(Error::NotDiscreteAnalytic(report.violations[0]));
        }
        let two = S::from_gaussian(&GaussianRational::from_integers(2, 0));
        let f0 = self.get(LatticePoint::ORIGIN).unwrap().clone();
        let mut out = Vec::with_capacity(self.window.len());
        for p in self.window.points() {
            let path = LatticePath::staircase(LatticePoint::ORIGIN, p);
            let integral = self.discrete_integral(&path)?;
            let half = f0.sub(self.get(p).unwrap()).div(&two)?;
            out.push(half.add(&integral));
        }
        LatticeFunction::from_values(self.window, out)
    }

    /// Point evaluation at the origin, `E_0 f = f(0)`.
    pub fn e0(&self) -> Result<S> {
        self.get(LatticePoint::ORIGIN)
            .cloned()
            .ok_or(Error::OriginMissing)
    }
}

/// Constant extension `(E_0^* k)(z) = k` on the window.
pub fn e0_star<S: Scalar>(k: S, window: Window) -> LatticeFunction<S> {
    LatticeFunction::constant(window, k)
}
