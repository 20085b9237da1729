//! Shared numeric kernels: the gamma function, bracketed root finding,
//! p-norms and the boundary parametrization of Minkowski circles.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Stopping rules for the iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
    /// Slack used when deciding whether a lattice point lies on a
    /// Minkowski curve, `| |x|_p - r | <= boundary_tol * r`.
    pub boundary_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iter: 200,
            boundary_tol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        let tol = Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
            ..Tolerance::default()
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn with_boundary_tol(mut self, boundary_tol: f64) -> Result<Self> {
        self.boundary_tol = boundary_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::domain("abs_tol", self.abs_tol, "abs_tol > 0"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::domain("rel_tol", self.rel_tol, "rel_tol > 0"));
        }
        if self.max_iter == 0 {
            return Err(Error::domain("max_iter", 0.0, "max_iter >= 1"));
        }
        if !(self.boundary_tol > 0.0 && self.boundary_tol < 1.0) {
            return Err(Error::domain(
                "boundary_tol",
                self.boundary_tol,
                "0 < boundary_tol < 1",
            ));
        }
        Ok(())
    }
}

/// A point (or vector) of the real plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// z-component of the 3D cross product, i.e. the signed area of the
    /// parallelogram spanned by `self` and `other`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Polar angle in `[0, 2pi)`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x).rem_euclid(2.0 * PI)
    }

    pub fn sup_norm(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).sup_norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

/// Exponent of a Minkowski ball. The sup-norm limit is an explicit variant
/// rather than a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    /// Rejects `p < 1` and NaN.
    pub fn validate(self) -> Result<Self> {
        match self {
            Exponent::Finite(p) if p >= 1.0 && p.is_finite() => Ok(self),
            Exponent::Finite(p) => Err(Error::domain("p", p, "p >= 1 or p = inf")),
            Exponent::Infinity => Ok(self),
        }
    }
}

impl From<f64> for Exponent {
    fn from(p: f64) -> Self {
        if p == f64::INFINITY {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "\u{221e}" => Ok(Exponent::Infinity),
            other => other
                .parse::<f64>()
                .map(Exponent::from)
                .map_err(|e| format!("invalid exponent {s:?}: {e}")),
        }
    }
}

// Finite exponents serialize as numbers, the limit as the string "inf".
impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => serializer.serialize_f64(*p),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(p) => Ok(Exponent::Finite(p)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for positive real arguments (Lanczos, g = 7, 9 terms).
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("x", x, "x > 0 and finite"));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // t^(x + 1/2) split in two halves so large arguments do not overflow early
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * sum
}

/// Finds a root of `f` inside `[a, b]` with Brent's method (inverse quadratic
/// interpolation / secant steps safeguarded by bisection).
///
/// Iteration stops when `f` vanishes exactly or the bracket half-width drops
/// below `abs_tol + rel_tol * |x|` (plus a few ulps), so the returned value is
/// always inside the original bracket.
pub fn solve_bracketed<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    tol.validate()?;
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() {
        return Err(Error::domain("f(a)", fa, "finite function value"));
    }
    if !fb.is_finite() {
        return Err(Error::domain("f(b)", fb, "finite function value"));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { a, b, fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..tol.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * (tol.abs_tol + tol.rel_tol * b.abs());
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::domain("f(x)", fb, "finite function value"));
        }
    }
    Err(Error::Convergence {
        iterations: tol.max_iter,
        estimate: b,
    })
}

/// `(|x|^p + |y|^p)^(1/p)`, or `max(|x|, |y|)` for the infinite exponent.
pub fn pnorm(p: impl Into<Exponent>, v: Vec2) -> Result<f64> {
    match p.into().validate()? {
        Exponent::Finite(p) => Ok(norm_p(p, v)),
        Exponent::Infinity => Ok(v.sup_norm()),
    }
}

/// Unchecked finite p-norm, scaled by the sup-norm to stay finite for large p.
pub(crate) fn norm_p(p: f64, v: Vec2) -> f64 {
    let m = v.sup_norm();
    if m == 0.0 {
        return 0.0;
    }
    let (x, y) = (v.x.abs() / m, v.y.abs() / m);
    m * (x.powf(p) + y.powf(p)).powf(1.0 / p)
}

/// Point of the Minkowski circle `|x|^p + |y|^p = 1` at parameter `theta`:
/// `(sgn(cos) |cos|^(2/p), sgn(sin) |sin|^(2/p))`.
///
/// The map is monotone in the polar angle and agrees with it for `p = 2`.
pub fn boundary_point(p: f64, theta: f64) -> Result<Vec2> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::domain("p", p, "p > 1"));
    }
    if !theta.is_finite() {
        return Err(Error::domain("theta", theta, "finite angle"));
    }
    Ok(boundary_point_unchecked(p, theta))
}

pub(crate) fn boundary_point_unchecked(p: f64, theta: f64) -> Vec2 {
    let (s, c) = theta.rem_euclid(2.0 * PI).sin_cos();
    let e = 2.0 / p;
    Vec2::new(c.abs().powf(e).copysign(c), s.abs().powf(e).copysign(s))
}

/// Unsigned area of a simple polygon given in cyclic order.
pub fn shoelace_area(points: &[Vec2]) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    let twice: f64 = (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum();
    0.5 * twice.abs()
}

pub(crate) fn sort_by_angle(points: &mut [Vec2]) {
    points.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
}
