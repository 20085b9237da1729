//! Plane lattices: the two critical-lattice families of `D_p`, shells of
//! boundary points, sublattices and a brute-force admissibility oracle.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    boundary_point_unchecked, norm_p, shoelace_area, solve_bracketed, sort_by_angle, Tolerance,
    Vec2,
};

/// Relative slack for "strictly inside the ball" in the admissibility test.
pub const INTERIOR_SLACK: f64 = 1e-9;

/// A basis `(u, v)` of a full lattice in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBasis", into = "RawBasis")]
pub struct LatticeBasis {
    u: Vec2,
    v: Vec2,
}

#[derive(Serialize, Deserialize)]
struct RawBasis {
    u: Vec2,
    v: Vec2,
}

impl TryFrom<RawBasis> for LatticeBasis {
    type Error = Error;
    fn try_from(raw: RawBasis) -> Result<Self> {
        LatticeBasis::new(raw.u, raw.v)
    }
}

impl From<LatticeBasis> for RawBasis {
    fn from(b: LatticeBasis) -> Self {
        RawBasis { u: b.u, v: b.v }
    }
}

impl LatticeBasis {
    pub fn new(u: Vec2, v: Vec2) -> Result<Self> {
        if !(u.is_finite() && v.is_finite()) {
            return Err(Error::Degenerate("basis vectors must be finite".into()));
        }
        if u.cross(v) == 0.0 {
            return Err(Error::Degenerate(format!(
                "basis vectors ({}, {}) and ({}, {}) are linearly dependent",
                u.x, u.y, v.x, v.y
            )));
        }
        Ok(LatticeBasis { u, v })
    }

    pub fn u(&self) -> Vec2 {
        self.u
    }

    pub fn v(&self) -> Vec2 {
        self.v
    }

    /// Signed determinant `u.x v.y - u.y v.x`.
    pub fn det(&self) -> f64 {
        self.u.cross(self.v)
    }

    /// Covolume of the lattice.
    pub fn abs_det(&self) -> f64 {
        self.det().abs()
    }

    pub fn point(&self, a: i64, b: i64) -> Vec2 {
        self.u * a as f64 + self.v * b as f64
    }

    /// The dilated lattice `k * Lambda`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        LatticeBasis::new(self.u * k, self.v * k)
    }

    /// Bound `B` such that every lattice point `a u + b v` with
    /// `|xi|_p <= radius` has `|a|, |b| <= B`.
    ///
    /// Uses the max row sum of the inverse basis against the sup-norm box,
    /// widened by `2^(1 - 1/p)`.
    pub fn coefficient_bound(&self, p: f64, radius: f64) -> i64 {
        let d = self.abs_det();
        let row_a = (self.v.x.abs() + self.v.y.abs()) / d;
        let row_b = (self.u.x.abs() + self.u.y.abs()) / d;
        let widen = f64::powf(2.0, 1.0 - 1.0 / p);
        (row_a.max(row_b) * radius * widen).ceil() as i64
    }

    /// All nonzero lattice points with `|xi|_p <= radius`, in a fixed
    /// coefficient order.
    pub fn points_within(&self, p: f64, radius: f64) -> Vec<Vec2> {
        let bound = self.coefficient_bound(p, radius);
        let mut out = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                if a == 0 && b == 0 {
                    continue;
                }
                let xi = self.point(a, b);
                if norm_p(p, xi) <= radius {
                    out.push(xi);
                }
            }
        }
        out
    }
}

/// Which of the two critical-lattice families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeKind {
    /// the lattice containing `(1, 0)`
    #[serde(rename = "lambda0")]
    Zero,
    /// the lattice containing `(-2^(-1/p), 2^(-1/p))`
    #[serde(rename = "lambda1")]
    One,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Zero => "lambda0",
            LatticeKind::One => "lambda1",
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("p", p, "1 < p < inf"))
    }
}

/// Basis `((1, 0), (1/2, sigma_p / 2))`.
pub fn critical_lattice_0(p: f64) -> Result<LatticeBasis> {
    check_p(p)?;
    let sigma = crate::ball::sigma(p)?;
    LatticeBasis::new(Vec2::new(1.0, 0.0), Vec2::new(0.5, 0.5 * sigma))
}

/// Basis `(u, v)` with `u = (-2^(-1/p), 2^(-1/p))`, `v` and `v - u` on the
/// Minkowski circle. `v` is found numerically on the arc running clockwise
/// from `u` to `-u`, where `|Q - u|_p - 1` changes sign exactly once.
pub fn critical_lattice_1(p: f64) -> Result<LatticeBasis> {
    check_p(p)?;
    let c = f64::powf(2.0, -1.0 / p);
    let u = Vec2::new(-c, c);
    let tol = Tolerance {
        abs_tol: 1e-16,
        rel_tol: 1e-16,
        ..Tolerance::default()
    };
    let theta = solve_bracketed(
        |t| norm_p(p, boundary_point_unchecked(p, t) - u) - 1.0,
        -FRAC_PI_4,
        3.0 * FRAC_PI_4,
        &tol,
    )?;
    LatticeBasis::new(u, boundary_point_unchecked(p, theta))
}

pub fn critical_lattice(p: f64, kind: LatticeKind) -> Result<LatticeBasis> {
    match kind {
        LatticeKind::Zero => critical_lattice_0(p),
        LatticeKind::One => critical_lattice_1(p),
    }
}

/// The six lattice points of an admissible lattice lying on `|x|^p + |y|^p = 1`,
/// sorted by polar angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellSet {
    pub p: f64,
    pub points: [Vec2; 6],
}

impl ShellSet {
    /// Area of the inscribed hexagon through the shell points.
    pub fn hexagon_area(&self) -> f64 {
        shoelace_area(&self.points)
    }
}

/// Lattice points on the unit Minkowski circle, checked to form three
/// antipodal pairs whose independent pairs all span cells of area `|det|`.
pub fn shell(p: f64, basis: &LatticeBasis, tol: &Tolerance) -> Result<ShellSet> {
    check_p(p)?;
    tol.validate()?;
    let slack = tol.boundary_tol;
    let mut pts: Vec<Vec2> = basis
        .points_within(p, 1.0 + slack)
        .into_iter()
        .filter(|&xi| (norm_p(p, xi) - 1.0).abs() <= slack)
        .collect();
    if pts.len() != 6 {
        return Err(Error::Consistency(format!(
            "expected 6 shell points for p = {p}, found {}",
            pts.len()
        )));
    }
    sort_by_angle(&mut pts);
    let det = basis.abs_det();
    for (i, &a) in pts.iter().enumerate() {
        if !pts.iter().any(|&b| (a + b).sup_norm() <= slack) {
            return Err(Error::Consistency("shell not closed under negation".into()));
        }
        for &b in &pts[i + 1..] {
            let c = a.cross(b).abs();
            if c > slack && (c - det).abs() > slack {
                return Err(Error::Consistency(format!(
                    "shell pair spans area {c}, lattice determinant is {det}"
                )));
            }
        }
    }
    let points: [Vec2; 6] = pts.try_into().expect("length checked");
    Ok(ShellSet { p, points })
}

const COMPANION_SCAN: usize = 7200;

/// Boundary points `Q` with `|P.x Q.y - P.y Q.x| = d`.
///
/// Scans the circle parameter on both branches `+d` and `-d`, refining each
/// sign change by bracketed root finding. An empty result means no
/// solution exists.
pub fn solve_companion_point(p: f64, anchor: Vec2, d: f64) -> Result<Vec<Vec2>> {
    check_p(p)?;
    if (norm_p(p, anchor) - 1.0).abs() > 1e-9 {
        return Err(Error::domain(
            "anchor",
            norm_p(p, anchor),
            "anchor on the Minkowski circle",
        ));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain("d", d, "d > 0"));
    }
    let tol = Tolerance {
        abs_tol: 1e-15,
        rel_tol: 1e-15,
        ..Tolerance::default()
    };
    let step = 2.0 * PI / COMPANION_SCAN as f64;
    let mut found: Vec<Vec2> = Vec::new();
    let mut push = |q: Vec2| {
        if (anchor.cross(q).abs() - d).abs() <= 1e-9 && found.iter().all(|f| f.distance(q) > 1e-9) {
            found.push(q);
        }
    };
    // for p > 2 the parametrization has infinite slope at the axis points,
    // where refinement cannot reach the residual; test them directly
    for q in [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)] {
        push(Vec2::new(q.0, q.1));
    }
    for target in [d, -d] {
        let g = |t: f64| anchor.cross(boundary_point_unchecked(p, t)) - target;
        let mut prev = g(0.0);
        for i in 1..=COMPANION_SCAN {
            let (t0, t1) = ((i - 1) as f64 * step, i as f64 * step);
            let cur = g(t1);
            if prev == 0.0 {
                push(boundary_point_unchecked(p, t0));
            } else if prev.signum() != cur.signum() && cur != 0.0 {
                let t = solve_bracketed(g, t0, t1, &tol)?;
                push(boundary_point_unchecked(p, t));
            }
            prev = cur;
        }
    }
    sort_by_angle(&mut found);
    Ok(found)
}

/// Nonzero lattice point strictly inside `scale * D_p`, if any.
pub fn admissibility_witness(p: f64, scale: f64, basis: &LatticeBasis) -> Option<Vec2> {
    let limit = scale * (1.0 - INTERIOR_SLACK);
    basis
        .points_within(p, scale)
        .into_iter()
        .find(|&xi| norm_p(p, xi) < limit)
}

/// No nonzero lattice point lies in the interior of `scale * D_p`.
pub fn is_admissible(p: f64, scale: f64, basis: &LatticeBasis) -> bool {
    admissibility_witness(p, scale, basis).is_none()
}

/// Sublattice with basis `(M11 u + M12 v, M21 u + M22 v)`; its
/// determinant is `|det M|` times the original.
pub fn sublattice(basis: &LatticeBasis, m: [[i64; 2]; 2]) -> Result<LatticeBasis> {
    let det_m = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det_m == 0 {
        return Err(Error::Degenerate("integer matrix has determinant 0".into()));
    }
    LatticeBasis::new(basis.point(m[0][0], m[0][1]), basis.point(m[1][0], m[1][1]))
}
