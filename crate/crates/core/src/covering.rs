//! Inscribed hexagons of admissible lattices and lattice coverings of `D_p`.
//!
//! An admissible lattice with three pairs of points on the boundary of `D_p`
//! is spanned by
//!
//! ```text
//! u = (1 + tau^p)^(-1/p) (1, tau),   v = (1 + sigma^p)^(-1/p) (-1, sigma)
//! ```
//!
//! with `u + v` also on the boundary. For `sigma in [1, sigma_p]` that third
//! condition fixes `tau in [0, tau_p]`, and the area of the hexagon
//! `u, u + v, v, -u, -u - v, -v` is
//!
//! ```text
//! A(sigma, p) = 3 (tau + sigma) (1 + tau^p)^(-1/p) (1 + sigma^p)^(-1/p).
//! ```
//!
//! At `sigma = sigma_p` (`tau = 0`) this is the lattice through `(1, 0)`,
//! at `sigma = 1` (`tau = tau_p`) the lattice through `(-2^(-1/p), 2^(-1/p))`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::ball::{self, davis_constant, scaled_critical_determinant, volume};
use crate::error::{Error, Result};
use crate::lattice::ShellSet;
use crate::numerics::{
    boundary_point_unchecked, norm_p, shoelace_area, solve_bracketed, sort_by_angle, Tolerance,
    Vec2,
};

/// A point of the hexagon moduli surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint {
    pub p: f64,
    pub sigma: f64,
    pub tau: f64,
    /// determinant of the lattice spanned by `u` and `v`
    pub delta: f64,
    /// `| |u + v|_p - 1 |`
    pub third_point_residual: f64,
}

impl ModuliPoint {
    pub fn area(&self) -> f64 {
        3.0 * self.delta
    }

    pub fn basis_vectors(&self) -> (Vec2, Vec2) {
        moduli_vectors(self.p, self.sigma, self.tau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HexagonKind {
    /// hexagon of an admissible lattice (vertices on the boundary, lattice points)
    InscribedAl,
    /// any centrally symmetric hexagon with vertices on the boundary
    InscribedFree,
    /// bounded by tangent lines at boundary points
    Circumscribed,
}

impl HexagonKind {
    pub fn name(self) -> &'static str {
        match self {
            HexagonKind::InscribedAl => "inscribed-al",
            HexagonKind::InscribedFree => "inscribed-free",
            HexagonKind::Circumscribed => "circumscribed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexagonReport {
    pub vertices: [Vec2; 6],
    pub area: f64,
    pub kind: HexagonKind,
}

impl HexagonReport {
    fn new(vertices: [Vec2; 6], kind: HexagonKind) -> Self {
        HexagonReport {
            area: shoelace_area(&vertices),
            vertices,
            kind,
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

fn fine() -> Tolerance {
    Tolerance {
        abs_tol: 1e-15,
        rel_tol: 1e-15,
        ..Tolerance::default()
    }
}

fn moduli_vectors(p: f64, sigma: f64, tau: f64) -> (Vec2, Vec2) {
    let a = (1.0 + tau.powf(p)).powf(-1.0 / p);
    let b = (1.0 + sigma.powf(p)).powf(-1.0 / p);
    (Vec2::new(a, a * tau), Vec2::new(-b, b * sigma))
}

fn moduli_delta(p: f64, sigma: f64, tau: f64) -> f64 {
    (tau + sigma) * (1.0 + tau.powf(p)).powf(-1.0 / p) * (1.0 + sigma.powf(p)).powf(-1.0 / p)
}

fn third_point_residual(p: f64, sigma: f64, tau: f64) -> f64 {
    let (u, v) = moduli_vectors(p, sigma, tau);
    norm_p(p, u + v) - 1.0
}

fn check_sigma(p: f64, sigma: f64) -> Result<f64> {
    check_p(p)?;
    let sp = ball::sigma(p)?;
    if !(sigma >= 1.0 && sigma <= sp * (1.0 + 1e-14)) {
        return Err(Error::domain("sigma", sigma, "1 <= sigma <= sigma_p"));
    }
    Ok(sp)
}

/// The `tau in [0, tau_p]` for which `u + v` lies on the boundary.
pub fn tau_of_sigma(p: f64, sigma: f64) -> Result<f64> {
    check_sigma(p, sigma)?;
    let tau_p = ball::tau(p)?;
    let h = |t: f64| third_point_residual(p, sigma, t);
    let tol = fine();
    if h(0.0).abs() <= tol.abs_tol * 10.0 {
        return Ok(0.0);
    }
    if h(tau_p).abs() <= tol.abs_tol * 10.0 {
        return Ok(tau_p);
    }
    solve_bracketed(h, 0.0, tau_p, &tol)
}

pub fn moduli_point(p: f64, sigma: f64) -> Result<ModuliPoint> {
    let tau = tau_of_sigma(p, sigma)?;
    Ok(ModuliPoint {
        p,
        sigma,
        tau,
        delta: moduli_delta(p, sigma, tau),
        third_point_residual: third_point_residual(p, sigma, tau).abs(),
    })
}

/// `A(sigma, p)` with `tau` fixed by the third boundary pair.
pub fn moduli_area(p: f64, sigma: f64) -> Result<f64> {
    Ok(moduli_point(p, sigma)?.area())
}

/// `A` evaluated at a freely chosen `tau`, with the residual of the
/// third-point condition reported alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeModuliEvaluation {
    pub p: f64,
    pub sigma: f64,
    pub tau: f64,
    pub area: f64,
    pub third_point_residual: f64,
}

pub fn moduli_area_free(p: f64, sigma: f64, tau_free: f64) -> Result<FreeModuliEvaluation> {
    check_p(p)?;
    if !(sigma >= 1.0 && sigma.is_finite()) {
        return Err(Error::domain("sigma", sigma, "sigma >= 1"));
    }
    if !(0.0..1.0).contains(&tau_free) {
        return Err(Error::domain("tau", tau_free, "0 <= tau < 1"));
    }
    Ok(FreeModuliEvaluation {
        p,
        sigma,
        tau: tau_free,
        area: 3.0 * moduli_delta(p, sigma, tau_free),
        third_point_residual: third_point_residual(p, sigma, tau_free).abs(),
    })
}

/// The hexagon `u, u + v, v, -u, -u - v, -v` at a moduli point.
pub fn al_hexagon(p: f64, sigma: f64) -> Result<HexagonReport> {
    let (u, v) = moduli_point(p, sigma)?.basis_vectors();
    let mut verts = [u, u + v, v, -u, -(u + v), -v];
    sort_by_angle(&mut verts);
    Ok(HexagonReport::new(verts, HexagonKind::InscribedAl))
}

/// `sigma_{alpha,p} = (2^p - 1)^(1 / (alpha p))`.
pub fn sigma_alpha(p: f64, alpha: f64) -> Result<f64> {
    check_p(p)?;
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::domain("alpha", alpha, "alpha >= 1"));
    }
    Ok((f64::powf(2.0, p) - 1.0).powf(1.0 / (alpha * p)))
}

/// The moduli surface restricted to the curve `sigma = sigma_{alpha,p}`.
pub fn section_curve(p: f64, alpha: f64) -> Result<f64> {
    let s = sigma_alpha(p, alpha)?.min(ball::sigma(p)?);
    moduli_area(p, s)
}

fn seam(p: f64) -> Result<bool> {
    Ok((p - 2.0).abs() <= 1e-12 || (p - davis_constant()?).abs() <= 1e-9)
}

/// `(3 Delta^(1)_p, 3 Delta^(0)_p)`, checked to agree at the seams.
fn area_branches(p: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    let b1 = 3.0 * ball::delta1(p)?;
    let b0 = 1.5 * ball::sigma(p)?;
    if seam(p)? && (b0 - b1).abs() > 1e-9 {
        return Err(Error::Consistency(format!(
            "area branches disagree at p = {p}: {b0} vs {b1}"
        )));
    }
    Ok((b1, b0))
}

fn first_branch(p: f64) -> Result<bool> {
    Ok(p <= 2.0 || p >= davis_constant()?)
}

/// Minimum of the moduli surface over `sigma`: `3 Delta(D_p)`.
pub fn min_a(p: f64) -> Result<f64> {
    let (b1, b0) = area_branches(p)?;
    Ok(if first_branch(p)? { b1 } else { b0 })
}

/// The other endpoint value of the moduli surface.
pub fn i_min_a(p: f64) -> Result<f64> {
    let (b1, b0) = area_branches(p)?;
    Ok(if first_branch(p)? { b0 } else { b1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveringBounds {
    /// `(3 sqrt(3) / 2 pi) V(D_p)`, the Sas bound for the largest inscribed hexagon
    pub sas_lower: f64,
    pub i_min_lower: f64,
    /// `V(D_p)`
    pub trivial_upper: f64,
}

pub fn covering_bounds(p: f64) -> Result<CoveringBounds> {
    let v = volume(p)?;
    Ok(CoveringBounds {
        sas_lower: 3.0 * 3f64.sqrt() / (2.0 * PI) * v,
        i_min_lower: i_min_a(p)?,
        trivial_upper: v,
    })
}

const GRID_STEPS: usize = 180;

/// Area of the centrally symmetric hexagon with vertices at parameters
/// `thetas` and their antipodes; returns the representatives sorted in `[0, pi)`.
fn symmetric_hexagon(p: f64, thetas: [f64; 3]) -> (f64, [Vec2; 3]) {
    let mut t = thetas.map(|x| x.rem_euclid(PI));
    t.sort_by(f64::total_cmp);
    let w = t.map(|x| boundary_point_unchecked(p, x));
    (w[0].cross(w[1]) + w[1].cross(w[2]) + w[0].cross(w[2]), w)
}

/// Largest centrally symmetric hexagon inscribed in `D_p`.
///
/// Coarse search on a 1 degree grid (first vertex in a quarter turn, which
/// the square symmetry of `D_p` allows), then compass search from the best
/// grid cells down to a step of 1e-9 rad.
pub fn max_inscribed_hexagon(p: f64) -> Result<HexagonReport> {
    check_p(p)?;
    let step = PI / GRID_STEPS as f64;
    let table: Vec<Vec2> = (0..2 * GRID_STEPS)
        .map(|k| boundary_point_unchecked(p, k as f64 * step))
        .collect();

    let mut seeds: Vec<(f64, [usize; 3])> = Vec::with_capacity(GRID_STEPS / 2);
    for i in 0..GRID_STEPS / 2 {
        let mut best = (f64::NEG_INFINITY, [0; 3]);
        for j in i + 1..i + GRID_STEPS {
            for k in j + 1..i + GRID_STEPS {
                let (a, b, c) = (table[i], table[j], table[k]);
                let area = a.cross(b) + b.cross(c) + a.cross(c);
                if area > best.0 {
                    best = (area, [i, j, k]);
                }
            }
        }
        seeds.push(best);
    }
    seeds.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    for &(_, idx) in seeds.iter().take(4) {
        let start = idx.map(|k| k as f64 * step);
        let refined = compass_search(|x| symmetric_hexagon(p, x).0, start, step, 1e-9);
        if refined.0 > best.0 {
            best = refined;
        }
    }
    let (_, w) = symmetric_hexagon(p, best.1);
    Ok(HexagonReport::new(
        [w[0], w[1], w[2], -w[0], -w[1], -w[2]],
        HexagonKind::InscribedFree,
    ))
}

fn compass_search<F>(f: F, mut x: [f64; 3], mut step: f64, min_step: f64) -> (f64, [f64; 3])
where
    F: Fn([f64; 3]) -> f64,
{
    let mut fx = f(x);
    while step > min_step {
        let mut improved = false;
        for i in 0..3 {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[i] += dir * step;
                let fy = f(y);
                if fy > fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (fx, x)
}

/// Best al-hexagon over a uniform `sigma` grid with `samples` points.
pub fn moduli_maximum(p: f64, samples: usize) -> Result<ModuliPoint> {
    let sp = check_sigma(p, 1.0)?;
    let n = samples.max(2);
    let mut best: Option<ModuliPoint> = None;
    for i in 0..n {
        let s = 1.0 + (sp - 1.0) * i as f64 / (n - 1) as f64;
        let pt = moduli_point(p, s.min(sp))?;
        if best.is_none_or(|b| pt.delta > b.delta) {
            best = Some(pt);
        }
    }
    Ok(best.expect("at least two samples"))
}

/// Covering density `V(D_p) / gamma` of the lattice covering built on a
/// hexagon of area `gamma`.
pub fn covering_density(p: f64, gamma: f64) -> Result<f64> {
    density_ratio(volume(p)?, gamma)
}

pub fn density_ratio(volume: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain("gamma", gamma, "gamma > 0"));
    }
    Ok(volume / gamma)
}

/// Minimal area of inscribed hexagons with three boundary pairs: `3 Delta(2^m D_p)`.
pub fn inscribed_min_area(p: f64, m: u32) -> Result<f64> {
    Ok(3.0 * scaled_critical_determinant(p, m)?)
}

/// Minimal area of circumscribed hexagons: `4 Delta(2^m D_p)`.
pub fn circumscribed_min_area(p: f64, m: u32) -> Result<f64> {
    Ok(4.0 * scaled_critical_determinant(p, m)?)
}

/// Hexagon cut out by the tangent lines to `D_p` at the six shell points.
pub fn circumscribed_hexagon(p: f64, shell: &ShellSet) -> Result<HexagonReport> {
    check_p(p)?;
    let normals = shell.points.map(|q| {
        Vec2::new(
            q.x.abs().powf(p - 1.0).copysign(q.x),
            q.y.abs().powf(p - 1.0).copysign(q.y),
        )
    });
    let offsets: Vec<f64> = normals
        .iter()
        .zip(&shell.points)
        .map(|(n, q)| n.dot(*q))
        .collect();
    let mut verts = [Vec2::default(); 6];
    for i in 0..6 {
        let j = (i + 1) % 6;
        let (n1, n2) = (normals[i], normals[j]);
        let det = n1.cross(n2);
        if det.abs() < 1e-12 {
            return Err(Error::Degenerate(format!(
                "tangent lines at shell points {i} and {j} are parallel"
            )));
        }
        verts[i] = Vec2::new(
            (offsets[i] * n2.y - offsets[j] * n1.y) / det,
            (n1.x * offsets[j] - n2.x * offsets[i]) / det,
        );
    }
    Ok(HexagonReport::new(verts, HexagonKind::Circumscribed))
}
