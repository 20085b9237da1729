//! Lattice packings of `2^m D_p`: the packing predicate, optimal packing
//! lattices, densities and kissing numbers.
//!
//! A lattice packs `2^m D_p` iff it is admissible for `2^(m+1) D_p`, so an
//! optimal packing lattice is a critical lattice of the doubled domain,
//! i.e. `2^(m+1)` times a critical lattice of `D_p`.

use serde::{Deserialize, Serialize};

use crate::ball::{regime, scaled_critical_determinant, Ball};
use crate::error::{Error, Result};
use crate::lattice::{critical_lattice, is_admissible, LatticeBasis, LatticeKind};
use crate::numerics::{norm_p, Vec2};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingReport {
    pub ball: Ball,
    pub lattice: LatticeBasis,
    pub density: f64,
    /// determinant equals the critical determinant of the doubled domain
    pub optimal: bool,
    pub kissing: u32,
}

impl PackingReport {
    /// Report for an arbitrary packing lattice of `2^m D_p`.
    pub fn for_lattice(p: f64, m: u32, lattice: LatticeBasis) -> Result<Self> {
        let ball = Ball::new(p, m)?;
        if !is_packing_lattice(p, m, &lattice) {
            return Err(Error::Consistency(format!(
                "lattice with determinant {} does not pack 2^{m} D_{p}",
                lattice.abs_det()
            )));
        }
        let best = scaled_critical_determinant(p, m + 1)?;
        Ok(PackingReport {
            ball,
            density: ball.volume()? / lattice.abs_det(),
            optimal: (lattice.abs_det() - best).abs() <= 1e-9 * best,
            kissing: touching_points(p, m, &lattice).len() as u32,
            lattice,
        })
    }
}

fn doubled_radius(m: u32) -> f64 {
    f64::powi(2.0, m as i32 + 1)
}

/// Translates of `2^m D_p` by the lattice do not overlap.
pub fn is_packing_lattice(p: f64, m: u32, basis: &LatticeBasis) -> bool {
    is_admissible(p, doubled_radius(m), basis)
}

/// Which critical lattice the optimal packing is built on: the one through
/// `(1, 0)` in the Davis regime, the other one elsewhere.
pub fn optimal_lattice_kind(p: f64) -> Result<LatticeKind> {
    Ok(if regime(p)?.uses_lattice_0() {
        LatticeKind::Zero
    } else {
        LatticeKind::One
    })
}

/// `2^(m+1) Lambda_p`, with determinant `Delta(2^(m+1) D_p)`.
pub fn optimal_packing_lattice(p: f64, m: u32) -> Result<LatticeBasis> {
    critical_lattice(p, optimal_lattice_kind(p)?)?.scaled(doubled_radius(m))
}

/// `V(2^m D_p) / Delta(2^(m+1) D_p)`; independent of `m`.
pub fn packing_density(p: f64, m: u32) -> Result<f64> {
    Ok(Ball::new(p, m)?.volume()? / scaled_critical_determinant(p, m + 1)?)
}

fn touching_points(p: f64, m: u32, basis: &LatticeBasis) -> Vec<Vec2> {
    let r = doubled_radius(m);
    basis
        .points_within(p, r * (1.0 + 1e-9))
        .into_iter()
        .filter(|&xi| (norm_p(p, xi) - r).abs() <= 1e-9 * r)
        .collect()
}

/// Number of translates touching the central body in the optimal packing.
pub fn kissing_number(p: f64, m: u32) -> Result<u32> {
    let basis = optimal_packing_lattice(p, m)?;
    Ok(touching_points(p, m, &basis).len() as u32)
}

pub fn packing_report(p: f64, m: u32) -> Result<PackingReport> {
    PackingReport::for_lattice(p, m, optimal_packing_lattice(p, m)?)
}

/// Outcome of probing lattices near the optimal packing lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationSummary {
    pub candidates: usize,
    /// perturbed lattices with determinant below the optimum
    pub smaller_det: usize,
    /// of those, how many still pack (should be zero)
    pub violations: usize,
}

/// Applies `I + eps E` for every nonzero `E in {-1, 0, 1}^(2x2)` and
/// `eps in {1e-2, 1e-3, 1e-4}` to the optimal packing lattice and checks
/// that no perturbed lattice with a smaller determinant still packs.
pub fn perturbation_search(p: f64, m: u32) -> Result<PerturbationSummary> {
    let base = optimal_packing_lattice(p, m)?;
    let det = base.abs_det();
    let mut summary = PerturbationSummary {
        candidates: 0,
        smaller_det: 0,
        violations: 0,
    };
    let apply = |e: [f64; 4], w: Vec2, eps: f64| {
        Vec2::new(
            w.x + eps * (e[0] * w.x + e[1] * w.y),
            w.y + eps * (e[2] * w.x + e[3] * w.y),
        )
    };
    for eps in [1e-2, 1e-3, 1e-4] {
        for code in 1..81 {
            let e = [0, 1, 2, 3].map(|k| ((code / 3_i32.pow(k)) % 3 - 1) as f64);
            let Ok(cand) = LatticeBasis::new(apply(e, base.u(), eps), apply(e, base.v(), eps))
            else {
                continue;
            };
            summary.candidates += 1;
            if cand.abs_det() < det * (1.0 - 1e-6) {
                summary.smaller_det += 1;
                if is_packing_lattice(p, m, &cand) {
                    summary.violations += 1;
                }
            }
        }
    }
    Ok(summary)
}
