//! Minkowski balls `D_p` and dyadic domains `2^m D_p`: area, regime,
//! the constants `sigma_p` and `tau_p`, critical determinants and the
//! arithmetic Minkowski spheres.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gamma, solve_bracketed, Exponent, Tolerance};

/// The domain `2^m D_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub p: f64,
    pub m: u32,
}

impl Ball {
    pub fn new(p: f64, m: u32) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::domain("p", p, "p >= 1"));
        }
        Ok(Ball { p, m })
    }

    /// Linear dilation factor `2^m`.
    pub fn scale(&self) -> f64 {
        f64::powi(2.0, self.m as i32)
    }

    pub fn volume(&self) -> Result<f64> {
        Ok(self.scale() * self.scale() * volume(self.p)?)
    }

    pub fn critical_determinant(&self) -> Result<f64> {
        scaled_critical_determinant(self.p, self.m)
    }
}

/// Classification of `p` by which lattice is critical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `1 < p < 2`
    Minkowski,
    /// `2 <= p < p0`
    Davis,
    /// `p >= p0`
    ChebyshevMordell,
    /// the diamond `|x| + |y| < 1`
    LimitP1,
    /// the square `max(|x|, |y|) < 1`
    LimitPInf,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Minkowski => "Minkowski",
            Regime::Davis => "Davis",
            Regime::ChebyshevMordell => "ChebyshevMordell",
            Regime::LimitP1 => "LimitP1",
            Regime::LimitPInf => "LimitPInf",
        }
    }

    /// Whether the critical lattice is the one through `(1, 0)`.
    pub fn uses_lattice_0(self) -> bool {
        matches!(self, Regime::Davis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub p: f64,
    pub sigma_p: f64,
    pub tau_p: f64,
    /// determinant of the lattice through `(1, 0)`
    pub delta0: f64,
    /// determinant of the lattice through `(-2^(-1/p), 2^(-1/p))`
    pub delta1: f64,
    pub delta_crit: f64,
    pub regime: Regime,
}

fn fine_tolerance() -> Tolerance {
    Tolerance {
        abs_tol: 1e-16,
        rel_tol: 1e-16,
        ..Tolerance::default()
    }
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("p", p, "1 <= p < inf"))
    }
}

/// Area of `D_p`: `4 Gamma(1 + 1/p)^2 / Gamma(1 + 2/p)`; 4 for the square.
pub fn volume(p: impl Into<Exponent>) -> Result<f64> {
    match p.into().validate()? {
        Exponent::Infinity => Ok(4.0),
        Exponent::Finite(p) => {
            let g1 = gamma(1.0 + 1.0 / p)?;
            Ok(4.0 * g1 * g1 / gamma(1.0 + 2.0 / p)?)
        }
    }
}

/// `sigma_p = (2^p - 1)^(1/p)`.
pub fn sigma(p: f64) -> Result<f64> {
    check_p(p)?;
    // written as 2 (1 - 2^-p)^(1/p) so large p does not overflow
    Ok(2.0 * (1.0 - f64::powf(2.0, -p)).powf(1.0 / p))
}

/// The root `tau_p in [0, 1)` of `2 (1 - tau)^p = 1 + tau^p`.
pub fn tau(p: f64) -> Result<f64> {
    check_p(p)?;
    solve_bracketed(
        |t| 2.0 * (1.0 - t).powf(p) - 1.0 - t.powf(p),
        0.0,
        1.0,
        &fine_tolerance(),
    )
}

/// `Delta^(0)_p = sigma_p / 2`.
pub fn delta0(p: f64) -> Result<f64> {
    Ok(0.5 * sigma(p)?)
}

/// `Delta^(1)_p = 4^(-1/p) (1 + tau_p) / (1 - tau_p)`.
pub fn delta1(p: f64) -> Result<f64> {
    let t = tau(p)?;
    Ok(f64::powf(4.0, -1.0 / p) * (1.0 + t) / (1.0 - t))
}

static DAVIS: OnceLock<Result<f64>> = OnceLock::new();

/// The Davis constant `p0 ~ 2.5725`, where `Delta^(0)_p = Delta^(1)_p`.
/// Computed once per process.
pub fn davis_constant() -> Result<f64> {
    DAVIS.get_or_init(compute_davis_constant).clone()
}

fn compute_davis_constant() -> Result<f64> {
    solve_bracketed(
        |p| match (delta0(p), delta1(p)) {
            (Ok(a), Ok(b)) => a - b,
            _ => f64::NAN,
        },
        2.57,
        2.58,
        &fine_tolerance(),
    )
}

pub fn regime(p: impl Into<Exponent>) -> Result<Regime> {
    match p.into().validate()? {
        Exponent::Infinity => Ok(Regime::LimitPInf),
        Exponent::Finite(1.0) => Ok(Regime::LimitP1),
        Exponent::Finite(p) if p < 2.0 => Ok(Regime::Minkowski),
        Exponent::Finite(p) if p < davis_constant()? => Ok(Regime::Davis),
        Exponent::Finite(_) => Ok(Regime::ChebyshevMordell),
    }
}

/// Both candidate critical determinants of `D_p` and the critical one.
///
/// The critical determinant is the smaller candidate: `Delta^(1)` on
/// `1 < p <= 2` and `p >= p0`, `Delta^(0)` on `2 <= p <= p0`.
pub fn critical_data(p: f64) -> Result<CriticalData> {
    check_p(p)?;
    let sigma_p = sigma(p)?;
    let tau_p = tau(p)?;
    let delta0 = 0.5 * sigma_p;
    let delta1 = f64::powf(4.0, -1.0 / p) * (1.0 + tau_p) / (1.0 - tau_p);
    Ok(CriticalData {
        p,
        sigma_p,
        tau_p,
        delta0,
        delta1,
        delta_crit: delta0.min(delta1),
        regime: regime(p)?,
    })
}

impl CriticalData {
    /// Limit record for the square `max(|x|, |y|) < 1`.
    pub fn at_infinity() -> Self {
        CriticalData {
            p: f64::INFINITY,
            sigma_p: 2.0,
            tau_p: 0.0,
            delta0: 1.0,
            delta1: 1.0,
            delta_crit: 1.0,
            regime: Regime::LimitPInf,
        }
    }
}

pub fn critical_determinant(p: f64) -> Result<f64> {
    Ok(critical_data(p)?.delta_crit)
}

/// `Delta(2^m D_p) = 4^m Delta(D_p)`.
pub fn scaled_critical_determinant(p: f64, m: u32) -> Result<f64> {
    Ok(f64::powi(4.0, m as i32) * critical_determinant(p)?)
}

fn floor_power(x: i64, c: f64) -> i64 {
    (x.unsigned_abs() as f64).powf(c).floor() as i64
}

/// Smallest coordinate bound `B` such that every integer vector with
/// `sum floor(|x_i|^c) = m` has `|x_i| <= B`.
pub fn arithmetic_sphere_box(c: f64, m: u64) -> i64 {
    let m = m as i64;
    let mut k = ((m + 1) as f64).powf(1.0 / c).floor() as i64;
    while floor_power(k + 1, c) <= m {
        k += 1;
    }
    while k > 0 && floor_power(k, c) > m {
        k -= 1;
    }
    k
}

const MAX_ENUMERATION: u64 = 100_000_000;

/// Number of integer vectors `x in Z^n`, `|x_i| <= bound`, with
/// `sum floor(|x_i|^c) = m`, counted by exhaustive enumeration.
pub fn count_arithmetic_sphere(n: usize, c: f64, m: u64, bound: i64) -> Result<u64> {
    if !(2..=4).contains(&n) {
        return Err(Error::domain("n", n as f64, "n in {2, 3, 4}"));
    }
    if !(c > 1.0 && c.is_finite()) {
        return Err(Error::domain("c", c, "c > 1"));
    }
    if bound < arithmetic_sphere_box(c, m).max(1) {
        return Err(Error::domain(
            "box",
            bound as f64,
            "box >= largest |x| with floor(|x|^c) <= m",
        ));
    }
    let side = (2 * bound + 1) as u64;
    if side
        .checked_pow(n as u32)
        .is_none_or(|total| total > MAX_ENUMERATION)
    {
        return Err(Error::domain("box", bound as f64, "(2 box + 1)^n <= 1e8"));
    }

    let weights: Vec<i64> = (-bound..=bound).map(|x| floor_power(x, c)).collect();
    let target = m as i64;
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        if idx.iter().map(|&i| weights[i]).sum::<i64>() == target {
            count += 1;
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == n {
                return Ok(count);
            }
            idx[k] += 1;
            if idx[k] < weights.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Scales each integer vector by `lambda^(-1/c)`, preserving order.
pub fn project_to_unit_sphere(points: &[Vec<i64>], c: f64, lambda: u64) -> Result<Vec<Vec<f64>>> {
    if !(c > 1.0 && c.is_finite()) {
        return Err(Error::domain("c", c, "c > 1"));
    }
    if lambda == 0 {
        return Err(Error::domain("lambda", 0.0, "lambda >= 1"));
    }
    let k = (lambda as f64).powf(-1.0 / c);
    Ok(points
        .iter()
        .map(|x| x.iter().map(|&xi| k * xi as f64).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const GRID: [f64; 9] = [1.1, 1.5, 2.0, 2.3, 2.5725, 3.0, 5.0, 10.0, 40.0];

    #[test]
    fn volume_examples() {
        assert!((volume(2.0).unwrap() - PI).abs() < 1e-13);
        assert!((volume(1.0).unwrap() - 2.0).abs() < 1e-13);
        assert!((volume(3.0).unwrap() - 3.533_277_500_570_9).abs() < 1e-10);
        assert_eq!(volume(Exponent::Infinity).unwrap(), 4.0);
        assert!(volume(0.9).is_err());
    }

    #[test]
    fn volume_increases() {
        let vs: Vec<f64> = (0..=70)
            .map(|i| volume(1.0 + 0.1 * i as f64).unwrap())
            .collect();
        assert!(vs.windows(2).all(|w| w[0] < w[1]));
        assert!(vs.iter().all(|&v| (2.0..=4.0).contains(&v)));
    }

    #[test]
    fn sigma_examples() {
        assert!((sigma(2.0).unwrap() - 3f64.sqrt()).abs() < 1e-14);
        assert!((sigma(3.0).unwrap() - 7f64.cbrt()).abs() < 1e-14);
        assert!((sigma(1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tau_examples() {
        assert!((tau(2.0).unwrap() - (2.0 - 3f64.sqrt())).abs() < 1e-14);
        assert!((tau(3.0).unwrap() - 0.20406).abs() < 5e-6);
        assert!((tau(1.0).unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn davis_constant_examples() {
        let p0 = davis_constant().unwrap();
        assert!(p0 > 2.57 && p0 < 2.58);
        assert!((p0 - 2.5725).abs() < 1e-3);
        assert!((delta0(p0).unwrap() - delta1(p0).unwrap()).abs() < 1e-10);
        assert_eq!(p0, davis_constant().unwrap());
    }

    #[test]
    fn davis_constant_concurrent_first_calls_agree() {
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| davis_constant().unwrap()))
            .collect();
        let vals: Vec<f64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(vals.iter().all(|v| (v - vals[0]).abs() < 1e-12));
    }

    #[test]
    fn critical_data_examples() {
        let d2 = critical_data(2.0).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!((d2.delta0 - h).abs() < 1e-12 && (d2.delta1 - h).abs() < 1e-12);

        let d3 = critical_data(3.0).unwrap();
        assert!((d3.delta1 - 0.952_969_840_068_263_7).abs() < 1e-12);
        assert!((d3.delta0 - 7f64.cbrt() / 2.0).abs() < 1e-14);
        assert_eq!(d3.delta_crit, d3.delta1);
        assert_eq!(d3.regime, Regime::ChebyshevMordell);

        let d = critical_data(2.3).unwrap();
        assert_eq!(d.delta_crit, d.delta0);
        assert_eq!(d.regime, Regime::Davis);
    }

    #[test]
    fn critical_branch_follows_regime() {
        // the critical determinant is the lattice the regime selects, and the
        // two branches agree at the seams
        let p0 = davis_constant().unwrap();
        for p in [1.05, 1.3, 1.7, 1.99, 2.0, 2.2, 2.5, p0, 2.6, 3.5, 8.0] {
            let d = critical_data(p).unwrap();
            let chosen = if d.regime.uses_lattice_0() {
                d.delta0
            } else {
                d.delta1
            };
            assert!((chosen - d.delta_crit).abs() < 1e-12, "p={p}");
        }
        let d = critical_data(p0).unwrap();
        assert!((d.delta0 - d.delta1).abs() < 1e-9);
    }

    #[test]
    fn deltas_cross_once_between_2_and_4() {
        let p0 = davis_constant().unwrap();
        for i in 1..200 {
            let p = 2.0 + 2.0 * i as f64 / 200.0;
            let diff = delta0(p).unwrap() - delta1(p).unwrap();
            if p < p0 - 1e-9 {
                assert!(diff < 0.0, "p={p}: {diff}");
            } else if p > p0 + 1e-9 {
                assert!(diff > 0.0, "p={p}: {diff}");
            }
        }
    }

    #[test]
    fn scaled_determinant_examples() {
        let h = 3f64.sqrt() / 2.0;
        assert!((scaled_critical_determinant(2.0, 0).unwrap() - h).abs() < 1e-12);
        assert!((scaled_critical_determinant(2.0, 1).unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        for p in GRID {
            let base = critical_determinant(p).unwrap();
            assert_eq!(scaled_critical_determinant(p, 0).unwrap(), base);
            for m in 0..10 {
                let a = scaled_critical_determinant(p, m).unwrap();
                let b = scaled_critical_determinant(p, m + 1).unwrap();
                assert!((b - 4.0 * a).abs() <= 1e-12 * b);
            }
        }
    }

    #[test]
    fn regime_examples() {
        assert_eq!(regime(1.5).unwrap(), Regime::Minkowski);
        assert_eq!(regime(2.0).unwrap(), Regime::Davis);
        assert_eq!(regime(3.0).unwrap(), Regime::ChebyshevMordell);
        assert_eq!(regime(1.0).unwrap(), Regime::LimitP1);
        assert_eq!(regime(Exponent::Infinity).unwrap(), Regime::LimitPInf);
        assert_eq!(
            regime(davis_constant().unwrap()).unwrap(),
            Regime::ChebyshevMordell
        );
        assert!(regime(0.5).is_err());
    }

    /// Independent nested loops over a cube; no odometer, no weight table.
    fn nested_count(n: usize, c: f64, m: i64, b: i64) -> u64 {
        let w = |x: i64| (x.abs() as f64).powf(c).floor() as i64;
        let mut count = 0;
        for x0 in -b..=b {
            for x1 in -b..=b {
                if n == 2 {
                    count += u64::from(w(x0) + w(x1) == m);
                    continue;
                }
                for x2 in -b..=b {
                    if n == 3 {
                        count += u64::from(w(x0) + w(x1) + w(x2) == m);
                        continue;
                    }
                    for x3 in -b..=b {
                        count += u64::from(w(x0) + w(x1) + w(x2) + w(x3) == m);
                    }
                }
            }
        }
        count
    }

    #[test]
    fn arithmetic_sphere_examples() {
        // floor(x^2) = 0 only for x = 0 over the integers
        assert_eq!(count_arithmetic_sphere(3, 2.0, 0, 1).unwrap(), 1);
        assert_eq!(count_arithmetic_sphere(3, 2.0, 1, 1).unwrap(), 6);
        assert_eq!(count_arithmetic_sphere(2, 3.0, 0, 1).unwrap(), 1);
        // sums of three squares equal to 5: permutations of (+-2, +-1, 0)
        assert_eq!(count_arithmetic_sphere(3, 2.0, 5, 2).unwrap(), 24);
    }

    #[test]
    fn arithmetic_sphere_matches_nested_loops() {
        for &(n, c) in &[(2usize, 1.5f64), (3, 2.0), (3, 2.5), (4, 1.7), (2, 3.0)] {
            for m in 0..25u64 {
                let b = arithmetic_sphere_box(c, m).max(1);
                let fast = count_arithmetic_sphere(n, c, m, b).unwrap();
                let slow = nested_count(n, c, m as i64, b + 1);
                assert_eq!(fast, slow, "n={n} c={c} m={m}");
            }
        }
    }

    #[test]
    fn arithmetic_sphere_rejects_small_box() {
        assert!(count_arithmetic_sphere(3, 2.0, 9, 2).is_err());
        assert!(count_arithmetic_sphere(5, 2.0, 1, 1).is_err());
    }

    #[test]
    fn projection_examples() {
        let out = project_to_unit_sphere(&[vec![1, 0, 0]], 2.0, 1).unwrap();
        assert_eq!(out, vec![vec![1.0, 0.0, 0.0]]);
        let out = project_to_unit_sphere(&[vec![2, 0, 0]], 2.0, 4).unwrap();
        assert!((out[0][0] - 1.0).abs() < 1e-15);
        let out = project_to_unit_sphere(&[vec![1, 1, 1]], 3.0, 3).unwrap();
        for v in &out[0] {
            assert!((v - 0.693_361_274_350_634_7).abs() < 1e-14);
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sigma_and_tau_residuals(p in 1.0f64..30.0) {
                let s = sigma(p).unwrap();
                let lhs = s.powf(p);
                let rhs = f64::powf(2.0, p) - 1.0;
                prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
                let t = tau(p).unwrap();
                prop_assert!((0.0..1.0).contains(&t));
                prop_assert!((2.0 * (1.0 - t).powf(p) - 1.0 - t.powf(p)).abs() <= 1e-12);
            }

            #[test]
            fn critical_is_minimum(p in 1.01f64..20.0) {
                let d = critical_data(p).unwrap();
                prop_assert!((d.delta_crit - d.delta0.min(d.delta1)).abs() <= 1e-12);
            }
        }
    }
}
