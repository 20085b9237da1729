//! Genus of the curves `x^(2n) + y^(2n) = 1`, the Euler characteristic form
//! of Riemann-Roch, and the right-continuous ceiling used on the arithmetic side.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveGenus {
    pub n: u64,
    pub genus: u64,
}

impl CurveGenus {
    pub fn new(n: u64) -> Result<Self> {
        Ok(CurveGenus {
            n,
            genus: genus(n)?,
        })
    }
}

/// `(2n - 1)(n - 1)`, the genus of a smooth plane curve of degree `2n`.
pub fn genus(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::domain("n", n as f64, "n >= 1"));
    }
    (2 * n - 1)
        .checked_mul(n - 1)
        .ok_or_else(|| Error::domain("n", n as f64, "genus must fit in 64 bits"))
}

/// `l(D) - l(K - D) = deg D + 1 - g`.
pub fn rr_euler(deg: i64, g: i64) -> Result<i64> {
    if g < 0 {
        return Err(Error::domain("g", g as f64, "g >= 0"));
    }
    Ok(deg + 1 - g)
}

/// Ceiling for positive non-integers, `-ceil(-x)` for negative non-integers,
/// extended to the integers by right-continuity: `k + 1` for `k >= 0`, and
/// `k` for `k < 0`.
pub fn ceil_prime(x: f64) -> Result<i64> {
    if !x.is_finite() {
        return Err(Error::domain("x", x, "finite"));
    }
    let k = x.floor();
    let out = if x >= 0.0 {
        k + 1.0
    } else if x == k {
        k
    } else {
        -(-x).ceil()
    };
    Ok(out as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArakelovDegree {
    pub deg: f64,
    /// `deg / log 2`
    pub deg2: f64,
}

impl ArakelovDegree {
    pub fn new(deg: f64) -> Result<Self> {
        if !deg.is_finite() {
            return Err(Error::domain("deg", deg, "finite"));
        }
        Ok(ArakelovDegree {
            deg,
            deg2: deg / LN_2,
        })
    }
}

/// `ceil'(deg / log 2)`.
pub fn rr_arakelov_rhs(deg: f64) -> Result<i64> {
    ceil_prime(ArakelovDegree::new(deg)?.deg2)
}
