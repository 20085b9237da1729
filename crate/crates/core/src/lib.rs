//! Arithmetic and geometric invariants of planar Minkowski balls
//! `D_p = { (x, y) : |x|^p + |y|^p < 1 }`.
//!
//! The crate computes critical lattices and critical determinants, optimal
//! lattice packings, the hexagon moduli surface used for lattice coverings,
//! lattice shells and kissing numbers, and the finite matroids carried by
//! those shells. Every closed-form value is paired with a brute-force check
//! (lattice enumeration, hexagon search, exhaustive axiom checking) so the
//! formulas can be audited numerically.
//!
//! Modules are layered bottom-up:
//!
//! * [`numerics`]: gamma function, bracketed root finding, p-norms.
//! * [`ball`]: `sigma_p`, `tau_p`, critical determinants, the Davis constant.
//! * [`lattice`]: critical lattices, shells, admissibility oracle.
//! * [`packing`]: packing predicates, optimal packing lattices, kissing numbers.
//! * [`covering`]: moduli surface of inscribed hexagons, covering bounds.
//! * [`matroid`]: finite matroids and metrized shell matroids.
//! * [`curves`]: genus / Riemann-Roch arithmetic.

pub mod ball;
pub mod covering;
pub mod curves;
pub mod error;
pub mod lattice;
pub mod matroid;
pub mod numerics;
pub mod packing;

pub use ball::{Ball, CriticalData, Regime};
pub use covering::{CoveringBounds, HexagonKind, HexagonReport, ModuliPoint};
pub use error::{Error, Result};
pub use lattice::{LatticeBasis, LatticeKind, ShellSet};
pub use matroid::{FiniteMatroid, MetrizedMatroid, ShellReading};
pub use numerics::{Exponent, Tolerance, Vec2};
pub use packing::PackingReport;
