//! Shared inputs for the criterion benchmarks.

/// Exponents spanning every regime: near 1, below 2, the Davis window, large.
pub const EXPONENTS: [f64; 5] = [1.05, 1.5, 2.3, 3.0, 10.0];
