//! Exact algebra of the degenerate genus-three hyperelliptic sigma function.
//!
//! At the degenerate curve `y² = 4x⁷` the sigma function becomes the Schur
//! polynomial `S(u) = u1u3 − u2² − u1³u2/3 + u1⁶/45`, and the ring of abelian
//! functions with poles on the theta divisor becomes the ring `A₀` of fractions
//! `num / S^k`. Everything here is exact rational arithmetic.
//!
//! - [`poly`], [`scalar`], [`linalg`]: sparse polynomials, exact scalars, exact rank.
//! - [`schur`]: `p_n(T)`, Jacobi–Trudi determinants, `S(u)`.
//! - [`sigma`]: elements of `A₀`, `ζ`, `℘`, minors, the addition formula.
//! - [`qseries`]: graded dimensions as truncated `q`-series.
//! - [`basis`]: the explicit KP-graded basis and per-degree rank certificates.
//! - [`koszul`]: the complex `𝒟 ⊗ W^•` and its evaluation into `A₀`.
//! - [`matrix_model`]: the 2×2 matrix `L(x)` and the invariant vector fields.
//! - [`local_form`]: the formal normal form `z1² + z2² + z3²` at the double point.

pub mod basis;
pub mod fixtures;
pub mod koszul;
pub mod linalg;
pub mod local_form;
pub mod matrix_model;
pub mod poly;
pub mod qseries;
pub mod scalar;
pub mod schur;
pub mod sigma;
