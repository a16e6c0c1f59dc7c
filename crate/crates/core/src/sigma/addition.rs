//! The two-point addition formula for `S`, cleared of denominators.
//!
//! With `n_ij = S_i S_j − S S_ij` (so `℘_ij = n_ij / S²`), put
//! `D_ij = n_ij(v) S(u)² − n_ij(u) S(v)² = (℘_ij(v) − ℘_ij(u)) S(u)² S(v)²`.
//! Multiplying the identity through by `S(u)⁴ S(v)⁴` gives
//!
//! `S(u+v) S(u−v) S(u)² S(v)² = D13 D22 − D13² − D23 D12 + D33 D11`.

use std::collections::BTreeMap;

use crate::poly::{Alphabet, UPoly};
use crate::schur::degenerate_sigma;

fn bind(f: impl Fn(usize) -> UPoly) -> BTreeMap<String, UPoly> {
    (0..3).map(|i| (format!("u{}", i + 1), f(i))).collect()
}

/// Left and right sides of the cleared identity, over `u1..u3, v1..v3`.
pub fn baker_addition_sides() -> (UPoly, UPoly) {
    let uv = Alphabet::uv();
    let s = degenerate_sigma();
    let var = |i| UPoly::var_index(&uv, i);
    let at_u = bind(var);
    let at_v = bind(|i| var(i + 3));
    let at_sum = bind(|i| &var(i) + &var(i + 3));
    let at_diff = bind(|i| &var(i) - &var(i + 3));
    let sub = |p: &UPoly, b: &BTreeMap<String, UPoly>| p.substitute(&uv, b).expect("bindings cover u1..u3");

    let su = sub(&s, &at_u);
    let sv = sub(&s, &at_v);
    let ds: Vec<UPoly> = (0..3).map(|i| s.derive_index(i)).collect();
    let n = |i: usize, j: usize| &(&ds[i] * &ds[j]) - &(&s * &ds[i].derive_index(j));
    let su2 = &su * &su;
    let sv2 = &sv * &sv;
    let d = |i: usize, j: usize| {
        let nij = n(i - 1, j - 1);
        &(&sub(&nij, &at_v) * &su2) - &(&sub(&nij, &at_u) * &sv2)
    };

    let lhs = &(&(&sub(&s, &at_sum) * &sub(&s, &at_diff)) * &su2) * &sv2;
    let d13 = d(1, 3);
    let rhs = &(&(&(&d13 * &d(2, 2)) - &(&d13 * &d13)) - &(&d(2, 3) * &d(1, 2))) + &(&d(3, 3) * &d(1, 1));
    (lhs, rhs)
}

/// `lhs − rhs` of [`baker_addition_sides`]; the zero polynomial when the formula holds.
pub fn baker_addition_residual() -> UPoly {
    let (lhs, rhs) = baker_addition_sides();
    &lhs - &rhs
}
