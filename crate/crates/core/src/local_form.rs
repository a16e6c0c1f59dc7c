//! Formal normal form at the double point: coordinates `z1, z2, z3` with
//! `S = z1² + z2² + z3²` up to a chosen order, built from truncated power series.
//!
//! After `u1 = x1 + i x2, u2 = i x3, u3 = x1 − i x2` the quadratic part of `S`
//! is `x1² + x2² + x3²`. The cubic-and-higher tail is grouped as
//! `x1² G1 + x2² G2 + x3² G3 + C x1 x2 x3` (each monomial goes to the lowest `i`
//! whose exponent is at least 2), then
//!
//! - `X_i = x_i √(1 + G_i)` and `K = C · Π (1 + G_i)^{−1/2}`,
//! - `z1 = X1 + (K/2) X2 X3`, `z2 = X2 √(1 − K² X3² / 4)`, `z3 = X3`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::rank_field;
use crate::poly::{Alphabet, Monomial, MultiPoly, UPoly};
use crate::scalar::{rat, GaussRational, Rational, Scalar};

pub type XSeriesPoly = MultiPoly<GaussRational>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LocalFormError {
    #[error("series has constant term {0}; expected 1")]
    NotUnitConstant(String),
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("substituted series must have zero constant term")]
    NonzeroConstantInSubstitution,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(u32, u32),
    #[error("input has a nonzero constant or linear part")]
    NotADoublePoint,
    #[error("degenerate quadratic part: rank {0} < 3")]
    DegenerateQuadratic(usize),
    #[error("quadratic part has full rank but is not x1² + x2² + x3²: {0}")]
    UnsupportedQuadratic(String),
}

/// Power series in `x1, x2, x3` over `ℚ(i)`, exact modulo total degree `order + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries3 {
    poly: XSeriesPoly,
    order: u32,
}

impl TruncSeries3 {
    /// Drops every term above `order`.
    pub fn new(poly: &XSeriesPoly, order: u32) -> Self {
        assert!(poly.alphabet() == &Alphabet::x(), "series live over x1, x2, x3");
        let terms = poly
            .terms()
            .filter(|(m, _)| m.total_degree() <= order)
            .map(|(m, c)| (m.clone(), c.clone()));
        TruncSeries3 {
            poly: XSeriesPoly::from_terms(&Alphabet::x(), terms),
            order,
        }
    }

    pub fn zero(order: u32) -> Self {
        Self::new(&XSeriesPoly::zero(&Alphabet::x()), order)
    }

    pub fn constant(c: GaussRational, order: u32) -> Self {
        Self::new(&XSeriesPoly::constant(&Alphabet::x(), c), order)
    }

    pub fn one(order: u32) -> Self {
        Self::constant(GaussRational::one(), order)
    }

    /// `x_{i+1}`.
    pub fn var(i: usize, order: u32) -> Self {
        Self::new(&XSeriesPoly::var_index(&Alphabet::x(), i), order)
    }

    pub fn poly(&self) -> &XSeriesPoly {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_term(&self) -> GaussRational {
        self.poly.constant_term()
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> XSeriesPoly {
        XSeriesPoly::from_terms(
            &Alphabet::x(),
            self.poly
                .terms()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn check(&self, o: &Self) -> Result<(), LocalFormError> {
        if self.order == o.order {
            Ok(())
        } else {
            Err(LocalFormError::OrderMismatch(self.order, o.order))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("matching orders");
        TruncSeries3 {
            poly: &self.poly + &o.poly,
            order: self.order,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o).expect("matching orders");
        TruncSeries3 {
            poly: &self.poly - &o.poly,
            order: self.order,
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        TruncSeries3 {
            poly: self.poly.scale(c),
            order: self.order,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o).expect("matching orders");
        TruncSeries3 {
            poly: mul_truncated(&self.poly, &o.poly, self.order),
            order: self.order,
        }
    }

    /// `1 / self`, degree by degree: `y_d = −(Σ_{e=1}^d s_e y_{d−e}) / s_0`.
    pub fn inverse(&self) -> Result<Self, LocalFormError> {
        let s0 = self.constant_term();
        let inv0 = s0.inverse().ok_or(LocalFormError::NotInvertible)?;
        let s: Vec<XSeriesPoly> = (0..=self.order).map(|d| self.component(d)).collect();
        let mut y = vec![XSeriesPoly::constant(&Alphabet::x(), inv0.clone())];
        for d in 1..=self.order as usize {
            let mut acc = XSeriesPoly::zero(&Alphabet::x());
            for e in 1..=d {
                if !s[e].is_zero() && !y[d - e].is_zero() {
                    acc = &acc + &(&s[e] * &y[d - e]);
                }
            }
            y.push(acc.scale(&-inv0.clone()));
        }
        Ok(Self::from_components(y, self.order))
    }

    /// Square root of a series with constant term 1:
    /// `y_0 = 1`, `2 y_d = s_d − Σ_{e=1}^{d−1} y_e y_{d−e}`.
    pub fn sqrt(&self) -> Result<Self, LocalFormError> {
        let s0 = self.constant_term();
        if !s0.is_one() {
            return Err(LocalFormError::NotUnitConstant(s0.to_string()));
        }
        let half = GaussRational::from(rat(1, 2));
        let mut y = vec![XSeriesPoly::one(&Alphabet::x())];
        for d in 1..=self.order as usize {
            let mut acc = self.component(d as u32);
            for e in 1..d {
                if !y[e].is_zero() && !y[d - e].is_zero() {
                    acc = &acc - &(&y[e] * &y[d - e]);
                }
            }
            y.push(acc.scale(&half));
        }
        Ok(Self::from_components(y, self.order))
    }

    fn from_components(parts: Vec<XSeriesPoly>, order: u32) -> Self {
        let sum = parts
            .into_iter()
            .fold(XSeriesPoly::zero(&Alphabet::x()), |acc, p| &acc + &p);
        Self::new(&sum, order)
    }

    /// `self(g1, g2, g3)`; each `g_i` must have zero constant term.
    pub fn compose(&self, g: &[TruncSeries3; 3]) -> Result<Self, LocalFormError> {
        for gi in g {
            self.check(gi)?;
            if !gi.constant_term().is_zero() {
                return Err(LocalFormError::NonzeroConstantInSubstitution);
            }
        }
        let mut powers: [Vec<TruncSeries3>; 3] = Default::default();
        let mut out = Self::zero(self.order);
        for (m, c) in self.poly.terms() {
            let mut term = Self::constant(c.clone(), self.order);
            for (i, &e) in m.exponents().iter().enumerate() {
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Self::one(self.order));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&g[i]);
                    cache.push(next);
                }
                if e > 0 {
                    term = term.mul(&cache[e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Canonical text of the truncated polynomial.
    pub fn canonical(&self) -> String {
        self.poly.canonical()
    }
}

fn mul_truncated(a: &XSeriesPoly, b: &XSeriesPoly, order: u32) -> XSeriesPoly {
    let mut acc: HashMap<Monomial, GaussRational> = HashMap::new();
    let bt: Vec<(&Monomial, &GaussRational, u32)> = b.terms().map(|(m, c)| (m, c, m.total_degree())).collect();
    for (m1, c1) in a.terms() {
        let d1 = m1.total_degree();
        for (m2, c2, d2) in &bt {
            if d1 + d2 > order {
                continue;
            }
            let e = acc.entry(m1.mul(m2)).or_insert_with(GaussRational::zero);
            *e = e.clone() + c1.clone() * (*c2).clone();
        }
    }
    XSeriesPoly::from_terms(&Alphabet::x(), acc)
}

/// `u1 → x1 + i x2, u2 → i x3, u3 → x1 − i x2`.
pub fn to_local_coordinates(p: &UPoly) -> XSeriesPoly {
    let x = Alphabet::x();
    let var = |i| XSeriesPoly::var_index(&x, i);
    let i = XSeriesPoly::constant(&x, GaussRational::i());
    let bindings: BTreeMap<String, XSeriesPoly> = [
        ("u1".to_string(), &var(0) + &(&i * &var(1))),
        ("u2".to_string(), &i * &var(2)),
        ("u3".to_string(), &var(0) - &(&i * &var(1))),
    ]
    .into_iter()
    .collect();
    // Move to the x alphabet by substituting into a Gaussian copy of p.
    let pg: MultiPoly<GaussRational> = p.map_coeffs(|c| GaussRational::from(c.clone()));
    pg.substitute(&x, &bindings).expect("p is a polynomial in u1, u2, u3")
}

/// The tail of a series split into the three square channels and the `x1x2x3` channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Grouping {
    pub g: [TruncSeries3; 3],
    pub c: TruncSeries3,
}

impl Grouping {
    /// `x1²(1+G1) + x2²(1+G2) + x3²(1+G3) + C x1x2x3`.
    pub fn resum(&self) -> TruncSeries3 {
        let n = self.c.order();
        let mut out = TruncSeries3::var(0, n)
            .mul(&TruncSeries3::var(1, n))
            .mul(&TruncSeries3::var(2, n))
            .mul(&self.c);
        for i in 0..3 {
            let xi = TruncSeries3::var(i, n);
            out = out.add(&xi.mul(&xi).mul(&TruncSeries3::one(n).add(&self.g[i])));
        }
        out
    }
}

/// Splits the terms of degree ≥ 3, sending each monomial to the lowest `x_i` with
/// exponent ≥ 2; monomials with every exponent ≤ 1 go to the `x1x2x3` channel.
pub fn group_tail(tail: &TruncSeries3) -> Grouping {
    let n = tail.order();
    let x = Alphabet::x();
    let mut g: [Vec<(Monomial, GaussRational)>; 3] = Default::default();
    let mut c = Vec::new();
    for (m, coef) in tail.poly().terms() {
        let mut e = m.exponents().to_vec();
        match (0..3).find(|&i| e[i] >= 2) {
            Some(i) => {
                e[i] -= 2;
                g[i].push((Monomial::from_exponents(e), coef.clone()));
            }
            None => {
                assert!(e.iter().all(|&v| v == 1), "tail terms have degree ≥ 3");
                c.push((Monomial::from_exponents(vec![0, 0, 0]), coef.clone()));
            }
        }
    }
    let series = |v: Vec<(Monomial, GaussRational)>| TruncSeries3::new(&XSeriesPoly::from_terms(&x, v), n);
    let [g0, g1, g2] = g;
    Grouping {
        g: [series(g0), series(g1), series(g2)],
        c: series(c),
    }
}

/// New coordinates and the certified residual.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateChange {
    pub z: [TruncSeries3; 3],
    /// `F − (z1² + z2² + z3²)` modulo degree `order + 1`.
    pub residual: TruncSeries3,
}

impl CoordinateChange {
    /// The Jacobian of `z` at the origin is invertible.
    pub fn linear_part_invertible(&self) -> bool {
        let m: Vec<Vec<GaussRational>> = self
            .z
            .iter()
            .map(|zi| {
                let lin = zi.component(1);
                (0..3)
                    .map(|j| {
                        let mut e = vec![0; 3];
                        e[j] = 1;
                        lin.coeff(&Monomial::from_exponents(e))
                    })
                    .collect()
            })
            .collect();
        rank_field(m) == 3
    }
}

fn quadratic_matrix(q: &XSeriesPoly) -> Vec<Vec<GaussRational>> {
    let half = GaussRational::from(rat(1, 2));
    let mut m = vec![vec![GaussRational::zero(); 3]; 3];
    for (mono, c) in q.terms() {
        let e = mono.exponents();
        let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c.clone();
        } else {
            m[i][j] = c.clone() * half.clone();
            m[j][i] = c.clone() * half.clone();
        }
    }
    m
}

/// Normal form of a series already in `x` coordinates.
pub fn normalize_series(f: &TruncSeries3) -> Result<CoordinateChange, LocalFormError> {
    let n = f.order();
    if !f.component(0).is_zero() || !f.component(1).is_zero() {
        return Err(LocalFormError::NotADoublePoint);
    }
    let q = f.component(2);
    let rank = rank_field(quadratic_matrix(&q));
    if rank < 3 {
        return Err(LocalFormError::DegenerateQuadratic(rank));
    }
    let x = |i| TruncSeries3::var(i, n);
    let standard = x(0).mul(&x(0)).add(&x(1).mul(&x(1))).add(&x(2).mul(&x(2)));
    if TruncSeries3::new(&q, n) != standard {
        return Err(LocalFormError::UnsupportedQuadratic(q.canonical()));
    }
    let grouping = group_tail(&f.sub(&standard));
    let one = TruncSeries3::one(n);
    let mut xs = Vec::new();
    let mut scale = one.clone();
    for i in 0..3 {
        let root = one.add(&grouping.g[i]).sqrt()?;
        xs.push(x(i).mul(&root));
        scale = scale.mul(&root.inverse()?);
    }
    let k = grouping.c.mul(&scale);
    let half = GaussRational::from(rat(1, 2));
    let z1 = xs[0].add(&k.scale(&half).mul(&xs[1]).mul(&xs[2]));
    let k2x3 = k.mul(&k).mul(&xs[2]).mul(&xs[2]);
    let z2 = xs[1].mul(&one.sub(&k2x3.scale(&GaussRational::from(rat(1, 4)))).sqrt()?);
    let z3 = xs[2].clone();
    let sum_sq = z1.mul(&z1).add(&z2.mul(&z2)).add(&z3.mul(&z3));
    Ok(CoordinateChange {
        residual: f.sub(&sum_sq),
        z: [z1, z2, z3],
    })
}

/// Normal form of a polynomial in `u1, u2, u3` through total degree `order`.
pub fn normalize(sigma_in: &UPoly, order: u32) -> Result<CoordinateChange, LocalFormError> {
    normalize_series(&TruncSeries3::new(&to_local_coordinates(sigma_in), order))
}

/// A few random monomials of degree in `3..=max_degree` and weight below −6,
/// with small rational coefficients, reproducible from `seed`.
pub fn seeded_perturbation(seed: u64, max_degree: u32) -> UPoly {
    let u = Alphabet::u();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = UPoly::zero(&u);
    let wanted = rng.gen_range(2..=4);
    let mut added = 0;
    while added < wanted {
        let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=max_degree)).collect();
        let deg: u32 = e.iter().sum();
        let weight = -((e[0] + 3 * e[1] + 5 * e[2]) as i64);
        if !(3..=max_degree).contains(&deg) || weight >= -6 {
            continue;
        }
        let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=5);
        p.add_term(Monomial::from_exponents(e), Rational::new(num.into(), den.into()));
        added += 1;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::upoly;
    use crate::schur::degenerate_sigma;
    use proptest::prelude::*;

    fn x(i: usize, n: u32) -> TruncSeries3 {
        TruncSeries3::var(i, n)
    }

    fn g(a: i64, b: i64) -> GaussRational {
        GaussRational::new(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn linear_change_gives_sum_of_squares() {
        let q = to_local_coordinates(&upoly("1 * u1 u3 + -1 * u2^2"));
        let n = 4;
        let want = x(0, n).mul(&x(0, n)).add(&x(1, n).mul(&x(1, n))).add(&x(2, n).mul(&x(2, n)));
        assert_eq!(TruncSeries3::new(&q, n), want);
    }

    #[test]
    fn sqrt_examples() {
        let n = 6;
        assert_eq!(TruncSeries3::one(n).sqrt().unwrap(), TruncSeries3::one(n));
        let t = x(1, n);
        let sq = TruncSeries3::one(n).add(&t.scale(&g(2, 0))).add(&t.mul(&t));
        assert_eq!(sq.sqrt().unwrap(), TruncSeries3::one(n).add(&t));
        assert!(matches!(t.sqrt(), Err(LocalFormError::NotUnitConstant(_))));
        assert_eq!(t.inverse(), Err(LocalFormError::NotInvertible));
    }

    #[test]
    fn already_normal() {
        let n = 8;
        let f = x(0, n).mul(&x(0, n)).add(&x(1, n).mul(&x(1, n))).add(&x(2, n).mul(&x(2, n)));
        let ch = normalize_series(&f).unwrap();
        for i in 0..3 {
            assert_eq!(ch.z[i], x(i, n));
        }
        assert!(ch.residual.is_zero());
    }

    #[test]
    fn sigma_normal_form() {
        let ch = normalize(&degenerate_sigma(), 12).unwrap();
        assert!(ch.residual.is_zero());
        assert!(ch.linear_part_invertible());
    }

    #[test]
    fn perturbed_inputs() {
        for seed in 0..3 {
            let p = &degenerate_sigma() + &seeded_perturbation(seed, 7);
            let ch = normalize(&p, 9).unwrap();
            assert!(ch.residual.is_zero(), "seed {seed}");
        }
        assert_eq!(seeded_perturbation(7, 8), seeded_perturbation(7, 8));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(normalize(&upoly("1 * u1 u3"), 6).unwrap_err(), LocalFormError::DegenerateQuadratic(2));
        assert_eq!(normalize(&upoly("1 * u1 + 1 * u1 u3 + -1 * u2^2"), 6).unwrap_err(), LocalFormError::NotADoublePoint);
        assert!(matches!(
            normalize(&upoly("2 * u1 u3 + -1 * u2^2"), 6),
            Err(LocalFormError::UnsupportedQuadratic(_))
        ));
    }

    #[test]
    fn grouping_resums() {
        let n = 10;
        let f = TruncSeries3::new(&to_local_coordinates(&degenerate_sigma()), n);
        let q = f.component(2);
        let tail = f.sub(&TruncSeries3::new(&q, n));
        let grp = group_tail(&tail);
        for gi in &grp.g {
            assert!(gi.constant_term().is_zero());
        }
        assert_eq!(grp.resum(), f);
    }

    fn arb_series(n: u32) -> impl Strategy<Value = TruncSeries3> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..4, -2i64..3), 1..6).prop_map(move |terms| {
            let t = terms.into_iter().map(|((a, b, c), re, im)| {
                (Monomial::from_exponents(vec![a, b, c]), GaussRational::new(rat(re, 1), rat(im, 2)))
            });
            TruncSeries3::new(&XSeriesPoly::from_terms(&Alphabet::x(), t), n)
        })
    }

    fn without_constant(s: TruncSeries3) -> TruncSeries3 {
        s.sub(&TruncSeries3::constant(s.constant_term(), s.order()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn sqrt_squares_back(s in arb_series(6)) {
            let one = TruncSeries3::one(6);
            let s = one.add(&without_constant(s));
            let r = s.sqrt().unwrap();
            prop_assert_eq!(r.mul(&r), s);
        }

        #[test]
        fn inverse_inverts(s in arb_series(6), c0 in 1i64..4) {
            let s = TruncSeries3::constant(g(c0, 1), 6).add(&without_constant(s));
            prop_assert_eq!(s.inverse().unwrap().mul(&s), TruncSeries3::one(6));
        }

        #[test]
        fn composition_is_a_ring_map(a in arb_series(5), b in arb_series(5),
                                     g0 in arb_series(5), g1 in arb_series(5), g2 in arb_series(5)) {
            let gs = [without_constant(g0), without_constant(g1), without_constant(g2)];
            let lhs = a.mul(&b).compose(&gs).unwrap();
            let rhs = a.compose(&gs).unwrap().mul(&b.compose(&gs).unwrap());
            prop_assert_eq!(lhs, rhs);
            let id = [x(0, 5), x(1, 5), x(2, 5)];
            prop_assert_eq!(a.compose(&id).unwrap(), a);
        }
    }
}
