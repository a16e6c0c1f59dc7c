//! Sparse multivariate polynomials over exact scalars.
//!
//! Monomials are dense exponent vectors over a named [`Alphabet`]. Terms are kept
//! in a `BTreeMap` sorted by the fixed monomial order: lexicographic, comparing the
//! highest-indexed variable first (so `u3 > u2 > u1`). The last key is the leading
//! monomial.
//!
//! Variables named `u<i>` or `v<i>` carry weight `-(2i-1)`, `T<i>` carries `-i`;
//! other names are unweighted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::One;

use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operands live over different variable alphabets")]
    AlphabetMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` occurs but has no binding")]
    UnboundVariable(String),
    #[error("variable `{0}` has no assigned weight")]
    UnweightedVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

#[derive(Debug, PartialEq, Eq)]
struct AlphabetInner {
    names: Vec<String>,
    weights: Vec<Option<i64>>,
}

/// Ordered set of variable names with optional integer weights.
#[derive(Clone, Debug)]
pub struct Alphabet(Arc<AlphabetInner>);

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Alphabet {}

fn default_weight(name: &str) -> Option<i64> {
    let (head, idx) = name.split_at(1);
    let i: i64 = idx.parse().ok().filter(|&i| i >= 1)?;
    match head {
        "u" | "v" => Some(-(2 * i - 1)),
        "T" => Some(-i),
        _ => None,
    }
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let weights = names.iter().map(|n| default_weight(n)).collect();
        Alphabet(Arc::new(AlphabetInner { names, weights }))
    }

    /// `{u1, u2, u3}`, shared.
    pub fn u() -> Self {
        static U: OnceLock<Alphabet> = OnceLock::new();
        U.get_or_init(|| Alphabet::new(&["u1", "u2", "u3"])).clone()
    }

    /// `{u1, u2, u3, v1, v2, v3}`.
    pub fn uv() -> Self {
        static UV: OnceLock<Alphabet> = OnceLock::new();
        UV.get_or_init(|| Alphabet::new(&["u1", "u2", "u3", "v1", "v2", "v3"]))
            .clone()
    }

    /// `{x1, x2, x3}`.
    pub fn x() -> Self {
        static X: OnceLock<Alphabet> = OnceLock::new();
        X.get_or_init(|| Alphabet::new(&["x1", "x2", "x3"])).clone()
    }

    /// `{T1, ..., Tn}`.
    pub fn t(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("T{i}")).collect();
        Alphabet::new(&names)
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn weight(&self, i: usize) -> Option<i64> {
        self.0.weights[i]
    }
}

/// Exponent vector over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    fn weight_in(&self, alphabet: &Alphabet) -> Result<i64, PolyError> {
        let mut w = 0;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let wi = alphabet
                .weight(i)
                .ok_or_else(|| PolyError::UnweightedVariable(alphabet.names()[i].clone()))?;
            w += wi * e as i64;
        }
        Ok(w)
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(alphabet.names()[i].clone()),
                _ => parts.push(format!("{}^{}", alphabet.names()[i], e)),
            }
        }
        parts.join(" ")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no zero coefficient is ever stored.
#[derive(Clone, Debug)]
pub struct MultiPoly<C> {
    alphabet: Alphabet,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(alphabet: &Alphabet) -> Self {
        MultiPoly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: &Alphabet, c: C) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(Monomial::one(alphabet.len()), c);
        p
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Self::constant(alphabet, C::one())
    }

    pub fn var(alphabet: &Alphabet, name: &str) -> Result<Self, PolyError> {
        let i = alphabet
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(alphabet, i))
    }

    pub fn var_index(alphabet: &Alphabet, i: usize) -> Self {
        let mut exps = vec![0; alphabet.len()];
        exps[i] = 1;
        Self::monomial(alphabet, Monomial(exps), C::one())
    }

    pub fn monomial(alphabet: &Alphabet, m: Monomial, c: C) -> Self {
        assert_eq!(m.0.len(), alphabet.len(), "monomial arity");
        let mut p = Self::zero(alphabet);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(alphabet: &Alphabet, terms: I) -> Self {
        let mut p = Self::zero(alphabet);
        for (m, c) in terms {
            assert_eq!(m.0.len(), alphabet.len(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.alphabet.len()))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_alphabet(&self, other: &Self) -> Result<(), PolyError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(PolyError::AlphabetMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_alphabet(other)?;
        let mut out = Self::zero(&self.alphabet);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alphabet);
        }
        MultiPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies by a single monomial `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alphabet);
        }
        MultiPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.alphabet);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to the variable at `i`.
    pub fn derive_index(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.alphabet);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            let k = C::from_rational(Rational::from_integer(e.into()));
            out.add_term(Monomial(exps), c.clone() * k);
        }
        out
    }

    pub fn derive(&self, var: &str) -> Result<Self, PolyError> {
        let i = self
            .alphabet
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derive_index(i))
    }

    /// Replaces every variable by its binding; all bindings live over `target`.
    /// A variable that occurs in `self` must be bound.
    pub fn substitute(
        &self,
        target: &Alphabet,
        bindings: &BTreeMap<String, MultiPoly<C>>,
    ) -> Result<Self, PolyError> {
        for b in bindings.values() {
            if b.alphabet != *target {
                return Err(PolyError::AlphabetMismatch);
            }
        }
        for name in bindings.keys() {
            if self.alphabet.index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
        }
        let n = self.alphabet.len();
        let mut powers: Vec<Vec<MultiPoly<C>>> = vec![Vec::new(); n];
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.alphabet.names()[i];
                let b = bindings
                    .get(name)
                    .ok_or_else(|| PolyError::UnboundVariable(name.clone()))?;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Self::one(target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * b;
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Multivariate division by a single divisor under the fixed monomial order.
    ///
    /// Returns `(q, r)` with `self = q·d + r` and no monomial of `r` divisible by the
    /// leading monomial of `d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.check_alphabet(d)?;
        let (lm, lc) = d.leading().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = lc.inverse().ok_or(PolyError::DivisionByZero)?;
        let mut p = self.clone();
        let mut q = Self::zero(&self.alphabet);
        let mut r = Self::zero(&self.alphabet);
        while let Some((m, c)) = p.terms.iter().next_back() {
            let (m, c) = (m.clone(), c.clone());
            if lm.divides(&m) {
                let t = lm.quotient_of(&m);
                let coef = c * lc_inv.clone();
                for (dm, dc) in &d.terms {
                    p.add_term(dm.mul(&t), -(dc.clone() * coef.clone()));
                }
                q.add_term(t, coef);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `self / d` when `d` divides `self` with zero remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.divrem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Splits into weight-homogeneous components.
    pub fn weight_split(&self) -> Result<BTreeMap<i64, Self>, PolyError> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let w = m.weight_in(&self.alphabet)?;
            out.entry(w)
                .or_insert_with(|| Self::zero(&self.alphabet))
                .add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Weight of a nonzero weight-homogeneous polynomial, `None` if zero or mixed.
    pub fn weight(&self) -> Result<Option<i64>, PolyError> {
        let split = self.weight_split()?;
        Ok(if split.len() == 1 {
            split.keys().next().copied()
        } else {
            None
        })
    }

    /// Splits into total-degree-homogeneous components.
    pub fn degree_split(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.total_degree())
                .or_insert_with(|| Self::zero(&self.alphabet))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(&self.alphabet);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Moves the polynomial to a larger alphabet containing every variable of `self`.
    pub fn embed(&self, target: &Alphabet) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .alphabet
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| PolyError::UnknownVariable(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Canonical text: terms from the leading monomial down, `c * x^a y^b` joined by ` + `.
    pub fn canonical(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    c.canonical()
                } else {
                    format!("{} * {}", c.canonical(), m.render(&self.alphabet))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl MultiPoly<Rational> {
    /// Parses the canonical text form (terms may come in any order).
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, PolyError> {
        let text = text.trim();
        let mut p = Self::zero(alphabet);
        if text == "0" {
            return Ok(p);
        }
        for frag in text.split(" + ") {
            let (coef, mono) = match frag.split_once(" * ") {
                Some((c, m)) => (c.trim(), m.trim()),
                None => (frag.trim(), ""),
            };
            let c: Rational = coef
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad coefficient `{coef}`")))?;
            let mut exps = vec![0u32; alphabet.len()];
            for tok in mono.split_whitespace() {
                let (name, e) = match tok.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| PolyError::Parse(format!("bad exponent in `{tok}`")))?,
                    ),
                    None => (tok, 1),
                };
                let i = alphabet
                    .index_of(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                exps[i] += e;
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    /// Multiplies by the least common denominator, leaving integer coefficients.
    pub fn clear_denominators(&self) -> Self {
        let l = self
            .terms
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| {
                num_integer::Integer::lcm(&acc, c.denom())
            });
        self.scale(&Rational::from_integer(l))
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

// Operator forms panic on alphabet mismatch; use the `try_*` methods to get an error.
impl<C: Scalar> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.try_add(rhs).expect("polynomial alphabets differ")
    }
}

impl<C: Scalar> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.try_sub(rhs).expect("polynomial alphabets differ")
    }
}

impl<C: Scalar> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.try_mul(rhs).expect("polynomial alphabets differ")
    }
}

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

/// Determinant by cofactor expansion along the first row; the empty matrix gives 1.
pub fn determinant<C: Scalar>(alphabet: &Alphabet, m: &[Vec<MultiPoly<C>>]) -> MultiPoly<C> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(alphabet);
    }
    let mut acc = MultiPoly::zero(alphabet);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<C>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &determinant(alphabet, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Shorthand for the main ring ℚ[u1, u2, u3].
pub type UPoly = MultiPoly<Rational>;

/// Parses a polynomial in `u1, u2, u3`. Panics on malformed input; meant for literals.
pub fn upoly(text: &str) -> UPoly {
    UPoly::parse(&Alphabet::u(), text).expect("malformed polynomial literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn sigma() -> UPoly {
        upoly("1 * u1 u3 + -1 * u2^2 + -1/3 * u1^3 u2 + 1/45 * u1^6")
    }

    fn u(i: usize) -> UPoly {
        UPoly::var_index(&Alphabet::u(), i - 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&u(1) + &u(2)) * &(&u(1) - &u(2));
        assert_eq!(p, upoly("1 * u1^2 + -1 * u2^2"));
    }

    #[test]
    fn unit_and_weights_of_sigma() {
        let s = sigma();
        assert_eq!(&s * &UPoly::one(&Alphabet::u()), s);
        let sq = &s * &s;
        assert_eq!(sq.weight().unwrap(), Some(-12));
        let split = s.weight_split().unwrap();
        assert_eq!(split.len(), 1);
        assert_eq!(split[&-6], s);
    }

    #[test]
    fn weight_split_examples() {
        let p = &u(1) + &u(2).pow(3);
        let split = p.weight_split().unwrap();
        assert_eq!(split.keys().copied().collect::<Vec<_>>(), vec![-9, -1]);
        assert_eq!(split[&-1], u(1));
        assert!(UPoly::zero(&Alphabet::u()).weight_split().unwrap().is_empty());
        let x = MultiPoly::<Rational>::var(&Alphabet::x(), "x1").unwrap();
        assert_eq!(
            x.weight_split(),
            Err(PolyError::UnweightedVariable("x1".into()))
        );
    }

    #[test]
    fn derivatives_of_sigma() {
        let s = sigma();
        assert_eq!(s.derive("u3").unwrap(), u(1));
        assert_eq!(s.derive("u2").unwrap(), upoly("-2 * u2 + -1/3 * u1^3"));
        assert_eq!(
            s.derive("w"),
            Err(PolyError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn leading_term_of_sigma_is_u1u3() {
        let s = sigma();
        let (m, c) = s.leading().unwrap();
        assert_eq!(m.exponents(), &[1, 0, 1]);
        assert_eq!(c, &int(1));
    }

    #[test]
    fn divrem_examples() {
        let s = sigma();
        let (q, r) = (&u(2) * &s).divrem(&s).unwrap();
        assert_eq!((q, r.is_zero()), (u(2), true));
        let (q, r) = u(2).divrem(&s).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, u(2));
        let (q, r) = upoly("1 * u1 u3").divrem(&s).unwrap();
        assert_eq!(q, UPoly::one(&Alphabet::u()));
        assert_eq!(r, upoly("1 * u2^2 + 1/3 * u1^3 u2 + -1/45 * u1^6"));
        assert_eq!(s.divrem(&UPoly::zero(&Alphabet::u())), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let x = MultiPoly::<Rational>::var(&Alphabet::x(), "x1").unwrap();
        assert_eq!(u(1).try_add(&x), Err(PolyError::AlphabetMismatch));
        assert_eq!(u(1).try_mul(&x), Err(PolyError::AlphabetMismatch));
    }

    #[test]
    fn canonical_text_round_trips() {
        let s = sigma();
        assert_eq!(
            s.canonical(),
            "1 * u1 u3 + -1 * u2^2 + -1/3 * u1^3 u2 + 1/45 * u1^6"
        );
        assert_eq!(UPoly::zero(&Alphabet::u()).canonical(), "0");
        assert_eq!(UPoly::constant(&Alphabet::u(), rat(-2, 3)).canonical(), "-2/3");
        assert_eq!(UPoly::parse(&Alphabet::u(), &s.canonical()).unwrap(), s);
    }

    #[test]
    fn substitution_identity_and_shift() {
        let s = sigma();
        let a = Alphabet::u();
        let ident: BTreeMap<String, UPoly> = (1..=3).map(|i| (format!("u{i}"), u(i))).collect();
        assert_eq!(s.substitute(&a, &ident).unwrap(), s);
        let mut partial = ident.clone();
        partial.remove("u2");
        assert_eq!(
            s.substitute(&a, &partial),
            Err(PolyError::UnboundVariable("u2".into()))
        );
    }

    #[test]
    fn embed_into_larger_alphabet() {
        let p = sigma().embed(&Alphabet::uv()).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.weight().unwrap(), Some(-6));
    }

    fn arb_poly() -> impl Strategy<Value = UPoly> {
        proptest::collection::vec(((0u32..4, 0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..6).prop_map(
            |ts| {
                UPoly::from_terms(
                    &Alphabet::u(),
                    ts.into_iter().map(|((a, b, c), n, d)| {
                        (Monomial::from_exponents(vec![a, b, c]), rat(n, d))
                    }),
                )
            },
        )
    }

    fn arb_hom() -> impl Strategy<Value = UPoly> {
        // weight-homogeneous monomials sharing weight -w
        (1i64..12, -4i64..5).prop_map(|(w, k)| {
            let mut p = UPoly::zero(&Alphabet::u());
            for c in 0..=w / 5 {
                for b in 0..=(w - 5 * c) / 3 {
                    let a = w - 5 * c - 3 * b;
                    let coef = rat(k + a + 2 * b - c, 1 + b);
                    p.add_term(Monomial::from_exponents(vec![a as u32, b as u32, c as u32]), coef);
                }
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn mixed_partials_commute(a in arb_poly()) {
            prop_assert_eq!(a.derive_index(0).derive_index(1), a.derive_index(1).derive_index(0));
        }

        #[test]
        fn leibniz(a in arb_poly(), b in arb_poly(), i in 0usize..3) {
            let lhs = (&a * &b).derive_index(i);
            let rhs = &(&a.derive_index(i) * &b) + &(&a * &b.derive_index(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn divrem_round_trip(p in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            let (q, r) = p.divrem(&d).unwrap();
            prop_assert_eq!(&(&q * &d) + &r, p);
            let (lm, _) = d.leading().unwrap();
            prop_assert!(r.terms().all(|(m, _)| !lm.divides(m)));
        }

        #[test]
        fn weights_are_additive(p in arb_hom(), q in arb_hom(), i in 0usize..3) {
            let wp = p.weight().unwrap();
            let wq = q.weight().unwrap();
            if let (Some(wp), Some(wq)) = (wp, wq) {
                prop_assert_eq!((&p * &q).weight().unwrap(), Some(wp + wq));
                let d = p.derive_index(i);
                if !d.is_zero() {
                    prop_assert_eq!(d.weight().unwrap(), Some(wp + 2 * i as i64 + 1));
                }
            }
        }

        #[test]
        fn text_round_trip(p in arb_poly()) {
            prop_assert_eq!(UPoly::parse(&Alphabet::u(), &p.canonical()).unwrap(), p);
        }
    }
}
