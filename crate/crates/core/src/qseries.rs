//! Truncated power series in `q` with rational coefficients, and the graded
//! dimension generating functions of the ring.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QSeriesError {
    #[error("series division needs a unit constant term in the divisor")]
    NonUnitDivisor,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("hrep({0}, {1}) is undefined")]
    InvalidHrep(u64, u64),
    #[error("the dimension identity is stated for n ≥ 4, got {0}")]
    DegreeTooSmall(u64),
}

/// `Σ_{n ≤ N} c_n qⁿ`, exact modulo `q^{N+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    /// `c·q^e`, or zero if `e` exceeds the order.
    pub fn monomial(order: usize, e: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// `1 − q^e`.
    pub fn one_minus(order: usize, e: usize) -> Self {
        &Self::one(order) - &Self::monomial(order, e, Rational::one())
    }

    pub fn from_coeffs(order: usize, coeffs: &[Rational]) -> Self {
        let mut s = Self::zero(order);
        for (c, x) in s.coeffs.iter_mut().zip(coeffs) {
            *c = x.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<(), QSeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(QSeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.check(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self / other`; the divisor's constant term must be nonzero.
    pub fn try_div(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.check(other)?;
        let c0 = other.coeffs[0].clone();
        if c0.is_zero() {
            return Err(QSeriesError::NonUnitDivisor);
        }
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !other.coeffs[j].is_zero() {
                    acc -= &other.coeffs[j] * &out.coeffs[k - j];
                }
            }
            out.coeffs[k] = acc / &c0;
        }
        Ok(out)
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// True if every coefficient is a nonnegative integer.
    pub fn is_dimension_series(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Two-column CSV `n,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,coefficient\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(s, "{n},{c}").unwrap();
        }
        s
    }

    /// Rows for JSON reports, coefficients rendered as exact strings.
    pub fn table(&self) -> Vec<CoefficientRow> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| CoefficientRow {
                n,
                coefficient: c.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientRow {
    pub n: usize,
    pub coefficient: String,
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.check(rhs).expect("matching truncation orders");
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.check(rhs).expect("matching truncation orders");
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.try_mul(rhs).expect("matching truncation orders")
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn product(order: usize, exps: impl IntoIterator<Item = usize>) -> QSeries {
    exps.into_iter()
        .fold(QSeries::one(order), |acc, e| &acc * &QSeries::one_minus(order, e))
}

/// `[n]_{q²}! = Π_{i=1}^n (1 − q^{2i})`.
fn qfact_even(order: usize, n: usize) -> QSeries {
    product(order, (1..=n).map(|i| 2 * i))
}

/// `[n + ½]_{q²}! = Π_{i=0}^n (1 − q^{2i+1})`.
fn qfact_half(order: usize, n: usize) -> QSeries {
    product(order, (0..=n).map(|i| 2 * i + 1))
}

/// Graded dimensions of the genus-three ring through `q^order`:
///
/// `[½]_{q²} [7]_{q²}! / ([3]_{q²}! [4]_{q²}! [3+½]_{q²}!)` with `[½]_{q²} = 1 − q`.
pub fn character_series(order: usize) -> QSeries {
    let g = 3;
    let num = &QSeries::one_minus(order, 1) * &qfact_even(order, 2 * g + 1);
    let den = &(&qfact_even(order, g) * &qfact_even(order, g + 1)) * &qfact_half(order, g);
    num.try_div(&den).expect("denominator has constant term 1")
}

/// Count of the explicit basis families by degree, as a closed form:
///
/// `−q − q³ − q⁵ + (1 + q¹² + q¹⁴ + q¹⁶ + q¹⁸)/((1−q)(1−q³)(1−q⁵)) + (q⁸ + q¹⁰ + q¹²)/((1−q)(1−q³))`.
pub fn family_count_series(order: usize) -> QSeries {
    let mono = |e| QSeries::monomial(order, e, Rational::one());
    let sum = |es: &[usize]| es.iter().fold(QSeries::zero(order), |acc, &e| &acc + &mono(e));
    let three = product(order, [1, 3, 5]);
    let two = product(order, [1, 3]);
    let a = sum(&[0, 12, 14, 16, 18]).try_div(&three).expect("unit constant term");
    let b = sum(&[8, 10, 12]).try_div(&two).expect("unit constant term");
    &(&a + &b) - &sum(&[1, 3, 5])
}

/// Number of multisets of size `r` from `n` symbols, `C(n + r − 1, r)`.
pub fn hrep(n: u64, r: u64) -> Result<BigInt, QSeriesError> {
    if n == 0 {
        return if r == 0 { Ok(BigInt::one()) } else { Err(QSeriesError::InvalidHrep(n, r)) };
    }
    Ok(binomial(n + r - 1, r))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `₃H_{n+1} + ₃H_{n−1} + 3·₂H_{n−2} + 3·₃H_{n−2} + ₃H_{n−3} = (n+1)³ − n³`.
pub fn gr_dimension_identity(n: u64) -> Result<bool, QSeriesError> {
    if n < 4 {
        return Err(QSeriesError::DegreeTooSmall(n));
    }
    let h = |a, b| hrep(a, b).expect("a ≥ 1");
    let lhs = h(3, n + 1) + h(3, n - 1) + BigInt::from(3) * h(2, n - 2) + BigInt::from(3) * h(3, n - 2) + h(3, n - 3);
    let n = BigInt::from(n);
    let rhs = (&n + 1u32).pow(3) - n.pow(3);
    Ok(lhs == rhs)
}

/// `[qⁿ]` of the character as a machine integer; panics if it is not one.
pub fn character_coefficient(n: usize) -> usize {
    let c = character_series(n).coeff(n).clone();
    assert!(c.is_integer() && !c.is_negative(), "graded dimension must be a natural number");
    c.to_integer().try_into().expect("dimension fits in usize")
}

/// Convenience for tests and reports: the first coefficients as `i64`.
pub fn leading_coefficients(s: &QSeries, upto: usize) -> Vec<i64> {
    s.coeffs[..=upto]
        .iter()
        .map(|c| {
            assert!(c.is_integer());
            i64::try_from(c.to_integer()).expect("small coefficient")
        })
        .collect()
}
