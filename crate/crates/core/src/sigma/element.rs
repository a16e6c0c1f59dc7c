use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ring, SigmaError};
use crate::poly::{Alphabet, PolyError, UPoly};
use crate::scalar::Rational;

/// `num / S^k` in lowest terms: either `k == 0` or `S` does not divide `num`.
///
/// Because `S` is irreducible (it is linear in `u3` with content 1), the reduced
/// form is unique and structural equality is equality in the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaElement {
    num: UPoly,
    k: u32,
}

impl SigmaElement {
    /// Builds `num / S^k` and cancels common powers of `S`.
    pub fn new(num: UPoly, k: u32) -> Self {
        assert!(num.alphabet() == &Alphabet::u(), "numerator must be a polynomial in u1, u2, u3");
        let mut e = SigmaElement { num, k };
        e.reduce();
        e
    }

    /// Caller guarantees the pair is already reduced.
    pub(crate) fn new_reduced(num: UPoly, k: u32) -> Self {
        debug_assert!(k == 0 || !num.is_zero());
        SigmaElement { num, k }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.k = 0;
            return;
        }
        let s = &ring().s;
        while self.k > 0 {
            match self.num.div_exact(s) {
                Some(q) => {
                    self.num = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        SigmaElement { num: p, k: 0 }
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero(&Alphabet::u()))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UPoly::constant(&Alphabet::u(), c))
    }

    /// `S` itself as an element with no pole.
    pub fn sigma() -> Self {
        Self::from_poly(ring().s.clone())
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn pole_exponent(&self) -> u32 {
        self.k
    }

    /// Order of pole along `S = 0`.
    pub fn pole_order(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator over the common denominator `S^big_k`; `None` if the pole is deeper.
    pub fn over_power(&self, big_k: u32) -> Option<UPoly> {
        if self.k > big_k {
            return None;
        }
        Some(&self.num * &ring().s_power(big_k - self.k))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SigmaElement {
            num: self.num.scale(c),
            k: self.k,
        }
    }

    /// `∂/∂u_i` by the quotient rule, `i ∈ {1, 2, 3}`.
    ///
    /// For `k ≥ 1` the result is already reduced with pole exactly `k + 1`: modulo
    /// `S` the new numerator is `−k·num·∂_iS`, and `S` is prime and divides neither
    /// factor.
    pub fn derive(&self, i: usize) -> Self {
        assert!((1..=3).contains(&i), "derivative index must be 1, 2 or 3");
        if self.k == 0 {
            return Self::from_poly(self.num.derive_index(i - 1));
        }
        let r = ring();
        let kk = Rational::from_integer(self.k.into());
        let num = &(&self.num.derive_index(i - 1) * &r.s) - &(&self.num * &r.ds[i - 1]).scale(&kk);
        Self::new_reduced(num, self.k + 1)
    }

    /// Applies `∂_1^a1 ∂_2^a2 ∂_3^a3`.
    pub fn derive_exponents(&self, a: [u32; 3]) -> Self {
        let mut e = self.clone();
        for (i, &n) in a.iter().enumerate() {
            for _ in 0..n {
                e = e.derive(i + 1);
            }
        }
        e
    }

    /// `wt(num) + 6k`; errors for zero or non-homogeneous elements.
    pub fn weight(&self) -> Result<i64, SigmaError> {
        if self.num.is_zero() {
            return Err(SigmaError::ZeroElement);
        }
        match self.num.weight()? {
            Some(w) => Ok(w + 6 * self.k as i64),
            None => Err(SigmaError::NotHomogeneous),
        }
    }

    /// `"<num> / S^k"`, the numerator in canonical polynomial form.
    pub fn canonical(&self) -> String {
        format!("{} / S^{}", self.num.canonical(), self.k)
    }

    /// Parses the [`canonical`](Self::canonical) form; the input need not be reduced.
    pub fn parse(text: &str) -> Result<Self, SigmaError> {
        let (num, k) = text
            .rsplit_once(" / S^")
            .ok_or_else(|| SigmaError::Parse(format!("missing ` / S^k` in `{text}`")))?;
        let k: u32 = k
            .trim()
            .parse()
            .map_err(|_| SigmaError::Parse(format!("bad pole exponent `{k}`")))?;
        let num = UPoly::parse(&Alphabet::u(), num)?;
        Ok(Self::new(num, k))
    }

    fn combine(&self, other: &Self, sign: &Rational) -> Self {
        let big = self.k.max(other.k);
        let r = ring();
        let a = &self.num * &r.s_power(big - self.k);
        let b = (&other.num * &r.s_power(big - other.k)).scale(sign);
        // Equal poles: the sum may pick up factors of S. Unequal: the deeper term
        // is S-free and the other is a multiple of S, so no cancellation happens.
        if self.k == other.k {
            Self::new(&a + &b, big)
        } else {
            Self::new_reduced(&a + &b, big)
        }
    }
}

impl From<PolyError> for SigmaError {
    fn from(e: PolyError) -> Self {
        SigmaError::Poly(e)
    }
}

impl fmt::Display for SigmaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl Add for &SigmaElement {
    type Output = SigmaElement;
    fn add(self, rhs: &SigmaElement) -> SigmaElement {
        self.combine(rhs, &Rational::one())
    }
}

impl Sub for &SigmaElement {
    type Output = SigmaElement;
    fn sub(self, rhs: &SigmaElement) -> SigmaElement {
        self.combine(rhs, &-Rational::one())
    }
}

impl Mul for &SigmaElement {
    type Output = SigmaElement;
    fn mul(self, rhs: &SigmaElement) -> SigmaElement {
        let num = &self.num * &rhs.num;
        let k = self.k + rhs.k;
        // A product of S-free numerators is S-free; only a pole-free factor can
        // bring factors of S along.
        if self.k == 0 || rhs.k == 0 {
            SigmaElement::new(num, k)
        } else {
            SigmaElement::new_reduced(num, k)
        }
    }
}

impl Neg for &SigmaElement {
    type Output = SigmaElement;
    fn neg(self) -> SigmaElement {
        SigmaElement {
            num: -&self.num,
            k: self.k,
        }
    }
}

impl Add for SigmaElement {
    type Output = SigmaElement;
    fn add(self, rhs: SigmaElement) -> SigmaElement {
        &self + &rhs
    }
}

impl Sub for SigmaElement {
    type Output = SigmaElement;
    fn sub(self, rhs: SigmaElement) -> SigmaElement {
        &self - &rhs
    }
}

impl Mul for SigmaElement {
    type Output = SigmaElement;
    fn mul(self, rhs: SigmaElement) -> SigmaElement {
        &self * &rhs
    }
}

impl Neg for SigmaElement {
    type Output = SigmaElement;
    fn neg(self) -> SigmaElement {
        -&self
    }
}
