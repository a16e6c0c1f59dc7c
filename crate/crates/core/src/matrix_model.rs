//! The 2×2 Lax-type matrix `L(x) = [[a, b], [c, −a]]` over `A₀` for the curve
//! `y² = 4x⁷`, and the action of the invariant vector fields on its entries.
//!
//! Coefficients: `b(x) = x³ + b2 x² + b4 x + b6` with `b_{2i} = −℘_{1i}`,
//! `a(x) = a3 x² + a5 x + a7` with `a_{2j+1} = ℘_{11j}` (and `a1 = 0`), and
//! `c(x) = 4x⁴ + c2 x³ + ... + c8` fixed by `a² + b c = 4x⁷`.

use std::fmt;

use crate::scalar::{int, rat};
use crate::sigma::{wp_of, SigmaElement};

const G: u32 = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("c(x) is not a polynomial: division leaves remainder {0}")]
    NonzeroRemainder(XPoly),
    #[error("c(x) has not been derived yet")]
    MissingC,
    #[error("invalid generator {0}")]
    InvalidGenerator(Generator),
    #[error("vector field index {0} is outside 1..=3")]
    InvalidDirection(u32),
}

/// Polynomial in `x` with coefficients in `A₀`, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct XPoly(Vec<SigmaElement>);

impl XPoly {
    pub fn new(mut coeffs: Vec<SigmaElement>) -> Self {
        while coeffs.last().is_some_and(SigmaElement::is_zero) {
            coeffs.pop();
        }
        XPoly(coeffs)
    }

    pub fn zero() -> Self {
        XPoly(Vec::new())
    }

    /// `c·x^e`.
    pub fn monomial(e: usize, c: SigmaElement) -> Self {
        let mut v = vec![SigmaElement::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, e: usize) -> SigmaElement {
        self.0.get(e).cloned().unwrap_or_else(SigmaElement::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![SigmaElement::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                if !a.is_zero() && !b.is_zero() {
                    v[i + j] = &v[i + j] + &(a * b);
                }
            }
        }
        Self::new(v)
    }

    /// Long division by a monic divisor: `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("nonzero divisor");
        assert!(d.0[dd] == SigmaElement::one(), "divisor must be monic");
        let mut r = self.0.clone();
        let mut q = vec![SigmaElement::zero(); r.len().saturating_sub(dd)];
        for top in (dd..r.len()).rev() {
            let c = r[top].clone();
            if c.is_zero() {
                continue;
            }
            q[top - dd] = c.clone();
            for (j, dc) in d.0.iter().enumerate() {
                let idx = top - dd + j;
                r[idx] = &r[idx] - &(&c * dc);
            }
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("({c}) x^{e}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A coefficient named by its subscript: `A(3)` is `a3`, `B(4)` is `b4`, `C(8)` is `c8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    A(u32),
    B(u32),
    C(u32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A(i) => write!(f, "a{i}"),
            Generator::B(i) => write!(f, "b{i}"),
            Generator::C(i) => write!(f, "c{i}"),
        }
    }
}

/// The generators the vector fields act on: `a3, a5, a7, b2, b4, b6, c2, c4, c6, c8`.
pub fn generators() -> Vec<Generator> {
    let mut out: Vec<Generator> = (1..=G).map(|k| Generator::A(2 * k + 1)).collect();
    out.extend((1..=G).map(|k| Generator::B(2 * k)));
    out.extend((0..=G).map(|k| Generator::C(2 * k + 2)));
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LMatrix {
    pub a: XPoly,
    pub b: XPoly,
    pub c: Option<XPoly>,
}

/// `a(x)` and `b(x)` from the `℘`-functions; `c` left undetermined.
pub fn build_l() -> LMatrix {
    let g = G as usize;
    // b_{2i} sits at x^{g-i}; a_{2j+1} at x^{g-j}.
    let mut b = vec![SigmaElement::zero(); g + 1];
    b[g] = SigmaElement::one();
    let mut a = vec![SigmaElement::zero(); g + 1];
    for i in 1..=g {
        b[g - i] = -wp_of(&[1, i]);
        a[g - i] = wp_of(&[1, 1, i]);
    }
    LMatrix {
        a: XPoly::new(a),
        b: XPoly::new(b),
        c: None,
    }
}

/// `4x^{2g+1}`.
pub fn curve_f() -> XPoly {
    XPoly::monomial(2 * G as usize + 1, SigmaElement::constant(int(4)))
}

/// Fills `c = (f − a²) / b`; errors if `b` does not divide.
pub fn derive_c(l: &LMatrix) -> Result<LMatrix, MatrixError> {
    let (q, r) = curve_f().sub(&l.a.mul(&l.a)).divrem_monic(&l.b);
    if !r.is_zero() {
        return Err(MatrixError::NonzeroRemainder(r));
    }
    Ok(LMatrix {
        c: Some(q),
        ..l.clone()
    })
}

impl LMatrix {
    /// `a² + b c − f`, zero exactly when `−det L = f`.
    pub fn det_residual(&self) -> Result<XPoly, MatrixError> {
        let c = self.c.as_ref().ok_or(MatrixError::MissingC)?;
        Ok(self.a.mul(&self.a).add(&self.b.mul(c)).sub(&curve_f()))
    }

    fn a_(&self, sub: i64) -> SigmaElement {
        // a1 = 0 and out-of-range subscripts vanish.
        let g = G as i64;
        if sub < 3 || sub > 2 * g + 1 || sub % 2 == 0 {
            return SigmaElement::zero();
        }
        self.a.coeff((g - (sub - 1) / 2) as usize)
    }

    fn b_(&self, sub: i64) -> SigmaElement {
        let g = G as i64;
        if !(0..=2 * g).contains(&sub) || sub % 2 != 0 {
            return SigmaElement::zero();
        }
        self.b.coeff((g - sub / 2) as usize)
    }

    fn c_(&self, sub: i64) -> SigmaElement {
        let g = G as i64;
        let c = self.c.as_ref().expect("c derived");
        if !(0..=2 * g + 2).contains(&sub) || sub % 2 != 0 {
            return SigmaElement::zero();
        }
        c.coeff((g + 1 - sub / 2) as usize)
    }

    /// The coefficient a generator names.
    pub fn generator(&self, g: Generator) -> Result<SigmaElement, MatrixError> {
        if !generators().contains(&g) {
            return Err(MatrixError::InvalidGenerator(g));
        }
        Ok(match g {
            Generator::A(s) => self.a_(s as i64),
            Generator::B(s) => self.b_(s as i64),
            Generator::C(s) => {
                if self.c.is_none() {
                    return Err(MatrixError::MissingC);
                }
                self.c_(s as i64)
            }
        })
    }

    /// Right-hand side of the vector field `D_l` on a generator.
    ///
    /// Sums run over `i + j = k + l − 1` with `i ≥ max(k, l)`, `j ≤ min(k, l) − 1`,
    /// `j ≥ −1`; coefficients outside their range vanish except `b0 = 1`, `c0 = 4`.
    pub fn apply_dl(&self, l: u32, g: Generator) -> Result<SigmaElement, MatrixError> {
        if !(1..=G).contains(&l) {
            return Err(MatrixError::InvalidDirection(l));
        }
        if self.c.is_none() {
            return Err(MatrixError::MissingC);
        }
        if !generators().contains(&g) {
            return Err(MatrixError::InvalidGenerator(g));
        }
        let l = l as i64;
        let k = match g {
            Generator::A(s) => (s as i64 - 1) / 2,
            Generator::B(s) => s as i64 / 2,
            Generator::C(s) => (s as i64 - 2) / 2,
        };
        let pairs: Vec<(i64, i64)> = (-1..=k.min(l) - 1)
            .map(|j| (k + l - 1 - j, j))
            .filter(|&(i, _)| i >= k.max(l))
            .collect();
        let (a, b, c) = (|s: i64| self.a_(s), |s: i64| self.b_(s), |s: i64| self.c_(s));
        let sum = |f: &dyn Fn(i64, i64) -> SigmaElement| {
            pairs.iter().fold(SigmaElement::zero(), |acc, &(i, j)| &acc + &f(i, j))
        };
        Ok(match g {
            Generator::A(_) => {
                let s = sum(&|i, j| &(&b(2 * i) * &c(2 * j + 2)) - &(&b(2 * j) * &c(2 * i + 2)));
                &s.scale(&rat(1, 4)) - &(&b(2 * k) * &b(2 * l))
            }
            Generator::B(_) => {
                sum(&|i, j| &(&a(2 * i + 1) * &b(2 * j)) - &(&a(2 * j + 1) * &b(2 * i))).scale(&rat(1, 2))
            }
            Generator::C(_) => {
                let s = sum(&|i, j| &(&c(2 * i + 2) * &a(2 * j + 1)) - &(&c(2 * j + 2) * &a(2 * i + 1)));
                &s.scale(&rat(1, 2)) + &(&b(2 * l) * &a(2 * k + 1)).scale(&int(2))
            }
        })
    }
}

/// One comparison `D_l(g) = −½ ∂_l g`.
#[derive(Debug, Clone, PartialEq)]
pub struct DlCheck {
    pub l: u32,
    pub generator: Generator,
    pub holds: bool,
}

/// All `3 × 10` comparisons of the vector fields with `−½ ∂_l`.
pub fn dl_checks(l_mat: &LMatrix) -> Result<Vec<DlCheck>, MatrixError> {
    let mut out = Vec::new();
    for l in 1..=G {
        for g in generators() {
            let lhs = l_mat.apply_dl(l, g)?;
            let rhs = l_mat.generator(g)?.derive(l as usize).scale(&rat(-1, 2));
            out.push(DlCheck {
                l,
                generator: g,
                holds: lhs == rhs,
            });
        }
    }
    Ok(out)
}

/// `D_l ℘11 = −½ ℘11l` for each `l`, using `℘11 = −b2`.
pub fn wp11_flow_holds(l_mat: &LMatrix) -> Result<bool, MatrixError> {
    for l in 1..=G {
        let lhs = -l_mat.apply_dl(l, Generator::B(2))?;
        let rhs = wp_of(&[1, 1, l as usize]).scale(&rat(-1, 2));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
