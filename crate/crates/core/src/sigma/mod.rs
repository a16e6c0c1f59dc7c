//! The ring `A₀` of functions `num / S^k` built from the degenerate sigma
//! polynomial `S`, together with its distinguished generators: logarithmic
//! derivatives `ζ`, `℘ = −ζ`, and the determinants `(I;J) = det(ζ_{i_k j_l})`.

mod addition;
mod element;
mod leading;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::linalg::{integer_row, RowEchelon};
use crate::poly::{determinant, Alphabet, Monomial, PolyError, UPoly};
use crate::scalar::Rational;
use crate::schur::degenerate_sigma;

pub use addition::{baker_addition_residual, baker_addition_sides};
pub use element::SigmaElement;
pub use leading::{leading_term_checks, LeadingCheck, LeadingStatus};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SigmaError {
    #[error("index word must not be empty")]
    EmptyWord,
    #[error("℘ needs at least two indices, got {0}")]
    WordTooShort(usize),
    #[error("index {0} is outside 1..=3")]
    IndexOutOfRange(usize),
    #[error("minor index lists must have equal length in 1..=3, got {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("the zero element has no weight")]
    ZeroElement,
    #[error("element is not weight-homogeneous")]
    NotHomogeneous,
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(PolyError),
}

pub(crate) struct Ring {
    pub(crate) s: UPoly,
    pub(crate) ds: [UPoly; 3],
    /// `S·S_ij − S_i·S_j`, so that `ζ_ij = n_ij / S²`.
    zeta2_num: [[UPoly; 3]; 3],
    powers: RwLock<Vec<UPoly>>,
    zetas: RwLock<HashMap<[u32; 3], SigmaElement>>,
    minors: RwLock<HashMap<(Vec<usize>, Vec<usize>), SigmaElement>>,
}

impl Ring {
    fn build() -> Self {
        let s = degenerate_sigma();
        let ds = [0, 1, 2].map(|i| s.derive_index(i));
        let zeta2_num = [0, 1, 2].map(|i| {
            [0, 1, 2].map(|j| &(&s * &ds[i].derive_index(j)) - &(&ds[i] * &ds[j]))
        });
        let one = UPoly::one(&Alphabet::u());
        Ring {
            powers: RwLock::new(vec![one, s.clone()]),
            s,
            ds,
            zeta2_num,
            zetas: RwLock::new(HashMap::new()),
            minors: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn s_power(&self, k: u32) -> UPoly {
        let k = k as usize;
        if let Some(p) = self.powers.read().unwrap().get(k) {
            return p.clone();
        }
        let mut w = self.powers.write().unwrap();
        while w.len() <= k {
            let next = w.last().unwrap() * &self.s;
            w.push(next);
        }
        w[k].clone()
    }
}

pub(crate) fn ring() -> &'static Ring {
    static R: OnceLock<Ring> = OnceLock::new();
    R.get_or_init(Ring::build)
}

/// Multiset of derivative indices from `{1, 2, 3}`, stored as exponents `(a1, a2, a3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexWord([u32; 3]);

impl IndexWord {
    pub fn from_indices(indices: &[usize]) -> Result<Self, SigmaError> {
        let mut a = [0; 3];
        for &i in indices {
            if !(1..=3).contains(&i) {
                return Err(SigmaError::IndexOutOfRange(i));
            }
            a[i - 1] += 1;
        }
        Ok(IndexWord(a))
    }

    pub fn from_exponents(a: [u32; 3]) -> Self {
        IndexWord(a)
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    pub fn len(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Σ (2i − 1)` over the indices.
    pub fn weight(&self) -> i64 {
        (self.0[0] + 3 * self.0[1] + 5 * self.0[2]) as i64
    }
}

impl fmt::Display for IndexWord {
    /// Subscript notation, e.g. `1^2 3` for `(2, 0, 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut prev_had_exp = false;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if prev_had_exp {
                f.write_str(" ")?;
            }
            if a == 1 {
                write!(f, "{}", i + 1)?;
                prev_had_exp = false;
            } else {
                write!(f, "{}^{}", i + 1, a)?;
                prev_had_exp = true;
            }
        }
        Ok(())
    }
}

fn zeta_exponents(a: [u32; 3]) -> SigmaElement {
    let r = ring();
    if let Some(z) = r.zetas.read().unwrap().get(&a) {
        return z.clone();
    }
    let n: u32 = a.iter().sum();
    let z = if n == 1 {
        let i = a.iter().position(|&x| x == 1).unwrap();
        SigmaElement::new_reduced(r.ds[i].clone(), 1)
    } else {
        // Peel off the highest index so that neighbours in the cache share work.
        let i = (0..3).rev().find(|&i| a[i] > 0).unwrap();
        let mut b = a;
        b[i] -= 1;
        zeta_exponents(b).derive(i + 1)
    };
    r.zetas.write().unwrap().insert(a, z.clone());
    z
}

/// `ζ_word = ∂_word log S`, for a nonempty word.
pub fn zeta(word: &IndexWord) -> Result<SigmaElement, SigmaError> {
    if word.is_empty() {
        return Err(SigmaError::EmptyWord);
    }
    Ok(zeta_exponents(word.0))
}

/// Shorthand for [`zeta`] on an index list; panics on invalid input.
pub fn zeta_of(indices: &[usize]) -> SigmaElement {
    zeta(&IndexWord::from_indices(indices).expect("valid indices")).expect("nonempty word")
}

/// `℘_word = −ζ_word`; only defined for words of length ≥ 2.
pub fn wp(word: &IndexWord) -> Result<SigmaElement, SigmaError> {
    if word.len() < 2 {
        return Err(SigmaError::WordTooShort(word.len() as usize));
    }
    Ok(-zeta(word)?)
}

/// Shorthand for [`wp`] on an index list; panics on invalid input.
pub fn wp_of(indices: &[usize]) -> SigmaElement {
    wp(&IndexWord::from_indices(indices).expect("valid indices")).expect("word of length ≥ 2")
}

/// `(I;J) = det(ζ_{i_k j_l})`.
pub fn minor(rows: &[usize], cols: &[usize]) -> Result<SigmaElement, SigmaError> {
    let r = rows.len();
    if r != cols.len() || !(1..=3).contains(&r) {
        return Err(SigmaError::SizeMismatch(r, cols.len()));
    }
    if let Some(&bad) = rows.iter().chain(cols).find(|&&i| !(1..=3).contains(&i)) {
        return Err(SigmaError::IndexOutOfRange(bad));
    }
    let ring = ring();
    let key = (rows.to_vec(), cols.to_vec());
    if let Some(m) = ring.minors.read().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let u = Alphabet::u();
    let m: Vec<Vec<UPoly>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| ring.zeta2_num[i - 1][j - 1].clone()).collect())
        .collect();
    let e = SigmaElement::new(determinant(&u, &m), 2 * r as u32);
    ring.minors.write().unwrap().insert(key, e.clone());
    Ok(e)
}

/// Shorthand for [`minor`]; panics on invalid input.
pub fn minor_of(rows: &[usize], cols: &[usize]) -> SigmaElement {
    minor(rows, cols).expect("valid minor indices")
}

/// The six named combinations `v⁰..v⁵`.
pub fn v(i: usize) -> SigmaElement {
    match i {
        0 => &minor_of(&[1, 3], &[1, 3]) - &minor_of(&[1, 2], &[2, 3]),
        1 => minor_of(&[1, 2], &[1, 2]),
        2 => minor_of(&[1, 2], &[1, 3]),
        3 => minor_of(&[1, 2], &[2, 3]),
        4 => minor_of(&[1, 3], &[2, 3]),
        5 => minor_of(&[2, 3], &[2, 3]),
        _ => panic!("v index must be in 0..=5"),
    }
}

/// Numerators of `elems` over a common power of `S`, as sparse rational rows with
/// a shared monomial column index.
pub fn coefficient_rows(elems: &[SigmaElement]) -> Vec<Vec<(usize, Rational)>> {
    let big = elems.iter().map(SigmaElement::pole_exponent).max().unwrap_or(0);
    let mut cols: BTreeMap<Monomial, usize> = BTreeMap::new();
    elems
        .iter()
        .map(|e| {
            let p = e.over_power(big).expect("big is the maximal pole");
            let mut row: Vec<(usize, Rational)> = p
                .terms()
                .map(|(m, c)| {
                    let n = cols.len();
                    (*cols.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect();
            row.sort_by_key(|(j, _)| *j);
            row
        })
        .collect()
}

/// Dimension over ℚ of the span of `elems`.
pub fn span_rank(elems: &[SigmaElement]) -> usize {
    let mut ech = RowEchelon::new();
    for row in coefficient_rows(elems) {
        ech.insert(integer_row(&row));
    }
    ech.rank()
}

/// `1`, the six `℘_ij` and `v⁰`: the functions with pole order at most 2.
pub fn pole_two_generators() -> Vec<SigmaElement> {
    let mut out = vec![SigmaElement::one()];
    for i in 1..=3 {
        for j in i..=3 {
            out.push(wp_of(&[i, j]));
        }
    }
    out.push(v(0));
    out
}

#[cfg(test)]
mod tests;
