//! The explicit linear basis of `A₀` graded by KP degree, its realization as
//! ring elements, and rank certification per degree.
//!
//! Members are `1`, `ζ_{1^a1 2^a2 3^a3}` with `a1 + a2 + a3 ≥ 2`, derivatives of
//! the 2×2 minors, and derivatives of `(123;123)`. Derivatives of the three
//! `(12;·)` minors never involve `∂3`: those are rewritten with
//! `∂3(12;ij) = ∂2(13;ij) − ∂1(23;ij)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::qseries::character_coefficient;
use crate::scalar::Rational;
use crate::sigma::{minor_of, span_rank, zeta, IndexWord, SigmaElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    One,
    Zeta,
    /// `(I;J)` with `I ≤ J` lexicographically.
    Minor2([usize; 2], [usize; 2]),
    Minor3,
}

/// The 2×2 minor families in basis order.
pub const MINOR2: [([usize; 2], [usize; 2]); 6] = [
    ([1, 2], [1, 2]),
    ([1, 2], [1, 3]),
    ([1, 2], [2, 3]),
    ([1, 3], [1, 3]),
    ([1, 3], [2, 3]),
    ([2, 3], [2, 3]),
];

impl Family {
    /// `2 Σ (k_j + l_j − 1)` for minors; 0 otherwise.
    pub fn base_degree(&self) -> u32 {
        let minor = |rows: &[usize], cols: &[usize]| -> u32 {
            2 * rows.iter().zip(cols).map(|(k, l)| (k + l - 1) as u32).sum::<u32>()
        };
        match self {
            Family::One | Family::Zeta => 0,
            Family::Minor2(r, c) => minor(r, c),
            Family::Minor3 => minor(&[1, 2, 3], &[1, 2, 3]),
        }
    }

    /// Position in the basis listing.
    fn rank_key(&self) -> usize {
        match self {
            Family::One => 0,
            Family::Zeta => 1,
            Family::Minor2(r, c) => 2 + MINOR2.iter().position(|m| m == &(*r, *c)).unwrap_or(MINOR2.len()),
            Family::Minor3 => 2 + MINOR2.len() + 1,
        }
    }

    fn is_minor12(&self) -> bool {
        matches!(self, Family::Minor2([1, 2], _))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("{0} is not a u3-derivative of a (12;·) minor")]
    Inapplicable(BasisDescriptor),
    #[error("minor ({0:?};{1:?}) is not a canonical 2×2 minor")]
    UnknownMinor(Vec<usize>, Vec<usize>),
}

/// A family together with a derivative exponent triple `(a1, a2, a3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisDescriptor {
    pub family: Family,
    pub deriv: [u32; 3],
}

impl BasisDescriptor {
    pub fn one() -> Self {
        BasisDescriptor { family: Family::One, deriv: [0; 3] }
    }

    pub fn zeta(word: [u32; 3]) -> Self {
        BasisDescriptor { family: Family::Zeta, deriv: word }
    }

    /// A derivative of `(I;J)`, put into canonical form by `(I;J) = (J;I)`.
    /// Index lists must already be increasing; a repeated index gives `None`
    /// (the minor vanishes).
    pub fn minor2(rows: [usize; 2], cols: [usize; 2], deriv: [u32; 3]) -> Result<Option<Self>, BasisError> {
        let bad = || BasisError::UnknownMinor(rows.to_vec(), cols.to_vec());
        if rows.iter().chain(&cols).any(|i| !(1..=3).contains(i)) {
            return Err(bad());
        }
        if rows[0] == rows[1] || cols[0] == cols[1] {
            return Ok(None);
        }
        if rows[0] > rows[1] || cols[0] > cols[1] {
            return Err(bad());
        }
        let (r, c) = if rows <= cols { (rows, cols) } else { (cols, rows) };
        Ok(Some(BasisDescriptor { family: Family::Minor2(r, c), deriv }))
    }

    pub fn minor3(deriv: [u32; 3]) -> Self {
        BasisDescriptor { family: Family::Minor3, deriv }
    }

    pub fn kp_degree(&self) -> u32 {
        let [a1, a2, a3] = self.deriv;
        self.family.base_degree() + a1 + 3 * a2 + 5 * a3
    }

    /// Whether the descriptor satisfies the derivative restrictions of the basis.
    pub fn is_basis_member(&self) -> bool {
        match self.family {
            Family::One => self.deriv == [0; 3],
            Family::Zeta => self.deriv.iter().sum::<u32>() >= 2,
            f if f.is_minor12() => self.deriv[2] == 0,
            _ => true,
        }
    }

    fn with_deriv(&self, deriv: [u32; 3]) -> Self {
        BasisDescriptor { family: self.family, deriv }
    }
}

impl fmt::Display for BasisDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = IndexWord::from_exponents(self.deriv);
        match self.family {
            Family::One => return f.write_str("1"),
            Family::Zeta => return write!(f, "ζ_{{{word}}}"),
            Family::Minor2(r, c) => write!(f, "({}{};{}{})", r[0], r[1], c[0], c[1])?,
            Family::Minor3 => f.write_str("(123;123)")?,
        }
        if !word.is_empty() {
            write!(f, "_{{{word}}}")?;
        }
        Ok(())
    }
}

/// Triples with `a1 + 3a2 + 5a3 = n`, lexicographically descending.
fn triples(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a1 in (0..=n).rev() {
        for a2 in (0..=(n - a1) / 3).rev() {
            let rest = n - a1 - 3 * a2;
            if rest % 5 == 0 {
                out.push([a1, a2, rest / 5]);
            }
        }
    }
    out
}

/// Every basis member of KP degree `n`, in the fixed family-then-derivative order.
pub fn enumerate_kp_basis(n: u32) -> Vec<BasisDescriptor> {
    let mut families = vec![Family::One, Family::Zeta];
    families.extend(MINOR2.iter().map(|&(r, c)| Family::Minor2(r, c)));
    families.push(Family::Minor3);
    let mut out = Vec::new();
    for fam in families {
        let base = fam.base_degree();
        if base > n {
            continue;
        }
        for t in triples(n - base) {
            let d = BasisDescriptor { family: fam, deriv: t };
            if d.is_basis_member() {
                out.push(d);
            }
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0].family.rank_key() <= w[1].family.rank_key()));
    out
}

fn realize_cache() -> &'static RwLock<HashMap<BasisDescriptor, SigmaElement>> {
    static C: OnceLock<RwLock<HashMap<BasisDescriptor, SigmaElement>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// The ring element a descriptor names. Works for any descriptor, basis member or not.
pub fn realize(d: &BasisDescriptor) -> SigmaElement {
    if let Some(e) = realize_cache().read().unwrap().get(d) {
        return e.clone();
    }
    let e = match d.family {
        Family::One => SigmaElement::one().derive_exponents(d.deriv),
        Family::Zeta => {
            zeta(&IndexWord::from_exponents(d.deriv)).expect("ζ descriptors have a nonempty word")
        }
        _ if d.deriv == [0; 3] => match d.family {
            Family::Minor2(r, c) => minor_of(&r, &c),
            _ => minor_of(&[1, 2, 3], &[1, 2, 3]),
        },
        _ => {
            let i = (0..3).rev().find(|&i| d.deriv[i] > 0).unwrap();
            let mut t = d.deriv;
            t[i] -= 1;
            realize(&d.with_deriv(t)).derive(i + 1)
        }
    };
    realize_cache().write().unwrap().insert(*d, e.clone());
    e
}

/// Formal ℚ-linear combination of descriptors.
pub type Combination = BTreeMap<BasisDescriptor, Rational>;

fn add_to(comb: &mut Combination, d: BasisDescriptor, c: Rational) {
    let entry = comb.entry(d).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        comb.remove(&d);
    }
}

/// Rewrites `∂^word (12;1j)` for a word containing 3 so that no `(12;·)` term
/// carries a `∂3`.
pub fn rewrite_u3_derivative(cols: [usize; 2], word: [u32; 3]) -> Result<Combination, BasisError> {
    let d = BasisDescriptor::minor2([1, 2], cols, word)?
        .filter(|d| d.family.is_minor12())
        .ok_or_else(|| BasisError::UnknownMinor(vec![1, 2], cols.to_vec()))?;
    if word[2] == 0 {
        return Err(BasisError::Inapplicable(d));
    }
    let mut single = Combination::new();
    single.insert(d, Rational::one());
    Ok(rewrite_combination(&single))
}

/// Applies the `∂3` rewriting to every `(12;·)` term until none carries `∂3`.
/// Terms already free of such derivatives pass through unchanged.
pub fn rewrite_combination(comb: &Combination) -> Combination {
    let mut out = Combination::new();
    let mut work: Vec<(BasisDescriptor, Rational)> = comb.iter().map(|(d, c)| (*d, c.clone())).collect();
    while let Some((d, c)) = work.pop() {
        let Family::Minor2([1, 2], cols) = d.family else {
            add_to(&mut out, d, c);
            continue;
        };
        if d.deriv[2] == 0 {
            add_to(&mut out, d, c);
            continue;
        }
        // ∂3 (12;J) = ∂2 (13;J) − ∂1 (23;J)
        let [a1, a2, a3] = d.deriv;
        let via2 = BasisDescriptor::minor2([1, 3], cols, [a1, a2 + 1, a3 - 1]).expect("valid indices");
        let via1 = BasisDescriptor::minor2([2, 3], cols, [a1 + 1, a2, a3 - 1]).expect("valid indices");
        if let Some(t) = via2 {
            work.push((t, c.clone()));
        }
        if let Some(t) = via1 {
            work.push((t, -c));
        }
    }
    out
}

/// `Σ c · realize(d)`.
pub fn realize_combination(comb: &Combination) -> SigmaElement {
    comb.iter()
        .fold(SigmaElement::zero(), |acc, (d, c)| &acc + &realize(d).scale(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub degree: u32,
    pub count: usize,
    pub rank: usize,
    pub expected: usize,
}

impl RankReport {
    pub fn passes(&self) -> bool {
        self.rank == self.count && self.count == self.expected
    }
}

/// Realizes the degree-`n` basis and computes its exact rank.
pub fn rank_check(n: u32) -> RankReport {
    let ds = enumerate_kp_basis(n);
    let elems: Vec<SigmaElement> = ds.iter().map(realize).collect();
    RankReport {
        degree: n,
        count: ds.len(),
        rank: span_rank(&elems),
        expected: character_coefficient(n as usize),
    }
}
