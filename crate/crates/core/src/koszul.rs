//! The complex `𝒟 ⊗ W^•` with `W^k = ∧^k V / ω ∧ ∧^{k−2} V` and its evaluation
//! map into `A₀`.
//!
//! `V` has basis `ε1, ε2, ε3, μ1, μ2, μ3` (indices 0..6 here) with
//! `deg ε_i = −(2i−1)`, `deg μ_i = 2i−1`, and `ω = Σ ε_i ∧ μ_i`. `𝒟 = ℚ[∂1, ∂2, ∂3]`
//! with `deg ∂_i = 2i−1`; an operator is stored as its exponent triple.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::basis::{enumerate_kp_basis, realize, BasisDescriptor};
use crate::linalg::{integer_row, invert, rank_rational, RowEchelon};
use crate::qseries::character_coefficient;
use crate::scalar::Rational;
use crate::sigma::{span_rank, SigmaElement};

pub const DIM_V: usize = 6;
const G: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error("W^{0} is only built for 0 ≤ k ≤ 3")]
    BadK(usize),
    #[error("degree {0} is outside the supported window")]
    DegreeOutOfWindow(i64),
    #[error("wedge word {0:?} is not a strictly increasing list of indices below 6")]
    MalformedWord(Vec<usize>),
}

/// Sorted list of `V` indices.
pub type Word = Vec<usize>;

fn vdeg(i: usize) -> i64 {
    if i < G {
        -(2 * i as i64 + 1)
    } else {
        2 * (i - G) as i64 + 1
    }
}

pub fn word_degree(w: &[usize]) -> i64 {
    w.iter().map(|&i| vdeg(i)).sum()
}

fn subsets(n: usize, k: usize) -> Vec<Word> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `v_i ∧ w` as `(sign, word)`, or `None` if `i` already occurs.
fn wedge_left(i: usize, w: &[usize]) -> Option<(i64, Word)> {
    if w.contains(&i) {
        return None;
    }
    let before = w.iter().filter(|&&j| j < i).count();
    let mut out = w.to_vec();
    out.insert(before, i);
    Some((if before % 2 == 0 { 1 } else { -1 }, out))
}

/// `ω ∧ w` in the word basis.
fn omega_wedge(w: &[usize]) -> BTreeMap<Word, Rational> {
    let mut out = BTreeMap::new();
    for i in 0..G {
        if let Some((s1, w1)) = wedge_left(i + G, w) {
            if let Some((s2, w2)) = wedge_left(i, &w1) {
                *out.entry(w2).or_insert_with(Rational::zero) += Rational::from_integer((s1 * s2).into());
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Quotient representatives of `W^k` and the projection onto them.
#[derive(Debug, Clone)]
pub struct WBasis {
    pub k: usize,
    /// Representative words, in the fixed word order they were selected in.
    pub representatives: Vec<Word>,
    words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    /// `projection[r][w]`: coordinate on representative `r` of the word `w`.
    projection: Vec<Vec<Rational>>,
}

impl WBasis {
    fn build(k: usize) -> Self {
        let words = subsets(DIM_V, k);
        let index: BTreeMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let to_row = |v: &BTreeMap<Word, Rational>| -> Vec<(usize, Rational)> {
            let mut r: Vec<_> = v.iter().map(|(w, c)| (index[w], c.clone())).collect();
            r.sort_by_key(|(j, _)| *j);
            r
        };
        // A basis of the ω-image, then representatives completing it.
        let mut ech = RowEchelon::new();
        let mut image: Vec<Vec<(usize, Rational)>> = Vec::new();
        if k >= 2 {
            for w in subsets(DIM_V, k - 2) {
                let row = to_row(&omega_wedge(&w));
                if ech.insert(integer_row(&row)) {
                    image.push(row);
                }
            }
        }
        let mut representatives = Vec::new();
        for w in &words {
            if ech.insert(integer_row(&[(index[w], Rational::one())])) {
                representatives.push(w.clone());
            }
        }
        let n = words.len();
        assert_eq!(image.len() + representatives.len(), n);
        // Columns of M: image vectors, then representative unit vectors.
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (c, row) in image.iter().enumerate() {
            for (j, v) in row {
                m[*j][c] = v.clone();
            }
        }
        for (c, w) in representatives.iter().enumerate() {
            m[index[w]][image.len() + c] = Rational::one();
        }
        let inv = invert(&m).expect("image and representatives span ∧^k V");
        let projection = inv[image.len()..].to_vec();
        WBasis {
            k,
            representatives,
            words,
            index,
            projection,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.representatives.iter().map(|w| word_degree(w)).collect()
    }

    /// Coordinates in `W^k` of a vector of `∧^k V` given on words.
    pub fn project(&self, v: &BTreeMap<Word, Rational>) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        for (w, c) in v {
            let j = self.index[w];
            for (r, row) in self.projection.iter().enumerate() {
                if !row[j].is_zero() {
                    *out.entry(r).or_insert_with(Rational::zero) += c * &row[j];
                }
            }
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        out
    }

    /// All words of `∧^k V` in order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

/// Cached `W^k` for `0 ≤ k ≤ 3`.
pub fn w_basis(k: usize) -> Result<&'static WBasis, KoszulError> {
    static W: OnceLock<Vec<WBasis>> = OnceLock::new();
    W.get_or_init(|| (0..=G).map(WBasis::build).collect())
        .get(k)
        .ok_or(KoszulError::BadK(k))
}

/// Exponent triples of `∂`-monomials of degree `e` (`a1 + 3a2 + 5a3 = e`).
fn operator_monomials(e: i64) -> Vec<[u32; 3]> {
    if e < 0 {
        return Vec::new();
    }
    let e = e as u32;
    let mut out = Vec::new();
    for a3 in 0..=e / 5 {
        for a2 in 0..=(e - 5 * a3) / 3 {
            out.push([e - 5 * a3 - 3 * a2, a2, a3]);
        }
    }
    out.sort();
    out
}

/// Basis element `∂^P ⊗ rep`.
pub type Cell = ([u32; 3], usize);

/// Basis of `(𝒟 ⊗ W^k)_n`.
pub fn graded_basis(k: usize, n: i64) -> Result<Vec<Cell>, KoszulError> {
    let w = w_basis(k)?;
    let mut out = Vec::new();
    for (r, d) in w.degrees().into_iter().enumerate() {
        for p in operator_monomials(n - d) {
            out.push((p, r));
        }
    }
    out.sort();
    Ok(out)
}

/// `d(∂^P ⊗ rep) = Σ ∂_i ∂^P ⊗ [ε_i ∧ rep]` in `𝒟 ⊗ W^{k+1}`.
pub fn d_cell(k: usize, cell: &Cell) -> Result<BTreeMap<Cell, Rational>, KoszulError> {
    let src = w_basis(k)?;
    let dst = w_basis(k + 1)?;
    let (p, r) = cell;
    let mut out: BTreeMap<Cell, Rational> = BTreeMap::new();
    for i in 0..G {
        let Some((s, w)) = wedge_left(i, &src.representatives[*r]) else { continue };
        let mut q = *p;
        q[i] += 1;
        let mut v = BTreeMap::new();
        v.insert(w, Rational::from_integer(s.into()));
        for (rr, c) in dst.project(&v) {
            *out.entry((q, rr)).or_insert_with(Rational::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Degree-`n` piece of `d: 𝒟 ⊗ W^k → 𝒟 ⊗ W^{k+1}`, one sparse row per source cell.
#[derive(Debug, Clone)]
pub struct GradedMap {
    pub k: usize,
    pub degree: i64,
    pub source: Vec<Cell>,
    pub target: Vec<Cell>,
    pub rows: Vec<Vec<(usize, Rational)>>,
}

impl GradedMap {
    pub fn rank(&self) -> usize {
        rank_rational(&self.rows)
    }
}

/// Supported degree window for the differential.
pub const D_WINDOW: i64 = 60;

pub fn d_map(k: usize, n: i64) -> Result<GradedMap, KoszulError> {
    if k >= G {
        return Err(KoszulError::BadK(k));
    }
    if n.abs() > D_WINDOW {
        return Err(KoszulError::DegreeOutOfWindow(n));
    }
    let source = graded_basis(k, n)?;
    let target = graded_basis(k + 1, n)?;
    let col: BTreeMap<Cell, usize> = target.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let rows = source
        .iter()
        .map(|c| {
            let mut r: Vec<(usize, Rational)> =
                d_cell(k, c).map(|img| img.into_iter().map(|(t, v)| (col[&t], v)).collect())?;
            r.sort_by_key(|(j, _)| *j);
            Ok(r)
        })
        .collect::<Result<_, KoszulError>>()?;
    Ok(GradedMap {
        k,
        degree: n,
        source,
        target,
        rows,
    })
}

/// True if `d_{k+1} ∘ d_k` vanishes on every cell of degree `n`.
pub fn d_squared_vanishes(k: usize, n: i64) -> Result<bool, KoszulError> {
    for c in graded_basis(k, n)? {
        let mut acc: BTreeMap<Cell, Rational> = BTreeMap::new();
        for (t, v) in d_cell(k, &c)? {
            for (t2, v2) in d_cell(k + 1, &t)? {
                *acc.entry(t2).or_insert_with(Rational::zero) += &v * &v2;
            }
        }
        if acc.values().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub k: usize,
    pub degree: i64,
    pub dim: usize,
    /// Rank of the incoming differential (0 at `k = 0`).
    pub image_rank: usize,
    pub kernel_dim: usize,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.image_rank == self.kernel_dim
    }
}

pub fn exactness_report(k: usize, n: i64) -> Result<ExactnessReport, KoszulError> {
    if k >= G {
        return Err(KoszulError::BadK(k));
    }
    let out = d_map(k, n)?;
    let image_rank = if k == 0 { 0 } else { d_map(k - 1, n)?.rank() };
    Ok(ExactnessReport {
        k,
        degree: n,
        dim: out.source.len(),
        image_rank,
        kernel_dim: out.source.len() - out.rank(),
    })
}

/// `ker d_k = im d_{k−1}` in degree `n`.
pub fn check_exactness(k: usize, n: i64) -> Result<bool, KoszulError> {
    Ok(exactness_report(k, n)?.exact())
}

/// `d(ω ∧ ν) = ω ∧ d(ν)` on `𝒟 ⊗ ∧^• V` for every word `ν` of `∧^k V`.
pub fn omega_commutes_with_d(k: usize) -> bool {
    let unprojected_d = |v: &BTreeMap<Word, Rational>| {
        let mut out: BTreeMap<(usize, Word), Rational> = BTreeMap::new();
        for (w, c) in v {
            for i in 0..G {
                if let Some((s, w2)) = wedge_left(i, w) {
                    *out.entry((i, w2)).or_insert_with(Rational::zero) += c * Rational::from_integer(s.into());
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    subsets(DIM_V, k).iter().all(|w| {
        let lhs = unprojected_d(&omega_wedge(w));
        let mut rhs: BTreeMap<(usize, Word), Rational> = BTreeMap::new();
        let single: BTreeMap<Word, Rational> = [(w.clone(), Rational::one())].into_iter().collect();
        for ((i, w2), c) in unprojected_d(&single) {
            for (w3, c3) in omega_wedge(&w2) {
                *rhs.entry((i, w3)).or_insert_with(Rational::zero) += &c * &c3;
            }
        }
        rhs.retain(|_, c| !c.is_zero());
        lhs == rhs
    })
}

/// `Σ_k (−1)^{3−k} dim (𝒟 ⊗ W^k)_n`.
pub fn euler_characteristic(n: i64) -> i64 {
    (0..=G)
        .map(|k| {
            let d = graded_basis(k, n).expect("k ≤ 3").len() as i64;
            if (G - k) % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .sum()
}

/// Sign of the permutation sorting `seq`.
fn perm_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ev(∂^P ⊗ word)` for a word of `∧³ V`.
///
/// Writing the word as `± μ_I ∧ ε_J`, the value is `± sgn(J^c, J) ∂^P (I; J^c)`,
/// with the empty minor equal to 1.
pub fn ev_apply(p: [u32; 3], word: &[usize]) -> Result<SigmaElement, KoszulError> {
    let malformed = || KoszulError::MalformedWord(word.to_vec());
    if word.len() != G || word.windows(2).any(|w| w[0] >= w[1]) || word.iter().any(|&i| i >= DIM_V) {
        return Err(malformed());
    }
    let j: Vec<usize> = word.iter().filter(|&&i| i < G).map(|i| i + 1).collect();
    let i_set: Vec<usize> = word.iter().filter(|&&i| i >= G).map(|i| i - G + 1).collect();
    // The sorted word is ε_J ∧ μ_I; moving μ_I to the front costs (−1)^{|I||J|}.
    let reorder = if (i_set.len() * j.len()) % 2 == 0 { 1 } else { -1 };
    let jc: Vec<usize> = (1..=G).filter(|x| !j.contains(x)).collect();
    let mut concat = jc.clone();
    concat.extend(&j);
    let sign = reorder * perm_sign(&concat);
    let d = match i_set.len() {
        0 => BasisDescriptor {
            family: crate::basis::Family::One,
            deriv: p,
        },
        1 => {
            let mut w = p;
            w[i_set[0] - 1] += 1;
            w[jc[0] - 1] += 1;
            BasisDescriptor::zeta(w)
        }
        2 => match BasisDescriptor::minor2([i_set[0], i_set[1]], [jc[0], jc[1]], p) {
            Ok(Some(d)) => d,
            _ => return Ok(SigmaElement::zero()),
        },
        _ => BasisDescriptor::minor3(p),
    };
    Ok(realize(&d).scale(&Rational::from_integer(sign.into())))
}

/// `ev` of a combination of cells in `𝒟 ⊗ W³`.
pub fn ev_cells(v: &BTreeMap<Cell, Rational>) -> SigmaElement {
    let w3 = w_basis(G).expect("k = 3");
    v.iter().fold(SigmaElement::zero(), |acc, ((p, r), c)| {
        &acc + &ev_apply(*p, &w3.representatives[*r]).expect("representatives are valid words").scale(c)
    })
}

/// `ev ∘ d` vanishes on every degree-`n` cell of `𝒟 ⊗ W²`.
pub fn ev_after_d_vanishes(n: i64) -> Result<bool, KoszulError> {
    for c in graded_basis(G - 1, n)? {
        if !ev_cells(&d_cell(G - 1, &c)?).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    /// Degree in `𝒟 ⊗ W³`; the image lies in weight `degree + 9`.
    pub degree: i64,
    pub cells: usize,
    /// Rank of the image of `ev`.
    pub rank: usize,
    /// Graded dimension from the character.
    pub expected: usize,
    /// Rank of the explicit basis in the same weight.
    pub basis_rank: usize,
    /// Rank of image and basis together; equal to both when they span the same space.
    pub union_rank: usize,
}

impl SurjectivityReport {
    pub fn passes(&self) -> bool {
        self.rank == self.expected && self.basis_rank == self.expected && self.union_rank == self.expected
    }
}

/// Certifies that `ev` maps `(𝒟 ⊗ W³)_n` onto the weight-`(n+9)` piece.
pub fn ev_gr_surjective(n: i64) -> Result<SurjectivityReport, KoszulError> {
    let weight = n + (G * G) as i64;
    if weight < 0 {
        return Err(KoszulError::DegreeOutOfWindow(n));
    }
    let w3 = w_basis(G)?;
    let cells = graded_basis(G, n)?;
    let images: Vec<SigmaElement> = cells
        .iter()
        .map(|(p, r)| ev_apply(*p, &w3.representatives[*r]))
        .collect::<Result<_, _>>()?;
    let basis: Vec<SigmaElement> = enumerate_kp_basis(weight as u32).iter().map(realize).collect();
    let mut both = images.clone();
    both.extend(basis.iter().cloned());
    Ok(SurjectivityReport {
        degree: n,
        cells: cells.len(),
        rank: span_rank(&images),
        expected: character_coefficient(weight as usize),
        basis_rank: span_rank(&basis),
        union_rank: span_rank(&both),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::character_series;
    use crate::sigma::{minor_of, zeta_of};

    const E1: usize = 0;
    const E2: usize = 1;
    const E3: usize = 2;
    const M1: usize = 3;
    const M2: usize = 4;
    const M3: usize = 5;

    #[test]
    fn quotient_dimensions() {
        let dims: Vec<usize> = (0..=3).map(|k| w_basis(k).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 6, 14, 14]);
        assert_eq!(w_basis(4).unwrap_err(), KoszulError::BadK(4));
    }

    #[test]
    fn projection_kills_omega_multiples() {
        for k in 2..=3 {
            let w = w_basis(k).unwrap();
            for nu in subsets(DIM_V, k - 2) {
                assert!(w.project(&omega_wedge(&nu)).is_empty());
            }
            for (r, rep) in w.representatives.iter().enumerate() {
                let v: BTreeMap<Word, Rational> = [(rep.clone(), Rational::one())].into_iter().collect();
                let p = w.project(&v);
                assert_eq!(p.len(), 1);
                assert_eq!(p[&r], Rational::one());
            }
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for n in -12..=12 {
            assert!(d_squared_vanishes(0, n).unwrap(), "k=0, n={n}");
            assert!(d_squared_vanishes(1, n).unwrap(), "k=1, n={n}");
        }
    }

    #[test]
    fn exact_below_the_top() {
        for n in -10..=10 {
            for k in 0..3 {
                let r = exactness_report(k, n).unwrap();
                assert!(r.exact(), "{r:?}");
            }
        }
        assert!(d_map(3, 0).is_err());
        assert!(d_map(0, D_WINDOW + 1).is_err());
    }

    #[test]
    fn omega_commutes() {
        for k in 0..=4 {
            assert!(omega_commutes_with_d(k), "k = {k}");
        }
    }

    #[test]
    fn euler_characteristic_is_the_character() {
        let ch = character_series(40);
        for n in -9..=31 {
            let expected = ch.coeff((n + 9) as usize).to_integer();
            assert_eq!(euler_characteristic(n), i64::try_from(expected).unwrap(), "n = {n}");
        }
        for n in -30..-9 {
            assert_eq!(euler_characteristic(n), 0);
        }
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(ev_apply([0; 3], &[M1, M2, M3]).unwrap(), minor_of(&[1, 2, 3], &[1, 2, 3]));
        assert_eq!(ev_apply([0; 3], &[E2, E3, M1]).unwrap(), zeta_of(&[1, 1]));
        assert_eq!(ev_apply([1, 0, 0], &[E2, E3, M1]).unwrap(), zeta_of(&[1, 1, 1]));
        assert_eq!(ev_apply([0; 3], &[E1, E2, E3]).unwrap(), SigmaElement::one());
        assert!(ev_apply([1, 0, 0], &[E1, E2, E3]).unwrap().is_zero());
        assert!(ev_apply([0; 3], &[M1, M1, M2]).is_err());
        assert!(ev_apply([0; 3], &[M1]).is_err());
    }

    #[test]
    fn evaluation_kills_omega_and_boundaries() {
        for i in 0..DIM_V {
            let v = omega_wedge(&[i]);
            let total = v.iter().fold(SigmaElement::zero(), |acc, (w, c)| &acc + &ev_apply([0; 3], w).unwrap().scale(c));
            assert!(total.is_zero(), "ω ∧ v{i}");
        }
        for n in -7..=3 {
            assert!(ev_after_d_vanishes(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn surjective_in_low_weight() {
        for n in [-9, -5, -1] {
            let r = ev_gr_surjective(n).unwrap();
            assert!(r.passes(), "{r:?}");
        }
        assert_eq!(ev_gr_surjective(-5).unwrap().expected, 2);
        assert_eq!(ev_gr_surjective(-1).unwrap().rank, 6);
        assert!(ev_gr_surjective(-10).is_err());
    }
}
