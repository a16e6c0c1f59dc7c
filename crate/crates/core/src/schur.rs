//! Jacobi–Trudi Schur polynomials in the power-sum-like variables `T1, T2, ...`
//! and the degenerate genus-three sigma polynomial.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::poly::{determinant, Alphabet, MultiPoly, UPoly};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("partition parts must be weakly decreasing")]
    NotDecreasing,
}

/// Weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing);
        }
        Ok(Partition(parts))
    }

    /// `(g, g-1, ..., 1)`, the partition attached to a genus-`g` hyperelliptic curve.
    pub fn staircase(g: u32) -> Self {
        Partition((1..=g).rev().collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `p_0, ..., p_n` over `T1..Tn`, where `exp(Σ T_k x^k) = Σ p_k x^k`.
///
/// Uses `n·p_n = Σ_{k=1}^n k·T_k·p_{n-k}`, obtained by differentiating the
/// generating function.
pub fn pn_sequence(n: usize) -> Vec<UPoly> {
    pn_sequence_over(&Alphabet::t(n), n)
}

fn pn_sequence_over(alphabet: &Alphabet, n: usize) -> Vec<UPoly> {
    let mut p = vec![UPoly::one(alphabet)];
    for m in 1..=n {
        let mut acc = UPoly::zero(alphabet);
        for k in 1..=m {
            let t = UPoly::var_index(alphabet, k - 1).scale(&int(k as i64));
            acc = &acc + &(&t * &p[m - k]);
        }
        p.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
    }
    p
}

/// `S_λ(T) = det(p_{λ_i - i + j})`, over the alphabet `T1..T|λ|`.
pub fn schur_poly(lambda: &Partition) -> UPoly {
    let size = lambda.size().max(1) as usize;
    let alphabet = Alphabet::t(size);
    let p = pn_sequence_over(&alphabet, size);
    let l = lambda.len();
    let entry = |idx: i64| -> UPoly {
        if idx < 0 {
            UPoly::zero(&alphabet)
        } else {
            p[idx as usize].clone()
        }
    };
    let m: Vec<Vec<UPoly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| entry(lambda.0[i] as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    determinant(&alphabet, &m)
}

/// `S(u) = S_{(3,2,1)}(T)` with `T1 → u1, T3 → u2, T5 → u3`.
pub fn degenerate_sigma() -> UPoly {
    static S: OnceLock<UPoly> = OnceLock::new();
    S.get_or_init(|| {
        let s = schur_poly(&Partition::staircase(3));
        let u = Alphabet::u();
        let bindings: BTreeMap<String, UPoly> = [("T1", 0), ("T3", 1), ("T5", 2)]
            .into_iter()
            .map(|(t, i)| (t.to_string(), MultiPoly::var_index(&u, i)))
            .collect();
        s.substitute(&u, &bindings)
            .expect("S_(3,2,1) involves only odd-indexed T")
    })
    .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{upoly, Monomial};
    use crate::scalar::rat;

    fn t(text: &str, n: usize) -> UPoly {
        UPoly::parse(&Alphabet::t(n), text).unwrap()
    }

    #[test]
    fn first_pn() {
        let p = pn_sequence(3);
        assert_eq!(p[0], t("1", 3));
        assert_eq!(p[1], t("1 * T1", 3));
        assert_eq!(p[2], t("1/2 * T1^2 + 1 * T2", 3));
        assert_eq!(p[3], t("1/6 * T1^3 + 1 * T1 T2 + 1 * T3", 3));
    }

    // Oracle: multiply the truncated exponentials exp(T_k x^k) one factor at a time.
    fn pn_by_exponentials(n: usize) -> Vec<UPoly> {
        let a = Alphabet::t(n);
        let mut acc: Vec<UPoly> = (0..=n)
            .map(|i| if i == 0 { UPoly::one(&a) } else { UPoly::zero(&a) })
            .collect();
        for k in 1..=n {
            // exp(T_k x^k) = Σ_m T_k^m / m! x^{km}
            let mut factor = vec![UPoly::zero(&a); n + 1];
            let mut fact = Rational::from_integer(1.into());
            let mut m = 0;
            while k * m <= n {
                if m > 0 {
                    fact *= int(m as i64);
                }
                let mut exps = vec![0; n];
                exps[k - 1] = m as u32;
                factor[k * m] =
                    UPoly::monomial(&a, Monomial::from_exponents(exps), Rational::from_integer(1.into()) / fact.clone());
                m += 1;
            }
            let mut next = vec![UPoly::zero(&a); n + 1];
            for i in 0..=n {
                for j in 0..=n - i {
                    next[i + j] = &next[i + j] + &(&acc[i] * &factor[j]);
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn pn_matches_exponential_oracle() {
        for n in 0..=8 {
            assert_eq!(pn_sequence(n), pn_by_exponentials(n), "n = {n}");
        }
    }

    #[test]
    fn pn_is_degree_homogeneous() {
        for (n, p) in pn_sequence(8).iter().enumerate() {
            let split = p.weight_split().unwrap();
            assert_eq!(split.keys().copied().collect::<Vec<_>>(), vec![-(n as i64)]);
        }
    }

    #[test]
    fn small_schur_polynomials() {
        let s1 = schur_poly(&Partition::new(vec![1]).unwrap());
        assert_eq!(s1.canonical(), "1 * T1");
        let s21 = schur_poly(&Partition::new(vec![2, 1]).unwrap());
        assert_eq!(s21, t("-1 * T3 + 1/3 * T1^3", 3));
        let s321 = schur_poly(&Partition::staircase(3));
        assert_eq!(
            s321,
            t("1 * T1 T5 + -1 * T3^2 + -1/3 * T1^3 T3 + 1/45 * T1^6", 6)
        );
    }

    #[test]
    fn schur_is_homogeneous_and_staircase_avoids_even_t() {
        fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=max.min(n)).rev() {
                for mut rest in partitions(n - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for n in 1..=8 {
            for parts in partitions(n, n) {
                let s = schur_poly(&Partition::new(parts.clone()).unwrap());
                assert_eq!(s.weight().unwrap(), Some(-(n as i64)), "{parts:?}");
            }
        }
        for g in 1..=3 {
            let s = schur_poly(&Partition::staircase(g));
            for (m, _) in s.terms() {
                for (i, &e) in m.exponents().iter().enumerate() {
                    assert!(i % 2 == 0 || e == 0, "even T in staircase g = {g}");
                }
            }
        }
    }

    #[test]
    fn degenerate_sigma_matches_closed_form() {
        let s = degenerate_sigma();
        assert_eq!(s, upoly("1 * u1 u3 + -1 * u2^2 + -1/3 * u1^3 u2 + 1/45 * u1^6"));
        assert_eq!(s.weight().unwrap(), Some(-6));
        let u = Alphabet::u();
        let neg: BTreeMap<String, UPoly> = (0..3)
            .map(|i| (format!("u{}", i + 1), UPoly::var_index(&u, i).scale(&rat(-1, 1))))
            .collect();
        assert_eq!(s.substitute(&u, &neg).unwrap(), s);
    }

    #[test]
    fn partition_validation() {
        assert_eq!(Partition::new(vec![1, 2]), Err(PartitionError::NotDecreasing));
        assert_eq!(Partition::new(vec![2, 0]), Err(PartitionError::ZeroPart));
        assert_eq!(Partition::staircase(3).parts(), &[3, 2, 1]);
    }
}
