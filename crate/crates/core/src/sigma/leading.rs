//! Leading homogeneous components of `S⁴·X` for selected second derivatives
//! `X` of the `v`-generators and fourth derivatives of `ζ`, compared with the
//! reference table. At the degenerate point each `S⁴·X` is a single homogeneous
//! polynomial, so "leading component" is the whole value.

use super::{v, zeta, IndexWord, SigmaElement};
use crate::fixtures::{golden, LeadingFixture};
use crate::poly::{Alphabet, UPoly};
use crate::scalar::int;
use crate::schur::degenerate_sigma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeadingStatus {
    Match,
    Mismatch,
    /// Mismatch on an entry whose reference text is known to be unreliable.
    AdvisoryMismatch,
}

#[derive(Debug, Clone)]
pub struct LeadingCheck {
    pub id: String,
    /// `S⁴·X`, or `None` if `X` has a pole deeper than 4.
    pub computed: Option<UPoly>,
    /// The reference value with its `S` multiple expanded.
    pub displayed: UPoly,
    pub status: LeadingStatus,
    /// Weight of `computed` if it is homogeneous.
    pub weight: Option<i64>,
    /// `wt(X) − 24`, what a correct value must have.
    pub expected_weight: i64,
}

impl LeadingCheck {
    /// Exact match, or for advisory entries a homogeneous value of the right weight.
    pub fn passes(&self) -> bool {
        match self.status {
            LeadingStatus::Match => true,
            LeadingStatus::Mismatch => false,
            LeadingStatus::AdvisoryMismatch => self.weight == Some(self.expected_weight),
        }
    }
}

fn target_element(f: &LeadingFixture) -> SigmaElement {
    let word = IndexWord::from_indices(&f.word).expect("fixture word uses indices 1..=3");
    match f.target.as_str() {
        "zeta" => zeta(&word).expect("fixture word is nonempty"),
        t => {
            let i: usize = t
                .strip_prefix('v')
                .and_then(|s| s.parse().ok())
                .expect("fixture target is `zeta` or `v<i>`");
            v(i).derive_exponents(word.exponents())
        }
    }
}

fn check(f: &LeadingFixture) -> LeadingCheck {
    let x = target_element(f);
    let expected_weight = x.weight().expect("generated elements are homogeneous") - 24;
    let computed = x.over_power(4);
    let displayed = &UPoly::parse(&Alphabet::u(), &f.poly).expect("fixture polynomial parses")
        + &degenerate_sigma().scale(&int(f.sigma_multiple));
    let weight = computed.as_ref().and_then(|p| p.weight().ok().flatten());
    let status = if computed.as_ref() == Some(&displayed) {
        LeadingStatus::Match
    } else if f.advisory {
        LeadingStatus::AdvisoryMismatch
    } else {
        LeadingStatus::Mismatch
    };
    LeadingCheck {
        id: f.id.clone(),
        computed,
        displayed,
        status,
        weight,
        expected_weight,
    }
}

pub fn leading_term_checks() -> Vec<LeadingCheck> {
    golden().leading.iter().map(check).collect()
}
