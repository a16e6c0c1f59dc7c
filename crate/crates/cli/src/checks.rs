//! The catalogue of checks, one closure per report row.

use serde_json::{json, Value};
use sigma3::basis::{self, rank_check, realize, realize_combination, rewrite_u3_derivative, BasisDescriptor};
use sigma3::fixtures::golden;
use sigma3::koszul::{
    d_squared_vanishes, euler_characteristic, ev_after_d_vanishes, ev_gr_surjective, exactness_report, w_basis,
};
use sigma3::local_form::{normalize, seeded_perturbation, LocalFormError};
use sigma3::matrix_model::{build_l, derive_c, dl_checks, wp11_flow_holds};
use sigma3::poly::{upoly, UPoly};
use sigma3::qseries::{
    character_coefficient, character_series, family_count_series, gr_dimension_identity, leading_coefficients,
};
use sigma3::schur::{degenerate_sigma, schur_poly, Partition};
use sigma3::sigma::{
    baker_addition_residual, leading_term_checks, minor_of, pole_two_generators, span_rank, v, zeta, zeta_of,
    IndexWord, LeadingStatus,
};

use crate::config::{RunConfig, Suite};
use crate::report::Status;

pub struct Outcome {
    pub status: Status,
    pub witness: Value,
}

impl Outcome {
    fn verdict(ok: bool, witness: Value) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Outcome { status, witness }
    }
}

type CheckFn = Box<dyn Fn() -> Outcome + Send + Sync>;

pub struct Task {
    pub suite: Suite,
    pub check: String,
    pub run: CheckFn,
}

const PERTURBATION_SEEDS: u64 = 5;
const PERTURBATION_DEGREE: u32 = 8;
const COUNTING_RANGE: std::ops::RangeInclusive<u64> = 4..=200;
const CHARACTER_HEAD: [i64; 9] = [1, 0, 1, 1, 2, 2, 4, 4, 6];

fn task(suite: Suite, check: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Task {
    Task { suite, check: check.into(), run: Box::new(run) }
}

fn err_witness(e: impl std::fmt::Display) -> Outcome {
    Outcome::verdict(false, json!({ "error": e.to_string() }))
}

pub fn tasks(cfg: &RunConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for &s in &cfg.suites {
        match s {
            Suite::Schur => schur(&mut out),
            Suite::Character => character(&mut out, cfg.nq),
            Suite::Addition => addition(&mut out),
            Suite::PoleOrders => pole_orders(&mut out),
            Suite::Weights => weights(&mut out),
            Suite::LeadingTerms => leading(&mut out),
            Suite::Basis => basis_suite(&mut out, cfg.nrank),
            Suite::Koszul => koszul(&mut out, cfg.koszul_window, cfg.nrank),
            Suite::Matrix => matrix(&mut out),
            Suite::Localform => localform(&mut out, cfg.localform_order),
            Suite::All => unreachable!("expanded by RunConfig"),
        }
    }
    out
}

fn schur(out: &mut Vec<Task>) {
    for (i, fx) in golden().schur.iter().enumerate() {
        let label = fx.partition.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        out.push(task(Suite::Schur, format!("partition-({label})"), move || {
            let fx = &golden().schur[i];
            match Partition::new(fx.partition.clone()) {
                Ok(p) => {
                    let got = schur_poly(&p).canonical();
                    Outcome::verdict(got == fx.poly, json!({ "computed": got, "expected": fx.poly }))
                }
                Err(e) => err_witness(e),
            }
        }));
    }
    out.push(task(Suite::Schur, "degenerate-sigma", || {
        let got = degenerate_sigma().canonical();
        let want = &golden().sigma.poly;
        Outcome::verdict(&got == want, json!({ "computed": got, "expected": want }))
    }));
}

fn character(out: &mut Vec<Task>, nq: usize) {
    out.push(task(Suite::Character, "character-equals-family-count", move || {
        let ch = character_series(nq);
        let fam = family_count_series(nq);
        let first_diff = (0..=nq).find(|&n| ch.coeff(n) != fam.coeff(n));
        let ok = first_diff.is_none() && ch.is_dimension_series();
        Outcome::verdict(ok, json!({ "order": nq, "first_difference": first_diff, "coefficients": ch.table() }))
    }));
    out.push(task(Suite::Character, "head-q0-q8", move || {
        if nq < CHARACTER_HEAD.len() - 1 {
            return Outcome { status: Status::Skipped, witness: json!({ "reason": "nq < 8" }) };
        }
        let head = leading_coefficients(&character_series(nq), 8);
        Outcome::verdict(head == CHARACTER_HEAD, json!({ "computed": head, "expected": CHARACTER_HEAD }))
    }));
    out.push(task(Suite::Character, "counting-identity-4..=200", || {
        let bad: Vec<u64> = COUNTING_RANGE.filter(|&n| gr_dimension_identity(n) != Ok(true)).collect();
        Outcome::verdict(bad.is_empty(), json!({ "failing_n": bad }))
    }));
}

fn addition(out: &mut Vec<Task>) {
    out.push(task(Suite::Addition, "baker-residual", || {
        let r = baker_addition_residual();
        let witness = if r.is_zero() {
            json!({ "residual_terms": 0 })
        } else {
            json!({ "residual_terms": r.len(), "residual": r.canonical() })
        };
        Outcome::verdict(r.is_zero(), witness)
    }));
}

fn order_check(out: &mut Vec<Task>, check: String, bound: u32, exact: bool, f: impl Fn() -> u32 + Send + Sync + 'static) {
    out.push(task(Suite::PoleOrders, check, move || {
        let o = f();
        let ok = if exact { o == bound } else { o <= bound };
        Outcome::verdict(ok, json!({ "order": o, "bound": bound, "exact": exact }))
    }));
}

fn pole_orders(out: &mut Vec<Task>) {
    for i in 1..=3 {
        for j in i..=3 {
            order_check(out, format!("zeta-{i}{j}"), 2, true, move || zeta_of(&[i, j]).pole_order());
        }
    }
    for (r, c) in basis::MINOR2 {
        let name = format!("minor-({}{};{}{})", r[0], r[1], c[0], c[1]);
        order_check(out, name, 3, false, move || minor_of(&r, &c).pole_order());
    }
    order_check(out, "minor-(123;123)".into(), 4, false, || minor_of(&[1, 2, 3], &[1, 2, 3]).pole_order());
    order_check(out, "v0".into(), 2, true, || v(0).pole_order());
    out.push(task(Suite::PoleOrders, "pole-two-span-rank", || {
        let r = span_rank(&pole_two_generators());
        Outcome::verdict(r == 8, json!({ "rank": r, "expected": 8 }))
    }));
}

fn weights(out: &mut Vec<Task>) {
    const EXPECTED: [i64; 6] = [12, 8, 10, 12, 14, 16];
    for (i, want) in EXPECTED.into_iter().enumerate() {
        out.push(task(Suite::Weights, format!("v{i}"), move || match v(i).weight() {
            Ok(w) => Outcome::verdict(w == want, json!({ "weight": w, "expected": want })),
            Err(e) => err_witness(e),
        }));
    }
    for len in 1..=4u32 {
        out.push(task(Suite::Weights, format!("zeta-words-length-{len}"), move || {
            let mut bad = Vec::new();
            let mut count = 0;
            for a1 in 0..=len {
                for a2 in 0..=len - a1 {
                    let w = IndexWord::from_exponents([a1, a2, len - a1 - a2]);
                    count += 1;
                    let got = zeta(&w).map_err(|e| e.to_string()).and_then(|z| z.weight().map_err(|e| e.to_string()));
                    if got != Ok(w.weight()) {
                        bad.push(json!({ "word": w.to_string(), "weight": format!("{got:?}"), "expected": w.weight() }));
                    }
                }
            }
            Outcome::verdict(bad.is_empty(), json!({ "words": count, "mismatches": bad }))
        }));
    }
}

fn leading(out: &mut Vec<Task>) {
    for (i, fx) in golden().leading.iter().enumerate() {
        out.push(task(Suite::LeadingTerms, fx.id.clone(), move || {
            let c = &leading_term_checks()[i];
            let status = match c.status {
                LeadingStatus::Match => Status::Pass,
                LeadingStatus::AdvisoryMismatch if c.passes() => Status::Advisory,
                _ => Status::Fail,
            };
            let witness = json!({
                "computed": c.computed.as_ref().map(UPoly::canonical),
                "displayed": c.displayed.canonical(),
                "weight": c.weight,
                "expected_weight": c.expected_weight,
            });
            Outcome { status, witness }
        }));
    }
}

fn basis_suite(out: &mut Vec<Task>, nrank: u32) {
    for n in 0..=nrank {
        out.push(task(Suite::Basis, format!("rank-degree-{n}"), move || {
            let r = rank_check(n);
            Outcome::verdict(r.passes(), serde_json::to_value(&r).expect("plain struct"))
        }));
    }
    for cols in [[1, 2], [1, 3], [2, 3]] {
        for (times, word) in [(1, [0, 0, 1]), (2, [0, 0, 2])] {
            let name = format!("u3-rewrite-(12;{}{})-x{times}", cols[0], cols[1]);
            out.push(task(Suite::Basis, name, move || {
                let Ok(Some(d)) = BasisDescriptor::minor2([1, 2], cols, word) else {
                    return err_witness("descriptor vanished");
                };
                match rewrite_u3_derivative(cols, word) {
                    Ok(comb) => {
                        let terms: Vec<String> = comb.iter().map(|(d, c)| format!("{c}·{d}")).collect();
                        let diff = &realize(&d) - &realize_combination(&comb);
                        let witness = json!({ "rewritten": terms, "difference": diff.canonical() });
                        Outcome::verdict(diff.is_zero(), witness)
                    }
                    Err(e) => err_witness(e),
                }
            }));
        }
    }
}

fn koszul(out: &mut Vec<Task>, window: i64, nrank: u32) {
    out.push(task(Suite::Koszul, "w-dimensions", || {
        let dims: Vec<usize> = (0..=3).map(|k| w_basis(k).map_or(0, |w| w.dim())).collect();
        Outcome::verdict(dims == [1, 6, 14, 14], json!({ "dims": dims, "expected": [1, 6, 14, 14] }))
    }));
    for n in -window..=window {
        out.push(task(Suite::Koszul, format!("complex-degree-{n}"), move || {
            let mut reports = Vec::new();
            let mut ok = true;
            for k in 0..3 {
                match exactness_report(k, n) {
                    Ok(r) => {
                        ok &= r.exact();
                        reports.push(r);
                    }
                    Err(e) => return err_witness(e),
                }
            }
            let d2 = (0..2).all(|k| d_squared_vanishes(k, n) == Ok(true));
            let ev_d = ev_after_d_vanishes(n) == Ok(true);
            let chi = euler_characteristic(n);
            let expected_chi = usize::try_from(n + 9).map_or(0, character_coefficient) as i64;
            ok &= d2 && ev_d && chi == expected_chi;
            let witness = json!({
                "d_squared_zero": d2,
                "ev_after_d_zero": ev_d,
                "euler_characteristic": chi,
                "character_coefficient": expected_chi,
                "exactness": reports,
            });
            Outcome::verdict(ok, witness)
        }));
    }
    for n in -9..=(i64::from(nrank) - 9) {
        out.push(task(Suite::Koszul, format!("ev-surjective-degree-{n}"), move || match ev_gr_surjective(n) {
            Ok(r) => Outcome::verdict(r.passes(), serde_json::to_value(&r).expect("plain struct")),
            Err(e) => err_witness(e),
        }));
    }
}

fn matrix(out: &mut Vec<Task>) {
    out.push(task(Suite::Matrix, "derive-c-and-determinant", || {
        let l = match derive_c(&build_l()) {
            Ok(l) => l,
            Err(e) => return err_witness(e),
        };
        match l.det_residual() {
            Ok(r) => {
                let c = l.c.as_ref().map(ToString::to_string);
                Outcome::verdict(r.is_zero(), json!({ "c": c, "det_residual": r.to_string() }))
            }
            Err(e) => err_witness(e),
        }
    }));
    out.push(task(Suite::Matrix, "vector-fields", || {
        let l = match derive_c(&build_l()) {
            Ok(l) => l,
            Err(e) => return err_witness(e),
        };
        match dl_checks(&l) {
            Ok(checks) => {
                let failing: Vec<String> =
                    checks.iter().filter(|c| !c.holds).map(|c| format!("D{} {}", c.l, c.generator)).collect();
                let flow = wp11_flow_holds(&l) == Ok(true);
                let witness = json!({ "comparisons": checks.len(), "failing": failing, "wp11_flow": flow });
                Outcome::verdict(failing.is_empty() && flow, witness)
            }
            Err(e) => err_witness(e),
        }
    }));
}

fn normal_form_check(p: &UPoly, order: u32) -> Outcome {
    match normalize(p, order) {
        Ok(ch) => {
            let ok = ch.residual.is_zero() && ch.linear_part_invertible();
            Outcome::verdict(ok, json!({ "order": order, "residual": ch.residual.canonical() }))
        }
        Err(e) => err_witness(e),
    }
}

fn localform(out: &mut Vec<Task>, order: u32) {
    out.push(task(Suite::Localform, "sigma", move || normal_form_check(&degenerate_sigma(), order)));
    for seed in 0..PERTURBATION_SEEDS {
        out.push(task(Suite::Localform, format!("perturbation-seed-{seed}"), move || {
            let p = &degenerate_sigma() + &seeded_perturbation(seed, PERTURBATION_DEGREE);
            normal_form_check(&p, order)
        }));
    }
    out.push(task(Suite::Localform, "degenerate-quadratic-rejected", move || {
        let r = normalize(&upoly("1 * u1 u3"), order);
        let ok = matches!(r, Err(LocalFormError::DegenerateQuadratic(_)));
        let witness = match r {
            Ok(_) => json!({ "error": null }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        Outcome::verdict(ok, witness)
    }));
}
