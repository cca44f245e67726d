//! The acceptance suite: every exactly-checkable numeric step behind the
//! general-type threshold, as eight named criteria. Each criterion returns
//! a structured outcome with one detail line per sub-check, so both the
//! `verify-paper` command and the `acceptance` test target run the same
//! code.

use std::time::Instant;

use serde::Serialize;

use crate::arith::primes_up_to;
use crate::dimensions::{
    audit_prop22_chain, cusp_dim_leading, index_record, jacobi_cusp_dim_weight2, GroupTag,
};
use crate::groups::{
    conjugate, in_paramodular, moebius_action, random_element, GroupElement, SiegelPoint,
};
use crate::obstruction::{
    audit_thm49, e2_coeff, general_type_test, interior_coeff, min_general_type_prime,
};
use crate::scalar::{gauss, rat, ratio, Rational};
use crate::singularities::{
    classify_cyclic, classify_monomial, eh_series_table, zp_z3_group, catalog_mismatches,
    Classification, CyclicQuotient,
};
use crate::toric::{
    dual_index, plurigenus_count, plurigenus_count_serial, simplex_volume, QuotientLatticeData,
};

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub claim: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    pub elapsed_ms: u128,
    /// Wall-clock budget where the criterion carries one.
    pub budget_ms: Option<u128>,
}

struct Recorder {
    checks: Vec<CheckLine>,
}

impl Recorder {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(&mut self, claim: impl Into<String>, passed: bool) -> bool {
        self.checks.push(CheckLine { claim: claim.into(), passed });
        passed
    }

    fn finish(
        self,
        id: u32,
        name: &'static str,
        started: Instant,
        budget_ms: Option<u128>,
    ) -> CriterionOutcome {
        let elapsed_ms = started.elapsed().as_millis();
        let mut checks = self.checks;
        let mut passed = checks.iter().all(|c| c.passed);
        if let Some(budget) = budget_ms {
            let in_budget = elapsed_ms < budget;
            checks.push(CheckLine {
                claim: format!("runtime {elapsed_ms} ms within {budget} ms"),
                passed: in_budget,
            });
            passed &= in_budget;
        }
        CriterionOutcome { id, name, passed, checks, elapsed_ms, budget_ms }
    }
}

/// Criterion 1: the threshold prime is exactly 173, by strict exact
/// comparison, with 167 failing.
pub fn criterion_1_threshold() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let min = min_general_type_prime();
    rec.check(format!("min_general_type_prime() = {min}, expected 173"), min == 173);
    let d173 = general_type_test(173);
    rec.check(
        format!(
            "p=173: supply {} > obstruction {} and verdict true",
            d173.supply_coeff, d173.obstruction_rhs
        ),
        d173.verdict && d173.supply_coeff > d173.obstruction_rhs,
    );
    let d167 = general_type_test(167);
    rec.check(
        format!(
            "p=167: supply {} <= obstruction {} and verdict false",
            d167.supply_coeff, d167.obstruction_rhs
        ),
        !d167.verdict && d167.supply_coeff < d167.obstruction_rhs,
    );
    rec.check(
        "every prime below 173 fails",
        primes_up_to(172).into_iter().all(|p| !general_type_test(p).verdict),
    );
    rec.finish(1, "threshold", start, Some(1000))
}

// Second summation of the weight-2 Jacobi dimension, coded independently:
// floors and the mod-6 test are done by counting, not division.
fn jacobi_dim_weight2_oracle(t: u64) -> i64 {
    let mut total = 0i64;
    for j in 1..=t {
        let m = 1 + j;
        let mut b6 = 0i64;
        let mut s = 6u64;
        while s <= m {
            b6 += 1;
            s += 6;
        }
        if m as i64 - 6 * b6 == 1 {
            b6 -= 1;
        }
        let mut fl = 0i64;
        let mut k = 1u64;
        while 4 * t * k <= j * j {
            fl += 1;
            k += 1;
        }
        total += b6 - fl;
    }
    total
}

/// Criterion 2: weight-2 supply is positive for every prime 71 < p ≤ 1000,
/// and the p = 73 value agrees with the independent summation.
pub fn criterion_2_weight2_supply() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let bad: Vec<u64> = primes_up_to(1000)
        .into_iter()
        .filter(|&p| p > 71 && jacobi_cusp_dim_weight2(p) <= 0)
        .collect();
    rec.check(
        format!("dim > 0 for every prime 71 < p <= 1000 (violations: {bad:?})"),
        bad.is_empty(),
    );
    let v = jacobi_cusp_dim_weight2(73);
    let o = jacobi_dim_weight2_oracle(73);
    rec.check(
        format!("p=73 value {v} matches independent second summation {o}"),
        v == o && v == 2,
    );
    let v71 = jacobi_cusp_dim_weight2(71);
    rec.check(
        format!("p=71 value recorded without interpretation: {v71}"),
        v71 == jacobi_dim_weight2_oracle(71),
    );
    rec.finish(2, "weight-2 supply", start, Some(1000))
}

/// Criterion 3: the index chain reproduces (p²+1)/8640 exactly for all
/// primes ≤ 200, and leading coefficients divide down to the covering
/// degree p(p²−1)/2.
pub fn criterion_3_index_chain() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let odd_primes: Vec<u64> = primes_up_to(200).into_iter().filter(|&p| p > 2).collect();
    let chain_ok = odd_primes
        .iter()
        .all(|&p| audit_prop22_chain(p).map(|a| a.passed).unwrap_or(false));
    rec.check("index chain exact for all primes p <= 200", chain_ok);
    let ratio_ok = odd_primes.iter().all(|&p| {
        let level = cusp_dim_leading(GroupTag::Level(p)).unwrap().leading;
        let para = cusp_dim_leading(GroupTag::Paramodular(p)).unwrap().leading;
        let deg = index_record(p).unwrap().covering_degree;
        level / para == Rational::from_integer(deg.into())
    });
    rec.check(
        "level/paramodular leading ratio equals p(p^2-1)/2 for all primes p <= 200",
        ratio_ok,
    );
    rec.finish(3, "index chain", start, None)
}

/// Criterion 4: the singularity catalog classifies with zero mismatches,
/// and the branch-locus group family is canonical for p ∈ {7, 13}, every r.
pub fn criterion_4_singularity_catalog() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let named: [(u64, [i64; 3], bool); 5] = [
        (2, [1, 1, 1], true),
        (3, [1, 2, 1], true),
        (2, [0, 1, 1], true),
        (3, [0, 1, 1], false),
        (2, [1, 2, 1], true),
    ];
    for (r, w, want) in named {
        let q = CyclicQuotient::new(r, w).unwrap();
        let got = classify_cyclic(&q).unwrap();
        rec.check(
            format!("1/{r}({},{},{}) classified {got}, canonical = {want}", w[0], w[1], w[2]),
            got.is_canonical() == want,
        );
    }
    let mismatches = catalog_mismatches();
    rec.check(format!("catalog mismatches: {mismatches}"), mismatches == 0);
    for p in [7u64, 13] {
        let all_ok = (0..p as i64).all(|r| {
            zp_z3_group(p, r)
                .and_then(|g| classify_monomial(&g))
                .map(|c| c.is_canonical())
                .unwrap_or(false)
        });
        rec.check(
            format!("Z_{p} semidirect Z_3 quotients canonical for every r in [0, {p})"),
            all_ok,
        );
    }
    rec.finish(4, "singularity catalog", start, Some(5000))
}

/// Criterion 5: exhaustive classification of the corank-2 boundary family
/// for p ∈ {13, 173} finds at least one non-canonical type; the full table
/// is emitted (and pinned as a golden file by the test target).
pub fn criterion_5_eh_family() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    for p in [13u64, 173] {
        match eh_series_table(p) {
            Ok(table) => {
                let classified: Vec<_> =
                    table.iter().filter(|r| r.exclusion.is_none()).collect();
                let not_canonical = classified
                    .iter()
                    .filter(|r| r.classification == Some(Classification::NotCanonical))
                    .count();
                rec.check(
                    format!(
                        "p={p}: {} non-excluded residues all classified, {} NOT_CANONICAL",
                        classified.len(),
                        not_canonical
                    ),
                    !classified.is_empty()
                        && classified.iter().all(|r| r.classification.is_some())
                        && not_canonical >= 1,
                );
            }
            Err(e) => {
                rec.check(format!("p={p}: table failed: {e}"), false);
            }
        }
    }
    rec.finish(5, "corank-2 boundary family", start, None)
}

/// Criterion 6: the toric counts. Dual index equals p on 50 pseudo-random
/// data sets; the count over n³ at the stated n lands within 10% of
/// (p−Σν)³/(6∏ν·p); serial and parallel enumeration agree; and the count
/// arbitrates the two volume formulas in favour of the stated region.
pub fn criterion_6_toric_counting() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();

    // 50 deterministic pseudo-random valid data sets with p <= 37
    let primes = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut all_index_ok = true;
    for _ in 0..50 {
        let p = primes[(next() % primes.len() as u64) as usize];
        let nu = [next() % (p - 1) + 1, next() % (p - 1) + 1, next() % (p - 1) + 1];
        let data = QuotientLatticeData::new(p, nu).unwrap();
        if dual_index(&data) != p {
            all_index_ok = false;
            break;
        }
    }
    rec.check("dual index equals p for 50 random valid data sets", all_index_ok);

    for (p, nu, n, vol_num, vol_den) in [
        (11u64, [1u64, 2, 3], 120u64, 125i64, 36i64),
        (5, [1, 1, 1], 200, 4, 3),
    ] {
        let data = QuotientLatticeData::new(p, nu).unwrap();
        let count = plurigenus_count(&data, n);
        let serial = plurigenus_count_serial(&data, n);
        rec.check(
            format!("p={p} nu={nu:?} n={n}: parallel {count} == serial {serial}"),
            count == serial,
        );
        let ratio_n = rat(count as i64) / rat((n * n * n) as i64);
        let prediction = ratio(vol_num, vol_den) / rat(p as i64);
        let dev = (&ratio_n - &prediction) / &prediction;
        let dev_abs = if dev < rat(0) { -dev } else { dev };
        rec.check(
            format!(
                "p={p} nu={nu:?}: |count/n^3 - vol/p|/(vol/p) = {dev_abs} <= 1/10 at n={n}"
            ),
            dev_abs <= ratio(1, 10),
        );
        let vols = simplex_volume(&data);
        rec.check(
            format!(
                "volume formulas disagree as expected: region {} vs printed {}",
                vols.stated_region, vols.printed_product
            ),
            !vols.formulas_agree && vols.stated_region == ratio(vol_num, vol_den),
        );
    }
    rec.finish(6, "toric counting", start, Some(30_000))
}

/// Criterion 7: sampled group properties. 200 random elements per prime in
/// {5, 7, 13} pass membership; Θ-conjugates stay in Γ_p; conjugates of
/// Γ_{pq²} samples land in Γ_p for (p,q) ∈ {(5,2),(7,3)}; Θ² = I₁² = I₂² = 1
/// exactly; the two involutions fix their loci under the Möbius action.
pub fn criterion_7_group_properties() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();

    for p in [5u64, 7, 13] {
        let theta = GroupElement::theta(p).unwrap();
        let mut members = true;
        let mut theta_ok = true;
        for seed in 0..200u64 {
            let g = random_element(p, seed, 8);
            if !in_paramodular(&g, p) {
                members = false;
                break;
            }
            let c = conjugate(&g, &theta).unwrap();
            if !in_paramodular(&c, p) {
                theta_ok = false;
                break;
            }
        }
        rec.check(format!("200 random elements of Gamma_{p} pass membership"), members);
        rec.check(
            format!("their conjugates under the dual symmetry stay in Gamma_{p}"),
            theta_ok,
        );
    }

    for (p, q) in [(5u64, 2u64), (7, 3)] {
        let witness = GroupElement::q_conjugator(q);
        let ok = (0..200u64).all(|seed| {
            let g = random_element(p * q * q, seed, 8);
            conjugate(&g, &witness)
                .map(|c| in_paramodular(&c, p))
                .unwrap_or(false)
        });
        rec.check(
            format!("200 samples of Gamma_{} conjugate into Gamma_{p}", p * q * q),
            ok,
        );
    }

    let id = GroupElement::identity();
    let theta5 = GroupElement::theta(5).unwrap();
    rec.check("Theta^2 = 1 exactly", theta5.mul(&theta5) == id);
    rec.check("I_1^2 = 1 exactly", GroupElement::i1().mul(&GroupElement::i1()) == id);
    rec.check("I_2^2 = 1 exactly", GroupElement::i2().mul(&GroupElement::i2()) == id);

    let zi = |n: i64, d: i64| gauss(rat(0), ratio(n, d));
    let diag_pt = SiegelPoint::new(zi(1, 1), gauss(rat(0), rat(0)), zi(3, 2)).unwrap();
    rec.check(
        "I_1 fixes tau_2 = 0 points",
        moebius_action(&GroupElement::i1(), &diag_pt).unwrap() == diag_pt,
    );
    let h2_pt = SiegelPoint::new(zi(1, 1), zi(-1, 2), zi(1, 1)).unwrap();
    rec.check(
        "I_2 fixes tau_2 = -tau_3/2 points",
        moebius_action(&GroupElement::i2(), &h2_pt).unwrap() == h2_pt,
    );

    rec.finish(7, "group properties", start, Some(10_000))
}

/// Criterion 8: audit honesty. The replayed intermediate of the ruled
/// surface count differs from the stated coefficient by exactly 6 at every
/// prime, while the stated chain itself is exact: interior = 2·e2 and
/// 27·interior = 7/2 − 9/p for all primes ≤ 1000.
pub fn criterion_8_audit_honesty() -> CriterionOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let odd_primes: Vec<u64> = primes_up_to(1000).into_iter().filter(|&p| p > 2).collect();
    rec.check(
        "replayed intermediate differs from the stated coefficient by the factor 6, at every prime <= 1000",
        odd_primes.iter().all(|&p| audit_thm49(p).unwrap().factor_is_six),
    );
    rec.check(
        "interior coefficient = 2 x ruled-surface coefficient, exactly",
        odd_primes
            .iter()
            .all(|&p| interior_coeff(p).unwrap() == rat(2) * e2_coeff(p).unwrap()),
    );
    rec.check(
        "27 x interior coefficient = 7/2 - 9/p, exactly",
        odd_primes.iter().all(|&p| {
            rat(27) * interior_coeff(p).unwrap() == ratio(7, 2) - ratio(9, p as i64)
        }),
    );
    rec.check(
        "index-chain audit is exact at the same primes (cross-module consistency)",
        odd_primes
            .iter()
            .take_while(|&&p| p <= 200)
            .all(|&p| audit_prop22_chain(p).unwrap().passed),
    );
    rec.finish(8, "audit honesty", start, None)
}

/// Run the whole suite in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1_threshold(),
        criterion_2_weight2_supply(),
        criterion_3_index_chain(),
        criterion_4_singularity_catalog(),
        criterion_5_eh_family(),
        criterion_6_toric_counting(),
        criterion_7_group_properties(),
        criterion_8_audit_honesty(),
    ]
}
