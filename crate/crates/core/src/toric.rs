//! Lattice-point plurigenus counts for a toric quotient germ: the lattice
//! N' = ℤ³ + ℤ·(1/p)(ν₁,ν₂,ν₃), its dual congruence lattice
//! M' = { x ∈ ℤ³ : ν·x ≡ 0 mod p }, the dilated open simplex
//! { xᵢ > n, ν·x < np }, and the growth of the interior count with n.
//!
//! The enumeration is a bounded double loop over (x₁, x₂) with the
//! congruence solved directly on x₃ (one residue class per pair), and is
//! slab-parallel over x₁. Serial and parallel enumeration agree exactly.

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, mod_inv};
use crate::scalar::{rat, serialize_rational, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("weight {0} out of range: need 0 < nu_i < p")]
    WeightOutOfRange(u64),
}

/// The lattice data (p; ν₁, ν₂, ν₃) with p prime and 0 < νᵢ < p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientLatticeData {
    pub p: u64,
    pub nu: [u64; 3],
}

impl QuotientLatticeData {
    pub fn new(p: u64, nu: [u64; 3]) -> Result<Self, ToricError> {
        if !is_prime(p) {
            return Err(ToricError::NotPrime(p));
        }
        for &v in &nu {
            if v == 0 || v >= p {
                return Err(ToricError::WeightOutOfRange(v));
            }
        }
        Ok(Self { p, nu })
    }

    fn nu_sum(&self) -> u64 {
        self.nu.iter().sum()
    }

    fn nu_product(&self) -> u64 {
        self.nu.iter().product()
    }
}

/// Membership in M': ν·x ≡ 0 (mod p).
pub fn dual_membership(x: [i64; 3], data: &QuotientLatticeData) -> bool {
    let dot: i64 = x
        .iter()
        .zip(&data.nu)
        .map(|(&xi, &ni)| xi * ni as i64)
        .sum();
    dot.rem_euclid(data.p as i64) == 0
}

/// Index |M : M'|, verified by counting the distinct residues of ν·x mod p
/// over a fundamental cube of side p rather than assumed.
pub fn dual_index(data: &QuotientLatticeData) -> u64 {
    let p = data.p;
    let mut seen = vec![false; p as usize];
    let mut count = 0u64;
    'outer: for x1 in 0..p {
        for x2 in 0..p {
            for x3 in 0..p {
                let r = (data.nu[0] * x1 + data.nu[1] * x2 + data.nu[2] * x3) % p;
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    count += 1;
                    if count == p {
                        break 'outer;
                    }
                }
            }
        }
    }
    count
}

// Count of x₃ in [lo, hi] with x₃ ≡ c (mod p).
fn progression_count(lo: i64, hi: i64, c: u64, p: u64) -> u64 {
    if hi < lo {
        return 0;
    }
    let p = p as i64;
    let first = lo + (c as i64 - lo).rem_euclid(p);
    if first > hi {
        0
    } else {
        ((hi - first) / p + 1) as u64
    }
}

// Points of one x₁-slab: the congruence pins x₃ to one residue class per
// (x₁, x₂) pair.
fn slab_count(data: &QuotientLatticeData, n: u64, x1: u64) -> u64 {
    let p = data.p as i64;
    let [n1, n2, n3] = data.nu.map(|v| v as i64);
    let hi = (n as i64) * p - 1;
    let lo = n as i64 + 1;
    let inv3 = mod_inv(data.nu[2], data.p) as i64;
    let mut total = 0u64;
    let mut x2 = lo;
    while n1 * (x1 as i64) + n2 * x2 + n3 * lo <= hi {
        let rem = hi - n1 * (x1 as i64) - n2 * x2;
        let ub = rem / n3;
        // x₃ ≡ −ν₃⁻¹(ν₁x₁ + ν₂x₂) (mod p)
        let c = ((-(n1 * (x1 as i64) + n2 * x2)).rem_euclid(p) * inv3).rem_euclid(p) as u64;
        total += progression_count(lo, ub, c, data.p);
        x2 += 1;
    }
    total
}

fn x1_range(data: &QuotientLatticeData, n: u64) -> std::ops::RangeInclusive<u64> {
    let p = data.p as i64;
    let [n1, n2, n3] = data.nu.map(|v| v as i64);
    let lo = n as i64 + 1;
    let hi = (n as i64) * p - 1;
    let max_x1 = (hi - n2 * lo - n3 * lo) / n1;
    if max_x1 < lo {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0; // empty
    }
    (lo as u64)..=(max_x1 as u64)
}

/// Exact interior count: integer x with ν·x ≡ 0 (mod p), xᵢ ≥ n+1 and
/// ν·x ≤ np − 1. Parallel over x₁ slabs.
pub fn plurigenus_count(data: &QuotientLatticeData, n: u64) -> u64 {
    x1_range(data, n)
        .into_par_iter()
        .map(|x1| slab_count(data, n, x1))
        .sum()
}

/// Same count, single-threaded; kept as an exact cross-check of the
/// parallel enumeration.
pub fn plurigenus_count_serial(data: &QuotientLatticeData, n: u64) -> u64 {
    x1_range(data, n).map(|x1| slab_count(data, n, x1)).sum()
}

/// The two closed-form volumes for the region { xᵢ > 1, ν·x < p }.
///
/// `stated_region` is the volume of that region as displayed: shifting by
/// yᵢ = xᵢ − 1 leaves the standard simplex ν·y < p − Σν, of volume
/// (p − Σν)³ / (6 ν₁ν₂ν₃) when p > Σν and 0 otherwise. `printed_product`
/// is the product formula (1/6)∏(p/νᵢ − 1), which has the same leading
/// term in p but differs for generic ν; the brute-force count is the
/// arbiter between them and confirms the stated-region form.
#[derive(Debug, Clone, Serialize)]
pub struct VolumeComparison {
    #[serde(serialize_with = "serialize_rational")]
    pub stated_region: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub printed_product: Rational,
    pub formulas_agree: bool,
}

pub fn simplex_volume(data: &QuotientLatticeData) -> VolumeComparison {
    let p = rat(data.p as i64);
    let [n1, n2, n3] = data.nu.map(|v| rat(v as i64));
    let prod = rat(data.nu_product() as i64);
    let stated_region = if data.p > data.nu_sum() {
        let c = &p - rat(data.nu_sum() as i64);
        (&c * &c * &c) / (rat(6) * &prod)
    } else {
        rat(0)
    };
    let printed_product = (&p - &n1) * (&p - &n2) * (&p - &n3) / (rat(6) * &prod);
    let formulas_agree = stated_region == printed_product;
    VolumeComparison { stated_region, printed_product, formulas_agree }
}

/// One table row of the growth report.
#[derive(Debug, Clone, Serialize)]
pub struct PlurigenusRow {
    pub n: u64,
    pub count: u64,
    /// count / n³, exactly.
    #[serde(serialize_with = "serialize_rational")]
    pub ratio: Rational,
}

/// Growth of the interior count against the volume prediction.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    pub data: QuotientLatticeData,
    pub n_max: u64,
    pub rows: Vec<PlurigenusRow>,
    pub volume: VolumeComparison,
    /// Vol(stated region)/p: the limit of count/n³ over the congruence
    /// sublattice of index p.
    #[serde(serialize_with = "serialize_rational")]
    pub prediction_exact: Rational,
    /// p²/(6ν₁ν₂ν₃): the leading-in-p approximation of the same limit.
    #[serde(serialize_with = "serialize_rational")]
    pub prediction_leading: Rational,
    /// |ratio(n_max) − prediction_exact| / prediction_exact, when defined.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub relative_deviation_at_max: Option<Rational>,
    pub identically_zero: bool,
}

fn serialize_opt_rational<S>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    match q {
        Some(v) => serialize_rational(v, s),
        None => s.serialize_none(),
    }
}

/// The n values tabulated by [`asymptotic_report`]: everything up to 16,
/// then the halving ladder n_max, n_max/2, n_max/4, … so that doubling
/// convergence can be read off directly.
fn report_ns(n_max: u64) -> Vec<u64> {
    let mut ns: Vec<u64> = (1..=n_max.min(16)).collect();
    let mut m = n_max;
    while m > 16 {
        ns.push(m);
        m /= 2;
    }
    ns.sort_unstable();
    ns.dedup();
    ns
}

pub fn asymptotic_report(data: &QuotientLatticeData, n_max: u64) -> AsymptoticReport {
    assert!(n_max >= 1);
    let volume = simplex_volume(data);
    let prediction_exact = &volume.stated_region / rat(data.p as i64);
    let prediction_leading =
        rat((data.p * data.p) as i64) / rat(6 * data.nu_product() as i64);

    let rows: Vec<PlurigenusRow> = report_ns(n_max)
        .into_iter()
        .map(|n| {
            let count = plurigenus_count(data, n);
            let ratio = rat(count as i64) / rat((n * n * n) as i64);
            PlurigenusRow { n, count, ratio }
        })
        .collect();

    let identically_zero = data.p <= data.nu_sum();
    let relative_deviation_at_max = if identically_zero {
        None
    } else {
        rows.last().map(|row| {
            let diff = &row.ratio - &prediction_exact;
            diff.abs() / &prediction_exact
        })
    };

    AsymptoticReport {
        data: *data,
        n_max,
        rows,
        volume,
        prediction_exact,
        prediction_leading,
        relative_deviation_at_max,
        identically_zero,
    }
}
