//! Cusp-form dimension bookkeeping: the weight-2 Jacobi cusp form count,
//! group orders and indices, and the leading k³ coefficients of cusp-form
//! dimension growth, with an exact audit of the index chain that produces
//! (p²+1)/8640.

use serde::Serialize;
use thiserror::Error;

use crate::arith::is_prime;
use crate::scalar::{rat, ratio, serialize_rational, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimensionError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("principal congruence level must be at least 3, got {0}")]
    LevelTooSmall(u64),
}

/// `{m}₆`: ⌊m/6⌋, minus one when m ≡ 1 (mod 6).
pub fn bracket6(m: u64) -> i64 {
    let floor = (m / 6) as i64;
    if m % 6 == 1 {
        floor - 1
    } else {
        floor
    }
}

/// Dimension of the space of weight-2 Jacobi cusp forms of index `t`:
/// Σ_{j=1..t} ( {1+j}₆ − ⌊j²/4t⌋ ).
///
/// The closed formula is used here for prime index; for composite `t` the
/// value is a formula extrapolation (see [`JacobiDimReport::extrapolated`]).
pub fn jacobi_cusp_dim_weight2(t: u64) -> i64 {
    assert!(t >= 1);
    (1..=t)
        .map(|j| bracket6(1 + j) - ((j * j) / (4 * t)) as i64)
        .sum()
}

/// Jacobi dimension together with the prime/composite caveat.
#[derive(Debug, Clone, Serialize)]
pub struct JacobiDimReport {
    pub index: u64,
    pub dim: i64,
    pub positive: bool,
    /// True when the index is composite, where the closed formula is only
    /// an extrapolation of the prime-index count.
    pub extrapolated: bool,
}

pub fn jacobi_dim_report(t: u64) -> JacobiDimReport {
    let dim = jacobi_cusp_dim_weight2(t);
    JacobiDimReport {
        index: t,
        dim,
        positive: dim > 0,
        extrapolated: !is_prime(t),
    }
}

/// The three index values attached to an odd prime p:
/// |SL(2,ℤ/p)| = p(p²−1), the level-subgroup index p(p⁴−1)/2, and the
/// covering degree p(p²−1)/2 of the level cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexRecord {
    pub p: u64,
    pub sl2_order: u128,
    pub level_index: u128,
    pub covering_degree: u128,
}

pub fn index_record(p: u64) -> Result<IndexRecord, DimensionError> {
    if p < 3 || !is_prime(p) {
        return Err(DimensionError::NotOddPrime(p));
    }
    let pp = p as u128;
    let sl2_order = pp * (pp * pp - 1);
    let level_index = pp * (pp * pp * pp * pp - 1) / 2;
    Ok(IndexRecord {
        p,
        sl2_order,
        level_index,
        covering_degree: sl2_order / 2,
    })
}

/// Which arithmetic group a leading coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupTag {
    /// Γ_p, the paramodular group of polarisation (1, p).
    Paramodular(u64),
    /// Γ_p^(lev), the level subgroup.
    Level(u64),
    /// Γ(l), the principal congruence subgroup of Sp(4,ℤ), l ≥ 3.
    Principal(u64),
}

/// Leading coefficient of k³ in the cusp-form dimension for the tagged group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionCoefficient {
    pub tag: GroupTag,
    #[serde(serialize_with = "serialize_rational")]
    pub leading: Rational,
}

/// |Sp(4, ℤ/l)| = l¹⁰ ∏_{q | l prime} (1 − q⁻²)(1 − q⁻⁴).
fn sp4_order(l: u64) -> Rational {
    let mut order = rat(l as i64).pow(10);
    let mut n = l;
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let qi = q as i64;
            order *= (rat(1) - ratio(1, qi * qi)) * (rat(1) - ratio(1, qi * qi * qi * qi));
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        let qi = n as i64;
        order *= (rat(1) - ratio(1, qi * qi)) * (rat(1) - ratio(1, qi * qi * qi * qi));
    }
    order
}

pub fn cusp_dim_leading(tag: GroupTag) -> Result<DimensionCoefficient, DimensionError> {
    let leading = match tag {
        GroupTag::Paramodular(p) => {
            if p < 3 || !is_prime(p) {
                return Err(DimensionError::NotOddPrime(p));
            }
            let pi = p as i64;
            ratio(pi * pi + 1, 8640)
        }
        GroupTag::Level(p) => {
            if p < 3 || !is_prime(p) {
                return Err(DimensionError::NotOddPrime(p));
            }
            let pr = rat(p as i64);
            let p4 = pr.pow(4);
            pr * (p4 - rat(1)) / rat(17280)
        }
        GroupTag::Principal(l) => {
            // dim = k³/8640 · [Γ̄(1):Γ(l)], and for l ≥ 3 the index is
            // |Sp(4,ℤ/l)|/2 since −1 maps to Γ̄(1) trivially.
            if l < 3 {
                return Err(DimensionError::LevelTooSmall(l));
            }
            sp4_order(l) / rat(2) / rat(8640)
        }
    };
    Ok(DimensionCoefficient { tag, leading })
}

/// One equality in the chain audit: both sides exactly, with the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub name: String,
    #[serde(serialize_with = "serialize_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs: Rational,
    pub equal: bool,
}

/// Exact replay of the index chain behind the (p²+1)/8640 coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct ChainAudit {
    pub p: u64,
    pub steps: Vec<ChainStep>,
    pub passed: bool,
}

/// Recompute ((p(p⁴−1)/2) / (p(p²−1))) / 4320 and compare it, exactly, with
/// (p²+1)/8640, step by step.
pub fn audit_prop22_chain(p: u64) -> Result<ChainAudit, DimensionError> {
    let rec = index_record(p)?;
    let pr = rat(p as i64);
    let p2 = pr.pow(2);
    let level_index = Rational::from_integer(rec.level_index.into());
    let sl2 = Rational::from_integer(rec.sl2_order.into());
    let quotient = &level_index / &sl2;
    let recomputed = &quotient / rat(4320);
    let stated = (&p2 + rat(1)) / rat(8640);
    let tagged = cusp_dim_leading(GroupTag::Paramodular(p))?.leading;

    // p(p⁴−1)/2 = p(p²−1)(p²+1)/2, the factorisation the chain relies on
    let factored = &pr * (&p2 - rat(1)) * (&p2 + rat(1)) / rat(2);

    let step = |name: &str, lhs: Rational, rhs: Rational| ChainStep {
        name: name.to_string(),
        equal: lhs == rhs,
        lhs,
        rhs,
    };
    let steps = vec![
        step(
            "level-subgroup index p(p^4-1)/2 equals p(p^2-1)(p^2+1)/2",
            level_index,
            factored,
        ),
        step(
            "index ratio equals (p^2+1)/2",
            quotient,
            (&p2 + rat(1)) / rat(2),
        ),
        step(
            "(index ratio)/4320 equals (p^2+1)/8640",
            recomputed.clone(),
            stated,
        ),
        step(
            "leading coefficient by tag matches the chain value",
            tagged,
            recomputed,
        ),
    ];

    let passed = steps.iter().all(|s| s.equal);
    Ok(ChainAudit { p, steps, passed })
}
