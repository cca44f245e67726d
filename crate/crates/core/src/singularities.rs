//! Reid-Tai classification of cyclic diagonal quotient singularities and of
//! finite monomial-matrix group quotients, together with a catalog of every
//! singularity type arising on the compactified moduli space: the square of
//! singular curves in the product-locus Humbert surface, the isolated
//! boundary points, and the corank-2 boundary family.
//!
//! Convention throughout: a quasi-reflection (an element fixing a
//! hyperplane pointwise) is an error, not something silently reduced away.
//! Types are recorded after reflections have already been quotiented out,
//! so the classifiers insist the action is small and tell the caller when
//! it is not.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, mod_pow};
use crate::scalar::{frac, ratio, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SingularityError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("all weights vanish mod {0}: the action is trivial, not a singularity type")]
    TrivialWeights(u64),
    #[error("k = {k} acts as a quasi-reflection: quotient out reflections first")]
    QuasiReflection { k: u64 },
    #[error("a group element acts as a quasi-reflection: quotient out reflections first")]
    QuasiReflectionElement,
    #[error("group closure exceeded the bound of {0} elements")]
    ClosureBoundExceeded(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("k = {k} is out of range [1, {max}]")]
    KOutOfRange { k: u64, max: u64 },
}

/// A diagonal cyclic quotient singularity type 1/r (a₁, a₂, a₃).
///
/// Weights are stored reduced to `[0, r)`. For r ≥ 2 at least one weight
/// must be nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicQuotient {
    order: u64,
    weights: [u64; 3],
}

impl CyclicQuotient {
    pub fn new(order: u64, weights: [i64; 3]) -> Result<Self, SingularityError> {
        if order == 0 {
            return Err(SingularityError::ZeroOrder);
        }
        let r = order as i64;
        let reduced = weights.map(|w| w.rem_euclid(r) as u64);
        if order > 1 && reduced.iter().all(|&w| w == 0) {
            return Err(SingularityError::TrivialWeights(order));
        }
        Ok(Self { order, weights: reduced })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weights(&self) -> [u64; 3] {
        self.weights
    }
}

impl std::fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "1/{}({},{},{})",
            self.order, self.weights[0], self.weights[1], self.weights[2]
        )
    }
}

/// Reid-Tai age of the k-th power: Σᵢ frac(k·aᵢ/r).
pub fn reid_tai_age(q: &CyclicQuotient, k: u64) -> Result<Rational, SingularityError> {
    if k < 1 || k >= q.order {
        return Err(SingularityError::KOutOfRange { k, max: q.order.saturating_sub(1) });
    }
    let r = q.order as i64;
    Ok(q
        .weights
        .iter()
        .map(|&a| frac(&ratio((k as i64) * (a as i64), r)))
        .sum())
}

/// True when the k-th power fixes a hyperplane: exactly one of the k·aᵢ is
/// nonzero mod r.
pub fn is_quasireflection(q: &CyclicQuotient, k: u64) -> Result<bool, SingularityError> {
    if k < 1 || k >= q.order {
        return Err(SingularityError::KOutOfRange { k, max: q.order.saturating_sub(1) });
    }
    let nonzero = q
        .weights
        .iter()
        .filter(|&&a| !(k * a).is_multiple_of(q.order))
        .count();
    Ok(nonzero == 1)
}

/// Outcome of the Reid-Tai test. `Terminal` refines `Canonical`: every age
/// strictly above 1 rather than at least 1. [`Classification::is_canonical`]
/// is the coarse predicate the catalog expectations are stated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Smooth,
    Terminal,
    Canonical,
    NotCanonical,
}

impl Classification {
    pub fn is_canonical(self) -> bool {
        !matches!(self, Classification::NotCanonical)
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Smooth => "SMOOTH",
            Classification::Terminal => "TERMINAL",
            Classification::Canonical => "CANONICAL",
            Classification::NotCanonical => "NOT_CANONICAL",
        };
        f.write_str(s)
    }
}

/// Classify a cyclic diagonal quotient by running the age test over every
/// k in [1, r−1] with nontrivial action.
///
/// Errors if any power is a quasi-reflection: the caller must pass the type
/// with reflections already quotiented out.
pub fn classify_cyclic(q: &CyclicQuotient) -> Result<Classification, SingularityError> {
    for k in 1..q.order {
        if is_quasireflection(q, k)? {
            return Err(SingularityError::QuasiReflection { k });
        }
    }
    let mut all_strict = true;
    let mut any_nontrivial = false;
    for k in 1..q.order {
        if q.weights.iter().all(|&a| (k * a) % q.order == 0) {
            continue; // this power acts trivially
        }
        any_nontrivial = true;
        let age = reid_tai_age(q, k)?;
        if age < Rational::one() {
            return Ok(Classification::NotCanonical);
        }
        if age == Rational::one() {
            all_strict = false;
        }
    }
    if !any_nontrivial {
        return Ok(Classification::Smooth);
    }
    Ok(if all_strict {
        Classification::Terminal
    } else {
        Classification::Canonical
    })
}

/// A 3×3 monomial matrix with root-of-unity entries, stored exactly:
/// row i carries ζ_m^{exps[i]} in column `perm[i]`, so
/// (M z)ᵢ = ζ_m^{exps[i]} · z_{perm[i]}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialMatrix {
    perm: [usize; 3],
    exps: [u64; 3],
    modulus: u64,
}

impl MonomialMatrix {
    pub fn new(perm: [usize; 3], exps: [i64; 3], modulus: u64) -> Self {
        assert!(modulus >= 1);
        let mut seen = [false; 3];
        for &p in &perm {
            assert!(p < 3 && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let m = modulus as i64;
        Self { perm, exps: exps.map(|e| e.rem_euclid(m) as u64), modulus }
    }

    pub fn identity(modulus: u64) -> Self {
        Self::new([0, 1, 2], [0, 0, 0], modulus)
    }

    /// Diagonal matrix with entries ζ_m^{eᵢ}.
    pub fn diagonal(exps: [i64; 3], modulus: u64) -> Self {
        Self::new([0, 1, 2], exps, modulus)
    }

    /// The coordinate rotation (z₁, z₂, z₃) ↦ (z₃, z₁, z₂).
    pub fn cyclic_rotation(modulus: u64) -> Self {
        Self::new([2, 0, 1], [0, 0, 0], modulus)
    }

    pub fn is_identity(&self) -> bool {
        self.perm == [0, 1, 2] && self.exps.iter().all(|&e| e == 0)
    }

    /// Rescale to a larger compatible modulus.
    fn to_modulus(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.modulus));
        let f = m / self.modulus;
        Self { perm: self.perm, exps: self.exps.map(|e| e * f), modulus: m }
    }

    /// (self · other) z = self(other z).
    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let mut perm = [0usize; 3];
        let mut exps = [0u64; 3];
        for i in 0..3 {
            perm[i] = other.perm[self.perm[i]];
            exps[i] = (self.exps[i] + other.exps[self.perm[i]]) % self.modulus;
        }
        Self { perm, exps, modulus: self.modulus }
    }

    /// Eigenvalue arguments in [0, 1), exactly: a cycle of length c whose
    /// entry product is ζ_m^E contributes (E/m + j)/c for j = 0..c−1.
    pub fn eigenvalue_arguments(&self) -> Vec<Rational> {
        let mut seen = [false; 3];
        let mut args = Vec::with_capacity(3);
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            let mut cycle_len = 0u64;
            let mut exp_sum = 0u64;
            let mut i = start;
            loop {
                seen[i] = true;
                cycle_len += 1;
                exp_sum = (exp_sum + self.exps[i]) % self.modulus;
                i = self.perm[i];
                if i == start {
                    break;
                }
            }
            for j in 0..cycle_len {
                let arg = ratio(exp_sum as i64, (self.modulus * cycle_len) as i64)
                    + ratio(j as i64, cycle_len as i64);
                args.push(frac(&arg));
            }
        }
        args
    }

    /// Reid-Tai age: the sum of the eigenvalue arguments.
    pub fn age(&self) -> Rational {
        self.eigenvalue_arguments().into_iter().sum()
    }

    pub fn is_quasireflection(&self) -> bool {
        self.eigenvalue_arguments()
            .iter()
            .filter(|a| !a.is_zero())
            .count()
            == 1
    }
}

/// A finite group of monomial matrices, stored as its full closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialGroup {
    modulus: u64,
    elements: Vec<MonomialMatrix>,
}

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

impl MonomialGroup {
    /// Close the generating set under multiplication, up to `bound` elements.
    pub fn generate(
        generators: &[MonomialMatrix],
        bound: usize,
    ) -> Result<Self, SingularityError> {
        let modulus = generators
            .iter()
            .fold(1u64, |m, g| m.lcm(&g.modulus));
        let gens: Vec<MonomialMatrix> =
            generators.iter().map(|g| g.to_modulus(modulus)).collect();
        let identity = MonomialMatrix::identity(modulus);
        let mut seen: HashSet<MonomialMatrix> = HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(g) = frontier.pop() {
            for h in &gens {
                let e = g.mul(h);
                if seen.len() >= bound && !seen.contains(&e) {
                    return Err(SingularityError::ClosureBoundExceeded(bound));
                }
                if seen.insert(e.clone()) {
                    frontier.push(e);
                }
            }
        }
        let mut elements: Vec<MonomialMatrix> = seen.into_iter().collect();
        elements.sort_by_key(|m| (m.perm, m.exps));
        Ok(Self { modulus, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MonomialMatrix] {
        &self.elements
    }
}

/// Reid-Tai over a whole monomial group: canonical iff every nontrivial
/// element has age ≥ 1. Errors when some element is a quasi-reflection.
pub fn classify_monomial(group: &MonomialGroup) -> Result<Classification, SingularityError> {
    let mut any_nontrivial = false;
    let mut all_strict = true;
    let mut verdict_not_canonical = false;
    for el in &group.elements {
        if el.is_identity() {
            continue;
        }
        if el.is_quasireflection() {
            return Err(SingularityError::QuasiReflectionElement);
        }
        any_nontrivial = true;
        let age = el.age();
        if age < Rational::one() {
            verdict_not_canonical = true;
        } else if age == Rational::one() {
            all_strict = false;
        }
    }
    if verdict_not_canonical {
        return Ok(Classification::NotCanonical);
    }
    if !any_nontrivial {
        return Ok(Classification::Smooth);
    }
    Ok(if all_strict {
        Classification::Terminal
    } else {
        Classification::Canonical
    })
}

/// The ℤ_p ⋊ ℤ₃ action at a branch point of the corank-2 boundary
/// component: the coordinate rotation together with the diagonal of
/// exponents (1+r, −r, −1)/p.
pub fn zp_z3_group(p: u64, r: i64) -> Result<MonomialGroup, SingularityError> {
    if !is_prime(p) {
        return Err(SingularityError::NotPrime(p));
    }
    let rot = MonomialMatrix::cyclic_rotation(1);
    let diag = MonomialMatrix::diagonal([1 + r, -r, -1], p);
    MonomialGroup::generate(&[rot, diag], DEFAULT_CLOSURE_BOUND)
}

/// Why a residue r is excluded from the corank-2 boundary family
/// 1/p (r+1, −r, r(r+1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionReason {
    /// r ≡ 0: weights degenerate to (1, 0, 0).
    ResidueZero,
    /// r ≡ 1 mod p.
    ResidueOne,
    /// r ≡ −1: weights degenerate to (0, 1, 0), generated by
    /// quasi-reflections, so no singularity arises.
    ResidueMinusOne,
    /// r³ ≡ 1, r ≠ 1 in 𝔽_p.
    PrimitiveCubeRoot,
    /// r⁴ ≡ 1, r² ≡ −1 in 𝔽_p.
    PrimitiveFourthRoot,
}

/// One member of the boundary family, with its exclusion status.
#[derive(Debug, Clone, Serialize)]
pub struct EhSeriesType {
    pub p: u64,
    pub r: u64,
    pub quotient: CyclicQuotient,
    pub exclusion: Option<ExclusionReason>,
}

/// Build the type 1/p (r+1, −r, r(r+1)) and report whether the residue is
/// one of the excluded classes.
pub fn eh_series_type(p: u64, r: i64) -> Result<EhSeriesType, SingularityError> {
    if !is_prime(p) {
        return Err(SingularityError::NotPrime(p));
    }
    let rr = r.rem_euclid(p as i64) as u64;
    let weights = [
        (rr + 1) as i64,
        -(rr as i64),
        ((rr as i64) * (rr as i64 + 1)),
    ];
    let quotient = CyclicQuotient::new(p, weights)?;
    let exclusion = if rr == 0 {
        Some(ExclusionReason::ResidueZero)
    } else if rr == 1 {
        Some(ExclusionReason::ResidueOne)
    } else if rr == p - 1 {
        Some(ExclusionReason::ResidueMinusOne)
    } else if mod_pow(rr, 3, p) == 1 {
        Some(ExclusionReason::PrimitiveCubeRoot)
    } else if p > 2 && mod_pow(rr, 2, p) == p - 1 {
        Some(ExclusionReason::PrimitiveFourthRoot)
    } else {
        None
    };
    Ok(EhSeriesType { p, r: rr, quotient, exclusion })
}

/// One row of the exhaustive residue table for a prime p.
#[derive(Debug, Clone, Serialize)]
pub struct EhTableRow {
    pub r: u64,
    pub weights: [u64; 3],
    pub exclusion: Option<ExclusionReason>,
    /// Classification for non-excluded residues (always defined there:
    /// all three weights are nonzero, so no power is a quasi-reflection).
    pub classification: Option<Classification>,
}

/// Classify every residue r in [0, p) of the boundary family.
pub fn eh_series_table(p: u64) -> Result<Vec<EhTableRow>, SingularityError> {
    (0..p)
        .map(|r| {
            let t = eh_series_type(p, r as i64)?;
            let classification = match t.exclusion {
                Some(_) => None,
                None => Some(classify_cyclic(&t.quotient)?),
            };
            Ok(EhTableRow {
                r,
                weights: t.quotient.weights(),
                exclusion: t.exclusion,
                classification,
            })
        })
        .collect()
}

/// Quotient data backing a catalog record.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuotientData {
    Cyclic { quotient: CyclicQuotient },
    /// Stored as the ℤ_p ⋊ ℤ₃ parameters; the closure is regenerated when
    /// the record is checked.
    ZpZ3 { p: u64, r: i64 },
}

/// A named singularity of the compactified moduli space, with the
/// classification it is recorded to have and the one recomputed here.
#[derive(Debug, Clone, Serialize)]
pub struct SingularityRecord {
    pub name: &'static str,
    pub locus: &'static str,
    pub data: Option<QuotientData>,
    /// Expected canonicity where the source states one; `None` = unstated.
    pub expected_canonical: Option<bool>,
    pub computed: Option<Classification>,
    /// Where the type arises, described by the geometry.
    pub provenance: &'static str,
}

impl SingularityRecord {
    /// A record mismatches when data and an expectation are both present
    /// and the computed canonicity disagrees.
    pub fn mismatch(&self) -> bool {
        match (self.expected_canonical, self.computed) {
            (Some(want), Some(got)) => got.is_canonical() != want,
            _ => false,
        }
    }
}

fn record(
    name: &'static str,
    locus: &'static str,
    data: Option<QuotientData>,
    expected_canonical: Option<bool>,
    provenance: &'static str,
) -> SingularityRecord {
    let computed = data.as_ref().map(|d| match d {
        QuotientData::Cyclic { quotient } => {
            classify_cyclic(quotient).expect("catalog types are small actions")
        }
        QuotientData::ZpZ3 { p, r } => {
            classify_monomial(&zp_z3_group(*p, *r).expect("catalog group closes"))
                .expect("catalog group is small")
        }
    });
    SingularityRecord { name, locus, data, expected_canonical, computed, provenance }
}

fn cyclic_data(order: u64, weights: [i64; 3]) -> Option<QuotientData> {
    Some(QuotientData::Cyclic {
        quotient: CyclicQuotient::new(order, weights).expect("valid catalog type"),
    })
}

/// The full catalog. Records carrying quotient data are machine-checked;
/// the four corner points of the singular square are recorded with their
/// stated canonicity only, since no matrix data is given for them.
pub fn catalog() -> Vec<SingularityRecord> {
    vec![
        record(
            "C_{3,1}",
            "curve of period matrices diag(tau, rho), rho a primitive cube root of unity",
            cyclic_data(3, [0, 1, 1]),
            Some(false),
            "generic transverse type along the curve: cone on the twisted cubic",
        ),
        record(
            "C_{5,1}",
            "curve of period matrices diag(rho, tau); swapped with C_{3,1} by the dual-surface symmetry",
            cyclic_data(3, [0, 1, 1]),
            Some(false),
            "generic transverse type along the curve: cone on the twisted cubic",
        ),
        record(
            "C_{4,1}",
            "side of the singular square inside the product-locus Humbert surface",
            cyclic_data(2, [0, 1, 1]),
            Some(true),
            "generic transverse type along the curve: threefold ordinary double point",
        ),
        record(
            "C_{6,1}",
            "side of the singular square inside the product-locus Humbert surface",
            cyclic_data(2, [0, 1, 1]),
            Some(true),
            "generic transverse type along the curve: threefold ordinary double point",
        ),
        record(
            "P_{1,1}",
            "corner of the singular square",
            None,
            Some(false),
            "recorded canonicity only; no matrix data is given for the corner isotropy",
        ),
        record(
            "P_{2,1}",
            "corner of the singular square, meeting point of the two double-point curves",
            None,
            Some(true),
            "recorded canonicity only; no matrix data is given for the corner isotropy",
        ),
        record(
            "P_{3,1}",
            "corner of the singular square",
            None,
            Some(false),
            "recorded canonicity only; no matrix data is given for the corner isotropy",
        ),
        record(
            "P_{4,1}",
            "corner of the singular square",
            None,
            Some(false),
            "recorded canonicity only; no matrix data is given for the corner isotropy",
        ),
        record(
            "Q_{1,0}",
            "non-isolated singular point of the open boundary surface D(l_0)",
            cyclic_data(2, [0, 1, 1]),
            Some(true),
            "order-2 quotient where the double-point curve meets the boundary",
        ),
        record(
            "Q_{2,0}",
            "non-isolated singular point of the open boundary surface D(l_0)",
            cyclic_data(3, [0, 1, 1]),
            Some(false),
            "order-3 quotient where the twisted-cubic curve meets the boundary",
        ),
        record(
            "Q_{3,0}",
            "isolated singular point of the open boundary surface D(l_0)",
            cyclic_data(2, [1, 1, 1]),
            Some(true),
            "cone on the Veronese surface",
        ),
        record(
            "Q_{4,0}",
            "isolated singular point of the open boundary surface D(l_0)",
            cyclic_data(3, [1, 2, 1]),
            Some(true),
            "isolated cyclic quotient of order 3",
        ),
        record(
            "Q_{1,1}",
            "non-isolated singular point of the open boundary surface D(l_1)",
            cyclic_data(2, [0, 1, 1]),
            Some(true),
            "order-2 quotient where the double-point curve meets the boundary",
        ),
        record(
            "Q_{2,1}",
            "non-isolated singular point of the open boundary surface D(l_1)",
            cyclic_data(3, [0, 1, 1]),
            Some(false),
            "order-3 quotient where the twisted-cubic curve meets the boundary",
        ),
        record(
            "Q_{3,1}",
            "isolated singular point of the open boundary surface D(l_1)",
            cyclic_data(2, [1, 1, 1]),
            Some(true),
            "cone on the Veronese surface; same type as Q_{3,0}",
        ),
        record(
            "Q_{4,1}",
            "isolated singular point of the open boundary surface D(l_1)",
            cyclic_data(3, [1, 2, 1]),
            Some(true),
            "isolated cyclic quotient of order 3; same type as Q_{4,0}",
        ),
        record(
            "EH_HALF_121",
            "order-2 points of the corank-2 boundary curve inside the branch locus (p = 1, 5 mod 12)",
            cyclic_data(2, [1, 2, 1]),
            Some(true),
            "cyclic quotient of order 2, type 1/2(1,2,1)",
        ),
        record(
            "EH_ZP_Z3_P7_R2",
            "point of the corank-2 boundary curve inside the branch locus (p = 1, 7 mod 12)",
            Some(QuotientData::ZpZ3 { p: 7, r: 2 }),
            Some(true),
            "quotient by Z_7 semidirect Z_3; r = 2 is a primitive cube root mod 7, order 21",
        ),
        record(
            "EH_ZP_Z3_P13_R3",
            "point of the corank-2 boundary curve inside the branch locus (p = 1, 7 mod 12)",
            Some(QuotientData::ZpZ3 { p: 13, r: 3 }),
            Some(true),
            "quotient by Z_13 semidirect Z_3; r = 3 is a primitive cube root mod 13, order 39",
        ),
        record(
            "EH_R_SERIES",
            "isolated cyclic quotient points of the corank-2 boundary curve",
            cyclic_data(13, [3, -2, 6]),
            None,
            "family 1/p(r+1, -r, r(r+1)); representative p = 13, r = 2; not canonical in general",
        ),
    ]
}

/// Number of catalog records whose computed classification contradicts the
/// stated expectation. A correct build returns 0.
pub fn catalog_mismatches() -> usize {
    catalog().iter().filter(|r| r.mismatch()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn cq(r: u64, w: [i64; 3]) -> CyclicQuotient {
        CyclicQuotient::new(r, w).unwrap()
    }

    #[test]
    fn age_examples() {
        assert_eq!(reid_tai_age(&cq(2, [1, 1, 1]), 1).unwrap(), ratio(3, 2));
        assert_eq!(reid_tai_age(&cq(3, [0, 1, 1]), 1).unwrap(), ratio(2, 3));
        assert_eq!(reid_tai_age(&cq(3, [1, 2, 1]), 2).unwrap(), ratio(5, 3));
        assert!(matches!(
            reid_tai_age(&cq(3, [1, 2, 1]), 3),
            Err(SingularityError::KOutOfRange { .. })
        ));
    }

    #[test]
    fn quasireflection_examples() {
        assert!(is_quasireflection(&cq(2, [0, 0, 1]), 1).unwrap());
        assert!(!is_quasireflection(&cq(2, [0, 1, 1]), 1).unwrap());
        assert!(!is_quasireflection(&cq(3, [1, 2, 1]), 1).unwrap());
    }

    #[test]
    fn classify_named_types() {
        // cone on the Veronese: every age strictly above 1
        let v = classify_cyclic(&cq(2, [1, 1, 1])).unwrap();
        assert_eq!(v, Classification::Terminal);
        assert!(v.is_canonical());

        assert_eq!(
            classify_cyclic(&cq(3, [0, 1, 1])).unwrap(),
            Classification::NotCanonical
        );

        let q41 = classify_cyclic(&cq(3, [1, 2, 1])).unwrap();
        assert!(q41.is_canonical());

        // transverse A_1: age exactly 1 at k = 1
        assert_eq!(
            classify_cyclic(&cq(2, [0, 1, 1])).unwrap(),
            Classification::Canonical
        );

        // order-2 boundary branch type, (1,2,1) = (1,0,1) mod 2
        assert_eq!(
            classify_cyclic(&cq(2, [1, 2, 1])).unwrap(),
            Classification::Canonical
        );
    }

    #[test]
    fn quasireflection_is_an_error() {
        assert_eq!(
            classify_cyclic(&cq(2, [0, 0, 1])),
            Err(SingularityError::QuasiReflection { k: 1 })
        );
    }

    #[test]
    fn trivial_weights_rejected() {
        assert_eq!(
            CyclicQuotient::new(4, [0, 4, 8]),
            Err(SingularityError::TrivialWeights(4))
        );
        // order 1 is the trivial group: allowed, classifies smooth
        let t = cq(1, [0, 0, 0]);
        assert_eq!(classify_cyclic(&t).unwrap(), Classification::Smooth);
    }

    #[test]
    fn rotation_alone_is_canonical_with_age_one() {
        let g = MonomialGroup::generate(
            &[MonomialMatrix::cyclic_rotation(1)],
            DEFAULT_CLOSURE_BOUND,
        )
        .unwrap();
        assert_eq!(g.order(), 3);
        for el in g.elements() {
            if !el.is_identity() {
                assert_eq!(el.age(), rat(1));
            }
        }
        assert_eq!(classify_monomial(&g).unwrap(), Classification::Canonical);
    }

    #[test]
    fn zp_z3_examples() {
        // r a primitive cube root mod p closes at order 3p
        let g = zp_z3_group(7, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert!(classify_monomial(&g).unwrap().is_canonical());

        // otherwise the rotated diagonals span a rank-2 exponent lattice
        let g = zp_z3_group(7, 3).unwrap();
        assert_eq!(g.order(), 147);
        assert!(classify_monomial(&g).unwrap().is_canonical());
    }

    #[test]
    fn closure_bound_is_enforced() {
        // r = 2 is not a cube root mod 13, so the rotated diagonals span a
        // rank-2 exponent lattice: 3·13² = 507 elements
        let rot = MonomialMatrix::cyclic_rotation(1);
        let diag = MonomialMatrix::diagonal([3, -2, -1], 13);
        assert_eq!(
            MonomialGroup::generate(&[rot.clone(), diag.clone()], 100),
            Err(SingularityError::ClosureBoundExceeded(100))
        );
        assert_eq!(
            MonomialGroup::generate(&[rot, diag], 1000).unwrap().order(),
            507
        );
    }

    #[test]
    fn diagonal_group_matches_cyclic_classifier() {
        let q = cq(3, [1, 2, 1]);
        let g = MonomialGroup::generate(
            &[MonomialMatrix::diagonal([1, 2, 1], 3)],
            DEFAULT_CLOSURE_BOUND,
        )
        .unwrap();
        assert_eq!(classify_monomial(&g).unwrap(), classify_cyclic(&q).unwrap());
    }

    #[test]
    fn eh_series_examples() {
        let t = eh_series_type(13, 2).unwrap();
        assert_eq!(t.quotient.weights(), [3, 11, 6]);
        assert_eq!(t.exclusion, None);
        assert_eq!(
            classify_cyclic(&t.quotient).unwrap(),
            Classification::NotCanonical
        );

        let t = eh_series_type(7, 2).unwrap();
        assert_eq!(t.exclusion, Some(ExclusionReason::PrimitiveCubeRoot));

        let t = eh_series_type(5, 0).unwrap();
        assert_eq!(t.exclusion, Some(ExclusionReason::ResidueZero));

        let t = eh_series_type(13, -1).unwrap();
        assert_eq!(t.exclusion, Some(ExclusionReason::ResidueMinusOne));
        assert_eq!(t.quotient.weights(), [0, 1, 0]);

        let t = eh_series_type(13, 5).unwrap();
        assert_eq!(t.exclusion, Some(ExclusionReason::PrimitiveFourthRoot));
    }

    #[test]
    fn eh_witnesses_at_p173() {
        // hand-checked ages below 1 behind two rows of the p = 173 table
        let t = eh_series_type(173, 2).unwrap();
        assert_eq!(t.quotient.weights(), [3, 171, 6]);
        assert_eq!(reid_tai_age(&t.quotient, 58).unwrap(), ratio(60, 173));
        let t = eh_series_type(173, 97).unwrap();
        assert_eq!(t.quotient.weights(), [98, 76, 164]);
        assert_eq!(reid_tai_age(&t.quotient, 16).unwrap(), ratio(45, 173));
        for r in [2, 97] {
            let t = eh_series_type(173, r).unwrap();
            assert_eq!(
                classify_cyclic(&t.quotient).unwrap(),
                Classification::NotCanonical
            );
        }
    }

    #[test]
    fn eh_table_p13() {
        let table = eh_series_table(13).unwrap();
        assert_eq!(table.len(), 13);
        let excluded: Vec<u64> = table
            .iter()
            .filter(|r| r.exclusion.is_some())
            .map(|r| r.r)
            .collect();
        assert_eq!(excluded, vec![0, 1, 3, 5, 8, 9, 12]);
        for row in &table {
            if row.exclusion.is_none() {
                assert_eq!(row.classification, Some(Classification::NotCanonical));
            }
        }
    }

    #[test]
    fn catalog_has_no_mismatches() {
        let cat = catalog();
        assert_eq!(catalog_mismatches(), 0);
        // spot checks
        let q10 = cat.iter().find(|r| r.name == "Q_{1,0}").unwrap();
        assert_eq!(q10.computed, Some(Classification::Canonical));
        let c31 = cat.iter().find(|r| r.name == "C_{3,1}").unwrap();
        assert_eq!(c31.computed, Some(Classification::NotCanonical));
        let eh2 = cat.iter().find(|r| r.name == "EH_HALF_121").unwrap();
        assert!(eh2.computed.unwrap().is_canonical());
        // corners carry no data and are skipped, not counted as mismatches
        let p11 = cat.iter().find(|r| r.name == "P_{1,1}").unwrap();
        assert!(p11.data.is_none() && p11.computed.is_none() && !p11.mismatch());
    }

    fn weight_strategy() -> impl Strategy<Value = (u64, [i64; 3])> {
        (2u64..=30).prop_flat_map(|r| {
            (
                Just(r),
                [0i64..30_i64, 0i64..30, 0i64..30].prop_filter(
                    "nontrivial mod r",
                    move |w| w.iter().any(|&x| x.rem_euclid(r as i64) != 0),
                ),
            )
        })
    }

    proptest! {
        #[test]
        fn classification_invariant_under_weight_permutation(
            (r, w) in weight_strategy(),
        ) {
            let a = CyclicQuotient::new(r, w).unwrap();
            let b = CyclicQuotient::new(r, [w[1], w[2], w[0]]).unwrap();
            let c = CyclicQuotient::new(r, [w[2], w[0], w[1]]).unwrap();
            prop_assert_eq!(classify_cyclic(&a), classify_cyclic(&b));
            prop_assert_eq!(classify_cyclic(&a), classify_cyclic(&c));
        }

        #[test]
        fn ages_of_k_and_r_minus_k_sum_to_nontrivial_count(
            (r, w) in weight_strategy(), k in 1u64..30,
        ) {
            prop_assume!(k < r);
            let q = CyclicQuotient::new(r, w).unwrap();
            let nontrivial = |kk: u64| q.weights().iter()
                .filter(|&&a| !(kk * a).is_multiple_of(r)).count() as i64;
            prop_assume!(nontrivial(k) > 0);
            // frac(x) + frac(-x) = 1 for each coordinate moved by k
            let sum = reid_tai_age(&q, k).unwrap() + reid_tai_age(&q, r - k).unwrap();
            prop_assert_eq!(sum, rat(nontrivial(k)));
        }

        #[test]
        fn monomial_agrees_with_cyclic_on_diagonal_groups(
            (r, w) in weight_strategy(),
        ) {
            let q = CyclicQuotient::new(r, w).unwrap();
            let ws = q.weights();
            let g = MonomialGroup::generate(
                &[MonomialMatrix::diagonal(
                    [ws[0] as i64, ws[1] as i64, ws[2] as i64], r)],
                DEFAULT_CLOSURE_BOUND,
            ).unwrap();
            // both classifiers must agree, including on refusing
            // quasi-reflections (the error variants differ in detail)
            let mono = classify_monomial(&g);
            let cyc = classify_cyclic(&q);
            prop_assert_eq!(mono.is_err(), cyc.is_err());
            prop_assert_eq!(mono.ok(), cyc.ok());
        }
    }
}
