//! The paramodular group Γ_t and its level subgroup: integrality patterns,
//! named elements (the involutions I₁ and I₂, −1, the extra symmetry Θ over
//! ℚ(√p), the conjugator taking Γ_{pq²} into Γ_p), membership predicates,
//! deterministic random words in pattern-respecting generators, exact
//! conjugation, and the fractional linear action on the Siegel upper
//! half-plane at Gaussian-rational points.
//!
//! The two named involutions represent the only conjugacy classes of
//! involutions up to sign; their fixed loci project to the two Humbert
//! surfaces (products of elliptic curves and bielliptic surfaces) that
//! carry the branching. That classification is recorded here as data, not
//! re-derived.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::mat::{Mat, MatError};
use crate::scalar::{gauss, rat, ratio, GaussRational, QuadScalar, Rational, Scalar, ScalarError};

pub type RationalMat = Mat<Rational>;
pub type QuadMat = Mat<QuadScalar>;
pub type ComplexMat = Mat<GaussRational>;

#[derive(Debug, Error, PartialEq)]
pub enum GroupError {
    #[error("matrix must be 4x4, got {0}x{1}")]
    NotFourByFour(usize, usize),
    #[error("element has irrational entries where rational ones are required")]
    NotRational,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("CZ + D is singular at this point")]
    SingularDenominator,
    #[error("Moebius image is not symmetric; the element is not symplectic")]
    NotSymmetric,
    #[error("imaginary part is not positive definite")]
    NotInUpperHalfPlane,
}

/// Names attached to the distinguished elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    I1,
    I2,
    MinusOne,
    Theta,
    QCor62,
    EBlock,
}

/// A 4×4 group element over ℚ or ℚ(√p), with an optional name.
///
/// Elements of Γ_t itself are rational; the quadratic representation only
/// appears for Θ and for conjugates passing through it.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: ElementMatrix,
    label: Option<Label>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementMatrix {
    Rational(RationalMat),
    Quad(QuadMat),
}

impl GroupElement {
    pub fn from_rational(m: RationalMat) -> Result<Self, GroupError> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(GroupError::NotFourByFour(m.rows(), m.cols()));
        }
        Ok(Self { matrix: ElementMatrix::Rational(m), label: None })
    }

    pub fn from_quad(m: QuadMat) -> Result<Self, GroupError> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(GroupError::NotFourByFour(m.rows(), m.cols()));
        }
        // a quadratic matrix whose radical parts all vanish is rational
        let demoted: Option<Vec<Rational>> = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .map(|(r, c)| m.get(r, c).to_rational())
            .collect();
        Ok(match demoted {
            Some(entries) => {
                let mut rm = RationalMat::zero(4, 4);
                for (i, e) in entries.into_iter().enumerate() {
                    rm.set(i / 4, i % 4, e);
                }
                Self { matrix: ElementMatrix::Rational(rm), label: None }
            }
            None => Self { matrix: ElementMatrix::Quad(m), label: None },
        })
    }

    fn labelled(mut self, label: Label) -> Self {
        self.label = Some(label);
        self
    }

    /// Same matrix without the name; inverses and products drop labels.
    pub fn unlabelled(mut self) -> Self {
        self.label = None;
        self
    }

    pub fn label(&self) -> Option<Label> {
        self.label
    }

    pub fn matrix(&self) -> &ElementMatrix {
        &self.matrix
    }

    pub fn as_rational(&self) -> Option<&RationalMat> {
        match &self.matrix {
            ElementMatrix::Rational(m) => Some(m),
            ElementMatrix::Quad(_) => None,
        }
    }

    pub fn to_quad(&self) -> QuadMat {
        match &self.matrix {
            ElementMatrix::Rational(m) => m.map(|q| QuadScalar::from_rational(q.clone())),
            ElementMatrix::Quad(m) => m.clone(),
        }
    }

    pub fn identity() -> Self {
        Self::from_rational(RationalMat::identity(4)).unwrap()
    }

    /// diag(−1, 1, −1, 1); fixes the diagonal-period locus τ₂ = 0.
    pub fn i1() -> Self {
        Self::from_rational(RationalMat::diagonal(vec![rat(-1), rat(1), rat(-1), rat(1)]))
            .unwrap()
            .labelled(Label::I1)
    }

    /// The involution with GL-block A = [[−1,−1],[0,1]], completed
    /// symplectically as diag(A, (Aᵀ)⁻¹); fixes the locus τ₂ = −τ₃/2.
    pub fn i2() -> Self {
        let rows = vec![
            vec![rat(-1), rat(-1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(-1), rat(0)],
            vec![rat(0), rat(0), rat(-1), rat(1)],
        ];
        Self::from_rational(RationalMat::from_rows(rows))
            .unwrap()
            .labelled(Label::I2)
    }

    pub fn minus_one() -> Self {
        Self::from_rational(-&RationalMat::identity(4))
            .unwrap()
            .labelled(Label::MinusOne)
    }

    /// The dual-surface symmetry over ℚ(√p): antidiagonal 2×2 blocks with
    /// entries 1/√p and √p. Θ² = 1 and Θ normalises Γ_p.
    pub fn theta(p: u64) -> Result<Self, GroupError> {
        let s = QuadScalar::sqrt_of(p)?;
        let sinv = s.invert().expect("sqrt(p) is nonzero");
        let z = QuadScalar::zero;
        let rows = vec![
            vec![z(), sinv.clone(), z(), z()],
            vec![s.clone(), z(), z(), z()],
            vec![z(), z(), z(), s],
            vec![z(), z(), sinv, z()],
        ];
        Ok(Self::from_quad(QuadMat::from_rows(rows))?.labelled(Label::Theta))
    }

    /// diag(1, q⁻¹, 1, q): conjugates Γ_{pq²} into Γ_p slot by slot.
    pub fn q_conjugator(q: u64) -> Self {
        assert!(q >= 1);
        Self::from_rational(RationalMat::diagonal(vec![
            rat(1),
            ratio(1, q as i64),
            rat(1),
            rat(q as i64),
        ]))
        .unwrap()
        .labelled(Label::QCor62)
    }

    /// diag(1, p, 1, p⁻¹): the symplectic embedding of the boundary
    /// parabolic's GL(2) scaling E = diag(1, p). In Sp(4,ℚ) but not Γ_p.
    pub fn e_block(p: u64) -> Self {
        assert!(p >= 1);
        Self::from_rational(RationalMat::diagonal(vec![
            rat(1),
            rat(p as i64),
            rat(1),
            ratio(1, p as i64),
        ]))
        .unwrap()
        .labelled(Label::EBlock)
    }

    pub fn inverse(&self) -> Result<Self, GroupError> {
        Ok(match &self.matrix {
            ElementMatrix::Rational(m) => Self { matrix: ElementMatrix::Rational(m.inverse()?), label: None },
            ElementMatrix::Quad(m) => Self::from_quad(m.inverse()?)?,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (&self.matrix, &rhs.matrix) {
            (ElementMatrix::Rational(a), ElementMatrix::Rational(b)) => {
                Self { matrix: ElementMatrix::Rational(a * b), label: None }
            }
            _ => Self::from_quad(&self.to_quad() * &rhs.to_quad())
                .expect("product of 4x4 matrices is 4x4"),
        }
    }
}

/// The standard symplectic form J = [[0, 1₂], [−1₂, 0]] over any scalar.
fn symplectic_form<S: crate::scalar::Scalar>() -> Mat<S> {
    let mut j = Mat::<S>::zero(4, 4);
    j.set(0, 2, S::one());
    j.set(1, 3, S::one());
    j.set(2, 0, -S::one());
    j.set(3, 1, -S::one());
    j
}

pub fn symplectic_form_rational() -> RationalMat {
    symplectic_form::<Rational>()
}

fn is_symplectic_mat<S: crate::scalar::Scalar>(m: &Mat<S>) -> bool {
    if m.rows() != 4 || m.cols() != 4 {
        return false;
    }
    let j = symplectic_form::<S>();
    &(&m.transpose() * &j) * m == j
}

/// gᵀ J g = J, checked exactly over the element's own field.
pub fn is_symplectic(g: &GroupElement) -> bool {
    match &g.matrix {
        ElementMatrix::Rational(m) => is_symplectic_mat(m),
        ElementMatrix::Quad(m) => is_symplectic_mat(m),
    }
}

// Integrality slots of the defining displays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Int,
    IntTimesT,
    IntTimesT2,
    IntOverT,
}

impl Slot {
    fn admits(self, q: &Rational, t: u64) -> bool {
        let t = rat(t as i64);
        match self {
            Slot::Int => q.is_integer(),
            Slot::IntTimesT => (q / &t).is_integer(),
            Slot::IntTimesT2 => (q / (&t * &t)).is_integer(),
            Slot::IntOverT => (q * &t).is_integer(),
        }
    }
}

/// Entry constraints of the Γ_t display: γ itself lies in this pattern.
const PARAMODULAR_PATTERN: [[Slot; 4]; 4] = {
    use Slot::*;
    [
        [Int, Int, Int, IntTimesT],
        [IntTimesT, Int, IntTimesT, IntTimesT],
        [Int, Int, Int, IntTimesT],
        [Int, IntOverT, Int, Int],
    ]
};

/// Entry constraints of the Γ_t^(lev) display: γ − 1 lies in this pattern,
/// with the t²ℤ slot in position (2,4).
const LEVEL_PATTERN: [[Slot; 4]; 4] = {
    use Slot::*;
    [
        [Int, Int, Int, IntTimesT],
        [IntTimesT, IntTimesT, IntTimesT, IntTimesT2],
        [Int, Int, Int, IntTimesT],
        [Int, Int, Int, IntTimesT],
    ]
};

fn matches_pattern(m: &RationalMat, pattern: &[[Slot; 4]; 4], t: u64) -> bool {
    (0..4).all(|r| (0..4).all(|c| pattern[r][c].admits(m.get(r, c), t)))
}

/// Membership in Γ_t: symplectic and every entry in its display slot.
/// Elements with genuinely irrational entries are never members.
pub fn in_paramodular(g: &GroupElement, t: u64) -> bool {
    assert!(t >= 1);
    match g.as_rational() {
        Some(m) => is_symplectic_mat(m) && matches_pattern(m, &PARAMODULAR_PATTERN, t),
        None => false,
    }
}

/// Membership in Γ_t^(lev): symplectic and γ − 1 in the congruence pattern.
pub fn in_level(g: &GroupElement, t: u64) -> bool {
    assert!(t >= 1);
    match g.as_rational() {
        Some(m) => {
            is_symplectic_mat(m)
                && matches_pattern(&(m - &RationalMat::identity(4)), &LEVEL_PATTERN, t)
        }
        None => false,
    }
}

// Generators used by the random words. Each respects the Γ_t pattern:
//  - upper unipotent [[1, B],[0, 1]], B = [[b₁, t b₂],[t b₂, t b₃]]
//  - lower unipotent [[1, 0],[C, 1]], C = [[c₁, c₂],[c₂, c₃/t]]
//  - GL-block diag(A, (Aᵀ)⁻¹) for A = [[1, m],[0, 1]] or [[1, 0],[t m, 1]]
//  - I₁, I₂, −1₄
fn upper_unipotent(t: u64, b: [i64; 3]) -> RationalMat {
    let t = t as i64;
    let mut m = RationalMat::identity(4);
    m.set(0, 2, rat(b[0]));
    m.set(0, 3, rat(t * b[1]));
    m.set(1, 2, rat(t * b[1]));
    m.set(1, 3, rat(t * b[2]));
    m
}

fn lower_unipotent(t: u64, c: [i64; 3]) -> RationalMat {
    let mut m = RationalMat::identity(4);
    m.set(2, 0, rat(c[0]));
    m.set(2, 1, rat(c[1]));
    m.set(3, 0, rat(c[1]));
    m.set(3, 1, ratio(c[2], t as i64));
    m
}

fn gl_block_upper(m_coeff: i64) -> RationalMat {
    // A = [[1, m],[0,1]], (Aᵀ)⁻¹ = [[1, 0],[−m, 1]]
    let mut m = RationalMat::identity(4);
    m.set(0, 1, rat(m_coeff));
    m.set(3, 2, rat(-m_coeff));
    m
}

fn gl_block_lower(t: u64, m_coeff: i64) -> RationalMat {
    // A = [[1, 0],[t m, 1]], (Aᵀ)⁻¹ = [[1, −t m],[0, 1]]
    let mut m = RationalMat::identity(4);
    m.set(1, 0, rat(t as i64 * m_coeff));
    m.set(2, 3, rat(-(t as i64) * m_coeff));
    m
}

/// Deterministic random word in the generating set above. The contract is
/// only that the result satisfies [`in_paramodular`]; the word is a sample,
/// not a uniform draw from the group.
pub fn random_element(t: u64, seed: u64, word_length: usize) -> GroupElement {
    assert!(t >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = RationalMat::identity(4);
    for _ in 0..word_length {
        let coeff = |rng: &mut ChaCha8Rng| -> i64 { rng.gen_range(-2..=2) };
        let factor = match rng.gen_range(0..7u32) {
            0 => upper_unipotent(t, [coeff(&mut rng), coeff(&mut rng), coeff(&mut rng)]),
            1 => lower_unipotent(t, [coeff(&mut rng), coeff(&mut rng), coeff(&mut rng)]),
            2 => gl_block_upper(coeff(&mut rng)),
            3 => gl_block_lower(t, coeff(&mut rng)),
            4 => RationalMat::diagonal(vec![rat(-1), rat(1), rat(-1), rat(1)]),
            5 => {
                let i2 = GroupElement::i2();
                i2.as_rational().unwrap().clone()
            }
            _ => RationalMat::diagonal(vec![rat(-1), rat(-1), rat(-1), rat(-1)]),
        };
        acc = &acc * &factor;
    }
    GroupElement::from_rational(acc).unwrap()
}

/// Deterministic random word inside Γ_t^(lev), built from generators whose
/// difference from 1 already satisfies the congruence pattern.
pub fn random_level_element(t: u64, seed: u64, word_length: usize) -> GroupElement {
    assert!(t >= 1);
    let ti = t as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = RationalMat::identity(4);
    for _ in 0..word_length {
        let coeff = |rng: &mut ChaCha8Rng| -> i64 { rng.gen_range(-2..=2) };
        let factor = match rng.gen_range(0..6u32) {
            0 => {
                // upper unipotent with B = [[b₁, t b₂],[t b₂, t² b₃]]
                let (b1, b2, b3) = (coeff(&mut rng), coeff(&mut rng), coeff(&mut rng));
                let mut m = RationalMat::identity(4);
                m.set(0, 2, rat(b1));
                m.set(0, 3, rat(ti * b2));
                m.set(1, 2, rat(ti * b2));
                m.set(1, 3, rat(ti * ti * b3));
                m
            }
            1 => {
                // lower unipotent with integral symmetric C
                let (c1, c2, c3) = (coeff(&mut rng), coeff(&mut rng), coeff(&mut rng));
                let mut m = RationalMat::identity(4);
                m.set(2, 0, rat(c1));
                m.set(2, 1, rat(c2));
                m.set(3, 0, rat(c2));
                m.set(3, 1, rat(c3));
                m
            }
            2 => gl_block_upper(coeff(&mut rng)),
            3 => gl_block_lower(t, coeff(&mut rng)),
            4 => RationalMat::diagonal(vec![rat(-1), rat(1), rat(-1), rat(1)]),
            _ => GroupElement::i2().as_rational().unwrap().clone(),
        };
        acc = &acc * &factor;
    }
    GroupElement::from_rational(acc).unwrap()
}

/// h · g · h⁻¹, exactly. Promotes to ℚ(√p) when either side needs it and
/// demotes back to ℚ whenever the result is rational.
pub fn conjugate(g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
    match (&g.matrix, &h.matrix) {
        (ElementMatrix::Rational(gm), ElementMatrix::Rational(hm)) => {
            let hinv = hm.inverse()?;
            GroupElement::from_rational(&(hm * gm) * &hinv)
        }
        _ => {
            let gq = g.to_quad();
            let hq = h.to_quad();
            let hinv = hq.inverse()?;
            GroupElement::from_quad(&(&hq * &gq) * &hinv)
        }
    }
}

/// A point Z = [[τ₁, τ₂],[τ₂, τ₃]] of the degree-2 Siegel upper half-plane
/// with Gaussian-rational coordinates: Im τ₁ > 0 and det Im Z > 0, checked
/// exactly on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    tau1: GaussRational,
    tau2: GaussRational,
    tau3: GaussRational,
}

impl SiegelPoint {
    pub fn new(
        tau1: GaussRational,
        tau2: GaussRational,
        tau3: GaussRational,
    ) -> Result<Self, GroupError> {
        let det = &tau1.im * &tau3.im - &tau2.im * &tau2.im;
        if !tau1.im.is_positive() || !det.is_positive() {
            return Err(GroupError::NotInUpperHalfPlane);
        }
        Ok(Self { tau1, tau2, tau3 })
    }

    pub fn coords(&self) -> (&GaussRational, &GaussRational, &GaussRational) {
        (&self.tau1, &self.tau2, &self.tau3)
    }

    fn as_matrix(&self) -> ComplexMat {
        ComplexMat::from_rows(vec![
            vec![self.tau1.clone(), self.tau2.clone()],
            vec![self.tau2.clone(), self.tau3.clone()],
        ])
    }
}

/// Z ↦ (AZ + B)(CZ + D)⁻¹ for a rational symplectic element, evaluated
/// exactly. The image's two off-diagonal entries are checked equal before
/// one is used.
pub fn moebius_action(g: &GroupElement, z: &SiegelPoint) -> Result<SiegelPoint, GroupError> {
    let m = g.as_rational().ok_or(GroupError::NotRational)?;
    let lift = |q: &Rational| gauss(q.clone(), Rational::zero());
    let a = m.block(0, 0, 2, 2).map(lift);
    let b = m.block(0, 2, 2, 2).map(lift);
    let c = m.block(2, 0, 2, 2).map(lift);
    let d = m.block(2, 2, 2, 2).map(lift);
    let zm = z.as_matrix();
    let num = &(&a * &zm) + &b;
    let den = &(&c * &zm) + &d;
    let den_inv = den.inverse().map_err(|_| GroupError::SingularDenominator)?;
    let w = &num * &den_inv;
    if w.get(0, 1) != w.get(1, 0) {
        return Err(GroupError::NotSymmetric);
    }
    SiegelPoint::new(w.get(0, 0).clone(), w.get(0, 1).clone(), w.get(1, 1).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss_i(num: i64, den: i64) -> GaussRational {
        gauss(rat(0), ratio(num, den))
    }

    #[test]
    fn named_elements_are_involutions() {
        for g in [GroupElement::i1(), GroupElement::i2()] {
            assert_eq!(g.mul(&g), GroupElement::identity());
            assert!(is_symplectic(&g));
        }
        let theta = GroupElement::theta(5).unwrap();
        assert_eq!(theta.mul(&theta), GroupElement::identity());
        assert!(is_symplectic(&theta));
        // theta squared demotes back to the rational representation
        assert!(theta.mul(&theta).as_rational().is_some());
        assert!(theta.as_rational().is_none());
    }

    #[test]
    fn theta_is_its_own_inverse() {
        let theta = GroupElement::theta(7).unwrap();
        assert_eq!(theta.inverse().unwrap(), theta.clone().unlabelled());
    }

    #[test]
    fn symplectic_counterexample() {
        let mut m = RationalMat::identity(4);
        m.set(0, 0, rat(2));
        let g = GroupElement::from_rational(m).unwrap();
        assert!(!is_symplectic(&g));
        assert!(!in_paramodular(&g, 5));
    }

    #[test]
    fn membership_of_named_elements() {
        for t in [1, 5, 7, 13] {
            assert!(in_paramodular(&GroupElement::minus_one(), t));
            assert!(in_paramodular(&GroupElement::i1(), t));
            assert!(in_paramodular(&GroupElement::i2(), t));
            assert!(in_level(&GroupElement::i1(), t));
            assert!(in_level(&GroupElement::i2(), t));
            assert!(in_level(&GroupElement::identity(), t));
        }
        // −1 is in Γ_p but not in the level subgroup
        assert!(!in_level(&GroupElement::minus_one(), 5));
        // Θ is not even rational
        assert!(!in_paramodular(&GroupElement::theta(5).unwrap(), 5));
        // E-block is symplectic but violates the pattern
        let e = GroupElement::e_block(5);
        assert!(is_symplectic(&e));
        assert!(!in_paramodular(&e, 5));
    }

    #[test]
    fn pattern_violation() {
        // entry 1/t in a Z-slot
        let mut m = RationalMat::identity(4);
        m.set(0, 0, ratio(1, 5));
        m.set(0, 2, rat(1)); // keep it non-symplectic anyway; pattern must fail
        let g = GroupElement::from_rational(m).unwrap();
        assert!(!in_paramodular(&g, 5));
        // the t^2 slot separates the level subgroup: B = [[0,0],[0,t]] is in
        // Γ_t but not Γ_t^(lev)
        let u = GroupElement::from_rational(upper_unipotent(5, [0, 0, 1])).unwrap();
        assert!(in_paramodular(&u, 5));
        assert!(!in_level(&u, 5));
        // while B = [[0,0],[0,t^2]] is in both
        let mut m = RationalMat::identity(4);
        m.set(1, 3, rat(25));
        let u = GroupElement::from_rational(m).unwrap();
        assert!(in_level(&u, 5) && in_paramodular(&u, 5));
    }

    #[test]
    fn random_words_are_members_and_deterministic() {
        let g1 = random_element(5, 1, 8);
        let g2 = random_element(5, 1, 8);
        assert_eq!(g1, g2);
        assert!(in_paramodular(&g1, 5));
        assert_eq!(random_element(7, 2, 0), GroupElement::identity());
        for seed in 0..30 {
            let g = random_element(7, seed, 8);
            assert!(in_paramodular(&g, 7), "seed {seed}");
            assert!(is_symplectic(&g));
        }
    }

    #[test]
    fn products_and_inverses_stay_in_the_group() {
        for seed in 0..15 {
            let g = random_element(7, seed, 6);
            let h = random_element(7, seed + 50, 6);
            assert!(in_paramodular(&g.mul(&h), 7), "seed {seed}");
            assert!(in_paramodular(&g.inverse().unwrap(), 7), "seed {seed}");
        }
    }

    #[test]
    fn conjugation_by_singular_matrix_is_an_error() {
        let g = GroupElement::i1();
        let h = GroupElement::from_rational(RationalMat::zero(4, 4)).unwrap();
        assert_eq!(
            conjugate(&g, &h),
            Err(GroupError::Mat(MatError::Singular))
        );
    }

    #[test]
    fn level_words_are_members_and_contained_in_paramodular() {
        for seed in 0..30 {
            let g = random_level_element(5, seed, 8);
            assert!(in_level(&g, 5), "seed {seed}");
            assert!(in_paramodular(&g, 5), "seed {seed}");
        }
    }

    #[test]
    fn conjugation_examples() {
        let id = GroupElement::identity();
        let g = random_element(5, 3, 6);
        assert_eq!(conjugate(&g, &id).unwrap(), g);

        // Θ I₁ Θ⁻¹ = diag(1, −1, 1, −1), rational and in Γ_p
        let theta = GroupElement::theta(5).unwrap();
        let c = conjugate(&GroupElement::i1(), &theta).unwrap();
        let want = GroupElement::from_rational(RationalMat::diagonal(vec![
            rat(1),
            rat(-1),
            rat(1),
            rat(-1),
        ]))
        .unwrap();
        assert_eq!(c, want);
        assert!(in_paramodular(&c, 5));
    }

    #[test]
    fn theta_normalises_samples() {
        let theta = GroupElement::theta(5).unwrap();
        for seed in 0..25 {
            let g = random_element(5, seed, 8);
            let c = conjugate(&g, &theta).unwrap();
            assert!(in_paramodular(&c, 5), "seed {seed}");
        }
    }

    #[test]
    fn q_conjugator_sends_pq2_into_p() {
        let (p, q) = (5u64, 2u64);
        let qc = GroupElement::q_conjugator(q);
        assert!(is_symplectic(&qc));
        for seed in 0..25 {
            let g = random_element(p * q * q, seed, 8);
            let c = conjugate(&g, &qc).unwrap();
            assert!(in_paramodular(&c, p), "seed {seed}");
        }
        // q = 1 degenerates to the identity
        assert_eq!(
            GroupElement::q_conjugator(1).as_rational().unwrap(),
            GroupElement::identity().as_rational().unwrap()
        );
    }

    #[test]
    fn square_polarisation_conjugates_into_sp4z() {
        // witness direction for t = q²: Γ_{q²} lands in Γ_1 = Sp(4,Z)
        for q in [2u64, 3] {
            let qc = GroupElement::q_conjugator(q);
            for seed in 0..15 {
                let g = random_element(q * q, seed, 8);
                let c = conjugate(&g, &qc).unwrap();
                assert!(in_paramodular(&c, 1), "q {q} seed {seed}");
            }
        }
    }

    #[test]
    fn moebius_identity_and_fixed_loci() {
        let z = SiegelPoint::new(gauss_i(2, 1), gauss(ratio(1, 3), ratio(1, 5)), gauss_i(3, 2))
            .unwrap();
        let id = GroupElement::identity();
        assert_eq!(moebius_action(&id, &z).unwrap(), z);

        // I₁ fixes τ₂ = 0
        let diag = SiegelPoint::new(gauss_i(1, 1), gauss(rat(0), rat(0)), gauss_i(1, 1)).unwrap();
        assert_eq!(moebius_action(&GroupElement::i1(), &diag).unwrap(), diag);

        // I₂ fixes τ₂ = −τ₃/2, e.g. τ₁ = i, τ₃ = i, τ₂ = −i/2
        let fixed =
            SiegelPoint::new(gauss_i(1, 1), gauss_i(-1, 2), gauss_i(1, 1)).unwrap();
        assert_eq!(moebius_action(&GroupElement::i2(), &fixed).unwrap(), fixed);
        // and moves points off that locus
        let moved = moebius_action(&GroupElement::i2(), &z).unwrap();
        assert_ne!(moved, z);
    }

    #[test]
    fn moebius_is_an_action_on_samples() {
        let z = SiegelPoint::new(gauss_i(2, 1), gauss(ratio(1, 3), ratio(1, 5)), gauss_i(3, 2))
            .unwrap();
        for seed in 0..10 {
            let g = random_element(5, seed, 5);
            let h = random_element(5, seed + 100, 5);
            let gh = g.mul(&h);
            let lhs = moebius_action(&gh, &z).unwrap();
            let rhs = moebius_action(&g, &moebius_action(&h, &z).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "seed {seed}");
        }
    }

    #[test]
    fn siegel_point_invariant_enforced() {
        assert_eq!(
            SiegelPoint::new(gauss_i(-1, 1), gauss(rat(0), rat(0)), gauss_i(1, 1)),
            Err(GroupError::NotInUpperHalfPlane)
        );
        // Im τ₁ Im τ₃ − (Im τ₂)² must be positive
        assert_eq!(
            SiegelPoint::new(gauss_i(1, 1), gauss_i(2, 1), gauss_i(1, 1)),
            Err(GroupError::NotInUpperHalfPlane)
        );
    }
}
