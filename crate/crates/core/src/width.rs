//! Gromov-width formulas and the fiber-class upper bound.
//!
//! The width of a class on an eligible model is min{√([ω]²), d′}, where d′
//! is the infimum of ω(B)/(c₁(B)−1) over the nonzero projections of the
//! one-point-blowup exceptional classes with c₁(B) ≥ 2 (inf ∅ = +∞). On
//! models that are not rational or ruled, the candidate set is empty and
//! the width is √([ω]²) outright.
//!
//! The upper bound comes from the fiber class A = H−E₁: for a reduced
//! period vector with positive entries the width is at most ω(A) = a−b₁,
//! and for 1 ≤ k ≤ 4 the inequality against √([ω]²) is automatically
//! strict. For k ≥ 5 strictness can fail, and [`deform_tail`] shrinks the
//! entries b₅,…,b_k (preserving the cohomology constraints that matter:
//! reducedness, positivity, head entries) until the margin is strictly
//! positive and the canonical pairing is strictly negative.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::cone::kpm_membership;
use crate::cremona::is_reduced;
use crate::error::Error;
use crate::exceptional::enumerate_exceptional;
use crate::lattice::{area, c1_eval, HomologyClass, ManifoldDescriptor, PeriodVector};
use crate::num::{rat, ExactReal, Rational};

/// What attains the width minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WidthWitness {
    /// The volume term √([ω]²) attains the minimum.
    VolumeBound,
    /// A projected blowup class attains d′ below the volume term.
    ObstructingClass {
        class: HomologyClass,
        #[serde(with = "crate::num::rat_string")]
        c1: Rational,
    },
}

/// A width value together with its witness and the enumeration bound that
/// backs the d′ scan (0 when no scan ran).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthResult {
    pub value: ExactReal,
    pub witness: WidthWitness,
    pub checked_bound: i64,
}

/// The fiber-class upper bound and its strictness data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundResult {
    /// The fiber class A = H−E₁.
    pub uniruled_class: HomologyClass,
    /// ω(A) = a − b₁.
    #[serde(with = "crate::num::rat_string")]
    pub bound: Rational,
    /// [ω]² − ω(A)², positive exactly when the bound is strictly below the
    /// volume term.
    #[serde(with = "crate::num::rat_string")]
    pub strict_margin: Rational,
    /// ω(K) = −3a + Σbᵢ.
    #[serde(with = "crate::num::rat_string")]
    pub canonical_pairing: Rational,
}

impl UpperBoundResult {
    pub fn margin_is_strict(&self) -> bool {
        self.strict_margin.is_positive()
    }

    pub fn canonical_pairing_negative(&self) -> bool {
        self.canonical_pairing.is_negative()
    }
}

/// True when the descriptor is outside the class of manifolds on which the
/// width formula is blocked: rational or ruled manifolds, b₁ = 0 with
/// b₂⁺ = 1, or b₁ = 2 with (H¹)² ≠ 0 (a user-asserted flag).
pub fn simple_type_exempt(m: &ManifoldDescriptor) -> bool {
    match m {
        ManifoldDescriptor::Rational { .. } => true,
        ManifoldDescriptor::ExoticRational { .. } => true,
        ManifoldDescriptor::General {
            b1,
            b2_plus,
            h1_square_nonzero,
            rational_or_ruled,
            ..
        } => *rational_or_ruled || (*b1 == 0 && *b2_plus == 1) || (*b1 == 2 && *h1_square_nonzero),
    }
}

/// The nonzero projections of the (k+1)-fold blowup's exceptional classes
/// onto the k-fold lattice, deduplicated, each with its c₁ value, in
/// (degree, lexicographic) order.
pub fn projected_blowup_classes(k: usize, degree_bound: i64) -> Vec<(HomologyClass, Rational)> {
    let blown_up = enumerate_exceptional(k + 1, degree_bound);
    let mut projected: Vec<HomologyClass> = blown_up
        .classes
        .iter()
        .map(HomologyClass::project_off_last)
        .filter(|c| !c.is_zero())
        .collect();
    projected.sort();
    projected.dedup();
    projected
        .into_iter()
        .map(|c| {
            let c1 = c1_eval(&c);
            (c, c1)
        })
        .collect()
}

fn d_prime_with_witness(
    omega: &PeriodVector,
    degree_bound: i64,
) -> (ExactReal, Option<(HomologyClass, Rational)>) {
    let two = rat(2);
    let one = rat(1);
    let mut best: Option<(Rational, HomologyClass, Rational)> = None;
    for (class, c1) in projected_blowup_classes(omega.k(), degree_bound) {
        if c1 < two {
            continue;
        }
        let value =
            area(omega, &class).expect("projection lives on the same lattice") / (&c1 - &one);
        let improves = match &best {
            Some((incumbent, _, _)) => value < *incumbent,
            None => true,
        };
        if improves {
            best = Some((value, class, c1));
        }
    }
    match best {
        Some((value, class, c1)) => (ExactReal::rational(value), Some((class, c1))),
        None => (ExactReal::Infinity, None),
    }
}

/// d′ = inf ω(B)/(c₁(B)−1) over projected blowup classes with c₁(B) ≥ 2;
/// +∞ when no class qualifies. Classes with c₁ ≤ 1 never obstruct.
pub fn d_prime(omega: &PeriodVector, degree_bound: i64) -> ExactReal {
    d_prime_with_witness(omega, degree_bound).0
}

/// The Gromov width of (model, ω): min{√([ω]²), d′} on rational-or-ruled
/// models, √([ω]²) on eligible models that are not rational or ruled.
///
/// The exotic model additionally requires cone-union membership with its l
/// exceptional sphere classes. Ties between the volume term and d′ report
/// the volume witness.
pub fn gromov_width(
    omega: &PeriodVector,
    m: &ManifoldDescriptor,
    degree_bound: i64,
) -> Result<WidthResult, Error> {
    if !simple_type_exempt(m) {
        return Err(Error::FormulaNotApplicable);
    }
    let ruled_like = match m {
        ManifoldDescriptor::Rational { k } => {
            if *k != omega.k() {
                return Err(Error::DimensionMismatch {
                    left: *k,
                    right: omega.k(),
                });
            }
            true
        }
        ManifoldDescriptor::ExoticRational { k, l } => {
            if *k != omega.k() {
                return Err(Error::DimensionMismatch {
                    left: *k,
                    right: omega.k(),
                });
            }
            if !kpm_membership(omega, *l)?.is_member() {
                return Err(Error::NotInSymplecticCone);
            }
            false
        }
        ManifoldDescriptor::General {
            rational_or_ruled, ..
        } => *rational_or_ruled,
    };

    let volume = ExactReal::sqrt(omega.square())?;
    if !ruled_like {
        return Ok(WidthResult {
            value: volume,
            witness: WidthWitness::VolumeBound,
            checked_bound: 0,
        });
    }
    let (dp, dp_witness) = d_prime_with_witness(omega, degree_bound);
    if volume <= dp {
        Ok(WidthResult {
            value: volume,
            witness: WidthWitness::VolumeBound,
            checked_bound: degree_bound,
        })
    } else {
        let (class, c1) = dp_witness.expect("finite d′ carries its minimizer");
        Ok(WidthResult {
            value: dp,
            witness: WidthWitness::ObstructingClass { class, c1 },
            checked_bound: degree_bound,
        })
    }
}

/// The fiber-class bound ω(A) for A = H−E₁ on a reduced vector with
/// positive entries and positive square.
///
/// For 1 ≤ k ≤ 4 the strict margin is guaranteed (and asserted): from the
/// head inequality, [ω]² − (a−b₁)² = 2b₁(a−b₁) − Σ_{i≥2} bᵢ² > 0.
pub fn uniruled_upper_bound(omega: &PeriodVector) -> Result<UpperBoundResult, Error> {
    let k = omega.k();
    if k == 0 {
        return Err(Error::NoFiberClass);
    }
    if !is_reduced(omega) {
        return Err(Error::NotReduced);
    }
    if !omega.all_b_positive() {
        return Err(Error::NonPositiveExceptionalArea);
    }
    let square = omega.square();
    if !square.is_positive() {
        return Err(Error::NonPositiveSquare(square));
    }

    let fiber = fiber_class(k);
    let bound = omega.a() - omega.b(1);
    let strict_margin = &square - &bound * &bound;
    let canonical_pairing = crate::cremona::canonical_pairing(omega);
    if k <= 4 {
        assert!(
            strict_margin.is_positive(),
            "strict margin failed for k = {k} on {omega}; this contradicts the head inequality"
        );
    }
    Ok(UpperBoundResult {
        uniruled_class: fiber,
        bound,
        strict_margin,
        canonical_pairing,
    })
}

fn fiber_class(k: usize) -> HomologyClass {
    let mut coeffs = vec![rat(0); k + 1];
    coeffs[0] = rat(1);
    coeffs[1] = rat(-1);
    HomologyClass::new(coeffs)
}

/// Halves b_{from_index},…,b_k (1-based, from_index ≥ 5) until the strict
/// margin is positive and the canonical pairing negative; the head entries
/// a, b₁,…,b_{from_index−1} never change and the output stays reduced.
///
/// Fails only when even the tail → 0 limit cannot satisfy both conditions;
/// that cannot happen for reduced vectors with positive entries, where the
/// limit margin 2b₁(a−b₁) − b₂² − b₃² − b₄² and the limit pairing
/// −3a + b₁ + b₂ + b₃ + b₄ are strict by the head inequality.
pub fn deform_tail(omega: &PeriodVector, from_index: usize) -> Result<PeriodVector, Error> {
    if from_index < 5 {
        return Err(Error::DeformIndexTooSmall(from_index));
    }
    if !is_reduced(omega) {
        return Err(Error::NotReduced);
    }
    let k = omega.k();

    let satisfied = |v: &PeriodVector| {
        let bound = v.a() - v.b(1);
        let margin = v.square() - &bound * &bound;
        margin.is_positive() && crate::cremona::canonical_pairing(v).is_negative()
    };

    if k < from_index {
        return if satisfied(omega) {
            Ok(omega.clone())
        } else {
            Err(Error::TailDeformationImpossible)
        };
    }

    // Feasibility in the tail → 0 limit; both target conditions are open,
    // so a finite number of halvings reaches them once the limit is strict.
    let head = &omega.areas()[..from_index];
    let limit = PeriodVector::new(head.to_vec());
    if !satisfied(&limit) {
        return Err(Error::TailDeformationImpossible);
    }

    let half = crate::num::ratq(1, 2);
    let mut current = omega.clone();
    loop {
        if satisfied(&current) {
            return Ok(current);
        }
        let mut areas = current.areas().to_vec();
        for b in &mut areas[from_index..] {
            *b *= &half;
        }
        current = PeriodVector::new(areas);
    }
}

/// Lifts the fiber-class bound to the 6-dimensional product: the fiber
/// class stays uniruled there, so its area bounds the product width by the
/// same value.
pub fn product_upper_bound(u: &UpperBoundResult) -> Rational {
    u.bound.clone()
}
