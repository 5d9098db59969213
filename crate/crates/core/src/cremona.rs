//! Normalization of period vectors to the reduced form
//! b₁ ≥ b₂ ≥ … ≥ b_k ≥ 0 with a ≥ b₁+b₂+b₃ (a ≥ b₁+b₂ for k = 2,
//! a ≥ b₁ for k = 1), via sorting and Cremona moves.
//!
//! The Cremona move is the reflection in the square −2 class H−E₁−E₂−E₃.
//! It is an isometry of the intersection lattice and fixes the canonical
//! class, so square and canonical pairing are preserved exactly. On periods
//! it reads (a; b₁,b₂,b₃,…) ↦ (2a−b₁−b₂−b₃; a−b₂−b₃, a−b₁−b₃, a−b₁−b₂, …)
//! and it is applied only while a < b₁+b₂+b₃, which makes ω(H) strictly
//! decrease. All values live in (1/L)·ℤ for the fixed common denominator L
//! of the input, so the decrease is by at least 1/L per move and the loop
//! terminates.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{HomologyClass, PeriodVector};
use crate::num::Rational;
use num_traits::Signed;

/// One basis change recorded during reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionStep {
    /// Stable re-sort of the exceptional directions into descending area
    /// order; `order[j]` is the 1-based source index moved to position j+1.
    Sort { order: Vec<usize> },
    /// Reflection in H−E₁−E₂−E₃ applied to the first three directions.
    Cremona,
}

impl ReductionStep {
    /// Transports a period vector through this basis change.
    pub fn apply_to_period(&self, v: &PeriodVector) -> PeriodVector {
        match self {
            ReductionStep::Sort { order } => {
                assert_eq!(order.len(), v.k(), "sort step built for another lattice");
                let mut areas = Vec::with_capacity(v.k() + 1);
                areas.push(v.a().clone());
                areas.extend(order.iter().map(|&src| v.b(src).clone()));
                PeriodVector::new(areas)
            }
            ReductionStep::Cremona => {
                assert!(v.k() >= 3, "cremona step built for another lattice");
                let (a, b1, b2, b3) = (v.a(), v.b(1), v.b(2), v.b(3));
                let mut areas = Vec::with_capacity(v.k() + 1);
                areas.push(a + a - b1 - b2 - b3);
                areas.push(a - b2 - b3);
                areas.push(a - b1 - b3);
                areas.push(a - b1 - b2);
                areas.extend(v.areas()[4..].iter().cloned());
                PeriodVector::new(areas)
            }
        }
    }

    /// Transports a homology class through the same basis change.
    pub fn apply_to_class(&self, c: &HomologyClass) -> HomologyClass {
        match self {
            ReductionStep::Sort { order } => {
                assert_eq!(order.len(), c.k(), "sort step built for another lattice");
                let mut coeffs = Vec::with_capacity(c.k() + 1);
                coeffs.push(c.d().clone());
                coeffs.extend(order.iter().map(|&src| c.e(src).clone()));
                HomologyClass::new(coeffs)
            }
            ReductionStep::Cremona => {
                assert!(c.k() >= 3, "cremona step built for another lattice");
                let (d, e1, e2, e3) = (c.d(), c.e(1), c.e(2), c.e(3));
                let mut coeffs = Vec::with_capacity(c.k() + 1);
                coeffs.push(d + d + e1 + e2 + e3);
                coeffs.push(-d - e2 - e3);
                coeffs.push(-d - e1 - e3);
                coeffs.push(-d - e1 - e2);
                coeffs.extend(c.coeffs()[4..].iter().cloned());
                HomologyClass::new(coeffs)
            }
        }
    }
}

/// The recorded run of a reduction: input, ordered steps, terminal vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub input: PeriodVector,
    pub steps: Vec<ReductionStep>,
    pub output: PeriodVector,
}

impl ReductionTrace {
    /// Re-applies every step to the input; equals `output` for any trace
    /// produced by [`reduce`].
    pub fn replay(&self) -> PeriodVector {
        self.steps
            .iter()
            .fold(self.input.clone(), |v, step| step.apply_to_period(&v))
    }

    /// Transports a homology class through the whole step sequence.
    pub fn transport_class(&self, c: &HomologyClass) -> HomologyClass {
        self.steps
            .iter()
            .fold(c.clone(), |c, step| step.apply_to_class(&c))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Terminal state of a reduction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ReduceOutcome {
    /// The terminal vector satisfies the reduced condition.
    Reduced { trace: ReductionTrace },
    /// The terminal vector is sorted and satisfies the head inequality (or
    /// has k < 3 with the head inequality failing, where no move exists),
    /// but carries a negative entry: the input's orbit contains no
    /// non-negative reduced vector.
    OutsideReducedOrbit { trace: ReductionTrace },
}

impl ReduceOutcome {
    pub fn trace(&self) -> &ReductionTrace {
        match self {
            ReduceOutcome::Reduced { trace } | ReduceOutcome::OutsideReducedOrbit { trace } => {
                trace
            }
        }
    }

    /// The terminal vector, reduced or not.
    pub fn output(&self) -> &PeriodVector {
        &self.trace().output
    }

    pub fn reached_reduced(&self) -> bool {
        matches!(self, ReduceOutcome::Reduced { .. })
    }
}

fn head_condition_holds(v: &PeriodVector) -> bool {
    let a = v.a();
    match v.k() {
        0 => true,
        1 => a >= v.b(1),
        2 => *a >= v.b(1) + v.b(2),
        _ => *a >= v.b(1) + v.b(2) + v.b(3),
    }
}

/// Reduced condition: sorted descending, all bᵢ ≥ 0, and the head
/// inequality a ≥ b₁+b₂+b₃ (k ≥ 3), a ≥ b₁+b₂ (k = 2), a ≥ b₁ (k = 1).
///
/// Strict positivity of the bᵢ is deliberately not part of this predicate;
/// see [`is_symplectic_candidate`].
pub fn is_reduced(v: &PeriodVector) -> bool {
    v.b_sorted_descending() && v.all_b_nonnegative() && head_condition_holds(v)
}

/// Reduced with a > 0 and every bᵢ > 0: the normal form of a period vector
/// that can belong to a symplectic form on the fully blown-up model.
pub fn is_symplectic_candidate(v: &PeriodVector) -> bool {
    is_reduced(v) && v.a().is_positive() && v.all_b_positive()
}

/// One Cremona move on a sorted vector whose head inequality fails.
pub fn cremona_step(v: &PeriodVector) -> Result<PeriodVector, Error> {
    if v.k() < 3 {
        return Err(Error::TooFewBlowups(v.k()));
    }
    if !v.b_sorted_descending() {
        return Err(Error::NotSorted);
    }
    if head_condition_holds(v) {
        return Err(Error::AlreadyReduced);
    }
    Ok(ReductionStep::Cremona.apply_to_period(v))
}

/// The stable descending sort of the exceptional areas, as a recorded step;
/// `None` when already sorted.
fn sort_step(v: &PeriodVector) -> Option<ReductionStep> {
    let mut order: Vec<usize> = (1..=v.k()).collect();
    order.sort_by(|&i, &j| v.b(j).cmp(v.b(i)));
    if order.iter().enumerate().all(|(pos, &src)| pos + 1 == src) {
        None
    } else {
        Some(ReductionStep::Sort { order })
    }
}

/// Alternates descending sorts and Cremona moves until the head inequality
/// holds, then classifies the terminal vector.
///
/// Requires square(v) > 0 and a > 0; both are preserved by every step
/// (each step is a lattice isometry, and 0 < 2a−b₁−b₂−b₃ follows from
/// b₁+b₂+b₃ ≤ √3·|b| < √3·a), so the verdict is about the input's orbit.
pub fn reduce(v: &PeriodVector) -> Result<ReduceOutcome, Error> {
    let sq = v.square();
    if !sq.is_positive() {
        return Err(Error::NonPositiveSquare(sq));
    }
    if !v.a().is_positive() {
        return Err(Error::NonPositiveLineArea(v.a().clone()));
    }

    let mut current = v.clone();
    let mut steps = Vec::new();
    loop {
        if let Some(step) = sort_step(&current) {
            current = step.apply_to_period(&current);
            steps.push(step);
        }
        if head_condition_holds(&current) || current.k() < 3 {
            break;
        }
        let step = ReductionStep::Cremona;
        current = step.apply_to_period(&current);
        steps.push(step);
    }

    let reduced = is_reduced(&current);
    let trace = ReductionTrace {
        input: v.clone(),
        steps,
        output: current,
    };
    Ok(if reduced {
        ReduceOutcome::Reduced { trace }
    } else {
        ReduceOutcome::OutsideReducedOrbit { trace }
    })
}

/// Convenience: the canonical pairing value ω(K) = −3a + Σbᵢ, preserved by
/// every reduction step.
pub fn canonical_pairing(v: &PeriodVector) -> Rational {
    crate::lattice::area(v, &crate::lattice::canonical_class(v.k()))
        .expect("canonical class built on the same lattice")
}
