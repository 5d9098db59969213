//! Enumeration of exceptional lattice classes: integral (d; e₁…e_k) with
//! square −1 and canonical pairing −1, equivalently Σeᵢ = 1−3d and
//! Σeᵢ² = d²+1.
//!
//! For k ≤ 8 the set is finite with maximal degree 6, and no solutions with
//! d < 0 exist (from (1−3d)² ≤ k(d²+1) with k ≤ 8), so scanning degrees
//! 0…6 is complete. For k ≥ 9 the set is infinite; enumeration is honest
//! about partiality through the `complete` flag, and cone tests restore
//! completeness per period vector via [`violator_degree_bound`].

use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{canonical_class, pair, HomologyClass, PeriodVector};
use crate::num::{floor_sqrt, rat};

/// The exceptional classes of the k-fold blowup lattice up to `degree_bound`,
/// sorted by degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSet {
    pub k: usize,
    pub degree_bound: i64,
    pub classes: Vec<HomologyClass>,
    /// True when the degree bound provably exhausts the whole set.
    pub complete: bool,
}

impl ExceptionalSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// True for integral classes with self-pairing −1 and canonical pairing −1.
/// Non-integral classes are never exceptional.
pub fn is_exceptional(e: &HomologyClass) -> bool {
    if !e.is_integral() {
        return false;
    }
    let minus_one = rat(-1);
    pair(e, e).expect("same lattice") == minus_one
        && pair(&canonical_class(e.k()), e).expect("same lattice") == minus_one
}

fn search(
    d: i64,
    coeffs: &mut Vec<i64>,
    slots: usize,
    rem_sum: i64,
    rem_square: i64,
    out: &mut Vec<HomologyClass>,
) {
    if slots == 0 {
        if rem_sum == 0 && rem_square == 0 {
            let mut full = Vec::with_capacity(coeffs.len() + 1);
            full.push(d);
            full.extend_from_slice(coeffs);
            out.push(HomologyClass::from_integers(&full));
        }
        return;
    }
    // Infeasible when the square budget is spent or cannot carry the sum
    // (Cauchy-Schwarz: rem_sum² ≤ slots · rem_square).
    if rem_square < 0 || rem_sum * rem_sum > slots as i64 * rem_square {
        return;
    }
    let cap = rem_square.sqrt();
    for e in -cap..=cap {
        coeffs.push(e);
        search(d, coeffs, slots - 1, rem_sum - e, rem_square - e * e, out);
        coeffs.pop();
    }
}

/// All exceptional classes with 0 ≤ d ≤ `degree_bound`, deterministically
/// ordered. The `complete` flag is set when k ≤ 8 and the bound reaches 6
/// (or k = 0, where no solutions exist at any degree).
pub fn enumerate_exceptional(k: usize, degree_bound: i64) -> ExceptionalSet {
    assert!(degree_bound >= 0, "degree bound must be non-negative");
    let mut classes = Vec::new();
    for d in 0..=degree_bound {
        search(
            d,
            &mut Vec::with_capacity(k),
            k,
            1 - 3 * d,
            d * d + 1,
            &mut classes,
        );
    }
    classes.sort();
    ExceptionalSet {
        k,
        degree_bound,
        classes,
        complete: k == 0 || (k <= 8 && degree_bound >= 6),
    }
}

/// The degree cutoff D* = ⌊|b| / √(a²−|b|²)⌋ with |b|² = Σbᵢ².
///
/// Every exceptional class of degree d > D* has positive area: from
/// area ≥ a·d − |b|·√(d²+1) (Cauchy-Schwarz on the tail) and
/// d² > |b|²/(a²−|b|²), which holds as soon as d ≥ D*+1.
///
/// Panics if the cutoff exceeds the machine integer range; such a cutoff
/// could not be scanned anyway.
pub fn violator_degree_bound(omega: &PeriodVector) -> Result<i64, Error> {
    let square = omega.square();
    if !square.is_positive() {
        return Err(Error::NonPositiveSquare(square));
    }
    if !omega.a().is_positive() {
        return Err(Error::NonPositiveLineArea(omega.a().clone()));
    }
    let b_square = omega.a() * omega.a() - &square;
    let ratio = b_square / square;
    Ok(floor_sqrt(&ratio)
        .expect("ratio of non-negative by positive")
        .to_i64()
        .expect("degree cutoff exceeds machine range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::area;
    use crate::num::{ratq, Rational};
    use proptest::prelude::*;

    fn hc(v: &[i64]) -> HomologyClass {
        HomologyClass::from_integers(v)
    }

    #[test]
    fn exceptional_predicate_on_named_classes() {
        assert!(is_exceptional(&hc(&[0, 1, 0])));
        assert!(!is_exceptional(&hc(&[1, -1, 0])));
        assert!(is_exceptional(&hc(&[1, -1, -1])));
        assert!(!is_exceptional(&hc(&[0, -1, 0])));
        assert!(!is_exceptional(&HomologyClass::new(vec![
            rat(0),
            ratq(1, 2),
            ratq(1, 2)
        ])));
    }

    #[test]
    fn small_blowup_sets_are_exact() {
        assert!(enumerate_exceptional(0, 6).is_empty());

        let k1 = enumerate_exceptional(1, 6);
        assert_eq!(k1.classes, vec![hc(&[0, 1])]);
        assert!(k1.complete);

        let k2 = enumerate_exceptional(2, 6);
        assert_eq!(
            k2.classes,
            vec![hc(&[0, 0, 1]), hc(&[0, 1, 0]), hc(&[1, -1, -1])]
        );
    }

    #[test]
    fn del_pezzo_counts_match_classical_values() {
        let expected = [1usize, 3, 6, 10, 16, 27, 56, 240];
        for (k, want) in (1..=8).zip(expected) {
            let set = enumerate_exceptional(k, 6);
            assert_eq!(set.len(), want, "count mismatch at k = {k}");
            assert!(set.complete);
            for e in &set.classes {
                assert!(is_exceptional(e), "enumerated non-exceptional {e}");
            }
        }
    }

    #[test]
    fn nine_fold_blowup_is_reported_partial() {
        let set = enumerate_exceptional(9, 6);
        assert!(!set.complete);
        assert!(set.len() > 240);
    }

    #[test]
    fn degree_cutoff_matches_hand_values() {
        assert_eq!(
            violator_degree_bound(&PeriodVector::from_integers(&[3, 1, 1])).unwrap(),
            0
        );
        assert_eq!(
            violator_degree_bound(&PeriodVector::new(vec![rat(1), ratq(9, 10)])).unwrap(),
            2
        );
        assert!(matches!(
            violator_degree_bound(&PeriodVector::from_integers(&[1, 1])),
            Err(Error::NonPositiveSquare(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn enumeration_is_permutation_equivariant(
            k in 2usize..5,
            shift in 1usize..4,
        ) {
            let set = enumerate_exceptional(k, 6);
            let rot = |c: &HomologyClass| {
                let mut v: Vec<Rational> = c.coeffs().to_vec();
                v[1..].rotate_left(shift % k);
                HomologyClass::new(v)
            };
            let mut rotated: Vec<HomologyClass> = set.classes.iter().map(rot).collect();
            rotated.sort();
            prop_assert_eq!(rotated, set.classes);
        }

        #[test]
        fn high_degree_classes_clear_the_cutoff(
            a in 2i64..10,
            raw in proptest::collection::vec(0i64..6, 3),
        ) {
            let mut areas = vec![a];
            areas.extend(&raw);
            let omega = PeriodVector::from_integers(&areas);
            prop_assume!(omega.square().is_positive());
            let cutoff = violator_degree_bound(&omega).unwrap();
            let set = enumerate_exceptional(3, (cutoff + 4).min(12));
            for e in &set.classes {
                if e.d() > &rat(cutoff) {
                    prop_assert!(area(&omega, e).unwrap().is_positive());
                }
            }
        }
    }
}
