//! Symplectic-cone membership.
//!
//! On the rational model, a class belongs to the cone exactly when its
//! square is positive, it lies in the forward component (a > 0 in this
//! basis), and it pairs positively with every exceptional class. The
//! exceptional scan runs to max(D*, 6) for k ≤ 8 — which covers the whole
//! finite set — and to the per-class cutoff D* of
//! [`violator_degree_bound`](crate::exceptional::violator_degree_bound)
//! otherwise, so the verdict is complete over the enumerated degree range.
//!
//! On the exotic model carrying exactly l exceptional sphere classes (the
//! last l coordinates), positivity of the square places the class in the
//! union of the two cones attached to ±K; membership additionally needs
//! positive area on each of those l classes. No orientation test applies:
//! the union covers both components, and which of the two cones contains
//! the class is never decided (the construction only uses the union).

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exceptional::{enumerate_exceptional, violator_degree_bound};
use crate::lattice::{area, HomologyClass, PeriodVector};

/// Why a class is inside or outside the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeStatus {
    Member,
    NotPositiveSquare,
    WrongOrientation,
    Violated,
}

/// Membership verdict; self-auditing through the recorded scan bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeVerdict {
    pub status: ConeStatus,
    /// Present exactly when status is `Violated`: the first exceptional
    /// class (lowest degree, then lexicographic) with non-positive area.
    pub violator: Option<HomologyClass>,
    /// Highest exceptional degree scanned; 0 when no scan ran.
    pub checked_bound: i64,
}

impl ConeVerdict {
    pub fn is_member(&self) -> bool {
        self.status == ConeStatus::Member
    }

    fn without_scan(status: ConeStatus) -> Self {
        ConeVerdict {
            status,
            violator: None,
            checked_bound: 0,
        }
    }
}

/// Cone membership on the rational model: positive square, forward
/// orientation, and positive area on every exceptional class.
pub fn liliu_membership(omega: &PeriodVector) -> ConeVerdict {
    if !omega.square().is_positive() {
        return ConeVerdict::without_scan(ConeStatus::NotPositiveSquare);
    }
    if !omega.a().is_positive() {
        return ConeVerdict::without_scan(ConeStatus::WrongOrientation);
    }
    let cutoff = violator_degree_bound(omega).expect("square and orientation verified");
    let bound = if omega.k() <= 8 {
        cutoff.max(6)
    } else {
        cutoff
    };
    let set = enumerate_exceptional(omega.k(), bound);
    for e in &set.classes {
        if !area(omega, e).expect("matching lattice").is_positive() {
            return ConeVerdict {
                status: ConeStatus::Violated,
                violator: Some(e.clone()),
                checked_bound: bound,
            };
        }
    }
    ConeVerdict {
        status: ConeStatus::Member,
        violator: None,
        checked_bound: bound,
    }
}

/// Cone-union membership on the exotic model with l exceptional sphere
/// classes in the last l coordinates: positive square and b_{k−l+1},…,b_k
/// all positive.
pub fn kpm_membership(omega: &PeriodVector, l: usize) -> Result<ConeVerdict, Error> {
    let k = omega.k();
    if l > k {
        return Err(Error::BlowdownCountOutOfRange { l, k });
    }
    if !omega.square().is_positive() {
        return Ok(ConeVerdict::without_scan(ConeStatus::NotPositiveSquare));
    }
    for i in (k - l + 1)..=k {
        if !omega.b(i).is_positive() {
            return Ok(ConeVerdict {
                status: ConeStatus::Violated,
                violator: Some(HomologyClass::exceptional(k, i)),
                checked_bound: 0,
            });
        }
    }
    Ok(ConeVerdict {
        status: ConeStatus::Member,
        violator: None,
        checked_bound: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratq};
    use proptest::prelude::*;

    fn pv(v: &[i64]) -> PeriodVector {
        PeriodVector::from_integers(v)
    }

    #[test]
    fn rational_cone_examples() {
        assert!(liliu_membership(&pv(&[2, 1])).is_member());
        assert_eq!(
            liliu_membership(&pv(&[2, 2])).status,
            ConeStatus::NotPositiveSquare
        );
        let verdict = liliu_membership(&PeriodVector::new(vec![rat(1), ratq(-1, 2)]));
        assert_eq!(verdict.status, ConeStatus::Violated);
        assert_eq!(verdict.violator, Some(HomologyClass::exceptional(1, 1)));
        assert_eq!(
            liliu_membership(&pv(&[-2, 1])).status,
            ConeStatus::WrongOrientation
        );
    }

    #[test]
    fn violator_reporting_is_deterministic() {
        // (3;2,2) fails only on H−E₁−E₂.
        let verdict = liliu_membership(&pv(&[3, 2, 2]));
        assert_eq!(verdict.status, ConeStatus::Violated);
        assert_eq!(
            verdict.violator,
            Some(HomologyClass::from_integers(&[1, -1, -1]))
        );
        assert!(verdict.checked_bound >= 6);
    }

    #[test]
    fn zero_blowups_reduce_to_square_and_orientation() {
        assert!(liliu_membership(&pv(&[1])).is_member());
        assert_eq!(
            liliu_membership(&pv(&[-1])).status,
            ConeStatus::WrongOrientation
        );
    }

    #[test]
    fn exotic_union_examples() {
        assert!(kpm_membership(&pv(&[3, 1, 1]), 1).unwrap().is_member());
        let verdict = kpm_membership(&pv(&[3, 1, -1]), 1).unwrap();
        assert_eq!(verdict.status, ConeStatus::Violated);
        assert_eq!(verdict.violator, Some(HomologyClass::exceptional(2, 2)));
        assert!(kpm_membership(&pv(&[3, 1, 1]), 0).unwrap().is_member());
        assert_eq!(
            kpm_membership(&pv(&[3, 1, 1]), 3),
            Err(Error::BlowdownCountOutOfRange { l: 3, k: 2 })
        );
        // Only the last l coordinates are constrained.
        assert!(kpm_membership(&pv(&[3, -1, 1]), 1).unwrap().is_member());
        // No orientation requirement on the exotic side.
        assert!(kpm_membership(&pv(&[-3, -1, 1]), 1).unwrap().is_member());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn verdict_status_is_scale_invariant(
            raw in proptest::collection::vec(-3i64..6, 2..5),
            a in 1i64..9,
            num in 1i64..7,
            den in 1i64..7,
        ) {
            let mut areas = vec![a];
            areas.extend(&raw);
            let omega = pv(&areas);
            let scaled = omega.scaled(&ratq(num, den));
            prop_assert_eq!(
                liliu_membership(&omega).status,
                liliu_membership(&scaled).status
            );
        }

        #[test]
        fn verdict_status_is_permutation_invariant(
            raw in proptest::collection::vec(-3i64..6, 3),
            a in 1i64..9,
            rot in 0usize..3,
        ) {
            let mut areas = vec![a];
            areas.extend(&raw);
            let omega = pv(&areas);
            let mut permuted = areas.clone();
            permuted[1..].rotate_left(rot);
            let sigma = pv(&permuted);
            prop_assert_eq!(
                liliu_membership(&omega).status,
                liliu_membership(&sigma).status
            );
        }
    }
}
