//! The 6-dimensional product X×S²: cohomology bookkeeping, integral lattice
//! isometries and their extension over the product, and the width-gap
//! certificate pipeline.
//!
//! A certificate packages two product cohomology classes with literally
//! matching coefficient data (after isometry transport), a width lower
//! bound √([ω]²) on the exotic side, the fiber-class upper bound a−b₁ on
//! the standard side, the strictly positive gap between them, and the
//! canonical-pairing witness showing the two structures have different
//! first Chern classes. Every intermediate verdict is recorded so a
//! third party can re-check the certificate without rerunning the search.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::cone::{kpm_membership, liliu_membership, ConeVerdict};
use crate::cremona::{canonical_pairing, is_symplectic_candidate};
use crate::error::Error;
use crate::lattice::{area, canonical_class, HomologyClass, PeriodVector};
use crate::num::{rat, ExactReal, Rational, SqrtGap};
use crate::width::{deform_tail, uniruled_upper_bound, UpperBoundResult};

/// An integral isometry of the blowup intersection lattice, acting on
/// coefficient columns. Construction validates φᵀ·G·φ = G for
/// G = diag(1, −1, …, −1); det φ = ±1 follows by taking determinants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct Isometry {
    entries: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn identity(k: usize) -> Self {
        let n = k + 1;
        let entries = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Isometry { entries }
    }

    /// Validates shape and the pairing congruence.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, Error> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|row| row.len() != n) {
            let cols = entries.first().map_or(0, Vec::len);
            return Err(Error::BadMatrixShape {
                rows: n,
                cols,
                expected: n.max(1),
            });
        }
        if !congruence_holds(&entries) {
            return Err(Error::NotAnIsometry);
        }
        Ok(Isometry { entries })
    }

    /// Blowup count of the lattice this matrix acts on.
    pub fn k(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// True when the last l basis columns are fixed pointwise; with the
    /// pairing congruence this forces the dual directions to be fixed too.
    pub fn fixes_last(&self, l: usize) -> bool {
        let n = self.entries.len();
        if l > n - 1 {
            return false;
        }
        (n - l..n).all(|j| (0..n).all(|i| self.entries[i][j] == i64::from(i == j)))
    }

    /// Applies the matrix to a coefficient column.
    pub fn apply_class(&self, c: &HomologyClass) -> HomologyClass {
        let n = self.entries.len();
        assert_eq!(n, c.k() + 1, "isometry built for another lattice");
        let coeffs = (0..n)
            .map(|i| {
                let mut s = rat(0);
                for (j, coeff) in c.coeffs().iter().enumerate() {
                    s += coeff * rat(self.entries[i][j]);
                }
                s
            })
            .collect();
        HomologyClass::new(coeffs)
    }
}

impl From<Isometry> for Vec<Vec<i64>> {
    fn from(phi: Isometry) -> Self {
        phi.entries
    }
}

impl TryFrom<Vec<Vec<i64>>> for Isometry {
    type Error = Error;

    fn try_from(entries: Vec<Vec<i64>>) -> Result<Self, Error> {
        Isometry::new(entries)
    }
}

fn congruence_holds(entries: &[Vec<i64>]) -> bool {
    let n = entries.len();
    let sign = |i: usize| if i == 0 { 1i128 } else { -1i128 };
    for i in 0..n {
        for j in i..n {
            let mut s = 0i128;
            for (m, row) in entries.iter().enumerate() {
                s += sign(m) * i128::from(row[i]) * i128::from(row[j]);
            }
            let want = if i == j { sign(i) } else { 0 };
            if s != want {
                return false;
            }
        }
    }
    true
}

/// Shape-checked congruence test for a raw matrix on the k-fold lattice.
pub fn verify_isometry(entries: &[Vec<i64>], k: usize) -> Result<bool, Error> {
    let n = k + 1;
    if entries.len() != n || entries.iter().any(|row| row.len() != n) {
        return Err(Error::BadMatrixShape {
            rows: entries.len(),
            cols: entries.first().map_or(0, Vec::len),
            expected: n,
        });
    }
    Ok(congruence_holds(entries))
}

/// A degree-2 cohomology class on the product: a class on the 4-manifold
/// factor plus λ times the sphere-factor generator. λ > 0 whenever the
/// class carries a product symplectic form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductClass {
    pub base: PeriodVector,
    #[serde(with = "crate::num::rat_string")]
    pub sphere_area: Rational,
}

/// Characteristic-class data of the product that depends only on k: the
/// signature of the 4-manifold factor, the first Pontryagin coefficient on
/// the sphere-factor generator, and the mod-2 reduction of the canonical
/// class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTopology {
    pub k: usize,
    pub signature: i64,
    pub p1_coefficient: i64,
    pub w2: Vec<u8>,
}

impl ProductTopology {
    /// The product over the k-fold rational blowup: signature 1−k, first
    /// Pontryagin coefficient 3·(1−k), and w₂ the parity of (−3; 1,…,1).
    pub fn rational_product(k: usize) -> Self {
        let signature = 1 - k as i64;
        let w2 = canonical_class(k)
            .coeffs()
            .iter()
            .map(|c| u8::from(!crate::num::is_even_integer(c)))
            .collect();
        ProductTopology {
            k,
            signature,
            p1_coefficient: 3 * signature,
            w2,
        }
    }
}

/// The canonical-pairing witness: the two cohomologous structures have
/// different first Chern classes exactly when ω(K) < 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernDifference {
    pub differ: bool,
    #[serde(with = "crate::num::rat_string")]
    pub witness: Rational,
}

/// ω(K) = −3a + Σbᵢ; `differ` is true exactly when the witness is
/// negative. A non-negative witness is inconclusive: deform the tail first.
pub fn chern_difference(omega: &PeriodVector) -> ChernDifference {
    let witness = canonical_pairing(omega);
    ChernDifference {
        differ: witness.is_negative(),
        witness,
    }
}

/// Transports a period vector through an isometry: the Poincaré dual moves
/// by φ and the result is read back as periods. Square and canonical
/// pairing are preserved.
pub fn transport_period(phi: &Isometry, v: &PeriodVector) -> PeriodVector {
    let moved = phi.apply_class(&v.poincare_dual());
    let mut areas = Vec::with_capacity(moved.k() + 1);
    areas.push(moved.d().clone());
    areas.extend(moved.coeffs()[1..].iter().map(|e| -e));
    PeriodVector::new(areas)
}

/// Transports a homology class by an isometry required to fix the last l
/// exceptional directions.
pub fn transport_class(
    phi: &Isometry,
    c: &HomologyClass,
    l: usize,
) -> Result<HomologyClass, Error> {
    if !phi.fixes_last(l) {
        return Err(Error::IsometryMovesBlowupClasses(l));
    }
    Ok(phi.apply_class(c))
}

/// Extends an isometry over the product (identity on the sphere factor)
/// and transports a period vector, carrying the sphere area unchanged.
pub fn extend_and_transport(
    phi: &Isometry,
    v: &PeriodVector,
    sphere_area: &Rational,
    l: usize,
) -> Result<ProductClass, Error> {
    if phi.k() != v.k() {
        return Err(Error::DimensionMismatch {
            left: phi.k(),
            right: v.k(),
        });
    }
    if !phi.fixes_last(l) {
        return Err(Error::IsometryMovesBlowupClasses(l));
    }
    Ok(ProductClass {
        base: transport_period(phi, v),
        sphere_area: sphere_area.clone(),
    })
}

/// Which side of the construction a cone check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeSide {
    Exotic,
    Rational,
}

/// Structured reasons the pipeline declines to emit a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Refusal {
    InsufficientSphereArea {
        required: ExactReal,
        #[serde(with = "crate::num::rat_string")]
        given: Rational,
    },
    ConeViolation {
        side: ConeSide,
        verdict: ConeVerdict,
    },
    NotReduced,
    NonStrictMargin {
        #[serde(with = "crate::num::rat_string")]
        margin: Rational,
    },
    InconclusiveChernWitness {
        #[serde(with = "crate::num::rat_string")]
        witness: Rational,
    },
    IsometryMovesBlowupClasses {
        l: usize,
    },
}

/// The full, re-checkable output of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthGapCertificate {
    pub k: usize,
    pub l: usize,
    pub input_period: PeriodVector,
    /// The input after any tail deformation; all claims are about this
    /// vector.
    pub working_period: PeriodVector,
    pub tail_deformed: bool,
    #[serde(with = "crate::num::rat_string")]
    pub sphere_area: Rational,
    pub isometry: Isometry,
    /// Product class on the exotic side: the transported periods with the
    /// sphere area.
    pub exotic_class: ProductClass,
    /// Product class on the standard side: the working periods with the
    /// same sphere area. With the identity isometry the two sides carry
    /// literally equal coefficients.
    pub standard_class: ProductClass,
    /// √([ω]²): the product width on the exotic side is at least this.
    pub exotic_width_lower: ExactReal,
    /// ω(A) = a − b₁: the product width on the standard side is at most
    /// this.
    #[serde(with = "crate::num::rat_string")]
    pub standard_width_upper: Rational,
    /// exotic_width_lower − standard_width_upper, strictly positive.
    pub gap: SqrtGap,
    pub chern: ChernDifference,
    pub exotic_cone: ConeVerdict,
    pub rational_cone: ConeVerdict,
    pub uniruled: UpperBoundResult,
    /// Standing hypotheses the certificate relies on but does not verify.
    pub hypotheses: Vec<String>,
}

/// Pipeline outcome: a certificate, or the first failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CertificateOutcome {
    Emitted {
        certificate: Box<WidthGapCertificate>,
    },
    Refused {
        refusal: Refusal,
    },
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&WidthGapCertificate> {
        match self {
            CertificateOutcome::Emitted { certificate } => Some(certificate),
            CertificateOutcome::Refused { .. } => None,
        }
    }

    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            CertificateOutcome::Refused { refusal } => Some(refusal),
            CertificateOutcome::Emitted { .. } => None,
        }
    }
}

fn standing_hypotheses() -> Vec<String> {
    vec![
        "sphere area >= sqrt([w]^2): the sphere factor is large enough that a split ball \
         realizes the volume lower bound for the product width"
            .to_string(),
        "an exotic smooth structure homeomorphic to the k-fold blowup, carrying exactly l \
         disjoint exceptional sphere classes, exists; taken as input, not verified"
            .to_string(),
        "on the exotic side the exceptional sphere classes are exactly the last l \
         coordinates, so the width obstruction set is empty and the width equals sqrt([w]^2)"
            .to_string(),
    ]
}

/// Runs the full construction for the k-fold blowup with l exceptional
/// directions, period ω, sphere area λ, and optional transport isometry
/// (identity when absent).
///
/// Emits a certificate exactly when every check passes; otherwise reports
/// the first failed check as a structured refusal. Hard errors are
/// reserved for malformed inputs (dimension or range violations).
pub fn width_gap_certificate(
    k: usize,
    l: usize,
    omega: &PeriodVector,
    sphere_area: &Rational,
    phi: Option<Isometry>,
) -> Result<CertificateOutcome, Error> {
    if omega.k() != k {
        return Err(Error::DimensionMismatch {
            left: k,
            right: omega.k(),
        });
    }
    if l == 0 || l > k {
        return Err(Error::BlowdownCountOutOfRange { l, k });
    }
    let phi = phi.unwrap_or_else(|| Isometry::identity(k));
    if phi.k() != k {
        return Err(Error::BadMatrixShape {
            rows: phi.k() + 1,
            cols: phi.k() + 1,
            expected: k + 1,
        });
    }

    let refuse = |refusal| Ok(CertificateOutcome::Refused { refusal });

    if !phi.fixes_last(l) {
        return refuse(Refusal::IsometryMovesBlowupClasses { l });
    }

    let mut working = omega.clone();
    let mut transported = transport_period(&phi, &working);
    let mut exotic_cone = kpm_membership(&transported, l)?;
    if !exotic_cone.is_member() {
        return refuse(Refusal::ConeViolation {
            side: ConeSide::Exotic,
            verdict: exotic_cone,
        });
    }
    let mut rational_cone = liliu_membership(&working);
    if !rational_cone.is_member() {
        return refuse(Refusal::ConeViolation {
            side: ConeSide::Rational,
            verdict: rational_cone,
        });
    }
    if !is_symplectic_candidate(&working) {
        return refuse(Refusal::NotReduced);
    }

    let mut uniruled = uniruled_upper_bound(&working)?;
    let mut chern = chern_difference(&working);
    let mut tail_deformed = false;
    if k >= 5 && (!uniruled.margin_is_strict() || !chern.differ) {
        working = deform_tail(&working, 5)?;
        tail_deformed = true;
        uniruled = uniruled_upper_bound(&working)?;
        chern = chern_difference(&working);
        transported = transport_period(&phi, &working);
        exotic_cone = kpm_membership(&transported, l)?;
        if !exotic_cone.is_member() {
            return refuse(Refusal::ConeViolation {
                side: ConeSide::Exotic,
                verdict: exotic_cone,
            });
        }
        rational_cone = liliu_membership(&working);
        if !rational_cone.is_member() {
            return refuse(Refusal::ConeViolation {
                side: ConeSide::Rational,
                verdict: rational_cone,
            });
        }
    }

    if !uniruled.margin_is_strict() {
        return refuse(Refusal::NonStrictMargin {
            margin: uniruled.strict_margin.clone(),
        });
    }
    if !chern.differ {
        return refuse(Refusal::InconclusiveChernWitness {
            witness: chern.witness.clone(),
        });
    }

    let square = working.square();
    let lower = ExactReal::sqrt(square.clone()).expect("cone membership forces positive square");
    if ExactReal::rational(sphere_area.clone()) < lower {
        return refuse(Refusal::InsufficientSphereArea {
            required: lower,
            given: sphere_area.clone(),
        });
    }

    let gap = SqrtGap::new(square, uniruled.bound.clone());
    debug_assert!(gap.is_positive(), "gap must mirror the strict margin");

    let certificate = WidthGapCertificate {
        k,
        l,
        input_period: omega.clone(),
        working_period: working.clone(),
        tail_deformed,
        sphere_area: sphere_area.clone(),
        isometry: phi,
        exotic_class: ProductClass {
            base: transported,
            sphere_area: sphere_area.clone(),
        },
        standard_class: ProductClass {
            base: working,
            sphere_area: sphere_area.clone(),
        },
        exotic_width_lower: lower,
        standard_width_upper: uniruled.bound.clone(),
        gap,
        chern,
        exotic_cone,
        rational_cone,
        uniruled,
        hypotheses: standing_hypotheses(),
    };
    Ok(CertificateOutcome::Emitted {
        certificate: Box::new(certificate),
    })
}

/// Independent audit of an emitted certificate: recomputes every claim
/// from the recorded inputs and reports the first mismatch.
pub fn verify_certificate(cert: &WidthGapCertificate) -> Result<(), String> {
    let fail = |msg: String| Err(msg);

    if cert.l == 0 || cert.l > cert.k {
        return fail(format!("l = {} out of range for k = {}", cert.l, cert.k));
    }
    if cert.input_period.k() != cert.k || cert.working_period.k() != cert.k {
        return fail("period vectors live on a different lattice than k".into());
    }
    if verify_isometry(cert.isometry.entries(), cert.k) != Ok(true) {
        return fail("recorded matrix is not an isometry of this lattice".into());
    }
    if !cert.isometry.fixes_last(cert.l) {
        return fail(format!(
            "isometry does not fix the last {} exceptional directions",
            cert.l
        ));
    }
    if cert.tail_deformed {
        let keep = 5.min(cert.k + 1);
        if cert.input_period.areas()[..keep] != cert.working_period.areas()[..keep] {
            return fail("tail deformation modified head entries".into());
        }
    } else if cert.input_period != cert.working_period {
        return fail("working period differs from input without deformation".into());
    }
    if !is_symplectic_candidate(&cert.working_period) {
        return fail("working period is not reduced with positive entries".into());
    }

    let transported = transport_period(&cert.isometry, &cert.working_period);
    if cert.exotic_class.base != transported {
        return fail(
            "exotic-side class is not the isometry transport of the working period".into(),
        );
    }
    if cert.standard_class.base != cert.working_period {
        return fail("standard-side class does not match the working period".into());
    }
    if cert.exotic_class.sphere_area != cert.sphere_area
        || cert.standard_class.sphere_area != cert.sphere_area
    {
        return fail("sphere areas disagree across the cohomologous pair".into());
    }

    match kpm_membership(&cert.exotic_class.base, cert.l) {
        Ok(verdict) if verdict == cert.exotic_cone && verdict.is_member() => {}
        Ok(verdict) => {
            return fail(format!(
                "exotic cone verdict mismatch: recomputed {verdict:?}"
            ))
        }
        Err(e) => return fail(format!("exotic cone recheck failed: {e}")),
    }
    let rational = liliu_membership(&cert.working_period);
    if rational != cert.rational_cone || !rational.is_member() {
        return fail(format!(
            "rational cone verdict mismatch: recomputed {rational:?}"
        ));
    }

    let uniruled = match uniruled_upper_bound(&cert.working_period) {
        Ok(u) => u,
        Err(e) => return fail(format!("fiber bound recheck failed: {e}")),
    };
    if uniruled != cert.uniruled {
        return fail("fiber-class bound data mismatch".into());
    }
    if !uniruled.margin_is_strict() {
        return fail("strict margin is not positive".into());
    }
    if cert.standard_width_upper != uniruled.bound {
        return fail("standard-side upper bound does not equal the fiber area".into());
    }
    let fiber_area = area(&cert.working_period, &uniruled.uniruled_class)
        .map_err(|e| format!("fiber area recheck failed: {e}"))?;
    if fiber_area != uniruled.bound {
        return fail("fiber area does not evaluate to the recorded bound".into());
    }

    let square = cert.working_period.square();
    match ExactReal::sqrt(square.clone()) {
        Ok(lower) if lower == cert.exotic_width_lower => {}
        _ => return fail("exotic-side lower bound is not sqrt of the square".into()),
    }
    if transported.square() != square {
        return fail("transport failed to preserve the square".into());
    }

    if cert.gap.radicand != square
        || cert.gap.subtracted != cert.standard_width_upper
        || !cert.gap.is_positive()
    {
        return fail("gap record is inconsistent or non-positive".into());
    }

    let chern = chern_difference(&cert.working_period);
    if chern != cert.chern || !chern.differ {
        return fail("canonical-pairing witness mismatch".into());
    }

    if ExactReal::rational(cert.sphere_area.clone()) < cert.exotic_width_lower {
        return fail("sphere area is below the exotic lower bound".into());
    }
    if cert.hypotheses.is_empty() {
        return fail("certificate lists no standing hypotheses".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeStatus;
    use crate::num::ratq;

    fn pv(v: &[i64]) -> PeriodVector {
        PeriodVector::from_integers(v)
    }

    fn swap_last_two(k: usize) -> Vec<Vec<i64>> {
        let n = k + 1;
        let mut m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        m[n - 1][n - 1] = 0;
        m[n - 2][n - 2] = 0;
        m[n - 1][n - 2] = 1;
        m[n - 2][n - 1] = 1;
        m
    }

    #[test]
    fn isometry_verification_examples() {
        let id: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(verify_isometry(&id, 2), Ok(true));
        assert_eq!(verify_isometry(&swap_last_two(2), 2), Ok(true));
        // H ↦ H, E₁ ↦ H−E₁ sends a square −1 class to a square 0 class.
        let shear = vec![vec![1, 1, 0], vec![0, -1, 0], vec![0, 0, 1]];
        assert_eq!(verify_isometry(&shear, 2), Ok(false));
        assert!(matches!(
            verify_isometry(&id, 3),
            Err(Error::BadMatrixShape { .. })
        ));
        assert_eq!(Isometry::new(shear), Err(Error::NotAnIsometry));
    }

    #[test]
    fn reflection_matrix_transports_periods_like_the_move() {
        // Reflection in H−E₁−E₂−E₃ as an explicit matrix.
        let sigma = Isometry::new(vec![
            vec![2, 1, 1, 1],
            vec![-1, 0, -1, -1],
            vec![-1, -1, 0, -1],
            vec![-1, -1, -1, 0],
        ])
        .unwrap();
        let v = pv(&[5, 1, 1, 1]);
        let moved = transport_period(&sigma, &v);
        assert_eq!(moved, pv(&[7, 3, 3, 3]));
        assert_eq!(moved.square(), v.square());
        assert_eq!(canonical_pairing(&moved), canonical_pairing(&v));
        // K itself is fixed.
        let kk = canonical_class(3);
        assert_eq!(sigma.apply_class(&kk), kk);
    }

    #[test]
    fn transport_respects_the_blowup_constraint() {
        let swap = Isometry::new(swap_last_two(2)).unwrap();
        assert!(swap.fixes_last(0));
        assert!(!swap.fixes_last(1));
        assert!(matches!(
            transport_class(&swap, &HomologyClass::exceptional(2, 2), 1),
            Err(Error::IsometryMovesBlowupClasses(1))
        ));
        let id = Isometry::identity(2);
        let pc = extend_and_transport(&id, &pv(&[3, 1, 1]), &rat(3), 1).unwrap();
        assert_eq!(pc.base, pv(&[3, 1, 1]));
        assert_eq!(pc.sphere_area, rat(3));
    }

    #[test]
    fn product_topology_consistency() {
        for k in 0..=10 {
            let t = ProductTopology::rational_product(k);
            assert_eq!(t.signature, 1 - k as i64);
            assert_eq!(t.p1_coefficient, 3 * t.signature);
            assert_eq!(t.w2.len(), k + 1);
            assert!(t.w2.iter().all(|&b| b == 1), "canonical parity is all-odd");
        }
    }

    #[test]
    fn chern_witness_examples() {
        let c = chern_difference(&pv(&[3, 1, 1]));
        assert_eq!((c.differ, c.witness), (true, rat(-7)));

        let wide = PeriodVector::new(
            std::iter::once(rat(4))
                .chain(std::iter::repeat_n(ratq(6, 5), 12))
                .collect(),
        );
        let c = chern_difference(&wide);
        assert_eq!((c.differ, c.witness), (false, ratq(12, 5)));
    }

    #[test]
    fn certificate_pipeline_desk_example() {
        let outcome = width_gap_certificate(2, 1, &pv(&[3, 1, 1]), &rat(3), None).unwrap();
        let cert = outcome.certificate().expect("all checks pass");
        assert_eq!(cert.exotic_width_lower, ExactReal::sqrt(rat(7)).unwrap());
        assert_eq!(cert.standard_width_upper, rat(2));
        assert!(cert.gap.is_positive());
        assert_eq!(cert.gap, SqrtGap::new(rat(7), rat(2)));
        assert_eq!(
            (cert.chern.differ, cert.chern.witness.clone()),
            (true, rat(-7))
        );
        assert!(!cert.tail_deformed);
        assert_eq!(cert.exotic_class.base, cert.standard_class.base);
        assert!(verify_certificate(cert).is_ok());
    }

    #[test]
    fn certificate_refusals() {
        let outcome = width_gap_certificate(2, 1, &pv(&[3, 1, 1]), &rat(2), None).unwrap();
        match outcome.refusal().expect("sphere area too small") {
            Refusal::InsufficientSphereArea { required, given } => {
                assert_eq!(required, &ExactReal::sqrt(rat(7)).unwrap());
                assert_eq!(given, &rat(2));
            }
            other => panic!("unexpected refusal {other:?}"),
        }

        let outcome = width_gap_certificate(2, 1, &pv(&[3, 1, -1]), &rat(3), None).unwrap();
        match outcome.refusal().expect("negative area on E₂") {
            Refusal::ConeViolation { side, verdict } => {
                assert_eq!(*side, ConeSide::Exotic);
                assert_eq!(verdict.status, ConeStatus::Violated);
                assert_eq!(verdict.violator, Some(HomologyClass::exceptional(2, 2)));
            }
            other => panic!("unexpected refusal {other:?}"),
        }

        let swap = Isometry::new(swap_last_two(2)).unwrap();
        let outcome = width_gap_certificate(2, 1, &pv(&[3, 1, 1]), &rat(3), Some(swap)).unwrap();
        assert!(matches!(
            outcome.refusal(),
            Some(Refusal::IsometryMovesBlowupClasses { l: 1 })
        ));

        let outcome = width_gap_certificate(2, 1, &pv(&[3, 2, 2]), &rat(9), None).unwrap();
        match outcome.refusal().expect("rational cone violation") {
            Refusal::ConeViolation { side, .. } => assert_eq!(*side, ConeSide::Rational),
            other => panic!("unexpected refusal {other:?}"),
        }

        // Unsorted but cone-member input refuses on reducedness.
        let outcome = width_gap_certificate(2, 1, &pv(&[5, 1, 2]), &rat(9), None).unwrap();
        assert!(matches!(outcome.refusal(), Some(Refusal::NotReduced)));

        assert_eq!(
            width_gap_certificate(2, 0, &pv(&[3, 1, 1]), &rat(3), None),
            Err(Error::BlowdownCountOutOfRange { l: 0, k: 2 })
        );
    }

    #[test]
    fn five_fold_pipeline_deforms_and_succeeds() {
        let outcome = width_gap_certificate(5, 1, &pv(&[3, 1, 1, 1, 1, 1]), &rat(3), None).unwrap();
        let cert = outcome
            .certificate()
            .expect("deformation rescues the margin");
        assert!(cert.tail_deformed);
        let mut expected = vec![rat(3), rat(1), rat(1), rat(1), rat(1)];
        expected.push(ratq(1, 2));
        assert_eq!(cert.working_period, PeriodVector::new(expected));
        assert_eq!(cert.uniruled.strict_margin, ratq(3, 4));
        assert_eq!(cert.chern.witness, ratq(-9, 2));
        assert_eq!(
            cert.exotic_width_lower,
            ExactReal::sqrt(ratq(19, 4)).unwrap()
        );
        assert!(verify_certificate(cert).is_ok());
    }

    #[test]
    fn certificate_survives_serde_round_trip() {
        let outcome = width_gap_certificate(2, 1, &pv(&[3, 1, 1]), &rat(3), None).unwrap();
        let cert = outcome.certificate().unwrap();
        let json = serde_json::to_string_pretty(cert).unwrap();
        let back: WidthGapCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, cert);
        assert!(verify_certificate(&back).is_ok());
    }
}
