//! The intersection lattice of CP²#k·CP̄² and its period vectors.
//!
//! Convention sheet, fixed once for the whole crate:
//!
//! * Degree-2 homology uses the standard basis (H, E₁, …, E_k); a class is a
//!   coefficient vector (d; e₁, …, e_k) meaning d·H + Σ eᵢ·Eᵢ.
//! * The pairing is diagonal: H² = 1, Eᵢ² = −1, H·Eᵢ = 0, so
//!   pair((d; e), (d′; e′)) = d·d′ − Σ eᵢ·eᵢ′.
//! * The canonical class is K = (−3; 1, …, 1), and c₁(B) = −K·B = 3d + Σ eᵢ.
//! * A cohomology class [ω] is stored through its periods (a; b₁, …, b_k)
//!   with a = ω(H), bᵢ = ω(Eᵢ); evaluation is ω(B) = a·d + Σ bᵢ·eᵢ.
//! * The Poincaré dual of [ω] is the class (a; −b₁, …, −b_k), so
//!   square([ω]) = a² − Σ bᵢ² and ω(PD[ω]) = square([ω]).
//!
//! All values are immutable and all operations are pure, so everything here
//! is freely shareable across threads.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::{parse_rational, rat, Rational};

/// A degree-2 homology (or, via PD, cohomology) class (d; e₁, …, e_k) on the
/// k-fold blowup lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct HomologyClass {
    coeffs: Vec<Rational>,
}

impl HomologyClass {
    /// Builds a class from its coefficient vector (d; e₁, …, e_k).
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a class needs at least the H coefficient"
        );
        HomologyClass { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(rat).collect())
    }

    /// The line class H on the k-fold blowup.
    pub fn line(k: usize) -> Self {
        let mut coeffs = vec![rat(0); k + 1];
        coeffs[0] = rat(1);
        HomologyClass { coeffs }
    }

    /// The i-th exceptional class Eᵢ (1-based) on the k-fold blowup.
    pub fn exceptional(k: usize, i: usize) -> Self {
        assert!((1..=k).contains(&i), "exceptional index {i} out of 1..={k}");
        let mut coeffs = vec![rat(0); k + 1];
        coeffs[i] = rat(1);
        HomologyClass { coeffs }
    }

    /// Number of exceptional coordinates.
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of H.
    pub fn d(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Coefficient of Eᵢ (1-based).
    pub fn e(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        HomologyClass {
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
        }
    }

    /// Drops the last exceptional coordinate (the projection that forgets the
    /// final blowup).
    pub fn project_off_last(&self) -> Self {
        assert!(self.k() >= 1, "nothing to project on the minimal lattice");
        HomologyClass {
            coeffs: self.coeffs[..self.coeffs.len() - 1].to_vec(),
        }
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.coeffs[0])?;
        for (i, c) in self.coeffs[1..].iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "; " } else { ", " }, c)?;
        }
        write!(f, ")")
    }
}

impl From<HomologyClass> for Vec<String> {
    fn from(c: HomologyClass) -> Self {
        c.coeffs.iter().map(Rational::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for HomologyClass {
    type Error = Error;

    fn try_from(raw: Vec<String>) -> Result<Self, Error> {
        if raw.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomologyClass { coeffs })
    }
}

impl Add for &HomologyClass {
    type Output = HomologyClass;

    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        assert_eq!(self.k(), rhs.k(), "dimension mismatch in class sum");
        HomologyClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &HomologyClass {
    type Output = HomologyClass;

    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        assert_eq!(self.k(), rhs.k(), "dimension mismatch in class difference");
        HomologyClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &HomologyClass {
    type Output = HomologyClass;

    fn neg(self) -> HomologyClass {
        HomologyClass {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// The periods (a; b₁, …, b_k) of a cohomology class: a = ω(H), bᵢ = ω(Eᵢ).
///
/// Zero bᵢ entries are allowed (classes pulled back from fewer blowups);
/// strict positivity is enforced only by the operations that need it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct PeriodVector {
    areas: Vec<Rational>,
}

impl PeriodVector {
    pub fn new(areas: Vec<Rational>) -> Self {
        assert!(!areas.is_empty(), "a period vector needs at least ω(H)");
        PeriodVector { areas }
    }

    pub fn from_integers(areas: &[i64]) -> Self {
        Self::new(areas.iter().copied().map(rat).collect())
    }

    pub fn k(&self) -> usize {
        self.areas.len() - 1
    }

    /// a = ω(H).
    pub fn a(&self) -> &Rational {
        &self.areas[0]
    }

    /// bᵢ = ω(Eᵢ) (1-based).
    pub fn b(&self, i: usize) -> &Rational {
        &self.areas[i]
    }

    pub fn areas(&self) -> &[Rational] {
        &self.areas
    }

    /// The exceptional areas (b₁, …, b_k).
    pub fn b_slice(&self) -> &[Rational] {
        &self.areas[1..]
    }

    /// square([ω]) = a² − Σ bᵢ².
    pub fn square(&self) -> Rational {
        let a = &self.areas[0];
        let mut s = a * a;
        for b in &self.areas[1..] {
            s -= b * b;
        }
        s
    }

    /// The Poincaré dual class (a; −b₁, …, −b_k).
    pub fn poincare_dual(&self) -> HomologyClass {
        let mut coeffs = Vec::with_capacity(self.areas.len());
        coeffs.push(self.areas[0].clone());
        coeffs.extend(self.areas[1..].iter().map(|b| -b));
        HomologyClass::new(coeffs)
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        PeriodVector {
            areas: self.areas.iter().map(|x| x * t).collect(),
        }
    }

    pub fn all_b_positive(&self) -> bool {
        self.areas[1..].iter().all(Rational::is_positive)
    }

    pub fn all_b_nonnegative(&self) -> bool {
        !self.areas[1..].iter().any(Rational::is_negative)
    }

    pub fn b_sorted_descending(&self) -> bool {
        self.areas[1..].windows(2).all(|w| w[0] >= w[1])
    }

    /// Σ bᵢ over the exceptional areas.
    pub fn b_sum(&self) -> Rational {
        self.areas[1..].iter().sum()
    }
}

impl fmt::Display for PeriodVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.areas[0])?;
        for (i, b) in self.areas[1..].iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "; " } else { ", " }, b)?;
        }
        write!(f, ")")
    }
}

impl From<PeriodVector> for Vec<String> {
    fn from(v: PeriodVector) -> Self {
        v.areas.iter().map(Rational::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for PeriodVector {
    type Error = Error;

    fn try_from(raw: Vec<String>) -> Result<Self, Error> {
        if raw.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        let areas = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PeriodVector { areas })
    }
}

/// Which 4-manifold model a computation is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ManifoldDescriptor {
    /// CP²#k·CP̄² with its standard smooth structure.
    Rational { k: usize },
    /// A manifold homeomorphic but not diffeomorphic to CP²#k·CP̄², carrying
    /// l disjoint exceptional sphere classes (the last l coordinates). Such a
    /// manifold is never rational-or-ruled and has b₁ = 0, b₂⁺ = 1.
    ExoticRational { k: usize, l: usize },
    /// Anything else, described by the flags the width formulas consult.
    /// `h1_square_nonzero` is the user-asserted claim (H¹)² ≠ 0.
    General {
        b1: i64,
        b2_plus: i64,
        signature: i64,
        h1_square_nonzero: bool,
        rational_or_ruled: bool,
    },
}

impl ManifoldDescriptor {
    pub fn rational(k: usize) -> Self {
        ManifoldDescriptor::Rational { k }
    }

    pub fn exotic_rational(k: usize, l: usize) -> Result<Self, Error> {
        if l > k {
            return Err(Error::BlowdownCountOutOfRange { l, k });
        }
        Ok(ManifoldDescriptor::ExoticRational { k, l })
    }
}

/// Intersection pairing d·d′ − Σ eᵢ·eᵢ′ on matching lattices.
pub fn pair(x: &HomologyClass, y: &HomologyClass) -> Result<Rational, Error> {
    if x.k() != y.k() {
        return Err(Error::DimensionMismatch {
            left: x.k(),
            right: y.k(),
        });
    }
    let mut s = x.d() * y.d();
    for (ex, ey) in x.coeffs[1..].iter().zip(&y.coeffs[1..]) {
        s -= ex * ey;
    }
    Ok(s)
}

/// The canonical class K = (−3; 1, …, 1); satisfies K² = 9 − k.
pub fn canonical_class(k: usize) -> HomologyClass {
    let mut coeffs = vec![rat(1); k + 1];
    coeffs[0] = rat(-3);
    HomologyClass::new(coeffs)
}

/// c₁(B) = −K·B = 3d + Σ eᵢ.
pub fn c1_eval(class: &HomologyClass) -> Rational {
    let mut s = rat(3) * class.d();
    for e in &class.coeffs[1..] {
        s += e;
    }
    s
}

/// ω(B) = a·d + Σ bᵢ·eᵢ.
pub fn area(omega: &PeriodVector, class: &HomologyClass) -> Result<Rational, Error> {
    if omega.k() != class.k() {
        return Err(Error::DimensionMismatch {
            left: omega.k(),
            right: class.k(),
        });
    }
    let mut s = omega.a() * class.d();
    for (b, e) in omega.areas[1..].iter().zip(&class.coeffs[1..]) {
        s += b * e;
    }
    Ok(s)
}
