//! Exact numerics: arbitrary-precision rationals and the `ExactReal`
//! value type (rational, square root of a rational, or +∞) used for widths.
//!
//! No floating point enters any decision path. Square roots stay symbolic
//! and are compared by squaring with sign analysis.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational scalar used everywhere in the crate.
pub type Rational = num_rational::BigRational;

/// Parses an exact rational literal of the form `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    Rational::from_str(s.trim()).map_err(|_| Error::BadRationalLiteral(s.to_string()))
}

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`.
pub fn ratq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Floor of √r for a non-negative rational r, as a big integer.
///
/// Uses floor(√(p/q)) = floor(isqrt(p·q)/q), valid for integer q ≥ 1.
pub fn floor_sqrt(r: &Rational) -> Result<BigInt, Error> {
    if r.is_negative() {
        return Err(Error::NonPositiveSquare(r.clone()));
    }
    let p = r.numer();
    let q = r.denom();
    // p ≥ 0 and q ≥ 1, so truncating division is the floor.
    Ok((p * q).sqrt() / q)
}

/// Exact rational square root, if `r` is a perfect square.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// An exactly represented extended real: a rational, the square root of a
/// non-negative rational, or +∞.
///
/// Construction through [`ExactReal::sqrt`] collapses perfect squares to the
/// rational branch, so equal values have equal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactReal {
    Rational(Rational),
    /// √ of the carried radicand; the radicand is non-negative and never a
    /// perfect square.
    Sqrt(Rational),
    Infinity,
}

impl ExactReal {
    pub fn rational(r: Rational) -> Self {
        ExactReal::Rational(r)
    }

    /// √q with q ≥ 0; normalizes perfect squares to the rational branch.
    pub fn sqrt(q: Rational) -> Result<Self, Error> {
        if q.is_negative() {
            return Err(Error::NonPositiveSquare(q));
        }
        Ok(match sqrt_exact(&q) {
            Some(root) => ExactReal::Rational(root),
            None => ExactReal::Sqrt(q),
        })
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, ExactReal::Infinity)
    }

    /// Multiplies by a non-negative rational scale factor.
    pub fn scaled(&self, t: &Rational) -> Self {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(r * t),
            ExactReal::Sqrt(q) => ExactReal::sqrt(q * t * t).expect("radicand stays non-negative"),
            ExactReal::Infinity => ExactReal::Infinity,
        }
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExactReal::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Greater,
            (_, Infinity) => Ordering::Less,
            (Rational(a), Rational(b)) => a.cmp(b),
            // Radicands are non-negative, so both square roots are ≥ 0.
            (Sqrt(p), Sqrt(q)) => p.cmp(q),
            (Sqrt(q), Rational(r)) => {
                if r.is_negative() {
                    Ordering::Greater
                } else {
                    q.cmp(&(r * r))
                }
            }
            (Rational(_), Sqrt(_)) => other.cmp(self).reverse(),
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => write!(f, "{r}"),
            ExactReal::Sqrt(q) => write!(f, "sqrt({q})"),
            ExactReal::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExactRealRepr {
    Sqrt { sqrt: String },
    Literal(String),
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            ExactReal::Rational(r) => ExactRealRepr::Literal(r.to_string()),
            ExactReal::Sqrt(q) => ExactRealRepr::Sqrt {
                sqrt: q.to_string(),
            },
            ExactReal::Infinity => ExactRealRepr::Literal("inf".to_string()),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ExactRealRepr::deserialize(deserializer)? {
            ExactRealRepr::Sqrt { sqrt } => {
                let q = parse_rational(&sqrt).map_err(D::Error::custom)?;
                ExactReal::sqrt(q).map_err(D::Error::custom)
            }
            ExactRealRepr::Literal(s) if s == "inf" => Ok(ExactReal::Infinity),
            ExactRealRepr::Literal(s) => Ok(ExactReal::Rational(
                parse_rational(&s).map_err(D::Error::custom)?,
            )),
        }
    }
}

/// Serde adapter serializing a [`Rational`] as its exact string literal.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// The difference √radicand − subtracted, kept symbolic so positivity is
/// decided exactly by squaring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtGap {
    #[serde(rename = "sqrt", with = "rat_string")]
    pub radicand: Rational,
    #[serde(rename = "minus", with = "rat_string")]
    pub subtracted: Rational,
}

impl SqrtGap {
    pub fn new(radicand: Rational, subtracted: Rational) -> Self {
        SqrtGap {
            radicand,
            subtracted,
        }
    }

    /// √radicand − subtracted > 0, decided without extracting the root.
    pub fn is_positive(&self) -> bool {
        if self.subtracted.is_negative() {
            !self.radicand.is_negative()
        } else {
            self.radicand > &self.subtracted * &self.subtracted
        }
    }
}

impl fmt::Display for SqrtGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({}) - {}", self.radicand, self.subtracted)
    }
}

/// True when the rational is an even integer; helper for parity checks.
pub fn is_even_integer(r: &Rational) -> bool {
    r.is_integer() && (r.numer() % BigInt::from(2)).is_zero()
}

/// True when the rational is exactly one.
pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_and_fraction_literals() {
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("-3/6").unwrap(), ratq(-1, 2));
        assert_eq!(parse_rational(" 9/10 ").unwrap(), ratq(9, 10));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_reduced_literals() {
        assert_eq!(ratq(4, 2).to_string(), "2");
        assert_eq!(ratq(-9, 12).to_string(), "-3/4");
    }

    #[test]
    fn floor_sqrt_matches_hand_values() {
        assert_eq!(floor_sqrt(&ratq(81, 19)).unwrap(), BigInt::from(2));
        assert_eq!(floor_sqrt(&ratq(2, 7)).unwrap(), BigInt::from(0));
        assert_eq!(floor_sqrt(&rat(49)).unwrap(), BigInt::from(7));
        assert_eq!(floor_sqrt(&ratq(1, 3)).unwrap(), BigInt::from(0));
        assert!(floor_sqrt(&rat(-1)).is_err());
    }

    #[test]
    fn sqrt_normalizes_perfect_squares() {
        assert_eq!(
            ExactReal::sqrt(rat(4)).unwrap(),
            ExactReal::Rational(rat(2))
        );
        assert_eq!(
            ExactReal::sqrt(ratq(9, 16)).unwrap(),
            ExactReal::Rational(ratq(3, 4))
        );
        assert_eq!(ExactReal::sqrt(rat(7)).unwrap(), ExactReal::Sqrt(rat(7)));
        assert!(ExactReal::sqrt(rat(-2)).is_err());
    }

    #[test]
    fn exact_real_ordering_squares_instead_of_rooting() {
        let sqrt7 = ExactReal::sqrt(rat(7)).unwrap();
        assert!(sqrt7 > ExactReal::rational(rat(2)));
        assert!(sqrt7 < ExactReal::rational(rat(3)));
        assert!(sqrt7 < ExactReal::Infinity);
        assert!(ExactReal::rational(rat(-1)) < sqrt7);
        // √(8/9) vs 2/3: 8/9 > 4/9.
        assert!(ExactReal::sqrt(ratq(8, 9)).unwrap() > ExactReal::rational(ratq(2, 3)));
    }

    #[test]
    fn scaling_is_linear_on_both_branches() {
        let t = ratq(3, 2);
        assert_eq!(
            ExactReal::rational(rat(4)).scaled(&t),
            ExactReal::rational(rat(6))
        );
        // (t√7)² = 63/4
        assert_eq!(
            ExactReal::sqrt(rat(7)).unwrap().scaled(&t),
            ExactReal::Sqrt(ratq(63, 4))
        );
    }

    #[test]
    fn sqrt_gap_positivity_is_exact() {
        assert!(SqrtGap::new(rat(7), rat(2)).is_positive());
        assert!(!SqrtGap::new(rat(4), rat(2)).is_positive());
        assert!(!SqrtGap::new(rat(3), rat(2)).is_positive());
        assert!(SqrtGap::new(rat(0), rat(-1)).is_positive());
    }

    #[test]
    fn exact_real_serde_round_trip() {
        for v in [
            ExactReal::rational(ratq(-3, 4)),
            ExactReal::sqrt(rat(7)).unwrap(),
            ExactReal::Infinity,
        ] {
            let json = serde_json::to_string(&v).unwrap();
            let back: ExactReal = serde_json::from_str(&json).unwrap();
            assert_eq!(back, v);
        }
        assert_eq!(
            serde_json::to_string(&ExactReal::sqrt(rat(7)).unwrap()).unwrap(),
            r#"{"sqrt":"7"}"#
        );
        assert_eq!(
            serde_json::to_string(&ExactReal::Infinity).unwrap(),
            r#""inf""#
        );
    }
}
