//! Exact rational helpers: parsing, formatting, square-root brackets and
//! dyadic rounding on top of [`BigRational`].

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Arbitrary-precision rational in lowest terms.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(pub String);

/// Shorthand for `num/den`. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let int_abs = int.trim_start_matches(['-', '+']);
        let int_abs = if int_abs.is_empty() { "0" } else { int_abs };
        let digits: BigInt = format!("{int_abs}{frac}").parse().map_err(|_| err())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let v = Q::new(digits, den);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Q::from_integer(n))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn serialize_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn deserialize_q<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = RationalText::deserialize(d)?;
    s.into_q().map_err(serde::de::Error::custom)
}

pub fn serialize_qs<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&fmt_q(x))?;
    }
    seq.end()
}

pub fn deserialize_qs<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
    let raw = Vec::<RationalText>::deserialize(d)?;
    raw.into_iter().map(|r| r.into_q().map_err(serde::de::Error::custom)).collect()
}

/// Rationals may arrive as strings or as plain JSON integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    fn into_q(self) -> Result<Q, ParseRationalError> {
        match self {
            RationalText::Text(s) => parse_q(&s),
            RationalText::Int(n) => Ok(qi(n)),
        }
    }
}

// Integer fast paths: `Ratio` arithmetic always normalises through gcds,
// which dominates the cost of the small integral matrices in sector models.

pub(crate) fn mul_q(a: &Q, b: &Q) -> Q {
    if a.is_zero() || b.is_zero() {
        return Q::zero();
    }
    if a.is_integer() && b.is_integer() {
        return Q::from_integer(a.numer() * b.numer());
    }
    a * b
}

pub(crate) fn add_q(a: &Q, b: &Q) -> Q {
    if a.is_integer() && b.is_integer() {
        return Q::from_integer(a.numer() + b.numer());
    }
    a + b
}

pub(crate) fn sub_q(a: &Q, b: &Q) -> Q {
    if a.is_integer() && b.is_integer() {
        return Q::from_integer(a.numer() - b.numer());
    }
    a - b
}

/// Exact square root when `x` is the square of a rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Q::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// Dyadic bracket `lo <= sqrt(x) <= hi` with `hi - lo <= 2^-bits`.
/// Both ends coincide when the root is rational.
pub fn sqrt_bracket(x: &Q, bits: u32) -> (Q, Q) {
    assert!(!x.is_negative(), "square root of a negative rational");
    if let Some(r) = rational_sqrt(x) {
        return (r.clone(), r);
    }
    // floor(sqrt(x * 4^bits)) / 2^bits
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (x * Q::from_integer(scale)).floor().to_integer();
    let root = BigInt::from_biguint(Sign::Plus, scaled.magnitude().sqrt());
    let den = BigInt::one() << bits as usize;
    let lo = Q::new(root.clone(), den.clone());
    let hi = Q::new(root + 1, den);
    (lo, hi)
}

/// Smallest `m / 2^j` strictly greater than `x`.
pub fn dyadic_above(x: &Q, j: u32) -> Q {
    let den = BigInt::one() << j as usize;
    let scaled = x * Q::from_integer(den.clone());
    let m = scaled.floor().to_integer() + 1;
    Q::new(m, den)
}

/// Largest `m / 2^j` strictly less than `x`.
pub fn dyadic_below(x: &Q, j: u32) -> Q {
    let den = BigInt::one() << j as usize;
    let scaled = x * Q::from_integer(den.clone());
    let m = scaled.ceil().to_integer() - 1;
    Q::new(m, den)
}

pub fn two_pow_neg(j: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << j as usize)
}

/// Upper bound on the Euclidean norm: the L1 norm.
pub fn l1_norm(xs: &[Q]) -> Q {
    xs.iter().fold(Q::zero(), |acc, x| acc + x.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_q("-3").unwrap(), qi(-3));
        assert_eq!(parse_q(" 6/4 ").unwrap(), q(3, 2));
        assert_eq!(parse_q("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_q("1.5").unwrap(), q(3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("1.").is_err());
    }

    #[test]
    fn formatting_is_canonical() {
        assert_eq!(fmt_q(&q(4, 2)), "2");
        assert_eq!(fmt_q(&q(-2, 6)), "-1/3");
    }

    #[test]
    fn sqrt_exact_and_bracketed() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&qi(2)), None);
        let (lo, hi) = sqrt_bracket(&qi(2), 20);
        assert!(&lo * &lo < qi(2) && &hi * &hi > qi(2));
        assert!(&hi - &lo <= two_pow_neg(20));
    }

    #[test]
    fn dyadic_rounding_is_strict() {
        assert_eq!(dyadic_above(&q(3, 2), 0), qi(2));
        assert_eq!(dyadic_above(&q(3, 2), 1), qi(2));
        assert_eq!(dyadic_above(&q(3, 2), 2), q(7, 4));
        assert_eq!(dyadic_below(&q(3, 2), 1), qi(1));
        assert_eq!(dyadic_below(&q(-1, 3), 0), qi(-1));
    }
}
