//! Gaussian rationals `a + bi` with `a, b` in Q.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{add_q, fmt_q, mul_q, parse_q, sub_q, Q};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussQ { re, im: Q::zero() }
    }

    pub fn i() -> Self {
        GaussQ { re: Q::zero(), im: Q::one() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussQ::new(Q::from_integer(re.into()), Q::from_integer(im.into()))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussQ { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|^2`
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussQ { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, k: &Q) -> Self {
        GaussQ { re: mul_q(&self.re, k), im: mul_q(&self.im, k) }
    }
}

impl Zero for GaussQ {
    fn zero() -> Self {
        GaussQ { re: Q::zero(), im: Q::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussQ {
    fn one() -> Self {
        GaussQ { re: Q::one(), im: Q::zero() }
    }
}

impl<'a> Add<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: add_q(&self.re, &o.re), im: add_q(&self.im, &o.im) }
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, o: GaussQ) -> GaussQ {
        &self + &o
    }
}

impl AddAssign<&GaussQ> for GaussQ {
    fn add_assign(&mut self, o: &GaussQ) {
        self.re = add_q(&self.re, &o.re);
        self.im = add_q(&self.im, &o.im);
    }
}

impl<'a> Sub<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn sub(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: sub_q(&self.re, &o.re), im: sub_q(&self.im, &o.im) }
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, o: GaussQ) -> GaussQ {
        &self - &o
    }
}

impl SubAssign<&GaussQ> for GaussQ {
    fn sub_assign(&mut self, o: &GaussQ) {
        self.re = sub_q(&self.re, &o.re);
        self.im = sub_q(&self.im, &o.im);
    }
}

impl<'a> Mul<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussQ::real(mul_q(&self.re, &o.re));
        }
        if self.im.is_zero() {
            return o.scale(&self.re);
        }
        if o.im.is_zero() {
            return self.scale(&o.re);
        }
        GaussQ {
            re: sub_q(&mul_q(&self.re, &o.re), &mul_q(&self.im, &o.im)),
            im: add_q(&mul_q(&self.re, &o.im), &mul_q(&self.im, &o.re)),
        }
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, o: GaussQ) -> GaussQ {
        &self * &o
    }
}

impl Neg for &GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        -&self
    }
}

impl fmt::Debug for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q(&self.re)),
            (true, false) => write!(f, "{}i", fmt_q(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", fmt_q(&self.re), sign, fmt_q(&self.im.abs()))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GaussText {
    re: String,
    #[serde(default = "zero_text")]
    im: String,
}

fn zero_text() -> String {
    "0".to_string()
}

impl Serialize for GaussQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussText { re: fmt_q(&self.re), im: fmt_q(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = GaussText::deserialize(d)?;
        let re = parse_q(&t.re).map_err(serde::de::Error::custom)?;
        let im = parse_q(&t.im).map_err(serde::de::Error::custom)?;
        Ok(GaussQ { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn field_ops() {
        let a = GaussQ::new(q(1, 2), q(3, 1));
        let b = GaussQ::from_ints(2, -1);
        let prod = &a * &b;
        assert_eq!(prod, GaussQ::new(q(4, 1), q(11, 2)));
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, GaussQ::one());
        assert_eq!(GaussQ::i() * GaussQ::i(), -GaussQ::one());
        assert!(GaussQ::zero().inv().is_none());
    }

    #[test]
    fn json_round_trip() {
        let a = GaussQ::new(q(-1, 3), q(2, 1));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"re":"-1/3","im":"2"}"#);
        let back: GaussQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let re_only: GaussQ = serde_json::from_str(r#"{"re":"5"}"#).unwrap();
        assert_eq!(re_only, GaussQ::from_ints(5, 0));
    }
}
