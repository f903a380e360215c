//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigjson::JsonInt;

/// Sparse map from exponent to nonzero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c.into());
        p
    }

    /// Builds `Σ coeffs[i] t^{low + i}`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(low: i64, coeffs: &[T]) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i64, c.clone().into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max - min` exponent; zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// `p(t) ↦ p(t^k)`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution t -> t^0 collapses the polynomial");
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.terms {
            out.add_term(e * k, c.clone());
        }
        out
    }

    pub fn eval(&self, t: &BigInt) -> Option<num_rational::BigRational> {
        if t.is_zero() && self.min_exponent().is_some_and(|e| e < 0) {
            return None;
        }
        let t = num_rational::BigRational::from_integer(t.clone());
        Some(self.terms.iter().fold(num_rational::BigRational::zero(), |acc, (&e, c)| {
            acc + num_rational::BigRational::from_integer(c.clone()) * num_traits::pow::Pow::pow(&t, e as i32)
        }))
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Coefficient of `t^j` equals coefficient of `t^{-j}` for every `j`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Canonical representative up to units `±t^k`: exponents centered on
    /// zero (on `[-s, s+1]` when the span is odd) and a positive leading
    /// coefficient.
    pub fn normalized(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return LaurentPoly::zero();
        };
        let centered = self.shift(-(lo + (hi - lo) / 2));
        if centered.leading_coeff().is_some_and(Signed::is_negative) {
            -centered
        } else {
            centered
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;

            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Prints descending powers: `t^2 - 1 + t^-2`, `-t + 3 - t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

/// JSON form: `{"terms": [[exponent, coefficient], …]}` in ascending order,
/// plus a human-readable `"display"` string that is ignored on input.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            display: String,
            terms: Vec<(i64, JsonInt)>,
        }
        Out {
            display: self.to_string(),
            terms: self.terms.iter().map(|(&e, c)| (e, JsonInt(c.clone()))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            terms: Vec<(i64, JsonInt)>,
        }
        let raw = In::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw.terms {
            p.add_term(e, c.0);
        }
        Ok(p)
    }
}
