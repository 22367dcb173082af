use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

/// Element of the multiplicative group of positive rationals, stored as its
/// prime factorization. The ordering is structural (by exponent map), not by
/// numeric value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatioGroupElement {
    exponents: BTreeMap<u64, i64>,
}

impl RatioGroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut out = Self::identity();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::Validation(format!("{p} is not prime")));
            }
            *out.exponents.entry(p).or_insert(0) += e;
        }
        out.exponents.retain(|_, e| *e != 0);
        Ok(out)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::from_exponents([(p, 1)])
    }

    /// Factors a strictly positive rational.
    pub fn from_rational(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Domain(format!("{} is not strictly positive", format_rational(q))));
        }
        let mut exps = BTreeMap::new();
        factor_into(q.numer(), 1, &mut exps)?;
        factor_into(q.denom(), -1, &mut exps)?;
        exps.retain(|_, e| *e != 0);
        Ok(Self { exponents: exps })
    }

    pub fn from_fraction(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    pub fn exponent(&self, p: u64) -> i64 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exponents.clone();
        for (&p, &e) in &other.exponents {
            *exps.entry(p).or_insert(0) += e;
        }
        exps.retain(|_, e| *e != 0);
        Self { exponents: exps }
    }

    pub fn inv(&self) -> Self {
        Self { exponents: self.exponents.iter().map(|(&p, &e)| (p, -e)).collect() }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::identity();
        }
        Self { exponents: self.exponents.iter().map(|(&p, &e)| (p, e * n)).collect() }
    }

    /// The exact value `prod p^e`.
    pub fn value(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.exponents {
            let f = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
            if e > 0 {
                num *= f;
            } else {
                den *= f;
            }
        }
        BigRational::new(num, den)
    }

    pub fn value_f64(&self) -> f64 {
        self.value().to_f64().unwrap_or(f64::NAN)
    }

    /// True when the value exceeds one.
    pub fn exceeds_one(&self) -> bool {
        self.value() > Rational::one()
    }
}

impl fmt::Display for RatioGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.value()))
    }
}

impl std::str::FromStr for RatioGroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_rational(&parse_rational(s)?)
    }
}

impl Serialize for RatioGroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatioGroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn factor_into(n: &BigInt, sign: i64, exps: &mut BTreeMap<u64, i64>) -> Result<()> {
    let mut n = n
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("{n} is too large to factor")))?;
    if n.is_zero() {
        return Err(Error::Domain("zero has no factorization".into()));
    }
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            *exps.entry(d).or_insert(0) += sign;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *exps.entry(n).or_insert(0) += sign;
    }
    Ok(())
}
