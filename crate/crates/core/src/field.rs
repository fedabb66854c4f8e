//! Coefficient fields: exact rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
  Rationals,
  Prime(u64),
}

impl FieldSpec {
  /// Parses `rat` or `fp:<p>`.
  pub fn parse(s: &str) -> Result<Self> {
    match s {
      "rat" | "q" | "rationals" => Ok(FieldSpec::Rationals),
      _ => {
        let p = s
          .strip_prefix("fp:")
          .ok_or_else(|| Error::Input(format!("unknown field `{s}` (expected rat or fp:<p>)")))?;
        let p: u64 = p.parse().map_err(|_| Error::Input(format!("bad prime in `{s}`")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
      },
    }
  }
}

impl fmt::Display for FieldSpec {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      FieldSpec::Rationals => write!(f, "rat"),
      FieldSpec::Prime(p) => write!(f, "fp:{p}"),
    }
  }
}

/// A commutative field with exact arithmetic.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
  type Elem: Clone + fmt::Debug + PartialEq + Eq + std::hash::Hash + Send + Sync;

  fn spec(&self) -> FieldSpec;
  fn zero(&self) -> Self::Elem;
  fn one(&self) -> Self::Elem;
  fn from_i64(&self, v: i64) -> Self::Elem;
  fn is_zero(&self, a: &Self::Elem) -> bool;
  fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
  fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
  fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
  fn neg(&self, a: &Self::Elem) -> Self::Elem;
  /// Multiplicative inverse, `None` for zero.
  fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
  fn format(&self, a: &Self::Elem) -> String;
  fn parse(&self, s: &str) -> Result<Self::Elem>;

  fn is_one(&self, a: &Self::Elem) -> bool { *a == self.one() }

  /// `acc - a*b`
  fn sub_mul(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
    self.sub(acc, &self.mul(a, b))
  }
}

/// Rational number, kept in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are stored inline;
/// everything else falls back to a big rational. The representation is
/// canonical, so derived equality and hashing are value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
  Small(i64, i64),
  Big(BigRational),
}

impl Rational {
  pub fn from_int(v: i64) -> Self { Rational::Small(v, 1) }

  fn from_i128(num: i128, den: i128) -> Self {
    debug_assert!(den != 0);
    let g = num.gcd(&den);
    let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
    if d < 0 {
      n = -n;
      d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
      (Ok(n), Ok(d)) => Rational::Small(n, d),
      _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
    }
  }

  fn from_big(r: BigRational) -> Self {
    match (r.numer().to_i64(), r.denom().to_i64()) {
      (Some(n), Some(d)) => Rational::Small(n, d),
      _ => Rational::Big(r),
    }
  }

  fn to_big(&self) -> BigRational {
    match self {
      Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
      Rational::Big(r) => r.clone(),
    }
  }

  pub fn is_zero(&self) -> bool { matches!(self, Rational::Small(0, _)) }

  pub fn add(&self, o: &Self) -> Self {
    match (self, o) {
      (Rational::Small(a, b), Rational::Small(c, d)) => {
        if *b == 1 && *d == 1 {
          if let Some(s) = a.checked_add(*c) {
            return Rational::Small(s, 1);
          }
        }
        let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
        match a.checked_mul(d).and_then(|x| c.checked_mul(b).and_then(|y| x.checked_add(y))) {
          Some(n) => Rational::from_i128(n, b * d),
          None => Rational::from_big(self.to_big() + o.to_big()),
        }
      },
      _ => Rational::from_big(self.to_big() + o.to_big()),
    }
  }

  pub fn neg(&self) -> Self {
    match self {
      Rational::Small(n, d) => match n.checked_neg() {
        Some(m) => Rational::Small(m, *d),
        None => Rational::from_big(-self.to_big()),
      },
      Rational::Big(r) => Rational::from_big(-r.clone()),
    }
  }

  pub fn sub(&self, o: &Self) -> Self { self.add(&o.neg()) }

  pub fn mul(&self, o: &Self) -> Self {
    match (self, o) {
      (Rational::Small(a, b), Rational::Small(c, d)) => {
        if *b == 1 && *d == 1 {
          if let Some(s) = a.checked_mul(*c) {
            return Rational::Small(s, 1);
          }
        }
        Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
      },
      _ => Rational::from_big(self.to_big() * o.to_big()),
    }
  }

  pub fn inv(&self) -> Option<Self> {
    if self.is_zero() {
      return None;
    }
    Some(match self {
      Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
      Rational::Big(r) => Rational::from_big(r.recip()),
    })
  }

  pub fn parse(s: &str) -> Option<Self> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
      Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
      None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
      return None;
    }
    Some(Rational::from_big(BigRational::new(n, d)))
  }
}

impl fmt::Display for Rational {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Rational::Small(n, 1) => write!(f, "{n}"),
      Rational::Small(n, d) => write!(f, "{n}/{d}"),
      Rational::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
      Rational::Big(r) => {
        let sign = if r.is_negative() { "-" } else { "" };
        write!(f, "{sign}{}/{}", r.numer().abs(), r.denom())
      },
    }
  }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
  type Elem = Rational;

  fn spec(&self) -> FieldSpec { FieldSpec::Rationals }

  fn zero(&self) -> Rational { Rational::Small(0, 1) }

  fn one(&self) -> Rational { Rational::Small(1, 1) }

  fn from_i64(&self, v: i64) -> Rational { Rational::from_int(v) }

  fn is_zero(&self, a: &Rational) -> bool { a.is_zero() }

  fn add(&self, a: &Rational, b: &Rational) -> Rational { a.add(b) }

  fn sub(&self, a: &Rational, b: &Rational) -> Rational { a.sub(b) }

  fn mul(&self, a: &Rational, b: &Rational) -> Rational { a.mul(b) }

  fn neg(&self, a: &Rational) -> Rational { a.neg() }

  fn inv(&self, a: &Rational) -> Option<Rational> { a.inv() }

  fn format(&self, a: &Rational) -> String { a.to_string() }

  fn parse(&self, s: &str) -> Result<Rational> {
    Rational::parse(s).ok_or_else(|| Error::Input(format!("not a rational number: `{s}`")))
  }
}

/// The prime field Z/pZ with p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
  p: u64,
}

impl PrimeField {
  pub fn new(p: u64) -> Result<Self> {
    if p >= 1 << 31 {
      return Err(Error::Input(format!("prime {p} must be below 2^31")));
    }
    if !is_prime(p) {
      return Err(Error::Input(format!("{p} is not prime")));
    }
    Ok(PrimeField { p })
  }

  pub fn modulus(&self) -> u64 { self.p }

  fn pow(&self, mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= self.p;
    while e > 0 {
      if e & 1 == 1 {
        r = r * b % self.p;
      }
      b = b * b % self.p;
      e >>= 1;
    }
    r
  }
}

pub fn is_prime(n: u64) -> bool {
  if n < 2 {
    return false;
  }
  let mut d = 2;
  while d * d <= n {
    if n % d == 0 {
      return false;
    }
    d += 1;
  }
  true
}

impl Field for PrimeField {
  type Elem = u64;

  fn spec(&self) -> FieldSpec { FieldSpec::Prime(self.p) }

  fn zero(&self) -> u64 { 0 }

  fn one(&self) -> u64 { 1 }

  fn from_i64(&self, v: i64) -> u64 { v.rem_euclid(self.p as i64) as u64 }

  fn is_zero(&self, a: &u64) -> bool { *a == 0 }

  fn add(&self, a: &u64, b: &u64) -> u64 { (a + b) % self.p }

  fn sub(&self, a: &u64, b: &u64) -> u64 { (a + self.p - b) % self.p }

  fn mul(&self, a: &u64, b: &u64) -> u64 { a * b % self.p }

  fn neg(&self, a: &u64) -> u64 { (self.p - a) % self.p }

  fn inv(&self, a: &u64) -> Option<u64> {
    if *a == 0 {
      None
    } else {
      Some(self.pow(*a, self.p - 2))
    }
  }

  fn format(&self, a: &u64) -> String { a.to_string() }

  fn parse(&self, s: &str) -> Result<u64> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
      let n = self.parse(n)?;
      let d = self.parse(d)?;
      let di = self.inv(&d).ok_or_else(|| Error::Input(format!("zero denominator in `{s}`")))?;
      return Ok(self.mul(&n, &di));
    }
    let v: BigInt = s.parse().map_err(|_| Error::Input(format!("not an integer: `{s}`")))?;
    let r = v.mod_floor(&BigInt::from(self.p));
    Ok(r.to_u64().unwrap_or(0))
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn rational_arithmetic_stays_canonical() {
    let q = Rationals;
    let a = q.parse("2/4").unwrap();
    assert_eq!(a, Rational::Small(1, 2));
    let b = q.add(&a, &q.parse("-1/2").unwrap());
    assert!(q.is_zero(&b));
    assert_eq!(q.inv(&q.from_i64(-3)).unwrap(), q.parse("-1/3").unwrap());
  }

  #[test]
  fn rational_overflow_promotes_and_demotes() {
    let q = Rationals;
    let big = q.from_i64(i64::MAX);
    let sq = q.mul(&big, &big);
    assert!(matches!(sq, Rational::Big(_)));
    let back = q.mul(&sq, &q.inv(&big).unwrap());
    assert_eq!(back, big);
    assert_eq!(q.format(&q.neg(&q.parse("-7/3").unwrap())), "7/3");
  }

  #[test]
  fn prime_field_inverse() {
    let f = PrimeField::new(1009).unwrap();
    for a in 1..50 {
      assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
    }
    assert_eq!(f.from_i64(-1), 1008);
    assert!(PrimeField::new(1000).is_err());
    assert_eq!(f.parse("1/2").unwrap(), 505);
  }

  #[test]
  fn field_spec_parsing() {
    assert_eq!(FieldSpec::parse("rat").unwrap(), FieldSpec::Rationals);
    assert_eq!(FieldSpec::parse("fp:7").unwrap(), FieldSpec::Prime(7));
    assert!(FieldSpec::parse("fp:8").is_err());
    assert!(FieldSpec::parse("real").is_err());
  }
}
