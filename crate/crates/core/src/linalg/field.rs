//! Coefficient fields: the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Builds a prime field spec, rejecting non-primes.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    /// Accepts `q` / `Q` for the rationals and `f<p>` / `F<p>` for prime fields.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix('f')
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| LinalgError::BadFieldName(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| LinalgError::BadFieldName(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. Implementors are small context values; elements are
/// plain data so that matrices stay `Vec<Elem>`.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c*b`, the elimination step.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// The prime field `F_p`, elements stored as canonical residues `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(PrimeField { p })
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((n % &m) + &m) % &m;
        u64::try_from(r).expect("residue below modulus")
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_names() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("f2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("F7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!(matches!("f4".parse::<FieldSpec>(), Err(LinalgError::NotPrime(4))));
        assert!("z".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn integers_embed_exactly() {
        let q = Rationals;
        let big = BigInt::parse_bytes(b"-123456789012345678901234567890", 10).unwrap();
        assert_eq!(q.from_int(&big), BigRational::from_integer(big.clone()));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.from_int(&BigInt::from(-3)), 2);
    }
}
