//! Coefficient fields.
//!
//! Everything in the crate is generic over a [`Field`] context object. The
//! context carries whatever the element type alone cannot: the modulus of a
//! prime field, the comparison tolerance of the float field. Three concrete
//! fields are provided: [`Rationals`] (exact, arbitrary precision),
//! [`PrimeField`] (exact, `GF(p)`) and [`Floats`] (approximate `f64`).
//!
//! [`FieldDescriptor`] and [`FieldValue`] are the runtime-tagged versions
//! used where the field is chosen by a string (`rational`, `gf:<p>`,
//! `float[:<tol>]`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default comparison tolerance of the float field.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest accepted prime modulus. Primality is checked by trial division.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// A commutative field, given as a context object over an element type.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;

    /// Whether equality is exact (rationals, prime fields).
    fn is_exact(&self) -> bool;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Multiplicative inverse; `DivisionByZero` for zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Exact equality, or `|a - b| <= tol` for the float field.
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.zero())
    }

    fn from_integer(&self, n: &BigInt) -> Self::Elem;

    /// `num / den`; `DivisionByZero` when `den` vanishes in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// Decimal literal such as `0.25`. Exact fields refuse these and
    /// return `None`.
    fn from_decimal(&self, text: &str) -> Option<Self::Elem>;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(n))
    }

    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// Text form accepted back by the coefficient grammar.
    fn format(&self, a: &Self::Elem) -> String;

    /// Random element for the randomized law checks.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn value(&self, a: &Self::Elem) -> FieldValue;
}

/// The rationals with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn equal(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_integer(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn from_decimal(&self, _text: &str) -> Option<BigRational> {
        None
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=5);
        BigRational::new(num.into(), den.into())
    }

    fn value(&self, a: &BigRational) -> FieldValue {
        FieldValue::Rational(a.clone())
    }
}

/// The prime field `GF(p)`, elements stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "modulus {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
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

/// Trial division; moduli are bounded by [`MAX_PRIME`].
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if u64::is_multiple_of(*a, self.p) {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2)
        Ok(self.pow(*a, self.p - 2))
    }

    fn equal(&self, a: &u64, b: &u64) -> bool {
        a % self.p == b % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        u64::is_multiple_of(*a, self.p)
    }

    fn from_integer(&self, n: &BigInt) -> u64 {
        self.reduce_big(n)
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let den = self.inv(&self.reduce_big(den))?;
        Ok(self.mul(&self.reduce_big(num), &den))
    }

    fn from_decimal(&self, _text: &str) -> Option<u64> {
        None
    }

    fn is_negative(&self, _a: &u64) -> bool {
        false
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn value(&self, a: &u64) -> FieldValue {
        FieldValue::Prime {
            value: *a,
            p: self.p,
        }
    }
}

/// Approximate reals as `f64`, compared with an absolute tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Floats {
    tol: f64,
}

impl Floats {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidField(format!(
                "float tolerance must be positive and finite, got {tol}"
            )));
        }
        Ok(Floats { tol })
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }
}

impl Default for Floats {
    fn default() -> Self {
        Floats {
            tol: DEFAULT_TOLERANCE,
        }
    }
}

impl Field for Floats {
    type Elem = f64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Float(self.tol)
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn zero(&self) -> f64 {
        0.0
    }

    fn one(&self) -> f64 {
        1.0
    }

    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn neg(&self, a: &f64) -> f64 {
        -a
    }

    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }

    fn inv(&self, a: &f64) -> Result<f64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(1.0 / a)
    }

    fn equal(&self, a: &f64, b: &f64) -> bool {
        (a - b).abs() <= self.tol
    }

    fn from_integer(&self, n: &BigInt) -> f64 {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<f64> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_integer(num) / self.from_integer(den))
    }

    fn from_decimal(&self, text: &str) -> Option<f64> {
        text.parse().ok()
    }

    fn is_negative(&self, a: &f64) -> bool {
        a.is_sign_negative() && *a != 0.0
    }

    fn format(&self, a: &f64) -> String {
        // Display never uses exponent notation and round-trips exactly.
        format!("{a}")
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        rng.gen_range(-4..=4) as f64 * 0.25
    }

    fn value(&self, a: &f64) -> FieldValue {
        FieldValue::Float {
            value: *a,
            tol: self.tol,
        }
    }
}

/// Which field a runtime value or document refers to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
    Float(f64),
}

impl FieldDescriptor {
    /// Tolerance used by equality: zero for the exact kinds.
    pub fn tolerance(&self) -> f64 {
        match self {
            FieldDescriptor::Float(tol) => *tol,
            _ => 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldDescriptor::Float(_))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => f.write_str("rational"),
            FieldDescriptor::Prime(p) => write!(f, "gf:{p}"),
            FieldDescriptor::Float(tol) => write!(f, "float:{tol:e}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidField(format!("unrecognised field {s:?}"));
        if s == "rational" {
            return Ok(FieldDescriptor::Rational);
        }
        if let Some(p) = s.strip_prefix("gf:") {
            let p: u64 = p.parse().map_err(|_| bad())?;
            return Ok(FieldDescriptor::Prime(PrimeField::new(p)?.modulus()));
        }
        if s == "float" {
            return Ok(FieldDescriptor::Float(DEFAULT_TOLERANCE));
        }
        if let Some(tol) = s.strip_prefix("float:") {
            let tol: f64 = tol.parse().map_err(|_| bad())?;
            return Ok(FieldDescriptor::Float(Floats::new(tol)?.tolerance()));
        }
        Err(bad())
    }
}

/// A field element tagged with its field.
#[derive(Clone, Debug)]
pub enum FieldValue {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
    Float { value: f64, tol: f64 },
}

impl FieldValue {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        Ok(FieldValue::Rational(
            Rationals.from_fraction(&num.into(), &den.into())?,
        ))
    }

    pub fn prime(value: i64, p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Ok(FieldValue::Prime {
            value: field.reduce(value),
            p,
        })
    }

    pub fn float(value: f64, tol: f64) -> Result<Self> {
        Floats::new(tol)?;
        Ok(FieldValue::Float { value, tol })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldValue::Rational(_) => FieldDescriptor::Rational,
            FieldValue::Prime { p, .. } => FieldDescriptor::Prime(*p),
            FieldValue::Float { tol, .. } => FieldDescriptor::Float(*tol),
        }
    }

    fn binary(
        &self,
        other: &Self,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        gf: impl Fn(&PrimeField, &u64, &u64) -> u64,
        float: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => {
                Ok(FieldValue::Rational(rat(a, b)))
            }
            (FieldValue::Prime { value: a, p }, FieldValue::Prime { value: b, p: q }) if p == q => {
                Ok(FieldValue::Prime {
                    value: gf(&PrimeField { p: *p }, a, b),
                    p: *p,
                })
            }
            (FieldValue::Float { value: a, tol }, FieldValue::Float { value: b, tol: t2 })
                if tol == t2 =>
            {
                Ok(FieldValue::Float {
                    value: float(*a, *b),
                    tol: *tol,
                })
            }
            _ => Err(self.mixed(other)),
        }
    }

    fn mixed(&self, other: &Self) -> Error {
        Error::MixedField {
            left: self.descriptor().to_string(),
            right: other.descriptor().to_string(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a + b, |f, a, b| f.add(a, b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a - b, |f, a, b| f.sub(a, b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a * b, |f, a, b| f.mul(a, b), |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldValue::Rational(a) => FieldValue::Rational(-a),
            FieldValue::Prime { value, p } => FieldValue::Prime {
                value: PrimeField { p: *p }.neg(value),
                p: *p,
            },
            FieldValue::Float { value, tol } => FieldValue::Float {
                value: -value,
                tol: *tol,
            },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(match self {
            FieldValue::Rational(a) => FieldValue::Rational(Rationals.inv(a)?),
            FieldValue::Prime { value, p } => FieldValue::Prime {
                value: PrimeField { p: *p }.inv(value)?,
                p: *p,
            },
            FieldValue::Float { value, tol } => FieldValue::Float {
                value: Floats { tol: *tol }.inv(value)?,
                tol: *tol,
            },
        })
    }

    /// Field equality: exact for exact kinds, within tolerance for floats.
    pub fn field_eq(&self, other: &Self) -> Result<bool> {
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => Ok(a == b),
            (FieldValue::Prime { value: a, p }, FieldValue::Prime { value: b, p: q }) if p == q => {
                Ok(a == b)
            }
            (FieldValue::Float { value: a, tol }, FieldValue::Float { value: b, tol: t2 })
                if tol == t2 =>
            {
                Ok(Floats { tol: *tol }.equal(a, b))
            }
            _ => Err(self.mixed(other)),
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(a) => write!(f, "{a}"),
            FieldValue::Prime { value, .. } => write!(f, "{value}"),
            FieldValue::Float { value, .. } => write!(f, "{value}"),
        }
    }
}
