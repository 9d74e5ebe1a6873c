//! Scalar fields.
//!
//! Everything in the crate is written against [`Field`]. Three
//! implementations ship: arbitrary-precision rationals ([`Rational`]),
//! prime fields with a runtime modulus ([`Fp`]) and `f64` for the numerical
//! parts (eigensolves, soliton search). A field value is created from a
//! [`Field::Tag`], which is `()` for ℚ and `f64` and the modulus for F_p.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational numbers, always in lowest terms.
pub type Rational = BigRational;

/// Largest supported prime modulus, 2^61 - 1.
pub const MAX_PRIME: u64 = (1 << 61) - 1;

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Runtime description of the field (modulus for F_p, `()` otherwise).
    type Tag: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn zero(tag: &Self::Tag) -> Self;
    fn one(tag: &Self::Tag) -> Self;
    fn from_i64(tag: &Self::Tag, v: i64) -> Self;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(tag: &Self::Tag, q: &Rational) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }

    fn characteristic(tag: &Self::Tag) -> u64;
    fn field_name(tag: &Self::Tag) -> String;
    fn to_f64(&self) -> f64;

    /// Pivot preference during elimination. Exact fields return 1 for any
    /// nonzero value so that the first nonzero entry wins.
    fn pivot_weight(&self) -> f64;

    /// Exact textual form (`"p/q"` for rationals, residue for F_p).
    fn render(&self) -> String;
}

/// Fields with a total order compatible with the arithmetic.
pub trait OrderedField: Field + PartialOrd {
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool {
        !self.is_zero() && !self.is_positive()
    }
    fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl Field for Rational {
    type Tag = ();
    const EXACT: bool = true;

    fn zero(_: &()) -> Self {
        <Rational as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <Rational as One>::one()
    }
    fn from_i64(_: &(), v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(_: &(), q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *self += a * b;
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn field_name(_: &()) -> String {
        "q".to_string()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn pivot_weight(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn render(&self) -> String {
        render_rational(self)
    }
}

impl OrderedField for Rational {
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

impl Field for f64 {
    type Tag = ();
    const EXACT: bool = false;

    fn zero(_: &()) -> Self {
        0.0
    }
    fn one(_: &()) -> Self {
        1.0
    }
    fn from_i64(_: &(), v: i64) -> Self {
        v as f64
    }
    fn from_rational(_: &(), q: &Rational) -> Option<Self> {
        ToPrimitive::to_f64(q)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn field_name(_: &()) -> String {
        "f64".to_string()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pivot_weight(&self) -> f64 {
        f64::abs(*self)
    }
    fn render(&self) -> String {
        format_f64(*self)
    }
}

impl OrderedField for f64 {
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
}

/// A validated prime modulus `p <= 2^61 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^61-1")));
        }
        if !primal_check::miller_rabin(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Residue class modulo a prime. The modulus travels with the value so that
/// binary operations need no context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i128, modulus: PrimeModulus) -> Self {
        let p = modulus.0 as i128;
        Fp {
            value: value.rem_euclid(p) as u64,
            modulus: modulus.0,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn with(self, value: u64) -> Self {
        Fp {
            value,
            modulus: self.modulus,
        }
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.with(1 % self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    type Tag = PrimeModulus;
    const EXACT: bool = true;

    fn zero(tag: &PrimeModulus) -> Self {
        Fp::new(0, *tag)
    }
    fn one(tag: &PrimeModulus) -> Self {
        Fp::new(1, *tag)
    }
    fn from_i64(tag: &PrimeModulus, v: i64) -> Self {
        Fp::new(v as i128, *tag)
    }
    fn from_rational(tag: &PrimeModulus, q: &Rational) -> Option<Self> {
        let p = BigInt::from(tag.0);
        let reduce = |x: &BigInt| -> Fp {
            let r = x.mod_floor(&p);
            Fp::new(r.to_i128().expect("residue fits"), *tag)
        };
        let num = reduce(q.numer());
        let den = reduce(q.denom());
        num.div(&den)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        self.with(if s >= self.modulus { s - self.modulus } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        self.with(v)
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        self.with(v as u64)
    }
    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            self.with(self.modulus - self.value)
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
    fn characteristic(tag: &PrimeModulus) -> u64 {
        tag.0
    }
    fn field_name(tag: &PrimeModulus) -> String {
        if tag.0 == 2 {
            "f2".to_string()
        } else {
            format!("fp:{}", tag.0)
        }
    }
    fn to_f64(&self) -> f64 {
        self.value as f64
    }
    fn pivot_weight(&self) -> f64 {
        if self.value == 0 {
            0.0
        } else {
            1.0
        }
    }
    fn render(&self) -> String {
        self.value.to_string()
    }
}

/// Field selection made at runtime (CLI flags, reports).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(PrimeModulus),
}

impl FieldKind {
    pub fn name(&self) -> String {
        match self {
            FieldKind::Rationals => "q".to_string(),
            FieldKind::Prime(p) => Fp::field_name(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => p.get(),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    /// Accepts `q`, `f2` and `fp:P`.
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "q" | "Q" => Ok(FieldKind::Rationals),
            "f2" | "F2" => Ok(FieldKind::Prime(PrimeModulus::new(2)?)),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .or_else(|| other.strip_prefix("Fp:"))
                    .ok_or_else(|| Error::InvalidField(format!("unknown field '{other}'")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad modulus '{p}'")))?;
                Ok(FieldKind::Prime(PrimeModulus::new(p)?))
            }
        }
    }
}

/// Canonical string of a rational: `"p/q"`, or `"p"` for integers.
/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"` or `"1e-3"`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let bad = || Error::InvalidNumber(t.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let all = all / BigInt::from(10);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = Rational::from_integer(all);
    if scale >= 0 {
        q *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -q } else { q })
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
pub fn approximate_rational(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut y = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e18 {
            break;
        }
        let a = a as u128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as u128 {
            // semiconvergent with the largest admissible denominator
            let k = (max_den as u128 - q0) / q1;
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            let cand = (ps as f64 / qs as f64 - x.abs()).abs();
            let conv = (p1 as f64 / q1 as f64 - x.abs()).abs();
            if k > 0 && cand < conv {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = y - a as f64;
        if frac < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let q = Rational::new(BigInt::from(p1), BigInt::from(q1));
    Some(if negative { -q } else { q })
}

/// Float formatting used in reports: 17 significant digits, scientific notation.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        // collapse -0.0
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_rational_literals() {
        assert_eq!(q("3/6"), Rational::new(1.into(), 2.into()));
        assert_eq!(q("-4"), Rational::from_integer((-4).into()));
        assert_eq!(q("0.125"), Rational::new(1.into(), 8.into()));
        assert_eq!(q("-1.5e2"), Rational::from_integer((-150).into()));
        assert_eq!(q("25e-2"), Rational::new(1.into(), 4.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rational_rendering_is_lowest_terms() {
        assert_eq!(render_rational(&q("6/-4")), "-3/2");
        assert_eq!(render_rational(&q("10/5")), "2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let p = PrimeModulus::new(7).unwrap();
        let a = Fp::from_i64(&p, 3);
        let b = Fp::from_i64(&p, -2);
        assert_eq!(b.value(), 5);
        assert_eq!(a.mul(&b).value(), 1);
        assert_eq!(a.inv().unwrap().value(), 5);
        assert!(Fp::zero(&p).inv().is_none());
        let half = Fp::from_rational(&p, &q("1/2")).unwrap();
        assert_eq!(half.mul(&Fp::from_i64(&p, 2)).value(), 1);
        assert!(Fp::from_rational(&p, &q("1/7")).is_none());
    }

    #[test]
    fn large_prime_has_no_overflow() {
        let p = PrimeModulus::new(MAX_PRIME).unwrap();
        let a = Fp::from_i64(&p, -1);
        assert_eq!(a.mul(&a).value(), 1);
        assert_eq!(a.inv().unwrap(), a);
    }

    #[test]
    fn rejects_composite_and_oversized_moduli() {
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new((1 << 62) + 1).is_err());
        assert!(PrimeModulus::new(2).is_ok());
    }

    #[test]
    fn field_kind_parsing() {
        assert_eq!("q".parse::<FieldKind>().unwrap(), FieldKind::Rationals);
        assert_eq!("f2".parse::<FieldKind>().unwrap().characteristic(), 2);
        assert_eq!("fp:101".parse::<FieldKind>().unwrap().name(), "fp:101");
        assert!("fp:100".parse::<FieldKind>().is_err());
        assert!("r".parse::<FieldKind>().is_err());
    }

    #[test]
    fn continued_fraction_approximation() {
        assert_eq!(approximate_rational(6.000000001, 1000).unwrap(), q("6"));
        assert_eq!(approximate_rational(-0.3333333333, 1000).unwrap(), q("-1/3"));
        assert_eq!(approximate_rational(std::f64::consts::PI, 1000).unwrap(), q("355/113"));
        assert_eq!(approximate_rational(2.5, 1).unwrap(), q("2"));
    }

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(format_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(format_f64(-0.0), "0.0000000000000000e0");
    }
}
