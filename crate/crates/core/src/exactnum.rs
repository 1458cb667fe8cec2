//! Exact scalars: arbitrary-precision rationals, Gaussian rationals, and the
//! rising factorial / binomial helpers built on them.
//!
//! Text format for a rational is `p/q` or `p` with an optional leading `-`.
//! A [`GaussianRational`] serializes as a two-element array `[re, im]` of
//! rational strings; a bare rational string is accepted on input as a real
//! value.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational (positive denominator, reduced).
///
/// `Ratio` normalizes after every arithmetic operation, so structural
/// equality is value equality.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the `p/q` / `p` text format.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer = BigInt::from_str(num).map_err(|_| bad())?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats in the canonical `p/q` (or `p`) text form.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter for `Rational` fields using the text format.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    /// The real value `num/den`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(rat(num, den))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact integer value, if this is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    /// `Some(m)` when the value is the real integer `-m` with `m >= 0`.
    pub fn as_nonpositive_integer(&self) -> Option<u64> {
        let v = self.as_integer()?;
        if v.is_positive() {
            return None;
        }
        (-v).to_u64()
    }

    /// `true` for a real integer `<= 0`.
    pub fn is_nonpositive_integer(&self) -> bool {
        self.as_integer().is_some_and(|v| !v.is_positive())
    }

    /// `true` for a real integer `<= -1`.
    pub fn is_negative_integer(&self) -> bool {
        self.as_integer().is_some_and(|v| v.is_negative())
    }

    /// `true` for a real integer `>= 1`.
    pub fn is_positive_integer(&self) -> bool {
        self.as_integer().is_some_and(|v| v.is_positive())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(v)))
    }
}

impl From<BigInt> for GaussianRational {
    fn from(v: BigInt) -> Self {
        Self::real(Rational::from_integer(v))
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::real(v)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.re), format_rational(&self.im)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair(String, String),
            Real(String),
        }
        let (re, im) = match Repr::deserialize(d)? {
            Repr::Pair(re, im) => (re, im),
            Repr::Real(re) => (re, "0".to_owned()),
        };
        let re = parse_rational(&re).map_err(serde::de::Error::custom)?;
        let im = parse_rational(&im).map_err(serde::de::Error::custom)?;
        Ok(GaussianRational { re, im })
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Panics on a zero divisor; use [`GaussianRational::checked_div`] when the
/// divisor is not known to be nonzero.
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("GaussianRational division by zero")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

macro_rules! forward_assign {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            fn $method(&mut self, rhs: &GaussianRational) {
                *self = &*self $op rhs;
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            fn $method(&mut self, rhs: GaussianRational) {
                *self = &*self $op &rhs;
            }
        }
    };
}

forward_assign!(AddAssign, add_assign, +);
forward_assign!(SubAssign, sub_assign, -);
forward_assign!(MulAssign, mul_assign, *);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a GaussianRational> for GaussianRational {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a GaussianRational> for GaussianRational {
    fn product<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Rising factorial `(γ)_k = γ(γ+1)···(γ+k−1)`, with `(γ)_0 = 1`.
pub fn pochhammer(gamma: &GaussianRational, k: usize) -> GaussianRational {
    let mut acc = GaussianRational::one();
    let mut factor = gamma.clone();
    let one = GaussianRational::one();
    for _ in 0..k {
        if factor.is_zero() {
            return GaussianRational::zero();
        }
        acc *= &factor;
        factor += &one;
    }
    acc
}

/// `Π(numer_i)_n / Π(denom_j)_n`, failing with `DenominatorPole` when a
/// denominator rising factorial vanishes.
pub fn pochhammer_ratio(
    numer: &[GaussianRational],
    denom: &[GaussianRational],
    n: usize,
) -> Result<GaussianRational> {
    let mut bottom = GaussianRational::one();
    for d in denom {
        let p = pochhammer(d, n);
        if p.is_zero() {
            return Err(Error::pole(format!("({d})_{n} = 0")));
        }
        bottom *= p;
    }
    let top: GaussianRational = numer.iter().map(|a| pochhammer(a, n)).product();
    top.checked_div(&bottom)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `n! / (k! (n−k)!)`; `k > n` is an error.
pub fn binomial(n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::invalid(format!("binomial({n}, {k}) with k > n")));
    }
    Ok(Rational::from_integer(binomial_int(n, k)))
}

/// Integer binomial coefficient; zero when `k > n`.
pub(crate) fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(−1)^k` as a scalar.
pub fn sign(k: usize) -> GaussianRational {
    if k.is_multiple_of(2) {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    }
}

/// `n!` as a scalar.
pub fn factorial_gr(n: usize) -> GaussianRational {
    GaussianRational::from(factorial(n))
}

/// Exact `gcd`-reduced check used by tests of the canonical form.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&gr(5, 2), 0), GaussianRational::one());
        assert_eq!(pochhammer(&gr(2, 1), 3), gr(24, 1));
        assert_eq!(pochhammer(&gr(-3, 1), 5), GaussianRational::zero());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 0).unwrap(), rat(1, 1));
        assert_eq!(binomial(5, 2).unwrap(), rat(10, 1));
        assert_eq!(binomial(7, 7).unwrap(), rat(1, 1));
        assert!(matches!(binomial(3, 4), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = GaussianRational::zero();
        assert_eq!(gr(1, 2).checked_div(&z), Err(Error::DivisionByZero));
        assert_eq!(z.inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -GaussianRational::one());
        assert_eq!(i.pow(4), GaussianRational::one());
        assert_eq!(i.pow(3), -GaussianRational::i());
    }

    #[test]
    fn rational_text_format() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(8, 4)), "2");
        for bad in ["", "1/0", "a", "1/-2", "--1", "1.5", "/3", "3/"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn gaussian_json() {
        let z = GaussianRational::new(rat(1, 2), rat(-3, 1));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"["1/2","-3"]"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        let real: GaussianRational = serde_json::from_str(r#""5/3""#).unwrap();
        assert_eq!(real, gr(5, 3));
        assert!(serde_json::from_str::<GaussianRational>(r#"["1","0","2"]"#).is_err());
    }

    #[test]
    fn nonpositive_integer_detection() {
        assert_eq!(gr(0, 1).as_nonpositive_integer(), Some(0));
        assert_eq!(gr(-4, 1).as_nonpositive_integer(), Some(4));
        assert_eq!(gr(3, 1).as_nonpositive_integer(), None);
        assert_eq!(gr(-1, 2).as_nonpositive_integer(), None);
        let c = GaussianRational::new(rat(-2, 1), rat(1, 1));
        assert_eq!(c.as_nonpositive_integer(), None);
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
    }

    fn small_gr() -> impl Strategy<Value = GaussianRational> {
        (small_rat(), small_rat()).prop_map(|(re, im)| GaussianRational::new(re, im))
    }

    proptest! {
        #[test]
        fn pochhammer_splits(g in small_gr(), j in 0usize..8, k in 0usize..8) {
            let lhs = pochhammer(&g, j + k);
            let shifted = &g + &GaussianRational::from(j as i64);
            let rhs = pochhammer(&g, j) * pochhammer(&shifted, k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn signed_binomial_is_pochhammer_of_minus_n(n in 0usize..30, k in 0usize..30) {
            prop_assume!(k <= n);
            let lhs = sign(k) * GaussianRational::from(binomial(n, k).unwrap());
            let rhs = pochhammer(&GaussianRational::from(-(n as i64)), k) / factorial_gr(k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn arithmetic_round_trips(a in small_gr(), b in small_gr()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
            }
            prop_assert!(is_canonical(&(&a * &b).re));
            prop_assert!(is_canonical(&(&a + &b).im));
        }
    }
}
