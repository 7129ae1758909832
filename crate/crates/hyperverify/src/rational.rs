//! Arbitrary-precision rational scalars and signed Pochhammer symbols.
//!
//! `Rational` is the scalar for every exact computation in this crate. Values
//! are kept in lowest terms with a positive denominator, so equality is
//! structural. The text form is `p/q` (or just `p` when the denominator is 1)
//! with the sign on the numerator.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always normalized.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `num/den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as a machine integer, if it is one and fits.
    pub fn as_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; panics on zero (callers guard poles first).
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Integer power with negative exponents allowed (base must be nonzero
    /// for those).
    pub fn pow(&self, exp: i32) -> Self {
        Rational(self.0.pow(exp))
    }

    /// Smallest integer `>= |self|`, as u64 (saturating).
    pub fn abs_ceil_u64(&self) -> u64 {
        let a = self.0.abs().ceil();
        a.numer().to_u64().unwrap_or(u64::MAX)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a, 'b> Div<&'b Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |m: &str| Error::Parse(format!("invalid rational `{s}`: {m}"));
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_str
            .parse()
            .map_err(|_| bad("numerator is not an integer"))?;
        let den: BigInt = match den_str {
            Some(d) => d.parse().map_err(|_| bad("denominator is not an integer"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        if den.is_negative() {
            return Err(bad("sign belongs on the numerator"));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Parse a decimal or scientific literal (`0.5`, `1e-30`, `2.5e-3`) into an
/// exact rational. Plain `p/q` is accepted too.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('/') {
        return s.parse();
    }
    let bad = |m: &str| Error::Parse(format!("invalid decimal `{s}`: {m}"));
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e: i64 = e.parse().map_err(|_| bad("bad exponent"))?;
            (m, e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("empty mantissa"));
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let num: BigInt = digits.parse().map_err(|_| bad("bad digits"))?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Rational::from_bigint(num * ten.pow(shift as u32))
    } else {
        Rational::from_big(num, ten.pow((-shift) as u32))
    };
    Ok(value)
}

/// `(-1)^k` as a rational.
pub fn neg_one_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Exact factorial.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_bigint(acc)
}

/// `1/r!`, extended by `1/r! = 0` for negative integer `r` (the
/// reciprocal-gamma convention that makes vanishing branches automatic).
pub fn reciprocal_factorial(r: i64) -> Rational {
    if r < 0 {
        Rational::zero()
    } else {
        factorial(r as u64).recip()
    }
}

/// Signed Pochhammer symbol `(a)_k`.
///
/// For `k >= 0` this is the rising product `a(a+1)...(a+k-1)`; for `k < 0` it
/// is `(-1)^k / (1-a)_{-k}`, equivalently `1 / ((a-1)(a-2)...(a+k))`. The
/// negative branch reports a pole instead of dividing by zero, which happens
/// exactly when `a` is an integer with `1 <= a <= -k`.
pub fn pochhammer(a: &Rational, k: i64) -> Result<Rational> {
    let mut acc = Rational::one();
    if k >= 0 {
        let mut f = a.clone();
        for _ in 0..k {
            acc *= &f;
            f += &Rational::one();
        }
        Ok(acc)
    } else {
        let mut f = a.clone();
        for j in 1..=(-k) {
            f -= &Rational::one();
            if f.is_zero() {
                return Err(Error::Pole {
                    what: format!("({a})_{k}"),
                    index: j,
                });
            }
            acc *= &f;
        }
        Ok(acc.recip())
    }
}

/// `(a)_k`, panicking on a pole. For call sites that have already validated
/// the instance.
pub fn pochhammer_ok(a: &Rational, k: i64) -> Rational {
    pochhammer(a, k).expect("pochhammer pole on a validated instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(num, den)
    }

    #[test]
    fn pochhammer_empty_product() {
        for a in [r(0, 1), r(3, 1), r(-5, 7), r(1, 2)] {
            assert_eq!(pochhammer(&a, 0).unwrap(), Rational::one());
        }
    }

    #[test]
    fn pochhammer_rising_product() {
        // 3*4*5*6
        assert_eq!(pochhammer(&r(3, 1), 4).unwrap(), r(360, 1));
    }

    #[test]
    fn pochhammer_negative_index() {
        // (5)_{-2} = 1/((5-1)(5-2)) = 1/12, the gamma-quotient value.
        assert_eq!(pochhammer(&r(5, 1), -2).unwrap(), r(1, 12));
        // (1/2)_{-1} = -1/(1/2)_1 via the negative-k rule.
        assert_eq!(pochhammer(&r(1, 2), -1).unwrap(), r(-2, 1));
    }

    #[test]
    fn pochhammer_negative_index_pole() {
        // (2)_{-3} needs (2-1)(2-2)(2-3): zero factor at j = 2.
        let err = pochhammer(&r(2, 1), -3).unwrap_err();
        assert!(matches!(err, Error::Pole { index: 2, .. }));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Rational::one());
        assert_eq!(factorial(5), r(120, 1));
        assert_eq!(factorial(10), r(3628800, 1));
    }

    #[test]
    fn reciprocal_factorial_negative_is_zero() {
        assert_eq!(reciprocal_factorial(-1), Rational::zero());
        assert_eq!(reciprocal_factorial(-4), Rational::zero());
        assert_eq!(reciprocal_factorial(3), r(1, 6));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "7", "-7", "1/2", "-3/4", "22/7"] {
            let v: Rational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("4/8".parse::<Rational>().unwrap(), r(1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_decimal("1e-3").unwrap(), r(1, 1000));
        assert_eq!(parse_decimal("2.5e-3").unwrap(), r(1, 400));
        assert_eq!(parse_decimal("0.125").unwrap(), r(1, 8));
        assert_eq!(parse_decimal("12e2").unwrap(), r(1200, 1));
        assert_eq!(
            parse_decimal("1e-30").unwrap(),
            Rational::from_int(10).pow(-30)
        );
        assert!(parse_decimal("e-3").is_err());
    }

    fn nonint_rational() -> impl Strategy<Value = Rational> {
        // k/q with q prime and q not dividing k: never an integer.
        (prop_oneof![Just(7i64), Just(11), Just(13)], -40i64..40)
            .prop_filter("nonzero numerator not divisible by q", |(q, k)| {
                *k != 0 && k % q != 0
            })
            .prop_map(|(q, k)| Rational::new(k, q))
    }

    proptest! {
        // (a)_{j+k} = (a)_j (a+j)_k whenever no intermediate pole occurs;
        // non-integer a avoids all poles.
        #[test]
        fn pochhammer_addition_law(a in nonint_rational(), j in -8i64..8, k in -8i64..8) {
            let lhs = pochhammer(&a, j + k).unwrap();
            let rhs = pochhammer(&a, j).unwrap()
                * pochhammer(&(&a + &Rational::from_int(j)), k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        // (a)_k (a+k)_{-k} = 1 when both sides are defined.
        #[test]
        fn pochhammer_inverse_shift(a in nonint_rational(), k in -10i64..10) {
            let lhs = pochhammer(&a, k).unwrap()
                * pochhammer(&(&a + &Rational::from_int(k)), -k).unwrap();
            prop_assert_eq!(lhs, Rational::one());
        }

        // (gamma - m2)_n / (1 - gamma)_{m2} = (gamma)_{n - m2} (-1)^{m2}
        #[test]
        fn shift_identity_a(gamma in nonint_rational(), m2 in -6i64..6, n in 0i64..8) {
            let lhs = pochhammer(&(&gamma - &Rational::from_int(m2)), n).unwrap()
                / pochhammer(&(Rational::one() - &gamma), m2).unwrap();
            let rhs = pochhammer(&gamma, n - m2).unwrap() * neg_one_pow(m2);
            prop_assert_eq!(lhs, rhs);
        }

        // (1-alpha)_{n+m1-m2} / (alpha-m1)_n
        //   = (-1)^{m1} (1-alpha+m1)_{n-m2} / (alpha)_{n-m1}
        #[test]
        fn shift_identity_b(
            alpha in nonint_rational(),
            m1 in -6i64..6,
            m2 in -6i64..6,
            n in 0i64..8,
        ) {
            let one = Rational::one();
            let lhs = pochhammer(&(&one - &alpha), n + m1 - m2).unwrap()
                / pochhammer(&(&alpha - &Rational::from_int(m1)), n).unwrap();
            let rhs = neg_one_pow(m1)
                * pochhammer(&(&one - &alpha + &Rational::from_int(m1)), n - m2).unwrap()
                / pochhammer(&alpha, n - m1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
