//! Fixed-point binary values with explicit precision.
//!
//! A `BigFloat` is `mantissa * 2^(-precision_bits)` with an arbitrary-size
//! mantissa, so magnitude is unbounded while the absolute resolution is
//! explicit on every value. Mixed-precision arithmetic rounds to the smaller
//! precision. Conversion to a rational is exact, which is how comparisons
//! against exact targets are done.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigFloat {
    mantissa: BigInt,
    precision_bits: u32,
}

/// `round(num / den)` to nearest, ties away from zero. `den` must be positive.
pub(crate) fn div_round_nearest(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    let (q, r) = num_integer::Integer::div_rem(num, den);
    if r.abs() * 2 >= *den {
        if num.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl BigFloat {
    pub fn zero(precision_bits: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            precision_bits,
        }
    }

    pub(crate) fn from_mantissa(mantissa: BigInt, precision_bits: u32) -> Self {
        BigFloat {
            mantissa,
            precision_bits,
        }
    }

    /// Nearest fixed-point value at the requested precision; the rounding
    /// error is at most `2^-(precision_bits+1)`.
    pub fn from_rational(value: &Rational, precision_bits: u32) -> Self {
        let scaled = value.numer() << precision_bits;
        BigFloat {
            mantissa: div_round_nearest(&scaled, value.denom()),
            precision_bits,
        }
    }

    /// Exact rational value of this fixed-point number.
    pub fn to_rational(&self) -> Rational {
        Rational::from_big(self.mantissa.clone(), BigInt::from(1) << self.precision_bits)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Rounds to a coarser precision (no-op when `bits` is not smaller).
    pub fn round_to(&self, bits: u32) -> Self {
        if bits >= self.precision_bits {
            return self.clone();
        }
        let den = BigInt::from(1) << (self.precision_bits - bits);
        BigFloat {
            mantissa: div_round_nearest(&self.mantissa, &den),
            precision_bits: bits,
        }
    }

    fn align(a: &BigFloat, b: &BigFloat) -> (BigFloat, BigFloat, u32) {
        let bits = a.precision_bits.min(b.precision_bits);
        (a.round_to(bits), b.round_to(bits), bits)
    }

    pub fn add(&self, rhs: &BigFloat) -> BigFloat {
        let (a, b, bits) = BigFloat::align(self, rhs);
        BigFloat {
            mantissa: a.mantissa + b.mantissa,
            precision_bits: bits,
        }
    }

    pub fn sub(&self, rhs: &BigFloat) -> BigFloat {
        let (a, b, bits) = BigFloat::align(self, rhs);
        BigFloat {
            mantissa: a.mantissa - b.mantissa,
            precision_bits: bits,
        }
    }

    pub fn mul(&self, rhs: &BigFloat) -> BigFloat {
        let (a, b, bits) = BigFloat::align(self, rhs);
        let product = a.mantissa * b.mantissa;
        BigFloat {
            mantissa: div_round_nearest(&product, &(BigInt::from(1) << bits)),
            precision_bits: bits,
        }
    }

    /// Multiplication by an exact rational, one rounding.
    pub fn mul_rational(&self, s: &Rational) -> BigFloat {
        let num = &self.mantissa * s.numer();
        BigFloat {
            mantissa: div_round_nearest(&num, s.denom()),
            precision_bits: self.precision_bits,
        }
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat {
            mantissa: -&self.mantissa,
            precision_bits: self.precision_bits,
        }
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat {
            mantissa: self.mantissa.abs(),
            precision_bits: self.precision_bits,
        }
    }

    pub fn cmp_value(&self, rhs: &BigFloat) -> Ordering {
        if self.precision_bits == rhs.precision_bits {
            self.mantissa.cmp(&rhs.mantissa)
        } else {
            self.to_rational().cmp(&rhs.to_rational())
        }
    }

    /// Decimal rendering with `digits` significant digits (exact value is a
    /// dyadic rational; the rendering truncates).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.mantissa.is_zero() {
            return "0".into();
        }
        let neg = self.mantissa.is_negative();
        let num = self.mantissa.abs();
        let den: BigInt = BigInt::from(1) << self.precision_bits;
        // decimal exponent e with 10^e <= num/den < 10^(e+1)
        let mut e: i64 = {
            let nb = num.bits() as i64;
            let db = den.bits() as i64;
            ((nb - db) as f64 * 0.30102999566398) as i64
        };
        let ten = BigInt::from(10);
        let pow10 = |k: i64| -> (BigInt, BigInt) {
            // returns multiplier for num (if k <= 0) or den (if k > 0)
            if k >= 0 {
                (BigInt::from(1), ten.pow(k as u32))
            } else {
                (ten.pow((-k) as u32), BigInt::from(1))
            }
        };
        // adjust e so that 10^e <= value < 10^(e+1)
        loop {
            let (mn, md) = pow10(e);
            if &num * &mn < &den * &md {
                e -= 1;
            } else {
                break;
            }
        }
        loop {
            let (mn, md) = pow10(e + 1);
            if &num * &mn >= &den * &md {
                e += 1;
            } else {
                break;
            }
        }
        // digits of value / 10^e, i.e. in [1, 10)
        let shift = digits as i64 - 1 - e;
        let scaled = if shift >= 0 {
            num * ten.pow(shift as u32) / den
        } else {
            num / (den * ten.pow((-shift) as u32))
        };
        let s = scaled.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mantissa = if tail.is_empty() {
            head.to_string()
        } else {
            format!("{head}.{tail}")
        };
        let sign = if neg { "-" } else { "" };
        if e == 0 {
            format!("{sign}{mantissa}")
        } else {
            format!("{sign}{mantissa}e{e}")
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(40))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(num, den)
    }

    #[test]
    fn round_trip_dyadic() {
        let v = r(5, 8);
        let f = BigFloat::from_rational(&v, 16);
        assert_eq!(f.to_rational(), v);
    }

    #[test]
    fn rounding_error_bounded() {
        let v = r(1, 3);
        let f = BigFloat::from_rational(&v, 64);
        let err = (f.to_rational() - v).abs();
        assert!(err <= Rational::from_int(2).pow(-65));
    }

    #[test]
    fn mixed_precision_rounds_to_smaller() {
        let a = BigFloat::from_rational(&r(1, 3), 128);
        let b = BigFloat::from_rational(&r(1, 5), 32);
        let s = a.add(&b);
        assert_eq!(s.precision_bits(), 32);
        let err = (s.to_rational() - r(8, 15)).abs();
        assert!(err <= Rational::from_int(2).pow(-31));
    }

    #[test]
    fn mul_rational_is_one_rounding() {
        let a = BigFloat::from_rational(&r(1, 3), 96);
        let b = a.mul_rational(&r(3, 1));
        let err = (b.to_rational() - Rational::one()).abs();
        assert!(err <= Rational::from_int(2).pow(-95));
    }

    #[test]
    fn decimal_rendering() {
        let f = BigFloat::from_rational(&r(1, 4), 32);
        assert_eq!(f.to_decimal_string(6), "2.5e-1");
        let g = BigFloat::from_rational(&r(1500, 1), 32);
        assert_eq!(g.to_decimal_string(6), "1.5e3");
        let h = BigFloat::from_rational(&r(3, 1), 32);
        assert_eq!(h.to_decimal_string(6), "3");
        assert_eq!(BigFloat::zero(8).to_decimal_string(6), "0");
        let n = BigFloat::from_rational(&r(-1, 2), 32);
        assert_eq!(n.to_decimal_string(4), "-5e-1");
    }

    #[test]
    fn div_round_nearest_ties_away() {
        use num_bigint::BigInt;
        let d = BigInt::from(2);
        assert_eq!(div_round_nearest(&BigInt::from(3), &d), BigInt::from(2));
        assert_eq!(div_round_nearest(&BigInt::from(-3), &d), BigInt::from(-2));
        assert_eq!(div_round_nearest(&BigInt::from(5), &BigInt::from(4)), BigInt::from(1));
    }
}
