//! Truncated formal power series with exact rational coefficients.
//!
//! The truncation order is explicit everywhere: a series of order `N` holds
//! exactly the coefficients of `x^0 .. x^{N-1}` and arithmetic never reads or
//! writes beyond them. These are the vehicles for the product identities,
//! which are checked coefficient-by-coefficient.

use crate::error::{Error, Result};
use crate::eval::SeriesSpec;
use crate::poly::RatPoly;
use crate::rational::{factorial, pochhammer_ok, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSeries {
    coeffs: Vec<Rational>,
}

impl FormalSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "order must be at least 1");
        FormalSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        FormalSeries {
            coeffs: vec![Rational::zero(); order.max(1)],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = FormalSeries::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Embeds a polynomial, truncating to `order` coefficients.
    pub fn from_poly(p: &RatPoly, order: usize) -> Self {
        let mut s = FormalSeries::zero(order);
        for i in 0..order.min(p.coeffs().len()) {
            s.coeffs[i] = p.coeff(i);
        }
        s
    }

    /// Expansion of a hypergeometric series in the formal variable.
    ///
    /// The spec's argument must be `+1` or `-1`; coefficient `j` is
    /// `prod (top)_j / (prod (bottom)_j j!) * sign^j`. A bottom parameter
    /// whose factor vanishes at a live index is reported as a pole with that
    /// index; past a top-parameter truncation all coefficients are zero and
    /// bottom factors are no longer consulted.
    pub fn hypergeometric(spec: &SeriesSpec, order: usize) -> Result<Self> {
        let arg = spec.argument();
        if !(arg.is_one() || (-arg).is_one()) {
            return Err(Error::InvalidSpec(format!(
                "formal expansion requires argument sign +1 or -1, got {arg}"
            )));
        }
        let mut s = FormalSeries::zero(order);
        let mut c = Rational::one();
        s.coeffs[0] = c.clone();
        for j in 0..order.saturating_sub(1) {
            let jj = Rational::from_int(j as i64);
            let mut num = arg.clone();
            for t in spec.top() {
                num *= &(t + &jj);
            }
            if num.is_zero() {
                break;
            }
            let mut den = &jj + &Rational::one();
            for b in spec.bottom() {
                let factor = b + &jj;
                if factor.is_zero() {
                    return Err(Error::Pole {
                        what: format!("bottom parameter {b}"),
                        index: (j + 1) as i64,
                    });
                }
                den *= &factor;
            }
            c = c * num / den;
            s.coeffs[j + 1] = c.clone();
        }
        Ok(s)
    }

    /// The exponential series: coefficient `j` is `1/j!`.
    pub fn exponential(order: usize) -> Self {
        let mut s = FormalSeries::zero(order);
        let mut c = Rational::one();
        s.coeffs[0] = c.clone();
        for j in 1..order {
            c = c / Rational::from_int(j as i64);
            s.coeffs[j] = c.clone();
        }
        s
    }

    /// `(1-x)^e` for rational `e`: coefficient `j` is `(-e)_j / j!`.
    pub fn binomial(exponent: &Rational, order: usize) -> Self {
        let mut s = FormalSeries::zero(order);
        for j in 0..order {
            s.coeffs[j] = pochhammer_ok(&-exponent, j as i64) / factorial(j as u64);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Cauchy product at the common order.
    pub fn mul(&self, rhs: &FormalSeries) -> Result<FormalSeries> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        let n = self.order();
        let mut out = FormalSeries::zero(n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &FormalSeries) -> Result<FormalSeries> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &FormalSeries) -> Result<FormalSeries> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &FormalSeries,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<FormalSeries> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(FormalSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn neg(&self) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplication by `scale * x^power`, order preserved: coefficient `j`
    /// becomes `scale * c_{j-power}` for `j >= power` and zero below.
    pub fn shift_scale(&self, power: usize, scale: &Rational) -> FormalSeries {
        let n = self.order();
        let mut out = FormalSeries::zero(n);
        for j in power..n {
            out.coeffs[j] = &self.coeffs[j - power] * scale;
        }
        out
    }

    /// Index and values of the first differing coefficient, if any.
    pub fn first_difference(&self, rhs: &FormalSeries) -> Option<(usize, Rational, Rational)> {
        debug_assert_eq!(self.order(), rhs.order());
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, a.clone(), b.clone()))
    }
}
