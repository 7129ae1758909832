//! Validated direct summation of non-terminating hypergeometric series at
//! unit argument.
//!
//! Terms are accumulated in fixed point at the requested precision plus 64
//! guard bits. Every term update multiplies by the exact rational term ratio
//! with one rounding, and the accumulated rounding is tracked in ulps so the
//! final value carries a proven error bound. The tail is bounded
//! geometrically from the current term ratio once the index is past all
//! parameter magnitudes; summation is restricted to series excess >= 3, where
//! terms decay fast enough for that to be meaningful, and the evaluator
//! refuses to return rather than report an unproven digit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{div_round_nearest, BigFloat};
use crate::error::{Error, Result};
use crate::eval::{eval_terminating, SeriesSpec};
use crate::rational::Rational;

/// Guard bits added on top of the requested precision for accumulation.
const GUARD_BITS: u32 = 64;

/// Hard cap on summed terms before giving up.
const MAX_TERMS: u64 = 2_000_000;

/// Default working precision for numeric verification.
pub const DEFAULT_PRECISION_BITS: u32 = 192;

/// Default per-side absolute error target, `1e-30`.
pub fn default_target_abs_err() -> Rational {
    Rational::from_int(10).pow(-30)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericSettings {
    pub precision_bits: u32,
    pub target_abs_err: Rational,
}

impl Default for NumericSettings {
    fn default() -> Self {
        NumericSettings {
            precision_bits: DEFAULT_PRECISION_BITS,
            target_abs_err: default_target_abs_err(),
        }
    }
}

fn ceil_div(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    Integer::div_ceil(num, den)
}

/// Sums `spec` at unit argument to within `settings.target_abs_err`.
///
/// Terminating specs are always routed to the exact evaluator. Returns the
/// value rounded to `settings.precision_bits`.
pub fn eval_unit_numeric(spec: &SeriesSpec, settings: &NumericSettings) -> Result<BigFloat> {
    eval_unit_numeric_with_err(spec, settings).map(|(v, _)| v)
}

/// As [`eval_unit_numeric`], additionally returning the proven bound on
/// `|returned - true sum|`.
pub fn eval_unit_numeric_with_err(
    spec: &SeriesSpec,
    settings: &NumericSettings,
) -> Result<(BigFloat, Rational)> {
    if spec.is_terminating() {
        let exact = eval_terminating(spec)?;
        let value = BigFloat::from_rational(&exact, settings.precision_bits);
        let err = (value.to_rational() - exact).abs();
        return Ok((value, err));
    }
    if !spec.argument().is_one() {
        return Err(Error::InvalidSpec(
            "numeric summation is defined at unit argument only".into(),
        ));
    }
    let excess = spec.excess();
    if excess < Rational::from_int(3) {
        return Err(Error::ConvergenceTooSlow(format!(
            "series excess {excess} is below the direct-summation threshold 3"
        )));
    }
    for b in spec.bottom() {
        if b.is_integer() && (b.is_zero() || b.is_negative()) {
            let n = (-b).as_i64().unwrap_or(i64::MAX - 1);
            return Err(Error::Pole {
                what: format!("bottom parameter {b}"),
                index: n + 1,
            });
        }
    }

    let frac_bits = settings.precision_bits + GUARD_BITS;
    let ulp = Rational::from_int(2).pow(-(frac_bits as i32));
    let tail_target = &settings.target_abs_err / &Rational::from_int(4);
    let round_target = &settings.target_abs_err / &Rational::from_int(4);

    // terms must run past every parameter magnitude before the tail bound
    // is trusted
    let min_terms = 10 * (1 + spec.max_param_magnitude());

    let mut term_m: BigInt = BigInt::one() << frac_bits;
    let mut sum_m = term_m.clone();
    let mut term_err = BigInt::zero();
    let mut sum_err = BigInt::zero();

    // Parameter denominators are constant, so the term ratio is a plain
    // integer fraction; no gcd work in the hot loop.
    let const_num: BigInt = spec.bottom().iter().map(|b| b.denom()).product();
    let const_den: BigInt = spec.top().iter().map(|t| t.denom()).product();
    let ratio_parts = |k: u64| -> (BigInt, BigInt) {
        let kb = BigInt::from(k);
        let mut num = const_num.clone();
        for t in spec.top() {
            num *= t.numer() + &kb * t.denom();
        }
        let mut den = &const_den * BigInt::from(k + 1);
        for b in spec.bottom() {
            den *= b.numer() + &kb * b.denom();
        }
        if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        }
    };

    let mut tail_bound: Option<Rational> = None;
    let mut k: u64 = 0;
    while k < MAX_TERMS {
        let (num, den) = ratio_parts(k);
        term_m = div_round_nearest(&(&term_m * &num), &den);
        term_err = ceil_div(&(&term_err * num.abs()), &den) + 1;
        sum_m += &term_m;
        sum_err += &term_err;
        k += 1;

        if k >= min_terms {
            let (num, den) = ratio_parts(k);
            let rho = Rational::from_big(num.abs(), den);
            if rho < Rational::one() {
                let term_abs = Rational::from_bigint(term_m.abs() + &term_err) * &ulp;
                let bound = &(&term_abs * &rho) / &(Rational::one() - &rho);
                if bound <= tail_target {
                    tail_bound = Some(bound);
                    break;
                }
            }
        }
    }
    let tail_bound = tail_bound.ok_or_else(|| {
        Error::ConvergenceTooSlow(format!(
            "tail bound not met within {MAX_TERMS} terms (excess {excess})"
        ))
    })?;

    let round_err = Rational::from_bigint(sum_err) * &ulp;
    if round_err > round_target {
        return Err(Error::PrecisionInsufficient(format!(
            "accumulated rounding {} exceeds budget {} at {} bits",
            round_err, round_target, frac_bits
        )));
    }

    let guard_value = BigFloat::from_mantissa(sum_m, frac_bits);
    let value = guard_value.round_to(settings.precision_bits);
    let final_round = (value.to_rational() - guard_value.to_rational()).abs();
    // Term ratios increase toward 1, so the geometric tail bound undershoots
    // the true tail by up to (excess+1)/excess <= 4/3 at excess >= 3; with
    // the minimum-terms rule the finite-index correction stays well inside a
    // factor 2.
    let total_err = tail_bound * Rational::from_int(2) + round_err + final_round;
    Ok((value, total_err))
}

/// The gamma quotient `Gamma(1-c) Gamma(1+b) / Gamma(1+b-c)` for non-integer
/// rational `c`, evaluated as the unit-argument Gauss sum
/// `2F1(c, b; 1+b; 1)` (padded to a 3F2 with a cancelling parameter pair),
/// which equals it whenever `1 - c > 0`.
///
/// The direct-summation threshold asks for `1 - c >= 3`, i.e. `c <= -2`.
pub fn gamma_quotient_numeric(
    b: &Rational,
    c: &Rational,
    settings: &NumericSettings,
) -> Result<(BigFloat, Rational)> {
    if c.is_integer() {
        return Err(Error::InvalidSpec(
            "gamma quotient: integer c belongs to the exact branch".into(),
        ));
    }
    let one = Rational::one();
    let spec = SeriesSpec::f32(
        [c.clone(), b.clone(), one.clone()],
        [&one + b, one],
        Rational::one(),
    );
    eval_unit_numeric_with_err(&spec, settings)
}
