//! The `3F2(1)` summation and transformation family.
//!
//! Exact branches reduce every gamma quotient to factorial/Pochhammer
//! quotients before evaluation, so the whole pipeline stays in rational
//! arithmetic. The one non-terminating branch (non-integer `c`) goes through
//! the validated numeric summation. `1/r! = 0` for negative integer `r`
//! throughout, which is what makes the vanishing branches automatic.

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::eval::{eval_terminating, SeriesSpec};
use crate::numeric::{eval_unit_numeric_with_err, gamma_quotient_numeric, NumericSettings};
use crate::rational::{factorial, neg_one_pow, pochhammer, reciprocal_factorial, Rational};

use super::{
    get_integer, get_rational, poch_denominator_ok, rising_vanishes, IdentityInstance, Mode,
    Mutant, SideValue, Validity,
};

fn ri(n: i64) -> Rational {
    Rational::from_int(n)
}

fn one() -> Rational {
    Rational::one()
}

/// Pochhammer factor used as a denominator: pole when zero.
fn poch_nonzero(x: &Rational, k: i64, what: &str) -> Result<Rational> {
    let v = pochhammer(x, k)?;
    if v.is_zero() {
        Err(Error::Pole {
            what: what.to_string(),
            index: k,
        })
    } else {
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// shifted 3F2(1) summation (THM1)
// ---------------------------------------------------------------------------

fn thm1_lhs_spec(a: &Rational, b: &Rational, c: &Rational, l: i64, r: i64) -> SeriesSpec {
    SeriesSpec::f32(
        [a.clone(), b - &ri(r), c.clone()],
        [a - &ri(l), b + &one()],
        one(),
    )
}

fn thm1_rhs_inner_spec(a: &Rational, b: &Rational, c: &Rational, l: i64, r: i64) -> SeriesSpec {
    SeriesSpec::f32(
        [ri(-r), &one() - a, c - b],
        [&one() - b, &one() - a + c + &ri(l - r)],
        one(),
    )
}

pub(super) fn thm1_validity(inst: &IdentityInstance) -> Result<Validity> {
    let a = get_rational(&inst.params, "a")?;
    let b = get_rational(&inst.params, "b")?;
    let c = get_rational(&inst.params, "c")?;
    let l = get_integer(&inst.params, "l")?;
    let r = get_integer(&inst.params, "r")?;
    if l < 0 {
        return Ok(Validity::bad("l must be a nonnegative integer"));
    }
    let r_minus_l = ri(r - l);
    match inst.mode {
        Mode::Exact => {
            if !(c.is_integer() && (c.is_zero() || c.is_negative())) {
                return Ok(Validity::bad(
                    "exact mode requires c a non-positive integer (use numeric mode otherwise)",
                ));
            }
            if c > r_minus_l {
                return Ok(Validity::bad("hypothesis c <= r - l violated"));
            }
            let n = (-&c).as_i64().unwrap();
            if rising_vanishes(&(&a - &ri(l)), n) || rising_vanishes(&(&b + &one()), n) {
                return Ok(Validity::bad("left-side bottom parameter pole"));
            }
            if r >= 0 {
                if rising_vanishes(&(&one() - &a), l) {
                    return Ok(Validity::bad("(1-a)_l vanishes"));
                }
                if !poch_denominator_ok(&(&a - &b), r - l) {
                    return Ok(Validity::bad("(a-b)_{r-l} vanishes or is undefined"));
                }
                if rising_vanishes(&(&one() - &b), r)
                    || rising_vanishes(&(&one() - &a + &c + &ri(l - r)), r)
                {
                    return Ok(Validity::bad("right-side bottom parameter pole"));
                }
            }
        }
        Mode::Numeric => {
            if c.is_integer() {
                return Ok(Validity::bad("numeric mode requires non-integer c"));
            }
            if !(c < r_minus_l) {
                return Ok(Validity::bad("hypothesis c < r - l violated"));
            }
            let excess = &ri(1 - l + r) - &c;
            if excess < ri(3) {
                return Ok(Validity::bad(format!(
                    "series excess {excess} below the direct-summation threshold 3"
                )));
            }
            if c > ri(-2) {
                return Ok(Validity::bad(
                    "numeric gamma-quotient summation requires c <= -2",
                ));
            }
            let nonpos_int = |x: &Rational| x.is_integer() && (x.is_zero() || x.is_negative());
            if nonpos_int(&(&a - &ri(l))) || nonpos_int(&(&b + &one())) {
                return Ok(Validity::bad("left-side bottom parameter pole"));
            }
            if r >= 0 {
                if rising_vanishes(&(&one() - &a), l) {
                    return Ok(Validity::bad("(1-a)_l vanishes"));
                }
                if !poch_denominator_ok(&(&a - &b), r - l) {
                    return Ok(Validity::bad("(a-b)_{r-l} vanishes or is undefined"));
                }
                if rising_vanishes(&(&one() - &b), r)
                    || rising_vanishes(&(&one() - &a + &c + &ri(l - r)), r)
                {
                    return Ok(Validity::bad("right-side bottom parameter pole"));
                }
                if nonpos_int(&(&one() + &b)) {
                    return Ok(Validity::bad("gamma-quotient bottom parameter 1+b pole"));
                }
            }
        }
    }
    if r < 0 {
        return Ok(Validity::note("both sides are zero (r < 0)"));
    }
    Ok(Validity::ok())
}

/// Left side: the shifted `3F2(1)`, exact when `c = -n`.
pub fn thm1_lhs_exact(a: &Rational, b: &Rational, c: &Rational, l: i64, r: i64) -> Result<Rational> {
    eval_terminating(&thm1_lhs_spec(a, b, c, l, r))
}

/// Right side in its gamma-free form: with `c = -n`,
/// `Gamma(1-c) Gamma(1+b) / Gamma(1+b-c) = n! / (1+b)_n`, so the prefactor is
/// `(-1)^l n! (a-c-l)_r (1-b)_r / ((1+b)_n (1-a)_l (a-b)_{r-l} r!)` times the
/// terminating transform series. Zero for `r < 0` by the `1/r!` convention.
pub fn thm1_rhs_exact(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    l: i64,
    r: i64,
    mutant: Option<Mutant>,
) -> Result<Rational> {
    if r < 0 {
        return Ok(Rational::zero());
    }
    let n = (-c)
        .as_i64()
        .ok_or_else(|| Error::InvalidHypothesis("exact right side needs integer c".into()))?;
    let numer = neg_one_pow(l)
        * factorial(n as u64)
        * pochhammer(&(a - c - &ri(l)), r)?
        * pochhammer(&(&one() - b), r)?;
    let denom = poch_nonzero(&(&one() + b), n, "(1+b)_n")?
        * poch_nonzero(&(&one() - a), l, "(1-a)_l")?
        * poch_nonzero(&(a - b), r - l, "(a-b)_{r-l}")?
        * factorial(r as u64);
    let inner = eval_terminating(&thm1_rhs_inner_spec(a, b, c, l, r))?;
    let sign = if mutant == Some(Mutant::Thm1RhsSignFlip) {
        -one()
    } else {
        one()
    };
    Ok(sign * numer / denom * inner)
}

fn thm1_sides_numeric(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    l: i64,
    r: i64,
    settings: &NumericSettings,
    mutant: Option<Mutant>,
) -> Result<(SideValue, SideValue)> {
    let (lhs, _lhs_err) = eval_unit_numeric_with_err(&thm1_lhs_spec(a, b, c, l, r), settings)?;
    let rhs = if r < 0 {
        BigFloat::zero(settings.precision_bits)
    } else {
        let scale = neg_one_pow(l) * pochhammer(&(a - c - &ri(l)), r)? * pochhammer(&(&one() - b), r)?
            / (poch_nonzero(&(&one() - a), l, "(1-a)_l")?
                * poch_nonzero(&(a - b), r - l, "(a-b)_{r-l}")?
                * factorial(r as u64));
        let inner = eval_terminating(&thm1_rhs_inner_spec(a, b, c, l, r))?;
        let scale = scale * inner;
        // each side must stay within target_abs_err; budget the gamma
        // quotient's error for the scale it will be multiplied by
        let scale_mag = scale.abs();
        let divisor = if scale_mag > one() {
            &scale_mag * &ri(2)
        } else {
            ri(2)
        };
        let g_settings = NumericSettings {
            precision_bits: settings.precision_bits,
            target_abs_err: &settings.target_abs_err / &divisor,
        };
        let (g, _g_err) = gamma_quotient_numeric(b, c, &g_settings)?;
        g.mul_rational(&scale)
    };
    let rhs = if mutant == Some(Mutant::Thm1RhsSignFlip) {
        rhs.neg()
    } else {
        rhs
    };
    Ok((SideValue::Numeric(lhs), SideValue::Numeric(rhs)))
}

pub(super) fn thm1_sides(
    inst: &IdentityInstance,
    mutant: Option<Mutant>,
) -> Result<(SideValue, SideValue)> {
    let a = get_rational(&inst.params, "a")?;
    let b = get_rational(&inst.params, "b")?;
    let c = get_rational(&inst.params, "c")?;
    let l = get_integer(&inst.params, "l")?;
    let r = get_integer(&inst.params, "r")?;
    match inst.mode {
        Mode::Exact => Ok((
            SideValue::Exact(thm1_lhs_exact(&a, &b, &c, l, r)?),
            SideValue::Exact(thm1_rhs_exact(&a, &b, &c, l, r, mutant)?),
        )),
        Mode::Numeric => thm1_sides_numeric(&a, &b, &c, l, r, &inst.numeric, mutant),
    }
}

// ---------------------------------------------------------------------------
// Karlsson-Minton summation (KM)
// ---------------------------------------------------------------------------

pub(super) fn km_validity(inst: &IdentityInstance) -> Result<Validity> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let beta = get_rational(&inst.params, "beta")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let l = get_integer(&inst.params, "l")?;
    if l < 0 {
        return Ok(Validity::bad("l must be a nonnegative integer"));
    }
    if !(gamma.is_integer() && (gamma.is_zero() || gamma.is_negative())) {
        return Ok(Validity::bad(
            "exact mode requires gamma a non-positive integer",
        ));
    }
    let n = (-&gamma).as_i64().unwrap();
    if n < l {
        return Ok(Validity::bad("hypothesis gamma < 1 - l violated"));
    }
    if rising_vanishes(&(&beta + &one()), n) || rising_vanishes(&alpha, n) {
        return Ok(Validity::bad("bottom parameter pole"));
    }
    if rising_vanishes(&alpha, l) {
        return Ok(Validity::bad("(alpha)_l vanishes"));
    }
    Ok(Validity::ok())
}

/// `(lhs, rhs)` of the Karlsson-Minton summation with `gamma = -n`:
/// the gamma quotient reduces to `n! / (beta+1)_n`.
pub fn km_sides_typed(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    l: i64,
    mutant: Option<Mutant>,
) -> Result<(Rational, Rational)> {
    let lhs = eval_terminating(&SeriesSpec::f32(
        [beta.clone(), alpha + &ri(l), gamma.clone()],
        [beta + &one(), alpha.clone()],
        one(),
    ))?;
    let n = (-gamma)
        .as_i64()
        .ok_or_else(|| Error::InvalidHypothesis("gamma must be a non-positive integer".into()))?;
    let shift = if mutant == Some(Mutant::KmRhsShiftedPochhammer) {
        l + 1
    } else {
        l
    };
    let rhs = factorial(n as u64) * pochhammer(&(alpha - beta), shift)?
        / (poch_nonzero(&(beta + &one()), n, "(beta+1)_n")?
            * poch_nonzero(alpha, l, "(alpha)_l")?);
    Ok((lhs, rhs))
}

pub(super) fn km_sides(
    inst: &IdentityInstance,
    mutant: Option<Mutant>,
) -> Result<(SideValue, SideValue)> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let beta = get_rational(&inst.params, "beta")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let l = get_integer(&inst.params, "l")?;
    let (lhs, rhs) = km_sides_typed(&alpha, &beta, &gamma, l, mutant)?;
    Ok((SideValue::Exact(lhs), SideValue::Exact(rhs)))
}

// ---------------------------------------------------------------------------
// Karlsson's shifted-bottom expansion (K74)
// ---------------------------------------------------------------------------

pub(super) fn k74_validity(inst: &IdentityInstance) -> Result<Validity> {
    let beta = get_rational(&inst.params, "beta")?;
    let _delta = get_rational(&inst.params, "delta")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let eta = get_rational(&inst.params, "eta")?;
    let r = get_integer(&inst.params, "r")?;
    if r < 0 {
        return Ok(Validity::bad("r must be a nonnegative integer"));
    }
    if !(gamma.is_integer() && (gamma.is_zero() || gamma.is_negative())) {
        return Ok(Validity::bad(
            "exact mode requires gamma a non-positive integer",
        ));
    }
    let n = (-&gamma).as_i64().unwrap();
    if rising_vanishes(&(&beta + &ri(r + 1)), n) || rising_vanishes(&eta, n) {
        return Ok(Validity::bad("bottom parameter pole"));
    }
    for j in 0..=r {
        let bj = &beta + &ri(j);
        if bj.is_zero() {
            return Ok(Validity::bad(format!("beta + {j} vanishes")));
        }
        if rising_vanishes(&(&bj + &one()), n) {
            return Ok(Validity::bad("expansion-term bottom parameter pole"));
        }
    }
    Ok(Validity::ok())
}

/// `(lhs, rhs)` of the shifted-bottom expansion with `gamma = -n`:
/// both sides are finite sums of terminating `3F2(1)` values.
pub fn k74_sides_typed(
    beta: &Rational,
    delta: &Rational,
    gamma: &Rational,
    eta: &Rational,
    r: i64,
) -> Result<(Rational, Rational)> {
    let lhs = eval_terminating(&SeriesSpec::f32(
        [beta.clone(), delta.clone(), gamma.clone()],
        [beta + &ri(r + 1), eta.clone()],
        one(),
    ))?;
    let mut sum = Rational::zero();
    for j in 0..=r {
        let bj = beta + &ri(j);
        if bj.is_zero() {
            return Err(Error::Pole {
                what: format!("beta + {j}"),
                index: 0,
            });
        }
        let inner = eval_terminating(&SeriesSpec::f32(
            [bj.clone(), delta.clone(), gamma.clone()],
            [&bj + &one(), eta.clone()],
            one(),
        ))?;
        let weight = pochhammer(&ri(-r), j)? / (&bj * &factorial(j as u64));
        sum += &(weight * inner);
    }
    let rhs = pochhammer(beta, r + 1)? / factorial(r as u64) * sum;
    Ok((lhs, rhs))
}

pub(super) fn k74_sides(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let beta = get_rational(&inst.params, "beta")?;
    let delta = get_rational(&inst.params, "delta")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let eta = get_rational(&inst.params, "eta")?;
    let r = get_integer(&inst.params, "r")?;
    let (lhs, rhs) = k74_sides_typed(&beta, &delta, &gamma, &eta, r)?;
    Ok((SideValue::Exact(lhs), SideValue::Exact(rhs)))
}

// ---------------------------------------------------------------------------
// Karlsson-Minton with shifted bottom (PBM) and its three-way chain
// ---------------------------------------------------------------------------

pub(super) fn pbm_validity(inst: &IdentityInstance) -> Result<Validity> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let beta = get_rational(&inst.params, "beta")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let l = get_integer(&inst.params, "l")?;
    let r = get_integer(&inst.params, "r")?;
    if l < 0 || r < 0 {
        return Ok(Validity::bad("l and r must be nonnegative integers"));
    }
    if !(gamma.is_integer() && (gamma.is_zero() || gamma.is_negative())) {
        return Ok(Validity::bad(
            "exact mode requires gamma a non-positive integer",
        ));
    }
    let n = (-&gamma).as_i64().unwrap();
    if n < l {
        return Ok(Validity::bad("hypothesis gamma < 1 - l violated"));
    }
    if rising_vanishes(&(&beta + &ri(r + 1)), n) || rising_vanishes(&alpha, n) {
        return Ok(Validity::bad("bottom parameter pole"));
    }
    if rising_vanishes(&alpha, l) {
        return Ok(Validity::bad("(alpha)_l vanishes"));
    }
    if rising_vanishes(&beta, n + 1) {
        return Ok(Validity::bad("(beta)_{n+1} vanishes"));
    }
    for j in 0..=r {
        let bj = &beta + &ri(j);
        if bj.is_zero() {
            return Ok(Validity::bad(format!("beta + {j} vanishes")));
        }
        if rising_vanishes(&(&bj + &one()), n) {
            return Ok(Validity::bad("expansion-term bottom parameter pole"));
        }
    }
    if rising_vanishes(&(&one() + &beta + &ri(n)), r)
        || rising_vanishes(&(&one() + &beta - &alpha - &ri(l)), r)
    {
        return Ok(Validity::bad("right-side bottom parameter pole"));
    }
    Ok(Validity::ok())
}

pub fn pbm_lhs_typed(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    l: i64,
    r: i64,
) -> Result<Rational> {
    eval_terminating(&SeriesSpec::f32(
        [beta.clone(), alpha + &ri(l), gamma.clone()],
        [beta + &ri(r + 1), alpha.clone()],
        one(),
    ))
}

/// The middle expression of the derivation chain: the `j`-sum over shifted
/// Karlsson-Minton summations, each evaluated as a terminating series.
pub fn pbm_middle_typed(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    l: i64,
    r: i64,
) -> Result<Rational> {
    let mut sum = Rational::zero();
    for j in 0..=r {
        let bj = beta + &ri(j);
        if bj.is_zero() {
            return Err(Error::Pole {
                what: format!("beta + {j}"),
                index: 0,
            });
        }
        let inner = eval_terminating(&SeriesSpec::f32(
            [bj.clone(), alpha + &ri(l), gamma.clone()],
            [&bj + &one(), alpha.clone()],
            one(),
        ))?;
        let weight = pochhammer(&ri(-r), j)? / (&bj * &factorial(j as u64));
        sum += &(weight * inner);
    }
    Ok(pochhammer(beta, r + 1)? / factorial(r as u64) * sum)
}

/// The closed right side with `gamma = -n`: the gamma quotient
/// `Gamma(1-gamma) Gamma(beta) / Gamma(1+beta-gamma)` reduces to
/// `n! / (beta)_{n+1}`.
pub fn pbm_rhs_typed(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    l: i64,
    r: i64,
) -> Result<Rational> {
    let n = (-gamma)
        .as_i64()
        .ok_or_else(|| Error::InvalidHypothesis("gamma must be a non-positive integer".into()))?;
    let prefactor = pochhammer(beta, r + 1)? * pochhammer(&(alpha - beta), l)? * factorial(n as u64)
        / (poch_nonzero(alpha, l, "(alpha)_l")?
            * poch_nonzero(beta, n + 1, "(beta)_{n+1}")?
            * factorial(r as u64));
    let inner = eval_terminating(&SeriesSpec::f32(
        [ri(-r), beta.clone(), &one() + beta - alpha],
        [&one() + beta + &ri(n), &one() + beta - alpha - &ri(l)],
        one(),
    ))?;
    Ok(prefactor * inner)
}

pub(super) fn pbm_sides(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let beta = get_rational(&inst.params, "beta")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let l = get_integer(&inst.params, "l")?;
    let r = get_integer(&inst.params, "r")?;
    Ok((
        SideValue::Exact(pbm_lhs_typed(&alpha, &beta, &gamma, l, r)?),
        SideValue::Exact(pbm_rhs_typed(&alpha, &beta, &gamma, l, r)?),
    ))
}

// ---------------------------------------------------------------------------
// terminating 3F2(1) transformation (RJRJR)
// ---------------------------------------------------------------------------

pub(super) fn rjrjr_validity(inst: &IdentityInstance) -> Result<Validity> {
    let a = get_rational(&inst.params, "a")?;
    let b = get_rational(&inst.params, "b")?;
    let d = get_rational(&inst.params, "d")?;
    let e = get_rational(&inst.params, "e")?;
    let r = get_integer(&inst.params, "r")?;
    if r < 0 {
        return Ok(Validity::bad("r must be a nonnegative integer"));
    }
    if rising_vanishes(&d, r) || rising_vanishes(&e, r) {
        return Ok(Validity::bad("(d)_r or (e)_r vanishes"));
    }
    if rising_vanishes(&(&one() - &b - &ri(r)), r)
        || rising_vanishes(&(&one() + &a - &d - &ri(r)), r)
    {
        return Ok(Validity::bad("transformed-side bottom parameter pole"));
    }
    Ok(Validity::ok())
}

/// `(lhs, rhs)` of the terminating transformation: both sides are
/// `(r+1)`-term sums.
pub fn rjrjr_sides_typed(
    a: &Rational,
    b: &Rational,
    d: &Rational,
    e: &Rational,
    r: i64,
    mutant: Option<Mutant>,
) -> Result<(Rational, Rational)> {
    let lhs = eval_terminating(&SeriesSpec::f32(
        [ri(-r), a.clone(), b.clone()],
        [d.clone(), e.clone()],
        one(),
    ))?;
    let shift = if mutant == Some(Mutant::RjrjrRhsShiftedPochhammer) {
        r + 1
    } else {
        r
    };
    let prefactor = pochhammer(&(d - a), r)? * pochhammer(b, shift)?
        / (poch_nonzero(d, r, "(d)_r")? * poch_nonzero(e, r, "(e)_r")?);
    let inner = eval_terminating(&SeriesSpec::f32(
        [ri(-r), e - b, &one() - d - &ri(r)],
        [&one() - b - &ri(r), &one() + a - d - &ri(r)],
        one(),
    ))?;
    Ok((lhs, prefactor * inner))
}

pub(super) fn rjrjr_sides(
    inst: &IdentityInstance,
    mutant: Option<Mutant>,
) -> Result<(SideValue, SideValue)> {
    let a = get_rational(&inst.params, "a")?;
    let b = get_rational(&inst.params, "b")?;
    let d = get_rational(&inst.params, "d")?;
    let e = get_rational(&inst.params, "e")?;
    let r = get_integer(&inst.params, "r")?;
    let (lhs, rhs) = rjrjr_sides_typed(&a, &b, &d, &e, r, mutant)?;
    Ok((SideValue::Exact(lhs), SideValue::Exact(rhs)))
}

// ---------------------------------------------------------------------------
// two-shift terminating transformation (COR1)
// ---------------------------------------------------------------------------

pub(super) fn cor1_validity(inst: &IdentityInstance) -> Result<Validity> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let m1 = get_integer(&inst.params, "m1")?;
    let m2 = get_integer(&inst.params, "m2")?;
    let n = get_integer(&inst.params, "n")?;
    if n < 0 {
        return Ok(Validity::bad("n must be a nonnegative integer"));
    }
    if n < m1.max(m2 - m1) {
        return Ok(Validity::bad("hypothesis n >= max(m1, m2-m1) violated"));
    }
    let two = ri(2);
    if rising_vanishes(&(&gamma - &ri(m2)), n) {
        return Ok(Validity::bad("(gamma-m2)_n vanishes"));
    }
    if rising_vanishes(&(&two - &gamma), n) {
        return Ok(Validity::bad("(2-gamma)_n vanishes"));
    }
    if !poch_denominator_ok(&(&one() - &gamma), m2)
        || !poch_denominator_ok(&(&gamma - &alpha), m1 - m2)
        || !poch_denominator_ok(&(&one() - &alpha), n + m1 - m2)
    {
        return Ok(Validity::bad("shifted Pochhammer factor undefined"));
    }
    if rising_vanishes(&(&one() - &alpha + &ri(m1 - n)), n) {
        return Ok(Validity::bad("left inner bottom parameter pole"));
    }
    if n >= m2
        && (rising_vanishes(&gamma, n - m2)
            || rising_vanishes(&(&alpha + &ri(m2 - m1 - n)), n - m2))
    {
        return Ok(Validity::bad("right inner bottom parameter pole"));
    }
    if n < m2 {
        return Ok(Validity::note("both sides vanish (n < m2)"));
    }
    Ok(Validity::ok())
}

/// Left side of the two-shift transformation: prefactor times a terminating
/// `3F2(1)`; the full sum evaluates to exactly zero on the vanishing branch.
pub fn cor1_lhs_typed(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    n: i64,
) -> Result<Rational> {
    let prefactor = pochhammer(&(&one() - gamma), m2)?
        * pochhammer(&(gamma - alpha), m1 - m2)?
        * pochhammer(&(alpha - &ri(m1)), n)?
        / (poch_nonzero(&(gamma - &ri(m2)), n, "(gamma-m2)_n")? * factorial(n as u64));
    let inner = eval_terminating(&SeriesSpec::f32(
        [ri(-n), &one() - alpha, &one() - gamma + &ri(m2 - n)],
        [&ri(2) - gamma, &one() - alpha + &ri(m1 - n)],
        one(),
    ))?;
    Ok(prefactor * inner)
}

/// Right side: zero when `n < m2` (the `1/(n-m2)!` convention); otherwise a
/// prefactor times a series terminating at `n - m2`.
pub fn cor1_rhs_typed(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    n: i64,
    mutant: Option<Mutant>,
) -> Result<Rational> {
    if n < m2 {
        debug_assert!(reciprocal_factorial(n - m2).is_zero());
        return Ok(Rational::zero());
    }
    let shift = if mutant == Some(Mutant::Cor1RhsShiftedPochhammer) {
        n + m1 - m2 + 1
    } else {
        n + m1 - m2
    };
    let prefactor = neg_one_pow(n - m2) * pochhammer(&(&one() - alpha), shift)?
        / (poch_nonzero(&(&ri(2) - gamma), n, "(2-gamma)_n")? * factorial((n - m2) as u64));
    let inner = eval_terminating(&SeriesSpec::f32(
        [ri(m2 - n), alpha.clone(), gamma - &ri(1 + n)],
        [gamma.clone(), alpha + &ri(m2 - m1 - n)],
        one(),
    ))?;
    Ok(prefactor * inner)
}

pub(super) fn cor1_sides(
    inst: &IdentityInstance,
    mutant: Option<Mutant>,
) -> Result<(SideValue, SideValue)> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let m1 = get_integer(&inst.params, "m1")?;
    let m2 = get_integer(&inst.params, "m2")?;
    let n = get_integer(&inst.params, "n")?;
    Ok((
        SideValue::Exact(cor1_lhs_typed(&alpha, &gamma, m1, m2, n)?),
        SideValue::Exact(cor1_rhs_typed(&alpha, &gamma, m1, m2, n, mutant)?),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(num, den)
    }

    #[test]
    fn thm1_worked_instance() {
        // two-term sums on both sides, each equal to 1/2
        let (a, b, c) = (r(1, 2), r(1, 3), r(-1, 1));
        let lhs = thm1_lhs_exact(&a, &b, &c, 1, 1).unwrap();
        let rhs = thm1_rhs_exact(&a, &b, &c, 1, 1, None).unwrap();
        assert_eq!(lhs, r(1, 2));
        assert_eq!(rhs, r(1, 2));
    }

    #[test]
    fn thm1_zero_c_truncates_immediately() {
        let (a, b, c) = (r(5, 7), r(2, 11), Rational::zero());
        assert_eq!(thm1_lhs_exact(&a, &b, &c, 2, 3).unwrap(), Rational::one());
        assert_eq!(
            thm1_rhs_exact(&a, &b, &c, 2, 3, None).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn thm1_gauss_collapse() {
        // l = r = 0: left side collapses to a Chu-Vandermonde sum n!/(b+1)_n.
        let (a, b, c) = (Rational::one(), r(1, 3), r(-2, 1));
        let lhs = thm1_lhs_exact(&a, &b, &c, 0, 0).unwrap();
        let rhs = thm1_rhs_exact(&a, &b, &c, 0, 0, None).unwrap();
        assert_eq!(lhs, r(9, 14));
        assert_eq!(rhs, r(9, 14));
    }

    #[test]
    fn thm1_negative_r_vanishes_on_both_sides() {
        for (l, rr, n) in [(0i64, -1i64, 1i64), (1, -2, 4), (0, -3, 3)] {
            let (a, b) = (r(1, 2), r(1, 3));
            let c = Rational::from_int(-n);
            let lhs = thm1_lhs_exact(&a, &b, &c, l, rr).unwrap();
            let rhs = thm1_rhs_exact(&a, &b, &c, l, rr, None).unwrap();
            assert!(lhs.is_zero(), "lhs not zero at l={l} r={rr} n={n}: {lhs}");
            assert!(rhs.is_zero());
        }
    }

    #[test]
    fn thm1_exact_equality_small_grid() {
        let values = [r(1, 7), r(3, 7), r(-2, 7)];
        for a in &values {
            for b in [r(1, 11), r(5, 11)] {
                for l in 0..=2i64 {
                    for rr in -2..=2i64 {
                        for n in 0..=3i64 {
                            if -n > rr - l {
                                continue;
                            }
                            let c = Rational::from_int(-n);
                            let lhs = thm1_lhs_exact(a, &b, &c, l, rr).unwrap();
                            let rhs = thm1_rhs_exact(a, &b, &c, l, rr, None).unwrap();
                            assert_eq!(lhs, rhs, "a={a} b={b} l={l} r={rr} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn km_worked_instance() {
        let (lhs, rhs) =
            km_sides_typed(&r(2, 1), &Rational::one(), &r(-1, 1), 1, None).unwrap();
        assert_eq!(lhs, r(1, 4));
        assert_eq!(rhs, r(1, 4));
    }

    #[test]
    fn km_equality_on_samples() {
        for alpha in [r(3, 7), r(-5, 7)] {
            for beta in [r(2, 11), r(-7, 11)] {
                for l in 0..=3i64 {
                    for n in l..=6i64 {
                        let gamma = Rational::from_int(-n);
                        let (lhs, rhs) =
                            km_sides_typed(&alpha, &beta, &gamma, l, None).unwrap();
                        assert_eq!(lhs, rhs, "alpha={alpha} beta={beta} l={l} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn k74_equality_on_samples() {
        for rr in 0..=3i64 {
            for n in 0..=4i64 {
                let (lhs, rhs) = k74_sides_typed(
                    &r(1, 3),
                    &r(5, 7),
                    &Rational::from_int(-n),
                    &r(2, 5),
                    rr,
                )
                .unwrap();
                assert_eq!(lhs, rhs, "r={rr} n={n}");
            }
        }
    }

    #[test]
    fn pbm_three_way_chain() {
        // spec-style instance: beta=1/3, alpha=3/2, gamma=-2, l=1, r=2
        let (alpha, beta, gamma) = (r(3, 2), r(1, 3), r(-2, 1));
        let lhs = pbm_lhs_typed(&alpha, &beta, &gamma, 1, 2).unwrap();
        let mid = pbm_middle_typed(&alpha, &beta, &gamma, 1, 2).unwrap();
        let rhs = pbm_rhs_typed(&alpha, &beta, &gamma, 1, 2).unwrap();
        assert_eq!(lhs, mid);
        assert_eq!(mid, rhs);
    }

    #[test]
    fn pbm_equality_grid() {
        for l in 0..=2i64 {
            for rr in 0..=2i64 {
                for n in l..=4i64 {
                    let (alpha, beta) = (r(5, 7), r(2, 11));
                    let gamma = Rational::from_int(-n);
                    let lhs = pbm_lhs_typed(&alpha, &beta, &gamma, l, rr).unwrap();
                    let mid = pbm_middle_typed(&alpha, &beta, &gamma, l, rr).unwrap();
                    let rhs = pbm_rhs_typed(&alpha, &beta, &gamma, l, rr).unwrap();
                    assert_eq!(lhs, mid, "l={l} r={rr} n={n}");
                    assert_eq!(lhs, rhs, "l={l} r={rr} n={n}");
                }
            }
        }
    }

    #[test]
    fn rjrjr_trivial_and_worked() {
        // r = 0: empty transformation
        let (lhs, rhs) = rjrjr_sides_typed(&r(9, 7), &r(3, 5), &r(1, 3), &r(4, 9), 0, None).unwrap();
        assert_eq!(lhs, Rational::one());
        assert_eq!(rhs, Rational::one());
        // r = 1 worked pair: both sides are two-term sums equal to 5/12
        let (lhs, rhs) =
            rjrjr_sides_typed(&r(1, 2), &r(1, 3), &r(5, 7), &r(2, 5), 1, None).unwrap();
        assert_eq!(lhs, r(5, 12));
        assert_eq!(rhs, r(5, 12));
    }

    #[test]
    fn rjrjr_equality_on_samples() {
        for rr in 0..=5i64 {
            let (lhs, rhs) = rjrjr_sides_typed(
                &r(3, 7),
                &r(-2, 11),
                &r(5, 13),
                &r(-9, 7),
                rr,
                None,
            )
            .unwrap();
            assert_eq!(lhs, rhs, "r={rr}");
        }
    }

    #[test]
    fn cor1_vanishing_branch() {
        // n >= max(m1, m2-m1) and n < m2: both sides exactly zero
        let lhs = cor1_lhs_typed(&r(1, 3), &r(2, 7), 1, 3, 2).unwrap();
        let rhs = cor1_rhs_typed(&r(1, 3), &r(2, 7), 1, 3, 2, None).unwrap();
        assert!(lhs.is_zero(), "lhs = {lhs}");
        assert!(rhs.is_zero());
    }

    #[test]
    fn cor1_equal_pair_and_negative_shifts() {
        let lhs = cor1_lhs_typed(&r(1, 3), &r(2, 7), 1, 1, 1).unwrap();
        let rhs = cor1_rhs_typed(&r(1, 3), &r(2, 7), 1, 1, 1, None).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
        // negative shifts exercise the signed Pochhammer branch
        let lhs = cor1_lhs_typed(&r(5, 7), &r(-3, 11), -2, -1, 3).unwrap();
        let rhs = cor1_rhs_typed(&r(5, 7), &r(-3, 11), -2, -1, 3, None).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cor1_equality_grid() {
        for m1 in -3..=3i64 {
            for m2 in -3..=3i64 {
                for n in 0..=6i64 {
                    if n < m1.max(m2 - m1) {
                        continue;
                    }
                    let lhs = cor1_lhs_typed(&r(4, 7), &r(-5, 11), m1, m2, n).unwrap();
                    let rhs = cor1_rhs_typed(&r(4, 7), &r(-5, 11), m1, m2, n, None).unwrap();
                    assert_eq!(lhs, rhs, "m1={m1} m2={m2} n={n}");
                }
            }
        }
    }

    #[test]
    fn mutants_change_values() {
        let (_, rhs) = km_sides_typed(&r(2, 1), &Rational::one(), &r(-1, 1), 1, None).unwrap();
        let (_, bad) = km_sides_typed(
            &r(2, 1),
            &Rational::one(),
            &r(-1, 1),
            1,
            Some(Mutant::KmRhsShiftedPochhammer),
        )
        .unwrap();
        assert_ne!(rhs, bad);

        let good = cor1_rhs_typed(&r(1, 3), &r(2, 7), 1, 1, 1, None).unwrap();
        let bad =
            cor1_rhs_typed(&r(1, 3), &r(2, 7), 1, 1, 1, Some(Mutant::Cor1RhsShiftedPochhammer))
                .unwrap();
        assert_ne!(good, bad);
    }
}
