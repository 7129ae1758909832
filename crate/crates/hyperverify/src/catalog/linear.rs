//! The linearization identity and the reciprocal-Pochhammer convolution sum
//! behind it.
//!
//! The convolution sum is stated in reciprocal gamma functions; multiplying
//! both sides by `Gamma(mu) Gamma(mu+beta)` turns every term into a
//! reciprocal Pochhammer product, exact over the rationals. Summing the
//! normalized identity against `x^m` is precisely the coefficient-wise form
//! of the linearization, and a test pins that link term by term.

use crate::error::{Error, Result};
use crate::eval::SeriesSpec;
use crate::rational::{pochhammer, Rational};
use crate::series::FormalSeries;

use super::{
    get_integer, get_rational, rising_vanishes, IdentityInstance, SideValue, Validity,
};

fn one() -> Rational {
    Rational::one()
}

/// Reciprocal of `(x)_k`, with a pole check.
fn recip_poch(x: &Rational, k: i64, what: &str) -> Result<Rational> {
    let v = pochhammer(x, k)?;
    if v.is_zero() {
        Err(Error::Pole {
            what: what.to_string(),
            index: k,
        })
    } else {
        Ok(v.recip())
    }
}

/// Both sides of the normalized convolution sum at integer `m`:
///
/// `sum_{k=0}^m [ 1/((mu)_{k+1} (mu+beta)_{m-k}) - 1/((mu)_k (mu+beta)_{m-k+1}) ]
///  = ((mu+beta)_{m+1} - (mu)_{m+1}) / ((mu)_{m+1} (mu+beta)_{m+1})`
pub fn lem3_sides(mu: &Rational, beta: &Rational, m: i64) -> Result<(Rational, Rational)> {
    if m < 0 {
        return Err(Error::InvalidHypothesis("m must be nonnegative".into()));
    }
    let mb = mu + beta;
    let mut lhs = Rational::zero();
    for k in 0..=m {
        let first = recip_poch(mu, k + 1, "(mu)_{k+1}")? * recip_poch(&mb, m - k, "(mu+beta)_{m-k}")?;
        let second =
            recip_poch(mu, k, "(mu)_k")? * recip_poch(&mb, m - k + 1, "(mu+beta)_{m-k+1}")?;
        lhs += &(first - second);
    }
    let top = pochhammer(&mb, m + 1)? - pochhammer(mu, m + 1)?;
    let rhs = top * recip_poch(mu, m + 1, "(mu)_{m+1}")? * recip_poch(&mb, m + 1, "(mu+beta)_{m+1}")?;
    Ok((lhs, rhs))
}

pub(super) fn lem3_validity(inst: &IdentityInstance) -> Result<Validity> {
    let mu = get_rational(&inst.params, "mu")?;
    let beta = get_rational(&inst.params, "beta")?;
    let m = get_integer(&inst.params, "m")?;
    if m < 0 {
        return Ok(Validity::bad("m must be a nonnegative integer"));
    }
    if rising_vanishes(&mu, m + 1) {
        return Ok(Validity::bad("(mu)_{m+1} vanishes"));
    }
    if rising_vanishes(&(&mu + &beta), m + 1) {
        return Ok(Validity::bad("(mu+beta)_{m+1} vanishes"));
    }
    Ok(Validity::ok())
}

pub(super) fn lem3_sides_dispatch(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let mu = get_rational(&inst.params, "mu")?;
    let beta = get_rational(&inst.params, "beta")?;
    let m = get_integer(&inst.params, "m")?;
    let (lhs, rhs) = lem3_sides(&mu, &beta, m)?;
    Ok((SideValue::Exact(lhs), SideValue::Exact(rhs)))
}

/// Both sides of the linearization as order-`order` series:
///
/// `(mu+beta) 1F1(1;mu+1;x) 1F1(1;mu+beta;x) - mu 1F1(1;mu;x) 1F1(1;mu+1+beta;x)
///  = (mu+beta) 1F1(1;mu+1;x) - mu 1F1(1;mu+1+beta;x)`
pub fn thm4_sides(mu: &Rational, beta: &Rational, order: usize) -> Result<(FormalSeries, FormalSeries)> {
    let f = |bottom: Rational| -> Result<FormalSeries> {
        FormalSeries::hypergeometric(&SeriesSpec::f11(one(), bottom, one()), order)
    };
    let mb = mu + beta;
    let f_mu1 = f(mu + &one())?;
    let f_mb = f(mb.clone())?;
    let f_mu = f(mu.clone())?;
    let f_mb1 = f(&mb + &one())?;
    let lhs = f_mu1
        .mul(&f_mb)?
        .scale(&mb)
        .sub(&f_mu.mul(&f_mb1)?.scale(mu))?;
    let rhs = f_mu1.scale(&mb).sub(&f_mb1.scale(mu))?;
    Ok((lhs, rhs))
}

pub(super) fn thm4_validity(inst: &IdentityInstance) -> Result<Validity> {
    let mu = get_rational(&inst.params, "mu")?;
    let beta = get_rational(&inst.params, "beta")?;
    let order = inst.order as i64;
    for bottom in [
        mu.clone(),
        &mu + &one(),
        &mu + &beta,
        &mu + &beta + &one(),
    ] {
        if rising_vanishes(&bottom, order) {
            return Ok(Validity::bad(format!("bottom parameter {bottom} pole")));
        }
    }
    Ok(Validity::ok())
}

pub(super) fn thm4_sides_dispatch(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let mu = get_rational(&inst.params, "mu")?;
    let beta = get_rational(&inst.params, "beta")?;
    let (lhs, rhs) = thm4_sides(&mu, &beta, inst.order as usize)?;
    Ok((SideValue::Series(lhs), SideValue::Series(rhs)))
}
