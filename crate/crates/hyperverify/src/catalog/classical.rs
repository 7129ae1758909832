//! Classical product and transformation fixtures for the Gauss and Kummer
//! functions, checked as exact truncated-series identities.

use crate::error::Result;
use crate::eval::SeriesSpec;
use crate::rational::Rational;
use crate::series::FormalSeries;

use super::{get_rational, rising_vanishes, IdentityId, IdentityInstance, SideValue, Validity};

fn ri(n: i64) -> Rational {
    Rational::from_int(n)
}

fn one() -> Rational {
    Rational::one()
}

fn f21(a: Rational, b: Rational, c: Rational, sign: i64, order: usize) -> Result<FormalSeries> {
    FormalSeries::hypergeometric(&SeriesSpec::f21(a, b, c, ri(sign)), order)
}

/// Euler product reduction:
/// `2F1(a,b;c;x) 2F1(1-a,1-b;2-c;x) = 2F1(c-a,c-b;c;x) 2F1(1+a-c,1+b-c;2-c;x)`.
pub fn euler_sides(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    order: usize,
) -> Result<(FormalSeries, FormalSeries)> {
    let two = ri(2);
    let lhs = f21(a.clone(), b.clone(), c.clone(), 1, order)?.mul(&f21(
        &one() - a,
        &one() - b,
        &two - c,
        1,
        order,
    )?)?;
    let rhs = f21(c - a, c - b, c.clone(), 1, order)?.mul(&f21(
        &one() + a - c,
        &one() + b - c,
        &two - c,
        1,
        order,
    )?)?;
    Ok((lhs, rhs))
}

/// Gauss product relation:
/// `2F1(a,b;c;x) 2F1(-a,-b;-c;x)
///  - x^2 ab(c-a)(c-b)/(c^2(c^2-1)) 2F1(1-a,1-b;2-c;x) 2F1(1+a,1+b;2+c;x) = 1`.
pub fn gauss_sides(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    order: usize,
) -> Result<(FormalSeries, FormalSeries)> {
    let two = ri(2);
    let first = f21(a.clone(), b.clone(), c.clone(), 1, order)?
        .mul(&f21(-a, -b, -c, 1, order)?)?;
    let second = f21(&one() - a, &one() - b, &two - c, 1, order)?.mul(&f21(
        &one() + a,
        &one() + b,
        &two + c,
        1,
        order,
    )?)?;
    let c2 = c * c;
    let scale = a * b * &(c - a) * (c - b) / (&c2 * &(&c2 - &one()));
    let lhs = first.sub(&second.shift_scale(2, &scale))?;
    Ok((lhs, FormalSeries::one(order)))
}

/// Kummer transformation: `1F1(a;b;x) = exp(x) 1F1(b-a;b;-x)`.
pub fn kummer_sides(
    a: &Rational,
    b: &Rational,
    order: usize,
) -> Result<(FormalSeries, FormalSeries)> {
    let lhs = FormalSeries::hypergeometric(&SeriesSpec::f11(a.clone(), b.clone(), one()), order)?;
    let rhs = FormalSeries::exponential(order).mul(&FormalSeries::hypergeometric(
        &SeriesSpec::f11(b - a, b.clone(), -one()),
        order,
    )?)?;
    Ok((lhs, rhs))
}

pub(super) fn classical_validity(inst: &IdentityInstance) -> Result<Validity> {
    let order = inst.order as i64;
    let two = ri(2);
    match inst.id {
        IdentityId::Euler => {
            let c = get_rational(&inst.params, "c")?;
            for bottom in [c.clone(), &two - &c] {
                if rising_vanishes(&bottom, order) {
                    return Ok(Validity::bad(format!("bottom parameter {bottom} pole")));
                }
            }
        }
        IdentityId::Gauss => {
            let c = get_rational(&inst.params, "c")?;
            if let Some(v) = c.as_i64() {
                if (-1..=1).contains(&v) {
                    return Ok(Validity::bad("c^2 (c^2 - 1) vanishes"));
                }
            }
            for bottom in [c.clone(), -&c, &two - &c, &two + &c] {
                if rising_vanishes(&bottom, order) {
                    return Ok(Validity::bad(format!("bottom parameter {bottom} pole")));
                }
            }
        }
        IdentityId::Kummer => {
            let b = get_rational(&inst.params, "b")?;
            if rising_vanishes(&b, order) {
                return Ok(Validity::bad(format!("bottom parameter {b} pole")));
            }
        }
        _ => unreachable!(),
    }
    Ok(Validity::ok())
}

pub(super) fn euler_sides_dispatch(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let a = get_rational(&inst.params, "a")?;
    let b = get_rational(&inst.params, "b")?;
    let c = get_rational(&inst.params, "c")?;
    let (lhs, rhs) = euler_sides(&a, &b, &c, inst.order as usize)?;
    Ok((SideValue::Series(lhs), SideValue::Series(rhs)))
}

pub(super) fn gauss_sides_dispatch(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let a = get_rational(&inst.params, "a")?;
    let b = get_rational(&inst.params, "b")?;
    let c = get_rational(&inst.params, "c")?;
    let (lhs, rhs) = gauss_sides(&a, &b, &c, inst.order as usize)?;
    Ok((SideValue::Series(lhs), SideValue::Series(rhs)))
}

pub(super) fn kummer_sides_dispatch(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let a = get_rational(&inst.params, "a")?;
    let b = get_rational(&inst.params, "b")?;
    let (lhs, rhs) = kummer_sides(&a, &b, inst.order as usize)?;
    Ok((SideValue::Series(lhs), SideValue::Series(rhs)))
}
