//! The Kummer-product reduction: two shifted products of `1F1` series whose
//! difference collapses to a polynomial remainder, plus the six printed
//! example instances with their explicit normalizations.
//!
//! The remainder coefficients `L(n) - R(n)` are computed from the written
//! finite sums, independent of the series pipeline, so the two routes check
//! each other.

use crate::error::{Error, Result};
use crate::eval::SeriesSpec;
use crate::poly::RatPoly;
use crate::rational::{factorial, neg_one_pow, pochhammer, Rational};
use crate::series::FormalSeries;

use super::{
    get_integer, get_rational, poch_denominator_ok, rising_vanishes, IdentityId,
    IdentityInstance, Mutant, SideValue, Validity,
};

fn ri(n: i64) -> Rational {
    Rational::from_int(n)
}

fn one() -> Rational {
    Rational::one()
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

fn nonzero(v: Rational, what: &str) -> Result<Rational> {
    if v.is_zero() {
        Err(Error::Pole {
            what: what.to_string(),
            index: 0,
        })
    } else {
        Ok(v)
    }
}

/// `1F1(alpha; gamma; t) * 1F1(1-alpha+m1; 2-gamma+m2; -t)` as a series.
fn product_one(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    order: usize,
) -> Result<FormalSeries> {
    let f = FormalSeries::hypergeometric(&SeriesSpec::f11(alpha.clone(), gamma.clone(), one()), order)?;
    let g = FormalSeries::hypergeometric(
        &SeriesSpec::f11(&one() - alpha + &ri(m1), &ri(2) - gamma + &ri(m2), -one()),
        order,
    )?;
    f.mul(&g)
}

/// `1F1(1-alpha; 2-gamma; -t) * 1F1(alpha-m1; gamma-m2; t)` as a series.
fn product_two(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    order: usize,
) -> Result<FormalSeries> {
    let f = FormalSeries::hypergeometric(
        &SeriesSpec::f11(&one() - alpha, &ri(2) - gamma, -one()),
        order,
    )?;
    let g = FormalSeries::hypergeometric(
        &SeriesSpec::f11(alpha - &ri(m1), gamma - &ri(m2), one()),
        order,
    )?;
    f.mul(&g)
}

// ---------------------------------------------------------------------------
// coefficient formulas
// ---------------------------------------------------------------------------

/// Coefficient of `t^n` in the first shifted product, from the written sum:
///
/// `L(n) = (1-a)_{m1}/(2-g)_{m2} * sum_{k=0}^{n-(m2)+}
///   (a)_k (1-a+m1)_{n-(m2)+-k} (-1)^{n-(m2)+-k}
///   / ((g)_k (2-g+m2)_{n-(m2)+-k} k! (n-(m2)+-k)!)`
pub fn coeff_l(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    n: i64,
    mutant: Option<Mutant>,
) -> Result<Rational> {
    let upper = n - pos(m2);
    if upper < 0 {
        return Err(Error::InvalidHypothesis(format!(
            "coefficient index n = {n} below the shift ({})",
            pos(m2)
        )));
    }
    let front = pochhammer(&(&one() - alpha), m1)?
        / nonzero(pochhammer(&(&ri(2) - gamma), m2)?, "(2-gamma)_{m2}")?;
    let mut sum = Rational::zero();
    for k in 0..=upper {
        let j = upper - k;
        let sign_exp = if mutant == Some(Mutant::Thm2CoeffSignFlip) {
            j + 1
        } else {
            j
        };
        let num = pochhammer(alpha, k)? * pochhammer(&(&one() - alpha + &ri(m1)), j)?
            * neg_one_pow(sign_exp);
        let den = nonzero(pochhammer(gamma, k)?, "(gamma)_k")?
            * nonzero(
                pochhammer(&(&ri(2) - gamma + &ri(m2)), j)?,
                "(2-gamma+m2)_j",
            )?
            * factorial(k as u64)
            * factorial(j as u64);
        sum += &(num / den);
    }
    Ok(front * sum)
}

/// Coefficient of `t^n` in the second shifted product, from the written sum:
///
/// `R(n) = (1-g)_{m2} (g-a)_{m1-m2} * sum_{k=0}^{n-(-m2)+}
///   (1-a)_k (a-m1)_{n-(-m2)+-k} (-1)^k
///   / ((2-g)_k (g-m2)_{n-(-m2)+-k} k! (n-(-m2)+-k)!)`
pub fn coeff_r(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    n: i64,
) -> Result<Rational> {
    let upper = n - pos(-m2);
    if upper < 0 {
        return Err(Error::InvalidHypothesis(format!(
            "coefficient index n = {n} below the shift ({})",
            pos(-m2)
        )));
    }
    let front = pochhammer(&(&one() - gamma), m2)? * pochhammer(&(gamma - alpha), m1 - m2)?;
    let mut sum = Rational::zero();
    for k in 0..=upper {
        let j = upper - k;
        let num =
            pochhammer(&(&one() - alpha), k)? * pochhammer(&(alpha - &ri(m1)), j)? * neg_one_pow(k);
        let den = nonzero(pochhammer(&(&ri(2) - gamma), k)?, "(2-gamma)_k")?
            * nonzero(pochhammer(&(gamma - &ri(m2)), j)?, "(gamma-m2)_j")?
            * factorial(k as u64)
            * factorial(j as u64);
        sum += &(num / den);
    }
    Ok(front * sum)
}

/// The remainder polynomial: coefficients `L(n) - R(n)` for
/// `0 <= n <= max(|m1|, |m2-m1|) - 1` (terms below a shift contribute zero).
pub fn remainder_poly(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    mutant: Option<Mutant>,
) -> Result<RatPoly> {
    if m1 == 0 && m2 == 0 {
        return Err(Error::InvalidHypothesis("m1^2 + m2^2 > 0 violated".into()));
    }
    let rmax = m1.abs().max((m2 - m1).abs());
    let mut coeffs = Vec::new();
    for n in 0..rmax {
        let l = if n >= pos(m2) {
            coeff_l(alpha, gamma, m1, m2, n, mutant)?
        } else {
            Rational::zero()
        };
        let r = if n >= pos(-m2) {
            coeff_r(alpha, gamma, m1, m2, n)?
        } else {
            Rational::zero()
        };
        coeffs.push(l - r);
    }
    Ok(RatPoly::new(coeffs))
}

// ---------------------------------------------------------------------------
// full series sides
// ---------------------------------------------------------------------------

/// Both sides of the product reduction as order-`order` series: the full
/// left-hand combination against the remainder polynomial.
pub fn thm2_sides(
    alpha: &Rational,
    gamma: &Rational,
    m1: i64,
    m2: i64,
    order: usize,
    mutant: Option<Mutant>,
) -> Result<(FormalSeries, FormalSeries)> {
    let scale1 = pochhammer(&(&one() - alpha), m1)?
        / nonzero(pochhammer(&(&ri(2) - gamma), m2)?, "(2-gamma)_{m2}")?;
    let term1 = product_one(alpha, gamma, m1, m2, order)?.shift_scale(pos(m2) as usize, &scale1);
    let scale2 = pochhammer(&(&one() - gamma), m2)? * pochhammer(&(gamma - alpha), m1 - m2)?;
    let term2 = product_two(alpha, gamma, m1, m2, order)?.shift_scale(pos(-m2) as usize, &scale2);
    let left = term1.sub(&term2)?;
    let remainder = remainder_poly(alpha, gamma, m1, m2, mutant)?;
    Ok((left, FormalSeries::from_poly(&remainder, order)))
}

pub(super) fn thm2_validity(inst: &IdentityInstance) -> Result<Validity> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let m1 = get_integer(&inst.params, "m1")?;
    let m2 = get_integer(&inst.params, "m2")?;
    if m1 == 0 && m2 == 0 {
        return Ok(Validity::bad("m1^2 + m2^2 > 0 violated"));
    }
    let order = inst.order as i64;
    let span = order.max(m1.abs().max((m2 - m1).abs()));
    let two = ri(2);
    // denominators of the two prefactors
    if !poch_denominator_ok(&(&two - &gamma), m2) {
        return Ok(Validity::bad("(2-gamma)_{m2} vanishes or is undefined"));
    }
    if !poch_denominator_ok(&(&one() - &gamma), m2)
        || !poch_denominator_ok(&(&one() - &alpha), m1)
        || !poch_denominator_ok(&(&gamma - &alpha), m1 - m2)
    {
        return Ok(Validity::bad("shifted Pochhammer factor undefined"));
    }
    // series bottoms within the truncation order
    for bottom in [
        gamma.clone(),
        &two - &gamma + &ri(m2),
        &two - &gamma,
        &gamma - &ri(m2),
    ] {
        if rising_vanishes(&bottom, span) {
            return Ok(Validity::bad(format!("bottom parameter {bottom} pole")));
        }
    }
    Ok(Validity::ok())
}

pub(super) fn thm2_sides_dispatch(
    inst: &IdentityInstance,
    mutant: Option<Mutant>,
) -> Result<(SideValue, SideValue)> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let m1 = get_integer(&inst.params, "m1")?;
    let m2 = get_integer(&inst.params, "m2")?;
    let (a, b) = thm2_sides(&alpha, &gamma, m1, m2, inst.order as usize, mutant)?;
    Ok((SideValue::Series(a), SideValue::Series(b)))
}

// ---------------------------------------------------------------------------
// printed examples
// ---------------------------------------------------------------------------

/// The `(m1, m2)` pair of a printed example.
pub fn example_m_pair(id: IdentityId) -> (i64, i64) {
    match id {
        IdentityId::Ex1 => (1, 1),
        IdentityId::Ex2 => (0, -1),
        IdentityId::Ex3 => (1, 2),
        IdentityId::Ex4 => (1, 0),
        IdentityId::Ex5 => (-1, 1),
        IdentityId::Ex6 => (2, 4),
        other => panic!("{other} is not a printed example"),
    }
}

/// Printed scales of the two products (the printed sign is part of the
/// scale; the two terms are always added).
fn example_scales(id: IdentityId, alpha: &Rational, gamma: &Rational) -> Result<(Rational, Rational)> {
    let a = alpha;
    let g = gamma;
    Ok(match id {
        IdentityId::Ex1 => (
            (a - &one()) / nonzero((g - &one()) * (g - &ri(2)), "(gamma-1)(gamma-2)")?,
            one(),
        ),
        IdentityId::Ex2 => (
            one(),
            -(g - a) / nonzero(g * &(g - &one()), "gamma(gamma-1)")?,
        ),
        IdentityId::Ex3 => (
            (&one() - a) * (g - a - &one())
                / nonzero(
                    (g - &ri(2)) * pochhammer(&(&one() - g), 3)?,
                    "(gamma-2)(1-gamma)_3",
                )?,
            one(),
        ),
        IdentityId::Ex4 => {
            let d = nonzero(&one() - g, "1-gamma")?;
            (&(&one() - a) / &d, &(-(g - a)) / &d)
        }
        IdentityId::Ex5 => (
            pochhammer(&(g - a - &ri(2)), 2)?
                / nonzero(pochhammer(&(&one() - g), 2)?, "(1-gamma)_2")?,
            a.clone(),
        ),
        IdentityId::Ex6 => (
            pochhammer(&(g - a - &ri(2)), 2)? * pochhammer(&(&one() - a), 2)?
                / nonzero(pochhammer(&(&one() - g), 5)?, "(1-gamma)_5")?,
            -pochhammer(&(&ri(2) - g), 3)?,
        ),
        other => panic!("{other} is not a printed example"),
    })
}

/// The printed right-side polynomial.
pub fn example_rhs(id: IdentityId, alpha: &Rational, gamma: &Rational) -> RatPoly {
    match id {
        IdentityId::Ex1 | IdentityId::Ex2 | IdentityId::Ex3 | IdentityId::Ex4 => {
            RatPoly::constant(one())
        }
        IdentityId::Ex5 => RatPoly::new(vec![alpha.clone(), one()]),
        IdentityId::Ex6 => RatPoly::new(vec![
            crate::rational::pochhammer_ok(&(gamma - &ri(4)), 3),
            (&ri(2) * alpha - gamma) * (gamma - &ri(3)),
        ]),
        other => panic!("{other} is not a printed example"),
    }
}

/// The factor by which the printed equation differs from the raw reduction:
/// `printed left side = normalization * raw left side`.
pub fn example_normalization(
    id: IdentityId,
    alpha: &Rational,
    gamma: &Rational,
) -> Result<Rational> {
    let a = alpha;
    let g = gamma;
    Ok(match id {
        IdentityId::Ex1 => nonzero(g - &one(), "gamma-1")?.recip(),
        IdentityId::Ex2 | IdentityId::Ex4 => nonzero(&one() - g, "1-gamma")?.recip(),
        IdentityId::Ex3 => {
            -(g - a - &one()) / nonzero((&one() - g) * (&ri(2) - g), "(1-gamma)(2-gamma)")?
        }
        IdentityId::Ex5 => {
            a * &pochhammer(&(g - a - &ri(2)), 2)? / nonzero(g - &one(), "gamma-1")?
        }
        IdentityId::Ex6 => {
            pochhammer(&(&ri(2) - g), 3)? * pochhammer(&(g - a - &ri(2)), 2)?
                / nonzero(pochhammer(&(&one() - g), 4)?, "(1-gamma)_4")?
        }
        other => panic!("{other} is not a printed example"),
    })
}

/// Both sides of a printed example as order-`order` series, exactly as
/// printed: shifted-scaled products on the left, the printed polynomial on
/// the right.
pub fn example_sides(
    id: IdentityId,
    alpha: &Rational,
    gamma: &Rational,
    order: usize,
) -> Result<(FormalSeries, FormalSeries)> {
    let (m1, m2) = example_m_pair(id);
    let (s1, s2) = example_scales(id, alpha, gamma)?;
    let t1 = product_one(alpha, gamma, m1, m2, order)?.shift_scale(pos(m2) as usize, &s1);
    let t2 = product_two(alpha, gamma, m1, m2, order)?.shift_scale(pos(-m2) as usize, &s2);
    let left = t1.add(&t2)?;
    let right = FormalSeries::from_poly(&example_rhs(id, alpha, gamma), order);
    Ok((left, right))
}

pub(super) fn example_validity(inst: &IdentityInstance) -> Result<Validity> {
    let _alpha = get_rational(&inst.params, "alpha")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let (_m1, m2) = example_m_pair(inst.id);
    // excluded gamma integers: the printed scale denominators
    let excluded: &[i64] = match inst.id {
        IdentityId::Ex1 => &[1, 2],
        IdentityId::Ex2 => &[0, 1],
        IdentityId::Ex3 => &[1, 2, 3],
        IdentityId::Ex4 => &[1],
        IdentityId::Ex5 => &[1, 2],
        IdentityId::Ex6 => &[1, 2, 3, 4, 5],
        _ => unreachable!(),
    };
    if let Some(g) = gamma.as_i64() {
        if excluded.contains(&g) {
            return Ok(Validity::bad(format!(
                "gamma = {g} is a pole of the printed scales"
            )));
        }
    }
    let order = inst.order as i64;
    let two = ri(2);
    for bottom in [
        gamma.clone(),
        &two - &gamma + &ri(m2),
        &two - &gamma,
        &gamma - &ri(m2),
    ] {
        if rising_vanishes(&bottom, order) {
            return Ok(Validity::bad(format!("bottom parameter {bottom} pole")));
        }
    }
    Ok(Validity::ok())
}

pub(super) fn example_sides_dispatch(inst: &IdentityInstance) -> Result<(SideValue, SideValue)> {
    let alpha = get_rational(&inst.params, "alpha")?;
    let gamma = get_rational(&inst.params, "gamma")?;
    let (a, b) = example_sides(inst.id, &alpha, &gamma, inst.order as usize)?;
    Ok((SideValue::Series(a), SideValue::Series(b)))
}

#[cfg(test)]
mod tests {
    use super::super::summation::{cor1_lhs_typed, cor1_rhs_typed};
    use super::*;
    use crate::eval::eval_terminating;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(num, den)
    }

    const EXAMPLES: [IdentityId; 6] = [
        IdentityId::Ex1,
        IdentityId::Ex2,
        IdentityId::Ex3,
        IdentityId::Ex4,
        IdentityId::Ex5,
        IdentityId::Ex6,
    ];

    fn sample_pairs() -> Vec<(Rational, Rational)> {
        vec![
            (r(1, 3), r(5, 7)),
            (r(-4, 7), r(9, 11)),
            (r(2, 11), r(-5, 13)),
            (r(8, 7), r(-12, 11)),
        ]
    }

    #[test]
    fn coeff_l_and_r_base_cases() {
        // single k = 0 terms
        assert_eq!(
            coeff_l(&r(1, 3), &r(5, 7), 1, 0, 0, None).unwrap(),
            r(2, 3)
        );
        assert_eq!(coeff_r(&r(1, 3), &r(5, 7), 1, 0, 0).unwrap(), r(8, 21));
    }

    #[test]
    fn coefficients_match_series_products() {
        let order = 18usize;
        for (alpha, gamma) in sample_pairs() {
            for (m1, m2) in [(1i64, 1i64), (2, 4), (-1, 1), (0, -1), (-2, -3), (3, -2)] {
                let s1 = pochhammer(&(&Rational::one() - &alpha), m1).unwrap()
                    / pochhammer(&(&ri(2) - &gamma), m2).unwrap();
                let series1 = product_one(&alpha, &gamma, m1, m2, order)
                    .unwrap()
                    .shift_scale(pos(m2) as usize, &s1);
                let s2 = pochhammer(&(&Rational::one() - &gamma), m2).unwrap()
                    * pochhammer(&(&gamma - &alpha), m1 - m2).unwrap();
                let series2 = product_two(&alpha, &gamma, m1, m2, order)
                    .unwrap()
                    .shift_scale(pos(-m2) as usize, &s2);
                for n in 0..order as i64 {
                    let l = if n >= pos(m2) {
                        coeff_l(&alpha, &gamma, m1, m2, n, None).unwrap()
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(
                        &l,
                        series1.coeff(n as usize),
                        "L({n}) vs series, m1={m1} m2={m2} alpha={alpha} gamma={gamma}"
                    );
                    let rr = if n >= pos(-m2) {
                        coeff_r(&alpha, &gamma, m1, m2, n).unwrap()
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(
                        &rr,
                        series2.coeff(n as usize),
                        "R({n}) vs series, m1={m1} m2={m2}"
                    );
                }
            }
        }
    }

    #[test]
    fn coefficients_agree_past_the_remainder_degree() {
        for (alpha, gamma) in sample_pairs() {
            for m1 in -3..=3i64 {
                for m2 in -3..=3i64 {
                    if m1 == 0 && m2 == 0 {
                        continue;
                    }
                    let start = m1.abs().max((m2 - m1).abs()).max(pos(m2)).max(pos(-m2));
                    for n in start..start + 6 {
                        let l = coeff_l(&alpha, &gamma, m1, m2, n, None).unwrap();
                        let rr = coeff_r(&alpha, &gamma, m1, m2, n).unwrap();
                        assert_eq!(l, rr, "m1={m1} m2={m2} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn nonnegative_shift_reduction_matches_transformation_sides() {
        // for m2 >= 0 the written sums reduce to the two-shift
        // transformation's sides
        let (alpha, gamma) = (r(1, 3), r(5, 7));
        for (m1, m2) in [(1i64, 1i64), (2, 4), (0, 2), (-1, 1), (3, 0)] {
            assert!(m2 >= 0);
            for n in m2.max(0)..m2.max(0) + 5 {
                let l = coeff_l(&alpha, &gamma, m1, m2, n, None).unwrap();
                let via_rhs = cor1_rhs_typed(&alpha, &gamma, m1, m2, n, None).unwrap();
                assert_eq!(l, via_rhs, "L({n}) reduction, m1={m1} m2={m2}");
                let rr = coeff_r(&alpha, &gamma, m1, m2, n).unwrap();
                let via_lhs = cor1_lhs_typed(&alpha, &gamma, m1, m2, n).unwrap();
                assert_eq!(rr, via_lhs, "R({n}) reduction, m1={m1} m2={m2}");
            }
        }
    }

    #[test]
    fn negative_shift_rewritten_forms() {
        // the proof's m2 < 0 rewriting in primed variables, checked term for
        // term against the direct sums
        let one = Rational::one;
        for (alpha, gamma) in sample_pairs() {
            for (m1, m2) in [(0i64, -1i64), (-2, -3), (3, -2), (-1, -1)] {
                assert!(m2 < 0);
                let (m1p, m2p) = (-m1, -m2);
                for n in m2p..m2p + 4 {
                    // L(n) rewritten
                    let l_direct = coeff_l(&alpha, &gamma, m1, m2, n, None).unwrap();
                    let pre = neg_one_pow(m1p - m2p + n)
                        * pochhammer(&(&gamma - &one()), m2p).unwrap()
                        * pochhammer(&(&one() - &alpha - &ri(m1p)), n).unwrap()
                        / (pochhammer(&alpha, m1p).unwrap()
                            * pochhammer(&(&ri(2) - &gamma - &ri(m2p)), n).unwrap()
                            * factorial(n as u64));
                    let inner = eval_terminating(&SeriesSpec::f32(
                        [ri(-n), alpha.clone(), &gamma - &one() + &ri(m2p - n)],
                        [gamma.clone(), &alpha + &ri(m1p - n)],
                        one(),
                    ))
                    .unwrap();
                    assert_eq!(l_direct, pre * inner, "L({n}) m1={m1} m2={m2}");

                    // R(n) rewritten
                    let r_direct = coeff_r(&alpha, &gamma, m1, m2, n).unwrap();
                    let pre = neg_one_pow(m1p)
                        * pochhammer(&(&alpha + &ri(m1p)), n - m2p).unwrap()
                        / (pochhammer(&(&one() - &gamma + &alpha), m1p - m2p).unwrap()
                            * pochhammer(&gamma, m2p).unwrap()
                            * pochhammer(&(&gamma + &ri(m2p)), n - m2p).unwrap()
                            * factorial((n - m2p) as u64));
                    let inner = eval_terminating(&SeriesSpec::f32(
                        [ri(m2p - n), &one() - &alpha, &one() - &gamma - &ri(n)],
                        [&ri(2) - &gamma, &one() - &alpha + &ri(m2p - m1p - n)],
                        one(),
                    ))
                    .unwrap();
                    assert_eq!(r_direct, pre * inner, "R({n}) m1={m1} m2={m2}");
                }
            }
        }
    }

    #[test]
    fn remainder_degree_bound_and_known_constants() {
        for (alpha, gamma) in sample_pairs() {
            for m1 in -4..=4i64 {
                for m2 in -4..=4i64 {
                    if m1 == 0 && m2 == 0 {
                        continue;
                    }
                    let p = remainder_poly(&alpha, &gamma, m1, m2, None).unwrap();
                    let bound = m1.abs().max((m2 - m1).abs()) - 1;
                    if let Some(d) = p.degree() {
                        assert!(
                            (d as i64) <= bound,
                            "degree {d} > {bound} at m1={m1} m2={m2}"
                        );
                    }
                }
            }
        }
        // raw constant for the first example pair is gamma - 1
        let (alpha, gamma) = (r(1, 3), r(5, 7));
        let p = remainder_poly(&alpha, &gamma, 1, 1, None).unwrap();
        assert_eq!(p, RatPoly::constant(&gamma - &Rational::one()));
    }

    #[test]
    fn normalized_remainder_reproduces_printed_right_sides() {
        for (alpha, gamma) in sample_pairs() {
            for id in EXAMPLES {
                let (m1, m2) = example_m_pair(id);
                let raw = remainder_poly(&alpha, &gamma, m1, m2, None).unwrap();
                let nu = example_normalization(id, &alpha, &gamma).unwrap();
                let printed = example_rhs(id, &alpha, &gamma);
                assert_eq!(
                    raw.scale(&nu),
                    printed,
                    "{id} normalization at alpha={alpha} gamma={gamma}"
                );
            }
        }
    }

    #[test]
    fn printed_examples_hold_as_series_identities() {
        for (alpha, gamma) in sample_pairs() {
            for id in EXAMPLES {
                let (lhs, rhs) = example_sides(id, &alpha, &gamma, 25).unwrap();
                assert_eq!(
                    lhs.first_difference(&rhs),
                    None,
                    "{id} at alpha={alpha} gamma={gamma}"
                );
            }
        }
    }

    #[test]
    fn printed_examples_match_normalized_raw_sides() {
        let order = 20usize;
        for (alpha, gamma) in sample_pairs() {
            for id in EXAMPLES {
                let (m1, m2) = example_m_pair(id);
                let (raw_left, _) = thm2_sides(&alpha, &gamma, m1, m2, order, None).unwrap();
                let nu = example_normalization(id, &alpha, &gamma).unwrap();
                let (printed_left, _) = example_sides(id, &alpha, &gamma, order).unwrap();
                assert_eq!(
                    raw_left.scale(&nu),
                    printed_left,
                    "{id} printed vs normalized raw"
                );
            }
        }
    }

    #[test]
    fn full_reduction_holds_for_sampled_shifts() {
        let order = 16usize;
        for (alpha, gamma) in sample_pairs() {
            for (m1, m2) in [(1i64, 1i64), (2, 4), (-1, 1), (0, -1), (-3, -2), (4, -3), (-4, 4)] {
                let (lhs, rhs) = thm2_sides(&alpha, &gamma, m1, m2, order, None).unwrap();
                assert_eq!(
                    lhs.first_difference(&rhs),
                    None,
                    "m1={m1} m2={m2} alpha={alpha} gamma={gamma}"
                );
            }
        }
    }

    #[test]
    fn sign_flip_mutant_breaks_the_remainder() {
        // (m1, m2) = (2, 1): the first-product sum contributes at n = 1, so
        // the flipped sign reaches the remainder
        let (alpha, gamma) = (r(1, 3), r(5, 7));
        let good = remainder_poly(&alpha, &gamma, 2, 1, None).unwrap();
        let bad = remainder_poly(&alpha, &gamma, 2, 1, Some(Mutant::Thm2CoeffSignFlip)).unwrap();
        assert_ne!(good, bad);
    }
}
