//! Pointwise hypergeometric evaluation: parameter specs, exact terminating
//! sums at rational argument, and the unit-argument convergence margin.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Parameters of a `pFq` series: top and bottom parameter lists plus the
/// argument. In-scope shapes are 1F1, 2F1 and 3F2. When a spec is expanded as
/// a formal series the argument must be `+1` or `-1` and only carries the
/// sign of the formal variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesSpec {
    top: Vec<Rational>,
    bottom: Vec<Rational>,
    argument: Rational,
}

impl SeriesSpec {
    pub fn new(top: Vec<Rational>, bottom: Vec<Rational>, argument: Rational) -> Result<Self> {
        let shape_ok = matches!((top.len(), bottom.len()), (1, 1) | (2, 1) | (3, 2));
        if !shape_ok {
            return Err(Error::InvalidSpec(format!(
                "unsupported shape {}F{}",
                top.len(),
                bottom.len()
            )));
        }
        Ok(SeriesSpec {
            top,
            bottom,
            argument,
        })
    }

    pub fn f11(a: Rational, c: Rational, argument: Rational) -> Self {
        SeriesSpec {
            top: vec![a],
            bottom: vec![c],
            argument,
        }
    }

    pub fn f21(a: Rational, b: Rational, c: Rational, argument: Rational) -> Self {
        SeriesSpec {
            top: vec![a, b],
            bottom: vec![c],
            argument,
        }
    }

    pub fn f32(top: [Rational; 3], bottom: [Rational; 2], argument: Rational) -> Self {
        SeriesSpec {
            top: top.to_vec(),
            bottom: bottom.to_vec(),
            argument,
        }
    }

    pub fn top(&self) -> &[Rational] {
        &self.top
    }

    pub fn bottom(&self) -> &[Rational] {
        &self.bottom
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    /// Truncation index of a terminating series: the smallest `n >= 0` with
    /// `-n` among the top parameters. `None` when no top parameter is a
    /// non-positive integer.
    pub fn terminating_index(&self) -> Option<u64> {
        self.top
            .iter()
            .filter_map(|t| {
                if t.is_integer() && (t.is_zero() || t.is_negative()) {
                    (-t).as_i64().map(|n| n as u64)
                } else {
                    None
                }
            })
            .min()
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating_index().is_some()
    }

    /// Series excess `sum(bottom) - sum(top)`: the convergence margin of the
    /// series at unit argument.
    pub fn excess(&self) -> Rational {
        let sum = |v: &[Rational]| {
            v.iter()
                .fold(Rational::zero(), |acc, x| acc + x)
        };
        sum(&self.bottom) - sum(&self.top)
    }

    /// Largest parameter magnitude, rounded up; used by the numeric
    /// evaluator's minimum-term rule.
    pub fn max_param_magnitude(&self) -> u64 {
        self.top
            .iter()
            .chain(self.bottom.iter())
            .map(Rational::abs_ceil_u64)
            .max()
            .unwrap_or(0)
    }
}

impl std::fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[Rational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}F{}({}; {}; {})",
            self.top.len(),
            self.bottom.len(),
            join(&self.top),
            join(&self.bottom),
            self.argument
        )
    }
}

/// Exact sum of a terminating hypergeometric series at its rational argument.
///
/// Terms are accumulated through the truncation index of the top parameters.
/// A bottom parameter whose Pochhammer factor vanishes at a live index is a
/// pole; if a top factor vanishes first the sum is simply truncated there.
pub fn eval_terminating(spec: &SeriesSpec) -> Result<Rational> {
    let n = spec.terminating_index().ok_or(Error::NotTerminating)?;
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for k in 0..n {
        let mut num = spec.argument().clone();
        for t in spec.top() {
            num *= &(t + &Rational::from_int(k as i64));
        }
        if num.is_zero() {
            break;
        }
        let kk = Rational::from_int(k as i64);
        let mut den = &kk + &Rational::one();
        for b in spec.bottom() {
            let factor = b + &kk;
            if factor.is_zero() {
                return Err(Error::Pole {
                    what: format!("bottom parameter {b}"),
                    index: (k + 1) as i64,
                });
            }
            den *= &factor;
        }
        term = term * num / den;
        sum += &term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(num, den)
    }

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn zero_top_parameter_gives_one() {
        let spec = SeriesSpec::f32(
            [ri(0), r(5, 7), r(-3, 11)],
            [r(9, 7), r(2, 11)],
            Rational::one(),
        );
        assert_eq!(eval_terminating(&spec).unwrap(), Rational::one());
    }

    #[test]
    fn two_term_gauss_sum() {
        // 2F1(1, -1; 2; 1) = 1 - 1/2
        let spec = SeriesSpec::f21(ri(1), ri(-1), ri(2), Rational::one());
        assert_eq!(eval_terminating(&spec).unwrap(), r(1, 2));
    }

    #[test]
    fn karlsson_minton_style_sum() {
        // 3F2(1, 3, -1; 2, 2; 1) = 1 - 3/4
        let spec = SeriesSpec::f32([ri(1), ri(3), ri(-1)], [ri(2), ri(2)], Rational::one());
        assert_eq!(eval_terminating(&spec).unwrap(), r(1, 4));
    }

    #[test]
    fn truncates_at_smallest_top_index() {
        // tops -2 and -5: (-2)_k kills terms from k = 3 on.
        let spec = SeriesSpec::f32([ri(-2), ri(-5), r(1, 7)], [r(3, 7), r(5, 11)], ri(1));
        assert_eq!(spec.terminating_index(), Some(2));
        assert!(eval_terminating(&spec).is_ok());
    }

    #[test]
    fn non_terminating_is_an_error() {
        let spec = SeriesSpec::f21(r(1, 2), r(1, 3), r(5, 7), Rational::one());
        assert_eq!(eval_terminating(&spec).unwrap_err(), Error::NotTerminating);
    }

    #[test]
    fn bottom_pole_before_truncation() {
        // bottom -1 vanishes at index 2, top -4 truncates later: pole.
        let spec = SeriesSpec::f32([ri(-4), r(1, 7), r(2, 11)], [ri(-1), r(5, 7)], ri(1));
        assert!(matches!(
            eval_terminating(&spec),
            Err(Error::Pole { index: 2, .. })
        ));
        // bottom -3 would first vanish at index 4, beyond the truncation at 2.
        let spec = SeriesSpec::f32([ri(-2), r(1, 7), r(2, 11)], [ri(-3), r(5, 7)], ri(1));
        assert!(eval_terminating(&spec).is_ok());
    }

    #[test]
    fn rational_argument() {
        // 2F1(-2, 1; 1; x) = (1-x)^2 at x = 1/3
        let spec = SeriesSpec::f21(ri(-2), ri(1), ri(1), r(1, 3));
        assert_eq!(eval_terminating(&spec).unwrap(), r(4, 9));
    }

    #[test]
    fn excess_values() {
        let spec = SeriesSpec::f32([ri(1), ri(1), ri(1)], [ri(3), ri(3)], ri(1));
        assert_eq!(spec.excess(), ri(3));
        let spec = SeriesSpec::f32([r(1, 2), r(1, 3), r(1, 6)], [ri(1), ri(1)], ri(1));
        assert_eq!(spec.excess(), ri(1));
        // theorem-style left side with a=1, b=1, r=0, l=0, c=-3:
        // (a, b-r, c; a-l, b+1) has excess 1 - l + r - c = 4.
        let spec = SeriesSpec::f32([ri(1), ri(1), ri(-3)], [ri(1), ri(2)], ri(1));
        assert_eq!(spec.excess(), ri(4));
    }

    #[test]
    fn shape_validation() {
        assert!(SeriesSpec::new(vec![ri(1)], vec![ri(1), ri(2)], ri(1)).is_err());
        assert!(SeriesSpec::new(vec![ri(1), ri(2)], vec![ri(1)], ri(1)).is_ok());
    }
}
