//! The identity catalog: every verified identity compiled into data.
//!
//! Each identity has a tag, a parameter schema, a validity predicate that
//! mirrors its hypotheses and pole conditions, and a pair of independently
//! evaluable side evaluators. The schema table is serializable so the CLI
//! `list` output and the C API manifest are generated, not hard-coded prose.

pub mod classical;
pub mod linear;
pub mod product;
pub mod summation;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::numeric::NumericSettings;
use crate::rational::Rational;
use crate::series::FormalSeries;

/// Tags of all identities in the catalog.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Thm1,
    Km,
    K74,
    Pbm,
    Rjrjr,
    Cor1,
    Thm2,
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Lem3,
    Thm4,
    Euler,
    Gauss,
    Kummer,
}

pub const ALL_IDENTITIES: [IdentityId; 18] = [
    IdentityId::Thm1,
    IdentityId::Km,
    IdentityId::K74,
    IdentityId::Pbm,
    IdentityId::Rjrjr,
    IdentityId::Cor1,
    IdentityId::Thm2,
    IdentityId::Ex1,
    IdentityId::Ex2,
    IdentityId::Ex3,
    IdentityId::Ex4,
    IdentityId::Ex5,
    IdentityId::Ex6,
    IdentityId::Lem3,
    IdentityId::Thm4,
    IdentityId::Euler,
    IdentityId::Gauss,
    IdentityId::Kummer,
];

impl IdentityId {
    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::Thm1 => "THM1",
            IdentityId::Km => "KM",
            IdentityId::K74 => "K74",
            IdentityId::Pbm => "PBM",
            IdentityId::Rjrjr => "RJRJR",
            IdentityId::Cor1 => "COR1",
            IdentityId::Thm2 => "THM2",
            IdentityId::Ex1 => "EX1",
            IdentityId::Ex2 => "EX2",
            IdentityId::Ex3 => "EX3",
            IdentityId::Ex4 => "EX4",
            IdentityId::Ex5 => "EX5",
            IdentityId::Ex6 => "EX6",
            IdentityId::Lem3 => "LEM3",
            IdentityId::Thm4 => "THM4",
            IdentityId::Euler => "EULER",
            IdentityId::Gauss => "GAUSS",
            IdentityId::Kummer => "KUMMER",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        ALL_IDENTITIES
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(tag))
            .ok_or_else(|| Error::Parse(format!("unknown identity tag `{tag}`")))
    }

    pub fn schema(self) -> &'static IdentitySchema {
        &SCHEMAS[ALL_IDENTITIES.iter().position(|&i| i == self).unwrap()]
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Rational,
    Integer,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
}

const fn rat(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Rational,
    }
}

const fn int(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Integer,
    }
}

/// Schema of one identity: the contract between the catalog, the sweep
/// configuration and the CLI.
#[derive(Clone, Copy, Debug)]
pub struct IdentitySchema {
    pub id: IdentityId,
    /// Descriptive formula label shown by `list`.
    pub label: &'static str,
    pub params: &'static [ParamSpec],
    /// Human-readable hypothesis line.
    pub hypothesis: &'static str,
    /// Whether the check is a truncated-series comparison (consumes order).
    pub series: bool,
    /// Whether numeric mode is available (non-integer parameter branch).
    pub numeric_capable: bool,
}

static SCHEMAS: [IdentitySchema; 18] = [
    IdentitySchema {
        id: IdentityId::Thm1,
        label: "3F2(1) summation with two integral parameter shifts",
        params: &[rat("a"), rat("b"), rat("c"), int("l"), int("r")],
        hypothesis: "l >= 0; c <= r-l with -c a nonnegative integer (exact mode), or \
                     non-integer c < r-l with series excess 1-l+r-c >= 3 and c <= -2 \
                     (numeric mode); both sides are zero when r < 0",
        series: false,
        numeric_capable: true,
    },
    IdentitySchema {
        id: IdentityId::Km,
        label: "Karlsson-Minton summation",
        params: &[rat("alpha"), rat("beta"), rat("gamma"), int("l")],
        hypothesis: "l >= 0; gamma < 1-l; exact mode requires gamma a non-positive integer",
        series: false,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::K74,
        label: "Karlsson shifted-bottom expansion",
        params: &[rat("beta"), rat("delta"), rat("gamma"), rat("eta"), int("r")],
        hypothesis: "r >= 0; exact mode requires gamma a non-positive integer",
        series: false,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Pbm,
        label: "Karlsson-Minton summation with shifted bottom parameter",
        params: &[rat("alpha"), rat("beta"), rat("gamma"), int("l"), int("r")],
        hypothesis: "l, r >= 0; gamma < 1-l; exact mode requires gamma a non-positive integer",
        series: false,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Rjrjr,
        label: "terminating 3F2(1) transformation",
        params: &[rat("a"), rat("b"), rat("d"), rat("e"), int("r")],
        hypothesis: "r >= 0; (d)_r and (e)_r nonzero",
        series: false,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Cor1,
        label: "terminating 3F2(1) transformation with two integer shifts",
        params: &[rat("alpha"), rat("gamma"), int("m1"), int("m2"), int("n")],
        hypothesis: "n >= 0 and n >= max(m1, m2-m1); both sides vanish when n < m2",
        series: false,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Thm2,
        label: "Kummer-product reduction with polynomial remainder",
        params: &[rat("alpha"), rat("gamma"), int("m1"), int("m2")],
        hypothesis: "m1^2 + m2^2 > 0; remainder degree <= max(|m1|, |m2-m1|) - 1",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Ex1,
        label: "Kummer-product example (m1 = 1, m2 = 1): right side 1",
        params: &[rat("alpha"), rat("gamma")],
        hypothesis: "gamma not in {1, 2}",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Ex2,
        label: "Kummer-product example (m1 = 0, m2 = -1): right side 1",
        params: &[rat("alpha"), rat("gamma")],
        hypothesis: "gamma not in {0, 1}",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Ex3,
        label: "Kummer-product example (m1 = 1, m2 = 2): right side 1",
        params: &[rat("alpha"), rat("gamma")],
        hypothesis: "gamma not in {1, 2, 3}",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Ex4,
        label: "Kummer-product example (m1 = 1, m2 = 0): right side 1",
        params: &[rat("alpha"), rat("gamma")],
        hypothesis: "gamma != 1",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Ex5,
        label: "Kummer-product example (m1 = -1, m2 = 1): right side alpha + t",
        params: &[rat("alpha"), rat("gamma")],
        hypothesis: "gamma not in {1, 2}",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Ex6,
        label: "Kummer-product example (m1 = 2, m2 = 4): right side (gamma-4)_3 + (2 alpha - gamma)(gamma - 3) t",
        params: &[rat("alpha"), rat("gamma")],
        hypothesis: "gamma not in {1, 2, 3, 4, 5}",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Lem3,
        label: "reciprocal-Pochhammer convolution sum (gamma-normalized)",
        params: &[rat("mu"), rat("beta"), int("m")],
        hypothesis: "m >= 0; (mu)_{m+1} and (mu+beta)_{m+1} nonzero",
        series: false,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Thm4,
        label: "Kummer-function linearization",
        params: &[rat("mu"), rat("beta")],
        hypothesis: "mu, mu+beta, mu+1, mu+1+beta avoid non-positive integers within the order",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Euler,
        label: "Euler product reduction for 2F1",
        params: &[rat("a"), rat("b"), rat("c")],
        hypothesis: "c and 2-c avoid non-positive integers within the order",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Gauss,
        label: "Gauss product relation for 2F1: right side 1",
        params: &[rat("a"), rat("b"), rat("c")],
        hypothesis: "c not in {0, 1, -1}; c, -c, 2-c, 2+c avoid non-positive integers within the order",
        series: true,
        numeric_capable: false,
    },
    IdentitySchema {
        id: IdentityId::Kummer,
        label: "Kummer transformation for 1F1",
        params: &[rat("a"), rat("b")],
        hypothesis: "b avoids non-positive integers within the order",
        series: true,
        numeric_capable: false,
    },
];

/// One flattened schema row for the machine-readable manifest.
#[derive(Serialize)]
pub struct ManifestEntry {
    pub tag: &'static str,
    pub label: &'static str,
    pub hypothesis: &'static str,
    pub params: Vec<ManifestParam>,
    pub modes: Vec<&'static str>,
    pub series: bool,
}

#[derive(Serialize)]
pub struct ManifestParam {
    pub name: &'static str,
    pub kind: &'static str,
}

pub fn manifest() -> Vec<ManifestEntry> {
    SCHEMAS
        .iter()
        .map(|s| ManifestEntry {
            tag: s.id.tag(),
            label: s.label,
            hypothesis: s.hypothesis,
            params: s
                .params
                .iter()
                .map(|p| ManifestParam {
                    name: p.name,
                    kind: match p.kind {
                        ParamKind::Rational => "rational",
                        ParamKind::Integer => "integer",
                    },
                })
                .collect(),
            modes: if s.numeric_capable {
                vec!["exact", "numeric"]
            } else {
                vec!["exact"]
            },
            series: s.series,
        })
        .collect()
}

pub fn manifest_json() -> String {
    let doc = serde_json::json!({
        "catalog_version": crate::CATALOG_VERSION,
        "identities": manifest(),
    });
    serde_json::to_string_pretty(&doc).expect("manifest serializes")
}

/// A parameter value: integer-kind parameters stay integers, rational-kind
/// parameters may hold any rational (integer-valued ones included).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamValue {
    Int(i64),
    Rat(Rational),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Rat(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParamValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if let Ok(i) = s.trim().parse::<i64>() {
            return Ok(ParamValue::Int(i));
        }
        s.parse::<Rational>()
            .map(ParamValue::Rat)
            .map_err(serde::de::Error::custom)
    }
}

/// Ordered name -> value map of one instance's parameters.
pub type ParamMap = BTreeMap<String, ParamValue>;

pub fn get_rational(params: &ParamMap, name: &str) -> Result<Rational> {
    match params.get(name) {
        Some(ParamValue::Rat(v)) => Ok(v.clone()),
        Some(ParamValue::Int(v)) => Ok(Rational::from_int(*v)),
        None => Err(Error::Config(format!("missing parameter `{name}`"))),
    }
}

pub fn get_integer(params: &ParamMap, name: &str) -> Result<i64> {
    match params.get(name) {
        Some(ParamValue::Int(v)) => Ok(*v),
        Some(ParamValue::Rat(v)) => v
            .as_i64()
            .ok_or_else(|| Error::Config(format!("parameter `{name}` must be an integer"))),
        None => Err(Error::Config(format!("missing parameter `{name}`"))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        })
    }
}

/// One unit of verification work.
#[derive(Clone, Debug)]
pub struct IdentityInstance {
    pub id: IdentityId,
    pub params: ParamMap,
    pub mode: Mode,
    /// Truncation order for series identities.
    pub order: u32,
    /// Settings for numeric mode.
    pub numeric: NumericSettings,
}

impl IdentityInstance {
    pub fn exact(id: IdentityId, params: ParamMap, order: u32) -> Self {
        IdentityInstance {
            id,
            params,
            mode: Mode::Exact,
            order,
            numeric: NumericSettings::default(),
        }
    }
}

/// Outcome of the hypothesis-and-pole predicate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Validity {
    Valid {
        /// Set on degenerate-but-valid branches, e.g. "both sides vanish".
        note: Option<String>,
    },
    Invalid {
        reason: String,
    },
}

impl Validity {
    fn ok() -> Self {
        Validity::Valid { note: None }
    }

    fn note(note: impl Into<String>) -> Self {
        Validity::Valid {
            note: Some(note.into()),
        }
    }

    fn bad(reason: impl Into<String>) -> Self {
        Validity::Invalid {
            reason: reason.into(),
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid { .. })
    }
}

/// Value of one identity side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideValue {
    Exact(Rational),
    Series(FormalSeries),
    Numeric(BigFloat),
}

impl fmt::Display for SideValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideValue::Exact(v) => write!(f, "{v}"),
            SideValue::Numeric(v) => write!(f, "{v}"),
            SideValue::Series(s) => {
                write!(f, "series(order {}) [", s.order())?;
                let shown = s.order().min(8);
                for (i, c) in s.coeffs().iter().take(shown).enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                if s.order() > shown {
                    write!(f, ", ...")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Test-only corruptions of single catalog evaluators: each flips one sign or
/// shifts one Pochhammer index, and the sweep suite must catch every one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Mutant {
    /// Negates the right-side prefactor of the shifted 3F2 summation.
    Thm1RhsSignFlip,
    /// `(alpha-beta)_l -> (alpha-beta)_{l+1}` in the Karlsson-Minton right side.
    KmRhsShiftedPochhammer,
    /// `(1-alpha)_{n+m1-m2} -> (1-alpha)_{n+m1-m2+1}` in the transformation right side.
    Cor1RhsShiftedPochhammer,
    /// Flips the alternating sign inside the first product-coefficient sum.
    Thm2CoeffSignFlip,
    /// `(b)_r -> (b)_{r+1}` in the terminating-transformation prefactor.
    RjrjrRhsShiftedPochhammer,
}

pub const ALL_MUTANTS: [Mutant; 5] = [
    Mutant::Thm1RhsSignFlip,
    Mutant::KmRhsShiftedPochhammer,
    Mutant::Cor1RhsShiftedPochhammer,
    Mutant::Thm2CoeffSignFlip,
    Mutant::RjrjrRhsShiftedPochhammer,
];

impl Mutant {
    /// The identity whose default sweep must detect this mutant.
    pub fn target(self) -> IdentityId {
        match self {
            Mutant::Thm1RhsSignFlip => IdentityId::Thm1,
            Mutant::KmRhsShiftedPochhammer => IdentityId::Km,
            Mutant::Cor1RhsShiftedPochhammer => IdentityId::Cor1,
            Mutant::Thm2CoeffSignFlip => IdentityId::Thm2,
            Mutant::RjrjrRhsShiftedPochhammer => IdentityId::Rjrjr,
        }
    }
}

// ---------------------------------------------------------------------------
// pole predicates
// ---------------------------------------------------------------------------

/// True when the rising product `(x)_k` vanishes for some `0 <= k <= kmax`,
/// i.e. `x` is an integer in `[-(kmax-1), 0]`.
pub(crate) fn rising_vanishes(x: &Rational, kmax: i64) -> bool {
    if kmax <= 0 || !x.is_integer() {
        return false;
    }
    match x.as_i64() {
        Some(v) => -(kmax - 1) <= v && v <= 0,
        None => false,
    }
}

/// True when `(x)_k` with `k < 0` is undefined, i.e. `x` is an integer in
/// `[1, -k]`.
pub(crate) fn falling_pole(x: &Rational, k: i64) -> bool {
    if k >= 0 || !x.is_integer() {
        return false;
    }
    match x.as_i64() {
        Some(v) => 1 <= v && v <= -k,
        None => false,
    }
}

/// Defined-and-nonzero check for a Pochhammer factor appearing in a
/// denominator.
pub(crate) fn poch_denominator_ok(x: &Rational, k: i64) -> bool {
    if k >= 0 {
        !rising_vanishes(x, k)
    } else {
        // negative-index values are reciprocals of nonzero products
        !falling_pole(x, k)
    }
}

// ---------------------------------------------------------------------------
// validity and evaluation dispatch
// ---------------------------------------------------------------------------

/// Hypothesis-and-pole predicate for one instance.
///
/// `Err` signals malformed parameters (missing name, wrong kind), not an
/// invalid instance.
pub fn validity(instance: &IdentityInstance) -> Result<Validity> {
    if instance.mode == Mode::Numeric && !instance.id.schema().numeric_capable {
        return Ok(Validity::bad(format!(
            "identity {} has no numeric mode",
            instance.id
        )));
    }
    if instance.id.schema().series && instance.order == 0 {
        return Ok(Validity::bad("order must be at least 1"));
    }
    match instance.id {
        IdentityId::Thm1 => summation::thm1_validity(instance),
        IdentityId::Km => summation::km_validity(instance),
        IdentityId::K74 => summation::k74_validity(instance),
        IdentityId::Pbm => summation::pbm_validity(instance),
        IdentityId::Rjrjr => summation::rjrjr_validity(instance),
        IdentityId::Cor1 => summation::cor1_validity(instance),
        IdentityId::Thm2 => product::thm2_validity(instance),
        IdentityId::Ex1
        | IdentityId::Ex2
        | IdentityId::Ex3
        | IdentityId::Ex4
        | IdentityId::Ex5
        | IdentityId::Ex6 => product::example_validity(instance),
        IdentityId::Lem3 => linear::lem3_validity(instance),
        IdentityId::Thm4 => linear::thm4_validity(instance),
        IdentityId::Euler | IdentityId::Gauss | IdentityId::Kummer => {
            classical::classical_validity(instance)
        }
    }
}

/// Evaluates both sides of a (validated) instance. `mutant` injects one of
/// the predefined single-defect corruptions; `None` is the true catalog.
pub fn evaluate_sides(
    instance: &IdentityInstance,
    mutant: Option<Mutant>,
) -> Result<(SideValue, SideValue)> {
    match instance.id {
        IdentityId::Thm1 => summation::thm1_sides(instance, mutant),
        IdentityId::Km => summation::km_sides(instance, mutant),
        IdentityId::K74 => summation::k74_sides(instance),
        IdentityId::Pbm => summation::pbm_sides(instance),
        IdentityId::Rjrjr => summation::rjrjr_sides(instance, mutant),
        IdentityId::Cor1 => summation::cor1_sides(instance, mutant),
        IdentityId::Thm2 => product::thm2_sides_dispatch(instance, mutant),
        IdentityId::Ex1
        | IdentityId::Ex2
        | IdentityId::Ex3
        | IdentityId::Ex4
        | IdentityId::Ex5
        | IdentityId::Ex6 => product::example_sides_dispatch(instance),
        IdentityId::Lem3 => linear::lem3_sides_dispatch(instance),
        IdentityId::Thm4 => linear::thm4_sides_dispatch(instance),
        IdentityId::Euler => classical::euler_sides_dispatch(instance),
        IdentityId::Gauss => classical::gauss_sides_dispatch(instance),
        IdentityId::Kummer => classical::kummer_sides_dispatch(instance),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip_and_manifest_has_all_rows() {
        for id in ALL_IDENTITIES {
            assert_eq!(IdentityId::from_tag(id.tag()).unwrap(), id);
        }
        assert!(IdentityId::from_tag("thm1").is_ok());
        assert!(IdentityId::from_tag("NOPE").is_err());
        let m = manifest();
        assert_eq!(m.len(), 18);
        let json = manifest_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["identities"].as_array().unwrap().len(), 18);
    }

    #[test]
    fn pole_predicates() {
        let ri = Rational::from_int;
        assert!(rising_vanishes(&ri(0), 1));
        assert!(rising_vanishes(&ri(-3), 4));
        assert!(!rising_vanishes(&ri(-3), 3));
        assert!(!rising_vanishes(&ri(1), 10));
        assert!(!rising_vanishes(&Rational::new(-1, 2), 10));
        assert!(falling_pole(&ri(2), -3));
        assert!(!falling_pole(&ri(4), -3));
        assert!(!falling_pole(&Rational::new(5, 2), -3));
    }
}
