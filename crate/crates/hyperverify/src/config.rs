//! Sweep configuration files.
//!
//! A config file is a TOML document with a single `[sweep]` table. Every
//! schema parameter of the chosen identity must be covered by exactly one of
//! `int_ranges` (inclusive integer bounds), `rational_grids` (explicit `p/q`
//! value lists) or the `rationals` sampler; integer-kind parameters only by
//! `int_ranges`. The grammar is documented in the repository README.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{IdentityId, Mode, Mutant, ParamKind};
use crate::error::{Error, Result};
use crate::numeric::{self, NumericSettings};
use crate::rational::{parse_decimal, Rational};
use crate::sampler::admissible_range;

fn default_order() -> u32 {
    30
}

/// Random-sample specification for rational parameters not covered by a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerSpec {
    /// Denominators cycled over the sampled parameters in schema order.
    pub denominators: Vec<u32>,
    /// Default numerator range `[-numerator_bound, numerator_bound]`.
    pub numerator_bound: i64,
    /// Number of sampled tuples.
    pub count: u32,
    /// Per-parameter numerator range overrides.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, [i64; 2]>,
}

/// Numeric-mode settings as written in config files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericConfig {
    pub precision_bits: u32,
    /// Decimal or scientific literal, e.g. `"1e-30"`.
    pub target_abs_err: String,
}

impl NumericConfig {
    pub fn to_settings(&self) -> Result<NumericSettings> {
        let target = parse_decimal(&self.target_abs_err)?;
        if target.is_zero() || target.is_negative() {
            return Err(Error::Config("target_abs_err must be positive".into()));
        }
        Ok(NumericSettings {
            precision_bits: self.precision_bits,
            target_abs_err: target,
        })
    }
}

/// One sweep: an identity, parameter coverage, and reproducibility settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub identity: String,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_order")]
    pub order: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub int_ranges: BTreeMap<String, [i64; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rational_grids: BTreeMap<String, Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rationals: Option<SamplerSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericConfig>,
    /// Test-only evaluator corruption; never read from config files.
    #[serde(skip)]
    pub mutant: Option<Mutant>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    sweep: SweepConfig,
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: SweepFile =
            toml::from_str(text).map_err(|e| Error::Config(format!("bad sweep config: {e}")))?;
        file.sweep.validate()?;
        Ok(file.sweep)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            sweep: &'a SweepConfig,
        }
        toml::to_string_pretty(&Out { sweep: self }).expect("config serializes")
    }

    pub fn identity_id(&self) -> Result<IdentityId> {
        IdentityId::from_tag(&self.identity)
    }

    pub fn numeric_settings(&self) -> Result<NumericSettings> {
        match &self.numeric {
            Some(n) => n.to_settings(),
            None => Ok(NumericSettings {
                precision_bits: numeric::DEFAULT_PRECISION_BITS,
                target_abs_err: numeric::default_target_abs_err(),
            }),
        }
    }

    /// The rational parameters served by the sampler, in schema order,
    /// paired with their assigned denominators and numerator ranges.
    pub fn sampled_params(&self) -> Result<Vec<(String, u32, i64, i64)>> {
        let id = self.identity_id()?;
        let spec = match &self.rationals {
            Some(s) => s,
            None => return Ok(Vec::new()),
        };
        if spec.denominators.is_empty() {
            return Err(Error::Config("sampler needs at least one denominator".into()));
        }
        let mut out = Vec::new();
        let mut index = 0usize;
        for p in id.schema().params {
            if p.kind != ParamKind::Rational {
                continue;
            }
            if self.int_ranges.contains_key(p.name) || self.rational_grids.contains_key(p.name) {
                continue;
            }
            let q = spec.denominators[index % spec.denominators.len()];
            let [lo, hi] = spec
                .overrides
                .get(p.name)
                .copied()
                .unwrap_or([-spec.numerator_bound, spec.numerator_bound]);
            out.push((p.name.to_string(), q, lo, hi));
            index += 1;
        }
        Ok(out)
    }

    /// Structural validation: tag, coverage, ranges, numeric settings.
    pub fn validate(&self) -> Result<()> {
        let id = self.identity_id()?;
        let schema = id.schema();
        let known = |name: &String| schema.params.iter().any(|p| p.name == *name);
        for name in self.int_ranges.keys() {
            if !known(name) {
                return Err(Error::Config(format!(
                    "unknown parameter `{name}` in int_ranges for {id}"
                )));
            }
        }
        for name in self.rational_grids.keys() {
            if !known(name) {
                return Err(Error::Config(format!(
                    "unknown parameter `{name}` in rational_grids for {id}"
                )));
            }
        }
        if let Some(s) = &self.rationals {
            for name in s.overrides.keys() {
                if !known(name) {
                    return Err(Error::Config(format!(
                        "unknown parameter `{name}` in sampler overrides for {id}"
                    )));
                }
            }
            if s.count == 0 {
                return Err(Error::Config("sampler count must be positive".into()));
            }
        }
        // an empty integer range (lo > hi) is allowed: it enumerates zero
        // instances and the report carries the nothing-checked flag
        for (name, values) in &self.rational_grids {
            if values.is_empty() {
                return Err(Error::Config(format!("empty grid for `{name}`")));
            }
        }
        for p in schema.params {
            let in_ints = self.int_ranges.contains_key(p.name);
            let in_grid = self.rational_grids.contains_key(p.name);
            match p.kind {
                ParamKind::Integer => {
                    if !in_ints {
                        return Err(Error::Config(format!(
                            "integer parameter `{}` needs an entry in int_ranges",
                            p.name
                        )));
                    }
                    if in_grid {
                        return Err(Error::Config(format!(
                            "integer parameter `{}` cannot come from rational_grids",
                            p.name
                        )));
                    }
                }
                ParamKind::Rational => {
                    let sampled = self.rationals.is_some();
                    if in_ints && in_grid {
                        return Err(Error::Config(format!(
                            "parameter `{}` covered twice",
                            p.name
                        )));
                    }
                    if !in_ints && !in_grid && !sampled {
                        return Err(Error::Config(format!(
                            "rational parameter `{}` is not covered by int_ranges, \
                             rational_grids or a sampler",
                            p.name
                        )));
                    }
                }
            }
        }
        for (name, q, lo, hi) in self.sampled_params()? {
            admissible_range(q, lo, hi).map_err(|e| {
                Error::Config(format!("sampler range for `{name}` is unusable: {e}"))
            })?;
        }
        if self.mode == Mode::Numeric {
            if !schema.numeric_capable {
                return Err(Error::Config(format!("{id} has no numeric mode")));
            }
            self.numeric_settings()?;
        }
        Ok(())
    }
}
