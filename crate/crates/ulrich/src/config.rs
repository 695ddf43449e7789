//! Run configuration shared by every subcommand.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context};
use ulrich_core::field::is_prime;

/// Smallest five-digit prime that is 1 mod 4, so `sqrt(-1)` exists and both
/// parities of the genus work without changing fields.
pub const DEFAULT_PRIME: u64 = 10009;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FromStr for FieldSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("F_")
            .or_else(|| s.strip_prefix("GF("))
            .map(|t| t.trim_end_matches(')'))
            .unwrap_or(s);
        let p: u64 = digits
            .parse()
            .with_context(|| format!("field must be Q or an odd prime, got {s:?}"))?;
        if p == 2 || !is_prime(p) {
            bail!("field must be Q or an odd prime, got {p}");
        }
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => f.write_str("Q"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub seed: u64,
    pub format: Format,
    /// Overrides the default kernel degree cap.
    pub degree_cap: Option<i64>,
    pub verbosity: u8,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::default(),
            seed: 0,
            format: Format::Text,
            degree_cap: None,
            verbosity: 0,
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field named by a [`FieldSpec`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::config::FieldSpec::Prime(p) => {
                let $f = ::ulrich_core::PrimeField::new(p)?;
                $body
            }
            $crate::config::FieldSpec::Rationals => {
                let $f = ::ulrich_core::Rationals;
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_one_mod_four() {
        assert!(is_prime(DEFAULT_PRIME));
        assert_eq!(DEFAULT_PRIME % 4, 1);
        assert!((10000..DEFAULT_PRIME).all(|p| !is_prime(p) || p % 4 != 1));
    }

    #[test]
    fn parses_field_names() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("13".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(13));
        assert_eq!("F_13".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(13));
        assert!("2".parse::<FieldSpec>().is_err());
        assert!("15".parse::<FieldSpec>().is_err());
    }
}
