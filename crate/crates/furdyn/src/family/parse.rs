//! The compact descriptor grammar:
//! `B | cf | synd | thick | tsynd | ud>a | ld>=b | bud>a | bld>=b | k(<desc>)`.

use std::fmt;
use std::str::FromStr;

use super::{FamilyDescriptor, FamilyError};

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::InfiniteSets => write!(f, "B"),
            FamilyDescriptor::Cofinite => write!(f, "cf"),
            FamilyDescriptor::Syndetic => write!(f, "synd"),
            FamilyDescriptor::Thick => write!(f, "thick"),
            FamilyDescriptor::ThicklySyndetic => write!(f, "tsynd"),
            FamilyDescriptor::UpperDensityAbove(a) => write!(f, "ud>{a}"),
            FamilyDescriptor::LowerDensityAtLeast(b) => write!(f, "ld>={b}"),
            FamilyDescriptor::BanachUpperAbove(a) => write!(f, "bud>{a}"),
            FamilyDescriptor::BanachLowerAtLeast(b) => write!(f, "bld>={b}"),
            FamilyDescriptor::DualOf(inner) => write!(f, "k({inner})"),
        }
    }
}

impl FromStr for FamilyDescriptor {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse_err = |reason: &str| FamilyError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        match t {
            "B" => return Ok(FamilyDescriptor::InfiniteSets),
            "cf" => return Ok(FamilyDescriptor::Cofinite),
            "synd" => return Ok(FamilyDescriptor::Syndetic),
            "thick" => return Ok(FamilyDescriptor::Thick),
            "tsynd" => return Ok(FamilyDescriptor::ThicklySyndetic),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("k(").and_then(|r| r.strip_suffix(')')) {
            return Ok(FamilyDescriptor::dual_of(inner.parse()?));
        }
        let num = |v: &str| -> Result<f64, FamilyError> {
            v.trim()
                .parse::<f64>()
                .map_err(|_| parse_err("bad density parameter"))
        };
        if let Some(v) = t.strip_prefix("ld>=") {
            return FamilyDescriptor::lower_density_at_least(num(v)?);
        }
        if let Some(v) = t.strip_prefix("bld>=") {
            return FamilyDescriptor::banach_lower_at_least(num(v)?);
        }
        if let Some(v) = t.strip_prefix("ud>") {
            return FamilyDescriptor::upper_density_above(num(v)?);
        }
        if let Some(v) = t.strip_prefix("bud>") {
            return FamilyDescriptor::banach_upper_above(num(v)?);
        }
        Err(parse_err(
            "expected one of: B, cf, synd, thick, tsynd, ud>a, ld>=b, bud>a, bld>=b, k(<desc>)",
        ))
    }
}
