//! Symbolic Furstenberg-family algebra and finite-horizon membership verdicts.
//!
//! A [`FamilyDescriptor`] names an upward-closed collection of subsets of
//! `Z+`. The dual table, translation invariance and the filter/Ramsey probes
//! are exact symbolic operations; membership of a concrete [`WindowSet`] is
//! judged three-valued through [`FamilyDescriptor::contains`].

mod checks;
mod contains;
mod parse;
mod sampler;

use serde::Serialize;
use thiserror::Error;

use crate::zset::WindowSet;

pub use checks::{filter_check, ramsey_check};
pub use sampler::sample_member;

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("density parameter {value} outside {range}")]
    ParamRange { value: f64, range: &'static str },
    #[error("cannot parse family descriptor {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("no member sampler for {kind}; supported: B, cf, synd, thick, tsynd, ud>a, ld>=b, bud>a, bld>=b, k(tsynd)")]
    UnsupportedSampler { kind: String },
}

/// Density threshold stored in micro-units so the dual map `a -> 1 - a`
/// is an exact involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DensityParam(u32);

pub const PARAM_ONE: u32 = 1_000_000;

impl DensityParam {
    pub fn from_f64(x: f64) -> Result<Self, FamilyError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(FamilyError::ParamRange {
                value: x,
                range: "[0, 1]",
            });
        }
        Ok(DensityParam((x * PARAM_ONE as f64).round() as u32))
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / PARAM_ONE as f64
    }

    pub fn micro(self) -> u32 {
        self.0
    }

    pub fn one_minus(self) -> Self {
        DensityParam(PARAM_ONE - self.0)
    }
}

impl std::fmt::Display for DensityParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 == PARAM_ONE {
            return write!(f, "1");
        }
        let mut s = format!("{:.6}", self.as_f64());
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
        write!(f, "{s}")
    }
}

/// Symbolic tag for a Furstenberg family over `Z+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyDescriptor {
    /// All infinite subsets.
    InfiniteSets,
    /// Subsets with finite complement.
    Cofinite,
    /// Bounded gaps.
    Syndetic,
    /// Arbitrarily long runs.
    Thick,
    /// Run starts of every length form a syndetic set.
    ThicklySyndetic,
    /// Upper density strictly above the parameter (parameter in [0, 1)).
    UpperDensityAbove(DensityParam),
    /// Lower density at least the parameter (parameter in (0, 1]).
    LowerDensityAtLeast(DensityParam),
    /// Upper Banach density strictly above the parameter.
    BanachUpperAbove(DensityParam),
    /// Lower Banach density at least the parameter.
    BanachLowerAtLeast(DensityParam),
    /// Symbolic dual of a family with no closed-form dual in the table.
    DualOf(Box<FamilyDescriptor>),
}

use FamilyDescriptor::*;

impl FamilyDescriptor {
    pub fn upper_density_above(a: f64) -> Result<Self, FamilyError> {
        let p = DensityParam::from_f64(a)?;
        if p.micro() >= PARAM_ONE {
            return Err(FamilyError::ParamRange {
                value: a,
                range: "[0, 1)",
            });
        }
        Ok(UpperDensityAbove(p))
    }

    pub fn lower_density_at_least(b: f64) -> Result<Self, FamilyError> {
        let p = DensityParam::from_f64(b)?;
        if p.micro() == 0 {
            return Err(FamilyError::ParamRange {
                value: b,
                range: "(0, 1]",
            });
        }
        Ok(LowerDensityAtLeast(p))
    }

    pub fn banach_upper_above(a: f64) -> Result<Self, FamilyError> {
        match Self::upper_density_above(a)? {
            UpperDensityAbove(p) => Ok(BanachUpperAbove(p)),
            _ => unreachable!(),
        }
    }

    pub fn banach_lower_at_least(b: f64) -> Result<Self, FamilyError> {
        match Self::lower_density_at_least(b)? {
            LowerDensityAtLeast(p) => Ok(BanachLowerAtLeast(p)),
            _ => unreachable!(),
        }
    }

    /// Normalizing dual constructor: `dual_of(dual_of(f))` is `f` again.
    pub fn dual_of(f: FamilyDescriptor) -> FamilyDescriptor {
        f.dual()
    }

    /// The symbolic dual `kF`, from the exact table. Only the thickly
    /// syndetic family lacks a closed form and stays wrapped in `DualOf`.
    pub fn dual(&self) -> FamilyDescriptor {
        match self {
            InfiniteSets => Cofinite,
            Cofinite => InfiniteSets,
            Thick => Syndetic,
            Syndetic => Thick,
            UpperDensityAbove(a) => LowerDensityAtLeast(a.one_minus()),
            LowerDensityAtLeast(b) => UpperDensityAbove(b.one_minus()),
            BanachUpperAbove(a) => BanachLowerAtLeast(a.one_minus()),
            BanachLowerAtLeast(b) => BanachUpperAbove(b.one_minus()),
            ThicklySyndetic => DualOf(Box::new(ThicklySyndetic)),
            DualOf(inner) => (**inner).clone(),
        }
    }

    /// Exact symbolic answer: every family in the implemented table is
    /// translation invariant, and the dual of a translation-invariant family
    /// is translation invariant.
    pub fn is_translation_invariant(&self) -> bool {
        match self {
            InfiniteSets | Cofinite | Syndetic | Thick | ThicklySyndetic => true,
            UpperDensityAbove(_) | LowerDensityAtLeast(_) => true,
            BanachUpperAbove(_) | BanachLowerAtLeast(_) => true,
            DualOf(inner) => inner.is_translation_invariant(),
        }
    }

    /// The canonical list of implemented families used by sweeps.
    pub fn standard_zoo() -> Vec<FamilyDescriptor> {
        vec![
            InfiniteSets,
            Cofinite,
            Syndetic,
            Thick,
            ThicklySyndetic,
            Self::upper_density_above(0.3).unwrap(),
            Self::lower_density_at_least(0.7).unwrap(),
            Self::banach_upper_above(0.3).unwrap(),
            Self::banach_lower_at_least(0.7).unwrap(),
            Self::dual_of(ThicklySyndetic),
        ]
    }
}

impl Serialize for FamilyDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Three-valued outcome of a finite-horizon membership or property probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

/// Outcome plus the evidence it rests on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: String,
    pub horizon_used: usize,
}

impl Verdict {
    pub fn holds(witness: impl Into<String>, horizon_used: usize) -> Self {
        let witness = witness.into();
        assert!(!witness.is_empty(), "Holds verdicts carry a witness");
        Verdict {
            outcome: Outcome::Holds,
            witness,
            horizon_used,
        }
    }

    pub fn fails(witness: impl Into<String>, horizon_used: usize) -> Self {
        let witness = witness.into();
        assert!(!witness.is_empty(), "Fails verdicts carry a witness");
        Verdict {
            outcome: Outcome::Fails,
            witness,
            horizon_used,
        }
    }

    pub fn inconclusive(horizon_used: usize) -> Self {
        Verdict {
            outcome: Outcome::Inconclusive,
            witness: String::new(),
            horizon_used,
        }
    }

    pub fn inconclusive_with(witness: impl Into<String>, horizon_used: usize) -> Self {
        Verdict {
            outcome: Outcome::Inconclusive,
            witness: witness.into(),
            horizon_used,
        }
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }
}

/// Thresholds for the three-valued membership tables.
///
/// Defaults keep a wide separation between `Holds` and `Fails` on windows of
/// 10^3 to 10^5 entries.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictPolicy {
    /// Holds threshold for syndetic: `max_gap <= frac * N`.
    pub syndetic_gap_frac: f64,
    /// Fails threshold for syndetic: `max_gap >= frac * N`.
    pub refute_gap_frac: f64,
    /// Fails threshold for thick: `longest_run <= value` (default: ceil(log2 N)).
    pub thick_refute_run: Option<usize>,
    /// Symmetric margin for density estimates.
    pub margin: f64,
    /// Fails threshold for cofinite: complement prefix density at least this.
    pub refute_density: f64,
    /// Smallest Banach subwindow length (default: max(16, N/256)).
    pub banach_min_window: Option<usize>,
}

impl Default for VerdictPolicy {
    fn default() -> Self {
        VerdictPolicy {
            syndetic_gap_frac: 0.02,
            refute_gap_frac: 0.25,
            thick_refute_run: None,
            margin: 0.02,
            refute_density: 0.1,
            banach_min_window: None,
        }
    }
}

impl VerdictPolicy {
    pub(crate) fn thick_refute(&self, n: usize) -> usize {
        self.thick_refute_run
            .unwrap_or_else(|| (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize)
    }

    pub(crate) fn banach_window(&self, n: usize) -> usize {
        self.banach_min_window
            .unwrap_or_else(|| 16.max(n / 256))
            .clamp(1, n)
    }
}

/// Largest power of two not exceeding `floor(sqrt(n))`: the longest run a
/// window of size `n` is asked to certify for thickness.
pub(crate) fn thick_hold_run(n: usize) -> usize {
    let root = (n as f64).sqrt().floor() as usize;
    let mut l = 1usize;
    while l * 2 <= root {
        l *= 2;
    }
    l
}

/// `Holds` on a subset never coexists with `Fails` on a superset
/// (upward closure); exposed for the CLI selftest.
pub fn upward_closed_pair(f: &FamilyDescriptor, small: &WindowSet, big: &WindowSet) -> bool {
    let policy = VerdictPolicy::default();
    let a = f.contains(small, &policy);
    let b = f.contains(big, &policy);
    !(a.is_holds() && b.is_fails())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_table_matches_named_pairs() {
        assert_eq!(Cofinite.dual(), InfiniteSets);
        assert_eq!(InfiniteSets.dual(), Cofinite);
        assert_eq!(Thick.dual(), Syndetic);
        assert_eq!(Syndetic.dual(), Thick);
        let ud = FamilyDescriptor::upper_density_above(0.3).unwrap();
        assert_eq!(
            ud.dual(),
            FamilyDescriptor::lower_density_at_least(0.7).unwrap()
        );
        assert_eq!(ThicklySyndetic.dual(), DualOf(Box::new(ThicklySyndetic)));
    }

    #[test]
    fn dual_is_an_involution_on_the_zoo() {
        for f in FamilyDescriptor::standard_zoo() {
            assert_eq!(f.dual().dual(), f, "k(k({f})) != {f}");
        }
    }

    #[test]
    fn dual_of_normalizes() {
        let f = FamilyDescriptor::dual_of(FamilyDescriptor::dual_of(Syndetic));
        assert_eq!(f, Syndetic);
        assert_eq!(FamilyDescriptor::dual_of(Thick), Syndetic);
    }

    #[test]
    fn everything_in_the_table_is_translation_invariant() {
        for f in FamilyDescriptor::standard_zoo() {
            assert!(f.is_translation_invariant(), "{f}");
            assert!(f.dual().is_translation_invariant(), "k({f})");
        }
    }

    #[test]
    fn param_ranges_are_enforced() {
        assert!(FamilyDescriptor::upper_density_above(1.0).is_err());
        assert!(FamilyDescriptor::upper_density_above(-0.1).is_err());
        assert!(FamilyDescriptor::lower_density_at_least(0.0).is_err());
        assert!(FamilyDescriptor::lower_density_at_least(1.0).is_ok());
        assert!(FamilyDescriptor::upper_density_above(0.0).is_ok());
    }

    #[test]
    fn density_param_duality_is_exact() {
        for a in [0.0, 0.1, 0.3, 0.333333, 0.5, 0.7, 0.999999] {
            let p = DensityParam::from_f64(a).unwrap();
            assert_eq!(p.one_minus().one_minus(), p);
        }
    }

    #[test]
    fn thick_hold_run_scales_with_sqrt() {
        assert_eq!(thick_hold_run(4096), 64);
        assert_eq!(thick_hold_run(16384), 128);
        assert_eq!(thick_hold_run(100), 8);
        assert_eq!(thick_hold_run(1), 1);
    }
}
