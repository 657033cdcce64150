//! Empirical dynamics of Furstenberg-family equicontinuity and sensitivity.
//!
//! The crate is organized as a pipeline:
//!
//! * [`zset`] — exact finite-window subsets of `Z+` with gap/run/density
//!   statistics;
//! * [`family`] — symbolic family algebra (duals, translation invariance,
//!   filter and Ramsey probes) and three-valued membership verdicts;
//! * [`space`] — a zoo of exactly computable compact metric systems;
//! * [`orbit`] — separation and open-set diameter traces bridging systems to
//!   window sets;
//! * [`classify`] — equicontinuity/sensitivity reports, the transitive-system
//!   dichotomy, and the density-family implication checks;
//! * [`factor`] — factor maps and preservation checks.
//!
//! Every operation is a pure function of immutable inputs; samplers are
//! deterministic in their seeds.

pub(crate) mod wide;

pub mod classify;
pub mod factor;
pub mod family;
pub mod orbit;
pub mod space;
pub mod zset;
