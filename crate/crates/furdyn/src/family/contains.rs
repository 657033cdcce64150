//! Three-valued membership verdicts for window sets.
//!
//! Each family gets a Holds test and a Fails test with a deliberate gap
//! between them; anything in the gap is `Inconclusive`. A known tail hint may
//! upgrade an `Inconclusive` base verdict (never overturn a definite one).

use crate::zset::{TailHint, WindowSet};

use super::{thick_hold_run, FamilyDescriptor, Verdict, VerdictPolicy};

impl FamilyDescriptor {
    /// Does the (true, infinite) set behind `w` belong to this family?
    /// Finite-horizon surrogate: `Holds`/`Fails` only on one-sided evidence.
    pub fn contains(&self, w: &WindowSet, policy: &VerdictPolicy) -> Verdict {
        let n = w.horizon();
        match self {
            FamilyDescriptor::DualOf(inner) => {
                let comp = w.complement();
                let v = inner.contains(&comp, policy);
                match v.outcome {
                    super::Outcome::Holds => Verdict::fails(
                        format!("complement is in {inner}: {}", v.witness),
                        n,
                    ),
                    super::Outcome::Fails => Verdict::holds(
                        format!("complement is not in {inner}: {}", v.witness),
                        n,
                    ),
                    super::Outcome::Inconclusive => Verdict::inconclusive(n),
                }
            }
            FamilyDescriptor::InfiniteSets => {
                let upper = w.count_range(n / 2, n);
                if upper > 0 {
                    return Verdict::holds(format!("{upper} members in [{}, {n})", n / 2), n);
                }
                if w.count_range(n / 4, n) == 0 {
                    return Verdict::fails(format!("no members in [{}, {n})", n / 4), n);
                }
                match hint_infinite(w.tail_hint()) {
                    Some(true) => Verdict::holds(hint_witness(w.tail_hint()), n),
                    Some(false) => Verdict::fails(hint_witness(w.tail_hint()), n),
                    None => Verdict::inconclusive(n),
                }
            }
            FamilyDescriptor::Cofinite => {
                let tail_all = w.count_range(n / 2, n) == n - n / 2;
                if tail_all || matches!(w.tail_hint(), TailHint::AllBeyond(_)) {
                    return Verdict::holds(
                        if tail_all {
                            format!("complement contained in [0, {})", n / 2)
                        } else {
                            hint_witness(w.tail_hint())
                        },
                        n,
                    );
                }
                let (_, comp_lower) = w.complement().prefix_extrema();
                if comp_lower >= policy.refute_density {
                    return Verdict::fails(
                        format!(
                            "complement lower density {:.6} >= {:.6}",
                            comp_lower, policy.refute_density
                        ),
                        n,
                    );
                }
                match w.tail_hint() {
                    TailHint::NoneBeyond(_) => Verdict::fails(hint_witness(w.tail_hint()), n),
                    TailHint::EventuallyPeriodic { pattern, .. } => {
                        if pattern.iter().all(|&b| b) {
                            Verdict::holds(hint_witness(w.tail_hint()), n)
                        } else {
                            Verdict::fails(
                                format!("{}; complement is infinite", hint_witness(w.tail_hint())),
                                n,
                            )
                        }
                    }
                    _ => Verdict::inconclusive(n),
                }
            }
            FamilyDescriptor::Syndetic => {
                let gap = w.gap_run_stats(1).max_gap;
                if (gap as f64) <= policy.syndetic_gap_frac * n as f64 {
                    return Verdict::holds(format!("max_gap={gap}"), n);
                }
                if (gap as f64) >= policy.refute_gap_frac * n as f64 {
                    return Verdict::fails(format!("max_gap={gap}"), n);
                }
                match hint_syndetic(w.tail_hint()) {
                    Some(true) => Verdict::holds(hint_witness(w.tail_hint()), n),
                    Some(false) => Verdict::fails(hint_witness(w.tail_hint()), n),
                    None => Verdict::inconclusive(n),
                }
            }
            FamilyDescriptor::Thick => {
                let run = w.gap_run_stats(1).longest_run;
                let need = thick_hold_run(n);
                if run >= need {
                    return Verdict::holds(format!("longest_run={run} >= {need}"), n);
                }
                if run <= policy.thick_refute(n) {
                    return Verdict::fails(
                        format!("longest_run={run} <= {}", policy.thick_refute(n)),
                        n,
                    );
                }
                match hint_thick(w.tail_hint()) {
                    Some(true) => Verdict::holds(hint_witness(w.tail_hint()), n),
                    Some(false) => Verdict::fails(hint_witness(w.tail_hint()), n),
                    None => Verdict::inconclusive(n),
                }
            }
            FamilyDescriptor::ThicklySyndetic => {
                let need = thick_hold_run(n);
                let stats = w.gap_run_stats(need);
                let mut all_hold = true;
                for (l, rs) in &stats.run_starts {
                    let v = FamilyDescriptor::Syndetic.contains(rs, policy);
                    if v.is_fails() {
                        return Verdict::fails(
                            format!("run starts of length {l} are not syndetic: {}", v.witness),
                            n,
                        );
                    }
                    if !v.is_holds() {
                        all_hold = false;
                    }
                }
                if all_hold {
                    return Verdict::holds(
                        format!("run starts syndetic for lengths 1..={need}"),
                        n,
                    );
                }
                match hint_thick(w.tail_hint()) {
                    // a periodic tail with a gap bounds run lengths, so run
                    // starts of longer lengths eventually vanish
                    Some(true) => Verdict::holds(hint_witness(w.tail_hint()), n),
                    Some(false) => Verdict::fails(hint_witness(w.tail_hint()), n),
                    None => Verdict::inconclusive(n),
                }
            }
            FamilyDescriptor::UpperDensityAbove(a) => {
                let p = w.density_profile(policy.banach_window(n));
                density_verdict(
                    "upper density",
                    p.upper_est,
                    p.convergence_spread,
                    a.as_f64(),
                    true,
                    policy,
                    w.tail_hint(),
                    n,
                )
            }
            FamilyDescriptor::LowerDensityAtLeast(b) => {
                let p = w.density_profile(policy.banach_window(n));
                density_verdict(
                    "lower density",
                    p.lower_est,
                    p.convergence_spread,
                    b.as_f64(),
                    false,
                    policy,
                    w.tail_hint(),
                    n,
                )
            }
            FamilyDescriptor::BanachUpperAbove(a) => {
                let p = w.density_profile(policy.banach_window(n));
                density_verdict(
                    "upper Banach density",
                    p.banach_upper_est,
                    p.convergence_spread,
                    a.as_f64(),
                    true,
                    policy,
                    w.tail_hint(),
                    n,
                )
            }
            FamilyDescriptor::BanachLowerAtLeast(b) => {
                let p = w.density_profile(policy.banach_window(n));
                density_verdict(
                    "lower Banach density",
                    p.banach_lower_est,
                    p.convergence_spread,
                    b.as_f64(),
                    false,
                    policy,
                    w.tail_hint(),
                    n,
                )
            }
        }
    }
}

/// Shared Holds/Fails/hint logic for the four density families.
///
/// `strict` selects "estimate > threshold" (upper families) against
/// "estimate >= threshold" (lower families, Holds capped so that a threshold
/// of 1 stays satisfiable by the full window).
#[allow(clippy::too_many_arguments)]
fn density_verdict(
    label: &str,
    estimate: f64,
    spread: f64,
    threshold: f64,
    strict: bool,
    policy: &VerdictPolicy,
    hint: &TailHint,
    n: usize,
) -> Verdict {
    let margin = policy.margin;
    let holds = if strict {
        estimate > threshold + margin
    } else {
        estimate >= (threshold + margin).min(1.0)
    };
    if holds {
        return Verdict::holds(
            format!("{label} est {estimate:.6} clears {threshold:.6} by margin {margin:.6}"),
            n,
        );
    }
    if estimate < threshold - margin && spread < margin {
        return Verdict::fails(
            format!(
                "{label} est {estimate:.6} below {threshold:.6} by margin (spread {spread:.6})"
            ),
            n,
        );
    }
    // Known tails pin the limiting density exactly.
    let rho = match hint {
        TailHint::AllBeyond(_) => Some(1.0),
        TailHint::NoneBeyond(_) => Some(0.0),
        TailHint::EventuallyPeriodic { period, pattern } => {
            Some(pattern.iter().filter(|&&b| b).count() as f64 / *period as f64)
        }
        TailHint::Unknown => None,
    };
    match rho {
        Some(rho) => {
            let member = if strict {
                rho > threshold
            } else {
                rho >= threshold
            };
            if member {
                Verdict::holds(format!("{}; tail density {rho:.6}", hint_witness(hint)), n)
            } else {
                Verdict::fails(format!("{}; tail density {rho:.6}", hint_witness(hint)), n)
            }
        }
        None => Verdict::inconclusive(n),
    }
}

fn hint_witness(hint: &TailHint) -> String {
    match hint {
        TailHint::AllBeyond(c) => format!("tail hint: all members beyond {c}"),
        TailHint::NoneBeyond(c) => format!("tail hint: no members beyond {c}"),
        TailHint::EventuallyPeriodic { period, .. } => {
            format!("tail hint: eventually periodic with period {period}")
        }
        TailHint::Unknown => "tail hint: unknown".to_string(),
    }
}

/// Is the hinted set infinite? None when the hint does not say.
fn hint_infinite(hint: &TailHint) -> Option<bool> {
    match hint {
        TailHint::AllBeyond(_) => Some(true),
        TailHint::NoneBeyond(_) => Some(false),
        TailHint::EventuallyPeriodic { pattern, .. } => Some(pattern.iter().any(|&b| b)),
        TailHint::Unknown => None,
    }
}

/// Eventually periodic sets with a nonempty pattern have all gaps finite and
/// eventually bounded by the period, hence are syndetic.
fn hint_syndetic(hint: &TailHint) -> Option<bool> {
    hint_infinite(hint)
}

/// A periodic tail with a missing residue bounds run lengths, refuting
/// thickness; an all-members tail certifies it.
fn hint_thick(hint: &TailHint) -> Option<bool> {
    match hint {
        TailHint::AllBeyond(_) => Some(true),
        TailHint::NoneBeyond(_) => Some(false),
        TailHint::EventuallyPeriodic { pattern, .. } => Some(pattern.iter().all(|&b| b)),
        TailHint::Unknown => None,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{FamilyDescriptor, Outcome};
    use super::*;
    use crate::zset::generators;

    fn policy() -> VerdictPolicy {
        VerdictPolicy::default()
    }

    #[test]
    fn syndetic_holds_on_evens() {
        let v = FamilyDescriptor::Syndetic.contains(&generators::evens(4096), &policy());
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.witness.contains("max_gap=2"));
    }

    #[test]
    fn thick_holds_on_dyadic_blocks() {
        let w = generators::dyadic_blocks(1 << 16);
        let v = FamilyDescriptor::Thick.contains(&w, &policy());
        assert_eq!(v.outcome, Outcome::Holds);
    }

    #[test]
    fn upper_density_above_holds_on_dyadic_blocks() {
        let w = generators::dyadic_blocks(1 << 16);
        let f = FamilyDescriptor::upper_density_above(0.6).unwrap();
        assert_eq!(f.contains(&w, &policy()).outcome, Outcome::Holds);
        let g = FamilyDescriptor::upper_density_above(0.7).unwrap();
        assert_ne!(g.contains(&w, &policy()).outcome, Outcome::Holds);
    }

    #[test]
    fn cofinite_verdicts() {
        let p = policy();
        let all = generators::all_beyond(4096, 100);
        assert_eq!(
            FamilyDescriptor::Cofinite.contains(&all, &p).outcome,
            Outcome::Holds
        );
        let ev = generators::evens(4096);
        assert_eq!(
            FamilyDescriptor::Cofinite.contains(&ev, &p).outcome,
            Outcome::Fails
        );
        let empty = generators::empty(4096);
        assert_eq!(
            FamilyDescriptor::Cofinite.contains(&empty, &p).outcome,
            Outcome::Fails
        );
    }

    #[test]
    fn infinite_sets_verdicts() {
        let p = policy();
        assert_eq!(
            FamilyDescriptor::InfiniteSets
                .contains(&generators::evens(1024), &p)
                .outcome,
            Outcome::Holds
        );
        assert_eq!(
            FamilyDescriptor::InfiniteSets
                .contains(&generators::block(1024, 10, 20), &p)
                .outcome,
            Outcome::Fails
        );
        assert_eq!(
            FamilyDescriptor::InfiniteSets
                .contains(&generators::empty(1024), &p)
                .outcome,
            Outcome::Fails
        );
    }

    #[test]
    fn thickly_syndetic_verdicts() {
        let p = policy();
        let w = generators::thickly_syndetic(4096, 3);
        assert_eq!(
            FamilyDescriptor::ThicklySyndetic.contains(&w, &p).outcome,
            Outcome::Holds
        );
        assert_eq!(
            FamilyDescriptor::ThicklySyndetic
                .contains(&generators::evens(4096), &p)
                .outcome,
            Outcome::Fails
        );
        assert_eq!(
            FamilyDescriptor::ThicklySyndetic
                .contains(&generators::full(4096), &p)
                .outcome,
            Outcome::Holds
        );
    }

    #[test]
    fn dual_of_thickly_syndetic_on_parity_sets() {
        let p = policy();
        let ktsynd = FamilyDescriptor::dual_of(FamilyDescriptor::ThicklySyndetic);
        // odds meet every thickly syndetic set (their complement, evens, has
        // no 2-runs at all)
        assert_eq!(
            ktsynd.contains(&generators::odds(4096), &p).outcome,
            Outcome::Holds
        );
        assert_eq!(
            ktsynd.contains(&generators::empty(4096), &p).outcome,
            Outcome::Fails
        );
    }

    #[test]
    fn hints_resolve_marginal_densities() {
        let p = policy();
        // evens have density exactly 1/2: ud>0.5 is refuted only by the hint
        let f = FamilyDescriptor::upper_density_above(0.5).unwrap();
        let v = f.contains(&generators::evens(4096), &p);
        assert_eq!(v.outcome, Outcome::Fails);
        assert!(v.witness.contains("tail"));
        let g = FamilyDescriptor::lower_density_at_least(0.5).unwrap();
        assert_eq!(
            g.contains(&generators::evens(4096), &p).outcome,
            Outcome::Holds
        );
    }

    #[test]
    fn lower_density_one_needs_full_window() {
        let p = policy();
        let f = FamilyDescriptor::lower_density_at_least(1.0).unwrap();
        assert_eq!(
            f.contains(&generators::full(4096), &p).outcome,
            Outcome::Holds
        );
        assert_eq!(
            f.contains(&generators::evens(4096), &p).outcome,
            Outcome::Fails
        );
    }

    #[test]
    fn banach_families_see_block_structure() {
        let p = policy();
        let w = generators::dyadic_blocks(1 << 14);
        // BD* = 1 thanks to the long full blocks
        let f = FamilyDescriptor::banach_upper_above(0.9).unwrap();
        assert_eq!(f.contains(&w, &p).outcome, Outcome::Holds);
        // prefix upper density stays near 2/3
        let g = FamilyDescriptor::upper_density_above(0.9).unwrap();
        assert_ne!(g.contains(&w, &p).outcome, Outcome::Holds);
    }

    #[test]
    fn empty_and_full_are_definite_everywhere() {
        let p = policy();
        for f in FamilyDescriptor::standard_zoo() {
            let ve = f.contains(&generators::empty(4096), &p);
            assert_eq!(ve.outcome, Outcome::Fails, "empty window vs {f}");
            let vf = f.contains(&generators::full(4096), &p);
            assert_eq!(vf.outcome, Outcome::Holds, "full window vs {f}");
        }
    }
}
