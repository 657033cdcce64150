//! Sampled refutation searches for the filter and Ramsey properties.
//!
//! Both checks are refutation searches, never proofs: a `Holds` verdict means
//! no counterexample was found among the sampled members and partitions. The
//! first trials deterministically enumerate the adversarial member pairs and
//! partition strategies, so the known refutations (disjoint syndetic sets,
//! the parity partition of the full set, alternating blocks of a thick set)
//! are always exercised.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::zset::WindowSet;

use super::sampler::{adversarial_members, mix};
use super::{sample_member, FamilyDescriptor, FamilyError, Verdict, VerdictPolicy};

/// Canonical horizon for the symbolic-family probes.
const CHECK_HORIZON: usize = 4096;

/// Probes `F · F ⊂ F` by intersecting sampled members.
pub fn filter_check(
    f: &FamilyDescriptor,
    sampler_seed: u64,
    trials: usize,
) -> Result<Verdict, FamilyError> {
    assert!(trials >= 1);
    let policy = VerdictPolicy::default();
    let adv = adversarial_members(f, CHECK_HORIZON);
    let mut pairs: Vec<(String, WindowSet, WindowSet)> = Vec::new();
    for i in 0..adv.len() {
        for j in i + 1..adv.len() {
            pairs.push((
                format!("{} ∩ {}", adv[i].0, adv[j].0),
                adv[i].1.clone(),
                adv[j].1.clone(),
            ));
        }
    }

    let mut all_holds = true;
    for t in 0..trials {
        let (label, m1, m2);
        if t < pairs.len() {
            let p = &pairs[t];
            label = p.0.clone();
            m1 = p.1.clone();
            m2 = p.2.clone();
        } else {
            m1 = sample_member(f, CHECK_HORIZON, mix(sampler_seed, 2 * t as u64))?;
            m2 = sample_member(f, CHECK_HORIZON, mix(sampler_seed, 2 * t as u64 + 1))?;
            label = format!("random pair #{t}");
        }
        let inter = m1.intersect(&m2);
        let v = f.contains(&inter, &policy);
        if v.is_fails() {
            return Ok(Verdict::fails(
                format!("trial {t} ({label}): intersection left the family ({})", v.witness),
                CHECK_HORIZON,
            ));
        }
        if !v.is_holds() {
            all_holds = false;
        }
    }
    Ok(if all_holds {
        Verdict::holds(
            format!("{trials} member intersections stayed in the family"),
            CHECK_HORIZON,
        )
    } else {
        Verdict::inconclusive_with(
            "no counterexample, but some intersections were inconclusive",
            CHECK_HORIZON,
        )
    })
}

#[derive(Debug, Clone, Copy)]
enum Split {
    /// Members alternate between the parts in enumeration order.
    Interleave,
    /// `n` joins the first part iff `(n / c)` is even.
    FixedBlock(usize),
    /// `n` joins the first part iff `ilog2(n)` is even.
    ScaleBlock,
    /// Independent coin per member.
    Random,
}

const SPLITS: [Split; 5] = [
    Split::Interleave,
    Split::FixedBlock(4),
    Split::FixedBlock(16),
    Split::ScaleBlock,
    Split::Random,
];

fn split_member(m: &WindowSet, split: Split, rng: &mut ChaCha8Rng) -> (WindowSet, WindowSet) {
    let h = m.horizon();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut toggle = false;
    for n in m.members() {
        let to_left = match split {
            Split::Interleave => {
                toggle = !toggle;
                toggle
            }
            Split::FixedBlock(c) => (n / c) % 2 == 0,
            Split::ScaleBlock => n == 0 || n.ilog2() % 2 == 0,
            Split::Random => rng.random_bool(0.5),
        };
        if to_left {
            left.push(n);
        } else {
            right.push(n);
        }
    }
    (
        WindowSet::from_members(h, left),
        WindowSet::from_members(h, right),
    )
}

fn split_label(split: Split) -> String {
    match split {
        Split::Interleave => "interleave".into(),
        Split::FixedBlock(c) => format!("blocks of {c}"),
        Split::ScaleBlock => "scale blocks".into(),
        Split::Random => "random split".into(),
    }
}

/// Probes the Ramsey property: a member split into two parts should leave a
/// member part. Cross-checked against `filter_check(dual(f))`, which must not
/// land on the opposite definite verdict.
pub fn ramsey_check(
    f: &FamilyDescriptor,
    sampler_seed: u64,
    trials: usize,
) -> Result<Verdict, FamilyError> {
    assert!(trials >= 1);
    let policy = VerdictPolicy::default();
    let adv = adversarial_members(f, CHECK_HORIZON);
    let mut rng = ChaCha8Rng::seed_from_u64(mix(sampler_seed, 0x7a));

    let mut refutation: Option<String> = None;
    let mut all_covered = true;
    for t in 0..trials {
        let (label, member) = if !adv.is_empty() && t < adv.len() * SPLITS.len() {
            let a = &adv[t / SPLITS.len()];
            (a.0.to_string(), a.1.clone())
        } else {
            (
                format!("random member #{t}"),
                sample_member(f, CHECK_HORIZON, mix(sampler_seed, 0x100 + t as u64))?,
            )
        };
        let split = SPLITS[t % SPLITS.len()];
        let (p1, p2) = split_member(&member, split, &mut rng);
        let v1 = f.contains(&p1, &policy);
        let v2 = f.contains(&p2, &policy);
        if v1.is_fails() && v2.is_fails() {
            refutation = Some(format!(
                "trial {t}: member {label} split by {} left the family on both sides ({} / {})",
                split_label(split),
                v1.witness,
                v2.witness
            ));
            break;
        }
        if !(v1.is_holds() || v2.is_holds()) {
            all_covered = false;
        }
    }

    let verdict = match refutation {
        Some(w) => Verdict::fails(w, CHECK_HORIZON),
        None if all_covered => Verdict::holds(
            format!("every sampled partition over {trials} trials kept a member part"),
            CHECK_HORIZON,
        ),
        None => Verdict::inconclusive_with(
            "no refuting partition, but some parts were inconclusive",
            CHECK_HORIZON,
        ),
    };

    // Ramsey(F) is equivalent to kF being a filter; a definite disagreement
    // between the two sampled probes means the evidence is unreliable.
    let mirror = filter_check(&f.dual(), sampler_seed, trials)?;
    let clash = (verdict.is_holds() && mirror.is_fails())
        || (verdict.is_fails() && mirror.is_holds());
    if clash {
        return Ok(Verdict::inconclusive_with(
            format!(
                "cross-check disagreement: ramsey says {:?} but filter_check(k) says {:?}",
                verdict.outcome, mirror.outcome
            ),
            CHECK_HORIZON,
        ));
    }
    Ok(verdict)
}
