//! Named window-set constructions with honest tail hints.
//!
//! Every generator here knows the true infinite set it is windowing, so the
//! attached hints are correct by construction (and still validated).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{TailHint, WindowSet};

/// `{0, 2, 4, ...}`.
pub fn evens(horizon: usize) -> WindowSet {
    WindowSet::from_fn(horizon, |i| i % 2 == 0)
        .with_hint(TailHint::EventuallyPeriodic {
            period: 2,
            pattern: vec![true, false],
        })
        .expect("evens hint")
}

/// `{1, 3, 5, ...}`.
pub fn odds(horizon: usize) -> WindowSet {
    WindowSet::from_fn(horizon, |i| i % 2 == 1)
        .with_hint(TailHint::EventuallyPeriodic {
            period: 2,
            pattern: vec![false, true],
        })
        .expect("odds hint")
}

/// All of `Z+`.
pub fn full(horizon: usize) -> WindowSet {
    WindowSet::full(horizon)
        .with_hint(TailHint::AllBeyond(0))
        .expect("full hint")
}

/// The empty set.
pub fn empty(horizon: usize) -> WindowSet {
    WindowSet::empty(horizon)
        .with_hint(TailHint::NoneBeyond(0))
        .expect("empty hint")
}

/// `[c, ∞)`.
pub fn all_beyond(horizon: usize, c: usize) -> WindowSet {
    WindowSet::from_fn(horizon, |i| i >= c)
        .with_hint(TailHint::AllBeyond(c))
        .expect("all_beyond hint")
}

/// The finite block `[lo, hi)`.
pub fn block(horizon: usize, lo: usize, hi: usize) -> WindowSet {
    assert!(lo <= hi && hi <= horizon);
    WindowSet::from_fn(horizon, |i| (lo..hi).contains(&i)).with_hint_lossy(TailHint::NoneBeyond(hi))
}

/// `∪_k [4^k, 2·4^k)`: thick, non-syndetic, prefix density oscillating
/// between 1/3 and 2/3.
pub fn dyadic_blocks(horizon: usize) -> WindowSet {
    WindowSet::from_fn(horizon, |i| i > 0 && (i.ilog2() % 2 == 0))
}

/// `∪_k [2·4^k, 4^{k+1})`: the complementary block scale, disjoint from
/// [`dyadic_blocks`].
pub fn dyadic_blocks_odd(horizon: usize) -> WindowSet {
    WindowSet::from_fn(horizon, |i| i > 0 && (i.ilog2() % 2 == 1))
}

/// Periodic set given one period of membership.
pub fn periodic(horizon: usize, pattern: &[bool]) -> WindowSet {
    assert!(!pattern.is_empty());
    WindowSet::from_fn(horizon, |i| pattern[i % pattern.len()])
        .with_hint(TailHint::EventuallyPeriodic {
            period: pattern.len(),
            pattern: pattern.to_vec(),
        })
        .expect("periodic hint")
}

/// Independent coin flips with probability `p`, no tail hint.
pub fn random_density(horizon: usize, p: f64, seed: u64) -> WindowSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    WindowSet::from_fn(horizon, |_| rng.random::<f64>() < p)
}

/// `Z+` minus an exponentially sparse sequence of cut points near
/// `gamma * 2^k`: thickly syndetic (runs of every length recur with bounded
/// gaps at each fixed length).
///
/// Cuts start at `256 * gamma` so run starts of every length up to 256 keep
/// gaps of at most `length + 1`.
pub fn thickly_syndetic(horizon: usize, seed: u64) -> WindowSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma: f64 = 1.0 + rng.random::<f64>(); // in [1, 2)
    let mut cuts = vec![false; horizon];
    let mut k = 8u32;
    loop {
        let c = (gamma * (1u64 << k) as f64) as usize;
        if c >= horizon {
            break;
        }
        cuts[c] = true;
        k += 1;
    }
    WindowSet::from_fn(horizon, |i| !cuts[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_hints_are_attached() {
        assert!(evens(256).tail_hint().is_known());
        assert!(full(64).tail_hint().is_known());
        assert!(all_beyond(64, 10).tail_hint().is_known());
    }

    #[test]
    fn dyadic_blocks_and_odd_partition_positives() {
        let a = dyadic_blocks(4096);
        let b = dyadic_blocks_odd(4096);
        assert!(a.intersect(&b).is_empty());
        for i in 1..4096 {
            assert!(a.member(i) ^ b.member(i), "index {i}");
        }
    }

    #[test]
    fn thickly_syndetic_keeps_long_runs_everywhere() {
        let w = thickly_syndetic(4096, 7);
        let stats = w.gap_run_stats(64);
        for (l, rs) in &stats.run_starts {
            let gap = rs.gap_run_stats(1).max_gap;
            assert!(gap <= l + 2, "run starts of length {l} have gap {gap}");
        }
    }
}
