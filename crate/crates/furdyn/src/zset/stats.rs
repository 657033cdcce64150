//! Density and gap/run statistics over window sets.

use std::collections::BTreeMap;

use super::WindowSet;

/// Finite-window proxies for upper/lower and Banach densities.
///
/// `upper_est`/`lower_est` are the max/min of the prefix density
/// `#(F ∩ [0,n)) / n` over `n` in the last half of the window, which discards
/// transient prefix effects at O(N) cost. Banach estimates scan subwindows on
/// a doubling grid of lengths starting at `min_banach_window`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub upper_est: f64,
    pub lower_est: f64,
    pub banach_upper_est: f64,
    pub banach_lower_est: f64,
    /// `(n, #(F ∩ [0,n)) / n)` at logarithmically spaced prefixes.
    pub prefix_densities: Vec<(usize, f64)>,
    /// max - min of prefix densities over the last half of the sampled grid.
    pub convergence_spread: f64,
}

/// Gap and run structure of a window set.
///
/// `max_gap` covers the leading stretch before the first member, differences
/// of consecutive members, and the stretch from the last member to the window
/// edge, so a set that dies out looks non-syndetic. An empty window reports
/// `max_gap == horizon` and `longest_run == 0`.
#[derive(Debug, Clone)]
pub struct GapRunStats {
    pub max_gap: usize,
    pub longest_run: usize,
    /// For each tracked length `L` (powers of two), the positions where a run
    /// of length >= L begins; horizon shrinks to `N - L + 1`.
    pub run_starts: BTreeMap<usize, WindowSet>,
}

impl WindowSet {
    /// (max, min) of the prefix density over the last half of the window,
    /// without the Banach scan.
    pub(crate) fn prefix_extrema(&self) -> (f64, f64) {
        let n = self.horizon();
        let start = n.div_ceil(2).max(1);
        let mut acc = self.count_range(0, start);
        let mut upper = acc as f64 / start as f64;
        let mut lower = upper;
        for k in start + 1..=n {
            acc += self.member(k - 1) as usize;
            let d = acc as f64 / k as f64;
            upper = upper.max(d);
            lower = lower.min(d);
        }
        (upper, lower)
    }

    /// Density statistics; subwindow lengths for the Banach scan double from
    /// `min_banach_window` up to the horizon.
    pub fn density_profile(&self, min_banach_window: usize) -> DensityProfile {
        assert!(min_banach_window >= 1);
        let n = self.horizon();
        // prefix counts at every index; counts[k] = #(F ∩ [0, k))
        let mut counts = Vec::with_capacity(n + 1);
        counts.push(0u32);
        let mut acc = 0u32;
        for i in 0..n {
            acc += self.member(i) as u32;
            counts.push(acc);
        }

        let half = n.div_ceil(2);
        let mut upper = f64::MIN;
        let mut lower = f64::MAX;
        for k in half.max(1)..=n {
            let d = counts[k] as f64 / k as f64;
            upper = upper.max(d);
            lower = lower.min(d);
        }

        // logarithmically spaced prefixes, ~4 per octave, ascending
        let mut grid: Vec<usize> = Vec::new();
        let mut x = n as f64;
        while x >= 8.0 {
            grid.push(x.round() as usize);
            x /= 2f64.powf(0.25);
        }
        grid.push(1.max(n.min(8)));
        grid.sort_unstable();
        grid.dedup();
        let prefix_densities: Vec<(usize, f64)> = grid
            .into_iter()
            .filter(|&k| k >= 1 && k <= n)
            .map(|k| (k, counts[k] as f64 / k as f64))
            .collect();
        let tail = &prefix_densities[prefix_densities.len() / 2..];
        let spread = match tail {
            [] => 0.0,
            _ => {
                let mx = tail.iter().map(|&(_, d)| d).fold(f64::MIN, f64::max);
                let mn = tail.iter().map(|&(_, d)| d).fold(f64::MAX, f64::min);
                mx - mn
            }
        };

        let mut banach_upper = f64::MIN;
        let mut banach_lower = f64::MAX;
        let mut l = min_banach_window.min(n);
        loop {
            for m in 0..=(n - l) {
                let d = (counts[m + l] - counts[m]) as f64 / l as f64;
                banach_upper = banach_upper.max(d);
                banach_lower = banach_lower.min(d);
            }
            if l >= n {
                break;
            }
            l = (l * 2).min(n);
        }
        // Prefixes of length >= N/2 are themselves admissible subwindows, so
        // fold them in; this also pins the documented ordering invariants.
        banach_upper = banach_upper.max(upper);
        banach_lower = banach_lower.min(lower);

        DensityProfile {
            upper_est: upper,
            lower_est: lower,
            banach_upper_est: banach_upper,
            banach_lower_est: banach_lower,
            prefix_densities,
            convergence_spread: spread,
        }
    }

    /// Gap/run statistics with run starts tracked for `L` in
    /// `{1, 2, 4, ..., max_tracked_run}`.
    pub fn gap_run_stats(&self, max_tracked_run: usize) -> GapRunStats {
        let n = self.horizon();
        assert!(max_tracked_run <= n);

        let mut max_gap = 0usize;
        let mut longest = 0usize;
        let mut cur_run = 0usize;
        let mut first: Option<usize> = None;
        let mut prev: Option<usize> = None;
        for m in self.members() {
            match prev {
                Some(p) => {
                    max_gap = max_gap.max(m - p);
                    cur_run = if m == p + 1 { cur_run + 1 } else { 1 };
                }
                None => {
                    first = Some(m);
                    cur_run = 1;
                }
            }
            longest = longest.max(cur_run);
            prev = Some(m);
        }
        let max_gap = match (first, prev) {
            (None, _) => n,
            (Some(f), Some(last)) => max_gap.max(f).max(n - 1 - last),
            _ => unreachable!(),
        };

        let mut run_starts = BTreeMap::new();
        let mut l = 1usize;
        while l <= max_tracked_run.max(1) && l <= n {
            run_starts.insert(l, self.run_start_positions(l));
            if l > max_tracked_run / 2 {
                break;
            }
            l *= 2;
        }

        GapRunStats {
            max_gap,
            longest_run: longest,
            run_starts,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::generators;
    use super::*;

    fn naive_max_gap(w: &WindowSet) -> usize {
        let members: Vec<usize> = (0..w.horizon()).filter(|&i| w.member(i)).collect();
        if members.is_empty() {
            return w.horizon();
        }
        let mut g = members[0];
        for pair in members.windows(2) {
            g = g.max(pair[1] - pair[0]);
        }
        g.max(w.horizon() - 1 - members[members.len() - 1])
    }

    fn naive_longest_run(w: &WindowSet) -> usize {
        let mut best = 0;
        let mut cur = 0;
        for i in 0..w.horizon() {
            if w.member(i) {
                cur += 1;
                best = best.max(cur);
            } else {
                cur = 0;
            }
        }
        best
    }

    #[test]
    fn evens_have_gap_two_run_one() {
        let w = generators::evens(16);
        let s = w.gap_run_stats(4);
        assert_eq!(s.max_gap, 2);
        assert_eq!(s.longest_run, 1);
    }

    #[test]
    fn leading_block_has_boundary_gap() {
        let w = WindowSet::from_members(16, 0..8);
        let s = w.gap_run_stats(8);
        assert_eq!(s.longest_run, 8);
        assert_eq!(s.max_gap, 8);
    }

    #[test]
    fn empty_set_degenerates() {
        let w = WindowSet::empty(32);
        let s = w.gap_run_stats(8);
        assert_eq!(s.max_gap, 32);
        assert_eq!(s.longest_run, 0);
        assert!(s.run_starts.values().all(|rs| rs.is_empty()));
    }

    #[test]
    fn random_sets_match_naive_scanner() {
        let mut state = 0xdeadbeefu64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 40
        };
        for round in 0..20 {
            let density = (round % 5 + 1) as u64;
            let w = WindowSet::from_fn(5000, |_| next() % 7 < density);
            let s = w.gap_run_stats(64);
            assert_eq!(s.max_gap, naive_max_gap(&w), "round {round}");
            assert_eq!(s.longest_run, naive_longest_run(&w), "round {round}");
        }
    }

    #[test]
    fn complement_longest_run_is_largest_zero_run() {
        // longest_run(complement(w)) equals the longest stretch of
        // non-members of w inside the window, by a naive scan.
        let mut state = 77u64;
        let mut next = || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            state >> 35
        };
        for _ in 0..40 {
            let w = WindowSet::from_fn(512, |_| next() % 2 == 0);
            let comp_run = w.complement().gap_run_stats(1).longest_run;
            let mut best = 0;
            let mut cur = 0;
            for i in 0..w.horizon() {
                if !w.member(i) {
                    cur += 1;
                    best = best.max(cur);
                } else {
                    cur = 0;
                }
            }
            assert_eq!(comp_run, best);
        }
    }

    #[test]
    fn run_starts_monotone_in_length() {
        let w = generators::dyadic_blocks(1024);
        let s = w.gap_run_stats(32);
        let lengths: Vec<usize> = s.run_starts.keys().copied().collect();
        assert_eq!(lengths, vec![1, 2, 4, 8, 16, 32]);
        for pair in lengths.windows(2) {
            let big = &s.run_starts[&pair[1]];
            let small = &s.run_starts[&pair[0]];
            assert!(big.is_subset_of(small));
        }
    }

    #[test]
    fn evens_density_is_half() {
        let p = generators::evens(4096).density_profile(64);
        assert!((p.upper_est - 0.5).abs() < 1e-3);
        assert!((p.lower_est - 0.5).abs() < 1e-3);
        // exactly 0.5 at even prefixes; the max over the last half hits it
        assert!(p.upper_est >= 0.5);
        assert!(p.convergence_spread < 0.01);
    }

    #[test]
    fn dyadic_blocks_oscillate_between_thirds() {
        let p = generators::dyadic_blocks(1 << 16).density_profile(64);
        assert!((p.upper_est - 2.0 / 3.0).abs() < 0.02, "upper {}", p.upper_est);
        assert!((p.lower_est - 1.0 / 3.0).abs() < 0.02, "lower {}", p.lower_est);
        assert!(p.convergence_spread > 0.2);
    }

    #[test]
    fn single_block_has_full_banach_density() {
        let w = WindowSet::from_members(1000, 100..200);
        let p = w.density_profile(64);
        assert_eq!(p.banach_upper_est, 1.0);
        assert!((p.upper_est - 0.2).abs() < 0.02);
        assert!(p.lower_est <= 0.2);
    }

    #[test]
    fn density_profile_orderings_hold() {
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            state >> 33
        };
        for _ in 0..30 {
            let w = WindowSet::from_fn(700, |_| next() % 3 == 0);
            let p = w.density_profile(32);
            assert!(0.0 <= p.lower_est && p.lower_est <= p.upper_est && p.upper_est <= 1.0);
            assert!(p.banach_lower_est <= p.lower_est);
            assert!(p.upper_est <= p.banach_upper_est);
            // prefix-density sandwich at n = N
            let full = w.count() as f64 / w.horizon() as f64;
            assert!(p.lower_est <= full + 1e-12 && full <= p.upper_est + 1e-12);
        }
    }
}
