//! Exact finite-window views of subsets of the non-negative integers.
//!
//! A [`WindowSet`] stores membership on `[0, horizon)` as a dense bit vector
//! plus an optional [`TailHint`] describing the set beyond the window. All
//! statistics consumed by family verdicts (gaps, runs, prefix and Banach
//! densities) are computed from here.

mod stats;

pub mod generators;

pub use stats::{DensityProfile, GapRunStats};

use thiserror::Error;

/// How many trailing window entries a tail hint is validated against.
fn hint_check_len(horizon: usize) -> usize {
    (horizon / 4).min(1024)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZsetError {
    #[error("window horizon must be at least 1")]
    EmptyWindow,
    #[error("shift by {shift} exhausts window of horizon {horizon}")]
    WindowExhausted { shift: usize, horizon: usize },
    #[error("tail hint contradicts window suffix at index {index}")]
    HintInconsistent { index: usize },
    #[error("invalid tail hint: {0}")]
    InvalidHint(String),
    #[error("malformed RLE window set: {0}")]
    Rle(String),
}

/// Symbolic annotation describing a set beyond (and on the tail of) its window.
///
/// Hints are advisory: they are produced by generators that know the true
/// infinite set, validated against the window suffix on construction, and may
/// upgrade an `Inconclusive` family verdict to a definite one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailHint {
    /// `n` is a member iff `pattern[n % period]`, for every `n` in the
    /// validated suffix and beyond the window.
    EventuallyPeriodic { period: usize, pattern: Vec<bool> },
    /// Every `n >= c` is a member.
    AllBeyond(usize),
    /// No `n >= c` is a member.
    NoneBeyond(usize),
    Unknown,
}

impl TailHint {
    pub fn is_known(&self) -> bool {
        !matches!(self, TailHint::Unknown)
    }

    fn complemented(&self) -> TailHint {
        match self {
            TailHint::EventuallyPeriodic { period, pattern } => TailHint::EventuallyPeriodic {
                period: *period,
                pattern: pattern.iter().map(|b| !b).collect(),
            },
            TailHint::AllBeyond(c) => TailHint::NoneBeyond(*c),
            TailHint::NoneBeyond(c) => TailHint::AllBeyond(*c),
            TailHint::Unknown => TailHint::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Plus,
    Minus,
}

/// Finite-horizon view of a subset of the non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSet {
    horizon: usize,
    blocks: Vec<u64>,
    tail_hint: TailHint,
}

const BITS: usize = 64;

fn block_count(horizon: usize) -> usize {
    horizon.div_ceil(BITS)
}

impl WindowSet {
    pub fn empty(horizon: usize) -> Self {
        assert!(horizon >= 1, "window horizon must be at least 1");
        WindowSet {
            horizon,
            blocks: vec![0; block_count(horizon)],
            tail_hint: TailHint::Unknown,
        }
    }

    pub fn full(horizon: usize) -> Self {
        let mut w = Self::empty(horizon);
        for b in &mut w.blocks {
            *b = u64::MAX;
        }
        w.mask_tail();
        w
    }

    pub fn from_fn(horizon: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut w = Self::empty(horizon);
        for i in 0..horizon {
            if f(i) {
                w.set_bit(i);
            }
        }
        w
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i])
    }

    pub fn from_members(horizon: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut w = Self::empty(horizon);
        for m in members {
            assert!(m < horizon, "member {m} outside window [0, {horizon})");
            w.set_bit(m);
        }
        w
    }

    /// Attaches a tail hint, validating it against the window suffix.
    pub fn with_hint(mut self, hint: TailHint) -> Result<Self, ZsetError> {
        validate_hint(&self, &hint)?;
        self.tail_hint = hint;
        Ok(self)
    }

    /// Attaches a hint if consistent, silently keeping `Unknown` otherwise.
    pub fn with_hint_lossy(mut self, hint: TailHint) -> Self {
        if validate_hint(&self, &hint).is_ok() {
            self.tail_hint = hint;
        } else {
            self.tail_hint = TailHint::Unknown;
        }
        self
    }

    fn set_bit(&mut self, i: usize) {
        self.blocks[i / BITS] |= 1 << (i % BITS);
    }

    fn mask_tail(&mut self) {
        let rem = self.horizon % BITS;
        if rem != 0 {
            let last = self.blocks.len() - 1;
            self.blocks[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn tail_hint(&self) -> &TailHint {
        &self.tail_hint
    }

    pub fn member(&self, i: usize) -> bool {
        i < self.horizon && (self.blocks[i / BITS] >> (i % BITS)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Number of members in `[a, b)`.
    pub fn count_range(&self, a: usize, b: usize) -> usize {
        let b = b.min(self.horizon);
        if a >= b {
            return 0;
        }
        let (wa, ba) = (a / BITS, a % BITS);
        let (wb, bb) = (b / BITS, b % BITS);
        if wa == wb {
            let mask = (((1u128 << (bb - ba)) - 1) as u64) << ba;
            return (self.blocks[wa] & mask).count_ones() as usize;
        }
        let mut total = (self.blocks[wa] >> ba).count_ones() as usize;
        for w in &self.blocks[wa + 1..wb] {
            total += w.count_ones() as usize;
        }
        if bb != 0 {
            total += (self.blocks[wb] & ((1u64 << bb) - 1)).count_ones() as usize;
        }
        total
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * BITS + tz)
                }
            })
        })
    }

    /// Membership flipped everywhere, tail hint transformed consistently.
    pub fn complement(&self) -> WindowSet {
        let mut out = WindowSet {
            horizon: self.horizon,
            blocks: self.blocks.iter().map(|b| !b).collect(),
            tail_hint: self.tail_hint.complemented(),
        };
        out.mask_tail();
        out
    }

    /// `F + i` (plus: members move up, horizon kept, tail unknown) or
    /// `F - i` (minus: members move down, horizon shrinks by `i`).
    pub fn shift(&self, i: usize, direction: ShiftDirection) -> Result<WindowSet, ZsetError> {
        if i >= self.horizon {
            return Err(ZsetError::WindowExhausted {
                shift: i,
                horizon: self.horizon,
            });
        }
        match direction {
            ShiftDirection::Plus => {
                let mut out = WindowSet::empty(self.horizon);
                for m in self.members() {
                    if m + i < self.horizon {
                        out.set_bit(m + i);
                    }
                }
                // The window content is exact, but the suffix [N-i, N) of the
                // shifted set came from entries the original hint was never
                // validated against, so the hint is dropped.
                out.tail_hint = TailHint::Unknown;
                Ok(out)
            }
            ShiftDirection::Minus => {
                let new_h = self.horizon - i;
                let mut out = WindowSet::empty(new_h);
                for m in self.members() {
                    if m >= i {
                        out.set_bit(m - i);
                    }
                }
                let hint = match &self.tail_hint {
                    TailHint::AllBeyond(c) => TailHint::AllBeyond(c.saturating_sub(i)),
                    TailHint::NoneBeyond(c) => TailHint::NoneBeyond(c.saturating_sub(i)),
                    TailHint::EventuallyPeriodic { period, pattern } => {
                        let p = *period;
                        TailHint::EventuallyPeriodic {
                            period: p,
                            pattern: (0..p).map(|r| pattern[(r + i) % p]).collect(),
                        }
                    }
                    TailHint::Unknown => TailHint::Unknown,
                };
                Ok(out.with_hint_lossy(hint))
            }
        }
    }

    /// Intersection on the common horizon.
    pub fn intersect(&self, other: &WindowSet) -> WindowSet {
        let h = self.horizon.min(other.horizon);
        let mut out = WindowSet::empty(h);
        for (o, (a, b)) in out
            .blocks
            .iter_mut()
            .zip(self.blocks.iter().zip(other.blocks.iter()))
        {
            *o = a & b;
        }
        out.mask_tail();
        let hint = match (&self.tail_hint, &other.tail_hint) {
            (TailHint::NoneBeyond(c), _) => TailHint::NoneBeyond(*c),
            (_, TailHint::NoneBeyond(c)) => TailHint::NoneBeyond(*c),
            (TailHint::AllBeyond(c1), TailHint::AllBeyond(c2)) => {
                TailHint::AllBeyond(*c1.max(c2))
            }
            (TailHint::AllBeyond(_), p @ TailHint::EventuallyPeriodic { .. }) => p.clone(),
            (p @ TailHint::EventuallyPeriodic { .. }, TailHint::AllBeyond(_)) => p.clone(),
            (
                TailHint::EventuallyPeriodic {
                    period: p1,
                    pattern: q1,
                },
                TailHint::EventuallyPeriodic {
                    period: p2,
                    pattern: q2,
                },
            ) => combine_periodic(*p1, q1, *p2, q2, |a, b| a && b),
            _ => TailHint::Unknown,
        };
        out.with_hint_lossy(hint)
    }

    /// Union on the common horizon.
    pub fn union(&self, other: &WindowSet) -> WindowSet {
        let h = self.horizon.min(other.horizon);
        let mut out = WindowSet::empty(h);
        for (o, (a, b)) in out
            .blocks
            .iter_mut()
            .zip(self.blocks.iter().zip(other.blocks.iter()))
        {
            *o = a | b;
        }
        out.mask_tail();
        let hint = match (&self.tail_hint, &other.tail_hint) {
            (TailHint::AllBeyond(c), _) => TailHint::AllBeyond(*c),
            (_, TailHint::AllBeyond(c)) => TailHint::AllBeyond(*c),
            (TailHint::NoneBeyond(c1), TailHint::NoneBeyond(c2)) => {
                TailHint::NoneBeyond(*c1.max(c2))
            }
            (TailHint::NoneBeyond(_), p @ TailHint::EventuallyPeriodic { .. }) => p.clone(),
            (p @ TailHint::EventuallyPeriodic { .. }, TailHint::NoneBeyond(_)) => p.clone(),
            (
                TailHint::EventuallyPeriodic {
                    period: p1,
                    pattern: q1,
                },
                TailHint::EventuallyPeriodic {
                    period: p2,
                    pattern: q2,
                },
            ) => combine_periodic(*p1, q1, *p2, q2, |a, b| a || b),
            _ => TailHint::Unknown,
        };
        out.with_hint_lossy(hint)
    }

    /// Subset test on the common horizon.
    pub fn is_subset_of(&self, other: &WindowSet) -> bool {
        let h = self.horizon.min(other.horizon);
        let full = h / BITS;
        for i in 0..full {
            if self.blocks[i] & !other.blocks[i] != 0 {
                return false;
            }
        }
        for i in full * BITS..h {
            if self.member(i) && !other.member(i) {
                return false;
            }
        }
        // members of self beyond the common horizon disqualify it
        if self.horizon > h && self.count_range(h, self.horizon) > 0 {
            return false;
        }
        true
    }

    /// Truncates to a smaller horizon, revalidating the hint.
    pub fn restrict(&self, new_horizon: usize) -> WindowSet {
        assert!(new_horizon >= 1 && new_horizon <= self.horizon);
        let mut out = WindowSet::empty(new_horizon);
        let nb = block_count(new_horizon);
        out.blocks.copy_from_slice(&self.blocks[..nb]);
        out.mask_tail();
        out.with_hint_lossy(self.tail_hint.clone())
    }

    /// Positions `p` such that `[p, p + l)` lies inside the window and every
    /// index in it is a member. The result has horizon `horizon - l + 1`.
    ///
    /// Built by binary decomposition of `l` from the identity
    /// `starts(a + b) = starts(a) & (starts(b) >> a)`.
    pub(crate) fn run_start_positions(&self, l: usize) -> WindowSet {
        assert!(l >= 1 && l <= self.horizon);
        let mut pow = self.blocks.clone(); // starts of runs of length 2^j
        let mut pow_len = 1usize;
        let mut acc: Vec<u64> = Vec::new();
        let mut acc_len = 0usize;
        let mut rem = l;
        loop {
            if rem & 1 == 1 {
                if acc_len == 0 {
                    acc = pow.clone();
                    acc_len = pow_len;
                } else {
                    let sh = shift_blocks_down(&pow, acc_len);
                    for (a, s) in acc.iter_mut().zip(sh.iter()) {
                        *a &= s;
                    }
                    acc_len += pow_len;
                }
            }
            rem >>= 1;
            if rem == 0 {
                break;
            }
            let sh = shift_blocks_down(&pow, pow_len);
            for (a, s) in pow.iter_mut().zip(sh.iter()) {
                *a &= s;
            }
            pow_len *= 2;
        }
        debug_assert_eq!(acc_len, l);
        let new_h = self.horizon - l + 1;
        let mut out = WindowSet::empty(new_h);
        let nb = block_count(new_h);
        out.blocks.copy_from_slice(&acc[..nb]);
        out.mask_tail();
        out
    }

    /// Canonical run-length encoding: `N;b:len,b:len,...`.
    pub fn to_rle(&self) -> String {
        let mut out = format!("{};", self.horizon);
        let mut i = 0;
        let mut first = true;
        while i < self.horizon {
            let bit = self.member(i);
            let mut j = i + 1;
            while j < self.horizon && self.member(j) == bit {
                j += 1;
            }
            if !first {
                out.push(',');
            }
            out.push_str(&format!("{}:{}", bit as u8, j - i));
            first = false;
            i = j;
        }
        out
    }

    /// Parses the RLE form produced by [`WindowSet::to_rle`]. The tail hint is
    /// not part of the encoding and comes back `Unknown`.
    pub fn from_rle(s: &str) -> Result<WindowSet, ZsetError> {
        let (head, runs) = s
            .split_once(';')
            .ok_or_else(|| ZsetError::Rle("missing ';' separator".into()))?;
        let horizon: usize = head
            .trim()
            .parse()
            .map_err(|_| ZsetError::Rle(format!("bad horizon {head:?}")))?;
        if horizon == 0 {
            return Err(ZsetError::EmptyWindow);
        }
        let mut w = WindowSet::empty(horizon);
        let mut pos = 0usize;
        for item in runs.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (b, len) = item
                .split_once(':')
                .ok_or_else(|| ZsetError::Rle(format!("bad run {item:?}")))?;
            let bit = match b {
                "0" => false,
                "1" => true,
                other => return Err(ZsetError::Rle(format!("bad bit {other:?}"))),
            };
            let len: usize = len
                .parse()
                .map_err(|_| ZsetError::Rle(format!("bad length in {item:?}")))?;
            if len == 0 {
                return Err(ZsetError::Rle("zero-length run".into()));
            }
            if pos + len > horizon {
                return Err(ZsetError::Rle("runs exceed horizon".into()));
            }
            if bit {
                for i in pos..pos + len {
                    w.set_bit(i);
                }
            }
            pos += len;
        }
        if pos != horizon {
            return Err(ZsetError::Rle(format!(
                "runs cover {pos} of {horizon} entries"
            )));
        }
        Ok(w)
    }
}

/// Blocks of `set >> by` (members move toward 0); entries shifted in are 0.
fn shift_blocks_down(blocks: &[u64], by: usize) -> Vec<u64> {
    let nb = blocks.len();
    let mut out = vec![0u64; nb];
    let (wsh, bsh) = (by / BITS, by % BITS);
    for (i, slot) in out.iter_mut().enumerate() {
        let src = i + wsh;
        if src >= nb {
            break;
        }
        let mut v = blocks[src] >> bsh;
        if bsh != 0 && src + 1 < nb {
            v |= blocks[src + 1] << (BITS - bsh);
        }
        *slot = v;
    }
    out
}

fn combine_periodic(
    p1: usize,
    q1: &[bool],
    p2: usize,
    q2: &[bool],
    op: impl Fn(bool, bool) -> bool,
) -> TailHint {
    let g = crate::wide::gcd(p1 as u128, p2 as u128) as usize;
    let l = p1 / g * p2;
    if l > 4096 {
        return TailHint::Unknown;
    }
    TailHint::EventuallyPeriodic {
        period: l,
        pattern: (0..l).map(|r| op(q1[r % p1], q2[r % p2])).collect(),
    }
}

fn validate_hint(w: &WindowSet, hint: &TailHint) -> Result<(), ZsetError> {
    let check = hint_check_len(w.horizon);
    let start = w.horizon - check;
    match hint {
        TailHint::Unknown => Ok(()),
        TailHint::AllBeyond(c) => {
            for i in start.max(*c)..w.horizon {
                if !w.member(i) {
                    return Err(ZsetError::HintInconsistent { index: i });
                }
            }
            Ok(())
        }
        TailHint::NoneBeyond(c) => {
            for i in start.max(*c)..w.horizon {
                if w.member(i) {
                    return Err(ZsetError::HintInconsistent { index: i });
                }
            }
            Ok(())
        }
        TailHint::EventuallyPeriodic { period, pattern } => {
            if *period == 0 || pattern.len() != *period {
                return Err(ZsetError::InvalidHint(format!(
                    "pattern length {} does not match period {}",
                    pattern.len(),
                    period
                )));
            }
            for i in start..w.horizon {
                if w.member(i) != pattern[i % period] {
                    return Err(ZsetError::HintInconsistent { index: i });
                }
            }
            Ok(())
        }
    }
}
