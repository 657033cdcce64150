//! Symbolic rules for points of the binary shift.
//!
//! Every rule computes its symbol at an arbitrary index in O(polylog index):
//! periodic words by reduction, Sturmian codings by exact 256-bit floor
//! arithmetic, Thue-Morse by popcount parity, binary digits of an angle by
//! modular exponentiation, and sliding-block recodings by delegation.

use std::sync::Arc;

use crate::wide::{add_wide, floor_shr_ticks, mul_128, mul_mod, pow2_mod};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ShiftRule {
    /// `symbol(i) = word[i % len]`; construction reduces to the primitive
    /// period so equal sequences share a representation.
    Periodic(Arc<Vec<bool>>),
    /// `symbol(i) = floor((i+1) a + b) - floor(i a + b)` with `a`, `b` in
    /// ticks of 2^-127.
    Sturmian { alpha: u128, beta: u128 },
    /// Parity of the binary digit sum.
    ThueMorse,
    /// `symbol(i)` is the i-th binary digit of `num/den` (the doubling-map
    /// itinerary of the angle).
    DyadicOfAngle { num: u128, den: u128 },
    /// Sliding-block recoding of a base sequence: `symbol(i)` looks up the
    /// `width` base symbols starting at `base_offset + i` in the table
    /// (most significant first).
    Coded {
        table: Arc<Vec<bool>>,
        width: usize,
        base: Box<ShiftRule>,
        base_offset: u64,
    },
}

impl ShiftRule {
    /// Periodic rule reduced to its primitive period.
    pub fn periodic(word: &[bool]) -> ShiftRule {
        assert!(!word.is_empty(), "periodic word must be nonempty");
        let n = word.len();
        let mut period = n;
        'outer: for p in 1..n {
            if n % p != 0 {
                continue;
            }
            for i in p..n {
                if word[i] != word[i - p] {
                    continue 'outer;
                }
            }
            period = p;
            break;
        }
        ShiftRule::Periodic(Arc::new(word[..period].to_vec()))
    }

    pub fn symbol(&self, index: u64) -> bool {
        match self {
            ShiftRule::Periodic(word) => word[(index % word.len() as u64) as usize],
            ShiftRule::Sturmian { alpha, beta } => {
                sturmian_floor(*alpha, *beta, index + 1) - sturmian_floor(*alpha, *beta, index)
                    == 1
            }
            ShiftRule::ThueMorse => index.count_ones() % 2 == 1,
            ShiftRule::DyadicOfAngle { num, den } => {
                if *den == 1 {
                    return false;
                }
                // digit i = floor(num * 2^(i+1) / den) mod 2 = [2r >= den]
                // where r = num * 2^i mod den
                let p = pow2_mod(index, *den);
                let r = mul_mod(*num % *den, p, *den);
                2 * r >= *den
            }
            ShiftRule::Coded {
                table,
                width,
                base,
                base_offset,
            } => {
                let mut idx = 0usize;
                for j in 0..*width {
                    idx = (idx << 1) | base.symbol(base_offset + index + j as u64) as usize;
                }
                table[idx]
            }
        }
    }
}

/// floor((n * alpha + beta) / 2^127).
fn sturmian_floor(alpha: u128, beta: u128, n: u64) -> u64 {
    let (hi, lo) = mul_128(n as u128, alpha);
    let (hi, lo) = add_wide(hi, lo, beta);
    floor_shr_ticks(hi, lo) as u64
}
