//! Minimal 256-bit integer helpers for exact coordinate arithmetic.
//!
//! Circle and interval coordinates are exact rationals with a cached
//! fixed-point image (127 fractional bits). The few wide operations needed
//! for that — full 128x128 multiply, 256/128 division, integer square root —
//! live here so the rest of the crate never touches multi-limb arithmetic.

/// Fixed-point scale for cached coordinates: one full turn = 2^127 ticks.
pub const TICKS_BITS: u32 = 127;
/// 2^127, the tick count of a full turn.
pub const TICKS_ONE: u128 = 1 << TICKS_BITS;
/// Mask reducing a u128 modulo 2^127.
pub const TICKS_MASK: u128 = TICKS_ONE - 1;

/// Full 256-bit product of two u128 values, returned as (hi, lo).
#[inline]
pub const fn mul_128(a: u128, b: u128) -> (u128, u128) {
    const LO: u128 = (1 << 64) - 1;
    let (a1, a0) = (a >> 64, a & LO);
    let (b1, b0) = (b >> 64, b & LO);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LO) + (p10 & LO);
    let lo = (mid << 64) | (p00 & LO);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Adds a u128 to a 256-bit value.
#[inline]
pub const fn add_wide(hi: u128, lo: u128, b: u128) -> (u128, u128) {
    let (l, carry) = lo.overflowing_add(b);
    (hi + carry as u128, l)
}

/// Divides the 256-bit value (hi, lo) by `d`, returning (quotient, remainder).
///
/// Requires `hi < d` so the quotient fits in a u128.
pub const fn div_rem_wide(hi: u128, lo: u128, d: u128) -> (u128, u128) {
    debug_assert!(d > 0 && hi < d);
    let mut rem = hi;
    let mut q: u128 = 0;
    let mut i = 128;
    while i > 0 {
        i -= 1;
        let carry = rem >> 127;
        rem = (rem << 1) | ((lo >> i) & 1);
        if carry == 1 || rem >= d {
            rem = rem.wrapping_sub(d);
            q |= 1 << i;
        }
    }
    (q, rem)
}

/// Floor of (hi, lo) / 2^127. Requires `hi < 2^127`.
#[inline]
pub const fn floor_shr_ticks(hi: u128, lo: u128) -> u128 {
    (hi << 1) | (lo >> TICKS_BITS)
}

/// (a * b) mod m for a, b < m.
#[inline]
pub const fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    let (hi, lo) = mul_128(a, b);
    let (_, r) = div_rem_wide(hi, lo, m);
    r
}

/// 2^n mod m.
pub const fn pow2_mod(mut n: u64, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut base: u128 = 2 % m;
    let mut acc: u128 = 1 % m;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        n >>= 1;
    }
    acc
}

const fn wide_ge(ahi: u128, alo: u128, bhi: u128, blo: u128) -> bool {
    ahi > bhi || (ahi == bhi && alo >= blo)
}

const fn wide_sub(ahi: u128, alo: u128, bhi: u128, blo: u128) -> (u128, u128) {
    let (lo, borrow) = alo.overflowing_sub(blo);
    (ahi - bhi - borrow as u128, lo)
}

const fn wide_shr1(hi: u128, lo: u128) -> (u128, u128) {
    (hi >> 1, (lo >> 1) | (hi << 127))
}

const fn wide_add2(ahi: u128, alo: u128, bhi: u128, blo: u128) -> (u128, u128) {
    let (lo, carry) = alo.overflowing_add(blo);
    (ahi + bhi + carry as u128, lo)
}

/// Integer square root of a 256-bit value. The result always fits in a u128.
pub const fn wide_isqrt(mut nhi: u128, mut nlo: u128) -> u128 {
    // Classic restoring shift-and-subtract, starting at the largest power of
    // four representable in 256 bits.
    let mut bhi: u128 = 1 << 126;
    let mut blo: u128 = 0;
    let mut rhi: u128 = 0;
    let mut rlo: u128 = 0;
    while bhi != 0 || blo != 0 {
        let (shi, slo) = wide_add2(rhi, rlo, bhi, blo);
        if wide_ge(nhi, nlo, shi, slo) {
            let (h, l) = wide_sub(nhi, nlo, shi, slo);
            nhi = h;
            nlo = l;
            let (h2, l2) = wide_shr1(rhi, rlo);
            let (h3, l3) = wide_add2(h2, l2, bhi, blo);
            rhi = h3;
            rlo = l3;
        } else {
            let (h2, l2) = wide_shr1(rhi, rlo);
            rhi = h2;
            rlo = l2;
        }
        let (h4, l4) = wide_shr1(bhi, blo);
        let (h5, l5) = wide_shr1(h4, l4);
        bhi = h5;
        blo = l5;
    }
    rlo
}

/// floor((sqrt(2) - 1) * 2^127): the canonical irrational rotation angle.
pub const SQRT2_M1_TICKS: u128 = wide_isqrt(TICKS_ONE, 0) - TICKS_ONE;

/// floor((sqrt(5) - 1)/2 * 2^127): the golden-mean conjugate angle.
pub const GOLDEN_CONJ_TICKS: u128 = wide_isqrt(5 << 124, 0) - (1 << 126);

/// Greatest common divisor.
pub const fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_128_matches_native_on_64bit_inputs() {
        let cases = [
            (0u128, 0u128),
            (1, u64::MAX as u128),
            (u64::MAX as u128, u64::MAX as u128),
            (123456789, 987654321),
        ];
        for (a, b) in cases {
            let (hi, lo) = mul_128(a, b);
            assert_eq!(hi, 0);
            assert_eq!(lo, a * b);
        }
    }

    #[test]
    fn mul_then_div_round_trips() {
        let pairs = [
            (3u128, (1u128 << 100) + 7),
            ((1 << 120) - 1, (1 << 119) + 3),
            (0x1234_5678_9abc_def0_1234_5678, 0xfeed_f00d_dead_beef),
        ];
        for (a, d) in pairs {
            let (hi, lo) = mul_128(a, d);
            let (q, r) = div_rem_wide(hi % d, lo, d);
            // (a*d) has hi = a*d >> 128; reconstruct a*d mod (d * 2^128)
            // instead: check q*d + r == (hi%d, lo) as a value.
            let (qhi, qlo) = mul_128(q, d);
            let (shi, slo) = add_wide(qhi, qlo, r);
            assert_eq!((shi, slo), (hi % d, lo));
            assert!(r < d);
        }
    }

    #[test]
    fn isqrt_is_exact_for_2_pow_255() {
        let s = wide_isqrt(TICKS_ONE, 0);
        // s^2 <= 2^255 < (s+1)^2
        let (hi, _lo) = mul_128(s, s);
        assert!(hi <= TICKS_ONE);
        let (hi2, lo2) = mul_128(s + 1, s + 1);
        assert!(hi2 > TICKS_ONE || (hi2 == TICKS_ONE && lo2 > 0));
    }

    #[test]
    fn rotation_constants_match_f64_values() {
        let scale = (TICKS_ONE as f64).recip();
        let sqrt2m1 = SQRT2_M1_TICKS as f64 * scale;
        assert!((sqrt2m1 - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        let golden = GOLDEN_CONJ_TICKS as f64 * scale;
        assert!((golden - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn pow2_mod_agrees_with_naive() {
        for &m in &[3u128, 7, 1023, (1 << 61) - 1, 10_000_019] {
            let mut naive: u128 = 1 % m;
            for n in 0..200u64 {
                assert_eq!(pow2_mod(n, m), naive, "m={m} n={n}");
                naive = naive * 2 % m;
            }
        }
    }

    #[test]
    fn floor_shr_ticks_splits_products() {
        // n * alpha for alpha just below one turn: floor should be close to n.
        let alpha = TICKS_ONE - 1;
        for n in [1u128, 2, 5, 1000, 1 << 40] {
            let (hi, lo) = mul_128(n, alpha);
            let fl = floor_shr_ticks(hi, lo);
            assert_eq!(fl, n - 1, "floor(n*(1 - 2^-127)) == n-1");
        }
    }
}
