//! Exact rational coordinates on the circle and the unit interval.
//!
//! A [`Coord`] is a reduced fraction `num/den` in `[0, 1]` together with a
//! cached fixed-point image (`ticks`/`rem`): `num * 2^127 = ticks * den + rem`
//! with `rem < den`. The cache makes metric evaluation one subtraction while
//! the fraction keeps every map in the zoo exact: doubling a dyadic dies at
//! zero, doubling `1/3` cycles through `{1/3, 2/3}` forever.

use crate::wide::{div_rem_wide, TICKS_ONE};

use super::SpaceError;

/// Largest allowed denominator; leaves headroom for common-denominator sums.
pub const MAX_DEN: u128 = 1 << 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    num: u128,
    den: u128,
    ticks: u128,
    rem: u128,
}

impl Coord {
    pub fn zero() -> Coord {
        Coord {
            num: 0,
            den: 1,
            ticks: 0,
            rem: 0,
        }
    }

    pub fn one() -> Coord {
        Coord {
            num: 1,
            den: 1,
            ticks: TICKS_ONE,
            rem: 0,
        }
    }

    /// Exact value `num/den`, reduced; requires `num <= den`, `den >= 1`,
    /// reduced denominator at most 2^120.
    pub fn new(num: u128, den: u128) -> Result<Coord, SpaceError> {
        if den == 0 || num > den {
            return Err(SpaceError::BadCoordinate { num, den });
        }
        let g = crate::wide::gcd(num.max(1), den);
        let (num, den) = (num / g, den / g);
        if den > MAX_DEN {
            return Err(SpaceError::DenominatorOverflow { den });
        }
        // num * 2^127 as a 256-bit value, divided by den
        let hi = num >> 1;
        let lo = num << 127;
        let (ticks, rem) = div_rem_wide(hi, lo, den);
        Ok(Coord {
            num,
            den,
            ticks,
            rem,
        })
    }

    /// Nearest dyadic with 60 fractional bits, rounded toward zero so the
    /// result never exceeds `x`. Requires `x` in `[0, 1]`.
    pub fn from_f64_floor(x: f64) -> Result<Coord, SpaceError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(SpaceError::BadFloatCoordinate { value: x });
        }
        let scaled = (x * (1u64 << 60) as f64).floor() as u128;
        Coord::new(scaled.min(1 << 60), 1 << 60)
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    /// Fixed-point image: floor(value * 2^127).
    pub fn ticks(&self) -> u128 {
        self.ticks
    }

    pub fn as_f64(&self) -> f64 {
        self.ticks as f64 / TICKS_ONE as f64
    }

    pub fn is_at_most_half(&self) -> bool {
        2 * self.num <= self.den
    }

    /// `2x mod 1`, exact, denominator preserved (then reduced).
    pub fn double_mod1(&self) -> Coord {
        let den = self.den;
        let mut num = 2 * self.num;
        let mut ticks = 2 * self.ticks;
        let mut rem = 2 * self.rem;
        if rem >= den {
            rem -= den;
            ticks += 1;
        }
        if num >= den {
            num -= den;
            ticks -= TICKS_ONE;
        }
        Coord {
            num,
            den,
            ticks,
            rem,
        }
        .reduced()
    }

    /// Tent map `min(2x, 2 - 2x)` on `[0, 1]`, exact.
    pub fn tent(&self) -> Coord {
        if self.is_at_most_half() {
            Coord::new(2 * self.num, self.den).expect("tent lower branch stays in [0,1]")
        } else {
            Coord::new(2 * (self.den - self.num), self.den)
                .expect("tent upper branch stays in [0,1]")
        }
    }

    /// `(x + y) mod 1` over a common denominator.
    pub fn add_mod1(&self, other: &Coord) -> Result<Coord, SpaceError> {
        let g = crate::wide::gcd(self.den, other.den);
        let scale_self = other.den / g;
        let den = self
            .den
            .checked_mul(scale_self)
            .ok_or(SpaceError::DenominatorOverflow { den: u128::MAX })?;
        if den > MAX_DEN {
            return Err(SpaceError::DenominatorOverflow { den });
        }
        let mut num = self.num * scale_self + other.num * (self.den / g);
        if num >= den {
            num -= den;
        }
        Coord::new(num, den)
    }

    /// `(x - y) mod 1` over a common denominator.
    pub fn sub_mod1(&self, other: &Coord) -> Result<Coord, SpaceError> {
        let g = crate::wide::gcd(self.den, other.den);
        let scale_self = other.den / g;
        let den = self
            .den
            .checked_mul(scale_self)
            .ok_or(SpaceError::DenominatorOverflow { den: u128::MAX })?;
        if den > MAX_DEN {
            return Err(SpaceError::DenominatorOverflow { den });
        }
        let a = self.num * scale_self;
        let b = other.num * (self.den / g);
        let num = if a >= b { a - b } else { den - (b - a) };
        Coord::new(if num == den { 0 } else { num }, den)
    }

    /// Clamped interval displacement: `x + off` if it stays in `[0, 1]`,
    /// else `x - off` if that stays, else the nearer endpoint (still within
    /// `off` of `x`).
    pub fn shift_within_unit(&self, off: &Coord, prefer_up: bool) -> Coord {
        let try_up = || -> Option<Coord> {
            let g = crate::wide::gcd(self.den, off.den);
            let den = self.den.checked_mul(off.den / g)?;
            if den > MAX_DEN {
                return None;
            }
            let num = self.num * (off.den / g) + off.num * (self.den / g);
            if num <= den {
                Coord::new(num, den).ok()
            } else {
                None
            }
        };
        let try_down = || -> Option<Coord> {
            let g = crate::wide::gcd(self.den, off.den);
            let den = self.den.checked_mul(off.den / g)?;
            if den > MAX_DEN {
                return None;
            }
            let a = self.num * (off.den / g);
            let b = off.num * (self.den / g);
            if a >= b {
                Coord::new(a - b, den).ok()
            } else {
                None
            }
        };
        let (first, second) = if prefer_up {
            (try_up(), try_down())
        } else {
            (try_down(), try_up())
        };
        first
            .or(second)
            .unwrap_or_else(|| if prefer_up { Coord::one() } else { Coord::zero() })
    }

    fn reduced(self) -> Coord {
        if self.num == 0 {
            return Coord {
                num: 0,
                den: 1,
                ticks: self.ticks,
                rem: 0,
            };
        }
        let g = crate::wide::gcd(self.num, self.den);
        if g == 1 {
            return self;
        }
        Coord {
            num: self.num / g,
            den: self.den / g,
            ticks: self.ticks,
            rem: self.rem / g,
        }
    }
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den <= 1 << 20 {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "{:.12}", self.as_f64())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coord(n: u128, d: u128) -> Coord {
        Coord::new(n, d).unwrap()
    }

    #[test]
    fn cache_invariant_holds_after_construction() {
        for (n, d) in [(0u128, 1u128), (1, 3), (2, 3), (1, 1), (7, 16), (5, 7)] {
            let c = coord(n, d);
            // num * 2^127 == ticks * den + rem
            let (hi, lo) = crate::wide::mul_128(c.ticks(), c.den());
            let (shi, slo) = crate::wide::add_wide(hi, lo, c.rem);
            assert_eq!((shi, slo), (c.num() >> 1, c.num() << 127));
        }
    }

    #[test]
    fn doubling_one_third_cycles() {
        let third = coord(1, 3);
        let two_thirds = third.double_mod1();
        assert_eq!(two_thirds, coord(2, 3));
        assert_eq!(two_thirds.double_mod1(), third);
    }

    #[test]
    fn doubling_annihilates_dyadics() {
        let mut x = coord(1, 1 << 20);
        for _ in 0..20 {
            x = x.double_mod1();
        }
        assert_eq!(x, Coord::zero());
    }

    #[test]
    fn doubling_keeps_cache_exact() {
        let mut x = coord(1, 3);
        for _ in 0..300 {
            x = x.double_mod1();
            let expect = coord(x.num(), x.den());
            assert_eq!(x.ticks(), expect.ticks());
        }
    }

    #[test]
    fn tent_maps_match_rational_arithmetic() {
        // orbit of 1/5 under the tent map: 2/5, 4/5, 2/5, ...
        let mut x = coord(1, 5);
        x = x.tent();
        assert_eq!(x, coord(2, 5));
        x = x.tent();
        assert_eq!(x, coord(4, 5));
        x = x.tent();
        assert_eq!(x, coord(2, 5));
        // the peak maps to one, then to zero
        assert_eq!(coord(1, 2).tent(), Coord::one());
        assert_eq!(Coord::one().tent(), Coord::zero());
    }

    #[test]
    fn add_sub_mod1_round_trip() {
        let a = coord(3, 7);
        let b = coord(2, 5);
        let sum = a.add_mod1(&b).unwrap();
        assert_eq!(sum, coord(29, 35));
        assert_eq!(sum.sub_mod1(&b).unwrap(), a);
        // wraparound
        let c = coord(6, 7);
        assert_eq!(c.add_mod1(&b).unwrap(), coord(44 - 35, 35));
    }

    #[test]
    fn from_f64_floor_is_exact_on_dyadics() {
        let c = Coord::from_f64_floor(0.25).unwrap();
        assert_eq!(c, coord(1, 4));
        let d = Coord::from_f64_floor(2f64.powi(-20)).unwrap();
        assert_eq!(d, coord(1, 1 << 20));
    }

    #[test]
    fn ticks_track_value() {
        for (n, d) in [(1u128, 3u128), (1, 7), (5, 11), (1, 4096)] {
            let c = coord(n, d);
            let expect = n as f64 / d as f64;
            assert!((c.as_f64() - expect).abs() < 1e-15);
        }
    }
}
