//! Seeded deterministic random values for suites: platform-independent and
//! stable across runs, so reports are byte-identical for a fixed seed.

use crate::scalar::{Gaussian, Qis, Rational, SqrtExt};
use num_bigint::BigInt;

/// SplitMix64; the usual finalizer constants.
#[derive(Clone, Debug)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }

    /// Small rational with numerator in -7..=7 and denominator in 1..=7.
    pub fn small_rational(&mut self) -> Rational {
        let num = self.int_in(-7, 7);
        let den = self.int_in(1, 7);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn small_rational_nonzero(&mut self) -> Rational {
        loop {
            let r = self.small_rational();
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    /// Small Gaussian rational re + i*im.
    pub fn small_gaussian(&mut self) -> Qis {
        SqrtExt::from_base(Gaussian::new(self.small_rational(), self.small_rational()))
    }

    pub fn small_gaussian_nonzero(&mut self) -> Qis {
        loop {
            let g = self.small_gaussian();
            if !num_traits::Zero::is_zero(&g) {
                return g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut a = SplitMix::new(42);
        let mut b = SplitMix::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn bounds_respected() {
        let mut r = SplitMix::new(7);
        for _ in 0..200 {
            let v = r.int_in(-3, 3);
            assert!((-3..=3).contains(&v));
            let q = r.small_rational_nonzero();
            assert!(!num_traits::Zero::is_zero(&q));
        }
    }
}
