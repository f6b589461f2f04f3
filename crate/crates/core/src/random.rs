//! Counter-based random bits and lazily revealed uniform reals.
//!
//! A [`RandomStream`] is addressed by `(seed, sample, attempt, variable)`.
//! Block `k` of a stream is the `k`-th 64-bit output of a ChaCha8 keystream
//! whose key is derived from `(seed, sample)` and whose stream id packs
//! `(attempt, variable)`; any block can be recomputed on demand, so digits of
//! a [`LazyUniform`] never depend on the order in which they were requested.

use num_bigint::{BigInt, BigUint};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::numeric::{compare3, DyadicInterval, Trilean};

/// Number of variable slots reserved per attempt.
pub const VARIABLES_PER_ATTEMPT: u64 = 16;

/// The random bits for one `(seed, sample, attempt, variable)` address.
#[derive(Clone)]
pub struct RandomStream {
    rng: ChaCha8Rng,
    address: StreamAddress,
    next_block: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamAddress {
    pub seed: u64,
    pub sample: u64,
    pub attempt: u64,
    pub variable: u64,
}

impl StreamAddress {
    pub fn new(seed: u64, sample: u64, attempt: u64, variable: u64) -> Self {
        assert!(variable < VARIABLES_PER_ATTEMPT, "variable index out of range");
        StreamAddress { seed, sample, attempt, variable }
    }
}

impl RandomStream {
    pub fn new(address: StreamAddress) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&address.seed.to_le_bytes());
        key[8..16].copy_from_slice(&address.sample.to_le_bytes());
        key[16..24].copy_from_slice(b"cubicorb");
        let mut rng = ChaCha8Rng::from_seed(key);
        let stream_id = address
            .attempt
            .checked_mul(VARIABLES_PER_ATTEMPT)
            .and_then(|x| x.checked_add(address.variable))
            .expect("attempt index overflows the stream id");
        rng.set_stream(stream_id);
        RandomStream { rng, address, next_block: 0 }
    }

    pub fn address(&self) -> StreamAddress {
        self.address
    }

    /// The `index`-th 64-bit block.
    pub fn block(&mut self, index: u64) -> u64 {
        if index != self.next_block {
            self.rng.set_word_pos(2 * index as u128);
        }
        self.next_block = index + 1;
        self.rng.next_u64()
    }
}

/// A uniform real in `(0, 1)` given by the binary digits `0.b1 b2 b3 ...`,
/// revealed on demand. Revealed digits never change.
#[derive(Clone)]
pub struct LazyUniform {
    stream: RandomStream,
    /// Digits in 64-bit blocks, most significant bit first within a block.
    blocks: Vec<u64>,
    revealed: u64,
}

impl LazyUniform {
    pub fn fresh(stream: RandomStream) -> Self {
        LazyUniform { stream, blocks: Vec::new(), revealed: 0 }
    }

    pub fn revealed(&self) -> u64 {
        self.revealed
    }

    /// Digit `i` (1-based); reveals up to `i` if needed.
    pub fn digit(&mut self, i: u64) -> bool {
        assert!(i >= 1);
        self.extend_to(i);
        let block = self.blocks[((i - 1) / 64) as usize];
        (block >> (63 - (i - 1) % 64)) & 1 == 1
    }

    fn extend_to(&mut self, p: u64) {
        let needed = p.div_ceil(64) as usize;
        while self.blocks.len() < needed {
            let next = self.stream.block(self.blocks.len() as u64);
            self.blocks.push(next);
        }
        self.revealed = self.revealed.max(p);
    }

    /// The integer `b1 b2 ... bp` in binary.
    fn prefix(&self, p: u64) -> BigUint {
        let full = p.div_ceil(64) as usize;
        let mut digits: Vec<u32> = Vec::with_capacity(2 * full);
        for &b in self.blocks[..full].iter().rev() {
            digits.push(b as u32);
            digits.push((b >> 32) as u32);
        }
        BigUint::new(digits) >> (64 * full as u64 - p)
    }

    /// `[0.b1..bp, 0.b1..bp + 2^-p]`, working precision `p`.
    pub fn reveal(&mut self, p: u32) -> DyadicInterval {
        assert!(p >= 1, "reveal needs at least one digit");
        self.extend_to(p as u64);
        let m = BigInt::from(self.prefix(p as u64));
        DyadicInterval::from_endpoints(m.clone(), m + 1, -(p as i64), p)
    }

    /// The enclosure from the digits revealed so far (`[0, 1]` if none).
    pub fn as_interval(&self) -> DyadicInterval {
        if self.revealed == 0 {
            return DyadicInterval::from_endpoints(0, 1, 0, 0);
        }
        let p = self.revealed;
        let m = BigInt::from(self.prefix(p));
        DyadicInterval::from_endpoints(m.clone(), m + 1, -(p as i64), p as u32)
    }

    /// Decide `self < threshold`, revealing digits until the comparison is
    /// determined. Loops forever only on an exact tie with a dyadic
    /// threshold, which has probability zero.
    pub fn less_than(&mut self, threshold: impl Fn(u32) -> DyadicInterval) -> bool {
        let mut p = 8u32;
        loop {
            let x = self.reveal(p);
            match compare3(&x, &threshold(p)) {
                Trilean::True => return true,
                Trilean::False => return false,
                Trilean::Unknown => p *= 2,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn uniform(seed: u64, attempt: u64, var: u64) -> LazyUniform {
        LazyUniform::fresh(RandomStream::new(StreamAddress::new(seed, 0, attempt, var)))
    }

    #[test]
    fn fresh_is_unit_interval() {
        let u = uniform(1, 0, 0);
        assert_eq!(u.revealed(), 0);
        let i = u.as_interval();
        assert_eq!(i.lower(), BigRational::from_integer(0.into()));
        assert_eq!(i.upper(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn reveal_matches_digits() {
        let mut u = uniform(7, 3, 2);
        let x = u.reveal(3);
        let m = (u.digit(1) as i64) * 4 + (u.digit(2) as i64) * 2 + u.digit(3) as i64;
        assert_eq!(x.lower(), BigRational::new(m.into(), 8.into()));
        assert_eq!(x.upper(), BigRational::new((m + 1).into(), 8.into()));
        assert_eq!(x.width(), BigRational::new(1.into(), 8.into()));
    }

    #[test]
    fn persistence_across_reveals() {
        let mut u = uniform(11, 0, 0);
        let mut prev = u.reveal(1);
        for p in [2u32, 3, 6, 63, 64, 65, 130, 1000] {
            let next = u.reveal(p);
            assert!(next.is_subset_of(&prev), "p = {p}");
            prev = next;
        }
        // asking for fewer digits later does not forget anything
        let again = u.reveal(6);
        assert!(prev.is_subset_of(&again));
    }

    #[test]
    fn deterministic_for_fixed_address() {
        let mut a = uniform(42, 0, 0);
        let mut b = uniform(42, 0, 0);
        assert_eq!(a.reveal(8), b.reveal(8));
        // revealing in a different order yields the same digits
        let mut c = uniform(42, 0, 0);
        let long = c.reveal(200);
        let _ = a.reveal(5);
        assert_eq!(a.reveal(200), long);
    }

    #[test]
    fn distinct_addresses_differ() {
        let mut a = uniform(42, 0, 0);
        let mut b = uniform(42, 0, 1);
        let mut c = uniform(42, 1, 0);
        let x = a.reveal(64);
        assert_ne!(x, b.reveal(64));
        assert_ne!(x, c.reveal(64));
    }

    #[test]
    fn less_than_decides() {
        let mut u = uniform(5, 0, 0);
        let v = u.reveal(64).mid_f64();
        let below = u.less_than(|p| DyadicInterval::from_int(1, p).checked_div(&DyadicInterval::from_int(3, p)).unwrap());
        assert_eq!(below, v < 1.0 / 3.0);
    }
}
