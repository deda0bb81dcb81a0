//! Seeded 64-bit linear congruential generator.
//!
//! `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`;
//! each draw advances the state once and returns its upper 32 bits. Bounded
//! draws map a 32-bit output `x` to `(x * bound) >> 32`. Other implementations
//! reproduce sample corpora by following these three rules.

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw in `0..bound`; `bound` must be in `1..=2^32`.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0 && bound as u64 <= 1 << 32);
        ((self.next_u32() as u64 * bound as u64) >> 32) as usize
    }

    /// Fisher-Yates shuffle from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_draws_are_pinned() {
        let mut r = Lcg64::new(7);
        let draws: Vec<u32> = (0..3).map(|_| r.next_u32()).collect();
        let mut s: u64 = 7;
        let expect: Vec<u32> = (0..3)
            .map(|_| {
                s = s.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
                (s >> 32) as u32
            })
            .collect();
        assert_eq!(draws, expect);
        let mut r = Lcg64::new(0);
        assert_eq!(r.next_u32(), (INCREMENT >> 32) as u32);
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = Lcg64::new(123);
        for bound in 1..50 {
            assert!(r.below(bound) < bound);
        }
        let mut v: Vec<usize> = (0..10).collect();
        r.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..10).collect::<Vec<_>>());
    }
}
