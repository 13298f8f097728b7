//! Deterministic, splittable random streams.
//!
//! Every draw goes through fixed-width integer sampling so a `(seed, stream)`
//! pair yields the same sequence on every platform.

use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Rng {
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64, stream: u64) -> Rng {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Rng { inner }
    }

    /// Uniform in `0..n`. `n` must be nonzero.
    pub fn below(&mut self, n: u32) -> u32 {
        assert!(n > 0, "empty range");
        self.inner.random_range(0..n)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        assert!(lo <= hi, "empty range {lo}..={hi}");
        self.inner.random_range(lo..=hi)
    }

    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.range(lo as u32, hi as u32) as usize
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u32) as usize
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn unit(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.index(items.len())]
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }

    /// `k` distinct values from `pool`, in draw order.
    pub fn sample<T: Copy>(&mut self, pool: &[T], k: usize) -> Vec<T> {
        let mut v = pool.to_vec();
        let k = k.min(v.len());
        for i in 0..k {
            let j = i + self.index(v.len() - i);
            v.swap(i, j);
        }
        v.truncate(k);
        v
    }

    /// A child stream derived from this one's next draw.
    pub fn split(&mut self) -> Rng {
        let seed = self.inner.next_u64();
        let stream = self.inner.next_u64();
        Rng::new(seed, stream)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_and_stream_repeat() {
        let mut a = Rng::new(42, 7);
        let mut b = Rng::new(42, 7);
        let xs: Vec<u32> = (0..64).map(|_| a.below(1000)).collect();
        let ys: Vec<u32> = (0..64).map(|_| b.below(1000)).collect();
        assert_eq!(xs, ys);
        let mut c = Rng::new(42, 8);
        let zs: Vec<u32> = (0..64).map(|_| c.below(1000)).collect();
        assert_ne!(xs, zs);
    }

    #[test]
    fn frozen_sequence() {
        // Datasets are only reproducible while these stay fixed.
        let mut r = Rng::new(0, 0);
        let xs: Vec<u32> = (0..6).map(|_| r.below(100)).collect();
        assert_eq!(xs, [65, 70, 72, 46, 50, 69]);
        let mut r = Rng::new(42, 3);
        let xs: Vec<u32> = (0..4).map(|_| r.below(1000)).collect();
        assert_eq!(xs, [542, 361, 725, 592]);
        assert_eq!(r.unit(), 0.7301003007613198);
    }

    #[test]
    fn sample_is_distinct() {
        let mut r = Rng::new(1, 1);
        for _ in 0..100 {
            let mut s = r.sample(&[1, 2, 3, 4, 5, 6, 7, 8, 9], 4);
            assert_eq!(s.len(), 4);
            s.sort();
            s.dedup();
            assert_eq!(s.len(), 4);
        }
    }

    #[test]
    fn unit_range() {
        let mut r = Rng::new(3, 0);
        for _ in 0..1000 {
            let u = r.unit();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
