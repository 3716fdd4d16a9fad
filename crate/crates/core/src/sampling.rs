//! Growable Fenwick tree used as a weighted sampler.
//!
//! Items are appended and their weights adjusted in `O(log n)`; drawing an
//! item proportionally to its weight is a single top-down descent.

use std::ops::{Add, Sub};

use rand::Rng;

pub trait Weight: Copy + Default + PartialOrd + Add<Output = Self> + Sub<Output = Self> {
    /// Uniform draw from `[0, total)`.
    fn draw<R: Rng + ?Sized>(total: Self, rng: &mut R) -> Self;
}

impl Weight for u64 {
    fn draw<R: Rng + ?Sized>(total: Self, rng: &mut R) -> Self {
        rng.gen_range(0..total)
    }
}

impl Weight for f64 {
    fn draw<R: Rng + ?Sized>(total: Self, rng: &mut R) -> Self {
        rng.gen::<f64>() * total
    }
}

#[inline]
fn lsb(i: usize) -> usize {
    i & i.wrapping_neg()
}

#[derive(Debug, Clone, Default)]
pub struct WeightIndex<W> {
    // 1-based; tree[0] is unused.
    tree: Vec<W>,
    values: Vec<W>,
    total: W,
}

impl<W: Weight> WeightIndex<W> {
    pub fn new() -> Self {
        WeightIndex {
            tree: vec![W::default()],
            values: Vec::new(),
            total: W::default(),
        }
    }

    pub fn from_weights(weights: impl IntoIterator<Item = W>) -> Self {
        let mut index = Self::new();
        for w in weights {
            index.push(w);
        }
        index
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> W {
        self.total
    }

    pub fn get(&self, idx: usize) -> W {
        self.values[idx]
    }

    /// Sum of the first `count` weights.
    pub fn prefix_sum(&self, count: usize) -> W {
        let mut i = count;
        let mut sum = W::default();
        while i > 0 {
            sum = sum + self.tree[i];
            i -= lsb(i);
        }
        sum
    }

    pub fn push(&mut self, weight: W) -> usize {
        self.values.push(weight);
        let i = self.values.len();
        // Node i covers the half-open range (i - lsb(i), i].
        let node = weight + (self.prefix_sum(i - 1) - self.prefix_sum(i - lsb(i)));
        self.tree.push(node);
        self.total = self.total + weight;
        i - 1
    }

    pub fn add(&mut self, idx: usize, delta: W) {
        self.values[idx] = self.values[idx] + delta;
        self.total = self.total + delta;
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i] + delta;
            i += lsb(i);
        }
    }

    pub fn set(&mut self, idx: usize, weight: W) {
        let old = self.values[idx];
        if weight >= old {
            self.add(idx, weight - old);
        } else {
            // Unsigned weights cannot carry a negative delta.
            self.values[idx] = weight;
            self.total = self.total - old + weight;
            let mut i = idx + 1;
            while i < self.tree.len() {
                self.tree[i] = self.tree[i] - old + weight;
                i += lsb(i);
            }
        }
    }

    /// Index of the item whose cumulative range contains `target`, i.e. the
    /// smallest `k` with `prefix_sum(k + 1) > target`.
    pub fn find(&self, target: W) -> usize {
        let n = self.values.len();
        let mut pos = 0;
        let mut rem = target;
        let mut step = if n == 0 { 0 } else { 1 << (usize::BITS - 1 - n.leading_zeros()) };
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= rem {
                pos = next;
                rem = rem - self.tree[next];
            }
            step >>= 1;
        }
        // Float round-off can push the descent one past the end.
        pos.min(n.saturating_sub(1))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        assert!(self.total > W::default(), "sampling from an index with zero total weight");
        self.find(W::draw(self.total, rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn find_walks_cumulative_ranges() {
        let index = WeightIndex::from_weights([5u64, 2, 4, 2]);
        assert_eq!(index.total(), 13);
        let picks: Vec<usize> = (0..13).map(|t| index.find(t)).collect();
        assert_eq!(picks, [0, 0, 0, 0, 0, 1, 1, 2, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn zero_weights_are_never_hit() {
        let index = WeightIndex::from_weights([0u64, 3, 0, 0, 1, 0]);
        for t in 0..4 {
            let k = index.find(t);
            assert!(index.get(k) > 0, "target {t} landed on empty slot {k}");
        }
    }

    proptest! {
        #[test]
        fn prefix_sums_match_naive(ops in prop::collection::vec((0u64..50, 0usize..64, 0u64..20), 1..200)) {
            let mut index = WeightIndex::new();
            let mut naive: Vec<u64> = Vec::new();
            for (w, pick, delta) in ops {
                index.push(w);
                naive.push(w);
                let k = pick % naive.len();
                index.add(k, delta);
                naive[k] += delta;
                if delta % 3 == 0 {
                    index.set(k, delta);
                    naive[k] = delta;
                }
            }
            let mut acc = 0;
            for (i, w) in naive.iter().enumerate() {
                prop_assert_eq!(index.prefix_sum(i), acc);
                prop_assert_eq!(index.get(i), *w);
                acc += w;
            }
            prop_assert_eq!(index.total(), acc);
            if acc > 0 {
                for t in 0..acc {
                    let k = index.find(t);
                    let lo: u64 = naive[..k].iter().sum();
                    prop_assert!(lo <= t && t < lo + naive[k]);
                }
            }
        }
    }
}
