//! Disjoint sets with per-root sizes and an incrementally maintained
//! histogram of component sizes.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Default)]
pub struct Components {
    parent: Vec<u32>,
    size: Vec<u32>,
    roots: Vec<u32>,
    // Position of each root inside `roots`; stale for non-roots.
    root_pos: Vec<u32>,
    size_counts: BTreeMap<u64, u64>,
}

impl Components {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.roots.len()
    }

    /// Adds a new singleton and returns its index.
    pub fn add(&mut self) -> u32 {
        let x = self.parent.len() as u32;
        self.parent.push(x);
        self.size.push(1);
        self.root_pos.push(self.roots.len() as u32);
        self.roots.push(x);
        bump(&mut self.size_counts, 1);
        x
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        // Path halving.
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Root lookup without compression.
    pub fn find_const(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    pub fn size_of(&mut self, x: u32) -> u64 {
        let r = self.find(x);
        self.size[r as usize] as u64
    }

    pub fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    /// Merges the sets of `a` and `b`. Returns `false` if already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        let (sa, sb) = (self.size[ra as usize] as u64, self.size[rb as usize] as u64);
        drop_one(&mut self.size_counts, sa);
        drop_one(&mut self.size_counts, sb);
        bump(&mut self.size_counts, sa + sb);

        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];

        let pos = self.root_pos[rb as usize] as usize;
        self.roots.swap_remove(pos);
        if let Some(&moved) = self.roots.get(pos) {
            self.root_pos[moved as usize] = pos as u32;
        }
        true
    }

    pub fn roots(&self) -> &[u32] {
        &self.roots
    }

    /// Sizes of all components, in root order.
    pub fn sizes(&self) -> impl Iterator<Item = u64> + '_ {
        self.roots.iter().map(|&r| self.size[r as usize] as u64)
    }

    /// Histogram size → number of components of that size.
    pub fn size_counts(&self) -> &BTreeMap<u64, u64> {
        &self.size_counts
    }

    pub fn largest(&self) -> u64 {
        self.size_counts.keys().next_back().copied().unwrap_or(0)
    }
}

fn bump(counts: &mut BTreeMap<u64, u64>, size: u64) {
    *counts.entry(size).or_insert(0) += 1;
}

fn drop_one(counts: &mut BTreeMap<u64, u64>, size: u64) {
    let slot = counts.get_mut(&size).expect("size histogram out of sync");
    *slot -= 1;
    if *slot == 0 {
        counts.remove(&size);
    }
}
