//! Fenwick tree over u64 labels, used as the partial-sum structure of the
//! special-leaf sieve: point deletion and prefix query in O(log n).
//!
//! Labels are f-values of the integers in one sieve block; every prefix sum
//! is bounded by the sum of the whole block, which stays below 2^64 for the
//! supported x range.

pub struct Fenwick {
    n: usize,
    t: Vec<u64>,
}

impl Fenwick {
    pub fn new() -> Fenwick {
        Fenwick { n: 0, t: Vec::new() }
    }

    /// Reinitialize with values(i) for i in 0..n. O(n).
    pub fn reset(&mut self, n: usize, values: impl Fn(usize) -> u64) {
        self.n = n;
        self.t.clear();
        self.t.resize(n + 1, 0);
        for i in 1..=n {
            self.t[i] += values(i - 1);
            let j = i + (i & i.wrapping_neg());
            if j <= n {
                let v = self.t[i];
                self.t[j] += v;
            }
        }
    }

    /// Sum of the first `count` values (count in 0..=n).
    #[inline]
    pub fn prefix(&self, mut count: usize) -> u64 {
        debug_assert!(count <= self.n);
        let mut s = 0u64;
        while count > 0 {
            s += self.t[count];
            count -= count & count.wrapping_neg();
        }
        s
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.prefix(self.n)
    }

    /// Subtract v from position idx (0-based).
    #[inline]
    pub fn sub_at(&mut self, idx: usize, v: u64) {
        let mut i = idx + 1;
        while i <= self.n {
            self.t[i] -= v;
            i += i & i.wrapping_neg();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_delete() {
        let mut fw = Fenwick::new();
        let vals: Vec<u64> = (0..100).map(|i| (i as u64) * 3 + 1).collect();
        fw.reset(vals.len(), |i| vals[i]);
        let naive = |v: &[u64], k: usize| v[..k].iter().sum::<u64>();
        for k in 0..=vals.len() {
            assert_eq!(fw.prefix(k), naive(&vals, k));
        }
        let mut vals = vals;
        for idx in [0usize, 7, 99, 50, 1] {
            fw.sub_at(idx, vals[idx]);
            vals[idx] = 0;
            for k in 0..=vals.len() {
                assert_eq!(fw.prefix(k), naive(&vals, k));
            }
        }
        assert_eq!(fw.total(), vals.iter().sum::<u64>());
    }
}
