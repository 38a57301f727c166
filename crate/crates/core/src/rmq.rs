//! Sparse-table range argmax over a fixed f64 slice.
//!
//! Built once in O(n log n) time and memory, then any range argmax is two
//! table lookups. Indices are stored as u32 (the crate caps walks well below
//! 2^32 steps), which halves the table footprint; at n = 2^20 the table is
//! about 88 MB, at n = 2^22 about 370 MB.

/// Range-argmax table. Ties break toward the smaller index, so queries are
/// deterministic even with equal values.
#[derive(Debug, Clone)]
pub struct ArgmaxTable {
    len: usize,
    /// levels[j][i] = argmax of values[i .. i + 2^j], for i + 2^j <= len.
    levels: Vec<Vec<u32>>,
}

impl ArgmaxTable {
    /// Builds the table for `values`. Queries must be answered against the
    /// same slice contents used here.
    ///
    /// Panics if `values` is empty or longer than u32::MAX.
    pub fn new(values: &[f64]) -> Self {
        let len = values.len();
        assert!(len > 0, "argmax table over empty slice");
        assert!(len <= u32::MAX as usize, "slice too long for u32 indices");
        let max_level = usize::BITS as usize - 1 - (len.leading_zeros() as usize);
        let mut levels: Vec<Vec<u32>> = Vec::with_capacity(max_level + 1);
        levels.push((0..len as u32).collect());
        for j in 1..=max_level {
            let half = 1usize << (j - 1);
            let width = 1usize << j;
            let prev = &levels[j - 1];
            let mut row = Vec::with_capacity(len - width + 1);
            for i in 0..=(len - width) {
                let a = prev[i];
                let b = prev[i + half];
                row.push(if values[b as usize] > values[a as usize] {
                    b
                } else {
                    a
                });
            }
            levels.push(row);
        }
        ArgmaxTable { len, levels }
    }

    /// Number of entries the table was built over (always positive).
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: construction rejects empty input.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Argmax index of `values[lo..=hi]` (0-based inclusive bounds) where
    /// `values` is the slice the table was built from.
    ///
    /// Panics if `lo > hi` or `hi >= len`.
    #[inline]
    pub fn argmax(&self, values: &[f64], lo: usize, hi: usize) -> usize {
        debug_assert_eq!(values.len(), self.len, "query against a different slice");
        assert!(lo <= hi && hi < self.len, "argmax range out of bounds");
        let span = hi - lo + 1;
        let j = usize::BITS as usize - 1 - (span.leading_zeros() as usize);
        let a = self.levels[j][lo];
        let b = self.levels[j][hi + 1 - (1usize << j)];
        if values[b as usize] > values[a as usize] {
            b as usize
        } else {
            a as usize
        }
    }
}
