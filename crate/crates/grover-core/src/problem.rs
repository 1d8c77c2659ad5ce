//! Search-problem instances: a list size `N = 2^n` plus the oracle predicate.

use crate::error::{Error, Result};

/// Hard cap on register width. 2^24 amplitudes of `Complex64` is 256 MiB,
/// the upper end of what a desk-scale verification run should allocate.
pub const MAX_QUBITS: u32 = 24;

/// Marked sets up to this size keep an explicit index list for O(1)
/// rank-to-index lookups; larger sets fall back to scanning the bitmask.
/// Any set larger than this covers over a quarter of the maximum space, so
/// rejection sampling stays cheap there.
const MARKED_CACHE_LIMIT: u64 = 1 << 22;

/// An unstructured search instance: `n` qubits spanning indices
/// `0..2^n`, with the oracle stored as a bitmask over the whole space.
///
/// The match count is computed eagerly at construction, which is what the
/// known-M planners downstream assume.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    n: u32,
    mask: Vec<u64>,
    match_count: u64,
    marked_cache: Option<Vec<u64>>,
}

impl SearchProblem {
    /// Builds a problem from a predicate, evaluating it on every index.
    pub fn from_predicate<F: FnMut(u64) -> bool>(n: u32, mut f: F) -> Result<Self> {
        check_qubits(n)?;
        let size = 1u64 << n;
        let words = size.div_ceil(64) as usize;
        let mut mask = vec![0u64; words];
        let mut match_count = 0u64;
        for i in 0..size {
            if f(i) {
                mask[(i / 64) as usize] |= 1 << (i % 64);
                match_count += 1;
            }
        }
        Ok(Self::from_parts(n, mask, match_count))
    }

    /// Builds a problem from a list of marked indices. Duplicates and
    /// out-of-range indices are construction errors.
    pub fn from_marked_indices(n: u32, indices: &[u64]) -> Result<Self> {
        check_qubits(n)?;
        let size = 1u64 << n;
        let words = size.div_ceil(64) as usize;
        let mut mask = vec![0u64; words];
        for &i in indices {
            if i >= size {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            let word = (i / 64) as usize;
            let bit = 1u64 << (i % 64);
            if mask[word] & bit != 0 {
                return Err(Error::DuplicateIndex { index: i });
            }
            mask[word] |= bit;
        }
        Ok(Self::from_parts(n, mask, indices.len() as u64))
    }

    fn from_parts(n: u32, mask: Vec<u64>, match_count: u64) -> Self {
        let marked_cache = if match_count <= MARKED_CACHE_LIMIT {
            let mut cache = Vec::with_capacity(match_count as usize);
            for i in 0..(1u64 << n) {
                if mask[(i / 64) as usize] >> (i % 64) & 1 == 1 {
                    cache.push(i);
                }
            }
            Some(cache)
        } else {
            None
        };
        Self { n, mask, match_count, marked_cache }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// List size `N = 2^n`.
    pub fn size(&self) -> u64 {
        1 << self.n
    }

    /// Number of indices the oracle accepts (`M`).
    pub fn match_count(&self) -> u64 {
        self.match_count
    }

    /// `M/N` as a float.
    pub fn ratio(&self) -> f64 {
        self.match_count as f64 / self.size() as f64
    }

    /// The oracle predicate `f(i)`.
    pub fn is_match(&self, index: u64) -> bool {
        debug_assert!(index < self.size());
        self.mask[(index / 64) as usize] >> (index % 64) & 1 == 1
    }

    /// All marked indices in ascending order.
    pub fn marked_indices(&self) -> Vec<u64> {
        match &self.marked_cache {
            Some(cache) => cache.clone(),
            None => (0..self.size()).filter(|&i| self.is_match(i)).collect(),
        }
    }

    /// The `rank`-th marked index (0-based, ascending).
    pub fn marked_at_rank(&self, rank: u64) -> u64 {
        debug_assert!(rank < self.match_count);
        if let Some(cache) = &self.marked_cache {
            return cache[rank as usize];
        }
        self.select_by_rank(rank, false)
    }

    /// The `rank`-th unmarked index (0-based, ascending).
    pub fn unmarked_at_rank(&self, rank: u64) -> u64 {
        debug_assert!(rank < self.size() - self.match_count);
        self.select_by_rank(rank, true)
    }

    fn select_by_rank(&self, rank: u64, complement: bool) -> u64 {
        let size = self.size();
        let mut remaining = rank;
        for (w, &word) in self.mask.iter().enumerate() {
            let base = (w as u64) * 64;
            let valid = (size - base).min(64);
            let mut bits = if complement { !word } else { word };
            if valid < 64 {
                bits &= (1u64 << valid) - 1;
            }
            let count = bits.count_ones() as u64;
            if remaining < count {
                // Walk to the `remaining`-th set bit of this word.
                let mut b = bits;
                for _ in 0..remaining {
                    b &= b - 1;
                }
                return base + b.trailing_zeros() as u64;
            }
            remaining -= count;
        }
        unreachable!("rank out of range")
    }
}

pub(crate) fn check_qubits(n: u32) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}
