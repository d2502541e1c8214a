//! Colexicographic ranking of r-subsets of a ground set.
//!
//! Public functions take vertex labels `1..=n`; the `pub(crate)` helpers work
//! on 0-based sorted index slices. The colex rank of `{s_0 < … < s_{r-1}}`
//! (0-based) is `Σ C(s_i, i+1)`.

use crate::error::{Error, Result};

/// Largest number of r-subsets a cochain may index.
pub const MAX_SUBSETS: u64 = 1 << 33;

/// Exact binomial coefficient, `None` on `u64` overflow.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, r)` subject to the [`MAX_SUBSETS`] guard.
pub fn checked_count(n: usize, r: usize) -> Result<usize> {
    match binomial(n, r) {
        Some(c) if c <= MAX_SUBSETS => Ok(c as usize),
        _ => Err(Error::TooLarge { n, r }),
    }
}

/// Saturating Pascal table `C(s, i)` for `s <= n`, `i <= kmax`.
#[derive(Clone, Debug)]
pub(crate) struct BinomTable {
    kmax: usize,
    table: Vec<u64>,
}

impl BinomTable {
    pub(crate) fn new(n: usize, kmax: usize) -> Self {
        let w = kmax + 1;
        let mut table = vec![0u64; (n + 1) * w];
        for s in 0..=n {
            table[s * w] = 1;
            for i in 1..=kmax.min(s) {
                let a = table[(s - 1) * w + i - 1];
                let b = if i < s { table[(s - 1) * w + i] } else { 0 };
                table[s * w + i] = a.saturating_add(b);
            }
        }
        Self { kmax, table }
    }

    #[inline]
    pub(crate) fn get(&self, s: usize, i: usize) -> u64 {
        debug_assert!(i <= self.kmax);
        self.table[s * (self.kmax + 1) + i]
    }

    /// Rank of a sorted 0-based subset.
    #[inline]
    pub(crate) fn rank(&self, subset: &[usize]) -> u64 {
        subset.iter().enumerate().map(|(i, &s)| self.get(s, i + 1)).sum()
    }

    /// Writes the 0-based subset of size `out.len()` with colex rank `rank`.
    pub(crate) fn unrank_into(&self, mut rank: u64, n: usize, out: &mut [usize]) {
        let mut c = n;
        for i in (1..=out.len()).rev() {
            // largest c with C(c, i) <= rank
            c -= 1;
            while self.get(c, i) > rank {
                c -= 1;
            }
            out[i - 1] = c;
            rank -= self.get(c, i);
        }
    }
}

/// Validates 1-based labels and converts them to sorted 0-based indices.
pub(crate) fn to_zero_based(subset: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(subset.len());
    for &v in subset {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if let Some(&prev) = out.last() {
            if v - 1 <= prev {
                return Err(Error::UnsortedSubset(subset.to_vec()));
            }
        }
        out.push(v - 1);
    }
    Ok(out)
}

/// Colex rank of a subset given by strictly increasing labels in `1..=n`.
pub fn subset_rank(subset: &[usize], n: usize) -> Result<u64> {
    let zb = to_zero_based(subset, n)?;
    checked_count(n, zb.len())?;
    Ok(BinomTable::new(n, zb.len()).rank(&zb))
}

/// Inverse of [`subset_rank`]: the `r`-subset of `1..=n` with colex rank `rank`.
pub fn subset_unrank(rank: u64, r: usize, n: usize) -> Result<Vec<usize>> {
    if r > n {
        return Err(Error::ArityOutOfRange { arity: r, n });
    }
    let count = checked_count(n, r)? as u64;
    if rank >= count {
        return Err(Error::RankOutOfRange { rank, n, r, count });
    }
    let mut out = vec![0; r];
    BinomTable::new(n, r).unrank_into(rank, n, &mut out);
    Ok(out.into_iter().map(|v| v + 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_extremes() {
        assert_eq!(subset_rank(&[1, 2], 5).unwrap(), 0);
        assert_eq!(subset_rank(&[4, 5], 5).unwrap(), 9);
        assert_eq!(subset_rank(&[], 5).unwrap(), 0);
    }

    #[test]
    fn roundtrip_pairs_of_six() {
        for a in 1..=6 {
            for b in a + 1..=6 {
                let k = subset_rank(&[a, b], 6).unwrap();
                assert_eq!(subset_unrank(k, 2, 6).unwrap(), vec![a, b]);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(subset_rank(&[0, 2], 5), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(subset_rank(&[2, 6], 5), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(subset_rank(&[3, 2], 5), Err(Error::UnsortedSubset(_))));
        assert!(matches!(subset_unrank(10, 2, 5), Err(Error::RankOutOfRange { .. })));
        assert!(matches!(subset_unrank(0, 20, 200), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn binomial_overflow_is_reported() {
        assert_eq!(binomial(10, 4), Some(210));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(200, 100), None);
    }
}
