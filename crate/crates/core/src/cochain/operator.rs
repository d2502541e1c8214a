use super::{checked_count, BinomTable, Bits, Cochain};
use crate::error::{Error, Result};

/// The coboundary map from arity `r` to arity `r + 1` as a sparse matrix.
///
/// Worth building when the same map is applied many times; each column lists
/// the ranks of the `n - r` supersets of one `r`-subset.
#[derive(Clone, Debug)]
pub struct CoboundaryOperator {
    n: usize,
    arity: usize,
    source_len: usize,
    target_len: usize,
    stride: usize,
    targets: Vec<u32>,
}

impl CoboundaryOperator {
    pub fn new(n: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ArityZeroCoboundary);
        }
        if arity >= n {
            return Err(Error::ArityOutOfRange { arity: arity + 1, n });
        }
        let source_len = checked_count(n, arity)?;
        let target_len = checked_count(n, arity + 1)?;
        if target_len > u32::MAX as usize || source_len.saturating_mul(n - arity) > 1 << 28 {
            return Err(Error::TooLarge { n, r: arity + 1 });
        }
        let stride = n - arity;
        let table = BinomTable::new(n, arity + 1);
        let mut targets = Vec::with_capacity(source_len * stride);
        let mut buf = vec![0; arity];
        let mut ext = Vec::with_capacity(arity + 1);
        for k in 0..source_len {
            table.unrank_into(k as u64, n, &mut buf);
            for v in 0..n {
                if buf.binary_search(&v).is_ok() {
                    continue;
                }
                ext.clear();
                ext.extend_from_slice(&buf);
                let pos = ext.partition_point(|&s| s < v);
                ext.insert(pos, v);
                targets.push(table.rank(&ext) as u32);
            }
        }
        Ok(Self { n, arity, source_len, target_len, stride, targets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    /// Ranks of the `(r+1)`-supersets of the `r`-subset with rank `k`.
    pub fn column(&self, k: usize) -> &[u32] {
        &self.targets[k * self.stride..(k + 1) * self.stride]
    }

    pub fn apply_bits(&self, src: &Bits) -> Bits {
        assert_eq!(src.len(), self.source_len);
        let mut out = Bits::zeros(self.target_len);
        for k in src.iter_ones() {
            for &t in self.column(k) {
                out.toggle(t as usize);
            }
        }
        out
    }

    pub fn apply(&self, e: &Cochain) -> Result<Cochain> {
        if e.n() != self.n {
            return Err(Error::GroundMismatch { left: e.n(), right: self.n });
        }
        if e.arity() != self.arity {
            return Err(Error::ArityMismatch { left: e.arity(), right: self.arity });
        }
        Cochain::from_bits(self.n, self.arity + 1, self.apply_bits(e.bits()))
    }

    /// Column `k` as a single word; requires `target_len <= 64`.
    pub fn column_word(&self, k: usize) -> u64 {
        assert!(self.target_len <= 64);
        self.column(k).iter().fold(0, |acc, &t| acc | 1u64 << t)
    }

    /// Word-level application; requires both sides to fit in 64 bits.
    pub fn apply_word(&self, src: u64) -> u64 {
        assert!(self.source_len <= 64 && self.target_len <= 64);
        let mut out = 0;
        let mut rest = src;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            out ^= self.column_word(k);
            rest &= rest - 1;
        }
        out
    }
}
