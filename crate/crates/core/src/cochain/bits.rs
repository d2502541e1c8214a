//! Dense bit vector over GF(2), packed into 64-bit words.

use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Self { words: vec![!0; len.div_ceil(64)], len };
        b.clear_tail();
        b
    }

    /// Builds a vector of length `len <= 64` from the low bits of `word`.
    pub fn from_word(word: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut b = Self { words: vec![word; len.div_ceil(64)], len };
        b.clear_tail();
        b
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        assert_eq!(words.len(), len.div_ceil(64));
        let mut b = Self { words, len };
        b.clear_tail();
        b
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The single word of a vector with at most 64 bits.
    #[inline]
    pub fn as_word(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range ({})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range ({})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range ({})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_count(&self, other: &Bits) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit.
    pub fn highest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    /// Compares as binary numbers, bit `i` having weight `2^i`.
    ///
    /// On bit vectors indexed by colex rank this is the colex order on
    /// systems of subsets.
    pub fn cmp_colex(&self, other: &Bits) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Little-endian byte encoding: byte `k` carries bits `8k..8k+8`.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        self.words.iter().flat_map(|w| w.to_le_bytes()).take(nbytes).collect()
    }

    pub fn from_le_bytes(bytes: &[u8], len: usize) -> Option<Self> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, &byte) in bytes.iter().enumerate() {
            words[i / 8] |= (byte as u64) << (8 * (i % 8));
        }
        let b = Self { words, len };
        // trailing bits beyond `len` must be zero
        let mut check = b.clone();
        check.clear_tail();
        (check == b).then_some(b)
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bits[{}; ", self.len)?;
        f.debug_list().entries(self.iter_ones()).finish()?;
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bits_stay_clear() {
        let b = Bits::ones(70);
        assert_eq!(b.count_ones(), 70);
        assert_eq!(b.highest_one(), Some(69));
        assert_eq!(Bits::from_word(!0, 5).count_ones(), 5);
    }

    #[test]
    fn colex_order_is_numeric() {
        let a = Bits::from_word(0b0110, 4);
        let b = Bits::from_word(0b1000, 4);
        assert_eq!(a.cmp_colex(&b), Ordering::Less);
        let mut long_a = Bits::zeros(130);
        let mut long_b = Bits::zeros(130);
        long_a.set(3, true);
        long_b.set(129, true);
        assert_eq!(long_a.cmp_colex(&long_b), Ordering::Less);
    }

    #[test]
    fn byte_roundtrip_rejects_dirty_tail() {
        let mut b = Bits::zeros(11);
        b.set(0, true);
        b.set(10, true);
        let bytes = b.to_le_bytes();
        assert_eq!(bytes, vec![0x01, 0x04]);
        assert_eq!(Bits::from_le_bytes(&bytes, 11), Some(b));
        assert_eq!(Bits::from_le_bytes(&[0x01, 0x08], 11), None);
    }
}
