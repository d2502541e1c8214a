//! Z2 cochains on the full simplex over the ground set `1..=n`.
//!
//! A cochain of arity `r` is a set of `r`-subsets (topological dimension
//! `r - 1`), stored as a bit vector over colex ranks. A "(d-1)-cochain" in
//! the usual indexing is a cochain of arity `d`:
//!
//! | arity | members   | dimension |
//! |-------|-----------|-----------|
//! | 1     | vertices  | 0         |
//! | 2     | edges     | 1         |
//! | 3     | triangles | 2         |
//!
//! Cohomology is non-reduced: the arity-1 cochain `V` is a cocycle but not
//! a coboundary, and the coboundary of an arity-0 cochain is not exposed.

mod bits;
mod json;
mod operator;
mod subset;

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

pub use bits::Bits;
pub use json::CochainJson;
pub use operator::CoboundaryOperator;
pub use subset::{binomial, checked_count, subset_rank, subset_unrank, MAX_SUBSETS};

pub(crate) use subset::{to_zero_based, BinomTable};

use crate::error::{Error, Result};

/// The vertex set `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ground set must be nonempty".into()));
        }
        Ok(Self { n })
    }

    pub fn n(self) -> usize {
        self.n
    }
}

/// Exact normalized size `|E| / C(n, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct NormalizedSize {
    pub count: u64,
    pub total: u64,
}

impl NormalizedSize {
    pub fn new(count: u64, total: u64) -> Self {
        assert!(count <= total && total > 0);
        Self { count, total }
    }

    /// Reduced fraction.
    pub fn ratio(self) -> Ratio<u64> {
        Ratio::new(self.count, self.total)
    }

    pub fn to_f64(self) -> f64 {
        self.count as f64 / self.total as f64
    }

    /// `self <= other`, compared by cross-multiplication.
    pub fn le(self, other: NormalizedSize) -> bool {
        (self.count as u128) * (other.total as u128) <= (other.count as u128) * (self.total as u128)
    }

    /// `self <= 1/2`.
    pub fn at_most_half(self) -> bool {
        2 * self.count <= self.total
    }
}

impl PartialOrd for NormalizedSize {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        let a = (self.count as u128) * (other.total as u128);
        let b = (other.count as u128) * (self.total as u128);
        Some(a.cmp(&b))
    }
}

impl fmt::Display for NormalizedSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.total)
    }
}

/// A set of `arity`-subsets of `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    n: usize,
    arity: usize,
    bits: Bits,
}

impl Cochain {
    pub fn empty(n: usize, arity: usize) -> Result<Self> {
        GroundSet::new(n)?;
        if arity > n {
            return Err(Error::ArityOutOfRange { arity, n });
        }
        Ok(Self { n, arity, bits: Bits::zeros(checked_count(n, arity)?) })
    }

    /// Every `arity`-subset of the ground set.
    pub fn full(n: usize, arity: usize) -> Result<Self> {
        let mut c = Self::empty(n, arity)?;
        c.bits = Bits::ones(c.bits.len());
        Ok(c)
    }

    pub fn from_bits(n: usize, arity: usize, bits: Bits) -> Result<Self> {
        let c = Self::empty(n, arity)?;
        if bits.len() != c.bits.len() {
            return Err(Error::Parse(format!(
                "bit vector has length {}, expected C({n}, {arity}) = {}",
                bits.len(),
                c.bits.len()
            )));
        }
        Ok(Self { bits, ..c })
    }

    /// Builds a cochain from member sets given as labels in `1..=n`.
    ///
    /// Labels inside a member may be listed in any order; repeated members
    /// are taken once.
    pub fn from_sets<I, S>(n: usize, arity: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut c = Self::empty(n, arity)?;
        let table = BinomTable::new(n, arity);
        for s in sets {
            let mut s = s.as_ref().to_vec();
            s.sort_unstable();
            if s.len() != arity {
                return Err(Error::SubsetSize { got: s.len(), expected: arity });
            }
            let zb = to_zero_based(&s, n)?;
            c.bits.set(table.rank(&zb) as usize, true);
        }
        Ok(c)
    }

    /// Builds a cochain from colex ranks.
    pub fn from_ranks(n: usize, arity: usize, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut c = Self::empty(n, arity)?;
        let count = c.bits.len();
        for k in ranks {
            if k >= count {
                return Err(Error::RankOutOfRange { rank: k as u64, n, r: arity, count: count as u64 });
            }
            c.bits.set(k, true);
        }
        Ok(c)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet { n: self.n }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn into_bits(self) -> Bits {
        self.bits
    }

    /// Number of members `|E|`.
    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    /// `C(n, arity)`.
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn normalized_size(&self) -> NormalizedSize {
        NormalizedSize::new(self.len() as u64, self.capacity() as u64)
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn contains(&self, set: &[usize]) -> Result<bool> {
        if set.len() != self.arity {
            return Err(Error::SubsetSize { got: set.len(), expected: self.arity });
        }
        let zb = to_zero_based(set, self.n)?;
        Ok(self.bits.get(BinomTable::new(self.n, self.arity).rank(&zb) as usize))
    }

    /// Members as sorted label lists, in colex order.
    pub fn sets(&self) -> Vec<Vec<usize>> {
        let table = BinomTable::new(self.n, self.arity);
        let mut buf = vec![0; self.arity];
        self.bits
            .iter_ones()
            .map(|k| {
                table.unrank_into(k as u64, self.n, &mut buf);
                buf.iter().map(|v| v + 1).collect()
            })
            .collect()
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch { left: self.n, right: other.n });
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    /// Symmetric difference `E + E'`.
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Cochain) -> Result<()> {
        self.check_compatible(other)?;
        self.bits.xor_assign(&other.bits);
        Ok(())
    }

    /// `V + E` restricted to this arity, i.e. all other `arity`-subsets.
    pub fn complement(&self) -> Cochain {
        let mut out = self.clone();
        out.bits.xor_assign(&Bits::ones(self.bits.len()));
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// The coboundary `δE`: all `(r+1)`-subsets containing an odd number of
    /// members of `E`.
    pub fn coboundary(&self) -> Result<Cochain> {
        if self.arity == 0 {
            return Err(Error::ArityZeroCoboundary);
        }
        if self.arity >= self.n {
            return Err(Error::ArityOutOfRange { arity: self.arity + 1, n: self.n });
        }
        let (n, r) = (self.n, self.arity);
        let mut out = Cochain::empty(n, r + 1)?;
        let table = BinomTable::new(n, r + 1);
        let toggle_all = |k: usize, buf: &mut [usize], sink: &mut dyn FnMut(usize)| {
            table.unrank_into(k as u64, n, buf);
            // rank(e ∪ {v}) = Σ_{i<p} C(s_i, i+1) + C(v, p+1) + Σ_{i>=p} C(s_i, i+2)
            let mut prefix = 0u64;
            let mut suffix: u64 = buf.iter().enumerate().map(|(i, &s)| table.get(s, i + 2)).sum();
            let mut p = 0;
            for v in 0..n {
                if p < r && buf[p] == v {
                    prefix += table.get(v, p + 1);
                    suffix -= table.get(v, p + 2);
                    p += 1;
                    continue;
                }
                sink((prefix + table.get(v, p + 1) + suffix) as usize);
            }
        };
        if self.len() < 4096 {
            let mut buf = vec![0; r];
            for k in self.bits.iter_ones() {
                toggle_all(k, &mut buf, &mut |j| out.bits.toggle(j));
            }
        } else {
            // per-thread partial coboundaries, combined by XOR
            let members: Vec<usize> = self.bits.iter_ones().collect();
            let target_len = out.bits.len();
            let partial = members
                .par_chunks(1024)
                .map(|chunk| {
                    let mut acc = Bits::zeros(target_len);
                    let mut buf = vec![0; r];
                    for &k in chunk {
                        toggle_all(k, &mut buf, &mut |j| acc.toggle(j));
                    }
                    acc
                })
                .reduce(
                    || Bits::zeros(target_len),
                    |mut a, b| {
                        a.xor_assign(&b);
                        a
                    },
                );
            out.bits = partial;
        }
        Ok(out)
    }

    /// The star `E_v` and the link `lk(v, E) = { e \ {v} : v ∈ e ∈ E }`.
    pub fn link(&self, v: usize) -> Result<(Cochain, Cochain)> {
        self.check_vertex(v)?;
        if self.arity == 0 {
            return Err(Error::ArityOutOfRange { arity: 0, n: self.n });
        }
        let (n, r) = (self.n, self.arity);
        let v0 = v - 1;
        let mut star = Cochain::empty(n, r)?;
        let mut link = Cochain::empty(n, r - 1)?;
        let table = BinomTable::new(n, r);
        let mut buf = vec![0; r];
        for k in self.bits.iter_ones() {
            table.unrank_into(k as u64, n, &mut buf);
            if let Ok(pos) = buf.binary_search(&v0) {
                star.bits.set(k, true);
                let rest: u64 = buf
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != pos)
                    .map(|(i, &s)| table.get(s, if i < pos { i + 1 } else { i }))
                    .sum();
                link.bits.set(rest as usize, true);
            }
        }
        Ok((star, link))
    }

    /// Link size `|lk(v, E)|` for every vertex, indexed by `v - 1`.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        let table = BinomTable::new(self.n, self.arity);
        let mut buf = vec![0; self.arity];
        for k in self.bits.iter_ones() {
            table.unrank_into(k as u64, self.n, &mut buf);
            for &s in &buf {
                deg[s] += 1;
            }
        }
        deg
    }

    /// Number of members of `E` containing the face `x` (`|x| < arity`).
    pub fn face_degree(&self, x: &[usize]) -> Result<usize> {
        let mut x = x.to_vec();
        x.sort_unstable();
        if x.len() >= self.arity {
            return Err(Error::InvalidArgument(format!(
                "face of size {} is not smaller than arity {}",
                x.len(),
                self.arity
            )));
        }
        let xz = to_zero_based(&x, self.n)?;
        let table = BinomTable::new(self.n, self.arity);
        let mut buf = vec![0; self.arity];
        let mut count = 0;
        for k in self.bits.iter_ones() {
            table.unrank_into(k as u64, self.n, &mut buf);
            if xz.iter().all(|s| buf.binary_search(s).is_ok()) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// `face_degree` of every `(r-1)`-subset, indexed by colex rank.
    pub fn face_degrees(&self) -> Vec<u32> {
        let (n, r) = (self.n, self.arity);
        if r == 0 {
            return Vec::new();
        }
        let mut deg = vec![0u32; binomial(n, r - 1).expect("fits") as usize];
        let table = BinomTable::new(n, r);
        let mut buf = vec![0; r];
        for k in self.bits.iter_ones() {
            table.unrank_into(k as u64, n, &mut buf);
            let full = k as u64;
            for skip in 0..r {
                // drop position `skip`: later elements shift down one index
                let mut rank = full - table.get(buf[skip], skip + 1);
                for (i, &s) in buf.iter().enumerate().skip(skip + 1) {
                    rank = rank - table.get(s, i + 1) + table.get(s, i);
                }
                deg[rank as usize] += 1;
            }
        }
        deg
    }

    /// `δE = ∅`. Cochains of arity `n` are always cocycles.
    pub fn is_cocycle(&self) -> Result<bool> {
        if self.arity == 0 {
            return Err(Error::ArityZeroCoboundary);
        }
        if self.arity == self.n {
            return Ok(true);
        }
        Ok(self.coboundary()?.is_empty())
    }

    /// Whether `F = δD` for some `D`.
    ///
    /// On the simplex every cocycle of arity `>= 2` is a coboundary; at
    /// arity 1 only the empty cochain is one.
    pub fn is_coboundary(&self) -> bool {
        match self.arity {
            0 | 1 => self.is_empty(),
            _ => self.is_cocycle().unwrap_or(false),
        }
    }

    /// Fills a coboundary `F` by the link of a minimum-degree vertex.
    ///
    /// Returns `E = lk(v, F)` with `δE = F` and `‖E‖ <= ‖F‖`, where `v` has
    /// the smallest link among all vertices (smallest label on ties).
    pub fn fill_by_min_link(&self) -> Result<Cochain> {
        if self.arity < 2 {
            return Err(Error::ArityOutOfRange { arity: self.arity, n: self.n });
        }
        if !self.is_coboundary() {
            return Err(Error::NotACoboundary);
        }
        let deg = self.vertex_degrees();
        let v = (0..self.n).min_by_key(|&i| (deg[i], i)).unwrap() + 1;
        Ok(self.link(v)?.1)
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(n={}, arity={}, ", self.n, self.arity)?;
        f.debug_list().entries(self.sets()).finish()?;
        write!(f, ")")
    }
}

/// Convenience alias for the free-function form of `normalized_size`.
pub fn normalized_size(e: &Cochain) -> NormalizedSize {
    e.normalized_size()
}

/// Subset enumeration by brute force, as an independent check of the
/// rank-arithmetic coboundary.
#[cfg(test)]
pub(crate) fn naive_coboundary(e: &Cochain) -> Cochain {
    let (n, r) = (e.n(), e.arity());
    let members: Vec<Vec<usize>> = e.sets();
    let mut out = Vec::new();
    let mut f: Vec<usize> = (1..=r + 1).collect();
    loop {
        let hits = members.iter().filter(|m| m.iter().all(|x| f.contains(x))).count();
        if hits % 2 == 1 {
            out.push(f.clone());
        }
        // lexicographic successor of f over 1..=n
        let mut i = r + 1;
        loop {
            if i == 0 {
                return Cochain::from_sets(n, r + 1, out).unwrap();
            }
            i -= 1;
            if f[i] < n - (r - i) {
                f[i] += 1;
                for j in i + 1..=r {
                    f[j] = f[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, r: usize, sets: &[&[usize]]) -> Cochain {
        Cochain::from_sets(n, r, sets.iter().copied()).unwrap()
    }

    fn f_x() -> Cochain {
        c(5, 3, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]])
    }

    #[test]
    fn coboundary_of_f_xy() {
        let e = c(5, 2, &[&[2, 4], &[2, 5]]);
        let d = e.coboundary().unwrap();
        assert_eq!(d.sets(), vec![vec![1, 2, 4], vec![2, 3, 4], vec![1, 2, 5], vec![2, 3, 5]]);
        assert_eq!(d, naive_coboundary(&e));
    }

    #[test]
    fn coboundary_trivial_cases() {
        assert!(Cochain::empty(5, 2).unwrap().coboundary().unwrap().is_empty());
        let s = c(3, 1, &[&[1]]);
        assert_eq!(s.coboundary().unwrap(), c(3, 2, &[&[1, 2], &[1, 3]]));
        assert_eq!(Cochain::empty(4, 0).unwrap().coboundary(), Err(Error::ArityZeroCoboundary));
        assert!(matches!(Cochain::full(4, 4).unwrap().coboundary(), Err(Error::ArityOutOfRange { .. })));
    }

    #[test]
    fn addition() {
        let f_y = c(5, 3, &[&[1, 2, 3], &[2, 3, 4], &[2, 3, 5]]);
        let sum = f_x().add(&f_y).unwrap();
        assert_eq!(sum, c(5, 3, &[&[1, 2, 4], &[1, 2, 5], &[2, 3, 4], &[2, 3, 5]]));
        assert!(f_x().add(&f_x()).unwrap().is_empty());
        assert_eq!(f_x().add(&Cochain::empty(5, 3).unwrap()).unwrap(), f_x());
        assert!(matches!(f_x().add(&Cochain::empty(5, 2).unwrap()), Err(Error::ArityMismatch { .. })));
        assert!(matches!(f_x().add(&Cochain::empty(6, 3).unwrap()), Err(Error::GroundMismatch { .. })));
    }

    #[test]
    fn normalized_sizes() {
        let e = c(5, 2, &[&[2, 4], &[2, 5]]);
        assert_eq!(e.normalized_size().ratio(), Ratio::new(1, 5));
        assert_eq!(e.normalized_size(), NormalizedSize::new(2, 10));
        assert_eq!(Cochain::empty(5, 2).unwrap().normalized_size().count, 0);
        assert_eq!(Cochain::full(6, 2).unwrap().normalized_size().ratio(), Ratio::new(1, 1));
    }

    #[test]
    fn links() {
        let e = c(5, 2, &[&[2, 4], &[2, 5]]);
        let (star, link) = e.link(2).unwrap();
        assert_eq!(star, e);
        assert_eq!(link, c(5, 1, &[&[4], &[5]]));
        let (star, link) = f_x().link(3).unwrap();
        assert_eq!(star, c(5, 3, &[&[1, 2, 3]]));
        assert_eq!(link, c(5, 2, &[&[1, 2]]));
        let (star, link) = Cochain::empty(5, 3).unwrap().link(1).unwrap();
        assert!(star.is_empty() && link.is_empty());
        assert!(matches!(e.link(6), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn face_degrees() {
        let e = c(5, 2, &[&[2, 4], &[2, 5]]);
        assert_eq!(e.face_degree(&[2]).unwrap(), 2);
        assert_eq!(f_x().face_degree(&[1, 2]).unwrap(), 3);
        assert_eq!(Cochain::empty(5, 2).unwrap().face_degree(&[4]).unwrap(), 0);
        assert!(e.face_degree(&[2, 4]).is_err());
        assert_eq!(e.vertex_degrees(), vec![0, 2, 0, 1, 1]);
        let fd = f_x().face_degrees();
        assert_eq!(fd[subset_rank(&[1, 2], 5).unwrap() as usize], 3);
        assert_eq!(fd.iter().sum::<u32>(), 9);
    }

    #[test]
    fn cocycles_and_coboundaries() {
        let f_z = c(5, 3, &[&[1, 2, 3], &[1, 3, 5], &[2, 3, 4], &[3, 4, 5]]);
        assert!(f_z.is_cocycle().unwrap());
        assert!(f_z.is_coboundary());
        assert!(!c(5, 3, &[&[1, 2, 3]]).is_cocycle().unwrap());
        let v = Cochain::full(5, 1).unwrap();
        assert!(v.is_cocycle().unwrap());
        assert!(!v.is_coboundary());
        for r in 1..=5 {
            assert!(Cochain::empty(5, r).unwrap().is_coboundary());
        }
        assert!(Cochain::full(4, 4).unwrap().is_cocycle().unwrap());
    }

    #[test]
    fn fill_picks_min_degree_vertex() {
        let e = f_x().fill_by_min_link().unwrap();
        assert_eq!(e, c(5, 2, &[&[1, 2]]));
        assert_eq!(e.coboundary().unwrap(), f_x());
        assert!(Cochain::empty(5, 3).unwrap().fill_by_min_link().unwrap().is_empty());
        assert_eq!(c(5, 3, &[&[1, 2, 3]]).fill_by_min_link(), Err(Error::NotACoboundary));
    }

    #[test]
    fn large_coboundary_matches_serial_path() {
        // exercises the parallel branch (>= 4096 members)
        let n = 32;
        let e = Cochain::from_ranks(n, 3, (0..4960).filter(|k| k % 7 != 0)).unwrap();
        let big = e.coboundary().unwrap();
        let mut serial = Cochain::empty(n, 4).unwrap();
        for k in e.ranks().collect::<Vec<_>>().chunks(512) {
            let part = Cochain::from_ranks(n, 3, k.iter().copied()).unwrap();
            serial.add_assign(&part.coboundary().unwrap()).unwrap();
        }
        assert_eq!(big, serial);
        assert!(big.coboundary().unwrap().is_empty());
    }
}
