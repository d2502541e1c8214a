//! Minimality of a cochain within its switching class `E + ker δ`.
//!
//! For arity `r >= 2` the class is `E + {δD}`, spanned by `δ{x}` over the
//! `(r-1)`-subsets `x` of `[n-1]`; those vectors are independent and have
//! colex ranks `0..C(n-1, r-1)`, so a coefficient mask over the basis is also
//! the bit vector of `D`. At arity 1 the class is `{E, E + V}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{binomial, checked_count, BinomTable, Bits, CoboundaryOperator, Cochain};
use crate::error::{Error, Result};

/// Largest switching-space dimension enumerated exactly.
pub const MAX_EXACT_RANK: usize = 28;

/// Below this dimension the coset walk stays on one thread.
const PARALLEL_RANK: usize = 16;
const PREFIX_BITS: usize = 6;

/// A GF(2) basis of the arity-`r` coboundaries, found by elimination.
#[derive(Clone, Debug)]
pub struct CoboundaryBasis {
    pub n: usize,
    pub arity: usize,
    /// `(δ{x}, x)` pairs; `x` is the `(r-1)`-subset, as labels.
    pub vectors: Vec<(Cochain, Vec<usize>)>,
}

impl CoboundaryBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Row-reduces `{δ{x}}` over all `(r-1)`-subsets `x`, keeping the first
/// independent ones in colex order.
pub fn coboundary_basis(n: usize, r: usize) -> Result<CoboundaryBasis> {
    if r == 0 {
        return Err(Error::ArityOutOfRange { arity: 0, n });
    }
    if r > n {
        return Err(Error::ArityOutOfRange { arity: r, n });
    }
    if r == 1 {
        // non-reduced: the only arity-1 coboundary is ∅
        return Ok(CoboundaryBasis { n, arity: 1, vectors: Vec::new() });
    }
    let op = CoboundaryOperator::new(n, r - 1)?;
    if op.source_len().saturating_mul(op.target_len()) > 1 << 32 {
        return Err(Error::TooLarge { n, r });
    }
    let table = BinomTable::new(n, r - 1);
    let mut pivots: Vec<Option<Bits>> = vec![None; op.target_len()];
    let mut vectors = Vec::new();
    let mut x = vec![0; r - 1];
    for k in 0..op.source_len() {
        let col = Cochain::from_ranks(n, r, op.column(k).iter().map(|&t| t as usize))?;
        let mut v = col.bits().clone();
        while let Some(p) = v.highest_one() {
            match &pivots[p] {
                Some(row) => v.xor_assign(row),
                None => break,
            }
        }
        if let Some(p) = v.highest_one() {
            pivots[p] = Some(v);
            table.unrank_into(k as u64, n, &mut x);
            vectors.push((col, x.iter().map(|s| s + 1).collect()));
        }
    }
    Ok(CoboundaryBasis { n, arity: r, vectors })
}

/// Dimension of the switching space `ker δ` at arity `r`.
pub fn switching_rank(n: usize, r: usize) -> usize {
    match r {
        0 => 0,
        1 => 1,
        _ => binomial(n - 1, r - 1).map_or(usize::MAX, |c| usize::try_from(c).unwrap_or(usize::MAX)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    NecessaryOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub minimal: bool,
    pub method: Method,
    /// `D` with `‖E + δD‖ < ‖E‖`. Absent at arity 1, where the smaller
    /// class member `E + V` is not a coboundary shift.
    pub witness: Option<Cochain>,
    /// The strictly smaller class member, when one was found.
    pub reduced: Option<Cochain>,
    pub coset_rank: usize,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "minimal": self.minimal,
            "method": self.method,
            "witness": self.witness.as_ref().map(Cochain::to_json_value),
            "reduced": self.reduced.as_ref().map(Cochain::to_json_value),
            "coset_rank": self.coset_rank,
        })
    }
}

/// Word-vector view of the switching space used by the coset walk.
struct Switching {
    n: usize,
    arity: usize,
    len: usize,
    basis: Vec<Vec<u64>>,
}

impl Switching {
    fn new(n: usize, r: usize) -> Result<Self> {
        let len = checked_count(n, r)?;
        let rank = switching_rank(n, r);
        if rank > MAX_EXACT_RANK {
            return Err(Error::CosetTooLarge { rank, limit: MAX_EXACT_RANK });
        }
        let basis = match r {
            0 => Vec::new(),
            1 => vec![Bits::ones(len).words().to_vec()],
            _ => {
                let op = CoboundaryOperator::new(n, r - 1)?;
                (0..rank)
                    .map(|k| {
                        let mut b = Bits::zeros(len);
                        for &t in op.column(k) {
                            b.set(t as usize, true);
                        }
                        b.words().to_vec()
                    })
                    .collect()
            }
        };
        Ok(Self { n, arity: r, len, basis })
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn cochain(&self, words: &[u64]) -> Cochain {
        Cochain::from_bits(self.n, self.arity, Bits::from_words(words.to_vec(), self.len)).expect("sized")
    }

    fn preimage(&self, mask: u64) -> Option<Cochain> {
        if self.arity < 2 {
            return None;
        }
        let len = checked_count(self.n, self.arity - 1).expect("sized");
        let mut d = Bits::zeros(len);
        let mut m = mask;
        while m != 0 {
            d.set(m.trailing_zeros() as usize, true);
            m &= m - 1;
        }
        Some(Cochain::from_bits(self.n, self.arity - 1, d).expect("sized"))
    }
}

fn cmp_words(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

#[derive(Clone)]
struct Found {
    weight: usize,
    words: Vec<u64>,
    mask: u64,
}

impl Found {
    /// Keeps the smaller by `(weight, colex)`.
    fn better_of(a: Option<Found>, b: Option<Found>) -> Option<Found> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                let ord = a.weight.cmp(&b.weight).then_with(|| cmp_words(&a.words, &b.words));
                Some(if ord.is_le() { a } else { b })
            }
        }
    }

    /// Keeps the colex-smaller.
    fn colex_of(a: Option<Found>, b: Option<Found>) -> Option<Found> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(if cmp_words(&a.words, &b.words).is_le() { a } else { b }),
        }
    }
}

#[derive(Default)]
struct WalkResult {
    best: Option<Found>,
    smaller: Option<Found>,
}

impl WalkResult {
    fn merge(self, other: WalkResult) -> WalkResult {
        WalkResult {
            best: Found::better_of(self.best, other.best),
            smaller: Found::colex_of(self.smaller, other.smaller),
        }
    }
}

/// Gray-code walk over one block of `2^low` coefficient masks sharing the
/// high prefix `prefix`.
fn walk_block(sw: &Switching, start: &[u64], threshold: usize, low: usize, prefix: u64) -> WalkResult {
    let mut cur = start.to_vec();
    let mut mask = prefix << low;
    for (j, b) in sw.basis[low..].iter().enumerate() {
        if prefix >> j & 1 == 1 {
            cur.iter_mut().zip(b).for_each(|(c, x)| *c ^= x);
        }
    }
    let mut out = WalkResult::default();
    let mut best_w = usize::MAX;
    let mut consider = |cur: &[u64], mask: u64, out: &mut WalkResult| {
        let w: usize = cur.iter().map(|x| x.count_ones() as usize).sum();
        if w < best_w || (w == best_w && out.best.as_ref().is_some_and(|b| cmp_words(cur, &b.words).is_lt())) {
            best_w = w;
            out.best = Some(Found { weight: w, words: cur.to_vec(), mask });
        }
        if w < threshold && out.smaller.as_ref().is_none_or(|s| cmp_words(cur, &s.words).is_lt()) {
            out.smaller = Some(Found { weight: w, words: cur.to_vec(), mask });
        }
    };
    consider(&cur, mask, &mut out);
    for i in 1u64..(1u64 << low) {
        let j = i.trailing_zeros() as usize;
        cur.iter_mut().zip(&sw.basis[j]).for_each(|(c, x)| *c ^= x);
        mask ^= 1 << j;
        consider(&cur, mask, &mut out);
    }
    out
}

fn walk(sw: &Switching, e: &Cochain) -> WalkResult {
    let k = sw.rank();
    let start = e.bits().words();
    let threshold = e.len();
    if k < PARALLEL_RANK {
        return walk_block(sw, start, threshold, k, 0);
    }
    let p = PREFIX_BITS.min(k);
    let low = k - p;
    (0..1u64 << p)
        .into_par_iter()
        .map(|h| walk_block(sw, start, threshold, low, h))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(WalkResult::default(), WalkResult::merge)
}

/// Exact test by enumerating the whole switching class.
pub fn is_minimal_exact(e: &Cochain) -> Result<Verdict> {
    let sw = Switching::new(e.n(), e.arity())?;
    let res = walk(&sw, e);
    Ok(match res.smaller {
        None => Verdict { minimal: true, method: Method::Exact, witness: None, reduced: None, coset_rank: sw.rank() },
        Some(f) => Verdict {
            minimal: false,
            method: Method::Exact,
            witness: sw.preimage(f.mask),
            reduced: Some(sw.cochain(&f.words)),
            coset_rank: sw.rank(),
        },
    })
}

/// Exact when the class is small enough, otherwise the necessary conditions.
pub fn is_minimal(e: &Cochain) -> Result<Verdict> {
    let rank = switching_rank(e.n(), e.arity());
    if rank <= MAX_EXACT_RANK {
        return is_minimal_exact(e);
    }
    let report = necessary_conditions(e)?;
    let witness = report
        .violations
        .first()
        .map(|v| Cochain::from_sets(e.n(), e.arity() - 1, [v.face.as_slice()]).expect("valid face"));
    let reduced = witness.as_ref().map(|d| switch(e, d).expect("same ground"));
    Ok(Verdict { minimal: report.passes(), method: Method::NecessaryOnly, witness, reduced, coset_rank: rank })
}

/// Smallest member of the switching class, colex-least on ties.
pub fn minimize_in_class(e: &Cochain) -> Result<Cochain> {
    let sw = Switching::new(e.n(), e.arity())?;
    let best = walk(&sw, e).best.expect("class is nonempty");
    Ok(sw.cochain(&best.words))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceViolation {
    pub face: Vec<usize>,
    pub degree: usize,
    /// `n - r + 1`; the condition is `2 * degree <= limit`.
    pub limit: usize,
}

/// Outcome of the necessary conditions for minimality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    /// `2|E| <= C(n, r)`.
    pub size_ok: bool,
    pub violations: Vec<FaceViolation>,
}

impl NecessaryReport {
    pub fn passes(&self) -> bool {
        self.size_ok && self.violations.is_empty()
    }
}

/// Checks `‖E‖ <= 1/2` and `face_degree(x) <= (n - r + 1)/2` for every
/// `(r-1)`-subset `x`.
pub fn necessary_conditions(e: &Cochain) -> Result<NecessaryReport> {
    let (n, r) = (e.n(), e.arity());
    if r == 0 {
        return Err(Error::ArityOutOfRange { arity: 0, n });
    }
    let size_ok = 2 * e.len() <= e.capacity();
    checked_count(n, r - 1)?;
    let deg = e.face_degrees();
    let limit = n - r + 1;
    let face_table = BinomTable::new(n, r - 1);
    let mut x = vec![0; r - 1];
    let violations = deg
        .iter()
        .enumerate()
        .filter(|&(_, &d)| 2 * d as usize > limit)
        .map(|(k, &d)| {
            face_table.unrank_into(k as u64, n, &mut x);
            FaceViolation { face: x.iter().map(|s| s + 1).collect(), degree: d as usize, limit }
        })
        .collect();
    Ok(NecessaryReport { size_ok, violations })
}

/// The graph form of the degree condition, `deg(v) <= n/2` for every
/// vertex. Weaker by one than the face condition at arity 2.
pub fn relaxed_degree_condition(e: &Cochain) -> bool {
    e.arity() == 2 && e.vertex_degrees().iter().all(|&d| 2 * d <= e.n())
}

/// `E + δD`.
pub fn switch(e: &Cochain, d: &Cochain) -> Result<Cochain> {
    if d.arity() + 1 != e.arity() {
        return Err(Error::ArityMismatch { left: e.arity(), right: d.arity() + 1 });
    }
    e.add(&d.coboundary()?)
}

/// Seidel switching of a graph `E` by a vertex set `S`: `E + δS`.
pub fn seidel_switch(e: &Cochain, s: &Cochain) -> Result<Cochain> {
    if e.arity() != 2 {
        return Err(Error::ArityMismatch { left: e.arity(), right: 2 });
    }
    switch(e, s)
}

/// Minimality of every cochain of one arity, for `C(n, r) <= 26`.
///
/// Each switching class is walked twice: once for its minimum size, once to
/// mark the members attaining it.
pub struct MinimalTable {
    n: usize,
    arity: usize,
    len: usize,
    minimal: Vec<u64>,
}

pub const MAX_TABLE_BITS: usize = 26;

impl MinimalTable {
    pub fn build(n: usize, r: usize) -> Result<Self> {
        let len = checked_count(n, r)?;
        if len > MAX_TABLE_BITS {
            return Err(Error::TooLarge { n, r });
        }
        let sw = Switching::new(n, r)?;
        let basis: Vec<u64> = sw.basis.iter().map(|b| b[0]).collect();
        let total = 1usize << len;
        let words = total.div_ceil(64);
        let mut visited = vec![0u64; words];
        let mut minimal = vec![0u64; words];
        let steps = 1u64 << basis.len();
        for start in 0..total {
            if visited[start / 64] >> (start % 64) & 1 == 1 {
                continue;
            }
            let mut cur = start as u64;
            let mut best = cur.count_ones();
            for i in 1..steps {
                cur ^= basis[i.trailing_zeros() as usize];
                best = best.min(cur.count_ones());
            }
            cur = start as u64;
            for i in 0..steps {
                if i > 0 {
                    cur ^= basis[i.trailing_zeros() as usize];
                }
                let c = cur as usize;
                visited[c / 64] |= 1 << (c % 64);
                if cur.count_ones() == best {
                    minimal[c / 64] |= 1 << (c % 64);
                }
            }
        }
        Ok(Self { n, arity: r, len, minimal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `C(n, r)`; cochains are indexed by `0..2^len`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_minimal_word(&self, word: u64) -> bool {
        let w = word as usize;
        self.minimal[w / 64] >> (w % 64) & 1 == 1
    }

    pub fn is_minimal(&self, e: &Cochain) -> bool {
        assert_eq!((e.n(), e.arity()), (self.n, self.arity));
        self.is_minimal_word(e.bits().as_word())
    }

    /// All minimal cochains, as words in increasing order.
    pub fn minimal_words(&self) -> impl Iterator<Item = u64> + '_ {
        self.minimal.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(i as u64 * 64 + b)
            })
        })
    }

    pub fn count(&self) -> usize {
        self.minimal.iter().map(|w| w.count_ones() as usize).sum()
    }
}
