//! Named extremal and counterexample cochains with exact counts.
//!
//! Parts are consecutive label blocks: sizes `(2, 3, 1)` give
//! `V_1 = {1,2}`, `V_2 = {3,4,5}`, `V_3 = {6}`.

use serde::Serialize;

use crate::cochain::{Cochain, CochainJson};
use crate::error::{Error, Result};

/// Consecutive label blocks for the given part sizes.
pub fn blocks(part_sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut next = 1;
    part_sizes
        .iter()
        .map(|&s| {
            let b: Vec<usize> = (next..next + s).collect();
            next += s;
            b
        })
        .collect()
}

/// All sets taking exactly one element from each part.
pub fn transversals(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for part in parts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                part.iter().map(move |&v| {
                    let mut s = prefix.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

/// The complete `k`-partite `k`-uniform system over `parts`.
pub fn complete_multipartite(n: usize, parts: &[Vec<usize>]) -> Result<Cochain> {
    Cochain::from_sets(n, parts.len(), transversals(parts))
}

/// Applies a vertex permutation given as `perm[v - 1] = image of v`.
pub fn relabel(e: &Cochain, perm: &[usize]) -> Result<Cochain> {
    let n = e.n();
    let mut seen = vec![false; n];
    if perm.len() != n || !perm.iter().all(|&p| (1..=n).contains(&p) && !std::mem::replace(&mut seen[p - 1], true)) {
        return Err(Error::InvalidArgument(format!("not a permutation of 1..={n}")));
    }
    Cochain::from_sets(n, e.arity(), e.sets().into_iter().map(|s| s.iter().map(|&v| perm[v - 1]).collect::<Vec<_>>()))
}

/// The counting argument behind the minimality of the multipartite example.
///
/// Every `f ∈ F` contains a member of `E`, and any `d`-set lies in at most
/// `max_load <= M = max |V_i|` members of `F`, so any `E'` with `δE' = F`
/// has `|E'| >= |F| / max_load`. This certifies minimality when it reaches
/// `|E|`, which happens when `V_{d+1}` is a largest part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringCertificate {
    pub min_cover: usize,
    pub max_load: usize,
    pub max_part: usize,
    pub f_count: usize,
    pub e_count: usize,
}

impl CoveringCertificate {
    /// The chain itself: covering and load bounds hold.
    pub fn holds(&self) -> bool {
        self.min_cover >= 1 && self.max_load <= self.max_part
    }

    /// `|F| / max_load >= |E|`.
    pub fn certifies_minimality(&self) -> bool {
        self.holds() && self.f_count >= self.e_count * self.max_load
    }
}

#[derive(Clone, Debug)]
pub struct PartitionedExample {
    pub part_sizes: Vec<usize>,
    pub d: usize,
    pub e: Cochain,
    pub f: Cochain,
    pub predicted_e_count: u64,
    pub predicted_f_count: u64,
}

impl PartitionedExample {
    pub fn n(&self) -> usize {
        self.e.n()
    }

    pub fn provenance(&self) -> String {
        format!("multipartite_example(n={}, d={}, parts={:?})", self.n(), self.d, self.part_sizes)
    }

    pub fn e_json(&self) -> CochainJson {
        CochainJson::from_cochain(&self.e).with_provenance(self.provenance())
    }

    pub fn f_json(&self) -> CochainJson {
        CochainJson::from_cochain(&self.f).with_provenance(format!("coboundary of {}", self.provenance()))
    }

    pub fn covering_certificate(&self) -> CoveringCertificate {
        let f_sets = self.f.sets();
        let e_sets = self.e.sets();
        let sub = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        let min_cover = f_sets.iter().map(|f| e_sets.iter().filter(|e| sub(e, f)).count()).min().unwrap_or(usize::MAX);
        let max_load = self.f.face_degrees().into_iter().max().unwrap_or(0) as usize;
        CoveringCertificate {
            min_cover,
            max_load,
            max_part: self.part_sizes.iter().copied().max().unwrap_or(0),
            f_count: self.f.len(),
            e_count: e_sets.len(),
        }
    }

    pub fn relabeled(&self, perm: &[usize]) -> Result<PartitionedExample> {
        Ok(PartitionedExample { e: relabel(&self.e, perm)?, f: relabel(&self.f, perm)?, ..self.clone() })
    }
}

/// `E` = all `d`-sets with one point in each of `V_1..V_d`; `F = δE` is then
/// the complete `(d+1)`-partite system on `V_1..V_{d+1}`.
pub fn multipartite_example(n: usize, d: usize, part_sizes: &[usize]) -> Result<PartitionedExample> {
    if d == 0 || part_sizes.len() != d + 1 {
        return Err(Error::InvalidArgument(format!("need d + 1 = {} parts, got {}", d + 1, part_sizes.len())));
    }
    if part_sizes.contains(&0) || part_sizes.iter().sum::<usize>() != n {
        return Err(Error::InvalidArgument(format!("part sizes {part_sizes:?} must be positive and sum to {n}")));
    }
    let parts = blocks(part_sizes);
    let e = complete_multipartite(n, &parts[..d])?;
    let f = e.coboundary()?;
    if f != complete_multipartite(n, &parts)? {
        return Err(Error::Hypothesis("coboundary is not the complete multipartite system".into()));
    }
    let prod = |s: &[usize]| s.iter().map(|&x| x as u64).product::<u64>();
    Ok(PartitionedExample {
        part_sizes: part_sizes.to_vec(),
        d,
        predicted_e_count: prod(&part_sizes[..d]),
        predicted_f_count: prod(part_sizes),
        e,
        f,
    })
}

/// `S = {1..s}` and its edge cut `δS`, of size `s(n - s)`.
pub fn edge_cut_example(n: usize, s: usize) -> Result<(Cochain, Cochain)> {
    if s > n {
        return Err(Error::InvalidArgument(format!("s = {s} exceeds n = {n}")));
    }
    let set = Cochain::from_ranks(n, 1, 0..s)?;
    let cut = set.coboundary()?;
    Ok((set, cut))
}

#[derive(Clone, Debug)]
pub struct BipartiteExample {
    pub a: usize,
    pub b: usize,
    pub e: Cochain,
    pub delta: Cochain,
    /// `a * b * (n - a - b)`: each odd triple has one vertex in each of
    /// `V_1`, `V_2` and the rest.
    pub predicted_delta_count: u64,
}

/// Complete bipartite graph between `V_1 = {1..a}` and
/// `V_2 = {a+1..a+n/2}`; satisfies the degree condition for `a <= n/4`
/// without being minimal.
pub fn nonminimal_bipartite_example(n: usize, a: usize) -> Result<BipartiteExample> {
    let b = n / 2;
    if a + b > n || n < 3 {
        return Err(Error::InvalidArgument(format!("a + n/2 = {} exceeds n = {n}", a + b)));
    }
    let e = if a == 0 { Cochain::empty(n, 2)? } else { complete_multipartite(n, &blocks(&[a, b]))? };
    let delta = e.coboundary()?;
    Ok(BipartiteExample { a, b, e, delta, predicted_delta_count: (a * b * (n - a - b)) as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimality::{is_minimal_exact, necessary_conditions, relaxed_degree_condition};
    use num_rational::Ratio;

    #[test]
    fn multipartite_counts() {
        let ex = multipartite_example(6, 2, &[2, 2, 2]).unwrap();
        assert_eq!((ex.e.len(), ex.f.len()), (4, 8));
        assert_eq!(ex.e.normalized_size().ratio(), Ratio::new(4, 15));
        assert_eq!(ex.f.normalized_size().ratio(), Ratio::new(8, 20));
        assert_eq!((ex.predicted_e_count, ex.predicted_f_count), (4, 8));
        let ex = multipartite_example(8, 3, &[2, 2, 2, 2]).unwrap();
        assert_eq!((ex.e.len(), ex.f.len()), (8, 16));
        assert!(ex.covering_certificate().certifies_minimality());
    }

    #[test]
    fn multipartite_is_minimal() {
        let ex = multipartite_example(6, 2, &[2, 2, 2]).unwrap();
        assert!(is_minimal_exact(&ex.e).unwrap().minimal);
        let ex = multipartite_example(7, 2, &[2, 2, 3]).unwrap();
        assert!(ex.covering_certificate().certifies_minimality());
        assert!(is_minimal_exact(&ex.e).unwrap().minimal);
        // with a larger part among V_1..V_d the count no longer certifies
        let ex = multipartite_example(7, 2, &[3, 2, 2]).unwrap();
        assert!(ex.covering_certificate().holds());
        assert!(!ex.covering_certificate().certifies_minimality());
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(multipartite_example(6, 2, &[3, 3]).is_err());
        assert!(multipartite_example(6, 2, &[2, 2, 3]).is_err());
        assert!(multipartite_example(6, 2, &[0, 3, 3]).is_err());
    }

    #[test]
    fn relabeling_preserves_structure() {
        let ex = multipartite_example(6, 2, &[2, 2, 2]).unwrap();
        let r = ex.relabeled(&[6, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(r.e.coboundary().unwrap(), r.f);
        assert_eq!(r.e.len(), 4);
        assert!(relabel(&ex.e, &[1, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn edge_cuts() {
        assert_eq!(edge_cut_example(6, 3).unwrap().1.len(), 9);
        assert!(edge_cut_example(6, 0).unwrap().1.is_empty());
        for s in 0..=10 {
            let (_, cut) = edge_cut_example(10, s).unwrap();
            assert_eq!(cut.normalized_size().ratio(), Ratio::new((s * (10 - s)) as u64, 45));
        }
    }

    #[test]
    fn bipartite_example() {
        for n in [8, 12, 16] {
            for a in 0..=n / 4 {
                let ex = nonminimal_bipartite_example(n, a).unwrap();
                assert_eq!(ex.delta.len() as u64, ex.predicted_delta_count);
                assert!(relaxed_degree_condition(&ex.e));
                // vertices of V_1 have degree n/2, one over (n - 1)/2
                assert_eq!(necessary_conditions(&ex.e).unwrap().passes(), a == 0);
            }
        }
        assert!(nonminimal_bipartite_example(8, 0).unwrap().e.is_empty());
        assert!(!is_minimal_exact(&nonminimal_bipartite_example(8, 2).unwrap().e).unwrap().minimal);
        assert!(nonminimal_bipartite_example(8, 5).is_err());
    }

    #[test]
    fn provenance_is_attached() {
        let ex = multipartite_example(6, 2, &[2, 2, 2]).unwrap();
        let j = serde_json::to_value(ex.e_json()).unwrap();
        assert!(j["provenance"].as_str().unwrap().starts_with("multipartite_example"));
    }
}
