//! Exact cofilling profiles at small `n`.
//!
//! For each size `s`, the least `|δE|` over minimal `E` with `|E| = s`.
//! Small systems use a full minimality table. Larger ones grow minimal sets
//! level by level: minimality is hereditary, so every minimal set of size
//! `s` is a minimal set of size `s - 1` plus one element of higher rank.

use rayon::prelude::*;
use serde::Serialize;

use super::bounds::BoundFunction;
use crate::cochain::{checked_count, Bits, CoboundaryOperator, Cochain};
use crate::error::{Error, Result};
use crate::minimality::{
    is_minimal_exact, necessary_conditions, switching_rank, MinimalTable, MAX_EXACT_RANK, MAX_TABLE_BITS,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRecord {
    pub n: usize,
    pub d: usize,
    pub e_size: usize,
    pub min_delta_size: usize,
    /// Colex-least minimal `E` of this size attaining the minimum.
    pub witness: Cochain,
    pub complete: bool,
}

impl ProfileRecord {
    pub fn norm_e(&self) -> f64 {
        self.witness.normalized_size().to_f64()
    }

    pub fn norm_delta(&self) -> f64 {
        self.min_delta_size as f64 / checked_count(self.n, self.d + 1).expect("sized") as f64
    }
}

#[derive(Clone, Debug)]
pub struct Profile {
    pub n: usize,
    pub d: usize,
    pub records: Vec<ProfileRecord>,
    pub complete: bool,
    /// Candidates examined (search path) or cochains tabulated (table path).
    pub work: u64,
}

#[derive(Serialize)]
struct Row<'a> {
    n: usize,
    d: usize,
    #[serde(rename = "E_size")]
    e_size: usize,
    min_delta_size: usize,
    #[serde(rename = "norm_E")]
    norm_e: f64,
    norm_delta: f64,
    witness_json: &'a str,
    complete_flag: bool,
}

fn delta_len(op: &CoboundaryOperator, cols: &[Bits], e: u64, buf: &mut [u64]) -> usize {
    buf.iter_mut().for_each(|w| *w = 0);
    let mut rest = e;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        buf.iter_mut().zip(cols[k].words()).for_each(|(b, c)| *b ^= c);
        rest &= rest - 1;
    }
    debug_assert_eq!(cols.len(), op.source_len());
    buf.iter().map(|w| w.count_ones() as usize).sum()
}

fn better(a: &(usize, Cochain), b: &(usize, Cochain)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1.bits().cmp_colex(b.1.bits()).is_lt())
}

fn table_profile(n: usize, d: usize) -> Result<Profile> {
    let table = MinimalTable::build(n, d)?;
    let op = CoboundaryOperator::new(n, d)?;
    let cols: Vec<Bits> = (0..op.source_len())
        .map(|k| {
            let mut b = Bits::zeros(op.target_len());
            op.column(k).iter().for_each(|&t| b.set(t as usize, true));
            b
        })
        .collect();
    let len = table.len();
    let mut best: Vec<Option<(usize, u64)>> = vec![None; len + 1];
    let mut buf = vec![0u64; op.target_len().div_ceil(64)];
    // increasing word order is colex order, so the first minimizer wins ties
    for w in table.minimal_words() {
        let s = w.count_ones() as usize;
        let m = delta_len(&op, &cols, w, &mut buf);
        if best[s].is_none_or(|(bm, _)| m < bm) {
            best[s] = Some((m, w));
        }
    }
    let records = best
        .into_iter()
        .enumerate()
        .filter_map(|(s, b)| b.map(|(m, w)| (s, m, w)))
        .map(|(s, m, w)| ProfileRecord {
            n,
            d,
            e_size: s,
            min_delta_size: m,
            witness: Cochain::from_bits(n, d, Bits::from_word(w, len)).expect("sized"),
            complete: true,
        })
        .collect();
    Ok(Profile { n, d, records, complete: true, work: 1 << len })
}

fn search_profile(n: usize, d: usize, budget: u64) -> Result<Profile> {
    let len = checked_count(n, d)?;
    let rank = switching_rank(n, d);
    if rank > MAX_EXACT_RANK {
        return Err(Error::CosetTooLarge { rank, limit: MAX_EXACT_RANK });
    }
    let empty = Cochain::empty(n, d)?;
    let mut records = vec![ProfileRecord { n, d, e_size: 0, min_delta_size: 0, witness: empty, complete: true }];
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    let mut work = 0u64;
    let mut complete = true;
    for s in 1..=len {
        let mut candidates: Vec<Vec<u32>> = Vec::new();
        'gen: for parent in &level {
            let start = parent.last().map_or(0, |&x| x as usize + 1);
            for x in start..len {
                if work >= budget {
                    complete = false;
                    break 'gen;
                }
                work += 1;
                let mut c = parent.clone();
                c.push(x as u32);
                candidates.push(c);
            }
        }
        let results: Vec<Option<(usize, Cochain)>> = candidates
            .par_iter()
            .map(|c| -> Result<Option<(usize, Cochain)>> {
                let e = Cochain::from_ranks(n, d, c.iter().map(|&x| x as usize))?;
                if !necessary_conditions(&e)?.passes() || !is_minimal_exact(&e)?.minimal {
                    return Ok(None);
                }
                Ok(Some((e.coboundary()?.len(), e)))
            })
            .collect::<Result<_>>()?;
        let mut best: Option<(usize, Cochain)> = None;
        let mut next = Vec::new();
        for (c, r) in candidates.into_iter().zip(results) {
            if let Some(found) = r {
                if best.as_ref().is_none_or(|b| better(&found, b)) {
                    best = Some(found);
                }
                next.push(c);
            }
        }
        match best {
            Some((m, w)) => records.push(ProfileRecord { n, d, e_size: s, min_delta_size: m, witness: w, complete }),
            None if complete => break,
            None => {}
        }
        if !complete {
            break;
        }
        level = next;
    }
    Ok(Profile { n, d, records, complete, work })
}

/// Exact profile of minimal arity-`d` cochains on `[n]`.
///
/// Uses the full table when `C(n, d) <= 26` and `2^C(n, d) <= budget`;
/// otherwise the level search, examining at most `budget` candidates and
/// flagging the result incomplete if it stops early.
pub fn profile_exact(n: usize, d: usize, budget: u64) -> Result<Profile> {
    if d == 0 || d >= n {
        return Err(Error::ArityOutOfRange { arity: d, n });
    }
    let len = checked_count(n, d)?;
    if len <= MAX_TABLE_BITS && (1u64 << len) <= budget {
        table_profile(n, d)
    } else {
        search_profile(n, d, budget)
    }
}

/// Pareto-optimal records: no other record has a larger or equal size
/// with a smaller or equal coboundary, one of them strict.
pub fn lower_envelope(records: &[ProfileRecord]) -> Vec<ProfileRecord> {
    let mut sorted: Vec<&ProfileRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.e_size);
    let mut out: Vec<ProfileRecord> = Vec::new();
    let mut floor = usize::MAX;
    for r in sorted.into_iter().rev() {
        if r.min_delta_size < floor {
            floor = r.min_delta_size;
            out.push(r.clone());
        }
    }
    out.reverse();
    out
}

pub fn profile_csv(records: &[ProfileRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        let witness = r.witness.to_json_string();
        w.serialize(Row {
            n: r.n,
            d: r.d,
            e_size: r.e_size,
            min_delta_size: r.min_delta_size,
            norm_e: r.norm_e(),
            norm_delta: r.norm_delta(),
            witness_json: &witness,
            complete_flag: r.complete,
        })
        .map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

pub fn bound_curve_csv(bounds: &[BoundFunction], samples: usize) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["alpha", "bound_name", "value"]).map_err(|e| Error::Parse(e.to_string()))?;
    for b in bounds {
        for (a, v) in super::bounds::bound_curve(b, samples)? {
            w.write_record([a.to_string(), b.label(), v.to_string()]).map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::multipartite_example;

    #[test]
    fn single_edge_record() {
        let p = profile_exact(5, 2, 1 << 20).unwrap();
        assert!(p.complete);
        let r = &p.records[1];
        assert_eq!((r.e_size, r.min_delta_size), (1, 3));
    }

    #[test]
    fn table_and_search_agree() {
        for (n, d) in [(5, 2), (6, 2), (5, 3), (8, 1)] {
            let t = profile_exact(n, d, 1 << 26).unwrap();
            let s = search_profile(n, d, u64::MAX).unwrap();
            assert!(s.complete);
            assert_eq!(t.records, s.records, "n={n} d={d}");
        }
    }

    #[test]
    fn multipartite_record_at_n6() {
        let p = profile_exact(6, 2, 1 << 20).unwrap();
        let ex = multipartite_example(6, 2, &[2, 2, 2]).unwrap();
        let r = &p.records[4];
        assert!(r.min_delta_size <= ex.f.len());
    }

    #[test]
    fn records_respect_basic_bound() {
        for (n, d) in [(5, 2), (6, 2), (6, 3), (7, 2)] {
            let p = profile_exact(n, d, 1 << 26).unwrap();
            for r in &p.records {
                assert!(is_minimal_exact(&r.witness).unwrap().minimal);
                assert_eq!(r.witness.len(), r.e_size);
                assert_eq!(r.witness.coboundary().unwrap().len(), r.min_delta_size);
                assert!(r.norm_delta() >= r.norm_e() - 1e-15, "n={n} d={d} {r:?}");
            }
        }
    }

    #[test]
    fn arity_one_profile_is_edge_cut() {
        let n = 10;
        let p = profile_exact(n, 1, 1 << 20).unwrap();
        assert_eq!(p.records.len(), n / 2 + 1);
        for r in &p.records {
            assert_eq!(r.min_delta_size, r.e_size * (n - r.e_size));
        }
    }

    #[test]
    fn budget_cut_is_flagged() {
        let p = profile_exact(8, 2, 100).unwrap();
        assert!(!p.complete);
        assert!(!p.records.last().unwrap().complete);
    }

    #[test]
    fn envelope_is_a_staircase() {
        let p = profile_exact(6, 2, 1 << 20).unwrap();
        let env = lower_envelope(&p.records);
        assert!(env.windows(2).all(|w| w[0].e_size < w[1].e_size && w[0].min_delta_size < w[1].min_delta_size));
        assert_eq!(env.last().unwrap().e_size, p.records.last().unwrap().e_size);
    }

    #[test]
    fn csv_output() {
        let p = profile_exact(5, 2, 1 << 20).unwrap();
        let s = profile_csv(&p.records[..2]).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), "n,d,E_size,min_delta_size,norm_E,norm_delta,witness_json,complete_flag");
        assert_eq!(lines.next().unwrap(), r#"5,2,0,0,0.0,0.0,"{""n"":5,""arity"":2,""sets"":[]}",true"#);
        let c = bound_curve_csv(&[BoundFunction::Phi1], 2).unwrap();
        assert_eq!(c.lines().nth(2).unwrap(), "0.25,phi1_exact,0.375");
    }
}
