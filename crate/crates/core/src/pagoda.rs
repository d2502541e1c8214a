//! Pagodas: four vertex sets, six graphs, four triple systems and a top,
//! tied together by coboundary relations.
//!
//! Index conventions (0-based parts): pairs in the order
//! `12, 13, 14, 23, 24, 34`, triples in the order `123, 124, 134, 234`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain, CochainJson};
use crate::constructions::{blocks, complete_multipartite};
use crate::error::{Error, Result};
use crate::minimality::{is_minimal, necessary_conditions, Method};
use crate::numeric::{bisect_bracket, BISECTION_TOL};

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];

pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    PAIRS.iter().position(|&p| p == (i, j)).expect("distinct parts below 4")
}

pub fn triple_index(i: usize, j: usize, k: usize) -> usize {
    let mut t = [i, j, k];
    t.sort_unstable();
    TRIPLES.iter().position(|&p| p == (t[0], t[1], t[2])).expect("distinct parts below 4")
}

fn pair_name(p: usize) -> String {
    let (i, j) = PAIRS[p];
    format!("E{}{}", i + 1, j + 1)
}

fn triple_name(t: usize) -> String {
    let (i, j, k) = TRIPLES[t];
    format!("F{}{}{}", i + 1, j + 1, k + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pagoda {
    pub n: usize,
    pub v: [Cochain; 4],
    pub e: [Cochain; 6],
    pub f: [Cochain; 4],
    pub g: Cochain,
}

impl Pagoda {
    pub fn new(v: [Cochain; 4], e: [Cochain; 6], f: [Cochain; 4], g: Cochain) -> Result<Self> {
        let n = g.n();
        let shapes = v.iter().map(|c| (c, 1)).chain(e.iter().map(|c| (c, 2))).chain(f.iter().map(|c| (c, 3)));
        for (c, r) in shapes.chain(std::iter::once((&g, 4))) {
            if c.n() != n {
                return Err(Error::GroundMismatch { left: c.n(), right: n });
            }
            if c.arity() != r {
                return Err(Error::ArityMismatch { left: c.arity(), right: r });
            }
        }
        Ok(Self { n, v, e, f, g })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (i, c) in self.v.iter().enumerate() {
            m.insert(format!("V{}", i + 1), c.to_json_value());
        }
        for (p, c) in self.e.iter().enumerate() {
            m.insert(pair_name(p), c.to_json_value());
        }
        for (t, c) in self.f.iter().enumerate() {
            m.insert(triple_name(t), c.to_json_value());
        }
        m.insert("G".into(), self.g.to_json_value());
        serde_json::Value::Object(m)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let get = |k: &str| -> Result<Cochain> {
            let field = v.get(k).ok_or_else(|| Error::Parse(format!("pagoda is missing {k}")))?;
            let j: CochainJson =
                serde_json::from_value(field.clone()).map_err(|e| Error::Parse(format!("{k}: {e}")))?;
            j.to_cochain()
        };
        let vs = [get("V1")?, get("V2")?, get("V3")?, get("V4")?];
        let es = [get("E12")?, get("E13")?, get("E14")?, get("E23")?, get("E24")?, get("E34")?];
        let fs = [get("F123")?, get("F124")?, get("F134")?, get("F234")?];
        Pagoda::new(vs, es, fs, get("G")?)
    }
}

/// V_i are the parts, E_ij, F_ijk, G the complete multipartite systems.
pub fn multipartite_pagoda(part_sizes: [usize; 4]) -> Result<Pagoda> {
    if part_sizes.contains(&0) {
        return Err(Error::InvalidArgument("parts must be nonempty".into()));
    }
    let n: usize = part_sizes.iter().sum();
    let parts = blocks(&part_sizes);
    let v = std::array::from_fn(|i| complete_multipartite(n, &parts[i..=i]).expect("valid"));
    let e = std::array::from_fn(|p| {
        let (i, j) = PAIRS[p];
        complete_multipartite(n, &[parts[i].clone(), parts[j].clone()]).expect("valid")
    });
    let f = std::array::from_fn(|t| {
        let (i, j, k) = TRIPLES[t];
        complete_multipartite(n, &[parts[i].clone(), parts[j].clone(), parts[k].clone()]).expect("valid")
    });
    let g = complete_multipartite(n, &parts)?;
    Pagoda::new(v, e, f, g)
}

/// Four equal quarters of `[n]`.
pub fn quadripartite_pagoda(n: usize) -> Result<Pagoda> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::InvalidArgument(format!("n = {n} is not a positive multiple of 4")));
    }
    multipartite_pagoda([n / 4; 4])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub relation: String,
    pub size: usize,
    /// Exact `size / C(n, arity)` as `p/q`.
    pub norm_exact: String,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MemberVerdict {
    pub name: String,
    pub minimal: bool,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PagodaReport {
    pub n: usize,
    pub eps: String,
    pub residuals: Vec<Residual>,
    pub max_residual: f64,
    pub residuals_ok: bool,
    pub members: Vec<MemberVerdict>,
    pub all_minimal: bool,
    /// Every member verdict came from an exact test.
    pub all_exact: bool,
    pub g_size: usize,
    pub g_norm_exact: String,
    pub g_norm: f64,
    pub passes: bool,
}

impl PagodaReport {
    /// `n / (16 (n-1))`, the floor on `‖G‖` forced by exact minimality and
    /// exact relations.
    pub fn top_floor(&self) -> BigRational {
        BigRational::new(BigInt::from(self.n), BigInt::from(16 * (self.n - 1)))
    }

    /// Whether `‖G‖` clears [`Self::top_floor`]; only meaningful when the
    /// pagoda passes at slack 0 with exact verdicts.
    pub fn top_audit(&self) -> Option<bool> {
        (self.passes && self.all_exact && self.eps == "0")
            .then(|| BigRational::new(BigInt::from(self.g_size), BigInt::from(binom(self.n, 4))) >= self.top_floor())
    }
}

fn binom(n: usize, k: usize) -> u64 {
    crate::cochain::binomial(n, k).expect("small")
}

fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn residual(name: String, c: &Cochain) -> (Residual, BigRational) {
    let q = BigRational::new(BigInt::from(c.len()), BigInt::from(c.capacity()));
    let r =
        Residual { relation: name, size: c.len(), norm_exact: ratio_string(&q), norm: q.to_f64().unwrap_or(f64::NAN) };
    (r, q)
}

/// The four relation residuals: `ΣV_i + V`, `δV_i + Σ_j E_ij`,
/// `δE_ij + Σ_k F_ijk`, `δF_ijk + G`.
pub fn residual_cochains(p: &Pagoda) -> Result<Vec<(String, Cochain)>> {
    let n = p.n;
    let mut out = Vec::with_capacity(15);
    let mut top = Cochain::full(n, 1)?;
    for v in &p.v {
        top.add_assign(v)?;
    }
    out.push(("V1+V2+V3+V4+V".to_string(), top));
    for i in 0..4 {
        let mut c = p.v[i].coboundary()?;
        for j in (0..4).filter(|&j| j != i) {
            c.add_assign(&p.e[pair_index(i, j)])?;
        }
        out.push((format!("dV{}+sum_j E{}j", i + 1, i + 1), c));
    }
    for (pi, &(i, j)) in PAIRS.iter().enumerate() {
        let mut c = p.e[pi].coboundary()?;
        for k in (0..4).filter(|&k| k != i && k != j) {
            c.add_assign(&p.f[triple_index(i, j, k)])?;
        }
        out.push((format!("d{}+sum_k F{}{}k", pair_name(pi), i + 1, j + 1), c));
    }
    for t in 0..4 {
        let mut c = p.f[t].coboundary()?;
        c.add_assign(&p.g)?;
        out.push((format!("d{}+G", triple_name(t)), c));
    }
    Ok(out)
}

fn member_verdicts(p: &Pagoda) -> Result<Vec<MemberVerdict>> {
    let mut members: Vec<(String, &Cochain)> = Vec::new();
    members.extend(p.v.iter().enumerate().map(|(i, c)| (format!("V{}", i + 1), c)));
    members.extend(p.e.iter().enumerate().map(|(i, c)| (pair_name(i), c)));
    members.extend(p.f.iter().enumerate().map(|(i, c)| (triple_name(i), c)));
    members
        .into_iter()
        .map(|(name, c)| {
            let v = is_minimal(c)?;
            Ok(MemberVerdict { name, minimal: v.minimal, method: v.method })
        })
        .collect()
}

/// Residual norms against slack `eps` and minimality of every member.
pub fn verify_pagoda(p: &Pagoda, eps: &BigRational) -> Result<PagodaReport> {
    let mut residuals = Vec::new();
    let mut residuals_ok = true;
    let mut max_residual = 0.0f64;
    for (name, c) in residual_cochains(p)? {
        let (r, q) = residual(name, &c);
        residuals_ok &= &q <= eps;
        max_residual = max_residual.max(r.norm);
        residuals.push(r);
    }
    let members = member_verdicts(p)?;
    let all_minimal = members.iter().all(|m| m.minimal);
    let all_exact = members.iter().all(|m| m.method == Method::Exact);
    let (g_res, _) = residual("G".into(), &p.g);
    Ok(PagodaReport {
        n: p.n,
        eps: if eps.is_zero() { "0".into() } else { ratio_string(eps) },
        residuals,
        max_residual,
        residuals_ok,
        all_minimal,
        all_exact,
        members,
        g_size: p.g.len(),
        g_norm_exact: g_res.norm_exact,
        g_norm: g_res.norm,
        passes: residuals_ok && all_minimal,
    })
}

/// The numeric chain bounding the top of a pagoda from below.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop9Chain {
    pub eps0: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub f_value: f64,
    /// `f(ε₀) + 2ε₀`.
    pub bound: f64,
}

pub fn prop9_chain(eps0: f64) -> Result<Prop9Chain> {
    if !(0.0..1.0 / 48.0).contains(&eps0) {
        return Err(Error::OutOfDomain { name: "prop9".into(), alpha: eps0, lo: 0.0, hi: 1.0 / 48.0 });
    }
    let eps1 = (1.0 - (1.0 - 48.0 * eps0).sqrt()) / 4.0;
    let eps2 = 3.0 / 8.0 - 2.0 * (0.25 - 3.0 * eps1) * (0.75 + 3.0 * eps1);
    let f_value = 6.0 * eps0 + 6.75 * eps1 - 24.0 * eps1 * eps1 + 1.5 * eps2 - 2.0 * eps1 * eps2;
    Ok(Prop9Chain { eps0, eps1, eps2, f_value, bound: f_value + 2.0 * eps0 })
}

/// Root of `f(ε) + 2ε = 1/16` on `(0, 1/48)`, returned as
/// `(ε₀*, 1/16 + ε₀*)`.
pub fn solve_c3_lower() -> Result<(f64, f64)> {
    let g = |e: f64| prop9_chain(e).map(|c| c.bound - 1.0 / 16.0).unwrap_or(f64::INFINITY);
    let (lo, hi) = bisect_bracket(g, 0.0, 1.0 / 48.0 - 1e-15, BISECTION_TOL)?;
    let eps = 0.5 * (lo + hi);
    Ok((eps, 1.0 / 16.0 + eps))
}

/// Exactness-preserving local moves; each keeps every relation residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    /// Toggle vertex `v` in `V_i`, `V_j`; add `δ{v}` to `E_ij`.
    Vertex { v: usize, pair: usize },
    /// Toggle edge `x` in the three graphs of a triple; add `δ{x}` to `F_ijk`.
    Edge { x: usize, triple: usize },
    /// Toggle triple `y` in all four `F`; add `δ{y}` to `G`.
    Triple { y: usize },
}

fn apply(p: &mut Pagoda, m: Move) -> Result<Vec<(usize, usize)>> {
    let n = p.n;
    // (arity, index) of the changed members, for re-checking minimality
    Ok(match m {
        Move::Vertex { v, pair } => {
            let s = Cochain::from_ranks(n, 1, [v])?;
            let (i, j) = PAIRS[pair];
            p.v[i].add_assign(&s)?;
            p.v[j].add_assign(&s)?;
            p.e[pair].add_assign(&s.coboundary()?)?;
            vec![(1, i), (1, j), (2, pair)]
        }
        Move::Edge { x, triple } => {
            let s = Cochain::from_ranks(n, 2, [x])?;
            let (i, j, k) = TRIPLES[triple];
            for pair in [pair_index(i, j), pair_index(i, k), pair_index(j, k)] {
                p.e[pair].add_assign(&s)?;
            }
            p.f[triple].add_assign(&s.coboundary()?)?;
            vec![(2, pair_index(i, j)), (2, pair_index(i, k)), (2, pair_index(j, k)), (3, triple)]
        }
        Move::Triple { y } => {
            let s = Cochain::from_ranks(n, 3, [y])?;
            for f in p.f.iter_mut() {
                f.add_assign(&s)?;
            }
            p.g.add_assign(&s.coboundary()?)?;
            vec![(3, 0), (3, 1), (3, 2), (3, 3)]
        }
    })
}

fn member(p: &Pagoda, (arity, idx): (usize, usize)) -> &Cochain {
    match arity {
        1 => &p.v[idx],
        2 => &p.e[idx],
        _ => &p.f[idx],
    }
}

fn still_minimal(p: &Pagoda, changed: &[(usize, usize)]) -> Result<bool> {
    for &c in changed {
        let m = member(p, c);
        if !necessary_conditions(m)?.passes() || !is_minimal(m)?.minimal {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub pagoda: Pagoda,
    pub report: PagodaReport,
    pub seed: u64,
    pub accepted: usize,
    pub tried: usize,
    pub budget_exhausted: bool,
}

fn balanced_parts(n: usize) -> [usize; 4] {
    std::array::from_fn(|i| n / 4 + usize::from(i < n % 4))
}

fn search_one(start: &Pagoda, budget: usize, seed: u64) -> Result<(Pagoda, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = start.clone();
    let n = cur.n;
    let (c1, c2, c3) = (n, cur.e[0].capacity(), cur.f[0].capacity());
    let mut accepted = 0;
    for _ in 0..budget {
        let m = match rng.gen_range(0..3) {
            0 => Move::Vertex { v: rng.gen_range(0..c1), pair: rng.gen_range(0..6) },
            1 => Move::Edge { x: rng.gen_range(0..c2), triple: rng.gen_range(0..4) },
            _ => Move::Triple { y: rng.gen_range(0..c3) },
        };
        let mut next = cur.clone();
        let changed = apply(&mut next, m)?;
        if next.g.len() <= cur.g.len() && still_minimal(&next, &changed)? {
            cur = next;
            accepted += 1;
        }
    }
    Ok((cur, accepted))
}

/// Local search for small tops, from the balanced multipartite pagoda.
///
/// Runs `seeds` independent walks of `budget` moves each; every move keeps
/// the relations exact, and is kept when the changed members stay minimal
/// and `|G|` does not grow. Heuristic: the result is not claimed optimal.
pub fn pagoda_search(n: usize, budget: usize, seed: u64, seeds: usize) -> Result<SearchOutcome> {
    if n < 4 {
        return Err(Error::InvalidArgument("pagoda search needs n >= 4".into()));
    }
    let start = multipartite_pagoda(balanced_parts(n))?;
    let runs: Vec<(u64, Pagoda, usize)> = (0..seeds.max(1) as u64)
        .into_par_iter()
        .map(|s| search_one(&start, budget, seed.wrapping_add(s)).map(|(p, a)| (seed.wrapping_add(s), p, a)))
        .collect::<Result<_>>()?;
    let (best_seed, best, accepted) = runs.into_iter().min_by_key(|(_, p, _)| p.g.len()).expect("at least one seed");
    let report = verify_pagoda(&best, &BigRational::zero())?;
    Ok(SearchOutcome { pagoda: best, report, seed: best_seed, accepted, tried: budget, budget_exhausted: true })
}
