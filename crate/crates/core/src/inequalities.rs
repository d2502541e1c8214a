//! Instance-level checks of the counting inequalities for graphs and
//! triple systems.
//!
//! Asymptotic statements are checked in an exact finite-`n` form; the
//! leading-order forms are reported alongside with their measured slack.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{binomial, checked_count, BinomTable, Bits, CoboundaryOperator, Cochain};
use crate::error::{Error, Result};
use crate::minimality::{is_minimal, Method, MinimalTable};
use crate::profile::BoundFunction;

fn big(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn f(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn binom(n: usize, k: usize) -> u64 {
    binomial(n, k).expect("small binomial")
}

/// One displayed inequality `lhs >= rhs` (or `lhs <= rhs`), evaluated exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Line {
    pub name: String,
    pub statement: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Line {
    fn ge(name: &str, statement: &str, lhs: &BigRational, rhs: &BigRational) -> Self {
        Self { name: name.into(), statement: statement.into(), lhs: f(lhs), rhs: f(rhs), holds: lhs >= rhs }
    }

    fn le(name: &str, statement: &str, lhs: &BigRational, rhs: &BigRational) -> Self {
        Self { name: name.into(), statement: statement.into(), lhs: f(lhs), rhs: f(rhs), holds: lhs <= rhs }
    }
}

fn require_arity(e: &Cochain, r: usize) -> Result<()> {
    if e.arity() != r {
        return Err(Error::ArityMismatch { left: e.arity(), right: r });
    }
    Ok(())
}

/// Triple counts of a graph by number of edges inside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieDecomposition {
    pub n: usize,
    pub edges: usize,
    /// Triples containing exactly 1, 2, 3 edges.
    pub m1: u64,
    pub m2: u64,
    pub m3: u64,
    /// Triangles, equal to `m3`.
    pub t: u64,
    pub degrees: Vec<usize>,
    /// `|δE|` from the coboundary itself.
    pub delta_size: u64,
}

impl PieDecomposition {
    /// `(n-2)|E| - Σ deg(deg-1) + 4t`.
    pub fn pieform(&self) -> i128 {
        let sum: i128 = self.degrees.iter().map(|&d| (d * d.saturating_sub(1)) as i128).sum();
        (self.n as i128 - 2) * self.edges as i128 - sum + 4 * self.t as i128
    }

    /// `(n-2)|E| - Σ deg²`, a lower bound on `|δE|`.
    pub fn truncpie(&self) -> i128 {
        let sum: i128 = self.degrees.iter().map(|&d| (d * d) as i128).sum();
        (self.n as i128 - 2) * self.edges as i128 - sum
    }

    pub fn identity_holds(&self) -> bool {
        self.delta_size == self.m1 + self.m3 && self.pieform() == self.delta_size as i128 && self.t == self.m3
    }
}

/// Counts triples by edges inside via an adjacency matrix and takes `|δE|`
/// from the coboundary, so the identity is checked against an independent
/// count.
pub fn pie_decompose(e: &Cochain) -> Result<PieDecomposition> {
    require_arity(e, 2)?;
    let n = e.n();
    let mut adj = vec![vec![false; n]; n];
    for s in e.sets() {
        adj[s[0] - 1][s[1] - 1] = true;
        adj[s[1] - 1][s[0] - 1] = true;
    }
    let mut m = [0u64; 4];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                m[adj[a][b] as usize + adj[a][c] as usize + adj[b][c] as usize] += 1;
            }
        }
    }
    let t = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| adj[a][b])
        .map(|(a, b)| (b + 1..n).filter(|&c| adj[a][c] && adj[b][c]).count() as u64)
        .sum();
    Ok(PieDecomposition {
        n,
        edges: e.len(),
        m1: m[1],
        m2: m[2],
        m3: m[3],
        t,
        degrees: e.vertex_degrees(),
        delta_size: e.coboundary()?.len() as u64,
    })
}

/// `σ = (1 - √(1-4α))/2` and `(σ/4)(1 + 2σ - 4σ²) n³`.
pub fn lobo2_bound_alpha(n: usize, alpha: f64) -> Result<(f64, f64)> {
    if !(0.0..=0.25).contains(&alpha) {
        return Err(Error::OutOfDomain { name: "lobo2".into(), alpha, lo: 0.0, hi: 0.25 });
    }
    let sigma = (1.0 - (1.0 - 4.0 * alpha).max(0.0).sqrt()) / 2.0;
    let n3 = (n as f64).powi(3);
    Ok((sigma, sigma / 4.0 * (1.0 + 2.0 * sigma - 4.0 * sigma * sigma) * n3))
}

/// [`lobo2_bound_alpha`] at `α = |E| / C(n, 2)`.
pub fn lobo2_bound(n: usize, edges: usize) -> Result<f64> {
    Ok(lobo2_bound_alpha(n, edges as f64 / binom(n, 2) as f64)?.1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lobo2Report {
    pub n: usize,
    pub edges: usize,
    pub alpha: f64,
    pub sigma: f64,
    pub bound: f64,
    pub sum_deg_sq: u64,
    /// `bound - Σ deg²`; negative values are the finite-`n` excess.
    pub slack: f64,
    pub degree_cap_ok: bool,
}

pub fn lobo2_check(e: &Cochain) -> Result<Lobo2Report> {
    require_arity(e, 2)?;
    let n = e.n();
    let degrees = e.vertex_degrees();
    let alpha = e.normalized_size().to_f64();
    let (sigma, bound) = lobo2_bound_alpha(n, alpha)?;
    let sum_deg_sq: u64 = degrees.iter().map(|&d| (d * d) as u64).sum();
    Ok(Lobo2Report {
        n,
        edges: e.len(),
        alpha,
        sigma,
        bound,
        sum_deg_sq,
        slack: bound - sum_deg_sq as f64,
        degree_cap_ok: degrees.iter().all(|&d| 2 * d <= n),
    })
}

/// The normal form of the degree-squared maximization: `v_i` is joined to
/// `v_{i+1}, …, v_{⌊n/2⌋+1}` in turn until `edges` edges are placed.
pub fn lobo2_normal_form(n: usize, edges: usize) -> Result<Cochain> {
    let m = n / 2;
    let max = m * (m + 1) / 2;
    if edges > max {
        return Err(Error::InvalidArgument(format!("normal form holds at most {max} edges at n = {n}")));
    }
    let mut sets = Vec::with_capacity(edges);
    'outer: for i in 1..=m {
        for j in i + 1..=m + 1 {
            if sets.len() == edges {
                break 'outer;
            }
            sets.push([i, j]);
        }
    }
    Cochain::from_sets(n, 2, sets)
}

/// The extremal case `k = m = n/2` of the normal form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lobo2Extremal {
    pub n: usize,
    /// `k m² + (m - k) k²` at `k = m = n/2`.
    pub leading_term: f64,
    /// The bound at `α = 1/4`, i.e. `n³/8`.
    pub bound_at_quarter: f64,
    /// `Σ deg²` of the normal-form graph with `k = n/2` full rows.
    pub graph_sum_deg_sq: u64,
    pub graph_edges: usize,
}

impl Lobo2Extremal {
    pub fn attains(&self) -> bool {
        self.leading_term == self.bound_at_quarter
    }
}

pub fn lobo2_extremal(n: usize) -> Result<Lobo2Extremal> {
    if n % 2 != 0 || n < 2 {
        return Err(Error::InvalidArgument("extremal check needs even n".into()));
    }
    let m = n / 2;
    let (k, mf) = (m as f64, m as f64);
    let g = lobo2_normal_form(n, m * (m + 1) / 2)?;
    Ok(Lobo2Extremal {
        n,
        leading_term: k * mf * mf + (mf - k) * k * k,
        bound_at_quarter: lobo2_bound_alpha(n, 0.25)?.1,
        graph_sum_deg_sq: g.vertex_degrees().iter().map(|&d| (d * d) as u64).sum(),
        graph_edges: g.len(),
    })
}

/// Vertex labels by decreasing degree, ties by smaller label.
pub fn vertices_by_degree(e: &Cochain) -> Vec<usize> {
    let deg = e.vertex_degrees();
    let mut order: Vec<usize> = (1..=e.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v - 1]), v));
    order
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HighDegVertex {
    pub vertex: usize,
    pub degree: usize,
    pub link_size: usize,
    pub link_delta_size: usize,
    /// Members of `δE` containing the vertex.
    pub count: usize,
    /// Those also avoiding every earlier vertex.
    pub new_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HighDegCertificate {
    pub n: usize,
    pub d: usize,
    pub beta: f64,
    pub r: usize,
    pub minimality_method: Method,
    pub alpha: f64,
    pub alpha_hi: f64,
    pub alpha_lo: f64,
    pub e_hi: usize,
    pub f_hi: usize,
    pub norm_f_hi: f64,
    pub vertices: Vec<HighDegVertex>,
    pub lines: Vec<Line>,
    /// `((d+1)/d) α_hi - ((d+1)d/2) β² - (d+1) α β`.
    pub asymptotic_rhs: f64,
    pub asymptotic_slack: f64,
}

impl HighDegCertificate {
    pub fn holds(&self) -> bool {
        self.lines.iter().all(|l| l.holds)
    }
}

fn members_meeting(e: &Cochain, marked: &[bool]) -> usize {
    let table = BinomTable::new(e.n(), e.arity());
    let mut buf = vec![0; e.arity()];
    e.ranks()
        .filter(|&k| {
            table.unrank_into(k as u64, e.n(), &mut buf);
            buf.iter().any(|&s| marked[s])
        })
        .count()
}

/// Checks the high-degree-vertex inequality for a minimal `E` of arity `d`
/// with `r = ⌊βn⌋` top vertices.
///
/// Exact form: with `b = C(n-2, d-1)`,
/// `d |F_hi| >= (n - 2d + 1) |E_hi| - d C(r,2) b - d r |E|`,
/// which is the proof's chain before normalization by `C(n, d+1)`.
pub fn highdeg_certificate(e: &Cochain, beta: &BigRational) -> Result<HighDegCertificate> {
    let (n, d) = (e.n(), e.arity());
    if d < 2 {
        return Err(Error::ArityOutOfRange { arity: d, n });
    }
    if n < 2 * d {
        return Err(Error::Hypothesis(format!("needs n >= 2d, got n = {n}, d = {d}")));
    }
    if beta < &BigRational::zero() || beta > &big(1) {
        return Err(Error::InvalidArgument("beta must lie in [0, 1]".into()));
    }
    let verdict = is_minimal(e)?;
    if !verdict.minimal {
        return Err(Error::Hypothesis("E is not minimal".into()));
    }
    let r = (beta * big(n as u64)).floor().to_integer().to_usize().expect("r <= n");
    let order = vertices_by_degree(e);
    let deg = e.vertex_degrees();
    let delta = e.coboundary()?;
    let table = BinomTable::new(n, d + 1);
    let mut buf = vec![0; d + 1];
    let delta_members: Vec<Vec<usize>> = delta
        .ranks()
        .map(|k| {
            table.unrank_into(k as u64, n, &mut buf);
            buf.clone()
        })
        .collect();
    let mut earlier = vec![false; n];
    let mut vertices = Vec::with_capacity(r);
    let mut lines = Vec::new();
    let b = binom(n - 2, d - 1);
    let e_len = e.len();
    let mut sum_links = 0usize;
    let mut chain_rhs = big(0);
    for (i, &v) in order.iter().take(r).enumerate() {
        let (_, link) = e.link(v)?;
        let link_delta = link.coboundary()?.len();
        let count = delta_members.iter().filter(|m| m.contains(&(v - 1))).count();
        let new_count = delta_members.iter().filter(|m| m.contains(&(v - 1)) && !m.iter().any(|&s| earlier[s])).count();
        let l = link.len();
        sum_links += l;
        let tag = format!("v{}={v}", i + 1);
        lines.push(Line::ge(
            &format!("A[{tag}]"),
            "#{f in δE : v in f} >= |δL_v| - |L_v| - |E|",
            &big(count as u64),
            &(big(link_delta as u64) - big(l as u64) - big(e_len as u64)),
        ));
        lines.push(Line::ge(
            &format!("B[{tag}]"),
            "d |δL_v| >= (n-d+1) |L_v|",
            &big((d * link_delta) as u64),
            &big(((n - d + 1) * l) as u64),
        ));
        lines.push(Line::ge(
            &format!("C[{tag}]"),
            "#{f in δE : v in f, f avoids earlier} >= count_v - (i-1) C(n-2, d-1)",
            &big(new_count as u64),
            &(big(count as u64) - big(i as u64 * b)),
        ));
        chain_rhs += big(count as u64) - big(i as u64 * b);
        vertices.push(HighDegVertex {
            vertex: v,
            degree: deg[v - 1],
            link_size: l,
            link_delta_size: link_delta,
            count,
            new_count,
        });
        earlier[v - 1] = true;
    }
    let f_hi = delta_members.iter().filter(|m| m.iter().any(|&s| earlier[s])).count();
    let e_hi = members_meeting(e, &earlier);
    lines.push(Line::ge("C", "|F_hi| >= Σ_i (count_{v_i} - (i-1) C(n-2, d-1))", &big(f_hi as u64), &chain_rhs));
    lines.push(Line::ge("D", "Σ_i |L_{v_i}| >= |E_hi|", &big(sum_links as u64), &big(e_hi as u64)));
    let rhs = big(((n - 2 * d + 1) * e_hi) as u64) - big(d as u64 * binom(r, 2) * b) - big((d * r * e_len) as u64);
    lines.push(Line::ge(
        "E",
        "d |F_hi| >= (n-2d+1) |E_hi| - d C(r,2) C(n-2,d-1) - d r |E|",
        &big((d * f_hi) as u64),
        &rhs,
    ));
    let cap = |k: usize| binom(n, k) as f64;
    let alpha = e_len as f64 / cap(d);
    let alpha_hi = e_hi as f64 / cap(d);
    let beta_f = f(beta);
    let df = d as f64;
    let asymptotic_rhs =
        (df + 1.0) / df * alpha_hi - (df + 1.0) * df / 2.0 * beta_f * beta_f - (df + 1.0) * alpha * beta_f;
    let norm_f_hi = f_hi as f64 / cap(d + 1);
    Ok(HighDegCertificate {
        n,
        d,
        beta: beta_f,
        r,
        minimality_method: verdict.method,
        alpha,
        alpha_hi,
        alpha_lo: alpha - alpha_hi,
        e_hi,
        f_hi,
        norm_f_hi,
        vertices,
        lines,
        asymptotic_rhs,
        asymptotic_slack: norm_f_hi - asymptotic_rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeavyVertexCount {
    pub vertex: usize,
    pub link_size: usize,
    /// Heavy vertices of the link graph `G_v`.
    pub heavy: usize,
    /// Link edges joining two heavy vertices.
    pub m_v: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Low3Certificate {
    pub n: usize,
    pub size: usize,
    pub delta_size: usize,
    /// `max_v deg(v) / C(n, 2)`.
    pub sigma: f64,
    pub tau: f64,
    pub heavy_pairs: usize,
    pub light_pairs: usize,
    /// `|E_k|`, members with exactly `k` heavy pairs.
    pub e_k: [usize; 4],
    pub sum_deg_sq_light: u64,
    pub sum_deg_sq_heavy: u64,
    pub pair_cap_violations: Vec<(usize, usize, usize)>,
    pub hypothesis_ok: bool,
    pub per_vertex: Vec<HeavyVertexCount>,
    pub lines: Vec<Line>,
    /// `(2 - 24 σ^{1/3}) ‖E‖`, the leading-order conclusion.
    pub asymptotic_rhs: f64,
    pub norm_e: f64,
    pub norm_delta: f64,
}

impl Low3Certificate {
    pub fn holds(&self) -> bool {
        self.hypothesis_ok && self.lines.iter().all(|l| l.holds)
    }
}

/// Checks each line of the low-degree argument for a triple system.
///
/// A pair is heavy when `deg(p) >= τ n`; `τ` defaults to `σ^{1/3}`.
pub fn low3_certificate(e: &Cochain, tau: Option<f64>) -> Result<Low3Certificate> {
    require_arity(e, 3)?;
    let n = e.n();
    if n < 4 {
        return Err(Error::Hypothesis("needs n >= 4".into()));
    }
    let size = e.len();
    let delta_size = e.coboundary()?.len();
    let pairs = binom(n, 2);
    let vdeg = e.vertex_degrees();
    let sigma_q = BigRational::new(BigInt::from(vdeg.iter().copied().max().unwrap_or(0)), BigInt::from(pairs));
    let sigma = f(&sigma_q);
    let tau = tau.unwrap_or_else(|| sigma.cbrt());
    if !(tau > 0.0 && tau.is_finite()) {
        // E = ∅ gives σ = 0; every pair is light under any positive τ
        if size != 0 {
            return Err(Error::InvalidArgument(format!("tau must be positive, got {tau}")));
        }
    }
    let tau_q = BigRational::from_float(if tau > 0.0 { tau } else { 1.0 }).expect("finite");
    let tau_n = &tau_q * big(n as u64);
    let pdeg = e.face_degrees();
    let pair_table = BinomTable::new(n, 2);
    let mut buf2 = [0usize; 2];
    let heavy: Vec<bool> = pdeg.iter().map(|&d| big(d) >= tau_n).collect();
    let pair_cap_violations: Vec<(usize, usize, usize)> = pdeg
        .iter()
        .enumerate()
        .filter(|&(_, &d)| 2 * d as usize > n)
        .map(|(k, &d)| {
            pair_table.unrank_into(k as u64, n, &mut buf2);
            (buf2[0] + 1, buf2[1] + 1, d as usize)
        })
        .collect();
    let hypothesis_ok = pair_cap_violations.is_empty();
    let (mut light_sq, mut heavy_sq) = (0u64, 0u64);
    for (&d, &h) in pdeg.iter().zip(&heavy) {
        if h {
            heavy_sq += (d as u64) * (d as u64);
        } else {
            light_sq += (d as u64) * (d as u64);
        }
    }
    let heavy_pairs = heavy.iter().filter(|&&h| h).count();
    let triple_table = BinomTable::new(n, 3);
    let mut buf3 = [0usize; 3];
    let mut e_k = [0usize; 4];
    let pair_rank = |a: usize, b: usize| pair_table.rank(&[a.min(b), a.max(b)]) as usize;
    for k in e.ranks() {
        triple_table.unrank_into(k as u64, n, &mut buf3);
        let [a, b, c] = buf3;
        let h = [pair_rank(a, b), pair_rank(a, c), pair_rank(b, c)].iter().filter(|&&p| heavy[p]).count();
        e_k[h] += 1;
    }
    let mut per_vertex = Vec::with_capacity(n);
    let mut lines = Vec::new();
    let mut sum_m = 0usize;
    let sigma_over_tau2 = &sigma_q / (&tau_q * &tau_q);
    for v in 0..n {
        let (_, link) = e.link(v + 1)?;
        let hv: Vec<bool> = (0..n).map(|u| u != v && heavy[pair_rank(u, v)]).collect();
        let h = hv.iter().filter(|&&x| x).count();
        let m_v = link.sets().iter().filter(|s| hv[s[0] - 1] && hv[s[1] - 1]).count();
        let l = link.len();
        sum_m += m_v;
        let tag = format!("v={}", v + 1);
        lines.push(Line::le(
            &format!("L4a[{tag}]"),
            "heavy(G_v) <= 2 |lk(v,E)| / (τ n)",
            &big(h as u64),
            &(big(2 * l as u64) / &tau_n),
        ));
        lines.push(Line::le(
            &format!("L4b[{tag}]"),
            "m_v <= heavy(G_v)² / 2",
            &big(2 * m_v as u64),
            &big((h * h) as u64),
        ));
        lines.push(Line::le(
            &format!("L4c[{tag}]"),
            "m_v <= (σ/τ²) |lk(v,E)|",
            &big(m_v as u64),
            &(&sigma_over_tau2 * big(l as u64)),
        ));
        per_vertex.push(HeavyVertexCount { vertex: v + 1, link_size: l, heavy: h, m_v });
    }
    let sum_sq = big(light_sq + heavy_sq);
    let size_q = big(size as u64);
    lines.push(Line::ge(
        "L1",
        "|δE| >= (n-3)|E| - Σ_p deg(p)²",
        &big(delta_size as u64),
        &(big(((n - 3) * size) as u64) - &sum_sq),
    ));
    lines.push(Line::le("L2", "Σ_light deg² <= 3 τ n |E|", &big(light_sq), &(big(3u64) * &tau_n * &size_q)));
    lines.push(Line::le(
        "L3",
        "Σ_heavy deg² <= (n/2)(|E1| + 2|E2| + 3|E3|)",
        &big(heavy_sq),
        &(big(n as u64) / big(2u64) * big((e_k[1] + 2 * e_k[2] + 3 * e_k[3]) as u64)),
    ));
    lines.push(Line::le("L5a", "|E2| + |E3| <= Σ_v m_v", &big((e_k[2] + e_k[3]) as u64), &big(sum_m as u64)));
    lines.push(Line::le(
        "L5b",
        "Σ_v m_v <= (3σ/τ²) |E|",
        &big(sum_m as u64),
        &(big(3u64) * &sigma_over_tau2 * &size_q),
    ));
    let norm_e = BigRational::new(BigInt::from(size), BigInt::from(binom(n, 3)));
    let norm_delta = BigRational::new(BigInt::from(delta_size), BigInt::from(binom(n, 4)));
    let nq = big(n as u64);
    let inner =
        &nq * (BigRational::new(1.into(), 2.into()) - big(3u64) * &tau_q - big(3u64) * &sigma_over_tau2) - big(3u64);
    let l6_rhs = big(4u64) / big((n - 3) as u64) * inner * &norm_e;
    lines.push(Line::ge("L6", "‖δE‖ >= (4/(n-3)) (n(1/2 - 3τ - 3σ/τ²) - 3) ‖E‖", &norm_delta, &l6_rhs));
    Ok(Low3Certificate {
        n,
        size,
        delta_size,
        sigma,
        tau,
        heavy_pairs,
        light_pairs: pdeg.len() - heavy_pairs,
        e_k,
        sum_deg_sq_light: light_sq,
        sum_deg_sq_heavy: heavy_sq,
        pair_cap_violations,
        hypothesis_ok,
        per_vertex,
        lines,
        asymptotic_rhs: (2.0 - 24.0 * sigma.cbrt()) * f(&norm_e),
        norm_e: f(&norm_e),
        norm_delta: f(&norm_delta),
    })
}

/// Finite-`n` audit of the `thm5` lower bound over all exactly-minimal graphs
/// with `‖E‖ <= 1/4`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thm5Audit {
    pub n: usize,
    pub audited: usize,
    /// `max (thm5(‖E‖) - ‖δE‖)`, using the upper end of the thm5 enclosure.
    pub max_gap: f64,
    pub worst: Option<Vec<Vec<usize>>>,
    /// `n * max(0, max_gap)`: no audited graph falls below `thm5 - c/n`.
    pub c: f64,
}

pub fn thm5_audit(n: usize) -> Result<Thm5Audit> {
    let len = checked_count(n, 2)?;
    let table = MinimalTable::build(n, 2)?;
    let op = CoboundaryOperator::new(n, 2)?;
    if op.target_len() > 64 {
        return Err(Error::TooLarge { n, r: 3 });
    }
    let cols: Vec<u64> = (0..len).map(|k| op.column_word(k)).collect();
    let triples = op.target_len() as f64;
    // thm5 depends only on |E|; evaluate once per size
    let thm5_hi: Vec<Option<f64>> = (0..=len)
        .map(|s| {
            (4 * s <= len).then(|| {
                let a = BigRational::new(BigInt::from(s), BigInt::from(len));
                BoundFunction::Thm5.eval_rational(&a).expect("in domain").enclosure().hi
            })
        })
        .collect();
    let words: Vec<u64> = table.minimal_words().filter(|w| thm5_hi[w.count_ones() as usize].is_some()).collect();
    let (audited, best) = words
        .par_iter()
        .map(|&w| {
            let mut delta = 0u64;
            let mut rest = w;
            while rest != 0 {
                delta ^= cols[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            let gap = thm5_hi[w.count_ones() as usize].unwrap() - delta.count_ones() as f64 / triples;
            (1usize, Some((gap, w)))
        })
        .reduce(
            || (0, None),
            |(ca, a), (cb, b)| {
                let pick = match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => Some(if a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1) { a } else { b }),
                };
                (ca + cb, pick)
            },
        );
    let (max_gap, worst) = match best {
        Some((g, w)) => (g, Some(Cochain::from_bits(n, 2, Bits::from_word(w, len))?.sets())),
        None => (f64::NEG_INFINITY, None),
    };
    Ok(Thm5Audit { n, audited, max_gap, worst, c: n as f64 * max_gap.max(0.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{multipartite_example, nonminimal_bipartite_example};
    use crate::numeric::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Cochain {
        let len = checked_count(n, 2).unwrap();
        Cochain::from_ranks(n, 2, (0..len).filter(|_| rng.gen_bool(p))).unwrap()
    }

    #[test]
    fn pieform_on_triangle() {
        let e = Cochain::from_sets(4, 2, [[1, 2], [1, 3], [2, 3]]).unwrap();
        let p = pie_decompose(&e).unwrap();
        assert_eq!(p.pieform(), 4);
        assert_eq!(p.delta_size, 4);
        assert!(p.identity_holds());
        let p = pie_decompose(&Cochain::empty(6, 2).unwrap()).unwrap();
        assert_eq!((p.pieform(), p.delta_size), (0, 0));
    }

    #[test]
    fn pieform_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let e = random_graph(9, 0.4, &mut rng);
            let p = pie_decompose(&e).unwrap();
            assert!(p.identity_holds());
            assert!(p.truncpie() <= p.delta_size as i128);
        }
    }

    #[test]
    fn lobo2_values() {
        let (s, b) = lobo2_bound_alpha(16, 0.25).unwrap();
        assert_eq!((s, b), (0.5, 16f64.powi(3) / 8.0));
        assert!(lobo2_bound_alpha(16, 1e-12).unwrap().1 < 1e-6);
        assert!(lobo2_bound_alpha(16, 0.3).is_err());
        let ex = nonminimal_bipartite_example(16, 3).unwrap();
        let rep = lobo2_check(&ex.e).unwrap();
        assert!(rep.degree_cap_ok && rep.slack > 0.0, "{rep:?}");
        // a = 4 gives α = 32/120 > 1/4 at n = 16
        let ex = nonminimal_bipartite_example(16, 4).unwrap();
        assert!(matches!(lobo2_check(&ex.e), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn lobo2_extremal_case() {
        for n in [8, 16, 64] {
            let x = lobo2_extremal(n).unwrap();
            assert!(x.attains());
            let m = (n / 2) as u64;
            // clique on n/2 + 1 vertices
            assert_eq!(x.graph_sum_deg_sq, (m + 1) * m * m);
            assert_eq!(x.graph_edges as u64, m * (m + 1) / 2);
        }
    }

    #[test]
    fn normal_form_is_near_the_bound() {
        let n = 40;
        for edges in [20, 60, 120, 190] {
            let g = lobo2_normal_form(n, edges).unwrap();
            let rep = lobo2_check(&g).unwrap();
            assert!(rep.degree_cap_ok);
            // within the O(n²) correction
            assert!(rep.slack > -((n * n) as f64), "{rep:?}");
        }
    }

    #[test]
    fn highdeg_empty_and_multipartite() {
        let c = highdeg_certificate(&Cochain::empty(8, 3).unwrap(), &rat(1, 4)).unwrap();
        assert!(c.holds());
        assert_eq!((c.e_hi, c.f_hi), (0, 0));
        let ex = multipartite_example(8, 3, &[2, 2, 2, 2]).unwrap();
        let c = highdeg_certificate(&ex.e, &rat(1, 4)).unwrap();
        assert_eq!(c.r, 2);
        assert!(c.holds(), "{:?}", c.lines.iter().filter(|l| !l.holds).collect::<Vec<_>>());
    }

    #[test]
    fn highdeg_rejects_nonminimal() {
        let e = Cochain::from_sets(6, 3, [[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 2, 6]]).unwrap();
        assert!(matches!(highdeg_certificate(&e, &rat(1, 6)), Err(Error::Hypothesis(_))));
        assert!(matches!(highdeg_certificate(&Cochain::empty(5, 3).unwrap(), &rat(1, 5)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn low3_empty_and_random() {
        let c = low3_certificate(&Cochain::empty(12, 3).unwrap(), None).unwrap();
        assert!(c.holds());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = 12;
            let mut e = Cochain::empty(n, 3).unwrap();
            for _ in 0..40 {
                let k = rng.gen_range(0..e.capacity());
                let mut trial = e.clone();
                trial.add_assign(&Cochain::from_ranks(n, 3, [k]).unwrap()).unwrap();
                if trial.face_degrees().iter().all(|&d| 2 * d as usize <= n) {
                    e = trial;
                }
            }
            let c = low3_certificate(&e, None).unwrap();
            assert!(c.hypothesis_ok);
            assert!(c.holds(), "{:?}", c.lines.iter().filter(|l| !l.holds).collect::<Vec<_>>());
        }
    }

    #[test]
    fn low3_reports_violations() {
        let e = Cochain::from_sets(6, 3, [[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 2, 6]]).unwrap();
        let c = low3_certificate(&e, None).unwrap();
        assert_eq!(c.pair_cap_violations, vec![(1, 2, 4)]);
        assert!(!c.holds());
    }

    #[test]
    fn thm5_audit_small() {
        let a = thm5_audit(5).unwrap();
        assert!(a.audited > 0);
        assert!(a.c >= 0.0 && a.c.is_finite());
    }
}
