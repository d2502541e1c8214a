//! Exact planar geometry: intersection cochains of probes against the
//! simplices spanned by a point configuration, and maximum triangle depth.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cochain::{BinomTable, Cochain};
use crate::error::{Error, Result};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(Q::from_integer(x.into()), Q::from_integer(y.into()))
    }

    pub fn ratio(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Self::new(Q::new(xn.into(), xd.into()), Q::new(yn.into(), yd.into()))
    }

    fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    fn to_json(&self) -> Value {
        Value::Array(
            [self.x.numer(), self.x.denom(), self.y.numer(), self.y.denom()].into_iter().map(int_json).collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let parts = v
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Parse("point must be [num,den,num,den]".into()))?;
        let ints = parts.iter().map(json_int).collect::<Result<Vec<BigInt>>>()?;
        if ints[1].is_zero() || ints[3].is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Point::new(Q::new(ints[0].clone(), ints[1].clone()), Q::new(ints[2].clone(), ints[3].clone())))
    }
}

fn int_json(i: &BigInt) -> Value {
    match i.to_i64() {
        Some(v) => json!(v),
        None => json!(i.to_string()),
    }
}

fn json_int(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(i.into());
    }
    v.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse(format!("not an integer: {v}")))
}

/// Sign of the orientation determinant of `(p, q, r)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Ordering {
    let a = q.sub(p);
    let b = r.sub(p);
    (&a.x * &b.y - &a.y * &b.x).cmp(&Q::zero())
}

fn strictly_inside(x: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    let o = orientation(a, b, c);
    o != Ordering::Equal && orientation(a, b, x) == o && orientation(b, c, x) == o && orientation(c, a, x) == o
}

/// Open segments `ab` and `cd` cross at a single interior point.
fn crosses(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let s = |o: Ordering| o as i8;
    s(orientation(a, b, c)) * s(orientation(a, b, d)) < 0 && s(orientation(c, d, a)) * s(orientation(c, d, b)) < 0
}

/// `p` lies on the closed segment `ab`.
fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<Point>,
}

impl PointConfig {
    /// Rejects repeated points and collinear triples.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::GeneralPosition(format!("points {} and {} coincide", i + 1, j + 1)));
                }
                for k in j + 1..n {
                    if orientation(&points[i], &points[j], &points[k]) == Ordering::Equal {
                        return Err(Error::GeneralPosition(format!(
                            "points {}, {}, {} are collinear",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { points })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn to_json(&self) -> Value {
        json!({ "points": self.points.iter().map(Point::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let pts =
            v.get("points").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing points array".into()))?;
        Self::new(pts.iter().map(Point::from_json).collect::<Result<_>>()?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    /// Image under `p -> M p + t`; `M` must be invertible.
    pub fn affine(&self, m: [[Q; 2]; 2], t: [Q; 2]) -> Result<Self> {
        if (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero() {
            return Err(Error::InvalidArgument("singular affine map".into()));
        }
        Self::new(
            self.points
                .iter()
                .map(|p| {
                    Point::new(&m[0][0] * &p.x + &m[0][1] * &p.y + &t[0], &m[1][0] * &p.x + &m[1][1] * &p.y + &t[1])
                })
                .collect(),
        )
    }

    /// Point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Self::new(perm.iter().map(|&i| self.points[i].clone()).collect())
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

/// A point, segment or triangle probing the configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    Point(Point),
    Segment(Point, Point),
    Triangle(Point, Point, Point),
}

impl Probe {
    pub fn vertices(&self) -> Vec<&Point> {
        match self {
            Probe::Point(x) => vec![x],
            Probe::Segment(x, y) => vec![x, y],
            Probe::Triangle(x, y, z) => vec![x, y, z],
        }
    }

    /// Codimension faces, in the order `x`, `y` for a segment and
    /// `xy`, `yz`, `xz` for a triangle.
    pub fn boundary(&self) -> Vec<Probe> {
        match self {
            Probe::Point(_) => vec![],
            Probe::Segment(x, y) => vec![Probe::Point(x.clone()), Probe::Point(y.clone())],
            Probe::Triangle(x, y, z) => vec![
                Probe::Segment(x.clone(), y.clone()),
                Probe::Segment(y.clone(), z.clone()),
                Probe::Segment(x.clone(), z.clone()),
            ],
        }
    }
}

/// No probe vertex lies on a closed segment of the configuration, no probe
/// edge passes through a configuration point, and a triangle probe is
/// nondegenerate.
pub fn check_general_position(p: &PointConfig, a: &Probe) -> Result<()> {
    let pts = p.points();
    for (vi, v) in a.vertices().into_iter().enumerate() {
        if let Some(k) = pts.iter().position(|q| q == v) {
            return Err(Error::GeneralPosition(format!("probe vertex {vi} equals point {}", k + 1)));
        }
        for (i, j) in p.pairs() {
            if on_segment(v, &pts[i], &pts[j]) {
                return Err(Error::GeneralPosition(format!("probe vertex {vi} lies on segment {}{}", i + 1, j + 1)));
            }
        }
    }
    let edges: Vec<(&Point, &Point)> = match a {
        Probe::Point(_) => vec![],
        Probe::Segment(x, y) => vec![(x, y)],
        Probe::Triangle(x, y, z) => {
            if orientation(x, y, z) == Ordering::Equal {
                return Err(Error::GeneralPosition("degenerate triangle probe".into()));
            }
            vec![(x, y), (y, z), (x, z)]
        }
    };
    for (x, y) in edges {
        if x == y {
            return Err(Error::GeneralPosition("degenerate segment probe".into()));
        }
        if let Some(k) = pts.iter().position(|q| on_segment(q, x, y)) {
            return Err(Error::GeneralPosition(format!("probe edge passes through point {}", k + 1)));
        }
    }
    Ok(())
}

/// Triangles containing a point, segments crossing a segment, or points
/// inside a triangle, as a cochain of arity `3 - dim`.
pub fn intersection_cochain(p: &PointConfig, a: &Probe) -> Result<Cochain> {
    check_general_position(p, a)?;
    Ok(intersection_unchecked(p, a))
}

fn intersection_unchecked(p: &PointConfig, a: &Probe) -> Cochain {
    let n = p.n();
    let pts = p.points();
    let sets: Vec<Vec<usize>> = match a {
        Probe::Point(x) => {
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        if strictly_inside(x, &pts[i], &pts[j], &pts[k]) {
                            out.push(vec![i + 1, j + 1, k + 1]);
                        }
                    }
                }
            }
            out
        }
        Probe::Segment(x, y) => {
            p.pairs().filter(|&(i, j)| crosses(x, y, &pts[i], &pts[j])).map(|(i, j)| vec![i + 1, j + 1]).collect()
        }
        Probe::Triangle(x, y, z) => {
            (0..n).filter(|&i| strictly_inside(&pts[i], x, y, z)).map(|i| vec![i + 1]).collect()
        }
    };
    let arity = 3 - (a.vertices().len() - 1);
    Cochain::from_sets(n, arity, sets).expect("labels in range")
}

/// `δF_A + Σ F_{A_i}`; empty whenever the probe is in general position.
pub fn verify_duality(p: &PointConfig, a: &Probe) -> Result<Cochain> {
    if matches!(a, Probe::Point(_)) {
        return Err(Error::InvalidArgument("duality needs a segment or triangle probe".into()));
    }
    let mut res = intersection_cochain(p, a)?.coboundary()?;
    for face in a.boundary() {
        res.add_assign(&intersection_cochain(p, &face)?)?;
    }
    Ok(res)
}

/// Line `{q : nx·q.x + ny·q.y = c}` through two configuration points.
#[derive(Clone, Debug)]
struct Line {
    nx: Q,
    ny: Q,
    c: Q,
}

impl Line {
    fn through(a: &Point, b: &Point) -> Self {
        let nx = &a.y - &b.y;
        let ny = &b.x - &a.x;
        let c = &nx * &a.x + &ny * &a.y;
        Self { nx, ny, c }
    }

    fn eval(&self, q: &Point) -> Q {
        &self.nx * &q.x + &self.ny * &q.y - &self.c
    }

    fn dot_normal(&self, o: &Line) -> Q {
        &self.nx * &o.nx + &self.ny * &o.ny
    }
}

/// Depth by sign table: a point is inside triangle `ijk` when it sits on
/// the same side of each edge line as the opposite vertex.
struct SideTable {
    n: usize,
    lines: Vec<Line>,
    // sign of line (i,j) at every configuration point
    point_sides: Vec<Vec<Ordering>>,
}

impl SideTable {
    fn new(p: &PointConfig) -> Self {
        let pts = p.points();
        let lines: Vec<Line> = p.pairs().map(|(i, j)| Line::through(&pts[i], &pts[j])).collect();
        let point_sides = lines.iter().map(|l| pts.iter().map(|q| l.eval(q).cmp(&Q::zero())).collect()).collect();
        Self { n: p.n(), lines, point_sides }
    }

    fn line_index(&self, i: usize, j: usize) -> usize {
        // pairs are enumerated (0,1), (0,2), .., (1,2), ..
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    fn depth(&self, q: &Point) -> usize {
        let s: Vec<Ordering> = self.lines.iter().map(|l| l.eval(q).cmp(&Q::zero())).collect();
        let n = self.n;
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.line_index(i, j);
                for k in j + 1..n {
                    let ik = self.line_index(i, k);
                    let jk = self.line_index(j, k);
                    if s[ij] == self.point_sides[ij][k]
                        && s[ik] == self.point_sides[ik][j]
                        && s[jk] == self.point_sides[jk][i]
                    {
                        count += 1;
                    }
                }
            }
        }
        count
    }
}

/// Triangle depth of `q` by direct sign tests, independent of the cochain
/// path. `q` should avoid every line through two points.
pub fn direct_depth(p: &PointConfig, q: &Point) -> usize {
    SideTable::new(p).depth(q)
}

/// One point strictly inside every cell of the line arrangement that has an
/// edge: edge midpoints (and points on the unbounded rays) pushed off their
/// line to both sides, less than the distance to any other line.
pub fn cell_representatives(p: &PointConfig) -> Vec<Point> {
    let pts = p.points();
    let lines: Vec<(Point, Point, Line)> =
        p.pairs().map(|(i, j)| (pts[i].clone(), pts[j].clone(), Line::through(&pts[i], &pts[j]))).collect();
    let per_line: Vec<Vec<Point>> = lines
        .par_iter()
        .enumerate()
        .map(|(li, (a, b, l))| {
            let d = b.sub(a);
            let at = |s: &Q| Point::new(&a.x + s * &d.x, &a.y + s * &d.y);
            let mut params: Vec<Q> = lines
                .iter()
                .enumerate()
                .filter(|&(lj, _)| lj != li)
                .filter_map(|(_, (_, _, o))| {
                    let den = &o.nx * &d.x + &o.ny * &d.y;
                    (!den.is_zero()).then(|| -o.eval(a) / den)
                })
                .collect();
            params.sort();
            params.dedup();
            let mut samples: Vec<Q> = params.windows(2).map(|w| (&w[0] + &w[1]) / Q::from_integer(2.into())).collect();
            if let (Some(lo), Some(hi)) = (params.first(), params.last()) {
                samples.push(lo - Q::one());
                samples.push(hi + Q::one());
            }
            let mut out = Vec::with_capacity(2 * samples.len());
            for s in samples {
                let m = at(&s);
                let mut t: Option<Q> = None;
                for (lj, (_, _, o)) in lines.iter().enumerate() {
                    let dn = l.dot_normal(o);
                    if lj == li || dn.is_zero() {
                        continue;
                    }
                    let hit = (o.eval(&m) / dn).abs();
                    if t.as_ref().is_none_or(|t| &hit < t) {
                        t = Some(hit);
                    }
                }
                let t = t.unwrap_or_else(Q::one) / Q::from_integer(2.into());
                out.push(Point::new(&m.x + &t * &l.nx, &m.y + &t * &l.ny));
                out.push(Point::new(&m.x - &t * &l.nx, &m.y - &t * &l.ny));
            }
            out
        })
        .collect();
    let set: BTreeSet<Point> = per_line.into_iter().flatten().collect();
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DepthReport {
    pub depth: usize,
    pub witness: Point,
    pub witness_cochain: Cochain,
    pub candidates: usize,
}

impl DepthReport {
    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "witness": self.witness.to_json(),
            "witness_approx": [self.witness.x.to_f64(), self.witness.y.to_f64()],
            "witness_cochain": self.witness_cochain.to_json_value(),
            "candidates": self.candidates,
        })
    }
}

/// Largest number of configuration triangles containing a common point.
/// Ties go to the lexicographically least witness.
pub fn max_depth(p: &PointConfig) -> Result<DepthReport> {
    if p.n() < 3 {
        return Err(Error::InvalidArgument("depth needs at least 3 points".into()));
    }
    let table = SideTable::new(p);
    let cands = cell_representatives(p);
    let (depth, witness) = cands
        .par_iter()
        .map(|q| (table.depth(q), q))
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        })
        .expect("nonempty arrangement");
    let witness = witness.clone();
    let witness_cochain = intersection_cochain(p, &Probe::Point(witness.clone()))?;
    if witness_cochain.len() != depth {
        return Err(Error::Hypothesis(format!("depth paths disagree: {} vs {depth}", witness_cochain.len())));
    }
    Ok(DepthReport { depth, witness, witness_cochain, candidates: cands.len() })
}

/// Exhaustive oracle for small `n`: every bounded cell contains the centroid
/// of three of its vertices, and unbounded cells have depth 0.
pub fn max_depth_by_vertex_triples(p: &PointConfig) -> usize {
    let pts = p.points();
    let lines: Vec<Line> = p.pairs().map(|(i, j)| Line::through(&pts[i], &pts[j])).collect();
    let mut verts = BTreeSet::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            let det = &a.nx * &b.ny - &a.ny * &b.nx;
            if !det.is_zero() {
                verts.insert(Point::new((&a.c * &b.ny - &a.ny * &b.c) / &det, (&a.nx * &b.c - &a.c * &b.nx) / &det));
            }
        }
    }
    let verts: Vec<Point> = verts.into_iter().collect();
    let m = verts.len();
    let table = SideTable::new(p);
    let three = Q::from_integer(3.into());
    (0..m)
        .into_par_iter()
        .map(|i| {
            let mut best = 0;
            for j in i + 1..m {
                for k in j + 1..m {
                    let c = Point::new(
                        (&verts[i].x + &verts[j].x + &verts[k].x) / &three,
                        (&verts[i].y + &verts[j].y + &verts[k].y) / &three,
                    );
                    if lines.iter().all(|l| !l.eval(&c).is_zero()) {
                        best = best.max(table.depth(&c));
                    }
                }
            }
            best
        })
        .max()
        .unwrap_or(0)
}

/// Rational realization of the five-point example: points `P1..P5` and
/// probes `x`, `y`, `z`.
pub fn example_configuration() -> (PointConfig, [Point; 3]) {
    let p = PointConfig::from_ints(&[(7, 7), (-6, -10), (-10, 10), (-7, 6), (-6, 3)]).expect("general position");
    (p, [Point::ratio(-23, 4, 11, 4), Point::ratio(-35, 4, 17, 4), Point::ratio(-37, 4, 35, 4)])
}

/// Random configuration of `n` points in general position with coordinates
/// `a/b`, `|a| <= 60`, `1 <= b <= 4`.
pub fn random_configuration<R: rand::Rng>(n: usize, rng: &mut R) -> PointConfig {
    loop {
        let pts = (0..n).map(|_| random_point(rng)).collect();
        if let Ok(p) = PointConfig::new(pts) {
            return p;
        }
    }
}

pub fn random_point<R: rand::Rng>(rng: &mut R) -> Point {
    Point::ratio(rng.gen_range(-60..=60), rng.gen_range(1..=4), rng.gen_range(-60..=60), rng.gen_range(1..=4))
}

/// Random probe of dimension `dim` in general position with respect to `p`.
pub fn random_probe<R: rand::Rng>(p: &PointConfig, dim: usize, rng: &mut R) -> Probe {
    loop {
        let probe = match dim {
            0 => Probe::Point(random_point(rng)),
            1 => Probe::Segment(random_point(rng), random_point(rng)),
            _ => Probe::Triangle(random_point(rng), random_point(rng), random_point(rng)),
        };
        if check_general_position(p, &probe).is_ok() {
            return probe;
        }
    }
}

/// `⌈(2/9) C(n,3)⌉`.
pub fn depth_target(n: usize) -> usize {
    let t = BinomTable::new(n.max(3), 3).get(n, 3) as usize;
    (2 * t).div_ceil(9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sets(c: &Cochain) -> Vec<Vec<usize>> {
        let mut s = c.sets();
        s.sort();
        s
    }

    #[test]
    fn orientation_signs() {
        let (a, b, c) = (Point::int(0, 0), Point::int(1, 0), Point::int(0, 1));
        assert_eq!(orientation(&a, &b, &c), Ordering::Greater);
        assert_eq!(orientation(&b, &a, &c), Ordering::Less);
        assert_eq!(orientation(&a, &b, &Point::int(5, 0)), Ordering::Equal);
        assert!(PointConfig::from_ints(&[(0, 0), (1, 1), (2, 2)]).is_err());
    }

    #[test]
    fn example_sets() {
        let (p, [x, y, z]) = example_configuration();
        let f = |a: Probe| sets(&intersection_cochain(&p, &a).unwrap());
        let seg = |a: &Point, b: &Point| Probe::Segment(a.clone(), b.clone());
        assert_eq!(f(Probe::Point(x.clone())), vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]]);
        assert_eq!(f(Probe::Point(y.clone())), vec![vec![1, 2, 3], vec![2, 3, 4], vec![2, 3, 5]]);
        assert_eq!(f(Probe::Point(z.clone())), vec![vec![1, 2, 3], vec![1, 3, 5], vec![2, 3, 4], vec![3, 4, 5]]);
        assert_eq!(f(seg(&x, &y)), vec![vec![2, 4], vec![2, 5]]);
        assert_eq!(f(seg(&y, &z)), vec![vec![3, 5]]);
        assert_eq!(f(seg(&x, &z)), vec![vec![1, 5], vec![2, 4], vec![4, 5]]);
        assert_eq!(f(Probe::Triangle(x.clone(), y.clone(), z.clone())), vec![vec![5]]);
        assert!(verify_duality(&p, &seg(&x, &y)).unwrap().is_empty());
        assert!(verify_duality(&p, &Probe::Triangle(x, y, z)).unwrap().is_empty());
        assert!(max_depth(&p).unwrap().depth >= 4);
    }

    #[test]
    fn trivial_probes() {
        let p = PointConfig::from_ints(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        assert_eq!(sets(&intersection_cochain(&p, &Probe::Point(Point::int(1, 1))).unwrap()), vec![vec![1, 2, 3]]);
        assert!(intersection_cochain(&p, &Probe::Point(Point::int(9, 9))).unwrap().is_empty());
        assert!(matches!(intersection_cochain(&p, &Probe::Point(Point::int(2, 0))), Err(Error::GeneralPosition(_))));
        let through = Probe::Segment(Point::int(-1, -1), Point::int(1, 1));
        assert!(intersection_cochain(&p, &through).is_err());
        assert_eq!(max_depth(&p).unwrap().depth, 1);
    }

    #[test]
    fn random_duality_and_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(4..=8);
            let p = random_configuration(n, &mut rng);
            let x = random_probe(&p, 0, &mut rng);
            assert!(intersection_cochain(&p, &x).unwrap().coboundary().unwrap().is_empty());
            for dim in 1..=2 {
                assert!(verify_duality(&p, &random_probe(&p, dim, &mut rng)).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn depth_matches_oracle_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..12 {
            let n = rng.gen_range(3..=5);
            let p = random_configuration(n, &mut rng);
            let r = max_depth(&p).unwrap();
            assert_eq!(r.depth, max_depth_by_vertex_triples(&p), "{:?}", p.to_json());
            assert_eq!(direct_depth(&p, &r.witness), r.witness_cochain.len());
        }
    }

    #[test]
    fn four_points() {
        // one point inside the triangle of the others: it sits in 3 of 4 triangles' closures,
        // but an open cell meets at most 2
        let inner = PointConfig::from_ints(&[(0, 0), (10, 0), (0, 10), (2, 3)]).unwrap();
        assert_eq!(max_depth(&inner).unwrap().depth, 2);
        let convex = PointConfig::from_ints(&[(0, 0), (10, 1), (9, 11), (-1, 8)]).unwrap();
        assert_eq!(max_depth(&convex).unwrap().depth, 2);
        assert_eq!(max_depth_by_vertex_triples(&convex), 2);
    }

    #[test]
    fn depth_invariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_configuration(7, &mut rng);
        let d = max_depth(&p).unwrap().depth;
        let q = p.permuted(&[3, 1, 6, 0, 5, 2, 4]).unwrap();
        assert_eq!(max_depth(&q).unwrap().depth, d);
        let r = |a: i64, b: i64| Q::new(a.into(), b.into());
        let m = [[r(2, 1), r(1, 3)], [r(-1, 1), r(5, 2)]];
        let a = p.affine(m, [r(7, 1), r(-1, 2)]).unwrap();
        assert_eq!(max_depth(&a).unwrap().depth, d);
    }

    #[test]
    fn json_roundtrip() {
        let (p, _) = example_configuration();
        let q = PointConfig::from_json_str(&p.to_json().to_string()).unwrap();
        assert_eq!(p, q);
        assert!(PointConfig::from_json_str(r#"{"points": [[1,0,1,1]]}"#).is_err());
    }

    #[test]
    fn nine_points_target() {
        assert_eq!(depth_target(9), 19);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = random_configuration(9, &mut rng);
        let r = max_depth(&p).unwrap();
        assert!(r.depth <= 84 && r.depth >= 1);
    }
}
