//! Orbit of the quaternion 1, its Voronoi cell on S³ and the resulting
//! diameter bound.
//!
//! Vertex enumeration runs a double-precision pass first: a triple or a
//! constraint is discarded only when the float value is negative by a
//! margin far beyond rounding error. Every surviving candidate, and every
//! constraint close to its boundary, is then decided in the backend's own
//! arithmetic, so exact cells are exact.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebraic::Sign;
use crate::goursat::IsometryGroup;
use crate::linalg::{cross4, dot4, rank, solve};
use crate::quaternion::{QuatSet, Quaternion};
use crate::scalar::Scalar;

/// Float values within this (relative) margin of zero are re-decided in the
/// backend arithmetic.
const FILTER_MARGIN: f64 = 1e-7;
/// Below this relative size a float cross product is not trusted for
/// direction or rank.
const CROSS_MARGIN: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Layer<S> {
    pub cos: S,
    pub radians: f64,
    /// Indices into [`Orbit::points`].
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Orbit<S: Scalar> {
    /// Sorted by distance from 1 (so `points[0]` is 1), then
    /// lexicographically.
    pub points: Vec<Quaternion<S>>,
    pub layers: Vec<Layer<S>>,
    /// Number of group elements fixing 1.
    pub stabilizer: usize,
}

pub fn orbit_of_one<S: Scalar>(group: &IsometryGroup<S>) -> Orbit<S> {
    let mut set = QuatSet::new();
    let mut stabilizer = 0;
    for g in group.elements() {
        let p = g.image_of_one();
        if p.is_one() {
            stabilizer += 1;
        }
        set.insert(p);
    }
    Orbit::from_points(set.items().to_vec(), stabilizer)
}

impl<S: Scalar> Orbit<S> {
    pub fn from_points(mut points: Vec<Quaternion<S>>, stabilizer: usize) -> Self {
        points.sort_by(|a, b| b.w.cmp_value(&a.w).then_with(|| a.cmp_lex(b)));
        let mut layers: Vec<Layer<S>> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            match layers.last_mut() {
                Some(l) if l.cos.approx_eq(&p.w) => l.members.push(i),
                _ => layers.push(Layer {
                    cos: p.w.clone(),
                    radians: p.w.to_f64().clamp(-1.0, 1.0).acos(),
                    members: vec![i],
                }),
            }
        }
        Orbit {
            points,
            layers,
            stabilizer,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_minus_one(&self) -> bool {
        self.points.iter().any(|p| p.neg().is_one())
    }
}

/// Squared cosine of a distance from 1, with the sign of the cosine.
#[derive(Clone, Debug, PartialEq)]
pub struct DiameterBound<S> {
    pub cos2: S,
    pub cos_sign: Sign,
    pub radians: f64,
}

impl<S: Scalar> DiameterBound<S> {
    pub fn new(cos2: S, cos_sign: Sign) -> Self {
        let c = cos2.to_f64().clamp(0.0, 1.0).sqrt() * cos_sign.as_f64();
        DiameterBound {
            radians: c.clamp(-1.0, 1.0).acos(),
            cos2,
            cos_sign,
        }
    }

    pub fn pi() -> Self {
        Self::new(S::one(), Sign::Negative)
    }

    pub fn half_pi() -> Self {
        Self::new(S::zero(), Sign::Zero)
    }

    /// Orders bounds by the distance they stand for.
    pub fn cmp_distance(&self, o: &Self) -> Ordering {
        match (self.cos_sign, o.cos_sign) {
            (a, b) if a != b => b.cmp(&a),
            (Sign::Zero, _) => Ordering::Equal,
            (Sign::Positive, _) => o.cos2.cmp_value(&self.cos2),
            (Sign::Negative, _) => self.cos2.cmp_value(&o.cos2),
        }
    }

    pub fn same_value(&self, o: &Self) -> bool {
        self.cmp_distance(o) == Ordering::Equal
    }

    pub fn to_f64(&self) -> DiameterBound<f64> {
        DiameterBound {
            cos2: self.cos2.to_f64(),
            cos_sign: self.cos_sign,
            radians: self.radians,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    /// Bounded polytope inside the open hemisphere around 1.
    Polytope,
    /// The orbit is {1}.
    WholeSphere,
    /// The orbit is {1, -1}.
    Hemisphere,
    /// The bisector normals do not span R⁴, so the cell contains a great
    /// sphere orthogonal to the orbit.
    Degenerate,
    /// The orbit has a nonzero centroid (a point fixed by the group), and
    /// the cell crosses the equator of 1.
    FixedPoint,
}

#[derive(Clone, Debug)]
pub struct HalfSpace<S> {
    /// Index of the orbit point g; the constraint is ⟨x, 1 - g⟩ ≥ 0.
    pub point: usize,
    pub normal: [S; 4],
}

#[derive(Clone, Debug)]
pub struct Vertex<S> {
    /// Direction scaled so that its 1-coordinate is 1.
    pub direction: [S; 4],
    /// Indices into [`SphericalCell::halfspaces`] of the bisectors through it.
    pub active: Vec<usize>,
}

impl<S: Scalar> Vertex<S> {
    pub fn unit_f64(&self) -> [f64; 4] {
        let v = self.direction.clone().map(|c| c.to_f64());
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        v.map(|c| c / n)
    }

    /// Squared cosine of the distance from 1.
    pub fn cos2(&self) -> S {
        dot4(&self.direction, &self.direction)
            .inv()
            .expect("vertex direction is nonzero")
    }
}

#[derive(Clone, Debug)]
pub struct SphericalCell<S: Scalar> {
    pub kind: CellKind,
    pub halfspaces: Vec<HalfSpace<S>>,
    pub vertices: Vec<Vertex<S>>,
    pub bound: DiameterBound<S>,
    /// Number of orbit points (besides 1) whose bisectors were used.
    pub considered: usize,
    /// Enumeration passes needed before the pruning radius settled.
    pub rounds: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CellOptions {
    /// Use only orbit points within twice the current bound.
    pub pruned: bool,
    pub parallel: bool,
}

impl Default for CellOptions {
    fn default() -> Self {
        CellOptions {
            pruned: true,
            parallel: true,
        }
    }
}

pub fn prefundamental_domain<S: Scalar>(orbit: &Orbit<S>) -> SphericalCell<S> {
    prefundamental_domain_with(orbit, CellOptions::default())
}

pub fn prefundamental_domain_with<S: Scalar>(
    orbit: &Orbit<S>,
    opts: CellOptions,
) -> SphericalCell<S> {
    assert!(
        orbit.points.first().is_some_and(|p| p.is_one()),
        "orbit must contain 1"
    );
    let n = orbit.len();
    let halfspaces = |limit: usize| -> Vec<HalfSpace<S>> {
        (1..limit)
            .map(|i| HalfSpace {
                point: i,
                normal: Quaternion::one().sub(&orbit.points[i]).to_array(),
            })
            .collect()
    };
    let simple = |kind, bound, hs: Vec<HalfSpace<S>>| SphericalCell {
        kind,
        considered: hs.len(),
        halfspaces: hs,
        vertices: Vec::new(),
        bound,
        rounds: 0,
    };

    if n == 1 {
        return simple(CellKind::WholeSphere, DiameterBound::pi(), Vec::new());
    }
    if n == 2 && orbit.contains_minus_one() {
        return simple(
            CellKind::Hemisphere,
            DiameterBound::half_pi(),
            halfspaces(2),
        );
    }
    let all = halfspaces(n);
    let centroid = orbit
        .points
        .iter()
        .fold(Quaternion::zero(), |acc, p| acc.add(p));
    if !centroid.approx_eq(&Quaternion::zero()) {
        let bound = farthest_beyond_equator(&all);
        return simple(CellKind::FixedPoint, bound, all);
    }
    if normal_rank(&all) < 4 {
        return simple(CellKind::Degenerate, DiameterBound::half_pi(), all);
    }

    // Prefix lengths of the orbit that end on a layer boundary.
    let ends: Vec<usize> = orbit
        .layers
        .iter()
        .scan(0, |acc, l| {
            *acc += l.members.len();
            Some(*acc)
        })
        .collect();
    let next_end = |limit: usize| ends.iter().copied().find(|&e| e > limit).unwrap_or(n);
    let mut limit = if opts.pruned { next_end(1) } else { n };
    let mut rounds = 0;
    loop {
        rounds += 1;
        let hs = halfspaces(limit);
        if normal_rank(&hs) < 4 {
            limit = next_end(limit);
            continue;
        }
        let Some(vertices) = enumerate_vertices(&hs, opts.parallel) else {
            assert!(
                limit < n,
                "full orbit cell is bounded when the centroid vanishes"
            );
            limit = next_end(limit);
            continue;
        };
        let bound = farthest_vertex(&vertices);
        // Points farther than twice the bound cannot cut the cell.
        let threshold = bound.cos2.add(&bound.cos2).sub(&S::one());
        let needed = orbit
            .points
            .iter()
            .take_while(|p| p.w.sub(&threshold).sign() != Sign::Negative)
            .count();
        if needed <= limit {
            return SphericalCell {
                kind: CellKind::Polytope,
                considered: hs.len(),
                halfspaces: hs,
                vertices,
                bound,
                rounds,
            };
        }
        limit = ends.iter().copied().find(|&e| e >= needed).unwrap_or(n);
    }
}

pub fn diameter_lower_bound<S: Scalar>(cell: &SphericalCell<S>) -> DiameterBound<S> {
    cell.bound.clone()
}

fn normal_rank<S: Scalar>(hs: &[HalfSpace<S>]) -> usize {
    rank(hs.iter().map(|h| h.normal.to_vec()).collect())
}

fn unit_f64<S: Scalar>(v: &[S; 4]) -> [f64; 4] {
    let f = v.clone().map(|c| c.to_f64());
    let n = f.iter().map(|c| c * c).sum::<f64>().sqrt();
    f.map(|c| c / n)
}

fn dot_f(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn norm_f(a: &[f64; 4]) -> f64 {
    dot_f(a, a).sqrt()
}

enum Found<S> {
    Vertex([S; 4]),
    /// A feasible extreme ray with nonpositive 1-coordinate.
    Unbounded,
}

/// Extreme rays of `{x : ⟨x, nᵢ⟩ ≥ 0}`, scaled to unit 1-coordinate, or
/// `None` when some extreme ray leaves the open hemisphere around 1. The
/// normals must have full rank.
fn enumerate_vertices<S: Scalar>(hs: &[HalfSpace<S>], parallel: bool) -> Option<Vec<Vertex<S>>> {
    let m = hs.len();
    let unit: Vec<[f64; 4]> = hs.iter().map(|h| unit_f64(&h.normal)).collect();
    let scan = |i: usize| -> Vec<Found<S>> {
        let mut out = Vec::new();
        for j in i + 1..m {
            for k in j + 1..m {
                triple_candidates(hs, &unit, [i, j, k], &mut out);
            }
        }
        out
    };
    let found: Vec<Found<S>> = if parallel {
        (0..m).into_par_iter().flat_map_iter(scan).collect()
    } else {
        (0..m).flat_map(scan).collect()
    };
    let mut set = QuatSet::new();
    for f in found {
        match f {
            Found::Unbounded => return None,
            Found::Vertex(v) => {
                set.insert(Quaternion::from_array(v));
            }
        }
    }
    let mut dirs = set.into_sorted();
    dirs.sort_by(|a, b| a.cmp_lex(b));
    Some(
        dirs.into_iter()
            .map(|q| {
                let direction = q.to_array();
                let active = active_set(hs, &unit, &direction);
                Vertex { direction, active }
            })
            .collect(),
    )
}

fn triple_candidates<S: Scalar>(
    hs: &[HalfSpace<S>],
    unit: &[[f64; 4]],
    idx: [usize; 3],
    out: &mut Vec<Found<S>>,
) {
    let rows_f = idx.map(|i| unit[i]);
    let mut cf = cross4(&rows_f);
    let mut exact: Option<[S; 4]> = None;
    let size = norm_f(&cf);
    if size < CROSS_MARGIN {
        let rows = idx.map(|i| hs[i].normal.clone());
        let c = cross4(&rows);
        if !S::independent_rows(&rows, &c) {
            return;
        }
        cf = unit_f64(&c);
        exact = Some(c);
    } else {
        cf = cf.map(|c| c / size);
    }
    for sigma in [1.0, -1.0] {
        let d = cf.map(|c| c * sigma);
        let feasible = unit
            .iter()
            .enumerate()
            .all(|(t, n)| idx.contains(&t) || dot_f(&d, n) >= -FILTER_MARGIN);
        if !feasible {
            continue;
        }
        let c = exact.get_or_insert_with(|| cross4(&idx.map(|i| hs[i].normal.clone())));
        let v = if sigma > 0.0 {
            c.clone()
        } else {
            c.clone().map(|x| x.neg())
        };
        if let Some(f) = confirm(hs, unit, &idx, &d, v) {
            out.push(f);
        }
    }
}

/// Decides feasibility of the ray `v` (float image `d`) in backend
/// arithmetic for every constraint the float pass could not settle.
fn confirm<S: Scalar>(
    hs: &[HalfSpace<S>],
    unit: &[[f64; 4]],
    idx: &[usize; 3],
    d: &[f64; 4],
    v: [S; 4],
) -> Option<Found<S>> {
    for (t, n) in unit.iter().enumerate() {
        if idx.contains(&t) || dot_f(d, n) > FILTER_MARGIN {
            continue;
        }
        if dot4(&v, &hs[t].normal).sign() == Sign::Negative {
            return None;
        }
    }
    if v[0].sign() != Sign::Positive {
        return Some(Found::Unbounded);
    }
    let inv = v[0].inv().expect("positive value");
    Some(Found::Vertex(v.map(|c| c.mul(&inv))))
}

fn active_set<S: Scalar>(hs: &[HalfSpace<S>], unit: &[[f64; 4]], v: &[S; 4]) -> Vec<usize> {
    let d = unit_f64(v);
    (0..hs.len())
        .filter(|&t| dot_f(&d, &unit[t]).abs() <= FILTER_MARGIN && dot4(v, &hs[t].normal).is_zero())
        .collect()
}

fn farthest_vertex<S: Scalar>(vertices: &[Vertex<S>]) -> DiameterBound<S> {
    let far = vertices
        .iter()
        .map(|v| dot4(&v.direction, &v.direction))
        .max_by(|a, b| a.cmp_value(b))
        .expect("a bounded cell has vertices");
    DiameterBound::new(far.inv().expect("nonzero"), Sign::Positive)
}

/// Farthest point of the cell from 1 when it crosses the equator: the
/// normalized projection of -1 onto the cone, found among projections onto
/// the faces spanned by up to three bisectors.
fn farthest_beyond_equator<S: Scalar>(hs: &[HalfSpace<S>]) -> DiameterBound<S> {
    let m = hs.len();
    let unit: Vec<[f64; 4]> = hs.iter().map(|h| unit_f64(&h.normal)).collect();
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 0..m {
        subsets.push(vec![i]);
        for j in i + 1..m {
            subsets.push(vec![i, j]);
            for k in j + 1..m {
                subsets.push(vec![i, j, k]);
            }
        }
    }
    // Float pass: candidate projections with their squared lengths.
    let mut cands: Vec<(f64, usize)> = subsets
        .par_iter()
        .enumerate()
        .filter_map(|(si, s)| {
            let normals: Vec<[f64; 4]> = s.iter().map(|&i| unit[i]).collect();
            let p = project_minus_one(&normals)?;
            let len2 = dot_f(&p, &p);
            if len2 < 1e-12 || -p[0] <= 0.0 {
                return None;
            }
            let pu = p.map(|c| c / len2.sqrt());
            unit.iter()
                .all(|n| dot_f(&pu, n) >= -FILTER_MARGIN)
                .then_some((len2, si))
        })
        .collect();
    cands.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut best: Option<(f64, S)> = None;
    for (len2, si) in cands {
        if let Some((bf, _)) = &best {
            if len2 < bf - 1e-9 {
                break;
            }
        }
        let normals: Vec<[S; 4]> = subsets[si].iter().map(|&i| hs[i].normal.clone()).collect();
        let Some(p) = project_minus_one(&normals) else {
            continue;
        };
        let len = dot4(&p, &p);
        if p[0].sign() != Sign::Negative
            || hs
                .iter()
                .any(|h| dot4(&p, &h.normal).sign() == Sign::Negative)
        {
            continue;
        }
        match &best {
            Some((_, b)) if b.cmp_value(&len) != Ordering::Less => {}
            _ => best = Some((len2, len)),
        }
    }
    match best {
        Some((_, len)) => DiameterBound::new(len, Sign::Negative),
        None => DiameterBound::half_pi(),
    }
}

/// Orthogonal projection of -1 onto the common kernel of `normals`.
fn project_minus_one<S: Scalar>(normals: &[[S; 4]]) -> Option<[S; 4]> {
    let minus_one = [S::one().neg(), S::zero(), S::zero(), S::zero()];
    if normals.is_empty() {
        return Some(minus_one);
    }
    if rank(normals.iter().map(|n| n.to_vec()).collect()) < normals.len() {
        return None;
    }
    let gram: Vec<Vec<S>> = normals
        .iter()
        .map(|a| normals.iter().map(|b| dot4(a, b)).collect())
        .collect();
    let rhs: Vec<S> = normals.iter().map(|n| dot4(n, &minus_one)).collect();
    let lambda = solve(gram, rhs)?;
    let mut p = minus_one;
    for (l, n) in lambda.iter().zip(normals) {
        for c in 0..4 {
            p[c] = p[c].sub(&l.mul(&n[c]));
        }
    }
    Some(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Index into [`SphericalCell::halfspaces`].
    pub halfspace: usize,
    /// Vertex indices in cyclic order around the face.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: Vec<Face>,
    /// Number of faces with a given number of sides.
    pub census: BTreeMap<usize, usize>,
    pub euler_characteristic: i64,
    /// Every face boundary closed up into a single cycle.
    pub cycles_closed: bool,
}

pub fn cell_statistics<S: Scalar>(cell: &SphericalCell<S>) -> FaceReport {
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (vi, v) in cell.vertices.iter().enumerate() {
        for &h in &v.active {
            incident.entry(h).or_default().push(vi);
        }
    }
    incident.retain(|_, vs| vs.len() >= 3);
    let facets: Vec<BTreeSet<usize>> = cell
        .vertices
        .iter()
        .map(|v| {
            v.active
                .iter()
                .copied()
                .filter(|h| incident.contains_key(h))
                .collect()
        })
        .collect();
    let nv = cell.vertices.len();
    let mut adjacent = vec![BTreeSet::new(); nv];
    let mut edges = 0;
    for a in 0..nv {
        for b in a + 1..nv {
            if facets[a].intersection(&facets[b]).count() >= 2 {
                adjacent[a].insert(b);
                adjacent[b].insert(a);
                edges += 1;
            }
        }
    }
    let mut cycles_closed = true;
    let mut faces = Vec::new();
    let mut census = BTreeMap::new();
    for (&h, members) in &incident {
        let cycle = face_cycle(members, &adjacent);
        cycles_closed &= cycle.len() == members.len();
        *census.entry(members.len()).or_insert(0) += 1;
        faces.push(Face {
            halfspace: h,
            cycle,
        });
    }
    FaceReport {
        vertices: nv,
        edges,
        euler_characteristic: nv as i64 - edges as i64 + faces.len() as i64,
        faces,
        census,
        cycles_closed,
    }
}

/// Walks the boundary of a face along cell edges; shorter than `members`
/// when the walk does not close up.
fn face_cycle(members: &[usize], adjacent: &[BTreeSet<usize>]) -> Vec<usize> {
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    let start = members[0];
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = adjacent[cur]
            .iter()
            .copied()
            .find(|&x| inside.contains(&x) && x != prev && (x != start || cycle.len() > 2));
        match next {
            Some(x) if x == start => return cycle,
            Some(x) if !cycle.contains(&x) => {
                cycle.push(x);
                prev = cur;
                cur = x;
            }
            _ => {
                cycle.clear();
                return cycle;
            }
        }
    }
}

/// Serialized number: rational coordinates over {1, √2, √5, √10} when the
/// backend is exact, and the double-precision value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumberJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<[String; 4]>,
    pub float: f64,
}

impl NumberJson {
    pub fn of<S: Scalar>(x: &S) -> Self {
        NumberJson {
            basis: x.basis_strings(),
            float: x.to_f64(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub cos2: NumberJson,
    pub cos_sign: Sign,
    pub radians: f64,
}

impl BoundJson {
    pub fn of<S: Scalar>(b: &DiameterBound<S>) -> Self {
        BoundJson {
            cos2: NumberJson::of(&b.cos2),
            cos_sign: b.cos_sign,
            radians: b.radians,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellJson {
    pub backend: String,
    pub kind: CellKind,
    pub orbit: Vec<[NumberJson; 4]>,
    pub stabilizer: usize,
    pub halfspaces: Vec<[NumberJson; 4]>,
    pub vertices: Vec<[NumberJson; 4]>,
    pub active_sets: Vec<Vec<usize>>,
    pub faces: FaceReport,
    pub bound: BoundJson,
}

fn quad_json<S: Scalar>(v: &[S; 4]) -> [NumberJson; 4] {
    [0, 1, 2, 3].map(|i| NumberJson::of(&v[i]))
}

pub fn cell_json<S: Scalar>(orbit: &Orbit<S>, cell: &SphericalCell<S>) -> CellJson {
    CellJson {
        backend: S::NAME.to_string(),
        kind: cell.kind,
        orbit: orbit
            .points
            .iter()
            .map(|p| quad_json(&p.to_array()))
            .collect(),
        stabilizer: orbit.stabilizer,
        halfspaces: cell
            .halfspaces
            .iter()
            .map(|h| quad_json(&h.normal))
            .collect(),
        vertices: cell
            .vertices
            .iter()
            .map(|v| quad_json(&v.direction))
            .collect(),
        active_sets: cell.vertices.iter().map(|v| v.active.clone()).collect(),
        faces: cell_statistics(cell),
        bound: BoundJson::of(&cell.bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::FieldElement;
    use crate::goursat::{instantiate, GroupSpec};

    fn cell_of<S: Scalar>(family: &str) -> (Orbit<S>, SphericalCell<S>) {
        let g = instantiate::<S>(&GroupSpec::new(family)).unwrap();
        let orbit = orbit_of_one(&g);
        let cell = prefundamental_domain(&orbit);
        (orbit, cell)
    }

    #[test]
    fn tetrahedral_diagonal_cube() {
        let (orbit, cell) = cell_of::<FieldElement>("22");
        assert_eq!(orbit.len(), 8);
        assert_eq!(orbit.len() * orbit.stabilizer, 96);
        assert_eq!(cell.kind, CellKind::Polytope);
        assert_eq!(cell.vertices.len(), 8);
        assert_eq!(
            cell.bound.cos2,
            FieldElement::from_ratios([(1, 4), (0, 1), (0, 1), (0, 1)])
        );
        let stats = cell_statistics(&cell);
        assert_eq!(stats.census, BTreeMap::from([(4, 6)]));
        assert_eq!(stats.euler_characteristic, 2);
    }

    #[test]
    fn degenerate_orbits() {
        let (orbit, cell) = cell_of::<FieldElement>("21'");
        assert_eq!(orbit.len(), 1);
        assert_eq!(cell.kind, CellKind::WholeSphere);
        assert!((cell.bound.radians - std::f64::consts::PI).abs() < 1e-12);
        let (_, cell) = cell_of::<FieldElement>("21");
        assert_eq!(cell.kind, CellKind::Hemisphere);
        assert_eq!(cell.bound, DiameterBound::half_pi());
    }

    #[test]
    fn pruned_matches_unpruned() {
        let g = instantiate::<f64>(&GroupSpec::new("20")).unwrap();
        let orbit = orbit_of_one(&g);
        let a = prefundamental_domain_with(
            &orbit,
            CellOptions {
                pruned: true,
                parallel: false,
            },
        );
        let b = prefundamental_domain_with(
            &orbit,
            CellOptions {
                pruned: false,
                parallel: true,
            },
        );
        assert_eq!(a.vertices.len(), 6);
        assert_eq!(b.vertices.len(), 6);
        assert!(a.bound.same_value(&b.bound));
        assert!(a.considered <= b.considered);
    }

    #[test]
    fn bound_ordering() {
        let third = DiameterBound::<f64>::new(0.25, Sign::Positive);
        let quarter = DiameterBound::<f64>::new(0.5, Sign::Positive);
        assert_eq!(third.cmp_distance(&quarter), Ordering::Greater);
        assert_eq!(
            DiameterBound::<f64>::pi().cmp_distance(&third),
            Ordering::Greater
        );
        assert_eq!(
            DiameterBound::<f64>::half_pi().cmp_distance(&third),
            Ordering::Greater
        );
        assert!((quarter.radians - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn beyond_equator_projection() {
        // Orbit {1, i}: the farthest point of the cell is -(1 + i)/√2.
        let orbit = Orbit::from_points(vec![Quaternion::<f64>::one(), Quaternion::i()], 1);
        let cell = prefundamental_domain(&orbit);
        assert_eq!(cell.kind, CellKind::FixedPoint);
        assert!((cell.bound.radians - 0.75 * std::f64::consts::PI).abs() < 1e-9);
    }
}
