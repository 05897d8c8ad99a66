//! Ridge paths: sequences of `k`-faces whose consecutive members meet in a
//! `(k-1)`-face that is not inside any blocked face.
//!
//! [`find_ridge_path`] builds them by induction on `k`. For `k >= 2` with a
//! nonempty blocked set it picks the smallest blocked face `R`, finds a
//! hyperplane through the barycenters of both endpoints that misses `R` and
//! every vertex, slices, solves one dimension down with `R` dropped, and
//! lifts the answer back through the section map. `k = 1` is a breadth-first
//! search in the edge graph. [`verify_ridge_path`] rechecks a path using only
//! vertex sets.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, primitive_integer_row, solve_nonnegative, Hyperplane, QVector, Rational};
use crate::polytope::{is_sorted_subset, sorted_intersection, FaceId, FaceLattice, Polytope};
use crate::section::{cuts_face, section};

/// At most `k` faces of dimension `k` removed as closed faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedSet {
    k: isize,
    faces: BTreeSet<FaceId>,
}

impl BlockedSet {
    pub fn new(l: &FaceLattice, k: isize, faces: impl IntoIterator<Item = FaceId>) -> Result<Self> {
        let faces: BTreeSet<FaceId> = faces.into_iter().collect();
        if faces.len() as isize > k.max(0) {
            return Err(Error::Precondition(format!(
                "{} blocked faces exceed the budget k = {k}",
                faces.len()
            )));
        }
        for &f in &faces {
            if f >= l.len() {
                return Err(Error::UnknownFace(format!("#{f}")));
            }
            if l.face(f).dim != k {
                return Err(Error::Precondition(format!(
                    "blocked face {} has dimension {}, expected {k}",
                    l.label(f),
                    l.face(f).dim
                )));
            }
        }
        Ok(Self { k, faces })
    }

    pub fn empty(k: isize) -> Self {
        Self {
            k,
            faces: BTreeSet::new(),
        }
    }

    pub fn k(&self) -> isize {
        self.k
    }

    pub fn faces(&self) -> &BTreeSet<FaceId> {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: FaceId) -> bool {
        self.faces.contains(&f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgePath {
    pub faces: Vec<FaceId>,
    /// `ridges[i]` is the intersection of `faces[i]` and `faces[i + 1]`.
    pub ridges: Vec<FaceId>,
}

impl RidgePath {
    fn single(f: FaceId) -> Self {
        Self {
            faces: vec![f],
            ridges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Sampling schedule for [`find_cutting_hyperplane_with`]: each stage draws
/// up to `samples` integer vectors with entries in `-range..=range`. If all
/// stages fail, up to `anchored` further samples perturb a separating normal
/// obtained by exact linear programming, with a shrinking perturbation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneSearch {
    pub stages: Vec<(usize, i64)>,
    pub anchored: usize,
}

impl Default for HyperplaneSearch {
    fn default() -> Self {
        Self {
            stages: vec![(1_000, 3), (3_000, 10), (6_000, 100)],
            anchored: 1_000,
        }
    }
}

impl HyperplaneSearch {
    pub fn budget(&self) -> usize {
        self.stages.iter().map(|s| s.0).sum::<usize>() + self.anchored
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuttingPlane {
    pub plane: Hyperplane,
    /// Number of normals drawn, including the accepted one.
    pub samples: usize,
}

fn check_cutting_preconditions(q: &Polytope, f: FaceId, g: FaceId, r: FaceId) -> Result<()> {
    let l = &q.lattice;
    for id in [f, g, r] {
        if id >= l.len() {
            return Err(Error::UnknownFace(format!("#{id}")));
        }
    }
    if f == g || f == r || g == r {
        return Err(Error::Precondition("F, G, R must be distinct".into()));
    }
    let k = l.face(f).dim;
    if l.face(g).dim != k || l.face(r).dim != k {
        return Err(Error::Precondition(
            "F, G, R must have equal dimension".into(),
        ));
    }
    if k < 1 || k > l.dim() - 1 {
        return Err(Error::DimensionOutOfRange {
            k,
            min: 1,
            max: l.dim() - 1,
        });
    }
    Ok(())
}

/// A hyperplane through the barycenters of `f` and `g` that leaves every
/// vertex of `r` strictly on one side and contains no vertex of `q`.
pub fn find_cutting_hyperplane(
    q: &Polytope,
    f: FaceId,
    g: FaceId,
    r: FaceId,
    seed: u64,
) -> Result<CuttingPlane> {
    find_cutting_hyperplane_with(q, f, g, r, seed, &HyperplaneSearch::default())
}

pub fn find_cutting_hyperplane_with(
    q: &Polytope,
    f: FaceId,
    g: FaceId,
    r: FaceId,
    seed: u64,
    search: &HyperplaneSearch,
) -> Result<CuttingPlane> {
    check_cutting_preconditions(q, f, g, r)?;
    let bf = q.face_barycenter(f)?;
    let bg = q.face_barycenter(g)?;
    let dir = &bg - &bf;
    let dir_sq = dir.dot(&dir);
    let d = bf.dim();
    let r_vertices = &q.lattice.face(r).vertices;

    let project = |u: &QVector| u - &dir.scale(&(u.dot(&dir) / &dir_sq));
    // Accepts `a` when no vertex lies on `a·x = a·bf` and `r` sits on one side.
    let accept = |a: &QVector| -> Option<Hyperplane> {
        if a.is_zero() {
            return None;
        }
        let a = QVector::new(
            primitive_integer_row(a.coords())
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        );
        let c = a.dot(&bf);
        let mut r_side = None;
        for (i, v) in q.geometry.vertices().iter().enumerate() {
            let s = a.dot(v).cmp(&c);
            if s == Ordering::Equal {
                return None;
            }
            if r_vertices.binary_search(&i).is_ok() {
                match r_side {
                    None => r_side = Some(s),
                    Some(prev) if prev != s => return None,
                    _ => {}
                }
            }
        }
        Hyperplane::new(a, c).ok()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 0;
    for &(count, range) in &search.stages {
        for _ in 0..count {
            samples += 1;
            let u = random_vector(&mut rng, d, range);
            // Project out the f-to-g direction so both barycenters lie on H.
            if let Some(plane) = accept(&project(&u)) {
                return Ok(CuttingPlane { plane, samples });
            }
        }
    }

    if search.anchored > 0 {
        let anchor = separating_normal(&dir, &bf, r_vertices.iter().map(|&i| q.geometry.vertex(i)))
            .ok_or_else(|| Error::Internal("no normal separates the face from the line".into()))?;
        let mut t = Rational::one();
        for _ in 0..search.anchored {
            samples += 1;
            let u = project(&random_vector(&mut rng, d, 100));
            if let Some(plane) = accept(&(&anchor + &u.scale(&t))) {
                return Ok(CuttingPlane { plane, samples });
            }
            t /= int(2);
        }
    }
    Err(Error::SearchExhausted {
        budget: search.budget(),
    })
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize, range: i64) -> QVector {
    QVector::from_ints(
        &(0..d)
            .map(|_| rng.gen_range(-range..=range))
            .collect::<Vec<_>>(),
    )
}

/// A normal `a` with `a·dir = 0` and `a·(v - origin) ≥ 1` for every `v`, by
/// exact phase-1 simplex over `a = a⁺ - a⁻` and surplus variables.
fn separating_normal<'a>(
    dir: &QVector,
    origin: &QVector,
    points: impl Iterator<Item = &'a QVector>,
) -> Option<QVector> {
    let rows: Vec<QVector> = points.map(|v| v - origin).collect();
    let d = dir.dim();
    let m = rows.len();
    let width = 2 * d + m;
    let split = |w: &QVector| -> Vec<Rational> {
        let mut row: Vec<Rational> = w.coords().to_vec();
        row.extend(w.coords().iter().map(|x| -x.clone()));
        row.resize(width, Rational::zero());
        row
    };
    let mut a = vec![split(dir)];
    let mut b = vec![Rational::zero()];
    for (j, w) in rows.iter().enumerate() {
        let mut row = split(w);
        row[2 * d + j] = -Rational::one();
        a.push(row);
        b.push(Rational::one());
    }
    let x = solve_nonnegative(a, b)?;
    Some(QVector::new((0..d).map(|i| &x[i] - &x[d + i]).collect()))
}

/// Independent check of the three hyperplane conditions: both barycenters
/// on `h`, all of `r` strictly on one side, no vertex of `q` on `h`.
pub fn verify_cutting_hyperplane(
    q: &Polytope,
    f: FaceId,
    g: FaceId,
    r: FaceId,
    h: &Hyperplane,
) -> bool {
    let on_plane = |id: FaceId| {
        q.face_barycenter(id)
            .and_then(|b| h.side(&b))
            .is_ok_and(|s| s == Ordering::Equal)
    };
    if !on_plane(f) || !on_plane(g) {
        return false;
    }
    let sides: Vec<Ordering> = match q
        .geometry
        .vertices()
        .iter()
        .map(|v| h.side(v))
        .collect::<Result<_>>()
    {
        Ok(s) => s,
        Err(_) => return false,
    };
    if sides.contains(&Ordering::Equal) {
        return false;
    }
    let r_sides: BTreeSet<Ordering> = q
        .lattice
        .face(r)
        .vertices
        .iter()
        .map(|&v| sides[v])
        .collect();
    r_sides.len() == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeSolution {
    pub path: RidgePath,
    /// Number of sections taken.
    pub depth: usize,
    /// Cutting hyperplane used at each level, outermost first.
    pub hyperplanes: Vec<Hyperplane>,
}

/// Ridge path from `f` to `g` among the `k`-faces of `q` avoiding `b`.
///
/// `k = 0` is degenerate: nothing is blocked and two vertices are joined
/// directly through the empty face.
pub fn find_ridge_path(
    q: &Polytope,
    k: isize,
    b: &BlockedSet,
    f: FaceId,
    g: FaceId,
    seed: u64,
) -> Result<RidgeSolution> {
    let mut hyperplanes = Vec::new();
    let blocked: Vec<FaceId> = b.faces().iter().copied().collect();
    if b.k() != k {
        return Err(Error::Precondition(format!(
            "blocked set is for k = {}, path requested for k = {k}",
            b.k()
        )));
    }
    let path = solve(q, k, &blocked, f, g, seed, &mut hyperplanes)?;
    Ok(RidgeSolution {
        path,
        depth: hyperplanes.len(),
        hyperplanes,
    })
}

fn solve(
    q: &Polytope,
    k: isize,
    blocked: &[FaceId],
    f: FaceId,
    g: FaceId,
    seed: u64,
    planes: &mut Vec<Hyperplane>,
) -> Result<RidgePath> {
    let l = &q.lattice;
    if k < 0 || k > l.dim() - 1 {
        return Err(Error::DimensionOutOfRange {
            k,
            min: 0,
            max: l.dim() - 1,
        });
    }
    for id in [f, g] {
        if id >= l.len() || l.face(id).dim != k {
            return Err(Error::Precondition(format!(
                "endpoint #{id} is not a {k}-face"
            )));
        }
        if blocked.contains(&id) {
            return Err(Error::Precondition(format!(
                "endpoint {} is blocked",
                l.label(id)
            )));
        }
    }
    if blocked.len() as isize > k {
        return Err(Error::Precondition(format!(
            "{} blocked faces exceed the budget k = {k}",
            blocked.len()
        )));
    }
    if f == g {
        return Ok(RidgePath::single(f));
    }
    if k == 0 {
        return Ok(RidgePath {
            faces: vec![f, g],
            ridges: vec![l.empty_face()],
        });
    }
    if k == 1 {
        return edge_graph_path(l, blocked, f, g);
    }
    if blocked.is_empty() {
        return ridge_graph_path(l, k, blocked, f, g)
            .ok_or_else(|| Error::Internal("ridge graph is disconnected".into()));
    }

    let r = blocked[0];
    let plane = find_cutting_hyperplane(q, f, g, r, seed)?.plane;
    let s = section(q, &plane)?;
    planes.push(plane.clone());
    let phi = |id: FaceId| {
        s.phi(id)
            .ok_or_else(|| Error::Internal(format!("plane misses {}", l.label(id))))
    };
    let f_slice = phi(f)?;
    let g_slice = phi(g)?;
    let mut blocked_slice = Vec::new();
    for &other in &blocked[1..] {
        if cuts_face(&plane, l.face(other), &q.geometry)? {
            blocked_slice.push(phi(other)?);
        }
    }
    blocked_slice.sort_unstable();
    if blocked_slice.contains(&f_slice) || blocked_slice.contains(&g_slice) {
        return Err(Error::Internal("section map is not injective".into()));
    }

    let inner = solve(
        s.sliced(),
        k - 1,
        &blocked_slice,
        f_slice,
        g_slice,
        seed.wrapping_add(1),
        planes,
    )?;
    let faces = inner
        .faces
        .iter()
        .map(|&x| s.lift(x))
        .collect::<Result<Vec<_>>>()?;
    let ridges = inner
        .ridges
        .iter()
        .map(|&x| s.lift(x))
        .collect::<Result<Vec<_>>>()?;
    for (i, &ridge) in ridges.iter().enumerate() {
        if l.meet(faces[i], faces[i + 1]) != Some(ridge) || l.face(ridge).dim != k - 1 {
            return Err(Error::Internal(format!(
                "lifted ridge {} does not match its neighbours",
                l.label(ridge)
            )));
        }
    }
    Ok(RidgePath { faces, ridges })
}

/// `k = 1`: shortest vertex walk that avoids the endpoints of blocked edges,
/// read back as a sequence of edges.
fn edge_graph_path(l: &FaceLattice, blocked: &[FaceId], f: FaceId, g: FaceId) -> Result<RidgePath> {
    let n = l.vertex_count();
    let mut forbidden = vec![false; n];
    for &b in blocked {
        for &v in &l.face(b).vertices {
            forbidden[v] = true;
        }
    }
    let mut neighbours = vec![Vec::new(); n];
    for e in l.faces_of_dim(1)? {
        let ends = &l.face(e).vertices;
        neighbours[ends[0]].push(ends[1]);
        neighbours[ends[1]].push(ends[0]);
    }
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &v in &l.face(f).vertices {
        if !forbidden[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    let targets = &l.face(g).vertices;
    let mut end = None;
    while let Some(u) = queue.pop_front() {
        if targets.contains(&u) && !forbidden[u] {
            end = Some(u);
            break;
        }
        for &w in &neighbours[u] {
            if !seen[w] && !forbidden[w] {
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let end = end.ok_or_else(|| Error::Internal("edge graph is disconnected".into()))?;
    let mut walk = vec![end];
    while prev[*walk.last().unwrap()] != usize::MAX {
        walk.push(prev[*walk.last().unwrap()]);
    }
    walk.reverse();

    let edge = |a: usize, b: usize| {
        l.find(&[a.min(b), a.max(b)])
            .ok_or_else(|| Error::Internal(format!("no edge {a}-{b}")))
    };
    let mut faces = vec![f];
    for pair in walk.windows(2) {
        faces.push(edge(pair[0], pair[1])?);
    }
    faces.push(g);
    faces.dedup();
    let ridges = faces
        .windows(2)
        .map(|w| {
            l.meet(w[0], w[1])
                .ok_or_else(|| Error::Internal("consecutive edges do not meet".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RidgePath { faces, ridges })
}

/// Breadth-first search over `k`-faces linked through `(k-1)`-faces not
/// contained in any blocked face.
pub fn ridge_graph_path(
    l: &FaceLattice,
    k: isize,
    blocked: &[FaceId],
    f: FaceId,
    g: FaceId,
) -> Option<RidgePath> {
    let usable_ridge = |ridge: FaceId| {
        !blocked
            .iter()
            .any(|&b| l.face(ridge).is_subface_of(l.face(b)))
    };
    let mut prev: std::collections::HashMap<FaceId, (FaceId, FaceId)> = Default::default();
    let mut queue = VecDeque::from([f]);
    let mut seen = BTreeSet::from([f]);
    while let Some(u) = queue.pop_front() {
        if u == g {
            let mut faces = vec![g];
            let mut ridges = Vec::new();
            let mut cur = g;
            while let Some(&(p, r)) = prev.get(&cur) {
                faces.push(p);
                ridges.push(r);
                cur = p;
            }
            faces.reverse();
            ridges.reverse();
            return Some(RidgePath { faces, ridges });
        }
        for &ridge in l.children(u) {
            if !usable_ridge(ridge) {
                continue;
            }
            for &w in l.parents(ridge) {
                if l.face(w).dim == k && !blocked.contains(&w) && seen.insert(w) {
                    prev.insert(w, (u, ridge));
                    queue.push_back(w);
                }
            }
        }
    }
    None
}

/// Checks a ridge path using vertex sets only: endpoints, dimensions,
/// blocked faces, ridge dimension, and that no ridge lies inside a blocked
/// face.
pub fn verify_ridge_path(
    l: &FaceLattice,
    k: isize,
    b: &BlockedSet,
    path: &RidgePath,
    f: FaceId,
    g: FaceId,
) -> bool {
    let faces = &path.faces;
    if faces.first() != Some(&f) || faces.last() != Some(&g) {
        return false;
    }
    if path.ridges.len() + 1 != faces.len() {
        return false;
    }
    let in_range = |id: FaceId| id < l.len();
    if !faces.iter().chain(&path.ridges).all(|&id| in_range(id)) {
        return false;
    }
    if !b.faces().iter().all(|&id| in_range(id)) {
        return false;
    }
    let blocked_sets: Vec<&Vec<usize>> = b.faces().iter().map(|&id| &l.face(id).vertices).collect();
    for &face in faces {
        let vs = &l.face(face).vertices;
        if l.face(face).dim != k || blocked_sets.contains(&vs) {
            return false;
        }
    }
    for (i, pair) in faces.windows(2).enumerate() {
        if pair[0] == pair[1] {
            return false;
        }
        let shared = sorted_intersection(&l.face(pair[0]).vertices, &l.face(pair[1]).vertices);
        let ridge = l.face(path.ridges[i]);
        if ridge.vertices != shared || ridge.dim != k - 1 {
            return false;
        }
        if blocked_sets.iter().any(|bs| is_sorted_subset(&shared, bs)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::generators::{generate, GeneratorSpec};

    fn build(spec: GeneratorSpec) -> Polytope {
        Polytope::new(generate(&spec).unwrap()).unwrap()
    }

    fn id(q: &Polytope, vs: &[usize]) -> FaceId {
        q.lattice.find(vs).unwrap()
    }

    #[test]
    fn square_cutting_plane_example() {
        let q = build(GeneratorSpec::cube(2));
        // Vertex i = (i & 1, i >> 1): bottom 0-1, top 2-3, left 0-2.
        let (f, g, r) = (id(&q, &[0, 1]), id(&q, &[2, 3]), id(&q, &[0, 2]));
        let h = Hyperplane::new(QVector::unit(2, 0), ratio(1, 2)).unwrap();
        assert!(verify_cutting_hyperplane(&q, f, g, r, &h));
        let found = find_cutting_hyperplane(&q, f, g, r, 7).unwrap();
        assert!(verify_cutting_hyperplane(&q, f, g, r, &found.plane));
        assert!(found.samples >= 1);
        // Through a vertex: rejected.
        let bad = Hyperplane::new(QVector::unit(2, 0), ratio(0, 1)).unwrap();
        assert!(!verify_cutting_hyperplane(&q, f, g, r, &bad));
    }

    #[test]
    fn cube_cutting_plane_example() {
        let q = build(GeneratorSpec::cube(3));
        let (f, g, r) = (
            id(&q, &[0, 1, 2, 3]),
            id(&q, &[4, 5, 6, 7]),
            id(&q, &[0, 2, 4, 6]),
        );
        let h = Hyperplane::new(QVector::unit(3, 0), ratio(1, 2)).unwrap();
        assert!(verify_cutting_hyperplane(&q, f, g, r, &h));
        let found = find_cutting_hyperplane(&q, f, g, r, 1).unwrap();
        assert!(verify_cutting_hyperplane(&q, f, g, r, &found.plane));
    }

    #[test]
    fn cutting_plane_preconditions() {
        let q = build(GeneratorSpec::cube(3));
        let f = id(&q, &[0, 1, 2, 3]);
        let e = id(&q, &[0, 1]);
        assert!(find_cutting_hyperplane(&q, f, f, e, 0).is_err());
        assert!(find_cutting_hyperplane(&q, f, id(&q, &[4, 5, 6, 7]), e, 0).is_err());
        let v = |i| id(&q, &[i]);
        assert!(matches!(
            find_cutting_hyperplane(&q, v(0), v(1), v(2), 0),
            Err(Error::DimensionOutOfRange { .. })
        ));
        let empty = HyperplaneSearch {
            stages: vec![],
            anchored: 0,
        };
        let g = id(&q, &[4, 5, 6, 7]);
        let r = id(&q, &[0, 2, 4, 6]);
        assert_eq!(
            find_cutting_hyperplane_with(&q, f, g, r, 0, &empty),
            Err(Error::SearchExhausted { budget: 0 })
        );
    }

    #[test]
    fn anchored_stage_alone_finds_planes() {
        let q = build(GeneratorSpec::cyclic(7, 4));
        let anchored = HyperplaneSearch {
            stages: vec![],
            anchored: 200,
        };
        let faces: Vec<FaceId> = q.lattice.faces_of_dim(2).unwrap().collect();
        for w in faces.windows(3).step_by(5) {
            let found = find_cutting_hyperplane_with(&q, w[0], w[1], w[2], 9, &anchored).unwrap();
            assert!(verify_cutting_hyperplane(
                &q,
                w[0],
                w[1],
                w[2],
                &found.plane
            ));
        }
    }

    #[test]
    fn cube_edges_around_blocked_edge() {
        let q = build(GeneratorSpec::cube(3));
        let blocked_edge = id(&q, &[0, 1]);
        let b = BlockedSet::new(&q.lattice, 1, [blocked_edge]).unwrap();
        for f in q.lattice.faces_of_dim(1).unwrap() {
            for g in q.lattice.faces_of_dim(1).unwrap() {
                if f == blocked_edge || g == blocked_edge {
                    continue;
                }
                let sol = find_ridge_path(&q, 1, &b, f, g, 0).unwrap();
                assert!(verify_ridge_path(&q.lattice, 1, &b, &sol.path, f, g));
                assert_eq!(sol.depth, 0);
            }
        }
    }

    #[test]
    fn cube_facets_around_two_blocked() {
        let q = build(GeneratorSpec::cube(3));
        let facets: Vec<FaceId> = q.lattice.facets().collect();
        let b = BlockedSet::new(&q.lattice, 2, [facets[0], facets[1]]).unwrap();
        let free: Vec<FaceId> = facets[2..].to_vec();
        for &f in &free {
            for &g in &free {
                let sol = find_ridge_path(&q, 2, &b, f, g, 3).unwrap();
                assert!(verify_ridge_path(&q.lattice, 2, &b, &sol.path, f, g));
                if f != g {
                    assert_eq!(sol.depth, 1);
                }
            }
        }
    }

    #[test]
    fn identity_and_degenerate_cases() {
        let q = build(GeneratorSpec::cube(3));
        let f = id(&q, &[0, 1, 2, 3]);
        let sol = find_ridge_path(&q, 2, &BlockedSet::empty(2), f, f, 0).unwrap();
        assert_eq!(sol.path, RidgePath::single(f));
        let (v0, v7) = (id(&q, &[0]), id(&q, &[7]));
        let sol = find_ridge_path(&q, 0, &BlockedSet::empty(0), v0, v7, 0).unwrap();
        assert_eq!(sol.path.faces, vec![v0, v7]);
        assert!(verify_ridge_path(
            &q.lattice,
            0,
            &BlockedSet::empty(0),
            &sol.path,
            v0,
            v7
        ));
    }

    #[test]
    fn solver_preconditions() {
        let q = build(GeneratorSpec::cube(3));
        let facets: Vec<FaceId> = q.lattice.facets().collect();
        assert!(BlockedSet::new(&q.lattice, 2, facets[..3].iter().copied()).is_err());
        assert!(BlockedSet::new(&q.lattice, 2, [id(&q, &[0, 1])]).is_err());
        let b = BlockedSet::new(&q.lattice, 2, [facets[0]]).unwrap();
        assert!(find_ridge_path(&q, 2, &b, facets[0], facets[1], 0).is_err());
        assert!(find_ridge_path(&q, 1, &b, facets[2], facets[1], 0).is_err());
        assert!(find_ridge_path(&q, 3, &BlockedSet::empty(3), facets[0], facets[1], 0).is_err());
    }

    #[test]
    fn verifier_rejects_bad_paths() {
        let q = build(GeneratorSpec::cube(3));
        let l = &q.lattice;
        let facets: Vec<FaceId> = l.facets().collect();
        let sol = find_ridge_path(&q, 2, &BlockedSet::empty(2), facets[0], facets[1], 0).unwrap();
        assert!(verify_ridge_path(
            l,
            2,
            &BlockedSet::empty(2),
            &sol.path,
            facets[0],
            facets[1]
        ));

        // Middle face blocked.
        let x0 = id(&q, &[0, 1, 2, 3]);
        let x1 = id(&q, &[0, 1, 4, 5]);
        let x2 = id(&q, &[4, 5, 6, 7]);
        let through_blocked = RidgePath {
            faces: vec![x0, x1, x2],
            ridges: vec![id(&q, &[0, 1]), id(&q, &[4, 5])],
        };
        let b_mid = BlockedSet::new(l, 2, [x1]).unwrap();
        assert!(!verify_ridge_path(l, 2, &b_mid, &through_blocked, x0, x2));
        assert!(verify_ridge_path(
            l,
            2,
            &BlockedSet::empty(2),
            &through_blocked,
            x0,
            x2
        ));

        // Opposite facets share no edge.
        let jump = RidgePath {
            faces: vec![x0, x2],
            ridges: vec![l.empty_face()],
        };
        assert!(!verify_ridge_path(
            l,
            2,
            &BlockedSet::empty(2),
            &jump,
            x0,
            x2
        ));

        // Two squares meeting only in a vertex would be a (k-2)-ridge; in the
        // cube any two facets meet in an edge or not at all, so use edges.
        let e1 = id(&q, &[0, 1]);
        let e2 = id(&q, &[1, 3]);
        let e3 = id(&q, &[3, 7]);
        let ok = RidgePath {
            faces: vec![e1, e2, e3],
            ridges: vec![id(&q, &[1]), id(&q, &[3])],
        };
        assert!(verify_ridge_path(l, 1, &BlockedSet::empty(1), &ok, e1, e3));
        // Ridge vertex 1 lies inside the blocked edge 1-5.
        let b_edge = BlockedSet::new(l, 1, [id(&q, &[1, 5])]).unwrap();
        assert!(!verify_ridge_path(l, 1, &b_edge, &ok, e1, e3));
        assert!(!verify_ridge_path(l, 1, &BlockedSet::empty(1), &ok, e1, e2));
    }

    #[test]
    fn four_cube_two_levels() {
        let q = build(GeneratorSpec::cube(4));
        let k = 3;
        let facets: Vec<FaceId> = q.lattice.facets().collect();
        let b = BlockedSet::new(&q.lattice, k, facets[..3].iter().copied()).unwrap();
        let sol = find_ridge_path(&q, k, &b, facets[3], facets[7], 11).unwrap();
        assert!(verify_ridge_path(
            &q.lattice, k, &b, &sol.path, facets[3], facets[7]
        ));
        assert!(sol.depth >= 1 && sol.depth <= 2);
        assert!(sol
            .hyperplanes
            .iter()
            .all(|h| !h.normal().coords().iter().all(Zero::is_zero)));
    }
}
