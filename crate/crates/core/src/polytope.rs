//! V-polytopes, brute-force facet enumeration, face lattices, and polar
//! duality.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{
    affine_rank, barycenter, integer_cross, point_in_hull, primitive_integer_row, Hyperplane,
    QVector, Rational,
};

/// A convex polytope given by its vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    vertices: Vec<QVector>,
    ambient_dim: usize,
    dim: isize,
}

impl VPolytope {
    /// Checks that every point is a vertex of the hull and computes the
    /// dimension.
    pub fn new(vertices: Vec<QVector>) -> Result<Self> {
        let poly = Self::new_unchecked(vertices)?;
        for i in 0..poly.vertices.len() {
            let others: Vec<QVector> = poly
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if !others.is_empty() && point_in_hull(&others, &poly.vertices[i])? {
                return Err(Error::NotAVertex { index: i });
            }
        }
        Ok(poly)
    }

    /// Skips the vertex test; used where vertices are known by construction.
    pub(crate) fn new_unchecked(vertices: Vec<QVector>) -> Result<Self> {
        let ambient_dim = vertices.first().ok_or(Error::EmptyPointSet)?.dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.dim(),
            });
        }
        let dim = affine_rank(&vertices);
        Ok(Self {
            vertices,
            ambient_dim,
            dim,
        })
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &QVector {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim as isize
    }

    fn require_full_dimensional(&self) -> Result<()> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn points(&self, indices: &[usize]) -> Vec<QVector> {
        indices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn translated(&self, by: &QVector) -> VPolytope {
        VPolytope {
            vertices: self.vertices.iter().map(|v| v - by).collect(),
            ambient_dim: self.ambient_dim,
            dim: self.dim,
        }
    }
}

/// A face, identified by the sorted indices of the polytope vertices on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: isize,
}

impl Face {
    /// Canonical textual id: `v1-v2-...-vm`, or `empty` for the empty face.
    pub fn label(&self) -> String {
        label_of(&self.vertices)
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        is_sorted_subset(&self.vertices, &other.vertices)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub const EMPTY_FACE_LABEL: &str = "empty";

pub fn label_of(vertices: &[usize]) -> String {
    if vertices.is_empty() {
        EMPTY_FACE_LABEL.to_string()
    } else {
        vertices.iter().join("-")
    }
}

/// Inverse of [`label_of`]. The result is sorted and deduplicated.
pub fn parse_label(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == EMPTY_FACE_LABEL {
        return Ok(Vec::new());
    }
    let set: BTreeSet<usize> = s
        .split('-')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad face id {s:?}")))
        })
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

pub(crate) fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

pub(crate) fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Index of a face inside its [`FaceLattice`]. Faces are sorted by
/// `(dim, vertex set)`, so ids order canonically.
pub type FaceId = usize;

/// The graded lattice of all faces, from the empty face to the polytope.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: isize,
    vertex_count: usize,
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, FaceId>,
    // grade_start[k + 1] is the first id of dimension k; one extra sentinel.
    grade_start: Vec<usize>,
    up: Vec<Vec<FaceId>>,
    down: Vec<Vec<FaceId>>,
}

impl FaceLattice {
    /// Builds the lattice from a complete list of faces. Covering relations
    /// are computed by subset tests between consecutive grades.
    pub fn from_faces(dim: isize, vertex_count: usize, mut faces: Vec<Face>) -> Result<Self> {
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces.dedup();
        let mut index = HashMap::with_capacity(faces.len());
        for (id, f) in faces.iter().enumerate() {
            if f.dim < -1 || f.dim > dim {
                return Err(Error::Internal(format!(
                    "face {} has dimension {}",
                    f, f.dim
                )));
            }
            if index.insert(f.vertices.clone(), id).is_some() {
                return Err(Error::Internal(format!("face {} listed twice", f)));
            }
        }
        let grades = (dim + 2) as usize;
        let mut grade_start = vec![0; grades + 1];
        for f in &faces {
            grade_start[(f.dim + 2) as usize] += 1;
        }
        for g in 1..=grades {
            grade_start[g] += grade_start[g - 1];
        }
        let mut up = vec![Vec::new(); faces.len()];
        let mut down = vec![Vec::new(); faces.len()];
        for g in 0..grades.saturating_sub(1) {
            for child in grade_start[g]..grade_start[g + 1] {
                for parent in grade_start[g + 1]..grade_start[g + 2] {
                    if faces[child].is_subface_of(&faces[parent]) {
                        up[child].push(parent);
                        down[parent].push(child);
                    }
                }
            }
        }
        Ok(Self {
            dim,
            vertex_count,
            faces,
            index,
            grade_start,
            up,
            down,
        })
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn find(&self, vertices: &[usize]) -> Option<FaceId> {
        self.index.get(vertices).copied()
    }

    /// Looks a face up by its canonical label.
    pub fn find_label(&self, label: &str) -> Result<FaceId> {
        let vertices = parse_label(label)?;
        self.find(&vertices)
            .ok_or_else(|| Error::UnknownFace(label.to_string()))
    }

    pub fn label(&self, id: FaceId) -> String {
        self.faces[id].label()
    }

    pub fn empty_face(&self) -> FaceId {
        0
    }

    pub fn full_face(&self) -> FaceId {
        self.faces.len() - 1
    }

    /// Ids of the `k`-faces, `-1 <= k <= dim`.
    pub fn faces_of_dim(&self, k: isize) -> Result<std::ops::Range<FaceId>> {
        if k < -1 || k > self.dim {
            return Err(Error::DimensionOutOfRange {
                k,
                min: -1,
                max: self.dim,
            });
        }
        let g = (k + 1) as usize;
        Ok(self.grade_start[g]..self.grade_start[g + 1])
    }

    /// Face counts for dimensions `0..dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim)
            .map(|k| self.faces_of_dim(k).map_or(0, |r| r.len()))
            .collect()
    }

    /// Faces covering `id` (one dimension up).
    pub fn parents(&self, id: FaceId) -> &[FaceId] {
        &self.up[id]
    }

    /// Faces covered by `id` (one dimension down).
    pub fn children(&self, id: FaceId) -> &[FaceId] {
        &self.down[id]
    }

    /// Covering pairs `(child, parent)`.
    pub fn covering_pairs(&self) -> impl Iterator<Item = (FaceId, FaceId)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(c, ps)| ps.iter().map(move |&p| (c, p)))
    }

    pub fn contains(&self, a: FaceId, b: FaceId) -> bool {
        self.faces[a].is_subface_of(&self.faces[b])
    }

    /// The lattice meet, which for polytopes is plain intersection.
    pub fn meet(&self, a: FaceId, b: FaceId) -> Option<FaceId> {
        self.find(&sorted_intersection(
            &self.faces[a].vertices,
            &self.faces[b].vertices,
        ))
    }

    /// Inclusion-minimal face containing both `a` and `b`.
    pub fn join(&self, a: FaceId, b: FaceId) -> FaceId {
        let union: Vec<usize> = self.faces[a]
            .vertices
            .iter()
            .chain(&self.faces[b].vertices)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        self.faces
            .iter()
            .position(|f| is_sorted_subset(&union, &f.vertices))
            .unwrap_or_else(|| self.full_face())
    }

    /// Facet ids, i.e. the faces of dimension `dim - 1`.
    pub fn facets(&self) -> std::ops::Range<FaceId> {
        self.faces_of_dim(self.dim - 1).unwrap_or(0..0)
    }
}

/// All facets with outward supporting hyperplanes (`normal · v <= offset`
/// for every vertex). Facets are sorted by vertex set; normals are primitive
/// integer vectors.
pub fn facets(p: &VPolytope) -> Result<Vec<(Face, Hyperplane)>> {
    p.require_full_dimensional()?;
    let d = p.ambient_dim();
    let n = p.len();
    // Each candidate d-subset is tested independently; the sort below makes
    // the merge deterministic.
    let found: Vec<(Vec<usize>, Hyperplane)> = (0..n)
        .combinations(d)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|subset| supporting_hyperplane(p, &subset))
        .collect();
    let mut unique: HashMap<Vec<usize>, Hyperplane> = HashMap::new();
    for (verts, h) in found {
        unique.entry(verts).or_insert(h);
    }
    let mut out: Vec<(Face, Hyperplane)> = unique
        .into_iter()
        .map(|(vertices, h)| {
            (
                Face {
                    vertices,
                    dim: d as isize - 1,
                },
                h,
            )
        })
        .collect();
    out.sort_by(|a, b| a.0.vertices.cmp(&b.0.vertices));
    Ok(out)
}

/// The hyperplane through the affinely independent points `subset`, if all
/// other vertices lie weakly on one side. Returns the full vertex set on it.
fn supporting_hyperplane(p: &VPolytope, subset: &[usize]) -> Option<(Vec<usize>, Hyperplane)> {
    let d = p.ambient_dim();
    let base = p.vertex(subset[0]);
    let rows: Vec<_> = subset[1..]
        .iter()
        .map(|&i| primitive_integer_row((p.vertex(i) - base).coords()))
        .collect();
    let cross = integer_cross(&rows, d);
    if cross.iter().all(Zero::is_zero) {
        return None;
    }
    let mut normal = QVector::new(cross.into_iter().map(Rational::from_integer).collect());
    let mut offset = normal.dot(base);
    let mut pos = false;
    let mut neg = false;
    let mut on = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        let s = normal.dot(v) - &offset;
        if s.is_zero() {
            on.push(i);
        } else if s.is_positive() {
            pos = true;
        } else {
            neg = true;
        }
        if pos && neg {
            return None;
        }
    }
    if pos {
        normal = normal.scale(&Rational::from_integer((-1).into()));
        offset = -offset;
    }
    let h = Hyperplane::new(normal, offset).ok()?.normalized();
    Some((on, h))
}

/// The full face lattice as the intersection closure of facet vertex sets,
/// together with the empty face and the polytope itself.
pub fn face_lattice(p: &VPolytope) -> Result<FaceLattice> {
    let facet_sets: Vec<Vec<usize>> = facets(p)?.into_iter().map(|(f, _)| f.vertices).collect();
    lattice_from_facets(p, &facet_sets)
}

pub(crate) fn lattice_from_facets(p: &VPolytope, facet_sets: &[Vec<usize>]) -> Result<FaceLattice> {
    let all: Vec<usize> = (0..p.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(all.clone());
    seen.insert(Vec::new());
    let mut queue = vec![all];
    while let Some(face) = queue.pop() {
        for facet in facet_sets {
            let meet = sorted_intersection(&face, facet);
            if seen.insert(meet.clone()) {
                queue.push(meet);
            }
        }
    }
    let faces = seen
        .into_iter()
        .map(|vertices| {
            let dim = affine_rank(&p.points(&vertices));
            Face { vertices, dim }
        })
        .collect();
    FaceLattice::from_faces(p.dim(), p.len(), faces)
}

/// A polytope with its face lattice attached.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub geometry: VPolytope,
    pub lattice: FaceLattice,
}

impl Polytope {
    /// Computes the face lattice of a full-dimensional polytope.
    pub fn new(geometry: VPolytope) -> Result<Self> {
        let lattice = face_lattice(&geometry)?;
        Ok(Self { geometry, lattice })
    }

    pub fn dim(&self) -> isize {
        self.lattice.dim()
    }

    pub fn face_points(&self, id: FaceId) -> Vec<QVector> {
        self.geometry.points(&self.lattice.face(id).vertices)
    }

    /// Barycenter of the face's vertices, a canonical relative-interior point.
    pub fn face_barycenter(&self, id: FaceId) -> Result<QVector> {
        barycenter(&self.face_points(id))
    }
}

/// The grade-`k` slice of the lattice.
pub fn faces_of_dim(l: &FaceLattice, k: isize) -> Result<Vec<&Face>> {
    Ok(l.faces_of_dim(k)?.map(|id| l.face(id)).collect())
}

/// Lattice join of two faces.
pub fn smallest_face_containing<'a>(l: &'a FaceLattice, a: &Face, b: &Face) -> Result<&'a Face> {
    let ia = l
        .find(&a.vertices)
        .ok_or_else(|| Error::UnknownFace(a.label()))?;
    let ib = l
        .find(&b.vertices)
        .ok_or_else(|| Error::UnknownFace(b.label()))?;
    Ok(l.face(l.join(ia, ib)))
}

/// Polar dual after moving the vertex barycenter to the origin. Dual vertex
/// `i` is the polar of facet `i` in [`facets`] order.
pub fn polar_dual(p: &VPolytope) -> Result<VPolytope> {
    p.require_full_dimensional()?;
    let center = barycenter(p.vertices())?;
    let centered = p.translated(&center);
    let vertices = facets(&centered)?
        .into_iter()
        .map(|(_, h)| {
            // The origin is interior, so every offset is positive.
            let inv = Rational::from_integer(1.into()) / h.offset();
            h.normal().scale(&inv)
        })
        .collect();
    VPolytope::new_unchecked(vertices)
}

/// Maps each primal face to the set of facets containing it. For a polar
/// pair this is the face of the dual with those vertices.
pub fn facet_incidence(l: &FaceLattice, id: FaceId) -> Vec<usize> {
    let face = l.face(id);
    l.facets()
        .enumerate()
        .filter(|&(_, f)| face.is_subface_of(l.face(f)))
        .map(|(i, _)| i)
        .collect()
}

/// Checks that `F ↦ {facets containing F}` is an inclusion-reversing
/// bijection from `primal` onto `dual` taking `k`-faces to
/// `(d - k - 1)`-faces.
pub fn is_anti_isomorphic(primal: &FaceLattice, dual: &FaceLattice) -> bool {
    let d = primal.dim();
    if dual.dim() != d || primal.len() != dual.len() {
        return false;
    }
    if primal.facets().len() != dual.vertex_count() {
        return false;
    }
    let mut image = Vec::with_capacity(primal.len());
    let mut hit = vec![false; dual.len()];
    for id in 0..primal.len() {
        let Some(target) = dual.find(&facet_incidence(primal, id)) else {
            return false;
        };
        if dual.face(target).dim != d - 1 - primal.face(id).dim || hit[target] {
            return false;
        }
        hit[target] = true;
        image.push(target);
    }
    (0..primal.len()).all(|a| {
        (0..primal.len()).all(|b| primal.contains(a, b) == dual.contains(image[b], image[a]))
    })
}

/// Euler–Poincaré: `Σ_{k<d} (-1)^k f_k = 1 - (-1)^d`.
pub fn satisfies_euler(l: &FaceLattice) -> bool {
    let d = l.dim();
    let lhs: i64 = l
        .f_vector()
        .iter()
        .enumerate()
        .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum();
    let rhs = if d % 2 == 0 { 0 } else { 2 };
    lhs == rhs
}
