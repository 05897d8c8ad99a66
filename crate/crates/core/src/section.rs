//! Hyperplane sections `Q ∩ H` for planes that avoid every vertex of `Q`.
//!
//! The slice is built combinatorially: its vertices are the crossing points
//! of the edges of `Q` that `H` separates, and the slice of a face `F` is the
//! set of crossed edges lying in `F`. The face map `F ↦ F ∩ H` is therefore
//! explicit, and [`SectionMap::lift`] inverts it.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{segment_hyperplane_intersection, Hyperplane, QVector};
use crate::polytope::{is_sorted_subset, Face, FaceId, FaceLattice, Polytope, VPolytope};

/// True iff the vertices of `f` lie strictly on both sides of `h`.
///
/// Fails if any vertex of `p` is on `h`.
pub fn cuts_face(h: &Hyperplane, f: &Face, p: &VPolytope) -> Result<bool> {
    let sides = vertex_sides(h, p)?;
    Ok(straddles(&sides, &f.vertices))
}

fn vertex_sides(h: &Hyperplane, p: &VPolytope) -> Result<Vec<Ordering>> {
    p.vertices()
        .iter()
        .enumerate()
        .map(|(index, v)| match h.side(v)? {
            Ordering::Equal => Err(Error::VertexOnHyperplane { index }),
            s => Ok(s),
        })
        .collect()
}

fn straddles(sides: &[Ordering], vertices: &[usize]) -> bool {
    let mut below = false;
    let mut above = false;
    for &v in vertices {
        match sides[v] {
            Ordering::Less => below = true,
            _ => above = true,
        }
    }
    below && above
}

/// A section `Q ∩ H` together with the face correspondence.
#[derive(Clone, Debug)]
pub struct SectionMap<'a> {
    base: &'a Polytope,
    plane: Hyperplane,
    sliced: Polytope,
    // Slice vertex i is the crossing point on base edge crossed_edges[i].
    crossed_edges: Vec<FaceId>,
    phi: Vec<Option<FaceId>>,
    phi_inverse: Vec<Option<FaceId>>,
}

/// Slices `q` by `h`.
pub fn section<'a>(q: &'a Polytope, h: &Hyperplane) -> Result<SectionMap<'a>> {
    let geometry = &q.geometry;
    let lattice = &q.lattice;
    if h.dim() != geometry.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: geometry.ambient_dim(),
            found: h.dim(),
        });
    }
    let sides = vertex_sides(h, geometry)?;
    if sides.iter().all(|s| *s == sides[0]) {
        return Err(Error::HyperplaneMissesInterior);
    }
    if lattice.dim() < 1 {
        return Err(Error::HyperplaneMissesInterior);
    }

    let mut crossed_edges = Vec::new();
    let mut slice_vertices = Vec::new();
    for e in lattice.faces_of_dim(1)? {
        let ends = &lattice.face(e).vertices;
        if sides[ends[0]] != sides[ends[1]] {
            crossed_edges.push(e);
            slice_vertices.push(segment_hyperplane_intersection(
                geometry.vertex(ends[0]),
                geometry.vertex(ends[1]),
                h,
            )?);
        }
    }

    let mut cut = Vec::new();
    let mut faces = vec![Face {
        vertices: Vec::new(),
        dim: -1,
    }];
    for (id, face) in lattice.faces().iter().enumerate() {
        if face.dim >= 1 && straddles(&sides, &face.vertices) {
            let image: Vec<usize> = crossed_edges
                .iter()
                .enumerate()
                .filter(|&(_, &e)| is_sorted_subset(&lattice.face(e).vertices, &face.vertices))
                .map(|(i, _)| i)
                .collect();
            cut.push((id, image.clone()));
            faces.push(Face {
                vertices: image,
                dim: face.dim - 1,
            });
        }
    }

    let sliced_geometry = VPolytope::new_unchecked(slice_vertices)?;
    if sliced_geometry.dim() != lattice.dim() - 1 {
        return Err(Error::Internal(format!(
            "slice has dimension {}, expected {}",
            sliced_geometry.dim(),
            lattice.dim() - 1
        )));
    }
    let sliced_lattice = FaceLattice::from_faces(lattice.dim() - 1, crossed_edges.len(), faces)?;
    if sliced_lattice.len() != cut.len() + 1 {
        return Err(Error::Internal("two faces have the same section".into()));
    }

    let mut phi = vec![None; lattice.len()];
    let mut phi_inverse = vec![None; sliced_lattice.len()];
    for (id, image) in cut {
        let target = sliced_lattice
            .find(&image)
            .ok_or_else(|| Error::Internal("section face missing from slice lattice".into()))?;
        phi[id] = Some(target);
        phi_inverse[target] = Some(id);
    }

    Ok(SectionMap {
        base: q,
        plane: h.clone(),
        sliced: Polytope {
            geometry: sliced_geometry,
            lattice: sliced_lattice,
        },
        crossed_edges,
        phi,
        phi_inverse,
    })
}

impl<'a> SectionMap<'a> {
    pub fn base(&self) -> &'a Polytope {
        self.base
    }

    pub fn plane(&self) -> &Hyperplane {
        &self.plane
    }

    pub fn sliced(&self) -> &Polytope {
        &self.sliced
    }

    /// Base edge through which slice vertex `i` was produced.
    pub fn crossed_edge(&self, i: usize) -> FaceId {
        self.crossed_edges[i]
    }

    pub fn crossed_edges(&self) -> &[FaceId] {
        &self.crossed_edges
    }

    /// `F ↦ F ∩ H`, or `None` when `H` misses `F`.
    pub fn phi(&self, base_face: FaceId) -> Option<FaceId> {
        self.phi.get(base_face).copied().flatten()
    }

    /// Base faces met by the plane, in id order.
    pub fn domain(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.phi
            .iter()
            .enumerate()
            .filter_map(|(id, t)| t.map(|_| id))
    }

    /// The unique base face whose section is `slice_face`.
    pub fn lift(&self, slice_face: FaceId) -> Result<FaceId> {
        self.phi_inverse
            .get(slice_face)
            .copied()
            .flatten()
            .ok_or_else(|| Error::UnknownFace(format!("slice face #{slice_face}")))
    }

    pub fn sliced_point(&self, i: usize) -> &QVector {
        self.sliced.geometry.vertex(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::generators::{generate, GeneratorSpec};

    fn cube3() -> Polytope {
        Polytope::new(generate(&GeneratorSpec::cube(3)).unwrap()).unwrap()
    }

    fn x1_half() -> Hyperplane {
        Hyperplane::new(QVector::unit(3, 0), ratio(1, 2)).unwrap()
    }

    #[test]
    fn cuts_face_examples() {
        let q = cube3();
        let h = x1_half();
        // Cube vertex i has coordinates (i & 1, (i >> 1) & 1, (i >> 2) & 1).
        let bottom = q.lattice.face(q.lattice.find(&[0, 1, 2, 3]).unwrap());
        assert!(cuts_face(&h, bottom, &q.geometry).unwrap());
        let side = q.lattice.face(q.lattice.find(&[0, 2, 4, 6]).unwrap());
        assert!(!cuts_face(&h, side, &q.geometry).unwrap());
        let through_vertex = Hyperplane::new(QVector::unit(3, 0), int(0)).unwrap();
        assert_eq!(
            cuts_face(&through_vertex, bottom, &q.geometry),
            Err(Error::VertexOnHyperplane { index: 0 })
        );
    }

    #[test]
    fn cube_slice_is_square() {
        let q = cube3();
        let s = section(&q, &x1_half()).unwrap();
        assert_eq!(s.sliced().lattice.f_vector(), vec![4, 4]);
        assert_eq!(s.crossed_edges().len(), 4);
        let cut_facets: Vec<FaceId> = s
            .domain()
            .filter(|&id| q.lattice.face(id).dim == 2)
            .collect();
        assert_eq!(cut_facets.len(), 4);
        for f in cut_facets {
            let image = s.phi(f).unwrap();
            assert_eq!(s.sliced().lattice.face(image).dim, 1);
            assert_eq!(s.lift(image).unwrap(), f);
        }
        for v in 0..4 {
            assert_eq!(s.sliced_point(v).coords()[0], ratio(1, 2));
        }
    }

    #[test]
    fn simplex_corner_slice_is_triangle() {
        let q = Polytope::new(generate(&GeneratorSpec::simplex(3)).unwrap()).unwrap();
        // Separates the origin from e1, e2, e3.
        let h = Hyperplane::new(QVector::from_ints(&[1, 1, 1]), ratio(1, 2)).unwrap();
        let s = section(&q, &h).unwrap();
        assert_eq!(s.sliced().lattice.f_vector(), vec![3, 3]);
    }

    #[test]
    fn section_errors() {
        let q = cube3();
        let through = Hyperplane::new(QVector::unit(3, 0), int(1)).unwrap();
        assert!(matches!(
            section(&q, &through),
            Err(Error::VertexOnHyperplane { .. })
        ));
        let outside = Hyperplane::new(QVector::unit(3, 0), int(5)).unwrap();
        assert_eq!(
            section(&q, &outside).unwrap_err(),
            Error::HyperplaneMissesInterior
        );
        let s = section(&q, &x1_half()).unwrap();
        assert!(s.lift(s.sliced().lattice.empty_face()).is_err());
        assert!(s.lift(1000).is_err());
    }

    #[test]
    fn slices_compose() {
        let q = Polytope::new(generate(&GeneratorSpec::cube(4)).unwrap()).unwrap();
        let h1 = Hyperplane::new(QVector::from_ints(&[2, 1, 0, 0]), ratio(3, 2)).unwrap();
        let s1 = section(&q, &h1).unwrap();
        assert_eq!(s1.sliced().dim(), 3);
        let h2 = Hyperplane::new(QVector::from_ints(&[0, 0, 3, 1]), ratio(3, 2)).unwrap();
        let s2 = section(s1.sliced(), &h2).unwrap();
        assert_eq!(s2.sliced().dim(), 2);
        assert_eq!(s2.sliced().geometry.dim(), 2);
        assert_eq!(s2.sliced().geometry.ambient_dim(), 4);
        for id in s2.domain() {
            let twice = s1.lift(id).unwrap();
            assert_eq!(
                q.lattice.face(twice).dim,
                s1.sliced().lattice.face(id).dim + 1
            );
        }
    }
}
