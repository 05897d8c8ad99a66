//! Independent oracles and instance builders shared by the integration tests
//! and the acceptance harness. Nothing here calls into the code paths it is
//! used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use facelab::exact::{int, QVector, Rational};
use facelab::generators::{generate, GeneratorSpec};
use facelab::section::SectionMap;
use facelab::{FaceId, FaceLattice, Hyperplane, Polytope};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn build(spec: &GeneratorSpec) -> Polytope {
    Polytope::new(generate(spec).unwrap()).unwrap()
}

/// Facets of the cyclic polytope `C(n, d)` on parameters `1..=n`, as
/// 0-based vertex index sets, by Gale's evenness condition: a `d`-subset is
/// a facet iff every two non-members are separated by an even number of
/// members.
pub fn gale_facets(n: usize, d: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != d {
            continue;
        }
        let inside = |i: usize| mask & (1 << i) != 0;
        let outside: Vec<usize> = (0..n).filter(|&i| !inside(i)).collect();
        let even = outside
            .windows(2)
            .all(|w| (w[0] + 1..w[1]).filter(|&j| inside(j)).count() % 2 == 0);
        if even {
            out.insert((0..n).filter(|&i| inside(i)).collect());
        }
    }
    out
}

/// Rank of a rational matrix by textbook Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in 0..m {
            if i != r && !rows[i][col].is_zero() {
                let factor = &rows[i][col] / &pivot;
                for j in col..n {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rational_affine_rank(points: &[QVector]) -> isize {
    if points.is_empty() {
        return -1;
    }
    let rows = points[1..]
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .zip(points[0].coords())
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    rational_rank(rows) as isize
}

/// A random hyperplane that separates the vertices of `q` without touching
/// any: a random integer normal, offset halfway between two consecutive
/// distinct vertex values.
pub fn random_generic_plane(q: &Polytope, rng: &mut ChaCha8Rng) -> Hyperplane {
    let d = q.geometry.ambient_dim();
    loop {
        let normal = QVector::from_ints(&(0..d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
        if normal.is_zero() {
            continue;
        }
        let mut values: Vec<Rational> = q
            .geometry
            .vertices()
            .iter()
            .map(|v| normal.dot(v))
            .collect();
        values.sort();
        values.dedup();
        if values.len() < 2 {
            continue;
        }
        let i = rng.gen_range(0..values.len() - 1);
        let offset = (&values[i] + &values[i + 1]) / int(2);
        return Hyperplane::new(normal, offset).unwrap();
    }
}

/// Exhaustive poset-isomorphism battery for a section. Returns a description
/// of the first violation.
pub fn section_battery(s: &SectionMap<'_>) -> Result<(), String> {
    let base = &s.base().lattice;
    let slice = &s.sliced().lattice;
    let plane = s.plane();

    // Domain: base faces with vertices strictly on both sides.
    let side = |v: usize| plane.side(s.base().geometry.vertex(v)).unwrap();
    let meets = |f: FaceId| {
        let sides: BTreeSet<_> = base.face(f).vertices.iter().map(|&v| side(v)).collect();
        sides.len() == 2
    };
    let domain: Vec<FaceId> = (0..base.len()).filter(|&f| meets(f)).collect();
    let got: Vec<FaceId> = s.domain().collect();
    if domain != got {
        return Err(format!("domain mismatch: expected {domain:?}, got {got:?}"));
    }
    for v in s.base().geometry.vertices() {
        if plane.side(v).unwrap().is_eq() {
            return Err("a vertex lies on the plane".into());
        }
    }

    let image: Vec<FaceId> = domain.iter().map(|&f| s.phi(f).unwrap()).collect();
    let distinct: BTreeSet<_> = image.iter().copied().collect();
    if distinct.len() != image.len() {
        return Err("phi is not injective".into());
    }
    let nonempty: BTreeSet<FaceId> = (0..slice.len())
        .filter(|&f| slice.face(f).dim >= 0)
        .collect();
    if distinct != nonempty {
        return Err("phi is not onto the nonempty slice faces".into());
    }
    for (&f, &x) in domain.iter().zip(&image) {
        if slice.face(x).dim != base.face(f).dim - 1 {
            return Err(format!("dimension shift fails at {}", base.label(f)));
        }
        // Geometric dimension of the slice face agrees with the grading.
        let pts: Vec<QVector> = slice
            .face(x)
            .vertices
            .iter()
            .map(|&v| s.sliced().geometry.vertex(v).clone())
            .collect();
        if rational_affine_rank(&pts) != slice.face(x).dim {
            return Err(format!(
                "slice face {} has the wrong affine rank",
                slice.label(x)
            ));
        }
        for p in &pts {
            if !plane.side(p).unwrap().is_eq() {
                return Err("slice vertex off the plane".into());
            }
        }
        if s.lift(x) != Ok(f) {
            return Err("lift is not the inverse of phi".into());
        }
    }
    for (i, &a) in domain.iter().enumerate() {
        for (j, &b) in domain.iter().enumerate() {
            let up = is_subset(&base.face(a).vertices, &base.face(b).vertices);
            let down = is_subset(
                &slice.face(image[i]).vertices,
                &slice.face(image[j]).vertices,
            );
            if up != down {
                return Err(format!(
                    "inclusion not preserved between {} and {}",
                    base.label(a),
                    base.label(b)
                ));
            }
        }
    }
    if !euler_holds(slice) {
        return Err("slice violates the Euler relation".into());
    }
    Ok(())
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let set: BTreeSet<_> = b.iter().collect();
    a.iter().all(|x| set.contains(x))
}

pub fn euler_holds(l: &FaceLattice) -> bool {
    let d = l.dim();
    let mut sum = 0i64;
    for f in l.faces() {
        if f.dim >= 0 && f.dim < d {
            sum += if f.dim % 2 == 0 { 1 } else { -1 };
        }
    }
    sum == 1 - (-1i64).pow(d as u32)
}

/// Does a ridge path exist? Plain reachability over `k`-faces, adjacency
/// recomputed from vertex sets: two `k`-faces are linked when their shared
/// vertices form a `(k-1)`-face not inside any blocked face.
pub fn ridge_path_exists(
    l: &FaceLattice,
    k: isize,
    blocked: &[FaceId],
    f: FaceId,
    g: FaceId,
) -> bool {
    let nodes: Vec<FaceId> = (0..l.len())
        .filter(|&x| l.face(x).dim == k && !blocked.contains(&x))
        .collect();
    let by_vertices: HashMap<&Vec<usize>, isize> = l
        .faces()
        .iter()
        .map(|face| (&face.vertices, face.dim))
        .collect();
    let linked = |a: FaceId, b: FaceId| {
        let shared: Vec<usize> = l
            .face(a)
            .vertices
            .iter()
            .filter(|v| l.face(b).vertices.contains(v))
            .copied()
            .collect();
        by_vertices.get(&shared) == Some(&(k - 1))
            && !blocked
                .iter()
                .any(|&x| is_subset(&shared, &l.face(x).vertices))
    };
    let mut seen = BTreeSet::from([f]);
    let mut queue = VecDeque::from([f]);
    while let Some(u) = queue.pop_front() {
        if u == g {
            return true;
        }
        for &w in &nodes {
            if !seen.contains(&w) && linked(u, w) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    false
}

/// Brute-force anti-isomorphism: map each primal face to the facets that
/// contain it and compare with the dual lattice by vertex sets.
pub fn dual_reverses(primal: &FaceLattice, dual: &FaceLattice) -> bool {
    let facets: Vec<&Vec<usize>> = primal
        .faces()
        .iter()
        .filter(|f| f.dim == primal.dim() - 1)
        .map(|f| &f.vertices)
        .collect();
    let image = |verts: &Vec<usize>| -> Vec<usize> {
        (0..facets.len())
            .filter(|&i| is_subset(verts, facets[i]))
            .collect()
    };
    let dual_sets: BTreeSet<&Vec<usize>> = dual.faces().iter().map(|f| &f.vertices).collect();
    let mut seen = BTreeSet::new();
    for a in primal.faces() {
        let ia = image(&a.vertices);
        let Some(target) = dual.faces().iter().find(|f| f.vertices == ia) else {
            return false;
        };
        if target.dim != primal.dim() - 1 - a.dim {
            return false;
        }
        seen.insert(ia.clone());
        for b in primal.faces() {
            let ib = image(&b.vertices);
            if is_subset(&a.vertices, &b.vertices) != is_subset(&ib, &ia) {
                return false;
            }
        }
    }
    seen.len() == dual_sets.len()
}

/// Every family at desk scale, with the dimensions used by the suites.
pub fn family_pool() -> Vec<(String, GeneratorSpec)> {
    let mut pool = Vec::new();
    for d in 2..=4 {
        pool.push((format!("simplex({d})"), GeneratorSpec::simplex(d)));
        pool.push((format!("cube({d})"), GeneratorSpec::cube(d)));
        pool.push((format!("cross({d})"), GeneratorSpec::cross(d)));
    }
    pool.push(("cyclic(6,3)".into(), GeneratorSpec::cyclic(6, 3)));
    pool.push(("cyclic(7,4)".into(), GeneratorSpec::cyclic(7, 4)));
    pool.push(("random(8,3,s1)".into(), GeneratorSpec::random(8, 3, 1, 10)));
    pool.push(("random(9,3,s2)".into(), GeneratorSpec::random(9, 3, 2, 10)));
    pool.push(("random(7,4,s3)".into(), GeneratorSpec::random(7, 4, 3, 8)));
    pool.push((
        "pyramid(square)".into(),
        GeneratorSpec::pyramid(GeneratorSpec::cube(2)),
    ));
    pool.push((
        "prism(triangle)".into(),
        GeneratorSpec::prism(GeneratorSpec::simplex(2)),
    ));
    pool.push((
        "pyramid(octahedron)".into(),
        GeneratorSpec::pyramid(GeneratorSpec::cross(3)),
    ));
    pool.push((
        "prism(cube3)".into(),
        GeneratorSpec::prism(GeneratorSpec::cube(3)),
    ));
    pool
}

/// Draws `count` distinct `k`-faces.
pub fn pick_faces(
    l: &FaceLattice,
    k: isize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<FaceId>> {
    let all: Vec<FaceId> = l.faces_of_dim(k).ok()?.collect();
    if all.len() < count {
        return None;
    }
    Some(all.choose_multiple(rng, count).copied().collect())
}
