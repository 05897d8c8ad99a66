//! Deterministic and seeded polytope constructors.
//!
//! Random polytopes draw from `ChaCha8Rng` seeded through
//! `SeedableRng::seed_from_u64`, with coordinates taken by
//! `Rng::gen_range(-bound..=bound)` one axis at a time. Candidates are added
//! one by one; a candidate is skipped if it repeats a point, lies on an
//! affine hyperplane spanned by `d` accepted points, or falls inside the
//! current hull, and accepted points it swallows are dropped.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{affine_rank, barycenter, int, point_in_hull, QVector};
use crate::polytope::VPolytope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Simplex,
    Cube,
    Cross,
    Cyclic,
    Random,
    Pyramid,
    Prism,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Simplex,
        Family::Cube,
        Family::Cross,
        Family::Cyclic,
        Family::Random,
        Family::Pyramid,
        Family::Prism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Cube => "cube",
            Family::Cross => "cross",
            Family::Cyclic => "cyclic",
            Family::Random => "random",
            Family::Pyramid => "pyramid",
            Family::Prism => "prism",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub dim: usize,
    /// Vertex count for `cyclic` and `random`.
    pub n: usize,
    pub seed: u64,
    pub coordinate_bound: i64,
    /// Base polytope for `pyramid` and `prism` (dimension `dim - 1`);
    /// defaults to a simplex.
    pub base: Option<Box<GeneratorSpec>>,
}

impl GeneratorSpec {
    pub fn new(family: Family, dim: usize) -> Self {
        Self {
            family,
            dim,
            n: dim + 1,
            seed: 0,
            coordinate_bound: 10,
            base: None,
        }
    }

    pub fn simplex(dim: usize) -> Self {
        Self::new(Family::Simplex, dim)
    }

    pub fn cube(dim: usize) -> Self {
        Self::new(Family::Cube, dim)
    }

    pub fn cross(dim: usize) -> Self {
        Self::new(Family::Cross, dim)
    }

    pub fn cyclic(n: usize, dim: usize) -> Self {
        Self {
            n,
            ..Self::new(Family::Cyclic, dim)
        }
    }

    pub fn random(n: usize, dim: usize, seed: u64, bound: i64) -> Self {
        Self {
            n,
            seed,
            coordinate_bound: bound,
            ..Self::new(Family::Random, dim)
        }
    }

    pub fn pyramid(base: GeneratorSpec) -> Self {
        Self {
            base: Some(Box::new(base.clone())),
            ..Self::new(Family::Pyramid, base.dim + 1)
        }
    }

    pub fn prism(base: GeneratorSpec) -> Self {
        Self {
            base: Some(Box::new(base.clone())),
            ..Self::new(Family::Prism, base.dim + 1)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim < 1 {
            return Err(Error::Unsatisfiable("dim must be at least 1".into()));
        }
        match self.family {
            Family::Cyclic | Family::Random if self.n < self.dim + 1 => {
                Err(Error::Unsatisfiable(format!(
                    "n = {} needs to be at least dim + 1 = {}",
                    self.n,
                    self.dim + 1
                )))
            }
            Family::Random if self.coordinate_bound < 1 => Err(Error::Unsatisfiable(
                "coordinate bound must be positive".into(),
            )),
            Family::Pyramid | Family::Prism => match &self.base {
                Some(b) if b.dim + 1 != self.dim => Err(Error::Unsatisfiable(format!(
                    "base dimension {} must be dim - 1 = {}",
                    b.dim,
                    self.dim - 1
                ))),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<VPolytope> {
    spec.validate()?;
    let d = spec.dim;
    match spec.family {
        Family::Simplex => VPolytope::new_unchecked(
            std::iter::once(QVector::zeros(d))
                .chain((0..d).map(|i| QVector::unit(d, i)))
                .collect(),
        ),
        Family::Cube => VPolytope::new_unchecked(
            (0..1usize << d)
                .map(|mask| {
                    QVector::from_ints(
                        &(0..d).map(|b| ((mask >> b) & 1) as i64).collect::<Vec<_>>(),
                    )
                })
                .collect(),
        ),
        Family::Cross => VPolytope::new_unchecked(
            (0..d)
                .flat_map(|i| {
                    let e = QVector::unit(d, i);
                    let neg = e.scale(&int(-1));
                    [e, neg]
                })
                .collect(),
        ),
        Family::Cyclic => VPolytope::new_unchecked(
            (1..=spec.n as i64)
                .map(|t| {
                    let mut c = Vec::with_capacity(d);
                    let mut pow = 1i64;
                    for _ in 0..d {
                        pow *= t;
                        c.push(int(pow));
                    }
                    QVector::new(c)
                })
                .collect(),
        ),
        Family::Random => random_polytope(spec.n, d, spec.seed, spec.coordinate_bound),
        Family::Pyramid => pyramid(&generate(&base_spec(spec))?),
        Family::Prism => prism(&generate(&base_spec(spec))?),
    }
}

fn base_spec(spec: &GeneratorSpec) -> GeneratorSpec {
    spec.base
        .as_deref()
        .cloned()
        .unwrap_or_else(|| GeneratorSpec::simplex(spec.dim - 1))
}

/// Cone over `base` with apex one unit above its barycenter.
pub fn pyramid(base: &VPolytope) -> Result<VPolytope> {
    let apex = barycenter(base.vertices())?.extended(int(1));
    VPolytope::new_unchecked(
        base.vertices()
            .iter()
            .map(|v| v.extended(int(0)))
            .chain(std::iter::once(apex))
            .collect(),
    )
}

/// `base × [0, 1]`.
pub fn prism(base: &VPolytope) -> Result<VPolytope> {
    VPolytope::new_unchecked(
        [0, 1]
            .into_iter()
            .flat_map(|h| base.vertices().iter().map(move |v| v.extended(int(h))))
            .collect(),
    )
}

const ATTEMPTS_PER_VERTEX: usize = 2_000;

fn random_polytope(n: usize, d: usize, seed: u64, bound: i64) -> Result<VPolytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<QVector> = Vec::with_capacity(n);
    let mut attempts = 0;
    while points.len() < n {
        attempts += 1;
        if attempts > ATTEMPTS_PER_VERTEX * n {
            return Err(Error::Unsatisfiable(format!(
                "could not place {n} vertices in general position within [-{bound}, {bound}]^{d}"
            )));
        }
        let cand = QVector::from_ints(
            &(0..d)
                .map(|_| rng.gen_range(-bound..=bound))
                .collect::<Vec<_>>(),
        );
        if points.contains(&cand) || !in_general_position(&points, &cand, d) {
            continue;
        }
        if points.len() > d && point_in_hull(&points, &cand)? {
            continue;
        }
        points.push(cand);
        if points.len() > d + 1 {
            points = drop_interior(points)?;
        }
    }
    let poly = VPolytope::new_unchecked(points)?;
    debug_assert!(poly.is_full_dimensional());
    Ok(poly)
}

/// Every `min(len, d)`-subset of `points` together with `cand` is affinely
/// independent.
fn in_general_position(points: &[QVector], cand: &QVector, d: usize) -> bool {
    let size = points.len().min(d);
    points.iter().combinations(size).all(|subset| {
        let mut pts: Vec<QVector> = subset.into_iter().cloned().collect();
        pts.push(cand.clone());
        affine_rank(&pts) == size as isize
    })
}

fn drop_interior(points: Vec<QVector>) -> Result<Vec<QVector>> {
    let mut keep = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        let others: Vec<QVector> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if !point_in_hull(&others, &points[i])? {
            keep.push(points[i].clone());
        }
    }
    Ok(keep)
}
