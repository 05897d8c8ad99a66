//! Exact rational scalars, points, hyperplanes, and the small amount of
//! linear algebra the rest of the crate needs.
//!
//! Everything here is exact. Ranks and determinants go through fraction-free
//! (Bareiss) elimination on integer matrices obtained by clearing
//! denominators row by row; convex-hull membership is decided by a phase-1
//! simplex over rationals with Bland's rule.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub use num_rational::BigRational as Rational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let value = Rational::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(value)
}

/// Renders as `p` when integral, otherwise `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point (or direction) in `Q^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|c| c * s).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: Rational) -> QVector {
        let mut coords = self.0.clone();
        coords.push(last);
        QVector(coords)
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(QVector)
            .map_err(serde::de::Error::custom)
    }
}

/// The hyperplane `{x : normal · x = offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: QVector,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: QVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Sign of `normal · p - offset`.
    pub fn side(&self, p: &QVector) -> Result<Ordering> {
        p.check_dim(self.dim())?;
        Ok(self.normal.dot(p).cmp(&self.offset))
    }

    /// Rescales to a primitive integer normal with the same orientation.
    pub fn normalized(&self) -> Hyperplane {
        let mut coords = self.normal.coords().to_vec();
        coords.push(self.offset.clone());
        let ints = primitive_integer_row(&coords);
        let offset = Rational::from_integer(ints[ints.len() - 1].clone());
        let normal = QVector(
            ints[..ints.len() - 1]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        );
        Hyperplane { normal, offset }
    }

    /// Parses `a1,a2,...,ad;c`.
    pub fn parse(s: &str) -> Result<Self> {
        let (lhs, rhs) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("hyperplane {s:?} must look like a1,...,ad;c")))?;
        let normal = lhs
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Hyperplane::new(QVector(normal), parse_rational(rhs)?)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.0.iter().map(format_rational).collect();
        write!(f, "{};{}", parts.join(","), format_rational(&self.offset))
    }
}

/// Sign of `h.normal · p - h.offset`.
pub fn side(h: &Hyperplane, p: &QVector) -> Result<Ordering> {
    h.side(p)
}

/// Dimension of the affine hull; `-1` for the empty list.
pub fn affine_rank(points: &[QVector]) -> isize {
    let Some((first, rest)) = points.split_first() else {
        return -1;
    };
    let rows: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|p| primitive_integer_row((p - first).coords()))
        .collect();
    integer_rank(rows) as isize
}

pub fn barycenter(points: &[QVector]) -> Result<QVector> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyPointSet)?;
    let mut sum = first.clone();
    for p in rest {
        p.check_dim(first.dim())?;
        sum = &sum + p;
    }
    Ok(sum.scale(&ratio(1, points.len() as i64)))
}

/// The point where segment `[p, q]` crosses `h`; the endpoints must lie
/// strictly on opposite sides.
pub fn segment_hyperplane_intersection(
    p: &QVector,
    q: &QVector,
    h: &Hyperplane,
) -> Result<QVector> {
    let sp = h.side(p)?;
    let sq = h.side(q)?;
    if sp == Ordering::Equal || sq == Ordering::Equal || sp == sq {
        return Err(Error::NoCrossing);
    }
    let dir = q - p;
    let t = (h.offset() - h.normal().dot(p)) / h.normal().dot(&dir);
    Ok(p + &dir.scale(&t))
}

/// Exact convex-hull membership: is there `λ ≥ 0` with `Σλ = 1` and
/// `Σ λ_i points_i = p`?
pub fn point_in_hull(points: &[QVector], p: &QVector) -> Result<bool> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let d = first.dim();
    for q in points {
        q.check_dim(d)?;
    }
    p.check_dim(d)?;

    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| points.iter().map(|q| q.coords()[i].clone()).collect())
        .collect();
    let mut b: Vec<Rational> = p.coords().to_vec();
    a.push(vec![Rational::one(); points.len()]);
    b.push(Rational::one());
    Ok(feasible_nonnegative(a, b))
}

pub(crate) fn feasible_nonnegative(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> bool {
    solve_nonnegative(a, b).is_some()
}

/// Phase-1 simplex: a basic solution of `A x = b, x ≥ 0`, if one exists.
///
/// Bland's rule (smallest entering index, smallest leaving basic index)
/// guarantees termination without cycling.
pub(crate) fn solve_nonnegative(
    mut a: Vec<Vec<Rational>>,
    mut b: Vec<Rational>,
) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        if rhs.is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
            *rhs = -rhs.clone();
        }
    }
    // Tableau columns: n structural, then m artificial.
    let width = n + m;
    let mut t: Vec<Vec<Rational>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..m).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    // Reduced costs for minimizing the artificial sum.
    let mut cost: Vec<Rational> = (0..width)
        .map(|j| {
            if j < n {
                -t.iter().fold(Rational::zero(), |acc, row| acc + &row[j])
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut value: Rational = -b.iter().fold(Rational::zero(), |acc, x| acc + x);

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let r = &b[i] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
        }
        // Phase-1 objective is bounded below by zero, so a pivot row exists.
        let (row, _) = leave.expect("phase-1 objective is bounded");
        let pivot = t[row][enter].clone();
        t[row].iter_mut().for_each(|x| *x = &*x / &pivot);
        b[row] = &b[row] / &pivot;
        let pivot_row = t[row].clone();
        let pivot_rhs = b[row].clone();
        for i in 0..m {
            if i != row && !t[i][enter].is_zero() {
                let factor = t[i][enter].clone();
                for j in 0..width {
                    let delta = &factor * &pivot_row[j];
                    t[i][j] -= delta;
                }
                b[i] -= &factor * &pivot_rhs;
            }
        }
        let factor = cost[enter].clone();
        for j in 0..width {
            let delta = &factor * &pivot_row[j];
            cost[j] -= delta;
        }
        value -= &factor * &pivot_rhs;
        basis[row] = enter;
    }
    if !value.is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = b[row].clone();
        }
    }
    Some(x)
}

/// Multiplies a rational row by the lcm of its denominators and divides by
/// the gcd of the result. Direction (and sign) is preserved.
pub(crate) fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() || gcd.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &gcd).collect()
    }
}

/// Rank by fraction-free Gaussian elimination. Every division is exact.
pub(crate) fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in col + 1..n {
                let v = (&a[r][col] * &a[i][j] - &a[i][col] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub(crate) fn integer_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Generalized cross product: for `d-1` rows in `Z^d`, the vector of signed
/// maximal minors. It is orthogonal to every row and vanishes exactly when
/// the rows are linearly dependent.
pub(crate) fn integer_cross(rows: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    debug_assert_eq!(rows.len() + 1, d);
    (0..d)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = integer_det(minor);
            if skip % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    fn plane_x1_half(d: usize) -> Hyperplane {
        Hyperplane::new(QVector::unit(d, 0), ratio(1, 2)).unwrap()
    }

    #[test]
    fn side_examples() {
        let h = plane_x1_half(2);
        assert_eq!(h.side(&q(&[0, 0])).unwrap(), Ordering::Less);
        let on = QVector::new(vec![ratio(1, 2), int(7)]);
        assert_eq!(h.side(&on).unwrap(), Ordering::Equal);
        assert_eq!(h.side(&q(&[1, 1])).unwrap(), Ordering::Greater);
        assert!(matches!(
            h.side(&q(&[1, 1, 1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(
            Hyperplane::new(QVector::zeros(3), int(1)),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn affine_rank_examples() {
        assert_eq!(affine_rank(&[]), -1);
        assert_eq!(affine_rank(&[q(&[0, 0])]), 0);
        let square = [q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])];
        assert_eq!(affine_rank(&square), 2);
        let moment: Vec<QVector> = (1..=5).map(|t| q(&[t, t * t, t * t * t])).collect();
        assert_eq!(affine_rank(&moment), 3);
        let collinear = [q(&[0, 0, 0]), q(&[1, 2, 3]), q(&[2, 4, 6])];
        assert_eq!(affine_rank(&collinear), 1);
    }

    #[test]
    fn barycenter_examples() {
        assert_eq!(
            barycenter(&[q(&[0, 0]), q(&[1, 0])]).unwrap(),
            QVector::new(vec![ratio(1, 2), int(0)])
        );
        let square = [q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])];
        assert_eq!(
            barycenter(&square).unwrap(),
            QVector::new(vec![ratio(1, 2), ratio(1, 2)])
        );
        assert_eq!(
            barycenter(&[q(&[0, 0]), q(&[0, 1]), q(&[3, 0])]).unwrap(),
            QVector::new(vec![int(1), ratio(1, 3)])
        );
        assert_eq!(barycenter(&[]), Err(Error::EmptyPointSet));
    }

    #[test]
    fn segment_intersection_examples() {
        let h = plane_x1_half(2);
        assert_eq!(
            segment_hyperplane_intersection(&q(&[0, 0]), &q(&[1, 0]), &h).unwrap(),
            QVector::new(vec![ratio(1, 2), int(0)])
        );
        let diag = Hyperplane::new(q(&[1, 1, 1]), int(1)).unwrap();
        assert_eq!(
            segment_hyperplane_intersection(&q(&[0, 0, 0]), &q(&[1, 1, 1]), &diag).unwrap(),
            QVector::new(vec![ratio(1, 3); 3])
        );
        // x1 = 1 on the segment (3s, 2 - 2s): s = 1/3, so x2 = 4/3.
        let x1 = Hyperplane::new(QVector::unit(2, 0), int(1)).unwrap();
        assert_eq!(
            segment_hyperplane_intersection(&q(&[0, 2]), &q(&[3, 0]), &x1).unwrap(),
            QVector::new(vec![int(1), ratio(4, 3)])
        );
        assert_eq!(
            segment_hyperplane_intersection(&q(&[0, 0]), &q(&[0, 1]), &h),
            Err(Error::NoCrossing)
        );
    }

    #[test]
    fn point_in_hull_examples() {
        let square = [q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])];
        let center = QVector::new(vec![ratio(1, 2), ratio(1, 2)]);
        assert!(point_in_hull(&square, &center).unwrap());
        assert!(!point_in_hull(&square, &q(&[2, 0])).unwrap());
        // λ = (1/2, 1/4, 1/4) reproduces (1, 1).
        let tri = [q(&[0, 0]), q(&[4, 0]), q(&[0, 4])];
        assert!(point_in_hull(&tri, &q(&[1, 1])).unwrap());
        assert!(point_in_hull(&tri, &q(&[4, 0])).unwrap());
        assert!(!point_in_hull(&tri, &q(&[3, 3])).unwrap());
        assert!(point_in_hull(&square, &q(&[1])).is_err());
    }

    #[test]
    fn rational_text_syntax() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn hyperplane_text_syntax() {
        let h = Hyperplane::parse("1,0,1/2;3/4").unwrap();
        assert_eq!(h.to_string(), "1,0,1/2;3/4");
        assert_eq!(h.normalized().to_string(), "4,0,2;3");
        assert!(Hyperplane::parse("0,0;1").is_err());
        assert!(Hyperplane::parse("1,2").is_err());
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(5), BigInt::from(6)],
        ];
        let n = integer_cross(&rows, 3);
        assert_eq!(n, vec![BigInt::from(-3), BigInt::from(6), BigInt::from(-3)]);
        assert_eq!(integer_cross(&[], 1), vec![BigInt::one()]);
    }
}
