//! Quadric surfaces, spheres, the second exterior power and line tangency.

use std::fmt;

use crate::linalg::{self, Mat};
use crate::projgeom::{plucker_from_points, FrameMap, PluckerLine, ProjPoint, PAIRS};
use crate::scalar::{proportional, Scalar};
use crate::{Error, Result};

/// Symmetric 4x4 matrix
/// `[[a, b, c, d], [b, e, f, g], [c, f, h, k], [d, g, k, l]]`.
#[derive(Clone, Debug)]
pub struct Quadric {
    m: [[Scalar; 4]; 4],
}

const LABEL_INDEX: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

impl Quadric {
    /// From the entries `a, b, c, d, e, f, g, h, k, l`.
    pub fn from_labels(v: &[Scalar; 10]) -> Result<Self> {
        let mut m: [[Scalar; 4]; 4] = Default::default();
        for (&(i, j), x) in LABEL_INDEX.iter().zip(v) {
            m[i][j] = x.clone();
            m[j][i] = x.clone();
        }
        Self::from_matrix(m)
    }

    pub fn from_label_ints(v: [i64; 10]) -> Result<Self> {
        Self::from_labels(&v.map(Scalar::from_int))
    }

    pub fn from_matrix(m: [[Scalar; 4]; 4]) -> Result<Self> {
        if m.iter().flatten().all(Scalar::is_zero) {
            return Err(Error::InvalidInput("zero quadric".into()));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if m[i][j] != m[j][i] {
                    return Err(Error::InvalidInput("quadric matrix is not symmetric".into()));
                }
            }
        }
        Ok(Quadric { m })
    }

    /// The rank-one quadric `v v^T`, a double plane.
    pub fn outer_square(v: &[Scalar; 4]) -> Result<Self> {
        Self::from_matrix(std::array::from_fn(|i| std::array::from_fn(|j| &v[i] * &v[j])))
    }

    /// `u v^T + v u^T`, the pair of planes `u` and `v`.
    pub fn plane_pair(u: &[Scalar; 4], v: &[Scalar; 4]) -> Result<Self> {
        Self::from_matrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| &(&u[i] * &v[j]) + &(&v[i] * &u[j]))
        }))
    }

    pub fn labels(&self) -> [Scalar; 10] {
        LABEL_INDEX.map(|(i, j)| self.m[i][j].clone())
    }

    pub fn matrix(&self) -> &[[Scalar; 4]; 4] {
        &self.m
    }

    fn as_mat(&self) -> Mat {
        self.m.iter().map(|r| r.to_vec()).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.m[i][j]
    }

    pub fn eval(&self, x: &[Scalar; 4]) -> Scalar {
        let v = linalg::mat_vec(&self.as_mat(), x);
        linalg::dot(&v, x)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Quadric { m: self.m.clone().map(|r| r.map(|e| &e * k)) }
    }

    pub fn is_rational(&self) -> bool {
        self.m.iter().flatten().all(Scalar::is_rational)
    }

    /// Image under a point transformation `x -> M x`: `M^-T Q M^-1`.
    pub fn transform(&self, f: &FrameMap) -> Quadric {
        let inv = f.inverse_matrix();
        let r = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(inv), &self.as_mat()), inv);
        Quadric { m: std::array::from_fn(|i| std::array::from_fn(|j| r[i][j].clone())) }
    }

    /// Kernel of the matrix (the singular locus).
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        linalg::nullspace(&self.as_mat())
    }

    /// Singular line of a rank-2 quadric.
    pub fn singular_line(&self) -> Option<PluckerLine> {
        let k = self.kernel();
        if k.len() != 2 {
            return None;
        }
        let p = ProjPoint(std::array::from_fn(|i| k[0][i].clone()));
        let q = ProjPoint(std::array::from_fn(|i| k[1][i].clone()));
        plucker_from_points(&p, &q).ok()
    }
}

impl PartialEq for Quadric {
    fn eq(&self, other: &Self) -> bool {
        proportional(&self.labels(), &other.labels())
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.labels().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", v.join(", "))
    }
}

/// A sphere with rational center and squared radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sphere {
    pub center: [Scalar; 3],
    pub r2: Scalar,
}

impl Sphere {
    pub fn new(center: [Scalar; 3], r2: Scalar) -> Result<Self> {
        if r2.signum() != Some(1) {
            return Err(Error::InvalidInput(format!("sphere needs r^2 > 0, got {r2}")));
        }
        Ok(Sphere { center, r2 })
    }

    pub fn from_ints(c: [i64; 3], r2: i64) -> Result<Self> {
        Self::new(c.map(Scalar::from_int), Scalar::from_int(r2))
    }

    /// Value of `|x - c|^2 - r^2` at an affine point.
    pub fn power(&self, x: &[Scalar; 3]) -> Scalar {
        let d: Vec<Scalar> = (0..3).map(|i| &x[i] - &self.center[i]).collect();
        linalg::dot(&d, &d) - self.r2.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.r2.is_rational() && self.center.iter().all(Scalar::is_rational)
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.center;
        write!(f, "center ({a}, {b}, {c}), r^2 = {}", self.r2)
    }
}

/// The matrix with corner `|c|^2 - r^2`, first row `(-c1, -c2, -c3)` and an
/// identity block.
pub fn sphere_to_quadric(s: &Sphere) -> Quadric {
    let c = &s.center;
    let corner = linalg::dot(c, c) - s.r2.clone();
    let z = Scalar::zero;
    let o = Scalar::one;
    let m = [
        [corner, -&c[0], -&c[1], -&c[2]],
        [-&c[0], o(), z(), z()],
        [-&c[1], z(), o(), z()],
        [-&c[2], z(), z(), o()],
    ];
    Quadric { m }
}

/// 6x6 matrix of 2x2 minors indexed by the Plücker pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge2Matrix(pub [[Scalar; 6]; 6]);

impl Wedge2Matrix {
    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }

    /// `p^T W q`.
    pub fn bilinear(&self, p: &[Scalar; 6], q: &[Scalar; 6]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, qj) in q.iter().enumerate() {
                if !qj.is_zero() && !self.0[i][j].is_zero() {
                    acc += &(&(pi * &self.0[i][j]) * qj);
                }
            }
        }
        acc
    }
}

pub fn wedge2(q: &Quadric) -> Wedge2Matrix {
    let a = &q.m;
    Wedge2Matrix(std::array::from_fn(|r| {
        std::array::from_fn(|s| {
            let (i1, i2) = PAIRS[r];
            let (j1, j2) = PAIRS[s];
            &(&a[i1][j1] * &a[i2][j2]) - &(&a[i1][j2] * &a[i2][j1])
        })
    }))
}

/// `p^T (∧²Q) p`, zero exactly for tangent lines.
pub fn tangency_value(q: &Quadric, l: &PluckerLine) -> Scalar {
    wedge2(q).bilinear(&l.0, &l.0)
}

pub fn quadric_rank(q: &Quadric) -> usize {
    linalg::rank(&q.as_mat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::ProjPoint;

    fn line(p: [i64; 4], q: [i64; 4]) -> PluckerLine {
        plucker_from_points(&ProjPoint::from_ints(p), &ProjPoint::from_ints(q)).unwrap()
    }

    #[test]
    fn unit_sphere_tangency() {
        let q = sphere_to_quadric(&Sphere::from_ints([0, 0, 0], 1).unwrap());
        assert_eq!(quadric_rank(&q), 4);
        // through (0,1,0) with direction (1,0,0)
        assert!(tangency_value(&q, &line([1, 0, 1, 0], [0, 1, 0, 0])).is_zero());
        assert!(!tangency_value(&q, &line([1, 0, 0, 0], [0, 1, 0, 0])).is_zero());
    }

    #[test]
    fn wedge_entries_for_sphere() {
        let s = Sphere::from_ints([2, -1, 3], 5).unwrap();
        let w = wedge2(&sphere_to_quadric(&s));
        // (01, 01): c2^2 + c3^2 - r^2
        assert_eq!(w.0[0][0], Scalar::from_int(1 + 9 - 5));
    }

    #[test]
    fn ranks_of_degenerate_quadrics() {
        let v = [1, 2, 0, -1].map(Scalar::from_int);
        let u = [0, 1, 1, 3].map(Scalar::from_int);
        let r1 = Quadric::outer_square(&v).unwrap();
        assert_eq!(quadric_rank(&r1), 1);
        assert!(wedge2(&r1).is_zero());
        let r2 = Quadric::plane_pair(&u, &v).unwrap();
        assert_eq!(quadric_rank(&r2), 2);
        let m = r2.singular_line().unwrap();
        // any line meeting the singular line is tangent
        let (a, _) = m.spanning_points();
        let l = plucker_from_points(&a, &ProjPoint::from_ints([1, 5, -2, 7])).unwrap();
        assert!(tangency_value(&r2, &l).is_zero());
    }
}
