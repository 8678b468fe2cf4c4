//! Points and lines of projective 3-space in Plücker coordinates, the
//! transversals to a pair of skew lines, and normalizing frame changes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{self, Mat};
use crate::poly::P1;
use crate::scalar::{normalize_projective, proportional, Scalar};
use crate::{Error, Result};

/// Plücker index pairs in coordinate order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Debug)]
pub struct ProjPoint(pub [Scalar; 4]);

impl ProjPoint {
    pub fn new(x: [Scalar; 4]) -> Result<Self> {
        if x.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidInput("zero vector is not a point".into()));
        }
        Ok(ProjPoint(x))
    }

    pub fn from_ints(x: [i64; 4]) -> Self {
        ProjPoint(x.map(Scalar::from_int))
    }

    /// The point `(1, x, y, z)`.
    pub fn from_affine(p: &[Scalar; 3]) -> Self {
        ProjPoint([Scalar::one(), p[0].clone(), p[1].clone(), p[2].clone()])
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.0
    }

    pub fn is_at_infinity(&self) -> bool {
        self.0[0].is_zero()
    }

    pub fn to_affine(&self) -> Option<[Scalar; 3]> {
        if self.is_at_infinity() {
            return None;
        }
        let inv = self.0[0].recip();
        Some([&self.0[1] * &inv, &self.0[2] * &inv, &self.0[3] * &inv])
    }

    /// `s * self + t * other`.
    pub fn combine(&self, s: &Scalar, other: &ProjPoint, t: &Scalar) -> [Scalar; 4] {
        std::array::from_fn(|i| &(s * &self.0[i]) + &(t * &other.0[i]))
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        proportional(&self.0, &other.0)
    }
}

#[derive(Clone, Debug)]
pub struct PluckerLine(pub [Scalar; 6]);

/// `p01 p'23 - p02 p'13 + p03 p'12 + p12 p'03 - p13 p'02 + p23 p'01`.
pub fn incidence_form(l: &PluckerLine, m: &PluckerLine) -> Scalar {
    let p = &l.0;
    let q = &m.0;
    &(&(&(&(&(&p[0] * &q[5]) - &(&p[1] * &q[4])) + &(&p[2] * &q[3])) + &(&p[3] * &q[2]))
        - &(&p[4] * &q[1]))
        + &(&p[5] * &q[0])
}

fn plucker_raw(x: &[Scalar; 4], y: &[Scalar; 4]) -> [Scalar; 6] {
    PAIRS.map(|(i, j)| &(&x[i] * &y[j]) - &(&x[j] * &y[i]))
}

pub fn plucker_from_points(p: &ProjPoint, q: &ProjPoint) -> Result<PluckerLine> {
    let v = plucker_raw(&p.0, &q.0);
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::PointsCoincide);
    }
    Ok(PluckerLine(v))
}

impl PluckerLine {
    /// Validates the Plücker relation.
    pub fn new(p: [Scalar; 6]) -> Result<Self> {
        if p.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidInput("zero Plücker vector".into()));
        }
        let l = PluckerLine(p);
        if !l.relation().is_zero() {
            return Err(Error::InvalidInput("vector violates the Plücker relation".into()));
        }
        Ok(l)
    }

    pub fn from_ints(p: [i64; 6]) -> Result<Self> {
        Self::new(p.map(Scalar::from_int))
    }

    pub fn coords(&self) -> &[Scalar; 6] {
        &self.0
    }

    /// `p01 p23 - p02 p13 + p03 p12`.
    pub fn relation(&self) -> Scalar {
        let p = &self.0;
        &(&(&p[0] * &p[5]) - &(&p[1] * &p[4])) + &(&p[2] * &p[3])
    }

    fn entry(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            return Scalar::zero();
        }
        let (a, b, s) = if i < j { (i, j, false) } else { (j, i, true) };
        let k = PAIRS.iter().position(|&e| e == (a, b)).unwrap();
        if s {
            -&self.0[k]
        } else {
            self.0[k].clone()
        }
    }

    /// Two points spanning the line, read off from columns of the
    /// skew matrix `x y^T - y x^T`.
    pub fn spanning_points(&self) -> (ProjPoint, ProjPoint) {
        let cols: Vec<[Scalar; 4]> =
            (0..4).map(|k| std::array::from_fn(|i| self.entry(i, k))).collect();
        for a in 0..4 {
            for b in a + 1..4 {
                if plucker_raw(&cols[a], &cols[b]).iter().any(|x| !x.is_zero()) {
                    return (ProjPoint(cols[a].clone()), ProjPoint(cols[b].clone()));
                }
            }
        }
        unreachable!("nonzero decomposable Plücker vector has rank two")
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        let (a, b) = self.spanning_points();
        let m: Mat = vec![a.0.to_vec(), b.0.to_vec(), x.0.to_vec()];
        linalg::rank(&m) == 2
    }

    /// True when the line lies in the plane `x0 = 0`.
    pub fn is_at_infinity(&self) -> bool {
        self.0[..3].iter().all(Scalar::is_zero)
    }

    /// A point and a direction vector of an affine line.
    pub fn affine_data(&self) -> Option<([Scalar; 3], [Scalar; 3])> {
        if self.is_at_infinity() {
            return None;
        }
        let (a, b) = self.spanning_points();
        let pa = if a.is_at_infinity() { b.to_affine()? } else { a.to_affine()? };
        // p0j = x0 y_j - x_j y0 points from x towards y
        let dir = [self.0[0].clone(), self.0[1].clone(), self.0[2].clone()];
        Some((pa, dir))
    }

    pub fn normalized(&self) -> PluckerLine {
        let v = normalize_projective(&self.0);
        PluckerLine(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().all(Scalar::is_rational)
    }
}

impl PartialEq for PluckerLine {
    fn eq(&self, other: &Self) -> bool {
        proportional(&self.0, &other.0)
    }
}

impl fmt::Display for PluckerLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

/// Two skew lines with the spanning points `a, b` of the first and `c, d` of
/// the second used to parameterize their transversals.
#[derive(Clone, Debug)]
pub struct LinePair {
    pub l1: PluckerLine,
    pub l2: PluckerLine,
    pub a: ProjPoint,
    pub b: ProjPoint,
    pub c: ProjPoint,
    pub d: ProjPoint,
}

impl LinePair {
    pub fn new(l1: PluckerLine, l2: PluckerLine) -> Result<Self> {
        let (a, b) = l1.spanning_points();
        let (c, d) = l2.spanning_points();
        Self::from_points(a, b, c, d)
    }

    pub fn from_points(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> Result<Self> {
        let l1 = plucker_from_points(&a, &b)?;
        let l2 = plucker_from_points(&c, &d)?;
        if incidence_form(&l1, &l2).is_zero() {
            return Err(Error::NotSkew);
        }
        Ok(LinePair { l1, l2, a, b, c, d })
    }

    /// `l1 = span(e0, e1)`, `l2 = span(e2, e3)`.
    pub fn canonical() -> Self {
        Self::from_points(
            ProjPoint::from_ints([1, 0, 0, 0]),
            ProjPoint::from_ints([0, 1, 0, 0]),
            ProjPoint::from_ints([0, 0, 1, 0]),
            ProjPoint::from_ints([0, 0, 0, 1]),
        )
        .unwrap()
    }

    /// The affine pair through `(0, 0, ±1)` with directions `(1, ±δ, 0)`,
    /// parameterized by `(1, x, δx, 1)` and `(1, z, -δz, -1)`.
    pub fn affine_normal(delta: &Scalar) -> Result<Self> {
        if delta.is_zero() {
            return Err(Error::NotSkew);
        }
        let o = Scalar::zero;
        let i = Scalar::one;
        Self::from_points(
            ProjPoint([i(), o(), o(), i()]),
            ProjPoint([o(), i(), delta.clone(), o()]),
            ProjPoint([i(), o(), o(), -i()]),
            ProjPoint([o(), i(), -delta, o()]),
        )
    }

    pub fn is_rational(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|p| p.0.iter().all(Scalar::is_rational))
    }

    /// Plücker vectors of the transversals through `a`/`b` and `c`/`d`, in the
    /// order multiplying `wy, wz, xy, xz`.
    pub fn transversal_basis(&self) -> [[Scalar; 6]; 4] {
        [
            plucker_raw(&self.a.0, &self.c.0),
            plucker_raw(&self.a.0, &self.d.0),
            plucker_raw(&self.b.0, &self.c.0),
            plucker_raw(&self.b.0, &self.d.0),
        ]
    }

    pub fn point_on_l1(&self, u: &P1) -> ProjPoint {
        ProjPoint(self.a.combine(&u[0], &self.b, &u[1]))
    }

    pub fn point_on_l2(&self, v: &P1) -> ProjPoint {
        ProjPoint(self.c.combine(&v[0], &self.d, &v[1]))
    }
}

/// The line through `w a + x b` and `y c + z d`.
pub fn transversal_through(pair: &LinePair, u: &P1, v: &P1) -> PluckerLine {
    PluckerLine(plucker_raw(&pair.point_on_l1(u).0, &pair.point_on_l2(v).0))
}

/// An invertible projective transformation acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameMap {
    m: Mat,
    inv: Mat,
}

impl FrameMap {
    pub fn new(m: Mat) -> Result<Self> {
        if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
            return Err(Error::InvalidInput("frame map must be 4x4".into()));
        }
        let inv = linalg::inverse(&m)
            .ok_or_else(|| Error::InvalidInput("singular frame map".into()))?;
        Ok(FrameMap { m, inv })
    }

    pub fn identity() -> Self {
        FrameMap { m: linalg::identity(4), inv: linalg::identity(4) }
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inv
    }

    pub fn inverse(&self) -> FrameMap {
        FrameMap { m: self.inv.clone(), inv: self.m.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FrameMap) -> FrameMap {
        FrameMap { m: linalg::mat_mul(&self.m, &other.m), inv: linalg::mat_mul(&other.inv, &self.inv) }
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        let v = linalg::mat_vec(&self.m, &p.0);
        ProjPoint(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn apply_line(&self, l: &PluckerLine) -> PluckerLine {
        let (a, b) = l.spanning_points();
        PluckerLine(plucker_raw(&self.apply_point(&a).0, &self.apply_point(&b).0))
    }

    pub fn apply_pair(&self, pair: &LinePair) -> Result<LinePair> {
        LinePair::from_points(
            self.apply_point(&pair.a),
            self.apply_point(&pair.b),
            self.apply_point(&pair.c),
            self.apply_point(&pair.d),
        )
    }

    pub fn is_identity(&self) -> bool {
        let v: Vec<Scalar> = self.m.iter().flatten().cloned().collect();
        let e: Vec<Scalar> = linalg::identity(4).into_iter().flatten().collect();
        proportional(&v, &e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameMode {
    Projective,
    Affine,
}

#[derive(Clone, Debug)]
pub struct CanonicalFrame {
    pub map: FrameMap,
    /// Slope parameter of the affine normal position.
    pub delta: Option<Scalar>,
}

/// Projective mode sends `l1` to `{(w, x, 0, 0)}` and `l2` to `{(0, 0, y, z)}`.
/// Affine mode builds a similarity putting `l1` through `(0, 0, 1)` with
/// direction `(1, δ, 0)` and `l2` through `(0, 0, -1)` with direction
/// `(1, -δ, 0)`, `δ > 0`.
pub fn canonical_frame(pair: &LinePair, mode: FrameMode) -> Result<CanonicalFrame> {
    if incidence_form(&pair.l1, &pair.l2).is_zero() {
        return Err(Error::NotSkew);
    }
    match mode {
        FrameMode::Projective => {
            let cols = [&pair.a, &pair.b, &pair.c, &pair.d];
            let m: Mat = (0..4).map(|i| cols.iter().map(|p| p.0[i].clone()).collect()).collect();
            Ok(CanonicalFrame { map: FrameMap::new(m)?.inverse(), delta: None })
        }
        FrameMode::Affine => affine_frame(pair),
    }
}

fn sub3(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| &a[i] - &b[i])
}

fn axpy(a: &[Scalar; 3], k: &Scalar, b: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| &a[i] + &(k * &b[i]))
}

fn affine_frame(pair: &LinePair) -> Result<CanonicalFrame> {
    let at_inf = || {
        Error::Unsupported("a line lies at infinity; use the projective mode".into())
    };
    let (p1, d1) = pair.l1.affine_data().ok_or_else(at_inf)?;
    let (p2, d2) = pair.l2.affine_data().ok_or_else(at_inf)?;
    if !pair.l1.is_rational() || !pair.l2.is_rational() {
        return Err(Error::ExtensionRequired("irrational input lines".into()));
    }
    let n = linalg::cross(&d1, &d2);
    let sys: Mat = (0..3).map(|i| vec![d1[i].clone(), -&d2[i], n[i].clone()]).collect();
    let sol = linalg::solve(&sys, &sub3(&p2, &p1)).ok_or(Error::NotSkew)?;
    let q1 = axpy(&p1, &sol[0], &d1);
    let q2 = axpy(&p2, &sol[1], &d2);
    let half = Scalar::from_ratio(1, 2);
    let o: [Scalar; 3] = std::array::from_fn(|i| &(&q1[i] + &q2[i]) * &half);
    let h = sub3(&q1, &q2);
    let dd = linalg::dot(&h, &h);
    let n1 = linalg::dot(&d1, &d1);
    let n2 = linalg::dot(&d2, &d2);
    let rho = Scalar::sqrt_of_rational(&(&n1 * &n2).to_rational().unwrap().clone());
    let k = &rho / &n2;
    let e1u = axpy(&d1, &k, &d2);
    let e2u = axpy(&d1, &-&k, &d2);
    let need = |what: &str| Error::ExtensionRequired(format!("normal position needs nested radicals ({what})"));
    let s1 = (&dd * &linalg::dot(&e1u, &e1u)).sqrt().ok_or_else(|| need("first axis"))?;
    let s2 = (&dd * &linalg::dot(&e2u, &e2u)).sqrt().ok_or_else(|| need("second axis"))?;
    if !Scalar::compatible(&s1, &rho) || !Scalar::compatible(&s2, &rho) || !Scalar::compatible(&s1, &s2) {
        return Err(need("axes"));
    }
    let two = Scalar::from_int(2);
    let r1: [Scalar; 3] = std::array::from_fn(|i| &(&two * &e1u[i]) / &s1);
    let r2: [Scalar; 3] = std::array::from_fn(|i| &(&two * &e2u[i]) / &s2);
    let r3: [Scalar; 3] = std::array::from_fn(|i| &(&two * &h[i]) / &dd);
    let mut m: Mat = vec![vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()]];
    for r in [&r1, &r2, &r3] {
        let t = -linalg::dot(r, &o);
        m.push([t].into_iter().chain(r.iter().cloned()).collect());
    }
    let delta = &s2 / &s1;
    Ok(CanonicalFrame { map: FrameMap::new(m)?, delta: Some(delta) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(x: [i64; 4]) -> ProjPoint {
        ProjPoint::from_ints(x)
    }

    #[test]
    fn coordinate_line_and_transversal() {
        let l = plucker_from_points(&ip([1, 0, 0, 0]), &ip([0, 1, 0, 0])).unwrap();
        assert_eq!(l.0, PluckerLine::from_ints([1, 0, 0, 0, 0, 0]).unwrap().0);
        let pair = LinePair::canonical();
        let t = transversal_through(&pair, &[2.into(), 3.into()], &[5.into(), 7.into()]);
        // (0, wy, wz, xy, xz, 0)
        assert_eq!(t.0, [0, 10, 14, 15, 21, 0].map(Scalar::from_int));
        assert!(plucker_from_points(&ip([1, 2, 3, 4]), &ip([2, 4, 6, 8])).is_err());
    }

    #[test]
    fn spanning_points_recover_line() {
        let l = plucker_from_points(&ip([1, 2, -1, 3]), &ip([0, 1, 4, -2])).unwrap();
        let (a, b) = l.spanning_points();
        assert_eq!(plucker_from_points(&a, &b).unwrap(), l);
        assert!(l.contains(&ip([1, 3, 3, 1])));
        assert!(!l.contains(&ip([1, 0, 0, 0])));
    }

    #[test]
    fn canonical_affine_pair_gives_identity() {
        let delta = Scalar::from_ratio(3, 2);
        let pair = LinePair::affine_normal(&delta).unwrap();
        let f = canonical_frame(&pair, FrameMode::Affine).unwrap();
        assert!(f.map.is_identity());
        assert_eq!(f.delta.unwrap(), delta);
        let g = canonical_frame(&LinePair::canonical(), FrameMode::Projective).unwrap();
        assert!(g.map.is_identity());
        assert!(canonical_frame(&LinePair::canonical(), FrameMode::Affine).is_err());
    }
}
