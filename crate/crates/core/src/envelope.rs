//! The (2,2)-form of transversals to two skew lines that are tangent to a
//! quadric, and the dehomogenized sphere curves in normal position.

use crate::poly::{BiForm22, BiPoly};
use crate::projgeom::{incidence_form, LinePair, ProjPoint};
use crate::quadrics::{quadric_rank, sphere_to_quadric, wedge2, Quadric, Sphere};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// `(i, j)` exponents of `w` and `y` for the monomials `wy, wz, xy, xz`.
const MONO: [(usize, usize); 4] = [(1, 1), (1, 0), (0, 1), (0, 0)];

/// The form `p(w,x,y,z)^T (∧²Q) p(w,x,y,z)`; `None` when it vanishes
/// identically.
pub fn phi(pair: &LinePair, q: &Quadric) -> Result<Option<BiForm22>> {
    if incidence_form(&pair.l1, &pair.l2).is_zero() {
        return Err(Error::NotSkew);
    }
    let w = wedge2(q);
    let t = pair.transversal_basis();
    let mut f = BiForm22::zero();
    for (s, &(i1, j1)) in MONO.iter().enumerate() {
        for (u, &(i2, j2)) in MONO.iter().enumerate() {
            let v = w.bilinear(&t[s], &t[u]);
            if !v.is_zero() {
                f.c[i1 + i2][j1 + j2] += &v;
            }
        }
    }
    Ok((!f.is_zero()).then_some(f))
}

/// Rank at most one.
pub fn is_e1(q: &Quadric) -> bool {
    quadric_rank(q) <= 1
}

/// Entries `a, ..., g` vanish: planes through `span(e0, e1)`.
pub fn is_e2(q: &Quadric) -> bool {
    q.labels()[..7].iter().all(Scalar::is_zero)
}

/// Entries `c, d, f, g, h, k, l` vanish: planes through `span(e2, e3)`.
pub fn is_e3(q: &Quadric) -> bool {
    let v = q.labels();
    [2, 3, 5, 6, 7, 8, 9].iter().all(|&i| v[i].is_zero())
}

/// The transversals to the pair through `(x, δx, 1)` and `(z, -δz, -1)`
/// tangent to `s`, as a quartic in `(x, z)`.
pub fn affine_sphere_curve(delta: &Scalar, s: &Sphere) -> Result<BiPoly> {
    if delta.is_zero() {
        return Err(Error::NotSkew);
    }
    let [a, b, c] = &s.center;
    let r2 = &s.r2;
    let d = delta;
    let k = Scalar::from_int;
    let one = Scalar::one();
    let d2 = d * d;
    let bm = b - &(a * d);
    let bp = b + &(a * d);
    let c2 = c * c;
    let t = |i: u32, j: u32, v: Scalar| (i, j, v);
    Ok(BiPoly::from_terms([
        t(2, 2, &k(4) * &d2),
        t(2, 1, &(&k(4) * d) * &bm),
        t(2, 0, &(&bm * &bm) + &(&(&one + &d2) * &(&(&one + c).pow(2) - r2))),
        t(1, 2, -(&(&k(4) * d) * &bp)),
        t(
            1,
            1,
            &k(2)
                * &(&(&(&(r2 - &c2) * &(&one - &d2)) + &(&one - &(b * b)))
                    + &(&d2 * &(&(a * a) - &one))),
        ),
        t(1, 0, -(&(&k(4) * &(&one + c)) * &(a + &(b * d)))),
        t(0, 2, &(&bp * &bp) + &(&(&one + &d2) * &(&(&one - c).pow(2) - r2))),
        t(0, 1, &(&k(4) * &(c - &one)) * &(a - &(b * d))),
        t(0, 0, &k(4) * &(&(&(a * a) + &(b * b)) - r2)),
    ]))
}

/// Checks the direction vectors `u = (u1, u2, 0)`, `v = (v1, 0, v3)`.
pub fn check_directions(u: &[Scalar; 3], v: &[Scalar; 3]) -> Result<()> {
    if !u[2].is_zero() || !v[1].is_zero() {
        return Err(Error::InvalidInput("directions must have the form (u1,u2,0) and (v1,0,v3)".into()));
    }
    if u[1].is_zero() || v[2].is_zero() {
        return Err(Error::NotSkew);
    }
    Ok(())
}

/// The pair made of the `x`-axis and the line at infinity spanned by the
/// directions `u` and `v`.
pub fn axis_and_infinity_pair(u: &[Scalar; 3], v: &[Scalar; 3]) -> Result<LinePair> {
    check_directions(u, v)?;
    let o = Scalar::zero;
    LinePair::from_points(
        ProjPoint::from_ints([1, 0, 0, 0]),
        ProjPoint::from_ints([0, 1, 0, 0]),
        ProjPoint([o(), u[0].clone(), u[1].clone(), o()]),
        ProjPoint([o(), v[0].clone(), o(), v[2].clone()]),
    )
}

/// Transversals through `(x, 0, 0)` with direction `u + z v` tangent to `s`.
pub fn projective_sphere_curve(u: &[Scalar; 3], v: &[Scalar; 3], s: &Sphere) -> Result<BiPoly> {
    check_directions(u, v)?;
    let [a, b, c] = &s.center;
    let r2 = &s.r2;
    let (u1, u2) = (&u[0], &u[1]);
    let (v1, v3) = (&v[0], &v[2]);
    let two = Scalar::from_int(2);
    let bc = &(&(b * b) + &(c * c)) - r2;
    let ab = &(&(a * a) + &(b * b)) - r2;
    let ac = &(&(a * a) + &(c * c)) - r2;
    let t = |i: u32, j: u32, v: Scalar| (i, j, v);
    Ok(BiPoly::from_terms([
        t(2, 2, v3 * v3),
        t(2, 0, u2 * u2),
        t(1, 2, &(&two * v3) * &(&(c * v1) - &(a * v3))),
        t(1, 1, &two * &(&(&(b * u2) * v1) + &(&(c * u1) * v3))),
        t(1, 0, &(&two * u2) * &(&(b * u1) - &(a * u2))),
        t(
            0,
            2,
            &(&(&bc * &(v1 * v1)) - &(&(&(&two * a) * c) * &(v1 * v3))) + &(&ab * &(v3 * v3)),
        ),
        t(
            0,
            1,
            &two * &(&(&(&bc * &(u1 * v1)) - &(&(a * c) * &(u1 * v3)))
                - &(&(b * u2) * &(&(a * v1) + &(c * v3)))),
        ),
        t(
            0,
            0,
            &(&(&bc * &(u1 * u1)) - &(&(&(&two * a) * b) * &(u1 * u2))) + &(&ac * &(u2 * u2)),
        ),
    ]))
}

/// `phi` for a sphere.
pub fn sphere_form(pair: &LinePair, s: &Sphere) -> Result<BiForm22> {
    phi(pair, &sphere_to_quadric(s))?
        .ok_or_else(|| Error::Internal("sphere envelope vanished identically".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::proportional;

    #[test]
    fn canonical_pattern_for_integer_quadric() {
        let labels = [3, -1, 2, 5, 7, -4, 1, 6, -2, 9];
        let q = Quadric::from_label_ints(labels).unwrap();
        let f = phi(&LinePair::canonical(), &q).unwrap().unwrap();
        let [a, b, c, d, e, ff, g, h, k, l] = labels;
        assert_eq!(f.c[0][0], Scalar::from_int(e * l - g * g));
        assert_eq!(f.c[1][1], Scalar::from_int(2 * (2 * b * k - c * g - d * ff)));
        assert_eq!(f.c[2][2], Scalar::from_int(a * h - c * c));
    }

    #[test]
    fn affine_curve_matches_phi() {
        let delta = Scalar::from_ratio(2, 3);
        let s = Sphere::new([1.into(), Scalar::from_ratio(-1, 2), 3.into()], 5.into()).unwrap();
        let pair = LinePair::affine_normal(&delta).unwrap();
        let f = sphere_form(&pair, &s).unwrap().to_bipoly();
        let g = affine_sphere_curve(&delta, &s).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn projective_curve_matches_phi() {
        let u = [2.into(), 3.into(), 0.into()];
        let v = [Scalar::from_int(-1), 0.into(), 4.into()];
        let s = Sphere::new([1.into(), 2.into(), Scalar::from_ratio(1, 3)], 2.into()).unwrap();
        let pair = axis_and_infinity_pair(&u, &v).unwrap();
        let f = sphere_form(&pair, &s).unwrap().to_bipoly();
        let g = projective_sphere_curve(&u, &v, &s).unwrap();
        let fv: Vec<Scalar> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| f.coeff(i, j)).collect();
        let gv: Vec<Scalar> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| g.coeff(i, j)).collect();
        assert!(proportional(&fv, &gv));
    }

    #[test]
    fn degenerate_quadrics_vanish() {
        let v = [1, 2, 3, 4].map(Scalar::from_int);
        let pair = LinePair::canonical();
        assert!(phi(&pair, &Quadric::outer_square(&v).unwrap()).unwrap().is_none());
        let e2 = Quadric::from_label_ints([0, 0, 0, 0, 0, 0, 0, 1, 2, 3]).unwrap();
        assert!(is_e2(&e2));
        assert!(phi(&pair, &e2).unwrap().is_none());
    }
}
